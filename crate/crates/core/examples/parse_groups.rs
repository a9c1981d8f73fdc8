//! Parses group specs and prints their structural invariants.
//!
//! `cargo run --example parse_groups [spec ...]`

use fdeg::groups::parse_group_spec;

fn main() {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["1", "Z6", "Z4xZ2", "Z2*3xZ9", "ZxZ2*infxU3", "Z12xZ18"].map(String::from).to_vec();
    }
    println!("{:<14} {:<22} {:>8} {:>6} {:>6} {:>7}", "spec", "canonical", "exponent", "e(A)", "rank", "p-group");
    for spec in &specs {
        match parse_group_spec(spec) {
            Ok(d) => {
                let s = d.structure_stats();
                let p = s.is_p_group.map_or("-".to_string(), |p| p.to_string());
                println!(
                    "{spec:<14} {:<22} {:>8} {:>6} {:>6} {p:>7}",
                    d.to_string(),
                    s.exponent.to_string(),
                    s.e_value,
                    s.rank.to_string()
                );
                for q in d.primes() {
                    println!("{:<14}   {q}-part {}", "", d.primary_component(q));
                }
            }
            Err(e) => println!("{spec:<14} error: {e}"),
        }
    }
}
