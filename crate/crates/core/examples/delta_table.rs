//! Tabulates `δ(A, B)` over small groups, showing the closed form where it
//! applies.
//!
//! `cargo run --example delta_table`

use fdeg::formulas::{delta_sup, main_formula_instantiation, p_group_parameters};
use fdeg::groups::parse_group_spec;

fn main() {
    let domains = ["Z2", "Z4", "Z2xZ2", "Z4xZ2", "Z8", "Z3", "Z9", "Z3xZ3", "Z6", "Z"];
    let codomains = ["Z2", "Z4", "Z8", "Z3", "Z9", "Z6", "U2"];
    print!("{:<8}", "A \\ B");
    for b in codomains {
        print!("{b:>6}");
    }
    println!();
    for a in domains {
        print!("{a:<8}");
        let da = parse_group_spec(a).unwrap();
        for b in codomains {
            let r = delta_sup(&da, &parse_group_spec(b).unwrap()).unwrap();
            print!("{:>6}", r.value.to_string());
        }
        println!();
    }
    println!();
    for (a, b) in [("Z4xZ2", "Z8"), ("Z9xZ3", "Z27"), ("Z2*4", "Z4")] {
        let (da, db) = (parse_group_spec(a).unwrap(), parse_group_spec(b).unwrap());
        let (p, alphas, beta) = p_group_parameters(&da, &db).unwrap();
        println!("δ({a}, {b}): {}", main_formula_instantiation(p, &alphas, beta));
    }
}
