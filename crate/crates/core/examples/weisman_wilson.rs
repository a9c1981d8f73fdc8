//! Alternating binomial sums `M_k(j, n)` modulo `p^β` around the threshold,
//! and the group-ring identity behind them.
//!
//! `cargo run --example weisman_wilson`

use fdeg::formulas::{alternate_threshold, weisman_check, weisman_m, weisman_threshold, wilson_check};

fn main() {
    for (p, alpha, beta) in [(2u64, 1u32, 2u32), (2, 2, 2), (3, 1, 2), (2, 1, 3)] {
        let t = weisman_threshold(p, alpha, beta);
        let m = p.pow(beta);
        println!("p={p} α={alpha} β={beta}: threshold T = {t} (β·p^α = {})", alternate_threshold(p, alpha, beta));
        for j in 0..p.pow(alpha) as i64 {
            let row: Vec<String> = (t - 1..=t + 2)
                .map(|n| format!("{:>4}", weisman_m(p.pow(alpha), j, n).to_string()))
                .collect();
            let c = weisman_check(p, alpha, beta, j, 8);
            println!("  j={j}  M(T-1..T+2) = {}   mod {m}: {} {}", row.join(""), c.value_below, if c.holds() { "ok" } else { "FAILS" });
        }
        let w = wilson_check(p, alpha, beta).unwrap();
        println!("  (t-1)^{} = {}   equal {} annihilated {}", w.exponent, w.lhs, w.equal, w.annihilated);
    }
    println!("At (2,1,2) the reading T = β·p^α = 4 needs M_2(0,3) ≢ 0 mod 4, but M_2(0,3) = {}.", weisman_m(2, 0, 3));
}
