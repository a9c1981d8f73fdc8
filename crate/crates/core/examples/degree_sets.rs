//! Degree sets `D(A, B)` from the formulas, checked against an exhaustive
//! sweep of `B^A` when that is small.
//!
//! `cargo run --release --example degree_sets`

use std::collections::BTreeSet;

use fdeg::formulas::degree_set;
use fdeg::funcmap::fdeg;
use fdeg::groups::parse_group_spec;
use fdeg::verify::oracle::all_maps;
use fdeg::ExtNat;

fn main() {
    let pairs = [("Z2", "Z2"), ("Z3", "Z2"), ("Z4", "Z2"), ("Z2xZ2", "Z2"), ("Z6", "Z6"), ("Z", "Z4"), ("Z2", "ZxZ4"), ("Z3", "Z2*inf")];
    for (a, b) in pairs {
        let (da, db) = (parse_group_spec(a).unwrap(), parse_group_spec(b).unwrap());
        let set = degree_set(&da, &db).unwrap();
        println!("D({a}, {b}) = {set}");
        let (Ok(ga), Ok(gb)) = (da.to_finite_group(), db.to_finite_group()) else {
            continue;
        };
        let seen: BTreeSet<ExtNat> = all_maps(&ga, &gb).map(|f| fdeg(&f)).collect();
        let listed: BTreeSet<ExtNat> = set.members().unwrap().into_iter().collect();
        let verdict = if seen == listed { "matches" } else { "DIFFERS" };
        println!("    sweep of {} maps {verdict}: {seen:?}", gb.order().pow(ga.order() as u32));
    }
}
