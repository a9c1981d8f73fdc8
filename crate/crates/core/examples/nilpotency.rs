//! Nilpotency indices `ν(Z_m[A])` of augmentation ideals, next to the value
//! predicted from `δ(A, Z_m)`.
//!
//! `cargo run --release --example nilpotency`

use fdeg::formulas::predicted_nu;
use fdeg::group_ring::{delta_elem, nilpotency_index, GroupRingElement};
use fdeg::groups::{FiniteAbelianGroup, GroupDescriptor, GroupElement};

fn main() {
    let cases: [(u64, &[u64]); 10] = [
        (2, &[2]),
        (2, &[4]),
        (2, &[8]),
        (4, &[4]),
        (8, &[4, 2]),
        (3, &[3]),
        (9, &[9]),
        (3, &[3, 3]),
        (6, &[2]),
        (0, &[2]),
    ];
    for (m, factors) in cases {
        let g = FiniteAbelianGroup::new(factors.to_vec()).unwrap();
        let nu = nilpotency_index(m, &g, 1024).unwrap();
        let predicted = predicted_nu(m, &GroupDescriptor::from_finite(&g)).unwrap();
        println!("ν(Z{m}[{g}]) = {:<4} predicted {predicted}", nu.to_string());
    }

    // (t − 1)^3 = 0 in Z2[Z4], and (t − 1)^2 is the sum of the coset of 2.
    let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
    let d = delta_elem(2, &z4, &GroupElement(vec![1])).unwrap();
    let sq: GroupRingElement = d.pow(2);
    println!("in Z2[Z4]: (t-1)^2 = {sq}, (t-1)^4 = {}", d.pow(4));
}
