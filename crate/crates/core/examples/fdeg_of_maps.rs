//! Functional degrees of a few hand-built maps, computed by the fast scan
//! and by the brute-force oracle.
//!
//! `cargo run --release --example fdeg_of_maps`

use fdeg::funcmap::{fdeg, fdeg_bruteforce, make_delta, make_hom, FuncTable, DEFAULT_BRUTE_BUDGET};
use fdeg::groups::{FiniteAbelianGroup, GroupElement};

fn grp(f: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(f.to_vec()).unwrap()
}

fn show(name: &str, f: &FuncTable) {
    let brute = fdeg_bruteforce(f, 24, DEFAULT_BRUTE_BUDGET).unwrap();
    println!("{name:<32} fdeg {:>4}   oracle {brute:?}", fdeg(f).to_string());
}

fn main() {
    let (z2, z4, z8, z3, z6) = (grp(&[2]), grp(&[4]), grp(&[8]), grp(&[3]), grp(&[6]));
    let e = |c: &[u64]| GroupElement(c.to_vec());

    show("zero map Z4 → Z2", &FuncTable::zero(&z4, &z2));
    show("constant Z4 → Z2", &FuncTable::constant(&z4, &z2, &e(&[1])).unwrap());
    show("x ↦ 2x, Z8 → Z4", &make_hom(&z8, &z4, &[e(&[2])]).unwrap());
    show("δ_{0,1}: Z4 → Z2", &make_delta(&z4, &z2, &e(&[0]), &e(&[1])).unwrap());
    show("δ_{0,1}: Z4 → Z4", &make_delta(&z4, &z4, &e(&[0]), &e(&[1])).unwrap());
    show("δ_{0,1}: Z8 → Z2", &make_delta(&z8, &z2, &e(&[0]), &e(&[1])).unwrap());
    show("δ_{0,1}: Z3 → Z2", &make_delta(&z3, &z2, &e(&[0]), &e(&[1])).unwrap());
    show("x ↦ x², Z6 → Z6", &FuncTable::from_fn(&z6, &z6, |x| e(&[x.coords()[0].pow(2) % 6])).unwrap());
    show("x ↦ C(x,2), Z8 → Z2", &FuncTable::from_fn(&z8, &z2, |x| {
        let n = x.coords()[0];
        e(&[n * n.saturating_sub(1) / 2 % 2])
    })
    .unwrap());
}
