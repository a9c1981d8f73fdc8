//! Writes a map to the JSON map-file format, reads it back and computes its
//! degree, as the `fdeg --map` subcommand does.
//!
//! `cargo run --example map_file`

use fdeg::funcmap::{fdeg, make_delta, FuncTable};
use fdeg::groups::{FiniteAbelianGroup, GroupElement};

fn main() {
    let a = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
    let b = FiniteAbelianGroup::new(vec![4]).unwrap();
    let f = make_delta(&a, &b, &GroupElement(vec![1, 1]), &GroupElement(vec![1])).unwrap();
    let text = f.to_json();
    println!("{text}");

    let path = std::env::temp_dir().join("fdeg_example_map.json");
    std::fs::write(&path, &text).unwrap();
    let back = FuncTable::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, f);
    assert_eq!(back.to_json(), text);
    println!("read back from {}: fdeg = {}", path.display(), fdeg(&back));
    println!("try: cargo run -- fdeg --map {} --oracle-cap 16", path.display());
}
