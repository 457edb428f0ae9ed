//! Bogomolov multipliers of every group of order 24, 32, 48 and 64 against
//! values computed with GAP's HAP package. Groups are given by permutation
//! generators exported from the SmallGroups library; `id` is the library
//! index.

use std::sync::Arc;

use serde::Deserialize;
use unram_core::residues::bogomolov_multiplier;
use unram_core::{Engine, FiniteGroup};

#[derive(Deserialize)]
struct Entry {
    order: usize,
    id: usize,
    b0: Vec<u64>,
    generators: Vec<Vec<usize>>,
}

fn entries() -> Vec<Entry> {
    serde_json::from_str(include_str!("data/b0_reference.json")).unwrap()
}

#[test]
fn bogomolov_multipliers_match_reference() {
    let e = Engine::new();
    let entries = entries();
    assert_eq!(entries.len(), 15 + 51 + 52 + 267);
    let mut nontrivial = Vec::new();
    for entry in &entries {
        let g = Arc::new(FiniteGroup::from_permutations(&entry.generators).unwrap());
        assert_eq!(g.order(), entry.order, "SmallGroup({}, {})", entry.order, entry.id);
        let b0 = bogomolov_multiplier(&e, &g).unwrap();
        assert_eq!(b0.multiplier.factors(), &entry.b0[..], "SmallGroup({}, {})", entry.order, entry.id);
        if !entry.b0.is_empty() {
            nontrivial.push(entry.id);
        }
    }
    assert_eq!(nontrivial, [149, 150, 151, 170, 171, 172, 177, 178, 182]);
}
