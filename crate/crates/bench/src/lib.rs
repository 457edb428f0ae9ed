//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use unram_core::groups::catalog;
use unram_core::{Family, FiniteGroup};

pub fn group(family: &str) -> Arc<FiniteGroup> {
    let f: Family = family.parse().expect("valid catalog family");
    Arc::new(catalog(&f).expect("catalog group"))
}
