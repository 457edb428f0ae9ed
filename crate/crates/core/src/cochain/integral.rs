//! Integral cohomology from the Smith form of the bar coboundaries.

use num_bigint::BigInt;

use super::cohomology::coboundary_triplets;
use crate::error::Result;
use crate::exactla::{smith::smith_form_z_with_limit, IntMatrix};
use crate::groups::FiniteGroup;

/// `H^n(G, Z)` as `(free rank, torsion invariant factors)`.
///
/// For `n >= 1` the group is finite and equals the torsion of the cokernel
/// of `d: C^{n-1} -> C^n`; `H^0 = Z`.
pub fn integral_cohomology(group: &FiniteGroup, degree: usize, limit: usize) -> Result<(usize, Vec<BigInt>)> {
    if degree == 0 {
        return Ok((1, Vec::new()));
    }
    let (rows, cols, triplets) = coboundary_triplets(group, degree - 1);
    let mut a = IntMatrix::new(rows, cols);
    for (r, c, v) in triplets {
        a.push(r, c, v);
    }
    let snf = smith_form_z_with_limit(&a, limit)?;
    Ok((0, snf.torsion()))
}
