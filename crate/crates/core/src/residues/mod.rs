//! Residue maps and the subgroups of cohomology they cut out.
//!
//! For `s` centralizing `D`, the residue of an n-cocycle `c` on `G` is the
//! (n-1)-cocycle on `D`
//!
//! ```text
//! (∂c)(d_1, .., d_{n-1}) = Σ_j (-1)^j c(d_1, .., d_j, s, d_{j+1}, .., d_{n-1})
//! ```
//!
//! It commutes with the coboundary because `s` commutes with every `d_i`.

mod invariants;
mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::{pullback, CohClass, CohomologyGroup};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::exactla::{abelian::kernel_of_maps, AbHom, AbSubgroup, FinAbGroup};
use crate::groups::{
    abelian_subgroups, bicyclic_subgroups, residue_pairs, FiniteGroup, GroupHom, ResiduePair, Subgroup,
};

pub use invariants::{
    bogomolov_multiplier, h3_nr_quotient, nab_kernel_mod_negligible, permutation_negligible, refined_sequence_check,
    residue_cup_check, Bogomolov, H3Quotient, PairCheck, RefinedCheck,
};
pub use report::{invariant_report, DegreeEntry, GroupDescriptor, InvariantReport, ReportOptions, ASSUMPTIONS};

/// Which subgroups the nab conditions range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupFamily {
    Abelian,
    Bicyclic,
}

impl fmt::Display for SubgroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupFamily::Abelian => "abelian",
            SubgroupFamily::Bicyclic => "bicyclic",
        })
    }
}

impl FromStr for SubgroupFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "abelian" => Ok(SubgroupFamily::Abelian),
            "bicyclic" => Ok(SubgroupFamily::Bicyclic),
            _ => Err(format!("unknown subgroup family `{s}`")),
        }
    }
}

impl SubgroupFamily {
    pub fn members(self, g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
        match self {
            SubgroupFamily::Abelian => abelian_subgroups(g),
            SubgroupFamily::Bicyclic => bicyclic_subgroups(g),
        }
    }
}

/// Residue of `x` along `(D, s)`, with `D` given by its inclusion into `G`.
/// `target` is `H^{n-1}(D, Z/m)`.
pub fn residue_along(inclusion: &GroupHom, s: usize, x: &CohClass, target: &Arc<CohomologyGroup>) -> Result<CohClass> {
    let n = x.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let g = inclusion.target();
    if x.space().group().digest() != g.digest() || target.group().digest() != inclusion.source().digest() {
        return Err(Error::GroupMismatch);
    }
    if let Some(&d) = inclusion.map().iter().find(|&&d| !g.commute(d, s)) {
        return Err(Error::NotCentralizing { element: d });
    }
    if target.degree() != n - 1 {
        return Err(Error::DegreeMismatch { expected: n - 1, found: target.degree() });
    }
    if target.modulus() != x.modulus() {
        return Err(Error::ModulusMismatch(x.modulus(), target.modulus()));
    }
    let src = x.space();
    let p = x.params();
    let m = x.modulus();
    let params = target.params_from(|t| {
        let mut buf = Vec::with_capacity(n);
        let mut acc = 0u64;
        for j in 0..n {
            buf.clear();
            buf.extend(t[..j].iter().map(|&d| inclusion.apply(d)));
            buf.push(s);
            buf.extend(t[j..].iter().map(|&d| inclusion.apply(d)));
            let v = src.eval(&p, &buf);
            acc = if j % 2 == 0 { (acc + v) % m } else { (acc + m - v) % m };
        }
        acc
    });
    CohClass::from_params(target.clone(), &params)
}

/// Residue of `x` along a pair, in `H^{n-1}(D, Z/m)`. The modulus must be a
/// multiple of the order of `s`.
pub fn residue(e: &Engine, x: &CohClass, pair: &ResiduePair) -> Result<CohClass> {
    if !x.modulus().is_multiple_of(pair.torsion_order) {
        return Err(Error::PreconditionViolated(format!(
            "modulus {} is not a multiple of the order {} of s",
            x.modulus(),
            pair.torsion_order
        )));
    }
    if x.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let (dg, inc) = pair.subgroup.to_group();
    let target = e.cohomology(&dg, x.degree() - 1, x.modulus())?;
    residue_along(&inc, pair.element, x, &target)
}

/// Materializes a class map as a matrix on generator coordinates.
fn class_hom(
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
    f: impl Fn(&CohClass) -> Result<CohClass>,
) -> Result<AbHom> {
    let matrix =
        CohClass::generators(source).iter().map(|x| f(x).map(|y| y.coords().to_vec())).collect::<Result<Vec<_>>>()?;
    Ok(AbHom::new(source.abelian().clone(), target.abelian().clone(), matrix)?)
}

/// Coordinate-level residue `H^n(G, Z/m) -> H^{n-1}(D, Z/m)`; with
/// `stable`, followed by the projection to `H^{n-1}(D, Q/Z)` (base `m`).
pub fn residue_hom(e: &Engine, pair: &ResiduePair, n: usize, m: u64, stable: bool) -> Result<AbHom> {
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let g = pair.subgroup.parent();
    let source = e.cohomology(g, n, m)?;
    let (dg, inc) = pair.subgroup.to_group();
    let target = e.cohomology(&dg, n - 1, m)?;
    let h = class_hom(&source, &target, |x| residue_along(&inc, pair.element, x, &target))?;
    if stable {
        Ok(e.stable(&dg, n - 1, m)?.projection().compose_after(&h)?)
    } else {
        Ok(h)
    }
}

/// Restriction `H^n(G, Z/m) -> H^n(H, Z/m)`, optionally projected to
/// `H^n(H, Q/Z)`.
pub fn restriction_hom(e: &Engine, sub: &Subgroup, n: usize, m: u64, stable: bool) -> Result<AbHom> {
    let source = e.cohomology(sub.parent(), n, m)?;
    let (hg, inc) = sub.to_group();
    let target = e.cohomology(&hg, n, m)?;
    let h = class_hom(&source, &target, |x| pullback(&inc, x, &target))?;
    if stable {
        Ok(e.stable(&hg, n, m)?.projection().compose_after(&h)?)
    } else {
        Ok(h)
    }
}

/// A subgroup of `H^n(G, Z/m)` or, when stabilized, of `H^n(G, Q/Z)`.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub degree: usize,
    pub modulus: u64,
    pub stabilized: bool,
    /// The same subgroup before projecting to `Q/Z` coefficients; equal to
    /// `kernel` when not stabilized.
    pub base_kernel: AbSubgroup,
    pub kernel: AbSubgroup,
}

impl KernelResult {
    pub fn ambient(&self) -> &FinAbGroup {
        self.kernel.ambient()
    }

    pub fn structure(&self) -> FinAbGroup {
        self.kernel.structure()
    }
}

pub(crate) fn require_multiple(g: &FiniteGroup, m: u64) -> Result<()> {
    if !m.is_multiple_of(g.order() as u64) {
        return Err(Error::PreconditionViolated(format!(
            "stabilized computations need a modulus divisible by |G| = {}, got {m}",
            g.order()
        )));
    }
    Ok(())
}

fn finish_kernel(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    n: usize,
    m: u64,
    stable: bool,
    maps: &[AbHom],
) -> Result<KernelResult> {
    let base = e.cohomology(g, n, m)?;
    let base_kernel = kernel_of_maps(base.abelian(), maps);
    let kernel = if stable { e.stable(g, n, m)?.projection().image_of(&base_kernel) } else { base_kernel.clone() };
    Ok(KernelResult { degree: n, modulus: m, stabilized: stable, base_kernel, kernel })
}

/// Intersection of the residue kernels over the given pairs.
pub fn nr_kernel_over(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    n: usize,
    m: u64,
    stable: bool,
    pairs: &[ResiduePair],
) -> Result<KernelResult> {
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    if stable {
        require_multiple(g, m)?;
    }
    let maps = pairs
        .par_iter()
        .filter(|p| p.element != g.identity())
        .map(|p| residue_hom(e, p, n, m, stable))
        .collect::<Result<Vec<_>>>()?;
    finish_kernel(e, g, n, m, stable, &maps)
}

/// `∩_s Ker ∂_{Z_G(s), s}` over all elements `s`.
pub fn nr_kernel(e: &Engine, g: &Arc<FiniteGroup>, n: usize, m: u64, stable: bool) -> Result<KernelResult> {
    nr_kernel_over(e, g, n, m, stable, &residue_pairs(g))
}

/// Intersection of the restriction kernels over the given subgroups.
pub fn restriction_kernel_over(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    n: usize,
    m: u64,
    stable: bool,
    subgroups: &[Subgroup],
) -> Result<KernelResult> {
    if stable {
        require_multiple(g, m)?;
    }
    let maps = subgroups.par_iter().map(|a| restriction_hom(e, a, n, m, stable)).collect::<Result<Vec<_>>>()?;
    finish_kernel(e, g, n, m, stable, &maps)
}

/// `∩_A Ker res_A` over the subgroup family.
pub fn nab_kernel(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    n: usize,
    m: u64,
    family: SubgroupFamily,
    stable: bool,
) -> Result<KernelResult> {
    restriction_kernel_over(e, g, n, m, stable, &family.members(g))
}

#[cfg(test)]
mod tests;
