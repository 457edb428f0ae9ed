//! The Bogomolov multiplier, permutation-negligible classes in degree 3, and
//! the consistency checks between residue and restriction descriptions.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    nab_kernel, nr_kernel, require_multiple, residue, residue_hom, restriction_hom, KernelResult, SubgroupFamily,
};
use crate::cochain::{bockstein, cup, pullback, transfer, CohClass};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::exactla::{abelian::kernel_of_maps, AbSubgroup, FinAbGroup};
use crate::groups::{all_subgroups, residue_pairs, up_to_conjugacy, FiniteGroup, ResiduePair};

#[derive(Clone, Debug)]
pub struct Bogomolov {
    pub multiplier: FinAbGroup,
    /// The residue description, `∩_s Ker ∂_{Z_G(s), s}` in `H^2(G, Q/Z)`.
    pub nr: KernelResult,
    /// The bicyclic description, `∩_A Ker res_A` in `H^2(G, Q/Z)`.
    pub nab: KernelResult,
}

/// `B_0(G)` from bicyclic restrictions, cross-checked against residues.
pub fn bogomolov_multiplier(e: &Engine, g: &Arc<FiniteGroup>) -> Result<Bogomolov> {
    let m = g.order() as u64;
    let nab = nab_kernel(e, g, 2, m, SubgroupFamily::Bicyclic, true)?;
    let nr = nr_kernel(e, g, 2, m, true)?;
    if !(nr.kernel.is_subgroup_of(&nab.kernel) && nab.kernel.is_subgroup_of(&nr.kernel)) {
        return Err(Error::ConsistencyFailure(format!(
            "residue and bicyclic kernels differ for {}: orders {} and {}",
            g.name(),
            nr.kernel.order(),
            nab.kernel.order()
        )));
    }
    Ok(Bogomolov { multiplier: nab.structure(), nr, nab })
}

/// Subgroup of `H^3(G, Q/Z)` (base `m`) spanned by transfers of
/// `x ∪ β(y)` for characters `x, y` of subgroups.
///
/// Conjugate subgroups contribute the same transfers, so one subgroup per
/// conjugacy class is enough.
pub fn permutation_negligible(e: &Engine, g: &Arc<FiniteGroup>, m: u64) -> Result<KernelResult> {
    require_multiple(g, m)?;
    let g3 = e.cohomology(g, 3, m)?;
    let stable = e.stable(g, 3, m)?;
    let subgroups = up_to_conjugacy(all_subgroups(g));
    let classes: Vec<Vec<Vec<u64>>> = subgroups
        .par_iter()
        .map(|h| {
            let (hg, inc) = h.to_group();
            let h1 = e.cohomology(&hg, 1, m)?;
            let h2 = e.cohomology(&hg, 2, m)?;
            let h3 = e.cohomology(&hg, 3, m)?;
            let chars = CohClass::generators(&h1);
            let mut out = Vec::new();
            for y in &chars {
                let by = bockstein(y, &h2)?;
                for x in &chars {
                    let z = cup(x, &by, &h3)?;
                    out.push(transfer(&inc, &z, &g3)?.coords().to_vec());
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let base_kernel = AbSubgroup::generated(g3.abelian(), classes.into_iter().flatten());
    let kernel = stable.projection().image_of(&base_kernel);
    Ok(KernelResult { degree: 3, modulus: m, stabilized: true, base_kernel, kernel })
}

#[derive(Clone, Debug)]
pub struct H3Quotient {
    pub nr: KernelResult,
    pub negligible: KernelResult,
    /// `nr / (nr ∩ negligible)`.
    pub quotient: FinAbGroup,
}

pub fn h3_nr_quotient(e: &Engine, g: &Arc<FiniteGroup>) -> Result<H3Quotient> {
    let m = g.order() as u64;
    let nr = nr_kernel(e, g, 3, m, true)?;
    let negligible = permutation_negligible(e, g, m)?;
    let (_, q) = negligible.kernel.quotient();
    let quotient = q.image_of(&nr.kernel).structure();
    Ok(H3Quotient { nr, negligible, quotient })
}

/// Classes in `H^3(G, Q/Z)` whose restriction to every member of the family
/// is permutation-negligible there.
pub fn nab_kernel_mod_negligible(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    m: u64,
    family: SubgroupFamily,
) -> Result<KernelResult> {
    require_multiple(g, m)?;
    let maps = family
        .members(g)
        .par_iter()
        .map(|a| {
            let r = restriction_hom(e, a, 3, m, true)?;
            let (ag, _) = a.to_group();
            let (_, q) = permutation_negligible(e, &ag, m)?.kernel.quotient();
            Ok(q.compose_after(&r)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let base = e.cohomology(g, 3, m)?;
    let base_kernel = kernel_of_maps(base.abelian(), &maps);
    let kernel = e.stable(g, 3, m)?.projection().image_of(&base_kernel);
    Ok(KernelResult { degree: 3, modulus: m, stabilized: true, base_kernel, kernel })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub element: usize,
    pub centralizer_order: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedCheck {
    pub degree: usize,
    pub modulus: u64,
    /// Degree-3 checks live in `H^3(-, Q/Z)` modulo permutation-negligible
    /// classes.
    pub modulo_negligible: bool,
    /// Residues of nab classes are nab one degree down, per pair.
    pub pairs: Vec<PairCheck>,
    /// The residue kernel lies in the nab kernel.
    pub inclusion: bool,
}

impl RefinedCheck {
    pub fn passed(&self) -> bool {
        self.inclusion && self.pairs.iter().all(|p| p.passed)
    }
}

/// Checks the two halves of the refined sequence in degree 2 or 3, in
/// `Q/Z` coefficients with base modulus `m`.
pub fn refined_sequence_check(e: &Engine, g: &Arc<FiniteGroup>, n: usize, m: u64) -> Result<RefinedCheck> {
    require_multiple(g, m)?;
    let (nab, inclusion) = match n {
        2 => {
            let nab = nab_kernel(e, g, 2, m, SubgroupFamily::Abelian, true)?;
            let nr = nr_kernel(e, g, 2, m, true)?;
            let inclusion = nr.kernel.is_subgroup_of(&nab.kernel);
            (nab, inclusion)
        }
        3 => {
            let nab = nab_kernel_mod_negligible(e, g, m, SubgroupFamily::Abelian)?;
            let nr = nr_kernel(e, g, 3, m, true)?;
            let pn = permutation_negligible(e, g, m)?;
            let inclusion = nr.kernel.is_subgroup_of(&nab.kernel.sum(&pn.kernel));
            (nab, inclusion)
        }
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "refined sequence checks are available in degrees 2 and 3, not {n}"
            )))
        }
    };
    let pairs = residue_pairs(g)
        .par_iter()
        .map(|pair| {
            let r = residue_hom(e, pair, n, m, true)?;
            let (dg, _) = pair.subgroup.to_group();
            let below = nab_kernel(e, &dg, n - 1, m, SubgroupFamily::Abelian, true)?;
            Ok(PairCheck {
                element: pair.element,
                centralizer_order: pair.subgroup.order(),
                passed: r.image_of(&nab.base_kernel).is_subgroup_of(&below.kernel),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RefinedCheck { degree: n, modulus: m, modulo_negligible: n == 3, pairs, inclusion })
}

/// Checks `∂(x ∪ y) = ∂x ∪ res y + (-1)^p res x ∪ ∂y` in `H^{p+q-1}(D, Z/m)`.
pub fn residue_cup_check(e: &Engine, pair: &ResiduePair, x: &CohClass, y: &CohClass) -> Result<bool> {
    let (p, q) = (x.degree(), y.degree());
    if p == 0 || q == 0 || p + q > 3 {
        return Err(Error::PreconditionViolated(format!("degrees ({p}, {q}) outside p, q >= 1, p + q <= 3")));
    }
    let g = pair.subgroup.parent();
    let m = x.modulus();
    let (dg, inc) = pair.subgroup.to_group();
    let xy = cup(x, y, &e.cohomology(g, p + q, m)?)?;
    let lhs = residue(e, &xy, pair)?;
    let target = e.cohomology(&dg, p + q - 1, m)?;
    let rx = pullback(&inc, x, &e.cohomology(&dg, p, m)?)?;
    let ry = pullback(&inc, y, &e.cohomology(&dg, q, m)?)?;
    let first = cup(&residue(e, x, pair)?, &ry, &target)?;
    let second = cup(&rx, &residue(e, y, pair)?, &target)?;
    let second = if p % 2 == 0 { second } else { second.scale(m - 1) };
    Ok(lhs == first.add(&second)?)
}
