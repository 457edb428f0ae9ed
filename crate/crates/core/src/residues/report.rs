//! One-stop summary of the invariants of a group.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use super::{bogomolov_multiplier, h3_nr_quotient, nab_kernel, nr_kernel, SubgroupFamily};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Modeling choices that every report states.
pub const ASSUMPTIONS: &[&str] = &[
    "base field algebraically closed of characteristic 0: Tate twists and the symbol {-1} are trivial",
    "coefficients Z/m with trivial action; Q/Z classes are read through Z/m0 -> Q/Z, 1 -> 1/m0, with m0 = |G|",
    "residue sign convention: (dc)(d_1..d_{n-1}) = sum_j (-1)^j c(d_1..d_j, s, d_{j+1}..d_{n-1})",
    "residue pairs are (Z_G(s), s) for every element s",
    "permutation-negligible classes are spanned by transfers of x ∪ β(y) for characters x, y of subgroups, β the Bockstein of Z/m0 -> Z/m0^2 -> Z/m0",
    "H^3_NR / H^3_p equals unramified H^3 only after inverting 2",
    "degree-3 refined checks are evaluated modulo permutation-negligible classes",
];

#[derive(Clone, Debug, Serialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub digest: String,
}

impl GroupDescriptor {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupDescriptor {
            name: g.name().to_string(),
            order: g.order(),
            exponent: g.exponent(),
            abelian: g.is_abelian(),
            digest: g.digest_hex(),
        }
    }
}

/// Invariant factors per degree; subgroups are given by their structure.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeEntry {
    pub degree: usize,
    /// `H^n(G, Z/m0)`.
    pub finite: Vec<u64>,
    /// `H^n(G, Q/Z)`.
    pub stable: Vec<u64>,
    pub nr: Option<Vec<u64>>,
    pub nab_abelian: Vec<u64>,
    pub nab_bicyclic: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub group: GroupDescriptor,
    pub modulus: u64,
    pub degrees: Vec<DegreeEntry>,
    pub b0: Option<Vec<u64>>,
    pub h3_negligible: Option<Vec<u64>>,
    pub h3_nr_quotient: Option<Vec<u64>>,
    pub assumptions: Vec<String>,
    /// Seconds per stage.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub degrees: Vec<usize>,
    pub b0: bool,
    pub h3: bool,
}

impl ReportOptions {
    /// What is cheap enough for a group of this order.
    pub fn affordable(order: usize) -> Self {
        let top = if order <= 16 { 3 } else { 2 };
        ReportOptions {
            degrees: (1..=top).collect(),
            b0: order <= 64,
            h3: order <= 16 || (order % 2 == 1 && order <= 27),
        }
    }
}

fn factors(s: &crate::exactla::AbSubgroup) -> Vec<u64> {
    s.structure().factors().to_vec()
}

pub fn invariant_report(e: &Engine, g: &Arc<FiniteGroup>, opts: &ReportOptions) -> Result<InvariantReport> {
    let m = g.order() as u64;
    let mut timings = BTreeMap::new();
    let mut degrees = Vec::new();
    for &n in &opts.degrees {
        let t = Instant::now();
        let finite = e.cohomology(g, n, m)?.invariant_factors().to_vec();
        let stable = e.stable(g, n, m)?.invariant_factors().to_vec();
        let nr = if n == 0 { None } else { Some(factors(&nr_kernel(e, g, n, m, true)?.kernel)) };
        let nab_abelian = factors(&nab_kernel(e, g, n, m, SubgroupFamily::Abelian, true)?.kernel);
        let nab_bicyclic = factors(&nab_kernel(e, g, n, m, SubgroupFamily::Bicyclic, true)?.kernel);
        degrees.push(DegreeEntry { degree: n, finite, stable, nr, nab_abelian, nab_bicyclic });
        timings.insert(format!("degree {n}"), t.elapsed().as_secs_f64());
    }
    let b0 = if opts.b0 {
        let t = Instant::now();
        let b = bogomolov_multiplier(e, g)?;
        timings.insert("b0".into(), t.elapsed().as_secs_f64());
        Some(b.multiplier.factors().to_vec())
    } else {
        None
    };
    let (h3_negligible, h3_nr_quotient) = if opts.h3 {
        let t = Instant::now();
        let h = h3_nr_quotient(e, g)?;
        timings.insert("h3".into(), t.elapsed().as_secs_f64());
        (Some(factors(&h.negligible.kernel)), Some(h.quotient.factors().to_vec()))
    } else {
        (None, None)
    };
    let report = InvariantReport {
        group: GroupDescriptor::of(g),
        modulus: m,
        degrees,
        b0,
        h3_negligible,
        h3_nr_quotient,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        timings,
    };
    report.validate()?;
    Ok(report)
}

fn order(f: &[u64]) -> BigUint {
    f.iter().map(|&d| BigUint::from(d)).product()
}

impl InvariantReport {
    /// Orders of reported subgroups divide the orders of their ambient groups.
    pub fn validate(&self) -> Result<()> {
        let divides = |a: &[u64], b: &[u64]| (order(b) % order(a)) == BigUint::from(0u32);
        let bad = |what: &str| Err(Error::ConsistencyFailure(format!("{what} does not divide its ambient group")));
        for d in &self.degrees {
            for sub in [Some(&d.nab_abelian), Some(&d.nab_bicyclic), d.nr.as_ref()].into_iter().flatten() {
                if !divides(sub, &d.stable) {
                    return bad(&format!("a degree {} kernel", d.degree));
                }
            }
        }
        if let (Some(b0), Some(h2)) = (&self.b0, self.degrees.iter().find(|d| d.degree == 2)) {
            if !divides(b0, &h2.stable) {
                return bad("B0");
            }
        }
        Ok(())
    }
}
