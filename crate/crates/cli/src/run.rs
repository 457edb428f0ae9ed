//! The tasks behind each subcommand, filling in a `Report`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use unram_core::groups::residue_pair_reps;
use unram_core::residues::{
    bogomolov_multiplier, h3_nr_quotient, invariant_report, nab_kernel, nr_kernel, refined_sequence_check,
    residue_cup_check, GroupDescriptor, KernelResult, ReportOptions, SubgroupFamily, ASSUMPTIONS,
};
use unram_core::{CohClass, Engine, FiniteGroup};

use crate::Failure;

#[derive(Serialize)]
pub struct Report {
    pub group: GroupDescriptor,
    pub assumptions: Vec<String>,
    pub results: Vec<TaskResult>,
    pub checks: Vec<Check>,
    /// Seconds per stage.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Serialize)]
pub struct TaskResult {
    pub task: &'static str,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// `Z/m`, or `Q/Z` read through `Z/m -> Q/Z`.
    pub coefficients: String,
    pub modulus: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SubgroupFamily>,
    pub invariant_factors: Vec<u64>,
    /// Invariant factors of the group this result is a subgroup of.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    pub fn new(g: &FiniteGroup) -> Report {
        Report {
            group: GroupDescriptor::of(g),
            assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
            results: Vec::new(),
            checks: Vec::new(),
            timings: Some(BTreeMap::new()),
        }
    }

    fn timed<T>(&mut self, stage: String, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if let Some(timings) = self.timings.as_mut() {
            *timings.entry(stage).or_default() += t.elapsed().as_secs_f64();
        }
        out
    }
}

fn coeff_name(stable: bool, m: u64) -> String {
    if stable {
        "Q/Z".into()
    } else {
        format!("Z/{m}")
    }
}

fn result(
    task: &'static str,
    label: String,
    degree: Option<usize>,
    stable: bool,
    m: u64,
    factors: &[u64],
) -> TaskResult {
    TaskResult {
        task,
        label,
        degree,
        coefficients: coeff_name(stable, m),
        modulus: m,
        family: None,
        invariant_factors: factors.to_vec(),
        ambient: None,
        generators: None,
    }
}

fn kernel_result(task: &'static str, label: String, k: &KernelResult) -> TaskResult {
    TaskResult {
        ambient: Some(k.ambient().factors().to_vec()),
        ..result(task, label, Some(k.degree), k.stabilized, k.modulus, k.structure().factors())
    }
}

/// Resolves degrees and modulus, defaulting the modulus to `|G|`.
pub fn coefficients(
    g: &FiniteGroup,
    degrees: &[usize],
    modulus: Option<u64>,
    stable: bool,
    default_degrees: &[usize],
) -> Result<(Vec<usize>, u64), Failure> {
    let m = modulus.unwrap_or(g.order() as u64);
    if m == 0 {
        return Err(Failure::Usage("the modulus must be positive".into()));
    }
    if stable && !m.is_multiple_of(g.order() as u64) {
        return Err(Failure::Usage(format!("--stabilize needs a modulus divisible by |G| = {}, got {m}", g.order())));
    }
    let degrees = if degrees.is_empty() { default_degrees.to_vec() } else { degrees.to_vec() };
    Ok((degrees, m))
}

pub fn cohomology(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    degrees: &[usize],
    m: u64,
    stable: bool,
    emit_generators: bool,
    report: &mut Report,
) -> Result<(), Failure> {
    if stable && emit_generators {
        return Err(Failure::Usage("--emit-generators needs finite coefficients".into()));
    }
    for &n in degrees {
        let label = format!("H^{n}(G, {})", coeff_name(stable, m));
        let r = report.timed(format!("cohomology {n}"), || -> Result<TaskResult, Failure> {
            if stable {
                let s = e.stable(g, n, m)?;
                return Ok(result("cohomology", label, Some(n), true, m, s.invariant_factors()));
            }
            let h = e.cohomology(g, n, m)?;
            let mut r = result("cohomology", label, Some(n), false, m, h.invariant_factors());
            if emit_generators {
                let gens = (0..h.abelian().rank()).map(|j| h.cochain(&h.generator_params(j)).values).collect();
                r.generators = Some(gens);
            }
            Ok(r)
        })?;
        report.results.push(r);
    }
    Ok(())
}

pub fn b0(e: &Engine, g: &Arc<FiniteGroup>, report: &mut Report) -> Result<(), Failure> {
    let b = report.timed("b0".into(), || bogomolov_multiplier(e, g))?;
    report.results.push(TaskResult {
        ambient: Some(b.nab.ambient().factors().to_vec()),
        ..result("b0", "B0(G)".into(), Some(2), true, g.order() as u64, b.multiplier.factors())
    });
    report.checks.push(Check {
        name: "b0 routes".into(),
        passed: true,
        detail: "residue kernel equals bicyclic restriction kernel".into(),
    });
    Ok(())
}

pub fn nr(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    degrees: &[usize],
    m: u64,
    stable: bool,
    report: &mut Report,
) -> Result<(), Failure> {
    for &n in degrees {
        let k = report.timed(format!("nr {n}"), || nr_kernel(e, g, n, m, stable))?;
        report.results.push(kernel_result("nr", format!("H^{n}_nr(G, {})", coeff_name(stable, m)), &k));
    }
    Ok(())
}

pub fn nab(
    e: &Engine,
    g: &Arc<FiniteGroup>,
    degrees: &[usize],
    m: u64,
    stable: bool,
    family: SubgroupFamily,
    report: &mut Report,
) -> Result<(), Failure> {
    for &n in degrees {
        let k = report.timed(format!("nab {n}"), || nab_kernel(e, g, n, m, family, stable))?;
        let label = format!("H^{n}_nab(G, {}) over {family} subgroups", coeff_name(stable, m));
        report.results.push(TaskResult { family: Some(family), ..kernel_result("nab", label, &k) });
    }
    Ok(())
}

pub fn h3(e: &Engine, g: &Arc<FiniteGroup>, report: &mut Report) -> Result<(), Failure> {
    let h = report.timed("h3".into(), || h3_nr_quotient(e, g))?;
    report.results.push(kernel_result("nr", "H^3_nr(G, Q/Z)".into(), &h.nr));
    report.results.push(kernel_result("negligible", "H^3_p(G, Q/Z)".into(), &h.negligible));
    report.results.push(result("h3", "H^3_NR / H^3_p".into(), Some(3), true, g.order() as u64, h.quotient.factors()));
    Ok(())
}

pub fn check(e: &Engine, g: &Arc<FiniteGroup>, degrees: &[usize], report: &mut Report) -> Result<(), Failure> {
    let m = g.order() as u64;
    for &n in degrees {
        let c = report.timed(format!("refined {n}"), || refined_sequence_check(e, g, n, m))?;
        let bad: Vec<String> = c.pairs.iter().filter(|p| !p.passed).map(|p| p.element.to_string()).collect();
        let mut detail = format!("{} residue pairs", c.pairs.len());
        if c.modulo_negligible {
            detail.push_str(", modulo permutation-negligible classes");
        }
        if !c.inclusion {
            detail.push_str("; nr is not contained in nab");
        }
        if !bad.is_empty() {
            detail.push_str(&format!("; residues leave nab at s = {}", bad.join(", ")));
        }
        report.checks.push(Check { name: format!("refined sequence, degree {n}"), passed: c.passed(), detail });
    }
    let top = degrees.iter().copied().max().unwrap_or(3).max(2);
    let pairs: Vec<_> = residue_pair_reps(g).into_iter().filter(|p| p.element != g.identity()).collect();
    for total in 2..=top {
        for p in 1..total {
            let q = total - p;
            let (hp, hq) = (e.cohomology(g, p, m)?, e.cohomology(g, q, m)?);
            let (xs, ys) = (CohClass::generators(&hp), CohClass::generators(&hq));
            let (count, failures) = report.timed(format!("leibniz {p},{q}"), || -> Result<_, Failure> {
                let mut count = 0;
                let mut failures = Vec::new();
                for pair in &pairs {
                    for x in &xs {
                        for y in &ys {
                            count += 1;
                            if !residue_cup_check(e, pair, x, y)? {
                                failures.push(pair.element);
                            }
                        }
                    }
                }
                Ok((count, failures))
            })?;
            let mut detail = format!("{count} generator pairs over {} residue pairs", pairs.len());
            if !failures.is_empty() {
                detail.push_str(&format!("; fails at s = {failures:?}"));
            }
            report.checks.push(Check { name: format!("leibniz ({p}, {q})"), passed: failures.is_empty(), detail });
        }
    }
    Ok(())
}

pub fn full_report(e: &Engine, g: &Arc<FiniteGroup>, report: &mut Report) -> Result<(), Failure> {
    let opts = ReportOptions::affordable(g.order());
    let r = invariant_report(e, g, &opts)?;
    let m = r.modulus;
    for d in &r.degrees {
        let n = d.degree;
        report.results.push(result("cohomology", format!("H^{n}(G, Z/{m})"), Some(n), false, m, &d.finite));
        let mut stable = result("cohomology", format!("H^{n}(G, Q/Z)"), Some(n), true, m, &d.stable);
        stable.ambient = None;
        report.results.push(stable);
        let sub = |task, label: String, factors: &[u64], family| TaskResult {
            family,
            ambient: Some(d.stable.clone()),
            ..result(task, label, Some(n), true, m, factors)
        };
        if let Some(nr) = &d.nr {
            report.results.push(sub("nr", format!("H^{n}_nr(G, Q/Z)"), nr, None));
        }
        for (family, factors) in
            [(SubgroupFamily::Abelian, &d.nab_abelian), (SubgroupFamily::Bicyclic, &d.nab_bicyclic)]
        {
            report.results.push(sub(
                "nab",
                format!("H^{n}_nab(G, Q/Z) over {family} subgroups"),
                factors,
                Some(family),
            ));
        }
    }
    if let Some(b0) = &r.b0 {
        report.results.push(result("b0", "B0(G)".into(), Some(2), true, m, b0));
    }
    if let Some(p) = &r.h3_negligible {
        report.results.push(result("negligible", "H^3_p(G, Q/Z)".into(), Some(3), true, m, p));
    }
    if let Some(q) = &r.h3_nr_quotient {
        report.results.push(result("h3", "H^3_NR / H^3_p".into(), Some(3), true, m, q));
    }
    if let Some(timings) = report.timings.as_mut() {
        timings.extend(r.timings);
    }
    Ok(())
}
