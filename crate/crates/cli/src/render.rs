//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::run::Report;

fn group_text(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

pub fn text(r: &Report) -> String {
    let mut s = String::new();
    let g = &r.group;
    let kind = if g.abelian { "abelian" } else { "nonabelian" };
    let _ = writeln!(s, "group {}: order {}, exponent {}, {kind}", g.name, g.order, g.exponent);
    let _ = writeln!(s, "digest {}", g.digest);
    if !r.results.is_empty() {
        s.push('\n');
        let width = r.results.iter().map(|x| x.label.chars().count()).max().unwrap_or(0);
        for x in &r.results {
            let _ = write!(s, "{:<width$}  {}", x.label, group_text(&x.invariant_factors));
            if let Some(amb) = &x.ambient {
                let _ = write!(s, "  (inside {})", group_text(amb));
            }
            s.push('\n');
            for (j, c) in x.generators.iter().flatten().enumerate() {
                let values = c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "  generator {j}: {values}");
            }
        }
    }
    if !r.checks.is_empty() {
        s.push('\n');
        for c in &r.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{verdict}  {} ({})", c.name, c.detail);
        }
    }
    if let Some(t) = r.timings.as_ref().filter(|t| !t.is_empty()) {
        s.push('\n');
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v:.3}s")).collect();
        let _ = writeln!(s, "timings: {}", parts.join(", "));
    }
    s.push('\n');
    s.push_str("assumptions:\n");
    for a in &r.assumptions {
        let _ = writeln!(s, "  - {a}");
    }
    s
}
