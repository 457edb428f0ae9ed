//! The plain-text group file format.
//!
//! ```text
//! # comment
//! group D8
//! perm (0 1 2 3)
//! perm (0 2)
//! ```
//!
//! Instead of `perm` lines a file may hold `table` followed by `N` rows of
//! `N` indices, or a single `catalog <family>:<params>` line.

use std::fmt;
use std::str::FromStr;

use super::{catalog, Family, FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Where a group comes from, as recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Catalog(Family),
    Permutations(Vec<Vec<usize>>),
    Table(Vec<Vec<usize>>),
}

impl GroupSource {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSource::Catalog(f) => catalog(f),
            GroupSource::Permutations(p) => FiniteGroup::from_permutations(p),
            GroupSource::Table(t) => FiniteGroup::from_mult_table(t),
        }
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)` into a permutation of
/// `{0..degree-1}`, where `degree` is one more than the largest point.
pub fn parse_cycles(text: &str) -> Result<Vec<usize>, String> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let flush = |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<(), String> {
        if !number.is_empty() {
            let v = number.parse::<usize>().map_err(|e| format!("bad point `{number}`: {e}"))?;
            current.as_mut().ok_or("point outside parentheses")?.push(v);
            number.clear();
        }
        Ok(())
    };
    for c in text.chars() {
        match c {
            '(' => {
                if current.is_some() {
                    return Err("nested `(`".into());
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut number, &mut current)?;
                cycles.push(current.take().ok_or("unmatched `)`")?);
            }
            ',' => flush(&mut number, &mut current)?,
            c if c.is_whitespace() => flush(&mut number, &mut current)?,
            c if c.is_ascii_digit() => number.push(c),
            c => return Err(format!("unexpected character `{c}`")),
        }
    }
    if current.is_some() {
        return Err("unclosed `(`".into());
    }
    let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    for cyc in &cycles {
        for (i, &x) in cyc.iter().enumerate() {
            if std::mem::replace(&mut used[x], true) {
                return Err(format!("point {x} appears twice"));
            }
            perm[x] = cyc[(i + 1) % cyc.len()];
        }
    }
    Ok(perm)
}

/// Parses a group file; returns the optional name and the source.
pub fn parse_group_source(text: &str) -> Result<(Option<String>, GroupSource), ParseError> {
    let mut name = None;
    let mut perms = Vec::new();
    let mut table: Option<Vec<Vec<usize>>> = None;
    let mut catalog_family = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content.len() - content.trim_start().len() + 1;
        if let Some(rows) = table.as_mut() {
            if !trimmed.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(err(lineno, col, "expected a table row"));
            }
            let mut row = Vec::new();
            for tok in trimmed.split_whitespace() {
                let tcol = raw.find(tok).map_or(col, |p| p + 1);
                row.push(tok.parse::<usize>().map_err(|_| err(lineno, tcol, format!("bad table entry `{tok}`")))?);
            }
            rows.push(row);
            continue;
        }
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = col + keyword.len() + (!rest.is_empty()) as usize;
        match keyword {
            "group" => name = Some(rest.trim().to_string()),
            "perm" => perms.push(parse_cycles(rest).map_err(|m| err(lineno, rest_col, m))?),
            "table" => {
                if !perms.is_empty() || catalog_family.is_some() {
                    return Err(err(lineno, col, "`table` cannot be mixed with other sources"));
                }
                table = Some(Vec::new());
            }
            "catalog" => {
                if !perms.is_empty() {
                    return Err(err(lineno, col, "`catalog` cannot be mixed with `perm`"));
                }
                let fam = Family::from_str(rest).map_err(|e| err(lineno, rest_col, e.to_string()))?;
                catalog_family = Some(fam);
            }
            other => return Err(err(lineno, col, format!("unknown keyword `{other}`"))),
        }
    }
    let source = if let Some(rows) = table {
        if rows.is_empty() {
            return Err(err(last_line, 1, "empty table"));
        }
        GroupSource::Table(rows)
    } else if let Some(f) = catalog_family {
        GroupSource::Catalog(f)
    } else if !perms.is_empty() {
        GroupSource::Permutations(perms)
    } else {
        return Err(err(last_line.max(1), 1, "no group data (`perm`, `table` or `catalog`)"));
    };
    Ok((name, source))
}

/// Parses and builds a group; group-axiom failures are reported at the end
/// of the file.
pub fn parse_group_file(text: &str) -> Result<FiniteGroup, ParseError> {
    let (name, source) = parse_group_source(text)?;
    let g = source.build().map_err(|e| err(text.lines().count().max(1), 1, e.to_string()))?;
    Ok(match name {
        Some(n) if !n.is_empty() => g.with_name(n),
        _ => g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        assert_eq!(parse_cycles("(0 1 2)(3 4)").unwrap(), vec![1, 2, 0, 4, 3]);
        assert_eq!(parse_cycles("(0,2)").unwrap(), vec![2, 1, 0]);
        assert_eq!(parse_cycles("()").unwrap(), Vec::<usize>::new());
        assert!(parse_cycles("(0 1").is_err());
        assert!(parse_cycles("(0 1)(1 2)").is_err());
    }

    #[test]
    fn perm_file() {
        let g = parse_group_file("# dihedral\ngroup D8\n  perm (0 1 2 3)  # rotation\nperm (0 2)\n").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.name(), "D8");
    }

    #[test]
    fn table_file() {
        let g = parse_group_file("group Z2\ntable\n0 1\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn catalog_file() {
        let g = parse_group_file("catalog dihedral:8").unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_group_file("group X\nperm (0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        let e = parse_group_file("group X\n  frob 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_group_file("table\n0 1\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_group_file("catalog nope:3\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_group_file("# nothing\n").is_err());
        // not associative / no identity
        assert!(parse_group_file("table\n0 0\n0 1\n").is_err());
    }
}
