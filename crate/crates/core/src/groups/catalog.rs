//! Standard families of small groups.

use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, GroupError};

/// A named group family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// `(Z/p)^k`
    ElementaryAbelian(usize, usize),
    /// `Z/n1 x ... x Z/nr`
    Abelian(Vec<usize>),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    /// Generalized quaternion group of the given order `2^k`, `k >= 3`.
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Upper unitriangular 3x3 matrices over `Z/p`.
    Heisenberg(usize),
    /// A group of order 64 with Bogomolov multiplier `Z/2`, see [`WITNESS_64`].
    Witness64,
    DirectProduct(Box<Family>, Box<Family>),
}

fn out_of_range(family: &str, reason: impl Into<String>) -> GroupError {
    GroupError::ParamOutOfRange { family: family.to_string(), reason: reason.into() }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for Family {
    type Err = GroupError;

    /// Parses `cyclic:4`, `elementary:2,3`, `abelian:2,4`, `dihedral:8`,
    /// `quaternion:16`, `symmetric:4`, `alternating:4`, `heisenberg:3`,
    /// `witness:64`, and products `A * B`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('*') {
            return Ok(Family::DirectProduct(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim();
        let nums: Vec<usize> = params
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| out_of_range(name, format!("`{t}` is not an integer"))))
            .collect::<Result<_, _>>()?;
        let one = |nums: &[usize]| -> Result<usize, GroupError> {
            match nums {
                [n] => Ok(*n),
                _ => Err(out_of_range(name, "expected exactly one parameter")),
            }
        };
        let fam = match name.to_ascii_lowercase().as_str() {
            "cyclic" | "z" => Family::Cyclic(one(&nums)?),
            "elementary" | "elementaryabelian" | "elementary-abelian" => match nums[..] {
                [p, k] => Family::ElementaryAbelian(p, k),
                _ => return Err(out_of_range(name, "expected p,k")),
            },
            "abelian" => Family::Abelian(nums),
            "dihedral" | "d" => Family::Dihedral(one(&nums)?),
            "quaternion" | "q" => Family::Quaternion(one(&nums)?),
            "symmetric" | "s" => Family::Symmetric(one(&nums)?),
            "alternating" | "a" => Family::Alternating(one(&nums)?),
            "heisenberg" => Family::Heisenberg(one(&nums)?),
            "witness" | "witness64" if nums.is_empty() || nums == [64] => Family::Witness64,
            _ => return Err(GroupError::UnknownFamily(name.to_string())),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::ElementaryAbelian(p, k) => write!(f, "elementary:{p},{k}"),
            Family::Abelian(v) => write!(f, "abelian:{}", join(v)),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Quaternion(n) => write!(f, "quaternion:{n}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Alternating(n) => write!(f, "alternating:{n}"),
            Family::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Family::Witness64 => f.write_str("witness:64"),
            Family::DirectProduct(a, b) => write!(f, "{a} * {b}"),
        }
    }
}

/// Permutation generators on 12 points of SmallGroup(64, 177), one of the
/// nine groups of order 64 with nontrivial unramified Brauer group
/// (Chu, Hu, Kang and Kunyavskii; Moravec). `B_0 = Z/2`.
pub const WITNESS_64: [[usize; 12]; 3] = [
    [2, 0, 3, 1, 5, 6, 8, 10, 7, 4, 11, 9],
    [1, 3, 0, 2, 6, 9, 7, 11, 5, 10, 8, 4],
    [1, 0, 3, 2, 4, 8, 11, 7, 5, 10, 9, 6],
];

fn cyclic_table(n: usize) -> Vec<u32> {
    (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect()
}

fn permutations_of(n: usize, even_only: bool) -> Vec<Vec<usize>> {
    // Standard generators: an n-cycle and a transposition for S_n; 3-cycles
    // (0 1 i) for A_n.
    if n < 2 {
        return vec![];
    }
    if even_only {
        (2..n)
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = i;
                p[i] = 0;
                p
            })
            .collect()
    } else {
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut tr: Vec<usize> = (0..n).collect();
        tr.swap(0, 1);
        vec![cycle, tr]
    }
}

/// Builds a member of a standard family.
pub fn catalog(family: &Family) -> Result<FiniteGroup, GroupError> {
    let g = match family {
        Family::Cyclic(n) => {
            if *n == 0 || *n > 4096 {
                return Err(out_of_range("cyclic", "order must be in 1..=4096"));
            }
            FiniteGroup::from_trusted(cyclic_table(*n), *n, 0)
        }
        Family::ElementaryAbelian(p, k) => {
            if !is_prime(*p) {
                return Err(out_of_range("elementary", format!("{p} is not prime")));
            }
            if p.checked_pow(*k as u32).is_none_or(|o| o > 4096) {
                return Err(out_of_range("elementary", "order too large"));
            }
            return catalog(&Family::Abelian(vec![*p; *k])).map(|g| g.with_name(family.to_string()));
        }
        Family::Abelian(factors) => {
            if factors.contains(&0) {
                return Err(out_of_range("abelian", "factors must be positive"));
            }
            let order = factors.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f));
            if order.is_none_or(|o| o > 4096) {
                return Err(out_of_range("abelian", "order too large"));
            }
            let mut g = FiniteGroup::from_trusted(vec![0], 1, 0);
            for &f in factors {
                g = FiniteGroup::direct_product(&g, &catalog(&Family::Cyclic(f))?);
            }
            g
        }
        Family::Dihedral(order) => {
            if *order < 4 || order % 2 != 0 || *order > 4096 {
                return Err(out_of_range("dihedral", "order must be even and at least 4"));
            }
            // x^i y^j at index 2i + j, with y x = x^-1 y
            let n = order / 2;
            let mut t = vec![0u32; order * order];
            for a in 0..*order {
                for b in 0..*order {
                    let (i, j) = (a / 2, a % 2);
                    let (k, l) = (b / 2, b % 2);
                    let e = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                    t[a * order + b] = (2 * e + (j ^ l)) as u32;
                }
            }
            FiniteGroup::from_trusted(t, *order, 0)
        }
        Family::Quaternion(order) => {
            if *order < 8 || !order.is_power_of_two() || *order > 4096 {
                return Err(out_of_range("quaternion", "order must be 2^k with k >= 3"));
            }
            // x^i y^j at index 2i + j; x^n = 1, y^2 = x^(n/2), y x = x^-1 y
            let n = order / 2;
            let mut t = vec![0u32; order * order];
            for a in 0..*order {
                for b in 0..*order {
                    let (i, j) = (a / 2, a % 2);
                    let (k, l) = (b / 2, b % 2);
                    let (mut e, f) = if j == 0 { (i + k, l) } else { (i + n - k, 1 ^ l) };
                    if j == 1 && l == 1 {
                        e += n / 2;
                    }
                    t[a * order + b] = (2 * (e % n) + f) as u32;
                }
            }
            FiniteGroup::from_trusted(t, *order, 0)
        }
        Family::Symmetric(n) | Family::Alternating(n) => {
            let even = matches!(family, Family::Alternating(_));
            if *n == 0 || *n > 6 {
                return Err(out_of_range(if even { "alternating" } else { "symmetric" }, "degree must be in 1..=6"));
            }
            FiniteGroup::from_permutations_with_limit(&permutations_of(*n, even), 720)?
        }
        Family::Heisenberg(p) => {
            if !is_prime(*p) || p * p * p > 4096 {
                return Err(out_of_range("heisenberg", format!("{p} must be a small prime")));
            }
            // (a, b, c) at index (a p + b) p + c; (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
            let p = *p;
            let n = p * p * p;
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    let (a, b, c) = (x / (p * p), x / p % p, x % p);
                    let (a2, b2, c2) = (y / (p * p), y / p % p, y % p);
                    let r = (((a + a2) % p) * p + (b + b2) % p) * p + (c + c2 + a * b2) % p;
                    t[x * n + y] = r as u32;
                }
            }
            FiniteGroup::from_trusted(t, n, 0)
        }
        Family::Witness64 => FiniteGroup::from_permutations(&WITNESS_64.map(|p| p.to_vec()))?,
        Family::DirectProduct(a, b) => FiniteGroup::direct_product(&catalog(a)?, &catalog(b)?),
    };
    Ok(g.with_name(family.to_string()))
}

/// The groups exercised by the acceptance suite, up to the given order.
///
/// Abelian groups appear once per isomorphism type; nonabelian groups are
/// the dihedral, quaternion, symmetric, alternating and Heisenberg members
/// plus a few direct products.
pub fn standard_groups(max_order: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for fs in abelian_types(n) {
            out.push(if fs.len() == 1 { Family::Cyclic(fs[0]) } else { Family::Abelian(fs) });
        }
    }
    for order in (6..=max_order).step_by(2) {
        out.push(Family::Dihedral(order));
    }
    let mut q = 8;
    while q <= max_order {
        out.push(Family::Quaternion(q));
        q *= 2;
    }
    let extra = [
        (24, Family::Symmetric(4)),
        (12, Family::Alternating(4)),
        (27, Family::Heisenberg(3)),
        (16, Family::DirectProduct(Box::new(Family::Dihedral(8)), Box::new(Family::Cyclic(2)))),
        (16, Family::DirectProduct(Box::new(Family::Quaternion(8)), Box::new(Family::Cyclic(2)))),
        (18, Family::DirectProduct(Box::new(Family::Symmetric(3)), Box::new(Family::Cyclic(3)))),
        (24, Family::DirectProduct(Box::new(Family::Alternating(4)), Box::new(Family::Cyclic(2)))),
        (24, Family::DirectProduct(Box::new(Family::Quaternion(8)), Box::new(Family::Cyclic(3)))),
        (24, Family::DirectProduct(Box::new(Family::Dihedral(8)), Box::new(Family::Cyclic(3)))),
        (32, Family::DirectProduct(Box::new(Family::Quaternion(8)), Box::new(Family::Cyclic(4)))),
        (32, Family::DirectProduct(Box::new(Family::Dihedral(8)), Box::new(Family::Cyclic(4)))),
        (32, Family::DirectProduct(Box::new(Family::Dihedral(8)), Box::new(Family::Abelian(vec![2, 2])))),
        (32, Family::DirectProduct(Box::new(Family::Quaternion(8)), Box::new(Family::Abelian(vec![2, 2])))),
    ];
    for (order, fam) in extra {
        if order <= max_order {
            out.push(fam);
        }
    }
    out
}

/// Invariant-factor decompositions `n1 | n2 | ...` of abelian groups of order `n`.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    // descending chains, each factor dividing the previous one
    fn rec(remaining: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for d in (2..=prev.min(remaining)).rev() {
            if prev.is_multiple_of(d) && remaining.is_multiple_of(d) {
                acc.push(d);
                rec(remaining / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f: Family = "dihedral:8".parse().unwrap();
        assert_eq!(f, Family::Dihedral(8));
        let f: Family = "quaternion:8 * cyclic:2".parse().unwrap();
        assert_eq!(f.to_string(), "quaternion:8 * cyclic:2");
        assert!(matches!("foo:3".parse::<Family>(), Err(GroupError::UnknownFamily(_))));
        assert!(matches!("cyclic:x".parse::<Family>(), Err(GroupError::ParamOutOfRange { .. })));
    }

    #[test]
    fn basic_families() {
        let z4 = catalog(&Family::Cyclic(4)).unwrap();
        assert_eq!((z4.order(), z4.exponent()), (4, 4));
        let d = catalog(&Family::Dihedral(8)).unwrap();
        assert_eq!(d.order(), 8);
        assert!(!d.is_abelian());
        assert_eq!(d.elements().filter(|&g| d.element_order(g) == 2).count(), 5);
        let s4 = catalog(&Family::Symmetric(4)).unwrap();
        assert_eq!(s4.order(), 24);
        let a4 = catalog(&Family::Alternating(4)).unwrap();
        assert_eq!(a4.order(), 12);
        let a5 = catalog(&Family::Alternating(5)).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(catalog(&Family::Abelian(vec![2, 6])).unwrap().exponent(), 6);
    }

    #[test]
    fn quaternion_has_unique_involution() {
        for order in [8, 16, 32] {
            let q = catalog(&Family::Quaternion(order)).unwrap();
            assert_eq!(q.order(), order);
            assert_eq!(q.elements().filter(|&g| q.element_order(g) == 2).count(), 1);
        }
    }

    /// Brute force on the matrix model: 3x3 upper unitriangular over Z/3.
    #[test]
    fn heisenberg_matches_matrix_model() {
        let h = catalog(&Family::Heisenberg(3)).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        type M = [[usize; 3]; 3];
        let mat = |x: usize| -> M { [[1, x / 9, x % 3], [0, 1, x / 3 % 3], [0, 0, 1]] };
        let mul = |a: M, b: M| -> M {
            let mut c = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<usize>() % 3;
                }
            }
            c
        };
        for x in 0..27 {
            for y in 0..27 {
                assert_eq!(mat(h.mul(x, y)), mul(mat(x), mat(y)));
            }
        }
    }

    #[test]
    fn witness_shape() {
        let f: Family = "witness:64".parse().unwrap();
        assert_eq!(f, Family::Witness64);
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        let g = catalog(&f).unwrap();
        // exponent and centre as reported by GAP for SmallGroup(64, 177)
        assert_eq!((g.order(), g.exponent()), (64, 8));
        assert_eq!(g.elements().filter(|&z| g.elements().all(|x| g.commute(x, z))).count(), 4);
        assert!("witness:32".parse::<Family>().is_err());
    }

    #[test]
    fn abelian_types_small() {
        assert_eq!(abelian_types(8), vec![vec![8], vec![2, 4], vec![2, 2, 2]]);
        assert_eq!(abelian_types(12), vec![vec![12], vec![2, 6]]);
        assert_eq!(abelian_types(16).len(), 5);
        assert_eq!(abelian_types(32).len(), 7);
        assert_eq!(abelian_types(7), vec![vec![7]]);
    }

    #[test]
    fn bad_params() {
        assert!(catalog(&Family::Quaternion(12)).is_err());
        assert!(catalog(&Family::Symmetric(7)).is_err());
        assert!(catalog(&Family::Heisenberg(4)).is_err());
        assert!(catalog(&Family::ElementaryAbelian(4, 2)).is_err());
    }
}
