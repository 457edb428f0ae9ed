//! Finite subquotients `K/B` of `(Z/m)^n` with invariant factors, generator
//! lifts and a coordinate solver.
//!
//! Columns where the Howell form of `B` has a unit pivot are eliminated
//! first: the map `pi` that subtracts those unit rows has kernel inside `B`,
//! so `K/B` is isomorphic to `pi(K)/pi(B)`, which lives in the remaining
//! columns only. For cohomology this removes almost all of the coboundary
//! directions before any quotient structure is computed.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::arith::{ext_gcd, gcd, lcm, mul_mod, neg_mod, reduce_i64, sub_mod, unit_normalizer};
use super::howell::{kernel, HowellBasis};
use super::matrix::{dense_axpy, dense_sub, row_to_dense, SparseModMatrix, SparseRow};
use super::LinAlgError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModSubquotient {
    modulus: u64,
    ambient_dim: usize,
    /// Unit-pivot rows of the denominator, in ambient coordinates, each zero
    /// on the other unit columns.
    unit_rows: Vec<SparseRow>,
    /// Ambient column of each reduced coordinate.
    reduced_cols: Vec<u32>,
    numerator: HowellBasis,
    denominator: HowellBasis,
    factors: Vec<u64>,
    /// `coords[j][i]`: contribution of numerator row `i` to coordinate `j`.
    coords: Vec<Vec<u64>>,
    lifts: Vec<SparseRow>,
}

impl ModSubquotient {
    /// `K/B` for row spans `K` and `B` of two matrices.
    pub fn new(numerator: &SparseModMatrix, denominator: &SparseModMatrix) -> Result<Self, LinAlgError> {
        if numerator.modulus() != denominator.modulus() {
            return Err(LinAlgError::ModulusMismatch(numerator.modulus(), denominator.modulus()));
        }
        if numerator.cols() != denominator.cols() {
            return Err(LinAlgError::DimensionMismatch { expected: numerator.cols(), found: denominator.cols() });
        }
        let kb = HowellBasis::from_matrix(numerator);
        let bb = HowellBasis::from_matrix(denominator);
        if !kb.contains_all(&bb) {
            return Err(LinAlgError::NotASubmodule);
        }
        let mut sq = Self::reduction(&bb);
        let m = sq.modulus;
        let red = HowellBasis::from_rows(
            sq.reduced_cols.len(),
            m,
            kb.rows().iter().map(|r| sq.project_row(r)).collect::<Vec<_>>().iter().map(|r| r.as_slice()),
        );
        sq.finish(red)?;
        Ok(sq)
    }

    /// `Z/B` where `Z` is the common kernel of the given functionals on
    /// `(Z/m)^dim`; `B` must satisfy all of them.
    pub fn from_constraints<'a>(
        denominator: &HowellBasis,
        constraints: impl IntoIterator<Item = &'a [(u32, u32)]>,
    ) -> Result<Self, LinAlgError> {
        let mut sq = Self::reduction(denominator);
        let n = sq.reduced_cols.len();
        let mut position = vec![u32::MAX; sq.ambient_dim];
        for (k, &c) in sq.reduced_cols.iter().enumerate() {
            position[c as usize] = k as u32;
        }
        let kb = {
            let mut elim = super::Eliminator::new(n, sq.modulus);
            for f in constraints {
                let r: SparseRow = f
                    .iter()
                    .filter(|&&(c, _)| position[c as usize] != u32::MAX)
                    .map(|&(c, v)| (position[c as usize], v))
                    .collect();
                elim.insert(&r);
            }
            elim.finish().annihilated()
        };
        sq.finish(kb)?;
        Ok(sq)
    }

    /// Sets up the unit-column elimination for denominator `b`; the
    /// numerator is filled in by `finish`.
    fn reduction(b: &HowellBasis) -> Self {
        let m = b.modulus();
        let dim = b.dim();
        let mut unit_rows = Vec::new();
        let mut is_unit_col = vec![false; dim];
        let mut rest = Vec::new();
        for r in b.rows() {
            if r[0].1 == 1 {
                is_unit_col[r[0].0 as usize] = true;
                unit_rows.push(r.clone());
            } else {
                rest.push(r.clone());
            }
        }
        let reduced_cols: Vec<u32> = (0..dim as u32).filter(|&c| !is_unit_col[c as usize]).collect();
        let mut position = vec![u32::MAX; dim];
        for (k, &c) in reduced_cols.iter().enumerate() {
            position[c as usize] = k as u32;
        }
        // Howell rows are reduced, so non-unit rows vanish on unit columns.
        let rest: Vec<SparseRow> =
            rest.iter().map(|r| r.iter().map(|&(c, v)| (position[c as usize], v)).collect()).collect();
        let denominator = HowellBasis::from_rows(reduced_cols.len(), m, rest.iter().map(|r| r.as_slice()));
        ModSubquotient {
            modulus: m,
            ambient_dim: dim,
            unit_rows,
            reduced_cols,
            numerator: HowellBasis::empty(0, m),
            denominator,
            factors: Vec::new(),
            coords: Vec::new(),
            lifts: Vec::new(),
        }
    }

    fn finish(&mut self, numerator: HowellBasis) -> Result<(), LinAlgError> {
        let m = self.modulus;
        if !numerator.contains_all(&self.denominator) {
            return Err(LinAlgError::NotASubmodule);
        }
        let r = numerator.len();
        let mut rel: Vec<Vec<u64>> = Vec::new();
        let relations = kernel(&numerator.to_matrix());
        for i in 0..relations.rows() {
            rel.push(row_to_dense(relations.row(i), r));
        }
        for b in self.denominator.rows() {
            let x = numerator.solve(&row_to_dense(b, numerator.dim())).ok_or(LinAlgError::NotASubmodule)?;
            rel.push(x);
        }
        let snf = smith_mod(rel, r, m);
        let kept: Vec<usize> = (0..r).filter(|&i| snf.diagonal[i] != 1).collect();
        self.factors = kept.iter().map(|&i| snf.diagonal[i]).collect();
        self.coords = kept.iter().map(|&j| (0..r).map(|i| snf.v[i][j]).collect()).collect();
        self.lifts = kept
            .iter()
            .map(|&j| {
                let red = numerator.combine(&snf.v_inv[j]);
                self.embed(&red)
            })
            .collect();
        self.numerator = numerator;
        Ok(())
    }

    fn project_row(&self, r: &[(u32, u32)]) -> SparseRow {
        let v = self.project(&row_to_dense(r, self.ambient_dim));
        super::matrix::row_from_dense(&v)
    }

    /// Applies `pi` and returns reduced coordinates.
    pub fn project(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut w: Vec<u64> = v.iter().map(|x| x % m).collect();
        for row in &self.unit_rows {
            let e = w[row[0].0 as usize];
            if e != 0 {
                dense_sub(&mut w, e, row, m);
            }
        }
        self.reduced_cols.iter().map(|&c| w[c as usize]).collect()
    }

    /// Pads a reduced vector with zeros in the eliminated columns.
    fn embed(&self, red: &[u64]) -> SparseRow {
        self.reduced_cols.iter().zip(red).filter(|(_, &x)| x != 0).map(|(&c, &x)| (c, x as u32)).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of coordinates left after eliminating unit denominator columns.
    pub fn reduced_dim(&self) -> usize {
        self.reduced_cols.len()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&d| BigUint::from(d)).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Generator `j` as an ambient vector lying in the numerator.
    pub fn generator(&self, j: usize) -> Vec<u64> {
        row_to_dense(&self.lifts[j], self.ambient_dim)
    }

    pub fn generator_sparse(&self, j: usize) -> &[(u32, u32)] {
        &self.lifts[j]
    }

    /// Ambient vector representing the class with the given coordinates.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.ambient_dim];
        for (j, &c) in coords.iter().enumerate() {
            if c % self.factors[j] != 0 {
                dense_axpy(&mut v, c % self.modulus, &self.lifts[j], self.modulus);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.numerator.contains(&self.project(v))
    }

    /// Coordinates of the class of `v` with respect to the generators.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<u64>, LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let x = self.numerator.solve(&self.project(v)).ok_or(LinAlgError::NotInNumerator)?;
        Ok(self.coords_of_numerator_combination(&x))
    }

    fn coords_of_numerator_combination(&self, x: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        self.coords
            .iter()
            .zip(&self.factors)
            .map(|(col, &d)| {
                let s = col.iter().zip(x).fold(0u64, |s, (&a, &b)| (s + mul_mod(a, b, m)) % m);
                s % d
            })
            .collect()
    }

    /// Whether `v` (assumed in the numerator) lies in the denominator.
    pub fn is_zero_class(&self, v: &[u64]) -> Result<bool, LinAlgError> {
        Ok(self.coordinates(v)?.iter().all(|&c| c == 0))
    }

    /// Denominator membership for an ambient vector.
    pub fn in_denominator(&self, v: &[u64]) -> bool {
        self.denominator.contains(&self.project(v))
    }

    /// Generators of the numerator in ambient coordinates.
    pub fn numerator_generators(&self) -> Vec<SparseRow> {
        let mut out = self.unit_rows.clone();
        out.extend(self.numerator.rows().iter().map(|r| {
            let red = row_to_dense(r, self.reduced_cols.len());
            self.embed(&red)
        }));
        out
    }

    /// Checks the structural invariants; used after loading from a cache.
    pub fn validate(&self) -> Result<(), LinAlgError> {
        let m = self.modulus;
        let chain = self.factors.windows(2).all(|w| w[1] % w[0] == 0);
        let divides = self.factors.iter().all(|&d| d > 1 && m.is_multiple_of(d));
        let shapes = self.lifts.len() == self.factors.len()
            && self.coords.len() == self.factors.len()
            && self.coords.iter().all(|c| c.len() == self.numerator.len())
            && self.reduced_cols.len() == self.numerator.dim()
            && self.reduced_cols.iter().all(|&c| (c as usize) < self.ambient_dim)
            && self.unit_rows.iter().all(|r| r.iter().all(|&(c, _)| (c as usize) < self.ambient_dim))
            && self.lifts.iter().all(|r| r.iter().all(|&(c, _)| (c as usize) < self.ambient_dim));
        if !(chain && divides && shapes) {
            return Err(LinAlgError::NotASubmodule);
        }
        for j in 0..self.factors.len() {
            let g = self.generator(j);
            let mut e = vec![0u64; self.factors.len()];
            e[j] = 1;
            if self.coordinates(&g)? != e {
                return Err(LinAlgError::NotInNumerator);
            }
            let dg: Vec<u64> = g.iter().map(|&x| mul_mod(x, self.factors[j] % m, m)).collect();
            if !self.in_denominator(&dg) {
                return Err(LinAlgError::NotASubmodule);
            }
        }
        Ok(())
    }
}

/// Diagonalization of a dense matrix over Z/m by row operations and tracked
/// column operations: `P * A * V = diag(diagonal)` up to units.
pub struct SmithMod {
    /// One entry per column of `A`: the divisor of `m` generating that
    /// diagonal ideal (`m` stands for zero), in divisibility order.
    pub diagonal: Vec<u64>,
    pub v: Vec<Vec<u64>>,
    pub v_inv: Vec<Vec<u64>>,
}

struct ColOps<'a> {
    a: &'a mut [Vec<u64>],
    v: Vec<Vec<u64>>,
    v_inv: Vec<Vec<u64>>,
    m: u64,
}

impl ColOps<'_> {
    /// `col_j += c * col_i`.
    fn add(&mut self, j: usize, i: usize, c: u64) {
        let m = self.m;
        if c == 0 {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[j] = (row[j] + mul_mod(c, row[i], m)) % m;
        }
        // Inverse: row_i of V^-1 -= c * row_j.
        let (ri, rj) = two_rows(&mut self.v_inv, i, j);
        for (x, &y) in ri.iter_mut().zip(rj.iter()) {
            *x = sub_mod(*x, mul_mod(c, y, m), m);
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// `[col_i, col_j] <- [col_i, col_j] * [[x, p], [y, q]]` where the 2x2
    /// matrix has determinant -1 and inverse `[[-q, p], [y, -x]]`.
    fn combine(&mut self, i: usize, j: usize, x: u64, y: u64, p: u64, q: u64) {
        let m = self.m;
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let (ci, cj) = (row[i], row[j]);
            row[i] = (mul_mod(ci, x, m) + mul_mod(cj, y, m)) % m;
            row[j] = (mul_mod(ci, p, m) + mul_mod(cj, q, m)) % m;
        }
        let (ri, rj) = two_rows(&mut self.v_inv, i, j);
        for (a, b) in ri.iter_mut().zip(rj.iter_mut()) {
            let (u, w) = (*a, *b);
            *a = (mul_mod(neg_mod(q, m), u, m) + mul_mod(p, w, m)) % m;
            *b = (mul_mod(y, u, m) + mul_mod(neg_mod(x, m), w, m)) % m;
        }
    }
}

fn two_rows<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i != j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

#[allow(clippy::too_many_arguments)]
fn row_combine(a: &mut [Vec<u64>], t: usize, i: usize, x: u64, y: u64, p: u64, q: u64, m: u64) {
    // row_t <- x row_t + y row_i ; row_i <- p row_t + q row_i
    let (rt, ri) = two_rows(a, t, i);
    for (u, w) in rt.iter_mut().zip(ri.iter_mut()) {
        let (s, r) = (*u, *w);
        *u = (mul_mod(x, s, m) + mul_mod(y, r, m)) % m;
        *w = (mul_mod(p, s, m) + mul_mod(q, r, m)) % m;
    }
}

/// Smith form over Z/m of a dense `rows x n` matrix.
pub fn smith_mod(mut a: Vec<Vec<u64>>, n: usize, m: u64) -> SmithMod {
    let identity =
        |n: usize| -> Vec<Vec<u64>> { (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % m).collect()).collect() };
    for row in a.iter_mut() {
        row.iter_mut().for_each(|x| *x %= m);
    }
    let q = a.len();
    let mut ops = ColOps { a: &mut a, v: identity(n), v_inv: identity(n), m };
    let mut diagonal = vec![m; n];
    let mut t = 0;
    while t < q.min(n) {
        let mut best: Option<(usize, usize, u64)> = None;
        'search: for i in t..q {
            for j in t..n {
                let x = ops.a[i][j];
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|b| g < b.2) {
                        best = Some((i, j, g));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        ops.a.swap(t, bi);
        ops.swap(t, bj);
        let u = unit_normalizer(ops.a[t][t], m);
        ops.a[t].iter_mut().for_each(|x| *x = mul_mod(*x, u, m));
        loop {
            for i in t + 1..q {
                let b = ops.a[i][t];
                if b == 0 {
                    continue;
                }
                let p = ops.a[t][t];
                if b.is_multiple_of(p) {
                    let c = neg_mod(b / p, m);
                    let (rt, ri) = two_rows(ops.a, t, i);
                    for (w, &s) in ri.iter_mut().zip(rt.iter()) {
                        *w = (*w + mul_mod(c, s, m)) % m;
                    }
                } else {
                    let (h, x, y) = ext_gcd(p as i64, b as i64);
                    let h = h as u64;
                    row_combine(
                        ops.a,
                        t,
                        i,
                        reduce_i64(x, m),
                        reduce_i64(y, m),
                        (b / h) % m,
                        neg_mod((p / h) % m, m),
                        m,
                    );
                }
            }
            let mut refilled = false;
            for j in t + 1..n {
                let b = ops.a[t][j];
                if b == 0 {
                    continue;
                }
                let p = ops.a[t][t];
                if b.is_multiple_of(p) {
                    ops.add(j, t, neg_mod(b / p, m));
                } else {
                    let (h, x, y) = ext_gcd(p as i64, b as i64);
                    let h = h as u64;
                    ops.combine(t, j, reduce_i64(x, m), reduce_i64(y, m), (b / h) % m, neg_mod((p / h) % m, m));
                    refilled = true;
                }
            }
            if !refilled || (t + 1..q).all(|i| ops.a[i][t] == 0) {
                break;
            }
        }
        diagonal[t] = gcd(ops.a[t][t], m);
        t += 1;
    }
    // Enforce d_i | d_j for i < j on the diagonal.
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diagonal[i], diagonal[j]);
            if b % a == 0 {
                continue;
            }
            let (g, _, y) = ext_gcd(a as i64, b as i64);
            let g = g as u64;
            ops.add(i, j, 1);
            let c = mul_mod(reduce_i64(y, m), (b / g) % m, m);
            ops.add(j, i, neg_mod(c, m));
            diagonal[i] = g;
            diagonal[j] = lcm(a, b);
        }
    }
    SmithMod { diagonal, v: ops.v, v_inv: ops.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::functional_kernel;
    use proptest::prelude::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn span(rows: &[Vec<u64>], dim: usize, m: u64) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; dim]);
        for r in rows {
            let mut frontier: Vec<Vec<u64>> = set.iter().cloned().collect();
            while let Some(v) = frontier.pop() {
                let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % m).collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        set
    }

    fn torsion_counts_of_factors(f: &[u64], n: u64) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                out.insert(d, f.iter().map(|&x| gcd(x, d) as usize).product());
            }
        }
        out
    }

    fn mat(m: u64, cols: usize, rows: &[Vec<i64>]) -> SparseModMatrix {
        SparseModMatrix::from_dense(m, cols, rows).unwrap()
    }

    #[test]
    fn small_examples() {
        let full = mat(4, 1, &[vec![1]]);
        let zero = mat(4, 1, &[]);
        assert_eq!(ModSubquotient::new(&full, &zero).unwrap().invariant_factors(), &[4]);
        let two = mat(4, 1, &[vec![2]]);
        assert_eq!(ModSubquotient::new(&full, &two).unwrap().invariant_factors(), &[2]);
        let k = mat(4, 2, &[vec![2, 0], vec![0, 1]]);
        let b = mat(4, 2, &[vec![0, 2]]);
        assert_eq!(ModSubquotient::new(&k, &b).unwrap().invariant_factors(), &[2, 2]);
        assert_eq!(ModSubquotient::new(&b, &k).unwrap_err(), LinAlgError::NotASubmodule);
        let sq = ModSubquotient::new(&b, &zero_like(&b)).unwrap();
        assert_eq!(sq.coordinates(&[1, 0]).unwrap_err(), LinAlgError::NotInNumerator);
    }

    fn zero_like(a: &SparseModMatrix) -> SparseModMatrix {
        SparseModMatrix::zero(0, a.cols(), a.modulus()).unwrap()
    }

    #[test]
    fn smith_mod_examples() {
        // diag(4, 6) over Z/12 -> ideals (2), (12/..): Z/12 / (4) + Z/12 / (6) = Z/4 + Z/6 = Z/2 + Z/12
        let s = smith_mod(vec![vec![4, 0], vec![0, 6]], 2, 12);
        assert_eq!(s.diagonal, vec![2, 12]);
        let s = smith_mod(vec![], 3, 5);
        assert_eq!(s.diagonal, vec![5, 5, 5]);
    }

    fn arb_pair() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>, Vec<Vec<u64>>)> {
        (2u64..=12, 1usize..=3).prop_flat_map(|(m, dim)| {
            let vecs = proptest::collection::vec(proptest::collection::vec(0..m, dim), 0..=3);
            (Just(m), Just(dim), vecs.clone(), proptest::collection::vec(proptest::collection::vec(0..m, 3), 0..=3))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn quotient_matches_brute_force((m, dim, krows, bmix) in arb_pair()) {
            // B is built from combinations of K's rows so that B is inside K.
            let brows: Vec<Vec<u64>> = bmix.iter().map(|c| {
                let mut v = vec![0u64; dim];
                for (coef, r) in c.iter().zip(&krows) {
                    for (x, y) in v.iter_mut().zip(r) { *x = (*x + coef * y) % m; }
                }
                v
            }).collect();
            let to_i = |rs: &[Vec<u64>]| rs.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<Vec<i64>>>();
            let k = mat(m, dim, &to_i(&krows));
            let b = SparseModMatrix::from_dense(m, dim, &to_i(&brows)).unwrap();
            let sq = ModSubquotient::new(&k, &b).unwrap();
            sq.validate().unwrap();
            let kspan = span(&krows, dim, m);
            let bspan = span(&brows, dim, m);
            // quotient order
            let order: u64 = sq.invariant_factors().iter().product();
            prop_assert_eq!(order as usize * bspan.len(), kspan.len());
            // the coordinate map is a well-defined bijection K/B -> prod Z/d_i
            let mut seen = BTreeMap::new();
            for v in &kspan {
                let c = sq.coordinates(v).unwrap();
                let rep = bspan.iter().map(|b| v.iter().zip(b).map(|(x, y)| (x + m - y) % m).collect::<Vec<_>>()).min().unwrap();
                if let Some(prev) = seen.insert(c.clone(), rep.clone()) {
                    prop_assert_eq!(prev, rep);
                }
                // lift of the coordinates is in the same class
                let l = sq.lift(&c);
                let diff: Vec<u64> = v.iter().zip(&l).map(|(x, y)| (x + m - y) % m).collect();
                prop_assert!(bspan.contains(&diff));
            }
            prop_assert_eq!(seen.len() as u64, order);
            // structure: the counts |{x : d x = 0}| determine the isomorphism type
            let mut counts = BTreeMap::new();
            for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
                let killed = kspan.iter().filter(|v| {
                    let dv: Vec<u64> = v.iter().map(|x| x * d % m).collect();
                    bspan.contains(&dv)
                }).count();
                counts.insert(d, killed / bspan.len());
            }
            prop_assert_eq!(counts, torsion_counts_of_factors(sq.invariant_factors(), order));
            // vectors outside K are rejected
            let mut v = vec![0u64; dim];
            loop {
                prop_assert_eq!(sq.contains(&v), kspan.contains(&v));
                let mut i = 0;
                while i < dim { v[i] += 1; if v[i] < m { break; } v[i] = 0; i += 1; }
                if i == dim { break; }
            }
        }

        #[test]
        fn constraint_route_matches_explicit_kernel((m, dim, frows, _b) in arb_pair()) {
            let to_i = |rs: &[Vec<u64>]| rs.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<Vec<i64>>>();
            let f = mat(m, dim, &to_i(&frows));
            let kb = functional_kernel(dim, m, f.row_data().iter().map(|r| r.as_slice()));
            // brute-force kernel
            let mut count = 0usize;
            let mut v = vec![0u64; dim];
            loop {
                let inker = frows.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % m == 0);
                prop_assert_eq!(kb.contains(&v), inker);
                count += inker as usize;
                let mut i = 0;
                while i < dim { v[i] += 1; if v[i] < m { break; } v[i] = 0; i += 1; }
                if i == dim { break; }
            }
            prop_assert_eq!(kb.span_factors().iter().product::<u64>() as usize, count);
            // quotient by a sub-span of the kernel, both routes
            let half: Vec<SparseRow> = kb.rows().iter().take(1).map(|r| crate::exactla::row_scale(r, 2, m)).collect();
            let bmat = SparseModMatrix::from_rows(dim, m, half.clone()).unwrap();
            let a = ModSubquotient::new(&kb.to_matrix(), &bmat).unwrap();
            let bb = HowellBasis::from_matrix(&bmat);
            let b = ModSubquotient::from_constraints(&bb, f.row_data().iter().map(|r| r.as_slice())).unwrap();
            prop_assert_eq!(a.invariant_factors(), b.invariant_factors());
        }
    }
}
