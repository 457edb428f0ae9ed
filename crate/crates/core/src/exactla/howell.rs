//! Howell normal form over Z/m.
//!
//! The eliminator keeps one row per leading column. Leading entries are
//! normalized to divisors of `m`, and every row whose lead is not a unit also
//! contributes its annihilator multiple `(m/lead)*row`, which is what makes
//! membership testing by greedy reduction exact when `m` is composite.
//!
//! Rows with a unit lead are kept fully reduced against each other (they are
//! zero on every other unit-lead column). When the eliminator is close to
//! full rank this confines fill-in to the few remaining columns.

use serde::{Deserialize, Serialize};

use super::arith::{ext_gcd, mul_mod, neg_mod, reduce_i64, unit_normalizer};
use super::matrix::{dense_sub, row_axpy, row_scale, row_to_dense, SparseModMatrix, SparseRow};

const NONE: u32 = u32::MAX;

pub struct Eliminator {
    m: u64,
    dim: usize,
    pivots: Vec<Option<SparseRow>>,
    unit: Vec<bool>,
    count: usize,
    acc: Vec<u64>,
    queue: Vec<SparseRow>,
}

impl Eliminator {
    pub fn new(dim: usize, m: u64) -> Self {
        Eliminator {
            m,
            dim,
            pivots: vec![None; dim],
            unit: vec![false; dim],
            count: 0,
            acc: vec![0; dim],
            queue: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of rows currently held.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn unit_count(&self) -> usize {
        self.unit.iter().filter(|&&u| u).count()
    }

    pub fn insert(&mut self, row: &[(u32, u32)]) {
        if self.m == 1 || row.is_empty() {
            return;
        }
        self.process(row);
        while let Some(r) = self.queue.pop() {
            self.process(&r);
        }
    }

    pub fn insert_dense(&mut self, v: &[u64]) {
        let row: SparseRow = v
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| {
                let x = x % self.m;
                (x != 0).then_some((i as u32, x as u32))
            })
            .collect();
        self.insert(&row);
    }

    fn take_acc(&mut self, from: usize) -> SparseRow {
        let mut out = Vec::new();
        for (c, slot) in self.acc.iter_mut().enumerate().skip(from) {
            if *slot != 0 {
                out.push((c as u32, *slot as u32));
                *slot = 0;
            }
        }
        out
    }

    fn process(&mut self, row: &[(u32, u32)]) {
        let m = self.m;
        for &(c, v) in row {
            self.acc[c as usize] = v as u64;
        }
        let mut c = row[0].0 as usize;
        loop {
            while c < self.dim && self.acc[c] == 0 {
                c += 1;
            }
            if c == self.dim {
                return;
            }
            let v = self.acc[c];
            let Some(p) = self.pivots[c].as_ref() else {
                let u = unit_normalizer(v, m);
                let mut r = self.take_acc(c);
                if u != 1 {
                    r = row_scale(&r, u, m);
                }
                self.install(r);
                return;
            };
            let a = p[0].1 as u64;
            if v.is_multiple_of(a) {
                dense_sub(&mut self.acc, v / a, p, m);
                continue;
            }
            // The lead of v generates an ideal not contained in (a): replace
            // the pivot by a Bezout combination and requeue the remainder.
            let u = unit_normalizer(v, m);
            let mut vs = self.take_acc(c);
            if u != 1 {
                vs = row_scale(&vs, u, m);
            }
            let g = vs[0].1 as u64;
            let (h, x, y) = ext_gcd(a as i64, g as i64);
            let h = h as u64;
            let p = self.pivots[c].take().expect("pivot present");
            self.count -= 1;
            let new = row_axpy(&row_scale(&vs, reduce_i64(y, m), m), reduce_i64(x, m), &p, m);
            let other = row_axpy(&row_scale(&vs, neg_mod((a / h) % m, m), m), (g / h) % m, &p, m);
            debug_assert!(other.first().is_none_or(|e| e.0 as usize > c));
            if !other.is_empty() {
                self.queue.push(other);
            }
            self.install(new);
            return;
        }
    }

    /// Stores a row whose lead is a divisor of `m` at an empty pivot slot.
    fn install(&mut self, row: SparseRow) {
        let m = self.m;
        let c = row[0].0 as usize;
        let g = row[0].1 as u64;
        debug_assert!(self.pivots[c].is_none() && m.is_multiple_of(g));
        for &(col, v) in &row {
            self.acc[col as usize] = v as u64;
        }
        for c2 in c + 1..self.dim {
            let e = self.acc[c2];
            if e != 0 && self.unit[c2] {
                let p = self.pivots[c2].as_ref().expect("unit pivot");
                dense_sub(&mut self.acc, e, p, m);
            }
        }
        let row = self.take_acc(c);
        if g != 1 {
            let ann = row_scale(&row, m / g, m);
            if !ann.is_empty() {
                self.queue.push(ann);
            }
        } else {
            self.unit[c] = true;
            for q in self.pivots[..c].iter_mut().flatten() {
                if let Ok(i) = q.binary_search_by_key(&(c as u32), |e| e.0) {
                    let e = q[i].1 as u64;
                    *q = row_axpy(q, neg_mod(e, m), &row, m);
                }
            }
        }
        self.pivots[c] = Some(row);
        self.count += 1;
    }

    /// Canonical Howell basis of everything inserted so far.
    pub fn finish(self) -> HowellBasis {
        let m = self.m;
        let dim = self.dim;
        let pivots = self.pivots;
        let mut acc = self.acc;
        let mut rows = Vec::with_capacity(self.count);
        for (c, p) in pivots.iter().enumerate() {
            let Some(p) = p else { continue };
            for &(col, v) in p {
                acc[col as usize] = v as u64;
            }
            for c2 in c + 1..dim {
                let e = acc[c2];
                if e == 0 {
                    continue;
                }
                if let Some(q) = &pivots[c2] {
                    let a = q[0].1 as u64;
                    if e >= a {
                        dense_sub(&mut acc, e / a, q, m);
                    }
                }
            }
            let mut r = Vec::new();
            for (col, slot) in acc.iter_mut().enumerate().skip(c) {
                if *slot != 0 {
                    r.push((col as u32, *slot as u32));
                    *slot = 0;
                }
            }
            rows.push(r);
        }
        HowellBasis::from_sorted_rows(dim, m, rows)
    }
}

/// A matrix in Howell normal form, with membership and solving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBasis", into = "RawBasis")]
pub struct HowellBasis {
    m: u64,
    dim: usize,
    rows: Vec<SparseRow>,
    pivot_at: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawBasis {
    m: u64,
    dim: usize,
    rows: Vec<SparseRow>,
}

impl TryFrom<RawBasis> for HowellBasis {
    type Error = String;

    fn try_from(r: RawBasis) -> Result<Self, String> {
        let mut last_lead = None;
        for row in &r.rows {
            let well_formed = !row.is_empty()
                && row.windows(2).all(|w| w[0].0 < w[1].0)
                && row.iter().all(|&(c, v)| (c as usize) < r.dim && v != 0 && (v as u64) < r.m);
            if !well_formed || last_lead.is_some_and(|l| l >= row[0].0) {
                return Err("malformed Howell basis".into());
            }
            last_lead = Some(row[0].0);
        }
        Ok(HowellBasis::from_sorted_rows(r.dim, r.m, r.rows))
    }
}

impl From<HowellBasis> for RawBasis {
    fn from(b: HowellBasis) -> Self {
        RawBasis { m: b.m, dim: b.dim, rows: b.rows }
    }
}

impl HowellBasis {
    fn from_sorted_rows(dim: usize, m: u64, rows: Vec<SparseRow>) -> Self {
        let mut b = HowellBasis { m, dim, rows, pivot_at: Vec::new() };
        b.index();
        b
    }

    fn index(&mut self) {
        self.pivot_at = vec![NONE; self.dim];
        for (i, r) in self.rows.iter().enumerate() {
            self.pivot_at[r[0].0 as usize] = i as u32;
        }
    }

    pub fn empty(dim: usize, m: u64) -> Self {
        Self::from_sorted_rows(dim, m, Vec::new())
    }

    pub fn from_rows<'a>(dim: usize, m: u64, rows: impl IntoIterator<Item = &'a [(u32, u32)]>) -> Self {
        let mut e = Eliminator::new(dim, m);
        for r in rows {
            e.insert(r);
        }
        e.finish()
    }

    pub fn from_matrix(a: &SparseModMatrix) -> Self {
        Self::from_rows(a.cols(), a.modulus(), a.row_data().iter().map(|r| r.as_slice()))
    }

    pub fn to_matrix(&self) -> SparseModMatrix {
        SparseModMatrix::from_rows(self.dim, self.m, self.rows.clone()).expect("normalized rows")
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.rows[i]
    }

    /// `(column, value)` of the leading entry of row `i`.
    pub fn lead(&self, i: usize) -> (usize, u64) {
        (self.rows[i][0].0 as usize, self.rows[i][0].1 as u64)
    }

    /// Row index whose lead sits in column `c`.
    pub fn pivot_row(&self, c: usize) -> Option<usize> {
        match self.pivot_at[c] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    /// log2 of the span size is awkward for composite m; the span has
    /// `prod(m / lead)` elements, returned as a list of those factors.
    pub fn span_factors(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.m / self.lead(i).1).collect()
    }

    /// Reduces `v` in place; returns the coefficients used if `v` lies in
    /// the span (then `v` ends up zero).
    pub fn reduce(&self, v: &mut [u64]) -> Option<Vec<u64>> {
        let m = self.m;
        let mut coeffs = vec![0u64; self.rows.len()];
        for c in 0..self.dim {
            let e = v[c] % m;
            if e == 0 {
                continue;
            }
            let i = self.pivot_row(c)?;
            let a = self.rows[i][0].1 as u64;
            if !e.is_multiple_of(a) {
                return None;
            }
            let q = e / a;
            coeffs[i] = q;
            dense_sub(v, q, &self.rows[i], m);
        }
        Some(coeffs)
    }

    pub fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut w: Vec<u64> = v.iter().map(|x| x % self.m).collect();
        self.reduce(&mut w)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.solve(v).is_some()
    }

    pub fn contains_row(&self, r: &[(u32, u32)]) -> bool {
        self.contains(&row_to_dense(r, self.dim))
    }

    pub fn contains_all(&self, other: &HowellBasis) -> bool {
        other.rows.iter().all(|r| self.contains_row(r))
    }

    /// Linear combination `sum coeffs[i] * row_i` as a dense vector.
    pub fn combine(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        for (i, &c) in coeffs.iter().enumerate() {
            if c % self.m != 0 {
                super::matrix::dense_axpy(&mut v, c % self.m, &self.rows[i], self.m);
            }
        }
        v
    }

    /// Kernel of the functionals held in this basis: all `w` with
    /// `f . w = 0` for every row `f`.
    pub fn annihilated(&self) -> HowellBasis {
        let m = self.m;
        let dim = self.dim;
        let is_unit = |i: usize| self.rows[i][0].1 == 1;
        let unit_cols: Vec<bool> = {
            let mut u = vec![false; dim];
            for i in 0..self.len() {
                if is_unit(i) {
                    u[self.lead(i).0] = true;
                }
            }
            u
        };
        let jcols: Vec<usize> = (0..dim).filter(|&c| !unit_cols[c]).collect();
        let mut jpos = vec![NONE; dim];
        for (k, &c) in jcols.iter().enumerate() {
            jpos[c] = k as u32;
        }
        let nonunit: Vec<usize> = (0..self.len()).filter(|&i| !is_unit(i)).collect();
        let k = nonunit.len();
        // Kernel over the J columns of the non-unit rows, via the augmented
        // system [N^T | I].
        let mut cols_of_n: Vec<SparseRow> = vec![Vec::new(); jcols.len()];
        for (ri, &i) in nonunit.iter().enumerate() {
            for &(c, v) in &self.rows[i] {
                let j = jpos[c as usize];
                debug_assert!(j != NONE, "non-unit row touches a unit column");
                cols_of_n[j as usize].push((ri as u32, v));
            }
        }
        let mut aug = Eliminator::new(k + jcols.len(), m);
        for (j, col) in cols_of_n.iter_mut().enumerate() {
            col.push(((k + j) as u32, 1));
            aug.insert(col);
        }
        let aug = aug.finish();
        let mut out = Eliminator::new(dim, m);
        let mut w = vec![0u64; dim];
        for r in aug.rows() {
            if (r[0].0 as usize) < k {
                continue;
            }
            for &(c, v) in r {
                w[jcols[c as usize - k]] = v as u64;
            }
            for i in 0..self.len() {
                if is_unit(i) {
                    let f = &self.rows[i];
                    let s = f[1..].iter().fold(0u64, |s, &(c, v)| (s + mul_mod(v as u64, w[c as usize], m)) % m);
                    w[f[0].0 as usize] = neg_mod(s, m);
                }
            }
            out.insert_dense(&w);
            w.iter_mut().for_each(|x| *x = 0);
        }
        out.finish()
    }
}

/// Canonical Howell form of the row span of `a`.
pub fn howell_form(a: &SparseModMatrix) -> SparseModMatrix {
    HowellBasis::from_matrix(a).to_matrix()
}

/// Howell basis of the left kernel `{x : x a = 0}`.
pub fn kernel(a: &SparseModMatrix) -> SparseModMatrix {
    let t = a.transpose();
    let f = HowellBasis::from_matrix(&t);
    f.annihilated().to_matrix()
}

/// Kernel of a family of functionals on `(Z/m)^dim`.
pub fn functional_kernel<'a>(
    dim: usize,
    m: u64,
    functionals: impl IntoIterator<Item = &'a [(u32, u32)]>,
) -> HowellBasis {
    HowellBasis::from_rows(dim, m, functionals).annihilated()
}
