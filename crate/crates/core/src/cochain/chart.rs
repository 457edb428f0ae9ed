//! Cocycle charts.
//!
//! A normalized n-cocycle is pinned down by its values on the tuples
//! `(g_1, ..., g_{n-1}, x)` whose last entry lies in a small generating set
//! `S`. The cocycle identity on `(g_1, ..., g_{n-1}, h, x)` expresses the value
//! at `(..., h x)` through the value at `(..., h)` and values that already end
//! in `x`, so walking a spanning tree of the Cayley graph from the identity
//! recovers every value as an integer combination of those parameters. The
//! identity on non-tree edges gives the linear constraints on the parameters.
//! None of this depends on the modulus.

use std::sync::Arc;

use rayon::prelude::*;

use crate::exactla::{SparseModMatrix, SparseRow};
use crate::groups::FiniteGroup;

const NONE: u32 = u32::MAX;

/// Integer expansion of one cochain value in terms of the parameters.
pub type Expansion = Vec<(u32, i32)>;

pub struct Chart {
    group: Arc<FiniteGroup>,
    degree: usize,
    /// Number of non-identity elements.
    base: usize,
    /// Element -> position among the non-identity elements.
    nid: Vec<u32>,
    gens: Vec<usize>,
    gen_pos: Vec<u32>,
    /// `y = h * gens[k]` for the tree edge into `y`.
    tree: Vec<(u32, u32)>,
    bfs: Vec<usize>,
    expansions: Vec<Expansion>,
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart")
            .field("group", &self.group.name())
            .field("degree", &self.degree)
            .field("params", &self.param_count())
            .finish()
    }
}

/// Rough work estimate used for budget checks: tuples times generators.
pub fn chart_cost(group: &FiniteGroup, degree: usize) -> u64 {
    let base = group.order() as u64 - 1;
    let gens = group.small_generating_set().len().max(1) as u64;
    (0..degree).fold(gens, |acc, _| acc.saturating_mul(base))
}

impl Chart {
    pub fn new(group: Arc<FiniteGroup>, degree: usize) -> Chart {
        let n = group.order();
        let e = group.identity();
        let mut nid = vec![NONE; n];
        let mut k = 0u32;
        for g in group.elements() {
            if g != e {
                nid[g] = k;
                k += 1;
            }
        }
        let gens = group.small_generating_set();
        let mut gen_pos = vec![NONE; n];
        for (i, &x) in gens.iter().enumerate() {
            gen_pos[x] = i as u32;
        }
        // breadth-first right-multiplication tree; generators sit at depth one
        let mut tree = vec![(NONE, NONE); n];
        let mut seen = vec![false; n];
        seen[e] = true;
        let mut queue = std::collections::VecDeque::from([e]);
        let mut bfs = Vec::with_capacity(n.saturating_sub(1));
        while let Some(h) = queue.pop_front() {
            for (i, &x) in gens.iter().enumerate() {
                let y = group.mul(h, x);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = (h as u32, i as u32);
                    bfs.push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut chart = Chart { group, degree, base: n - 1, nid, gens, gen_pos, tree, bfs, expansions: Vec::new() };
        chart.expansions = chart.build_expansions();
        chart
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Number of normalized k-tuples.
    pub fn tuple_count(&self, k: usize) -> usize {
        self.base.pow(k as u32)
    }

    pub fn param_count(&self) -> usize {
        if self.degree == 0 {
            1
        } else {
            self.tuple_count(self.degree - 1) * self.gens.len()
        }
    }

    /// Index of a tuple among normalized tuples of its length, or `None` if
    /// it contains the identity.
    pub fn index(&self, t: &[usize]) -> Option<usize> {
        let mut idx = 0usize;
        for &g in t {
            let p = self.nid[g];
            if p == NONE {
                return None;
            }
            idx = idx * self.base + p as usize;
        }
        Some(idx)
    }

    /// Inverse of `index` for tuples of length `len`.
    pub fn decode(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            let p = idx % self.base;
            idx /= self.base;
            // position p is the p-th non-identity element
            *slot = if p < self.group.identity() { p } else { p + 1 };
        }
        t
    }

    fn param_of(&self, prefix: &[usize], x_pos: u32) -> Option<u32> {
        let pi = self.index(prefix)?;
        Some((pi * self.gens.len()) as u32 + x_pos)
    }

    /// The tuple whose value is parameter `p`.
    pub fn param_tuple(&self, p: usize) -> Vec<usize> {
        if self.degree == 0 {
            return Vec::new();
        }
        let s = self.gens.len();
        let mut t = self.decode(p / s, self.degree - 1);
        t.push(self.gens[p % s]);
        t
    }

    /// Expansion of the value at the normalized n-tuple with index `idx`.
    pub fn expansion(&self, idx: usize) -> &[(u32, i32)] {
        &self.expansions[idx]
    }

    /// Value of the cocycle with parameters `params` at tuple `t`.
    pub fn eval(&self, params: &[u64], m: u64, t: &[usize]) -> u64 {
        debug_assert_eq!(t.len(), self.degree);
        let Some(idx) = self.index(t) else { return 0 };
        let mut acc: i128 = 0;
        for &(p, c) in &self.expansions[idx] {
            acc += c as i128 * params[p as usize] as i128;
        }
        acc.rem_euclid(m as i128) as u64
    }

    /// Values at all normalized n-tuples.
    pub fn expand(&self, params: &[u64], m: u64) -> Vec<u64> {
        self.expansions
            .iter()
            .map(|ex| {
                let acc: i128 = ex.iter().map(|&(p, c)| c as i128 * params[p as usize] as i128).sum();
                acc.rem_euclid(m as i128) as u64
            })
            .collect()
    }

    /// Parameters of a full cochain given by its values at normalized tuples.
    pub fn params_of(&self, values: &[u64]) -> Vec<u64> {
        (0..self.param_count())
            .map(|p| {
                let t = self.param_tuple(p);
                self.index(&t).map_or(0, |i| values[i])
            })
            .collect()
    }

    /// Faces `d_0 .. d_{n-1}` of `(g_1, .., g_{n-1}, h, x)`: they all end in
    /// `x` and so are parameters. Pushes `(param, sign)` terms.
    fn param_faces(&self, prefix: &[usize], h: usize, x_pos: u32, out: &mut Vec<(u32, i64)>) {
        let n = self.degree;
        let mut t: Vec<usize> = prefix.to_vec();
        t.push(h);
        let mut face = Vec::with_capacity(n - 1);
        for i in 0..n {
            face.clear();
            if i == 0 {
                face.extend_from_slice(&t[1..]);
            } else {
                face.extend_from_slice(&t[..i - 1]);
                face.push(self.group.mul(t[i - 1], t[i]));
                face.extend_from_slice(&t[i + 1..]);
            }
            if let Some(p) = self.param_of(&face, x_pos) {
                out.push((p, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
    }

    fn build_expansions(&self) -> Vec<Expansion> {
        let n = self.degree;
        if n == 0 {
            return vec![vec![(0, 1)]];
        }
        let sign = if n.is_multiple_of(2) { -1i64 } else { 1 };
        let prefixes = self.tuple_count(n - 1);
        let per_prefix: Vec<Vec<Expansion>> = (0..prefixes)
            .into_par_iter()
            .map(|pi| {
                let prefix = self.decode(pi, n - 1);
                let mut local: Vec<Expansion> = vec![Vec::new(); self.base];
                let mut terms = Vec::new();
                for &y in &self.bfs {
                    let gp = self.gen_pos[y];
                    let slot = self.nid[y] as usize;
                    if gp != NONE {
                        let p = (pi * self.gens.len()) as u32 + gp;
                        local[slot] = vec![(p, 1)];
                        continue;
                    }
                    let (h, xp) = self.tree[y];
                    terms.clear();
                    self.param_faces(&prefix, h as usize, xp, &mut terms);
                    for t in terms.iter_mut() {
                        t.1 *= sign;
                    }
                    let prev = &local[self.nid[h as usize] as usize];
                    terms.extend(prev.iter().map(|&(p, c)| (p, c as i64)));
                    local[slot] = combine_i32(&mut terms);
                }
                local
            })
            .collect();
        per_prefix.into_iter().flatten().collect()
    }

    /// Non-tree instances of the cocycle identity, reduced mod `m`.
    pub fn constraints(&self, m: u64) -> Vec<SparseRow> {
        let n = self.degree;
        if n == 0 {
            return Vec::new();
        }
        let e = self.group.identity();
        let prefixes = self.tuple_count(n - 1);
        let sn = if n.is_multiple_of(2) { 1i64 } else { -1 };
        (0..prefixes)
            .into_par_iter()
            .flat_map_iter(|pi| {
                let prefix = self.decode(pi, n - 1);
                let mut rows = Vec::new();
                let mut terms = Vec::new();
                for h in self.group.elements().filter(|&h| h != e) {
                    for (xp, &x) in self.gens.iter().enumerate() {
                        let y = self.group.mul(h, x);
                        if y != e && self.tree[y] == (h as u32, xp as u32) {
                            continue;
                        }
                        terms.clear();
                        self.param_faces(&prefix, h, xp as u32, &mut terms);
                        let mut full = prefix.clone();
                        if y != e {
                            full.push(y);
                            let idx = self.index(&full).expect("normalized");
                            terms.extend(self.expansions[idx].iter().map(|&(p, c)| (p, sn * c as i64)));
                            full.pop();
                        }
                        full.push(h);
                        let idx = self.index(&full).expect("normalized");
                        terms.extend(self.expansions[idx].iter().map(|&(p, c)| (p, -sn * c as i64)));
                        let row = combine_mod(&mut terms, m);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
                rows
            })
            .collect()
    }

    /// Coboundaries of normalized (n-1)-cochains, in parameter coordinates:
    /// row `t` is `d` of the indicator of the (n-1)-tuple `t`.
    pub fn coboundaries(&self, m: u64) -> SparseModMatrix {
        let n = self.degree;
        let cols = self.param_count();
        if n < 2 {
            // d of a normalized 0-cochain vanishes
            return SparseModMatrix::zero(0, cols, m).expect("modulus checked by caller");
        }
        let mut triplets = Vec::new();
        for p in 0..cols {
            let t = self.param_tuple(p);
            for (i, face) in faces(&self.group, &t).enumerate() {
                if let Some(r) = self.index(&face) {
                    triplets.push((r, p, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        SparseModMatrix::from_triplets(self.tuple_count(n - 1), cols, m, triplets).expect("indices in range")
    }
}

/// The faces `d_0, .., d_k` of a k-tuple, as (k-1)-tuples.
pub fn faces<'a>(g: &'a FiniteGroup, t: &'a [usize]) -> impl Iterator<Item = Vec<usize>> + 'a {
    let k = t.len();
    (0..=k).map(move |i| {
        if i == 0 {
            t[1..].to_vec()
        } else if i == k {
            t[..k - 1].to_vec()
        } else {
            let mut f = t[..i - 1].to_vec();
            f.push(g.mul(t[i - 1], t[i]));
            f.extend_from_slice(&t[i + 1..]);
            f
        }
    })
}

fn combine_i32(terms: &mut [(u32, i64)]) -> Expansion {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Expansion = Vec::new();
    for &(p, c) in terms.iter() {
        match out.last_mut() {
            Some(last) if last.0 == p => last.1 += c as i32,
            _ => out.push((p, c as i32)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

pub(crate) fn combine_mod(terms: &mut [(u32, i64)], m: u64) -> SparseRow {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: SparseRow = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let p = terms[i].0;
        let mut acc = 0i64;
        while i < terms.len() && terms[i].0 == p {
            acc += terms[i].1;
            i += 1;
        }
        let v = acc.rem_euclid(m as i64) as u32;
        if v != 0 {
            out.push((p, v));
        }
    }
    out
}
