//! Finite groups given by explicit multiplication tables.
//!
//! Elements are dense indices `0..N`. Every group materializes its full
//! `N x N` table so that multiplication is a single lookup, which is what the
//! cochain code hammers on.

mod bitset;
pub mod catalog;
pub mod parse;
mod subgroups;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use bitset::ElementSet;
pub use catalog::{catalog, standard_groups, Family, WITNESS_64};
pub use parse::{parse_group_file, GroupSource, ParseError};
pub use subgroups::{
    abelian_subgroups, all_subgroups, bicyclic_subgroups, center, centralizer, maximal_members, residue_pair_reps,
    residue_pairs, up_to_conjugacy, ResiduePair, Subgroup,
};

/// Largest group accepted by the table and permutation constructors unless
/// a caller asks for more.
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("table row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("non-associative triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("closure exceeds {max} elements")]
    ClosureTooLarge { max: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range for `{family}`: {reason}")]
    ParamOutOfRange { family: String, reason: String },
    #[error("map is not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotAHomomorphism(usize, usize),
    #[error("map has length {len}, source order is {expected}")]
    BadMapLength { len: usize, expected: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
}

/// A finite group with a materialized multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    element_orders: Vec<u64>,
    exponent: u64,
    digest: [u8; 32],
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a multiplication table (`table[g][h]` is the index of `g*h`).
    pub fn from_mult_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_mult_table_with_limit(table, DEFAULT_MAX_ORDER)
    }

    pub fn from_mult_table_with_limit(table: &[Vec<usize>], max: usize) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > max {
            return Err(GroupError::TooLarge { order: n, max });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::Ragged { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order: n });
                }
                flat.push(value as u32);
            }
        }
        Self::from_flat(flat, n)
    }

    pub(crate) fn from_flat(table: Vec<u32>, n: usize) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity =
            (0..n).find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g)).ok_or(GroupError::NoIdentity)?;
        let inverses = (0..n)
            .map(|g| (0..n).find(|&h| at(g, h) == identity && at(h, g) == identity).ok_or(GroupError::NoInverse(g)))
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::assemble(table, n, identity, inverses))
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted(table: Vec<u32>, n: usize, identity: usize) -> Self {
        let mut inverses = vec![0; n];
        for g in 0..n {
            for h in 0..n {
                if table[g * n + h] as usize == identity {
                    inverses[g] = h;
                    break;
                }
            }
        }
        Self::assemble(table, n, identity, inverses)
    }

    fn assemble(table: Vec<u32>, n: usize, identity: usize, inverses: Vec<usize>) -> Self {
        let mut element_orders = vec![0u64; n];
        for g in 0..n {
            let mut x = g;
            let mut k = 1u64;
            while x != identity {
                x = table[x * n + g] as usize;
                k += 1;
            }
            element_orders[g] = k;
        }
        let exponent = element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
        let mut hasher = Sha256::new();
        hasher.update((n as u64).to_le_bytes());
        for &v in &table {
            hasher.update(v.to_le_bytes());
        }
        let digest: [u8; 32] = hasher.finalize().into();
        FiniteGroup { name: format!("G{n}"), order: n, table, identity, inverses, element_orders, exponent, digest }
    }

    /// Closure of a set of permutations of `{0..k-1}`, with the identity at
    /// index 0 and the remaining elements in breadth-first discovery order.
    ///
    /// Products compose left to right: `(g*h)(i) = h(g(i))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_with_limit(generators, DEFAULT_MAX_ORDER)
    }

    pub fn from_permutations_with_limit(generators: &[Vec<usize>], max: usize) -> Result<Self, GroupError> {
        let degree = generators.iter().map(Vec::len).max().unwrap_or(0);
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; g.len()];
            for &x in g {
                if x >= g.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::NotAPermutation { index, degree: g.len() });
                }
            }
            // pad to the common degree with fixed points
            let mut p = g.clone();
            p.extend(g.len()..degree);
            gens.push(p);
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &gens {
                let next = compose(&current, g);
                if !index.contains_key(&next) {
                    if elements.len() >= max {
                        return Err(GroupError::ClosureTooLarge { max });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])] as u32;
            }
        }
        Ok(Self::from_trusted(table, n, 0))
    }

    /// Direct product with elements `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let g = Self::from_trusted(table, n, a.identity * nb + b.identity);
        g.with_name(format!("{} x {}", a.name, b.name))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = self.identity;
        for _ in 0..k % self.element_orders[a] {
            r = self.mul(r, a);
        }
        r
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> u64 {
        self.element_orders[a]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// SHA-256 of the order and the table entries; labels matter.
    pub fn digest(&self) -> [u8; 32] {
        self.digest
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest)
    }

    /// Order of the abelianization `G / [G, G]`.
    pub fn abelianization_order(&self) -> usize {
        let commutators = (0..self.order).flat_map(|a| (0..self.order).map(move |b| (a, b)));
        let gens: Vec<usize> =
            commutators.map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))).collect();
        let derived = Subgroup::generated(Arc::new(self.clone()), &gens);
        self.order / derived.order()
    }

    /// A small generating set, chosen greedily from elements of large order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.order).filter(|&g| g != self.identity).collect();
        candidates.sort_by_key(|&g| std::cmp::Reverse(self.element_orders[g]));
        let mut gens: Vec<usize> = Vec::new();
        let mut span = ElementSet::from_indices(self.order, [self.identity]);
        for g in candidates {
            if span.len() == self.order {
                break;
            }
            if !span.contains(g) {
                gens.push(g);
                span = subgroups::closure(self, &gens);
            }
        }
        // drop redundant generators
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if subgroups::closure(self, &rest).len() == self.order {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens
    }
}

/// A homomorphism `f: source -> target` stored as an index map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::BadMapLength { len: map.len(), expected: source.order() });
        }
        for &v in &map {
            if v >= target.order() {
                return Err(GroupError::EntryOutOfRange { row: 0, col: 0, value: v, order: target.order() });
            }
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Self {
        GroupHom { source, target, map }
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        GroupHom { source: group.clone(), target: group, map }
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let map = vec![target.identity(); source.order()];
        GroupHom { source, target, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn compose_after(&self, first: &GroupHom) -> GroupHom {
        assert_eq!(**first.target(), *self.source, "composition of mismatched homomorphisms");
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        GroupHom { source: first.source.clone(), target: self.target.clone(), map }
    }
}
