//! Finite abelian groups in invariant-factor coordinates, their
//! homomorphisms and subgroups.
//!
//! A group `Z/d_1 + ... + Z/d_r` is handled as a quotient of `(Z/M)^r` by
//! the relations `d_i e_i`, with `M` a common multiple of every modulus in
//! play; kernels and quotients are then ordinary Howell computations.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::arith::{lcm, mul_mod};
use super::howell::{kernel, HowellBasis};
use super::matrix::{row_to_dense, SparseModMatrix, SparseRow};
use super::subquotient::ModSubquotient;
use super::LinAlgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    /// Factors equal to 1 are dropped; zero is rejected.
    pub fn new(factors: impl IntoIterator<Item = u64>) -> Self {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        assert!(factors.iter().all(|&d| d > 1), "factors must be positive");
        FinAbGroup { factors }
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&d| BigUint::from(d)).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &d| lcm(a, d))
    }

    pub fn reduce(&self, x: &mut [u64]) {
        for (v, &d) in x.iter_mut().zip(&self.factors) {
            *v %= d;
        }
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), &d)| (x + y) % d).collect()
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(x, &d)| mul_mod(*x, k % d, d)).collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().zip(&self.factors).all(|(x, &d)| x % d == 0)
    }

    /// Relation rows `d_i e_i` over Z/M.
    fn relations(&self, modulus: u64) -> Vec<SparseRow> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, &d)| d % modulus != 0)
            .map(|(i, &d)| vec![(i as u32, d as u32)])
            .collect()
    }
}

/// A homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    /// `matrix[i]`: target coordinates of the image of generator `i`.
    matrix: Vec<Vec<u64>>,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, mut matrix: Vec<Vec<u64>>) -> Result<Self, LinAlgError> {
        if matrix.len() != source.rank() {
            return Err(LinAlgError::DimensionMismatch { expected: source.rank(), found: matrix.len() });
        }
        for (row, &d) in matrix.iter_mut().zip(&source.factors) {
            if row.len() != target.rank() {
                return Err(LinAlgError::DimensionMismatch { expected: target.rank(), found: row.len() });
            }
            target.reduce(row);
            if !target.is_zero(&target.scale(row, d)) {
                return Err(LinAlgError::NotWellDefined);
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = vec![target.zero(); source.rank()];
        AbHom { source, target, matrix }
    }

    pub fn identity(g: FinAbGroup) -> Self {
        let matrix = (0..g.rank()).map(|i| g.basis_vector(i)).collect();
        AbHom { source: g.clone(), target: g, matrix }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut y = self.target.zero();
        for (xi, row) in x.iter().zip(&self.matrix) {
            if *xi != 0 {
                y = self.target.add(&y, &self.target.scale(row, *xi));
            }
        }
        y
    }

    /// `self` after `first`.
    pub fn compose_after(&self, first: &AbHom) -> Result<AbHom, LinAlgError> {
        if first.target != self.source {
            return Err(LinAlgError::DimensionMismatch { expected: self.source.rank(), found: first.target.rank() });
        }
        let matrix = first.matrix.iter().map(|r| self.apply(r)).collect();
        AbHom::new(first.source.clone(), self.target.clone(), matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| self.target.is_zero(r))
    }

    pub fn kernel(&self) -> AbSubgroup {
        kernel_of_maps(&self.source, std::slice::from_ref(self))
    }

    pub fn image(&self) -> AbSubgroup {
        AbSubgroup::generated(&self.target, self.matrix.iter().cloned())
    }

    pub fn image_of(&self, s: &AbSubgroup) -> AbSubgroup {
        AbSubgroup::generated(&self.target, s.generators().iter().map(|g| self.apply(g)))
    }
}

/// The common kernel of several homomorphisms out of `source`.
pub fn kernel_of_maps(source: &FinAbGroup, maps: &[AbHom]) -> AbSubgroup {
    let mut modulus = source.exponent();
    for f in maps {
        assert_eq!(&f.source, source, "maps must share the source");
        modulus = lcm(modulus, f.target.exponent());
    }
    let cols: usize = maps.iter().map(|f| f.target.rank()).sum();
    let mut entries = Vec::new();
    let mut offset = 0;
    for f in maps {
        for (i, row) in f.matrix.iter().enumerate() {
            for (j, (&v, &d)) in row.iter().zip(&f.target.factors).enumerate() {
                // x.F_j = 0 mod d_j  <=>  (M/d_j) x.F_j = 0 mod M
                let w = mul_mod(v, modulus / d, modulus);
                if w != 0 {
                    entries.push((i, offset + j, w as i64));
                }
            }
        }
        offset += f.target.rank();
    }
    let k = if modulus == 1 {
        return AbSubgroup::trivial(source);
    } else {
        let mat = SparseModMatrix::from_triplets(source.rank(), cols, modulus, entries).expect("modulus in range");
        kernel(&mat)
    };
    AbSubgroup::generated(source, (0..k.rows()).map(|i| row_to_dense(k.row(i), source.rank())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbSubgroup {
    ambient: FinAbGroup,
    /// Howell basis over Z/exp of the subgroup together with the relations.
    span: HowellBasis,
}

impl AbSubgroup {
    pub fn generated(ambient: &FinAbGroup, gens: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let e = ambient.exponent();
        let mut rows: Vec<SparseRow> = ambient.relations(e);
        for mut g in gens {
            ambient.reduce(&mut g);
            rows.push(g.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x as u32)).collect());
        }
        let span =
            HowellBasis::from_rows(ambient.rank(), e, rows.iter().filter(|r| !r.is_empty()).map(|r| r.as_slice()));
        AbSubgroup { ambient: ambient.clone(), span }
    }

    pub fn trivial(ambient: &FinAbGroup) -> Self {
        Self::generated(ambient, std::iter::empty())
    }

    pub fn whole(ambient: &FinAbGroup) -> Self {
        Self::generated(ambient, (0..ambient.rank()).map(|i| ambient.basis_vector(i)))
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Generators in ambient coordinates (relation rows reduce to zero).
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.span
            .rows()
            .iter()
            .map(|r| {
                let mut v = row_to_dense(r, self.ambient.rank());
                self.ambient.reduce(&mut v);
                v
            })
            .filter(|v| !self.ambient.is_zero(v))
            .collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.span.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &AbSubgroup) -> bool {
        self.ambient == other.ambient && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn order(&self) -> BigUint {
        let e = self.ambient.exponent();
        let span: BigUint = self.span.span_factors().iter().map(|&x| BigUint::from(x)).product();
        let rel: BigUint = self.ambient.factors.iter().map(|&d| BigUint::from(e / d)).product();
        span / rel
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn sum(&self, other: &AbSubgroup) -> AbSubgroup {
        assert_eq!(self.ambient, other.ambient);
        Self::generated(&self.ambient, self.generators().into_iter().chain(other.generators()))
    }

    pub fn intersect(&self, other: &AbSubgroup) -> AbSubgroup {
        let (_, p) = self.quotient();
        let (_, q) = other.quotient();
        kernel_of_maps(&self.ambient, &[p, q])
    }

    fn span_matrix(&self, e: u64) -> SparseModMatrix {
        SparseModMatrix::from_rows(self.ambient.rank(), e, self.span.rows().to_vec()).expect("normalized rows")
    }

    /// Isomorphism type of the subgroup itself.
    pub fn structure(&self) -> FinAbGroup {
        let e = self.ambient.exponent();
        if e == 1 {
            return FinAbGroup::trivial();
        }
        let rel = SparseModMatrix::from_rows(self.ambient.rank(), e, self.ambient.relations(e)).expect("rows");
        let sq = ModSubquotient::new(&self.span_matrix(e), &rel).expect("relations lie in the span");
        FinAbGroup::new(sq.invariant_factors().iter().copied())
    }

    /// The quotient group and the projection onto it.
    pub fn quotient(&self) -> (FinAbGroup, AbHom) {
        let e = self.ambient.exponent();
        if e == 1 {
            return (FinAbGroup::trivial(), AbHom::zero(self.ambient.clone(), FinAbGroup::trivial()));
        }
        let k = self.ambient.rank();
        let full = SparseModMatrix::identity(k, e).expect("modulus in range");
        let sq = ModSubquotient::new(&full, &self.span_matrix(e)).expect("span lies in the whole group");
        let q = FinAbGroup::new(sq.invariant_factors().iter().copied());
        let matrix = (0..k)
            .map(|i| sq.coordinates(&self.ambient.basis_vector(i)).expect("every vector is in the numerator"))
            .collect();
        let proj = AbHom::new(self.ambient.clone(), q.clone(), matrix).expect("projection is well defined");
        (q, proj)
    }
}
