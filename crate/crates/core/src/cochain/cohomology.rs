//! `H^n(G, Z/m)` with trivial action, as cocycles modulo coboundaries in
//! chart coordinates.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::chart::{faces, Chart};
use crate::error::{Error, Result};
use crate::exactla::{FinAbGroup, HowellBasis, LinAlgError, ModSubquotient, SparseModMatrix, MAX_MODULUS};
use crate::groups::FiniteGroup;

pub struct CohomologyGroup {
    chart: Arc<Chart>,
    modulus: u64,
    quotient: ModSubquotient,
    abelian: FinAbGroup,
}

impl std::fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CohomologyGroup")
            .field("group", &self.group().name())
            .field("degree", &self.degree())
            .field("modulus", &self.modulus)
            .field("factors", &self.invariant_factors())
            .finish()
    }
}

pub(crate) fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || m > MAX_MODULUS {
        return Err(LinAlgError::BadModulus(m).into());
    }
    Ok(())
}

impl CohomologyGroup {
    pub fn compute(chart: Arc<Chart>, m: u64) -> Result<CohomologyGroup> {
        check_modulus(m)?;
        let denominator = HowellBasis::from_matrix(&chart.coboundaries(m));
        let constraints = chart.constraints(m);
        let quotient = ModSubquotient::from_constraints(&denominator, constraints.iter().map(|r| r.as_slice()))?;
        Ok(Self::from_parts(chart, quotient))
    }

    /// Reassembles a group from a stored quotient; the caller is expected to
    /// have validated it.
    pub fn from_parts(chart: Arc<Chart>, quotient: ModSubquotient) -> CohomologyGroup {
        let abelian = FinAbGroup::new(quotient.invariant_factors().iter().copied());
        CohomologyGroup { modulus: quotient.modulus(), chart, quotient, abelian }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.chart.group()
    }

    pub fn degree(&self) -> usize {
        self.chart.degree()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn quotient(&self) -> &ModSubquotient {
        &self.quotient
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.quotient.invariant_factors()
    }

    pub fn abelian(&self) -> &FinAbGroup {
        &self.abelian
    }

    pub fn order(&self) -> BigUint {
        self.quotient.order()
    }

    /// Parameters of a cocycle representing generator `j`.
    pub fn generator_params(&self, j: usize) -> Vec<u64> {
        self.quotient.generator(j)
    }

    /// Parameters of a cocycle representing the class with these coordinates.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        self.quotient.lift(coords)
    }

    /// Class coordinates of a cocycle given by its parameters.
    pub fn coordinates(&self, params: &[u64]) -> Result<Vec<u64>> {
        Ok(self.quotient.coordinates(params)?)
    }

    pub fn eval(&self, params: &[u64], t: &[usize]) -> u64 {
        self.chart.eval(params, self.modulus, t)
    }

    /// Builds parameters from values at the parameter tuples.
    pub fn params_from(&self, value: impl Fn(&[usize]) -> u64 + Sync) -> Vec<u64> {
        let m = self.modulus;
        (0..self.chart.param_count()).into_par_iter().map(|p| value(&self.chart.param_tuple(p)) % m).collect()
    }

    /// Class of a full normalized cochain, after checking it is a cocycle.
    pub fn class_of_cochain(&self, c: &Cochain) -> Result<Vec<u64>> {
        if c.degree != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: c.degree });
        }
        if c.modulus != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, c.modulus));
        }
        let params = self.chart.params_of(&c.values);
        if self.chart.expand(&params, self.modulus) != c.values {
            return Err(LinAlgError::NotInNumerator.into());
        }
        self.coordinates(&params)
    }

    /// Full cochain of a parameter vector.
    pub fn cochain(&self, params: &[u64]) -> Cochain {
        Cochain { degree: self.degree(), modulus: self.modulus, values: self.chart.expand(params, self.modulus) }
    }
}

/// A cohomology class together with the group it lives in.
#[derive(Clone, Debug)]
pub struct CohClass {
    space: Arc<CohomologyGroup>,
    coords: Vec<u64>,
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coords == other.coords
    }
}

impl CohClass {
    pub fn new(space: Arc<CohomologyGroup>, mut coords: Vec<u64>) -> Result<CohClass> {
        let k = space.abelian.rank();
        if coords.len() != k {
            return Err(LinAlgError::DimensionMismatch { expected: k, found: coords.len() }.into());
        }
        space.abelian.reduce(&mut coords);
        Ok(CohClass { space, coords })
    }

    pub fn zero(space: Arc<CohomologyGroup>) -> CohClass {
        let coords = space.abelian.zero();
        CohClass { space, coords }
    }

    pub fn generator(space: Arc<CohomologyGroup>, j: usize) -> CohClass {
        let coords = space.abelian.basis_vector(j);
        CohClass { space, coords }
    }

    pub fn generators(space: &Arc<CohomologyGroup>) -> Vec<CohClass> {
        (0..space.abelian.rank()).map(|j| CohClass::generator(space.clone(), j)).collect()
    }

    pub fn from_params(space: Arc<CohomologyGroup>, params: &[u64]) -> Result<CohClass> {
        let coords = space.coordinates(params)?;
        Ok(CohClass { space, coords })
    }

    pub fn space(&self) -> &Arc<CohomologyGroup> {
        &self.space
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn modulus(&self) -> u64 {
        self.space.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.space.abelian.is_zero(&self.coords)
    }

    /// A representing cocycle, as parameters.
    pub fn params(&self) -> Vec<u64> {
        self.space.lift(&self.coords)
    }

    fn same_space(&self, other: &CohClass) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        self.same_space(other)?;
        Ok(CohClass { space: self.space.clone(), coords: self.space.abelian.add(&self.coords, &other.coords) })
    }

    pub fn scale(&self, k: u64) -> CohClass {
        CohClass { space: self.space.clone(), coords: self.space.abelian.scale(&self.coords, k) }
    }
}

/// A normalized cochain with values at all normalized tuples, in the order
/// of `Chart::index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl Cochain {
    pub fn from_fn(chart: &Chart, m: u64, f: impl Fn(&[usize]) -> i64) -> Cochain {
        let n = chart.degree();
        let values = (0..chart.tuple_count(n)).map(|i| f(&chart.decode(i, n)).rem_euclid(m as i64) as u64).collect();
        Cochain { degree: n, modulus: m, values }
    }

    pub fn get(&self, chart: &Chart, t: &[usize]) -> u64 {
        chart.index(t).map_or(0, |i| self.values[i])
    }
}

/// Rough size of the full coboundary matrix `C^n -> C^{n+1}`.
pub fn coboundary_cost(group: &FiniteGroup, degree: usize) -> u64 {
    let base = group.order() as u64 - 1;
    (0..=degree).fold(1u64, |acc, _| acc.saturating_mul(base))
}

/// Matrix of `d: C^n -> C^{n+1}` on normalized cochains, acting on row
/// vectors: entry `(i, j)` is the coefficient of the value at n-tuple `i` in
/// the value of `dc` at (n+1)-tuple `j`.
pub fn coboundary_matrix(group: &FiniteGroup, degree: usize, m: u64, limit: u64) -> Result<SparseModMatrix> {
    check_modulus(m)?;
    let cost = coboundary_cost(group, degree);
    if cost > limit {
        return Err(Error::BudgetExceeded { what: "coboundary matrix".into(), required: cost, limit });
    }
    let (rows, cols, triplets) = coboundary_triplets(group, degree);
    Ok(SparseModMatrix::from_triplets(rows, cols, m, triplets)?)
}

/// Shape and integer entries of `d: C^n -> C^{n+1}` on normalized cochains.
pub(crate) fn coboundary_triplets(group: &FiniteGroup, degree: usize) -> (usize, usize, Vec<(usize, usize, i64)>) {
    let base = group.order() - 1;
    let e = group.identity();
    let index = |t: &[usize]| -> Option<usize> {
        let mut idx = 0;
        for &g in t {
            if g == e {
                return None;
            }
            idx = idx * base + if g < e { g } else { g - 1 };
        }
        Some(idx)
    };
    let decode = |mut idx: usize, len: usize| -> Vec<usize> {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            let p = idx % base;
            idx /= base;
            *slot = if p < e { p } else { p + 1 };
        }
        t
    };
    let rows = base.pow(degree as u32);
    let cols = base.pow(degree as u32 + 1);
    let mut triplets = Vec::new();
    for j in 0..cols {
        let t = decode(j, degree + 1);
        for (i, face) in faces(group, &t).enumerate() {
            if let Some(r) = index(&face) {
                triplets.push((r, j, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    (rows, cols, triplets)
}
