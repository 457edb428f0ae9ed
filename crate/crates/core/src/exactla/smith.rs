//! Smith normal form over the integers.
//!
//! Elimination runs in `i64` with checked arithmetic first and restarts with
//! arbitrary precision if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use super::LinAlgError;

/// Default limit on `rows * cols` for the dense elimination.
pub const DENSE_LIMIT: usize = 4_000_000;

/// Sparse integer matrix given by `(row, col, value)` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.push((r, c, v));
                }
            }
        }
        m
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        self.entries.push((r, c, v));
    }

    fn dense<T: From<i64> + Zero + Clone + std::ops::AddAssign>(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] += T::from(v);
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// The factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_form_z(m: &IntMatrix) -> Result<SmithForm, LinAlgError> {
    smith_form_z_with_limit(m, DENSE_LIMIT)
}

pub fn smith_form_z_with_limit(m: &IntMatrix, limit: usize) -> Result<SmithForm, LinAlgError> {
    if m.rows.saturating_mul(m.cols) > limit {
        return Err(LinAlgError::DimensionTooLarge { rows: m.rows, cols: m.cols, limit });
    }
    let factors = match eliminate(m.dense::<i64>()) {
        Some(f) => f.into_iter().map(BigInt::from).collect(),
        None => {
            log::debug!("smith form overflowed i64, retrying with big integers");
            eliminate(m.dense::<BigInt>()).expect("big integers do not overflow")
        }
    };
    Ok(SmithForm { rank: factors.len(), factors })
}

fn eliminate<T>(mut a: Vec<Vec<T>>) -> Option<Vec<T>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry by absolute value
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(&mut a, i, t, &q, t)?;
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = q.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&v)?;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // the pivot must divide the rest of the matrix
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let q = T::one().neg();
                    sub_row(&mut a, t, i, &q, t)?;
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// `row_i -= q * row_k`, touching columns from `from` on.
fn sub_row<T>(a: &mut [Vec<T>], i: usize, k: usize, q: &T, from: usize) -> Option<()>
where
    T: Integer + Clone + CheckedMul + CheckedSub,
{
    for j in from..a[i].len() {
        if a[k][j].is_zero() {
            continue;
        }
        let v = q.checked_mul(&a[k][j])?;
        a[i][j] = a[i][j].checked_sub(&v)?;
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_form_z(&IntMatrix::from_dense(rows))
            .unwrap()
            .factors
            .iter()
            .map(|d| i64::try_from(d.clone()).unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 4], vec![4, 8]]), vec![2]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert!(matches!(
            smith_form_z_with_limit(&IntMatrix::new(10, 10), 50),
            Err(LinAlgError::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 3_000_000_000i64;
        let f = smith_form_z(&IntMatrix::from_dense(&[vec![big, 1], vec![1, big]])).unwrap();
        // det = big^2 - 1
        let det = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(f.factors, vec![BigInt::from(1), det]);
    }

    /// gcd of all k x k minors, by cofactor expansion.
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<i128> {
        let rows = a.len();
        let cols = a[0].len();
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g: i128 = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i128>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect()).collect();
                    g = num_integer::gcd(g, det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(a in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })) {
            let f = factors(&a);
            let dd = determinantal_divisors(&a);
            prop_assert_eq!(f.len(), dd.len());
            // d_k = D_k / D_{k-1}
            let mut prev = 1i128;
            for (k, &d) in dd.iter().enumerate() {
                prop_assert_eq!(f[k] as i128, d / prev);
                prev = d;
            }
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
