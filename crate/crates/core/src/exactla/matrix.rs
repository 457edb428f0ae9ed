use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::arith::{add_mod, mul_mod, reduce_i64, sub_mod};
use super::LinAlgError;

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A sparse row: `(column, value)` pairs, strictly increasing columns,
/// nonzero values in `[0, m)`.
pub type SparseRow = Vec<(u32, u32)>;

/// `a + c*b` for sparse rows.
pub fn row_axpy(a: &[(u32, u32)], c: u64, b: &[(u32, u32)], m: u64) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        let (col, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1 as u64)
        } else if cb < ca {
            j += 1;
            (cb, mul_mod(c, b[j - 1].1 as u64, m))
        } else {
            i += 1;
            j += 1;
            (ca, add_mod(a[i - 1].1 as u64, mul_mod(c, b[j - 1].1 as u64, m), m))
        };
        if v != 0 {
            out.push((col, v as u32));
        }
    }
    out
}

pub fn row_scale(a: &[(u32, u32)], c: u64, m: u64) -> SparseRow {
    a.iter()
        .filter_map(|&(col, v)| {
            let w = mul_mod(c, v as u64, m);
            (w != 0).then_some((col, w as u32))
        })
        .collect()
}

pub fn row_from_dense(v: &[u64]) -> SparseRow {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x as u32)).collect()
}

pub fn row_to_dense(r: &[(u32, u32)], dim: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    for &(c, x) in r {
        v[c as usize] = x as u64;
    }
    v
}

/// `acc += c * row` on a dense accumulator.
#[inline]
pub fn dense_axpy(acc: &mut [u64], c: u64, row: &[(u32, u32)], m: u64) {
    for &(col, v) in row {
        let slot = &mut acc[col as usize];
        *slot = add_mod(*slot, mul_mod(c, v as u64, m), m);
    }
}

/// `acc -= c * row` on a dense accumulator.
#[inline]
pub fn dense_sub(acc: &mut [u64], c: u64, row: &[(u32, u32)], m: u64) {
    for &(col, v) in row {
        let slot = &mut acc[col as usize];
        *slot = sub_mod(*slot, mul_mod(c, v as u64, m), m);
    }
}

pub fn row_dot(r: &[(u32, u32)], v: &[u64], m: u64) -> u64 {
    r.iter().fold(0, |s, &(c, x)| add_mod(s, mul_mod(x as u64, v[c as usize], m), m))
}

/// Sparse matrix over Z/m stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<SparseRow>,
}

impl SparseModMatrix {
    pub fn zero(rows: usize, cols: usize, modulus: u64) -> Result<Self, LinAlgError> {
        check_modulus(modulus)?;
        Ok(SparseModMatrix { rows, cols, modulus, data: vec![Vec::new(); rows] })
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated coordinates
    /// are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        modulus: u64,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, LinAlgError> {
        check_modulus(modulus)?;
        let mut buckets: Vec<Vec<(u32, u64)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinAlgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            buckets[r].push((c as u32, reduce_i64(v, modulus)));
        }
        let data = buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by_key(|e| e.0);
                let mut row: SparseRow = Vec::with_capacity(b.len());
                let mut last: Option<(u32, u64)> = None;
                for (c, v) in b {
                    match last {
                        Some((lc, lv)) if lc == c => last = Some((c, add_mod(lv, v, modulus))),
                        Some((lc, lv)) => {
                            if lv != 0 {
                                row.push((lc, lv as u32));
                            }
                            last = Some((c, v));
                        }
                        None => last = Some((c, v)),
                    }
                }
                if let Some((lc, lv)) = last {
                    if lv != 0 {
                        row.push((lc, lv as u32));
                    }
                }
                row
            })
            .collect();
        Ok(SparseModMatrix { rows, cols, modulus, data })
    }

    pub fn from_dense(modulus: u64, cols: usize, dense: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let mut entries = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row.iter().enumerate().map(|(c, &v)| (r, c, v)));
        }
        Self::from_triplets(dense.len(), cols, modulus, entries)
    }

    /// Wraps already-normalized sparse rows.
    pub fn from_rows(cols: usize, modulus: u64, data: Vec<SparseRow>) -> Result<Self, LinAlgError> {
        check_modulus(modulus)?;
        for (r, row) in data.iter().enumerate() {
            let sorted = row.windows(2).all(|w| w[0].0 < w[1].0);
            let ok = row.iter().all(|&(c, v)| (c as usize) < cols && v != 0 && (v as u64) < modulus);
            if !sorted || !ok {
                return Err(LinAlgError::MalformedRow(r));
            }
        }
        Ok(SparseModMatrix { rows: data.len(), cols, modulus, data })
    }

    pub fn identity(n: usize, modulus: u64) -> Result<Self, LinAlgError> {
        Self::from_triplets(n, n, modulus, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r].binary_search_by_key(&(c as u32), |e| e.0).map_or(0, |i| self.data[r][i].1 as u64)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c as usize, v as u64)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.data.iter().map(|r| row_to_dense(r, self.cols)).collect()
    }

    pub fn transpose(&self) -> SparseModMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                data[c as usize].push((r as u32, v));
            }
        }
        SparseModMatrix { rows: self.cols, cols: self.rows, modulus: self.modulus, data }
    }

    pub fn mul(&self, other: &SparseModMatrix) -> Result<SparseModMatrix, LinAlgError> {
        if self.modulus != other.modulus {
            return Err(LinAlgError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let m = self.modulus;
        let mut acc = vec![0u64; other.cols];
        let data = self
            .data
            .iter()
            .map(|row| {
                for &(k, v) in row {
                    dense_axpy(&mut acc, v as u64, &other.data[k as usize], m);
                }
                let out = row_from_dense(&acc);
                acc.iter_mut().for_each(|x| *x = 0);
                out
            })
            .collect();
        Ok(SparseModMatrix { rows: self.rows, cols: other.cols, modulus: m, data })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                dense_axpy(&mut acc, x, &self.data[i], self.modulus);
            }
        }
        acc
    }

    /// The debugging dump format: `zm <rows> <cols> <m>` then `r c v` lines.
    pub fn dump(&self) -> String {
        let mut s = format!("zm {} {} {}\n", self.rows, self.cols, self.modulus);
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<SparseModMatrix, LinAlgError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| LinAlgError::Parse { line, message: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "zm" {
            return Err(bad(hl, "expected `zm <rows> <cols> <m>`"));
        }
        let num = |s: &str, line| s.parse::<u64>().map_err(|_| bad(line, "expected an integer"));
        let (rows, cols, m) = (num(h[1], hl)? as usize, num(h[2], hl)? as usize, num(h[3], hl)?);
        let mut entries = Vec::new();
        for (ln, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(ln, "expected `r c v`"));
            }
            let v = t[2].parse::<i64>().map_err(|_| bad(ln, "expected an integer"))?;
            entries.push((num(t[0], ln)? as usize, num(t[1], ln)? as usize, v));
        }
        Self::from_triplets(rows, cols, m, entries)
    }
}

pub(crate) fn check_modulus(m: u64) -> Result<(), LinAlgError> {
    if m == 0 || m > MAX_MODULUS {
        Err(LinAlgError::BadModulus(m))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let a = SparseModMatrix::from_triplets(2, 3, 4, [(0, 1, 3), (0, 1, 1), (1, 2, -1), (1, 0, 2)]).unwrap();
        assert_eq!(a.row(0), &[] as &[(u32, u32)]);
        assert_eq!(a.row(1), &[(0, 2), (2, 3)]);
        assert_eq!(a.nnz(), 2);
    }

    #[test]
    fn dump_round_trip() {
        let a = SparseModMatrix::from_dense(12, 3, &[vec![1, 0, 5], vec![0, 11, 0]]).unwrap();
        let b = SparseModMatrix::parse_dump(&a.dump()).unwrap();
        assert_eq!(a, b);
        assert!(SparseModMatrix::parse_dump("zm 1 1\n").is_err());
        assert!(SparseModMatrix::parse_dump("zm 1 1 5\n3 0 1\n").is_err());
    }

    #[test]
    fn transpose_and_product() {
        let a = SparseModMatrix::from_dense(7, 2, &[vec![1, 2], vec![3, 4], vec![0, 6]]).unwrap();
        let at = a.transpose();
        let p = a.mul(&at).unwrap();
        let d = a.to_dense();
        for i in 0..3 {
            for j in 0..3 {
                let e = (0..2).map(|k| d[i][k] * d[j][k]).sum::<u64>() % 7;
                assert_eq!(p.get(i, j), e);
            }
        }
        assert_eq!(a.apply_row(&[1, 1, 1]), vec![4, 5]);
    }

    #[test]
    fn axpy_cancels() {
        let a: SparseRow = vec![(0, 1), (3, 2)];
        let b: SparseRow = vec![(0, 5), (2, 1), (3, 4)];
        assert_eq!(row_axpy(&a, 1, &b, 6), vec![(2, 1)]);
    }
}
