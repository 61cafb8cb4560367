use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows of machine integers. All rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_big_rows(&big)
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for t in 0..self.cols {
                    acc += &self[(i, t)] * &other[(t, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        IntMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            for i in rank + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let a = m[(rank, col)].clone();
                let b = m[(i, col)].clone();
                for j in 0..m.cols {
                    let v = &m[(i, j)] * &a - &m[(rank, j)] * &b;
                    m[(i, j)] = v;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The `k x k` minors of a `k x n` matrix.
///
/// Keys are ascending 0-based tuples of *retained* columns. For `n = k + 2`
/// the complementary convention (columns deleted) is available through
/// [`MinorTable::deleted`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorTable {
    k: usize,
    n: usize,
    minors: BTreeMap<Vec<usize>, BigInt>,
}

impl MinorTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn retained(&self, cols: &[usize]) -> Option<&BigInt> {
        self.minors.get(cols)
    }

    /// Minor with the given columns removed (any order).
    pub fn deleted(&self, removed: &[usize]) -> Option<&BigInt> {
        let kept: Vec<usize> = (0..self.n).filter(|c| !removed.contains(c)).collect();
        if kept.len() != self.k {
            return None;
        }
        self.minors.get(&kept)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.minors.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.minors.values()
    }

    /// gcd of all minors (the k-th determinantal divisor).
    pub fn gcd(&self) -> BigInt {
        self.minors.values().fold(BigInt::zero(), |g, v| g.gcd(v))
    }
}

pub fn minor_determinants(m: &IntMatrix) -> Result<MinorTable> {
    let (k, n) = (m.rows(), m.cols());
    if k > n {
        return Err(Error::DimensionMismatch(format!("{k} rows exceed {n} columns")));
    }
    let mut minors = BTreeMap::new();
    for cols in combinations(n, k) {
        let det = m.select_columns(&cols).det()?;
        minors.insert(cols, det);
    }
    Ok(MinorTable { k, n, minors })
}

/// gcd of the maximal minors of a matrix whose rows are the given vectors.
/// Zero when the vectors are dependent.
pub fn maximal_minor_gcd(m: &IntMatrix) -> BigInt {
    let (r, c) = (m.rows(), m.cols());
    if r > c {
        return BigInt::zero();
    }
    combinations(c, r)
        .into_iter()
        .map(|cols| m.select_columns(&cols).det().expect("square selection"))
        .fold(BigInt::zero(), |g, v| g.gcd(&v))
        .abs()
}
