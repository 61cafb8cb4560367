//! Simplicial lattice cones.
//!
//! A simplicial cone on independent generators `τ_1..τ_r` in `Z^d` is smooth
//! (its lattice points are exactly the nonnegative integer combinations of the
//! generators) iff the generators are part of a Z-basis of `Z^d ∩ span(τ)`.
//! The lattice points of the half-open parallelepiped `{Σ c_i τ_i : 0 ≤ c_i < 1}`
//! are coset representatives of `(Z^d ∩ span τ) / ⊕ Z τ_i`, whose order is the
//! gcd of the maximal minors divided by the covolume of the saturated lattice.
//! So the parallelepiped is `{0}` iff the maximal minors have gcd 1.
//! Primitivity of every generator is implied by that condition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{combinations, maximal_minor_gcd, IntMatrix};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Cone spanned by a finite list of lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCone {
    generators: Vec<Vec<BigInt>>,
    dim: usize,
}

impl LatticeCone {
    pub fn new(generators: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = generators.first().map_or(0, Vec::len);
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch("generators of different lengths".into()));
        }
        if generators.iter().any(|g| g.iter().all(Zero::is_zero)) {
            return Err(Error::DimensionMismatch("zero generator".into()));
        }
        Ok(LatticeCone { generators, dim })
    }

    pub fn from_i64<R: AsRef<[i64]>>(generators: &[R]) -> Result<Self> {
        Self::new(
            generators
                .iter()
                .map(|g| g.as_ref().iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(&self.generators).expect("uniform rows")
    }

    pub fn is_simplicial(&self) -> bool {
        self.matrix().rank() == self.generators.len()
    }

    /// Whether the cone contains no line.
    ///
    /// Simplicial cones always qualify. Dependent generators are handled in
    /// the plane only, where a line exists iff two generators are opposite or
    /// the generators positively span the plane.
    pub fn is_strongly_convex(&self) -> Result<bool> {
        if self.is_simplicial() {
            return Ok(true);
        }
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        let g = &self.generators;
        for a in g {
            for b in g {
                let cross = &a[0] * &b[1] - &a[1] * &b[0];
                let dot = &a[0] * &b[0] + &a[1] * &b[1];
                if cross.is_zero() && dot.is_negative() {
                    return Ok(false);
                }
            }
        }
        // a pointed planar cone has an extreme generator with all others
        // on one side of it
        let pointed = g.iter().any(|a| {
            g.iter().all(|b| (&a[0] * &b[1] - &a[1] * &b[0]) >= BigInt::zero())
                && g.iter().all(|b| {
                    let cross = &a[0] * &b[1] - &a[1] * &b[0];
                    !cross.is_zero() || (&a[0] * &b[0] + &a[1] * &b[1]).is_positive()
                })
        });
        Ok(pointed)
    }
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

fn independent_matrix(generators: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let m = IntMatrix::from_big_rows(generators)?;
    if m.rank() != generators.len() {
        return Err(Error::DependentGenerators);
    }
    Ok(m)
}

pub fn cone_is_smooth(generators: &[Vec<BigInt>]) -> Result<bool> {
    let m = independent_matrix(generators)?;
    Ok(generators.iter().all(|g| is_primitive(g)) && maximal_minor_gcd(&m).is_one())
}

/// Upper bound on boxes enumerated by [`fundamental_parallelepiped_points`].
pub const PARALLELEPIPED_BOX_LIMIT: u64 = 5_000_000;

/// Lattice points `Σ c_i τ_i` with `0 ≤ c_i < 1`, by scanning the bounding box.
pub fn fundamental_parallelepiped_points(generators: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let m = independent_matrix(generators)?;
    let (r, d) = (m.rows(), m.cols());
    if r == 0 {
        return Ok(vec![vec![BigInt::zero(); d]]);
    }
    let mut lo = vec![BigInt::zero(); d];
    let mut hi = vec![BigInt::zero(); d];
    for g in generators {
        for j in 0..d {
            if g[j].is_negative() {
                lo[j] += &g[j];
            } else {
                hi[j] += &g[j];
            }
        }
    }
    let mut size: u64 = 1;
    for j in 0..d {
        let span = (&hi[j] - &lo[j] + 1u32).to_u64().unwrap_or(u64::MAX);
        size = size.saturating_mul(span);
    }
    if size > PARALLELEPIPED_BOX_LIMIT {
        return Err(Error::TooLarge(format!("bounding box of {size} points")));
    }

    // coordinates c solve c·M = p; pick r columns with a nonzero minor
    let cols = combinations(d, r)
        .into_iter()
        .find(|c| !m.select_columns(c).det().expect("square").is_zero())
        .expect("independent generators have a nonzero minor");
    let square = m.select_columns(&cols);
    let det = square.det()?;
    let adj = adjugate(&square);

    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        if let Some(coeffs) = solve_coordinates(&m, &cols, &adj, &det, &p) {
            let zero = Rational::zero();
            let one = Rational::one();
            if coeffs.iter().all(|c| *c >= zero && *c < one) {
                out.push(p.clone());
            }
        }
        // odometer increment
        let mut j = 0;
        loop {
            if j == d {
                return Ok(out);
            }
            p[j] += 1;
            if p[j] <= hi[j] {
                break;
            }
            p[j] = lo[j].clone();
            j += 1;
        }
    }
}

fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::one();
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&x| x != j).collect();
            let minor = a.select_rows(&rows).select_columns(&cols).det().expect("square");
            let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            adj[(j, i)] = sign * minor;
        }
    }
    adj
}

fn solve_coordinates(
    m: &IntMatrix,
    cols: &[usize],
    adj: &IntMatrix,
    det: &BigInt,
    p: &[BigInt],
) -> Option<Vec<Rational>> {
    // c·S = p_cols  =>  c = p_cols · adj(S) / det
    let r = m.rows();
    let pc: Vec<&BigInt> = cols.iter().map(|&j| &p[j]).collect();
    let coeffs: Vec<Rational> = (0..r)
        .map(|i| {
            let num: BigInt = (0..r).map(|t| pc[t] * &adj[(t, i)]).sum();
            Rational::new(num, det.clone())
        })
        .collect();
    // the point must lie in the span, check every coordinate
    for j in 0..m.cols() {
        let v: Rational =
            (0..r).map(|i| &coeffs[i] * Rational::from_integer(m[(i, j)].clone())).sum();
        if v != Rational::from_integer(p[j].clone()) {
            return None;
        }
    }
    Some(coeffs)
}
