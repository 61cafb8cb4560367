//! Floating-point checks of the Guillemin canonical Kähler metric on a
//! toric surface with moment polygon `Σ = {y : l_k(y) ≥ 0}`,
//! `l_k(y) = ⟨y, u_k⟩ - λ_k`.
//!
//! The symplectic potential is `G = ½ Σ l_k log l_k` on `Σ°`; its Legendre
//! dual `F` is the Kähler potential in log coordinates, and `∇F` is the
//! moment map.

mod soliton;

pub use soliton::{exp_divided_difference, futaki_quadrature, soliton_vector, SolitonResult};

use crate::error::{Error, Result};
use crate::fanpoly::{anticanonical_support, polytope_from_support, AugmentedFan, Point, Polygon, Polytope};
use crate::lattice::IVec2;
use crate::scalar::{RealScalar, Rational};

/// Symmetric 2×2 matrix as `[[a, b], [b, c]]` rows.
pub type Mat2<S> = [[S; 2]; 2];

#[derive(Debug, Clone)]
pub struct MetricProblem<S> {
    normals: Vec<[S; 2]>,
    lambdas: Vec<S>,
    polygon: Polygon<S>,
    newton_tolerance: S,
    max_iterations: usize,
}

/// Outcome of the moment-map Newton solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSolve<S> {
    pub y: Point<S>,
    pub residual: S,
    pub iterations: usize,
    pub converged: bool,
}

fn det2<S: RealScalar>(m: &Mat2<S>) -> S {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn solve2<S: RealScalar>(m: &Mat2<S>, r: &[S; 2]) -> [S; 2] {
    let d = det2(m);
    [(m[1][1] * r[0] - m[0][1] * r[1]) / d, (m[0][0] * r[1] - m[1][0] * r[0]) / d]
}

pub fn inverse2<S: RealScalar>(m: &Mat2<S>) -> Mat2<S> {
    let d = det2(m);
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

fn norm2<S: RealScalar>(v: &[S; 2]) -> S {
    v[0].hypot(v[1])
}

/// Pairwise (cascade) summation; the order depends only on the length.
pub fn mul2<S: RealScalar>(a: &Mat2<S>, b: &Mat2<S>) -> Mat2<S> {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn pairwise_sum<S: RealScalar>(values: &[S]) -> S {
    if values.len() <= 8 {
        return values.iter().fold(S::zero(), |a, &b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

impl<S: RealScalar> MetricProblem<S> {
    pub fn new(normals: Vec<IVec2>, lambdas: Vec<S>) -> Result<Self> {
        let poly = Polytope::from_halfplanes(normals.clone(), lambdas.clone())?;
        if !poly.is_full_dimensional() {
            return Err(Error::DegeneratePolytope("Σ has empty interior".into()));
        }
        let normals = normals.iter().map(|u| [S::from_bigint(&u.x), S::from_bigint(&u.y)]).collect();
        Ok(MetricProblem {
            normals,
            lambdas,
            polygon: poly.polygon().clone(),
            newton_tolerance: S::epsilon() * S::of(1000),
            max_iterations: 500,
        })
    }

    pub fn from_polytope(poly: &Polytope<Rational>) -> Result<Self> {
        Self::new(poly.normals().to_vec(), poly.offsets().iter().map(S::from_rational).collect())
    }

    /// `Σ_{-k}` of a fan: `u_k` the marked rays, `λ_k = -1`.
    pub fn from_fan(fan: &AugmentedFan) -> Result<Self> {
        Self::from_polytope(&polytope_from_support(fan, &anticanonical_support(fan))?)
    }

    /// Relative Newton tolerance, scaled by `max(1, |x|)`.
    pub fn with_tolerance(mut self, tol: S) -> Self {
        self.newton_tolerance = tol;
        self
    }

    pub fn tolerance(&self) -> S {
        self.newton_tolerance
    }

    /// `t Σ`.
    pub fn scaled(&self, t: S) -> Self {
        let mut out = self.clone();
        out.lambdas.iter_mut().for_each(|l| *l = *l * t);
        let verts = self.polygon.vertices().iter().map(|v| [v[0] * t, v[1] * t]).collect();
        out.polygon = Polygon::from_ccw_unchecked(verts);
        out
    }

    pub fn normals(&self) -> &[[S; 2]] {
        &self.normals
    }

    pub fn lambdas(&self) -> &[S] {
        &self.lambdas
    }

    pub fn polygon(&self) -> &Polygon<S> {
        &self.polygon
    }

    pub fn max_abs_normal(&self) -> S {
        self.normals.iter().fold(S::zero(), |m, u| m.max(norm2(u)))
    }

    /// `l_k(y)` for every facet.
    pub fn affine_values(&self, y: &Point<S>) -> Vec<S> {
        self.normals.iter().zip(&self.lambdas).map(|(u, &l)| y[0] * u[0] + y[1] * u[1] - l).collect()
    }

    /// `l_∞(y) = Σ ⟨y, u_k⟩`.
    pub fn l_infinity(&self, y: &Point<S>) -> S {
        self.normals.iter().fold(S::zero(), |acc, u| acc + y[0] * u[0] + y[1] * u[1])
    }

    pub fn in_interior(&self, y: &Point<S>) -> bool {
        self.affine_values(y).iter().all(|&l| l > S::zero())
    }

    fn interior_values(&self, y: &Point<S>) -> Result<Vec<S>> {
        let l = self.affine_values(y);
        if l.iter().all(|&v| v > S::zero()) {
            Ok(l)
        } else {
            Err(Error::OutsideInterior)
        }
    }

    pub fn potential_g(&self, y: &Point<S>) -> Result<S> {
        let l = self.interior_values(y)?;
        let half = S::of(1) / S::of(2);
        Ok(half * l.iter().fold(S::zero(), |acc, &v| acc + v * v.ln()))
    }

    pub fn grad_g(&self, y: &Point<S>) -> Result<[S; 2]> {
        let l = self.interior_values(y)?;
        Ok(self.grad_from_values(&l))
    }

    fn grad_from_values(&self, l: &[S]) -> [S; 2] {
        let half = S::of(1) / S::of(2);
        let mut g = [S::zero(), S::zero()];
        for (u, &v) in self.normals.iter().zip(l) {
            let w = S::one() + v.ln();
            g[0] = g[0] + u[0] * w;
            g[1] = g[1] + u[1] * w;
        }
        [half * g[0], half * g[1]]
    }

    pub fn hess_g(&self, y: &Point<S>) -> Result<Mat2<S>> {
        let l = self.interior_values(y)?;
        Ok(self.hess_from_values(&l))
    }

    fn hess_from_values(&self, l: &[S]) -> Mat2<S> {
        let half = S::of(1) / S::of(2);
        let (mut a, mut b, mut c) = (S::zero(), S::zero(), S::zero());
        for (u, &v) in self.normals.iter().zip(l) {
            a = a + u[0] * u[0] / v;
            b = b + u[0] * u[1] / v;
            c = c + u[1] * u[1] / v;
        }
        [[half * a, half * b], [half * b, half * c]]
    }

    /// Size of the rounding error in `∇G(y)`: `l_k` carries an absolute
    /// error of about `ε(|⟨u_k, y⟩| + |λ_k|)`, amplified by `1/l_k` in the log.
    pub fn rounding_floor(&self, y: &Point<S>, l: &[S]) -> S {
        let half = S::of(1) / S::of(2);
        let sum = self.normals.iter().zip(&self.lambdas).zip(l).fold(S::zero(), |acc, ((u, &lam), &v)| {
            let scale = (u[0] * y[0]).abs() + (u[1] * y[1]).abs() + lam.abs();
            acc + norm2(u) * scale / v
        });
        half * S::epsilon() * sum
    }

    /// Vertex average of `Σ`, the Newton starting point.
    pub fn vertex_average(&self) -> Point<S> {
        let v = self.polygon.vertices();
        let n = S::of(v.len() as i64);
        let s = v.iter().fold([S::zero(), S::zero()], |a, p| [a[0] + p[0], a[1] + p[1]]);
        [s[0] / n, s[1] / n]
    }

    /// Damped Newton for `∇G(y) = x`, minimizing `G(y) - ⟨x, y⟩` from `start`.
    /// Never fails; reports whether the tolerance was met. While iterating the
    /// rounding floor is capped at `√ε`; once Newton can no longer move, the
    /// full floor decides, since `y` then sits where `l_k` is unresolvable.
    pub fn solve_moment_from(&self, x: &[S; 2], start: Point<S>) -> MomentSolve<S> {
        let tol = self.newton_tolerance * S::one().max(norm2(x));
        let phi = |y: &Point<S>, l: &[S]| {
            let half = S::of(1) / S::of(2);
            half * l.iter().fold(S::zero(), |acc, &v| acc + v * v.ln()) - x[0] * y[0] - x[1] * y[1]
        };
        let mut y = if self.in_interior(&start) { start } else { self.vertex_average() };
        let mut l = self.affine_values(&y);
        let mut value = phi(&y, &l);
        for it in 0..self.max_iterations {
            let g = self.grad_from_values(&l);
            let r = [g[0] - x[0], g[1] - x[1]];
            let res = norm2(&r);
            let floor = (S::of(8) * self.rounding_floor(&y, &l)).min(S::epsilon().sqrt());
            let best = MomentSolve { y, residual: res, iterations: it, converged: res <= tol.max(floor) };
            if best.converged {
                return best;
            }
            let h = self.hess_from_values(&l);
            let step = solve2(&h, &r);
            let mut t = S::one();
            let mut moved = false;
            for _ in 0..80 {
                let trial = [y[0] - t * step[0], y[1] - t * step[1]];
                let lt = self.affine_values(&trial);
                if lt.iter().all(|&v| v > S::zero()) {
                    let vt = phi(&trial, &lt);
                    // near the root the decrease of phi drops below rounding,
                    // so a smaller residual also counts as progress
                    let gt = self.grad_from_values(&lt);
                    if vt < value || norm2(&[gt[0] - x[0], gt[1] - x[1]]) < res {
                        if trial == y {
                            break;
                        }
                        y = trial;
                        l = lt;
                        value = vt;
                        moved = true;
                        break;
                    }
                }
                t = t / S::of(2);
            }
            if !moved {
                // no representable descent left: limited by precision
                return MomentSolve { converged: res <= S::of(8) * self.rounding_floor(&y, &l), ..best };
            }
        }
        let g = self.grad_from_values(&l);
        let res = norm2(&[g[0] - x[0], g[1] - x[1]]);
        let floor = S::of(8) * self.rounding_floor(&y, &l);
        MomentSolve { y, residual: res, iterations: self.max_iterations, converged: res <= tol.max(floor) }
    }

    /// `y = ∇F(x) ∈ Σ°`.
    pub fn moment(&self, x: &[S; 2]) -> Result<Point<S>> {
        let s = self.solve_moment_from(x, self.vertex_average());
        if s.converged {
            Ok(s.y)
        } else {
            Err(Error::NoConvergence { iterations: s.iterations, residual: s.residual.to_f64_lossy() })
        }
    }

    /// `F(x) = ⟨x, y⟩ - G(y)` with `y = ∇F(x)`.
    pub fn potential_f(&self, x: &[S; 2]) -> Result<S> {
        let y = self.moment(x)?;
        Ok(x[0] * y[0] + x[1] * y[1] - self.potential_g(&y)?)
    }

    /// `Hess F(x) = (Hess G(y))^{-1}`.
    pub fn hess_f(&self, x: &[S; 2]) -> Result<Mat2<S>> {
        let y = self.moment(x)?;
        Ok(inverse2(&self.hess_g(&y)?))
    }

    /// Default cutoff `R = max(12, 6·max|u_k|)`.
    pub fn default_cutoff(&self) -> S {
        S::of(12).max(S::of(6) * self.max_abs_normal())
    }

    /// Midpoint rule for `∫_{[-R,R]^2} det Hess F dx` on a `grid × grid`
    /// lattice, summed pairwise. Points where Newton stalls at the precision
    /// floor sit in the far tail and are evaluated at the best iterate.
    pub fn numeric_volume(&self, cutoff: S, grid: usize) -> S {
        let h = S::of(2) * cutoff / S::of(grid as i64);
        let half = S::of(1) / S::of(2);
        let mut values = Vec::with_capacity(grid * grid);
        let mut start = self.vertex_average();
        for i in 0..grid {
            let x0 = -cutoff + (S::of(i as i64) + half) * h;
            for jj in 0..grid {
                // serpentine order keeps warm starts adjacent
                let j = if i % 2 == 0 { jj } else { grid - 1 - jj };
                let x1 = -cutoff + (S::of(j as i64) + half) * h;
                let s = self.solve_moment_from(&[x0, x1], start);
                start = s.y;
                let l = self.affine_values(&s.y);
                values.push(S::one() / det2(&self.hess_from_values(&l)));
            }
        }
        pairwise_sum(&values) * h * h
    }
}
