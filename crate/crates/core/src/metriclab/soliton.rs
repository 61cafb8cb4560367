//! Kähler-Ricci soliton vector and the Futaki invariant of a polygon.
//!
//! The soliton vector `b` is the critical point of the strictly convex
//! `Ψ(b) = log ∫_Σ e^{⟨b,y⟩} dy`, i.e. `∫_Σ y e^{⟨b,y⟩} dy = 0`. All integrals
//! are exact per triangle: over a triangle with vertices `v_a` and
//! `s_a = ⟨b, v_a⟩`, `∫ e^{⟨b,y⟩} = 2A·exp[s_0,s_1,s_2]`, and each barycentric
//! factor `λ_a` appends `s_a` to the divided difference.

use super::{inverse2, Mat2, MetricProblem};
use crate::error::{Error, Result};
use crate::fanpoly::{Point, Polygon};
use crate::scalar::RealScalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonResult<S> {
    pub b: [S; 2],
    /// `‖∫ y e^{⟨b,y⟩} dy‖ / ∫ e^{⟨b,y⟩} dy`.
    pub residual: S,
    pub iterations: usize,
}

fn taylor_dd<S: RealScalar>(nodes: &[S]) -> S {
    let n = nodes.len() - 1;
    let c = nodes.iter().fold(S::zero(), |a, &b| a + b) / S::of(nodes.len() as i64);
    let z: Vec<S> = nodes.iter().map(|&x| x - c).collect();
    // h[j] = complete homogeneous symmetric polynomial of degree j in z;
    // |z| < 2 here, so the tail past 60 terms is far below f64 precision
    const TERMS: usize = 60;
    let mut h = [S::zero(); TERMS];
    h[0] = S::one();
    for j in 1..TERMS {
        h[j] = h[j - 1] * z[0];
    }
    for &zi in &z[1..] {
        for j in 1..TERMS {
            h[j] = h[j] + zi * h[j - 1];
        }
    }
    let mut fact = (1..=n).fold(S::one(), |f, k| f * S::of(k as i64));
    let mut sum = S::zero();
    for (j, hj) in h.iter().enumerate() {
        sum = sum + *hj / fact;
        fact = fact * S::of((j + n + 1) as i64);
    }
    c.exp() * sum
}

fn dd_sorted<S: RealScalar>(x: &[S]) -> S {
    let last = x.len() - 1;
    if last == 0 {
        return x[0].exp();
    }
    let spread = x[last] - x[0];
    if spread < S::of(4) {
        return taylor_dd(x);
    }
    (dd_sorted(&x[1..]) - dd_sorted(&x[..last])) / spread
}

/// Divided difference `exp[x_0, ..., x_n]`, stable for repeated or clustered
/// nodes.
pub fn exp_divided_difference<S: RealScalar>(nodes: &[S]) -> S {
    assert!(!nodes.is_empty(), "divided difference needs a node");
    let mut x = nodes.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
    dd_sorted(&x)
}

/// `(Z, ∫ y e, ∫ y yᵀ e)` over a triangle, with `e = e^{⟨b,y⟩ - shift}`.
fn triangle_moments<S: RealScalar>(v: [Point<S>; 3], b: &[S; 2], shift: S) -> (S, [S; 2], Mat2<S>) {
    let cross = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0]);
    let two_a = cross.abs();
    let s: Vec<S> = v.iter().map(|p| b[0] * p[0] + b[1] * p[1] - shift).collect();
    let z = two_a * exp_divided_difference(&s);
    let mut m1 = [S::zero(), S::zero()];
    let mut m2 = [[S::zero(); 2]; 2];
    for a in 0..3 {
        let ea = two_a * exp_divided_difference(&[s[0], s[1], s[2], s[a]]);
        for i in 0..2 {
            m1[i] = m1[i] + v[a][i] * ea;
        }
        for c in 0..3 {
            let mut eac = two_a * exp_divided_difference(&[s[0], s[1], s[2], s[a], s[c]]);
            if a == c {
                eac = eac * S::of(2);
            }
            for i in 0..2 {
                for j in 0..2 {
                    m2[i][j] = m2[i][j] + v[a][i] * v[c][j] * eac;
                }
            }
        }
    }
    (z, m1, m2)
}

/// `log Z(b)`, the mean `∇ log Z` and the covariance `Hess log Z` of the
/// measure `e^{⟨b,y⟩} dy` on the polygon.
pub fn log_partition<S: RealScalar>(poly: &Polygon<S>, b: &[S; 2]) -> Result<(S, [S; 2], Mat2<S>)> {
    let v = poly.vertices();
    if !poly.is_full_dimensional() {
        return Err(Error::DegeneratePolytope("polygon has no area".into()));
    }
    let shift = v.iter().map(|p| b[0] * p[0] + b[1] * p[1]).fold(S::neg_infinity(), S::max);
    let mut z = S::zero();
    let mut m1 = [S::zero(); 2];
    let mut m2 = [[S::zero(); 2]; 2];
    for t in 1..v.len() - 1 {
        let (zt, m1t, m2t) = triangle_moments([v[0], v[t], v[t + 1]], b, shift);
        z = z + zt;
        for i in 0..2 {
            m1[i] = m1[i] + m1t[i];
            for j in 0..2 {
                m2[i][j] = m2[i][j] + m2t[i][j];
            }
        }
    }
    let mean = [m1[0] / z, m1[1] / z];
    let mut cov = [[S::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            cov[i][j] = m2[i][j] / z - mean[i] * mean[j];
        }
    }
    Ok((z.ln() + shift, mean, cov))
}

/// Newton on `Ψ`, starting at `b = 0`, with backtracking on `Ψ`.
pub fn soliton_vector<S: RealScalar>(problem: &MetricProblem<S>) -> Result<SolitonResult<S>> {
    let poly = problem.polygon();
    let diameter = poly.vertices().iter().fold(S::one(), |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let tol = S::epsilon() * S::of(100) * diameter;
    let mut b = [S::zero(); 2];
    let (mut psi, mut mean, mut cov) = log_partition(poly, &b)?;
    for it in 0..200 {
        let residual = mean[0].hypot(mean[1]);
        if residual <= tol {
            return Ok(SolitonResult { b, residual, iterations: it });
        }
        let inv = inverse2(&cov);
        let step = [inv[0][0] * mean[0] + inv[0][1] * mean[1], inv[1][0] * mean[0] + inv[1][1] * mean[1]];
        let mut t = S::one();
        let mut moved = false;
        for _ in 0..60 {
            let trial = [b[0] - t * step[0], b[1] - t * step[1]];
            let (pt, mt, ct) = log_partition(poly, &trial)?;
            if pt <= psi {
                moved = trial != b;
                b = trial;
                psi = pt;
                mean = mt;
                cov = ct;
                break;
            }
            t = t / S::of(2);
        }
        if !moved {
            if residual <= tol * S::of(1000) {
                return Ok(SolitonResult { b, residual, iterations: it });
            }
            return Err(Error::NoConvergence { iterations: it, residual: residual.to_f64_lossy() });
        }
    }
    let residual = mean[0].hypot(mean[1]);
    Err(Error::NoConvergence { iterations: 200, residual: residual.to_f64_lossy() })
}

/// Barycenter of the polygon by triangulating from the first vertex and
/// summing area-weighted triangle centroids.
pub fn futaki_quadrature<S: RealScalar>(poly: &Polygon<S>) -> Result<[S; 2]> {
    let v = poly.vertices();
    if !poly.is_full_dimensional() {
        return Err(Error::DegeneratePolytope("polygon has no area".into()));
    }
    let three = S::of(3);
    let mut area = S::zero();
    let mut acc = [S::zero(); 2];
    for t in 1..v.len() - 1 {
        let (p, q, r) = (v[0], v[t], v[t + 1]);
        let a = ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])) / S::of(2);
        area = area + a;
        for i in 0..2 {
            acc[i] = acc[i] + a * (p[i] + q[i] + r[i]) / three;
        }
    }
    Ok([acc[0] / area, acc[1] / area])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fanpoly::AugmentedFan;

    #[test]
    fn divided_differences() {
        let e: f64 = exp_divided_difference(&[0.0, 0.0, 0.0]);
        assert!((e - 0.5).abs() < 1e-15);
        let e: f64 = exp_divided_difference(&[0.0, 1.0]);
        assert!((e - (1f64.exp() - 1.0)).abs() < 1e-15);
        // separated and clustered paths agree across the switch
        let a: f64 = exp_divided_difference(&[0.0, 0.999_999, 2.0]);
        let b: f64 = exp_divided_difference(&[0.0, 1.000_001, 2.0]);
        assert!((a - b).abs() < 1e-5);
        let c: f64 = exp_divided_difference(&[3.0, 3.0 + 1e-9, 3.0 - 1e-9, 3.0]);
        assert!((c - 3f64.exp() / 6.0).abs() < 1e-12);
    }

    #[test]
    fn partition_at_zero_is_area_and_barycenter() {
        let poly = Polygon::<f64>::hull(&[[-1.0, -1.0], [0.0, -1.0], [2.0, 1.0], [-1.0, 1.0]]);
        let (lz, mean, _) = log_partition(&poly, &[0.0, 0.0]).unwrap();
        assert!((lz.exp() - 4.0).abs() < 1e-13);
        assert!((mean[0] - 1.0 / 12.0).abs() < 1e-14 && (mean[1] - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let poly = Polygon::<f64>::hull(&[[-1.0, -1.0], [0.0, -1.0], [2.0, 1.0], [-1.0, 1.0]]);
        let b = [0.3f64, -0.7];
        let (_, mean, cov) = log_partition(&poly, &b).unwrap();
        let h = 1e-5f64;
        for i in 0..2 {
            let mut bp = b;
            let mut bm = b;
            bp[i] += h;
            bm[i] -= h;
            let (lp, mp, _) = log_partition(&poly, &bp).unwrap();
            let (lm, mm, _) = log_partition(&poly, &bm).unwrap();
            assert!(((lp - lm) / (2.0 * h) - mean[i]).abs() < 1e-8);
            for j in 0..2 {
                assert!(((mp[j] - mm[j]) / (2.0 * h) - cov[j][i]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn square_soliton_is_zero() {
        let fan = AugmentedFan::from_i64(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let p = MetricProblem::<f64>::from_fan(&fan).unwrap();
        let s = soliton_vector(&p).unwrap();
        assert_eq!(s.b, [0.0, 0.0]);
        assert!(s.residual < 1e-12);
        assert_eq!(futaki_quadrature(p.polygon()).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn f1_soliton() {
        let fan = AugmentedFan::from_i64(&[(0, 1), (-1, 1), (0, -1), (1, 0)]).unwrap();
        let p = MetricProblem::<f64>::from_fan(&fan).unwrap();
        let s = soliton_vector(&p).unwrap();
        assert!(s.b[0].abs() < 1e-12);
        assert!((s.b[1] + 0.527_619_519_896_962_8).abs() < 1e-12, "{:?}", s.b);
        let bc = futaki_quadrature(p.polygon()).unwrap();
        assert!((bc[0] - 1.0 / 12.0).abs() < 1e-12 && (bc[1] - 1.0 / 6.0).abs() < 1e-12);
    }
}
