//! Isotropy data of compact toric anti-self-dual Einstein orbifolds and the
//! special symmetric toric Fano surfaces they correspond to.
//!
//! Data is a cyclic sequence `v_0, ..., v_{k+2}` in `Z^2` with
//! `v_0 = -v_{k+2}`. An anti-self-dual Einstein metric exists iff the doubled
//! sequence `v_0, ..., v_{k+2}, -v_1, ..., -v_{k+1}` runs around a convex
//! polygon; that polygon's vertices are the marked rays of the Fano surface.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fanpoly::{is_fano, symmetry, AugmentedFan};
use crate::lattice::IVec2;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyData {
    vectors: Vec<IVec2>,
}

impl IsotropyData {
    pub fn new(vectors: Vec<IVec2>) -> Result<Self> {
        if vectors.len() < 3 {
            return Err(Error::InvalidIsotropy(format!(
                "need at least 3 vectors, got {}",
                vectors.len()
            )));
        }
        let last = vectors.len() - 1;
        if vectors[0] != -&vectors[last] {
            return Err(Error::InvalidIsotropy(format!(
                "first vector {} is not minus the last {}",
                vectors[0], vectors[last]
            )));
        }
        for i in 1..vectors.len() {
            if vectors[i - 1].cross(&vectors[i]).is_zero() {
                return Err(Error::InvalidIsotropy(format!(
                    "v{} = {} and v{} = {} are dependent",
                    i - 1,
                    vectors[i - 1],
                    i,
                    vectors[i]
                )));
            }
        }
        Ok(IsotropyData { vectors })
    }

    pub fn from_i64(vectors: &[(i64, i64)]) -> Result<Self> {
        Self::new(vectors.iter().copied().map(IVec2::from).collect())
    }

    pub fn vectors(&self) -> &[IVec2] {
        &self.vectors
    }

    /// `k = b_2` of the orbifold; the data has `k + 3` entries.
    pub fn k(&self) -> usize {
        self.vectors.len() - 3
    }

    /// `v_0, ..., v_{k+2}, -v_1, ..., -v_{k+1}`.
    pub fn doubled(&self) -> Vec<IVec2> {
        let mut out = self.vectors.clone();
        let n = self.vectors.len();
        out.extend(self.vectors[1..n - 1].iter().map(|v| -v));
        out
    }

    /// Cyclic ray list `ρ_1, ..., ρ_{2n}` with `n = k + 2` and `ρ_{n+j} = -ρ_j`.
    pub fn cyclic_rays(&self) -> Vec<IVec2> {
        let n = self.vectors.len() - 1;
        let mut out: Vec<IVec2> = self.vectors[..n].to_vec();
        out.extend(self.vectors[..n].iter().map(|v| -v));
        out
    }
}

/// Conditions a and b on the data as given: `m_i` strictly increasing and the
/// slopes `(n_i - n_{i-1}) / (m_i - m_{i-1})` strictly increasing. A repeated
/// `m` makes the slope undefined and fails the check.
pub fn check_conditions_ab(data: &IsotropyData) -> bool {
    let v = data.vectors();
    if v.windows(2).any(|w| w[1].x <= w[0].x) {
        return false;
    }
    let slopes: Vec<Rational> = v
        .windows(2)
        .map(|w| Rational::new(&w[1].y - &w[0].y, &w[1].x - &w[0].x))
        .collect();
    slopes.windows(2).all(|s| s[0] < s[1])
}

/// The doubled sequence runs around a strictly convex polygon, in either
/// orientation, with no repeated points and no three consecutive collinear.
pub fn check_calderbank_singer(data: &IsotropyData) -> bool {
    let pts = data.doubled();
    let n = pts.len();
    let turns: Vec<BigInt> = (0..n)
        .map(|t| {
            let (p, q, r) = (&pts[t], &pts[(t + 1) % n], &pts[(t + 2) % n]);
            (q - p).cross(&(r - q))
        })
        .collect();
    let all_left = turns.iter().all(Signed::is_positive);
    let all_right = turns.iter().all(Signed::is_negative);
    if !(all_left || all_right) {
        return false;
    }
    // equal turning signs can still wind around more than once
    let winding: usize = (0..n)
        .filter(|&t| {
            let (a, b) = (&pts[t], &pts[(t + 1) % n]);
            a.half() != b.half()
        })
        .count();
    winding == 2
}

/// Orders `|det(v_{i-1}, v_i)|` of the vertex stabilizers, `i = 1..k+2`.
pub fn stabilizer_orders(data: &IsotropyData) -> Vec<BigInt> {
    data.vectors().windows(2).map(|w| w[0].cross(&w[1]).abs()).collect()
}

/// The special symmetric Fano surface with rays the doubled sequence.
pub fn fano_from_isotropy(data: &IsotropyData) -> Result<AugmentedFan> {
    if !check_calderbank_singer(data) {
        return Err(Error::NotAsdEinstein);
    }
    AugmentedFan::new(data.doubled())
}

/// Rays of the two degree-one divisors `D, D̄` for `1 ≤ i ≤ k + 2`:
/// `±(ρ_1, ..., ρ_i, ρ_{i+1} - ρ_i, ρ_{n+i+1}, ..., ρ_{2n})`.
pub fn divisor_fans(data: &IsotropyData, i: usize) -> Result<(AugmentedFan, AugmentedFan)> {
    if !check_calderbank_singer(data) {
        return Err(Error::NotAsdEinstein);
    }
    let rho = data.cyclic_rays();
    let n = rho.len() / 2;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    // 1-based ρ_j is rho[j - 1]
    let mut rays: Vec<IVec2> = rho[..i].to_vec();
    rays.push(&rho[i % (2 * n)] - &rho[i - 1]);
    rays.extend(rho[n + i..].iter().cloned());
    let neg: Vec<IVec2> = rays.iter().map(|r| -r).collect();
    Ok((AugmentedFan::new(rays)?, AugmentedFan::new(neg)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsdReport {
    pub admits_asd_einstein: bool,
    pub conditions_ab: bool,
    pub stabilizer_orders: Vec<BigInt>,
    pub b2_orbifold: usize,
    pub fano_surface: Option<AugmentedFan>,
    pub b2_surface: Option<usize>,
}

pub fn analyze(data: &IsotropyData) -> AsdReport {
    let admits = check_calderbank_singer(data);
    let fano = if admits { fano_from_isotropy(data).ok() } else { None };
    let b2_surface = fano.as_ref().map(AugmentedFan::b2);
    if let Some(f) = &fano {
        debug_assert!(is_fano(f) && symmetry(f).is_special_symmetric);
    }
    AsdReport {
        admits_asd_einstein: admits,
        conditions_ab: check_conditions_ab(data),
        stabilizer_orders: stabilizer_orders(data),
        b2_orbifold: data.k(),
        fano_surface: fano,
        b2_surface,
    }
}

/// Bounded search for a rearrangement satisfying conditions a and b by
/// cyclic relabeling, reversal, sign changes and `GL(2,Z)` maps with entries
/// in `[-bound, bound]`. Returns the first arrangement found.
pub fn normalize_by_search(data: &IsotropyData, bound: i64) -> Option<IsotropyData> {
    let edges: Vec<(i64, i64)> = data.vectors()[..data.vectors().len() - 1]
        .iter()
        .map(|v| (v.x.to_i64().expect("small data"), v.y.to_i64().expect("small data")))
        .collect();
    let n = edges.len();
    let mut maps = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if (a * d - b * c).abs() == 1 {
                        maps.push((a, b, c, d));
                    }
                }
            }
        }
    }
    let mut seq = vec![(0i64, 0i64); n + 1];
    for &(a, b, c, d) in &maps {
        let img: Vec<(i64, i64)> = edges.iter().map(|&(x, y)| (a * x + b * y, c * x + d * y)).collect();
        for start in 0..n {
            for reverse in [false, true] {
                for signs in 0u32..(1 << n) {
                    for (j, slot) in seq.iter_mut().take(n).enumerate() {
                        let idx = if reverse { (start + n - j) % n } else { (start + j) % n };
                        let (x, y) = img[idx];
                        *slot = if signs >> j & 1 == 1 { (-x, -y) } else { (x, y) };
                    }
                    seq[n] = (-seq[0].0, -seq[0].1);
                    if ab_i64(&seq) {
                        return IsotropyData::from_i64(&seq).ok();
                    }
                }
            }
        }
    }
    None
}

fn ab_i64(v: &[(i64, i64)]) -> bool {
    if v.windows(2).any(|w| w[1].0 <= w[0].0) {
        return false;
    }
    // compare consecutive slopes by cross-multiplying positive denominators
    v.windows(3).all(|w| {
        let (d1x, d1y) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let (d2x, d2y) = (w[2].0 - w[1].0, w[2].1 - w[1].1);
        d1y * d2x < d2y * d1x
    })
}

/// Weights `(p_2 + p_3, p_1 + p_3, p_1 + p_2)` of the weighted projective
/// plane obtained from a circle quotient with weights `(p_1, p_2, p_3)`.
pub fn eschenburg_weights(p: [i64; 3]) -> [i64; 3] {
    [p[1] + p[2], p[0] + p[2], p[0] + p[1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fanpoly::{fans_isomorphic, same_ray_set};

    fn example() -> IsotropyData {
        IsotropyData::from_i64(&[(-7, -2), (-5, -2), (-1, -1), (5, 1), (7, 2)]).unwrap()
    }

    fn square() -> IsotropyData {
        IsotropyData::from_i64(&[(-1, 0), (0, 1), (1, 0)]).unwrap()
    }

    fn hexagon() -> IsotropyData {
        IsotropyData::from_i64(&[(-1, 0), (0, 1), (1, 1), (1, 0)]).unwrap()
    }

    fn rays(v: &[(i64, i64)]) -> Vec<IVec2> {
        v.iter().copied().map(IVec2::from).collect()
    }

    #[test]
    fn validation() {
        assert!(IsotropyData::from_i64(&[(1, 0), (0, 1)]).is_err());
        assert!(IsotropyData::from_i64(&[(1, 0), (0, 1), (1, 0)]).is_err());
        assert!(IsotropyData::from_i64(&[(-1, 0), (2, 0), (1, 0)]).is_err());
    }

    #[test]
    fn conditions_ab() {
        assert!(check_conditions_ab(&example()));
        assert!(!check_conditions_ab(&square()));
        let flipped = IsotropyData::from_i64(&[(-1, 0), (0, -1), (1, 0)]).unwrap();
        assert!(check_conditions_ab(&flipped));
        // repeated m: reported as failure
        assert!(!check_conditions_ab(&hexagon()));
    }

    #[test]
    fn calderbank_singer() {
        assert!(check_calderbank_singer(&example()));
        assert!(check_calderbank_singer(&square()));
        assert!(check_calderbank_singer(&hexagon()));
        let repeated = IsotropyData::from_i64(&[(-1, 0), (0, 1), (0, 1), (1, 0)]);
        assert!(repeated.is_err());
        let concave = IsotropyData::from_i64(&[(-3, 0), (0, 1), (3, 0)]).unwrap();
        assert!(check_calderbank_singer(&concave));
        let bad = IsotropyData::from_i64(&[(-2, -1), (0, 1), (1, 1), (2, 1)]).unwrap();
        assert!(!check_calderbank_singer(&bad));
    }

    #[test]
    fn example_orders_and_fan() {
        let orders: Vec<i64> = stabilizer_orders(&example()).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(orders, vec![4, 3, 4, 3]);
        let fan = fano_from_isotropy(&example()).unwrap();
        let fig2 = rays(&[(1, 1), (5, 2), (7, 2), (5, 1), (-1, -1), (-5, -2), (-7, -2), (-5, -1)]);
        assert!(same_ray_set(fan.rays(), &fig2));
        assert_eq!(fan.b2(), 2 * 2 + 2);
        let report = analyze(&example());
        assert!(report.admits_asd_einstein && report.conditions_ab);
        assert_eq!(report.b2_surface, Some(6));
    }

    #[test]
    fn smooth_cases() {
        let s = fano_from_isotropy(&square()).unwrap();
        assert!(same_ray_set(s.rays(), &rays(&[(1, 0), (0, 1), (-1, 0), (0, -1)])));
        let h = fano_from_isotropy(&hexagon()).unwrap();
        assert!(same_ray_set(
            h.rays(),
            &rays(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
        ));
        assert!(stabilizer_orders(&hexagon()).iter().all(|v| *v == BigInt::from(1)));
        assert!(stabilizer_orders(&square()).iter().all(|v| *v == BigInt::from(1)));
    }

    #[test]
    fn divisors_of_hexagon_are_f1() {
        let f1 = AugmentedFan::from_i64(&[(1, 0), (0, 1), (-1, 1), (0, -1)]).unwrap();
        for i in 1..=3 {
            let (d, dbar) = divisor_fans(&hexagon(), i).unwrap();
            assert!(fans_isomorphic(&d, &f1), "i = {i}");
            assert!(fans_isomorphic(&dbar, &f1));
            let neg: Vec<IVec2> = d.rays().iter().map(|r| -r).collect();
            assert_eq!(dbar.rays(), &neg[..]);
        }
        assert_eq!(divisor_fans(&hexagon(), 0), Err(Error::IndexOutOfRange { index: 0, max: 3 }));
        assert_eq!(divisor_fans(&hexagon(), 4), Err(Error::IndexOutOfRange { index: 4, max: 3 }));
    }

    #[test]
    fn divisors_of_square_have_three_rays() {
        for i in 1..=2 {
            let (d, dbar) = divisor_fans(&square(), i).unwrap();
            assert_eq!((d.len(), dbar.len()), (3, 3));
        }
    }

    #[test]
    fn divisor_rays_cover_full_fan() {
        let data = example();
        let full = data.cyclic_rays();
        let n = full.len() / 2;
        for i in 1..=n {
            let (d, dbar) = divisor_fans(&data, i).unwrap();
            let mut both: Vec<IVec2> = d.rays().iter().chain(dbar.rays()).cloned().collect();
            both.sort();
            both.dedup();
            let sigma = &full[i % (2 * n)] - &full[i - 1];
            let mut expect = full.clone();
            expect.push(sigma.clone());
            expect.push(-&sigma);
            expect.sort();
            expect.dedup();
            assert_eq!(both, expect, "i = {i}");
        }
    }

    #[test]
    fn search_normalizes_square() {
        let found = normalize_by_search(&square(), 1).unwrap();
        assert!(check_conditions_ab(&found));
        let found = normalize_by_search(&hexagon(), 2).unwrap();
        assert!(check_conditions_ab(&found));
    }

    #[test]
    fn eschenburg() {
        assert_eq!(eschenburg_weights([1, 1, 1]), [2, 2, 2]);
        assert_eq!(eschenburg_weights([1, 2, 3]), [5, 4, 3]);
    }
}
