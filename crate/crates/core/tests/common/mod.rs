#![allow(dead_code)]

use forge_core::asd::IsotropyData;
use forge_core::fanpoly::AugmentedFan;
use forge_core::lattice::{IMat2, IVec2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64) -> IVec2 {
    IVec2::from((x, y))
}

pub fn fan(rays: &[(i64, i64)]) -> AugmentedFan {
    AugmentedFan::from_i64(rays).unwrap()
}

pub fn square_fan() -> AugmentedFan {
    fan(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
}

pub fn hexagon_fan() -> AugmentedFan {
    fan(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
}

pub fn fig2_fan() -> AugmentedFan {
    fan(&[(1, 1), (5, 2), (7, 2), (5, 1), (-1, -1), (-5, -2), (-7, -2), (-5, -1)])
}

pub fn f1_fan() -> AugmentedFan {
    fan(&[(0, 1), (-1, 1), (0, -1), (1, 0)])
}

pub fn cp2_fan() -> AugmentedFan {
    fan(&[(1, 0), (0, 1), (-1, -1)])
}

fn upper(p: &IVec2) -> bool {
    p.y > 0.into() || (p.y == 0.into() && p.x > 0.into())
}

/// Strictly convex position of a cyclically ordered point list.
fn strictly_convex_ccw(pts: &[IVec2]) -> bool {
    let n = pts.len();
    (0..n).all(|i| {
        let (a, b, c) = (&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
        (b - a).cross(&(c - b)) > 0.into()
    })
}

/// `m` half-plane vectors, angle-sorted, whose doubles are in strictly
/// convex position.
pub fn random_half(rng: &mut ChaCha8Rng, m: usize, range: i64) -> Vec<IVec2> {
    loop {
        let mut half: Vec<IVec2> = Vec::new();
        while half.len() < m {
            let p = v(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            if p.is_zero() {
                continue;
            }
            let p = if upper(&p) { p } else { -&p };
            if half.iter().any(|q| q.cross(&p) == 0.into()) {
                continue;
            }
            half.push(p);
        }
        half.sort_by(|a, b| a.angle_cmp(b));
        let mut doubled = half.clone();
        doubled.extend(half.iter().map(|p| -p));
        if strictly_convex_ccw(&doubled) {
            return half;
        }
    }
}

/// Random special symmetric Fano fan with `2m` rays, `2 ≤ m ≤ 5`.
pub fn random_special_symmetric_fan(rng: &mut ChaCha8Rng) -> AugmentedFan {
    let m = rng.gen_range(2..=5);
    let half = random_half(rng, m, 7);
    let mut rays = half.clone();
    rays.extend(half.iter().map(|p| -p));
    AugmentedFan::new(rays).unwrap()
}

/// Isotropy data `v_0, ..., v_{k+2}` from a random convex half.
pub fn random_isotropy_data(rng: &mut ChaCha8Rng) -> IsotropyData {
    let m = rng.gen_range(2..=5);
    let mut vs = random_half(rng, m, 7);
    vs.push(-&vs[0]);
    IsotropyData::new(vs).unwrap()
}

/// Random unimodular matrix as a product of elementary moves.
pub fn random_unimodular(rng: &mut ChaCha8Rng) -> IMat2 {
    let mut g = IMat2::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let e = match rng.gen_range(0..4) {
            0 => IMat2::new(1, 1, 0, 1),
            1 => IMat2::new(1, 0, -1, 1),
            2 => IMat2::new(0, 1, 1, 0),
            _ => IMat2::new(-1, 0, 0, 1),
        };
        g = g.mul(&e);
    }
    g
}
