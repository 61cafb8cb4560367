use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, FanViolation, Result};
use crate::lattice::{IMat2, IVec2};
use crate::scalar::Rational;

/// Complete simplicial fan in `Z^2` with a marked lattice point on every ray.
///
/// Rays keep the caller's order (support functions are indexed by it); the
/// two-dimensional cones are spanned by angularly consecutive rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedFan {
    rays: Vec<IVec2>,
    cyclic: Vec<usize>,
}

impl AugmentedFan {
    pub fn new(rays: Vec<IVec2>) -> Result<Self> {
        if rays.len() < 3 {
            return Err(Error::InvalidFan(FanViolation::TooFewRays(rays.len())));
        }
        if let Some(i) = rays.iter().position(IVec2::is_zero) {
            return Err(Error::InvalidFan(FanViolation::ZeroRay(i)));
        }
        let mut cyclic: Vec<usize> = (0..rays.len()).collect();
        cyclic.sort_by(|&a, &b| rays[a].angle_cmp(&rays[b]));
        for w in cyclic.windows(2) {
            if rays[w[0]].angle_cmp(&rays[w[1]]).is_eq() {
                let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::InvalidFan(FanViolation::RepeatedDirection(i, j)));
            }
        }
        let n = cyclic.len();
        for t in 0..n {
            let (a, b) = (&rays[cyclic[t]], &rays[cyclic[(t + 1) % n]]);
            if !a.cross(b).is_positive() {
                return Err(Error::InvalidFan(FanViolation::NotComplete));
            }
        }
        Ok(AugmentedFan { rays, cyclic })
    }

    /// Rays given as coordinate lists; only surfaces are supported.
    pub fn from_coordinates(rays: &[Vec<BigInt>]) -> Result<Self> {
        let dim = rays.first().map_or(2, Vec::len);
        if dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut out = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if r.len() != 2 {
                return Err(Error::InvalidFan(FanViolation::WrongDimension {
                    ray: i,
                    expected: 2,
                    got: r.len(),
                }));
            }
            out.push(IVec2::new(r[0].clone(), r[1].clone()));
        }
        Self::new(out)
    }

    pub fn from_i64(rays: &[(i64, i64)]) -> Result<Self> {
        Self::new(rays.iter().copied().map(IVec2::from).collect())
    }

    pub fn dim(&self) -> usize {
        2
    }

    pub fn rays(&self) -> &[IVec2] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IVec2 {
        &self.rays[i]
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Ray indices in counterclockwise order, starting from the smallest angle.
    pub fn cyclic_order(&self) -> &[usize] {
        &self.cyclic
    }

    /// Maximal cones as `(i, j)` with `ray j` counterclockwise after `ray i`.
    pub fn cones(&self) -> Vec<(usize, usize)> {
        let n = self.cyclic.len();
        (0..n).map(|t| (self.cyclic[t], self.cyclic[(t + 1) % n])).collect()
    }

    /// Consecutive triples `(prev, mid, next)` around the fan.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.cyclic.len();
        (0..n)
            .map(|t| (self.cyclic[(t + n - 1) % n], self.cyclic[t], self.cyclic[(t + 1) % n]))
            .collect()
    }

    /// Rays listed in counterclockwise order.
    pub fn ccw_rays(&self) -> Vec<IVec2> {
        self.cyclic.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Marking multiplicities `a_ρ` with `n(ρ) = a_ρ · primitive(ρ)`.
    pub fn multiplicities(&self) -> Vec<BigInt> {
        self.rays.iter().map(IVec2::content).collect()
    }

    /// Second Betti number of the toric surface, rays minus two.
    pub fn b2(&self) -> usize {
        self.rays.len() - 2
    }

    /// Image under a unimodular map (rays keep their indices).
    pub fn transform(&self, g: &IMat2) -> Result<Self> {
        if !g.is_unimodular() {
            return Err(Error::DimensionMismatch("map is not in GL(2,Z)".into()));
        }
        Self::new(self.rays.iter().map(|r| g.apply(r)).collect())
    }

    /// Whether the marked points contain `-n` for every `n`.
    pub fn is_centrally_symmetric(&self) -> bool {
        self.rays.iter().all(|r| self.rays.contains(&-r))
    }

    /// Orders `|det(n_i, n_j)|` of the local groups at the torus fixed points.
    pub fn cone_orders(&self) -> Vec<BigInt> {
        self.cones().into_iter().map(|(i, j)| self.rays[i].cross(&self.rays[j]).abs()).collect()
    }
}

/// Integer values `h(n(ρ))`, one per ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportFunction {
    values: Vec<BigInt>,
}

impl SupportFunction {
    pub fn new(values: Vec<BigInt>) -> Self {
        SupportFunction { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        SupportFunction { values: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn constant(len: usize, value: i64) -> Self {
        SupportFunction { values: vec![BigInt::from(value); len] }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_len(&self, fan: &AugmentedFan) -> Result<()> {
        if self.values.len() != fan.len() {
            return Err(Error::SupportLength { expected: fan.len(), got: self.values.len() });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        SupportFunction { values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        SupportFunction { values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `h + f` for a linear function `f ∈ M`, evaluated on the fan's rays.
    pub fn add_linear(&self, fan: &AugmentedFan, f: &IVec2) -> Self {
        SupportFunction {
            values: self.values.iter().zip(fan.rays()).map(|(v, r)| v + f.dot(r)).collect(),
        }
    }
}

/// The canonical support function `k`, equal to one on every marked point.
pub fn canonical_support(fan: &AugmentedFan) -> SupportFunction {
    SupportFunction::constant(fan.len(), 1)
}

/// `-k`, whose polytope is the anticanonical polygon.
pub fn anticanonical_support(fan: &AugmentedFan) -> SupportFunction {
    SupportFunction::constant(fan.len(), -1)
}

/// The linear function `l_σ ∈ M_Q` agreeing with `h` on the two rays of a cone.
pub fn cone_linear_function(fan: &AugmentedFan, h: &SupportFunction, cone: (usize, usize)) -> [Rational; 2] {
    let (a, b) = (fan.ray(cone.0), fan.ray(cone.1));
    let (ha, hb) = (&h.values()[cone.0], &h.values()[cone.1]);
    let det = a.cross(b);
    let x = Rational::new(ha * &b.y - hb * &a.y, det.clone());
    let y = Rational::new(&a.x * hb - &b.x * ha, det);
    [x, y]
}

fn eval(l: &[Rational; 2], n: &IVec2) -> Rational {
    &l[0] * Rational::from_integer(n.x.clone()) + &l[1] * Rational::from_integer(n.y.clone())
}

/// For every consecutive triple `(a, b, c)`, the excess `l_{ab}(c) - h(c)`.
/// Upper convexity means all are `≥ 0`, strictness means all are `> 0`.
pub fn convexity_defects(fan: &AugmentedFan, h: &SupportFunction) -> Result<Vec<Rational>> {
    h.check_len(fan)?;
    Ok(fan
        .triples()
        .into_iter()
        .map(|(a, b, c)| {
            let l = cone_linear_function(fan, h, (a, b));
            eval(&l, fan.ray(c)) - Rational::from_integer(h.values()[c].clone())
        })
        .collect())
}

pub fn is_strictly_upper_convex(fan: &AugmentedFan, h: &SupportFunction) -> Result<bool> {
    Ok(convexity_defects(fan, h)?.iter().all(Signed::is_positive))
}

pub fn is_upper_convex(fan: &AugmentedFan, h: &SupportFunction) -> Result<bool> {
    Ok(convexity_defects(fan, h)?.iter().all(|d| !d.is_negative()))
}

/// `-k` strictly upper convex.
pub fn is_fano(fan: &AugmentedFan) -> bool {
    is_strictly_upper_convex(fan, &anticanonical_support(fan)).expect("matching length")
}

/// Direct form of the Fano condition: every marked point is a vertex of the
/// convex hull of all marked points (the origin is interior by completeness).
pub fn marked_points_in_convex_position(fan: &AugmentedFan) -> bool {
    let ccw = fan.ccw_rays();
    let n = ccw.len();
    (0..n).all(|t| {
        let (p, q, r) = (&ccw[(t + n - 1) % n], &ccw[t], &ccw[(t + 1) % n]);
        (q - p).cross(&(r - q)).is_positive()
    })
}

/// Ray sets equal up to order.
pub fn same_ray_set(a: &[IVec2], b: &[IVec2]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}
