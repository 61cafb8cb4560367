//! Sasakian 5-manifolds as circle V-bundles over toric Fano surfaces: cone
//! fans, smoothness, spin, diffeotype, Einstein volumes, a family of
//! positive Ricci non-spin examples, and join arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fanpoly::{
    einstein_verdict, index_witness, is_fano, is_strictly_upper_convex, AugmentedFan, EinsteinVerdict,
    SupportFunction,
};
use crate::lattice::{cone_is_smooth, sublattice_index, IVec2, IntMatrix, LatticeCone};
use crate::scalar::Rational;

/// Lift of a surface fan by a support function `h`: each cone `(a, b)` becomes
/// the cone on `(a, h(a)), (b, h(b))` in `Z^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFan {
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<LatticeCone>,
    /// Lifted rays do not span `R^3` (for instance `h ≡ 0`).
    pub degenerate: bool,
}

fn lift(n: &IVec2, height: &BigInt) -> Vec<BigInt> {
    vec![n.x.clone(), n.y.clone(), height.clone()]
}

pub fn cone_fan(fan: &AugmentedFan, h: &SupportFunction) -> Result<ConeFan> {
    if fan.dim() != 2 {
        return Err(Error::UnsupportedDimension(fan.dim()));
    }
    h.check_len(fan)?;
    let rays: Vec<Vec<BigInt>> = fan.rays().iter().zip(h.values()).map(|(n, u)| lift(n, u)).collect();
    let cones = fan
        .cones()
        .into_iter()
        .map(|(a, b)| LatticeCone::new(vec![rays[a].clone(), rays[b].clone()]))
        .collect::<Result<Vec<_>>>()?;
    let degenerate = IntMatrix::from_big_rows(&rays)?.rank() < 3;
    Ok(ConeFan { rays, cones, degenerate })
}

/// Smoothness of the cone `L^×` and of its link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftSmoothness {
    /// Every lifted 2-cone passes the minor-gcd test.
    pub cones_smooth: bool,
    /// The lifted rays generate `Z^3`; otherwise the link is a free quotient
    /// of a simply connected manifold by `Z^3 / span`.
    pub generates_lattice: bool,
    /// `[Z^3 : span of lifted rays]`, `None` when degenerate.
    pub lattice_index: Option<BigInt>,
}

impl LiftSmoothness {
    pub fn smooth(&self) -> bool {
        self.cones_smooth && self.generates_lattice
    }
}

pub fn total_space_smoothness(fan: &AugmentedFan, h: &SupportFunction) -> Result<LiftSmoothness> {
    let cf = cone_fan(fan, h)?;
    let mut cones_smooth = true;
    for c in &cf.cones {
        cones_smooth &= cone_is_smooth(c.generators())?;
    }
    let lattice_index = sublattice_index(&IntMatrix::from_big_rows(&cf.rays)?);
    Ok(LiftSmoothness {
        cones_smooth,
        generates_lattice: lattice_index.as_ref().is_some_and(One::is_one),
        lattice_index,
    })
}

/// Smooth and simply connected total space.
pub fn total_space_smooth(fan: &AugmentedFan, h: &SupportFunction) -> Result<bool> {
    Ok(total_space_smoothness(fan, h)?.smooth())
}

/// Support function of `K^{1/c}`, `c` the index: `u(n) = (1 - ⟨f,n⟩) / c`.
pub fn canonical_root_lift(fan: &AugmentedFan) -> Result<SupportFunction> {
    Ok(index_witness(fan)?.h.neg())
}

/// `w_2 = 0` iff some `a ∈ {0,1}`, `f ∈ (Z/2)^2` has
/// `1 + a·l(n) + ⟨f,n⟩ ≡ 0 (mod 2)` on every ray.
pub fn spin_w2(fan: &AugmentedFan, l: &SupportFunction) -> Result<bool> {
    l.check_len(fan)?;
    let odd = |v: &BigInt| v.is_odd();
    for a in 0..2u8 {
        for f1 in 0..2u8 {
            for f2 in 0..2u8 {
                let ok = fan.rays().iter().zip(l.values()).all(|(n, lv)| {
                    let mut parity = true; // the constant 1
                    parity ^= a == 1 && odd(lv);
                    parity ^= f1 == 1 && odd(&n.x);
                    parity ^= f2 == 1 && odd(&n.y);
                    !parity
                });
                if ok {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Simply connected 5-manifolds with torsion-free `H_2` admitting toric
/// structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diffeotype {
    S5,
    /// `#k(S^2 × S^3)`.
    ConnSumSxS(usize),
    /// `X_∞ # k M_∞`.
    XInfConnSum(usize),
    Unknown,
}

impl fmt::Display for Diffeotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diffeotype::S5 => write!(f, "S⁵"),
            Diffeotype::ConnSumSxS(1) => write!(f, "S²×S³"),
            Diffeotype::ConnSumSxS(k) => write!(f, "#{k}(S²×S³)"),
            Diffeotype::XInfConnSum(0) => write!(f, "X_∞"),
            Diffeotype::XInfConnSum(k) => write!(f, "X_∞#{k}M_∞"),
            Diffeotype::Unknown => write!(f, "unknown"),
        }
    }
}

pub fn classify_5mfd(b2: usize, spin: bool) -> Result<Diffeotype> {
    match (b2, spin) {
        (0, true) => Ok(Diffeotype::S5),
        (0, false) => Err(Error::TorsionExcluded),
        (b, true) => Ok(Diffeotype::ConnSumSxS(b)),
        (b, false) => Ok(Diffeotype::XInfConnSum(b - 1)),
    }
}

/// `Vol(M) = 2c·(π/3)^3·Vol(Σ_{-k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSe {
    /// `2c·Vol(Σ_{-k})`, the coefficient of `(π/3)^3`.
    pub exact: Rational,
    pub numeric: f64,
}

pub fn volume_se(fan: &AugmentedFan) -> Result<VolumeSe> {
    let report = einstein_verdict(fan)?;
    if report.einstein != EinsteinVerdict::Einstein {
        return Err(Error::NotEinstein);
    }
    let exact = Rational::from_integer(BigInt::from(2) * &report.index) * &report.volume;
    let numeric = crate::scalar::rational_to_f64(&exact) * (std::f64::consts::PI / 3.0).powi(3);
    Ok(VolumeSe { exact, numeric })
}

/// `Ord`: lcm of the orders `|det(a, b)|` of the cone stabilizers.
pub fn ord_from_fan(fan: &AugmentedFan) -> BigInt {
    fan.cone_orders().iter().fold(BigInt::one(), |acc, o| acc.lcm(o))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SasakiReport {
    pub dimension: usize,
    pub b2: usize,
    pub smooth: bool,
    pub simply_connected: bool,
    pub spin: bool,
    pub diffeotype: Diffeotype,
    pub einstein: Option<EinsteinVerdict>,
    pub index: Option<BigInt>,
    pub ord: Option<BigInt>,
    pub volume: Option<VolumeSe>,
}

/// Sasaki-Einstein 5-manifold over the Fano surface of a 3-Sasakian
/// 7-manifold with `b_2 = k`.
pub fn se_from_3sasakian(b2_s: usize) -> SasakiReport {
    let b2 = 2 * b2_s + 1;
    SasakiReport {
        dimension: 5,
        b2,
        smooth: true,
        simply_connected: true,
        spin: true,
        diffeotype: Diffeotype::ConnSumSxS(b2),
        einstein: Some(EinsteinVerdict::Einstein),
        index: None,
        ord: None,
        volume: None,
    }
}

/// Circle bundle of `K^{1/c}` over a Fano surface, through the whole chain.
pub fn analyze_fano_fan(fan: &AugmentedFan) -> Result<SasakiReport> {
    let verdict = einstein_verdict(fan)?;
    let l = canonical_root_lift(fan)?;
    let sm = total_space_smoothness(fan, &l)?;
    let b2 = fan.len() - 3;
    let spin = spin_w2(fan, &l)?;
    let diffeotype = if sm.smooth() {
        classify_5mfd(b2, spin).unwrap_or(Diffeotype::Unknown)
    } else {
        Diffeotype::Unknown
    };
    let volume = match verdict.einstein {
        EinsteinVerdict::Einstein => Some(volume_se(fan)?),
        EinsteinVerdict::SolitonOnly => None,
    };
    debug_assert!(verdict.einstein == EinsteinVerdict::SolitonOnly || spin);
    Ok(SasakiReport {
        dimension: 5,
        b2,
        smooth: sm.cones_smooth,
        simply_connected: sm.generates_lattice,
        spin,
        diffeotype,
        einstein: Some(verdict.einstein),
        index: Some(verdict.index),
        ord: Some(ord_from_fan(fan)),
        volume,
    })
}

/// The marked fan `Δ*_{k,p}` with its bundle support `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFamily {
    pub k: i64,
    pub p: i64,
    pub fan: AugmentedFan,
    pub l: SupportFunction,
    pub repaired: bool,
}

/// Rays `σ_0, ..., σ_{k+2}` as printed.
pub fn delta_kp_printed_rays(k: i64, p: i64) -> Vec<IVec2> {
    let mut rays = vec![IVec2::from((-1, 0)), IVec2::from((0, 1))];
    if k == 1 {
        rays.push(IVec2::from((1, 1 + p)));
        rays.push(IVec2::from((0, 2 + p)));
        return rays;
    }
    for j in 2..=k {
        rays.push(IVec2::from((j - 1, j * (j - 1) / 2 - 1)));
    }
    rays.push(IVec2::from((k, (k + 1) * k / 2 - 1 + p)));
    rays.push(IVec2::from((0, (k + 1) * k / 2 + p)));
    rays
}

/// Printed rays with the second coordinate negated for `j ≥ 2`.
pub fn delta_kp_repaired_rays(k: i64, p: i64) -> Vec<IVec2> {
    delta_kp_printed_rays(k, p)
        .into_iter()
        .enumerate()
        .map(|(j, r)| if j >= 2 { IVec2::new(r.x, -r.y) } else { r })
        .collect()
}

fn validate_delta(k: i64, p: i64, rays: Vec<IVec2>) -> Result<(AugmentedFan, SupportFunction)> {
    let invalid = |reason: String| Error::FamilyInvalid { k, p, reason };
    let fan = AugmentedFan::new(rays).map_err(|e| invalid(e.to_string()))?;
    let mut l = vec![BigInt::from(-1); fan.len()];
    l[0] = BigInt::zero();
    let l = SupportFunction::new(l);
    if !is_strictly_upper_convex(&fan, &l)? {
        return Err(invalid("l is not strictly upper convex".into()));
    }
    let rows: Vec<Vec<BigInt>> = fan.rays().iter().map(IVec2::to_vec).collect();
    if !sublattice_index(&IntMatrix::from_big_rows(&rows)?).is_some_and(|i| i.is_one()) {
        return Err(invalid("rays do not generate Z^2".into()));
    }
    Ok((fan, l))
}

/// Validates the printed data; if that fails and `repair` is set, validates
/// the sign-repaired data instead.
pub fn delta_kp_family(k: i64, p: i64, repair: bool) -> Result<DeltaFamily> {
    if k < 1 || p < 0 {
        return Err(Error::FamilyInvalid { k, p, reason: "need k >= 1 and p >= 0".into() });
    }
    match validate_delta(k, p, delta_kp_printed_rays(k, p)) {
        Ok((fan, l)) => Ok(DeltaFamily { k, p, fan, l, repaired: false }),
        Err(e) if !repair => Err(e),
        Err(_) => {
            let (fan, l) = validate_delta(k, p, delta_kp_repaired_rays(k, p))?;
            Ok(DeltaFamily { k, p, fan, l, repaired: true })
        }
    }
}

impl DeltaFamily {
    pub fn is_fano(&self) -> bool {
        is_fano(&self.fan)
    }

    pub fn spin(&self) -> bool {
        spin_w2(&self.fan, &self.l).expect("l matches the fan")
    }

    /// `b_2` of the circle bundle: `b_2(X) - 1`.
    pub fn b2(&self) -> usize {
        self.fan.len() - 3
    }
}

/// Invariants of one join factor `M` of dimension `2m + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinFactor {
    pub m: usize,
    pub b2: usize,
    pub index: BigInt,
    pub ord: BigInt,
    pub einstein: bool,
    pub positive: bool,
    /// `None` when unknown.
    pub spin: Option<bool>,
}

impl JoinFactor {
    /// Standard `S^{2m+1}`.
    pub fn sphere(m: usize) -> Self {
        JoinFactor {
            m,
            b2: 0,
            index: BigInt::from(m + 1),
            ord: BigInt::one(),
            einstein: true,
            positive: true,
            spin: Some(true),
        }
    }

    pub fn from_report(r: &SasakiReport) -> Option<Self> {
        Some(JoinFactor {
            m: (r.dimension - 1) / 2,
            b2: r.b2,
            index: r.index.clone()?,
            ord: r.ord.clone()?,
            einstein: r.einstein == Some(EinsteinVerdict::Einstein),
            positive: r.einstein.is_some(),
            spin: Some(r.spin),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinReport {
    pub dims: (usize, usize),
    pub relative_indices: (BigInt, BigInt),
    pub weights: (BigInt, BigInt),
    /// Common factor removed from the requested weights.
    pub reduced_by: BigInt,
    pub smooth: bool,
    pub dimension_out: usize,
    pub b2_out: usize,
    pub einstein: bool,
    pub positive: bool,
    pub spin: Option<bool>,
    pub index_out: BigInt,
    pub ord_out: BigInt,
}

impl JoinReport {
    /// The join as a factor for further joins.
    pub fn as_factor(&self) -> JoinFactor {
        JoinFactor {
            m: self.dims.0 + self.dims.1,
            b2: self.b2_out,
            index: self.index_out.clone(),
            ord: self.ord_out.clone(),
            einstein: self.einstein,
            positive: self.positive,
            spin: self.spin,
        }
    }
}

/// `M_1 ⋆_{k_1,k_2} M_2`, smooth iff `gcd(v_1 k_2, v_2 k_1) = 1`.
pub fn join(r1: &JoinFactor, r2: &JoinFactor, k1: &BigInt, k2: &BigInt) -> Result<JoinReport> {
    if !k1.is_positive() || !k2.is_positive() {
        return Err(Error::InvalidJoin(format!("weights ({k1},{k2}) must be positive")));
    }
    if !r1.index.is_positive() || !r2.index.is_positive() || !r1.ord.is_positive() || !r2.ord.is_positive() {
        return Err(Error::InvalidJoin("index and Ord must be positive".into()));
    }
    let g = k1.gcd(k2);
    let (k1, k2) = (k1 / &g, k2 / &g);
    let gi = r1.index.gcd(&r2.index);
    let l = (&r1.index / &gi, &r2.index / &gi);
    let smooth = (&r1.ord * &k2).gcd(&(&r2.ord * &k1)).is_one();
    let einstein = r1.einstein && r2.einstein && (k1.clone(), k2.clone()) == l;
    let spin = match (r1.spin, r2.spin) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        _ => None,
    };
    Ok(JoinReport {
        dims: (r1.m, r2.m),
        relative_indices: l,
        weights: (k1, k2),
        reduced_by: g,
        smooth,
        dimension_out: 2 * (r1.m + r2.m) + 1,
        b2_out: r1.b2 + r2.b2 + 1,
        einstein,
        positive: r1.positive && r2.positive,
        spin,
        index_out: gi,
        ord_out: &r1.ord * &r2.ord,
    })
}

/// Dimension after joining `p` copies of `S^3` onto a `(2m+1)`-manifold.
pub fn iterated_sphere_join(base: &JoinFactor, p: usize) -> Result<JoinFactor> {
    let mut cur = base.clone();
    let s3 = JoinFactor::sphere(1);
    for _ in 0..p {
        let gi = cur.index.gcd(&s3.index);
        let (l1, l2) = (&cur.index / &gi, &s3.index / &gi);
        cur = join(&cur, &s3, &l1, &l2)?.as_factor();
    }
    Ok(cur)
}

pub fn dimension_of(f: &JoinFactor) -> usize {
    2 * f.m + 1
}
