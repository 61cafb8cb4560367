use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fan::{anticanonical_support, is_fano, is_strictly_upper_convex, AugmentedFan, SupportFunction};
use super::polygon::{Point, Polytope};
use crate::error::{Error, Result};
use crate::lattice::{IMat2, IVec2};
use crate::scalar::{Rational, Scalar};

/// `Σ_h = {m : ⟨m, n(ρ)⟩ ≥ h(n(ρ))}` with exact vertices.
pub fn polytope_from_support<S: Scalar>(fan: &AugmentedFan, h: &SupportFunction) -> Result<Polytope<S>> {
    h.check_len(fan)?;
    let offsets = h.values().iter().map(S::from_bigint).collect();
    Polytope::from_halfplanes(fan.rays().to_vec(), offsets)
}

/// The anticanonical polygon `Σ_{-k}` over the rationals.
pub fn anticanonical_polytope(fan: &AugmentedFan) -> Result<Polytope<Rational>> {
    polytope_from_support(fan, &anticanonical_support(fan))
}

/// Normal fan of a labeled polygon together with its support function.
///
/// Only facets that carry an edge are used, in the polytope's facet order.
pub fn fan_from_polytope(poly: &Polytope<Rational>) -> Result<(AugmentedFan, SupportFunction)> {
    if !poly.is_full_dimensional() {
        return Err(Error::DegeneratePolytope("polygon is not full-dimensional".into()));
    }
    let facets = poly.edge_facets();
    let mut rays = Vec::with_capacity(facets.len());
    let mut values = Vec::with_capacity(facets.len());
    for &i in &facets {
        let h = &poly.offsets()[i];
        if !h.is_integer() {
            return Err(Error::NonIntegralSupport(i));
        }
        rays.push(poly.normals()[i].clone());
        values.push(h.to_integer());
    }
    Ok((AugmentedFan::new(rays)?, SupportFunction::new(values)))
}

/// Smallest positive labels making every facet offset of a polygon integral.
pub fn minimal_labels(vertices: &[Point<Rational>]) -> Result<Vec<BigInt>> {
    let unit = super::polygon::Polygon::hull(vertices);
    let ones = vec![BigInt::one(); unit.vertices().len()];
    let poly = Polytope::from_vertices(unit.vertices(), &ones)?;
    Ok(poly.offsets().iter().map(|h| h.denom().clone()).collect())
}

/// Exact Euclidean area; zero for empty or degenerate polygons.
pub fn volume<S: Scalar>(poly: &Polytope<S>) -> S {
    poly.area()
}

/// Exact centroid; the Futaki invariant of the surface when `poly = Σ_{-k}`.
pub fn barycenter<S: Scalar>(poly: &Polytope<S>) -> Result<Point<S>> {
    poly.barycenter()
}

/// Lattice points `Σ_h ∩ M`.
pub fn lattice_points(poly: &Polytope<Rational>) -> Vec<IVec2> {
    let vs = poly.vertices();
    if vs.is_empty() {
        return Vec::new();
    }
    let lo_x = vs.iter().map(|v| v[0].ceil().to_integer()).min().expect("nonempty");
    let hi_x = vs.iter().map(|v| v[0].floor().to_integer()).max().expect("nonempty");
    let lo_y = vs.iter().map(|v| v[1].ceil().to_integer()).min().expect("nonempty");
    let hi_y = vs.iter().map(|v| v[1].floor().to_integer()).max().expect("nonempty");
    let mut out = Vec::new();
    let mut x = lo_x;
    while x <= hi_x {
        let mut y = lo_y.clone();
        while y <= hi_y {
            let p = [Rational::from_integer(x.clone()), Rational::from_integer(y.clone())];
            if poly.contains(&p) {
                out.push(IVec2::new(x.clone(), y.clone()));
            }
            y += 1;
        }
        x += 1;
    }
    out
}

/// A solution of `m·h(n(ρ)) = -1 + ⟨f, n(ρ)⟩` for the largest possible `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexWitness {
    pub index: BigInt,
    pub f: IVec2,
    pub h: SupportFunction,
}

/// A positive multiple `D` such that every admissible `m` divides `D`.
///
/// For each ray `r`, `-r` lies in a cone spanned by consecutive rays `b, c`,
/// giving an integer relation `D_r·r + A·b + B·c = 0` with `D_r > 0`,
/// `A, B ≥ 0`. Pairing the defining equation with it gives
/// `m·(D_r h_r + A h_b + B h_c) = -(D_r + A + B)`.
pub fn index_bound(fan: &AugmentedFan) -> BigInt {
    let cones = fan.cones();
    let mut bound = BigInt::zero();
    for r in fan.rays() {
        let target = -r;
        for &(b, c) in &cones {
            let (vb, vc) = (fan.ray(b), fan.ray(c));
            let det = vb.cross(vc);
            // target = (A·vb + B·vc)/det
            let a = target.cross(vc);
            let bb = vb.cross(&target);
            if a.is_negative() || bb.is_negative() {
                continue;
            }
            let g = det.gcd(&a).gcd(&bb);
            let total = (&det + &a + &bb) / g;
            bound = bound.gcd(&total);
            break;
        }
    }
    bound
}

fn residue_solution(fan: &AugmentedFan, m: &BigInt) -> Option<IVec2> {
    let mm = m.to_i64()?;
    for fx in 0..mm {
        for fy in 0..mm {
            let f = IVec2::new(fx, fy);
            if fan.rays().iter().all(|r| (f.dot(r) - 1i32).mod_floor(m).is_zero()) {
                return Some(f);
            }
        }
    }
    None
}

/// Index with the witnessing `(f, h)`.
pub fn index_witness(fan: &AugmentedFan) -> Result<IndexWitness> {
    if !is_fano(fan) {
        return Err(Error::NotFano);
    }
    let bound = index_bound(fan);
    let mut divisors: Vec<BigInt> = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= bound {
        if bound.is_multiple_of(&d) {
            divisors.push(d.clone());
            divisors.push(&bound / &d);
        }
        d += 1;
    }
    divisors.sort();
    divisors.dedup();
    for m in divisors.into_iter().rev() {
        if let Some(f) = residue_solution(fan, &m) {
            let h = fan.rays().iter().map(|r| (f.dot(r) - 1i32) / &m).collect();
            return Ok(IndexWitness { index: m, f, h: SupportFunction::new(h) });
        }
    }
    unreachable!("m = 1 always has a solution")
}

/// Largest `m` with an `m`-th root of the anticanonical V-bundle.
pub fn index(fan: &AugmentedFan) -> Result<BigInt> {
    Ok(index_witness(fan)?.index)
}

/// All `γ ∈ GL(2,Z)` mapping the marked points of `from` onto those of `to`.
pub fn lattice_isomorphisms(from: &AugmentedFan, to: &AugmentedFan) -> Vec<IMat2> {
    if from.len() != to.len() {
        return Vec::new();
    }
    let ccw = from.cyclic_order();
    let (p, q) = (from.ray(ccw[0]), from.ray(ccw[1]));
    let basis = IMat2::from_columns(p, q);
    let det = basis.det();
    let adj = IMat2 { a: basis.d.clone(), b: -&basis.b, c: -&basis.c, d: basis.a.clone() };
    let mut target: Vec<IVec2> = to.rays().to_vec();
    target.sort();
    let mut out = Vec::new();
    for pi in to.rays() {
        for qi in to.rays() {
            if pi == qi {
                continue;
            }
            // γ = [pi qi] · basis⁻¹ must be integral
            let num = IMat2::from_columns(pi, qi).mul(&adj);
            let entries = [&num.a, &num.b, &num.c, &num.d];
            if entries.iter().any(|e| !e.is_multiple_of(&det)) {
                continue;
            }
            let g = IMat2 { a: &num.a / &det, b: &num.b / &det, c: &num.c / &det, d: &num.d / &det };
            if !g.is_unimodular() {
                continue;
            }
            let mut image: Vec<IVec2> = from.rays().iter().map(|r| g.apply(r)).collect();
            image.sort();
            if image == target {
                out.push(g);
            }
        }
    }
    out.sort_by(|a, b| (&a.a, &a.b, &a.c, &a.d).cmp(&(&b.a, &b.b, &b.c, &b.d)));
    out.dedup();
    out
}

pub fn fans_isomorphic(a: &AugmentedFan, b: &AugmentedFan) -> bool {
    !lattice_isomorphisms(a, b).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    /// `W₀`, the lattice automorphisms permuting the marked points.
    pub group: Vec<IMat2>,
    pub is_symmetric: bool,
    pub is_special_symmetric: bool,
}

pub fn symmetry(fan: &AugmentedFan) -> Symmetry {
    let group = lattice_isomorphisms(fan, fan);
    // common fixed space is {0} iff the stacked γ - I have rank 2
    let mut rows: Vec<[BigInt; 2]> = Vec::new();
    for g in &group {
        rows.push([&g.a - 1, g.b.clone()]);
        rows.push([g.c.clone(), &g.d - 1]);
    }
    let mut rank = 0;
    'outer: for (i, r) in rows.iter().enumerate() {
        if r.iter().any(|v| !v.is_zero()) {
            rank = 1;
            for s in &rows[i + 1..] {
                if !(&r[0] * &s[1] - &r[1] * &s[0]).is_zero() {
                    rank = 2;
                    break 'outer;
                }
            }
        }
    }
    let is_special_symmetric = group.contains(&IMat2::minus_identity());
    Symmetry { group, is_symmetric: rank == 2, is_special_symmetric }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EinsteinVerdict {
    Einstein,
    SolitonOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FanoReport {
    pub is_fano: bool,
    pub index: BigInt,
    pub is_symmetric: bool,
    pub is_special_symmetric: bool,
    pub barycenter: [Rational; 2],
    pub volume: Rational,
    pub einstein: EinsteinVerdict,
}

/// Kähler-Einstein iff the barycenter of `Σ_{-k}` vanishes; otherwise only a
/// Kähler-Ricci soliton exists.
pub fn einstein_verdict(fan: &AugmentedFan) -> Result<FanoReport> {
    if !is_fano(fan) {
        return Err(Error::NotFano);
    }
    let poly = anticanonical_polytope(fan)?;
    let bc = barycenter(&poly)?;
    let sym = symmetry(fan);
    let einstein = if bc[0].is_zero() && bc[1].is_zero() {
        EinsteinVerdict::Einstein
    } else {
        EinsteinVerdict::SolitonOnly
    };
    Ok(FanoReport {
        is_fano: true,
        index: index(fan)?,
        is_symmetric: sym.is_symmetric,
        is_special_symmetric: sym.is_special_symmetric,
        barycenter: bc,
        volume: volume(&poly),
        einstein,
    })
}

/// Convenience: strict upper convexity of `h` as a precondition check.
pub fn require_strictly_convex(fan: &AugmentedFan, h: &SupportFunction) -> Result<()> {
    if is_strictly_upper_convex(fan, h)? {
        Ok(())
    } else {
        Err(Error::DegeneratePolytope("support function is not strictly upper convex".into()))
    }
}
