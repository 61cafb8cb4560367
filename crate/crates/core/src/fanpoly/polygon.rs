use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::IVec2;
use crate::scalar::{Rational, Scalar};

pub type Point<S> = [S; 2];

fn sub<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Point<S> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

fn cross<S: Scalar>(a: &Point<S>, b: &Point<S>) -> S {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

fn orient<S: Scalar>(o: &Point<S>, a: &Point<S>, b: &Point<S>) -> S {
    cross(&sub(a, o), &sub(b, o))
}

fn same_point<S: Scalar>(a: &Point<S>, b: &Point<S>) -> bool {
    (a[0].clone() - b[0].clone()).is_negligible() && (a[1].clone() - b[1].clone()).is_negligible()
}

pub fn pair_dot<S: Scalar>(m: &Point<S>, n: &IVec2) -> S {
    m[0].clone() * S::from_bigint(&n.x) + m[1].clone() * S::from_bigint(&n.y)
}

/// Convex polygon given by its vertices in counterclockwise order.
/// Fewer than three vertices encode the empty set, a point or a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<S> {
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> Polygon<S> {
    /// Convex hull of arbitrary points (monotone chain, collinear points dropped).
    pub fn hull(points: &[Point<S>]) -> Self {
        let mut pts: Vec<Point<S>> = points.to_vec();
        pts.sort_by(|a, b| {
            a[0].partial_cmp(&b[0])
                .unwrap_or(Ordering::Equal)
                .then(a[1].partial_cmp(&b[1]).unwrap_or(Ordering::Equal))
        });
        pts.dedup_by(|a, b| same_point(a, b));
        if pts.len() < 3 {
            return Polygon { vertices: pts };
        }
        let mut lower: Vec<Point<S>> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= S::slack()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point<S>> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= S::slack()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && same_point(&lower[0], &lower[1]) {
            lower.pop();
        }
        Polygon { vertices: lower }
    }

    pub fn from_ccw_unchecked(vertices: Vec<Point<S>>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3 && !self.area().is_negligible()
    }

    fn twice_signed_area(&self) -> S {
        let n = self.vertices.len();
        let mut acc = S::zero();
        for i in 0..n {
            acc = acc + cross(&self.vertices[i], &self.vertices[(i + 1) % n]);
        }
        acc
    }

    /// Euclidean area by the shoelace formula; zero for degenerate polygons.
    pub fn area(&self) -> S {
        if self.vertices.len() < 3 {
            return S::zero();
        }
        self.twice_signed_area() / S::of(2)
    }

    /// Centroid from the first moments of the shoelace decomposition.
    pub fn barycenter(&self) -> Result<Point<S>> {
        let twice = self.twice_signed_area();
        if self.vertices.len() < 3 || twice.is_negligible() {
            return Err(Error::DegeneratePolytope("barycenter of a polygon with no area".into()));
        }
        let n = self.vertices.len();
        let (mut mx, mut my) = (S::zero(), S::zero());
        for i in 0..n {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            let c = cross(p, q);
            mx = mx + (p[0].clone() + q[0].clone()) * c.clone();
            my = my + (p[1].clone() + q[1].clone()) * c;
        }
        let six_area = twice * S::of(3);
        Ok([mx / six_area.clone(), my / six_area])
    }

    /// Whether `p` is in the closed polygon.
    pub fn contains(&self, p: &Point<S>) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => same_point(&self.vertices[0], p),
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                if !orient(a, b, p).is_negligible() {
                    return false;
                }
                let t = sub(p, a);
                let d = sub(b, a);
                let dot = t[0].clone() * d[0].clone() + t[1].clone() * d[1].clone();
                let len = d[0].clone() * d[0].clone() + d[1].clone() * d[1].clone();
                dot >= -S::slack() && dot <= len + S::slack()
            }
            n => (0..n).all(|i| {
                orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) >= -S::slack()
            }),
        }
    }

    pub fn translate(&self, f: &Point<S>) -> Self {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0].clone() + f[0].clone(), v[1].clone() + f[1].clone()])
                .collect(),
        }
    }
}

/// Intersection of half-planes `⟨m, n_i⟩ ≥ h_i` with integer normals.
///
/// Facet normals are the marked lattice points `n(ρ)`, so the label of a
/// facet (the marking multiplicity) is the content of its normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<S> {
    normals: Vec<IVec2>,
    offsets: Vec<S>,
    polygon: Polygon<S>,
}

impl<S: Scalar> Polytope<S> {
    /// Vertices by pairwise facet intersection and constraint filtering.
    pub fn from_halfplanes(normals: Vec<IVec2>, offsets: Vec<S>) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(Error::SupportLength { expected: normals.len(), got: offsets.len() });
        }
        let mut candidates = Vec::new();
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if let Some(p) = intersect(&normals[i], &offsets[i], &normals[j], &offsets[j]) {
                    let feasible = normals
                        .iter()
                        .zip(&offsets)
                        .all(|(n, h)| pair_dot(&p, n) - h.clone() >= -S::slack());
                    if feasible {
                        candidates.push(p);
                    }
                }
            }
        }
        let polygon = Polygon::hull(&candidates);
        Ok(Polytope { normals, offsets, polygon })
    }

    pub fn normals(&self) -> &[IVec2] {
        &self.normals
    }

    pub fn offsets(&self) -> &[S] {
        &self.offsets
    }

    /// Facet labels `a_ρ` (contents of the marked normals).
    pub fn labels(&self) -> Vec<BigInt> {
        self.normals.iter().map(IVec2::content).collect()
    }

    pub fn polygon(&self) -> &Polygon<S> {
        &self.polygon
    }

    pub fn vertices(&self) -> &[Point<S>] {
        self.polygon.vertices()
    }

    pub fn is_empty(&self) -> bool {
        self.polygon.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.polygon.is_full_dimensional()
    }

    /// Facets on which a vertex lies.
    pub fn incident_facets(&self, vertex: &Point<S>) -> Vec<usize> {
        (0..self.normals.len())
            .filter(|&i| (pair_dot(vertex, &self.normals[i]) - self.offsets[i].clone()).is_negligible())
            .collect()
    }

    /// Facets that carry an edge of the polygon, in input order.
    pub fn edge_facets(&self) -> Vec<usize> {
        let vs = self.vertices();
        if vs.len() < 3 {
            return Vec::new();
        }
        (0..self.normals.len())
            .filter(|&i| {
                vs.iter()
                    .filter(|v| (pair_dot(v, &self.normals[i]) - self.offsets[i].clone()).is_negligible())
                    .count()
                    >= 2
            })
            .collect()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, h)| pair_dot(p, n) - h.clone() >= -S::slack())
    }

    pub fn area(&self) -> S {
        self.polygon.area()
    }

    pub fn barycenter(&self) -> Result<Point<S>> {
        self.polygon.barycenter()
    }

    /// Translate by a lattice vector; offsets move by `⟨f, n⟩`.
    pub fn translate(&self, f: &IVec2) -> Self {
        let shift = [S::from_bigint(&f.x), S::from_bigint(&f.y)];
        Polytope {
            normals: self.normals.clone(),
            offsets: self
                .normals
                .iter()
                .zip(&self.offsets)
                .map(|(n, h)| h.clone() + S::from_bigint(&n.dot(f)))
                .collect(),
            polygon: self.polygon.translate(&shift),
        }
    }
}

fn intersect<S: Scalar>(n1: &IVec2, h1: &S, n2: &IVec2, h2: &S) -> Option<Point<S>> {
    let det = n1.cross(n2);
    if det == BigInt::from(0) {
        return None;
    }
    let det = S::from_bigint(&det);
    let (a1, b1) = (S::from_bigint(&n1.x), S::from_bigint(&n1.y));
    let (a2, b2) = (S::from_bigint(&n2.x), S::from_bigint(&n2.y));
    let x = (h1.clone() * b2 - h2.clone() * b1) / det.clone();
    let y = (a1 * h2.clone() - a2 * h1.clone()) / det;
    Some([x, y])
}

impl Polytope<Rational> {
    /// Polygon with the given vertices (any order) and one positive integer
    /// label per counterclockwise edge, starting at the edge leaving the
    /// lowest-leftmost vertex.
    pub fn from_vertices(points: &[Point<Rational>], labels: &[BigInt]) -> Result<Self> {
        let polygon = Polygon::hull(points);
        if !polygon.is_full_dimensional() {
            return Err(Error::DegeneratePolytope("vertices span no area".into()));
        }
        let vs = polygon.vertices();
        if labels.len() != vs.len() {
            return Err(Error::SupportLength { expected: vs.len(), got: labels.len() });
        }
        let mut normals = Vec::with_capacity(vs.len());
        let mut offsets = Vec::with_capacity(vs.len());
        for i in 0..vs.len() {
            let label = &labels[i];
            if *label <= BigInt::from(0) {
                return Err(Error::DegeneratePolytope(format!("label {label} on edge {i}")));
            }
            let d = sub(&vs[(i + 1) % vs.len()], &vs[i]);
            let u = primitive_inward_normal(&d)?;
            let n = u.scale(label);
            offsets.push(pair_dot(&vs[i], &n));
            normals.push(n);
        }
        Ok(Polytope { normals, offsets, polygon })
    }
}

fn primitive_inward_normal(d: &Point<Rational>) -> Result<IVec2> {
    // inward normal of a ccw edge is the edge direction turned by +90 degrees
    let (x, y) = (-d[1].clone(), d[0].clone());
    let l = x.denom().lcm(y.denom());
    let px = x.numer() * (&l / x.denom());
    let py = y.numer() * (&l / y.denom());
    let n = IVec2::new(px, py);
    if n.is_zero() {
        return Err(Error::DegeneratePolytope("repeated vertex".into()));
    }
    Ok(n.primitive())
}
