use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Lattice vector in `Z^2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IVec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl IVec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        IVec2 { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        IVec2::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `det(self, other)`, positive when `other` is counterclockwise.
    pub fn cross(&self, other: &IVec2) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &IVec2) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, c: &BigInt) -> IVec2 {
        IVec2 { x: &self.x * c, y: &self.y * c }
    }

    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    pub fn primitive(&self) -> IVec2 {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        IVec2 { x: &self.x / &g, y: &self.y / &g }
    }

    pub fn l1(&self) -> BigInt {
        self.x.abs() + self.y.abs()
    }

    /// Half-plane class for angular sorting: 0 for angles in `[0, π)`, 1 otherwise.
    pub fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Total order by angle in `[0, 2π)`; parallel same-direction vectors compare equal.
    pub fn angle_cmp(&self, other: &IVec2) -> std::cmp::Ordering {
        self.half()
            .cmp(&other.half())
            .then_with(|| BigInt::zero().cmp(&self.cross(other)))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        use num_traits::ToPrimitive;
        [self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN)]
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        vec![self.x.clone(), self.y.clone()]
    }
}

impl From<(i64, i64)> for IVec2 {
    fn from((x, y): (i64, i64)) -> Self {
        IVec2::new(x, y)
    }
}

impl Add for &IVec2 {
    type Output = IVec2;

    fn add(self, o: &IVec2) -> IVec2 {
        IVec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &IVec2 {
    type Output = IVec2;

    fn sub(self, o: &IVec2) -> IVec2 {
        IVec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Neg for &IVec2 {
    type Output = IVec2;

    fn neg(self) -> IVec2 {
        IVec2 { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Debug for IVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for IVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// 2x2 integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IMat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IMat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        IMat2::new(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Self {
        IMat2::new(-1, 0, 0, -1)
    }

    /// Matrix with the given columns.
    pub fn from_columns(u: &IVec2, v: &IVec2) -> Self {
        IMat2 { a: u.x.clone(), b: v.x.clone(), c: u.y.clone(), d: v.y.clone() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, v: &IVec2) -> IVec2 {
        IVec2 { x: &self.a * &v.x + &self.b * &v.y, y: &self.c * &v.x + &self.d * &v.y }
    }

    pub fn mul(&self, o: &IMat2) -> IMat2 {
        IMat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn transpose(&self) -> IMat2 {
        IMat2 { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    /// Inverse when the matrix is unimodular.
    pub fn inverse_unimodular(&self) -> Option<IMat2> {
        let det = self.det();
        if det.abs() != BigInt::from(1) {
            return None;
        }
        Some(IMat2 {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == BigInt::from(1)
    }
}
