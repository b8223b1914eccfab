//! Exact rational points and segment intersection.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Serializes rationals as `"p/q"` (or `"p"` for integers).
pub(crate) mod qstr {
    use super::Q;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Q>()
            .map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    #[serde(with = "qstr")]
    pub x: Q,
    #[serde(with = "qstr")]
    pub y: Q,
}

impl Point2 {
    pub fn new(x: Q, y: Q) -> Point2 {
        Point2 { x, y }
    }

    pub fn lift(&self) -> Point3 {
        Point3::new(self.x.clone(), self.y.clone(), Q::zero())
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    #[serde(with = "qstr")]
    pub x: Q,
    #[serde(with = "qstr")]
    pub y: Q,
    #[serde(with = "qstr")]
    pub z: Q,
}

impl Point3 {
    pub fn new(x: Q, y: Q, z: Q) -> Point3 {
        Point3 { x, y, z }
    }

    fn sub(&self, o: &Point3) -> [Q; 3] {
        [&self.x - &o.x, &self.y - &o.y, &self.z - &o.z]
    }

    fn offset(&self, d: &[Q; 3], t: &Q) -> Point3 {
        Point3::new(
            &self.x + &d[0] * t,
            &self.y + &d[1] * t,
            &self.z + &d[2] * t,
        )
    }
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero(a: &[Q; 3]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn in_unit(t: &Q) -> bool {
    !t.is_negative() && t <= &Q::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point3),
    /// The segments share a sub-segment of positive length.
    Overlap,
}

fn point_on_segment(p: &Point3, a: &Point3, b: &Point3) -> bool {
    let d = b.sub(a);
    let r = p.sub(a);
    if is_zero(&d) {
        return is_zero(&r);
    }
    if !is_zero(&cross(&r, &d)) {
        return false;
    }
    in_unit(&(dot(&r, &d) / dot(&d, &d)))
}

/// Exact intersection of the closed segments `[a0, a1]` and `[b0, b1]`.
pub fn segment_intersection(a0: &Point3, a1: &Point3, b0: &Point3, b1: &Point3) -> Intersection {
    let d1 = a1.sub(a0);
    let d2 = b1.sub(b0);
    if is_zero(&d1) {
        return if point_on_segment(a0, b0, b1) {
            Intersection::Point(a0.clone())
        } else {
            Intersection::Empty
        };
    }
    if is_zero(&d2) {
        return if point_on_segment(b0, a0, a1) {
            Intersection::Point(b0.clone())
        } else {
            Intersection::Empty
        };
    }
    let r = b0.sub(a0);
    let n = cross(&d1, &d2);
    if !is_zero(&n) {
        if !dot(&r, &n).is_zero() {
            return Intersection::Empty; // skew
        }
        let nn = dot(&n, &n);
        let t = dot(&cross(&r, &d2), &n) / &nn;
        let s = dot(&cross(&r, &d1), &n) / &nn;
        return if in_unit(&t) && in_unit(&s) {
            Intersection::Point(a0.offset(&d1, &t))
        } else {
            Intersection::Empty
        };
    }
    if !is_zero(&cross(&r, &d1)) {
        return Intersection::Empty; // parallel, distinct lines
    }
    // Collinear: compare parameter intervals along a's direction.
    let dd = dot(&d1, &d1);
    let t0 = dot(&r, &d1) / &dd;
    let t1 = dot(&b1.sub(a0), &d1) / &dd;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let start = if lo > Q::zero() { lo } else { Q::zero() };
    let end = if hi < Q::one() { hi } else { Q::one() };
    if start > end {
        Intersection::Empty
    } else if start == end {
        Intersection::Point(a0.offset(&d1, &start))
    } else {
        Intersection::Overlap
    }
}

/// Decimal rendering rounded half away from zero to `places` digits, with
/// trailing zeros trimmed.
pub fn to_decimal(v: &Q, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (v * Q::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = &abs % &scale;
    let mut out = String::new();
    if neg && !abs.is_zero() {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if !frac.is_zero() {
        let digits = format!("{:0>width$}", frac.to_string(), width = places as usize);
        out.push('.');
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}
