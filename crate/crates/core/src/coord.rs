//! Scalar coordinates: exact elements of a real quadratic ring `Z[τ]`, or floats.
//!
//! Exact coordinates make cluster matching decidable for cut-and-project and
//! substitution sources. Floats compare equal within [`TOL_EQ`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Global equality tolerance for float coordinates.
pub const TOL_EQ: f64 = 1e-9;

/// The ring `Z[τ]` where `τ² = p·τ + q` and `τ` is the larger real root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadField {
    pub p: i16,
    pub q: i16,
}

impl QuadField {
    /// Golden mean, `τ² = τ + 1`.
    pub const GOLDEN: QuadField = QuadField { p: 1, q: 1 };
    /// Silver mean, `τ² = 2τ + 1`.
    pub const SILVER: QuadField = QuadField { p: 2, q: 1 };

    pub fn new(p: i16, q: i16) -> Option<QuadField> {
        let f = QuadField { p, q };
        let d = f.discriminant();
        if d <= 0 {
            return None;
        }
        let r = (d as f64).sqrt().round() as i64;
        if r * r == d {
            return None;
        }
        Some(f)
    }

    pub fn discriminant(self) -> i64 {
        let (p, q) = (self.p as i64, self.q as i64);
        p * p + 4 * q
    }

    pub fn tau(self) -> f64 {
        (self.p as f64 + (self.discriminant() as f64).sqrt()) / 2.0
    }

    pub fn tau_conj(self) -> f64 {
        (self.p as f64 - (self.discriminant() as f64).sqrt()) / 2.0
    }

    pub fn name(self) -> Option<&'static str> {
        match self {
            QuadField::GOLDEN => Some("golden"),
            QuadField::SILVER => Some("silver"),
            _ => None,
        }
    }

    pub fn from_name(name: &str) -> Option<QuadField> {
        match name {
            "golden" => Some(QuadField::GOLDEN),
            "silver" => Some(QuadField::SILVER),
            _ => None,
        }
    }
}

/// `a + b·τ` in a fixed [`QuadField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    pub field: QuadField,
}

/// Sign of `x + y·√d` for integers `x, y` and non-square `d > 0`.
fn sign_surd(x: i128, y: i128, d: i128) -> Ordering {
    match (x.cmp(&0), y.cmp(&0)) {
        (Ordering::Equal, s) => s,
        (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (x * x).cmp(&(y * y * d)),
        (Ordering::Less, Ordering::Greater) => (y * y * d).cmp(&(x * x)),
    }
}

impl QuadInt {
    pub fn new(a: i64, b: i64, field: QuadField) -> QuadInt {
        QuadInt { a, b, field }
    }

    pub fn integer(a: i64, field: QuadField) -> QuadInt {
        QuadInt { a, b: 0, field }
    }

    pub fn tau(field: QuadField) -> QuadInt {
        QuadInt { a: 0, b: 1, field }
    }

    pub fn zero(field: QuadField) -> QuadInt {
        QuadInt { a: 0, b: 0, field }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * self.field.tau()
    }

    /// Galois conjugate `a + b·τ'`, the internal-space image.
    pub fn conj(self) -> f64 {
        self.a as f64 + self.b as f64 * self.field.tau_conj()
    }

    /// Exact sign of the real value.
    pub fn signum(self) -> Ordering {
        let p = self.field.p as i128;
        sign_surd(
            2 * self.a as i128 + self.b as i128 * p,
            self.b as i128,
            self.field.discriminant() as i128,
        )
    }

    /// Exact sign of the conjugate value.
    pub fn conj_signum(self) -> Ordering {
        let p = self.field.p as i128;
        sign_surd(
            2 * self.a as i128 + self.b as i128 * p,
            -(self.b as i128),
            self.field.discriminant() as i128,
        )
    }

    /// The Galois image `σ(x)`, so that `σ(x).conj() == x.to_f64()`.
    pub fn galois(self) -> QuadInt {
        QuadInt::new(self.a + self.b * self.field.p as i64, -self.b, self.field)
    }

    /// Exact comparison of conjugates.
    pub fn conj_cmp(self, other: QuadInt) -> Ordering {
        (self - other).conj_signum()
    }

    fn check_field(self, other: QuadInt) {
        assert_eq!(self.field, other.field, "mixed quadratic fields");
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        self.check_field(o);
        QuadInt::new(self.a + o.a, self.b + o.b, self.field)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        self.check_field(o);
        QuadInt::new(self.a - o.a, self.b - o.b, self.field)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b, self.field)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        self.check_field(o);
        let (p, q) = (self.field.p as i64, self.field.q as i64);
        let bd = self.b * o.b;
        QuadInt::new(
            self.a * o.a + bd * q,
            self.a * o.b + self.b * o.a + bd * p,
            self.field,
        )
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &QuadInt) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &QuadInt) -> Ordering {
        (*self - *other).signum()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}τ", self.a, self.b)
    }
}

/// One coordinate of a point.
#[derive(Clone, Copy, Debug)]
pub enum Coordinate {
    Exact(QuadInt),
    Float(f64),
}

/// Hashable, ordered key for a coordinate; floats are quantized to [`TOL_EQ`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordKey {
    Exact(i64, i64),
    Quant(i64),
}

impl Coordinate {
    pub fn to_f64(self) -> f64 {
        match self {
            Coordinate::Exact(q) => q.to_f64(),
            Coordinate::Float(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Coordinate::Exact(_))
    }

    pub fn zero_like(self) -> Coordinate {
        match self {
            Coordinate::Exact(q) => Coordinate::Exact(QuadInt::zero(q.field)),
            Coordinate::Float(_) => Coordinate::Float(0.0),
        }
    }

    /// Equality: exact when both are exact, else within [`TOL_EQ`].
    pub fn approx_eq(self, other: Coordinate) -> bool {
        match (self, other) {
            (Coordinate::Exact(x), Coordinate::Exact(y)) if x.field == y.field => x == y,
            _ => (self.to_f64() - other.to_f64()).abs() <= TOL_EQ,
        }
    }

    /// Total order used for sorting; exact pairs compare exactly.
    pub fn total_cmp(self, other: Coordinate) -> Ordering {
        match (self, other) {
            (Coordinate::Exact(x), Coordinate::Exact(y)) if x.field == y.field => x.cmp(&y),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn key(self) -> CoordKey {
        match self {
            Coordinate::Exact(q) => CoordKey::Exact(q.a, q.b),
            Coordinate::Float(v) => CoordKey::Quant((v / TOL_EQ).round() as i64),
        }
    }
}

impl Add for Coordinate {
    type Output = Coordinate;
    fn add(self, o: Coordinate) -> Coordinate {
        match (self, o) {
            (Coordinate::Exact(x), Coordinate::Exact(y)) if x.field == y.field => {
                Coordinate::Exact(x + y)
            }
            _ => Coordinate::Float(self.to_f64() + o.to_f64()),
        }
    }
}

impl Sub for Coordinate {
    type Output = Coordinate;
    fn sub(self, o: Coordinate) -> Coordinate {
        self + (-o)
    }
}

impl Neg for Coordinate {
    type Output = Coordinate;
    fn neg(self) -> Coordinate {
        match self {
            Coordinate::Exact(q) => Coordinate::Exact(-q),
            Coordinate::Float(v) => Coordinate::Float(-v),
        }
    }
}

impl From<f64> for Coordinate {
    fn from(v: f64) -> Coordinate {
        Coordinate::Float(v)
    }
}

impl From<QuadInt> for Coordinate {
    fn from(q: QuadInt) -> Coordinate {
        Coordinate::Exact(q)
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Exact(q) => write!(f, "{q}"),
            Coordinate::Float(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: QuadField = QuadField::GOLDEN;

    #[test]
    fn golden_identity() {
        let t = QuadInt::tau(G);
        assert_eq!(t * t, t + QuadInt::integer(1, G));
        assert!((t.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        assert!((t.conj() + 0.618_033_988_749_895).abs() < 1e-15);
        let x = QuadInt::new(3, -2, G);
        assert!((x.galois().conj() - x.to_f64()).abs() < 1e-12);
        assert_eq!(x.galois().galois(), x);
    }

    #[test]
    fn exact_sign_near_zero() {
        // 987τ - 1597 ≈ -4.5e-4 (Fibonacci convergent), 1597τ - 2584 ≈ 2.8e-4
        assert_eq!(QuadInt::new(-1597, 987, G).signum(), Ordering::Less);
        assert_eq!(QuadInt::new(-2584, 1597, G).signum(), Ordering::Greater);
        assert_eq!(QuadInt::zero(G).signum(), Ordering::Equal);
        // conjugate of τ is negative
        assert_eq!(QuadInt::tau(G).conj_signum(), Ordering::Less);
    }

    #[test]
    fn rejects_square_discriminant() {
        assert!(QuadField::new(0, 1).is_none()); // τ² = 1
        assert!(QuadField::new(1, 1).is_some());
        assert!(QuadField::new(1, -1).is_none()); // complex roots
    }

    #[test]
    fn float_tolerance() {
        let a = Coordinate::Float(1.0);
        assert!(a.approx_eq(Coordinate::Float(1.0 + 5e-10)));
        assert!(!a.approx_eq(Coordinate::Float(1.0 + 5e-9)));
        let e = Coordinate::Exact(QuadInt::integer(1, G));
        assert!(e.approx_eq(a));
    }

    proptest::proptest! {
        #[test]
        fn exact_order_matches_float(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                     c in -10_000i64..10_000, d in -10_000i64..10_000) {
            let x = QuadInt::new(a, b, G);
            let y = QuadInt::new(c, d, G);
            let fx = x.to_f64();
            let fy = y.to_f64();
            if (fx - fy).abs() > 1e-6 {
                proptest::prop_assert_eq!(x.cmp(&y), fx.total_cmp(&fy));
            }
            if (x.conj() - y.conj()).abs() > 1e-6 {
                proptest::prop_assert_eq!(x.conj_cmp(y), x.conj().total_cmp(&y.conj()));
            }
        }
    }
}
