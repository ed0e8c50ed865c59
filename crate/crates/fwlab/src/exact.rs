//! Exact rational backend.
//!
//! The counterexample recursions are rational, and several identities
//! (alignments, angle equalities, fixed points) are asserted exactly.
//! Everything here is `BigRational`; conversion to the floating backend is
//! explicit and one-way via [`RVec2::to_f64`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::geom2d::Vec2;

pub type Rat = BigRational;

/// Rational from an integer pair.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

/// Exact power of two, any sign of exponent.
pub fn pow2(e: i32) -> Rat {
    let one = BigInt::from(1);
    if e >= 0 {
        BigRational::from_integer(one << e as usize)
    } else {
        BigRational::new(one.clone(), one << (-e) as usize)
    }
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Option<Rat> {
    BigRational::from_str(s.trim()).ok()
}

/// Render as "p/q" (or "p" when integral).
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // ToPrimitive on BigRational handles huge numerators/denominators.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact 2-D point/vector with rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct RVec2 {
    pub x: Rat,
    pub y: Rat,
}

impl fmt::Debug for RVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

impl RVec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        RVec2 { x, y }
    }

    pub fn of(px: i64, qx: i64, py: i64, qy: i64) -> Self {
        RVec2::new(rat(px, qx), rat(py, qy))
    }

    pub fn zero() -> Self {
        RVec2::new(Rat::zero(), Rat::zero())
    }

    pub fn to_f64(&self) -> Vec2 {
        Vec2::new(rat_to_f64(&self.x), rat_to_f64(&self.y))
    }

    pub fn add(&self, o: &RVec2) -> RVec2 {
        RVec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &RVec2) -> RVec2 {
        RVec2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, s: &Rat) -> RVec2 {
        RVec2::new(&self.x * s, &self.y * s)
    }

    pub fn neg(&self) -> RVec2 {
        RVec2::new(-self.x.clone(), -self.y.clone())
    }

    /// Convex combination (1-t)*self + t*other.
    pub fn lerp(&self, o: &RVec2, t: &Rat) -> RVec2 {
        let one = rint(1);
        self.scale(&(&one - t)).add(&o.scale(t))
    }
}

pub fn rdot(a: &RVec2, b: &RVec2) -> Rat {
    &a.x * &b.x + &a.y * &b.y
}

pub fn rcross(a: &RVec2, b: &RVec2) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

/// Exact collinearity of three points.
pub fn raligned(p: &RVec2, q: &RVec2, r: &RVec2) -> bool {
    rcross(&q.sub(p), &r.sub(p)).is_zero()
}

/// Exact equality of the angles at `b1` (rays to a1, c1) and `b2` (rays to a2, c2).
///
/// Both angles lie in (0, pi); the cotangent dot/|cross| is injective there,
/// so equality reduces to a rational cross-multiplication. Degenerate rays
/// (zero length or collinear) are compared via the cross sign alone.
pub fn rangle_eq(a1: &RVec2, b1: &RVec2, c1: &RVec2, a2: &RVec2, b2: &RVec2, c2: &RVec2) -> bool {
    let u1 = a1.sub(b1);
    let v1 = c1.sub(b1);
    let u2 = a2.sub(b2);
    let v2 = c2.sub(b2);
    let cr1 = rcross(&u1, &v1).abs();
    let cr2 = rcross(&u2, &v2).abs();
    let d1 = rdot(&u1, &v1);
    let d2 = rdot(&u2, &v2);
    if cr1.is_zero() || cr2.is_zero() {
        return cr1.is_zero() && cr2.is_zero() && d1.is_positive() == d2.is_positive();
    }
    // cot(theta) = dot/|cross|, strictly decreasing on (0, pi).
    d1 * cr2 == d2 * cr1
}
