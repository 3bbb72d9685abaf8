//! Exact rational arithmetic.
//!
//! `Rat` keeps values in an `i64/i64` fast path and promotes to `BigInt`
//! only on overflow, so the hot truncated-series loops stay allocation-free
//! while worst-case determinant growth remains exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A rational number in lowest terms with positive denominator.
#[derive(Clone)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<(BigInt, BigInt)>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if let (Some(ns), Some(ds)) = (n.to_i64(), d.to_i64()) {
            Rat::Small(ns, ds)
        } else {
            Rat::Big(Box::new((BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        let (n, d) = if g > BigInt::from(1) { (&num / &g, &den / &g) } else { (num, den) };
        if let (Some(ns), Some(ds)) = (n.to_i64(), d.to_i64()) {
            Rat::Small(ns, ds)
        } else {
            Rat::Big(Box::new((n, d)))
        }
    }

    pub fn integer(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match self {
            Rat::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _)) || matches!(self, Rat::Big(b) if b.0.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.0.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.1 == BigInt::from(1),
        }
    }

    /// Denominator as i64 when it fits (always does for parsed inputs).
    pub fn denom_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(_, d) => Some(*d),
            Rat::Big(b) => b.1.to_i64(),
        }
    }

    pub fn numer_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(n, _) => Some(*n),
            Rat::Big(b) => b.0.to_i64(),
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer_i64()
        } else {
            None
        }
    }

    pub fn floor_int(&self) -> BigInt {
        let (n, d) = self.big_parts();
        n.div_floor(&d)
    }

    pub fn ceil_int(&self) -> BigInt {
        let (n, d) = self.big_parts();
        n.div_ceil(&d)
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Rat::Small(n, d) => Rat::new(*d, *n),
            Rat::Big(b) => Rat::from_big(b.1.clone(), b.0.clone()),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_int(&self, k: i64) -> Rat {
        self * &Rat::integer(k)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                Rat::from_i128(n, den)
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = rhs.big_parts();
                Rat::from_big(&a * &d + &c * &b, &b * &d)
            }
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self + &(-rhs.clone())
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = rhs.big_parts();
                Rat::from_big(&a * &c, &b * &d)
            }
        }
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self * &rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, d),
            Rat::Big(b) => Rat::Big(Box::new((-b.0, b.1))),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            // canonical form: Big is only used when outside i64 range
            (Rat::Small(..), Rat::Big(..)) | (Rat::Big(..), Rat::Small(..)) => false,
            (Rat::Big(x), Rat::Big(y)) => x == y,
        }
    }
}
impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = other.big_parts();
                (&a * &d).cmp(&(&c * &b))
            }
        }
    }
}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let (n, d) = self.big_parts();
        n.hash(state);
        d.hash(state);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.big_parts();
        if d == BigInt::from(1) {
            write!(f, "{}", n)
        } else {
            write!(f, "{}/{}", n, d)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl FromStr for Rat {
    type Err = String;
    fn from_str(s: &str) -> Result<Rat, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| format!("bad rational: {s:?}"))?;
        let d: BigInt = den.parse().map_err(|_| format!("bad rational: {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat::from_big(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert_eq!((&Rat::new(1, 2) + &Rat::new(1, 3)), Rat::new(5, 6));
        assert_eq!((&Rat::new(1, 2) * &Rat::new(2, 3)), Rat::new(1, 3));
    }

    #[test]
    fn overflow_promotes() {
        let big = Rat::integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rat::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::ZERO);
        assert_eq!("-3/4".parse::<Rat>().unwrap(), Rat::new(-3, 4));
        assert_eq!(Rat::new(7, 2).to_string(), "7/2");
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(Rat::new(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(Rat::new(7, 2).ceil_int(), BigInt::from(4));
        assert_eq!(Rat::new(-7, 2).floor_int(), BigInt::from(-4));
    }
}
