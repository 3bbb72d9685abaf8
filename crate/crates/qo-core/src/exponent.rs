//! Exponent vectors in Q_{>=0}^d with the componentwise partial order,
//! and heights (exponents extended by an infinite element).

use crate::rat::Rat;

use std::fmt;

/// Exponent vector; the BTreeMap key order is lexicographic and is *not*
/// the mathematical order (use `le`/`lt`/`comparable` for that).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(pub Vec<Rat>);

impl ExpVec {
    pub fn zero(d: usize) -> ExpVec {
        ExpVec(vec![Rat::ZERO; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> Rat {
        let mut s = Rat::ZERO;
        for x in &self.0 {
            s += x;
        }
        s
    }

    /// Componentwise q <= q' (q' - q nonnegative in every coordinate).
    pub fn le_comp(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt_comp(&self, other: &ExpVec) -> bool {
        self.le_comp(other) && self != other
    }

    pub fn comparable(&self, other: &ExpVec) -> bool {
        self.le_comp(other) || other.le_comp(self)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, r: &Rat) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * r).collect())
    }

    pub fn dot(&self, r: &[Rat]) -> Rat {
        let mut s = Rat::ZERO;
        for (a, b) in self.0.iter().zip(r) {
            s += &(a * b);
        }
        s
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Least common multiple of coordinate denominators.
    pub fn denominator_lcm(&self) -> i64 {
        let mut l: i64 = 1;
        for x in &self.0 {
            let d = x.denom_i64().expect("exponent denominator fits i64");
            l = l / gcd(l, d) * d;
        }
        l
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bar height: a finite exponent vector or the infinite height of leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(ExpVec),
    Infinite,
}

impl Height {
    pub fn finite(&self) -> Option<&ExpVec> {
        match self {
            Height::Finite(e) => Some(e),
            Height::Infinite => None,
        }
    }

    /// Partial order with +infinity above every finite vector.
    pub fn le_h(&self, other: &Height) -> bool {
        match (self, other) {
            (_, Height::Infinite) => true,
            (Height::Infinite, Height::Finite(_)) => false,
            (Height::Finite(a), Height::Finite(b)) => a.le_comp(b),
        }
    }

    pub fn lt_h(&self, other: &Height) -> bool {
        self.le_h(other) && self != other
    }

    pub fn comparable(&self, other: &Height) -> bool {
        self.le_h(other) || other.le_h(self)
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(e) => write!(f, "{}", e),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[(i64, i64)]) -> ExpVec {
        ExpVec(v.iter().map(|&(n, d)| Rat::new(n, d)).collect())
    }

    #[test]
    fn partial_order() {
        let a = ev(&[(3, 2), (1, 1)]);
        let b = ev(&[(5, 1), (2, 1)]);
        let c = ev(&[(1, 1), (0, 1)]);
        let d = ev(&[(0, 1), (1, 1)]);
        assert!(a.le_comp(&b));
        assert!(!b.le_comp(&a));
        assert!(!c.comparable(&d));
        assert!(Height::Finite(b).le_h(&Height::Infinite));
    }
}
