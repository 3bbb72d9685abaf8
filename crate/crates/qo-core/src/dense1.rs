//! Dense truncated Laurent series in one variable with integer exponents,
//! used by the brute-force resultant oracle. Every value tracks the exponent
//! bound below which it is exact, so precision loss through division chains
//! is accounted for instead of guessed.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::series::FractionalSeries;

/// Sentinel bound for exactly known values.
pub const EXACT: i64 = i64::MAX / 4;

/// Coefficients for exponents lo, lo+1, ..., lo+len-1; zero below lo and on
/// [lo+len, upto); unknown at upto and beyond. Normalized so that c[0] != 0
/// (or c is empty, meaning "zero on the whole known window").
#[derive(Clone, PartialEq, Eq)]
pub struct LSeries {
    lo: i64,
    upto: i64,
    c: Vec<Cyclo>,
}

impl LSeries {
    pub fn new(lo: i64, coeffs: Vec<Cyclo>, upto: i64) -> LSeries {
        assert!(lo + coeffs.len() as i64 <= upto);
        let mut s = LSeries { lo, upto, c: coeffs };
        s.normalize();
        s
    }

    pub fn zero(upto: i64) -> LSeries {
        LSeries { lo: upto, upto, c: vec![] }
    }

    pub fn constant(v: Cyclo, upto: i64) -> LSeries {
        LSeries::new(0, vec![v], upto)
    }

    pub fn exact_constant(v: Cyclo) -> LSeries {
        if v.is_zero() {
            LSeries { lo: EXACT, upto: EXACT, c: vec![] }
        } else {
            LSeries { lo: 0, upto: EXACT, c: vec![v] }
        }
    }

    fn normalize(&mut self) {
        let lead = self.c.iter().position(|x| !x.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.c.drain(..k);
                self.lo += k as i64;
            }
            None => {
                self.c.clear();
                self.lo = self.upto;
            }
        }
    }

    pub fn is_zero_in_window(&self) -> bool {
        self.c.is_empty()
    }

    /// Order of the series, None when zero on the known window.
    pub fn ord(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn known_upto(&self) -> i64 {
        self.upto
    }

    pub fn coeff(&self, e: i64) -> Cyclo {
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            Cyclo::zero()
        } else {
            self.c[(e - self.lo) as usize].clone()
        }
    }

    pub fn neg(&self) -> LSeries {
        LSeries { lo: self.lo, upto: self.upto, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &Cyclo) -> LSeries {
        if k.is_zero() {
            return LSeries::zero(self.upto);
        }
        let mut s = LSeries {
            lo: self.lo,
            upto: self.upto,
            c: self.c.iter().map(|x| x * k).collect(),
        };
        s.normalize();
        s
    }

    pub fn add(&self, other: &LSeries) -> LSeries {
        let upto = self.upto.min(other.upto);
        if self.c.is_empty() && other.c.is_empty() {
            return LSeries::zero(upto);
        }
        let lo = self.ord().unwrap_or(upto).min(other.ord().unwrap_or(upto));
        let end = (self.lo + self.c.len() as i64)
            .max(other.lo + other.c.len() as i64)
            .min(upto);
        let mut c = vec![Cyclo::zero(); (end - lo).max(0) as usize];
        for (i, x) in c.iter_mut().enumerate() {
            let e = lo + i as i64;
            *x = &self.coeff(e) + &other.coeff(e);
        }
        LSeries::new(lo, c, upto)
    }

    pub fn sub(&self, other: &LSeries) -> LSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LSeries) -> LSeries {
        // the unknown tail of one factor shifts by the order of the other
        let a_lo_eff = self.ord().unwrap_or(self.upto);
        let b_lo_eff = other.ord().unwrap_or(other.upto);
        let upto = (self.upto.saturating_add(b_lo_eff))
            .min(other.upto.saturating_add(a_lo_eff))
            .min(EXACT);
        if self.c.is_empty() || other.c.is_empty() {
            return LSeries::zero(upto);
        }
        let lo = self.lo + other.lo;
        let len = ((upto - lo).max(0) as usize).min(self.c.len() + other.c.len() - 1);
        let mut c = vec![Cyclo::zero(); len];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !y.is_zero() {
                    let t = x * y;
                    c[i + j] = &c[i + j] + &t;
                }
            }
        }
        LSeries::new(lo, c, upto)
    }

    /// Multiplicative inverse on the available window.
    pub fn inv(&self) -> Result<LSeries> {
        if self.c.is_empty() {
            return Err(QoError::Indeterminate(
                "inverting a series that vanishes on its known window".into(),
            ));
        }
        if self.c.len() == 1 {
            // exact monomial: exact inverse
            return Ok(LSeries {
                lo: -self.lo,
                upto: if self.upto >= EXACT { EXACT } else { -self.lo + (self.upto - self.lo) },
                c: vec![self.c[0].inv()],
            });
        }
        if self.upto >= EXACT {
            return Err(QoError::Internal(
                "inverse of an exact multi-term polynomial needs a window".into(),
            ));
        }
        let len = (self.upto - self.lo) as usize;
        let u0 = self.c[0].inv();
        let mut inv = vec![Cyclo::zero(); len];
        inv[0] = u0.clone();
        for k in 1..len {
            let mut acc = Cyclo::zero();
            for j in 1..=k.min(self.c.len() - 1) {
                if !self.c[j].is_zero() {
                    acc = &acc + &(&self.c[j] * &inv[k - j]);
                }
            }
            inv[k] = -&(&acc * &u0);
        }
        Ok(LSeries::new(-self.lo, inv, -self.lo + len as i64))
    }

    pub fn div(&self, other: &LSeries) -> Result<LSeries> {
        Ok(self.mul(&other.inv()?))
    }
}

impl std::fmt::Debug for LSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c.is_empty() {
            return write!(f, "O(u^{})", self.upto);
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})u^{}", x, self.lo + i as i64)?;
        }
        write!(f, " + O(u^{})", self.upto)
    }
}

/// Convert an exact d=1 series with integer exponents.
pub fn to_lseries(s: &FractionalSeries, window: i64) -> Result<LSeries> {
    assert_eq!(s.dim(), 1);
    if s.precision().is_some() {
        return Err(QoError::Indeterminate("oracle arithmetic needs exact input".into()));
    }
    let mut c = vec![Cyclo::zero(); window as usize];
    let mut lo = window;
    for (e, coef) in s.terms() {
        let v = e.0[0]
            .as_integer()
            .ok_or_else(|| QoError::Domain("fractional exponent in oracle input".into()))?;
        if v < window {
            c[v as usize] = coef.clone();
            lo = lo.min(v);
        }
    }
    if lo == window {
        return Ok(LSeries::zero(window));
    }
    Ok(LSeries::new(0, c, window))
}

/// Polynomials in an outer variable with LSeries coefficients, low-to-high.
pub type LPoly = Vec<LSeries>;

pub fn lpoly_trim(p: &mut LPoly) {
    while p.last().map(|c| c.is_zero_in_window()).unwrap_or(false) {
        p.pop();
    }
}

fn lpoly_deg(p: &LPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Resultant of two LSeries-coefficient polynomials by the Euclidean
/// remainder sequence over the Laurent fraction field. Division by leading
/// coefficients is tracked through the windows, so the result carries an
/// honest known-upto bound.
pub fn lpoly_resultant(p: &LPoly, q: &LPoly) -> Result<LSeries> {
    let mut p = p.clone();
    let mut q = q.clone();
    lpoly_trim(&mut p);
    lpoly_trim(&mut q);
    let min_upto =
        p.iter().chain(q.iter()).map(|s| s.known_upto()).min().unwrap_or(0);
    let (dp, dq) = match (lpoly_deg(&p), lpoly_deg(&q)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(LSeries::zero(min_upto)),
    };
    if dq == 0 {
        return lpoly_pow(&q[0], dp);
    }
    if dp < dq {
        let sign = (dp * dq) % 2 == 1;
        let r = lpoly_resultant(&q, &p)?;
        return Ok(if sign { r.neg() } else { r });
    }
    // divide p by q over the fraction field
    let lc = q[dq].clone();
    let lc_inv = lc.inv()?;
    let mut rem = p.clone();
    for i in (dq..=dp).rev() {
        let factor = rem[i].mul(&lc_inv);
        if factor.is_zero_in_window() {
            continue;
        }
        for j in 0..=dq {
            let t = q[j].mul(&factor);
            rem[i - dq + j] = rem[i - dq + j].sub(&t);
        }
    }
    rem.truncate(dq);
    lpoly_trim(&mut rem);
    let dr = match lpoly_deg(&rem) {
        Some(d) => d,
        None => {
            // common factor within the window: resultant vanishes there
            return Ok(LSeries::zero(min_upto));
        }
    };
    // Res(p, q) = (-1)^{dp dq} lc(q)^{dp - dr} Res(q, rem)
    let tail = lpoly_resultant(&q, &rem)?;
    let mut lc_pow = lpoly_pow(&lc, dp - dr)?;
    lc_pow = lc_pow.mul(&tail);
    Ok(if (dp * dq) % 2 == 1 { lc_pow.neg() } else { lc_pow })
}

fn lpoly_pow(base: &LSeries, e: usize) -> Result<LSeries> {
    let mut acc = LSeries::exact_constant(Cyclo::one());
    for _ in 0..e {
        acc = acc.mul(base);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn ls(v: &[i64], upto: i64) -> LSeries {
        LSeries::new(0, v.iter().map(|&k| Cyclo::from_int(k)).collect(), upto.max(v.len() as i64))
    }

    #[test]
    fn window_tracking() {
        let a = ls(&[0, 1], 8); // u + O(u^8)
        let b = ls(&[0, 0, 2], 8); // 2u^2 + O(u^8)
        let p = a.mul(&b); // 2u^3 known up to 8+1 vs 8+2 -> 9... min(8+2, 8+1) = 9
        assert_eq!(p.ord(), Some(3));
        assert_eq!(p.known_upto(), 9);
        let q = p.div(&a).unwrap();
        assert_eq!(q.ord(), Some(2));
        assert_eq!(q.coeff(2), Cyclo::from_int(2));
    }

    #[test]
    fn inverse_roundtrip() {
        // (1 - u): inverse is the geometric series
        let mut c = vec![Cyclo::zero(); 6];
        c[0] = Cyclo::one();
        c[1] = Cyclo::from_int(-1);
        let a = LSeries::new(0, c, 6);
        let inv = a.inv().unwrap();
        for e in 0..6 {
            assert_eq!(inv.coeff(e), Cyclo::one());
        }
        let prod = a.mul(&inv);
        assert_eq!(prod.ord(), Some(0));
        assert_eq!(prod.coeff(0), Cyclo::one());
        for e in 1..prod.known_upto() {
            assert!(prod.coeff(e).is_zero());
        }
    }

    #[test]
    fn small_resultant() {
        // Res_y(y^2 - u^3, y - u^2) = (u^2)^2 - u^3 = u^4 - u^3 -> ord 3
        let w = 12;
        let p: LPoly = vec![ls(&[0, 0, 0, -1], w), LSeries::zero(w), LSeries::constant(Cyclo::one(), w)];
        let q: LPoly = vec![ls(&[0, 0, -1], w), LSeries::constant(Cyclo::one(), w)];
        let r = lpoly_resultant(&p, &q).unwrap();
        assert_eq!(r.ord(), Some(3));
        assert_eq!(r.coeff(3), Cyclo::from_int(-1));
        assert_eq!(r.coeff(4), Cyclo::from_int(1));
    }
}
