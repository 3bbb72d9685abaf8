//! Polynomials in y with fractional-power-series coefficients, and the
//! operations the tree and polar machinery needs: products of root factors,
//! normalized derivatives, the center substitution y = lambda + z x^h,
//! monomial substitutions and exact resultants.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::ExpVec;
use crate::rat::Rat;
use crate::series::FractionalSeries;
use std::fmt;

/// Dense in y, low-to-high; exact-zero leading coefficients are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesYPoly {
    d: usize,
    c: Vec<FractionalSeries>,
}

impl SeriesYPoly {
    pub fn zero(d: usize) -> SeriesYPoly {
        SeriesYPoly { d, c: vec![] }
    }

    pub fn from_coeffs(d: usize, c: Vec<FractionalSeries>) -> SeriesYPoly {
        let mut c = c;
        while c.last().map(|s| s.is_exact_zero()).unwrap_or(false) {
            c.pop();
        }
        SeriesYPoly { d, c }
    }

    pub fn constant(s: FractionalSeries) -> SeriesYPoly {
        let d = s.dim();
        SeriesYPoly::from_coeffs(d, vec![s])
    }

    pub fn y(d: usize) -> SeriesYPoly {
        SeriesYPoly::from_coeffs(
            d,
            vec![FractionalSeries::zero(d), FractionalSeries::constant(d, Cyclo::one())],
        )
    }

    /// prod (y - alpha) over the given roots.
    pub fn from_roots(d: usize, roots: &[FractionalSeries]) -> SeriesYPoly {
        let mut acc = SeriesYPoly::from_coeffs(d, vec![FractionalSeries::constant(d, Cyclo::one())]);
        for r in roots {
            let factor = SeriesYPoly::from_coeffs(
                d,
                vec![r.neg(), FractionalSeries::constant(d, Cyclo::one())],
            );
            acc = acc.mul(&factor);
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FractionalSeries {
        self.c.get(i).cloned().unwrap_or_else(|| FractionalSeries::zero(self.d))
    }

    pub fn coeffs(&self) -> &[FractionalSeries] {
        &self.c
    }

    pub fn is_monic(&self) -> bool {
        match self.c.last() {
            Some(lead) => {
                lead.num_terms() == 1
                    && lead
                        .terms()
                        .next()
                        .map(|(e, c)| e.is_zero() && c.is_one())
                        .unwrap_or(false)
            }
            None => false,
        }
    }

    /// Monic with every non-leading coefficient a non-unit.
    pub fn is_weierstrass(&self) -> bool {
        if !self.is_monic() {
            return false;
        }
        let n = self.c.len() - 1;
        self.c[..n].iter().all(|s| s.has_positive_order())
    }

    pub fn add(&self, other: &SeriesYPoly) -> SeriesYPoly {
        assert_eq!(self.d, other.d);
        let mut c = vec![FractionalSeries::zero(self.d); self.c.len().max(other.c.len())];
        for (i, s) in self.c.iter().enumerate() {
            c[i] = s.clone();
        }
        for (i, s) in other.c.iter().enumerate() {
            c[i] = c[i].add(s);
        }
        SeriesYPoly::from_coeffs(self.d, c)
    }

    pub fn neg(&self) -> SeriesYPoly {
        SeriesYPoly::from_coeffs(self.d, self.c.iter().map(|s| s.neg()).collect())
    }

    pub fn sub(&self, other: &SeriesYPoly) -> SeriesYPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SeriesYPoly) -> SeriesYPoly {
        assert_eq!(self.d, other.d);
        if self.c.is_empty() || other.c.is_empty() {
            return SeriesYPoly::zero(self.d);
        }
        let mut c = vec![FractionalSeries::zero(self.d); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        SeriesYPoly::from_coeffs(self.d, c)
    }

    pub fn scale(&self, k: &Cyclo) -> SeriesYPoly {
        SeriesYPoly::from_coeffs(self.d, self.c.iter().map(|s| s.scale(k)).collect())
    }

    pub fn derivative_y(&self) -> SeriesYPoly {
        if self.c.len() <= 1 {
            return SeriesYPoly::zero(self.d);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, s)| s.scale(&Cyclo::from_int(i as i64)))
            .collect();
        SeriesYPoly::from_coeffs(self.d, c)
    }

    /// Normalized k-th derivative ((n-k)!/n!) d^k/dy^k; monic in, monic out.
    pub fn normalized_derivative(&self, k: usize) -> Result<SeriesYPoly> {
        let n = self.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
        if k < 1 || k >= n {
            return Err(QoError::Domain(format!(
                "polar order k={k} out of range 1..{n}"
            )));
        }
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative_y();
        }
        let mut factor = Rat::ONE;
        for j in 0..k {
            factor = &factor / &Rat::integer((n - j) as i64);
        }
        Ok(p.scale(&Cyclo::from_rat(factor)))
    }

    pub fn eval(&self, x: &FractionalSeries) -> FractionalSeries {
        let mut acc = FractionalSeries::zero(self.d);
        for s in self.c.iter().rev() {
            acc = acc.mul(x).add(s);
        }
        acc
    }

    pub fn substitute_monomial(&self, r: &[u32]) -> SeriesYPoly {
        SeriesYPoly::from_coeffs(1, self.c.iter().map(|s| s.substitute_monomial(r)).collect())
    }

    /// Coefficients in z of g(lambda + z x^h), including the x^{k h} shifts:
    /// entry k is x^{k h} * (1/k!) (d^k g/dy^k)(lambda).
    pub fn center_substitution(&self, lambda: &FractionalSeries, h: &ExpVec) -> Vec<FractionalSeries> {
        let mut out = Vec::with_capacity(self.c.len());
        let mut deriv = self.clone();
        let mut k_factorial = Rat::ONE;
        let mut shift = ExpVec::zero(self.d);
        for k in 0..self.c.len() {
            if k > 0 {
                deriv = deriv.derivative_y();
                k_factorial = &k_factorial * &Rat::integer(k as i64);
                shift = shift.add(h);
            }
            let val = deriv.eval(lambda).scale(&Cyclo::from_rat(Rat::ONE.clone() / k_factorial.clone()));
            out.push(val.mul_monomial(&shift, &Cyclo::one()));
        }
        out
    }

    /// Support of the polynomial as points in Q^{d+1} (series exponent, y-degree).
    pub fn newton_points(&self) -> Vec<ExpVec> {
        let mut pts = Vec::new();
        for (j, s) in self.c.iter().enumerate() {
            for (e, _) in s.terms() {
                let mut v = e.0.clone();
                v.push(Rat::integer(j as i64));
                pts.push(ExpVec(v));
            }
        }
        pts
    }

    pub fn min_coeff_precision(&self) -> Option<Rat> {
        let mut best: Option<Rat> = None;
        for s in &self.c {
            if let Some(p) = s.precision() {
                best = Some(match best {
                    None => p.clone(),
                    Some(b) => b.min(p.clone()),
                });
            }
        }
        best
    }

    pub fn is_exact(&self) -> bool {
        self.c.iter().all(|s| s.precision().is_none())
    }

    pub fn denominator_lcm(&self) -> i64 {
        let mut l = 1i64;
        for s in &self.c {
            let d = s.denominator_lcm();
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

/// Resultant in y. Convention: Res(p, q) = lc(p)^deg(q) prod q(alpha) over
/// the roots alpha of p, matching the Sylvester layout with p-rows first.
pub fn resultant_y(p: &SeriesYPoly, q: &SeriesYPoly) -> Result<FractionalSeries> {
    let d = p.dim();
    let (dp, dq) = match (p.degree(), q.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(FractionalSeries::zero(d)),
    };
    if dp == 0 {
        return Ok(pow_series(&p.coeff(0), dq));
    }
    if dq == 0 {
        return Ok(pow_series(&q.coeff(0), dp));
    }
    // monic linear factors reduce to evaluation, which also works for
    // truncated coefficients; Res(p, y-b) = (-1)^{deg p} p(b)
    if dq == 1 && q.is_monic() {
        let beta = q.coeff(0).neg();
        let v = p.eval(&beta);
        return Ok(if dp % 2 == 0 { v } else { v.neg() });
    }
    if dp == 1 && p.is_monic() {
        let alpha = p.coeff(0).neg();
        return Ok(q.eval(&alpha));
    }
    if !(p.is_exact() && q.is_exact()) {
        return Err(QoError::Indeterminate(
            "resultant of non-linear truncated polynomials".into(),
        ));
    }
    sylvester_bareiss(p, q)
}

fn pow_series(s: &FractionalSeries, e: usize) -> FractionalSeries {
    let mut acc = FractionalSeries::constant(s.dim(), Cyclo::one());
    for _ in 0..e {
        acc = acc.mul(s);
    }
    acc
}

/// Exact multivariate division (lex leading terms); error if not divisible.
pub fn series_div_exact(a: &FractionalSeries, b: &FractionalSeries) -> Result<FractionalSeries> {
    if a.is_zero_within_precision() {
        return Ok(FractionalSeries::zero(a.dim()));
    }
    if b.is_zero_within_precision() {
        return Err(QoError::Internal("division by zero series".into()));
    }
    let (be, bc) = b.leading_term_lex().unwrap();
    let mut rem = a.clone();
    let mut quot = FractionalSeries::zero(a.dim());
    let bc_inv = bc.inv();
    loop {
        let Some((re, rc)) = rem.leading_term_lex() else {
            return Ok(quot);
        };
        let qe = re.sub(&be);
        if !qe.is_nonnegative() {
            return Err(QoError::Internal("inexact series division".into()));
        }
        let qc = &rc * &bc_inv;
        let t = FractionalSeries::monomial(qe, qc);
        quot = quot.add(&t);
        rem = rem.sub(&t.mul(b));
    }
}

fn sylvester_bareiss(p: &SeriesYPoly, q: &SeriesYPoly) -> Result<FractionalSeries> {
    let d = p.dim();
    let dp = p.degree().unwrap();
    let dq = q.degree().unwrap();
    let n = dp + dq;
    let mut m: Vec<Vec<FractionalSeries>> = Vec::with_capacity(n);
    for i in 0..dq {
        let mut row = vec![FractionalSeries::zero(d); n];
        for j in 0..=dp {
            row[i + j] = p.coeff(dp - j);
        }
        m.push(row);
    }
    for i in 0..dp {
        let mut row = vec![FractionalSeries::zero(d); n];
        for j in 0..=dq {
            row[i + j] = q.coeff(dq - j);
        }
        m.push(row);
    }
    let mut sign = false;
    let mut prev = FractionalSeries::constant(d, Cyclo::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero_within_precision() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero_within_precision()) else {
                return Ok(FractionalSeries::zero(d));
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let hi = m[k][k].mul(&m[i][j]);
                let lo = m[i][k].mul(&m[k][j]);
                m[i][j] = series_div_exact(&hi.sub(&lo), &prev)?;
            }
            m[i][k] = FractionalSeries::zero(d);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

impl fmt::Display for SeriesYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, s) in self.c.iter().enumerate().rev() {
            if s.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let needs_parens = s.num_terms() > 1 || s.precision().is_some();
            let is_unit = s.num_terms() == 1
                && s.terms().next().map(|(e, c)| e.is_zero() && c.is_one()).unwrap_or(false);
            if i == 0 {
                write!(f, "{}", s)?;
            } else {
                if is_unit {
                    // bare y power
                } else if needs_parens {
                    write!(f, "({})*", s)?;
                } else {
                    write!(f, "{}*", s)?;
                }
                if i == 1 {
                    write!(f, "y")?;
                } else {
                    write!(f, "y^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SeriesYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(a: Rat, b: Rat) -> ExpVec {
        ExpVec(vec![a, b])
    }

    fn mono2(n1: i64, d1: i64, n2: i64, d2: i64, c: i64) -> FractionalSeries {
        FractionalSeries::monomial(e2(Rat::new(n1, d1), Rat::new(n2, d2)), Cyclo::from_int(c))
    }

    #[test]
    fn example_polynomial_expansion() {
        // (y^2 - x1^3 x2^2)(y - x1^5 x2^2) = y^3 - x1^5x2^2 y^2 - x1^3x2^2 y + x1^8x2^4
        let f1 = SeriesYPoly::from_coeffs(
            2,
            vec![
                mono2(3, 1, 2, 1, -1),
                FractionalSeries::zero(2),
                FractionalSeries::constant(2, Cyclo::one()),
            ],
        );
        let f2 = SeriesYPoly::from_coeffs(
            2,
            vec![mono2(5, 1, 2, 1, -1), FractionalSeries::constant(2, Cyclo::one())],
        );
        let f = f1.mul(&f2);
        assert_eq!(f.degree(), Some(3));
        assert!(f.is_weierstrass());
        assert_eq!(f.coeff(2), mono2(5, 1, 2, 1, -1));
        assert_eq!(f.coeff(1), mono2(3, 1, 2, 1, -1));
        assert_eq!(f.coeff(0), mono2(8, 1, 4, 1, 1));

        // normalized first derivative: y^2 - (2/3) x1^5x2^2 y - (1/3) x1^3x2^2
        let p1 = f.normalized_derivative(1).unwrap();
        assert!(p1.is_monic());
        assert_eq!(
            p1.coeff(1),
            FractionalSeries::monomial(
                e2(Rat::integer(5), Rat::integer(2)),
                Cyclo::from_rat(Rat::new(-2, 3))
            )
        );
        assert_eq!(
            p1.coeff(0),
            FractionalSeries::monomial(
                e2(Rat::integer(3), Rat::integer(2)),
                Cyclo::from_rat(Rat::new(-1, 3))
            )
        );

        // substitution r=(1,1): (y^2-u^5)(y-u^7)
        let bar = f.substitute_monomial(&[1, 1]);
        assert_eq!(bar.coeff(2), FractionalSeries::monomial(ExpVec(vec![Rat::integer(7)]), Cyclo::from_int(-1)));
    }

    #[test]
    fn resultant_examples() {
        // Res_y(y, y - x1^5 x2^2) = -x1^5 x2^2
        let y = SeriesYPoly::y(2);
        let q = SeriesYPoly::from_coeffs(
            2,
            vec![mono2(5, 1, 2, 1, -1), FractionalSeries::constant(2, Cyclo::one())],
        );
        let r = resultant_y(&y, &q).unwrap();
        assert_eq!(r, mono2(5, 1, 2, 1, -1));

        // Res_y(y^2 - x1^3x2^2, y - x1^5x2^2) = x1^10 x2^4 - x1^3 x2^2
        let p = SeriesYPoly::from_coeffs(
            2,
            vec![
                mono2(3, 1, 2, 1, -1),
                FractionalSeries::zero(2),
                FractionalSeries::constant(2, Cyclo::one()),
            ],
        );
        let r = resultant_y(&p, &q).unwrap();
        let expect = mono2(10, 1, 4, 1, 1).add(&mono2(3, 1, 2, 1, -1));
        assert_eq!(r, expect);

        // Res_z(z, z) = 0
        let z1 = SeriesYPoly::y(2);
        assert!(resultant_y(&z1, &z1).unwrap().is_zero_within_precision());
    }

    #[test]
    fn bareiss_matches_root_products() {
        let a1 = mono2(1, 1, 0, 1, 1); // x1
        let a2 = mono2(0, 1, 1, 1, 1); // x2
        let b1 = mono2(1, 1, 0, 1, 2); // 2 x1
        let b2 = mono2(0, 1, 1, 1, 3); // 3 x2
        let p = SeriesYPoly::from_roots(2, &[a1.clone(), a2.clone()]);
        let q = SeriesYPoly::from_roots(2, &[b1, b2]);
        // both quadratic: this exercises the Bareiss path
        let r = resultant_y(&p, &q).unwrap();
        let direct = q.eval(&a1).mul(&q.eval(&a2));
        assert_eq!(r, direct);
        // reciprocity: Res(p,q) = (-1)^{4} Res(q,p)
        let r2 = resultant_y(&q, &p).unwrap();
        assert_eq!(r, r2);
    }
}
