//! Truncated fractional power series in d variables.
//!
//! A series stores a finite term map plus a precision cutoff T: terms of
//! total order < T are exact, terms of total order >= T are unknown.
//! `prec = None` means the series is an exact (finitely supported) element
//! of the ring.

use crate::cyclo::Cyclo;
use crate::exponent::ExpVec;
use crate::rat::Rat;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct FractionalSeries {
    d: usize,
    terms: BTreeMap<ExpVec, Cyclo>,
    /// Total-order cutoff; None = exact.
    prec: Option<Rat>,
}

/// The monomial-order analysis of a series (`x^q * unit` or not).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialData {
    /// Unique minimal exponent dominating the whole support.
    Monomial { exp: ExpVec, coeff: Cyclo },
    /// Two or more incomparable minimal exponents.
    NotMonomialOrdered,
    /// No known terms, but the precision is finite.
    ZeroWithinPrecision,
    /// Exactly the zero series.
    ExactZero,
}

impl FractionalSeries {
    pub fn zero(d: usize) -> FractionalSeries {
        FractionalSeries { d, terms: BTreeMap::new(), prec: None }
    }

    pub fn monomial(exp: ExpVec, coeff: Cyclo) -> FractionalSeries {
        let d = exp.dim();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        FractionalSeries { d, terms, prec: None }
    }

    pub fn constant(d: usize, coeff: Cyclo) -> FractionalSeries {
        Self::monomial(ExpVec::zero(d), coeff)
    }

    pub fn from_terms(d: usize, terms: Vec<(ExpVec, Cyclo)>) -> FractionalSeries {
        let mut s = FractionalSeries::zero(d);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Cyclo)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn precision(&self) -> Option<&Rat> {
        self.prec.as_ref()
    }

    pub fn coeff(&self, e: &ExpVec) -> Cyclo {
        self.terms.get(e).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn add_term(&mut self, e: ExpVec, c: Cyclo) {
        assert_eq!(e.dim(), self.d);
        if let Some(p) = &self.prec {
            if &e.total() >= p {
                return;
            }
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let nv = &*old + &c;
                if nv.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = nv;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    /// Impose a precision cutoff (keeps the stricter of the two).
    pub fn with_precision(mut self, prec: Option<Rat>) -> FractionalSeries {
        let eff = match (self.prec.take(), prec) {
            (a, None) => a,
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        if let Some(p) = &eff {
            self.terms.retain(|e, _| &e.total() < p);
        }
        self.prec = eff;
        self
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    pub fn is_zero_within_precision(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimal total order among known terms.
    pub fn min_total_order(&self) -> Option<Rat> {
        self.terms.keys().map(|e| e.total()).min()
    }

    /// Every known exponent strictly positive (non-unit check).
    pub fn has_positive_order(&self) -> bool {
        self.terms.keys().all(|e| e.total() > Rat::ZERO)
    }

    fn join_prec(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) => Some(x.clone()),
            (None, Some(y)) => Some(y.clone()),
            (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
        }
    }

    pub fn neg(&self) -> FractionalSeries {
        FractionalSeries {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn scale(&self, k: &Cyclo) -> FractionalSeries {
        if k.is_zero() {
            return FractionalSeries { d: self.d, terms: BTreeMap::new(), prec: self.prec.clone() };
        }
        FractionalSeries {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn add(&self, other: &FractionalSeries) -> FractionalSeries {
        assert_eq!(self.d, other.d);
        let prec = Self::join_prec(&self.prec, &other.prec);
        let mut out = FractionalSeries { d: self.d, terms: self.terms.clone(), prec: None };
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out.with_precision(prec)
    }

    pub fn sub(&self, other: &FractionalSeries) -> FractionalSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FractionalSeries) -> FractionalSeries {
        assert_eq!(self.d, other.d);
        if self.is_exact_zero() || other.is_exact_zero() {
            return FractionalSeries::zero(self.d);
        }
        // precision shifts by the other factor's order
        let prec = Self::join_prec(
            &self.prec.as_ref().map(|p| {
                p + &other.min_total_order().unwrap_or_else(|| {
                    other.prec.clone().unwrap_or(Rat::ZERO)
                })
            }),
            &other.prec.as_ref().map(|p| {
                p + &self.min_total_order().unwrap_or_else(|| {
                    self.prec.clone().unwrap_or(Rat::ZERO)
                })
            }),
        );
        let mut out = FractionalSeries { d: self.d, terms: BTreeMap::new(), prec: prec.clone() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, e: &ExpVec, c: &Cyclo) -> FractionalSeries {
        self.mul(&FractionalSeries::monomial(e.clone(), c.clone()))
    }

    /// Initial-form analysis: series = x^q * unit, or not monomial-ordered,
    /// or zero (within precision).
    pub fn initial_data(&self) -> InitialData {
        if self.terms.is_empty() {
            return if self.prec.is_none() {
                InitialData::ExactZero
            } else {
                InitialData::ZeroWithinPrecision
            };
        }
        let mut minimals: Vec<&ExpVec> = Vec::new();
        for e in self.terms.keys() {
            if minimals.iter().any(|m| m.le_comp(e)) {
                continue;
            }
            minimals.retain(|m| !e.le_comp(m));
            minimals.push(e);
        }
        if minimals.len() != 1 {
            return InitialData::NotMonomialOrdered;
        }
        let q = minimals[0].clone();
        if self.terms.keys().all(|e| q.le_comp(e)) {
            let coeff = self.terms[&q].clone();
            InitialData::Monomial { exp: q, coeff }
        } else {
            InitialData::NotMonomialOrdered
        }
    }

    /// Monomial substitution x_i -> u^{r_i}: one-variable image of the series.
    pub fn substitute_monomial(&self, r: &[u32]) -> FractionalSeries {
        assert_eq!(r.len(), self.d);
        assert!(r.iter().all(|&x| x > 0), "substitution exponents must be positive");
        let rmin = *r.iter().min().unwrap() as i64;
        let rr: Vec<Rat> = r.iter().map(|&x| Rat::integer(x as i64)).collect();
        let prec = self.prec.as_ref().map(|p| p.scale_int(rmin));
        let mut out = FractionalSeries { d: 1, terms: BTreeMap::new(), prec };
        for (e, c) in &self.terms {
            out.add_term(ExpVec(vec![e.dot(&rr)]), c.clone());
        }
        out
    }

    /// Truncation: keep the terms whose exponent is NOT >= the cutoff vector.
    /// This is the "omit all terms of order >= h" operation for centers.
    pub fn truncate_below(&self, h: &ExpVec) -> FractionalSeries {
        FractionalSeries {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !h.le_comp(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            prec: self.prec.clone(),
        }
    }

    /// Deterministic total order on series values, for stable orbit and
    /// rendering order (not a mathematical order).
    pub fn canonical_cmp(&self, other: &FractionalSeries) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    match ea.cmp(eb) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    match ca.render_cmp(cb) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
        }
    }

    /// Lex-largest term (the leading term for exact division).
    pub fn leading_term_lex(&self) -> Option<(ExpVec, Cyclo)> {
        self.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Lcm of exponent denominators over the support.
    pub fn denominator_lcm(&self) -> i64 {
        let mut l = 1i64;
        for e in self.terms.keys() {
            let d = e.denominator_lcm();
            l = l / gcd(l, d) * d;
        }
        l
    }

    /// Exponents of the support together with `extra` integer coordinates
    /// appended (used to lift y-polynomials into polytope points).
    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.keys().cloned().collect()
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

impl fmt::Display for FractionalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, c) in &self.terms {
                let cs = c.to_string();
                let neg = cs.starts_with('-') && !cs[1..].contains(" - ") && !cs[1..].contains(" + ");
                if first {
                    first = false;
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                let mag = if neg { &cs[1..] } else { &cs[..] };
                let simple = !mag.contains(' ');
                let mut wrote_coeff = false;
                if mag != "1" || e.is_zero() {
                    if simple {
                        write!(f, "{mag}")?;
                    } else {
                        write!(f, "({mag})")?;
                    }
                    wrote_coeff = true;
                }
                for (i, q) in e.0.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    if wrote_coeff {
                        write!(f, "*")?;
                    }
                    wrote_coeff = true;
                    if q.is_one() {
                        write!(f, "x{}", i + 1)?;
                    } else if q.is_integer() {
                        write!(f, "x{}^{}", i + 1, q)?;
                    } else {
                        write!(f, "x{}^({})", i + 1, q)?;
                    }
                }
            }
        }
        if let Some(p) = &self.prec {
            write!(f, " + O({})", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FractionalSeries {
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

    #[test]
    fn initial_data_cases() {
        // 2 x1^{3/2} x2 + x1^2 x2^3 -> ((3/2,1), 2)
        let s = FractionalSeries::from_terms(
            2,
            vec![
                (e2(Rat::new(3, 2), Rat::ONE), Cyclo::from_int(2)),
                (e2(Rat::integer(2), Rat::integer(3)), Cyclo::one()),
            ],
        );
        match s.initial_data() {
            InitialData::Monomial { exp, coeff } => {
                assert_eq!(exp, e2(Rat::new(3, 2), Rat::ONE));
                assert_eq!(coeff, Cyclo::from_int(2));
            }
            other => panic!("expected monomial, got {other:?}"),
        }

        // x1 + x2 -> not monomial-ordered
        let s = FractionalSeries::from_terms(
            2,
            vec![
                (e2(Rat::ONE, Rat::ZERO), Cyclo::one()),
                (e2(Rat::ZERO, Rat::ONE), Cyclo::one()),
            ],
        );
        assert_eq!(s.initial_data(), InitialData::NotMonomialOrdered);

        assert_eq!(FractionalSeries::zero(2).initial_data(), InitialData::ExactZero);
        let z = FractionalSeries::zero(2).with_precision(Some(Rat::integer(3)));
        assert_eq!(z.initial_data(), InitialData::ZeroWithinPrecision);
    }

    #[test]
    fn substitution_is_morphism() {
        let a = FractionalSeries::from_terms(
            2,
            vec![(e2(Rat::new(3, 2), Rat::ONE), Cyclo::from_int(2))],
        );
        let b = FractionalSeries::from_terms(
            2,
            vec![
                (e2(Rat::ONE, Rat::ZERO), Cyclo::one()),
                (e2(Rat::ZERO, Rat::ONE), Cyclo::from_int(-1)),
            ],
        );
        let r = [2u32, 3u32];
        let lhs = a.mul(&b).substitute_monomial(&r);
        let rhs = a.substitute_monomial(&r).mul(&b.substitute_monomial(&r));
        assert_eq!(lhs, rhs);
        // cancellation: x1 - x2 under r = (1,1) collapses to zero
        let c = b.substitute_monomial(&[1, 1]);
        assert!(c.is_zero_within_precision());
    }

    #[test]
    fn precision_propagation() {
        let s = FractionalSeries::from_terms(1, vec![(ExpVec(vec![Rat::ONE]), Cyclo::one())])
            .with_precision(Some(Rat::integer(5)));
        let t = FractionalSeries::from_terms(1, vec![(ExpVec(vec![Rat::integer(2)]), Cyclo::one())]);
        let p = s.mul(&t);
        // cutoff shifts by the exact factor's order
        assert_eq!(p.precision(), Some(&Rat::integer(7)));
        assert_eq!(p.min_total_order(), Some(Rat::integer(3)));
    }
}
