//! Univariate polynomials over the cyclotomic tower: gcd, squarefree
//! decomposition, derivatives and resultants.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::rat::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// Dense polynomial, coefficients low-to-high, no trailing zeros.
/// The zero polynomial is the empty vector (degree "-infinity").
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    c: Vec<Cyclo>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { c: vec![] }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Cyclo::one())
    }

    pub fn constant(a: Cyclo) -> UniPoly {
        UniPoly::from_coeffs(vec![a])
    }

    pub fn var() -> UniPoly {
        UniPoly::from_coeffs(vec![Cyclo::zero(), Cyclo::one()])
    }

    pub fn from_coeffs(c: Vec<Cyclo>) -> UniPoly {
        let mut c = c;
        while c.last().map(Cyclo::is_zero).unwrap_or(false) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(v: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(v.iter().map(|&k| Cyclo::from_int(k)).collect())
    }

    /// c * z^k
    pub fn monomial(c: Cyclo, k: usize) -> UniPoly {
        let mut v = vec![Cyclo::zero(); k + 1];
        v[k] = c;
        UniPoly::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Cyclo {
        self.c.get(i).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn leading(&self) -> Cyclo {
        self.c.last().cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for coef in self.c.iter().rev() {
            acc = &(&acc * x) + coef;
        }
        acc
    }

    pub fn scale(&self, a: &Cyclo) -> UniPoly {
        UniPoly::from_coeffs(self.c.iter().map(|x| x * a).collect())
    }

    /// Monic normalization; returns (monic, leading constant).
    pub fn monic(&self) -> (UniPoly, Cyclo) {
        if self.is_zero() {
            return (UniPoly::zero(), Cyclo::zero());
        }
        let lead = self.leading();
        (self.scale(&lead.inv()), lead)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.scale(&Rat::integer(i as i64)))
            .collect();
        UniPoly::from_coeffs(v)
    }

    /// Plain k-th derivative.
    pub fn derivative_k(&self, k: usize) -> UniPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// Normalized k-th derivative ((n-k)!/n!) d^k/dz^k, n = deg.
    pub fn normalized_derivative_k(&self, k: usize) -> Result<UniPoly> {
        let n = self.degree().ok_or_else(|| QoError::Domain("zero input".into()))?;
        if k > n {
            return Err(QoError::Domain(format!("derivative order {k} exceeds degree {n}")));
        }
        let mut factor = Rat::ONE;
        for j in 0..k {
            factor = &factor / &Rat::integer((n - j) as i64);
        }
        Ok(self.derivative_k(k).scale_rat(&factor))
    }

    pub fn scale_rat(&self, r: &Rat) -> UniPoly {
        UniPoly::from_coeffs(self.c.iter().map(|x| x.scale(r)).collect())
    }

    /// Substitute z -> a*z (used for conjugacy transport checks).
    pub fn substitute_scaled_var(&self, a: &Cyclo) -> UniPoly {
        let mut pw = Cyclo::one();
        let mut out = Vec::with_capacity(self.c.len());
        for coef in &self.c {
            out.push(coef * &pw);
            pw = &pw * a;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lead_inv = d.leading().inv();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Cyclo::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] * &lead_inv;
            if !q.is_zero() {
                for j in 0..=dd {
                    let t = &d.c[j] * &q;
                    rem[i - dd + j] = &rem[i - dd + j] - &t;
                }
            }
            quot[i - dd] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact division; errors on a nonzero remainder.
    pub fn div_exact(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(QoError::Internal("inexact polynomial division".into()))
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().0
        }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Yun squarefree decomposition: map {multiplicity m -> S_m}, each S_m
    /// monic squarefree, pairwise coprime, with prod S_m^m = input up to a
    /// nonzero constant. Entries with S_m = 1 are omitted.
    pub fn squarefree_decomposition(&self) -> Result<BTreeMap<usize, UniPoly>> {
        if self.is_zero() {
            return Err(QoError::Domain("zero input".into()));
        }
        let (p, _) = self.monic();
        let mut out = BTreeMap::new();
        if p.is_constant() {
            return Ok(out);
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let mut w = p.div_exact(&g)?; // squarefree part
        let mut y = dp.div_exact(&g)?;
        let mut m = 1usize;
        loop {
            let z = &y - &w.derivative();
            if z.is_zero() {
                if !w.is_constant() {
                    out.insert(m, w.monic().0);
                }
                break;
            }
            let s = w.gcd(&z);
            if !s.is_constant() {
                out.insert(m, s.clone());
            }
            w = w.div_exact(&s)?;
            y = z.div_exact(&s)?;
            m += 1;
        }
        Ok(out)
    }

    /// Squarefree part (product of the S_m).
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        let dec = self.squarefree_decomposition()?;
        let mut acc = UniPoly::one();
        for s in dec.values() {
            acc = &acc * s;
        }
        Ok(acc)
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, coef) in self.c.iter().enumerate().rev() {
            if coef.is_zero() {
                continue;
            }
            let cs = coef.to_string();
            let neg = cs.starts_with('-');
            let mag = if neg { cs[1..].to_string() } else { cs.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let needs_coeff = mag != "1" || i == 0;
            let simple = !mag.contains(' ');
            if needs_coeff {
                if simple {
                    s.push_str(&mag);
                } else {
                    s.push('(');
                    s.push_str(&mag);
                    s.push(')');
                }
                if i > 0 {
                    s.push('*');
                }
            }
            if i == 1 {
                s.push_str(var);
            } else if i > 1 {
                s.push_str(&format!("{var}^{i}"));
            }
        }
        s
    }
}

/// Resultant via the Sylvester matrix, eliminated exactly over the field.
/// Convention: Res(p, q) = lc(p)^deg(q) * prod q(alpha) over roots alpha of p.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Cyclo {
    let (dp, dq) = match (p.degree(), q.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Cyclo::zero(),
    };
    if dp == 0 {
        return p.coeff(0).pow(dq as i64);
    }
    if dq == 0 {
        return q.coeff(0).pow(dp as i64);
    }
    let n = dp + dq;
    // rows 0..dq: shifts of p; rows dq..n: shifts of q (coefficients high-to-low)
    let mut m: Vec<Vec<Cyclo>> = Vec::with_capacity(n);
    for i in 0..dq {
        let mut row = vec![Cyclo::zero(); n];
        for j in 0..=dp {
            row[i + j] = p.coeff(dp - j);
        }
        m.push(row);
    }
    for i in 0..dp {
        let mut row = vec![Cyclo::zero(); n];
        for j in 0..=dq {
            row[i + j] = q.coeff(dq - j);
        }
        m.push(row);
    }
    // Gaussian elimination with column pivoting, tracking the determinant
    let mut det = Cyclo::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Cyclo::zero();
        };
        if pr != col {
            m.swap(pr, col);
            det = -&det;
        }
        let piv = m[col][col].clone();
        det = &det * &piv;
        let inv = piv.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for cc in col..n {
                let t = &m[col][cc] * &f;
                m[r][cc] = &m[r][cc] - &t;
            }
        }
    }
    det
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut v = vec![Cyclo::zero(); self.c.len().max(rhs.c.len())];
        for (i, x) in self.c.iter().enumerate() {
            v[i] = x.clone();
        }
        for (i, y) in rhs.c.iter().enumerate() {
            v[i] = &v[i] + y;
        }
        UniPoly::from_coeffs(v)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.c.iter().map(|x| -x).collect())
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Cyclo::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if !y.is_zero() {
                    let t = x * y;
                    v[i + j] = &v[i + j] + &t;
                }
            }
        }
        UniPoly::from_coeffs(v)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("z"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> UniPoly {
        UniPoly::var()
    }

    #[test]
    fn squarefree_examples() {
        // (z^2-1)^4 (z^2-2)^4 -> {4: (z^2-1)(z^2-2)}
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-2, 0, 1]);
        let p = &a.pow(4) * &b.pow(4);
        let dec = p.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[&4], &a * &b);

        // squarefree inputs stay at multiplicity 1
        let dec = z().squarefree_decomposition().unwrap();
        assert_eq!(dec[&1], z());
        let p = &z() * &a; // z(z^2-1)
        let dec = p.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[&1], p.monic().0);

        assert!(UniPoly::zero().squarefree_decomposition().is_err());
    }

    #[test]
    fn derivative_examples() {
        // z^3 + z, k = 2 -> 6z
        let p = UniPoly::from_ints(&[0, 1, 0, 1]);
        assert_eq!(p.derivative_k(2), UniPoly::from_ints(&[0, 6]));
        assert_eq!(p.derivative_k(0), p);
    }

    #[test]
    fn resultant_examples() {
        // Res(z, z) = 0 (common root)
        assert!(resultant(&z(), &z()).is_zero());
        // Res over Q: Res(z^2-2, z-3) = 3^2 - 2 = 7
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let q = UniPoly::from_ints(&[-3, 1]);
        assert_eq!(resultant(&p, &q), Cyclo::from_int(7));
        // multiplicativity spot check
        let r = UniPoly::from_ints(&[1, 2, 1, 1]);
        let lhs = resultant(&(&p * &q), &r);
        let rhs = &resultant(&p, &r) * &resultant(&q, &r);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // (z-1)(z+1)
        let b = UniPoly::from_ints(&[-1, 1]); // z-1
        let g = a.gcd(&b);
        assert_eq!(g, b);
        assert!(a.div_exact(&g).is_ok());
    }
}
