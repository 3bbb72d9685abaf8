//! The cyclotomic tower Q(zeta_N).
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q[z]/Phi_N(z)`, which makes the representation canonical for a fixed
//! conductor. Mixed-conductor arithmetic embeds both operands into the lcm
//! conductor first. Conductors congruent to 2 mod 4 are normalized away
//! (`Q(zeta_2m) = Q(zeta_m)` for odd `m`).

use crate::rat::Rat;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An element of Q(zeta_n) in the power basis, `n` never 2 mod 4.
#[derive(Clone)]
pub struct Cyclo {
    n: u32,
    c: Vec<Rat>,
}

struct CycloCtx {
    phi: usize,
    /// Monic cyclotomic polynomial, low-to-high, length phi+1, integer coefficients.
    min_poly: Vec<Rat>,
}

fn ctx_registry() -> &'static Mutex<HashMap<u32, &'static CycloCtx>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static CycloCtx>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result as usize
}

/// Quotient of exact polynomial division (panics on nonzero remainder).
fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut rem: Vec<Rat> = num.to_vec();
    let dd = den.len() - 1;
    assert!(rem.len() > dd);
    let mut quot = vec![Rat::ZERO; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = &rem[i] / &den[dd];
        quot[i - dd] = q.clone();
        if !q.is_zero() {
            for j in 0..=dd {
                let t = &den[j] * &q;
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
        }
    }
    assert!(rem.iter().all(Rat::is_zero), "inexact polynomial division");
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<Rat> {
    if n == 1 {
        return vec![Rat::integer(-1), Rat::ONE];
    }
    // (z^n - 1) / prod of Phi_d over proper divisors d
    let mut num = vec![Rat::ZERO; n as usize + 1];
    num[0] = Rat::integer(-1);
    num[n as usize] = Rat::ONE;
    let mut quot = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            quot = poly_div_exact(&quot, &phi_d);
        }
    }
    quot
}

fn ctx(n: u32) -> &'static CycloCtx {
    let mut reg = ctx_registry().lock().unwrap();
    if let Some(c) = reg.get(&n) {
        return c;
    }
    let min_poly = cyclotomic_poly(n);
    let phi = min_poly.len() - 1;
    debug_assert_eq!(phi, euler_phi(n));
    let leaked: &'static CycloCtx = Box::leak(Box::new(CycloCtx { phi, min_poly }));
    reg.insert(n, leaked);
    leaked
}

fn normalize_conductor(n: u32) -> u32 {
    assert!(n >= 1);
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64 / gcd_u64(a as u64, b as u64) * b as u64) as u32
}

/// Reduce a coefficient vector modulo Phi_n in place, returning exactly phi entries.
fn reduce_mod(n: u32, mut v: Vec<Rat>) -> Vec<Rat> {
    let cx = ctx(n);
    let phi = cx.phi;
    for i in (phi..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let top = std::mem::replace(&mut v[i], Rat::ZERO);
        for j in 0..phi {
            let t = &cx.min_poly[j] * &top;
            v[i - phi + j] = &v[i - phi + j] - &t;
        }
    }
    v.truncate(phi);
    v.resize(phi, Rat::ZERO);
    v
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo::from_rat(Rat::ZERO)
    }

    pub fn one() -> Cyclo {
        Cyclo::from_rat(Rat::ONE)
    }

    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Cyclo {
        Cyclo::from_rat(Rat::integer(k))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    /// Construct from raw power-basis coefficients over conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rat>) -> Cyclo {
        let n = normalize_conductor(n);
        if n == 1 {
            let mut v = coeffs;
            v.resize(1, Rat::ZERO);
            return Cyclo { n: 1, c: v };
        }
        Cyclo { n, c: reduce_mod(n, coeffs) }
    }

    /// zeta_order^power as an exact cyclotomic number.
    pub fn root_of_unity(order: u32, power: i64) -> Cyclo {
        assert!(order >= 1);
        let p = power.rem_euclid(order as i64) as u32;
        let g = gcd_u64(order as u64, p as u64) as u32;
        let (ord, pw) = if p == 0 { (1, 0) } else { (order / g, p / g) };
        if ord == 1 {
            return Cyclo::one();
        }
        if ord == 2 {
            return Cyclo::from_int(-1);
        }
        if ord % 4 == 2 {
            // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            let m = ord / 2;
            let sign = if pw % 2 == 1 { -1i64 } else { 1 };
            let inner = Cyclo::root_of_unity(m, (m as i64 + 1) / 2 * pw as i64);
            return if sign < 0 { -&inner } else { inner };
        }
        let mut v = vec![Rat::ZERO; pw as usize + 1];
        v[pw as usize] = Rat::ONE;
        Cyclo::from_coeffs(ord, v)
    }

    /// All `order`-th roots of unity (not only primitive ones).
    pub fn all_roots_of_unity(order: u32) -> Vec<Cyclo> {
        (0..order).map(|j| Cyclo::root_of_unity(order, j as i64)).collect()
    }

    /// Exact square root of an integer, inside the tower.
    /// sqrt(2) = zeta_8 - zeta_8^3; odd primes via quadratic Gauss sums.
    pub fn sqrt_int(m: i64) -> Cyclo {
        if m == 0 {
            return Cyclo::zero();
        }
        if m < 0 {
            let i = Cyclo::root_of_unity(4, 1);
            return &i * &Cyclo::sqrt_int(-m);
        }
        let mut square_part = 1i64;
        let mut free = 1i64;
        let mut rest = m;
        let mut p = 2i64;
        while p * p <= rest {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            square_part *= p.pow((e / 2) as u32);
            if e % 2 == 1 {
                free *= p;
            }
            p += 1;
        }
        if rest > 1 {
            free *= rest;
        }
        let mut acc = Cyclo::from_int(square_part);
        let mut f = free;
        let mut q = 2i64;
        while q <= f {
            if f % q == 0 {
                f /= q;
                acc = &acc * &Cyclo::sqrt_prime(q as u32);
            } else {
                q += 1;
            }
        }
        debug_assert_eq!(&acc * &acc, Cyclo::from_int(m));
        acc
    }

    fn sqrt_prime(p: u32) -> Cyclo {
        if p == 2 {
            let z = Cyclo::root_of_unity(8, 1);
            let z3 = Cyclo::root_of_unity(8, 3);
            return &z - &z3;
        }
        // Gauss sum g = sum_a (a|p) zeta_p^a; g = sqrt(p) or i*sqrt(p).
        let mut residues = vec![false; p as usize];
        for a in 1..p {
            residues[((a as u64 * a as u64) % p as u64) as usize] = true;
        }
        let mut g = Cyclo::zero();
        for a in 1..p {
            let z = Cyclo::root_of_unity(p, a as i64);
            if residues[a as usize] {
                g = &g + &z;
            } else {
                g = &g - &z;
            }
        }
        if p % 4 == 1 {
            g
        } else {
            let minus_i = Cyclo::root_of_unity(4, 3);
            &minus_i * &g
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rat::is_zero)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(Rat::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Re-express in conductor `n` (must be a multiple of the current one).
    pub fn embed(&self, n: u32) -> Cyclo {
        let n = normalize_conductor(n);
        if n == self.n {
            return self.clone();
        }
        assert!(n % self.n == 0, "cannot embed conductor {} into {}", self.n, n);
        let step = (n / self.n) as usize;
        let mut v = vec![Rat::ZERO; (self.c.len() - 1) * step + 1];
        for (i, coef) in self.c.iter().enumerate() {
            v[i * step] = coef.clone();
        }
        Cyclo::from_coeffs(n, v)
    }

    fn common(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            let n = normalize_conductor(lcm_u32(self.n, other.n));
            (self.embed(n), other.embed(n))
        }
    }

    pub fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        if let Some(r) = self.as_rat() {
            return Cyclo::from_rat(r.recip());
        }
        // extended Euclid against the minimal polynomial
        let cx = ctx(self.n);
        let mut r0: Vec<Rat> = cx.min_poly.clone();
        let mut r1: Vec<Rat> = trim(self.c.clone());
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::ONE];
        while deg(&r1) > 0 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert!(!r1.is_empty(), "minimal polynomial not coprime with element");
        let lead = r1[0].clone();
        let inv_vec: Vec<Rat> = s1.iter().map(|x| x / &lead).collect();
        Cyclo::from_coeffs(self.n, inv_vec)
    }

    pub fn div(&self, other: &Cyclo) -> Cyclo {
        self * &other.inv()
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn pow(&self, e: i64) -> Cyclo {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Cyclo::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate zeta -> zeta^a, for a coprime to the conductor.
    pub fn galois(&self, a: u32) -> Cyclo {
        if self.n == 1 {
            return self.clone();
        }
        let a = a % self.n;
        assert!(gcd_u64(a as u64, self.n as u64) == 1);
        let mut v = vec![Rat::ZERO; (self.c.len() - 1) * a as usize + 1];
        for (i, coef) in self.c.iter().enumerate() {
            if !coef.is_zero() {
                v[i * a as usize] = &v[i * a as usize] + coef;
            }
        }
        Cyclo::from_coeffs(self.n, v)
    }

    /// Rewrite over the smallest conductor that contains the value.
    pub fn reduced(&self) -> Cyclo {
        if self.n == 1 {
            return self.clone();
        }
        if let Some(r) = self.as_rat() {
            return Cyclo::from_rat(r);
        }
        let mut best = self.clone();
        let mut divisors: Vec<u32> = (1..=self.n).filter(|d| self.n % d == 0).collect();
        divisors.sort();
        for d in divisors {
            let d = normalize_conductor(d);
            if d >= best.n {
                break;
            }
            if let Some(re) = self.try_express_in(d) {
                best = re;
                break;
            }
        }
        best
    }

    fn try_express_in(&self, m: u32) -> Option<Cyclo> {
        if self.n % m != 0 {
            return None;
        }
        let phi_m = ctx(m).phi;
        let phi_n = ctx(self.n).phi;
        // columns: embeddings of the basis of Q(zeta_m); solve A y = self
        let basis: Vec<Cyclo> = (0..phi_m)
            .map(|i| {
                let mut v = vec![Rat::ZERO; i + 1];
                v[i] = Rat::ONE;
                Cyclo { n: m, c: reduce_mod_safe(m, v) }.embed(self.n)
            })
            .collect();
        let mut aug: Vec<Vec<Rat>> = (0..phi_n)
            .map(|r| {
                let mut row: Vec<Rat> = basis.iter().map(|b| b.c[r].clone()).collect();
                row.push(self.c[r].clone());
                row
            })
            .collect();
        // Gaussian elimination
        let cols = phi_m;
        let mut piv_rows = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..phi_n).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(row, p);
            let inv = aug[row][col].recip();
            for v in aug[row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..phi_n {
                if r != row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for cidx in 0..=cols {
                        let t = &aug[row][cidx] * &f;
                        aug[r][cidx] = &aug[r][cidx] - &t;
                    }
                }
            }
            piv_rows.push((row, col));
            row += 1;
        }
        // consistency: rows past the pivots must have zero rhs
        for r in row..phi_n {
            if !aug[r][cols].is_zero() {
                return None;
            }
        }
        let mut y = vec![Rat::ZERO; cols];
        for &(r, c) in &piv_rows {
            y[c] = aug[r][cols].clone();
        }
        Some(Cyclo { n: m, c: y })
    }

    /// Deterministic total order on values (embedding into a common conductor,
    /// then lexicographic on coordinates). Used only for stable rendering.
    pub fn render_cmp(&self, other: &Cyclo) -> std::cmp::Ordering {
        let (a, b) = self.common(other);
        a.c.cmp(&b.c)
    }
}

fn reduce_mod_safe(n: u32, v: Vec<Rat>) -> Vec<Rat> {
    if n == 1 {
        let mut v = v;
        v.resize(1, Rat::ZERO);
        v
    } else {
        reduce_mod(n, v)
    }
}

// ---- small dense-Vec<Rat> polynomial helpers (low-to-high) ----

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map(Rat::is_zero).unwrap_or(false) {
        v.pop();
    }
    v
}

fn deg(v: &[Rat]) -> i64 {
    v.len() as i64 - 1
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] = &out[i + j] + &t;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::ZERO; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    trim(out)
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rat::ZERO; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let q = &rem[i] / &b[db];
        if !q.is_zero() {
            for j in 0..=db {
                let t = &b[j] * &q;
                rem[i - db + j] = &rem[i - db + j] - &t;
            }
        }
        quot[i - db] = q;
    }
    (trim(quot), trim(rem))
}

impl std::ops::Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x = &*x + y;
        }
        a
    }
}

impl std::ops::Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x = &*x - y;
        }
        a
    }
}

impl std::ops::Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.common(rhs);
        if a.n == 1 {
            return Cyclo::from_rat(&a.c[0] * &b.c[0]);
        }
        let mut conv = vec![Rat::ZERO; a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    let t = x * y;
                    conv[i + j] = &conv[i + j] + &t;
                }
            }
        }
        Cyclo { n: a.n, c: reduce_mod(a.n, conv) }
    }
}

impl std::ops::Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x.clone()).collect() }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = self.common(other);
        a.c == b.c
    }
}
impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.reduced();
        if let Some(r) = v.as_rat() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, coef) in v.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (sign, mag) = if coef.is_negative() {
                ("-", -coef.clone())
            } else {
                ("+", coef.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "zeta{}", v.n)?;
                } else {
                    write!(f, "zeta{}^{}", v.n, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_basics() {
        let z8 = Cyclo::root_of_unity(8, 1);
        assert_eq!(z8.pow(8), Cyclo::one());
        assert_eq!(z8.pow(4), Cyclo::from_int(-1));
        // zeta_6 lives in conductor 3
        let z6 = Cyclo::root_of_unity(6, 1);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6.pow(6), Cyclo::one());
        assert_eq!(z6.pow(3), Cyclo::from_int(-1));
    }

    #[test]
    fn add_sub_roundtrip() {
        let a = Cyclo::root_of_unity(8, 3);
        let b = Cyclo::root_of_unity(12, 5);
        let sum = &a + &b;
        assert_eq!(&sum - &b, a.embed(24));
        assert_eq!(&sum - &b, a);
    }

    #[test]
    fn sqrt_values() {
        for m in [2i64, 3, 5, 6, 8, 12, -2] {
            let s = Cyclo::sqrt_int(m);
            assert_eq!(&s * &s, Cyclo::from_int(m), "sqrt({m})^2");
        }
        // sqrt 2 has the classical zeta_8 expression
        let s2 = Cyclo::sqrt_int(2);
        let expect = &Cyclo::root_of_unity(8, 1) - &Cyclo::root_of_unity(8, 3);
        assert_eq!(s2, expect);
    }

    #[test]
    fn inverse_and_embedding_equality() {
        let x = &Cyclo::root_of_unity(8, 1) + &Cyclo::from_int(2);
        let y = x.inv();
        assert_eq!(&x * &y, Cyclo::one());
        // embedding is injective and compatible with equality
        let e = x.embed(24);
        assert_eq!(e, x);
        assert_eq!(e.reduced().conductor(), 8);
    }

    #[test]
    fn galois_and_reduction() {
        // zeta_3 + zeta_3^2 = -1 reduces to the rationals
        let z3 = Cyclo::root_of_unity(3, 1);
        let tr = &z3 + &z3.galois(2);
        assert_eq!(tr.as_rat(), Some(Rat::integer(-1)));
        let red = (&Cyclo::sqrt_int(2).embed(24)).reduced();
        assert_eq!(red.conductor(), 8);
    }
}
