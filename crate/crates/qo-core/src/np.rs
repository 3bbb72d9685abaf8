//! Newton-Puiseux expansion for one-variable Weierstrass polynomials.
//!
//! Roots are expanded inside the cyclotomic tower; restriction-polynomial
//! roots that need constants outside the tower (e.g. 2^(1/4)) are returned
//! as explicit stubs carrying the unsolved factor.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::ExpVec;
use crate::rat::Rat;
use crate::series::FractionalSeries;
use crate::unipoly::UniPoly;
use crate::ypoly::SeriesYPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootStatus {
    /// The stored series is exactly a root.
    Exact,
    /// Expanded to the requested precision.
    Truncated,
    /// The next coefficient is a root of a polynomial with no root in the
    /// configured tower; the unsolved factor is carried verbatim.
    UnrepresentableConstant(UniPoly),
}

#[derive(Clone, Debug)]
pub struct PuiseuxRoot {
    pub series: FractionalSeries,
    pub multiplicity: usize,
    pub status: RootStatus,
}

struct State {
    /// current polynomial g(x, prefix + y)
    poly: SeriesYPoly,
    prefix: FractionalSeries,
    /// continuing roots differ from the prefix strictly beyond this exponent
    bound: Rat,
    expected: usize,
}

/// All Newton-Puiseux roots of a monic one-variable polynomial with exact
/// coefficients, expanded to order `target` (terms of order < target are
/// produced). Multiplicities sum to the degree.
pub fn newton_puiseux_roots(g: &SeriesYPoly, target: &Rat) -> Result<Vec<PuiseuxRoot>> {
    if g.dim() != 1 {
        return Err(QoError::Domain("Newton-Puiseux expansion needs d = 1".into()));
    }
    if !g.is_exact() {
        return Err(QoError::Indeterminate(
            "Newton-Puiseux expansion needs exact coefficients".into(),
        ));
    }
    if !g.is_monic() {
        return Err(QoError::Domain("Newton-Puiseux expansion needs a monic input".into()));
    }
    let n = g.degree().unwrap();
    let mut out: Vec<PuiseuxRoot> = Vec::new();
    let mut stack = vec![State {
        poly: g.clone(),
        prefix: FractionalSeries::zero(1),
        bound: Rat::ZERO,
        expected: n,
    }];
    let mut steps = 0usize;
    while let Some(st) = stack.pop() {
        steps += 1;
        if steps > 4000 {
            return Err(QoError::Domain(
                "expansion budget exceeded (ramification too deep for the target order)".into(),
            ));
        }
        let mut found = 0usize;
        // exact y-valuation: roots equal to the prefix
        let deg = st.poly.degree().unwrap();
        let mut v = 0usize;
        while v <= deg && st.poly.coeff(v).is_exact_zero() {
            v += 1;
        }
        if v > 0 {
            out.push(PuiseuxRoot {
                series: st.prefix.clone(),
                multiplicity: v,
                status: RootStatus::Exact,
            });
            found += v;
        }
        if found == st.expected {
            continue;
        }
        // Newton polygon of the remaining part
        let pts: Vec<(usize, Rat)> = (v..=deg)
            .filter(|&j| !st.poly.coeff(j).is_exact_zero())
            .map(|j| (j, st.poly.coeff(j).min_total_order().unwrap()))
            .collect();
        let hull = lower_hull(&pts);
        for w in hull.windows(2) {
            let (j1, o1) = &w[0];
            let (j2, o2) = &w[1];
            let width = j2 - j1;
            let mu = &(o1 - o2) / &Rat::integer(width as i64);
            if mu <= st.bound {
                continue; // sibling roots handled elsewhere
            }
            found += width;
            // restriction polynomial of the edge
            let mut coeffs = vec![Cyclo::zero(); width + 1];
            for j in *j1..=*j2 {
                let line = o1 - &(&mu * &Rat::integer((j - j1) as i64));
                coeffs[j - j1] = st.poly.coeff(j).coeff(&ExpVec(vec![line]));
            }
            let phi = UniPoly::from_coeffs(coeffs);
            debug_assert_eq!(phi.degree(), Some(width));
            let (roots, residual) = tower_roots(&phi)?;
            if &mu >= target {
                // next term already beyond the target order
                for (_, m) in &roots {
                    out.push(PuiseuxRoot {
                        series: st.prefix.clone().with_precision(Some(target.clone())),
                        multiplicity: *m,
                        status: RootStatus::Truncated,
                    });
                }
            } else {
                for (c0, m) in &roots {
                    let mut prefix = st.prefix.clone();
                    prefix.add_term(ExpVec(vec![mu.clone()]), c0.clone());
                    let term = FractionalSeries::monomial(ExpVec(vec![mu.clone()]), c0.clone());
                    let shifted = taylor_shift(&st.poly, &term);
                    stack.push(State { poly: shifted, prefix, bound: mu.clone(), expected: *m });
                }
            }
            if let Some(res) = residual {
                let missing = res.degree().unwrap_or(0);
                out.push(PuiseuxRoot {
                    series: st.prefix.clone().with_precision(Some(mu.clone())),
                    multiplicity: missing,
                    status: RootStatus::UnrepresentableConstant(res),
                });
            }
        }
        if found != st.expected {
            return Err(QoError::Internal(format!(
                "edge root count {found} differs from expected {}",
                st.expected
            )));
        }
    }
    let total: usize = out.iter().map(|r| r.multiplicity).sum();
    if total != n {
        return Err(QoError::Internal("root multiplicities do not sum to the degree".into()));
    }
    out.sort_by(|a, b| a.series.canonical_cmp(&b.series));
    Ok(out)
}

fn taylor_shift(g: &SeriesYPoly, delta: &FractionalSeries) -> SeriesYPoly {
    // g(x, delta + y): coefficient of y^k is (1/k!) (d^k g/dy^k)(delta)
    let coeffs = g.center_substitution(delta, &ExpVec::zero(1));
    SeriesYPoly::from_coeffs(1, coeffs)
}

fn lower_hull(pts: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // keep the turn convex (b above or on segment a-p)
            let lhs = &(&b.1 - &a.1) * &Rat::integer((p.0 - a.0) as i64);
            let rhs = &(&p.1 - &a.1) * &Rat::integer((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull
}

/// Roots of a univariate polynomial inside the cyclotomic tower, with
/// multiplicities, plus the unsolved remainder (product of factors with no
/// tower roots). Every returned root is verified exactly.
pub fn tower_roots(phi: &UniPoly) -> Result<(Vec<(Cyclo, usize)>, Option<UniPoly>)> {
    let dec = phi.squarefree_decomposition()?;
    let mut roots: Vec<(Cyclo, usize)> = Vec::new();
    let mut residual = UniPoly::one();
    for (m, s) in dec {
        let (found, rest) = squarefree_tower_roots(&s)?;
        for c in found {
            debug_assert!(phi.eval(&c).is_zero());
            roots.push((c, m));
        }
        if let Some(r) = rest {
            residual = &residual * &r.pow(m);
        }
    }
    roots.sort_by(|a, b| a.0.render_cmp(&b.0));
    let residual = if residual.is_constant() { None } else { Some(residual) };
    Ok((roots, residual))
}

fn squarefree_tower_roots(s: &UniPoly) -> Result<(Vec<Cyclo>, Option<UniPoly>)> {
    let mut current = s.clone();
    let mut found: Vec<Cyclo> = Vec::new();
    // peel a zero root
    if current.degree().unwrap_or(0) >= 1 && current.coeff(0).is_zero() {
        found.push(Cyclo::zero());
        current = current.div_exact(&UniPoly::var())?;
    }
    loop {
        let Some(deg) = current.degree() else { break };
        if deg == 0 {
            break;
        }
        if deg == 1 {
            let root = current.coeff(0).div(&current.coeff(1));
            found.push(-&root);
            current = UniPoly::one();
            break;
        }
        // compressed form H(z^m): solve H, then take m-th roots
        let m = support_gcd(&current);
        if m >= 2 {
            let h = decompress(&current, m);
            let (h_roots, h_rest) = squarefree_tower_roots(&h)?;
            let mut rest = UniPoly::one();
            if let Some(r) = h_rest {
                rest = &rest * &expand_in_power(&r, m);
            }
            for a in h_roots {
                match nth_root_in_tower(&a, m as u32) {
                    Some(r) => {
                        for j in 0..m {
                            let root = &r * &Cyclo::root_of_unity(m as u32, j as i64);
                            debug_assert!(current.eval(&root).is_zero());
                            found.push(root);
                        }
                    }
                    None => {
                        // z^m - a stays unsolved
                        let mut v = vec![Cyclo::zero(); m + 1];
                        v[0] = -&a;
                        v[m] = Cyclo::one();
                        rest = &rest * &UniPoly::from_coeffs(v);
                    }
                }
            }
            current = if rest.is_constant() { UniPoly::one() } else { rest };
            break;
        }
        if deg == 2 {
            // quadratic formula when the discriminant has a tower square root
            let (a, b, c) = (current.coeff(2), current.coeff(1), current.coeff(0));
            let disc = &(&b * &b) - &(&a * &c).scale(&Rat::integer(4));
            if let Some(sq) = sqrt_in_tower(&disc) {
                let two_a_inv = a.scale(&Rat::integer(2)).inv();
                let r1 = &(&-&b + &sq) * &two_a_inv;
                let r2 = &(&-&b - &sq) * &two_a_inv;
                debug_assert!(current.eval(&r1).is_zero() && current.eval(&r2).is_zero());
                found.push(r1);
                found.push(r2);
                current = UniPoly::one();
                break;
            }
        }
        break; // no method left
    }
    let residual = if current.is_constant() { None } else { Some(current) };
    Ok((found, residual))
}

/// Gcd of the exponents carrying nonzero coefficients (ignoring the constant
/// term); 1 when the polynomial is not a polynomial in a proper power of z.
fn support_gcd(p: &UniPoly) -> usize {
    let mut g = 0usize;
    for (i, c) in p.coeffs().iter().enumerate() {
        if i > 0 && !c.is_zero() {
            g = gcd_usize(g, i);
        }
    }
    g.max(1)
}

fn gcd_usize(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// H with p(z) = H(z^m).
fn decompress(p: &UniPoly, m: usize) -> UniPoly {
    let coeffs: Vec<Cyclo> = p
        .coeffs()
        .iter()
        .step_by(m)
        .cloned()
        .collect();
    UniPoly::from_coeffs(coeffs)
}

fn expand_in_power(h: &UniPoly, m: usize) -> UniPoly {
    let mut v = vec![Cyclo::zero(); h.coeffs().len() * m];
    v.resize((h.degree().unwrap_or(0)) * m + 1, Cyclo::zero());
    for (i, c) in h.coeffs().iter().enumerate() {
        v[i * m] = c.clone();
    }
    UniPoly::from_coeffs(v)
}

/// t-th root of a cyclotomic number of the monomial form r * zeta^j.
pub fn nth_root_in_tower(a: &Cyclo, t: u32) -> Option<Cyclo> {
    if a.is_zero() {
        return Some(Cyclo::zero());
    }
    let (r, n, j) = monomial_form(a)?;
    // r = p/q > 0 rational: try exact rational t-th root, then sqrt towers
    let root_r = rational_root(&r, t)?;
    // zeta_n^j -> zeta_{tn}^j
    let zeta = Cyclo::root_of_unity(n * t, j as i64);
    let cand = &root_r * &zeta;
    let mut pw = Cyclo::one();
    for _ in 0..t {
        pw = &pw * &cand;
    }
    if &pw == a {
        Some(cand)
    } else {
        None
    }
}

/// Express a as r * zeta_n^j with r > 0 rational, if possible.
fn monomial_form(a: &Cyclo) -> Option<(Rat, u32, u32)> {
    let red = a.reduced();
    let n = red.conductor();
    if let Some(r) = red.as_rat() {
        return if r.is_negative() {
            Some((-r, 2, 1))
        } else {
            Some((r, 1, 0))
        };
    }
    for j in 0..n {
        let z = Cyclo::root_of_unity(n, j as i64);
        let q = red.div(&z);
        if let Some(r) = q.as_rat() {
            if r.is_negative() {
                // fold the sign into the root of unity: -1 = zeta_{2n}^{n}
                let z2 = Cyclo::root_of_unity(2 * n, (n + 2 * j) as i64);
                let check = z2.pow(1);
                debug_assert_eq!(&(&check).pow(1), &check);
                return Some((-r, 2 * n, n + 2 * j));
            }
            return Some((r, n, j));
        }
    }
    None
}

fn rational_root(r: &Rat, t: u32) -> Option<Cyclo> {
    assert!(!r.is_negative() && !r.is_zero());
    // exact rational t-th root?
    let num = r.numer_i64()?;
    let den = r.denom_i64()?;
    if let (Some(rn), Some(rd)) = (int_root(num, t), int_root(den, t)) {
        return Some(Cyclo::from_rat(Rat::new(rn, rd)));
    }
    if t == 2 {
        // sqrt(p/q) = sqrt(pq)/q
        let prod = num.checked_mul(den)?;
        return Some(Cyclo::sqrt_int(prod).scale(&Rat::new(1, den)));
    }
    if t == 4 {
        let s = rational_root(r, 2)?;
        return s.as_rat().and_then(|sr| rational_root(&sr, 2));
    }
    None
}

fn int_root(x: i64, t: u32) -> Option<i64> {
    if x <= 0 {
        return None;
    }
    let mut lo = 1i64;
    let mut hi = 1i64 << (63 / t.max(1) as u64).min(31);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        match mid.checked_pow(t) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid - 1,
        }
    }
    if lo.checked_pow(t) == Some(x) {
        Some(lo)
    } else {
        None
    }
}

/// Square root inside the tower for numbers of the monomial form r zeta^j.
pub fn sqrt_in_tower(x: &Cyclo) -> Option<Cyclo> {
    if x.is_zero() {
        return Some(Cyclo::zero());
    }
    let cand = nth_root_in_tower(x, 2)?;
    Some(cand)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xpow(n: i64, d: i64) -> FractionalSeries {
        FractionalSeries::monomial(ExpVec(vec![Rat::new(n, d)]), Cyclo::one())
    }

    fn poly(coeffs: Vec<FractionalSeries>) -> SeriesYPoly {
        SeriesYPoly::from_coeffs(1, coeffs)
    }

    #[test]
    fn binomial_roots() {
        // y^2 - x^3 -> {x^{3/2}, -x^{3/2}}
        let g = poly(vec![xpow(3, 1).neg(), FractionalSeries::zero(1), FractionalSeries::constant(1, Cyclo::one())]);
        let roots = newton_puiseux_roots(&g, &Rat::integer(10)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.multiplicity, 1);
            assert_eq!(r.status, RootStatus::Exact);
        }
        let vals: Vec<_> = roots.iter().map(|r| r.series.clone()).collect();
        assert!(vals.contains(&xpow(3, 2)));
        assert!(vals.contains(&xpow(3, 2).neg()));
    }

    #[test]
    fn casas_roots() {
        // y^3 + x^2 y -> {0, ix, -ix}
        let g = poly(vec![
            FractionalSeries::zero(1),
            xpow(2, 1),
            FractionalSeries::zero(1),
            FractionalSeries::constant(1, Cyclo::one()),
        ]);
        let roots = newton_puiseux_roots(&g, &Rat::integer(10)).unwrap();
        assert_eq!(roots.len(), 3);
        let i = Cyclo::root_of_unity(4, 1);
        let ix = FractionalSeries::monomial(ExpVec(vec![Rat::ONE]), i.clone());
        let vals: Vec<_> = roots.iter().map(|r| r.series.clone()).collect();
        assert!(vals.contains(&FractionalSeries::zero(1)));
        assert!(vals.contains(&ix));
        assert!(vals.contains(&ix.neg()));
        assert!(roots.iter().all(|r| r.status == RootStatus::Exact));
    }

    #[test]
    fn polar_roots_with_surds() {
        // f' of y^3 + x^2 y normalized: y^2 + x^2/3, roots +- i x / sqrt(3)
        let third = FractionalSeries::monomial(
            ExpVec(vec![Rat::integer(2)]),
            Cyclo::from_rat(Rat::new(1, 3)),
        );
        let g = poly(vec![third, FractionalSeries::zero(1), FractionalSeries::constant(1, Cyclo::one())]);
        let roots = newton_puiseux_roots(&g, &Rat::integer(5)).unwrap();
        assert_eq!(roots.len(), 2);
        // (i/sqrt3)^2 = -1/3
        let c = roots[0].series.coeff(&ExpVec(vec![Rat::ONE]));
        assert_eq!(&c * &c, Cyclo::from_rat(Rat::new(-1, 3)));
    }

    #[test]
    fn truncation_and_deeper_terms() {
        // (y - x - x^2 - x^3 - ...)- style: y^2 - 2xy + (x^2 - x^5)
        // roots x +- x^{5/2}
        let c0 = FractionalSeries::monomial(ExpVec(vec![Rat::integer(2)]), Cyclo::one())
            .add(&xpow(5, 1).neg());
        let c1 = FractionalSeries::monomial(ExpVec(vec![Rat::ONE]), Cyclo::from_int(-2));
        let g = poly(vec![c0, c1, FractionalSeries::constant(1, Cyclo::one())]);
        let roots = newton_puiseux_roots(&g, &Rat::integer(10)).unwrap();
        assert_eq!(roots.len(), 2);
        let mut expect = FractionalSeries::monomial(ExpVec(vec![Rat::ONE]), Cyclo::one());
        expect.add_term(ExpVec(vec![Rat::new(5, 2)]), Cyclo::one());
        assert!(roots.iter().any(|r| r.series == expect));
        // truncation below the second term
        let shallow = newton_puiseux_roots(&g, &Rat::integer(2)).unwrap();
        assert!(shallow
            .iter()
            .all(|r| r.series.num_terms() == 1 && r.status == RootStatus::Truncated));
    }

    #[test]
    fn unrepresentable_stub() {
        // y^2 - 2^{1/2}... y^4 - 2 x^4: roots 2^{1/4} x: outside the tower
        let g = poly(vec![
            FractionalSeries::monomial(ExpVec(vec![Rat::integer(4)]), Cyclo::from_int(-2)),
            FractionalSeries::zero(1),
            FractionalSeries::zero(1),
            FractionalSeries::zero(1),
            FractionalSeries::constant(1, Cyclo::one()),
        ]);
        let roots = newton_puiseux_roots(&g, &Rat::integer(10)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 4);
        assert!(matches!(roots[0].status, RootStatus::UnrepresentableConstant(_)));
    }

    #[test]
    fn tower_root_helpers() {
        // cube roots of -1
        let phi = UniPoly::from_ints(&[1, 0, 0, 1]);
        let (roots, rest) = tower_roots(&phi).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(rest.is_none());
        // sqrt of -1/6 exists in conductor 24
        let x = Cyclo::from_rat(Rat::new(-1, 6));
        let s = sqrt_in_tower(&x).unwrap();
        assert_eq!(&s * &s, x);
        // 2^{1/4} does not exist
        assert!(nth_root_in_tower(&Cyclo::from_int(2), 4).is_none());
    }
}
