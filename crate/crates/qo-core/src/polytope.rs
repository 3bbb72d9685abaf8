//! Newton polytopes in Q^{d+1} with exact rational arithmetic.
//!
//! A polytope is the convex hull of finitely many points plus the first
//! orthant, stored by its extreme-point set. Membership (and hence
//! containment, equality and vertex filtering) is decided by a small exact
//! phase-1 simplex; there are no tolerance parameters anywhere.

use crate::error::{QoError, Result};
use crate::exponent::ExpVec;
use crate::rat::Rat;
use crate::series::{FractionalSeries, InitialData};
use crate::ypoly::SeriesYPoly;
use std::fmt;

/// An elementary polytope {q over k}: hull of (q,0),(0,k) plus orthant.
/// `q = None` encodes the infinite inclination (the polytope of y^k).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryPolytope {
    pub q: Option<ExpVec>,
    pub k: u64,
}

impl ElementaryPolytope {
    /// Inclination q/k; None for the infinite one.
    pub fn inclination(&self) -> Option<ExpVec> {
        self.q.as_ref().map(|q| q.scale(&(Rat::ONE / Rat::integer(self.k as i64))))
    }

    pub fn to_polytope(&self, d: usize) -> NewtonPolytope {
        let mut top = vec![Rat::ZERO; d];
        top.push(Rat::integer(self.k as i64));
        let mut pts = vec![ExpVec(top)];
        if let Some(q) = &self.q {
            let mut bot = q.0.clone();
            bot.push(Rat::ZERO);
            pts.push(ExpVec(bot));
        }
        NewtonPolytope::from_points(d + 1, pts)
    }
}

impl fmt::Display for ElementaryPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.q {
            Some(q) => write!(f, "{{{} over {}}}", q, self.k),
            None => write!(f, "{{inf over {}}}", self.k),
        }
    }
}

/// Convex region `conv(vertices) + orthant`, canonical by its sorted
/// extreme-point set. The empty polytope (of the zero series) has no vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    dim: usize,
    vertices: Vec<ExpVec>,
}

impl NewtonPolytope {
    pub fn empty(dim: usize) -> NewtonPolytope {
        NewtonPolytope { dim, vertices: vec![] }
    }

    pub fn from_points(dim: usize, pts: Vec<ExpVec>) -> NewtonPolytope {
        let mut pts = pts;
        pts.sort();
        pts.dedup();
        // drop orthant-dominated points first
        let mut keep: Vec<ExpVec> = Vec::new();
        'outer: for p in &pts {
            for q in &pts {
                if q != p && q.le_comp(p) {
                    continue 'outer;
                }
            }
            keep.push(p.clone());
        }
        // then the remaining non-extreme points via exact LP
        let mut vertices: Vec<ExpVec> = Vec::new();
        for i in 0..keep.len() {
            let others: Vec<&ExpVec> =
                keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
            if !point_in_hull(&keep[i], &others) {
                vertices.push(keep[i].clone());
            }
        }
        vertices.sort();
        NewtonPolytope { dim, vertices }
    }

    pub fn monomial(e: &ExpVec) -> NewtonPolytope {
        NewtonPolytope { dim: e.dim(), vertices: vec![e.clone()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ExpVec] {
        &self.vertices
    }

    /// The single vertex of a monomial polytope, if it is one.
    pub fn as_monomial(&self) -> Option<&ExpVec> {
        if self.vertices.len() == 1 {
            Some(&self.vertices[0])
        } else {
            None
        }
    }

    pub fn contains_point(&self, p: &ExpVec) -> bool {
        assert_eq!(p.dim(), self.dim);
        point_in_hull(p, &self.vertices.iter().collect::<Vec<_>>())
    }

    /// Region containment (self as a subset of other).
    pub fn subset_of(&self, other: &NewtonPolytope) -> bool {
        if self.is_empty() {
            return true;
        }
        if other.is_empty() {
            return false;
        }
        self.vertices.iter().all(|v| other.contains_point(v))
    }

    pub fn minkowski_sum(&self, other: &NewtonPolytope) -> Result<NewtonPolytope> {
        if self.dim != other.dim {
            return Err(QoError::Domain(format!(
                "minkowski sum dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(NewtonPolytope::empty(self.dim));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.add(b));
            }
        }
        Ok(NewtonPolytope::from_points(self.dim, pts))
    }

    /// Support function l(v, P) = min <v, p> over the region (v >= 0).
    pub fn support(&self, v: &[Rat]) -> Option<Rat> {
        self.vertices.iter().map(|p| p.dot(v)).min()
    }

    /// Image under (a, b) -> (<r, a>, b) with strictly positive r.
    pub fn project(&self, r: &[Rat]) -> NewtonPolytope {
        assert_eq!(r.len() + 1, self.dim);
        assert!(r.iter().all(|x| x > &Rat::ZERO));
        let pts = self
            .vertices
            .iter()
            .map(|p| {
                let head = ExpVec(p.0[..self.dim - 1].to_vec()).dot(r);
                ExpVec(vec![head, p.0[self.dim - 1].clone()])
            })
            .collect();
        NewtonPolytope::from_points(2, pts)
    }

    /// Scale the region by a positive rational (homothety).
    pub fn scale(&self, r: &Rat) -> NewtonPolytope {
        assert!(r > &Rat::ZERO);
        NewtonPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|p| p.scale(r)).collect(),
        }
    }

    /// "Delta_1 >= Delta_2 iff Delta_1 is a subset of Delta_2".
    pub fn contact_order(&self, other: &NewtonPolytope) -> Result<PolytopeOrder> {
        if self.dim != other.dim {
            return Err(QoError::Domain("polytope order dimension mismatch".into()));
        }
        let le = self.subset_of(other);
        let ge = other.subset_of(self);
        Ok(match (le, ge) {
            (true, true) => PolytopeOrder::Equal,
            (true, false) => PolytopeOrder::Succeeds,
            (false, true) => PolytopeOrder::Precedes,
            (false, false) => PolytopeOrder::Incomparable,
        })
    }

    /// Canonical decomposition into elementary polytopes, inclination-sorted
    /// (walk of the compact edge chain). Errors with "not polygonal" when the
    /// polytope is not a sum of elementary ones.
    pub fn canonical_decomposition(&self) -> Result<Vec<ElementaryPolytope>> {
        if self.is_empty() {
            return Err(QoError::Domain("empty polytope".into()));
        }
        let d = self.dim - 1;
        let mut vs = self.vertices.clone();
        // order by decreasing last coordinate
        vs.sort_by(|a, b| b.0[d].cmp(&a.0[d]));
        for w in vs.windows(2) {
            if w[0].0[d] == w[1].0[d] {
                return Err(QoError::Domain("not polygonal".into()));
            }
        }
        let top = &vs[0];
        if !top.0[..d].iter().all(Rat::is_zero) {
            return Err(QoError::Domain("not polygonal".into()));
        }
        let mut parts: Vec<ElementaryPolytope> = Vec::new();
        for w in vs.windows(2) {
            let drop = &w[0].0[d] - &w[1].0[d];
            let q = ExpVec(w[1].0[..d].to_vec()).sub(&ExpVec(w[0].0[..d].to_vec()));
            let Some(k) = drop.as_integer().filter(|&k| k > 0) else {
                return Err(QoError::Domain("not polygonal".into()));
            };
            if !q.is_nonnegative() {
                return Err(QoError::Domain("not polygonal".into()));
            }
            parts.push(ElementaryPolytope { q: Some(q), k: k as u64 });
        }
        let last = vs.last().unwrap();
        if let Some(k) = last.0[d].as_integer().filter(|&k| k > 0) {
            parts.push(ElementaryPolytope { q: None, k: k as u64 });
        } else if !last.0[d].is_zero() {
            return Err(QoError::Domain("not polygonal".into()));
        }
        // merge equal inclinations
        let mut merged: Vec<ElementaryPolytope> = Vec::new();
        for p in parts {
            match merged.last_mut() {
                Some(m) if m.inclination() == p.inclination() => {
                    m.k += p.k;
                    if let (Some(mq), Some(pq)) = (m.q.as_mut(), p.q.as_ref()) {
                        *mq = mq.add(pq);
                    }
                }
                _ => merged.push(p),
            }
        }
        // the decomposition must Minkowski-sum back to the polytope exactly
        let mut acc = NewtonPolytope::monomial(&ExpVec::zero(self.dim));
        for p in &merged {
            acc = acc.minkowski_sum(&p.to_polytope(d))?;
        }
        if &acc != self {
            return Err(QoError::Domain("not polygonal".into()));
        }
        Ok(merged)
    }
}

impl fmt::Display for NewtonPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        write!(f, "hull{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}+orthant")
    }
}

impl fmt::Debug for NewtonPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolytopeOrder {
    Equal,
    /// self >= other in the contact order (self inside other)
    Succeeds,
    Precedes,
    Incomparable,
}

/// Newton polytope of a y-polynomial (exponent support plus y-degree axis).
pub fn newton_polytope(g: &SeriesYPoly) -> Result<NewtonPolytope> {
    let pts = g.newton_points();
    if pts.is_empty() {
        return if g.is_exact() {
            Ok(NewtonPolytope::empty(g.dim() + 1))
        } else {
            Err(QoError::Indeterminate("zero within precision".into()))
        };
    }
    Ok(NewtonPolytope::from_points(g.dim() + 1, pts))
}

/// Newton polytope of a plain series (no y axis).
pub fn newton_polytope_series(s: &FractionalSeries) -> Result<NewtonPolytope> {
    if s.is_zero_within_precision() {
        return if s.precision().is_none() {
            Ok(NewtonPolytope::empty(s.dim()))
        } else {
            Err(QoError::Indeterminate("zero within precision".into()))
        };
    }
    Ok(NewtonPolytope::from_points(s.dim(), s.support()))
}

/// Terms of g whose polytope points minimize the strictly positive functional
/// `v` (the symbolic restriction to the compact face exposed by v).
pub fn symbolic_restriction(g: &SeriesYPoly, v: &[Rat]) -> Result<SeriesYPoly> {
    if v.len() != g.dim() + 1 || v.iter().any(|x| x <= &Rat::ZERO) {
        return Err(QoError::Domain(
            "face must be exposed by a strictly positive functional".into(),
        ));
    }
    let poly = newton_polytope(g)?;
    let Some(minval) = poly.support(v) else {
        return Err(QoError::Domain("empty polytope has no faces".into()));
    };
    let d = g.dim();
    let mut coeffs = Vec::new();
    for j in 0..=g.degree().unwrap_or(0) {
        let s = g.coeff(j);
        let mut kept = FractionalSeries::zero(d);
        for (e, c) in s.terms() {
            let mut p = e.0.clone();
            p.push(Rat::integer(j as i64));
            if ExpVec(p).dot(v) == minval {
                kept.add_term(e.clone(), c.clone());
            }
        }
        coeffs.push(kept);
    }
    Ok(SeriesYPoly::from_coeffs(d, coeffs))
}

/// A Rond-Schober reducibility certificate: Delta(g) fits inside {mq over m}
/// with an edge from (0,m) to (i0 q, m - i0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityCertificate {
    pub q: ExpVec,
    pub i0: usize,
}

/// One-directional reducibility test. `Ok(None)` means "no certificate",
/// never "irreducible".
pub fn rond_schober_reducible(g: &SeriesYPoly) -> Result<Option<ReducibilityCertificate>> {
    let m = g.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
    if !g.is_weierstrass() || m < 2 {
        return Err(QoError::Domain(
            "Rond-Schober test needs a Weierstrass polynomial of degree >= 2".into(),
        ));
    }
    if !g.is_exact() {
        return Err(QoError::Indeterminate(
            "cannot certify polytope inclusions at finite precision".into(),
        ));
    }
    let _d = g.dim();
    // candidate q values come from coefficients that are monomial-ordered:
    // c_{i0} must generate the ideal x^{i0 q} exactly
    for i0 in 1..m {
        let c = g.coeff(m - i0); // coefficient of y^{m-i0}, i.e. c_{i0}
        let InitialData::Monomial { exp, .. } = c.initial_data() else {
            continue;
        };
        let q = exp.scale(&(Rat::ONE / Rat::integer(i0 as i64)));
        // check c_i subset x^{iq} K for all i, strict at i = m
        let mut ok = true;
        for i in 1..=m {
            let ci = g.coeff(m - i);
            let bound = q.scale(&Rat::integer(i as i64));
            for (e, _) in ci.terms() {
                if !bound.le_comp(e) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        // strict inclusion at i = m: c_m is not x^{mq} times a unit
        let cm = g.coeff(0);
        let strict = match cm.initial_data() {
            InitialData::Monomial { exp, .. } => exp != q.scale(&Rat::integer(m as i64)),
            _ => true, // zero or not monomial-ordered: the ideal is strictly smaller
        };
        if strict {
            return Ok(Some(ReducibilityCertificate { q, i0 }));
        }
    }
    Ok(None)
}

// ---- exact phase-1 simplex ----

/// Is p in conv(points) + first orthant? Solved as feasibility of
/// sum lambda_i s_i + t = p, sum lambda_i = 1, lambda, t >= 0.
fn point_in_hull(p: &ExpVec, points: &[&ExpVec]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = p.dim();
    let k = points.len();
    let rows = dim + 1;
    let cols = k + dim;
    let mut a = vec![vec![Rat::ZERO; cols]; rows];
    let mut b = vec![Rat::ZERO; rows];
    for r in 0..dim {
        for (j, s) in points.iter().enumerate() {
            a[r][j] = s.0[r].clone();
        }
        a[r][k + r] = Rat::ONE;
        b[r] = p.0[r].clone();
    }
    for j in 0..k {
        a[rows - 1][j] = Rat::ONE;
    }
    b[rows - 1] = Rat::ONE;
    lp_feasible(a, b)
}

/// Phase-1 simplex with Bland's rule: does {Ax = b, x >= 0} admit a solution?
fn lp_feasible(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> bool {
    let m = a.len();
    let n = a[0].len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // tableau with m artificial columns
    let total = n + m;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a[i].clone();
        row.extend((0..m).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }));
        row.push(b[i].clone());
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..total).collect();
    loop {
        // reduced costs for the phase-1 objective (sum of artificials)
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            // cost_j - sum over rows with artificial basis of t[i][j]
            let mut red = if j >= n { Rat::ONE } else { Rat::ZERO };
            for i in 0..m {
                if basis[i] >= n {
                    red = &red - &t[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(e) = entering else {
            // optimal: feasible iff all artificial basics are zero
            let mut obj = Rat::ZERO;
            for i in 0..m {
                if basis[i] >= n {
                    obj += &t[i][total];
                }
            }
            return obj.is_zero();
        };
        // ratio test, Bland tie-break on basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][e] > Rat::ZERO {
                let ratio = &t[i][total] / &t[i][e];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            return true; // unbounded phase-1 cannot happen; be permissive
        };
        // pivot at (l, e)
        let piv = t[l][e].clone();
        for x in t[l].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != l && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..=total {
                    let s = &t[l][j] * &f;
                    t[i][j] = &t[i][j] - &s;
                }
            }
        }
        basis[l] = e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;

    fn pt(v: &[(i64, i64)]) -> ExpVec {
        ExpVec(v.iter().map(|&(n, d)| Rat::new(n, d)).collect())
    }

    #[test]
    fn vertex_reduction() {
        // y^8 + x1^4 x2^2 -> vertices {(0,0,8),(4,2,0)}
        let p = NewtonPolytope::from_points(
            3,
            vec![pt(&[(0, 1), (0, 1), (8, 1)]), pt(&[(4, 1), (2, 1), (0, 1)])],
        );
        assert_eq!(p.vertices().len(), 2);
        // midpoints and dominated points are not vertices
        let q = NewtonPolytope::from_points(
            3,
            vec![
                pt(&[(0, 1), (0, 1), (8, 1)]),
                pt(&[(4, 1), (2, 1), (0, 1)]),
                pt(&[(2, 1), (1, 1), (4, 1)]), // midpoint
                pt(&[(5, 1), (2, 1), (1, 1)]), // dominated
            ],
        );
        assert_eq!(p, q);
    }

    #[test]
    fn elementary_and_minkowski() {
        let d = 2usize;
        let e1 = ElementaryPolytope { q: Some(pt(&[(3, 1), (2, 1)])), k: 2 };
        let e2 = ElementaryPolytope { q: Some(pt(&[(3, 1), (2, 1)])), k: 2 };
        // equal inclinations merge: {q1,k1}+{q2,k2} = {q1+q2, k1+k2}
        let sum = e1.to_polytope(d).minkowski_sum(&e2.to_polytope(d)).unwrap();
        let merged = ElementaryPolytope { q: Some(pt(&[(6, 1), (4, 1)])), k: 4 };
        assert_eq!(sum, merged.to_polytope(d));
        // identity element
        let origin = NewtonPolytope::monomial(&pt(&[(0, 1), (0, 1), (0, 1)]));
        assert_eq!(sum.minkowski_sum(&origin).unwrap(), sum);
        // dimension mismatch errors
        assert!(sum.minkowski_sum(&NewtonPolytope::monomial(&pt(&[(1, 1)]))).is_err());
    }

    #[test]
    fn decomposition_walks_edges() {
        // {(3,2) over 2} + {(5,2) over 1}: a polygon with two inclinations
        let a = ElementaryPolytope { q: Some(pt(&[(3, 1), (2, 1)])), k: 2 };
        let b = ElementaryPolytope { q: Some(pt(&[(5, 1), (2, 1)])), k: 1 };
        let p = a.to_polytope(2).minkowski_sum(&b.to_polytope(2)).unwrap();
        let dec = p.canonical_decomposition().unwrap();
        assert_eq!(dec, vec![a.clone(), b.clone()]);
        // elementary input decomposes to itself
        assert_eq!(a.to_polytope(2).canonical_decomposition().unwrap(), vec![a.clone()]);
        // Delta(y^k) -> {inf over k}
        let yk = NewtonPolytope::monomial(&pt(&[(0, 1), (0, 1), (3, 1)]));
        assert_eq!(
            yk.canonical_decomposition().unwrap(),
            vec![ElementaryPolytope { q: None, k: 3 }]
        );
        // x1 + x2 has a horizontal compact edge: no elementary decomposition
        let flat = NewtonPolytope::from_points(
            3,
            vec![pt(&[(1, 1), (0, 1), (0, 1)]), pt(&[(0, 1), (1, 1), (0, 1)])],
        );
        assert!(flat.canonical_decomposition().is_err());
    }

    #[test]
    fn projection_and_support() {
        let e = ElementaryPolytope { q: Some(pt(&[(3, 1), (2, 1)])), k: 2 };
        let p = e.to_polytope(2);
        let proj = p.project(&[Rat::ONE, Rat::ONE]);
        let expect = ElementaryPolytope { q: Some(pt(&[(5, 1)])), k: 2 }.to_polytope(1);
        assert_eq!(proj, expect);
        // support function is additive under Minkowski sums
        let b = ElementaryPolytope { q: Some(pt(&[(5, 1), (2, 1)])), k: 1 }.to_polytope(2);
        let s = p.minkowski_sum(&b).unwrap();
        for v in [
            vec![Rat::ONE, Rat::ONE, Rat::ONE],
            vec![Rat::new(1, 2), Rat::integer(2), Rat::ONE],
            vec![Rat::integer(3), Rat::ONE, Rat::new(2, 5)],
        ] {
            assert_eq!(
                s.support(&v).unwrap(),
                &p.support(&v).unwrap() + &b.support(&v).unwrap()
            );
        }
    }

    #[test]
    fn contact_order_cases() {
        let a = NewtonPolytope::monomial(&pt(&[(5, 1), (2, 1)]));
        let b = NewtonPolytope::monomial(&pt(&[(3, 2), (1, 1)]));
        // (5,2) >= (3/2,1) so Delta(x^(5,2)) is inside: order "succeeds"
        assert_eq!(a.contact_order(&b).unwrap(), PolytopeOrder::Succeeds);
        assert_eq!(a.contact_order(&a).unwrap(), PolytopeOrder::Equal);
        let c = NewtonPolytope::monomial(&pt(&[(1, 1), (0, 1)]));
        let d = NewtonPolytope::monomial(&pt(&[(0, 1), (1, 1)]));
        assert_eq!(c.contact_order(&d).unwrap(), PolytopeOrder::Incomparable);
        // empty polytope sits at the top
        let empty = NewtonPolytope::empty(2);
        assert_eq!(empty.contact_order(&a).unwrap(), PolytopeOrder::Succeeds);
    }

    #[test]
    fn rond_schober_cases() {
        use crate::series::FractionalSeries;
        let d = 1usize;
        let one = FractionalSeries::constant(d, Cyclo::one());
        let x = FractionalSeries::monomial(ExpVec(vec![Rat::ONE]), Cyclo::one());
        // y^2 - xy: certificate q=1, i0=1
        let g = SeriesYPoly::from_coeffs(d, vec![FractionalSeries::zero(d), x.neg(), one.clone()]);
        let cert = rond_schober_reducible(&g).unwrap().unwrap();
        assert_eq!(cert.q, ExpVec(vec![Rat::ONE]));
        assert_eq!(cert.i0, 1);
        // y^2 - x: no certificate
        let g = SeriesYPoly::from_coeffs(d, vec![x.neg(), FractionalSeries::zero(d), one.clone()]);
        assert!(rond_schober_reducible(&g).unwrap().is_none());
        // y^2 - x1 x2: equality only at i = m, no certificate
        let x1x2 = FractionalSeries::monomial(ExpVec(vec![Rat::ONE, Rat::ONE]), Cyclo::one());
        let one2 = FractionalSeries::constant(2, Cyclo::one());
        let g = SeriesYPoly::from_coeffs(2, vec![x1x2.neg(), FractionalSeries::zero(2), one2]);
        assert!(rond_schober_reducible(&g).unwrap().is_none());
    }
}
