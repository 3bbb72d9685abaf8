//! Branch inputs, the Galois action of roots of unity on fractional series,
//! conjugate generation and contact computation.
//!
//! The root multiset of a quasi-ordinary input is the union of the Galois
//! orbits of its declared branches; quasi-ordinarity is validated (all
//! pairwise contacts well-defined and comparable), never assumed.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::{ExpVec, Height};
use crate::series::{FractionalSeries, InitialData};
use crate::ypoly::SeriesYPoly;

/// One declared branch: a truncated Newton-Puiseux root plus a label.
#[derive(Clone, Debug)]
pub struct Branch {
    pub label: String,
    pub root: FractionalSeries,
    pub denom: i64,
}

/// An automorphism of the fractional-series ring fixing the coefficient
/// field: x_i^(a/N) -> zeta_i^a x_i^(a/N), one root of unity per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAutomorphism {
    /// Common exponent denominator N.
    pub n: i64,
    /// Per-variable indices a_i: the automorphism sends x_i^(1/N) to
    /// zeta_N^(a_i) x_i^(1/N).
    pub indices: Vec<i64>,
}

impl GaloisAutomorphism {
    pub fn identity(n: i64, d: usize) -> GaloisAutomorphism {
        GaloisAutomorphism { n, indices: vec![0; d] }
    }

    pub fn apply(&self, s: &FractionalSeries) -> FractionalSeries {
        let mut out = FractionalSeries::zero(s.dim()).with_precision(s.precision().cloned());
        for (e, c) in s.terms() {
            let mut k: i64 = 0;
            for (i, q) in e.0.iter().enumerate() {
                let scaled = q.scale_int(self.n);
                let v = scaled
                    .as_integer()
                    .expect("exponent denominator must divide the declared N");
                k = (k + self.indices[i] * (v % self.n)).rem_euclid(self.n);
            }
            let factor = Cyclo::root_of_unity(self.n as u32, k);
            out.add_term(e.clone(), &factor * c);
        }
        out
    }

    pub fn compose(&self, other: &GaloisAutomorphism) -> GaloisAutomorphism {
        assert_eq!(self.n, other.n);
        GaloisAutomorphism {
            n: self.n,
            indices: self
                .indices
                .iter()
                .zip(&other.indices)
                .map(|(a, b)| (a + b).rem_euclid(self.n))
                .collect(),
        }
    }
}

/// Enumerate the full group mu_N^d.
pub fn galois_group(n: i64, d: usize) -> Vec<GaloisAutomorphism> {
    let mut out = Vec::new();
    let mut idx = vec![0i64; d];
    loop {
        out.push(GaloisAutomorphism { n, indices: idx.clone() });
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            idx[i] += 1;
            if idx[i] < n {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Orbit of a series under mu_N^d, deduplicated and canonically ordered.
pub fn galois_orbit(root: &FractionalSeries, n: i64) -> Vec<FractionalSeries> {
    let mut orbit: Vec<FractionalSeries> = Vec::new();
    for phi in galois_group(n, root.dim()) {
        let img = phi.apply(root);
        if !orbit.iter().any(|s| s == &img) {
            orbit.push(img);
        }
    }
    orbit.sort_by(|a, b| a.canonical_cmp(b));
    orbit
}

/// Contact between two fractional series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    Finite(ExpVec),
    Infinite,
    NotWellDefined,
    /// Difference vanishes within precision but the series are not declared equal.
    Indeterminate,
}

impl Contact {
    pub fn to_height(&self) -> Option<Height> {
        match self {
            Contact::Finite(e) => Some(Height::Finite(e.clone())),
            Contact::Infinite => Some(Height::Infinite),
            _ => None,
        }
    }
}

/// O(alpha, beta): the exponent q with alpha - beta = x^q * unit; infinite
/// for (exactly) equal series.
pub fn contact(alpha: &FractionalSeries, beta: &FractionalSeries) -> Contact {
    let diff = alpha.sub(beta);
    match diff.initial_data() {
        InitialData::Monomial { exp, .. } => Contact::Finite(exp),
        InitialData::NotMonomialOrdered => Contact::NotWellDefined,
        InitialData::ExactZero => Contact::Infinite,
        InitialData::ZeroWithinPrecision => Contact::Indeterminate,
    }
}

/// A root of the expanded input, tagged with its branch of origin.
#[derive(Clone, Debug)]
pub struct Root {
    pub series: FractionalSeries,
    pub branch: usize,
    pub label: String,
}

/// The validated root multiset of a quasi-ordinary input.
pub struct RootSet {
    pub d: usize,
    /// Global exponent denominator (lcm over branches).
    pub n_den: i64,
    pub roots: Vec<Root>,
    pub branches: Vec<Branch>,
    /// contacts[i][j] as heights; diagonal is Infinite.
    pub contacts: Vec<Vec<Height>>,
}

impl RootSet {
    /// Expand branches into Galois orbits and validate quasi-ordinarity:
    /// every root of positive order, distinct truncations, all pairwise
    /// contacts well-defined, and contacts to a common root comparable.
    pub fn from_branches(branches: Vec<Branch>) -> Result<RootSet> {
        if branches.is_empty() {
            return Err(QoError::Domain("no branches".into()));
        }
        let d = branches[0].root.dim();
        let mut n_den: i64 = 1;
        for b in &branches {
            if b.root.dim() != d {
                return Err(QoError::Domain(format!(
                    "branch {} has {} variables, expected {}",
                    b.label,
                    b.root.dim(),
                    d
                )));
            }
            let lcm_b = b.root.denominator_lcm();
            if b.denom % lcm_b != 0 {
                return Err(QoError::Domain(format!(
                    "branch {}: exponent denominators do not divide declared denom {}",
                    b.label, b.denom
                )));
            }
            n_den = lcm(n_den, b.denom);
        }
        let mut roots: Vec<Root> = Vec::new();
        for (bi, b) in branches.iter().enumerate() {
            // roots of a Weierstrass polynomial are non-units
            if !b.root.has_positive_order() {
                return Err(QoError::Domain(format!(
                    "branch {} root must have positive order",
                    b.label
                )));
            }
            for (k, s) in galois_orbit(&b.root, n_den).into_iter().enumerate() {
                roots.push(Root {
                    series: s,
                    branch: bi,
                    label: format!("{}.{}", b.label, k + 1),
                });
            }
        }
        let n = roots.len();
        let mut contacts = vec![vec![Height::Infinite; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = contact(&roots[i].series, &roots[j].series);
                let h = match c {
                    Contact::Finite(e) => {
                        if !e.is_nonnegative() {
                            return Err(QoError::Internal(format!(
                                "negative contact between {} and {}",
                                roots[i].label, roots[j].label
                            )));
                        }
                        Height::Finite(e)
                    }
                    Contact::Infinite => {
                        return Err(QoError::Domain(format!(
                            "roots {} and {} coincide; distinct truncations are required",
                            roots[i].label, roots[j].label
                        )))
                    }
                    Contact::Indeterminate => {
                        return Err(QoError::Indeterminate(format!(
                            "contact of {} and {} vanishes within precision",
                            roots[i].label, roots[j].label
                        )))
                    }
                    Contact::NotWellDefined => {
                        return Err(QoError::NotQuasiOrdinary(format!(
                            "contact of {} and {} is not well-defined",
                            roots[i].label, roots[j].label
                        )))
                    }
                };
                contacts[i][j] = h.clone();
                contacts[j][i] = h;
            }
        }
        // comparability: contacts to a common third root form a chain
        for k in 0..n {
            for i in 0..n {
                for j in i + 1..n {
                    if i == k || j == k {
                        continue;
                    }
                    if !contacts[i][k].comparable(&contacts[j][k]) {
                        return Err(QoError::NotQuasiOrdinary(format!(
                            "contacts O({},{}) and O({},{}) are incomparable",
                            roots[i].label, roots[k].label, roots[j].label, roots[k].label
                        )));
                    }
                }
            }
        }
        Ok(RootSet { d, n_den, roots, branches, contacts })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Expanded polynomial prod (y - alpha_i); coefficients must come out
    /// with integer exponents when the orbits are complete.
    pub fn expand_polynomial(&self) -> SeriesYPoly {
        SeriesYPoly::from_roots(
            self.d,
            &self.roots.iter().map(|r| r.series.clone()).collect::<Vec<_>>(),
        )
    }

    /// Root indices of one branch.
    pub fn branch_roots(&self, branch: usize) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.roots[i].branch == branch).collect()
    }

    /// The branch factor prod (y - alpha) over one orbit.
    pub fn branch_polynomial(&self, branch: usize) -> SeriesYPoly {
        SeriesYPoly::from_roots(
            self.d,
            &self
                .roots
                .iter()
                .filter(|r| r.branch == branch)
                .map(|r| r.series.clone())
                .collect::<Vec<_>>(),
        )
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x.abs() * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn e2(a: Rat, b: Rat) -> ExpVec {
        ExpVec(vec![a, b])
    }

    #[test]
    fn orbit_examples() {
        // x1^{3/2} x2 -> {x1^{3/2}x2, -x1^{3/2}x2}
        let root = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
        let orbit = galois_orbit(&root, 2);
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&root));
        assert!(orbit.contains(&root.neg()));

        // integer exponents are fixed
        let fixed = FractionalSeries::monomial(e2(Rat::integer(5), Rat::integer(2)), Cyclo::one());
        assert_eq!(galois_orbit(&fixed, 2).len(), 1);

        // d=1: x^{3/2} has orbit size 2
        let r1 = FractionalSeries::monomial(ExpVec(vec![Rat::new(3, 2)]), Cyclo::one());
        assert_eq!(galois_orbit(&r1, 2).len(), 2);
    }

    #[test]
    fn orbit_of_two_term_root() {
        // x1^{3/2}x2 + (1/2) x1^{7/4}x2^{3/2}: four conjugates
        let mut root = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
        root.add_term(
            e2(Rat::new(7, 4), Rat::new(3, 2)),
            Cyclo::from_rat(Rat::new(1, 2)),
        );
        let orbit = galois_orbit(&root, 4);
        assert_eq!(orbit.len(), 4);
        // second coefficients come in pairs {1/2, -1/2} and {i/2, -i/2}
        let i = Cyclo::root_of_unity(4, 1);
        let half_i = i.scale(&Rat::new(1, 2));
        assert!(orbit
            .iter()
            .any(|s| s.coeff(&e2(Rat::new(7, 4), Rat::new(3, 2))) == half_i));
    }

    #[test]
    fn contact_examples() {
        let a = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
        let b = a.neg();
        assert_eq!(contact(&a, &b), Contact::Finite(e2(Rat::new(3, 2), Rat::ONE)));
        assert_eq!(contact(&a, &a), Contact::Infinite);
        let x1 = FractionalSeries::monomial(e2(Rat::ONE, Rat::ZERO), Cyclo::one());
        let x2 = FractionalSeries::monomial(e2(Rat::ZERO, Rat::ONE), Cyclo::one());
        assert_eq!(contact(&x1, &x2), Contact::NotWellDefined);
    }

    #[test]
    fn galois_preserves_contacts() {
        let mut root = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
        root.add_term(
            e2(Rat::new(7, 4), Rat::new(3, 2)),
            Cyclo::from_rat(Rat::new(1, 2)),
        );
        let other = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::sqrt_int(2));
        let phi = GaloisAutomorphism { n: 4, indices: vec![1, 2] };
        let c1 = contact(&root, &other);
        let c2 = contact(&phi.apply(&root), &phi.apply(&other));
        assert_eq!(c1, c2);
    }

    #[test]
    fn root_set_validation() {
        // the running example: two branches, three roots, one bar
        let b1 = Branch {
            label: "f1".into(),
            root: FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one()),
            denom: 2,
        };
        let b2 = Branch {
            label: "f2".into(),
            root: FractionalSeries::monomial(e2(Rat::integer(5), Rat::integer(2)), Cyclo::one()),
            denom: 1,
        };
        let rs = RootSet::from_branches(vec![b1, b2]).unwrap();
        assert_eq!(rs.len(), 3);
        let f = rs.expand_polynomial();
        assert!(f.is_weierstrass());
        assert_eq!(f.degree(), Some(3));

        // duplicate branches are rejected
        let dup = Branch {
            label: "g".into(),
            root: FractionalSeries::monomial(e2(Rat::integer(5), Rat::integer(2)), Cyclo::one()),
            denom: 1,
        };
        let dup2 = dup.clone();
        assert!(RootSet::from_branches(vec![dup, dup2]).is_err());
    }
}
