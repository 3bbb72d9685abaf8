//! Compatibility of a Weierstrass polynomial with a pseudo-ball and the
//! resulting characteristic data (G_B, q(g,B)); the coprime split of k-th
//! derivatives; k-regularity; and the closed-form shape of derivatives of
//! (z^n - c)^e.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::{ExpVec, Height};
use crate::roots::RootSet;
use crate::series::FractionalSeries;
use crate::tree::KuoLuTree;
use crate::unipoly::UniPoly;
use crate::ypoly::SeriesYPoly;

/// Characteristic data of g at a pseudo-ball: g(lambda + z x^h) =
/// G(z) x^q + higher. The monic normalization is stored alongside the true
/// leading constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicData {
    pub poly_monic: UniPoly,
    pub lead: Cyclo,
    pub q: ExpVec,
}

impl CharacteristicData {
    pub fn poly_raw(&self) -> UniPoly {
        self.poly_monic.scale(&self.lead)
    }

    pub fn degree(&self) -> usize {
        self.poly_monic.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compatibility {
    Compatible(CharacteristicData),
    /// The substituted series has a non-monomial Newton polytope.
    Incompatible,
}

/// Characteristic data by direct substitution y = lambda + z x^h.
/// This is the defining computation and serves as the oracle side against
/// the closed form over known roots.
pub fn characteristic_data(
    g: &SeriesYPoly,
    lambda: &FractionalSeries,
    h: &ExpVec,
) -> Result<Compatibility> {
    let coeffs = g.center_substitution(lambda, h);
    // minimal exponents of the union support
    let mut minimals: Vec<ExpVec> = Vec::new();
    let mut all_dominated = true;
    for s in &coeffs {
        for (e, _) in s.terms() {
            if minimals.iter().any(|m| m.le_comp(e)) {
                continue;
            }
            minimals.retain(|m| !e.le_comp(m));
            minimals.push(e.clone());
        }
    }
    if minimals.is_empty() {
        return Err(QoError::Indeterminate(
            "substituted polynomial is zero within precision".into(),
        ));
    }
    if minimals.len() > 1 {
        return Ok(Compatibility::Incompatible);
    }
    let q = minimals.pop().unwrap();
    for s in &coeffs {
        for (e, _) in s.terms() {
            if !q.le_comp(e) {
                all_dominated = false;
            }
        }
        if let Some(p) = s.precision() {
            if &q.total() >= p {
                return Err(QoError::Indeterminate(
                    "precision too low to certify the initial exponent".into(),
                ));
            }
        }
    }
    if !all_dominated {
        return Ok(Compatibility::Incompatible);
    }
    let z_coeffs: Vec<Cyclo> = coeffs.iter().map(|s| s.coeff(&q)).collect();
    let poly = UniPoly::from_coeffs(z_coeffs);
    let (poly_monic, lead) = poly.monic();
    Ok(Compatibility::Compatible(CharacteristicData { poly_monic, lead, q }))
}

/// Characteristic data of the sub-product prod (y - alpha_i) over a subset
/// of the tree's roots, via the closed forms
/// G_B = const * prod_{alpha in B} (z - lc_B alpha) and
/// q = sum_i min(O(lambda_B, alpha_i), h(B)).
pub fn characteristic_from_roots(
    rs: &RootSet,
    tree: &KuoLuTree,
    bar: usize,
    subset: &[usize],
) -> Result<CharacteristicData> {
    let b = &tree.bars[bar];
    let Height::Finite(_h) = &b.height else {
        return Err(QoError::Domain("characteristic data needs a finite bar".into()));
    };
    let mut poly = UniPoly::one();
    let mut constant = Cyclo::one();
    for &i in subset {
        if b.members.contains(&i) {
            let lc = tree.leading_coeff(rs, bar, i);
            poly = &poly * &UniPoly::from_coeffs(vec![-&lc, Cyclo::one()]);
        } else {
            // initial coefficient of lambda_B - alpha_i at the contact exponent
            let diff = b.center.sub(&rs.roots[i].series);
            match diff.initial_data() {
                crate::series::InitialData::Monomial { coeff, .. } => {
                    constant = &constant * &coeff;
                }
                _ => {
                    return Err(QoError::Internal(
                        "root outside bar without monomial-ordered difference".into(),
                    ))
                }
            }
        }
    }
    let q = tree.q_exponent(rs, bar, subset)?;
    let scaled = poly.scale(&constant);
    let (poly_monic, lead) = scaled.monic();
    Ok(CharacteristicData { poly_monic, lead, q })
}

/// F_B of the full input at a bar.
pub fn bar_characteristic(rs: &RootSet, tree: &KuoLuTree, bar: usize) -> Result<CharacteristicData> {
    let all: Vec<usize> = (0..rs.len()).collect();
    characteristic_from_roots(rs, tree, bar, &all)
}

/// The coprime split F^(k) = F_plus * F_minus, with F_plus carrying the
/// multiplicity > k part of F. Computed from the squarefree decomposition,
/// never from roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularitySplit {
    pub f_plus: UniPoly,
    pub f_minus: UniPoly,
    pub k_regular: bool,
}

pub fn derivative_split(f: &UniPoly, k: usize) -> Result<RegularitySplit> {
    let n = f.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
    if k < 1 || k >= n {
        return Err(QoError::Domain(format!("split order k={k} out of range 1..{n}")));
    }
    let dec = f.squarefree_decomposition()?;
    let mut f_plus = UniPoly::one();
    for (&m, s) in &dec {
        if m > k {
            f_plus = &f_plus * &s.pow(m - k);
        }
    }
    let fk = f.derivative_k(k);
    let f_minus = fk.div_exact(&f_plus)?;
    let k_regular = f.gcd(&f_minus).is_constant();
    Ok(RegularitySplit { f_plus, f_minus, k_regular })
}

/// Is F k-regular? Handles the degenerate k >= deg F case (derivative zero).
pub fn is_k_regular(f: &UniPoly, k: usize) -> Result<bool> {
    let n = f.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
    if k >= n {
        return Ok(true);
    }
    if k == 0 {
        return Ok(true);
    }
    Ok(derivative_split(f, k)?.k_regular)
}

/// Kuo-Lu k-regularity: every finite bar's characteristic polynomial is
/// k-regular. Returns the verdict and the failing bar ids.
pub fn kuo_lu_regular(rs: &RootSet, tree: &KuoLuTree, k: usize) -> Result<(bool, Vec<usize>)> {
    let mut failing = Vec::new();
    for b in tree.finite_bars() {
        let data = bar_characteristic(rs, tree, b)?;
        if !is_k_regular(&data.poly_monic, k)? {
            failing.push(b);
        }
    }
    Ok((failing.is_empty(), failing))
}

/// Exponent shape (a, b, d) of the k-th derivative of (z^n - c)^e:
/// C z^a (z^n - c)^b prod_{i=1}^{d} (z^n - c_i).
pub fn al_derivative_shape(n: usize, e: usize, k: usize) -> Result<(usize, usize, usize)> {
    if n < 1 || e < 1 || k < 1 || k >= e * n {
        return Err(QoError::Domain(format!(
            "shape parameters out of range: n={n}, e={e}, k={k}"
        )));
    }
    let a = (n - k % n) % n;
    let b = e.saturating_sub(k);
    let ceil = k.div_ceil(n);
    let d = e.min(k) - ceil;
    Ok((a, b, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::roots::Branch;

    fn e2(a: Rat, b: Rat) -> ExpVec {
        ExpVec(vec![a, b])
    }

    fn example() -> (RootSet, KuoLuTree, SeriesYPoly) {
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
        let tree = KuoLuTree::build(&rs).unwrap();
        let f = rs.expand_polynomial();
        (rs, tree, f)
    }

    #[test]
    fn example_characteristic_data() {
        let (rs, tree, f) = example();
        let b0 = tree.root_bar;
        let bar = &tree.bars[b0];
        let h = bar.height.finite().unwrap();
        // substitution route: f(z x^{(3/2,1)}) = z(z^2-1) x^{(9/2,3)} + ...
        let comp = characteristic_data(&f, &bar.center, h).unwrap();
        let Compatibility::Compatible(data) = comp else {
            panic!("expected compatible")
        };
        assert_eq!(data.poly_monic, UniPoly::from_ints(&[0, -1, 0, 1])); // z^3 - z
        assert_eq!(data.q, e2(Rat::new(9, 2), Rat::integer(3)));
        // closed form agrees including the constant
        let closed = bar_characteristic(&rs, &tree, b0).unwrap();
        assert_eq!(closed, data);

        // y - x1 - x2 is not compatible with B
        let mut s = FractionalSeries::monomial(e2(Rat::ONE, Rat::ZERO), Cyclo::one());
        s.add_term(e2(Rat::ZERO, Rat::ONE), Cyclo::one());
        let g = SeriesYPoly::from_coeffs(
            2,
            vec![s.neg(), FractionalSeries::constant(2, Cyclo::one())],
        );
        assert_eq!(
            characteristic_data(&g, &bar.center, h).unwrap(),
            Compatibility::Incompatible
        );
    }

    #[test]
    fn casas_substitution() {
        // y^3 + x^2 y at the ball of height 1 (d=1): (z^3+z, 3)
        let one = FractionalSeries::constant(1, Cyclo::one());
        let x2 = FractionalSeries::monomial(ExpVec(vec![Rat::integer(2)]), Cyclo::one());
        let g = SeriesYPoly::from_coeffs(
            1,
            vec![FractionalSeries::zero(1), x2, FractionalSeries::zero(1), one],
        );
        let comp =
            characteristic_data(&g, &FractionalSeries::zero(1), &ExpVec(vec![Rat::ONE])).unwrap();
        let Compatibility::Compatible(data) = comp else { panic!() };
        assert_eq!(data.poly_monic, UniPoly::from_ints(&[0, 1, 0, 1]));
        assert_eq!(data.q, ExpVec(vec![Rat::integer(3)]));
    }

    #[test]
    fn split_examples() {
        // F = z^3 + z, k=2: F_plus = 1, F_minus = 6z, not 2-regular
        let f = UniPoly::from_ints(&[0, 1, 0, 1]);
        let s = derivative_split(&f, 2).unwrap();
        assert!(s.f_plus.is_constant());
        assert_eq!(s.f_minus.monic().0, UniPoly::from_ints(&[0, 1]));
        assert!(!s.k_regular);
        // any polynomial is 1-regular
        assert!(derivative_split(&f, 1).unwrap().k_regular);
        // (z^n - c)^e is k-regular for all k
        let a = UniPoly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let p = a.pow(4);
        for k in 1..8 {
            assert!(is_k_regular(&p, k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn split_reconstructs_derivative() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-2, 0, 1]);
        let f = &a.pow(4) * &b.pow(2);
        for k in 1..f.degree().unwrap() {
            let s = derivative_split(&f, k).unwrap();
            let prod = &s.f_plus * &s.f_minus;
            assert_eq!(prod.monic().0, f.derivative_k(k).monic().0, "k={k}");
            // coprimality
            assert!(s.f_plus.gcd(&s.f_minus).is_constant());
        }
    }

    #[test]
    fn al_shape_examples() {
        assert_eq!(al_derivative_shape(2, 4, 3).unwrap(), (1, 1, 1));
        assert_eq!(al_derivative_shape(2, 2, 3).unwrap(), (1, 0, 0));
        assert_eq!(al_derivative_shape(3, 1, 1).unwrap(), (2, 0, 0));
        assert!(al_derivative_shape(2, 2, 4).is_err());
    }

    #[test]
    fn regularity_over_tree() {
        let (rs, tree, _) = example();
        // F_B = z^3 - z is not 2-regular: root bar fails
        let (ok, failing) = kuo_lu_regular(&rs, &tree, 2).unwrap();
        assert!(!ok);
        assert_eq!(failing, vec![tree.root_bar]);
        let (ok, _) = kuo_lu_regular(&rs, &tree, 1).unwrap();
        assert!(ok);
    }
}
