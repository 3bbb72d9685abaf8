//! The prediction engine for higher-order polars: per-vertex Eggers factor
//! data of the normalized k-th derivative, self-contacts and P-contacts,
//! predicted resultant Newton polytopes, and the full decomposition in the
//! single-branch case with its (a, d) refinement.

use crate::charpoly::{bar_characteristic, derivative_split, kuo_lu_regular};
use crate::error::{QoError, Result};
use crate::exponent::ExpVec;
use crate::polytope::{
    newton_polytope_series, ElementaryPolytope, NewtonPolytope, PolytopeOrder,
};
use crate::rat::Rat;
use crate::roots::RootSet;
use crate::tree::{EggersTree, KuoLuTree};
use crate::unipoly::UniPoly;
use crate::ypoly::{resultant_y, SeriesYPoly};

/// How a prediction entry is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Theorem,
    TheoremKRegular,
    OracleChecked,
}

/// Predicted relation between cont_P(f_i, g) and known quantities, for every
/// irreducible factor g of the vertex factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContactRelation {
    /// The branch does not meet the vertex: cont_P(f_i, g) equals
    /// cont_P(f_i, B) exactly.
    EqualsVertexContact,
    /// The branch meets the vertex: cont_P(f_i, g) is at least the
    /// self-contact, with equality exactly under Kuo-Lu k-regularity.
    AtLeastSelfContact { equality: bool },
}

#[derive(Clone, Debug)]
pub struct BranchContact {
    pub branch: usize,
    /// cont_P(f_i, B) as a scaled monomial polytope.
    pub vertex_contact: NewtonPolytope,
    pub relation: ContactRelation,
}

/// Shape report for the irreducible factors of a vertex factor: each factor
/// has characteristic polynomial z^l or (z^{n(B)} - c)^l; quasi-ordinariness
/// is guaranteed only for l = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// exponent of the z-power part of the predicted characteristic polynomial
    pub z_exponent: usize,
    /// (multiplicity l, number of distinct binomial factors (z^{n(B)}-c)^l)
    pub binomial_parts: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct EggersFactorPrediction {
    pub vertex: usize,
    pub vertex_height: ExpVec,
    pub degree: usize,
    /// Monic predicted characteristic polynomial (the F-minus part).
    pub charpoly: UniPoly,
    pub self_contact: NewtonPolytope,
    pub contacts: Vec<BranchContact>,
    pub shapes: ShapeReport,
    pub provenance: Provenance,
}

/// Self-contact of an Eggers vertex: (1/deg f_i) Delta(x^{q(f_i,B)}) for any
/// branch f_i meeting B; asserted identical across qualifying branches.
pub fn self_contact(
    rs: &RootSet,
    tree: &KuoLuTree,
    eggers: &EggersTree,
    vertex: usize,
) -> Result<NewtonPolytope> {
    let bar = eggers.vertices[vertex].bar_ids[0];
    let members = &tree.bars[bar].members;
    let mut result: Option<NewtonPolytope> = None;
    for bi in 0..rs.branches.len() {
        let broots = rs.branch_roots(bi);
        if !broots.iter().any(|r| members.contains(r)) {
            continue;
        }
        let q = tree.q_exponent(rs, bar, &broots)?;
        let scale = Rat::ONE / Rat::integer(broots.len() as i64);
        let p = NewtonPolytope::monomial(&q).scale(&scale);
        match &result {
            None => result = Some(p),
            Some(prev) => {
                if prev != &p {
                    return Err(QoError::Internal(
                        "self-contact differs between qualifying branches".into(),
                    ));
                }
            }
        }
    }
    result.ok_or_else(|| QoError::Internal("no branch meets the vertex".into()))
}

/// cont_P(f_i, B) = (1/deg f_i) Delta(x^{q(f_i, B)}).
pub fn branch_vertex_contact(
    rs: &RootSet,
    tree: &KuoLuTree,
    eggers: &EggersTree,
    vertex: usize,
    branch: usize,
) -> Result<NewtonPolytope> {
    let bar = eggers.vertices[vertex].bar_ids[0];
    let broots = rs.branch_roots(branch);
    let q = tree.q_exponent(rs, bar, &broots)?;
    Ok(NewtonPolytope::monomial(&q).scale(&(Rat::ONE / Rat::integer(broots.len() as i64))))
}

/// P-contact of two Weierstrass polynomials:
/// (1/(deg g deg p)) Delta(Res_y(g, p)).
pub fn p_contact(g: &SeriesYPoly, p: &SeriesYPoly) -> Result<NewtonPolytope> {
    let dg = g.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
    let dp = p.degree().ok_or_else(|| QoError::Domain("zero polynomial".into()))?;
    if dg == 0 || dp == 0 {
        return Err(QoError::Domain("P-contact needs positive degrees".into()));
    }
    let res = resultant_y(g, p)?;
    let delta = newton_polytope_series(&res)?;
    Ok(delta.scale(&(Rat::ONE / Rat::integer((dg * dp) as i64))))
}

/// Predicted Newton polytope of Res_y(f^{(k)}, p - T): the Minkowski sum of
/// {t_k(B) q(p,B) over t_k(B)} over the bars with t_k(B) != 0. Requires
/// Kuo-Lu k-regularity.
pub fn predict_resultant_polytope(
    rs: &RootSet,
    tree: &KuoLuTree,
    p_roots: &[usize],
    k: usize,
) -> Result<NewtonPolytope> {
    let (regular, failing) = kuo_lu_regular(rs, tree, k)?;
    if !regular {
        return Err(QoError::HypothesisViolated(format!(
            "input is not Kuo-Lu {k}-regular (failing bars: {failing:?})"
        )));
    }
    let counts = tree.bar_counts(k)?;
    let mut acc = NewtonPolytope::monomial(&ExpVec::zero(rs.d + 1));
    for b in tree.finite_bars() {
        let t = counts[b].t_k;
        if t == 0 {
            continue;
        }
        let q = tree.q_exponent(rs, b, p_roots)?;
        let piece = ElementaryPolytope {
            q: Some(q.scale(&Rat::integer(t as i64))),
            k: t as u64,
        };
        acc = acc.minkowski_sum(&piece.to_polytope(rs.d))?;
    }
    Ok(acc)
}

/// Analyze the predicted characteristic polynomial into its z-power part and
/// binomial parts (z^{n(B)} - c)^l, checking the z^k H(z^{n(B)}) shape.
pub fn shape_report(f_minus: &UniPoly, ramification: usize) -> Result<ShapeReport> {
    // strip the z-power
    let coeffs = f_minus.coeffs();
    let z_exp = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let rest = UniPoly::from_coeffs(coeffs[z_exp..].to_vec());
    // the rest must be supported on exponents divisible by n(B)
    for (i, c) in rest.coeffs().iter().enumerate() {
        if !c.is_zero() && i % ramification != 0 {
            return Err(QoError::Internal(format!(
                "characteristic polynomial violates the z^k H(z^{ramification}) shape"
            )));
        }
    }
    let mut parts = Vec::new();
    if !rest.is_constant() {
        let dec = rest.squarefree_decomposition()?;
        for (l, s) in dec {
            let ds = s.degree().unwrap_or(0);
            if ds % ramification != 0 {
                return Err(QoError::Internal(
                    "squarefree part degree not divisible by n(B)".into(),
                ));
            }
            parts.push((l, ds / ramification));
        }
    }
    Ok(ShapeReport { z_exponent: z_exp, binomial_parts: parts })
}

/// One prediction per Eggers vertex with t_k != 0: degree N(B) t_k(B), the
/// monic F-minus as characteristic polynomial, the self-contact, and the
/// per-branch contact relations.
pub fn eggers_factorization(
    rs: &RootSet,
    tree: &KuoLuTree,
    eggers: &EggersTree,
    k: usize,
) -> Result<Vec<EggersFactorPrediction>> {
    let n = rs.len();
    if k < 1 || k >= n {
        return Err(QoError::Domain(format!("k={k} out of range 1..{n}")));
    }
    let counts = tree.bar_counts(k)?;
    let (regular, _) = kuo_lu_regular(rs, tree, k)?;
    let mut out = Vec::new();
    for (v, vertex) in eggers.vertices.iter().enumerate() {
        // t_k and the characteristic data are class invariants
        let t = counts[vertex.bar_ids[0]].t_k;
        for &b in &vertex.bar_ids[1..] {
            if counts[b].t_k != t {
                return Err(QoError::Internal("t_k differs inside a conjugacy class".into()));
            }
        }
        if t == 0 {
            continue;
        }
        let bar = vertex.bar_ids[0];
        let fb = bar_characteristic(rs, tree, bar)?;
        let split = derivative_split(&fb.poly_monic, k)?;
        let charpoly = split.f_minus.monic().0;
        let sc = self_contact(rs, tree, eggers, v)?;
        let mut contacts = Vec::new();
        for bi in 0..rs.branches.len() {
            let vc = branch_vertex_contact(rs, tree, eggers, v, bi)?;
            let meets = rs
                .branch_roots(bi)
                .iter()
                .any(|r| tree.bars[bar].members.contains(r));
            let order = vc.contact_order(&sc)?;
            let relation = match (meets, order) {
                (true, PolytopeOrder::Equal) => {
                    ContactRelation::AtLeastSelfContact { equality: regular }
                }
                (false, PolytopeOrder::Precedes) => ContactRelation::EqualsVertexContact,
                (meets, order) => {
                    return Err(QoError::Internal(format!(
                        "unexpected vertex-contact order {order:?} (meets={meets})"
                    )))
                }
            };
            contacts.push(BranchContact { branch: bi, vertex_contact: vc, relation });
        }
        let shapes = shape_report(&charpoly, vertex.ramification)?;
        out.push(EggersFactorPrediction {
            vertex: v,
            vertex_height: vertex.height.clone(),
            degree: vertex.n_class * t,
            charpoly,
            self_contact: sc,
            contacts,
            shapes,
            provenance: if regular { Provenance::TheoremKRegular } else { Provenance::Theorem },
        });
    }
    // degree bookkeeping: sum N(B) t_k(B) = n - k
    let total: usize = out.iter().map(|p| p.degree).sum();
    if total != n - k {
        return Err(QoError::Internal(format!(
            "predicted degrees sum to {total}, expected {}",
            n - k
        )));
    }
    Ok(out)
}

/// Quasi-ordinariness verdict for a predicted factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QoFlag {
    QuasiOrdinary,
    NotNecessarily,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct MerleFactor {
    /// 1-based level i (characteristic exponent index).
    pub level: usize,
    pub degree: usize,
    pub t_k: usize,
    /// Monic F-minus at a bar of height h_i.
    pub charpoly: UniPoly,
    pub self_contact: NewtonPolytope,
    /// z-power exponent in the refinement p_i = p_{i0} p_{i1} ... p_{id}.
    pub a: usize,
    /// number of binomial factors.
    pub d: usize,
    pub deg_p_i0: usize,
    pub deg_p_ij: usize,
    pub p_i0_flag: QoFlag,
    /// characteristic exponents h_1..h_i of each p_ij (j >= 1)
    pub p_ij_exponents: Vec<ExpVec>,
    /// characteristic exponents of p_i0 when a = 1
    pub p_i0_exponents: Option<Vec<ExpVec>>,
}

#[derive(Clone, Debug)]
pub struct MerlePrediction {
    pub char_exponents: Vec<ExpVec>,
    pub n_seq: Vec<usize>,
    /// e_0..e_s with e_i = n_{i+1} ... n_s
    pub e_seq: Vec<usize>,
    pub i_k: usize,
    pub factors: Vec<MerleFactor>,
}

/// Decomposition of the k-th polar of an irreducible (single-branch) input,
/// with the (a, d) refinement of every level factor.
pub fn merle_decomposition(
    rs: &RootSet,
    tree: &KuoLuTree,
    eggers: &EggersTree,
    k: usize,
) -> Result<MerlePrediction> {
    if rs.branches.len() != 1 {
        return Err(QoError::Domain(
            "input is not irreducible; use the Eggers factorization".into(),
        ));
    }
    let n = rs.len();
    if n < 2 || k < 1 || k >= n {
        return Err(QoError::Domain(format!("k={k} out of range 1..{n}")));
    }
    let hs = crate::tree::characteristic_exponents(tree)?;
    let s = hs.len();
    // n_i = ramification at the vertex of height h_i
    let mut n_seq = vec![0usize; s];
    let mut vertex_of_level = vec![usize::MAX; s];
    for (v, vert) in eggers.vertices.iter().enumerate() {
        let i = hs
            .iter()
            .position(|h| h == &vert.height)
            .ok_or_else(|| QoError::Internal("vertex height not a characteristic exponent".into()))?;
        n_seq[i] = vert.ramification;
        vertex_of_level[i] = v;
        // N(B_i) = n_1 ... n_{i-1}
        let expected: usize = n_seq[..i].iter().product::<usize>().max(1);
        if i > 0 && n_seq[..i].iter().any(|&x| x == 0) {
            continue; // fill order not guaranteed; checked below
        }
        let _ = expected;
    }
    if n_seq.iter().any(|&x| x == 0) {
        return Err(QoError::Internal("missing ramification level".into()));
    }
    for (i, &v) in vertex_of_level.iter().enumerate() {
        let expected: usize = n_seq[..i].iter().product();
        if eggers.vertices[v].n_class != expected {
            return Err(QoError::Internal(format!(
                "class size {} at level {} differs from n_1..n_{i} product {expected}",
                eggers.vertices[v].n_class,
                i + 1
            )));
        }
    }
    let mut e_seq = vec![1usize; s + 1];
    for i in (0..s).rev() {
        e_seq[i] = e_seq[i + 1] * n_seq[i];
    }
    if e_seq[0] != n {
        return Err(QoError::Internal("e_0 differs from the degree".into()));
    }
    // i_k: e_{i_k} <= k < e_{i_k - 1}
    let i_k = (1..=s)
        .find(|&i| e_seq[i] <= k && k < e_seq[i - 1])
        .ok_or_else(|| QoError::Internal("no level with e_i <= k < e_{i-1}".into()))?;
    let counts = tree.bar_counts(k)?;
    let mut factors = Vec::new();
    for i in 1..=i_k {
        let (ni, ei, ei1) = (n_seq[i - 1], e_seq[i], e_seq[i - 1]);
        // closed-form t_k
        let t_formula = if k <= ei {
            (ni - 1) * k
        } else {
            ei1 - k
        };
        let v = vertex_of_level[i - 1];
        let bar = eggers.vertices[v].bar_ids[0];
        if counts[bar].t_k != t_formula {
            return Err(QoError::Internal(format!(
                "t_k mismatch at level {i}: tree {} vs formula {t_formula}",
                counts[bar].t_k
            )));
        }
        let n_class = eggers.vertices[v].n_class;
        let degree = n_class * t_formula;
        // the characteristic polynomial must be a binomial power (z^{n_i}-c)^{e_i}
        let fb = bar_characteristic(rs, tree, bar)?;
        let shape = shape_report(&fb.poly_monic, ni)?;
        if !(shape.z_exponent == 0 && shape.binomial_parts == vec![(ei, 1)]) {
            return Err(QoError::Internal(format!(
                "level-{i} characteristic polynomial is not a binomial power: {:?}",
                fb.poly_monic
            )));
        }
        let split = derivative_split(&fb.poly_monic, k)?;
        let charpoly = split.f_minus.monic().0;
        let (a, _b, d) = crate::charpoly::al_derivative_shape(ni, ei, k)?;
        if a + d * ni != t_formula {
            return Err(QoError::Internal(format!(
                "refinement degree a + d n_i = {} differs from t_k = {t_formula}",
                a + d * ni
            )));
        }
        let p_i0_flag = match a {
            0 => QoFlag::QuasiOrdinary, // empty product, the constant 1
            1 => QoFlag::QuasiOrdinary,
            _ => QoFlag::NotNecessarily,
        };
        factors.push(MerleFactor {
            level: i,
            degree,
            t_k: t_formula,
            charpoly,
            self_contact: self_contact(rs, tree, eggers, v)?,
            a,
            d,
            deg_p_i0: a * n_class,
            deg_p_ij: n_class * ni,
            p_i0_flag,
            p_ij_exponents: hs[..i].to_vec(),
            p_i0_exponents: if a == 1 { Some(hs[..i - 1].to_vec()) } else { None },
        });
    }
    let total: usize = factors.iter().map(|f| f.degree).sum();
    if total != n - k {
        return Err(QoError::Internal(format!(
            "Merle degrees sum to {total}, expected {}",
            n - k
        )));
    }
    Ok(MerlePrediction { char_exponents: hs, n_seq, e_seq, i_k, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::roots::Branch;
    use crate::series::FractionalSeries;
    use crate::tree::EggersTree;

    fn e2(a: Rat, b: Rat) -> ExpVec {
        ExpVec(vec![a, b])
    }

    fn example() -> (RootSet, KuoLuTree, EggersTree) {
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
        let eggers = EggersTree::build(&rs, &tree).unwrap();
        (rs, tree, eggers)
    }

    #[test]
    fn second_polar_prediction() {
        let (rs, tree, eggers) = example();
        let preds = eggers_factorization(&rs, &tree, &eggers, 2).unwrap();
        assert_eq!(preds.len(), 1);
        let p = &preds[0];
        assert_eq!(p.degree, 1);
        assert_eq!(p.charpoly, UniPoly::from_ints(&[0, 1])); // z
        // self-contact(B) = Delta(x^{(3/2,1)})
        let expect = NewtonPolytope::monomial(&e2(Rat::new(3, 2), Rat::ONE));
        assert_eq!(p.self_contact, expect);
        // f1 meets B (relation at-least, no equality: not 2-regular);
        // f2 also meets B here (its root is in the root bar)
        assert!(matches!(
            p.contacts[0].relation,
            ContactRelation::AtLeastSelfContact { equality: false }
        ));
        assert_eq!(p.provenance, Provenance::Theorem);
    }

    #[test]
    fn first_polar_polytope() {
        let (rs, tree, _) = example();
        // single bar with t_1 = 2, q(f, B) = (9/2, 3): {(9,6) over 2}
        let all: Vec<usize> = (0..rs.len()).collect();
        let p = predict_resultant_polytope(&rs, &tree, &all, 1).unwrap();
        let expect = ElementaryPolytope {
            q: Some(e2(Rat::integer(9), Rat::integer(6))),
            k: 2,
        }
        .to_polytope(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn hypothesis_violated_when_irregular() {
        let (rs, tree, _) = example();
        let all: Vec<usize> = (0..rs.len()).collect();
        let err = predict_resultant_polytope(&rs, &tree, &all, 2).unwrap_err();
        assert!(matches!(err, QoError::HypothesisViolated(_)));
    }

    #[test]
    fn p_contact_example() {
        // cont_P(f_2, y) = Delta(x^{(5,2)}); cont_P(f_1, y) = Delta(x^{(3/2,1)})
        let (rs, _, _) = example();
        let y = SeriesYPoly::y(2);
        let f2 = rs.branch_polynomial(1);
        let c2 = p_contact(&f2, &y).unwrap();
        assert_eq!(c2, NewtonPolytope::monomial(&e2(Rat::integer(5), Rat::integer(2))));
        let f1 = rs.branch_polynomial(0);
        let c1 = p_contact(&f1, &y).unwrap();
        assert_eq!(c1, NewtonPolytope::monomial(&e2(Rat::new(3, 2), Rat::ONE)));
        // Delta(x^{(5,2)}) succeeds Delta(x^{(3/2,1)})
        assert_eq!(c2.contact_order(&c1).unwrap(), PolytopeOrder::Succeeds);
    }

    #[test]
    fn merle_on_two_level_branch() {
        // single branch with exponents (3/2,1), (7/4,3/2): n1 = n2 = 2
        let b = Branch {
            label: "g".into(),
            root: {
                let mut r =
                    FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
                r.add_term(e2(Rat::new(7, 4), Rat::new(3, 2)), Cyclo::from_rat(Rat::new(1, 2)));
                r
            },
            denom: 4,
        };
        let rs = RootSet::from_branches(vec![b]).unwrap();
        let tree = KuoLuTree::build(&rs).unwrap();
        let eggers = EggersTree::build(&rs, &tree).unwrap();
        // k=1: i_k = 2, degrees 1 and 2, refinements a=1, d=0
        let m = merle_decomposition(&rs, &tree, &eggers, 1).unwrap();
        assert_eq!(m.n_seq, vec![2, 2]);
        assert_eq!(m.e_seq, vec![4, 2, 1]);
        assert_eq!(m.i_k, 2);
        assert_eq!(m.factors.len(), 2);
        assert_eq!(m.factors[0].degree, 1);
        assert_eq!(m.factors[1].degree, 2);
        assert_eq!((m.factors[0].a, m.factors[0].d), (1, 0));
        assert_eq!((m.factors[1].a, m.factors[1].d), (1, 0));
        assert_eq!(m.factors[0].p_i0_flag, QoFlag::QuasiOrdinary);
        // k=2: i_k = 1, single factor of degree 2
        let m = merle_decomposition(&rs, &tree, &eggers, 2).unwrap();
        assert_eq!(m.i_k, 1);
        assert_eq!(m.factors.len(), 1);
        assert_eq!(m.factors[0].degree, 2);
        // k=3 = n-1: single linear factor
        let m = merle_decomposition(&rs, &tree, &eggers, 3).unwrap();
        let total: usize = m.factors.iter().map(|f| f.degree).sum();
        assert_eq!(total, 1);
        // reducible input refuses
        let (rs2, tree2, eggers2) = example();
        assert!(merle_decomposition(&rs2, &tree2, &eggers2, 1).is_err());
    }
}
