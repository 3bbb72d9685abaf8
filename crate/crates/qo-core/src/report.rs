//! Machine-readable report schema. Rationals serialize as "p/q" strings and
//! cyclotomic numbers as coefficient vectors with their conductor; no value
//! ever passes through floating point.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::{ExpVec, Height};
use crate::polar::{ContactRelation, EggersFactorPrediction, MerlePrediction, Provenance, QoFlag};
use crate::polytope::{ElementaryPolytope, NewtonPolytope};
use crate::rat::Rat;
use crate::roots::RootSet;
use crate::tree::{EggersTree, KuoLuTree};
use crate::unipoly::UniPoly;
use crate::verify::{ClaimStatus, VerificationReport};
use serde::{Deserialize, Serialize};

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    s.parse().map_err(|e: String| QoError::Domain(e))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CycloJson {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl CycloJson {
    pub fn of(c: &Cyclo) -> CycloJson {
        let r = c.reduced();
        CycloJson {
            conductor: r.conductor(),
            coeffs: r.coeffs().iter().map(rat_to_string).collect(),
        }
    }

    pub fn to_cyclo(&self) -> Result<Cyclo> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclo::from_coeffs(self.conductor, coeffs))
    }
}

pub fn exp_to_json(e: &ExpVec) -> Vec<String> {
    e.0.iter().map(rat_to_string).collect()
}

pub fn exp_from_json(v: &[String]) -> Result<ExpVec> {
    Ok(ExpVec(v.iter().map(|s| rat_from_string(s)).collect::<Result<Vec<_>>>()?))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum HeightJson {
    Infinite(String), // "inf"
    Finite(Vec<String>),
}

impl HeightJson {
    pub fn of(h: &Height) -> HeightJson {
        match h {
            Height::Finite(e) => HeightJson::Finite(exp_to_json(e)),
            Height::Infinite => HeightJson::Infinite("inf".into()),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolyJson {
    pub coeffs: Vec<CycloJson>,
    pub display: String,
}

impl PolyJson {
    pub fn of(p: &UniPoly) -> PolyJson {
        PolyJson {
            coeffs: p.coeffs().iter().map(CycloJson::of).collect(),
            display: p.to_string(),
        }
    }

    pub fn to_poly(&self) -> Result<UniPoly> {
        Ok(UniPoly::from_coeffs(
            self.coeffs.iter().map(|c| c.to_cyclo()).collect::<Result<Vec<_>>>()?,
        ))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ElementaryJson {
    /// None encodes the infinite inclination.
    pub q: Option<Vec<String>>,
    pub k: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<ElementaryJson>>,
}

impl PolytopeJson {
    pub fn of(p: &NewtonPolytope) -> PolytopeJson {
        let decomposition = p.canonical_decomposition().ok().map(|dec| {
            dec.iter()
                .map(|e: &ElementaryPolytope| ElementaryJson {
                    q: e.q.as_ref().map(exp_to_json),
                    k: e.k,
                })
                .collect()
        });
        PolytopeJson {
            vertices: p.vertices().iter().map(exp_to_json).collect(),
            decomposition,
        }
    }

    pub fn to_polytope(&self, dim: usize) -> Result<NewtonPolytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| exp_from_json(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(NewtonPolytope::from_points(dim, pts))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BranchJson {
    pub label: String,
    pub root: String,
    pub denom: i64,
    pub orbit_size: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct InputJson {
    pub vars: Vec<String>,
    pub denominator: i64,
    pub degree: usize,
    pub branches: Vec<BranchJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BarJson {
    pub id: usize,
    pub height: HeightJson,
    pub members: Vec<String>,
    pub center: String,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_point: Option<CycloJson>,
    pub m: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct KuoLuJson {
    pub root_bar: usize,
    pub bars: Vec<BarJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DashJson {
    pub branch: String,
    pub dashed: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EggersVertexJson {
    pub id: usize,
    pub height: Vec<String>,
    pub bars: Vec<usize>,
    pub n_class: usize,
    pub ramification: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub attached_branches: Vec<String>,
    pub dashed_edges: Vec<DashJson>,
    pub self_contact: Option<PolytopeJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EggersJson {
    pub root_vertex: usize,
    pub vertices: Vec<EggersVertexJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ContactJson {
    pub branch: String,
    pub vertex_contact: PolytopeJson,
    /// "equals-vertex-contact" or "at-least-self-contact"
    pub relation: String,
    pub equality: Option<bool>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PredictionJson {
    pub vertex: usize,
    pub height: Vec<String>,
    pub degree: usize,
    pub charpoly: PolyJson,
    pub self_contact: PolytopeJson,
    pub contacts: Vec<ContactJson>,
    pub z_exponent: usize,
    /// (multiplicity l, count); quasi-ordinary is guaranteed for l = 1
    pub binomial_parts: Vec<(usize, usize)>,
    pub provenance: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PolarJson {
    pub k: usize,
    pub kuo_lu_k_regular: bool,
    pub factors: Vec<PredictionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resultant_polytope: Option<PolytopeJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MerleFactorJson {
    pub level: usize,
    pub degree: usize,
    pub t_k: usize,
    pub charpoly: PolyJson,
    pub a: usize,
    pub d: usize,
    pub deg_p_i0: usize,
    pub deg_p_ij: usize,
    pub p_i0_flag: String,
    pub p_ij_exponents: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MerleJson {
    pub char_exponents: Vec<Vec<String>>,
    pub n_seq: Vec<usize>,
    pub e_seq: Vec<usize>,
    pub i_k: usize,
    pub factors: Vec<MerleFactorJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClaimJson {
    pub claim: String,
    pub predicted: String,
    pub oracle: String,
    pub status: String,
    pub substitutions: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerificationJson {
    pub entries: Vec<ClaimJson>,
    pub all_match: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kuo_lu: Option<KuoLuJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eggers: Option<EggersJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polar: Option<PolarJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub merle: Option<MerleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_contact: Option<PolytopeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rond_schober: Option<RondSchoberJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RondSchoberJson {
    /// None = "no certificate"
    pub certificate: Option<CertificateJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateJson {
    pub q: Vec<String>,
    pub i0: usize,
}

pub fn input_json(rs: &RootSet) -> InputJson {
    InputJson {
        vars: (1..=rs.d).map(|i| format!("x{i}")).collect(),
        denominator: rs.n_den,
        degree: rs.len(),
        branches: rs
            .branches
            .iter()
            .enumerate()
            .map(|(bi, b)| BranchJson {
                label: b.label.clone(),
                root: format!("{}", b.root),
                denom: b.denom,
                orbit_size: rs.branch_roots(bi).len(),
            })
            .collect(),
    }
}

pub fn kuo_lu_json(rs: &RootSet, tree: &KuoLuTree) -> KuoLuJson {
    KuoLuJson {
        root_bar: tree.root_bar,
        bars: tree
            .bars
            .iter()
            .enumerate()
            .map(|(id, b)| BarJson {
                id,
                height: HeightJson::of(&b.height),
                members: b.members.iter().map(|&m| rs.roots[m].label.clone()).collect(),
                center: format!("{}", b.center),
                parent: b.parent,
                children: b.children.clone(),
                support_point: b.support_point.as_ref().map(CycloJson::of),
                m: b.m(),
            })
            .collect(),
    }
}

pub fn eggers_json(
    rs: &RootSet,
    tree: &KuoLuTree,
    eggers: &EggersTree,
) -> Result<EggersJson> {
    let mut vertices = Vec::new();
    for (id, v) in eggers.vertices.iter().enumerate() {
        let sc = crate::polar::self_contact(rs, tree, eggers, id).ok();
        vertices.push(EggersVertexJson {
            id,
            height: exp_to_json(&v.height),
            bars: v.bar_ids.clone(),
            n_class: v.n_class,
            ramification: v.ramification,
            parent: v.parent,
            children: v.children.clone(),
            attached_branches: v
                .attached_branches
                .iter()
                .map(|&b| rs.branches[b].label.clone())
                .collect(),
            dashed_edges: v
                .dashed
                .iter()
                .map(|&(b, d)| DashJson { branch: rs.branches[b].label.clone(), dashed: d })
                .collect(),
            self_contact: sc.map(|p| PolytopeJson::of(&p)),
        });
    }
    Ok(EggersJson { root_vertex: eggers.root_vertex, vertices })
}

pub fn prediction_json(rs: &RootSet, p: &EggersFactorPrediction) -> PredictionJson {
    PredictionJson {
        vertex: p.vertex,
        height: exp_to_json(&p.vertex_height),
        degree: p.degree,
        charpoly: PolyJson::of(&p.charpoly),
        self_contact: PolytopeJson::of(&p.self_contact),
        contacts: p
            .contacts
            .iter()
            .map(|c| {
                let (relation, equality) = match &c.relation {
                    ContactRelation::EqualsVertexContact => {
                        ("equals-vertex-contact".to_string(), None)
                    }
                    ContactRelation::AtLeastSelfContact { equality } => {
                        ("at-least-self-contact".to_string(), Some(*equality))
                    }
                };
                ContactJson {
                    branch: rs.branches[c.branch].label.clone(),
                    vertex_contact: PolytopeJson::of(&c.vertex_contact),
                    relation,
                    equality,
                }
            })
            .collect(),
        z_exponent: p.shapes.z_exponent,
        binomial_parts: p.shapes.binomial_parts.clone(),
        provenance: match p.provenance {
            Provenance::Theorem => "theorem".to_string(),
            Provenance::TheoremKRegular => "theorem (k-regular clause)".to_string(),
            Provenance::OracleChecked => "oracle-checked".to_string(),
        },
    }
}

pub fn merle_json(m: &MerlePrediction) -> MerleJson {
    MerleJson {
        char_exponents: m.char_exponents.iter().map(exp_to_json).collect(),
        n_seq: m.n_seq.clone(),
        e_seq: m.e_seq.clone(),
        i_k: m.i_k,
        factors: m
            .factors
            .iter()
            .map(|f| MerleFactorJson {
                level: f.level,
                degree: f.degree,
                t_k: f.t_k,
                charpoly: PolyJson::of(&f.charpoly),
                a: f.a,
                d: f.d,
                deg_p_i0: f.deg_p_i0,
                deg_p_ij: f.deg_p_ij,
                p_i0_flag: match f.p_i0_flag {
                    QoFlag::QuasiOrdinary => "quasi-ordinary".into(),
                    QoFlag::NotNecessarily => "not necessarily quasi-ordinary".into(),
                    QoFlag::Unknown => "unknown".into(),
                },
                p_ij_exponents: f.p_ij_exponents.iter().map(exp_to_json).collect(),
            })
            .collect(),
    }
}

pub fn verification_json(v: &VerificationReport) -> VerificationJson {
    VerificationJson {
        all_match: v.all_match(),
        entries: v
            .entries
            .iter()
            .map(|e| ClaimJson {
                claim: e.claim.clone(),
                predicted: e.predicted.clone(),
                oracle: e.oracle.clone(),
                status: match e.status {
                    ClaimStatus::Match => "match".into(),
                    ClaimStatus::Mismatch => "mismatch".into(),
                    ClaimStatus::Inconclusive => "inconclusive".into(),
                },
                substitutions: e.substitutions.clone(),
            })
            .collect(),
    }
}

pub fn to_json_string(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serialization cannot fail")
}

pub fn from_json_str(s: &str) -> Result<Report> {
    serde_json::from_str(s).map_err(|e| QoError::Domain(format!("bad report JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        let c = &Cyclo::root_of_unity(8, 3).scale(&Rat::new(-7, 2)) + &Cyclo::from_rat(Rat::new(1, 3));
        let j = CycloJson::of(&c);
        assert_eq!(j.to_cyclo().unwrap(), c);
        let p = UniPoly::from_coeffs(vec![c.clone(), Cyclo::one()]);
        let pj = PolyJson::of(&p);
        assert_eq!(pj.to_poly().unwrap(), p);
        let e = ExpVec(vec![Rat::new(13, 8), Rat::new(5, 4)]);
        assert_eq!(exp_from_json(&exp_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn report_json_round_trip() {
        let e = ElementaryPolytope {
            q: Some(ExpVec(vec![Rat::integer(9), Rat::integer(6)])),
            k: 2,
        };
        let p = e.to_polytope(2);
        let mut report = Report::default();
        report.polytope = Some(PolytopeJson::of(&p));
        let s = to_json_string(&report);
        let back = from_json_str(&s).unwrap();
        let q = back.polytope.unwrap().to_polytope(3).unwrap();
        assert_eq!(q, p);
    }
}
