//! Text and DOT rendering of trees and prediction tables. Output is
//! deterministic: children are ordered by support point under a fixed total
//! order on cyclotomic constants, then by branch label (the construction
//! already stores them that way).

use crate::exponent::Height;
use crate::polar::{ContactRelation, EggersFactorPrediction, MerlePrediction};
use crate::polytope::NewtonPolytope;
use crate::roots::RootSet;
use crate::tree::{EggersTree, KuoLuTree};

pub fn kuo_lu_text(rs: &RootSet, tree: &KuoLuTree) -> String {
    let mut out = String::new();
    render_bar(rs, tree, tree.root_bar, 0, &mut out);
    out
}

fn render_bar(rs: &RootSet, tree: &KuoLuTree, bar: usize, depth: usize, out: &mut String) {
    let b = &tree.bars[bar];
    let indent = "  ".repeat(depth);
    match &b.height {
        Height::Finite(h) => {
            out.push_str(&format!(
                "{indent}bar {bar}: h = {h}, m = {}, members = [{}]\n",
                b.m(),
                b.members.iter().map(|&m| rs.roots[m].label.as_str()).collect::<Vec<_>>().join(", ")
            ));
            for &c in &b.children {
                render_bar(rs, tree, c, depth + 1, out);
            }
        }
        Height::Infinite => {
            let sp = b
                .support_point
                .as_ref()
                .map(|c| format!(" at {c}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{indent}leaf {}{sp}\n",
                rs.roots[b.members[0]].label
            ));
        }
    }
}

pub fn kuo_lu_dot(rs: &RootSet, tree: &KuoLuTree) -> String {
    let mut out = String::from("digraph kuo_lu {\n  rankdir = BT;\n  node [shape=record];\n");
    for (id, b) in tree.bars.iter().enumerate() {
        match &b.height {
            Height::Finite(h) => {
                out.push_str(&format!(
                    "  b{id} [label=\"bar {id} | h = {h} | m = {}\"];\n",
                    b.m()
                ));
            }
            Height::Infinite => {
                out.push_str(&format!(
                    "  b{id} [shape=ellipse, label=\"{}\"];\n",
                    rs.roots[b.members[0]].label
                ));
            }
        }
        if let Some(p) = b.parent {
            let sp = b
                .support_point
                .as_ref()
                .map(|c| format!("{c}"))
                .unwrap_or_default();
            out.push_str(&format!("  b{id} -> b{p} [label=\"{sp}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}

pub fn eggers_text(rs: &RootSet, eggers: &EggersTree) -> String {
    let mut out = String::new();
    render_vertex(rs, eggers, eggers.root_vertex, 0, &mut out);
    out
}

fn render_vertex(rs: &RootSet, eggers: &EggersTree, v: usize, depth: usize, out: &mut String) {
    let vert = &eggers.vertices[v];
    let indent = "  ".repeat(depth);
    out.push_str(&format!(
        "{indent}[B{}]: h = {}, N = {}, n = {}\n",
        v, vert.height, vert.n_class, vert.ramification
    ));
    for &(b, dashed) in &vert.dashed {
        if vert.attached_branches.contains(&b) {
            out.push_str(&format!(
                "{indent}  {} leaf {}\n",
                if dashed { "dashed" } else { "solid" },
                rs.branches[b].label
            ));
        }
    }
    for &c in &vert.children {
        render_vertex(rs, eggers, c, depth + 1, out);
    }
}

pub fn eggers_dot(rs: &RootSet, eggers: &EggersTree) -> String {
    let mut out = String::from("digraph eggers {\n  rankdir = BT;\n");
    for (id, v) in eggers.vertices.iter().enumerate() {
        out.push_str(&format!(
            "  v{id} [shape=circle, style=filled, fillcolor=black, fontcolor=white, \
             label=\"[B{id}]\\nh={}\\nN={}\"];\n",
            v.height, v.n_class
        ));
        if let Some(p) = v.parent {
            // edge toward the parent: dashed iff every branch through this
            // vertex sees it dashed... per-branch flags are drawn on leaves;
            // internal quotient edges stay solid
            out.push_str(&format!("  v{id} -> v{p};\n"));
        }
    }
    for (id, v) in eggers.vertices.iter().enumerate() {
        for &b in &v.attached_branches {
            let dashed = v
                .dashed
                .iter()
                .find(|&&(bb, _)| bb == b)
                .map(|&(_, d)| d)
                .unwrap_or(false);
            let label = &rs.branches[b].label;
            out.push_str(&format!(
                "  leaf_{label} [shape=circle, style=filled, fillcolor=white, label=\"{label}\"];\n"
            ));
            out.push_str(&format!(
                "  leaf_{label} -> v{id}{};\n",
                if dashed { " [style=dashed]" } else { "" }
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn polytope_short(p: &NewtonPolytope) -> String {
    if let Some(v) = p.as_monomial() {
        format!("D(x^{v})")
    } else {
        format!("{p}")
    }
}

/// Human-readable prediction table for one k.
pub fn polar_table(
    rs: &RootSet,
    preds: &[EggersFactorPrediction],
    k: usize,
    regular: bool,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "k = {k}: Kuo-Lu {k}-regular: {}\n",
        if regular { "yes" } else { "no" }
    ));
    out.push_str("vertex | height | deg p_[B] | charpoly | self-contact\n");
    for p in preds {
        out.push_str(&format!(
            "[B{}] | {} | {} | {} | {}\n",
            p.vertex,
            p.vertex_height,
            p.degree,
            p.charpoly,
            polytope_short(&p.self_contact),
        ));
    }
    for p in preds {
        for c in &p.contacts {
            let label = &rs.branches[c.branch].label;
            match &c.relation {
                ContactRelation::EqualsVertexContact => {
                    out.push_str(&format!(
                        "  cont_P({label}, g) = {} for every factor g of p_[B{}]\n",
                        polytope_short(&c.vertex_contact),
                        p.vertex
                    ));
                }
                ContactRelation::AtLeastSelfContact { equality } => {
                    out.push_str(&format!(
                        "  cont_P({label}, g) {} {} for every factor g of p_[B{}]{}\n",
                        if *equality { "=" } else { ">=" },
                        polytope_short(&p.self_contact),
                        p.vertex,
                        if *equality { "" } else { " (equality requires k-regularity)" }
                    ));
                }
            }
        }
    }
    out
}

pub fn merle_table(m: &MerlePrediction, k: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "characteristic exponents: {}\n",
        m.char_exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" < ")
    ));
    out.push_str(&format!("n = {:?}, e = {:?}, k = {k}, i_k = {}\n", m.n_seq, m.e_seq, m.i_k));
    out.push_str("level | deg p_i | t_k | charpoly | a | d | deg p_i0 | deg p_ij\n");
    for f in &m.factors {
        out.push_str(&format!(
            "{} | {} | {} | {} | {} | {} | {} | {}\n",
            f.level, f.degree, f.t_k, f.charpoly, f.a, f.d, f.deg_p_i0, f.deg_p_ij
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::exponent::ExpVec;
    use crate::rat::Rat;
    use crate::roots::Branch;
    use crate::series::FractionalSeries;

    #[test]
    fn deterministic_rendering() {
        let b1 = Branch {
            label: "f1".into(),
            root: FractionalSeries::monomial(
                ExpVec(vec![Rat::new(3, 2), Rat::ONE]),
                Cyclo::one(),
            ),
            denom: 2,
        };
        let b2 = Branch {
            label: "f2".into(),
            root: FractionalSeries::monomial(
                ExpVec(vec![Rat::integer(5), Rat::integer(2)]),
                Cyclo::one(),
            ),
            denom: 1,
        };
        let rs = RootSet::from_branches(vec![b1, b2]).unwrap();
        let tree = KuoLuTree::build(&rs).unwrap();
        let eggers = EggersTree::build(&rs, &tree).unwrap();
        let t1 = kuo_lu_text(&rs, &tree);
        let t2 = kuo_lu_text(&rs, &tree);
        assert_eq!(t1, t2);
        assert!(t1.contains("h = (3/2,1)"));
        let e = eggers_text(&rs, &eggers);
        assert!(e.contains("dashed leaf f2"), "{e}");
        assert!(e.contains("solid leaf f1"), "{e}");
        let dot = eggers_dot(&rs, &eggers);
        assert!(dot.contains("style=dashed"));
        let kdot = kuo_lu_dot(&rs, &tree);
        assert!(kdot.contains("shape=record"));
    }
}
