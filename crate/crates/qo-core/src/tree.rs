//! Kuo-Lu tree of a quasi-ordinary root set, bar statistics (m, n_k, t_k),
//! and the Eggers tree of conjugacy classes with N(B) and n(B).

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::{ExpVec, Height};
use crate::roots::{galois_group, RootSet};
use crate::series::FractionalSeries;

/// A bar of the Kuo-Lu tree, identified with its pseudo-ball: the set
/// lambda + x^h K[[x^(1/N)]] (or a singleton at infinite height).
#[derive(Clone, Debug)]
pub struct PseudoBall {
    pub height: Height,
    /// Root indices whose series lie in the ball.
    pub members: Vec<usize>,
    /// Common truncation of the members below the height.
    pub center: FractionalSeries,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Coefficient at the parent's height shared by all members.
    pub support_point: Option<Cyclo>,
}

impl PseudoBall {
    pub fn m(&self) -> usize {
        self.members.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.height == Height::Infinite
    }
}

pub struct KuoLuTree {
    pub bars: Vec<PseudoBall>,
    pub root_bar: usize,
    pub n_roots: usize,
}

/// Per-bar counts for a fixed derivative order k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCounts {
    pub m: usize,
    pub n_k: usize,
    pub t_k: usize,
}

impl KuoLuTree {
    pub fn build(rs: &RootSet) -> Result<KuoLuTree> {
        let mut tree = KuoLuTree { bars: Vec::new(), root_bar: 0, n_roots: rs.len() };
        let all: Vec<usize> = (0..rs.len()).collect();
        tree.root_bar = tree.build_bar(rs, all, None, None)?;
        Ok(tree)
    }

    fn build_bar(
        &mut self,
        rs: &RootSet,
        members: Vec<usize>,
        parent: Option<usize>,
        support: Option<Cyclo>,
    ) -> Result<usize> {
        let id = self.bars.len();
        if members.len() == 1 {
            let r = members[0];
            self.bars.push(PseudoBall {
                height: Height::Infinite,
                members,
                center: rs.roots[r].series.clone(),
                parent,
                children: vec![],
                support_point: support,
            });
            return Ok(id);
        }
        // bar height = minimal pairwise contact inside the member set
        let mut h: Option<&Height> = None;
        for (a, &i) in members.iter().enumerate() {
            for &j in members.iter().skip(a + 1) {
                let c = &rs.contacts[i][j];
                h = Some(match h {
                    None => c,
                    Some(cur) => {
                        if c.le_h(cur) {
                            c
                        } else if cur.le_h(c) {
                            cur
                        } else {
                            return Err(QoError::NotQuasiOrdinary(format!(
                                "incomparable contacts {} and {} inside one bar",
                                cur, c
                            )));
                        }
                    }
                });
            }
        }
        let h = h.unwrap().clone();
        let Height::Finite(hv) = &h else {
            return Err(QoError::Internal("finite bar with infinite minimal contact".into()));
        };
        let center = rs.roots[members[0]].series.truncate_below(hv);
        self.bars.push(PseudoBall {
            height: h.clone(),
            members: members.clone(),
            center,
            parent,
            children: vec![],
            support_point: support,
        });
        // partition into cosets of "contact > h"
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for &i in &members {
            let mut placed = false;
            for coset in cosets.iter_mut() {
                let rep = coset[0];
                if h.lt_h(&rs.contacts[i][rep]) {
                    coset.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                cosets.push(vec![i]);
            }
        }
        if cosets.len() < 2 {
            return Err(QoError::Internal("bar failed to split into cosets".into()));
        }
        // support point of each coset = shared coefficient at exponent h
        let mut tagged: Vec<(Cyclo, Vec<usize>)> = cosets
            .into_iter()
            .map(|coset| (rs.roots[coset[0]].series.coeff(hv), coset))
            .collect();
        for a in 0..tagged.len() {
            for b in a + 1..tagged.len() {
                if tagged[a].0 == tagged[b].0 {
                    return Err(QoError::Internal(
                        "distinct postbars share a support point".into(),
                    ));
                }
            }
        }
        // children ordered by support point, then first member label
        tagged.sort_by(|x, y| {
            x.0.render_cmp(&y.0)
                .then_with(|| rs.roots[x.1[0]].label.cmp(&rs.roots[y.1[0]].label))
        });
        for (c, coset) in tagged {
            let child = self.build_bar(rs, coset, Some(id), Some(c))?;
            self.bars[id].children.push(child);
        }
        Ok(id)
    }

    pub fn finite_bars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.bars.len()).filter(|&b| !self.bars[b].is_leaf())
    }

    /// Leading coefficient of a root with respect to a bar: the coefficient
    /// at the bar height (zero when the term is absent).
    pub fn leading_coeff(&self, rs: &RootSet, bar: usize, root: usize) -> Cyclo {
        let Height::Finite(h) = &self.bars[bar].height else {
            panic!("leading coefficient needs a finite bar");
        };
        rs.roots[root].series.coeff(h)
    }

    /// (m, n_k, t_k) for every bar; 1 <= k < number of roots.
    pub fn bar_counts(&self, k: usize) -> Result<Vec<BarCounts>> {
        if k < 1 || k >= self.n_roots {
            return Err(QoError::Domain(format!(
                "k={k} out of range 1..{}",
                self.n_roots
            )));
        }
        let mut out = vec![BarCounts { m: 0, n_k: 0, t_k: 0 }; self.bars.len()];
        for (i, bar) in self.bars.iter().enumerate() {
            let m = bar.m();
            out[i].m = m;
            out[i].n_k = m.saturating_sub(k);
        }
        for (i, bar) in self.bars.iter().enumerate() {
            let child_sum: usize = bar.children.iter().map(|&c| out[c].n_k).sum();
            out[i].t_k = out[i].n_k - child_sum;
        }
        Ok(out)
    }

    /// Bars of the sub-tree T_k (m(B) >= k).
    pub fn t_k_bars(&self, k: usize) -> Vec<usize> {
        (0..self.bars.len()).filter(|&b| self.bars[b].m() >= k).collect()
    }

    /// Sum over roots of min(O(lambda_B, alpha_i), h(B)): the exponent
    /// q(f, B) of the full input at a finite bar, computed from contacts.
    pub fn q_exponent(&self, rs: &RootSet, bar: usize, root_subset: &[usize]) -> Result<ExpVec> {
        let b = &self.bars[bar];
        let Height::Finite(h) = &b.height else {
            return Err(QoError::Domain("q(g,B) needs a finite bar".into()));
        };
        let mut total = ExpVec::zero(rs.d);
        for &i in root_subset {
            if b.members.contains(&i) {
                total = total.add(h);
            } else {
                // contact with the center equals the contact with any member
                let rep = *b
                    .members
                    .iter()
                    .find(|&&m| m != i)
                    .ok_or_else(|| QoError::Internal("empty bar".into()))?;
                match &rs.contacts[i][rep] {
                    Height::Finite(c) => {
                        if !c.le_comp(h) {
                            return Err(QoError::Internal(
                                "outside root with contact above bar height".into(),
                            ));
                        }
                        total = total.add(c);
                    }
                    Height::Infinite => {
                        return Err(QoError::Internal("infinite contact outside bar".into()))
                    }
                }
            }
        }
        Ok(total)
    }
}

/// A vertex of the Eggers tree: a conjugacy class of finite bars.
#[derive(Clone, Debug)]
pub struct EggersVertex {
    pub bar_ids: Vec<usize>,
    pub height: ExpVec,
    /// N(B): class size = degree of the center over the base field.
    pub n_class: usize,
    /// n(B): ramification degree of x^{h(B)} over the center's lattice.
    pub ramification: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Branches whose leaf attaches directly at this vertex.
    pub attached_branches: Vec<usize>,
    /// For each branch passing through or attached here: is the outgoing
    /// edge toward that branch dashed (no two branch roots with this contact)?
    pub dashed: Vec<(usize, bool)>,
}

pub struct EggersTree {
    pub vertices: Vec<EggersVertex>,
    pub root_vertex: usize,
    /// vertex id for every finite bar
    pub class_of_bar: Vec<Option<usize>>,
}

impl EggersTree {
    pub fn build(rs: &RootSet, tree: &KuoLuTree) -> Result<EggersTree> {
        let nb = tree.bars.len();
        let mut class_of_bar: Vec<Option<usize>> = vec![None; nb];
        let mut vertices: Vec<EggersVertex> = Vec::new();
        // group finite bars into orbit classes of (height, center)
        let group = galois_group(rs.n_den, rs.d);
        for b in tree.finite_bars() {
            if class_of_bar[b].is_some() {
                continue;
            }
            let center = &tree.bars[b].center;
            let height = tree.bars[b].height.finite().unwrap().clone();
            let mut images: Vec<FractionalSeries> = Vec::new();
            for phi in &group {
                let img = phi.apply(center);
                if !images.iter().any(|s| s == &img) {
                    images.push(img);
                }
            }
            let orbit_size = images.len();
            let mut ids = vec![b];
            for other in tree.finite_bars() {
                if other == b || class_of_bar[other].is_some() {
                    continue;
                }
                if tree.bars[other].height.finite() == Some(&height)
                    && images.iter().any(|s| s == &tree.bars[other].center)
                {
                    ids.push(other);
                }
            }
            if ids.len() != orbit_size {
                return Err(QoError::Internal(format!(
                    "conjugacy class of size {} but center orbit of size {}",
                    ids.len(),
                    orbit_size
                )));
            }
            let vid = vertices.len();
            for &i in &ids {
                class_of_bar[i] = Some(vid);
            }
            let ramification = ramification_degree(rs, center, &height)?;
            vertices.push(EggersVertex {
                bar_ids: ids,
                height,
                n_class: orbit_size,
                ramification,
                parent: None,
                children: vec![],
                attached_branches: vec![],
                dashed: vec![],
            });
        }
        // quotient edges
        let mut root_vertex = None;
        for v in 0..vertices.len() {
            let rep = vertices[v].bar_ids[0];
            match tree.bars[rep].parent {
                None => root_vertex = Some(v),
                Some(p) => {
                    let pv = class_of_bar[p].ok_or_else(|| {
                        QoError::Internal("finite bar with unclassified parent".into())
                    })?;
                    vertices[v].parent = Some(pv);
                    if !vertices[pv].children.contains(&v) {
                        vertices[pv].children.push(v);
                    }
                }
            }
        }
        let root_vertex =
            root_vertex.ok_or_else(|| QoError::Internal("no root vertex".into()))?;
        // branch attachment: class of the parent bar of the branch's leaves
        for bi in 0..rs.branches.len() {
            let some_root = rs
                .branch_roots(bi)
                .into_iter()
                .next()
                .ok_or_else(|| QoError::Internal("branch without roots".into()))?;
            let leaf = tree
                .bars
                .iter()
                .position(|b| b.is_leaf() && b.members == vec![some_root])
                .ok_or_else(|| QoError::Internal("missing leaf bar".into()))?;
            match tree.bars[leaf].parent {
                Some(p) => {
                    let pv = class_of_bar[p].unwrap();
                    vertices[pv].attached_branches.push(bi);
                }
                None => {
                    // single-root input: no finite bars at all
                    return Err(QoError::Domain(
                        "input with a single root has an empty Eggers tree".into(),
                    ));
                }
            }
        }
        // dashed flags per vertex and branch on its path
        for v in 0..vertices.len() {
            let mut flags = Vec::new();
            for bi in 0..rs.branches.len() {
                let broots = rs.branch_roots(bi);
                // find a representative bar of this class meeting the branch
                let Some(&bar) = vertices[v]
                    .bar_ids
                    .iter()
                    .find(|&&b| tree.bars[b].members.iter().any(|m| broots.contains(m)))
                else {
                    continue;
                };
                // two roots of the branch with contact h(B) exist iff the
                // branch roots inside the bar spread over >= 2 cosets
                let cosets_hit = tree.bars[bar]
                    .children
                    .iter()
                    .filter(|&&c| tree.bars[c].members.iter().any(|m| broots.contains(m)))
                    .count();
                flags.push((bi, cosets_hit < 2));
            }
            vertices[v].dashed = flags;
        }
        Ok(EggersTree { vertices, root_vertex, class_of_bar })
    }

    /// Vertices on the path from the root vertex to the attachment of a branch.
    pub fn branch_path(&self, branch: usize) -> Vec<usize> {
        let mut at = None;
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.attached_branches.contains(&branch) {
                at = Some(v);
            }
        }
        let mut path = Vec::new();
        let mut cur = at;
        while let Some(v) = cur {
            path.push(v);
            cur = self.vertices[v].parent;
        }
        path.reverse();
        path
    }
}

/// n(B): the least e >= 1 with e*h inside Z^d + (exponent lattice of the
/// center). Decided by integer lattice membership after scaling by N.
pub fn ramification_degree(
    rs: &RootSet,
    center: &FractionalSeries,
    h: &ExpVec,
) -> Result<usize> {
    let n = rs.n_den;
    let d = rs.d;
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut row = vec![0i64; d];
        row[i] = n;
        gens.push(row);
    }
    for (e, _) in center.terms() {
        gens.push(scaled_int_vec(e, n)?);
    }
    let basis = hermite_basis(gens);
    let hv = scaled_int_vec(h, n)?;
    for e in 1..=(n as usize) {
        let target: Vec<i64> = hv.iter().map(|&x| x * e as i64).collect();
        if lattice_contains(&basis, &target) {
            return Ok(e);
        }
    }
    Err(QoError::Internal(format!(
        "no ramification degree found for height {h} within denominator {n}"
    )))
}

fn scaled_int_vec(e: &ExpVec, n: i64) -> Result<Vec<i64>> {
    e.0.iter()
        .map(|q| {
            q.scale_int(n)
                .as_integer()
                .ok_or_else(|| QoError::Internal("exponent outside the declared lattice".into()))
        })
        .collect()
}

/// Row-echelon basis of an integer lattice via Euclidean row reduction.
fn hermite_basis(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let d = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut col = 0;
    while col < d && !rows.is_empty() {
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let mut with_pivot: Vec<usize> =
                (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if with_pivot.is_empty() {
                break;
            }
            if with_pivot.len() == 1 {
                let mut r = rows.remove(with_pivot[0]);
                if r[col] < 0 {
                    for x in r.iter_mut() {
                        *x = -*x;
                    }
                }
                basis.push(r);
                break;
            }
            // combine the two smallest pivots
            with_pivot.sort_by_key(|&i| rows[i][col].unsigned_abs());
            let (a, b) = (with_pivot[0], with_pivot[1]);
            let q = rows[b][col] / rows[a][col];
            for j in 0..d {
                rows[b][j] -= q * rows[a][j];
            }
        }
        col += 1;
    }
    basis
}

fn lattice_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let col = b.iter().position(|&x| x != 0).unwrap();
        if v[col] != 0 {
            if v[col] % b[col] != 0 {
                return false;
            }
            let q = v[col] / b[col];
            for j in 0..v.len() {
                v[j] -= q * b[j];
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Strong triangle inequality check on a validated root set: of the three
/// pairwise contacts of any triple, the two smallest coincide.
pub fn check_strong_triangle(rs: &RootSet) -> Result<()> {
    let n = rs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut hs = [
                    rs.contacts[i][j].clone(),
                    rs.contacts[i][k].clone(),
                    rs.contacts[j][k].clone(),
                ];
                hs.sort_by(|a, b| {
                    if a.le_h(b) {
                        std::cmp::Ordering::Less
                    } else if b.le_h(a) {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    }
                });
                if hs[0] != hs[1] {
                    return Err(QoError::NotQuasiOrdinary(format!(
                        "strong triangle inequality fails on roots {},{},{}",
                        rs.roots[i].label, rs.roots[j].label, rs.roots[k].label
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Characteristic exponents of a single-branch input: the sorted finite bar
/// heights, which must form a chain.
pub fn characteristic_exponents(tree: &KuoLuTree) -> Result<Vec<ExpVec>> {
    let mut hs: Vec<ExpVec> = Vec::new();
    for b in tree.finite_bars() {
        let h = tree.bars[b].height.finite().unwrap().clone();
        if !hs.contains(&h) {
            hs.push(h);
        }
    }
    for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            if !hs[a].comparable(&hs[b]) {
                return Err(QoError::Domain(
                    "heights of an irreducible input must form a chain".into(),
                ));
            }
        }
    }
    hs.sort_by(|a, b| {
        if a.le_comp(b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Ok(hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::roots::Branch;

    fn e2(a: Rat, b: Rat) -> ExpVec {
        ExpVec(vec![a, b])
    }

    fn example_rootset() -> RootSet {
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
        RootSet::from_branches(vec![b1, b2]).unwrap()
    }

    #[test]
    fn example_tree_one_bar_three_leaves() {
        let rs = example_rootset();
        let t = KuoLuTree::build(&rs).unwrap();
        assert_eq!(t.bars.len(), 4);
        let root = &t.bars[t.root_bar];
        assert_eq!(root.height, Height::Finite(e2(Rat::new(3, 2), Rat::ONE)));
        assert_eq!(root.children.len(), 3);
        assert!(root.children.iter().all(|&c| t.bars[c].is_leaf()));
        // lambda_B = 0 and the support points are the leading coefficients
        assert!(root.center.is_zero_within_precision());
        let mut lcs: Vec<Cyclo> =
            root.members.iter().map(|&r| t.leading_coeff(&rs, t.root_bar, r)).collect();
        lcs.sort_by(|a, b| a.render_cmp(b));
        assert_eq!(lcs, vec![Cyclo::from_int(-1), Cyclo::from_int(0), Cyclo::from_int(1)]);
        check_strong_triangle(&rs).unwrap();
    }

    #[test]
    fn example_counts_and_q() {
        let rs = example_rootset();
        let t = KuoLuTree::build(&rs).unwrap();
        // k=2: t_2(B0) = 1
        let counts = t.bar_counts(2).unwrap();
        assert_eq!(counts[t.root_bar], BarCounts { m: 3, n_k: 1, t_k: 1 });
        // bars with m <= k give (m, 0, 0)
        for &c in &t.bars[t.root_bar].children {
            assert_eq!(counts[c], BarCounts { m: 1, n_k: 0, t_k: 0 });
        }
        // q(f, B) = 3 * (3/2, 1) = (9/2, 3)
        let q = t.q_exponent(&rs, t.root_bar, &[0, 1, 2]).unwrap();
        assert_eq!(q, e2(Rat::new(9, 2), Rat::integer(3)));
        assert!(t.bar_counts(0).is_err());
        assert!(t.bar_counts(3).is_err());
    }

    #[test]
    fn example_eggers() {
        let rs = example_rootset();
        let t = KuoLuTree::build(&rs).unwrap();
        let e = EggersTree::build(&rs, &t).unwrap();
        assert_eq!(e.vertices.len(), 1);
        let v = &e.vertices[e.root_vertex];
        assert_eq!(v.n_class, 1);
        assert_eq!(v.ramification, 2);
        assert_eq!(v.attached_branches, vec![0, 1]);
        // f1 has two roots at contact h(B): solid; f2 only one: dashed
        assert_eq!(v.dashed, vec![(0, false), (1, true)]);
    }

    #[test]
    fn lattice_ramification() {
        // center x1^{3/2}x2, height (7/4, 3/2): ramification 2
        let b = Branch {
            label: "b".into(),
            root: {
                let mut r =
                    FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
                r.add_term(e2(Rat::new(7, 4), Rat::new(3, 2)), Cyclo::from_rat(Rat::new(1, 2)));
                r
            },
            denom: 4,
        };
        let rs = RootSet::from_branches(vec![b]).unwrap();
        let center = FractionalSeries::monomial(e2(Rat::new(3, 2), Rat::ONE), Cyclo::one());
        let n1 = ramification_degree(&rs, &FractionalSeries::zero(2), &e2(Rat::new(3, 2), Rat::ONE))
            .unwrap();
        assert_eq!(n1, 2);
        let n2 =
            ramification_degree(&rs, &center, &e2(Rat::new(7, 4), Rat::new(3, 2))).unwrap();
        assert_eq!(n2, 2);
    }

    #[test]
    fn single_branch_two_levels() {
        // root x1^{3/2}x2 + (1/2) x1^{7/4} x2^{3/2}: 4 conjugates,
        // heights (3/2,1) then (7/4,3/2)
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
        assert_eq!(rs.len(), 4);
        let t = KuoLuTree::build(&rs).unwrap();
        let root = &t.bars[t.root_bar];
        assert_eq!(root.height, Height::Finite(e2(Rat::new(3, 2), Rat::ONE)));
        assert_eq!(root.children.len(), 2);
        for &c in &root.children {
            assert_eq!(t.bars[c].height, Height::Finite(e2(Rat::new(7, 4), Rat::new(3, 2))));
            assert_eq!(t.bars[c].m(), 2);
        }
        let hs = characteristic_exponents(&t).unwrap();
        assert_eq!(hs, vec![e2(Rat::new(3, 2), Rat::ONE), e2(Rat::new(7, 4), Rat::new(3, 2))]);
        let e = EggersTree::build(&rs, &t).unwrap();
        assert_eq!(e.vertices.len(), 2);
        let depths: Vec<usize> = e.vertices.iter().map(|v| v.n_class).collect();
        assert!(depths.contains(&1) && depths.contains(&2));
    }
}
