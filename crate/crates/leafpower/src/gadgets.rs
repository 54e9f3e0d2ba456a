//! Gadget graphs, their explicit leaf roots, and the assembled family H_n.
//!
//! Three building blocks — a top block, a bottom block (a diamond), and an
//! interior block — chain into the family `H_n` by identifying the `b`
//! anchor of each block with the `t` anchor of the next. Each block carries
//! explicit k-leaf roots; roots of adjacent blocks merge at the shared
//! anchor leaf into a root of the chain with one block removed. A separate
//! linear-mode block plays the same role for caterpillar roots.

use crate::graph::{Graph, VertexSet};
use crate::tree::{LeafTree, TreeError};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("k = {k} is too small for this construction (needs k ≥ {min})")]
    KTooSmall { k: u64, min: u64 },
}

/// A gadget graph together with its designated anchor vertices.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
    /// anchor name → vertex index (e.g. "t", "b")
    pub anchors: BTreeMap<String, usize>,
}

/// The chained family member H_n for a given k.
#[derive(Debug, Clone)]
pub struct AssembledFamily {
    pub graph: Graph,
    pub k: u64,
    pub n: usize,
    /// "t", "b", and per-copy junctions "t_I^j" / "b_I^j" → vertex index
    pub anchors: BTreeMap<String, usize>,
}

/// Which block of an assembled family to remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Top,
    Bot,
}

fn require_k(k: u64, min: u64) -> Result<(), GadgetError> {
    if k < min {
        Err(GadgetError::KTooSmall { k, min })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// small builders

struct TreeBuilder {
    n: usize,
    labels: Vec<(usize, String)>,
    edges: Vec<(usize, usize, u64)>,
}

impl TreeBuilder {
    fn new() -> Self {
        TreeBuilder {
            n: 0,
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }
    fn internal(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }
    fn leaf(&mut self, label: String) -> usize {
        let v = self.internal();
        self.labels.push((v, label));
        v
    }
    /// leaf hanging off `at` by an edge of length `len`
    fn pendant(&mut self, at: usize, label: String, len: u64) -> usize {
        let v = self.leaf(label);
        self.edges.push((at, v, len));
        v
    }
    fn edge(&mut self, u: usize, v: usize, len: u64) {
        self.edges.push((u, v, len));
    }
    fn build(self) -> LeafTree {
        let labels: Vec<(usize, &str)> = self
            .labels
            .iter()
            .map(|(v, s)| (*v, s.as_str()))
            .collect();
        LeafTree::new(self.n, &labels, &self.edges).expect("constructed tree is valid")
    }
}

struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    fn new() -> Self {
        GraphBuilder {
            labels: Vec::new(),
            index: BTreeMap::new(),
            edges: BTreeSet::new(),
        }
    }
    fn vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }
    fn edge(&mut self, a: &str, b: &str) {
        let u = self.vertex(a);
        let v = self.vertex(b);
        self.edges.insert((u.min(v), u.max(v)));
    }
    fn build(self) -> Graph {
        let n = self.labels.len();
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        Graph::new(n, self.labels, &edges).expect("constructed graph is valid")
    }
}

/// Copies a tree with every leaf label rewritten through `f`.
fn relabel_tree(t: &LeafTree, f: impl Fn(&str) -> String) -> LeafTree {
    LeafTree {
        adj: t.adj.clone(),
        labels: t
            .labels
            .iter()
            .map(|l| l.as_ref().map(|s| f(s)))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// top block

/// Top block for k ≥ 4: the (k−2)-th power of a path on 2k−3 vertices
/// v1..v{2k−3}, anchored at t = v{k−2}.
pub fn top_gadget(k: u64) -> Result<GadgetGraph, GadgetError> {
    require_k(k, 4)?;
    let m = (2 * k - 3) as usize;
    let reach = (k - 2) as usize;
    let labels: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m.min(i + reach + 1) {
            edges.push((i, j));
        }
    }
    let graph = Graph::new(m, labels, &edges).expect("valid");
    let mut anchors = BTreeMap::new();
    anchors.insert("t".to_string(), (k - 2 - 1) as usize);
    Ok(GadgetGraph { graph, anchors })
}

/// Caterpillar k-leaf root of the top block: unit spine s1..s{2k−3} with
/// leaf v_i pendant at s_i, so d(v_i, v_j) = |i−j| + 2.
pub fn top_root(k: u64) -> Result<LeafTree, GadgetError> {
    require_k(k, 4)?;
    let m = (2 * k - 3) as usize;
    let mut tb = TreeBuilder::new();
    let mut prev = None;
    for i in 1..=m {
        let s = tb.internal();
        if let Some(p) = prev {
            tb.edge(p, s, 1);
        }
        tb.pendant(s, format!("v{i}"), 1);
        prev = Some(s);
    }
    Ok(tb.build())
}

// ---------------------------------------------------------------------------
// bottom block

/// Bottom block: the diamond on {b, v1, v2, v3} with non-edge (v1, v3),
/// anchored at b. The same graph serves every k.
pub fn bot_gadget() -> GadgetGraph {
    let graph = Graph::new(
        4,
        vec!["b".into(), "v1".into(), "v2".into(), "v3".into()],
        &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
    )
    .expect("valid");
    let mut anchors = BTreeMap::new();
    anchors.insert("b".to_string(), 0);
    GadgetGraph { graph, anchors }
}

/// k-leaf root of the diamond with m(b) = k−1: a star (odd k) or double
/// star (even k) whose pendant lengths put every pair within k except
/// (v1, v3) at k+1.
pub fn bot_root(k: u64) -> Result<LeafTree, GadgetError> {
    require_k(k, 4)?;
    let mut tb = TreeBuilder::new();
    if k % 2 == 1 {
        let o = tb.internal();
        tb.pendant(o, "b".into(), (k - 1) / 2);
        tb.pendant(o, "v2".into(), (k - 1) / 2);
        tb.pendant(o, "v1".into(), (k + 1) / 2);
        tb.pendant(o, "v3".into(), (k + 1) / 2);
    } else {
        let o1 = tb.internal();
        let o2 = tb.internal();
        tb.edge(o1, o2, 1);
        tb.pendant(o1, "b".into(), k / 2 - 1);
        tb.pendant(o1, "v1".into(), k / 2);
        tb.pendant(o2, "v2".into(), k / 2 - 1);
        tb.pendant(o2, "v3".into(), k / 2);
    }
    Ok(tb.build())
}

// ---------------------------------------------------------------------------
// interior block

/// Interior block for k ≥ 5, anchored at t and b. For odd k = 2q+1 the
/// vertices are t, b, x1..xq, y2..yq; for even k = 2q two extra vertices
/// z1, z2 are added and t keeps x1 as its only private neighbor of b's
/// non-neighbors (b, z1, z2 are not adjacent to x1).
pub fn interior_gadget(k: u64) -> Result<GadgetGraph, GadgetError> {
    require_k(k, 5)?;
    let q = (k / 2) as usize;
    let mut gb = GraphBuilder::new();
    gb.vertex("t");
    gb.vertex("b");
    let xs: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
    for x in &xs {
        gb.vertex(x);
    }
    for i in 2..=q {
        gb.vertex(&format!("y{i}"));
    }
    if k % 2 == 1 {
        for x in &xs {
            gb.edge("t", x);
            gb.edge("b", x);
        }
    } else {
        gb.vertex("z1");
        gb.vertex("z2");
        gb.edge("t", "x1");
        for x in xs.iter().skip(1) {
            gb.edge("t", x);
            gb.edge("b", x);
            gb.edge("z1", x);
            gb.edge("z2", x);
        }
        gb.edge("z1", "b");
        gb.edge("z2", "b");
    }
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            gb.edge(&xs[i], &xs[j]);
        }
    }
    for i in 2..=q {
        for j in i..=q {
            gb.edge(&format!("y{i}"), &format!("x{j}"));
        }
    }
    gb.edge("b", &format!("y{q}"));
    let graph = gb.build();
    let mut anchors = BTreeMap::new();
    anchors.insert("t".to_string(), 0);
    anchors.insert("b".to_string(), 1);
    Ok(GadgetGraph { graph, anchors })
}

/// Spine positions shared by both interior roots: returns the builder, the
/// spine nodes O_1..O_{q+1}, and the leaf-free anchor gaps handled by the
/// callers.
fn interior_spine(q: usize) -> (TreeBuilder, Vec<usize>) {
    let mut tb = TreeBuilder::new();
    let spine: Vec<usize> = (0..=q).map(|_| tb.internal()).collect();
    for w in spine.windows(2) {
        tb.edge(w[0], w[1], 1);
    }
    (tb, spine)
}

/// Interior root with m(t) = k and m(b) = 3.
pub fn interior_root_t(k: u64) -> Result<LeafTree, GadgetError> {
    require_k(k, 5)?;
    let q = (k / 2) as usize;
    let (mut tb, spine) = interior_spine(q);
    let qs = q as u64;
    if k % 2 == 1 {
        // spine t —(q+1)— O_1 —1— … —1— O_{q+1} —1— b
        tb.pendant(spine[0], "t".into(), qs + 1);
        tb.pendant(spine[q], "b".into(), 1);
        for i in 1..=q {
            tb.pendant(spine[i - 1], format!("x{i}"), qs - i as u64 + 1);
        }
        for i in 2..q {
            tb.pendant(spine[i - 1], format!("y{i}"), qs + i as u64);
        }
        tb.pendant(spine[q], format!("y{q}"), k - 2);
    } else {
        // spine t —(q)— O_1 —1— … —1— O_{q+1} —1— b, plus z1 at O_2, z2 at O_3
        tb.pendant(spine[0], "t".into(), qs);
        tb.pendant(spine[q], "b".into(), 1);
        for i in 1..=q {
            tb.pendant(spine[i - 1], format!("x{i}"), qs - i as u64 + 1);
        }
        for i in 2..q {
            tb.pendant(spine[i - 1], format!("y{i}"), qs + i as u64 - 1);
        }
        tb.pendant(spine[q], format!("y{q}"), k - 2);
        tb.pendant(spine[1], "z1".into(), qs);
        tb.pendant(spine[2], "z2".into(), qs);
    }
    Ok(tb.build())
}

/// Alternative interior root with m(t) = k−1 and m(b) = 4 (the anchor
/// pendants move closer to the spine; one x-leaf moves with them).
pub fn interior_root_r(k: u64) -> Result<LeafTree, GadgetError> {
    require_k(k, 5)?;
    let q = (k / 2) as usize;
    let (mut tb, spine) = interior_spine(q);
    let qs = q as u64;
    if k % 2 == 1 {
        tb.pendant(spine[0], "t".into(), qs + 1);
        tb.pendant(spine[q], "b".into(), 2);
        tb.pendant(spine[0], "x1".into(), qs - 1);
        for i in 2..=q {
            tb.pendant(spine[i - 1], format!("x{i}"), qs - i as u64 + 1);
        }
        for i in 2..q {
            tb.pendant(spine[i - 1], format!("y{i}"), qs + i as u64);
        }
        tb.pendant(spine[q], format!("y{q}"), k - 2);
    } else {
        tb.pendant(spine[0], "t".into(), qs);
        tb.pendant(spine[q], "b".into(), 2);
        tb.pendant(spine[0], "x1".into(), qs);
        tb.pendant(spine[1], "x2".into(), qs - 2);
        for i in 3..=q {
            tb.pendant(spine[i - 1], format!("x{i}"), qs - i as u64 + 1);
        }
        for i in 2..q {
            tb.pendant(spine[i - 1], format!("y{i}"), qs + i as u64 - 1);
        }
        tb.pendant(spine[q], format!("y{q}"), k - 2);
        tb.pendant(spine[2], "z1".into(), qs);
        tb.pendant(spine[3], "z2".into(), qs);
    }
    Ok(tb.build())
}

// ---------------------------------------------------------------------------
// assembly

/// Name of the j-th junction vertex of H_n (0 = top anchor, n = bottom
/// anchor); for n = 0 the two anchors coincide in a single vertex "tb".
pub fn junction_label(j: usize, n: usize) -> String {
    if n == 0 {
        "tb".to_string()
    } else if j == 0 {
        "t".to_string()
    } else if j == n {
        "b".to_string()
    } else {
        format!("j{j}")
    }
}

/// Chains the top block, n interior copies, and the bottom block by
/// identifying consecutive anchors. Non-junction vertices are namespaced
/// "T.", "I1.".."In.", and "B.".
pub fn assemble_hn(k: u64, n: usize) -> Result<AssembledFamily, GadgetError> {
    require_k(k, 5)?;
    let top = top_gadget(k)?;
    let interior = interior_gadget(k)?;
    let bot = bot_gadget();

    let mut gb = GraphBuilder::new();
    let map_part = |g: &GadgetGraph,
                    rename: &dyn Fn(usize) -> Option<String>,
                    prefix: &str,
                    gb: &mut GraphBuilder| {
        let name = |v: usize| {
            rename(v).unwrap_or_else(|| format!("{prefix}{}", g.graph.label(v)))
        };
        for v in 0..g.graph.n() {
            gb.vertex(&name(v));
        }
        for (u, v) in g.graph.edges() {
            gb.edge(&name(u), &name(v));
        }
    };

    let t_idx = top.anchors["t"];
    map_part(
        &top,
        &|v| (v == t_idx).then(|| junction_label(0, n)),
        "T.",
        &mut gb,
    );
    let (it, ib) = (interior.anchors["t"], interior.anchors["b"]);
    for j in 1..=n {
        map_part(
            &interior,
            &|v| {
                if v == it {
                    Some(junction_label(j - 1, n))
                } else if v == ib {
                    Some(junction_label(j, n))
                } else {
                    None
                }
            },
            &format!("I{j}."),
            &mut gb,
        );
    }
    let b_idx = bot.anchors["b"];
    map_part(
        &bot,
        &|v| (v == b_idx).then(|| junction_label(n, n)),
        "B.",
        &mut gb,
    );

    let graph = gb.build();
    let mut anchors = BTreeMap::new();
    let idx = |label: &str| graph.index_of(label).expect("junction exists");
    anchors.insert("t".to_string(), idx(&junction_label(0, n)));
    anchors.insert("b".to_string(), idx(&junction_label(n, n)));
    for j in 1..=n {
        anchors.insert(format!("t_I^{j}"), idx(&junction_label(j - 1, n)));
        anchors.insert(format!("b_I^{j}"), idx(&junction_label(j, n)));
    }
    Ok(AssembledFamily {
        graph,
        k,
        n,
        anchors,
    })
}

/// Induced subgraph of H_n with the top or bottom block's private vertices
/// removed; the shared junction vertex stays.
pub fn family_minus(fam: &AssembledFamily, part: Part) -> Graph {
    let prefix = match part {
        Part::Top => "T.",
        Part::Bot => "B.",
    };
    let keep: VertexSet = (0..fam.graph.n())
        .filter(|&v| !fam.graph.label(v).starts_with(prefix))
        .collect();
    fam.graph.induced_subgraph(&keep).expect("vertices in range")
}

// ---------------------------------------------------------------------------
// root merging

/// Merges two leaf trees that share exactly the leaf `label`: the shared
/// leaf is re-hung at unit distance from a fused junction point, so
/// distances within each tree are preserved and cross distances become
/// d_a(x, label) + d_b(label, y) − 2.
pub fn merge_at_leaf(a: &LeafTree, b: &LeafTree, label: &str) -> Result<LeafTree, TreeError> {
    if a.leaf_index(label).is_none() || b.leaf_index(label).is_none() {
        return Err(TreeError::UnknownLabel(label.to_string()));
    }
    if a.leaf_count() < 2 || b.leaf_count() < 2 {
        return Err(TreeError::SingleLeaf);
    }
    for l in a.leaf_labels() {
        if l != label && b.leaf_index(l).is_some() {
            return Err(TreeError::DuplicateLeafLabel(l.to_string()));
        }
    }
    let ua = a.subdivide_to_unit();
    let ub = b.subdivide_to_unit();
    let ja = ua.leaf_index(label).expect("checked");
    let jb = ub.leaf_index(label).expect("checked");
    let pa = ua.neighbors(ja)[0].0;
    let pb = ub.neighbors(jb)[0].0;

    // node map: all of ua except ja, then all of ub except jb with pb fused
    // onto pa, then the fresh junction leaf
    let mut n = 0usize;
    let mut map_a = vec![usize::MAX; ua.node_count()];
    for v in 0..ua.node_count() {
        if v != ja {
            map_a[v] = n;
            n += 1;
        }
    }
    let mut map_b = vec![usize::MAX; ub.node_count()];
    for v in 0..ub.node_count() {
        if v == jb {
            continue;
        }
        if v == pb {
            map_b[v] = map_a[pa];
        } else {
            map_b[v] = n;
            n += 1;
        }
    }
    let junction = n;
    n += 1;

    let mut labels: Vec<(usize, String)> = vec![(junction, label.to_string())];
    let mut edges: Vec<(usize, usize, u64)> = vec![(map_a[pa], junction, 1)];
    for v in 0..ua.node_count() {
        if let Some(l) = ua.label(v) {
            if v != ja {
                labels.push((map_a[v], l.to_string()));
            }
        }
    }
    for v in 0..ub.node_count() {
        if let Some(l) = ub.label(v) {
            if v != jb {
                labels.push((map_b[v], l.to_string()));
            }
        }
    }
    for (u, v, len) in ua.edges() {
        if u != ja && v != ja {
            edges.push((map_a[u], map_a[v], len));
        }
    }
    for (u, v, len) in ub.edges() {
        if u != jb && v != jb {
            edges.push((map_b[u], map_b[v], len));
        }
    }
    let label_refs: Vec<(usize, &str)> = labels.iter().map(|(v, s)| (*v, s.as_str())).collect();
    LeafTree::new(n, &label_refs, &edges)
}

/// Prefixes every non-anchor leaf of an interior root for copy j and maps
/// the anchors to their junction names.
fn interior_copy(root: &LeafTree, j: usize, n: usize) -> LeafTree {
    relabel_tree(root, |l| match l {
        "t" => junction_label(j - 1, n),
        "b" => junction_label(j, n),
        other => format!("I{j}.{other}"),
    })
}

/// k-leaf root of `family_minus(H_n, Bot)`: the top-block root merged with
/// n interior roots (the m(t)=k variant) along the junction leaves.
pub fn merged_root_minus_bot(k: u64, n: usize) -> Result<LeafTree, GadgetError> {
    require_k(k, 5)?;
    let top = top_gadget(k)?;
    let t_label = top.graph.label(top.anchors["t"]).to_string();
    let mut acc = relabel_tree(&top_root(k)?, |l| {
        if l == t_label {
            junction_label(0, n)
        } else {
            format!("T.{l}")
        }
    });
    let ti = interior_root_t(k)?;
    for j in 1..=n {
        let copy = interior_copy(&ti, j, n);
        acc = merge_at_leaf(&acc, &copy, &junction_label(j - 1, n))
            .expect("junction leaf is shared and private labels are disjoint");
    }
    Ok(acc)
}

/// k-leaf root of `family_minus(H_n, Top)`: the bottom-block root merged
/// with n interior roots (the m(t)=k−1 variant), bottom-up.
pub fn merged_root_minus_top(k: u64, n: usize) -> Result<LeafTree, GadgetError> {
    require_k(k, 5)?;
    let mut acc = relabel_tree(&bot_root(k)?, |l| {
        if l == "b" {
            junction_label(n, n)
        } else {
            format!("B.{l}")
        }
    });
    let ri = interior_root_r(k)?;
    for j in (1..=n).rev() {
        let copy = interior_copy(&ri, j, n);
        acc = merge_at_leaf(&acc, &copy, &junction_label(j, n))
            .expect("junction leaf is shared and private labels are disjoint");
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// linear-mode block

/// Linear-mode top block for k ≥ 5: a (k−1)-clique x1..x{k−1} plus an
/// independent set y0..yk with N(y_i) = {x_{i−1}, x_i, x_{i+1}} ∩ X,
/// anchored at t = x1.
pub fn linear_top_gadget(k: u64) -> Result<GadgetGraph, GadgetError> {
    require_k(k, 5)?;
    let m = (k - 1) as usize;
    let mut gb = GraphBuilder::new();
    for i in 1..=m {
        gb.vertex(&format!("x{i}"));
    }
    for i in 0..=(k as usize) {
        gb.vertex(&format!("y{i}"));
    }
    for i in 1..=m {
        for j in (i + 1)..=m {
            gb.edge(&format!("x{i}"), &format!("x{j}"));
        }
    }
    for i in 0..=(k as usize) {
        for j in [i.wrapping_sub(1), i, i + 1] {
            if (1..=m).contains(&j) {
                gb.edge(&format!("y{i}"), &format!("x{j}"));
            }
        }
    }
    let graph = gb.build();
    let mut anchors = BTreeMap::new();
    anchors.insert("t".to_string(), graph.index_of("x1").expect("exists"));
    Ok(GadgetGraph { graph, anchors })
}

/// Caterpillar k-leaf root of the linear-mode top block: spine O_1..O_{k−1}
/// with x_i at unit pendants, y_i at pendants of length k−2 (k−1 for the
/// outer pair y0, yk).
pub fn linear_top_root(k: u64) -> Result<LeafTree, GadgetError> {
    require_k(k, 5)?;
    let m = (k - 1) as usize;
    let mut tb = TreeBuilder::new();
    let spine: Vec<usize> = (0..m).map(|_| tb.internal()).collect();
    for w in spine.windows(2) {
        tb.edge(w[0], w[1], 1);
    }
    for i in 1..=m {
        tb.pendant(spine[i - 1], format!("x{i}"), 1);
        tb.pendant(spine[i - 1], format!("y{i}"), k - 2);
    }
    tb.pendant(spine[0], "y0".into(), k - 1);
    tb.pendant(spine[m - 1], format!("y{k}"), k - 1);
    Ok(tb.build())
}
