//! Weighted leaf trees and their metrics.
//!
//! A [`LeafTree`] is a tree with positive integer edge lengths whose labeled
//! nodes are exactly its leaves. Distances between leaves are path-length
//! sums; equivalently, the tree stands for its unit-edge subdivision (see
//! [`LeafTree::subdivide_to_unit`]). Construction canonicalizes by merging
//! unlabeled degree-2 nodes, so internal nodes of a canonical tree have
//! degree ≥ 3; subdivided (non-canonical) trees are valid values too and
//! compare equal to their canonical forms, since equality is leaf-metric
//! equality.

use crate::graph::Graph;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("edges do not form a tree: {0}")]
    NotATree(String),
    #[error("edge length must be a positive integer")]
    NonPositiveLength,
    #[error("duplicate leaf label {0:?}")]
    DuplicateLeafLabel(String),
    #[error("unknown leaf label {0:?}")]
    UnknownLabel(String),
    #[error("operation needs at least two leaves")]
    SingleLeaf,
    #[error("malformed distance matrix: {0}")]
    MalformedMatrix(String),
    #[error("node {0} has degree ≤ 1 but carries no leaf label")]
    UnlabeledLeaf(usize),
    #[error("node {0} carries a leaf label but is not a leaf")]
    LabeledInternal(usize),
}

/// Tree with positive integer edge lengths; labeled nodes are the leaves.
#[derive(Debug, Clone)]
pub struct LeafTree {
    /// adjacency: node → (neighbor, edge length)
    pub(crate) adj: Vec<Vec<(usize, u64)>>,
    /// `Some(label)` exactly on leaves
    pub(crate) labels: Vec<Option<String>>,
}

impl LeafTree {
    /// Builds and canonicalizes a leaf tree from an explicit node count,
    /// leaf labelling, and weighted edge list.
    pub fn new(
        n_nodes: usize,
        leaf_labels: &[(usize, &str)],
        edges: &[(usize, usize, u64)],
    ) -> Result<LeafTree, TreeError> {
        let mut labels: Vec<Option<String>> = vec![None; n_nodes];
        for &(v, name) in leaf_labels {
            if v >= n_nodes {
                return Err(TreeError::NotATree(format!(
                    "labeled node {v} out of range for {n_nodes} nodes"
                )));
            }
            if labels[v].is_some() {
                return Err(TreeError::DuplicateLeafLabel(name.to_string()));
            }
            labels[v] = Some(name.to_string());
        }
        {
            let mut seen: Vec<&str> = leaf_labels.iter().map(|&(_, s)| s).collect();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    return Err(TreeError::DuplicateLeafLabel(w[0].to_string()));
                }
            }
        }

        if edges.len() + 1 != n_nodes.max(1) {
            return Err(TreeError::NotATree(format!(
                "{} edges on {} nodes",
                edges.len(),
                n_nodes
            )));
        }
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n_nodes];
        for &(u, v, len) in edges {
            if len == 0 {
                return Err(TreeError::NonPositiveLength);
            }
            if u >= n_nodes || v >= n_nodes {
                return Err(TreeError::NotATree(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
            adj[u].push((v, len));
            adj[v].push((u, len));
        }

        let t = LeafTree { adj, labels };
        if n_nodes > 0 && !t.is_connected() {
            return Err(TreeError::NotATree("disconnected".into()));
        }
        for v in 0..n_nodes {
            let deg = t.adj[v].len();
            let labeled = t.labels[v].is_some();
            if n_nodes >= 2 && deg <= 1 && !labeled {
                return Err(TreeError::UnlabeledLeaf(v));
            }
            if deg >= 2 && labeled {
                return Err(TreeError::LabeledInternal(v));
            }
        }
        Ok(t.canonicalize())
    }

    /// Degenerate tree with no nodes (leaf root of the empty graph).
    pub fn trivial_empty() -> LeafTree {
        LeafTree {
            adj: vec![],
            labels: vec![],
        }
    }

    /// Degenerate one-node tree (leaf root of a one-vertex graph).
    pub fn trivial_leaf(label: &str) -> LeafTree {
        LeafTree {
            adj: vec![Vec::new()],
            labels: vec![Some(label.to_string())],
        }
    }

    fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.adj.len()
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.labels[v].is_some()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    /// Leaf labels in ascending lexicographic order.
    pub fn leaf_labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.labels.iter().flatten().map(|s| s.as_str()).collect();
        out.sort_unstable();
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.iter().flatten().count()
    }

    pub fn leaf_index(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(label))
    }

    /// Edges as `(u, v, length)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &(v, len) in nb {
                if u < v {
                    out.push((u, v, len));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Merges unlabeled degree-2 nodes (summing lengths) until none remain.
    /// Idempotent; node order of surviving nodes is preserved.
    pub fn canonicalize(&self) -> LeafTree {
        self.canonicalize_with_map().0
    }

    /// Canonicalization plus the node map `old index → Some(new index)`
    /// (`None` for suppressed nodes).
    pub(crate) fn canonicalize_with_map(&self) -> (LeafTree, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut adj: Vec<BTreeMap<usize, u64>> = self
            .adj
            .iter()
            .map(|nb| nb.iter().copied().collect())
            .collect();
        let mut dead = vec![false; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if dead[v] || self.labels[v].is_some() || adj[v].len() != 2 {
                    continue;
                }
                let mut it = adj[v].iter();
                let (&a, &la) = it.next().unwrap();
                let (&b, &lb) = it.next().unwrap();
                adj[a].remove(&v);
                adj[b].remove(&v);
                // parallel paths cannot arise in a tree
                adj[a].insert(b, la + lb);
                adj[b].insert(a, la + lb);
                adj[v].clear();
                dead[v] = true;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let mut map = vec![None; n];
        let mut next = 0usize;
        for v in 0..n {
            if !dead[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut new_adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); next];
        let mut new_labels: Vec<Option<String>> = vec![None; next];
        for v in 0..n {
            if let Some(nv) = map[v] {
                new_labels[nv] = self.labels[v].clone();
                for (&u, &len) in &adj[v] {
                    new_adj[nv].push((map[u].expect("live neighbor"), len));
                }
                new_adj[nv].sort_unstable();
            }
        }
        (
            LeafTree {
                adj: new_adj,
                labels: new_labels,
            },
            map,
        )
    }

    /// Replaces every edge of length `L` by `L` unit edges through fresh
    /// unlabeled nodes. Leaf distances are unchanged; the result is not
    /// canonical.
    pub fn subdivide_to_unit(&self) -> LeafTree {
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.adj.len()];
        let mut labels = self.labels.clone();
        for (u, v, len) in self.edges() {
            let mut prev = u;
            for _ in 1..len {
                let mid = adj.len();
                adj.push(Vec::new());
                labels.push(None);
                adj[prev].push((mid, 1));
                adj[mid].push((prev, 1));
                prev = mid;
            }
            adj[prev].push((v, 1));
            adj[v].push((prev, 1));
        }
        LeafTree { adj, labels }
    }

    /// Distances from `start` to every node, by edge-length sum.
    fn distances_from(&self, start: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.adj.len()];
        dist[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(u, len) in &self.adj[v] {
                if dist[u] == u64::MAX {
                    dist[u] = dist[v] + len;
                    stack.push(u);
                }
            }
        }
        dist
    }

    /// Path-length sum between the leaves labeled `a` and `b`; 0 iff `a = b`.
    pub fn leaf_distance(&self, a: &str, b: &str) -> Result<u64, TreeError> {
        let ia = self
            .leaf_index(a)
            .ok_or_else(|| TreeError::UnknownLabel(a.to_string()))?;
        let ib = self
            .leaf_index(b)
            .ok_or_else(|| TreeError::UnknownLabel(b.to_string()))?;
        if ia == ib {
            return Ok(0);
        }
        Ok(self.distances_from(ia)[ib])
    }

    /// All pairwise leaf distances, with labels in ascending order.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let mut leaves: Vec<(String, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.clone().map(|s| (s, i)))
            .collect();
        leaves.sort();
        let m = leaves.len();
        let mut d = vec![vec![0u64; m]; m];
        for (row, (_, node)) in leaves.iter().enumerate() {
            let dist = self.distances_from(*node);
            for (col, (_, other)) in leaves.iter().enumerate() {
                d[row][col] = if row == col { 0 } else { dist[*other] };
            }
        }
        DistanceMatrix {
            labels: leaves.into_iter().map(|(s, _)| s).collect(),
            d,
        }
    }

    /// Minimum leaf distance from `v` to any other leaf.
    pub fn min_leaf_distance(&self, v: &str) -> Result<u64, TreeError> {
        let iv = self
            .leaf_index(v)
            .ok_or_else(|| TreeError::UnknownLabel(v.to_string()))?;
        if self.leaf_count() < 2 {
            return Err(TreeError::SingleLeaf);
        }
        let dist = self.distances_from(iv);
        Ok((0..self.adj.len())
            .filter(|&u| u != iv && self.labels[u].is_some())
            .map(|u| dist[u])
            .min()
            .unwrap())
    }

    /// Graph on the leaf labels with an edge wherever the leaf distance is
    /// positive and at most `k`.
    pub fn leaf_power_graph(&self, k: u64) -> Graph {
        let dm = self.distance_matrix();
        let m = dm.labels.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                if dm.d[i][j] <= k {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(m, dm.labels, &edges).expect("leaf labels are distinct")
    }

    /// Caterpillar-subdivision test: true iff the canonical form's internal
    /// nodes form a path (the spine). Endpoint indices refer to `self`;
    /// nodes of degree ≥ 3 survive canonicalization, so they are always
    /// addressable here.
    pub fn is_caterpillar_subdivision(&self) -> Result<Option<SpineEnds>, TreeError> {
        if self.leaf_count() < 2 {
            return Err(TreeError::SingleLeaf);
        }
        let (canon, map) = self.canonicalize_with_map();
        let internal: Vec<usize> = (0..canon.adj.len())
            .filter(|&v| canon.labels[v].is_none())
            .collect();
        if internal.is_empty() {
            return Ok(Some(SpineEnds::Empty));
        }
        // Internal nodes always induce a subtree; it is a path iff no
        // internal node has 3 internal neighbors.
        let internal_deg = |v: usize| {
            canon.adj[v]
                .iter()
                .filter(|&&(u, _)| canon.labels[u].is_none())
                .count()
        };
        if internal.iter().any(|&v| internal_deg(v) > 2) {
            return Ok(None);
        }
        let back = |cv: usize| {
            map.iter()
                .position(|&m| m == Some(cv))
                .expect("canonical node originates from self")
        };
        if internal.len() == 1 {
            return Ok(Some(SpineEnds::Single(back(internal[0]))));
        }
        let mut ends = internal.iter().copied().filter(|&v| internal_deg(v) <= 1);
        let a = ends.next().expect("a path has endpoints");
        let b = ends.next().expect("a path has two endpoints");
        Ok(Some(SpineEnds::Pair(back(a), back(b))))
    }
}

/// Spine endpoints of a caterpillar subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpineEnds {
    /// No internal nodes (a single edge between two leaves).
    Empty,
    /// Exactly one internal node.
    Single(usize),
    /// Path of internal nodes with these two endpoints.
    Pair(usize, usize),
}

impl PartialEq for LeafTree {
    /// Leaf-metric equality: same leaf label set and same pairwise
    /// distances. Subdivided trees equal their canonical forms.
    fn eq(&self, other: &Self) -> bool {
        let a = self.distance_matrix();
        let b = other.distance_matrix();
        a.labels == b.labels && a.d == b.d
    }
}

impl Eq for LeafTree {}

/// Symmetric nonnegative integer matrix over an ordered label list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub d: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    pub fn validate(&self) -> Result<(), TreeError> {
        let m = self.labels.len();
        if self.d.len() != m || self.d.iter().any(|row| row.len() != m) {
            return Err(TreeError::MalformedMatrix(format!(
                "matrix shape does not match {m} labels"
            )));
        }
        let mut sorted = self.labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != m {
            return Err(TreeError::MalformedMatrix("duplicate labels".into()));
        }
        for i in 0..m {
            if self.d[i][i] != 0 {
                return Err(TreeError::MalformedMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..m {
                if self.d[i][j] != self.d[j][i] {
                    return Err(TreeError::MalformedMatrix(format!(
                        "asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, a: &str, b: &str) -> Result<u64, TreeError> {
        let ia = self
            .labels
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| TreeError::UnknownLabel(a.to_string()))?;
        let ib = self
            .labels
            .iter()
            .position(|l| l == b)
            .ok_or_else(|| TreeError::UnknownLabel(b.to_string()))?;
        Ok(self.d[ia][ib])
    }

    /// Indices sorted by label, for label-ordered iteration.
    fn label_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.labels.len()).collect();
        idx.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        idx
    }
}

/// Outcome of the four-point condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointReport {
    pub ok: bool,
    /// Lexicographically first violating quadruple under label order, with
    /// the three pairing sums `d(u,v)+d(w,t)`, `d(u,w)+d(v,t)`,
    /// `d(u,t)+d(v,w)`.
    pub violation: Option<FourPointViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointViolation {
    pub quad: [String; 4],
    pub sums: [u64; 3],
}

/// Checks `d(u,v)+d(w,t) ≤ max(d(u,w)+d(v,t), d(u,t)+d(v,w))` for every
/// quadruple of distinct points, i.e. that the two largest pairing sums tie.
pub fn check_four_point(dm: &DistanceMatrix) -> Result<FourPointReport, TreeError> {
    dm.validate()?;
    let idx = dm.label_order();
    let m = idx.len();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                for e in (c + 1)..m {
                    let (u, v, w, t) = (idx[a], idx[b], idx[c], idx[e]);
                    let s1 = dm.d[u][v] + dm.d[w][t];
                    let s2 = dm.d[u][w] + dm.d[v][t];
                    let s3 = dm.d[u][t] + dm.d[v][w];
                    let mut s = [s1, s2, s3];
                    s.sort_unstable();
                    if s[1] != s[2] {
                        return Ok(FourPointReport {
                            ok: false,
                            violation: Some(FourPointViolation {
                                quad: [
                                    dm.labels[u].clone(),
                                    dm.labels[v].clone(),
                                    dm.labels[w].clone(),
                                    dm.labels[t].clone(),
                                ],
                                sums: [s1, s2, s3],
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(FourPointReport {
        ok: true,
        violation: None,
    })
}

/// Outcome of the triple-perimeter parity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityReport {
    pub ok: bool,
    /// First odd-perimeter triple under label order, with its perimeter.
    pub violation: Option<ParityViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityViolation {
    pub triple: [String; 3],
    pub perimeter: u64,
}

/// Checks that `d(u,v)+d(u,w)+d(v,w)` is even for every leaf triple.
pub fn check_parity(dm: &DistanceMatrix) -> Result<ParityReport, TreeError> {
    dm.validate()?;
    let idx = dm.label_order();
    let m = idx.len();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let (u, v, w) = (idx[a], idx[b], idx[c]);
                let p = dm.d[u][v] + dm.d[u][w] + dm.d[v][w];
                if p % 2 != 0 {
                    return Ok(ParityReport {
                        ok: false,
                        violation: Some(ParityViolation {
                            triple: [
                                dm.labels[u].clone(),
                                dm.labels[v].clone(),
                                dm.labels[w].clone(),
                            ],
                            perimeter: p,
                        }),
                    });
                }
            }
        }
    }
    Ok(ParityReport {
        ok: true,
        violation: None,
    })
}

/// A discrepancy between a candidate root and a target graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    LeafSetMismatch {
        missing_leaves: Vec<String>,
        extra_leaves: Vec<String>,
    },
    /// Edge of the graph whose endpoints sit farther than `k` in the tree.
    MissingEdge { u: String, v: String, distance: u64 },
    /// Non-edge of the graph whose endpoints sit within `k` in the tree.
    ExtraEdge { u: String, v: String, distance: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub discrepancies: Vec<Discrepancy>,
}

/// Exact root check: the tree's leaves must be exactly the graph's vertices
/// and the k-th leaf power of the tree must equal the graph.
pub fn verify_leaf_root(t: &LeafTree, g: &Graph, k: u64) -> VerifyReport {
    let tree_leaves: Vec<String> = t.leaf_labels().iter().map(|s| s.to_string()).collect();
    let mut graph_labels: Vec<String> = g.labels().to_vec();
    graph_labels.sort();
    if tree_leaves != graph_labels {
        let missing: Vec<String> = graph_labels
            .iter()
            .filter(|l| !tree_leaves.contains(l))
            .cloned()
            .collect();
        let extra: Vec<String> = tree_leaves
            .iter()
            .filter(|l| !graph_labels.contains(l))
            .cloned()
            .collect();
        return VerifyReport {
            ok: false,
            discrepancies: vec![Discrepancy::LeafSetMismatch {
                missing_leaves: missing,
                extra_leaves: extra,
            }],
        };
    }
    let dm = t.distance_matrix();
    let mut discrepancies = Vec::new();
    for i in 0..dm.labels.len() {
        for j in (i + 1)..dm.labels.len() {
            let gu = g.index_of(&dm.labels[i]).expect("label sets match");
            let gv = g.index_of(&dm.labels[j]).expect("label sets match");
            let d = dm.d[i][j];
            let in_graph = g.has_edge(gu, gv);
            let in_power = d <= k;
            if in_graph && !in_power {
                discrepancies.push(Discrepancy::MissingEdge {
                    u: dm.labels[i].clone(),
                    v: dm.labels[j].clone(),
                    distance: d,
                });
            } else if !in_graph && in_power {
                discrepancies.push(Discrepancy::ExtraEdge {
                    u: dm.labels[i].clone(),
                    v: dm.labels[j].clone(),
                    distance: d,
                });
            }
        }
    }
    VerifyReport {
        ok: discrepancies.is_empty(),
        discrepancies,
    }
}
