//! Simple undirected graphs on dense integer indices with distinct string
//! labels, plus the neighborhood/twin/distance/component primitives the rest
//! of the crate consumes.

use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("label list has length {got}, expected {expected}")]
    LabelCountMismatch { got: usize, expected: usize },
}

/// Sorted, duplicate-free set of vertex indices of some graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Immutable simple undirected graph. Vertices are `0..n`, each carrying a
/// distinct label; adjacency is symmetric and irreflexive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    labels: Vec<String>,
    /// Row-major n*n adjacency matrix.
    adj: Vec<bool>,
    /// Sorted neighbor lists, derived from `adj`.
    nbrs: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from a label list and an edge list. Duplicate edges
    /// collapse; self-loops, out-of-range endpoints and duplicate labels are
    /// rejected.
    pub fn new(
        n: usize,
        labels: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        if labels.len() != n {
            return Err(GraphError::LabelCountMismatch {
                got: labels.len(),
                expected: n,
            });
        }
        let mut sorted = labels.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateLabel(w[0].clone()));
            }
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let nbrs = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u * n + v]).collect())
            .collect();
        Ok(Graph {
            n,
            labels,
            adj,
            nbrs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Index of the vertex carrying `label`, if any.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    fn check_index(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::IndexOutOfRange {
                index: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by `s`, reindexed densely in the order of `s` but
    /// keeping the original labels.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        for v in s.iter() {
            self.check_index(v)?;
        }
        let verts: Vec<usize> = s.iter().collect();
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(verts.len(), labels, &edges)
    }

    /// `{v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_index(v)?;
        let mut m = self.nbrs[v].clone();
        m.push(v);
        Ok(VertexSet::new(m))
    }

    /// Twin test: `u` and `v` are twins when they are adjacent to exactly
    /// the same other vertices — equal closed neighborhoods for an adjacent
    /// pair, equal open neighborhoods for a non-adjacent one (such as the
    /// diamond's degree-2 pair). Twins partition each graph into classes,
    /// so the relation is transitive on distinct pairs.
    pub fn are_true_twins(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_index(u)?;
        self.check_index(v)?;
        assert_ne!(u, v, "twin check requires two distinct vertices");
        let strip = |w: usize, other: usize| -> Vec<usize> {
            self.nbrs[w].iter().copied().filter(|&x| x != other).collect()
        };
        Ok(strip(u, v) == strip(v, u))
    }

    /// Breadth-first shortest-path edge count; `None` when unreachable.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            for &x in &self.nbrs[w] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[w] + 1;
                    if x == v {
                        return Ok(Some(dist[x]));
                    }
                    queue.push_back(x);
                }
            }
        }
        Ok(None)
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                for &x in &self.nbrs[w] {
                    if !seen[x] {
                        seen[x] = true;
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            }
            comps.push(VertexSet::new(comp));
        }
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn p3() -> Graph {
        Graph::new(3, labels(&["a", "b", "c"]), &[(0, 1), (1, 2)]).unwrap()
    }

    pub(crate) fn diamond() -> Graph {
        Graph::new(
            4,
            labels(&["b", "v1", "v2", "v3"]),
            &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn empty_graph_is_valid() {
        let g = Graph::new(0, vec![], &[]).unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.connected_components().is_empty());
    }

    #[test]
    fn p3_has_two_edges() {
        let g = p3();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn diamond_has_five_edges_and_one_nonedge() {
        let g = diamond();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(1, 3), "v1v3 must be the missing pair");
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, labels(&["a", "b"]), &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            Graph::new(2, labels(&["a", "a"]), &[]),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Graph::new(2, labels(&["a", "b"]), &[(0, 2)]),
            Err(GraphError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert_eq!(
            Graph::new(2, labels(&["a", "b"]), &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
    }

    #[test]
    fn induced_subgraph_of_diamond_is_p3() {
        let g = diamond();
        let s = VertexSet::new(vec![0, 1, 3]); // b, v1, v3
        let h = g.induced_subgraph(&s).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.labels(), &["b", "v1", "v3"]);
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn inducing_on_all_vertices_is_identity() {
        let g = diamond();
        let all: VertexSet = (0..g.n()).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_composes() {
        let g = diamond();
        let s = VertexSet::new(vec![0, 1, 2]);
        let once = g.induced_subgraph(&s).unwrap();
        let twice = once
            .induced_subgraph(&VertexSet::new(vec![0, 2]))
            .unwrap();
        let direct = g.induced_subgraph(&VertexSet::new(vec![0, 2])).unwrap();
        assert_eq!(twice, direct);
    }

    #[test]
    fn endpoints_of_p3_are_nonadjacent_pair() {
        let g = p3();
        let h = g.induced_subgraph(&VertexSet::new(vec![0, 2])).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn closed_neighborhood_of_diamond_center() {
        let g = diamond();
        assert_eq!(
            g.closed_neighborhood(2).unwrap(),
            VertexSet::new(vec![0, 1, 2, 3])
        );
        let iso = Graph::new(1, labels(&["x"]), &[]).unwrap();
        assert_eq!(iso.closed_neighborhood(0).unwrap(), VertexSet::new(vec![0]));
    }

    #[test]
    fn twins_in_k3_and_diamond() {
        let k3 = Graph::new(3, labels(&["a", "b", "c"]), &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(k3.are_true_twins(0, 1).unwrap());
        let g = diamond();
        assert!(
            g.are_true_twins(1, 3).unwrap(),
            "the degree-2 pair: equal open neighborhoods, non-adjacent"
        );
        assert!(
            g.are_true_twins(0, 2).unwrap(),
            "the hub pair: equal closed neighborhoods, adjacent"
        );
        assert!(!g.are_true_twins(0, 1).unwrap());
        let p = p3();
        assert!(!p.are_true_twins(0, 1).unwrap(), "endpoint vs middle");
        assert!(p.are_true_twins(0, 2).unwrap(), "two leaves on one node");
    }

    #[test]
    fn twin_relation_is_transitive_on_small_graphs() {
        // Exhaustive over all labeled graphs on 4 vertices.
        let names = labels(&["a", "b", "c", "d"]);
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for mask in 0u32..64 {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(4, names.clone(), &edges).unwrap();
            for u in 0..4 {
                for v in 0..4 {
                    for w in 0..4 {
                        if u != v && v != w && u != w {
                            let uv = g.are_true_twins(u, v).unwrap();
                            let vw = g.are_true_twins(v, w).unwrap();
                            let uw = g.are_true_twins(u, w).unwrap();
                            if uv && vw {
                                assert!(uw);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distances_in_p3() {
        let g = p3();
        assert_eq!(g.distance(0, 2).unwrap(), Some(2));
        assert_eq!(g.distance(1, 1).unwrap(), Some(0));
        let two = Graph::new(2, labels(&["a", "b"]), &[]).unwrap();
        assert_eq!(two.distance(0, 1).unwrap(), None);
    }

    #[test]
    fn components_are_ordered_by_smallest_member() {
        let g = p3();
        assert_eq!(g.connected_components(), vec![(0..3).collect()]);

        let two = Graph::new(2, labels(&["a", "b"]), &[]).unwrap();
        assert_eq!(
            two.connected_components(),
            vec![VertexSet::new(vec![0]), VertexSet::new(vec![1])]
        );

        // diamond ∪ K_2 on 6 vertices
        let g = Graph::new(
            6,
            labels(&["b", "v1", "v2", "v3", "p", "q"]),
            &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (4, 5)],
        )
        .unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 4);
        assert_eq!(comps[1].len(), 2);
    }

    #[test]
    fn distance_satisfies_triangle_inequality_on_small_graphs() {
        // All labeled graphs on up to 4 vertices (cheap slice of the
        // exhaustive property; the full n ≤ 6 sweep lives in integration
        // tests).
        for n in 0..=4usize {
            let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, names.clone(), &edges).unwrap();
                for u in 0..n {
                    for v in 0..n {
                        for w in 0..n {
                            let (duv, dvw, duw) = (
                                g.distance(u, v).unwrap(),
                                g.distance(v, w).unwrap(),
                                g.distance(u, w).unwrap(),
                            );
                            if let (Some(a), Some(b)) = (duv, dvw) {
                                if let Some(c) = duw {
                                    assert!(c <= a + b);
                                } else {
                                    panic!("u-v and v-w connected but u-w not");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
