//! Minimal non-k-leaf-power extraction.
//!
//! Starting from a graph that is not a k-leaf power, a greedy descent
//! deletes vertices one at a time while the remainder still fails
//! recognition. When every single-vertex deletion yields a k-leaf power,
//! the remainder is vertex-minimal; the emitted certificate carries a
//! fresh recognition run for the subgraph itself (NoRoot) and for each of
//! its one-vertex deletions (all Root), so it can be re-checked from
//! scratch.

use crate::graph::Graph;
use crate::recognize::{
    recognize, Budget, DistanceConstraintSet, RecognitionResult, RecognizeError,
    RecognizeOptions,
};
use std::collections::HashMap;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("the input graph already has a {k}-leaf root")]
    InputIsLeafPower { k: u64 },
    #[error(
        "budget exhausted mid-descent after deleting {} of {} vertices",
        .deleted.len(),
        .deleted.len() + .reached.n()
    )]
    BudgetExceeded {
        /// subgraph the descent had reached when the budget ran out
        reached: Graph,
        /// labels deleted so far, in deletion order
        deleted: Vec<String>,
    },
    #[error(transparent)]
    Recognize(RecognizeError),
}

/// Proof object for vertex-minimality of a non-k-leaf-power subgraph.
#[derive(Debug, Clone)]
pub struct MinimalityCertificate {
    pub parent: Graph,
    pub subgraph: Graph,
    pub k: u64,
    /// fresh recognition of the subgraph itself; must be NoRoot
    pub self_check: RecognitionResult,
    /// per subgraph vertex, in index order: fresh recognition of the
    /// subgraph with that vertex deleted; every one must be Root
    pub checks: Vec<(String, RecognitionResult)>,
}

impl MinimalityCertificate {
    /// Re-derives every claim in the certificate from scratch: the
    /// subgraph is induced in the parent, connected, not a k-leaf power,
    /// and every one-vertex deletion is one.
    pub fn recheck(&self) -> Result<bool, RecognizeError> {
        if !is_induced(&self.parent, &self.subgraph) {
            return Ok(false);
        }
        if self.subgraph.connected_components().len() != 1 {
            return Ok(false);
        }
        let opts = RecognizeOptions::default();
        let none = DistanceConstraintSet::new();
        if recognize(&self.subgraph, self.k, &none, &opts)?.is_root() {
            return Ok(false);
        }
        if self.checks.len() != self.subgraph.n() {
            return Ok(false);
        }
        for (v, (label, _)) in self.checks.iter().enumerate() {
            if label != self.subgraph.label(v) {
                return Ok(false);
            }
            let rest = delete_vertex(&self.subgraph, v);
            if !recognize(&rest, self.k, &none, &opts)?.is_root() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `sub` uses a subset of `parent`'s labels and inherits exactly the edges
/// between them.
fn is_induced(parent: &Graph, sub: &Graph) -> bool {
    let back: Option<Vec<usize>> = (0..sub.n())
        .map(|v| parent.index_of(sub.label(v)))
        .collect();
    let Some(back) = back else {
        return false;
    };
    for i in 0..sub.n() {
        for j in (i + 1)..sub.n() {
            if sub.has_edge(i, j) != parent.has_edge(back[i], back[j]) {
                return false;
            }
        }
    }
    true
}

fn delete_vertex(g: &Graph, v: usize) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    g.induced_subgraph(&crate::graph::VertexSet::new(keep))
        .expect("valid indices")
}

/// Memo key independent of vertex numbering: sorted labels plus sorted
/// label pairs for edges.
type CanonKey = (Vec<String>, Vec<(String, String)>);

fn canon_key(g: &Graph) -> CanonKey {
    let mut labels: Vec<String> = g.labels().to_vec();
    labels.sort();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            if a <= b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            }
        })
        .collect();
    edges.sort();
    (labels, edges)
}

/// Extracts a vertex-minimal induced subgraph of `g` that is not a k-leaf
/// power, probing deletions in ascending vertex index and restarting from
/// index 0 after every successful deletion (so a fixed input yields a
/// fixed certificate). The wall budget spans the entire descent; the
/// solver-node cap applies to each recognition run separately. Recognition
/// verdicts are memoized by labeled edge set during the descent, and the
/// emitted certificate is rebuilt with fresh recognition runs.
pub fn extract_minimal(
    g: &Graph,
    k: u64,
    budget: Budget,
) -> Result<MinimalityCertificate, ObstructionError> {
    let start = Instant::now();
    let none = DistanceConstraintSet::new();
    let opts_now = |budget: Budget| RecognizeOptions {
        linear_only: false,
        budget: Budget {
            wall: budget.wall.map(|w| w.saturating_sub(start.elapsed())),
            max_solver_nodes: budget.max_solver_nodes,
        },
    };

    let mut memo: HashMap<CanonKey, bool> = HashMap::new();
    let mut deleted: Vec<String> = Vec::new();
    let mut current = g.clone();

    // closure-free helper so errors can borrow descent state
    macro_rules! is_power {
        ($graph:expr) => {{
            let key = canon_key($graph);
            match memo.get(&key) {
                Some(&v) => v,
                None => match recognize($graph, k, &none, &opts_now(budget)) {
                    Ok(res) => {
                        let v = res.is_root();
                        memo.insert(key, v);
                        v
                    }
                    Err(RecognizeError::BudgetExceeded { .. }) => {
                        return Err(ObstructionError::BudgetExceeded {
                            reached: current.clone(),
                            deleted,
                        });
                    }
                    Err(e) => return Err(ObstructionError::Recognize(e)),
                },
            }
        }};
    }

    if is_power!(&current) {
        return Err(ObstructionError::InputIsLeafPower { k });
    }

    'descent: loop {
        for v in 0..current.n() {
            let probe = delete_vertex(&current, v);
            if !is_power!(&probe) {
                deleted.push(current.label(v).to_string());
                current = probe;
                continue 'descent;
            }
        }
        break;
    }

    // fresh re-checks for the certificate (bypassing the memo)
    let fresh = |graph: &Graph| -> Result<RecognitionResult, ObstructionError> {
        recognize(graph, k, &none, &opts_now(budget)).map_err(|e| match e {
            RecognizeError::BudgetExceeded { .. } => ObstructionError::BudgetExceeded {
                reached: current.clone(),
                deleted: deleted.clone(),
            },
            other => ObstructionError::Recognize(other),
        })
    };
    let self_check = fresh(&current)?;
    assert!(
        !self_check.is_root(),
        "internal error: minimal subgraph re-check found a root"
    );
    let mut checks = Vec::with_capacity(current.n());
    for v in 0..current.n() {
        let res = fresh(&delete_vertex(&current, v))?;
        assert!(
            res.is_root(),
            "internal error: deleting {} should leave a leaf power",
            current.label(v)
        );
        checks.push((current.label(v).to_string(), res));
    }
    assert_eq!(
        current.connected_components().len(),
        1,
        "internal error: a vertex-minimal non-leaf-power must be connected"
    );

    Ok(MinimalityCertificate {
        parent: g.clone(),
        subgraph: current,
        k,
        self_check,
        checks,
    })
}
