//! Exhaustive k-leaf-power recognition.
//!
//! `recognize` decides whether a graph has a leaf root for threshold `k`:
//! a tree whose leaves are exactly the graph's vertices such that two
//! vertices are adjacent iff their leaf distance is at most `k`. The
//! search enumerates every tree shape on the right number of leaves
//! (internal degrees ≥ 3), every assignment of vertices to leaf slots up
//! to shape automorphism, and every capped edge-length system, so both
//! verdicts are certificates: `Root` carries a re-verified witness and
//! `NoRoot` is asserted only after exhaustion. Optional distance
//! constraints narrow the admissible roots; an optional budget turns long
//! searches into a distinct inconclusive error instead of a verdict.

mod shapes;
mod solver;

use crate::graph::Graph;
use crate::tree::{verify_leaf_root, LeafTree, SpineEnds, TreeError};
use rayon::prelude::*;
use shapes::Shape;
use solver::{PairBounds, ResolvedConstraints, SearchCtrl, SolveOutcome, Solver, SolverTables};
use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Hard ceiling on leaf counts; the search is exhaustive and not meant for
/// larger inputs.
const MAX_LEAVES: usize = 16;

#[derive(Debug, Error)]
pub enum RecognizeError {
    #[error("recognition needs k ≥ 2, got {k}")]
    KTooSmall { k: u64 },
    #[error("topology enumeration needs at least 2 leaves, got {n_leaves}")]
    TooFewLeaves { n_leaves: usize },
    #[error("{n_leaves} leaves exceed the exhaustive-search limit of {limit}")]
    TooManyLeaves { n_leaves: usize, limit: usize },
    #[error("skeleton does not fit the graph: {0}")]
    SlotMismatch(String),
    #[error("constraint names unknown vertex {0:?}")]
    UnknownLabel(String),
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error(
        "search budget exhausted after {} topologies and {} length systems",
        .stats.topologies,
        .stats.systems
    )]
    BudgetExceeded { stats: SearchStats },
}

// ---------------------------------------------------------------------------
// constraints

/// Distance side conditions a root must satisfy on top of the leaf-power
/// equations: per-pair windows, exact pins, and per-vertex lower bounds on
/// the distance to the nearest other leaf.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceConstraintSet {
    pair_bounds: Vec<(String, String, u64, u64)>,
    pins: Vec<(String, String, u64)>,
    min_dists: Vec<(String, u64)>,
}

impl DistanceConstraintSet {
    pub fn new() -> DistanceConstraintSet {
        DistanceConstraintSet::default()
    }

    /// Requires `lo ≤ d_T(u, v) ≤ hi`. Windows below 2 are meaningless for
    /// leaf pairs and rejected.
    pub fn bound(
        &mut self,
        u: &str,
        v: &str,
        lo: u64,
        hi: u64,
    ) -> Result<&mut Self, RecognizeError> {
        if u == v {
            return Err(RecognizeError::InvalidConstraint(format!(
                "pair bound on a single vertex {u:?}"
            )));
        }
        if lo < 2 || lo > hi {
            return Err(RecognizeError::InvalidConstraint(format!(
                "pair window [{lo}, {hi}] must satisfy 2 ≤ lo ≤ hi"
            )));
        }
        self.pair_bounds
            .push((u.to_string(), v.to_string(), lo, hi));
        Ok(self)
    }

    /// Requires `d_T(u, v) = d` exactly.
    pub fn pin(&mut self, u: &str, v: &str, d: u64) -> Result<&mut Self, RecognizeError> {
        if u == v {
            return Err(RecognizeError::InvalidConstraint(format!(
                "pin on a single vertex {u:?}"
            )));
        }
        if d < 2 {
            return Err(RecognizeError::InvalidConstraint(format!(
                "pinned distance {d} below the minimum leaf distance 2"
            )));
        }
        self.pins.push((u.to_string(), v.to_string(), d));
        Ok(self)
    }

    /// Requires the distance from leaf `v` to its nearest other leaf to be
    /// at least `bound`.
    pub fn min_distance(&mut self, v: &str, bound: u64) -> Result<&mut Self, RecognizeError> {
        if bound == 0 {
            return Err(RecognizeError::InvalidConstraint(
                "zero min-distance bound is vacuous".to_string(),
            ));
        }
        self.min_dists.push((v.to_string(), bound));
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.pair_bounds.is_empty() && self.pins.is_empty() && self.min_dists.is_empty()
    }

    pub fn pair_bounds(&self) -> &[(String, String, u64, u64)] {
        &self.pair_bounds
    }

    pub fn pins(&self) -> &[(String, String, u64)] {
        &self.pins
    }

    pub fn min_distances(&self) -> &[(String, u64)] {
        &self.min_dists
    }

    /// Resolves labels against a graph and merges overlapping constraints
    /// into per-pair windows; pins must agree with any window on the same
    /// pair.
    fn resolve(&self, g: &Graph) -> Result<ResolvedConstraints, RecognizeError> {
        let idx = |label: &str| -> Result<usize, RecognizeError> {
            g.index_of(label)
                .ok_or_else(|| RecognizeError::UnknownLabel(label.to_string()))
        };
        let mut rc = ResolvedConstraints {
            min_dist: vec![0u64; g.n()],
            ..Default::default()
        };
        for (u, v, lo, hi) in &self.pair_bounds {
            let (a, b) = sorted_pair(idx(u)?, idx(v)?);
            let l = rc.pair_lo.entry((a, b)).or_insert(*lo);
            *l = (*l).max(*lo);
            let h = rc.pair_hi.entry((a, b)).or_insert(*hi);
            *h = (*h).min(*hi);
        }
        for ((a, b), lo) in rc.pair_lo.clone() {
            if let Some(hi) = rc.pair_hi.get(&(a, b)) {
                if lo > *hi {
                    return Err(RecognizeError::InvalidConstraint(format!(
                        "pair windows on ({}, {}) collapse to the empty set",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        for (u, v, d) in &self.pins {
            let (a, b) = sorted_pair(idx(u)?, idx(v)?);
            let lo = rc.pair_lo.get(&(a, b)).copied().unwrap_or(2);
            let hi = rc.pair_hi.get(&(a, b)).copied().unwrap_or(u64::MAX);
            if *d < lo || *d > hi {
                return Err(RecognizeError::InvalidConstraint(format!(
                    "pin d({u}, {v}) = {d} conflicts with the window [{lo}, {hi}]"
                )));
            }
            rc.pair_lo.insert((a, b), *d);
            rc.pair_hi.insert((a, b), *d);
        }
        for (v, bound) in &self.min_dists {
            let i = idx(v)?;
            rc.min_dist[i] = rc.min_dist[i].max(*bound);
        }
        Ok(rc)
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Checks the constraint set against a concrete tree.
pub fn satisfies_constraints(
    t: &LeafTree,
    c: &DistanceConstraintSet,
) -> Result<bool, TreeError> {
    for (u, v, lo, hi) in &c.pair_bounds {
        let d = t.leaf_distance(u, v)?;
        if d < *lo || d > *hi {
            return Ok(false);
        }
    }
    for (u, v, want) in &c.pins {
        if t.leaf_distance(u, v)? != *want {
            return Ok(false);
        }
    }
    for (v, bound) in &c.min_dists {
        if t.min_leaf_distance(v)? < *bound {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// options, stats, results

/// Resource ceiling for a search. `None` fields are unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub wall: Option<Duration>,
    pub max_solver_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RecognizeOptions {
    /// Restrict the search to caterpillar shapes (internal nodes on a path).
    pub linear_only: bool,
    pub budget: Budget,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// leaf-slot assignments examined (across all shapes)
    pub topologies: u64,
    /// length systems handed to the solver after cheap filtering
    pub systems: u64,
    /// search nodes expanded inside the length solver
    pub solver_nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Witness root; re-verified against the graph and constraints before
    /// being returned.
    Root(LeafTree),
    /// No admissible root exists; asserted only after exhausting the
    /// search space.
    NoRoot,
}

#[derive(Debug, Clone)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl RecognitionResult {
    pub fn is_root(&self) -> bool {
        matches!(self.verdict, Verdict::Root(_))
    }

    pub fn root(&self) -> Option<&LeafTree> {
        match &self.verdict {
            Verdict::Root(t) => Some(t),
            Verdict::NoRoot => None,
        }
    }
}

// ---------------------------------------------------------------------------
// topology skeletons (public enumeration)

/// A tree shape with graph vertices assigned to its leaf slots, before any
/// edge lengths are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologySkeleton {
    pub n_nodes: usize,
    /// unweighted tree edges; also the length order used by `solve_lengths`
    pub edges: Vec<(usize, usize)>,
    /// node ids of the leaves; position in this list is the slot index
    pub leaf_slots: Vec<usize>,
    /// slot index → assigned vertex index
    pub assignment: Vec<usize>,
    /// position of the underlying shape in the canonical shape order
    pub shape_index: usize,
    pub shape_code: String,
}

/// Streams every (shape, leaf-slot assignment) pair for `n_leaves` labeled
/// vertices: each shape exactly once in canonical order (internal node
/// count, then code), each assignment exactly once per shape automorphism
/// orbit.
pub fn enumerate_topologies(
    n_leaves: usize,
    linear_only: bool,
) -> Result<Topologies, RecognizeError> {
    if n_leaves < 2 {
        return Err(RecognizeError::TooFewLeaves { n_leaves });
    }
    if n_leaves > MAX_LEAVES {
        return Err(RecognizeError::TooManyLeaves {
            n_leaves,
            limit: MAX_LEAVES,
        });
    }
    let all = shapes::shapes_for(n_leaves);
    let kept: Vec<usize> = (0..all.len())
        .filter(|&i| !linear_only || all[i].is_caterpillar)
        .collect();
    let mut stream = Topologies {
        shapes: all,
        kept,
        n_leaves,
        pos: 0,
        tasks: Vec::new().into_iter(),
        buf: VecDeque::new(),
        started: false,
    };
    stream.advance_shape();
    Ok(stream)
}

pub struct Topologies {
    shapes: Arc<Vec<Shape>>,
    kept: Vec<usize>,
    n_leaves: usize,
    pos: usize,
    tasks: std::vec::IntoIter<Vec<u32>>,
    buf: VecDeque<Vec<usize>>,
    started: bool,
}

impl Topologies {
    fn current(&self) -> Option<&Shape> {
        self.kept
            .get(self.pos)
            .map(|&si| &self.shapes[si])
    }

    fn advance_shape(&mut self) {
        if self.started {
            self.pos += 1;
        }
        self.started = true;
        if let Some(shape) = self.current() {
            self.tasks = shapes::root_tasks(shape, self.n_leaves).into_iter();
        }
    }

    fn skeleton(&self, assignment: Vec<usize>) -> TopologySkeleton {
        let shape = self.current().expect("buffer only fills from a shape");
        TopologySkeleton {
            n_nodes: shape.n_nodes,
            edges: shape.edges.clone(),
            leaf_slots: shape.leaves.clone(),
            assignment,
            shape_index: self.pos,
            shape_code: shape.code.clone(),
        }
    }
}

impl Iterator for Topologies {
    type Item = TopologySkeleton;

    fn next(&mut self) -> Option<TopologySkeleton> {
        loop {
            if let Some(a) = self.buf.pop_front() {
                return Some(self.skeleton(a));
            }
            let si = *self.kept.get(self.pos)?;
            match self.tasks.next() {
                Some(task) => {
                    let shapes = self.shapes.clone();
                    let shape = &shapes[si];
                    let mut assignment = vec![0usize; self.n_leaves];
                    let mut node_masks = vec![0u32; shape.n_nodes];
                    let buf = &mut self.buf;
                    shapes::for_each_assignment(
                        shape,
                        &task,
                        &mut assignment,
                        &mut node_masks,
                        &mut |a| {
                            buf.push_back(a.to_vec());
                            true
                        },
                    );
                }
                None => self.advance_shape(),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// public length solving

/// Solves for positive integer edge lengths on a fixed skeleton so that
/// graph edges sit within k, non-edges beyond k, and all constraints hold.
/// Returns the first solution in the fixed search order (lengths aligned
/// with `skeleton.edges`) or `None` when the capped system is infeasible.
pub fn solve_lengths(
    skeleton: &TopologySkeleton,
    g: &Graph,
    k: u64,
    c: &DistanceConstraintSet,
) -> Result<Option<Vec<u64>>, RecognizeError> {
    if k < 2 {
        return Err(RecognizeError::KTooSmall { k });
    }
    validate_skeleton(skeleton, g.n())?;
    let rc = c.resolve(g)?;
    let bounds = PairBounds::build(g, k, &rc);
    if bounds.contradictory() {
        return Ok(None);
    }
    let tables = SolverTables::new(skeleton.n_nodes, &skeleton.edges, &skeleton.leaf_slots);
    let nodes = AtomicU64::new(0);
    let budget_hit = AtomicBool::new(false);
    let found_at = AtomicUsize::new(usize::MAX);
    let ctrl = SearchCtrl {
        deadline: None,
        node_cap: None,
        nodes: &nodes,
        budget_hit: &budget_hit,
        found_at: &found_at,
        task_index: 0,
    };
    let mut solver = Solver::new();
    match solver.solve(&tables, &bounds, &skeleton.assignment, &ctrl) {
        SolveOutcome::Solution(lens) => Ok(Some(lens)),
        SolveOutcome::Infeasible => Ok(None),
        SolveOutcome::Aborted => unreachable!("no budget was set"),
    }
}

fn validate_skeleton(s: &TopologySkeleton, n_vertices: usize) -> Result<(), RecognizeError> {
    let err = |msg: String| Err(RecognizeError::SlotMismatch(msg));
    if s.n_nodes < 2 {
        return err(format!("{} nodes cannot carry leaf slots", s.n_nodes));
    }
    if s.edges.len() + 1 != s.n_nodes {
        return err(format!(
            "{} edges on {} nodes is not a tree",
            s.edges.len(),
            s.n_nodes
        ));
    }
    if s.edges.len() > 64 {
        return err("more than 64 edges".to_string());
    }
    let mut deg = vec![0usize; s.n_nodes];
    let mut adj = vec![Vec::new(); s.n_nodes];
    for &(u, v) in &s.edges {
        if u >= s.n_nodes || v >= s.n_nodes || u == v {
            return err(format!("bad edge ({u}, {v})"));
        }
        deg[u] += 1;
        deg[v] += 1;
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; s.n_nodes];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    if count != s.n_nodes {
        return err("edge set is disconnected".to_string());
    }
    let mut slots_sorted = s.leaf_slots.clone();
    slots_sorted.sort_unstable();
    slots_sorted.dedup();
    if slots_sorted.len() != s.leaf_slots.len() {
        return err("duplicate leaf slot".to_string());
    }
    let leaves: Vec<usize> = (0..s.n_nodes).filter(|&v| deg[v] == 1).collect();
    if slots_sorted != leaves {
        return err("leaf slots must be exactly the degree-1 nodes".to_string());
    }
    if let Some(v) = (0..s.n_nodes).find(|&v| deg[v] == 2) {
        return err(format!("internal node {v} has degree 2"));
    }
    if s.leaf_slots.len() != n_vertices || s.assignment.len() != n_vertices {
        return err(format!(
            "{} slots / {} assignments for {} vertices",
            s.leaf_slots.len(),
            s.assignment.len(),
            n_vertices
        ));
    }
    let mut used = vec![false; n_vertices];
    for &x in &s.assignment {
        if x >= n_vertices || used[x] {
            return err("assignment is not a permutation of the vertices".to_string());
        }
        used[x] = true;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// recognition

/// Shared counters and limits for one search, across components and
/// parallel workers.
struct CoreCtl<'a> {
    deadline: Option<Instant>,
    node_cap: Option<u64>,
    nodes: &'a AtomicU64,
    topologies: &'a AtomicU64,
    systems: &'a AtomicU64,
    budget_hit: &'a AtomicBool,
}

impl CoreCtl<'_> {
    fn budget_tripped(&self) -> bool {
        if self.budget_hit.load(Ordering::Relaxed) {
            return true;
        }
        let tripped = self
            .deadline
            .map(|d| Instant::now() >= d)
            .unwrap_or(false)
            || self
                .node_cap
                .map(|c| self.nodes.load(Ordering::Relaxed) > c)
                .unwrap_or(false);
        if tripped {
            self.budget_hit.store(true, Ordering::Relaxed);
        }
        tripped
    }
}

enum ConnOutcome {
    Found(LeafTree),
    Exhausted,
    Budget,
}

/// Decides whether `g` is a k-leaf power subject to `c`, with an optional
/// budget. `Root` carries a witness that has been re-verified; `NoRoot`
/// certifies exhaustion; an exceeded budget is an error, not a verdict.
pub fn recognize(
    g: &Graph,
    k: u64,
    c: &DistanceConstraintSet,
    opts: &RecognizeOptions,
) -> Result<RecognitionResult, RecognizeError> {
    if k < 2 {
        return Err(RecognizeError::KTooSmall { k });
    }
    if g.n() > MAX_LEAVES {
        return Err(RecognizeError::TooManyLeaves {
            n_leaves: g.n(),
            limit: MAX_LEAVES,
        });
    }
    let start = Instant::now();
    let rc = c.resolve(g)?;

    let topologies = AtomicU64::new(0);
    let systems = AtomicU64::new(0);
    let nodes = AtomicU64::new(0);
    let budget_hit = AtomicBool::new(false);
    let ctl = CoreCtl {
        deadline: opts.budget.wall.map(|w| start + w),
        node_cap: opts.budget.max_solver_nodes,
        nodes: &nodes,
        topologies: &topologies,
        systems: &systems,
        budget_hit: &budget_hit,
    };

    let outcome = recognize_dispatch(g, k, &rc, opts.linear_only, &ctl);

    let stats = SearchStats {
        topologies: topologies.load(Ordering::Relaxed),
        systems: systems.load(Ordering::Relaxed),
        solver_nodes: nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    };
    match outcome {
        ConnOutcome::Found(tree) => {
            let report = verify_leaf_root(&tree, g, k);
            assert!(
                report.ok,
                "internal error: witness failed re-verification: {:?}",
                report.discrepancies
            );
            assert!(
                satisfies_constraints(&tree, c).expect("witness leaves match the graph"),
                "internal error: witness violates the constraint set"
            );
            if opts.linear_only && g.n() >= 2 {
                assert!(
                    tree.is_caterpillar_subdivision()
                        .expect("witness has ≥ 2 leaves")
                        .is_some(),
                    "internal error: linear-mode witness is not a caterpillar"
                );
            }
            Ok(RecognitionResult {
                verdict: Verdict::Root(tree),
                stats,
            })
        }
        ConnOutcome::Exhausted => Ok(RecognitionResult {
            verdict: Verdict::NoRoot,
            stats,
        }),
        ConnOutcome::Budget => Err(RecognizeError::BudgetExceeded { stats }),
    }
}

/// Degenerate cases, component decomposition, and the connected search.
fn recognize_dispatch(
    g: &Graph,
    k: u64,
    rc: &ResolvedConstraints,
    linear_only: bool,
    ctl: &CoreCtl,
) -> ConnOutcome {
    match g.n() {
        0 => return ConnOutcome::Found(LeafTree::trivial_empty()),
        1 => return ConnOutcome::Found(LeafTree::trivial_leaf(g.label(0))),
        _ => {}
    }
    let comps = g.connected_components();
    if comps.len() == 1 {
        return search_connected(g, k, rc, linear_only, ctl);
    }

    // Component decomposition: roots of the components chained far apart
    // realize exactly the disjoint union. Pair constraints spanning two
    // components leave the per-component searches, so those fall back to
    // the whole-graph search.
    let comp_of = {
        let mut m = vec![usize::MAX; g.n()];
        for (ci, comp) in comps.iter().enumerate() {
            for v in comp.iter() {
                m[v] = ci;
            }
        }
        m
    };
    let cross = rc
        .pair_lo
        .keys()
        .chain(rc.pair_hi.keys())
        .any(|&(a, b)| comp_of[a] != comp_of[b]);
    if cross {
        return search_connected(g, k, rc, linear_only, ctl);
    }

    let mut roots: Vec<LeafTree> = Vec::new();
    for comp in &comps {
        let sub = g.induced_subgraph(comp).expect("component indices valid");
        let verts: Vec<usize> = comp.iter().collect();
        let mut back = HashMap::new();
        for (new, &old) in verts.iter().enumerate() {
            back.insert(old, new);
        }
        let sub_rc = ResolvedConstraints {
            pair_lo: rc
                .pair_lo
                .iter()
                .filter(|((a, b), _)| comp.contains(*a) && comp.contains(*b))
                .map(|(&(a, b), &v)| (sorted_pair(back[&a], back[&b]), v))
                .collect(),
            pair_hi: rc
                .pair_hi
                .iter()
                .filter(|((a, b), _)| comp.contains(*a) && comp.contains(*b))
                .map(|(&(a, b), &v)| (sorted_pair(back[&a], back[&b]), v))
                .collect(),
            min_dist: verts.iter().map(|&v| rc.min_dist[v]).collect(),
        };
        let outcome = if sub.n() == 1 {
            ConnOutcome::Found(LeafTree::trivial_leaf(sub.label(0)))
        } else {
            search_connected(&sub, k, &sub_rc, linear_only, ctl)
        };
        match outcome {
            ConnOutcome::Found(t) => roots.push(t),
            other => return other,
        }
    }
    let max_bound = rc.min_dist.iter().copied().max().unwrap_or(0);
    ConnOutcome::Found(join_roots(&roots, k, max_bound, linear_only))
}

/// Combines one root per component into a root of the disjoint union: the
/// roots are chained with long internal paths so every cross-component
/// leaf distance exceeds both k and every min-distance bound.
fn join_roots(roots: &[LeafTree], k: u64, max_bound: u64, linear_only: bool) -> LeafTree {
    let bridge = (2 * k + 1).max(max_bound);
    let mut labels: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut total = 0usize;
    // (entry, exit) attachment nodes per component, in combined indexing
    let mut hooks: Vec<(usize, usize)> = Vec::new();

    for t in roots {
        let off = total;
        total += t.node_count();
        for v in 0..t.node_count() {
            if let Some(l) = t.label(v) {
                labels.push((off + v, l.to_string()));
            }
        }
        for (u, v, len) in t.edges() {
            edges.push((off + u, off + v, len));
        }
        let hook = match t.node_count() {
            0 => unreachable!("components are nonempty"),
            1 => {
                // lone leaf: hang it from a fresh chain node, far enough
                // out that it clears every adjacency threshold
                let p = total;
                total += 1;
                edges.push((off, p, k + 1));
                (p, p)
            }
            2 => {
                // two leaves on one edge: split the edge so the chain can
                // attach to a real node without disturbing the distance
                let (u, v, len) = t.edges()[0];
                let (first, second) = if t.label(u) <= t.label(v) {
                    (u, v)
                } else {
                    (v, u)
                };
                edges.retain(|&(a, b, _)| (a, b) != (off + u, off + v));
                let p = total;
                total += 1;
                edges.push((off + first, p, 1));
                edges.push((p, off + second, len - 1));
                (p, p)
            }
            _ => {
                if linear_only {
                    match t
                        .is_caterpillar_subdivision()
                        .expect("≥ 2 leaves")
                        .expect("linear witnesses are caterpillars")
                    {
                        SpineEnds::Empty => unreachable!("≥ 3 nodes have an internal node"),
                        SpineEnds::Single(v) => (off + v, off + v),
                        SpineEnds::Pair(a, b) => (off + a, off + b),
                    }
                } else {
                    // deterministic internal attachment point: the
                    // neighbor of the lexicographically smallest leaf
                    let best = (0..t.node_count())
                        .filter(|&v| t.is_leaf(v))
                        .min_by_key(|&v| t.label(v).expect("leaf").to_string())
                        .expect("≥ 2 leaves");
                    let (nbr, _) = t.neighbors(best)[0];
                    (off + nbr, off + nbr)
                }
            }
        };
        hooks.push(hook);
    }
    for w in hooks.windows(2) {
        edges.push((w[0].1, w[1].0, bridge));
    }
    let label_refs: Vec<(usize, &str)> = labels.iter().map(|(v, l)| (*v, l.as_str())).collect();
    LeafTree::new(total, &label_refs, &edges).expect("joined chain is a valid leaf tree")
}

/// Exhaustive parallel search over shapes × assignments × length systems
/// for one connected graph (also used for whole disconnected graphs when
/// constraints span components).
fn search_connected(
    g: &Graph,
    k: u64,
    rc: &ResolvedConstraints,
    linear_only: bool,
    ctl: &CoreCtl,
) -> ConnOutcome {
    let n = g.n();
    let bounds = PairBounds::build(g, k, rc);
    if bounds.contradictory() {
        return ConnOutcome::Exhausted;
    }
    let all = shapes::shapes_for(n);
    let kept: Vec<usize> = (0..all.len())
        .filter(|&i| !linear_only || all[i].is_caterpillar)
        .collect();
    let tables: Vec<SolverTables> = kept
        .iter()
        .map(|&si| SolverTables::new(all[si].n_nodes, &all[si].edges, &all[si].leaves))
        .collect();
    let tasks: Vec<(usize, Vec<u32>)> = kept
        .iter()
        .enumerate()
        .flat_map(|(ki, &si)| {
            shapes::root_tasks(&all[si], n)
                .into_iter()
                .map(move |t| (ki, t))
        })
        .collect();

    let found_at = AtomicUsize::new(usize::MAX);
    let witness: Mutex<Option<(usize, LeafTree)>> = Mutex::new(None);

    tasks.par_iter().enumerate().for_each(|(ti, (ki, task))| {
        if found_at.load(Ordering::Relaxed) < ti || ctl.budget_tripped() {
            return;
        }
        let shape = &all[kept[*ki]];
        let t = &tables[*ki];
        let ctrl = SearchCtrl {
            deadline: ctl.deadline,
            node_cap: ctl.node_cap,
            nodes: ctl.nodes,
            budget_hit: ctl.budget_hit,
            found_at: &found_at,
            task_index: ti,
        };
        let mut solver = Solver::new();
        let mut assignment = vec![0usize; n];
        let mut node_masks = vec![0u32; shape.n_nodes];
        let mut since_poll = 0u32;
        shapes::for_each_assignment(shape, task, &mut assignment, &mut node_masks, &mut |a| {
            ctl.topologies.fetch_add(1, Ordering::Relaxed);
            since_poll += 1;
            if since_poll >= 256 {
                since_poll = 0;
                if found_at.load(Ordering::Relaxed) < ti || ctl.budget_tripped() {
                    return false;
                }
            }
            if !solver::hops_feasible(&shape.hops, &bounds, a) {
                return true;
            }
            ctl.systems.fetch_add(1, Ordering::Relaxed);
            match solver.solve(t, &bounds, a, &ctrl) {
                SolveOutcome::Infeasible => true,
                SolveOutcome::Aborted => false,
                SolveOutcome::Solution(lens) => {
                    let leaf_labels: Vec<(usize, &str)> = shape
                        .leaves
                        .iter()
                        .enumerate()
                        .map(|(slot, &node)| (node, g.label(a[slot])))
                        .collect();
                    let weighted: Vec<(usize, usize, u64)> = shape
                        .edges
                        .iter()
                        .zip(&lens)
                        .map(|(&(u, v), &len)| (u, v, len))
                        .collect();
                    let tree = LeafTree::new(shape.n_nodes, &leaf_labels, &weighted)
                        .expect("solved shape is a valid leaf tree");
                    let mut slot = witness.lock().expect("witness lock");
                    if slot.as_ref().map(|(best, _)| ti < *best).unwrap_or(true) {
                        *slot = Some((ti, tree));
                    }
                    found_at.fetch_min(ti, Ordering::Relaxed);
                    false
                }
            }
        });
    });

    let best = witness.into_inner().expect("witness lock");
    match best {
        Some((_, tree)) => ConnOutcome::Found(tree),
        None if ctl.budget_hit.load(Ordering::Relaxed) => ConnOutcome::Budget,
        None => ConnOutcome::Exhausted,
    }
}

// ---------------------------------------------------------------------------
// exhaustive sweep over small labeled graphs

/// Verdict for one labeled graph in the exhaustive sweep: vertices are
/// `v1..vn` and bit `t` of `edge_mask` is the t-th pair `(i, j)`, `i < j`,
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraphVerdict {
    pub n: usize,
    pub edge_mask: u64,
    pub is_power: bool,
}

/// Runs `recognize` (unconstrained, unlimited) over every labeled graph
/// with at most `n_max ≤ 6` vertices.
pub fn recognize_all_small(
    n_max: usize,
    k: u64,
) -> Result<Vec<SmallGraphVerdict>, RecognizeError> {
    assert!(n_max <= 6, "the labeled sweep is limited to 6 vertices");
    if k < 2 {
        return Err(RecognizeError::KTooSmall { k });
    }
    let opts = RecognizeOptions::default();
    let none = DistanceConstraintSet::new();
    let mut out = Vec::new();
    for n in 0..=n_max {
        let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(t, _)| mask >> t & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::new(n, label_refs.iter().map(|s| s.to_string()).collect(), &edges)
                .expect("sweep graphs are simple");
            let res = recognize(&g, k, &none, &opts)?;
            out.push(SmallGraphVerdict {
                n,
                edge_mask: mask,
                is_power: res.is_root(),
            });
        }
    }
    Ok(out)
}
