//! Edge-length systems over a fixed shape and slot assignment.
//!
//! Every unordered vertex pair carries a distance window [lo, hi] derived
//! from adjacency in the graph, the threshold k, and user constraints. A
//! depth-first search assigns positive integer lengths to shape edges in a
//! static order, propagating the windows through running path sums.
//! Lengths are capped: any tree realizing the windows can be normalized so
//! that no edge exceeds the cap, because an edge longer than every lower
//! bound only carries pairs whose constraints stay satisfied when it is
//! shortened to the cap. The search is therefore complete.

use crate::graph::Graph;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

/// Flat index of the unordered pair {i, j} with i < j among n items.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub(crate) const NO_UPPER: u64 = u64::MAX;

/// Distance windows per unordered vertex pair, plus the normalization cap.
pub(crate) struct PairBounds {
    pub n: usize,
    pub lo: Vec<u64>,
    pub hi: Vec<u64>,
    pub cap: u64,
}

/// Per-vertex-pair overrides resolved from user constraints.
#[derive(Default)]
pub(crate) struct ResolvedConstraints {
    /// (i, j) with i < j → extra lower bound
    pub pair_lo: std::collections::HashMap<(usize, usize), u64>,
    /// (i, j) with i < j → extra upper bound
    pub pair_hi: std::collections::HashMap<(usize, usize), u64>,
    /// per vertex: lower bound on the distance to its nearest leaf (0 = none)
    pub min_dist: Vec<u64>,
}

impl PairBounds {
    /// Windows for all vertex pairs: edges of `g` fall in [2, k] (3 when
    /// the endpoints are not true twins), non-edges in [k+1, ∞), tightened
    /// by the resolved constraints.
    pub(crate) fn build(g: &Graph, k: u64, rc: &ResolvedConstraints) -> PairBounds {
        let n = g.n();
        let pairs = n * (n - 1) / 2;
        let mut lo = vec![2u64; pairs];
        let mut hi = vec![NO_UPPER; pairs];
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pair_index(n, i, j);
                if g.has_edge(i, j) {
                    let twins = g.are_true_twins(i, j).expect("valid indices");
                    lo[p] = if twins { 2 } else { 3 };
                    hi[p] = k;
                } else {
                    lo[p] = k + 1;
                }
                if let Some(&b) = rc.pair_lo.get(&(i, j)) {
                    lo[p] = lo[p].max(b);
                }
                if let Some(&b) = rc.pair_hi.get(&(i, j)) {
                    hi[p] = hi[p].min(b);
                }
                let md = rc.min_dist[i].max(rc.min_dist[j]);
                lo[p] = lo[p].max(md);
            }
        }
        let cap = lo.iter().copied().max().unwrap_or(k + 1).max(k + 1);
        PairBounds { n, lo, hi, cap }
    }

    /// Some pair admits no distance at all (immediate negative verdict).
    pub(crate) fn contradictory(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }
}

/// Static per-shape data for the search: which edges lie on which
/// slot-pair paths.
pub(crate) struct SolverTables {
    pub n_slots: usize,
    pub n_edges: usize,
    /// edge index → slot pairs whose path uses it
    pub edge_pairs: Vec<Vec<u32>>,
    /// hop count (edges on path) per slot pair
    pub path_len: Vec<u32>,
}

impl SolverTables {
    pub(crate) fn new(n_nodes: usize, edges: &[(usize, usize)], leaves: &[usize]) -> SolverTables {
        assert!(edges.len() <= 64, "edge masks are 64-bit");
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_nodes]; // (nbr, edge id)
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let n_slots = leaves.len();
        let pairs = n_slots * (n_slots - 1) / 2;
        let mut path_len = vec![0u32; pairs];
        let mut edge_pairs: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
        for (si, &a) in leaves.iter().enumerate() {
            // BFS from a recording the incoming edge
            let mut par_edge = vec![usize::MAX; n_nodes];
            let mut par_node = vec![usize::MAX; n_nodes];
            let mut seen = vec![false; n_nodes];
            seen[a] = true;
            let mut queue = std::collections::VecDeque::from([a]);
            while let Some(v) = queue.pop_front() {
                for &(u, e) in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        par_edge[u] = e;
                        par_node[u] = v;
                        queue.push_back(u);
                    }
                }
            }
            for (sj, &b) in leaves.iter().enumerate().skip(si + 1) {
                let p = pair_index(n_slots, si, sj);
                let mut len = 0u32;
                let mut cur = b;
                while cur != a {
                    edge_pairs[par_edge[cur]].push(p as u32);
                    len += 1;
                    cur = par_node[cur];
                }
                path_len[p] = len;
            }
        }
        SolverTables {
            n_slots,
            n_edges: edges.len(),
            path_len,
            edge_pairs,
        }
    }
}

pub(crate) enum SolveOutcome {
    /// Lengths per edge, in the table's edge order.
    Solution(Vec<u64>),
    Infeasible,
    /// Stopped by the shared control before the search finished.
    Aborted,
}

/// Shared stop conditions, polled every few thousand search nodes.
pub(crate) struct SearchCtrl<'a> {
    pub deadline: Option<Instant>,
    pub node_cap: Option<u64>,
    /// total solver nodes across the whole search
    pub nodes: &'a AtomicU64,
    /// set by workers that observe the budget tripping
    pub budget_hit: &'a AtomicBool,
    /// smallest task index that has produced a witness so far
    pub found_at: &'a AtomicUsize,
    /// this worker's task index; a strictly earlier witness outranks any
    /// result this task could produce, so the search may stop
    pub task_index: usize,
}

impl SearchCtrl<'_> {
    fn should_stop(&self) -> bool {
        if self.found_at.load(Ordering::Relaxed) < self.task_index
            || self.budget_hit.load(Ordering::Relaxed)
        {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.budget_hit.store(true, Ordering::Relaxed);
                return true;
            }
        }
        if let Some(cap) = self.node_cap {
            if self.nodes.load(Ordering::Relaxed) > cap {
                self.budget_hit.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }
}

/// Reusable search state for one shape's pair count.
pub(crate) struct Solver {
    lo: Vec<u64>,
    hi: Vec<u64>,
    sum: Vec<u64>,
    left: Vec<u32>,
    lens: Vec<u64>,
    pending: u64,
}

const POLL_INTERVAL: u64 = 4096;

impl Solver {
    pub(crate) fn new() -> Solver {
        Solver {
            lo: Vec::new(),
            hi: Vec::new(),
            sum: Vec::new(),
            left: Vec::new(),
            lens: Vec::new(),
            pending: 0,
        }
    }

    /// First length assignment (in the fixed search order) realizing every
    /// pair window, or Infeasible after exhausting the capped space.
    pub(crate) fn solve(
        &mut self,
        t: &SolverTables,
        b: &PairBounds,
        assignment: &[usize],
        ctrl: &SearchCtrl,
    ) -> SolveOutcome {
        let pairs = t.n_slots * (t.n_slots - 1) / 2;
        self.lo.resize(pairs, 0);
        self.hi.resize(pairs, 0);
        self.sum.clear();
        self.sum.resize(pairs, 0);
        self.left.resize(pairs, 0);
        self.lens.clear();
        self.lens.resize(t.n_edges, 0);

        for si in 0..t.n_slots {
            for sj in (si + 1)..t.n_slots {
                let p = pair_index(t.n_slots, si, sj);
                let (u, v) = order(assignment[si], assignment[sj]);
                let q = pair_index(b.n, u, v);
                self.lo[p] = b.lo[q];
                self.hi[p] = b.hi[q];
                self.left[p] = t.path_len[p];
                // quick feasibility: the path must be able to reach lo and
                // stay under hi with lengths in [1, cap]
                let len = t.path_len[p] as u64;
                if len > self.hi[p] || len * b.cap < self.lo[p] {
                    return SolveOutcome::Infeasible;
                }
            }
        }
        self.pending = 0;
        let res = self.dfs(t, b.cap, 0, ctrl);
        ctrl.nodes.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
        match res {
            Err(()) => SolveOutcome::Aborted,
            Ok(true) => SolveOutcome::Solution(self.lens.clone()),
            Ok(false) => SolveOutcome::Infeasible,
        }
    }

    fn dfs(&mut self, t: &SolverTables, cap: u64, ei: usize, ctrl: &SearchCtrl) -> Result<bool, ()> {
        if ei == t.n_edges {
            return Ok(true);
        }
        self.pending += 1;
        if self.pending >= POLL_INTERVAL {
            ctrl.nodes.fetch_add(self.pending, Ordering::Relaxed);
            self.pending = 0;
            if ctrl.should_stop() {
                return Err(());
            }
        }
        let mut lo_e = 1u64;
        let mut hi_e = cap;
        for &p in &t.edge_pairs[ei] {
            let p = p as usize;
            let rem = (self.left[p] - 1) as u64;
            hi_e = hi_e.min(self.hi[p].saturating_sub(self.sum[p] + rem));
            lo_e = lo_e.max(self.lo[p].saturating_sub(self.sum[p] + rem * cap));
            if lo_e > hi_e {
                return Ok(false);
            }
        }
        for val in lo_e..=hi_e {
            for &p in &t.edge_pairs[ei] {
                let p = p as usize;
                self.sum[p] += val;
                self.left[p] -= 1;
            }
            self.lens[ei] = val;
            let found = self.dfs(t, cap, ei + 1, ctrl);
            for &p in &t.edge_pairs[ei] {
                let p = p as usize;
                self.sum[p] -= val;
                self.left[p] += 1;
            }
            if found != Ok(false) {
                return found;
            }
        }
        Ok(false)
    }
}

fn order(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Cheap assignment pre-filter: every pair whose window has a finite upper
/// bound needs at least as many hops available as the bound allows, i.e.
/// hops ≤ hi (lengths are ≥ 1 each).
pub(crate) fn hops_feasible(
    hops: &[Vec<u32>],
    b: &PairBounds,
    assignment: &[usize],
) -> bool {
    let n = assignment.len();
    for si in 0..n {
        for sj in (si + 1)..n {
            let (u, v) = order(assignment[si], assignment[sj]);
            let hi = b.hi[pair_index(b.n, u, v)];
            if hi != NO_UPPER && hops[si][sj] as u64 > hi {
                return false;
            }
        }
    }
    true
}
