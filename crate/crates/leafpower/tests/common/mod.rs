//! Helpers shared by the integration suites: a brute-force leaf-power
//! oracle built directly from the definition, plus small-graph utilities
//! (mask graphs, union-of-cliques, forbidden-subgraph checks).

// each integration target compiles this module independently and none of
// them uses every helper
#![allow(dead_code)]

use leafpower::{Graph, LeafTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Thresholds the brute-force oracle covers.
pub const ORACLE_K: [u64; 4] = [2, 3, 4, 5];

/// Largest edge length the oracle ever needs: a root for the largest
/// threshold k can always be normalized so no edge exceeds k + 1 (a longer
/// edge only lies on leaf paths that are already non-edges, and stays
/// ≥ k + 1 after clamping), and smaller thresholds need even less.
const LEN_MAX: u64 = 6;

/// Achievable adjacency masks on `n` labeled vertices, one bitmap per
/// threshold in [`ORACLE_K`]. Bit `t` of a mask is the t-th pair `(i, j)`,
/// `i < j`, in lexicographic order — the same convention
/// `recognize_all_small` uses.
pub struct MaskSets {
    pub n: usize,
    sets: [Vec<u64>; 4],
}

impl MaskSets {
    fn empty(n: usize) -> MaskSets {
        let words = ((1usize << (n * (n - 1) / 2)) + 63) / 64;
        MaskSets {
            n,
            sets: std::array::from_fn(|_| vec![0u64; words.max(1)]),
        }
    }

    fn insert(&mut self, ki: usize, mask: u32) {
        self.sets[ki][(mask / 64) as usize] |= 1u64 << (mask % 64);
    }

    pub fn contains(&self, ki: usize, mask: u32) -> bool {
        self.sets[ki][(mask / 64) as usize] >> (mask % 64) & 1 == 1
    }

    pub fn count(&self, ki: usize) -> usize {
        self.sets[ki].iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Decodes a Prüfer sequence over `m` nodes into the corresponding labeled
/// tree's edge list.
pub fn prufer_decode(m: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), m - 2);
    let mut deg = vec![1u32; m];
    for &s in seq {
        deg[s] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &s in seq {
        let u = (0..m).find(|&v| deg[v] == 1).expect("a leaf always remains");
        edges.push((u, s));
        deg[u] = 0;
        deg[s] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| deg[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Calls `f` with every Prüfer sequence of length `len` over the `c`-symbol
/// internal alphabet `{base, …, base+c−1}` in which all `c` symbols appear
/// and first occurrences come in increasing order. One representative per
/// relabeling of the internal nodes, so isomorphic topologies are not
/// enumerated `c!` times over.
fn for_each_internal_sequence(base: usize, c: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    fn go(
        base: usize,
        c: usize,
        len: usize,
        used: usize,
        seq: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if seq.len() == len {
            debug_assert_eq!(used, c);
            f(seq);
            return;
        }
        // a choice is viable only if the remaining positions can still seat
        // every fresh symbol not introduced yet
        let remaining = len - seq.len() - 1;
        for s in 0..(used + 1).min(c) {
            let used_next = used.max(s + 1);
            if c - used_next > remaining {
                continue;
            }
            seq.push(base + s);
            go(base, c, len, used_next, seq, f);
            seq.pop();
        }
    }
    if len == 0 {
        if c == 0 {
            f(&[]);
        }
        return;
    }
    go(base, c, len, 0, &mut Vec::with_capacity(len), f);
}

/// Edge indices on the tree path between each leaf pair, pairs in
/// lexicographic order over `(i, j)`, `i < j < n`.
fn pair_paths(m: usize, n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut paths = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        // parent pointers from a DFS rooted at leaf i
        let mut parent = vec![usize::MAX; m];
        let mut parent_edge = vec![usize::MAX; m];
        let mut stack = vec![i];
        parent[i] = i;
        while let Some(u) = stack.pop() {
            for &(v, e) in &adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    parent_edge[v] = e;
                    stack.push(v);
                }
            }
        }
        for j in (i + 1)..n {
            let mut path = Vec::new();
            let mut v = j;
            while v != i {
                path.push(parent_edge[v]);
                v = parent[v];
            }
            paths.push(path);
        }
    }
    paths
}

/// Every adjacency mask a weighted tree with leaf set exactly `{0..n−1}`
/// can realize, per threshold in [`ORACLE_K`]. Trees are enumerated from
/// the definition: all topologies on m ∈ {2..2n−2} nodes where nodes
/// 0..n−1 have degree 1 and the rest degree ≥ 2 (via Prüfer sequences over
/// the internal alphabet), crossed with all edge lengths 1..=[`LEN_MAX`].
/// A single pass serves every threshold because the length range for the
/// largest one subsumes the smaller ones.
pub fn brute_force_masks(n: usize) -> MaskSets {
    assert!((2..=5).contains(&n), "oracle is sized for 2..=5 vertices");
    let mut out = MaskSets::empty(n);
    let n_pairs = n * (n - 1) / 2;
    for m in n.max(2)..=(2 * n - 2) {
        let c = m - n;
        for_each_internal_sequence(n, c, m - 2, &mut |seq| {
            let edges = prufer_decode(m, seq);
            let paths = pair_paths(m, n, &edges);
            // edge → pairs whose path uses it, for incremental sums
            let mut pairs_of_edge: Vec<Vec<usize>> = vec![Vec::new(); m - 1];
            for (p, path) in paths.iter().enumerate() {
                for &e in path {
                    pairs_of_edge[e].push(p);
                }
            }
            let mut sums = vec![0u64; n_pairs];
            sweep_lengths(&pairs_of_edge, 0, &mut sums, &mut out);
        });
    }
    out
}

fn sweep_lengths(
    pairs_of_edge: &[Vec<usize>],
    e: usize,
    sums: &mut [u64],
    out: &mut MaskSets,
) {
    if e == pairs_of_edge.len() {
        let mut masks = [0u32; 4];
        for (p, &s) in sums.iter().enumerate() {
            for (ki, &k) in ORACLE_K.iter().enumerate() {
                if s <= k {
                    masks[ki] |= 1 << p;
                }
            }
        }
        for ki in 0..4 {
            out.insert(ki, masks[ki]);
        }
        return;
    }
    for len in 1..=LEN_MAX {
        for &p in &pairs_of_edge[e] {
            sums[p] += len;
        }
        sweep_lengths(pairs_of_edge, e + 1, sums, out);
        for &p in &pairs_of_edge[e] {
            sums[p] -= len;
        }
    }
}

/// The labeled graph `v1..vn` whose edges are the set bits of `mask`, bit
/// `t` being the t-th lexicographic pair `(i, j)` with `i < j`.
pub fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut t = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> t & 1 == 1 {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    Graph::new(n, labels, &edges).expect("mask graphs are simple")
}

/// Fresh deterministic generator for the fuzz suites.
pub fn fuzz_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x1eaf_0001 ^ salt)
}

/// A random weighted tree with 3..=8 leaves, at least one internal node,
/// no internal node of degree < 2 (each internal symbol is planted into a
/// distinct Prüfer position), and edge lengths 1..=12.
pub fn random_tree(rng: &mut ChaCha8Rng) -> LeafTree {
    let n = rng.gen_range(3usize..=8);
    let c = rng.gen_range(1usize..=n - 2);
    let m = n + c;
    let len = m - 2;
    let mut seq: Vec<usize> = (0..len).map(|_| n + rng.gen_range(0..c)).collect();
    let mut pos: Vec<usize> = (0..len).collect();
    for i in 0..c {
        let j = rng.gen_range(i..len);
        pos.swap(i, j);
    }
    for s in 0..c {
        seq[pos[s]] = n + s;
    }
    let edges: Vec<(usize, usize, u64)> = prufer_decode(m, &seq)
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(1..=12)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("x{i:02}")).collect();
    let pairs: Vec<(usize, &str)> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.as_str()))
        .collect();
    LeafTree::new(m, &pairs, &edges).expect("generator emits valid trees")
}

/// Inverse of [`graph_from_mask`]: the adjacency bitmask of a graph whose
/// pairs are read in lexicographic index order.
pub fn mask_of_graph(g: &Graph) -> u32 {
    let mut mask = 0u32;
    let mut t = 0;
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            if g.has_edge(i, j) {
                mask |= 1 << t;
            }
            t += 1;
        }
    }
    mask
}

/// True when every connected component induces a complete graph.
pub fn is_union_of_cliques(g: &Graph) -> bool {
    g.connected_components().iter().all(|comp| {
        let vs = comp.members();
        vs.iter()
            .enumerate()
            .all(|(a, &u)| vs[a + 1..].iter().all(|&v| g.has_edge(u, v)))
    })
}

/// Edge lists of the three forbidden 5-vertex graphs for threshold 3:
/// bull (triangle with two pendant horns), dart (diamond plus a pendant at
/// a degree-3 vertex), gem (P_4 plus a dominating vertex).
fn forbidden_five() -> [Vec<(usize, usize)>; 3] {
    [
        vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)],
        vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4)],
        vec![(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
    ]
}

/// True when the map `perm: pattern vertex → g vertex index` is an
/// isomorphism onto the induced subgraph of `g` on `perm`'s image.
fn matches_pattern(g: &Graph, perm: &[usize], pattern: &[(usize, usize)]) -> bool {
    let in_pattern = |a: usize, b: usize| {
        pattern
            .iter()
            .any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b))
    };
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if g.has_edge(perm[a], perm[b]) != in_pattern(a, b) {
                return false;
            }
        }
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == r {
            out.push(acc.clone());
            return;
        }
        for v in start..n {
            acc.push(v);
            go(v + 1, n, r, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// True when `g` contains no induced bull, dart, or gem.
pub fn is_bull_dart_gem_free(g: &Graph) -> bool {
    if g.n() < 5 {
        return true;
    }
    let patterns = forbidden_five();
    for subset in combinations(g.n(), 5) {
        for perm in permutations(&subset) {
            if patterns.iter().any(|p| matches_pattern(g, &perm, p)) {
                return false;
            }
        }
    }
    true
}
