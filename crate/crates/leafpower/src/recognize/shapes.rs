//! Tree shapes and leaf-slot assignment enumeration.
//!
//! A shape is an unlabeled tree whose internal nodes all have degree ≥ 3;
//! its leaves are slots for graph vertices. Shapes are enumerated once per
//! leaf count, deduplicated by a canonical code, and ordered by internal
//! node count then code. Assignments of vertices to slots are enumerated
//! exactly once per automorphism orbit by rooting each shape at its
//! centroid and forcing increasing minimum labels across identical sibling
//! subtrees.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub n_nodes: usize,
    /// edges sorted ascending; the solver's static assignment order
    pub edges: Vec<(usize, usize)>,
    /// leaf node ids in ascending order; position = slot index
    pub leaves: Vec<usize>,
    pub internal_count: usize,
    /// canonical unrooted code (minimum rooted code over internal nodes)
    pub code: String,
    /// internal nodes form a path
    pub is_caterpillar: bool,
    /// the two (or one) subtree roots hanging off the centroid root; for a
    /// two-node centroid this is the pair of edge endpoints, otherwise the
    /// children of the centroid node
    pub root_children: Vec<usize>,
    /// per root child: starts a new identical-code sibling group
    pub root_new_group: Vec<bool>,
    /// children per node under the centroid orientation, sorted by subtree
    /// code so identical siblings are adjacent
    pub children: Vec<Vec<usize>>,
    pub new_group: Vec<Vec<bool>>,
    pub sub_leaves: Vec<u32>,
    /// internal nodes in the order they distribute label sets (every node
    /// after its parent); leaves consume their single label when reached
    pub process_order: Vec<usize>,
    /// node → slot index (usize::MAX on internal nodes)
    pub slot_of_node: Vec<usize>,
    /// slot × slot hop counts (unit-length distances in the shape)
    pub hops: Vec<Vec<u32>>,
}

// ---------------------------------------------------------------------------
// rooted shape generation

/// Rooted shape: every internal node has ≥ 2 children. Children are stored
/// in the deterministic generation order (ascending (leaf count, index)).
#[derive(Debug, Clone)]
enum RShape {
    Leaf,
    Node(Vec<RShape>),
}

/// All rooted shapes with `l` leaves, memoized, in a fixed order.
fn rooted(l: usize, memo: &mut HashMap<usize, Arc<Vec<RShape>>>) -> Arc<Vec<RShape>> {
    if let Some(v) = memo.get(&l) {
        return v.clone();
    }
    let out = if l == 1 {
        vec![RShape::Leaf]
    } else {
        child_multisets(l, 2, memo)
            .into_iter()
            .map(RShape::Node)
            .collect()
    };
    let arc = Arc::new(out);
    memo.insert(l, arc.clone());
    arc
}

/// Multisets of rooted shapes totalling `total` leaves with at least
/// `min_parts` members, each multiset exactly once: members are chosen with
/// non-decreasing (leaf count, index-in-rooted-list) keys.
fn child_multisets(
    total: usize,
    min_parts: usize,
    memo: &mut HashMap<usize, Arc<Vec<RShape>>>,
) -> Vec<Vec<RShape>> {
    let mut out = Vec::new();
    let mut acc: Vec<(usize, usize)> = Vec::new();
    fn rec(
        remaining: usize,
        parts_needed: usize,
        min_key: (usize, usize),
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        memo: &mut HashMap<usize, Arc<Vec<RShape>>>,
    ) {
        if remaining == 0 {
            if parts_needed == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for size in min_key.0..=remaining {
            // leave at least 1 leaf for each further required part
            if remaining - size < parts_needed.saturating_sub(1) {
                break;
            }
            let options = rooted(size, memo).len();
            let start = if size == min_key.0 { min_key.1 } else { 0 };
            for idx in start..options {
                acc.push((size, idx));
                rec(
                    remaining - size,
                    parts_needed.saturating_sub(1),
                    (size, idx),
                    acc,
                    out,
                    memo,
                );
                acc.pop();
            }
        }
    }
    let mut keyed: Vec<Vec<(usize, usize)>> = Vec::new();
    rec(total, min_parts, (1, 0), &mut acc, &mut keyed, memo);
    for keys in keyed {
        out.push(
            keys.into_iter()
                .map(|(size, idx)| rooted(size, memo)[idx].clone())
                .collect(),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// flattening and canonical codes

fn flatten(children: &[RShape]) -> Vec<Vec<usize>> {
    fn add(adj: &mut Vec<Vec<usize>>, parent: usize, shape: &RShape) {
        let me = adj.len();
        adj.push(Vec::new());
        adj[parent].push(me);
        adj[me].push(parent);
        if let RShape::Node(cs) = shape {
            for c in cs {
                add(adj, me, c);
            }
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    for c in children {
        add(&mut adj, 0, c);
    }
    adj
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(adj, u, v))
        .collect();
    if kids.is_empty() {
        return "L".to_string();
    }
    kids.sort_unstable();
    format!("({})", kids.concat())
}

fn canonical_code(adj: &[Vec<usize>]) -> String {
    (0..adj.len())
        .filter(|&v| adj[v].len() >= 2)
        .map(|v| rooted_code(adj, v, usize::MAX))
        .min()
        .unwrap_or_else(|| "LL".to_string())
}

// ---------------------------------------------------------------------------
// shape assembly

fn build_shape(adj: Vec<Vec<usize>>, code: String) -> Shape {
    let n_nodes = adj.len();
    let mut edges = Vec::new();
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    let leaves: Vec<usize> = (0..n_nodes).filter(|&v| adj[v].len() == 1).collect();
    let internal_count = n_nodes - leaves.len();
    let mut slot_of_node = vec![usize::MAX; n_nodes];
    for (slot, &v) in leaves.iter().enumerate() {
        slot_of_node[v] = slot;
    }
    let is_caterpillar = (0..n_nodes)
        .filter(|&v| adj[v].len() >= 2)
        .all(|v| adj[v].iter().filter(|&&u| adj[u].len() >= 2).count() <= 2);

    // hop distances between leaf slots
    let bfs = |start: usize| -> Vec<u32> {
        let mut dist = vec![u32::MAX; n_nodes];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == u32::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    };
    let hops: Vec<Vec<u32>> = leaves
        .iter()
        .map(|&a| {
            let d = bfs(a);
            leaves.iter().map(|&b| d[b]).collect()
        })
        .collect();

    // centroid: node(s) minimizing the largest component after removal
    let mut size = vec![1usize; n_nodes];
    {
        let mut order = Vec::with_capacity(n_nodes);
        let mut parent = vec![usize::MAX; n_nodes];
        let mut stack = vec![0usize];
        let mut seen = vec![false; n_nodes];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                size[parent[v]] += size[v];
            }
        }
        // convert to subtree-size-from-0; recompute max component per node
    }
    let max_comp = |v: usize| -> usize {
        // largest piece of the forest left by deleting v
        let mut best = 0;
        for &u in &adj[v] {
            // size of u's side: recompute via BFS avoiding v (n is tiny)
            let mut cnt = 0usize;
            let mut stack = vec![u];
            let mut seen = vec![false; n_nodes];
            seen[v] = true;
            seen[u] = true;
            while let Some(w) = stack.pop() {
                cnt += 1;
                for &x in &adj[w] {
                    if !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
            best = best.max(cnt);
        }
        best
    };
    let scores: Vec<usize> = (0..n_nodes).map(max_comp).collect();
    let best = *scores.iter().min().expect("nonempty");
    let centroids: Vec<usize> = (0..n_nodes).filter(|&v| scores[v] == best).collect();

    // orient at the centroid (virtual edge root for a centroid pair)
    let (root_children_raw, blocked): (Vec<usize>, Vec<(usize, usize)>) = match centroids[..] {
        [c] => (adj[c].clone(), adj[c].iter().map(|&u| (u, c)).collect()),
        [c1, c2] => (vec![c1, c2], vec![(c1, c2), (c2, c1)]),
        _ => unreachable!("a tree has one or two centroids"),
    };

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    let mut sub_code: Vec<String> = vec![String::new(); n_nodes];
    let mut sub_leaves = vec![0u32; n_nodes];
    fn orient(
        adj: &[Vec<usize>],
        v: usize,
        parent: usize,
        children: &mut Vec<Vec<usize>>,
        sub_code: &mut Vec<String>,
        sub_leaves: &mut Vec<u32>,
    ) {
        let kids: Vec<usize> = adj[v].iter().copied().filter(|&u| u != parent).collect();
        if kids.is_empty() {
            sub_code[v] = "L".to_string();
            sub_leaves[v] = 1;
            children[v] = Vec::new();
            return;
        }
        for &u in &kids {
            orient(adj, u, v, children, sub_code, sub_leaves);
        }
        let mut sorted = kids;
        sorted.sort_by(|&a, &b| sub_code[a].cmp(&sub_code[b]).then(a.cmp(&b)));
        sub_code[v] = format!(
            "({})",
            sorted
                .iter()
                .map(|&u| sub_code[u].as_str())
                .collect::<String>()
        );
        sub_leaves[v] = sorted.iter().map(|&u| sub_leaves[u]).sum();
        children[v] = sorted;
    }
    for &(child, par) in &blocked {
        orient(&adj, child, par, &mut children, &mut sub_code, &mut sub_leaves);
    }
    let mut root_children = root_children_raw;
    root_children.sort_by(|&a, &b| sub_code[a].cmp(&sub_code[b]).then(a.cmp(&b)));
    let group_flags = |nodes: &[usize], sub_code: &[String]| -> Vec<bool> {
        nodes
            .iter()
            .enumerate()
            .map(|(i, &v)| i == 0 || sub_code[nodes[i - 1]] != sub_code[v])
            .collect()
    };
    let root_new_group = group_flags(&root_children, &sub_code);
    let new_group: Vec<Vec<bool>> = (0..n_nodes)
        .map(|v| group_flags(&children[v], &sub_code))
        .collect();

    let mut process_order = Vec::with_capacity(n_nodes);
    fn preorder(v: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
        out.push(v);
        for &u in &children[v] {
            preorder(u, children, out);
        }
    }
    for &c in &root_children {
        preorder(c, &children, &mut process_order);
    }

    Shape {
        n_nodes,
        edges,
        leaves,
        internal_count,
        code,
        is_caterpillar,
        root_children,
        root_new_group,
        children,
        new_group,
        sub_leaves,
        process_order,
        slot_of_node,
        hops,
    }
}

/// All shapes with `n` leaves, canonical order (internal count, code).
fn generate_shapes(n: usize) -> Vec<Shape> {
    assert!(n >= 2, "shapes need at least two leaves");
    if n == 2 {
        return vec![build_shape(vec![vec![1], vec![0]], "LL".to_string())];
    }
    let mut memo = HashMap::new();
    let mut seen: HashMap<String, Vec<Vec<usize>>> = HashMap::new();
    for children in child_multisets(n, 3, &mut memo) {
        let adj = flatten(&children);
        let code = canonical_code(&adj);
        seen.entry(code).or_insert(adj);
    }
    let mut shapes: Vec<Shape> = seen
        .into_iter()
        .map(|(code, adj)| build_shape(adj, code))
        .collect();
    shapes.sort_by(|a, b| {
        a.internal_count
            .cmp(&b.internal_count)
            .then_with(|| a.code.cmp(&b.code))
    });
    shapes
}

static SHAPE_CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Shape>>>>> = OnceLock::new();

/// Cached canonical shape list for a leaf count.
pub(crate) fn shapes_for(n: usize) -> Arc<Vec<Shape>> {
    let cache = SHAPE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("shape cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(generate_shapes(n)))
        .clone()
}

// ---------------------------------------------------------------------------
// assignment enumeration

/// Bits strictly above bit `b`.
fn above(b: u32) -> u32 {
    if b >= 31 {
        0
    } else {
        !((2u32 << b) - 1)
    }
}

/// Size-`want` subsets of `pool` in a fixed order; `f` returns false to
/// stop. Returns false if stopped.
fn for_each_subset(pool: u32, want: u32, acc: u32, f: &mut impl FnMut(u32) -> bool) -> bool {
    if want == 0 {
        return f(acc);
    }
    if pool.count_ones() < want {
        return true;
    }
    let low = pool & pool.wrapping_neg();
    if !for_each_subset(pool & !low, want - 1, acc | low, f) {
        return false;
    }
    for_each_subset(pool & !low, want, acc, f)
}

/// Enumerates the root-level label distributions of a shape over the full
/// label set 0..n_labels — one task per distribution. Identical sibling
/// subtrees are ordered by increasing minimum label, so each orbit appears
/// exactly once.
pub(crate) fn root_tasks(shape: &Shape, n_labels: usize) -> Vec<Vec<u32>> {
    assert!(n_labels <= 25, "label masks are 32-bit");
    let full: u32 = (1u32 << n_labels) - 1;
    let mut out = Vec::new();
    let mut masks = vec![0u32; shape.root_children.len()];
    fn rec(
        shape: &Shape,
        ci: usize,
        avail: u32,
        prev_min: u32,
        masks: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if ci == shape.root_children.len() {
            debug_assert_eq!(avail, 0);
            out.push(masks.clone());
            return;
        }
        let c = shape.root_children[ci];
        let pool = if shape.root_new_group[ci] {
            avail
        } else {
            avail & above(prev_min)
        };
        for_each_subset(pool, shape.sub_leaves[c], 0, &mut |subset| {
            masks[ci] = subset;
            rec(
                shape,
                ci + 1,
                avail & !subset,
                subset.trailing_zeros(),
                masks,
                out,
            );
            true
        });
    }
    rec(shape, 0, full, 0, &mut masks, &mut out);
    out
}

/// Streams every leaf-slot assignment of one task (root distribution),
/// writing slot → label into `assignment` and calling `f`; `f` returns
/// false to stop early. Returns false if stopped.
pub(crate) fn for_each_assignment(
    shape: &Shape,
    task: &[u32],
    assignment: &mut [usize],
    node_masks: &mut [u32],
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    for (i, &c) in shape.root_children.iter().enumerate() {
        node_masks[c] = task[i];
    }
    step(shape, 0, assignment, node_masks, f)
}

fn step(
    shape: &Shape,
    oi: usize,
    assignment: &mut [usize],
    node_masks: &mut [u32],
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if oi == shape.process_order.len() {
        return f(assignment);
    }
    let v = shape.process_order[oi];
    let mask = node_masks[v];
    if shape.slot_of_node[v] != usize::MAX {
        debug_assert_eq!(mask.count_ones(), 1);
        assignment[shape.slot_of_node[v]] = mask.trailing_zeros() as usize;
        return step(shape, oi + 1, assignment, node_masks, f);
    }
    distribute(shape, v, 0, mask, 0, oi, assignment, node_masks, f)
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    shape: &Shape,
    v: usize,
    ci: usize,
    avail: u32,
    prev_min: u32,
    oi: usize,
    assignment: &mut [usize],
    node_masks: &mut [u32],
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if ci == shape.children[v].len() {
        debug_assert_eq!(avail, 0);
        return step(shape, oi + 1, assignment, node_masks, f);
    }
    let c = shape.children[v][ci];
    let pool = if shape.new_group[v][ci] {
        avail
    } else {
        avail & above(prev_min)
    };
    for_each_subset(pool, shape.sub_leaves[c], 0, &mut |subset| {
        node_masks[c] = subset;
        distribute(
            shape,
            v,
            ci + 1,
            avail & !subset,
            subset.trailing_zeros(),
            oi,
            assignment,
            node_masks,
            f,
        )
    })
}
