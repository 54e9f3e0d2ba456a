//! Text formats for graphs and trees.
//!
//! Graphs use a line-oriented edge-list format and can also be exported as
//! DOT; trees use a parenthesized recursive form. Each format round-trips:
//! reading back an emitted string yields an equal value, and re-emitting a
//! parsed emission reproduces it byte for byte.

use crate::graph::{Graph, GraphError};
use crate::tree::{LeafTree, TreeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("value cannot be serialized: {0}")]
    Unserializable(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn check_label(label: &str) -> Result<(), FormatError> {
    if label.is_empty()
        || label.contains("--")
        || label.chars().any(|c| c.is_whitespace() || "():,\"".contains(c))
    {
        return Err(FormatError::Unserializable(format!(
            "label {label:?} contains whitespace, quotes, or punctuation reserved by the file formats"
        )));
    }
    Ok(())
}

/// Edge-list format: `n <count>` header, one label per line in index order,
/// then one `u v` label pair per edge, sorted by endpoint indices.
pub fn write_graph(g: &Graph) -> Result<String, FormatError> {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", g.n()));
    for label in g.labels() {
        check_label(label)?;
        out.push_str(label);
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", g.label(u), g.label(v)));
    }
    Ok(out)
}

pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| FormatError::Syntax("empty input".into()))?;
    let n: usize = header
        .strip_prefix("n ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| FormatError::Syntax(format!("expected `n <count>` header, got {header:?}")))?;
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| FormatError::Syntax(format!("expected {n} label lines")))?;
        if line.split_whitespace().count() != 1 {
            return Err(FormatError::Syntax(format!(
                "label line {line:?} must hold exactly one label"
            )));
        }
        labels.push(line.to_string());
    }
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(FormatError::Syntax(format!(
                    "edge line {line:?} must hold exactly two labels"
                )))
            }
        };
        let iu = labels
            .iter()
            .position(|l| l == u)
            .ok_or_else(|| FormatError::Syntax(format!("edge references unknown label {u:?}")))?;
        let iv = labels
            .iter()
            .position(|l| l == v)
            .ok_or_else(|| FormatError::Syntax(format!("edge references unknown label {v:?}")))?;
        edges.push((iu, iv));
    }
    Ok(Graph::new(n, labels, &edges)?)
}

/// DOT export: one quoted node statement per vertex in index order, then one
/// quoted edge statement per edge, sorted by endpoint indices.
pub fn write_dot(g: &Graph) -> Result<String, FormatError> {
    let mut out = String::from("graph G {\n");
    for label in g.labels() {
        check_label(label)?;
        out.push_str(&format!("  \"{label}\";\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.label(u), g.label(v)));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Parses the DOT subset produced by [`write_dot`] (quoted node and edge
/// statements inside a single `graph ... { ... }` block).
pub fn read_dot(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim();
    let open = trimmed
        .find('{')
        .ok_or_else(|| FormatError::Syntax("missing `{`".into()))?;
    let head = &trimmed[..open];
    if head.split_whitespace().next() != Some("graph") {
        return Err(FormatError::Syntax("expected `graph <name> {`".into()));
    }
    let close = trimmed
        .rfind('}')
        .ok_or_else(|| FormatError::Syntax("missing `}`".into()))?;
    if open >= close || !trimmed[close + 1..].trim().is_empty() {
        return Err(FormatError::Syntax("malformed block".into()));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let index_of = |labels: &[String], l: &str| labels.iter().position(|x| x == l);
    for stmt in trimmed[open + 1..close].split(';') {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let unquote = |s: &str| -> Result<String, FormatError> {
            let s = s.trim();
            s.strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .map(str::to_string)
                .ok_or_else(|| FormatError::Syntax(format!("expected quoted name, got {s:?}")))
        };
        if let Some((lhs, rhs)) = stmt.split_once("--") {
            let u = unquote(lhs)?;
            let v = unquote(rhs)?;
            let iu = index_of(&labels, &u)
                .ok_or_else(|| FormatError::Syntax(format!("edge uses undeclared node {u:?}")))?;
            let iv = index_of(&labels, &v)
                .ok_or_else(|| FormatError::Syntax(format!("edge uses undeclared node {v:?}")))?;
            edges.push((iu, iv));
        } else {
            let name = unquote(stmt)?;
            if index_of(&labels, &name).is_some() {
                return Err(FormatError::Syntax(format!("node {name:?} declared twice")));
            }
            labels.push(name);
        }
    }
    let n = labels.len();
    Ok(Graph::new(n, labels, &edges)?)
}

/// Parenthesized tree format: a tree is written from an internal root as
/// `(child, child, ...)`, each child being `label:length` for a leaf or
/// `(...):length` for an internal subtree. The emitter roots at the internal
/// node adjacent to the smallest leaf label and sorts children by their
/// smallest descendant leaf label; two-leaf trees are written by splitting
/// the single edge as `(a:1, b:length-1)`, which needs length ≥ 2. Trees
/// with fewer than two leaves cannot be written.
pub fn write_tree(t: &LeafTree) -> Result<String, FormatError> {
    let t = t.canonicalize();
    for label in t.leaf_labels() {
        check_label(label)?;
    }
    match t.leaf_count() {
        0 | 1 => {
            return Err(FormatError::Unserializable(
                "tree format needs at least two leaves".into(),
            ))
        }
        2 => {
            let labels = t.leaf_labels();
            let (a, b) = (labels[0], labels[1]);
            let len = t.leaf_distance(a, b).expect("labels exist");
            if len < 2 {
                return Err(FormatError::Unserializable(
                    "two-leaf tree of total length 1 cannot be split at an internal root".into(),
                ));
            }
            return Ok(format!("({a}:1, {b}:{})", len - 1));
        }
        _ => {}
    }

    // smallest descendant leaf label of each node seen from each parent
    // direction is what orders children; compute per call (trees are small)
    fn min_leaf(t: &LeafTree, node: usize, parent: usize) -> String {
        if let Some(l) = t.label(node) {
            return l.to_string();
        }
        t.neighbors(node)
            .iter()
            .filter(|&&(u, _)| u != parent)
            .map(|&(u, _)| min_leaf(t, u, node))
            .min()
            .expect("internal node has children")
    }
    fn emit(t: &LeafTree, node: usize, parent: usize, out: &mut String) {
        if let Some(l) = t.label(node) {
            out.push_str(l);
            return;
        }
        let mut kids: Vec<usize> = t
            .neighbors(node)
            .iter()
            .filter(|&&(u, _)| u != parent)
            .map(|&(u, _)| u)
            .collect();
        kids.sort_by_key(|&u| min_leaf(t, u, node));
        out.push('(');
        for (i, u) in kids.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            emit(t, *u, node, out);
            let len = t
                .neighbors(node)
                .iter()
                .find(|&&(w, _)| w == *u)
                .expect("child is a neighbor")
                .1;
            out.push(':');
            out.push_str(&len.to_string());
        }
        out.push(')');
    }

    let smallest = t.leaf_labels()[0].to_string();
    let leaf = t.leaf_index(&smallest).expect("label exists");
    // with ≥ 3 leaves the canonical tree's leaves attach to internal nodes
    let root = t.neighbors(leaf)[0].0;
    let mut out = String::new();
    emit(&t, root, usize::MAX, &mut out);
    Ok(out)
}

pub fn read_tree(text: &str) -> Result<LeafTree, FormatError> {
    struct Parser<'a> {
        chars: std::iter::Peekable<std::str::Chars<'a>>,
        // tree under construction
        labels: Vec<(usize, String)>,
        edges: Vec<(usize, usize, u64)>,
        n: usize,
    }
    impl<'a> Parser<'a> {
        fn skip_ws(&mut self) {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.chars.next();
            }
        }
        fn expect(&mut self, c: char) -> Result<(), FormatError> {
            self.skip_ws();
            match self.chars.next() {
                Some(got) if got == c => Ok(()),
                got => Err(FormatError::Syntax(format!("expected {c:?}, got {got:?}"))),
            }
        }
        fn fresh(&mut self) -> usize {
            self.n += 1;
            self.n - 1
        }
        fn token(&mut self, stop: fn(char) -> bool) -> String {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if stop(c) || c.is_whitespace() {
                    break;
                }
                s.push(c);
                self.chars.next();
            }
            s
        }
        /// `(child, child, ...)` — returns the new internal node's index.
        fn group(&mut self) -> Result<usize, FormatError> {
            self.expect('(')?;
            let me = self.fresh();
            loop {
                self.node(me)?;
                self.skip_ws();
                match self.chars.peek() {
                    Some(',') => {
                        self.chars.next();
                    }
                    Some(')') => {
                        self.chars.next();
                        return Ok(me);
                    }
                    got => {
                        return Err(FormatError::Syntax(format!(
                            "expected `,` or `)`, got {got:?}"
                        )))
                    }
                }
            }
        }
        /// `label:length` or `(...):length`, attached to `parent`.
        fn node(&mut self, parent: usize) -> Result<(), FormatError> {
            self.skip_ws();
            let child = if self.chars.peek() == Some(&'(') {
                self.group()?
            } else {
                let label = self.token(|c| c == ':' || c == ',' || c == ')' || c == '(');
                if label.is_empty() {
                    return Err(FormatError::Syntax("expected a leaf label".into()));
                }
                let v = self.fresh();
                self.labels.push((v, label));
                v
            };
            self.expect(':')?;
            self.skip_ws();
            let digits = self.token(|c| !c.is_ascii_digit());
            let len: u64 = digits
                .parse()
                .map_err(|_| FormatError::Syntax(format!("expected a length, got {digits:?}")))?;
            self.edges.push((parent, child, len));
            Ok(())
        }
    }

    let mut p = Parser {
        chars: text.chars().peekable(),
        labels: Vec::new(),
        edges: Vec::new(),
        n: 0,
    };
    p.group()?;
    p.skip_ws();
    if let Some(c) = p.chars.next() {
        return Err(FormatError::Syntax(format!("trailing input at {c:?}")));
    }
    let labels: Vec<(usize, &str)> = p.labels.iter().map(|(v, s)| (*v, s.as_str())).collect();
    Ok(LeafTree::new(p.n, &labels, &p.edges)?)
}
