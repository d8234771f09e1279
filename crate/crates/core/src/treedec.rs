//! Tree decompositions: validation, conversion to nice form, and a min-fill heuristic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Tree decomposition with bags stored as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// Single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        }
    }

    /// Largest bag size minus one; `0` for a decomposition with only empty bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

/// First violated clause found by [`validate`] or [`check_nice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoBags,
    TreeEdgeOutOfRange { edge: (usize, usize) },
    NotATree { reason: String },
    BagVertexOutOfRange { bag: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    VertexDisconnected(usize),
    RootBagNotEmpty,
    LeafBagNotEmpty(usize),
    BadNode { node: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoBags => write!(f, "decomposition has no bags"),
            Violation::TreeEdgeOutOfRange { edge } => {
                write!(f, "tree edge {:?} refers to a missing bag", edge)
            }
            Violation::NotATree { reason } => write!(f, "tree edges do not form a tree: {reason}"),
            Violation::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} contains vertex {vertex} outside the graph")
            }
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is covered by no bag"),
            Violation::VertexDisconnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
            Violation::RootBagNotEmpty => write!(f, "root bag is not empty"),
            Violation::LeafBagNotEmpty(t) => write!(f, "leaf node {t} has a non-empty bag"),
            Violation::BadNode { node, reason } => write!(f, "node {node}: {reason}"),
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn sorted_intersection_len(a: &[usize], b: &[usize], mut hit: impl FnMut(usize)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                hit(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Checks tree-ness, vertex coverage, edge coverage and connectivity of occurrences, in that
/// order, and reports the first failure.
pub fn validate(d: &TreeDecomposition, g: &WeightedGraph) -> std::result::Result<(), Violation> {
    let nb = d.bags.len();
    if nb == 0 {
        return Err(Violation::NoBags);
    }
    let mut dsu = Dsu::new(nb);
    for &(a, b) in &d.edges {
        if a >= nb || b >= nb {
            return Err(Violation::TreeEdgeOutOfRange { edge: (a, b) });
        }
        if !dsu.union(a, b) {
            return Err(Violation::NotATree {
                reason: format!("edge {a}-{b} closes a cycle"),
            });
        }
    }
    if d.edges.len() != nb - 1 {
        return Err(Violation::NotATree {
            reason: format!("{} bags but {} edges", nb, d.edges.len()),
        });
    }
    let n = g.n();
    let mut occurrences = vec![0usize; n];
    for (t, bag) in d.bags.iter().enumerate() {
        if !bag.windows(2).all(|w| w[0] < w[1]) {
            return Err(Violation::BadNode {
                node: t,
                reason: "bag is not a sorted set".into(),
            });
        }
        for &v in bag {
            if v >= n {
                return Err(Violation::BagVertexOutOfRange { bag: t, vertex: v });
            }
            occurrences[v] += 1;
        }
    }
    if let Some(v) = occurrences.iter().position(|&c| c == 0) {
        return Err(Violation::VertexUncovered(v));
    }
    // every edge must sit in some bag of one of its endpoints
    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            bags_of[v].push(t);
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = if bags_of[u].len() <= bags_of[v].len() { (u, v) } else { (v, u) };
        let covered = bags_of[a]
            .iter()
            .any(|&t| d.bags[t].binary_search(&b).is_ok());
        if !covered {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    // occurrences of v induce a forest; it is connected iff it has occ(v) - 1 edges
    let mut shared = vec![0usize; n];
    for &(a, b) in &d.edges {
        sorted_intersection_len(&d.bags[a], &d.bags[b], |v| shared[v] += 1);
    }
    for v in 0..n {
        if shared[v] + 1 != occurrences[v] {
            return Err(Violation::VertexDisconnected(v));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Base,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always precede their parent in `nodes`, so a forward
/// scan is a valid bottom-up processing order; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|t| t.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn count(&self, pred: impl Fn(&NodeKind) -> bool) -> usize {
        self.nodes.iter().filter(|t| pred(&t.kind)).count()
    }

    /// Forgets the node kinds and returns the underlying tree decomposition.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (t, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((c, t));
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|t| t.bag.clone()).collect(),
            edges,
        }
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forgets everything in the bag of `from` missing from `target`, then introduces what
    /// is missing, both in ascending vertex order.
    fn transition(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.nodes[from].bag.clone();
        let mut bag = current.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            from = self.push(NodeKind::Forget(v), bag.clone(), vec![from]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            from = self.push(NodeKind::Introduce(v), bag.clone(), vec![from]);
        }
        from
    }
}

/// Converts a tree decomposition rooted at bag 0 into nice form. Bags with several children
/// get left-deep binary joins; the root gets a trailing chain of forgets.
pub fn make_nice(d: &TreeDecomposition, g: &WeightedGraph) -> Result<NiceDecomposition> {
    validate(d, g).map_err(Error::InvalidDecomposition)?;
    let nb = d.bags.len();
    let mut adj = vec![Vec::new(); nb];
    for &(a, b) in &d.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    // iterative DFS from bag 0 to get parents and a post-order
    let mut parent = vec![usize::MAX; nb];
    let mut order = Vec::with_capacity(nb);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in adj[t].iter().rev() {
            if parent[c] == usize::MAX {
                parent[c] = t;
                stack.push(c);
            }
        }
    }
    let mut children = vec![Vec::new(); nb];
    for &t in &order[1..] {
        children[parent[t]].push(t);
    }
    for list in &mut children {
        list.sort_unstable();
    }

    let mut b = NiceBuilder { nodes: Vec::new() };
    // top[t]: nice node whose bag equals bag t and which represents t's subtree
    let mut top = vec![usize::MAX; nb];
    for &t in order.iter().rev() {
        let target = &d.bags[t];
        let node = if children[t].is_empty() {
            let base = b.push(NodeKind::Base, Vec::new(), Vec::new());
            b.transition(base, target)
        } else {
            let mut acc: Option<usize> = None;
            for &c in &children[t] {
                let end = b.transition(top[c], target);
                acc = Some(match acc {
                    None => end,
                    Some(left) => b.push(NodeKind::Join, target.clone(), vec![left, end]),
                });
            }
            acc.unwrap()
        };
        top[t] = node;
    }
    b.transition(top[0], &[]);
    Ok(NiceDecomposition { nodes: b.nodes })
}

/// Structural niceness plus validity as a tree decomposition of `g`.
pub fn check_nice(nd: &NiceDecomposition, g: &WeightedGraph) -> std::result::Result<(), Violation> {
    if nd.nodes.is_empty() {
        return Err(Violation::NoBags);
    }
    if !nd.nodes[nd.root()].bag.is_empty() {
        return Err(Violation::RootBagNotEmpty);
    }
    let bad = |node: usize, reason: &str| Violation::BadNode {
        node,
        reason: reason.to_string(),
    };
    let mut has_parent = vec![false; nd.nodes.len()];
    for (t, node) in nd.nodes.iter().enumerate() {
        for &c in &node.children {
            if c >= t {
                return Err(bad(t, "child does not precede its parent"));
            }
            if has_parent[c] {
                return Err(bad(c, "node has two parents"));
            }
            has_parent[c] = true;
        }
        let child_bag = |i: usize| &nd.nodes[node.children[i]].bag;
        match node.kind {
            NodeKind::Base => {
                if !node.children.is_empty() {
                    return Err(bad(t, "base node has children"));
                }
                if !node.bag.is_empty() {
                    return Err(Violation::LeafBagNotEmpty(t));
                }
            }
            NodeKind::Introduce(v) => {
                if node.children.len() != 1 {
                    return Err(bad(t, "introduce node needs one child"));
                }
                let mut expect = child_bag(0).clone();
                if expect.binary_search(&v).is_ok() {
                    return Err(bad(t, "introduced vertex already in child bag"));
                }
                expect.push(v);
                expect.sort_unstable();
                if expect != node.bag {
                    return Err(bad(t, "introduce bag mismatch"));
                }
            }
            NodeKind::Forget(v) => {
                if node.children.len() != 1 {
                    return Err(bad(t, "forget node needs one child"));
                }
                let mut expect = child_bag(0).clone();
                let Ok(pos) = expect.binary_search(&v) else {
                    return Err(bad(t, "forgotten vertex missing from child bag"));
                };
                expect.remove(pos);
                if expect != node.bag {
                    return Err(bad(t, "forget bag mismatch"));
                }
            }
            NodeKind::Join => {
                if node.children.len() != 2 {
                    return Err(bad(t, "join node needs two children"));
                }
                if child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                    return Err(bad(t, "join bags differ"));
                }
            }
        }
    }
    if has_parent[..nd.root()].iter().any(|&p| !p) {
        return Err(Violation::NotATree {
            reason: "some non-root node has no parent".into(),
        });
    }
    validate(&nd.to_tree_decomposition(), g)
}

/// Decomposition from a greedy min-fill elimination ordering (ties to the smallest id). The
/// bag of `v` is `v` plus its neighbours at elimination time; its parent is the bag of the
/// earliest-eliminated such neighbour. Trees of different components are chained together.
pub fn min_fill_decomposition(g: &WeightedGraph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let fill_of = |adj: &[std::collections::BTreeSet<usize>], v: usize| -> usize {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut version = vec![0u64; n];
    let mut heap = BinaryHeap::new();
    for v in 0..n {
        heap.push(Reverse((fill_of(&adj, v), v, 0u64)));
    }
    let mut eliminated = vec![false; n];
    let mut position = vec![0usize; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut later: Vec<Vec<usize>> = Vec::with_capacity(n);
    while let Some(Reverse((_, v, ver))) = heap.pop() {
        if eliminated[v] || ver != version[v] {
            continue;
        }
        eliminated[v] = true;
        position[v] = bags.len();
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &ns {
            adj[a].remove(&v);
        }
        let mut bag = ns.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        later.push(ns.clone());
        // fill changes only within distance two of v
        let mut touched: Vec<usize> = ns.clone();
        for &a in &ns {
            touched.extend(adj[a].iter().copied());
        }
        touched.sort_unstable();
        touched.dedup();
        for u in touched {
            if !eliminated[u] {
                version[u] += 1;
                heap.push(Reverse((fill_of(&adj, u), u, version[u])));
            }
        }
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, ns) in later.iter().enumerate() {
        match ns.iter().map(|&u| position[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

/// Path decomposition with bags `{v - w, ..., v}` for `v >= w`; valid whenever every edge
/// joins vertices at distance at most `w`.
pub fn band_path_decomposition(n: usize, w: usize) -> TreeDecomposition {
    if n <= w + 1 {
        return TreeDecomposition::trivial(n);
    }
    let bags: Vec<Vec<usize>> = (w..n).map(|v| (v - w..=v).collect()).collect();
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    TreeDecomposition { bags, edges }
}
