//! Weighted simple graphs and the chordal / interval toolbox.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Simple undirected graph on vertices `0..n` with non-negative integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    adj: Vec<Vec<usize>>,
    weights: Vec<u64>,
}

impl WeightedGraph {
    /// Edgeless graph on `n` vertices with unit weights.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adj: vec![Vec::new(); n],
            weights: vec![1; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self, weight: u64) -> usize {
        self.adj.push(Vec::new());
        self.weights.push(weight);
        self.adj.len() - 1
    }

    /// Inserts edge `uv`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn set_weight(&mut self, v: usize, w: u64) {
        self.weights[v] = w;
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> Result<u64> {
        self.weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::WeightOverflow)
    }

    pub fn set_weight_sum(&self, s: &VertexSet) -> Result<u64> {
        s.iter()
            .try_fold(0u64, |acc, v| acc.checked_add(self.weights[v]))
            .ok_or(Error::WeightOverflow)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Induced subgraph on `keep`; vertex `i` of the result is the `i`-th smallest member of
    /// `keep`. Returns the subgraph together with that new-to-old map.
    pub fn induced(&self, keep: &VertexSet) -> (WeightedGraph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut h = WeightedGraph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            h.weights[i] = self.weights[v];
            h.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u]))
                .collect();
        }
        (h, old)
    }

    /// `G - s`, with the new-to-old vertex map.
    pub fn remove_vertices(&self, s: &VertexSet) -> (WeightedGraph, Vec<usize>) {
        self.induced(&s.complement())
    }

    /// Open neighborhood `N(s)`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in s.iter() {
            for &u in &self.adj[v] {
                out.insert(u);
            }
        }
        out.difference_with(s);
        out
    }

    /// Connected components of `G[within]`, each as a sorted vertex list, ordered by their
    /// smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = within.complement();
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen.contains(u) {
                        seen.insert(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.vertex_set())
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

/// Maximum cardinality search. Returns the visit order; its reverse is a perfect elimination
/// ordering whenever the graph is chordal. Ties go to the smallest vertex id.
pub fn mcs_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && weight[v] == top => break v,
                Some(_) => continue,
                None => top -= 1,
            }
        };
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
                let w = weight[u];
                if buckets.len() <= w {
                    buckets.push(Vec::new());
                }
                buckets[w].push(u);
                top = top.max(w);
            }
        }
    }
    order
}

/// Checks that the reverse of `order` is a perfect elimination ordering, in `O(n + m)`.
fn verify_reverse_peo(g: &WeightedGraph, order: &[usize]) -> bool {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // For v, its earlier-visited neighbors must all be adjacent to the latest-visited of them.
    let mut required: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order {
        let earlier = g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]);
        let Some(&parent) = earlier.clone().max_by_key(|&&u| pos[u]) else {
            continue;
        };
        required[parent].extend(earlier.filter(|&&u| u != parent));
    }
    let mut mark = vec![usize::MAX; n];
    for p in 0..n {
        if required[p].is_empty() {
            continue;
        }
        for &u in g.neighbors(p) {
            mark[u] = p;
        }
        if required[p].iter().any(|&x| mark[x] != p) {
            return false;
        }
    }
    true
}

/// A perfect elimination ordering, or `None` when `g` is not chordal.
pub fn perfect_elimination_order(g: &WeightedGraph) -> Option<Vec<usize>> {
    let mut order = mcs_order(g);
    if !verify_reverse_peo(g, &order) {
        return None;
    }
    order.reverse();
    Some(order)
}

pub fn is_chordal(g: &WeightedGraph) -> bool {
    verify_reverse_peo(g, &mcs_order(g))
}

/// Smallest vertex whose neighborhood is a clique.
pub fn find_simplicial(g: &WeightedGraph) -> Option<usize> {
    (0..g.n()).find(|&v| g.is_clique(g.neighbors(v)))
}

/// A minimal vertex separator `separator` together with `Comp(G, separator)`: the components
/// of `G - separator` whose neighborhood is the whole separator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorRecord {
    pub separator: VertexSet,
    /// Sorted by smallest member.
    pub full_components: Vec<VertexSet>,
}

/// Components `C` of `G - s` with `N(C) = s`, ordered by smallest member.
pub fn full_components(g: &WeightedGraph, s: &VertexSet) -> Vec<VertexSet> {
    let n = g.n();
    let target = s.len();
    g.components_within(&s.complement())
        .into_iter()
        .filter_map(|comp| {
            let cs = VertexSet::from_iter(n, comp);
            let nb = g.neighborhood(&cs);
            (nb.len() == target && nb.is_subset(s)).then_some(cs)
        })
        .collect()
}

pub fn is_minimal_separator(g: &WeightedGraph, s: &VertexSet) -> bool {
    full_components(g, s).len() >= 2
}

/// All minimal vertex separators of a chordal graph with their full components, sorted by
/// separator. Candidates are the later-neighborhoods along a perfect elimination ordering,
/// i.e. the neighborhoods seen while repeatedly peeling simplicial vertices.
pub fn minimal_separators_chordal(g: &WeightedGraph) -> Result<Vec<SeparatorRecord>> {
    let peo = perfect_elimination_order(g).ok_or(Error::NotChordal)?;
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<VertexSet> = peo
        .iter()
        .map(|&v| VertexSet::from_iter(n, g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v])))
        .collect();
    candidates.sort();
    candidates.dedup();
    let mut out = Vec::new();
    for s in candidates {
        let comps = full_components(g, &s);
        if comps.len() >= 2 {
            out.push(SeparatorRecord {
                separator: s,
                full_components: comps,
            });
        }
    }
    Ok(out)
}

/// Some asteroidal triple `(a, b, c)` with `a < b < c`, if one exists.
pub fn find_asteroidal_triple(g: &WeightedGraph) -> Option<(usize, usize, usize)> {
    for comp in g.components() {
        if comp.len() < 3 {
            continue;
        }
        let (h, map) = g.induced(&VertexSet::from_iter(g.n(), comp.iter().copied()));
        if let Some((a, b, c)) = asteroidal_triple_connected(&h) {
            return Some((map[a], map[b], map[c]));
        }
    }
    None
}

fn asteroidal_triple_connected(h: &WeightedGraph) -> Option<(usize, usize, usize)> {
    let c = h.n();
    const BLOCKED: u32 = u32::MAX;
    // label[z * c + x]: component of x in h - N[z], or BLOCKED when x ∈ N[z].
    let mut label = vec![BLOCKED; c * c];
    let mut queue = VecDeque::new();
    for z in 0..c {
        let row = &mut label[z * c..(z + 1) * c];
        let mut blocked = vec![false; c];
        blocked[z] = true;
        for &u in h.neighbors(z) {
            blocked[u] = true;
        }
        let mut next = 0u32;
        for s in 0..c {
            if blocked[s] || row[s] != BLOCKED {
                continue;
            }
            row[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &u in h.neighbors(v) {
                    if !blocked[u] && row[u] == BLOCKED {
                        row[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
    }
    let same = |z: usize, x: usize, y: usize| {
        let lx = label[z * c + x];
        lx != BLOCKED && lx == label[z * c + y]
    };
    for a in 0..c {
        for b in a + 1..c {
            if h.has_edge(a, b) {
                continue;
            }
            for d in b + 1..c {
                if same(a, b, d) && same(b, a, d) && same(d, a, b) {
                    return Some((a, b, d));
                }
            }
        }
    }
    None
}

/// Interval graphs are exactly the chordal graphs without an asteroidal triple.
pub fn is_interval(g: &WeightedGraph) -> bool {
    is_chordal(g) && find_asteroidal_triple(g).is_none()
}

/// Subdivides every edge once. Original vertices keep their ids and weights; the vertex
/// subdividing the `i`-th edge (lexicographic order) gets id `n + i` and weight
/// `1 + w(V(G))`, so no minimum-weight solution ever uses it.
pub fn subdivide_all_edges(g: &WeightedGraph) -> Result<WeightedGraph> {
    let heavy = g
        .total_weight()?
        .checked_add(1)
        .ok_or(Error::WeightOverflow)?;
    let mut h = WeightedGraph::new(g.n());
    for v in 0..g.n() {
        h.set_weight(v, g.weight(v));
    }
    let edges: Vec<_> = g.edges().collect();
    for (u, v) in edges {
        let s = h.add_vertex(heavy);
        h.add_edge(u, s)?;
        h.add_edge(s, v)?;
    }
    Ok(h)
}
