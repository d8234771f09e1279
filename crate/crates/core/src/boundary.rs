//! Boundaried graphs, condensing, and the two gluing criteria (auxiliary-graph acyclicity and
//! signatures in the graphic matroid of `Base(B)`).
//!
//! A [`BoundariedGraph`] keeps its boundary on the vertex prefix `0..k`. Two boundaried graphs
//! are compatible when they have the same `k` and the same edges inside the prefix.

use crate::error::{Error, Result};
use crate::graph::{
    full_components, is_chordal, minimal_separators_chordal, SeparatorRecord, WeightedGraph,
};
use crate::vertex_set::VertexSet;

/// Bitset over the edges of a [`BaseIndex`].
pub type EdgeSet = u128;

pub const MAX_BASE_EDGES: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    pub graph: WeightedGraph,
    /// Boundary is the vertex range `0..k`.
    pub k: usize,
}

impl BoundariedGraph {
    pub fn new(graph: WeightedGraph, k: usize) -> Result<Self> {
        if k > graph.n() {
            return Err(Error::VertexOutOfRange {
                vertex: k,
                n: graph.n(),
            });
        }
        Ok(BoundariedGraph { graph, k })
    }

    /// A graph with nothing outside its boundary.
    pub fn boundary_only(b: WeightedGraph) -> Self {
        let k = b.n();
        BoundariedGraph { graph: b, k }
    }

    pub fn boundary(&self) -> VertexSet {
        VertexSet::from_iter(self.graph.n(), 0..self.k)
    }

    pub fn boundary_graph(&self) -> WeightedGraph {
        self.graph.induced(&self.boundary()).0
    }

    /// Components of `G - X` together with `N(C)`, which always lies inside the boundary.
    pub fn outside_components(&self) -> Vec<(Vec<usize>, VertexSet)> {
        let n = self.graph.n();
        let outside = self.boundary().complement();
        self.graph
            .components_within(&outside)
            .into_iter()
            .map(|comp| {
                let nb = self
                    .graph
                    .neighborhood(&VertexSet::from_iter(n, comp.iter().copied()));
                let nb = VertexSet::from_iter(self.k, nb.iter());
                (comp, nb)
            })
            .collect()
    }
}

fn same_boundary_edges(a: &BoundariedGraph, b: &BoundariedGraph) -> bool {
    a.k == b.k
        && (0..a.k).all(|v| {
            let na = a.graph.neighbors(v).iter().take_while(|&&u| u < a.k);
            let nb = b.graph.neighbors(v).iter().take_while(|&&u| u < b.k);
            na.eq(nb)
        })
}

pub fn compatible(a: &BoundariedGraph, b: &BoundariedGraph) -> bool {
    same_boundary_edges(a, b)
}

/// Contracts every component of `G - X` and drops the contracted vertices that end up
/// simplicial. The result lists the surviving contracted vertices after the boundary, sorted
/// by neighbourhood, with unit weight; this is the canonical form used for equality.
pub fn condense(bg: &BoundariedGraph) -> BoundariedGraph {
    let k = bg.k;
    let mut nbhds: Vec<VertexSet> = bg
        .outside_components()
        .into_iter()
        .map(|(_, nb)| nb)
        .filter(|nb| !bg.graph.is_clique(&nb.to_vec()))
        .collect();
    nbhds.sort();
    let mut g = WeightedGraph::new(k + nbhds.len());
    for v in 0..k {
        g.set_weight(v, bg.graph.weight(v));
        for &u in bg.graph.neighbors(v) {
            if u < k && u > v {
                g.add_edge(v, u).unwrap();
            }
        }
    }
    for (i, nb) in nbhds.iter().enumerate() {
        for x in nb.iter() {
            g.add_edge(k + i, x).unwrap();
        }
    }
    BoundariedGraph { graph: g, k }
}

/// Gluing product: `a` keeps its ids and the non-boundary vertices of `b` are appended in
/// order.
pub fn glue(a: &BoundariedGraph, b: &BoundariedGraph) -> Result<BoundariedGraph> {
    if !compatible(a, b) {
        return Err(Error::IncompatibleBoundaries(format!(
            "boundaries differ ({} vs {} vertices or different edges)",
            a.k, b.k
        )));
    }
    let mut g = a.graph.clone();
    let offset = a.graph.n() - b.k;
    for v in b.k..b.graph.n() {
        g.add_vertex(b.graph.weight(v));
    }
    let map = |v: usize| if v < b.k { v } else { v + offset };
    for (u, v) in b.graph.edges() {
        if u >= b.k || v >= b.k {
            g.add_edge(map(u), map(v))?;
        }
    }
    Ok(BoundariedGraph { graph: g, k: a.k })
}

/// `Base(B)`: one clique per minimal separator `S` of `B`, on the full components of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseIndex {
    pub boundary: WeightedGraph,
    /// Sorted by separator; components of each sorted by smallest vertex.
    pub separators: Vec<SeparatorRecord>,
    /// `(separator index, component index)` per Base vertex, in that lexicographic order.
    pub base_vertices: Vec<(usize, usize)>,
    /// Pairs of Base vertex indices, lexicographic.
    pub base_edges: Vec<(usize, usize)>,
    vertex_offset: Vec<usize>,
    edge_offset: Vec<usize>,
}

pub fn base_index(b: &WeightedGraph) -> Result<BaseIndex> {
    let separators = minimal_separators_chordal(b)?;
    let mut base_vertices = Vec::new();
    let mut base_edges = Vec::new();
    let mut vertex_offset = Vec::with_capacity(separators.len());
    let mut edge_offset = Vec::with_capacity(separators.len());
    for (si, rec) in separators.iter().enumerate() {
        let first = base_vertices.len();
        vertex_offset.push(first);
        edge_offset.push(base_edges.len());
        let m = rec.full_components.len();
        for ci in 0..m {
            base_vertices.push((si, ci));
        }
        for i in 0..m {
            for j in i + 1..m {
                base_edges.push((first + i, first + j));
            }
        }
    }
    if base_edges.len() > MAX_BASE_EDGES {
        return Err(Error::BoundaryTooLarge(format!(
            "Base graph has {} edges, at most {} supported",
            base_edges.len(),
            MAX_BASE_EDGES
        )));
    }
    Ok(BaseIndex {
        boundary: b.clone(),
        separators,
        base_vertices,
        base_edges,
        vertex_offset,
        edge_offset,
    })
}

impl BaseIndex {
    pub fn num_base_vertices(&self) -> usize {
        self.base_vertices.len()
    }

    /// Index of the Base edge between components `i < j` of separator `sep`.
    pub fn edge_index(&self, sep: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        let m = self.separators[sep].full_components.len();
        self.edge_offset[sep] + i * (2 * m - i - 1) / 2 + (j - i - 1)
    }

    pub fn base_vertex(&self, sep: usize, comp: usize) -> usize {
        self.vertex_offset[sep] + comp
    }

    /// `Span(B, Y)`: per separator, the path through the full components meeting `y`, taken
    /// in increasing order.
    pub fn span(&self, y: &VertexSet) -> EdgeSet {
        let mut out: EdgeSet = 0;
        for (si, rec) in self.separators.iter().enumerate() {
            let mut prev: Option<usize> = None;
            for (ci, comp) in rec.full_components.iter().enumerate() {
                if comp.iter().any(|v| y.contains(v)) {
                    if let Some(p) = prev {
                        out |= 1u128 << self.edge_index(si, p, ci);
                    }
                    prev = Some(ci);
                }
            }
        }
        out
    }

    /// Acyclicity of an edge set of `Base(B)` by union-find.
    pub fn is_acyclic(&self, s: EdgeSet) -> bool {
        let mut parent: Vec<usize> = (0..self.num_base_vertices()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (e, &(a, b)) in self.base_edges.iter().enumerate() {
            if s >> e & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
        }
        true
    }

    /// Size of a spanning forest of `Base(B)`: the number of Base vertices minus the number
    /// of cliques.
    pub fn spanning_forest_size(&self) -> usize {
        self.num_base_vertices() - self.separators.len()
    }
}

pub fn span(idx: &BaseIndex, y: &VertexSet) -> EdgeSet {
    idx.span(y)
}

/// `Sign(G, X)` against a prebuilt index of `G[X]`.
pub fn sign_with(idx: &BaseIndex, bg: &BoundariedGraph) -> EdgeSet {
    bg.outside_components()
        .iter()
        .fold(0, |acc, (_, nb)| acc | idx.span(nb))
}

pub fn sign(bg: &BoundariedGraph) -> Result<EdgeSet> {
    let idx = match base_index(&bg.boundary_graph()) {
        Err(Error::NotChordal) => return Err(Error::NotChordalBoundary),
        r => r?,
    };
    Ok(sign_with(&idx, bg))
}

/// `Aux(G, X, S)`: the full components of `S` in `G[X]` come first, then one vertex per
/// component of `G - X`, adjacent to the full components it touches.
pub fn aux_graph(bg: &BoundariedGraph, s: &VertexSet) -> Result<WeightedGraph> {
    let b = bg.boundary_graph();
    let s = VertexSet::from_iter(b.n(), s.iter().filter(|&v| v < b.n()));
    let comps = full_components(&b, &s);
    if comps.len() < 2 {
        return Err(Error::NotASeparator);
    }
    let nbhds: Vec<VertexSet> = bg.outside_components().into_iter().map(|(_, nb)| nb).collect();
    Ok(aux_from_parts(&comps, &nbhds))
}

/// The auxiliary graph from the full components of a separator and the boundary
/// neighbourhoods of the outside components.
pub fn aux_from_parts(comps: &[VertexSet], nbhds: &[VertexSet]) -> WeightedGraph {
    let mut aux = WeightedGraph::new(comps.len() + nbhds.len());
    for (i, nb) in nbhds.iter().enumerate() {
        for (j, comp) in comps.iter().enumerate() {
            if !nb.is_disjoint(comp) {
                aux.add_edge(j, comps.len() + i).unwrap();
            }
        }
    }
    aux
}

fn is_forest(g: &WeightedGraph) -> bool {
    g.m() + g.components().len() == g.n()
}

/// True if the auxiliary graph of every separator is acyclic, given the outside component
/// neighbourhoods.
pub fn aux_verdict(separators: &[SeparatorRecord], nbhds: &[VertexSet]) -> bool {
    separators
        .iter()
        .all(|rec| is_forest(&aux_from_parts(&rec.full_components, nbhds)))
}

/// Chordality of `G` via acyclicity of every auxiliary graph; requires `G[X ∪ C]` chordal for
/// each component `C` of `G - X`.
pub fn chordal_by_aux(bg: &BoundariedGraph) -> Result<bool> {
    let b = bg.boundary_graph();
    if !is_chordal(&b) {
        return Err(Error::PreconditionFailed("boundary graph is not chordal".into()));
    }
    let outside = bg.outside_components();
    for (comp, _) in &outside {
        let mut keep = bg.boundary();
        for &v in comp {
            keep.insert(v);
        }
        if !is_chordal(&bg.graph.induced(&keep).0) {
            return Err(Error::PreconditionFailed(format!(
                "boundary plus the component containing vertex {} is not chordal",
                comp[0]
            )));
        }
    }
    let nbhds: Vec<VertexSet> = outside.into_iter().map(|(_, nb)| nb).collect();
    Ok(aux_verdict(&minimal_separators_chordal(&b)?, &nbhds))
}

/// Decides chordality of `a ⊕ b` from signatures alone: they must be disjoint with an acyclic
/// union. Also returns the union, which is the signature of the glued graph.
pub fn glue_is_chordal_via_signatures(
    a: &BoundariedGraph,
    b: &BoundariedGraph,
) -> Result<(bool, EdgeSet)> {
    if !compatible(a, b) {
        return Err(Error::IncompatibleBoundaries(
            "boundary graphs differ".into(),
        ));
    }
    if !is_chordal(&a.graph) || !is_chordal(&b.graph) {
        return Err(Error::NotChordal);
    }
    let idx = base_index(&a.boundary_graph())?;
    Ok(signature_verdict(&idx, sign_with(&idx, a), sign_with(&idx, b)))
}

/// The gluing verdict from two signatures: disjoint with an acyclic union.
pub fn signature_verdict(idx: &BaseIndex, sa: EdgeSet, sb: EdgeSet) -> (bool, EdgeSet) {
    let union = sa | sb;
    (sa & sb == 0 && idx.is_acyclic(union), union)
}
