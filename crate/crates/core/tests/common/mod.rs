#![allow(dead_code)]

use chvd_core::boundary::{base_index, sign_with, BaseIndex, BoundariedGraph, EdgeSet};
use chvd_core::graph::{minimal_separators_chordal, SeparatorRecord};
use chvd_core::mask;
use chvd_core::{VertexSet, WeightedGraph};

/// One side of a gluing: a chordal graph whose first `k` vertices are the boundary.
pub struct Side {
    pub bg: BoundariedGraph,
    pub adj: Vec<u64>,
    pub sign: EdgeSet,
    pub nbhds: Vec<VertexSet>,
}

/// Everything shared by the sides over one boundary graph.
pub struct BoundaryCase {
    pub k: usize,
    pub boundary: WeightedGraph,
    pub idx: BaseIndex,
    pub separators: Vec<SeparatorRecord>,
    pub sides: Vec<Side>,
}

fn permutations(e: usize) -> Vec<Vec<usize>> {
    if e == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(e - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, e - 1);
            out.push(q);
        }
    }
    out
}

/// Boundary graph on `k` vertices whose edge `(u, v)`, `u < v`, is present when bit
/// number (position of the pair in lexicographic order) of `code` is set.
pub fn boundary_graph(k: usize, code: u32) -> WeightedGraph {
    let mut g = WeightedGraph::new(k);
    let mut bit = 0;
    for u in 0..k {
        for v in u + 1..k {
            if code >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// All chordal sides over `boundary` with at most `max_extra` extra vertices, one per class
/// under permutations of the extra vertices.
pub fn enumerate_sides(boundary: &WeightedGraph, max_extra: usize) -> BoundaryCase {
    let k = boundary.n();
    let idx = base_index(boundary).unwrap();
    let separators = minimal_separators_chordal(boundary).unwrap();
    let mut sides = Vec::new();
    for e in 0..=max_extra {
        let n = k + e;
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(_, v)| v >= k)
            .collect();
        let pos = |a: usize, b: usize| free.iter().position(|&f| f == (a, b)).unwrap();
        let perms = permutations(e);
        // image of every free pair under every permutation
        let images: Vec<Vec<usize>> = perms[1..]
            .iter()
            .map(|p| {
                let map = |x: usize| if x < k { x } else { k + p[x - k] };
                free.iter()
                    .map(|&(u, v)| pos(map(u).min(map(v)), map(u).max(map(v))))
                    .collect()
            })
            .collect();
        for code in 0..1u64 << free.len() {
            let minimal = images.iter().all(|img| {
                let mut c = 0u64;
                for (i, &t) in img.iter().enumerate() {
                    c |= (code >> i & 1) << t;
                }
                c >= code
            });
            if !minimal {
                continue;
            }
            let mut g = boundary.clone();
            for _ in 0..e {
                g.add_vertex(1);
            }
            for (i, &(u, v)) in free.iter().enumerate() {
                if code >> i & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
            let adj = adjacency(&g);
            if !mask::is_chordal(&adj) {
                continue;
            }
            let bg = BoundariedGraph::new(g, k).unwrap();
            let sign = sign_with(&idx, &bg);
            let nbhds = bg.outside_components().into_iter().map(|(_, nb)| nb).collect();
            sides.push(Side {
                bg,
                adj,
                sign,
                nbhds,
            });
        }
    }
    BoundaryCase {
        k,
        boundary: boundary.clone(),
        idx,
        separators,
        sides,
    }
}

pub fn adjacency(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Adjacency masks of the glue of two sides over a `k`-vertex boundary, written into `out`.
pub fn glue_masks(k: usize, a: &[u64], b: &[u64], out: &mut Vec<u64>) {
    out.clear();
    let ea = a.len() - k;
    let low = (1u64 << k) - 1;
    out.extend_from_slice(a);
    for v in 0..k {
        out[v] |= (b[v] & !low) << ea;
    }
    for &row in &b[k..] {
        out.push((row & low) | (row & !low) << ea);
    }
}

/// A random chordal side over `boundary` with `extra` outside vertices: outside edges are
/// drawn with probability `p` and the draw is repeated until the result is chordal. Falls back
/// to attaching each extra vertex to a clique, which always stays chordal.
pub fn random_side(
    boundary: &WeightedGraph,
    extra: usize,
    p: f64,
    r: &mut impl rand::RngCore,
) -> BoundariedGraph {
    use chvd_core::oracle::unit_f64;
    let k = boundary.n();
    for _ in 0..200 {
        let mut g = boundary.clone();
        for _ in 0..extra {
            g.add_vertex(1);
        }
        for v in k..k + extra {
            for u in 0..v {
                if unit_f64(r) < p {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if chvd_core::graph::is_chordal(&g) {
            return BoundariedGraph::new(g, k).unwrap();
        }
    }
    let mut g = boundary.clone();
    for _ in 0..extra {
        let v = g.add_vertex(1);
        let mut clique: Vec<usize> = Vec::new();
        for u in 0..v {
            if unit_f64(r) < p && clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        for u in clique {
            g.add_edge(u, v).unwrap();
        }
    }
    BoundariedGraph::new(g, k).unwrap()
}
