//! Brute-force ground truth and seeded instance generation.

use std::collections::{HashMap, HashSet};

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::graph::{is_interval, is_minimal_separator, WeightedGraph};
use crate::mask::{self, bits};
use crate::vertex_set::VertexSet;

pub const MAX_ORACLE_N: usize = 22;

fn check_size(g: &WeightedGraph, max: usize) -> Result<()> {
    if g.n() > max {
        Err(Error::TooLarge { n: g.n(), max })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A shortest hole of the graph induced on `within`, as a vertex mask.
fn shortest_hole(adj: &[u64], within: u64) -> Option<u64> {
    let mut best: Option<(u32, u64)> = None;
    for v in bits(within) {
        let nv = adj[v] & within;
        let ns: Vec<usize> = bits(nv).collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if adj[a] >> b & 1 == 1 {
                    continue;
                }
                // BFS from a to b avoiding N[v] except a and b
                let allowed = within & !nv & !(1 << v) | 1 << a | 1 << b;
                let mut prev = [usize::MAX; 64];
                let mut seen = 1u64 << a;
                let mut frontier = vec![a];
                let mut found = false;
                while !frontier.is_empty() && !found {
                    let mut next = Vec::new();
                    for &x in &frontier {
                        for y in bits(adj[x] & allowed & !seen) {
                            seen |= 1 << y;
                            prev[y] = x;
                            if y == b {
                                found = true;
                            }
                            next.push(y);
                        }
                    }
                    frontier = next;
                }
                if !found {
                    continue;
                }
                let mut cycle = 1u64 << v;
                let mut x = b;
                while x != a {
                    cycle |= 1 << x;
                    x = prev[x];
                }
                cycle |= 1 << a;
                let len = cycle.count_ones();
                if best.is_none_or(|(l, _)| len < l) {
                    best = Some((len, cycle));
                }
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Minimum-weight chordal deletion set by branching on shortest holes, with memoized visited
/// deletion sets. Ties go to the numerically smallest set.
pub fn brute_force_chvd(g: &WeightedGraph) -> Result<(u64, VertexSet)> {
    check_size(g, MAX_ORACLE_N)?;
    g.total_weight()?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let w = |s: u64| bits(s).map(|v| g.weight(v)).sum::<u64>();
    let mut best = (u64::MAX, u64::MAX);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack = vec![0u64];
    while let Some(d) = stack.pop() {
        if !seen.insert(d) {
            continue;
        }
        let wd = w(d);
        if wd > best.0 {
            continue;
        }
        match shortest_hole(&adj, full(n) & !d) {
            None => {
                if (wd, d) < best {
                    best = (wd, d);
                }
            }
            Some(hole) => {
                for v in bits(hole) {
                    stack.push(d | 1 << v);
                }
            }
        }
    }
    Ok((best.0, VertexSet::from_iter(n, bits(best.1))))
}

/// Same answer as [`brute_force_chvd`] by scanning every subset; for cross-checking the
/// branching oracle on small graphs.
pub fn brute_force_chvd_exhaustive(g: &WeightedGraph) -> Result<(u64, VertexSet)> {
    check_size(g, 16)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let mut best = (u64::MAX, u64::MAX);
    for d in 0..=full(n) {
        let wd: u64 = bits(d).map(|v| g.weight(v)).sum();
        if (wd, d) < best && mask::is_chordal_within(&adj, full(n) & !d) {
            best = (wd, d);
        }
    }
    Ok((best.0, VertexSet::from_iter(n, bits(best.1))))
}

/// Calls `f` on every `k`-subset of `0..n` as a mask, in colexicographic order, until it
/// returns `true`.
fn any_subset_of_size(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if k > n {
        return false;
    }
    if k == 0 {
        return f(0);
    }
    let mut s: u64 = (1 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        if f(s) {
            return true;
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    false
}

/// Minimum number of vertices whose removal leaves an interval graph, with the first such set
/// found in order of size.
pub fn brute_force_interval_deletion(g: &WeightedGraph) -> Result<(usize, VertexSet)> {
    check_size(g, MAX_ORACLE_N)?;
    let n = g.n();
    for k in 0..=n {
        let mut hit = None;
        any_subset_of_size(n, k, |s| {
            let rest = VertexSet::from_iter(n, bits(full(n) & !s));
            if is_interval(&g.induced(&rest).0) {
                hit = Some(s);
                true
            } else {
                false
            }
        });
        if let Some(s) = hit {
            return Ok((k, VertexSet::from_iter(n, bits(s))));
        }
    }
    unreachable!("removing every vertex leaves an interval graph")
}

/// Every minimum-size interval deletion set.
pub fn all_minimum_interval_deletion_sets(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    let (k, _) = brute_force_interval_deletion(g)?;
    let n = g.n();
    let mut out = Vec::new();
    any_subset_of_size(n, k, |s| {
        let rest = VertexSet::from_iter(n, bits(full(n) & !s));
        if is_interval(&g.induced(&rest).0) {
            out.push(VertexSet::from_iter(n, bits(s)));
        }
        false
    });
    Ok(out)
}

/// Minimum feedback vertex set size by size-ordered subset scan.
pub fn brute_force_fvs(g: &WeightedGraph) -> Result<usize> {
    check_size(g, MAX_ORACLE_N)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let is_forest = |within: u64| {
        let edges: u32 = bits(within).map(|v| (adj[v] & within).count_ones()).sum::<u32>() / 2;
        edges as usize + mask::components_within(&adj, within).len() == within.count_ones() as usize
    };
    for k in 0..=n {
        if any_subset_of_size(n, k, |s| is_forest(full(n) & !s)) {
            return Ok(k);
        }
    }
    unreachable!("the empty graph is a forest")
}

/// True if some induced cycle of length at least four exists, found by scanning vertex
/// subsets. Only for tiny graphs.
pub fn has_hole_by_subsets(g: &WeightedGraph) -> Result<bool> {
    check_size(g, 16)?;
    let adj = adjacency_masks(g);
    let n = g.n();
    for s in 0..=full(n) {
        if s.count_ones() < 4 {
            continue;
        }
        if bits(s).all(|v| (adj[v] & s).count_ones() == 2)
            && mask::components_within(&adj, s).len() == 1
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Interval recognition by searching for an ordering of the `2n` interval endpoints. A vertex
/// may open when everything currently open is a neighbour and no neighbour has closed; it may
/// close once all its neighbours have opened.
pub fn has_interval_model_by_search(g: &WeightedGraph) -> Result<bool> {
    check_size(g, 10)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    fn go(
        adj: &[u64],
        all: u64,
        opened: u64,
        closed: u64,
        memo: &mut HashMap<(u64, u64), bool>,
    ) -> bool {
        if closed == all {
            return true;
        }
        if let Some(&r) = memo.get(&(opened, closed)) {
            return r;
        }
        let open_now = opened & !closed;
        let mut ok = false;
        for u in bits(all & !opened) {
            if open_now & !adj[u] == 0 && closed & adj[u] == 0 && go(adj, all, opened | 1 << u, closed, memo) {
                ok = true;
                break;
            }
        }
        if !ok {
            for u in bits(open_now) {
                if adj[u] & !opened == 0 && go(adj, all, opened, closed | 1 << u, memo) {
                    ok = true;
                    break;
                }
            }
        }
        memo.insert((opened, closed), ok);
        ok
    }
    Ok(go(&adj, full(n), 0, 0, &mut HashMap::new()))
}

/// Every minimal separator, by testing all vertex subsets.
pub fn minimal_separators_by_subsets(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    check_size(g, 16)?;
    let n = g.n();
    let mut out: Vec<VertexSet> = (0..=full(n))
        .map(|s| VertexSet::from_iter(n, bits(s)))
        .filter(|s| is_minimal_separator(g, s))
        .collect();
    out.sort();
    Ok(out)
}

/// Parameters of a seeded `G(n, p)` instance with weights drawn uniformly from
/// `weight_lo..=weight_hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub p: f64,
    pub weight_lo: u64,
    pub weight_hi: u64,
    pub seed: u64,
}

impl RandomSpec {
    pub fn unit(n: usize, p: f64, seed: u64) -> Self {
        RandomSpec {
            n,
            p,
            weight_lo: 1,
            weight_hi: 1,
            seed,
        }
    }
}

/// The generator behind every seeded instance: xoshiro256++ seeded through SplitMix64.
pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform double in `[0, 1)` from the top 53 bits of one draw.
pub fn unit_f64(r: &mut impl RngCore) -> f64 {
    (r.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws edges for pairs `u < v` in lexicographic order (edge iff a uniform double is below
/// `p`), then one weight per vertex as `lo + draw % (hi - lo + 1)`.
pub fn random_instance(spec: &RandomSpec) -> WeightedGraph {
    let mut r = rng(spec.seed);
    let mut g = WeightedGraph::new(spec.n);
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if unit_f64(&mut r) < spec.p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let span = spec.weight_hi - spec.weight_lo + 1;
    for v in 0..spec.n {
        g.set_weight(v, spec.weight_lo + r.next_u64() % span);
    }
    g
}

/// A chain of overlapping random gadgets on `0..n`: each window of `w + 1` consecutive
/// vertices carries random edges `(u, u + d)`, `1 <= d <= w`, each present with probability
/// one half, so the band decomposition of width `w` fits. Weights are uniform in `1..=9`.
pub fn chained_gadgets(n: usize, w: usize, seed: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for d in 1..=w {
            if u + d < n && unit_f64(&mut r) < 0.5 {
                g.add_edge(u, u + d).unwrap();
            }
        }
    }
    for v in 0..n {
        g.set_weight(v, 1 + r.next_u64() % 9);
    }
    g
}

/// Random chordal graph: each new vertex attaches to a clique made of a random earlier vertex
/// and a random subset of that vertex's earlier neighbours that forms a clique with it.
pub fn random_chordal(n: usize, seed: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        if r.next_u64().is_multiple_of(5) {
            continue;
        }
        let anchor = (r.next_u64() % v as u64) as usize;
        let mut clique = vec![anchor];
        let cands: Vec<usize> = g.neighbors(anchor).to_vec();
        for u in cands {
            if r.next_u64().is_multiple_of(2) && clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        for c in clique {
            g.add_edge(v, c).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chvd_examples() {
        let (w, s) = brute_force_chvd(&WeightedGraph::cycle(4)).unwrap();
        assert_eq!((w, s.len()), (1, 1));
        let two = WeightedGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        assert_eq!(brute_force_chvd(&two).unwrap().0, 2);
        let mut c5 = WeightedGraph::cycle(5);
        for (v, w) in [9, 1, 9, 9, 9].into_iter().enumerate() {
            c5.set_weight(v, w);
        }
        let (w, s) = brute_force_chvd(&c5).unwrap();
        assert_eq!((w, s.to_vec()), (1, vec![1]));
        assert_eq!(brute_force_chvd_exhaustive(&c5).unwrap(), (w, s));
    }

    #[test]
    fn interval_deletion_examples() {
        let spider =
            WeightedGraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(brute_force_interval_deletion(&spider).unwrap().0, 1);
        assert_eq!(brute_force_interval_deletion(&WeightedGraph::path(6)).unwrap().0, 0);
    }

    #[test]
    fn fvs_examples() {
        let tree = WeightedGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(brute_force_fvs(&tree).unwrap(), 0);
        assert_eq!(brute_force_fvs(&WeightedGraph::cycle(5)).unwrap(), 1);
        assert_eq!(brute_force_fvs(&WeightedGraph::complete(4)).unwrap(), 2);
    }

    #[test]
    fn random_instance_examples() {
        assert_eq!(random_instance(&RandomSpec::unit(0, 0.5, 1)).n(), 0);
        assert_eq!(
            random_instance(&RandomSpec::unit(5, 1.0, 3)),
            WeightedGraph::complete(5)
        );
        let spec = RandomSpec {
            n: 12,
            p: 0.4,
            weight_lo: 1,
            weight_hi: 9,
            seed: 42,
        };
        assert_eq!(random_instance(&spec), random_instance(&spec));
    }

    #[test]
    fn oversized_inputs_are_refused() {
        let g = WeightedGraph::new(23);
        assert_eq!(
            brute_force_chvd(&g),
            Err(Error::TooLarge { n: 23, max: 22 })
        );
    }

    #[test]
    fn interval_model_search_examples() {
        assert!(has_interval_model_by_search(&WeightedGraph::path(5)).unwrap());
        assert!(!has_interval_model_by_search(&WeightedGraph::cycle(4)).unwrap());
        let spider =
            WeightedGraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!has_interval_model_by_search(&spider).unwrap());
        assert!(has_interval_model_by_search(&WeightedGraph::complete(4)).unwrap());
    }
}
