//! Graphic matroids over GF(2) and max representative families.

use std::collections::{HashMap, HashSet};

use crate::boundary::{BaseIndex, EdgeSet, MAX_BASE_EDGES};
use crate::error::{Error, Result};
use crate::mask::bits;

/// Graphic matroid of a small graph, represented by its reduced incidence matrix: one row per
/// vertex except the largest vertex of each connected component. Columns are bitmasks of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphicMatroid {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub columns: Vec<u64>,
    /// Graph vertex owning each row.
    pub row_vertices: Vec<usize>,
    pub rank: usize,
}

pub const MAX_RANK: usize = 64;

impl GraphicMatroid {
    pub fn from_graph(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.len() > MAX_BASE_EDGES {
            return Err(Error::BoundaryTooLarge(format!(
                "{} matroid elements, at most {} supported",
                edges.len(),
                MAX_BASE_EDGES
            )));
        }
        let mut parent: Vec<usize> = (0..num_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.min(rb)] = ra.max(rb);
            }
        }
        // union by larger id keeps each component's maximum vertex as its root
        let mut row_of = vec![usize::MAX; num_vertices];
        let mut row_vertices = Vec::new();
        for v in 0..num_vertices {
            if find(&mut parent, v) != v {
                row_of[v] = row_vertices.len();
                row_vertices.push(v);
            }
        }
        if row_vertices.len() > MAX_RANK {
            return Err(Error::BoundaryTooLarge(format!(
                "matroid rank {} exceeds {}",
                row_vertices.len(),
                MAX_RANK
            )));
        }
        let columns = edges
            .iter()
            .map(|&(a, b)| {
                [a, b]
                    .iter()
                    .filter(|&&v| row_of[v] != usize::MAX)
                    .fold(0u64, |acc, &v| acc | 1u64 << row_of[v])
            })
            .collect();
        Ok(GraphicMatroid {
            num_vertices,
            edges: edges.to_vec(),
            columns,
            rank: row_vertices.len(),
            row_vertices,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.edges.len()
    }

    /// GF(2) column-rank test.
    pub fn is_independent(&self, s: EdgeSet) -> bool {
        let mut basis = XorBasis::default();
        bits128(s).all(|e| basis.insert(self.columns[e]))
    }

    /// Union-find acyclicity test of the corresponding edge set.
    pub fn is_acyclic(&self, s: EdgeSet) -> bool {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in bits128(s) {
            let (a, b) = self.edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

pub fn build_graphic_matroid(idx: &BaseIndex) -> Result<GraphicMatroid> {
    GraphicMatroid::from_graph(idx.num_base_vertices(), &idx.base_edges)
}

pub fn is_independent(m: &GraphicMatroid, s: EdgeSet) -> bool {
    m.is_independent(s)
}

pub(crate) fn bits128(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Incremental GF(2) basis of 64-bit vectors, indexed by leading bit.
#[derive(Clone)]
pub(crate) struct XorBasis {
    slots: [u64; 64],
}

impl Default for XorBasis {
    fn default() -> Self {
        XorBasis { slots: [0; 64] }
    }
}

impl XorBasis {
    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if self.slots[top] == 0 {
                break;
            }
            v ^= self.slots[top];
        }
        v
    }

    /// Returns false when `v` is already in the span.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.slots[63 - r.leading_zeros() as usize] = r;
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyEntry {
    pub edges: EdgeSet,
    pub weight: u64,
    /// Opaque handle back to whatever owns this set.
    pub payload: usize,
}

pub type WeightedFamily = Vec<FamilyEntry>;

/// `c_1 ∧ ... ∧ c_p` over GF(2): the set of `p`-row subsets whose minor is odd, as sorted
/// row masks.
fn wedge(m: &GraphicMatroid, s: EdgeSet) -> Vec<u64> {
    let mut cur: HashSet<u64> = HashSet::from([0u64]);
    for e in bits128(s) {
        let col = m.columns[e];
        let mut next: HashSet<u64> = HashSet::new();
        for &r in &cur {
            for i in bits(col & !r) {
                let key = r | 1u64 << i;
                if !next.remove(&key) {
                    next.insert(key);
                }
            }
        }
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    let mut v: Vec<u64> = cur.into_iter().collect();
    v.sort_unstable();
    v
}

fn xor_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Canonical priority: heavier first, then numerically smaller edge set, then smaller payload.
pub fn priority_order(fam: &mut [FamilyEntry]) {
    fam.sort_by(|a, b| {
        b.weight
            .cmp(&a.weight)
            .then(a.edges.cmp(&b.edges))
            .then(a.payload.cmp(&b.payload))
    });
}

/// Max representative subfamily with at most `2^rank` members. Sets of each size `p` are
/// mapped to their wedge vectors, whose coordinates are the `p x p` minors of the
/// representation; a greedy basis in priority order is kept.
pub fn max_representative(m: &GraphicMatroid, fam: &[FamilyEntry]) -> Result<WeightedFamily> {
    if let Some(i) = fam.iter().position(|f| !m.is_independent(f.edges)) {
        return Err(Error::DependentInput(i));
    }
    let mut sorted = fam.to_vec();
    priority_order(&mut sorted);
    let mut out = Vec::new();
    let mut bases: HashMap<u32, HashMap<u64, Vec<u64>>> = HashMap::new();
    for f in sorted {
        let p = f.edges.count_ones();
        let basis = bases.entry(p).or_default();
        let mut v = wedge(m, f.edges);
        while let Some(&lead) = v.last() {
            match basis.get(&lead) {
                Some(row) => v = xor_sorted(&v, row),
                None => break,
            }
        }
        if let Some(&lead) = v.last() {
            basis.insert(lead, v);
            out.push(f);
        }
    }
    Ok(out)
}

/// Exhaustively checks that `sub` max-represents `fam`: for every independent `Y` with
/// `|Y| <= rank`, the heaviest member of `fam` disjoint from `Y` and independent together
/// with it is matched in weight by some member of `sub`. Also requires `sub ⊆ fam`.
pub fn representative_oracle_check(
    m: &GraphicMatroid,
    fam: &[FamilyEntry],
    sub: &[FamilyEntry],
) -> bool {
    if !sub
        .iter()
        .all(|s| fam.iter().any(|f| f.edges == s.edges && f.weight == s.weight))
    {
        return false;
    }
    let best = |list: &[FamilyEntry], y: EdgeSet, yb: &XorBasis| -> Option<u64> {
        list.iter()
            .filter(|x| x.edges & y == 0)
            .filter(|x| {
                let mut b = yb.clone();
                bits128(x.edges).all(|e| b.insert(m.columns[e]))
            })
            .map(|x| x.weight)
            .max()
    };
    let mut ok = true;
    let mut visit = |y: EdgeSet, yb: &XorBasis| {
        if let Some(w) = best(fam, y, yb) {
            if best(sub, y, yb).is_none_or(|ws| ws < w) {
                ok = false;
            }
        }
        ok
    };
    fn dfs(
        m: &GraphicMatroid,
        start: usize,
        y: EdgeSet,
        yb: &XorBasis,
        size: usize,
        visit: &mut dyn FnMut(EdgeSet, &XorBasis) -> bool,
    ) -> bool {
        if !visit(y, yb) {
            return false;
        }
        if size == m.rank {
            return true;
        }
        for e in start..m.ground_size() {
            let mut b = yb.clone();
            if b.insert(m.columns[e]) && !dfs(m, e + 1, y | 1u128 << e, &b, size + 1, visit) {
                return false;
            }
        }
        true
    }
    dfs(m, 0, 0, &XorBasis::default(), 0, &mut visit);
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::base_index;
    use crate::graph::WeightedGraph;

    fn triangle() -> GraphicMatroid {
        GraphicMatroid::from_graph(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn entry(edges: EdgeSet, weight: u64, payload: usize) -> FamilyEntry {
        FamilyEntry {
            edges,
            weight,
            payload,
        }
    }

    #[test]
    fn matroid_shapes() {
        let k2 = GraphicMatroid::from_graph(2, &[(0, 1)]).unwrap();
        assert_eq!((k2.rank, k2.columns.clone()), (1, vec![1]));
        let t = triangle();
        assert_eq!(t.rank, 2);
        for s in [0b011, 0b101, 0b110] {
            assert!(t.is_independent(s));
        }
        assert!(!t.is_independent(0b111));
        let empty = build_graphic_matroid(&base_index(&WeightedGraph::complete(3)).unwrap()).unwrap();
        assert_eq!(empty.rank, 0);
        assert!(empty.is_independent(0));
    }

    #[test]
    fn rank_test_matches_union_find() {
        let m = GraphicMatroid::from_graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4), (0, 4)])
            .unwrap();
        for s in 0u128..1 << 7 {
            assert_eq!(m.is_independent(s), m.is_acyclic(s), "set {s:b}");
        }
    }

    #[test]
    fn triangle_singletons_keep_heaviest() {
        let t = triangle();
        let fam = vec![entry(0b001, 5, 0), entry(0b010, 3, 1), entry(0b100, 3, 2)];
        let out = max_representative(&t, &fam).unwrap();
        assert!(out.len() <= 2);
        assert!(out.iter().any(|f| f.weight == 5));
        assert!(representative_oracle_check(&t, &fam, &out));
    }

    #[test]
    fn trivial_families_pass_through() {
        let t = triangle();
        let one = vec![entry(0b010, 4, 9)];
        assert_eq!(max_representative(&t, &one).unwrap(), one);
        let empty_set = vec![entry(0, 7, 0)];
        assert_eq!(max_representative(&t, &empty_set).unwrap(), empty_set);
        assert_eq!(
            max_representative(&t, &[entry(0b111, 1, 0)]),
            Err(Error::DependentInput(0))
        );
    }

    #[test]
    fn oracle_rejects_empty_subfamily() {
        let t = triangle();
        let fam = vec![entry(0b001, 1, 0), entry(0b010, 1, 1), entry(0b100, 1, 2)];
        assert!(representative_oracle_check(&t, &fam, &fam));
        assert!(!representative_oracle_check(&t, &fam, &[]));
    }
}
