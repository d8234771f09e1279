//! Hardness gadgets for Interval Vertex Deletion: the permutation gadget `Y_k`, the choice
//! gadget `H_s`, and the reduction from `k x k` Permutation Clique.
//!
//! Indices that come from the construction (blocks `i`, copies `alpha`, `y_j`, `u_j`, elements
//! of `[k]`) are 1-based, as in the construction; vertex ids are 0-based.

use std::collections::BTreeSet;
use std::fmt;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::graph::{is_chordal, is_interval, WeightedGraph};
use crate::oracle::{rng, unit_f64};
use crate::vertex_set::VertexSet;

/// Named special vertices of a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetLabels {
    pub entries: Vec<(String, usize)>,
}

impl GadgetLabels {
    pub fn push(&mut self, name: impl Into<String>, v: usize) {
        self.entries.push((name.into(), v));
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.entries.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    fn extend_prefixed(&mut self, prefix: &str, offset: usize, other: &GadgetLabels) {
        for (n, v) in &other.entries {
            self.push(format!("{prefix}{n}"), v + offset);
        }
    }
}

/// `Y_k`: a clique on `y_1..y_{k+1}` with `y_{k+2}` pendant at `y_{k+1}`. `y_j` has id `j - 1`.
pub fn permutation_gadget(k: usize) -> (WeightedGraph, GadgetLabels) {
    let mut g = WeightedGraph::new(k + 2);
    for a in 0..=k {
        for b in a + 1..=k {
            g.add_edge(a, b).unwrap();
        }
    }
    g.add_edge(k, k + 1).unwrap();
    let mut labels = GadgetLabels::default();
    for j in 1..=k + 2 {
        labels.push(format!("y{j}"), j - 1);
    }
    (g, labels)
}

/// `Y_k` plus an independent vertex `x_i` per set, adjacent to `{y_j : j in N_i}`. `x_i` has id
/// `k + 1 + i`.
pub fn attach_sets(k: usize, sets: &[BTreeSet<usize>]) -> Result<WeightedGraph> {
    let (mut g, _) = permutation_gadget(k);
    for set in sets {
        let x = g.add_vertex(1);
        for &j in set {
            if j == 0 || j > k {
                return Err(Error::PreconditionFailed(format!("element {j} is outside [{k}]")));
            }
            g.add_edge(x, j - 1)?;
        }
    }
    Ok(g)
}

/// A permutation `pi` of `[k]` (as `pi[0..k]`) with `N_i = pi([|N_i|])` for every set, or
/// `None` when the sets are not a chain. Elements enter in order of the chain, ascending within
/// each step; unused elements come last.
pub fn realize_chain(k: usize, sets: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    let mut chain: Vec<&BTreeSet<usize>> = sets.iter().collect();
    chain.sort_by_key(|s| s.len());
    chain.dedup();
    let mut pi = Vec::with_capacity(k);
    let mut placed = BTreeSet::new();
    for s in chain {
        if !placed.is_subset(s) {
            return None;
        }
        for &x in s.difference(&placed.clone()) {
            pi.push(x);
            placed.insert(x);
        }
    }
    pi.extend((1..=k).filter(|x| !placed.contains(x)));
    Some(pi)
}

/// Vertices of `P`, indexed by `u_1..u_9` at `0..9`, then the two subdivided edges at `u_2`
/// and the one at `u_7`.
pub const P_SIZE: usize = 15;
const P_EDGES: [(usize, usize); 15] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (1, 9),
    (9, 10),
    (1, 11),
    (11, 12),
    (6, 13),
    (13, 14),
    (3, 7),
];
/// Two vertex-disjoint subgraphs of `P` that each contain an asteroidal triple.
pub const P_OBSTRUCTIONS: [&[usize]; 2] = [&[1, 2, 3, 9, 10, 11, 12], &[4, 5, 6, 7, 8, 13, 14]];

/// The standalone graph `P`.
pub fn p_graph() -> WeightedGraph {
    WeightedGraph::from_edges(P_SIZE, &P_EDGES).unwrap()
}

fn u(j: usize) -> usize {
    j - 1
}

/// The choice gadget `H_s` together with the ids of its parts.
#[derive(Clone, Debug)]
pub struct ChoiceGadget {
    pub graph: WeightedGraph,
    pub s: usize,
    /// `[v^1_i, v^2_i, v^3_i]` per block.
    pub v: Vec<[usize; 3]>,
    pub v_left: usize,
    pub v_right: usize,
    /// Vertex ids of `Q_i` per block.
    pub q: Vec<Vec<usize>>,
    /// `p[i-1][alpha-1][u]`: the copy `P^alpha_i`, indexed like [`p_graph`].
    pub p: Vec<Vec<[usize; P_SIZE]>>,
    /// Vertices outside every `Q_i` and `P`-copy.
    pub connectors: Vec<usize>,
}

fn double_path(g: &mut WeightedGraph, x: usize, y: usize) -> [usize; 2] {
    let mut mids = [0; 2];
    for m in &mut mids {
        *m = g.add_vertex(1);
        g.add_edge(x, *m).unwrap();
        g.add_edge(*m, y).unwrap();
    }
    mids
}

/// Builds `H_s` with `71 s + 4` vertices.
pub fn choice_gadget(s: usize) -> Result<ChoiceGadget> {
    choice_gadget_with_copies(s, 4)
}

/// The choice gadget with `copies` copies of `P` per block instead of four. Smaller variants
/// keep the block structure and make exhaustive searches feasible.
pub fn choice_gadget_with_copies(s: usize, copies: usize) -> Result<ChoiceGadget> {
    if s == 0 || copies == 0 {
        return Err(Error::PreconditionFailed(
            "choice gadget order and copy count must be at least 1".into(),
        ));
    }
    let mut g = WeightedGraph::new(0);
    let v: Vec<[usize; 3]> = (0..s)
        .map(|_| [g.add_vertex(1), g.add_vertex(1), g.add_vertex(1)])
        .collect();
    let v_left = g.add_vertex(1);
    let v_right = g.add_vertex(1);
    let mut connectors = vec![v_left, v_right];
    connectors.extend(double_path(&mut g, v_left, v[0][0]));
    let mut q = Vec::with_capacity(s);
    for i in 0..s {
        let [a, b, c] = v[i];
        let mut qi = vec![a, b, c];
        qi.extend(double_path(&mut g, a, b));
        qi.extend(double_path(&mut g, b, c));
        qi.extend(double_path(&mut g, c, a));
        q.push(qi);
        let next = if i + 1 < s { v[i + 1][0] } else { v_right };
        connectors.extend(double_path(&mut g, c, next));
    }
    let mut p = Vec::with_capacity(s);
    for vi in &v {
        let mut block = vec![[0usize; P_SIZE]; copies];
        for copy in &mut block {
            for x in copy.iter_mut() {
                *x = g.add_vertex(1);
            }
            for &(a, b) in &P_EDGES {
                g.add_edge(copy[a], copy[b]).unwrap();
            }
            g.add_edge(vi[1], copy[u(1)]).unwrap();
        }
        p.push(block);
    }
    debug_assert_eq!(g.n(), (11 + 15 * copies) * s + 4);
    Ok(ChoiceGadget {
        graph: g,
        s,
        v,
        v_left,
        v_right,
        q,
        p,
        connectors,
    })
}

impl ChoiceGadget {
    /// `g^alpha_i`, the copy of `u_9`.
    pub fn g(&self, i: usize, alpha: usize) -> usize {
        self.p[i - 1][alpha - 1][u(9)]
    }

    /// `h^alpha_i`, the copy of `u_8`.
    pub fn h(&self, i: usize, alpha: usize) -> usize {
        self.p[i - 1][alpha - 1][u(8)]
    }

    pub fn labels(&self) -> GadgetLabels {
        let mut l = GadgetLabels::default();
        l.push("v_left", self.v_left);
        l.push("v_right", self.v_right);
        for i in 1..=self.s {
            for (t, &x) in self.v[i - 1].iter().enumerate() {
                l.push(format!("v{}_{i}", t + 1), x);
            }
            for alpha in 1..=self.p[i - 1].len() {
                l.push(format!("g{alpha}_{i}"), self.g(i, alpha));
                l.push(format!("h{alpha}_{i}"), self.h(i, alpha));
                for j in 1..=9 {
                    l.push(format!("P{alpha}_{i}.u{j}"), self.p[i - 1][alpha - 1][u(j)]);
                }
            }
        }
        l
    }

    /// The `10 s`-vertex interval deletion set that keeps every `g` vertex of block `i` and
    /// deletes the `g` vertices of every other block (`2 s` plus two per copy in general).
    pub fn canonical_solution(&self, i: usize) -> Result<VertexSet> {
        if i == 0 || i > self.s {
            return Err(Error::PreconditionFailed(format!(
                "block {i} is outside 1..={}",
                self.s
            )));
        }
        let mut x = VertexSet::new(self.graph.n());
        for j in 1..=self.s {
            let [v1, v2, v3] = self.v[j - 1];
            let (a, b) = match j.cmp(&i) {
                std::cmp::Ordering::Less => (v1, v2),
                std::cmp::Ordering::Equal => (v1, v3),
                std::cmp::Ordering::Greater => (v2, v3),
            };
            x.insert(a);
            x.insert(b);
            let (ua, ub) = if j == i { (u(2), u(8)) } else { (u(4), u(9)) };
            for copy in &self.p[j - 1] {
                x.insert(copy[ua]);
                x.insert(copy[ub]);
            }
        }
        Ok(x)
    }
}

/// A block whose `g` vertices all avoid `x`, if any.
pub fn untouched_block(cg: &ChoiceGadget, x: &VertexSet) -> Option<usize> {
    (1..=cg.s).find(|&i| (1..=cg.p[i - 1].len()).all(|a| !x.contains(cg.g(i, a))))
}

pub fn canonical_choice_solution(s: usize, i: usize) -> Result<VertexSet> {
    choice_gadget(s)?.canonical_solution(i)
}

/// True if removing `x` from `g` leaves an interval graph.
pub fn is_interval_deletion_set(g: &WeightedGraph, x: &VertexSet) -> bool {
    is_interval(&g.remove_vertices(x).0)
}

/// Outcome of the obstruction-based lower-bound audit of a choice gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundAudit {
    pub pieces_disjoint: bool,
    /// `P`-copies whose two obstructions were both confirmed non-interval.
    pub p_copies_certified: usize,
    /// `Q_i` subgraphs where every single-vertex deletion leaves a hole.
    pub q_certified: usize,
    /// Certified lower bound on any interval deletion set: 2 per certified disjoint piece.
    pub bound: usize,
}

/// Certifies `|X| >= 10 s` (two per `Q_i` and per `P`-copy) for every interval deletion set
/// `X` of the gadget from disjoint obstructions alone.
pub fn lower_bound_audit(cg: &ChoiceGadget) -> LowerBoundAudit {
    let g = &cg.graph;
    let n = g.n();
    let mut seen = VertexSet::new(n);
    let mut disjoint = true;
    let mut claim = |vs: &[usize]| {
        for &v in vs {
            if seen.contains(v) {
                disjoint = false;
            }
            seen.insert(v);
        }
    };
    for i in 0..cg.s {
        claim(&cg.q[i]);
        for copy in &cg.p[i] {
            claim(copy);
        }
    }
    let induced_non_interval = |vs: &[usize]| !is_interval(&g.induced(&VertexSet::from_iter(n, vs.iter().copied())).0);
    let mut p_ok = 0;
    for copy in cg.p.iter().flatten() {
        let [a, b] = P_OBSTRUCTIONS.map(|o| o.iter().map(|&x| copy[x]).collect::<Vec<_>>());
        let apart = a.iter().all(|x| !b.contains(x));
        if apart && induced_non_interval(&a) && induced_non_interval(&b) {
            p_ok += 1;
        }
    }
    let mut q_ok = 0;
    for qi in &cg.q {
        let all_leave_hole = qi.iter().all(|&v| {
            let rest = qi.iter().copied().filter(|&x| x != v);
            !is_chordal(&g.induced(&VertexSet::from_iter(n, rest)).0)
        });
        if all_leave_hole {
            q_ok += 1;
        }
    }
    LowerBoundAudit {
        pieces_disjoint: disjoint,
        p_copies_certified: p_ok,
        q_certified: q_ok,
        bound: if disjoint { 2 * (p_ok + q_ok) } else { 0 },
    }
}

/// Enumerates every interval deletion set of minimum size (`10 s` for the full gadget),
/// calling `f` on each.
///
/// Relies on the audit: such a set takes exactly two vertices from each `Q_i` and each
/// `P`-copy and none from the connectors, so the search picks a 2-subset per piece and prunes
/// as soon as the pieces decided so far (with all connectors) stop inducing an interval graph.
/// Returns the number of sets found.
pub fn enumerate_minimum_solutions(
    cg: &ChoiceGadget,
    mut f: impl FnMut(&VertexSet),
) -> Result<usize> {
    let audit = lower_bound_audit(cg);
    let pieces_total = cg.s + cg.p.iter().map(Vec::len).sum::<usize>();
    if audit.bound != 2 * pieces_total {
        return Err(Error::Internal(format!("lower-bound audit gave {audit:?}")));
    }
    let g = &cg.graph;
    let n = g.n();
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for i in 0..cg.s {
        pieces.push(cg.q[i].clone());
        pieces.extend(cg.p[i].iter().map(|c| c.to_vec()));
    }
    // 2-subsets that fix each piece on its own
    let local: Vec<Vec<[usize; 2]>> = pieces
        .iter()
        .map(|piece| {
            let mut out = Vec::new();
            for a in 0..piece.len() {
                for b in a + 1..piece.len() {
                    let rest = piece
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != a && t != b)
                        .map(|(_, &x)| x);
                    if is_interval(&g.induced(&VertexSet::from_iter(n, rest)).0) {
                        out.push([piece[a], piece[b]]);
                    }
                }
            }
            out
        })
        .collect();
    fn go(
        g: &WeightedGraph,
        pieces: &[Vec<usize>],
        local: &[Vec<[usize; 2]>],
        depth: usize,
        kept: &mut VertexSet,
        deleted: &mut VertexSet,
        count: &mut usize,
        f: &mut dyn FnMut(&VertexSet),
    ) {
        if depth == pieces.len() {
            *count += 1;
            f(deleted);
            return;
        }
        for pair in &local[depth] {
            for &x in &pieces[depth] {
                if !pair.contains(&x) {
                    kept.insert(x);
                }
            }
            // components away from this piece were already checked
            let touched = g.components_within(kept).into_iter().filter(|c| {
                c.iter().any(|x| pieces[depth].contains(x))
            });
            let n = g.n();
            if touched
                .into_iter()
                .all(|c| is_interval(&g.induced(&VertexSet::from_iter(n, c)).0))
            {
                deleted.insert(pair[0]);
                deleted.insert(pair[1]);
                go(g, pieces, local, depth + 1, kept, deleted, count, f);
                deleted.remove(pair[0]);
                deleted.remove(pair[1]);
            }
            for &x in &pieces[depth] {
                kept.remove(x);
            }
        }
    }
    let mut kept = VertexSet::from_iter(n, cg.connectors.iter().copied());
    let mut deleted = VertexSet::new(n);
    let mut count = 0;
    go(g, &pieces, &local, 0, &mut kept, &mut deleted, &mut count, &mut f);
    Ok(count)
}

/// A `k x k` Permutation Clique instance. Cells `(i, x)` are 1-based; cell `(i, x)` is vertex
/// `(i - 1) k + (x - 1)` of [`PermutationCliqueInstance::to_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCliqueInstance {
    pub k: usize,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

pub type Cell = (usize, usize);

impl PermutationCliqueInstance {
    pub fn new(k: usize) -> Self {
        PermutationCliqueInstance {
            k,
            edges: BTreeSet::new(),
        }
    }

    fn check(&self, c: Cell) -> Result<()> {
        if c.0 == 0 || c.0 > self.k || c.1 == 0 || c.1 > self.k {
            return Err(Error::PreconditionFailed(format!("cell {c:?} is outside the grid")));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, a: Cell, b: Cell) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfLoop(self.cell_id(a)));
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn has_edge(&self, a: Cell, b: Cell) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.edges.iter().copied()
    }

    pub fn cell_id(&self, c: Cell) -> usize {
        (c.0 - 1) * self.k + (c.1 - 1)
    }

    pub fn to_graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.k * self.k);
        for &(a, b) in &self.edges {
            g.add_edge(self.cell_id(a), self.cell_id(b)).unwrap();
        }
        g
    }

    pub fn from_graph(k: usize, g: &WeightedGraph) -> Result<Self> {
        if g.n() != k * k {
            return Err(Error::PreconditionFailed(format!(
                "expected {} vertices for k = {k}, got {}",
                k * k,
                g.n()
            )));
        }
        let mut inst = PermutationCliqueInstance::new(k);
        for (a, b) in g.edges() {
            inst.add_edge((a / k + 1, a % k + 1), (b / k + 1, b % k + 1))?;
        }
        Ok(inst)
    }

    /// A seeded instance with a planted permutation clique: draws `pi` by Fisher-Yates, adds
    /// its clique, then adds every other cross-row edge with probability `p`.
    pub fn random_with_clique(k: usize, p: f64, seed: u64) -> (Self, Vec<usize>) {
        let mut r = rng(seed);
        let mut pi: Vec<usize> = (1..=k).collect();
        for i in (1..k).rev() {
            let j = (r.next_u64() % (i as u64 + 1)) as usize;
            pi.swap(i, j);
        }
        let mut inst = PermutationCliqueInstance::new(k);
        for i in 1..=k {
            for j in i + 1..=k {
                inst.add_edge((i, pi[i - 1]), (j, pi[j - 1])).unwrap();
            }
        }
        for i in 1..=k {
            for x in 1..=k {
                for j in i + 1..=k {
                    for y in 1..=k {
                        if unit_f64(&mut r) < p {
                            inst.add_edge((i, x), (j, y)).unwrap();
                        }
                    }
                }
            }
        }
        (inst, pi)
    }
}

/// `(S_1, S_2, S_3, S_4)` as bitsets over `[k]` (element `x` is bit `x - 1`).
pub type Tuple = [u32; 4];

/// All tuples with `S_1 < S_2 <= S_3 < S_4`, `|S_1| = i - 1`, `S_2 \ S_1 = {x}`,
/// `|S_3| = j - 1` and `S_4 \ S_3 = {y}`.
pub fn tuples_for(k: usize, i: usize, x: usize, j: usize, y: usize) -> Vec<Tuple> {
    let (bx, by) = (1u32 << (x - 1), 1u32 << (y - 1));
    let mut out = Vec::new();
    if x == y || i >= j {
        return out;
    }
    for s1 in 0..1u32 << k {
        if s1.count_ones() as usize != i - 1 || s1 & (bx | by) != 0 {
            continue;
        }
        let s2 = s1 | bx;
        for s3 in 0..1u32 << k {
            if s3 & s2 == s2 && s3 & by == 0 && s3.count_ones() as usize == j - 1 {
                out.push([s1, s2, s3, s3 | by]);
            }
        }
    }
    out
}

/// `rho_{i,j}`: the tuples of every edge `(i, x)(j, y)`, sorted lexicographically.
pub fn tuple_family(inst: &PermutationCliqueInstance, i: usize, j: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    for x in 1..=inst.k {
        for y in 1..=inst.k {
            if x != y && inst.has_edge((i, x), (j, y)) {
                out.extend(tuples_for(inst.k, i, x, j, y));
            }
        }
    }
    out.sort_unstable();
    out
}

pub const DEFAULT_K_CAP: usize = 6;

/// One choice gadget `C_{i,j}` inside the reduced graph.
#[derive(Clone, Debug)]
pub struct PlacedGadget {
    pub i: usize,
    pub j: usize,
    pub rho: Vec<Tuple>,
    /// Id of the gadget's vertex 0 in the reduced graph.
    pub offset: usize,
    pub gadget: ChoiceGadget,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub k: usize,
    pub graph: WeightedGraph,
    pub budget: usize,
    pub gadgets: Vec<PlacedGadget>,
    pub labels: GadgetLabels,
}

#[derive(Clone, Debug)]
pub enum ReductionOutcome {
    Instance(Reduction),
    /// No tuple survives for the pair `(i, j)`, so no permutation clique exists.
    TriviallyNo { i: usize, j: usize },
}

pub fn reduce_permutation_clique(inst: &PermutationCliqueInstance) -> Result<ReductionOutcome> {
    reduce_permutation_clique_with_cap(inst, DEFAULT_K_CAP)
}

pub fn reduce_permutation_clique_with_cap(
    inst: &PermutationCliqueInstance,
    k_cap: usize,
) -> Result<ReductionOutcome> {
    let k = inst.k;
    if k < 2 {
        return Err(Error::PreconditionFailed("the reduction needs k >= 2".into()));
    }
    if k > k_cap {
        return Err(Error::InstanceTooLarge(format!("k = {k} exceeds the cap {k_cap}")));
    }
    let mut families = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            let rho = tuple_family(inst, i, j);
            if rho.is_empty() {
                return Ok(ReductionOutcome::TriviallyNo { i, j });
            }
            families.push((i, j, rho));
        }
    }
    let (mut graph, mut labels) = permutation_gadget(k);
    let mut gadgets = Vec::new();
    let mut budget = 0;
    for (i, j, rho) in families {
        let gadget = choice_gadget(rho.len())?;
        let offset = graph.n();
        for v in 0..gadget.graph.n() {
            graph.add_vertex(gadget.graph.weight(v));
        }
        for (a, b) in gadget.graph.edges() {
            graph.add_edge(a + offset, b + offset)?;
        }
        for (l, t) in rho.iter().enumerate() {
            for alpha in 1..=4 {
                let gv = gadget.g(l + 1, alpha) + offset;
                for x in 1..=k {
                    if t[alpha - 1] >> (x - 1) & 1 == 1 {
                        graph.add_edge(gv, x - 1)?;
                    }
                }
            }
        }
        labels.extend_prefixed(&format!("C{i}_{j}:"), offset, &gadget.labels());
        budget += 10 * rho.len();
        gadgets.push(PlacedGadget {
            i,
            j,
            rho,
            offset,
            gadget,
        });
    }
    Ok(ReductionOutcome::Instance(Reduction {
        k,
        graph,
        budget,
        gadgets,
        labels,
    }))
}

/// Why [`forward_solution`] declined to build a deletion set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    NotAPermutation,
    MissingEdge(Cell, Cell),
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NotAPermutation => write!(f, "not a permutation"),
            Refusal::MissingEdge(a, b) => {
                write!(f, "missing edge ({},{})({},{})", a.0, a.1, b.0, b.1)
            }
        }
    }
}

fn prefix_mask(pi: &[usize], len: usize) -> u32 {
    pi[..len].iter().fold(0, |m, &x| m | 1 << (x - 1))
}

/// The deletion set of size `p` induced by a permutation clique `pi` (`pi[i - 1] = pi(i)`),
/// verified to leave an interval graph.
pub fn forward_solution(
    inst: &PermutationCliqueInstance,
    red: &Reduction,
    pi: &[usize],
) -> Result<std::result::Result<VertexSet, Refusal>> {
    let k = inst.k;
    let mut sorted = pi.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=k).collect::<Vec<_>>() {
        return Ok(Err(Refusal::NotAPermutation));
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let (a, b) = ((i, pi[i - 1]), (j, pi[j - 1]));
            if !inst.has_edge(a, b) {
                return Ok(Err(Refusal::MissingEdge(a, b)));
            }
        }
    }
    let mut x = VertexSet::new(red.graph.n());
    for pg in &red.gadgets {
        let t = [
            prefix_mask(pi, pg.i - 1),
            prefix_mask(pi, pg.i),
            prefix_mask(pi, pg.j - 1),
            prefix_mask(pi, pg.j),
        ];
        let l = pg
            .rho
            .binary_search(&t)
            .map_err(|_| Error::Internal(format!("tuple {t:?} missing for ({}, {})", pg.i, pg.j)))?;
        for v in pg.gadget.canonical_solution(l + 1)?.iter() {
            x.insert(v + pg.offset);
        }
    }
    if x.len() != red.budget || !is_interval_deletion_set(&red.graph, &x) {
        return Err(Error::Internal("forward solution failed verification".into()));
    }
    Ok(Ok(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_interval_deletion;

    fn sets(v: &[&[usize]]) -> Vec<BTreeSet<usize>> {
        v.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn permutation_gadget_shapes() {
        let (g1, _) = permutation_gadget(1);
        assert_eq!(g1, WeightedGraph::path(3));
        let (g2, l) = permutation_gadget(2);
        assert_eq!((g2.n(), g2.m()), (4, 4));
        assert_eq!(l.get("y4"), Some(3));
        assert_eq!(permutation_gadget(5).0.n(), 7);
    }

    #[test]
    fn attach_sets_examples() {
        assert!(is_interval(&attach_sets(2, &sets(&[&[2], &[1, 2]])).unwrap()));
        assert!(!is_interval(&attach_sets(2, &sets(&[&[1], &[2]])).unwrap()));
        assert!(is_interval(&attach_sets(3, &[]).unwrap()));
    }

    #[test]
    fn realize_chain_examples() {
        let fig = sets(&[&[2], &[2, 4], &[2, 4, 3], &[1, 2, 3, 4]]);
        assert_eq!(realize_chain(4, &fig), Some(vec![2, 4, 3, 1]));
        assert_eq!(realize_chain(2, &sets(&[&[1], &[2]])), None);
        assert_eq!(realize_chain(3, &sets(&[&[], &[]])), Some(vec![1, 2, 3]));
    }

    #[test]
    fn p_needs_two_deletions() {
        let p = p_graph();
        assert!(!is_interval(&p));
        assert_eq!(brute_force_interval_deletion(&p).unwrap().0, 2);
    }

    #[test]
    fn choice_gadget_counts() {
        for s in 1..=3 {
            let cg = choice_gadget(s).unwrap();
            assert_eq!(cg.graph.n(), 71 * s + 4);
            assert_eq!(cg.labels().entries.len(), 2 + s * (3 + 4 * 11));
        }
        assert!(choice_gadget(0).is_err());
    }

    #[test]
    fn canonical_solution_small() {
        let cg = choice_gadget(1).unwrap();
        let x = cg.canonical_solution(1).unwrap();
        assert_eq!(x.len(), 10);
        assert!(is_interval_deletion_set(&cg.graph, &x));
        let cg = choice_gadget(2).unwrap();
        let x = cg.canonical_solution(1).unwrap();
        assert_eq!(x.len(), 20);
        for alpha in 1..=4 {
            assert!(x.contains(cg.g(2, alpha)));
            assert!(!x.contains(cg.g(1, alpha)));
            assert!(x.contains(cg.h(1, alpha)));
        }
        assert!(cg.canonical_solution(3).is_err());
    }

    #[test]
    fn tuple_counts_for_k2() {
        let mut inst = PermutationCliqueInstance::new(2);
        inst.add_edge((1, 1), (2, 2)).unwrap();
        inst.add_edge((1, 2), (2, 1)).unwrap();
        assert_eq!(tuple_family(&inst, 1, 2).len(), 2);
        let empty = PermutationCliqueInstance::new(2);
        assert!(matches!(
            reduce_permutation_clique(&empty).unwrap(),
            ReductionOutcome::TriviallyNo { i: 1, j: 2 }
        ));
    }

    #[test]
    fn forward_refusal_names_edge() {
        let mut inst = PermutationCliqueInstance::new(2);
        inst.add_edge((1, 1), (2, 2)).unwrap();
        let ReductionOutcome::Instance(red) = reduce_permutation_clique(&inst).unwrap() else {
            panic!("expected an instance");
        };
        assert_eq!(red.graph.n(), 4 + 71 + 4);
        assert_eq!(
            forward_solution(&inst, &red, &[2, 1]).unwrap(),
            Err(Refusal::MissingEdge((1, 2), (2, 1)))
        );
        let x = forward_solution(&inst, &red, &[1, 2]).unwrap().unwrap();
        assert_eq!(x.len(), red.budget);
    }
}
