//! Dynamic program over a nice tree decomposition.
//!
//! For a node `t` and `X ⊆ χ(t)` the state is a family of condensed boundaried chordal graphs
//! over `X`, each with the best weight of a partial solution `A ⊆ U_t` condensing to it. Since
//! non-boundary vertices of a condensed chordal graph are pairwise non-adjacent with distinct
//! neighbourhoods, a graph is stored as the sorted list of those neighbourhoods, written as
//! bitmasks over positions in the bag.

use std::collections::HashMap;
use std::sync::Arc;

use crate::boundary::{base_index, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::{is_chordal, WeightedGraph};
use crate::mask::{self, bits, compress, insert_bit, remove_bit};
use crate::matroid::{max_representative, FamilyEntry, GraphicMatroid};
use crate::treedec::{check_nice, NiceDecomposition, NodeKind};
use crate::vertex_set::VertexSet;

/// Largest supported bag.
pub const MAX_BAG: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Back {
    Base,
    /// Entry of the child family at the corresponding `X`; for forget nodes, the branch that
    /// leaves the forgotten vertex out.
    Child(u32),
    /// Forget node: entry of the child family at `X ∪ {v}`, so `v` is kept.
    Add(u32),
    Join(u32, u32),
}

impl Back {
    fn pack(self) -> u32 {
        match self {
            Back::Base => 0,
            Back::Child(i) => 1 << 30 | i,
            Back::Add(i) => 2 << 30 | i,
            Back::Join(l, r) => 3 << 30 | l << 15 | r,
        }
    }

    fn unpack(x: u32) -> Back {
        let i = x & ((1 << 30) - 1);
        match x >> 30 {
            0 => Back::Base,
            1 => Back::Child(i),
            2 => Back::Add(i),
            _ => Back::Join(i >> 15, i & 0x7fff),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CondensedEntry {
    /// Neighbourhoods of the non-boundary vertices as bag-position masks, ascending.
    pub nbhds: Vec<u32>,
    pub weight: u64,
    pub sign: EdgeSet,
    pub back: Back,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeState {
    /// Sorted.
    pub bag: Vec<usize>,
    /// Indexed by `X` as a mask over bag positions.
    pub families: Vec<Vec<CondensedEntry>>,
}

impl NodeState {
    pub fn family(&self, x: u32) -> &[CondensedEntry] {
        &self.families[x as usize]
    }
}

/// `Base(G[X])` with spans precomputed in a form suited to bag masks.
#[derive(Debug)]
pub struct BoundaryInfo {
    /// Per minimal separator: offset of its Base edges and masks of its full components, over
    /// positions within `X`.
    seps: Vec<(usize, Vec<u32>)>,
    pub matroid: GraphicMatroid,
}

impl BoundaryInfo {
    /// Span of a neighbourhood given over positions within `X`.
    fn span(&self, y: u32) -> EdgeSet {
        let mut out: EdgeSet = 0;
        for (offset, comps) in &self.seps {
            let m = comps.len();
            let mut prev: Option<usize> = None;
            for (j, &c) in comps.iter().enumerate() {
                if c & y != 0 {
                    if let Some(i) = prev {
                        out |= 1u128 << (offset + i * (2 * m - i - 1) / 2 + (j - i - 1));
                    }
                    prev = Some(j);
                }
            }
        }
        out
    }

    fn is_independent(&self, s: EdgeSet) -> bool {
        self.matroid.is_independent(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: usize,
    pub width: usize,
    pub entries_stored: u64,
    pub max_family: usize,
    /// Stored entries over `X ≠ ∅` with more than `2|X| - 1` vertices.
    pub condense_bound_violations: u64,
    /// Stored families over `X` with more than `2^|X|` entries.
    pub size_invariant_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Maximum weight of a vertex set inducing a chordal graph.
    pub optimum: u64,
    pub deletion_weight: u64,
    pub deletion_set: VertexSet,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Retain every node state for inspection.
    pub keep_states: bool,
}

/// Per-node provenance, kept for witness reconstruction.
#[derive(Clone, Debug, Default)]
struct Provenance {
    offsets: Vec<u32>,
    backs: Vec<u32>,
}

impl Provenance {
    fn of(state: &NodeState) -> Self {
        let mut offsets = Vec::with_capacity(state.families.len() + 1);
        let mut backs = Vec::new();
        offsets.push(0);
        for fam in &state.families {
            backs.extend(fam.iter().map(|e| e.back.pack()));
            offsets.push(backs.len() as u32);
        }
        Provenance { offsets, backs }
    }

    fn get(&self, x: u32, idx: u32) -> Back {
        Back::unpack(self.backs[(self.offsets[x as usize] + idx) as usize])
    }
}

pub struct SolveRun {
    pub solution: Solution,
    /// One per node when `keep_states` was set, otherwise empty.
    pub states: Vec<NodeState>,
    provenance: Vec<Provenance>,
    nd: NiceDecomposition,
}

impl SolveRun {
    /// Vertices of `U_t` kept by the partial solution behind entry `back` of node `node`.
    pub fn witness(&self, node: usize, x: u32, back: Back) -> Vec<usize> {
        let mut kept = Vec::new();
        let mut stack = vec![(node, x, back)];
        while let Some((t, x, back)) = stack.pop() {
            let n = &self.nd.nodes[t];
            match (n.kind, back) {
                (NodeKind::Base, _) => {}
                (NodeKind::Introduce(v), Back::Child(i)) => {
                    let c = n.children[0];
                    let pv = n.bag.binary_search(&v).unwrap();
                    let xc = remove_bit(x, pv);
                    stack.push((c, xc, self.provenance[c].get(xc, i)));
                }
                (NodeKind::Forget(v), Back::Child(i)) | (NodeKind::Forget(v), Back::Add(i)) => {
                    let c = n.children[0];
                    let pv = self.nd.nodes[c].bag.binary_search(&v).unwrap();
                    let mut xc = insert_bit(x, pv);
                    if matches!(back, Back::Add(_)) {
                        xc |= 1 << pv;
                        kept.push(v);
                    }
                    stack.push((c, xc, self.provenance[c].get(xc, i)));
                }
                (NodeKind::Join, Back::Join(l, r)) => {
                    let (a, b) = (n.children[0], n.children[1]);
                    stack.push((a, x, self.provenance[a].get(x, l)));
                    stack.push((b, x, self.provenance[b].get(x, r)));
                }
                (kind, back) => panic!("provenance {back:?} does not fit node kind {kind:?}"),
            }
        }
        kept.sort_unstable();
        kept
    }

    pub fn decomposition(&self) -> &NiceDecomposition {
        &self.nd
    }
}

/// Shared context for node transitions: the host graph and a cache of boundary data keyed by
/// the shape of `G[X]`.
pub struct DpContext<'a> {
    g: &'a WeightedGraph,
    cache: HashMap<Vec<u32>, Option<Arc<BoundaryInfo>>>,
}

fn bag_adjacency(g: &WeightedGraph, bag: &[usize]) -> Vec<u32> {
    bag.iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|u| bag.binary_search(u).ok())
                .fold(0u32, |acc, p| acc | 1 << p)
        })
        .collect()
}

fn full_mask(len: usize) -> u32 {
    if len == 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

fn is_clique32(badj: &[u32], set: u32) -> bool {
    bits(set as u64).all(|p| set & !(1 << p) & !badj[p] == 0)
}

impl<'a> DpContext<'a> {
    pub fn new(g: &'a WeightedGraph) -> Self {
        DpContext {
            g,
            cache: HashMap::new(),
        }
    }

    /// Boundary data for `G[X]`, or `None` when `G[X]` is not chordal.
    pub fn boundary_info(&mut self, badj: &[u32], x: u32) -> Result<Option<Arc<BoundaryInfo>>> {
        let key: Vec<u32> = bits(x as u64).map(|p| compress(badj[p] & x, x)).collect();
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let k = key.len();
        let mut b = WeightedGraph::new(k);
        for (i, &row) in key.iter().enumerate() {
            for j in bits(row as u64).filter(|&j| j > i) {
                b.add_edge(i, j)?;
            }
        }
        let info = if is_chordal(&b) {
            let idx = base_index(&b)?;
            let matroid = crate::matroid::build_graphic_matroid(&idx)?;
            let mut seps = Vec::with_capacity(idx.separators.len());
            for (si, rec) in idx.separators.iter().enumerate() {
                let comps = rec
                    .full_components
                    .iter()
                    .map(|c| c.iter().fold(0u32, |acc, v| acc | 1 << v))
                    .collect::<Vec<_>>();
                let offset = if comps.len() >= 2 { idx.edge_index(si, 0, 1) } else { 0 };
                seps.push((offset, comps));
            }
            Some(Arc::new(BoundaryInfo { seps, matroid }))
        } else {
            None
        };
        self.cache.insert(key, info.clone());
        Ok(info)
    }

    fn sign_of(info: &BoundaryInfo, nbhds: &[u32], x: u32) -> EdgeSet {
        nbhds
            .iter()
            .fold(0, |acc, &nb| acc | info.span(compress(nb, x)))
    }

    pub fn base_state(&self) -> NodeState {
        NodeState {
            bag: Vec::new(),
            families: vec![vec![CondensedEntry {
                nbhds: Vec::new(),
                weight: 0,
                sign: 0,
                back: Back::Base,
            }]],
        }
    }

    /// Introduce node: `X ∌ v` copies the child family; `X ∋ v` adds `v` as a boundary vertex
    /// and keeps the entries that stay chordal.
    pub fn introduce(&mut self, child: &NodeState, v: usize) -> Result<NodeState> {
        let pv = child.bag.binary_search(&v).unwrap_err();
        let mut bag = child.bag.clone();
        bag.insert(pv, v);
        let badj = bag_adjacency(self.g, &bag);
        let len = bag.len();
        let mut families = Vec::with_capacity(1 << len);
        for x in 0..=full_mask(len) {
            let xc = remove_bit(x, pv);
            let src = child.family(xc);
            if x >> pv & 1 == 0 {
                families.push(
                    src.iter()
                        .enumerate()
                        .map(|(i, e)| CondensedEntry {
                            nbhds: e.nbhds.iter().map(|&m| insert_bit(m, pv)).collect(),
                            weight: e.weight,
                            sign: e.sign,
                            back: Back::Child(i as u32),
                        })
                        .collect(),
                );
                continue;
            }
            let Some(info) = self.boundary_info(&badj, x)? else {
                families.push(Vec::new());
                continue;
            };
            let mut fam = Vec::new();
            for (i, e) in src.iter().enumerate() {
                let nbhds: Vec<u32> = e.nbhds.iter().map(|&m| insert_bit(m, pv)).collect();
                if entry_is_chordal(&badj, x, &nbhds) {
                    let sign = Self::sign_of(&info, &nbhds, x);
                    fam.push(CondensedEntry {
                        nbhds,
                        weight: e.weight,
                        sign,
                        back: Back::Child(i as u32),
                    });
                }
            }
            families.push(fam);
        }
        Ok(NodeState { bag, families })
    }

    /// Forget node: the union of the branch deleting `v` and the branch keeping it, where the
    /// latter merges `v` with the components it touches; then deduplicated and reduced.
    pub fn forget(&mut self, child: &NodeState, v: usize) -> Result<NodeState> {
        let pv = child.bag.binary_search(&v).expect("forgotten vertex in child bag");
        let cadj = bag_adjacency(self.g, &child.bag);
        let mut bag = child.bag.clone();
        bag.remove(pv);
        let badj = bag_adjacency(self.g, &bag);
        let wv = self.g.weight(v);
        let len = bag.len();
        let mut families = Vec::with_capacity(1 << len);
        for x in 0..=full_mask(len) {
            let xk = insert_bit(x, pv);
            let xa = xk | 1 << pv;
            let Some(info) = self.boundary_info(&badj, x)? else {
                families.push(Vec::new());
                continue;
            };
            let mut cands = Vec::new();
            for (i, e) in child.family(xk).iter().enumerate() {
                cands.push(CondensedEntry {
                    nbhds: e.nbhds.iter().map(|&m| remove_bit(m, pv)).collect(),
                    weight: e.weight,
                    sign: e.sign,
                    back: Back::Child(i as u32),
                });
            }
            for (i, e) in child.family(xa).iter().enumerate() {
                let mut merged = cadj[pv] & xk;
                let mut nbhds = Vec::with_capacity(e.nbhds.len());
                for &m in &e.nbhds {
                    if m >> pv & 1 == 1 {
                        merged |= m;
                    } else {
                        nbhds.push(remove_bit(m, pv));
                    }
                }
                let merged = remove_bit(merged & !(1 << pv), pv);
                if !is_clique32(&badj, merged) {
                    nbhds.push(merged);
                    nbhds.sort_unstable();
                }
                let sign = Self::sign_of(&info, &nbhds, x);
                cands.push(CondensedEntry {
                    nbhds,
                    weight: e.weight + wv,
                    sign,
                    back: Back::Add(i as u32),
                });
            }
            families.push(self.reduce_family(&info, cands)?);
        }
        Ok(NodeState { bag, families })
    }

    /// Join node: every pair whose signatures are disjoint with an independent union glues to a
    /// chordal graph; the glue is the merged neighbourhood list.
    pub fn join(&mut self, left: &NodeState, right: &NodeState) -> Result<NodeState> {
        debug_assert_eq!(left.bag, right.bag);
        let bag = left.bag.clone();
        let badj = bag_adjacency(self.g, &bag);
        let len = bag.len();
        let mut families = Vec::with_capacity(1 << len);
        for x in 0..=full_mask(len) {
            let (lf, rf) = (left.family(x), right.family(x));
            if lf.is_empty() || rf.is_empty() {
                families.push(Vec::new());
                continue;
            }
            let info = self
                .boundary_info(&badj, x)?
                .ok_or_else(|| Error::Internal("non-empty family over non-chordal X".into()))?;
            let mut cands = Vec::new();
            for (i, a) in lf.iter().enumerate() {
                for (j, b) in rf.iter().enumerate() {
                    if a.sign & b.sign != 0 || !info.is_independent(a.sign | b.sign) {
                        continue;
                    }
                    let mut nbhds = Vec::with_capacity(a.nbhds.len() + b.nbhds.len());
                    nbhds.extend_from_slice(&a.nbhds);
                    nbhds.extend_from_slice(&b.nbhds);
                    nbhds.sort_unstable();
                    cands.push(CondensedEntry {
                        nbhds,
                        weight: a.weight + b.weight,
                        sign: a.sign | b.sign,
                        back: Back::Join(i as u32, j as u32),
                    });
                }
            }
            families.push(self.reduce_family(&info, cands)?);
        }
        Ok(NodeState { bag, families })
    }

    /// Keeps the heaviest entry per condensed graph, then the heaviest per signature, then a
    /// max representative subfamily of the signatures. Output is sorted by graph.
    pub fn reduce_family(
        &self,
        info: &BoundaryInfo,
        mut cands: Vec<CondensedEntry>,
    ) -> Result<Vec<CondensedEntry>> {
        if cands.len() <= 1 {
            return Ok(cands);
        }
        cands.sort_by(|a, b| {
            a.nbhds
                .cmp(&b.nbhds)
                .then(b.weight.cmp(&a.weight))
                .then(a.back.cmp(&b.back))
        });
        cands.dedup_by(|later, first| later.nbhds == first.nbhds);
        cands.sort_by(|a, b| {
            a.sign
                .cmp(&b.sign)
                .then(b.weight.cmp(&a.weight))
                .then(a.nbhds.cmp(&b.nbhds))
        });
        cands.dedup_by(|later, first| later.sign == first.sign);
        if cands.len() > 1 {
            let fam: Vec<FamilyEntry> = cands
                .iter()
                .enumerate()
                .map(|(i, e)| FamilyEntry {
                    edges: e.sign,
                    weight: e.weight,
                    payload: i,
                })
                .collect();
            let keep = max_representative(&info.matroid, &fam)?;
            let mut chosen: Vec<usize> = keep.iter().map(|f| f.payload).collect();
            chosen.sort_unstable();
            cands = chosen.into_iter().map(|i| cands[i].clone()).collect();
        }
        cands.sort_by(|a, b| a.nbhds.cmp(&b.nbhds));
        Ok(cands)
    }
}

/// Chordality of the condensed graph over `X` with the given neighbourhood list.
fn entry_is_chordal(badj: &[u32], x: u32, nbhds: &[u32]) -> bool {
    let base = badj.len();
    let mut adj = [0u64; 64];
    for p in bits(x as u64) {
        adj[p] = (badj[p] & x) as u64;
    }
    let mut within = x as u64;
    for (i, &nb) in nbhds.iter().enumerate() {
        let id = base + i;
        adj[id] = nb as u64;
        within |= 1 << id;
        for p in bits(nb as u64) {
            adj[p] |= 1 << id;
        }
    }
    mask::is_chordal_within(&adj[..base + nbhds.len()], within)
}

fn record(stats: &mut SolveStats, state: &NodeState) {
    for (x, fam) in state.families.iter().enumerate() {
        let k = x.count_ones() as usize;
        stats.entries_stored += fam.len() as u64;
        stats.max_family = stats.max_family.max(fam.len());
        if fam.len() > 1usize << k {
            stats.size_invariant_violations += 1;
        }
        for e in fam {
            let too_big = if k == 0 { !e.nbhds.is_empty() } else { e.nbhds.len() + 1 > k };
            if too_big {
                stats.condense_bound_violations += 1;
            }
        }
    }
}

pub fn solve(g: &WeightedGraph, nd: &NiceDecomposition) -> Result<Solution> {
    Ok(solve_with(g, nd, &SolveOptions::default())?.solution)
}

pub fn solve_with(g: &WeightedGraph, nd: &NiceDecomposition, opts: &SolveOptions) -> Result<SolveRun> {
    check_nice(nd, g).map_err(Error::InvalidDecomposition)?;
    let total = g.total_weight()?;
    let width = nd.width();
    if nd.nodes.iter().any(|t| t.bag.len() > MAX_BAG) {
        return Err(Error::WidthTooLarge {
            width,
            max: MAX_BAG - 1,
        });
    }
    let mut ctx = DpContext::new(g);
    let count = nd.nodes.len();
    let mut states: Vec<Option<NodeState>> = vec![None; count];
    let mut provenance = vec![Provenance::default(); count];
    let mut stats = SolveStats {
        nodes: count,
        width,
        ..SolveStats::default()
    };
    for (t, node) in nd.nodes.iter().enumerate() {
        let state = match node.kind {
            NodeKind::Base => ctx.base_state(),
            NodeKind::Introduce(v) => ctx.introduce(states[node.children[0]].as_ref().unwrap(), v)?,
            NodeKind::Forget(v) => ctx.forget(states[node.children[0]].as_ref().unwrap(), v)?,
            NodeKind::Join => ctx.join(
                states[node.children[0]].as_ref().unwrap(),
                states[node.children[1]].as_ref().unwrap(),
            )?,
        };
        record(&mut stats, &state);
        provenance[t] = Provenance::of(&state);
        states[t] = Some(state);
        if !opts.keep_states {
            for &c in &node.children {
                states[c] = None;
            }
        }
    }
    let root = nd.root();
    let root_state = states[root].as_ref().unwrap();
    let top = root_state.family(0);
    if top.len() != 1 {
        return Err(Error::Internal(format!(
            "root family has {} entries, expected exactly one",
            top.len()
        )));
    }
    let optimum = top[0].weight;
    let root_back = top[0].back;
    let mut run = SolveRun {
        solution: Solution {
            optimum,
            deletion_weight: 0,
            deletion_set: VertexSet::new(g.n()),
            stats,
        },
        states: Vec::new(),
        provenance,
        nd: nd.clone(),
    };
    let kept = run.witness(root, 0, root_back);
    let kept_set = VertexSet::from_iter(g.n(), kept);
    let deletion_set = kept_set.complement();
    let kept_weight = g.set_weight_sum(&kept_set)?;
    if kept_weight != optimum {
        return Err(Error::Internal(format!(
            "witness weighs {kept_weight}, optimum is {optimum}"
        )));
    }
    if !is_chordal(&g.induced(&kept_set).0) {
        return Err(Error::Internal("reconstructed solution is not chordal".into()));
    }
    run.solution.deletion_weight = total - optimum;
    run.solution.deletion_set = deletion_set;
    if opts.keep_states {
        run.states = states.into_iter().map(|s| s.unwrap()).collect();
    }
    Ok(run)
}

/// Findings of [`verify_invariants`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub witness_violations: Vec<String>,
    pub extension_violations: Vec<String>,
    pub size_violations: Vec<String>,
}

impl InvariantReport {
    pub fn is_ok(&self) -> bool {
        self.witness_violations.is_empty()
            && self.extension_violations.is_empty()
            && self.size_violations.is_empty()
    }
}

pub const VERIFY_MAX_VT: usize = 14;
pub const VERIFY_MAX_REST: usize = 10;

/// Brute-force check of one node state against its definition: every entry replays to a
/// concrete partial solution condensing to it with the stated weight, and every chordal
/// extension `A ∪ X ∪ B` is dominated by some entry compatible with `G[X ∪ B]`.
pub fn verify_invariants(
    g: &WeightedGraph,
    run: &SolveRun,
    node: usize,
    state: &NodeState,
) -> Result<InvariantReport> {
    let n = g.n();
    if n > 64 {
        return Err(Error::TooLarge { n, max: 64 });
    }
    let nd = run.decomposition();
    let bag = &state.bag;
    let mut vt = 0u64;
    let mut stack = vec![node];
    while let Some(t) = stack.pop() {
        for &v in &nd.nodes[t].bag {
            vt |= 1 << v;
        }
        stack.extend(nd.nodes[t].children.iter().copied());
    }
    let bag_mask = bag.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let ut = vt & !bag_mask;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rest = all & !vt;
    if vt.count_ones() as usize > VERIFY_MAX_VT || rest.count_ones() as usize > VERIFY_MAX_REST {
        return Err(Error::TooLarge {
            n,
            max: VERIFY_MAX_VT + VERIFY_MAX_REST,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect();
    let weight = |s: u64| bits(s).map(|v| g.weight(v)).sum::<u64>();
    let to_global = |x: u32| bits(x as u64).fold(0u64, |acc, p| acc | 1 << bag[p]);
    let badj = bag_adjacency(g, bag);
    let subsets = |m: u64| {
        let mut s = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = s;
            s = s.wrapping_sub(m) & m;
            done = s == 0;
            Some(cur)
        })
    };
    // condensed form of G[A ∪ X] as sorted bag-position masks
    let condensed = |a: u64, x: u32| -> Vec<u32> {
        let xg = to_global(x);
        let mut out: Vec<u32> = mask::components_within(&adj, a)
            .into_iter()
            .map(|c| {
                let nb = bits(c).fold(0u64, |acc, v| acc | adj[v]) & xg;
                bag.iter()
                    .enumerate()
                    .filter(|&(_, &v)| nb >> v & 1 == 1)
                    .fold(0u32, |acc, (p, _)| acc | 1 << p)
            })
            .filter(|&nb| !is_clique32(&badj, nb))
            .collect();
        out.sort_unstable();
        out
    };
    let mut report = InvariantReport::default();
    for x in 0..=full_mask(bag.len()) {
        let fam = state.family(x);
        let k = x.count_ones();
        if fam.len() > 1usize << k {
            report
                .size_violations
                .push(format!("X={x:b}: {} entries", fam.len()));
        }
        let xg = to_global(x);
        for (i, e) in fam.iter().enumerate() {
            let a = run.witness(node, x, e.back);
            let am = a.iter().fold(0u64, |acc, &v| acc | 1 << v);
            let problem = if am & !ut != 0 {
                Some("witness leaves U_t".to_string())
            } else if !mask::is_chordal_within(&adj, am | xg) {
                Some("witness is not chordal".to_string())
            } else if condensed(am, x) != e.nbhds {
                Some("witness condenses to a different graph".to_string())
            } else if weight(am) != e.weight {
                Some(format!("witness weighs {}, entry says {}", weight(am), e.weight))
            } else {
                None
            };
            if let Some(p) = problem {
                report.witness_violations.push(format!("X={x:b} entry {i}: {p}"));
            }
        }
        // best[B]: heaviest entry whose glue with G[X ∪ B] is chordal
        let mut best: Vec<(u64, Option<u64>)> = Vec::new();
        for b in subsets(rest) {
            if !mask::is_chordal_within(&adj, xg | b) {
                continue;
            }
            let mut top = None;
            for e in fam {
                let mut sadj = adj.clone();
                sadj.resize(n + e.nbhds.len(), 0);
                let mut within = xg | b;
                for (j, &nb) in e.nbhds.iter().enumerate() {
                    let id = n + j;
                    let nbg = to_global(nb);
                    if id >= 64 {
                        return Err(Error::TooLarge { n: id + 1, max: 64 });
                    }
                    sadj[id] = nbg;
                    within |= 1 << id;
                    for v in bits(nbg) {
                        sadj[v] |= 1 << id;
                    }
                }
                if mask::is_chordal_within(&sadj, within) {
                    top = top.max(Some(e.weight));
                }
            }
            best.push((b, top));
        }
        for a in subsets(ut) {
            if !mask::is_chordal_within(&adj, a | xg) {
                continue;
            }
            let wa = weight(a);
            for &(b, top) in &best {
                if !mask::is_chordal_within(&adj, a | xg | b) {
                    continue;
                }
                if top.is_none_or(|t| t < wa) {
                    report.extension_violations.push(format!(
                        "X={x:b}: A={a:b} (weight {wa}) with B={b:b} is not dominated"
                    ));
                    break;
                }
            }
        }
    }
    Ok(report)
}
