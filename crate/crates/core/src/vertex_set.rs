use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of vertex ids of a fixed host graph, stored as a bitset of width `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        s.bits.insert_range(..);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Self {
        let mut s = Self::new(n);
        for v in items {
            s.insert(v);
        }
        s
    }

    /// Width of the host graph this set is keyed to.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn complement(&self) -> VertexSet {
        let mut c = VertexSet::full(self.capacity());
        c.difference_with(self);
        c
    }
}

/// Sets compare as the integers whose binary expansion they are (bit `v` set iff `v` is a
/// member), so the smallest set is the one avoiding the largest differing vertex.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.bits.as_slice();
        let b = other.bits.as_slice();
        let len = a.len().max(b.len());
        for i in (0..len).rev() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
