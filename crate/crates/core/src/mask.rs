//! Graphs on at most 64 vertices stored as adjacency bitmasks. Used on the DP hot path.

#[inline]
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
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

/// True if `set` is a clique in the graph given by `adj`.
#[inline]
pub fn is_clique(adj: &[u64], set: u64) -> bool {
    bits(set).all(|v| set & !(1u64 << v) & !adj[v] == 0)
}

/// Chordality of the graph induced on `within`, by maximum cardinality search followed by
/// the usual elimination-order check.
pub fn is_chordal_within(adj: &[u64], within: u64) -> bool {
    let n = within.count_ones() as usize;
    let mut order = [0u8; 64];
    let mut weight = [0u8; 64];
    let mut unvisited = within;
    let mut visited = 0u64;
    for step in 0..n {
        let mut best = usize::MAX;
        let mut best_w = 0u8;
        for v in bits(unvisited) {
            if best == usize::MAX || weight[v] > best_w {
                best = v;
                best_w = weight[v];
            }
        }
        // earlier-visited neighbours must form a clique together with their latest member
        let earlier = adj[best] & visited;
        if earlier != 0 {
            let mut latest = usize::MAX;
            for i in (0..step).rev() {
                let u = order[i] as usize;
                if earlier >> u & 1 == 1 {
                    latest = u;
                    break;
                }
            }
            let rest = earlier & !(1u64 << latest);
            if rest & !adj[latest] != 0 {
                return false;
            }
        }
        order[step] = best as u8;
        visited |= 1u64 << best;
        unvisited &= !(1u64 << best);
        for u in bits(adj[best] & unvisited) {
            weight[u] += 1;
        }
    }
    true
}

pub fn is_chordal(adj: &[u64]) -> bool {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    is_chordal_within(adj, all)
}

/// Connected components of the graph induced on `within`, as masks in order of lowest bit.
pub fn components_within(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= adj[v];
            }
            frontier = next & within & !comp;
            comp |= frontier;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

/// Inserts a zero bit at position `p`, shifting higher bits up.
#[inline]
pub fn insert_bit(m: u32, p: usize) -> u32 {
    let low = (1u32 << p) - 1;
    (m & low) | ((m & !low) << 1)
}

/// Removes bit `p`, shifting higher bits down.
#[inline]
pub fn remove_bit(m: u32, p: usize) -> u32 {
    let low = (1u32 << p) - 1;
    (m & low) | ((m >> 1) & !low)
}

/// Packs the bits of `m` selected by `sel` into the low bits (software `pext`).
#[inline]
pub fn compress(m: u32, sel: u32) -> u32 {
    let mut out = 0u32;
    let mut k = 0;
    let mut s = sel;
    while s != 0 {
        let i = s.trailing_zeros();
        if m >> i & 1 == 1 {
            out |= 1 << k;
        }
        k += 1;
        s &= s - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<u64> {
        (0..n)
            .map(|i| (1u64 << ((i + 1) % n)) | (1u64 << ((i + n - 1) % n)))
            .collect()
    }

    #[test]
    fn chordality_on_masks() {
        assert!(!is_chordal(&cycle(4)));
        assert!(!is_chordal(&cycle(7)));
        assert!(is_chordal(&cycle(3)));
        let mut c4 = cycle(4);
        c4[0] |= 1 << 2;
        c4[2] |= 1;
        assert!(is_chordal(&c4));
        assert!(is_chordal_within(&cycle(5), 0b01111));
    }

    #[test]
    fn bit_shuffles() {
        assert_eq!(insert_bit(0b1011, 2), 0b10011);
        assert_eq!(remove_bit(0b10011, 2), 0b1011);
        assert_eq!(compress(0b1010, 0b1110), 0b101);
    }

    #[test]
    fn components_of_masks() {
        let adj = vec![0b10, 0b01, 0b1000, 0b0100, 0];
        assert_eq!(components_within(&adj, 0b11111), vec![0b11, 0b1100, 0b10000]);
        assert!(is_clique(&adj, 0b11));
        assert!(!is_clique(&adj, 0b101));
    }
}
