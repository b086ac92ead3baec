//! Enumerates all graphs up to isomorphism for small n by vertex
//! augmentation: every (n+1)-vertex graph contains an n-vertex induced
//! subgraph, so extending each n-vertex representative by one vertex with
//! every possible neighborhood and reducing to canonical form covers the
//! next level. Codes pack the upper adjacency triangle column by column
//! with x(0,1) in the most significant position, the same bit order as
//! graph6, so sorted codes give sorted graph6 lines.

use perfdiv_core::Graph;
use rayon::prelude::*;

/// Non-isomorphic graph counts for n = 1..=9.
pub const EXPECTED_COUNTS: [usize; 9] = [1, 2, 4, 11, 34, 156, 1044, 12346, 274668];

/// Largest order the u64 code supports: 11 vertices is 55 triangle bits.
pub const MAX_CODE_VERTICES: usize = 11;

fn triangle_bits(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Upper-triangle code of g under its own labeling.
pub fn encode(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_CODE_VERTICES);
    let mut w = 0u64;
    for v in 1..g.n() {
        for u in 0..v {
            w = w << 1 | u64::from(g.has_edge(u, v));
        }
    }
    w
}

pub fn decode(n: usize, code: u64) -> Graph {
    assert!(n <= MAX_CODE_VERTICES);
    let l = triangle_bits(n);
    let mut g = Graph::empty(n).unwrap();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if code >> (l - 1 - i) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            i += 1;
        }
    }
    g
}

/// Smallest code over all labelings: branch and bound over the placement
/// order, pruning any prefix already larger than the incumbent's.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let l = triangle_bits(n);
    if l == 0 {
        return 0;
    }
    let rows: Vec<u64> = (0..n).map(|v| g.neighbors(v).unwrap().bits()).collect();
    let mut best = encode(g);
    let mut chosen = Vec::with_capacity(n);
    place(&rows, l, &mut chosen, 0, 0, 0, &mut best);
    best
}

fn place(
    rows: &[u64],
    l: u32,
    chosen: &mut Vec<usize>,
    used: u64,
    prefix: u64,
    plen: u32,
    best: &mut u64,
) {
    let n = rows.len();
    let k = chosen.len();
    if k == n {
        if prefix < *best {
            *best = prefix;
        }
        return;
    }
    for v in 0..n {
        if used >> v & 1 == 1 {
            continue;
        }
        // column k of the triangle: adjacency of v to each placed vertex
        let mut col = 0u64;
        for &u in chosen.iter() {
            col = col << 1 | (rows[v] >> u & 1);
        }
        let nprefix = prefix << k | col;
        let nplen = plen + k as u32;
        if nprefix > *best >> (l - nplen) {
            continue;
        }
        chosen.push(v);
        place(rows, l, chosen, used | 1 << v, nprefix, nplen, best);
        chosen.pop();
    }
}

/// Parent graph plus one vertex adjacent to the mask nb.
pub fn child(parent: &Graph, nb: u64) -> Graph {
    let n = parent.n();
    let mut g = Graph::empty(n + 1).unwrap();
    for (u, v) in parent.edges() {
        g.add_edge(u, v).unwrap();
    }
    for u in 0..n {
        if nb >> u & 1 == 1 {
            g.add_edge(u, n).unwrap();
        }
    }
    g
}

/// Canonical codes for every level n = 1..=max_n, ascending within each.
pub fn generate_levels(max_n: usize) -> Vec<Vec<u64>> {
    assert!((1..=MAX_CODE_VERTICES).contains(&max_n));
    let mut levels = vec![vec![0u64]];
    for n in 1..max_n {
        let mut next: Vec<u64> = levels[n - 1]
            .par_iter()
            .flat_map_iter(|&code| {
                let parent = decode(n, code);
                (0u64..1 << n).map(move |nb| canonical_code(&child(&parent, nb)))
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        levels.push(next);
    }
    levels
}
