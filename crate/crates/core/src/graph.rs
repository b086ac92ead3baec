//! Simple undirected graphs on up to 62 vertices, stored as per-vertex
//! adjacency bit rows, plus the structural operations: induced subgraphs,
//! complement, vertex substitution, and homogeneous-set search.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest supported vertex count (single-byte graph6 size form).
pub const MAX_VERTICES: usize = 62;

/// Default cap for the exhaustive homogeneous-set enumeration.
pub const DEFAULT_HOMOGENEOUS_CAP: usize = 16;

/// A set of vertices of a fixed ground graph, as a bitmask.
///
/// The ground graph is implicit; operations that combine a set with a graph
/// validate that all bits lie below the graph's vertex count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    bits: u64,
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { bits: 0 };

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet { bits }
    }

    /// All vertices of a graph on `n` vertices.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= 64);
        if n == 64 {
            VertexSet { bits: u64::MAX }
        } else {
            VertexSet {
                bits: (1u64 << n) - 1,
            }
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet { bits: 1u64 << v }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.bits |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.bits &= !(1u64 << v);
    }

    #[must_use]
    pub fn with(self, v: usize) -> VertexSet {
        VertexSet {
            bits: self.bits | 1u64 << v,
        }
    }

    #[must_use]
    pub fn without(self, v: usize) -> VertexSet {
        VertexSet {
            bits: self.bits & !(1u64 << v),
        }
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.bits & other.bits != 0
    }

    /// Smallest vertex in the set.
    pub fn min(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Ascending iteration over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic order on the ascending vertex sequences, so {0,3} sorts
    /// before {1} and a set before its proper supersets.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }

    /// Submasks of `self` in ascending numeric order, including the empty
    /// set and `self` itself.
    pub fn subsets_ascending(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.bits;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = {
                let next = s.wrapping_sub(mask) & mask;
                if next == 0 {
                    None
                } else {
                    Some(next)
                }
            };
            Some(VertexSet { bits: s })
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & rhs.bits,
        }
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits | rhs.bits,
        }
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & !rhs.bits,
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph; `adj[v]` is the neighbor bitset of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::GraphTooLarge { n });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// Cycle 0-1-...-(n-1)-0; requires n >= 3.
    pub fn cycle(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        Ok(g)
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, in column-major order of the upper
    /// triangle (the graph6 bit order).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 1..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_set(&self, s: VertexSet) -> Result<()> {
        if s.is_subset_of(VertexSet::full(self.n)) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange { set: s, n: self.n })
        }
    }

    /// N(v) as a set.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_bits(self.adj[v]))
    }

    /// N(X): union of neighborhoods, minus X itself.
    pub fn set_neighborhood(&self, x: VertexSet) -> Result<VertexSet> {
        self.check_set(x)?;
        let mut bits = 0u64;
        for v in x.iter() {
            bits |= self.adj[v];
        }
        Ok(VertexSet::from_bits(bits) - x)
    }

    /// Every x in X adjacent to every y in Y. False whenever the sets share
    /// a vertex, since no vertex is adjacent to itself.
    pub fn is_complete_between(&self, x: VertexSet, y: VertexSet) -> Result<bool> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(x.iter().all(|v| y.is_subset_of(VertexSet::from_bits(self.adj[v]))))
    }

    /// No edge between X and Y.
    pub fn is_anticomplete_between(&self, x: VertexSet, y: VertexSet) -> Result<bool> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(x.iter().all(|v| self.adj[v] & y.bits() == 0))
    }

    /// True when `s` induces a complete subgraph.
    pub fn is_clique(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s
            .iter()
            .all(|v| (s.without(v)).is_subset_of(VertexSet::from_bits(self.adj[v]))))
    }

    /// Subgraph induced by `s`, with the order-preserving relabeling onto
    /// 0..|s|-1. `map[i]` is the original vertex behind new index `i`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut g = Graph {
            n: map.len(),
            adj: vec![0; map.len()],
        };
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1u64 << j;
                    g.adj[j] |= 1u64 << i;
                }
            }
        }
        Ok((g, map))
    }

    /// Complement on the same vertex set. An involution.
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Substitute `h2` for vertex `x`: remove `x`, add a copy of `h2`, and
    /// join every inserted vertex to exactly the former neighbors of `x`.
    /// Surviving vertices keep their relative order and the inserted block
    /// is appended after them.
    pub fn substitute(&self, x: usize, h2: &Graph) -> Result<(Graph, SubstitutionRecord)> {
        self.check_vertex(x)?;
        if h2.n == 0 {
            return Err(Error::EmptySubstitution);
        }
        let n2 = self.n - 1 + h2.n;
        if n2 > MAX_VERTICES {
            return Err(Error::GraphTooLarge { n: n2 });
        }

        let mut carry_map = vec![None; self.n];
        let mut kept = 0usize;
        for v in 0..self.n {
            if v != x {
                carry_map[v] = Some(kept);
                kept += 1;
            }
        }

        let mut g = Graph {
            n: n2,
            adj: vec![0; n2],
        };
        // survivor-survivor edges
        for u in 0..self.n {
            for v in u + 1..self.n {
                if u != x && v != x && self.has_edge(u, v) {
                    let (cu, cv) = (carry_map[u].unwrap(), carry_map[v].unwrap());
                    g.adj[cu] |= 1u64 << cv;
                    g.adj[cv] |= 1u64 << cu;
                }
            }
        }
        // edges inside the inserted copy of h2
        let base = self.n - 1;
        for u in 0..h2.n {
            for v in u + 1..h2.n {
                if h2.has_edge(u, v) {
                    g.adj[base + u] |= 1u64 << (base + v);
                    g.adj[base + v] |= 1u64 << (base + u);
                }
            }
        }
        // every inserted vertex joins the former neighbors of x
        for v in 0..self.n {
            if v != x && self.has_edge(v, x) {
                let cv = carry_map[v].unwrap();
                for w in 0..h2.n {
                    g.adj[cv] |= 1u64 << (base + w);
                    g.adj[base + w] |= 1u64 << cv;
                }
            }
        }

        let inserted = (base..base + h2.n).collect();
        Ok((
            g,
            SubstitutionRecord {
                source_vertex: x,
                inserted,
                carry_map,
            },
        ))
    }

    /// All homogeneous sets: X with 1 < |X| < n such that every outside
    /// vertex is complete or anticomplete to X. Ordered by increasing size,
    /// then bitmask value. Exhaustive over all subsets, so capped.
    pub fn find_homogeneous_sets(&self) -> Result<Vec<VertexSet>> {
        self.find_homogeneous_sets_with_cap(DEFAULT_HOMOGENEOUS_CAP)
    }

    pub fn find_homogeneous_sets_with_cap(&self, cap: usize) -> Result<Vec<VertexSet>> {
        if self.n > cap {
            return Err(Error::CapExceeded {
                op: "find_homogeneous_sets",
                n: self.n,
                cap,
            });
        }
        let mut found = Vec::new();
        let full = VertexSet::full(self.n);
        for bits in 0..=full.bits() {
            let x = VertexSet::from_bits(bits);
            let size = x.len();
            if size < 2 || size >= self.n {
                continue;
            }
            if self.is_homogeneous(x) {
                found.push(x);
            }
            if bits == full.bits() {
                break;
            }
        }
        found.sort_by_key(|s| (s.len(), s.bits()));
        Ok(found)
    }

    fn is_homogeneous(&self, x: VertexSet) -> bool {
        let outside = VertexSet::full(self.n) - x;
        outside.iter().all(|v| {
            let hit = self.adj[v] & x.bits();
            hit == 0 || hit == x.bits()
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Provenance of a substitution: which vertex was replaced, where the
/// inserted copy lives in the result, and how surviving vertices moved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRecord {
    /// The replaced vertex, in the original graph's numbering.
    pub source_vertex: usize,
    /// Vertices of the inserted copy, in the result graph's numbering.
    pub inserted: VertexSet,
    /// `carry_map[v]` is the result index of surviving original vertex `v`;
    /// `None` exactly at `source_vertex`.
    pub carry_map: Vec<Option<usize>>,
}

impl SubstitutionRecord {
    pub fn carry_vertex(&self, v: usize) -> Option<usize> {
        self.carry_map.get(v).copied().flatten()
    }

    /// Image of a set of surviving original vertices. Errors if the set
    /// contains the replaced vertex.
    pub fn carry_set(&self, s: VertexSet) -> Result<VertexSet> {
        let mut out = VertexSet::EMPTY;
        for v in s.iter() {
            match self.carry_vertex(v) {
                Some(c) => out.insert(c),
                None => {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: self.carry_map.len(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Original vertex behind a carried result index; `None` for inserted
    /// vertices.
    pub fn pullback_vertex(&self, result_v: usize) -> Option<usize> {
        self.carry_map
            .iter()
            .position(|&c| c == Some(result_v))
    }

    /// Preimage of a set of carried result vertices. Errors if the set
    /// touches the inserted block.
    pub fn pullback_set(&self, s: VertexSet) -> Result<VertexSet> {
        if s.intersects(self.inserted) {
            return Err(Error::SetOutOfRange {
                set: s,
                n: self.carry_map.len(),
            });
        }
        let mut out = VertexSet::EMPTY;
        for (orig, &c) in self.carry_map.iter().enumerate() {
            if let Some(c) = c {
                if s.contains(c) {
                    out.insert(orig);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Graph {
        // a=0, c=1 nonadjacent; both complete to {b1=2, b2=3}; b1-b2 edge
        Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [0, 2, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(2));
        assert!(!s.contains(1));
        assert_eq!(s.to_vec(), vec![0, 2, 5]);
        assert_eq!(format!("{s:?}"), "{0,2,5}");
    }

    #[test]
    fn lex_order_prefers_small_vertices_then_prefixes() {
        let a: VertexSet = [0, 3].into_iter().collect();
        let b: VertexSet = [1].into_iter().collect();
        let c: VertexSet = [0].into_iter().collect();
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        assert_eq!(c.lex_cmp(a), Ordering::Less);
        assert_eq!(a.lex_cmp(a), Ordering::Equal);
    }

    #[test]
    fn subsets_ascending_enumerates_in_numeric_order() {
        let m: VertexSet = [0, 2].into_iter().collect();
        let subs: Vec<u64> = m.subsets_ascending().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0b000, 0b001, 0b100, 0b101]);
    }

    #[test]
    fn cycle_adjacency() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.neighbors(0).unwrap().to_vec(), vec![1, 4]);
        assert_eq!(c5.edge_count(), 5);
    }

    #[test]
    fn set_neighborhood_excludes_the_set() {
        let c5 = Graph::cycle(5).unwrap();
        let x: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(c5.set_neighborhood(x).unwrap().to_vec(), vec![1, 3, 4]);
    }

    #[test]
    fn complete_between_on_k4() {
        let k4 = Graph::complete(4).unwrap();
        let rest: VertexSet = [1, 2, 3].into_iter().collect();
        assert!(k4
            .is_complete_between(VertexSet::singleton(0), rest)
            .unwrap());
    }

    #[test]
    fn induced_subgraph_of_cycle() {
        let c5 = Graph::cycle(5).unwrap();
        let (full, map) = c5.induced_subgraph(VertexSet::full(5)).unwrap();
        assert_eq!(full, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        let (p4, map) = c5
            .induced_subgraph([0, 1, 2, 3].into_iter().collect())
            .unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(p4, Graph::path(4).unwrap());
    }

    #[test]
    fn complement_of_k3_is_empty() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.complement(), Graph::empty(3).unwrap());
    }

    #[test]
    fn c5_self_complementary_under_doubling_map() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        assert_eq!(co.edge_count(), 5);
        // relabeling i -> 2i mod 5 carries the complement back onto C5
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(co.has_edge(u, v), c5.has_edge(2 * u % 5, 2 * v % 5));
            }
        }
    }

    #[test]
    fn complement_is_involution_and_commutes_with_induced() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
            .unwrap();
        assert_eq!(g.complement().complement(), g);
        let s: VertexSet = [0, 1, 3, 4].into_iter().collect();
        let (a, _) = g.complement().induced_subgraph(s).unwrap();
        let (b, _) = g.induced_subgraph(s).unwrap();
        assert_eq!(a, b.complement());
    }

    #[test]
    fn substitute_k2_for_path_center_gives_diamond() {
        let p3 = Graph::path(3).unwrap();
        let (g, rec) = p3.substitute(1, &Graph::complete(2).unwrap()).unwrap();
        assert_eq!(g.n(), 4);
        // survivors 0,2 -> 0,1; inserted pair -> 2,3
        assert_eq!(rec.carry_vertex(0), Some(0));
        assert_eq!(rec.carry_vertex(2), Some(1));
        assert_eq!(rec.inserted.to_vec(), vec![2, 3]);
        let expected = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn substitute_k1_relabels() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, rec) = g.substitute(1, &Graph::complete(1).unwrap()).unwrap();
        assert_eq!(h.n(), 4);
        // isomorphism via carry_map plus the single inserted vertex as x
        let image = |v: usize| {
            rec.carry_vertex(v)
                .unwrap_or_else(|| rec.inserted.min().unwrap())
        };
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.has_edge(u, v), h.has_edge(image(u), image(v)));
            }
        }
    }

    #[test]
    fn substitute_k2_into_c5_meets_the_four_conditions() {
        let c5 = Graph::cycle(5).unwrap();
        let (g, rec) = c5.substitute(0, &Graph::complete(2).unwrap()).unwrap();
        assert_eq!(g.n(), 6);
        let ins = rec.inserted;
        assert_eq!(ins.to_vec(), vec![4, 5]);
        // inserted pair complete to images of {1,4}, anticomplete to {2,3}
        let old_nbrs: VertexSet = [1, 4]
            .into_iter()
            .map(|v| rec.carry_vertex(v).unwrap())
            .collect();
        let old_far: VertexSet = [2, 3]
            .into_iter()
            .map(|v| rec.carry_vertex(v).unwrap())
            .collect();
        assert!(g.is_complete_between(ins, old_nbrs).unwrap());
        assert!(g.is_anticomplete_between(ins, old_far).unwrap());
        // the inserted copy induces K2 and survivors keep their edges
        assert!(g.has_edge(4, 5));
        for u in 1..5 {
            for v in u + 1..5 {
                let (cu, cv) = (rec.carry_vertex(u).unwrap(), rec.carry_vertex(v).unwrap());
                assert_eq!(c5.has_edge(u, v), g.has_edge(cu, cv));
            }
        }
    }

    #[test]
    fn substitution_overflow_and_empty_rejected() {
        let g = Graph::complete(2).unwrap();
        assert!(matches!(
            g.substitute(0, &Graph::empty(0).unwrap()),
            Err(Error::EmptySubstitution)
        ));
        let big = Graph::empty(62).unwrap();
        assert!(matches!(
            big.substitute(0, &Graph::complete(2).unwrap()),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn homogeneous_sets_of_c5_none() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.find_homogeneous_sets().unwrap().is_empty());
    }

    #[test]
    fn homogeneous_sets_of_diamond() {
        let found = diamond().find_homogeneous_sets().unwrap();
        let ac: VertexSet = [0, 1].into_iter().collect();
        let bb: VertexSet = [2, 3].into_iter().collect();
        // {0,1,2} and {0,1,3} qualify too: the one outside vertex is
        // complete to them
        let t2: VertexSet = [0, 1, 2].into_iter().collect();
        let t3: VertexSet = [0, 1, 3].into_iter().collect();
        assert_eq!(found, vec![ac, bb, t2, t3]);
    }

    #[test]
    fn homogeneous_sets_of_k4_all_middle_subsets() {
        let found = Graph::complete(4).unwrap().find_homogeneous_sets().unwrap();
        assert_eq!(found.len(), 6 + 4);
        assert!(found.iter().all(|s| s.len() == 2 || s.len() == 3));
        // increasing size, then bitmask
        let sizes: Vec<usize> = found.iter().map(|s| s.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sizes, sorted);
    }

    #[test]
    fn homogeneous_cap_enforced() {
        let g = Graph::empty(17).unwrap();
        assert!(matches!(
            g.find_homogeneous_sets(),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn inserted_block_is_homogeneous_after_substitution() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h2 = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let (res, rec) = g.substitute(2, &h2).unwrap();
        let sets = res.find_homogeneous_sets().unwrap();
        assert!(sets.contains(&rec.inserted));
    }

    #[test]
    fn pullback_rejects_inserted_vertices() {
        let c5 = Graph::cycle(5).unwrap();
        let (_, rec) = c5.substitute(0, &Graph::complete(2).unwrap()).unwrap();
        assert!(rec.pullback_set(rec.inserted).is_err());
        let carried: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(rec.pullback_set(carried).unwrap().to_vec(), vec![1, 2]);
    }
}
