//! Exact searches: maximum-weight clique, chromatic number, and perfection
//! testing, each returning an independently checkable certificate.
//!
//! Everything here is deterministic: candidate vertices are always tried in
//! ascending order and incumbents are replaced only on strict improvement,
//! so reported witnesses are the lexicographically smallest optima.

use crate::graph::{Graph, VertexSet};
use crate::weights::WeightFn;
use crate::{Error, Result};

/// Default vertex cap for the exhaustive searches.
pub const DEFAULT_SEARCH_CAP: usize = 32;

/// Cap for the definitional perfection oracle (2^n subproblems).
pub const DEFINITIONAL_CAP: usize = 10;

/// Checkable witness attached to a search answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Pairwise-adjacent vertices, ascending.
    Clique(Vec<usize>),
    /// colors[v] is the color of vertex v; proper, colors 0..k contiguous.
    Coloring(Vec<usize>),
    /// Induced chordless odd cycle of length >= 5, in cycle order.
    OddHole(Vec<usize>),
    /// Odd hole of the complement, in cycle order.
    OddAntihole(Vec<usize>),
    /// Vertex subset admitting no perfect division.
    FailingSubgraph(Vec<usize>),
}

fn bad(what: impl Into<String>) -> Error {
    Error::CertificateCheck { what: what.into() }
}

fn distinct_in_range(vs: &[usize], g: &Graph) -> Result<VertexSet> {
    let mut seen = VertexSet::EMPTY;
    for &v in vs {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(bad(format!("repeated vertex {v}")));
        }
        seen.insert(v);
    }
    Ok(seen)
}

fn check_hole(g: &Graph, cycle: &[usize]) -> Result<()> {
    distinct_in_range(cycle, g)?;
    let k = cycle.len();
    if k < 5 || k % 2 == 0 {
        return Err(bad(format!("cycle length {k} is not odd and >= 5")));
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return Err(bad(format!(
                    "pair ({}, {}) violates chordless cycle adjacency",
                    cycle[i], cycle[j]
                )));
            }
        }
    }
    Ok(())
}

impl Certificate {
    /// Validate the witness against `g`; errors describe the first defect.
    pub fn check(&self, g: &Graph) -> Result<()> {
        match self {
            Certificate::Clique(vs) => {
                distinct_in_range(vs, g)?;
                for (i, &u) in vs.iter().enumerate() {
                    for &v in &vs[i + 1..] {
                        if !g.has_edge(u, v) {
                            return Err(bad(format!("clique pair ({u}, {v}) not adjacent")));
                        }
                    }
                }
                Ok(())
            }
            Certificate::Coloring(colors) => {
                if colors.len() != g.n() {
                    return Err(bad(format!(
                        "coloring length {} != vertex count {}",
                        colors.len(),
                        g.n()
                    )));
                }
                for (u, v) in g.edges() {
                    if colors[u] == colors[v] {
                        return Err(bad(format!("edge ({u}, {v}) monochromatic")));
                    }
                }
                let k = colors.iter().copied().max().map_or(0, |m| m + 1);
                for c in 0..k {
                    if !colors.contains(&c) {
                        return Err(bad(format!("color {c} unused below max")));
                    }
                }
                Ok(())
            }
            Certificate::OddHole(vs) => check_hole(g, vs),
            Certificate::OddAntihole(vs) => check_hole(&g.complement(), vs),
            Certificate::FailingSubgraph(vs) => {
                distinct_in_range(vs, g)?;
                Ok(())
            }
        }
    }
}

/// Greedy-coloring bound: candidates are partitioned into independent
/// classes; a clique takes at most one vertex per class, so the sum of
/// per-class maximum weights bounds any clique weight inside `cands`.
fn color_bound(g: &Graph, h: &WeightFn, cands: u64) -> u64 {
    let mut classes: Vec<(u64, u64)> = Vec::new();
    let mut c = cands;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        let w = h.value(v);
        match classes.iter_mut().find(|(mask, _)| mask & g.row(v) == 0) {
            Some((mask, maxw)) => {
                *mask |= 1 << v;
                if w > *maxw {
                    *maxw = w;
                }
            }
            None => classes.push((1 << v, w)),
        }
    }
    classes.iter().map(|&(_, maxw)| maxw).sum()
}

fn clique_dfs(
    g: &Graph,
    h: &WeightFn,
    cands: u64,
    cur_w: u64,
    cur: &mut Vec<usize>,
    best: &mut (u64, Vec<usize>),
) {
    if cur_w > best.0 {
        *best = (cur_w, cur.clone());
    }
    if cands == 0 || cur_w + color_bound(g, h, cands) <= best.0 {
        return;
    }
    let mut c = cands;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        cur.push(v);
        clique_dfs(g, h, c & g.row(v), cur_w + h.value(v), cur, best);
        cur.pop();
    }
}

/// Maximum h-weight of a clique inside `within` (default: all vertices).
/// Returns the weight and the lexicographically smallest optimal clique.
/// The cap applies to the candidate set, not the ambient graph.
pub fn max_clique_weight(
    g: &Graph,
    h: &WeightFn,
    within: Option<VertexSet>,
) -> Result<(u64, Certificate)> {
    max_clique_weight_with_cap(g, h, within, DEFAULT_SEARCH_CAP)
}

pub fn max_clique_weight_with_cap(
    g: &Graph,
    h: &WeightFn,
    within: Option<VertexSet>,
    cap: usize,
) -> Result<(u64, Certificate)> {
    if h.len() != g.n() {
        return Err(Error::WeightLengthMismatch {
            left: h.len(),
            right: g.n(),
        });
    }
    let support = within.unwrap_or_else(|| g.vertices());
    g.check_set(support)?;
    if support.len() > cap {
        return Err(Error::CapExceeded {
            op: "max_clique_weight",
            n: support.len(),
            cap,
        });
    }
    let mut best = (0u64, Vec::new());
    clique_dfs(g, h, support.bits(), 0, &mut Vec::new(), &mut best);
    Ok((best.0, Certificate::Clique(best.1)))
}

/// Clique number with all-ones weights.
pub fn clique_number(g: &Graph) -> Result<usize> {
    let (w, _) = max_clique_weight(g, &WeightFn::all_ones(g.n()), None)?;
    Ok(w as usize)
}

fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut colors = vec![0usize; g.n()];
    let mut classes: Vec<u64> = Vec::new();
    for v in 0..g.n() {
        let c = classes
            .iter()
            .position(|&mask| mask & g.row(v) == 0)
            .unwrap_or_else(|| {
                classes.push(0);
                classes.len() - 1
            });
        classes[c] |= 1 << v;
        colors[v] = c;
    }
    colors
}

fn try_color(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn rec(g: &Graph, k: usize, v: usize, used: usize, classes: &mut Vec<u64>, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        // symmetry breaking: vertex v may open at most one fresh color
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if classes[c] & g.row(v) == 0 {
                classes[c] |= 1 << v;
                colors[v] = c;
                if rec(g, k, v + 1, used.max(c + 1), classes, colors) {
                    return true;
                }
                classes[c] &= !(1 << v);
            }
        }
        false
    }
    let mut classes = vec![0u64; k.max(1)];
    let mut colors = vec![0usize; g.n()];
    if g.n() == 0 || rec(g, k, 0, 0, &mut classes, &mut colors) {
        Some(colors)
    } else {
        None
    }
}

/// Exact chromatic number with a proper coloring using exactly that many
/// colors. Iterative deepening upward from the clique lower bound.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Certificate)> {
    chromatic_number_with_cap(g, DEFAULT_SEARCH_CAP)
}

pub fn chromatic_number_with_cap(g: &Graph, cap: usize) -> Result<(usize, Certificate)> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            op: "chromatic_number",
            n: g.n(),
            cap,
        });
    }
    if g.n() == 0 {
        return Ok((0, Certificate::Coloring(Vec::new())));
    }
    let lower = clique_number(g)?;
    let greedy = greedy_coloring(g);
    let upper = greedy.iter().copied().max().unwrap() + 1;
    for k in lower..upper {
        if let Some(colors) = try_color(g, k) {
            return Ok((k, Certificate::Coloring(colors)));
        }
    }
    Ok((upper, Certificate::Coloring(greedy)))
}

fn hole_dfs(g: &Graph, s: usize, path: &mut Vec<usize>, mask: u64) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    let internal = mask & !(1 << s) & !(1u64 << last);
    for w in s + 1..g.n() {
        if mask >> w & 1 == 1 || !g.has_edge(last, w) {
            continue;
        }
        if g.row(w) & internal != 0 {
            continue;
        }
        if path.len() >= 2 && g.has_edge(w, s) {
            // closing edge: an odd hole if long enough, otherwise a chord
            // that blocks any extension through w
            if path.len() + 1 >= 5 && (path.len() + 1) % 2 == 1 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        path.push(w);
        if let Some(cycle) = hole_dfs(g, s, path, mask | 1 << w) {
            return Some(cycle);
        }
        path.pop();
    }
    None
}

/// First odd hole in deterministic order: smallest start vertex (the hole's
/// minimum), then ascending extension at every step.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    for s in 0..g.n() {
        let mut path = vec![s];
        if let Some(cycle) = hole_dfs(g, s, &mut path, 1 << s) {
            return Some(cycle);
        }
    }
    None
}

/// Perfection via the odd-hole / odd-antihole characterization. On false,
/// the certificate is the first odd hole, else the first odd antihole.
pub fn is_perfect(g: &Graph) -> Result<(bool, Option<Certificate>)> {
    is_perfect_with_cap(g, DEFAULT_SEARCH_CAP)
}

pub fn is_perfect_with_cap(g: &Graph, cap: usize) -> Result<(bool, Option<Certificate>)> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            op: "is_perfect",
            n: g.n(),
            cap,
        });
    }
    if let Some(cycle) = find_odd_hole(g) {
        return Ok((false, Some(Certificate::OddHole(cycle))));
    }
    if let Some(cycle) = find_odd_hole(&g.complement()) {
        return Ok((false, Some(Certificate::OddAntihole(cycle))));
    }
    Ok((true, None))
}

/// The definition itself: chi = omega on every induced subgraph. Exponential
/// oracle used to validate `is_perfect`.
pub fn is_perfect_definitional(g: &Graph) -> Result<bool> {
    is_perfect_definitional_with_cap(g, DEFINITIONAL_CAP)
}

pub fn is_perfect_definitional_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            op: "is_perfect_definitional",
            n: g.n(),
            cap,
        });
    }
    for s in g.vertices().subsets_ascending() {
        let (sub, _) = g.induced_subgraph(s)?;
        let (chi, _) = chromatic_number(&sub)?;
        let omega = clique_number(&sub)?;
        if chi != omega {
            return Ok(false);
        }
    }
    Ok(true)
}
