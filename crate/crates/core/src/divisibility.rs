//! Perfect divisions and the divisibility predicates.
//!
//! A perfect division of (G, h) on a ground set F is a partition (A, B) of
//! F with G[A] perfect and omega_h(B) < omega_h(F). G is perfectly divisible
//! for h when every induced subgraph admits one; "perfectly weight
//! divisible" quantifies that over every positive integral h, which the
//! bounded sweep here approximates at desk scale.

use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::search::{is_perfect_with_cap, max_clique_weight_with_cap};
use crate::weights::{seeded_weights, WeightFn};
use crate::{Error, Result};

/// Cap for the 2^n subset loop of the divisibility predicates.
pub const DIVISIBLE_CAP: usize = 12;

/// Cap on |F| for the 2^|F| partition search.
pub const FIND_DIVISION_CAP: usize = 16;

/// Budget on the number of weight functions in an exhaustive sweep.
pub const SWEEP_BUDGET: u64 = 1 << 20;

/// Partition (A, B) of a stated ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerfectDivision {
    pub a: VertexSet,
    pub b: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub divisible: bool,
    /// Lexicographically smallest subset admitting no perfect division.
    pub witness: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSweepVerdict {
    pub divisible: bool,
    pub witness_weights: Option<WeightFn>,
    pub witness_subset: Option<VertexSet>,
    pub weights_tested: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

/// Check the three division invariants on ground set `f`. The empty ground
/// set is a special case: only (empty, empty) is valid, vacuously.
pub fn verify_division(g: &Graph, h: &WeightFn, f: VertexSet, d: &PerfectDivision) -> Result<bool> {
    g.check_set(f)?;
    if h.len() != g.n() {
        return Err(Error::WeightLengthMismatch {
            left: h.len(),
            right: g.n(),
        });
    }
    if !d.a.is_subset_of(f) || !d.b.is_subset_of(f) {
        return Err(Error::DivisionOutsideGround { ground: f });
    }
    if f.is_empty() {
        return Ok(d.a.is_empty() && d.b.is_empty());
    }
    if d.a.intersects(d.b) || (d.a | d.b) != f {
        return Ok(false);
    }
    let (ga, _) = g.induced_subgraph(d.a)?;
    let (perfect, _) = is_perfect_with_cap(&ga, 32)?;
    if !perfect {
        return Ok(false);
    }
    let (wb, _) = max_clique_weight_with_cap(g, h, Some(d.b), 32)?;
    let (wf, _) = max_clique_weight_with_cap(g, h, Some(f), 32)?;
    Ok(wb < wf)
}

/// First perfect division of g[F] for h|F: A ranges over submasks of F in
/// ascending bitmask order, B = F \ A. None when no partition qualifies.
pub fn find_perfect_division(
    g: &Graph,
    h: &WeightFn,
    f: VertexSet,
) -> Result<Option<PerfectDivision>> {
    find_perfect_division_with_cap(g, h, f, FIND_DIVISION_CAP)
}

pub fn find_perfect_division_with_cap(
    g: &Graph,
    h: &WeightFn,
    f: VertexSet,
    cap: usize,
) -> Result<Option<PerfectDivision>> {
    g.check_set(f)?;
    if f.len() > cap {
        return Err(Error::CapExceeded {
            op: "find_perfect_division",
            n: f.len(),
            cap,
        });
    }
    for a in f.subsets_ascending() {
        let d = PerfectDivision { a, b: f - a };
        if verify_division(g, h, f, &d)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Subset DP tables that do not depend on the weight function.
struct SubsetTables {
    perfect: Vec<bool>,
}

fn subset_tables(g: &Graph) -> SubsetTables {
    let n = g.n();
    let size = 1usize << n;
    let mut indep = vec![false; size];
    let mut chi = vec![0u8; size];
    let mut omega = vec![0u8; size];
    let mut perfect = vec![false; size];
    indep[0] = true;
    perfect[0] = true;
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        indep[mask] = indep[rest] && g.row(v) as usize & rest == 0;
        omega[mask] = omega[rest].max(1 + omega[rest & g.row(v) as usize]);
        // peel a color class containing the lowest vertex
        let mut best = u8::MAX;
        let mut t = rest;
        loop {
            let class = t | (1 << v);
            if indep[class] {
                best = best.min(1 + chi[mask ^ class]);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        chi[mask] = best;
        perfect[mask] = chi[mask] == omega[mask] && {
            let mut m = mask;
            let mut all = true;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if !perfect[mask & !(1 << u)] {
                    all = false;
                    break;
                }
            }
            all
        };
    }
    SubsetTables { perfect }
}

fn omega_table(g: &Graph, h: &WeightFn) -> Vec<u64> {
    let size = 1usize << g.n();
    let mut omega = vec![0u64; size];
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        omega[mask] = omega[rest].max(h.value(v) + omega[rest & g.row(v) as usize]);
    }
    omega
}

/// has_division[mask] for every subset, given precomputed tables.
fn division_table(tables: &SubsetTables, omega_h: &[u64]) -> Vec<bool> {
    let size = omega_h.len();
    let mut has = vec![false; size];
    has[0] = true;
    for mask in 1..size {
        if tables.perfect[mask] {
            // (mask, empty): omega_h(empty) = 0 < omega_h(mask)
            has[mask] = true;
            continue;
        }
        let mut a = (mask - 1) & mask;
        while a != 0 {
            if tables.perfect[a] && omega_h[mask & !a] < omega_h[mask] {
                has[mask] = true;
                break;
            }
            a = (a - 1) & mask;
        }
    }
    has
}

fn lex_smallest_failure(has: &[bool]) -> Option<VertexSet> {
    has.iter()
        .enumerate()
        .filter(|&(_, ok)| !ok)
        .map(|(mask, _)| VertexSet::from_bits(mask as u64))
        .min_by(|a, b| a.lex_cmp(*b))
}

fn check_divisible_cap(g: &Graph, h: &WeightFn, op: &'static str) -> Result<()> {
    if g.n() > DIVISIBLE_CAP {
        return Err(Error::CapExceeded {
            op,
            n: g.n(),
            cap: DIVISIBLE_CAP,
        });
    }
    if h.len() != g.n() {
        return Err(Error::WeightLengthMismatch {
            left: h.len(),
            right: g.n(),
        });
    }
    Ok(())
}

/// Does every induced subgraph of g admit a perfect division for the
/// restricted h? Exhaustive over all 2^n subsets.
pub fn is_perfectly_divisible(g: &Graph, h: &WeightFn) -> Result<DivisibilityVerdict> {
    check_divisible_cap(g, h, "is_perfectly_divisible")?;
    let tables = subset_tables(g);
    let has = division_table(&tables, &omega_table(g, h));
    let witness = lex_smallest_failure(&has);
    Ok(DivisibilityVerdict {
        divisible: witness.is_none(),
        witness,
    })
}

/// Bounded proxy for "perfectly divisible for every positive integral
/// weight function": sweep all h with values in [1, wmax] (exhaustive) or
/// a seeded sample. Sample i draws from seed + i.
pub fn is_perfectly_weight_divisible_bounded(
    g: &Graph,
    wmax: u64,
    mode: SweepMode,
) -> Result<WeightSweepVerdict> {
    let h0 = WeightFn::all_ones(g.n());
    check_divisible_cap(g, &h0, "is_perfectly_weight_divisible_bounded")?;
    let n = g.n();
    let tables = subset_tables(g);
    let mut tested = 0u64;

    let test = |h: &WeightFn, tested: &mut u64| -> Option<WeightSweepVerdict> {
        *tested += 1;
        let has = division_table(&tables, &omega_table(g, h));
        lex_smallest_failure(&has).map(|s| WeightSweepVerdict {
            divisible: false,
            witness_weights: Some(h.clone()),
            witness_subset: Some(s),
            weights_tested: *tested,
        })
    };

    match mode {
        SweepMode::Exhaustive => {
            let count = wmax
                .checked_pow(n as u32)
                .filter(|&c| c <= SWEEP_BUDGET)
                .ok_or(Error::CapExceeded {
                    op: "is_perfectly_weight_divisible_bounded",
                    n,
                    cap: SWEEP_BUDGET as usize,
                })?;
            let mut vals = vec![1u64; n];
            for _ in 0..count {
                let h = WeightFn::new(vals.clone())?;
                if let Some(v) = test(&h, &mut tested) {
                    return Ok(v);
                }
                // odometer, vertex 0 least significant
                for digit in vals.iter_mut() {
                    *digit += 1;
                    if *digit > wmax {
                        *digit = 1;
                    } else {
                        break;
                    }
                }
            }
        }
        SweepMode::Sampled { seed, count } => {
            for i in 0..count {
                let h = seeded_weights(seed.wrapping_add(i), n, wmax);
                if let Some(v) = test(&h, &mut tested) {
                    return Ok(v);
                }
            }
        }
    }
    Ok(WeightSweepVerdict {
        divisible: true,
        witness_weights: None,
        witness_subset: None,
        weights_tested: tested,
    })
}

/// One graph from a minimality scan.
#[derive(Clone, Debug)]
pub struct MinimalHit {
    pub graph6: String,
    pub n: usize,
    /// The failing subset, necessarily the full vertex set.
    pub witness: VertexSet,
    pub hom_sets_empty: bool,
}

/// Outcome of scanning a stream for minimal non-divisible graphs.
#[derive(Clone, Debug, Default)]
pub struct MinimalReport {
    pub examined: u64,
    /// graph6 words of graphs skipped for exceeding caps.
    pub skipped: Vec<String>,
    pub hits: Vec<MinimalHit>,
    /// Hits whose homogeneous-set list was unexpectedly nonempty.
    pub theorem_violations: u64,
    /// True when the scan produced no hits, so the homogeneous-set
    /// assertion was never exercised.
    pub vacuous: bool,
}

/// Scan a stream (all-ones weights) for graphs that are not perfectly
/// divisible while every single-vertex-deleted subgraph is. Divisibility is
/// hereditary, so those are exactly the minimal non-divisible graphs. Every
/// hit is required to have no homogeneous sets; a counterexample to that is
/// counted as a theorem violation. Graphs over cap are skipped and listed.
pub fn find_minimal_non_divisible(stream: impl IntoIterator<Item = Graph>) -> MinimalReport {
    let mut report = MinimalReport::default();
    for g in stream {
        match minimal_check(&g) {
            Ok(Some(mut hit)) => {
                hit.hom_sets_empty = match g.find_homogeneous_sets() {
                    Ok(sets) => sets.is_empty(),
                    Err(_) => false,
                };
                if !hit.hom_sets_empty {
                    report.theorem_violations += 1;
                }
                report.examined += 1;
                report.hits.push(hit);
            }
            Ok(None) => report.examined += 1,
            Err(_) => report.skipped.push(to_graph6(&g)),
        }
    }
    report.vacuous = report.hits.is_empty();
    report
}

/// Some(hit) when g itself fails but every proper subset divides.
pub(crate) fn minimal_check(g: &Graph) -> Result<Option<MinimalHit>> {
    let h = WeightFn::all_ones(g.n());
    check_divisible_cap(g, &h, "find_minimal_non_divisible")?;
    let tables = subset_tables(g);
    let has = division_table(&tables, &omega_table(g, &h));
    let full = (1usize << g.n()) - 1;
    if has[full] || has[..full].iter().any(|&ok| !ok) {
        return Ok(None);
    }
    Ok(Some(MinimalHit {
        graph6: to_graph6(g),
        n: g.n(),
        witness: g.vertices(),
        hom_sets_empty: false,
    }))
}
