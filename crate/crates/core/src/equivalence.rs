//! Transport of perfect divisions between a weighted graph and the graph
//! obtained by substituting a clique of size h(x) for a vertex x.
//!
//! With hx assigning 1 on the inserted clique and h elsewhere, divisions
//! move both ways: lift_division carries a division source for the base
//! graph up to any subset of the substituted graph, project_division
//! carries one back down. Chaining a single-vertex weight drop per step
//! turns a provider for all-ones weights into one for an arbitrary
//! positive integral weight function, which is divide_for_weight.
//!
//! Every division that passes through here is re-verified against the
//! graph, weights, and ground set it claims to divide; the running count
//! of those checks is observable via division_verifications().

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::divisibility::{
    find_perfect_division_with_cap, is_perfectly_divisible, verify_division, PerfectDivision,
    SweepMode, FIND_DIVISION_CAP, SWEEP_BUDGET,
};
use crate::graph::{Graph, SubstitutionRecord, VertexSet, MAX_VERTICES};
use crate::graph6::to_graph6;
use crate::search::max_clique_weight_with_cap;
use crate::weights::{seeded_weights, WeightFn};
use crate::{Error, Result};

static VERIFICATIONS: AtomicU64 = AtomicU64::new(0);

/// Total internal verify_division checks performed by this module since
/// process start. Monotone; take deltas around a call to confirm that the
/// checks actually ran.
pub fn division_verifications() -> u64 {
    VERIFICATIONS.load(Ordering::Relaxed)
}

/// A division produced here must verify; failure is an implementation bug.
fn checked_verify(
    g: &Graph,
    h: &WeightFn,
    f: VertexSet,
    d: &PerfectDivision,
    stage: &'static str,
) -> Result<()> {
    VERIFICATIONS.fetch_add(1, Ordering::Relaxed);
    if verify_division(g, h, f, d)? {
        Ok(())
    } else {
        Err(Error::InternalVerification { stage, subset: f })
    }
}

/// Counted verification of a candidate that is allowed to fail.
fn try_verify(g: &Graph, h: &WeightFn, f: VertexSet, d: &PerfectDivision) -> Result<bool> {
    VERIFICATIONS.fetch_add(1, Ordering::Relaxed);
    verify_division(g, h, f, d)
}

/// A division handed to us must verify; failure blames the source.
fn require_valid(
    g: &Graph,
    h: &WeightFn,
    f: VertexSet,
    d: &PerfectDivision,
    what: &str,
) -> Result<()> {
    VERIFICATIONS.fetch_add(1, Ordering::Relaxed);
    if verify_division(g, h, f, d)? {
        Ok(())
    } else {
        Err(Error::CertificateCheck {
            what: format!("{what} is not a perfect division of subset {f:?}"),
        })
    }
}

/// The clique substitution at one vertex, with both weighted views.
#[derive(Clone, Debug)]
pub struct CliqueSubstitutionContext {
    pub base: Graph,
    pub x: usize,
    pub h: WeightFn,
    /// base with a clique of size h(x) substituted for x.
    pub gx: Graph,
    /// The inserted clique, in gx numbering.
    pub clique: VertexSet,
    /// 1 on the inserted clique, h elsewhere.
    pub hx: WeightFn,
    pub record: SubstitutionRecord,
}

/// Build the substitution context for (g, h, x). The defining identity
/// omega_hx(gx) = omega_h(g) is checked eagerly.
pub fn build_context(g: &Graph, h: &WeightFn, x: usize) -> Result<CliqueSubstitutionContext> {
    g.check_vertex(x)?;
    if h.len() != g.n() {
        return Err(Error::WeightLengthMismatch {
            left: h.len(),
            right: g.n(),
        });
    }
    let size = h.value(x);
    if size as usize > MAX_VERTICES {
        return Err(Error::GraphTooLarge { n: size as usize });
    }
    let (gx, record) = g.substitute(x, &Graph::complete(size as usize)?)?;
    let mut vals = vec![1u64; gx.n()];
    for v in 0..g.n() {
        if let Some(c) = record.carry_vertex(v) {
            vals[c] = h.value(v);
        }
    }
    let hx = WeightFn::new(vals)?;
    let clique = record.inserted;
    let ctx = CliqueSubstitutionContext {
        base: g.clone(),
        x,
        h: h.clone(),
        gx,
        clique,
        hx,
        record,
    };
    let (wx, _) = max_clique_weight_with_cap(&ctx.gx, &ctx.hx, None, MAX_VERTICES)?;
    let (w, _) = max_clique_weight_with_cap(&ctx.base, &ctx.h, None, MAX_VERTICES)?;
    if wx != w {
        return Err(Error::InternalVerification {
            stage: "build_context clique weight identity",
            subset: ctx.gx.vertices(),
        });
    }
    Ok(ctx)
}

/// Demand-driven source of verified perfect divisions for induced
/// subgraphs of one fixed weighted graph.
pub trait DivisionProvider {
    fn graph(&self) -> &Graph;
    fn weights(&self) -> &WeightFn;
    /// A perfect division of graph()[f] for weights()|f.
    fn divide(&mut self, f: VertexSet) -> Result<PerfectDivision>;
}

impl<P: DivisionProvider + ?Sized> DivisionProvider for Box<P> {
    fn graph(&self) -> &Graph {
        (**self).graph()
    }
    fn weights(&self) -> &WeightFn {
        (**self).weights()
    }
    fn divide(&mut self, f: VertexSet) -> Result<PerfectDivision> {
        (**self).divide(f)
    }
}

/// Provider backed by the exhaustive partition search, memoized per subset.
pub struct SearchProvider {
    g: Graph,
    h: WeightFn,
    memo: HashMap<u64, PerfectDivision>,
}

impl SearchProvider {
    pub fn new(g: Graph, h: WeightFn) -> Result<SearchProvider> {
        if h.len() != g.n() {
            return Err(Error::WeightLengthMismatch {
                left: h.len(),
                right: g.n(),
            });
        }
        Ok(SearchProvider {
            g,
            h,
            memo: HashMap::new(),
        })
    }
}

impl DivisionProvider for SearchProvider {
    fn graph(&self) -> &Graph {
        &self.g
    }
    fn weights(&self) -> &WeightFn {
        &self.h
    }
    fn divide(&mut self, f: VertexSet) -> Result<PerfectDivision> {
        self.g.check_set(f)?;
        if let Some(d) = self.memo.get(&f.bits()) {
            return Ok(*d);
        }
        match find_perfect_division_with_cap(&self.g, &self.h, f, FIND_DIVISION_CAP)? {
            Some(d) => {
                self.memo.insert(f.bits(), d);
                Ok(d)
            }
            None => Err(Error::NotDivisible { subset: f }),
        }
    }
}

/// Presents a provider for (g, h) as one for (g, k*h). Answers pass through
/// verbatim: both sides of "omega(B) < omega(F)" scale by k, and perfection
/// of the A side does not involve weights at all. Each answer is still
/// re-verified under the scaled weights.
pub struct UniformScaleProvider<P> {
    inner: P,
    scaled: WeightFn,
}

impl<P: DivisionProvider> UniformScaleProvider<P> {
    pub fn new(inner: P, k: u64) -> Result<UniformScaleProvider<P>> {
        let scaled = inner.weights().scaled(k)?;
        Ok(UniformScaleProvider { inner, scaled })
    }
}

impl<P: DivisionProvider> DivisionProvider for UniformScaleProvider<P> {
    fn graph(&self) -> &Graph {
        self.inner.graph()
    }
    fn weights(&self) -> &WeightFn {
        &self.scaled
    }
    fn divide(&mut self, f: VertexSet) -> Result<PerfectDivision> {
        let d = self.inner.divide(f)?;
        require_valid(self.inner.graph(), &self.scaled, f, &d, "scaled provider answer")?;
        Ok(d)
    }
}

/// Carry a division source for (base, h) up to a subset f of gx.
///
/// Case order: f disjoint from the clique relabels the provider's own
/// answer; f inside the clique divides as (f, empty); otherwise compare
/// omega_hx(f) against omega_h(f') for f' = (f minus the clique, pulled
/// back) plus x. Under equality the provider's division of f' transports
/// directly, routing x's side through the clique part. Strict inequality
/// only happens when f misses part of the clique; see lift_strict.
pub fn lift_division(
    ctx: &CliqueSubstitutionContext,
    f: VertexSet,
    provider: &mut dyn DivisionProvider,
) -> Result<PerfectDivision> {
    ctx.gx.check_set(f)?;
    if provider.graph() != &ctx.base || provider.weights() != &ctx.h {
        return Err(Error::ProviderMismatch {
            what: "lift_division needs a provider for the context's base weighted graph",
        });
    }
    let xf = f & ctx.clique;
    let d = if xf.is_empty() {
        let fb = ctx.record.pullback_set(f)?;
        let d0 = provider.divide(fb)?;
        require_valid(&ctx.base, &ctx.h, fb, &d0, "provider division")?;
        PerfectDivision {
            a: ctx.record.carry_set(d0.a)?,
            b: ctx.record.carry_set(d0.b)?,
        }
    } else if f.is_subset_of(ctx.clique) {
        PerfectDivision {
            a: f,
            b: VertexSet::EMPTY,
        }
    } else {
        let fb = ctx.record.pullback_set(f - ctx.clique)?.with(ctx.x);
        let (wf, _) = max_clique_weight_with_cap(&ctx.gx, &ctx.hx, Some(f), MAX_VERTICES)?;
        let (wfb, _) = max_clique_weight_with_cap(&ctx.base, &ctx.h, Some(fb), MAX_VERTICES)?;
        if wf > wfb {
            // replacing the clique part of any clique by x never loses
            // weight, so this cannot happen
            return Err(Error::InternalVerification {
                stage: "lift_division weight comparison",
                subset: f,
            });
        }
        if wf < wfb {
            lift_strict(ctx, f, fb, wf, provider)?
        } else {
            let d0 = provider.divide(fb)?;
            require_valid(&ctx.base, &ctx.h, fb, &d0, "provider division")?;
            transport(ctx, xf, &d0)?
        }
    };
    checked_verify(&ctx.gx, &ctx.hx, f, &d, "lift_division")?;
    Ok(d)
}

/// Route a base division of f' through the substitution: x's side of the
/// partition absorbs the clique part xf. Sound whenever
/// omega_h(f') = omega_hx(f): the B side keeps its weight exactly (x in A)
/// or can only lose weight by trading x for unit clique vertices (x in B).
fn transport(
    ctx: &CliqueSubstitutionContext,
    xf: VertexSet,
    d0: &PerfectDivision,
) -> Result<PerfectDivision> {
    if d0.a.contains(ctx.x) {
        // perfection of the A side survives clique substitution
        Ok(PerfectDivision {
            a: ctx.record.carry_set(d0.a.without(ctx.x))? | xf,
            b: ctx.record.carry_set(d0.b)?,
        })
    } else if d0.b.contains(ctx.x) {
        Ok(PerfectDivision {
            a: ctx.record.carry_set(d0.a)?,
            b: ctx.record.carry_set(d0.b.without(ctx.x))? | xf,
        })
    } else {
        Err(Error::InternalVerification {
            stage: "lift_division partition",
            subset: d0.a | d0.b,
        })
    }
}

/// The strict case omega_hx(f) < omega_h(f'): only possible when f misses
/// part of the clique, so cliques through x lose the difference when they
/// drop into gx[f]. Whether (clique part, rest) divides depends on where
/// omega_hx(f) is realized:
///
/// - every maximum weight clique of gx[f] meets the clique part: the
///   split (xf, f minus clique) divides, as removing xf lowers the weight;
/// - some maximum weight clique avoids the clique entirely: that split
///   fails (its B side realizes omega_hx(f)), and a division of the
///   x-free side transports instead: its B side gains only clique
///   combinations, each strictly below omega_hx(f).
///
/// When the two clique weights tie, neither argument is conclusive; try
/// both transports with verification and fall back to direct search.
fn lift_strict(
    ctx: &CliqueSubstitutionContext,
    f: VertexSet,
    fb: VertexSet,
    wf: u64,
    provider: &mut dyn DivisionProvider,
) -> Result<PerfectDivision> {
    let xf = f & ctx.clique;
    let rest = f - ctx.clique;
    let (wrest, _) = max_clique_weight_with_cap(&ctx.gx, &ctx.hx, Some(rest), MAX_VERTICES)?;
    if wrest < wf {
        return Ok(PerfectDivision { a: xf, b: rest });
    }
    let rb = ctx.record.pullback_set(rest)?;
    let d0 = provider.divide(rb)?;
    require_valid(&ctx.base, &ctx.h, rb, &d0, "provider division")?;
    let moved = PerfectDivision {
        a: ctx.record.carry_set(d0.a)?,
        b: ctx.record.carry_set(d0.b)? | xf,
    };
    if try_verify(&ctx.gx, &ctx.hx, f, &moved)? {
        return Ok(moved);
    }
    let d1 = provider.divide(fb)?;
    require_valid(&ctx.base, &ctx.h, fb, &d1, "provider division")?;
    let routed = transport(ctx, xf, &d1)?;
    if try_verify(&ctx.gx, &ctx.hx, f, &routed)? {
        return Ok(routed);
    }
    match find_perfect_division_with_cap(&ctx.gx, &ctx.hx, f, FIND_DIVISION_CAP)? {
        Some(d) => Ok(d),
        None => Err(Error::NotDivisible { subset: f }),
    }
}

/// Carry a division of gx[carry(f minus x) union clique] back down to a
/// division of base[f]. When x is not in f the weight at x is invisible
/// and the division merely relabels.
pub fn project_division(
    ctx: &CliqueSubstitutionContext,
    f: VertexSet,
    d: &PerfectDivision,
) -> Result<PerfectDivision> {
    ctx.base.check_set(f)?;
    if !f.contains(ctx.x) {
        let fx = ctx.record.carry_set(f)?;
        require_valid(&ctx.gx, &ctx.hx, fx, d, "division to project")?;
        let out = PerfectDivision {
            a: ctx.record.pullback_set(d.a)?,
            b: ctx.record.pullback_set(d.b)?,
        };
        checked_verify(&ctx.base, &ctx.h, f, &out, "project_division")?;
        return Ok(out);
    }
    let fx = ctx.record.carry_set(f.without(ctx.x))? | ctx.clique;
    require_valid(&ctx.gx, &ctx.hx, fx, d, "division to project")?;
    let out = if d.a.intersects(ctx.clique) {
        // one clique vertex renames to x; base[A] embeds into gx[d.a]
        PerfectDivision {
            a: ctx.record.pullback_set(d.a - ctx.clique)?.with(ctx.x),
            b: ctx.record.pullback_set(d.b - ctx.clique)?,
        }
    } else {
        // the whole clique sits in B
        PerfectDivision {
            a: ctx.record.pullback_set(d.a)?,
            b: ctx.record.pullback_set(d.b - ctx.clique)?.with(ctx.x),
        }
    };
    checked_verify(&ctx.base, &ctx.h, f, &out, "project_division")?;
    Ok(out)
}

/// Provider for (g, h with h(x) lowered to newval), answering through the
/// full-weight context: queries lift into gx restricted to the first
/// newval clique vertices, then project through the lowered context, whose
/// substituted graph occupies exactly those indices.
pub struct ReducedProvider<P> {
    ctx: CliqueSubstitutionContext,
    target_ctx: CliqueSubstitutionContext,
    sub_clique: VertexSet,
    inner: P,
}

pub fn reduce_weight_step<P: DivisionProvider>(
    g: &Graph,
    h: &WeightFn,
    x: usize,
    newval: u64,
    inner: P,
) -> Result<ReducedProvider<P>> {
    if inner.graph() != g || inner.weights() != h {
        return Err(Error::ProviderMismatch {
            what: "reduce_weight_step needs a provider for (g, h)",
        });
    }
    g.check_vertex(x)?;
    if newval == 0 || newval >= h.value(x) {
        return Err(Error::BadReductionTarget {
            newval,
            current: h.value(x),
        });
    }
    let ctx = build_context(g, h, x)?;
    let target_ctx = build_context(g, &h.with_value(x, newval)?, x)?;
    let sub_clique: VertexSet = ctx.clique.iter().take(newval as usize).collect();
    // substitution appends inserted vertices last, so the lowered context's
    // graph is the full context's graph on an index prefix
    debug_assert_eq!(target_ctx.clique, sub_clique);
    debug_assert_eq!(
        ctx.gx
            .induced_subgraph(VertexSet::full(target_ctx.gx.n()))
            .unwrap()
            .0,
        target_ctx.gx
    );
    Ok(ReducedProvider {
        ctx,
        target_ctx,
        sub_clique,
        inner,
    })
}

impl<P: DivisionProvider> DivisionProvider for ReducedProvider<P> {
    fn graph(&self) -> &Graph {
        &self.target_ctx.base
    }
    fn weights(&self) -> &WeightFn {
        &self.target_ctx.h
    }
    fn divide(&mut self, f: VertexSet) -> Result<PerfectDivision> {
        self.target_ctx.base.check_set(f)?;
        let x = self.ctx.x;
        let fgx = if f.contains(x) {
            self.ctx.record.carry_set(f.without(x))? | self.sub_clique
        } else {
            self.ctx.record.carry_set(f)?
        };
        let d = lift_division(&self.ctx, fgx, &mut self.inner)?;
        // fgx avoids the dropped clique vertices, so d reads unchanged as a
        // division inside the lowered context's graph
        project_division(&self.target_ctx, f, &d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug)]
pub struct DivideOptions {
    /// Vertex order for the per-vertex weight reductions.
    pub order: ReductionOrder,
    /// Lower each weight by single decrements instead of one jump.
    pub unit_steps: bool,
}

impl Default for DivideOptions {
    fn default() -> DivideOptions {
        DivideOptions {
            order: ReductionOrder::Ascending,
            unit_steps: false,
        }
    }
}

/// Produce a perfect division of (g, h) from a division source for the
/// all-ones weights: start at the uniform weight k = max h (where the
/// unweighted provider is valid verbatim) and lower one vertex per step.
pub fn divide_for_weight(
    g: &Graph,
    h: &WeightFn,
    unweighted: impl DivisionProvider + 'static,
) -> Result<PerfectDivision> {
    divide_for_weight_with(g, h, unweighted, DivideOptions::default())
}

pub fn divide_for_weight_with(
    g: &Graph,
    h: &WeightFn,
    unweighted: impl DivisionProvider + 'static,
    options: DivideOptions,
) -> Result<PerfectDivision> {
    if h.len() != g.n() {
        return Err(Error::WeightLengthMismatch {
            left: h.len(),
            right: g.n(),
        });
    }
    if unweighted.graph() != g || !unweighted.weights().is_all_ones() {
        return Err(Error::ProviderMismatch {
            what: "divide_for_weight needs an all-ones provider for g",
        });
    }
    if g.n() == 0 {
        return Ok(PerfectDivision {
            a: VertexSet::EMPTY,
            b: VertexSet::EMPTY,
        });
    }
    let k = h.max_value();
    let mut current = WeightFn::uniform(g.n(), k)?;
    let mut provider: Box<dyn DivisionProvider> =
        Box::new(UniformScaleProvider::new(unweighted, k)?);
    let order: Vec<usize> = match options.order {
        ReductionOrder::Ascending => (0..g.n()).collect(),
        ReductionOrder::Descending => (0..g.n()).rev().collect(),
    };
    for v in order {
        let target = h.value(v);
        if options.unit_steps {
            let mut val = current.value(v);
            while val > target {
                val -= 1;
                provider = Box::new(reduce_weight_step(g, &current, v, val, provider)?);
                current = current.with_value(v, val)?;
            }
        } else if current.value(v) > target {
            provider = Box::new(reduce_weight_step(g, &current, v, target, provider)?);
            current = current.with_value(v, target)?;
        }
    }
    debug_assert_eq!(&current, h);
    let d = provider.divide(g.vertices())?;
    checked_verify(g, h, g.vertices(), &d, "divide_for_weight")?;
    Ok(d)
}

#[derive(Clone, Debug)]
pub struct EquivalenceViolation {
    pub weights: WeightFn,
    pub subset: VertexSet,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub graph6: String,
    pub n: usize,
    pub base_divisible: bool,
    /// When the graph is not even divisible for all-ones, the failing
    /// subset; all-ones is then itself a weight-function counterexample.
    pub base_witness: Option<VertexSet>,
    pub weights_tested: u64,
    pub cases_checked: u64,
    pub violations: Vec<EquivalenceViolation>,
}

/// Exercise the full pipeline on one graph: when g is perfectly divisible
/// for all-ones, every tested weight function on every induced subgraph
/// must yield a verified division through divide_for_weight. Exhaustive
/// mode walks all h in [1, wmax]^n with vertex 0 varying fastest; sample i
/// of sampled mode draws from seed + i.
pub fn check_equivalence(g: &Graph, wmax: u64, mode: SweepMode) -> Result<EquivalenceReport> {
    check_equivalence_with(g, wmax, mode, DivideOptions::default())
}

/// check_equivalence with explicit reduction options for the transported
/// divisions (vertex order and unit-step mode).
pub fn check_equivalence_with(
    g: &Graph,
    wmax: u64,
    mode: SweepMode,
    options: DivideOptions,
) -> Result<EquivalenceReport> {
    let ones = WeightFn::all_ones(g.n());
    let base = is_perfectly_divisible(g, &ones)?;
    let mut report = EquivalenceReport {
        graph6: to_graph6(g),
        n: g.n(),
        base_divisible: base.divisible,
        base_witness: base.witness,
        weights_tested: 0,
        cases_checked: 0,
        violations: Vec::new(),
    };
    if !base.divisible {
        return Ok(report);
    }
    let n = g.n();
    let run_weight = |h: &WeightFn, report: &mut EquivalenceReport| -> Result<()> {
        report.weights_tested += 1;
        for f in g.vertices().subsets_ascending() {
            report.cases_checked += 1;
            let (sub, _) = g.induced_subgraph(f)?;
            let hsub = h.restrict(f)?;
            let provider = SearchProvider::new(sub.clone(), WeightFn::all_ones(sub.n()))?;
            let outcome = divide_for_weight_with(&sub, &hsub, provider, options)
                .and_then(|d| verify_division(&sub, &hsub, sub.vertices(), &d).map(|ok| (d, ok)));
            match outcome {
                Ok((_, true)) => {}
                Ok((d, false)) => report.violations.push(EquivalenceViolation {
                    weights: h.clone(),
                    subset: f,
                    detail: format!("division {d:?} failed verification"),
                }),
                Err(e) => report.violations.push(EquivalenceViolation {
                    weights: h.clone(),
                    subset: f,
                    detail: e.to_string(),
                }),
            }
        }
        Ok(())
    };
    match mode {
        SweepMode::Exhaustive => {
            let count = wmax
                .checked_pow(n as u32)
                .filter(|&c| c <= SWEEP_BUDGET)
                .ok_or(Error::CapExceeded {
                    op: "check_equivalence",
                    n,
                    cap: SWEEP_BUDGET as usize,
                })?;
            let mut vals = vec![1u64; n];
            for _ in 0..count {
                let h = WeightFn::new(vals.clone())?;
                run_weight(&h, &mut report)?;
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
                run_weight(&h, &mut report)?;
            }
        }
    }
    Ok(report)
}
