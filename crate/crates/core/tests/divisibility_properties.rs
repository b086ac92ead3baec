//! Structural properties of perfect divisibility exercised over the
//! fixture corpus: heredity, weight scaling, verifier strictness, and the
//! minimal-counterexample scan.

use std::fs;
use std::path::{Path, PathBuf};

use perfdiv_core::divisibility::{
    find_minimal_non_divisible, find_perfect_division, is_perfectly_divisible,
    is_perfectly_weight_divisible_bounded, verify_division, PerfectDivision, SweepMode,
};
use perfdiv_core::graph6::from_graph6;
use perfdiv_core::weights::seeded_weights;
use perfdiv_core::{Graph, VertexSet, WeightFn};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_graphs(n: usize) -> Vec<Graph> {
    let path = fixtures_dir().join(format!("graphs_n{n}.g6"));
    fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
        .lines()
        .map(|l| from_graph6(l).unwrap())
        .collect()
}

#[test]
fn divisibility_is_hereditary() {
    for g in &fixture_graphs(6) {
        let ones = WeightFn::all_ones(6);
        if !is_perfectly_divisible(g, &ones).unwrap().divisible {
            continue;
        }
        for v in 0..6 {
            let keep = g.vertices().without(v);
            let (sub, _) = g.induced_subgraph(keep).unwrap();
            assert!(
                is_perfectly_divisible(&sub, &WeightFn::all_ones(5))
                    .unwrap()
                    .divisible
            );
        }
    }
}

#[test]
fn divisibility_is_invariant_under_uniform_scaling() {
    for (i, g) in fixture_graphs(5).iter().enumerate() {
        let h = seeded_weights(i as u64, 5, 3);
        let plain = is_perfectly_divisible(g, &h).unwrap();
        let scaled = is_perfectly_divisible(g, &h.scaled(4).unwrap()).unwrap();
        assert_eq!(plain, scaled);
    }
}

#[test]
fn found_divisions_always_verify() {
    for (i, g) in fixture_graphs(6).iter().enumerate().step_by(3) {
        let h = seeded_weights(i as u64, 6, 3);
        for f in [
            g.vertices(),
            VertexSet::from_bits(0b011111),
            VertexSet::from_bits(0b101011),
        ] {
            if let Some(d) = find_perfect_division(g, &h, f).unwrap() {
                assert!(verify_division(g, &h, f, &d).unwrap());
            }
        }
    }
}

#[test]
fn verifier_rejects_malformed_divisions() {
    let g = Graph::cycle(5).unwrap();
    let h = WeightFn::all_ones(5);
    let f = g.vertices();
    // genuine: A = {1, 3, 4} induces a path, B = {0, 2} is stable
    let good = PerfectDivision {
        a: VertexSet::from_bits(0b11010),
        b: VertexSet::from_bits(0b00101),
    };
    assert!(verify_division(&g, &h, f, &good).unwrap());

    // parts overlap
    let overlap = PerfectDivision {
        a: VertexSet::from_bits(0b11010),
        b: VertexSet::from_bits(0b00111),
    };
    assert!(!verify_division(&g, &h, f, &overlap).unwrap());

    // parts miss a vertex of f
    let short = PerfectDivision {
        a: VertexSet::from_bits(0b11010),
        b: VertexSet::from_bits(0b00001),
    };
    assert!(!verify_division(&g, &h, f, &short).unwrap());

    // B carries a full-weight clique: an edge, while omega(C5) = 2
    let heavy = PerfectDivision {
        a: VertexSet::from_bits(0b00101),
        b: VertexSet::from_bits(0b11010),
    };
    assert!(!verify_division(&g, &h, f, &heavy).unwrap());

    // A induces C5 itself, which is not perfect
    let imperfect = PerfectDivision {
        a: f,
        b: VertexSet::EMPTY,
    };
    assert!(!verify_division(&g, &h, f, &imperfect).unwrap());
}

#[test]
fn bounded_weight_sweep_matches_per_weight_checks() {
    for g in fixture_graphs(4).iter() {
        let sweep = is_perfectly_weight_divisible_bounded(g, 2, SweepMode::Exhaustive).unwrap();
        assert!(sweep.weights_tested <= 16);
        let mut all_good = true;
        for mask in 0u64..(1 << 4) {
            let vals: Vec<u64> = (0..4).map(|v| 1 + ((mask >> v) & 1)).collect();
            let h = WeightFn::new(vals).unwrap();
            if !is_perfectly_divisible(g, &h).unwrap().divisible {
                all_good = false;
                break;
            }
        }
        assert_eq!(sweep.divisible, all_good);
        if !sweep.divisible {
            let hw = sweep.witness_weights.as_ref().unwrap();
            let sub = sweep.witness_subset.unwrap();
            assert!(find_perfect_division(g, hw, sub).unwrap().is_none());
        }
    }
}

#[test]
fn minimal_scan_over_small_corpus_reports_cleanly() {
    let stream: Vec<Graph> = (1..=6).flat_map(|n| fixture_graphs(n)).collect();
    let total = stream.len() as u64;
    let report = find_minimal_non_divisible(stream);
    assert_eq!(report.examined, total);
    assert!(report.skipped.is_empty());
    assert_eq!(report.theorem_violations, 0);
    assert_eq!(report.vacuous, report.hits.is_empty());
    for hit in &report.hits {
        assert!(hit.hom_sets_empty);
        let g = from_graph6(&hit.graph6).unwrap();
        assert_eq!(hit.witness, g.vertices());
    }
}
