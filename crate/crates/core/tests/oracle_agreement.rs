//! Cross-checks of the search routines against independent brute-force
//! oracles written from the definitions, over the enumerated fixture
//! corpus. The oracles here deliberately share no code with the library.

use std::fs;
use std::path::{Path, PathBuf};

use perfdiv_core::graph6::{from_graph6, to_graph6};
use perfdiv_core::search::{
    chromatic_number, clique_number, is_perfect, is_perfect_definitional, max_clique_weight,
};
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

/// Subset scan straight from the definition: a clique is a set with all
/// pairs adjacent, its weight is the sum of vertex weights.
fn oracle_max_clique_weight(g: &Graph, h: &WeightFn) -> u64 {
    let mut best = 0;
    for mask in 0u64..(1 << g.n()) {
        let s = VertexSet::from_bits(mask);
        let vs = s.to_vec();
        let mut clique = true;
        'pairs: for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !g.has_edge(vs[i], vs[j]) {
                    clique = false;
                    break 'pairs;
                }
            }
        }
        if clique {
            best = best.max(vs.iter().map(|&v| h.value(v)).sum());
        }
    }
    best
}

/// Chromatic number by subset dynamic programming: peel one independent
/// set containing the lowest uncovered vertex at a time.
fn oracle_chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    let full = (1u64 << n) - 1;
    let mut indep = vec![true; (full + 1) as usize];
    for mask in 0..=full {
        let s = VertexSet::from_bits(mask);
        let vs = s.to_vec();
        'pairs: for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if g.has_edge(vs[i], vs[j]) {
                    indep[mask as usize] = false;
                    break 'pairs;
                }
            }
        }
    }
    let mut chi = vec![usize::MAX; (full + 1) as usize];
    chi[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        // enumerate submasks of mask that contain the lowest vertex
        let mut sub = mask;
        loop {
            if sub & low != 0 && indep[sub as usize] {
                chi[mask as usize] = chi[mask as usize].min(1 + chi[(mask & !sub) as usize]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    chi[full as usize]
}

/// Homogeneous sets from the definition: 1 < |X| < n and every outside
/// vertex sees all of X or none of it.
fn oracle_homogeneous_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let x = VertexSet::from_bits(mask);
        if x.len() < 2 || x.len() >= n {
            continue;
        }
        let ok = (0..n).filter(|&v| !x.contains(v)).all(|v| {
            let seen = x.iter().filter(|&u| g.has_edge(u, v)).count();
            seen == 0 || seen == x.len()
        });
        if ok {
            out.push(x);
        }
    }
    out.sort_by(|a, b| (a.len(), a.bits()).cmp(&(b.len(), b.bits())));
    out
}

#[test]
fn clique_search_agrees_with_subset_scan() {
    for n in 1..=7 {
        for (i, g) in fixture_graphs(n).iter().enumerate() {
            let ones = WeightFn::all_ones(n);
            let (w, cert) = max_clique_weight(g, &ones, None).unwrap();
            assert_eq!(w, oracle_max_clique_weight(g, &ones));
            cert.check(g).unwrap();
            assert_eq!(clique_number(g).unwrap() as u64, w);

            let h = seeded_weights(i as u64, n, 4);
            let (wh, cert_h) = max_clique_weight(g, &h, None).unwrap();
            assert_eq!(wh, oracle_max_clique_weight(g, &h), "graph {}", to_graph6(g));
            cert_h.check(g).unwrap();
        }
    }
}

#[test]
fn chromatic_search_agrees_with_subset_dp() {
    for n in 1..=6 {
        for g in &fixture_graphs(n) {
            let (chi, cert) = chromatic_number(g).unwrap();
            assert_eq!(chi, oracle_chromatic_number(g), "graph {}", to_graph6(g));
            cert.check(g).unwrap();
        }
    }
    for g in fixture_graphs(7).iter().step_by(13) {
        let (chi, _) = chromatic_number(g).unwrap();
        assert_eq!(chi, oracle_chromatic_number(g), "graph {}", to_graph6(g));
    }
}

#[test]
fn homogeneous_sets_agree_with_definition() {
    for n in 1..=6 {
        for g in &fixture_graphs(n) {
            assert_eq!(
                g.find_homogeneous_sets().unwrap(),
                oracle_homogeneous_sets(g),
                "graph {}",
                to_graph6(g)
            );
        }
    }
    for g in fixture_graphs(7).iter().step_by(17) {
        assert_eq!(g.find_homogeneous_sets().unwrap(), oracle_homogeneous_sets(g));
    }
}

#[test]
fn perfection_detector_agrees_with_definition_on_small_graphs() {
    // The full n <= 8 comparison is the first acceptance criterion; this
    // is the fast regression version.
    for n in 1..=6 {
        for g in &fixture_graphs(n) {
            let (p, cert) = is_perfect(g).unwrap();
            assert_eq!(
                p,
                is_perfect_definitional(g).unwrap(),
                "graph {}",
                to_graph6(g)
            );
            if let Some(c) = cert {
                c.check(g).unwrap();
            }
        }
    }
}

#[test]
fn graph6_emit_is_identity_on_all_fixture_words() {
    for n in 1..=9 {
        let path = fixtures_dir().join(format!("graphs_n{n}.g6"));
        for line in fs::read_to_string(&path).unwrap().lines() {
            let g = from_graph6(line).unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(to_graph6(&g), line);
        }
    }
}
