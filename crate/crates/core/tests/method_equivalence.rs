mod common;

use coverreg::cohomology::{ai_oracle_all, ai_values, regularity_from_ai, HomologyCache, DEFAULT_SCAN_BUDGET};
use coverreg::hypergraph::VertexSet;
use coverreg::monomial::{cover_ideal, krull_dim_quotient};
use coverreg::{AiValue, Field, Hypergraph, Method};
use proptest::prelude::*;

fn both(h: &Hypergraph, s: u32, field: Field, cache: &HomologyCache) -> (Vec<AiValue>, Vec<AiValue>) {
    let oracle = ai_values(h, s, field, Method::Oracle, DEFAULT_SCAN_BUDGET, cache).unwrap();
    let patterns = ai_values(h, s, field, Method::Patterns, DEFAULT_SCAN_BUDGET, cache).unwrap();
    (oracle, patterns)
}

#[test]
fn patterns_agree_with_degree_scan_on_corpus() {
    for (name, h) in common::tu_corpus() {
        let cache = HomologyCache::new();
        for s in 1..=4u32 {
            let (oracle, patterns) = both(&h, s, Field::Rationals, &cache);
            assert_eq!(oracle, patterns, "{name} at s = {s}");
        }
    }
}

#[test]
fn agreement_holds_in_characteristic_two() {
    for (name, h) in common::tu_corpus() {
        let cache = HomologyCache::new();
        for s in 1..=2u32 {
            let (oracle, patterns) = both(&h, s, Field::Prime(2), &cache);
            assert_eq!(oracle, patterns, "{name} at s = {s} over F_2");
        }
    }
}

#[test]
fn invariants_vanish_above_the_dimension() {
    for (name, h) in common::tu_corpus() {
        let dim = krull_dim_quotient(&h).unwrap();
        for s in 1..=3u32 {
            let ideal = cover_ideal(&h).unwrap().power(s).unwrap();
            let all = ai_oracle_all(&ideal, Field::Rationals, DEFAULT_SCAN_BUDGET, &HomologyCache::new()).unwrap();
            assert!(all[dim + 1..].iter().all(|a| *a == AiValue::NegInfinity), "{name} s = {s}: {all:?}");
        }
    }
}

#[test]
fn regularity_dominates_every_shifted_invariant() {
    for (name, h) in common::tu_corpus() {
        let cache = HomologyCache::new();
        for s in 1..=4u32 {
            let values = ai_values(&h, s, Field::Rationals, Method::Patterns, DEFAULT_SCAN_BUDGET, &cache).unwrap();
            let reg_quotient = regularity_from_ai(&values).unwrap() - 1;
            let shifted: Vec<i64> = values
                .iter()
                .enumerate()
                .filter_map(|(p, a)| a.finite().map(|v| v + p as i64))
                .collect();
            assert!(shifted.iter().all(|&x| x <= reg_quotient), "{name} s = {s}");
            assert!(shifted.contains(&reg_quotient), "{name} s = {s}");
        }
    }
}

#[test]
fn finite_invariants_stay_finite() {
    for (name, h) in common::tu_corpus() {
        let cache = HomologyCache::new();
        let n = h.n() as u32;
        let r = h.rank().unwrap() as u32;
        let from = r * n.div_ceil(2) + 1;
        let rows: Vec<Vec<AiValue>> = (from..=from + 2)
            .map(|s| ai_values(&h, s, Field::Rationals, Method::Patterns, DEFAULT_SCAN_BUDGET, &cache).unwrap())
            .collect();
        for p in 0..rows[0].len() {
            let first = rows.iter().position(|row| row[p].is_finite());
            if let Some(i) = first {
                assert!(rows[i..].iter().all(|row| row[p].is_finite()), "{name} p = {p}");
            }
        }
    }
}

#[test]
fn bipartite_regularity_is_affine_from_the_start() {
    for (name, h) in common::tu_corpus().into_iter().filter(|(_, h)| h.is_bipartite_graph()) {
        let cache = HomologyCache::new();
        let n = h.n() as u32;
        let reg: Vec<i64> = (1..=n + 3)
            .map(|s| {
                let v = ai_values(&h, s, Field::Rationals, Method::Patterns, DEFAULT_SCAN_BUDGET, &cache).unwrap();
                regularity_from_ai(&v).unwrap()
            })
            .collect();
        let d = reg[1] - reg[0];
        assert!(reg.windows(2).all(|w| w[1] - w[0] == d), "{name}: {reg:?}");
    }
}

/// Random interval hypergraphs on a path of at most five vertices. Interval
/// incidence matrices have the consecutive-ones property and are therefore
/// totally unimodular.
fn interval_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec((1..=n, 0usize..3), 1..=4).prop_map(move |ivs| {
            let sets: Vec<VertexSet> = ivs
                .into_iter()
                .map(|(lo, len)| VertexSet::from_vertices(lo..=(lo + len).min(n)))
                .collect();
            let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
            Hypergraph::new_lenient(n, &lists).unwrap().simplify()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn patterns_agree_with_degree_scan_on_random_interval_hypergraphs(h in interval_hypergraph(), s in 1u32..=3) {
        prop_assume!(common::is_tu(&h));
        let (oracle, patterns) = both(&h, s, Field::Rationals, &HomologyCache::new());
        prop_assert_eq!(oracle, patterns);
    }
}
