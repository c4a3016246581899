use proptest::prelude::*;

use vat_core::exact::{bnb_vat, BranchAndBound};
use vat_core::generators;
use vat_core::heuristic::{hill_climb, optimize_vat, GaConfig};
use vat_core::measures::{self, BruteForce, MeasureKind, Value};
use vat_core::record::ResultRecord;
use vat_core::{Graph, VertexSet};

fn small_graph() -> impl Strategy<Value = Graph> {
    (4usize..=11, 0.0f64..0.6, any::<u64>())
        .prop_map(|(n, p, seed)| generators::gen_random_connected(n, p, seed).unwrap())
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    // Deterministic shuffle; avoids a rand dependency in the test crate.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        perm.swap(i, (x % (i as u64 + 1)) as usize);
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measures_are_relabelling_invariant(g in small_graph(), seed in any::<u64>()) {
        let h = g.relabel(&permutation(g.node_count(), seed)).unwrap();
        let bf = BruteForce::default();
        for kind in [MeasureKind::Vat, MeasureKind::Integrity, MeasureKind::Conductance, MeasureKind::VertexExpansion] {
            prop_assert_eq!(bf.optimize(&g, kind).unwrap().value, bf.optimize(&h, kind).unwrap().value);
        }
    }

    #[test]
    fn optimum_is_attained_and_minimal(g in small_graph(), mask in any::<u64>()) {
        let n = g.node_count();
        let res = measures::brute_force_optimize(&g, MeasureKind::Vat).unwrap();
        prop_assert_eq!(measures::tau(&g, &res.witness).unwrap(), res.value);
        let s = VertexSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if s.is_proper() {
            prop_assert!(measures::tau(&g, &s).unwrap() >= res.value);
        }
    }

    #[test]
    fn vat_bounds(g in small_graph()) {
        let n = g.node_count() as i64;
        let tau = bnb_vat(&g, 40).unwrap().value;
        prop_assert!(tau >= Value::new(1, n - 1));
        // A single node scores 1/(stranded + 1) <= 1.
        prop_assert!(tau <= Value::from_integer(1));
    }

    #[test]
    fn parallel_search_matches_sequential(g in small_graph()) {
        let seq = BranchAndBound::default().solve(&g).unwrap().result;
        let par = BranchAndBound { threads: 3, ..BranchAndBound::default() }.solve(&g).unwrap().result;
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn climbs_never_worsen_their_start(g in small_graph(), mask in any::<u64>()) {
        let n = g.node_count();
        let start = VertexSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let out = hill_climb(&g, &start, 2).unwrap();
        if start.is_proper() {
            prop_assert!(out.value <= measures::tau(&g, &start).unwrap());
        }
        prop_assert_eq!(measures::tau(&g, &out.witness).unwrap(), out.value);
    }

    #[test]
    fn records_recompute(g in small_graph()) {
        for kind in [MeasureKind::Vat, MeasureKind::Integrity, MeasureKind::VertexExpansion] {
            let res = measures::brute_force_optimize(&g, kind).unwrap();
            let rec = ResultRecord::from_json(&ResultRecord::new("g", &res, 0).to_json()).unwrap();
            prop_assert_eq!(rec.recompute(&g).unwrap(), rec.fraction());
        }
    }
}

#[test]
fn heuristic_is_an_upper_bound_on_structured_graphs() {
    let graphs = [
        generators::gen_big_barbell(9).unwrap(),
        generators::gen_ladder_ring(8).unwrap(),
        generators::gen_diamond_ring(5).unwrap(),
        generators::gen_ba(24, 2, 3).unwrap(),
    ];
    for g in &graphs {
        let exact = bnb_vat(g, 40).unwrap().value;
        let cfg = GaConfig { generations: 300, seed: 2, log_every: 0, ..GaConfig::default() };
        let got = optimize_vat(g, &cfg, 50, 2).unwrap();
        assert!(got.result.value >= exact);
        assert!(!got.result.exact);
    }
}

#[test]
fn complete_graphs_have_no_cut_set() {
    let k6 = generators::gen_complete(6);
    let bf = BruteForce::default();
    for kind in [MeasureKind::Toughness, MeasureKind::Tenacity, MeasureKind::Scattering, MeasureKind::InvScattering] {
        assert!(bf.optimize(&k6, kind).is_err(), "{kind}");
    }
    // Nothing is ever stranded, so every set scores |S|.
    assert_eq!(bf.optimize(&k6, MeasureKind::Vat).unwrap().value, Value::from_integer(1));
}
