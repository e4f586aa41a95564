mod common;

use std::collections::BTreeMap;

use panelkit_core::assign::{assign_edge_sorting, assign_max_flow, paneling_value};
use panelkit_core::coloring::{
    aco_color, aco_color_with, chaitin_min_colors, chaitin_try, chromatic_oracle, genetic_color,
    Execution,
};
use panelkit_core::interference::conflict;
use panelkit_core::io::{fingerprint, instance_to_json, parse_instance};
use panelkit_core::model::{validate_paneling, AcoParams, GaParams, Instance, Paneling, Stage};
use panelkit_core::schedule::{make_schedule, overlap, validate_schedule, Interval};
use panelkit_core::scoring::{build_assignment_graph, AssignmentGraph};
use panelkit_core::{build_interference, is_valid_coloring, quality_report, InterferenceGraph};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force_optimum, dyadic_graph, random_graph, small_instance};

fn sized_instance(seed: u64, np: usize, nc: usize, s: usize, l: usize) -> Instance {
    let mut inst = small_instance(seed, np, nc);
    inst.config.panel_size = s;
    inst.config.max_load = l;
    inst
}

/// Instance shapes where S * |C| <= L * |P| and S <= |P|.
fn feasible_instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 2usize..8, 1usize..10, 1usize..4, 1usize..5).prop_filter_map(
        "capacity",
        |(seed, np, nc, s, l)| {
            (s <= np && s * nc <= l * np).then(|| sized_instance(seed, np, nc, s, l))
        },
    )
}

fn graph_strategy() -> impl Strategy<Value = InterferenceGraph> {
    (any::<u64>(), 0usize..=10, 0.05f64..0.95)
        .prop_map(|(seed, n, p)| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

fn flow_paneling(inst: &Instance) -> (AssignmentGraph, Paneling) {
    let g = build_assignment_graph(inst, Stage::Interview);
    let pl = assign_max_flow(&g, inst.config.panel_size, inst.config.max_load).unwrap();
    (g, pl)
}

fn small_ga() -> GaParams {
    GaParams {
        population: 12,
        generations: 40,
        ..GaParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn renaming_topics_keeps_scores(seed in any::<u64>(), np in 1usize..6, nc in 1usize..6) {
        let inst = small_instance(seed, np, nc);
        let mut renamed = inst.clone();
        let rename = |t: &String| format!("zz-{}", t.chars().rev().collect::<String>());
        for t in &mut renamed.topics {
            t.id = rename(&t.id);
        }
        for person in renamed.panelists.iter_mut().chain(renamed.candidates.iter_mut()) {
            person.topics = person.topics.iter().map(rename).collect();
        }
        let a = build_assignment_graph(&inst, Stage::Review);
        let b = build_assignment_graph(&renamed, Stage::Review);
        for (p, c, w) in a.pairs() {
            prop_assert!((b.weight(p, c).unwrap() - w).abs() < 1e-12);
        }
    }

    #[test]
    fn score_sign_follows_overlap(seed in any::<u64>(), np in 1usize..6, nc in 1usize..6) {
        let inst = small_instance(seed, np, nc);
        let g = build_assignment_graph(&inst, Stage::Review);
        for (p, c, w) in g.pairs() {
            let shared = g.score_table.shared_topics(p, c).is_some_and(|s| !s.is_empty());
            if shared {
                prop_assert!(w > 0.0);
            } else {
                let sp = g.score_table.panelist_score.get(p).copied().unwrap_or(0) as f64;
                prop_assert_eq!(w, -1.0 / (1.0 + sp));
            }
        }
    }

    #[test]
    fn engines_emit_valid_panelings(inst in feasible_instance()) {
        let (g, flow) = flow_paneling(&inst);
        prop_assert!(validate_paneling(&inst, &flow).is_empty());
        let (s, l) = (inst.config.panel_size, inst.config.max_load);
        if let Ok(greedy) = assign_edge_sorting(&g, s, l) {
            prop_assert!(validate_paneling(&inst, &greedy).is_empty());
            prop_assert!(paneling_value(&g, &flow) >= paneling_value(&g, &greedy) - 1e-12);
        }
    }

    #[test]
    fn flow_matches_exhaustive_search(
        seed in any::<u64>(), np in 1usize..6, nc in 1usize..5, s in 1usize..3, l in 1usize..3,
    ) {
        let g = dyadic_graph(&mut ChaCha8Rng::seed_from_u64(seed), np, nc);
        let brute = brute_force_optimum(&g, s, l);
        let flow = assign_max_flow(&g, s, l).ok().map(|pl| paneling_value(&g, &pl));
        prop_assert_eq!(brute, flow);
    }

    #[test]
    fn interference_edge_iff_shared_panelist(inst in feasible_instance()) {
        let (_, pl) = flow_paneling(&inst);
        let g = build_interference(&pl);
        let panels: Vec<_> = pl.panels.values().collect();
        for (i, a) in panels.iter().enumerate() {
            for b in &panels[i + 1..] {
                let shared = a.members.intersection(&b.members).count();
                prop_assert_eq!(conflict(a, b), shared > 0);
                let w = g.weight(&a.candidate, &b.candidate);
                prop_assert_eq!(w, (shared > 0).then_some(shared));
            }
        }
    }

    #[test]
    fn colorings_are_valid_and_above_the_floor(g in graph_strategy(), seed in any::<u64>()) {
        let floor = chromatic_oracle(&g).unwrap();
        let engines = [
            chaitin_min_colors(&g),
            genetic_color(&g, &small_ga(), seed),
            aco_color(&g, &AcoParams::default(), seed),
        ];
        for col in &engines {
            prop_assert!(is_valid_coloring(&g, col));
            prop_assert!(col.k >= floor);
            prop_assert!(col.k <= engines[0].k);
        }
    }

    #[test]
    fn chaitin_success_is_monotone(g in graph_strategy()) {
        let mut succeeded = false;
        for k in 1..=g.max_degree() + 1 {
            let ok = chaitin_try(&g, k).is_some();
            prop_assert!(ok || !succeeded, "k={} fails after a smaller k succeeded", k);
            succeeded |= ok;
        }
        prop_assert!(g.node_count() == 0 || succeeded);
    }

    #[test]
    fn seeded_engines_repeat(g in graph_strategy(), seed in any::<u64>()) {
        prop_assert_eq!(genetic_color(&g, &small_ga(), seed), genetic_color(&g, &small_ga(), seed));
        let params = AcoParams::default();
        prop_assert_eq!(
            aco_color_with(&g, &params, seed, Execution::Serial),
            aco_color_with(&g, &params, seed, Execution::Parallel)
        );
    }

    #[test]
    fn schedules_from_any_engine_are_valid(inst in feasible_instance(), minutes in 1u32..120) {
        let (_, pl) = flow_paneling(&inst);
        let g = build_interference(&pl);
        for col in [chaitin_min_colors(&g), genetic_color(&g, &small_ga(), 1)] {
            let sch = make_schedule(&pl, &col, minutes).unwrap();
            prop_assert!(validate_schedule(&pl, &sch));
            prop_assert_eq!(sch.elapse_slots, col.k);
            for e in sch.entries.values() {
                prop_assert_eq!(e.interval.end - e.interval.start, u64::from(minutes));
            }
        }
    }

    #[test]
    fn overlap_is_symmetric(a in 0u64..100, la in 1u64..50, b in 0u64..100, lb in 1u64..50) {
        let (x, y) = (Interval::new(a, a + la), Interval::new(b, b + lb));
        prop_assert_eq!(overlap(x, y), overlap(y, x));
    }

    #[test]
    fn quality_sums_match_paneling_value(inst in feasible_instance()) {
        let (g, pl) = flow_paneling(&inst);
        let r = quality_report(&g, &pl, None);
        let v = paneling_value(&g, &pl);
        let by_candidate: f64 = r.per_candidate.values().sum();
        let by_panelist: f64 = r.per_panelist.iter().map(|(p, q)| q * r.panelist_load[p] as f64).sum();
        prop_assert!((by_candidate - v).abs() <= 1e-9 * v.abs().max(1.0));
        prop_assert!((by_panelist - v).abs() <= 1e-9 * v.abs().max(1.0));
        let seats: usize = r.panelist_load.values().sum();
        prop_assert_eq!(seats, pl.len() * inst.config.panel_size);
    }

    #[test]
    fn edge_list_round_trips(g in graph_strategy()) {
        let back = InterferenceGraph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.nodes(), g.nodes());
        let edges = |g: &InterferenceGraph| -> BTreeMap<(String, String), usize> {
            g.edges().iter().map(|e| ((e.a.clone(), e.b.clone()), e.weight)).collect()
        };
        prop_assert_eq!(edges(&back), edges(&g));
    }

    #[test]
    fn instance_json_round_trips(seed in any::<u64>(), np in 1usize..6, nc in 1usize..6) {
        let inst = small_instance(seed, np, nc);
        let back = parse_instance(&instance_to_json(&inst)).unwrap();
        prop_assert_eq!(fingerprint(&back), fingerprint(&inst));
        prop_assert_eq!(back.config, inst.config);
    }
}
