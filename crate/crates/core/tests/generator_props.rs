mod common;

use proptest::prelude::*;
use walknet::generator::{generate_with_observer, run_random_walk};
use walknet::metrics::{fit_power_law, AsplMode, DegreeHistogram};
use walknet::{generate, measure, GenParams, Graph, InitialGraphSpec, NodeId, RngSeed};

fn params(n: usize, m: usize, p1: f64, special: bool, seed: u64) -> GenParams {
    GenParams::new(n, m, p1)
        .with_special_edges(special)
        .with_seed(seed)
}

fn edges_of(g: &Graph) -> Vec<(NodeId, NodeId)> {
    g.edges().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grown_graphs_are_connected_and_counted(
        n in 1usize..400,
        m in 1usize..8,
        p1 in 0.0f64..=1.0,
        special in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let g = generate(&params(n, m, p1, special, seed)).unwrap();
        prop_assert_eq!(g.node_count(), 10 + n);
        prop_assert!(g.edge_count() >= 10 + n);
        prop_assert!(g.edge_count() <= 10 + n * (m + 1));
        prop_assert!(g.is_connected());
    }

    #[test]
    fn walk_marks_are_reachable_and_bounded(
        seed in any::<u64>(),
        m in 1usize..10,
        p1 in 0.0f64..=1.0,
    ) {
        let g = Graph::cycle(12).unwrap();
        let mut rng = RngSeed(seed).rng();
        let marks = run_random_walk(&g, NodeId(0), p1, m, &mut rng).unwrap();
        prop_assert!(!marks.is_empty() && marks.len() <= m);
        prop_assert_eq!(marks[0], NodeId(0));
        let d = g.bfs_distances(NodeId(0), None).unwrap();
        for v in &marks {
            prop_assert!(d[v] <= 2 * (m - 1));
        }
        let mut sorted = marks.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), marks.len());
    }

    #[test]
    fn walk_edges_and_shortcuts_match_the_event_log(
        seed in any::<u64>(),
        special in any::<bool>(),
    ) {
        let mut log = Vec::new();
        let g = generate_with_observer(&params(150, 4, 0.5, special, seed), |ev| {
            log.push((ev.new_node, ev.marked.to_vec(), ev.shortcut, ev.d_max_est));
        })
        .unwrap();
        prop_assert_eq!(log.len(), 150);
        let mut expected: Vec<(NodeId, NodeId)> = edges_of(&Graph::cycle(10).unwrap());
        for (i, (v, marked, shortcut, d_max)) in log.iter().enumerate() {
            prop_assert_eq!(v.index(), 10 + i);
            prop_assert_eq!(d_max.is_some(), special);
            for &w in marked {
                prop_assert!(w.index() < v.index());
                expected.push((w.min(*v), w.max(*v)));
            }
            if let Some((s, t)) = *shortcut {
                prop_assert!(special);
                expected.push((s.min(t), s.max(t)));
            }
        }
        expected.sort();
        let mut actual = edges_of(&g);
        actual.sort();
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn same_seed_same_graph(seed in any::<u64>(), special in any::<bool>()) {
        let p = params(300, 3, 0.5, special, seed);
        prop_assert_eq!(edges_of(&generate(&p).unwrap()), edges_of(&generate(&p).unwrap()));
    }
}

#[test]
fn connected_over_a_hundred_seeds() {
    for seed in 0..100 {
        let special = seed % 2 == 0;
        let g = generate(&params(500, 1 + (seed as usize % 6), 0.5, special, seed)).unwrap();
        assert!(g.is_connected(), "seed {seed}");
    }
}

#[test]
fn baseline_is_the_walk_part_of_the_full_model() {
    // Disabling shortcuts must leave exactly the walk edges of the event log.
    let mut walk_edges = 10;
    let g = generate_with_observer(&params(400, 5, 0.5, false, 11), |ev| {
        walk_edges += ev.marked.len();
        assert!(ev.shortcut.is_none() && ev.sampled_distance.is_none());
    })
    .unwrap();
    assert_eq!(g.edge_count(), walk_edges);
}

#[test]
fn shortcuts_join_non_adjacent_nodes() {
    // Replay the log and check each shortcut against the graph just before it.
    let mut replay = Graph::cycle(10).unwrap();
    let mut seen = 0;
    generate_with_observer(&params(300, 3, 0.5, true, 5), |ev| {
        let v = replay.add_node();
        assert_eq!(v, ev.new_node);
        for &w in ev.marked {
            assert!(replay.add_edge(v, w).unwrap());
        }
        if let Some((s, t)) = ev.shortcut {
            seen += 1;
            assert_ne!(s, t);
            assert!(!replay.contains_edge(s, t));
            assert!(ev.sampled_distance.unwrap() >= 2);
            assert!(replay.add_edge(s, t).unwrap());
        }
    })
    .unwrap();
    assert!(seen > 250);
}

#[test]
fn first_iteration_from_cycle_uses_fallback() {
    let mut first = None;
    generate_with_observer(&params(5, 5, 0.5, true, 1), |ev| {
        if ev.iteration == 0 {
            first = ev.d_max_est;
        }
    })
    .unwrap();
    assert_eq!(first, Some(9));
}

#[test]
fn complete_and_file_starts() {
    let g =
        generate(&params(50, 3, 0.5, true, 2).with_initial(InitialGraphSpec::Complete(5))).unwrap();
    assert_eq!(g.node_count(), 55);
    assert!(g.edge_count() >= 10 + 50);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seed.txt");
    std::fs::write(&path, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let g =
        generate(&params(20, 2, 0.5, true, 3).with_initial(InitialGraphSpec::File(path))).unwrap();
    assert_eq!(g.node_count(), 24);

    let bad = dir.path().join("split.txt");
    std::fs::write(&bad, "0 1\n2 3\n").unwrap();
    assert!(
        generate(&params(5, 2, 0.5, true, 3).with_initial(InitialGraphSpec::File(bad))).is_err()
    );
}

#[test]
fn baseline_degree_tail_is_heavy() {
    let g = generate(&params(20_000, 2, 0.5, false, 8)).unwrap();
    let gamma = fit_power_law(&DegreeHistogram::from_graph(&g)).unwrap();
    assert!(gamma < -1.5, "gamma {gamma}");
}

#[test]
fn sampled_path_length_is_stable() {
    let g = generate(&params(10_000, 5, 0.5, true, 21)).unwrap();
    let runs: Vec<f64> = (0..20)
        .map(|s| {
            walknet::metrics::average_shortest_path(
                &g,
                AsplMode::Sampled {
                    sources: 1000,
                    seed: s,
                },
            )
            .unwrap()
        })
        .collect();
    let mean = runs.iter().sum::<f64>() / runs.len() as f64;
    let var = runs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs.len() - 1) as f64;
    assert!(
        var.sqrt() / mean < 0.01,
        "relative sd {}",
        var.sqrt() / mean
    );
    let exact = measure(&g, AsplMode::Exact).unwrap().avg_shortest_path;
    assert!((mean - exact).abs() / exact < 0.01, "{mean} vs {exact}");
}

#[test]
fn power_law_fit_ignores_count_scale() {
    let base = [(1usize, 64u64), (2, 16), (4, 4)];
    let a = fit_power_law(&DegreeHistogram::from_counts(base)).unwrap();
    let b = fit_power_law(&DegreeHistogram::from_counts(base.map(|(k, c)| (k, c * 7)))).unwrap();
    assert!((a + 2.0).abs() < 1e-9);
    assert!((a - b).abs() < 1e-9);
}
