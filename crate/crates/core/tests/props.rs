//! Property tests: structural invariants of the generators, the dynamics
//! engine, the packed-configuration oracle, and the matching verifier.

use proptest::prelude::*;

use decontam_core::dynamics::{
    self, RecontaminationRule, SemanticVariant, SimState, Verdict,
};
use decontam_core::graph::{center_and_metrics, Graph, TreeView, UNREACHABLE};
use decontam_core::matching::{max_cut_matching, CutInstance};
use decontam_core::oracle::{feasible, immunity_number, ConfigSpace, OracleLimits};
use decontam_core::strategy::MoveScript;
use decontam_core::topology::{self, TopologyDescriptor};
use decontam_core::Vertex;

/// Small connected graph: a seeded random tree plus a few extra edges.
fn small_graph(n: usize, seed: u64, extra: usize) -> Graph {
    let tree = topology::random_tree(n, seed).unwrap();
    let mut edges: Vec<(Vertex, Vertex)> = tree.edges().to_vec();
    let mut x = seed ^ 0x9e3779b97f4a7c15;
    for _ in 0..extra {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let u = (x >> 33) as usize % n;
        let v = (x >> 13) as usize % n;
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Deterministic pseudo-random walk of the agent, driven by a seed.
fn drive_walk(
    g: &Graph,
    start: Vertex,
    steps: usize,
    seed: u64,
    tau: u32,
    variant: SemanticVariant,
    mut inspect: impl FnMut(&SimState, &dynamics::TickRecord),
) {
    let mut state = dynamics::init(g, &[start], tau, variant).unwrap();
    let mut x = seed | 1;
    for _ in 0..steps {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let here = state.agent();
        let nbrs = g.neighbors(here);
        let dest = nbrs[(x >> 33) as usize % nbrs.len()];
        let rec = dynamics::step(g, &mut state, &[dest], tau, variant).unwrap();
        inspect(&state, &rec);
    }
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let inf = UNREACHABLE / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_produce_valid_graphs(pick in 0usize..7, a in 1usize..7, b in 1usize..7) {
        let desc = match pick {
            0 => TopologyDescriptor::Path { n: a },
            1 => TopologyDescriptor::Cycle { n: a + 2 },
            2 => TopologyDescriptor::Complete { n: a },
            3 => TopologyDescriptor::CompleteBipartite { m: a, n: b },
            4 => TopologyDescriptor::Mesh { p: a, q: b },
            5 => TopologyDescriptor::KaryTree { k: a.min(3), h: (b as u32).min(3) },
            6 => TopologyDescriptor::Star { leaves: a },
            _ => unreachable!(),
        };
        let g = topology::generate_graph(&desc).unwrap();
        prop_assert!(g.is_connected());
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                prop_assert_ne!(v, w);
                prop_assert!(g.neighbors(w).contains(&v));
            }
        }
    }

    #[test]
    fn metrics_agree_with_floyd_warshall(n in 2usize..24, seed: u64, extra in 0usize..8) {
        let g = small_graph(n, seed, extra);
        let m = center_and_metrics(&g).unwrap();
        let d = floyd_warshall(&g);
        for v in g.vertices() {
            let ecc = (0..n).map(|u| d[v][u]).max().unwrap();
            prop_assert_eq!(m.eccentricity[v], ecc);
        }
        prop_assert_eq!(m.radius, (0..n).map(|v| m.eccentricity[v]).min().unwrap());
        prop_assert_eq!(m.diameter, (0..n).map(|v| m.eccentricity[v]).max().unwrap());
    }

    #[test]
    fn truncation_is_the_bfs_ball(n in 2usize..40, seed: u64, x in 0u32..8) {
        let g = topology::random_tree(n, seed).unwrap();
        let t = TreeView::rooted(&g, 0).unwrap();
        let sub = t.truncate_at_depth(x);
        let dist = g.bfs_distances(0);
        for v in g.vertices() {
            prop_assert_eq!(sub.contains(v), dist[v] <= x);
        }
    }

    #[test]
    fn replay_is_deterministic(n in 2usize..12, seed: u64, tau in 0u32..4, steps in 1usize..40) {
        let g = small_graph(n, seed, 3);
        let run = |_| {
            let mut clean_counts = Vec::new();
            drive_walk(&g, 0, steps, seed, tau, SemanticVariant::STRICT, |s, r| {
                clean_counts.push((s.clean_count(), r.exposure_digest));
            });
            clean_counts
        };
        prop_assert_eq!(run(()), run(()));
    }

    #[test]
    fn per_tick_invariants_hold(n in 2usize..12, seed: u64, tau in 0u32..5, steps in 1usize..60) {
        let g = small_graph(n, seed, 2);
        let threshold = tau.max(1);
        drive_walk(&g, 0, steps, seed, tau, SemanticVariant::STRICT, |state, rec| {
            // One agent cleans at most one vertex per tick.
            assert!(rec.cleaned.len() <= 1);
            // Occupied vertices are clean.
            assert!(state.is_clean(state.agent()));
            for v in g.vertices() {
                if state.is_clean(v) {
                    // Strict at-rest bound on the exposure timer.
                    assert!(state.exposure(v) < threshold, "v={v} xi={}", state.exposure(v));
                    if tau == 0 && !state.is_occupied(v) {
                        // Zero immunity leaves no exposed clean vertex.
                        let exposed = g.neighbors(v).iter().any(|&w| !state.is_clean(w));
                        assert!(!exposed, "exposed clean vertex {v} at tau = 0");
                    }
                } else {
                    assert_eq!(state.exposure(v), 0);
                }
            }
            // Exposure resets when the whole neighborhood is clean.
            for v in g.vertices() {
                if state.is_clean(v)
                    && !state.is_occupied(v)
                    && g.neighbors(v).iter().all(|&w| state.is_clean(w))
                {
                    assert_eq!(state.exposure(v), 0);
                }
            }
        });
    }

    #[test]
    fn lenient_dominates_strict(n in 2usize..10, seed: u64, tau in 0u32..4, steps in 1usize..50) {
        let g = small_graph(n, seed, 2);
        // Same move sequence under both rules: wherever the strict run is
        // clean, the lenient run is clean too.
        let mut strict_state = dynamics::init(&g, &[0], tau, SemanticVariant::STRICT).unwrap();
        let mut lenient_state = dynamics::init(&g, &[0], tau, SemanticVariant::LENIENT).unwrap();
        let mut x = seed | 1;
        for _ in 0..steps {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let here = strict_state.agent();
            let nbrs = g.neighbors(here);
            let dest = nbrs[(x >> 33) as usize % nbrs.len()];
            dynamics::step(&g, &mut strict_state, &[dest], tau, SemanticVariant::STRICT).unwrap();
            dynamics::step(&g, &mut lenient_state, &[dest], tau, SemanticVariant::LENIENT).unwrap();
            for v in g.vertices() {
                if strict_state.is_clean(v) {
                    prop_assert!(lenient_state.is_clean(v));
                    prop_assert!(lenient_state.exposure(v) <= strict_state.exposure(v));
                }
            }
        }
    }

    #[test]
    fn contagion_travels_one_hop_per_tick(n in 3usize..12, seed: u64, steps in 2usize..40) {
        let g = small_graph(n, seed, 2);
        let tau = 1u32;
        // Distance from the contaminated set at one instant lower-bounds
        // the time until recontamination.
        let mut state = dynamics::init(&g, &[0], tau, SemanticVariant::STRICT).unwrap();
        let mut x = seed | 1;
        let mut history: Vec<Vec<Vertex>> = Vec::new();
        let mut snapshots: Vec<Vec<u32>> = Vec::new();
        for _ in 0..steps {
            // Multi-source BFS from the contaminated set.
            let mut dist = vec![UNREACHABLE; n];
            let mut queue: std::collections::VecDeque<Vertex> =
                state.contaminated_vertices().collect();
            for &v in queue.iter() {
                dist[v] = 0;
            }
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            snapshots.push(dist);

            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let here = state.agent();
            let nbrs = g.neighbors(here);
            let dest = nbrs[(x >> 33) as usize % nbrs.len()];
            let rec = dynamics::step(&g, &mut state, &[dest], tau, SemanticVariant::STRICT).unwrap();
            history.push(rec.recontaminated.clone());
        }
        for (t0, dist) in snapshots.iter().enumerate() {
            for (offset, recont) in history[t0..].iter().enumerate() {
                for &v in recont {
                    if dist[v] != UNREACHABLE && dist[v] >= 1 {
                        // Flip at tick t0 + offset + 1; earliest legal is t0 + dist.
                        prop_assert!(
                            offset as u32 + 1 >= dist[v],
                            "vertex {v} at distance {} flipped after {} ticks",
                            dist[v],
                            offset + 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn packed_transition_matches_engine(
        n in 2usize..9,
        seed: u64,
        tau in 0u32..4,
        lenient: bool,
        stay: bool,
        steps in 1usize..40,
    ) {
        let g = small_graph(n, seed, 2);
        let variant = SemanticVariant {
            rule: if lenient { RecontaminationRule::Lenient } else { RecontaminationRule::Strict },
            allow_stay: stay,
        };
        let space = ConfigSpace::new(&g, tau, variant).unwrap();
        let mut state = dynamics::init(&g, &[0], tau, variant).unwrap();
        let mut config = space.encode_state(&state);
        let mut syms = Vec::new();
        let mut flips = Vec::new();
        let mut x = seed | 1;
        for _ in 0..steps {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let here = state.agent();
            let mut choices: Vec<Vertex> = g.neighbors(here).to_vec();
            if variant.allow_stay {
                choices.push(here);
            }
            let dest = choices[(x >> 33) as usize % choices.len()];
            dynamics::step(&g, &mut state, &[dest], tau, variant).unwrap();
            let (next, all_clean) = space.transition(&mut syms, &mut flips, config, dest);
            prop_assert_eq!(next, space.encode_state(&state), "configs diverge");
            prop_assert_eq!(all_clean, state.all_clean());
            config = next;
        }
    }

    #[test]
    fn config_decode_encode_roundtrip(
        n in 2usize..9,
        seed: u64,
        tau in 0u32..4,
        steps in 0usize..30,
    ) {
        let g = small_graph(n, seed, 1);
        let variant = SemanticVariant::STRICT;
        let space = ConfigSpace::new(&g, tau, variant).unwrap();
        // Walk to a reachable configuration, then check the round trip.
        let mut state = dynamics::init(&g, &[0], tau, variant).unwrap();
        let mut x = seed | 1;
        for _ in 0..steps {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let nbrs = g.neighbors(state.agent());
            let dest = nbrs[(x >> 33) as usize % nbrs.len()];
            dynamics::step(&g, &mut state, &[dest], tau, variant).unwrap();
        }
        let config = space.encode_state(&state);
        let mut syms = Vec::new();
        space.decode_symbols(config, &mut syms);
        prop_assert_eq!(space.agent_of(config), state.agent());
        for v in g.vertices() {
            if state.is_clean(v) {
                prop_assert_eq!(syms[v] as u32, 1 + state.exposure(v));
            } else {
                prop_assert_eq!(syms[v], 0);
            }
        }
    }

    #[test]
    fn cut_matchings_are_valid_and_maximum(seed: u64) {
        // Random half-sized W in a 4x4 mesh; brute-force the cut graphs
        // with at most 12 cut edges.
        let mut pool: Vec<Vertex> = (0..16).collect();
        let mut x = seed | 1;
        for i in 0..8 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = i + (x >> 33) as usize % (16 - i);
            pool.swap(i, j);
        }
        let mut w = pool[..8].to_vec();
        w.sort_unstable();
        let inst = CutInstance::new(4, &w).unwrap();
        let matching = max_cut_matching(&inst);
        let cut = inst.cut_edges();
        // Validity: matched edges cross the cut, each vertex used once.
        let mut used = std::collections::BTreeSet::new();
        for &(u, v) in &matching {
            prop_assert!(inst.in_w[u] && !inst.in_w[v]);
            prop_assert!(cut.contains(&(u, v)));
            prop_assert!(used.insert(u));
            prop_assert!(used.insert(v));
        }
        if cut.len() <= 12 {
            prop_assert_eq!(matching.len(), brute_force_matching(&cut));
        }
        // The bound under test: never below the side length.
        prop_assert!(matching.len() >= 4);
    }
}

fn brute_force_matching(edges: &[(Vertex, Vertex)]) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut used = std::collections::BTreeSet::new();
        let mut ok = true;
        let mut size = 0;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if !used.insert(u) || !used.insert(v) {
                    ok = false;
                    break;
                }
                size += 1;
            }
        }
        if ok {
            best = best.max(size);
        }
    }
    best
}

#[test]
fn variant_and_stay_orderings_on_small_graphs() {
    let limits = OracleLimits::default();
    let graphs = vec![
        topology::path(5).unwrap(),
        topology::cycle(5).unwrap(),
        topology::complete(4).unwrap(),
        topology::star(4).unwrap(),
        topology::spider(&[2, 1, 1]).unwrap(),
        topology::mesh(2, 3).unwrap(),
        small_graph(7, 11, 3),
    ];
    for g in &graphs {
        let strict = immunity_number(g, SemanticVariant::STRICT, None, &limits)
            .unwrap()
            .iota;
        let lenient = immunity_number(g, SemanticVariant::LENIENT, None, &limits)
            .unwrap()
            .iota;
        assert!(lenient <= strict, "lenient {lenient} > strict {strict}");

        let stay = SemanticVariant {
            allow_stay: true,
            ..SemanticVariant::STRICT
        };
        let with_stay = immunity_number(g, stay, None, &limits).unwrap().iota;
        assert!(with_stay <= strict, "stays must never hurt");
    }
}

#[test]
fn oracle_witnesses_replay_clean() {
    let limits = OracleLimits::default();
    for g in [
        topology::path(6).unwrap(),
        topology::cycle(6).unwrap(),
        topology::complete(5).unwrap(),
        topology::star(5).unwrap(),
        topology::mesh(2, 3).unwrap(),
    ] {
        for variant in [SemanticVariant::STRICT, SemanticVariant::LENIENT] {
            let result = immunity_number(&g, variant, None, &limits).unwrap();
            let (outcome, _) = dynamics::replay(
                &g,
                result.witness.placement,
                &result.witness.moves,
                result.iota,
                variant,
            )
            .unwrap();
            assert_eq!(outcome.verdict, Verdict::FullyClean);
        }
    }
}

#[test]
fn trace_moves_replay_to_the_same_outcome() {
    // The trace is a faithful log: replaying its move column reproduces
    // the run's verdict, tick count, and monotonicity flag.
    let g = topology::mesh(3, 4).unwrap();
    let plan = decontam_core::strategy::mesh_column_sweep(&g, 3, 4).unwrap();
    let mut strat = decontam_core::strategy::ScriptStrategy::new("mesh", plan.script);
    let budget = dynamics::default_tick_budget(12, 3);
    let (outcome, trace) = dynamics::run(&g, &mut strat, 3, SemanticVariant::STRICT, budget).unwrap();

    let moves: Vec<Vertex> = trace.records.iter().map(|r| r.moves[0]).collect();
    let (replayed, trace2) = dynamics::replay(
        &g,
        trace.placements[0],
        &moves,
        trace.tau,
        trace.variant,
    )
    .unwrap();
    assert_eq!(replayed.verdict, outcome.verdict);
    assert_eq!(replayed.ticks_used, outcome.ticks_used);
    assert_eq!(replayed.monotone, outcome.monotone);
    assert_eq!(trace2.records, trace.records);
}

#[test]
fn strategy_bounds_never_undercut_the_oracle() {
    use decontam_core::oracle::cross_check;
    let limits = OracleLimits::default();

    // Column sweep on the 3x3 mesh: τ = p against the exact value, which
    // also sits above the p/2 lower bound.
    let mesh = topology::mesh(3, 3).unwrap();
    let exact = immunity_number(&mesh, SemanticVariant::STRICT, None, &limits).unwrap();
    let check = cross_check(3, &exact);
    assert!(check.consistent);
    assert!(exact.iota >= 2);

    // Iterative spider bound on the three-arm spider.
    let spider = topology::spider(&[2, 2, 2]).unwrap();
    let (schedule, _) = decontam_core::strategy::spider_iterative(&spider, 0).unwrap();
    let exact = immunity_number(&spider, SemanticVariant::STRICT, None, &limits).unwrap();
    let check = cross_check(schedule.recommended_tau, &exact);
    assert!(check.consistent);
    assert_eq!(check.gap, schedule.recommended_tau - exact.iota);

    // Star shuttle bound is exactly tight.
    let star = topology::star(5).unwrap();
    let exact = immunity_number(&star, SemanticVariant::STRICT, None, &limits).unwrap();
    let check = cross_check(1, &exact);
    assert!(check.consistent);
    assert_eq!(check.gap, 0);
}

#[test]
fn feasibility_monotone_over_full_scan() {
    // Scan beyond the immunity number and check monotonicity row by row.
    let limits = OracleLimits::default();
    for g in [
        topology::cycle(5).unwrap(),
        topology::complete(4).unwrap(),
        topology::star(4).unwrap(),
    ] {
        let result = immunity_number(&g, SemanticVariant::STRICT, None, &limits).unwrap();
        let mut last = false;
        for tau in 0..=result.iota + 2 {
            let f = feasible(&g, tau, SemanticVariant::STRICT, &limits)
                .unwrap()
                .feasible;
            assert!(!last || f, "feasibility regressed at tau {tau}");
            last = f;
        }
    }
}

#[test]
fn catalog_scripts_are_edge_valid() {
    use decontam_core::strategy::{resolve, ResolveOptions};
    let cases: Vec<(TopologyDescriptor, &str)> = vec![
        (TopologyDescriptor::Path { n: 7 }, "path-sweep"),
        (TopologyDescriptor::Cycle { n: 7 }, "cycle-sweep"),
        (TopologyDescriptor::Complete { n: 6 }, "complete-seq"),
        (
            TopologyDescriptor::CompleteBipartite { m: 3, n: 5 },
            "bipartite-interleave",
        ),
        (TopologyDescriptor::Star { leaves: 5 }, "star-shuttle"),
        (TopologyDescriptor::Spider { arms: vec![3, 2, 2] }, "spider-iter"),
        (TopologyDescriptor::Spider { arms: vec![4, 1, 1] }, "spider-sqrt"),
        (TopologyDescriptor::KaryTree { k: 2, h: 3 }, "kary-inorder"),
        (TopologyDescriptor::KaryTree { k: 2, h: 3 }, "binary-2phase"),
        (TopologyDescriptor::Mesh { p: 3, q: 4 }, "mesh-column"),
        (TopologyDescriptor::RandomTree { n: 40, seed: 5 }, "tree-smallh"),
        (TopologyDescriptor::RandomTree { n: 40, seed: 5 }, "dfs"),
        (
            TopologyDescriptor::KahnPair { arms: 4, long_len: 3 },
            "kahn-star",
        ),
    ];
    for (desc, id) in cases {
        let g = topology::generate_graph(&desc).unwrap();
        let resolved = resolve(id, &g, Some(&desc), ResolveOptions::default()).unwrap();
        assert_eq!(resolved.id, id);
        // Drive the strategy and validate every emitted move.
        let tau = resolved.formula_tau;
        let mut strategy = resolved.strategy;
        let budget = dynamics::default_tick_budget(g.vertex_count(), tau);
        let (outcome, trace) =
            dynamics::run(&g, strategy.as_mut(), tau, resolved.variant, budget).unwrap();
        assert_eq!(outcome.verdict, Verdict::FullyClean, "{id}");
        let script = MoveScript {
            placement: trace.placements[0],
            moves: trace.records.iter().map(|r| r.moves[0]).collect(),
        };
        script.validate(&g).unwrap();
    }
}

#[test]
fn run_rejects_mismatched_strategy() {
    use decontam_core::strategy::{resolve, ResolveOptions};
    let g = topology::path(5).unwrap();
    let desc = TopologyDescriptor::Path { n: 5 };
    assert!(resolve("cycle-sweep", &g, Some(&desc), ResolveOptions::default()).is_err());
    assert!(resolve("mesh-column", &g, Some(&desc), ResolveOptions::default()).is_err());
    assert!(resolve("no-such-strategy", &g, Some(&desc), ResolveOptions::default()).is_err());
}
