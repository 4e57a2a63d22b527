mod common;

use common::max_abs_diff;
use league_hits::*;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![2 => Just(0.0), 3 => 0.01f64..3.0, 1 => Just(3.0), 1 => Just(1.0)]
}

/// Non-zero, zero-diagonal, non-negative matrices of size 2..=8.
fn adjacency() -> impl Strategy<Value = AdjacencyMatrix> {
    (2usize..=8)
        .prop_flat_map(|n| proptest::collection::vec(entry(), n * n).prop_map(move |v| (n, v)))
        .prop_map(|(n, v)| {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 0.0 } else { v[i * n + j] })
                        .collect()
                })
                .collect();
            from_named_matrix(&common::names(n), &rows).unwrap()
        })
        .prop_filter("needs at least one edge", |m| !m.weights().is_zero())
}

fn with_permutation() -> impl Strategy<Value = (AdjacencyMatrix, Vec<usize>)> {
    adjacency().prop_flat_map(|m| {
        let n = m.dim();
        (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn fixtures() -> impl Strategy<Value = Vec<MatchRecord>> {
    let one = (0usize..6, 1usize..6, 0u8..3).prop_map(|(a, d, o)| {
        let b = (a + d) % 6;
        let outcome = [Outcome::AWins, Outcome::BWins, Outcome::Draw][o as usize];
        MatchRecord::new(format!("T{a}"), format!("T{b}"), outcome).unwrap()
    });
    proptest::collection::vec(one, 0..30)
}

fn solve(m: &AdjacencyMatrix) -> HitsResult {
    hits(m, &SolverConfig::default()).unwrap()
}

fn residual(g: &DenseMatrix, v: &[f64], lambda: f64) -> f64 {
    let gv = g.mul_vec(v);
    gv.iter()
        .zip(v)
        .map(|(x, y)| (x - lambda * y).powi(2))
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hub_is_authority_of_transpose(m in adjacency()) {
        let r = solve(&m);
        let t = solve(&transpose(&m));
        prop_assume!(r.converged && t.converged);
        prop_assert!(max_abs_diff(r.hub.values(), t.authority.values()) <= 2.0 * TOL);
        prop_assert!(max_abs_diff(r.authority.values(), t.hub.values()) <= 2.0 * TOL);
    }

    #[test]
    fn scaling_leaves_weights_unchanged(m in adjacency(), c in prop::sample::select(vec![0.5, 3.0, 10.0])) {
        let r = solve(&m);
        let s = solve(&m.scaled(c));
        prop_assume!(r.converged && s.converged);
        prop_assert!(max_abs_diff(r.authority.values(), s.authority.values()) <= 2.0 * TOL);
        prop_assert!(max_abs_diff(r.hub.values(), s.hub.values()) <= 2.0 * TOL);
    }

    #[test]
    fn relabelling_permutes_weights((m, order) in with_permutation()) {
        let r = solve(&m);
        let p = solve(&m.permuted(&order));
        prop_assume!(r.converged && p.converged);
        let permute = |v: &[f64]| order.iter().map(|&o| v[o]).collect::<Vec<_>>();
        prop_assert!(max_abs_diff(&permute(r.authority.values()), p.authority.values()) <= 2.0 * TOL);
        prop_assert!(max_abs_diff(&permute(r.hub.values()), p.hub.values()) <= 2.0 * TOL);
    }

    #[test]
    fn weights_are_unit_and_nonnegative(m in adjacency()) {
        let r = solve(&m);
        for v in [r.authority.values(), r.hub.values()] {
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-10);
            prop_assert!(v.iter().all(|&x| x >= 0.0));
        }
        prop_assert!(r.iterations <= league_hits::hits::DEFAULT_MAX_ITERATIONS);
    }

    #[test]
    fn converged_vectors_are_fixed_points(m in adjacency()) {
        let r = solve(&m);
        prop_assume!(r.converged);
        let la = r.authority_eigenvalue;
        let lh = r.hub_eigenvalue;
        prop_assert!(residual(&authority_gram(&m), r.authority.values(), la) <= TOL * la);
        prop_assert!(residual(&hub_gram(&m), r.hub.values(), lh) <= TOL * lh);
        prop_assert!((la - lh).abs() <= 1e-9 * la);
    }

    #[test]
    fn teams_without_edges_get_zero(m in adjacency()) {
        let r = solve(&m);
        for (i, row_sum) in m.row_sums().into_iter().enumerate() {
            if row_sum == 0.0 {
                prop_assert_eq!(r.hub.values()[i], 0.0);
            }
        }
        for (j, col_sum) in m.column_sums().into_iter().enumerate() {
            if col_sum == 0.0 {
                prop_assert_eq!(r.authority.values()[j], 0.0);
            }
        }
    }

    #[test]
    fn column_sums_are_points(matches in fixtures(), win in 0.0f64..5.0, draw in 0.0f64..5.0) {
        let m = build_adjacency(&matches, win, draw).unwrap();
        let mut wins = vec![0u32; m.dim()];
        let mut draws = vec![0u32; m.dim()];
        for r in &matches {
            match r.winner_loser() {
                Some((w, _)) => wins[m.index().index_of(w).unwrap()] += 1,
                None => {
                    draws[m.index().index_of(r.team_a()).unwrap()] += 1;
                    draws[m.index().index_of(r.team_b()).unwrap()] += 1;
                }
            }
        }
        let sums = m.column_sums();
        let table = points_table(&matches, win, draw);
        for (i, name) in m.index().names().iter().enumerate() {
            let expected = win * f64::from(wins[i]) + draw * f64::from(draws[i]);
            prop_assert!((sums[i] - expected).abs() <= 1e-9);
            prop_assert!((table.score_of(name).unwrap() - sums[i]).abs() <= 1e-9);
        }
        prop_assert_eq!(table.len(), m.dim());
    }

    #[test]
    fn match_order_only_changes_labels(matches in fixtures().prop_shuffle().prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()))) {
        let (a, b) = matches;
        let ma = build_adjacency(&a, 3.0, 1.0).unwrap().sorted_by_name();
        let mb = build_adjacency(&b, 3.0, 1.0).unwrap().sorted_by_name();
        prop_assert_eq!(ma, mb);
    }

    #[test]
    fn all_draws_give_symmetric_matrix(matches in fixtures()) {
        let draws: Vec<MatchRecord> = matches
            .iter()
            .map(|r| MatchRecord::new(r.team_a(), r.team_b(), Outcome::Draw).unwrap())
            .collect();
        let m = build_adjacency(&draws, 3.0, 1.0).unwrap();
        prop_assert_eq!(transpose(&m), m);
    }

    #[test]
    fn transpose_is_an_involution(m in adjacency()) {
        prop_assert_eq!(transpose(&transpose(&m)), m);
    }

    #[test]
    fn ranking_ignores_positive_rescaling(scores in proptest::collection::vec(0u32..20, 1..12), c in 0.01f64..100.0) {
        let named = |k: f64| -> Vec<(String, f64)> {
            scores.iter().enumerate().map(|(i, &s)| (format!("T{i}"), f64::from(s) * k)).collect()
        };
        let a = RankTable::from_scores(TableKind::Authority, ScoreOrdering::DescScore, named(1.0));
        let b = RankTable::from_scores(TableKind::Authority, ScoreOrdering::DescScore, named(c));
        let key = |t: &RankTable| t.rows.iter().map(|r| (r.rank, r.team.clone())).collect::<Vec<_>>();
        prop_assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn best_first_hub_order_reverses_authority_order(scores in proptest::collection::hash_set(1u32..10_000, 1..12)) {
        let scores: Vec<f64> = scores.into_iter().map(f64::from).collect();
        let idx = TeamIndex::from_names(common::names(scores.len())).unwrap();
        let w = WeightVector::new(scores, WeightKind::Hub).unwrap();
        let desc: Vec<String> = rank_authority(&w, &idx).unwrap().teams().map(str::to_owned).collect();
        let mut asc: Vec<String> = rank_hub(&w, &idx, HubOrder::BestTeamFirst).unwrap().teams().map(str::to_owned).collect();
        asc.reverse();
        prop_assert_eq!(desc, asc);
    }

    #[test]
    fn tau_of_self_and_reversal(scores in proptest::collection::hash_set(1u32..10_000, 2..15)) {
        let pairs: Vec<(String, f64)> = scores.iter().enumerate().map(|(i, &s)| (format!("T{i}"), f64::from(s))).collect();
        let desc = RankTable::from_scores(TableKind::Points, ScoreOrdering::DescScore, pairs.clone());
        let asc = RankTable::from_scores(TableKind::Points, ScoreOrdering::AscScore, pairs);
        prop_assert_eq!(compare_rankings(&desc, &desc).unwrap().kendall_tau_b, Some(1.0));
        prop_assert_eq!(compare_rankings(&desc, &asc).unwrap().kendall_tau_b, Some(-1.0));
    }

    #[test]
    fn points_csv_round_trips(matches in fixtures()) {
        let table = points_table(&matches, 3.0, 1.0);
        let back = parse_table(&emit_table(&table, OutputFormat::Csv, 3)).unwrap();
        prop_assert_eq!(back.rows, table.rows);
    }

    #[test]
    fn matrix_csv_round_trips_exactly(m in adjacency()) {
        prop_assert_eq!(parse_matrix(&emit_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn parsers_never_panic(text in "\\PC*") {
        let _ = parse_matches(&text);
        let _ = parse_matrix(&text);
        let _ = parse_table(&text);
    }

    #[test]
    fn parsers_never_panic_on_csv_like_input(text in "[A-C0-9,.\\- \\n\\r\"HAD]{0,80}") {
        let _ = parse_matches(&format!("home,away,outcome\n{text}"));
        let _ = parse_matrix(&text);
        let _ = parse_table(&format!("rank,team,score\n{text}"));
    }
}
