//! Property tests: structural invariants that must hold on every instance,
//! exercised over seeded random games and programs.

use commitpay::game::BayesianGame;
use commitpay::gen;
use commitpay::io::GameDoc;
use commitpay::lp::{solve_lp, verify_optimality, LpStatus};
use commitpay::rational::Rational;
use commitpay::report::ReportOut;
use commitpay::solvers::{commit, hard, signaling, SolveOptions};
use proptest::prelude::*;
use rand::Rng;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn small_game(seed: u64) -> commitpay::game::NormalFormGame {
    let mut rng = gen::rng(seed);
    let shape = [rng.gen_range(2..=3), rng.gen_range(2..=3)];
    gen::random_game(&mut rng, &shape, -3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// More expressive commitments never lose value: mixtures beat pure
    /// actions, and recommendations beat public mixtures.
    #[test]
    fn refinement_never_hurts(seed in any::<u64>()) {
        let game = small_game(seed);
        let pure = commit::solve_two_player_pure(&game, &opts()).unwrap().report.value;
        let mixed = commit::solve_two_player_mixed(&game, &opts()).unwrap().report.value;
        let sig_pure = signaling::solve_signaling_pure(&game, &opts()).unwrap().report.value;
        let sig_mixed = signaling::solve_signaling_mixed(&game, &opts()).unwrap().report.value;
        prop_assert!(mixed >= pure);
        prop_assert!(sig_mixed >= mixed);
        prop_assert!(sig_mixed >= sig_pure);
        prop_assert!(sig_pure >= pure);
    }

    /// Removing the payment instrument can only lower the leader's value.
    #[test]
    fn payments_never_hurt(seed in any::<u64>()) {
        let game = small_game(seed);
        let with = commit::solve_two_player_mixed(&game, &opts()).unwrap().report.value;
        let no_pay = SolveOptions { payments: false, dump_lps: false };
        let without = commit::solve_two_player_mixed(&game, &no_pay).unwrap().report.value;
        prop_assert!(with >= without);
    }

    /// Shifting every leader payoff by a constant shifts the optimal value
    /// by exactly that constant (follower incentives are untouched).
    #[test]
    fn leader_value_is_translation_equivariant(seed in any::<u64>(), shift in -5i64..=5) {
        let game = small_game(seed);
        let shifted = {
            let c = Rational::from_int(shift);
            let utilities: Vec<Vec<Rational>> = (0..game.profile_count())
                .map(|p| vec![game.utility(0, p) + &c, game.utility(1, p).clone()])
                .collect();
            commitpay::game::NormalFormGame::new(game.actions().to_vec(), utilities).unwrap()
        };
        let base = commit::solve_two_player_mixed(&game, &opts()).unwrap().report.value;
        let moved = commit::solve_two_player_mixed(&shifted, &opts()).unwrap().report.value;
        prop_assert_eq!(moved, base + Rational::from_int(shift));
    }

    /// Every emitted report re-verifies from the game file alone, and the
    /// canonical serialization round-trips byte for byte.
    #[test]
    fn reports_reverify_and_roundtrip(seed in any::<u64>()) {
        let game = small_game(seed);
        let doc = GameDoc::Normal(game);
        for setting in ["2p-pure", "2p-mixed", "sig-mixed", "sig-pure"] {
            let report = match setting {
                "2p-pure" => commit::solve_two_player_pure(doc.as_normal().unwrap(), &opts()),
                "2p-mixed" => commit::solve_two_player_mixed(doc.as_normal().unwrap(), &opts()),
                "sig-mixed" => signaling::solve_signaling_mixed(doc.as_normal().unwrap(), &opts()),
                _ => signaling::solve_signaling_pure(doc.as_normal().unwrap(), &opts()),
            }
            .unwrap()
            .report;
            let verdict = commitpay::cli::verify_ic(&doc, &report).unwrap();
            prop_assert_eq!(&verdict.result, "pass", "{}: {:?}", setting, verdict.detail);
            let json = commitpay::io::to_canonical_json(&report);
            let back: ReportOut = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(commitpay::io::to_canonical_json(&back), json);
        }
    }

    /// Single-type Bayesian wrappers agree exactly with the untyped solvers.
    #[test]
    fn degeneration_identities(seed in any::<u64>()) {
        let game = small_game(seed);
        let typed = BayesianGame::from_normal_form(&game);
        let mixed = commit::solve_two_player_mixed(&game, &opts()).unwrap().report.value;
        prop_assert_eq!(
            commit::solve_leader_types_mixed(&typed, &opts()).unwrap().report.value,
            mixed.clone()
        );
        prop_assert_eq!(
            hard::solve_bayesian_follower_exact(&typed, hard::DEFAULT_BUDGET, &opts())
                .unwrap()
                .report
                .value,
            mixed
        );
    }

    /// The LP engine's optimal answers always carry a zero-gap certificate.
    #[test]
    fn lp_optima_certify(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let lp = gen::random_lp(&mut rng, 5, 8);
        let sol = solve_lp(&lp).unwrap();
        if sol.status == LpStatus::Optimal {
            prop_assert!(verify_optimality(&lp, &sol).is_ok());
        }
        prop_assert!(sol.status != LpStatus::Unbounded);
    }
}
