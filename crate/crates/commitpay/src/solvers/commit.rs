//! Commitment solvers for the two-player settings and the three-player
//! sequential setting.

use crate::error::{Error, Result};
use crate::game::{BayesianGame, NormalFormGame, PaymentFunction};
use crate::lp::{solve_lp, verify_optimality, LinearProgram, LpStatus, Relation};
use crate::oracle::simulate_sequential_pure;
use crate::rational::Rational;
use crate::report::{
    self, CertificateEntry, CommitmentOut, ReportOut, SequentialPlanOut, StandardCommitmentOut,
    StrategyOut, TriggerOut, BOUND_EXACT,
};
use crate::solvers::{SolveOptions, Solved};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn require_players(game: &NormalFormGame, n: usize, setting: &str) -> Result<()> {
    if game.players() != n {
        return Err(Error::validation(format!(
            "{setting} requires a {n}-player game, got {} players",
            game.players()
        )));
    }
    Ok(())
}

/// Pure commitment in a two-player game: the leader picks an action pair and
/// pays the follower exactly the deficit that makes the target action weakly
/// optimal; indifference resolves toward the leader. Ties across optimal
/// pairs resolve to the lexicographically first (leader action, follower
/// action) pair.
pub fn solve_two_player_pure(game: &NormalFormGame, opts: &SolveOptions) -> Result<Solved> {
    require_players(game, 2, "the pure two-player setting")?;
    let (m, n) = (game.action_count(0), game.action_count(1));
    let mut best: Option<(Rational, usize, usize, Rational)> = None;
    for a in 0..m {
        let row_max =
            (0..n).map(|b| game.utility_at(1, &[a, b]).clone()).max().expect("actions");
        for b in 0..n {
            let deficit = &row_max - game.utility_at(1, &[a, b]);
            if !opts.payments && deficit.is_positive() {
                continue;
            }
            let value = game.utility_at(0, &[a, b]) - &deficit;
            if best.as_ref().map(|(bv, ..)| value > *bv).unwrap_or(true) {
                best = Some((value, a, b, deficit));
            }
        }
    }
    let Some((value, a_star, b_star, deficit)) = best else {
        return Err(Error::Internal(
            "every leader row has a best response, so a pure commitment always exists"
                .to_string(),
        ));
    };

    let mut pay = vec![Rational::zero(); n];
    pay[b_star] = deficit;
    let certificate = crate::oracle::two_player_ic_certificate(game, &point_mass(m, a_star), &pay, b_star);
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));
    Ok(Solved::plain(ReportOut {
        setting: "2p-pure".to_string(),
        bound: BOUND_EXACT.to_string(),
        value,
        step: None,
        cap: None,
        commitment: CommitmentOut::Standard(StandardCommitmentOut {
            strategy: StrategyOut::PureAction {
                action: game.action_label(0, a_star).to_string(),
            },
            payments: report::payments_out(
                game,
                &PaymentFunction::follower_action_only(pay)?,
            ),
        }),
        follower_play: report::pure_play_out(game, &[b_star]),
        certificate,
        sequential_plan: None,
        inner_commitment: None,
        completeness: None,
    }))
}

fn point_mass(len: usize, at: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); len];
    d[at] = Rational::one();
    d
}

/// Mixed commitment in a two-player game: one LP per follower action `b`
/// maximizes the leader's value subject to `b` being weakly optimal for the
/// follower under the payment. Ties across follower actions resolve to the
/// lowest action index.
pub fn solve_two_player_mixed(game: &NormalFormGame, opts: &SolveOptions) -> Result<Solved> {
    require_players(game, 2, "the mixed two-player setting")?;
    let (m, n) = (game.action_count(0), game.action_count(1));

    let build = |b: usize| -> LinearProgram {
        let mut vars: Vec<String> =
            (0..m).map(|a| format!("p({})", game.action_label(0, a))).collect();
        vars.push("pay".to_string());
        let mut lp = LinearProgram::new(format!("commit({})", game.action_label(1, b)), vars);
        for a in 0..m {
            lp.bounds[a] = (Some(Rational::zero()), None);
            lp.objective[a] = game.utility_at(0, &[a, b]).clone();
        }
        lp.bounds[m] = (
            Some(Rational::zero()),
            if opts.payments { None } else { Some(Rational::zero()) },
        );
        lp.objective[m] = -Rational::one();
        let mut ones = vec![Rational::one(); m];
        ones.push(Rational::zero());
        lp.constrain("simplex", ones, Relation::Eq, Rational::one());
        for b2 in 0..n {
            if b2 == b {
                continue;
            }
            let mut coeffs: Vec<Rational> = (0..m)
                .map(|a| game.utility_at(1, &[a, b]) - game.utility_at(1, &[a, b2]))
                .collect();
            coeffs.push(Rational::one());
            lp.constrain(
                format!("ic:{}", game.action_label(1, b2)),
                coeffs,
                Relation::Ge,
                Rational::zero(),
            );
        }
        lp
    };

    let solved: Vec<(LinearProgram, Option<(Rational, Vec<Rational>)>)> = (0..n)
        .into_par_iter()
        .map(|b| {
            let lp = build(b);
            let sol = solve_lp(&lp)?;
            let out = match sol.status {
                LpStatus::Optimal => {
                    debug_assert_eq!(verify_optimality(&lp, &sol), Ok(()));
                    Some((sol.objective_value, sol.assignment))
                }
                LpStatus::Infeasible => None,
                LpStatus::Unbounded => {
                    return Err(Error::Internal(format!(
                        "lp {} unbounded although payments are nonnegative",
                        lp.name
                    )))
                }
            };
            Ok((lp, out))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(Rational, usize)> = None;
    for (b, (_, out)) in solved.iter().enumerate() {
        if let Some((value, _)) = out {
            if best.as_ref().map(|(bv, _)| value > bv).unwrap_or(true) {
                best = Some((value.clone(), b));
            }
        }
    }
    let Some((value, b_star)) = best else {
        return Err(Error::Internal(
            "some follower action is a best response to any mixture, so one program \
             must be feasible"
                .to_string(),
        ));
    };
    let assignment = &solved[b_star].1.as_ref().expect("chosen feasible").1;
    let sigma = assignment[..m].to_vec();
    let mut pay = vec![Rational::zero(); n];
    pay[b_star] = assignment[m].clone();

    let certificate = crate::oracle::two_player_ic_certificate(game, &sigma, &pay, b_star);
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));
    let lp_dumps = if opts.dump_lps {
        solved.iter().map(|(lp, _)| lp.dump()).collect()
    } else {
        Vec::new()
    };
    Ok(Solved {
        report: ReportOut {
            setting: "2p-mixed".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::Mixture {
                    weights: report::mixture_out(game.action_labels(0), &sigma),
                },
                payments: report::payments_out(
                    game,
                    &PaymentFunction::follower_action_only(pay)?,
                ),
            }),
            follower_play: report::pure_play_out(game, &[b_star]),
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps,
    })
}

/// Pure commitment in the three-player sequential setting. One small LP per
/// outcome decides implementability and the cheapest on-path transfers;
/// off-path deviations by player 2 are deterred by large trigger payments
/// that redirect player 3 to player 2's worst outcome in the deviation row.
///
/// Transfers between the players are intrinsic to this setting, so it has no
/// no-payment variant.
pub fn solve_three_player_sequential_pure(
    game: &NormalFormGame,
    opts: &SolveOptions,
) -> Result<Solved> {
    require_players(game, 3, "the sequential setting")?;
    if !opts.payments {
        return Err(Error::validation(
            "the sequential setting has no no-payment variant: player 2's transfers to \
             player 3 are part of the model",
        ));
    }
    let n2 = game.action_count(1);
    let n3 = game.action_count(2);
    let big_m = game.utility_range(1) + game.utility_range(2) + Rational::one();

    let build = |p: usize| -> LinearProgram {
        let profile = game.profile_at(p);
        let (a1, a2, a3) = (profile[0], profile[1], profile[2]);
        let u = |player: usize, b: usize, c: usize| game.utility_at(player, &[a1, b, c]);
        let mut lp = LinearProgram::new(
            format!("seq({})", game.profile_key(&profile)),
            vec!["t12".to_string(), "t13".to_string(), "t23".to_string()],
        );
        for j in 0..3 {
            lp.bounds[j] = (Some(Rational::zero()), None);
        }
        lp.objective[0] = -Rational::one();
        lp.objective[1] = -Rational::one();
        for c in 0..n3 {
            if c == a3 {
                continue;
            }
            lp.constrain(
                format!("p3:{}", game.action_label(2, c)),
                vec![Rational::zero(), Rational::one(), Rational::one()],
                Relation::Ge,
                u(2, a2, c) - u(2, a2, a3),
            );
            lp.constrain(
                format!("joint:{}", game.action_label(2, c)),
                vec![Rational::one(), Rational::one(), Rational::zero()],
                Relation::Ge,
                &(u(1, a2, c) + u(2, a2, c)) - &(u(1, a2, a3) + u(2, a2, a3)),
            );
        }
        for b in 0..n2 {
            if b == a2 {
                continue;
            }
            let row_min = (0..n3).map(|c| u(1, b, c).clone()).min().expect("actions");
            lp.constrain(
                format!("p2:{}", game.action_label(1, b)),
                vec![Rational::one(), Rational::zero(), -Rational::one()],
                Relation::Ge,
                &row_min - u(1, a2, a3),
            );
        }
        lp
    };

    let solved: Vec<(LinearProgram, Option<(Rational, Vec<Rational>)>)> = (0..game
        .profile_count())
        .into_par_iter()
        .map(|p| {
            let lp = build(p);
            let sol = solve_lp(&lp)?;
            let out = match sol.status {
                LpStatus::Optimal => {
                    debug_assert_eq!(verify_optimality(&lp, &sol), Ok(()));
                    let value = game.utility(0, p) + &sol.objective_value;
                    Some((value, sol.assignment))
                }
                LpStatus::Infeasible => None,
                LpStatus::Unbounded => {
                    return Err(Error::Internal(format!(
                        "lp {} unbounded although transfers are nonnegative",
                        lp.name
                    )))
                }
            };
            Ok((lp, out))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(Rational, usize)> = None;
    for (p, (_, out)) in solved.iter().enumerate() {
        if let Some((value, _)) = out {
            if best.as_ref().map(|(bv, _)| value > bv).unwrap_or(true) {
                best = Some((value.clone(), p));
            }
        }
    }
    let Some((value, p_star)) = best else {
        return Err(Error::Internal(
            "every outcome program infeasible; transfers make some outcome implementable"
                .to_string(),
        ));
    };
    let target = game.profile_at(p_star);
    let (a1, a2, a3) = (target[0], target[1], target[2]);
    let assignment = &solved[p_star].1.as_ref().expect("chosen feasible").1;
    let (t12, t13) = (assignment[0].clone(), assignment[1].clone());

    // Player 2's minimal on-path transfer: just enough, given the leader's
    // t13, to make the target weakly optimal for player 3.
    let t23 = {
        let mut need = Rational::zero();
        for c in 0..n3 {
            if c == a3 {
                continue;
            }
            let gap = &(game.utility_at(2, &[a1, a2, c]) - game.utility_at(2, &[a1, a2, a3])) - &t13;
            if gap > need {
                need = gap;
            }
        }
        need
    };

    let mut tensor = vec![vec![Rational::zero(); 2]; game.profile_count()];
    tensor[p_star][0] = t12.clone();
    tensor[p_star][1] = t13.clone();
    let mut triggers = Vec::new();
    for b in 0..n2 {
        if b == a2 {
            continue;
        }
        let worst = (0..n3)
            .min_by_key(|&c| game.utility_at(1, &[a1, b, c]).clone())
            .expect("actions");
        let profile = [a1, b, worst];
        tensor[game.profile_index(&profile)][1] = big_m.clone();
        triggers.push(TriggerOut { profile: game.profile_key(&profile), payment: big_m.clone() });
    }
    let payments = PaymentFunction::outcome_conditional(tensor)?;

    // The report is only correct if sequential play actually reaches the
    // target under this schedule; replay it move by move.
    let outcome = simulate_sequential_pure(game, a1, &payments)?;
    if outcome.profile != [a1, a2, a3] || outcome.leader_value != value {
        return Err(Error::Internal(format!(
            "sequential replay reached {:?} with leader value {}, expected {:?} worth {}",
            outcome.profile,
            outcome.leader_value,
            [a1, a2, a3],
            value
        )));
    }

    let mut certificate = Vec::new();
    for c in 0..n3 {
        if c == a3 {
            continue;
        }
        let u2 = |x: usize| game.utility_at(1, &[a1, a2, x]);
        let u3 = |x: usize| game.utility_at(2, &[a1, a2, x]);
        certificate.push(CertificateEntry {
            id: format!("p3:{}", game.action_label(2, c)),
            slack: &(&t13 + &t23) - &(u3(c) - u3(a3)),
        });
        certificate.push(CertificateEntry {
            id: format!("joint:{}", game.action_label(2, c)),
            slack: &(&t12 + &t13) - &(&(u2(c) + u3(c)) - &(u2(a3) + u3(a3))),
        });
    }
    for b in 0..n2 {
        if b == a2 {
            continue;
        }
        let row_min = (0..n3)
            .map(|c| game.utility_at(1, &[a1, b, c]).clone())
            .min()
            .expect("actions");
        certificate.push(CertificateEntry {
            id: format!("p2:{}", game.action_label(1, b)),
            slack: &(&t12 - &t23) - &(&row_min - game.utility_at(1, &[a1, a2, a3])),
        });
    }
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));

    let lp_dumps = if opts.dump_lps {
        solved.iter().map(|(lp, _)| lp.dump()).collect()
    } else {
        Vec::new()
    };
    Ok(Solved {
        report: ReportOut {
            setting: "3p-seq-pure".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::PureAction {
                    action: game.action_label(0, a1).to_string(),
                },
                payments: report::payments_out(game, &payments),
            }),
            follower_play: report::pure_play_out(game, &[a2, a3]),
            certificate,
            sequential_plan: Some(SequentialPlanOut {
                target: game.profile_key(&target),
                t12,
                t13,
                t23,
                big_m,
                triggers,
            }),
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps,
    })
}

/// Mixed commitment with leader types: the leader commits to one mixture per
/// type plus a payment on the follower's target action; the follower sees
/// only the prior. One LP per follower action, ties to the lowest index.
pub fn solve_leader_types_mixed(game: &BayesianGame, opts: &SolveOptions) -> Result<Solved> {
    if game.players() != 2 {
        return Err(Error::validation(format!(
            "the leader-types setting requires a 2-player game, got {} players",
            game.players()
        )));
    }
    if game.type_count(1) != 1 {
        return Err(Error::validation(format!(
            "the leader-types setting requires a single-typed follower, got {} types",
            game.type_count(1)
        )));
    }
    let m = game.action_count(0);
    let n = game.action_count(1);
    let k = game.type_count(0);
    let prior = game.prior(0).to_vec();
    let pidx = |a: usize, b: usize| game.profile_index(&[a, b]);

    let build = |b: usize| -> LinearProgram {
        let mut vars = Vec::with_capacity(k * m + 1);
        for t in 0..k {
            for a in 0..m {
                vars.push(format!("p({},{})", game.type_label(0, t), game.action_label(0, a)));
            }
        }
        vars.push("pay".to_string());
        let mut lp =
            LinearProgram::new(format!("commit({})", game.action_label(1, b)), vars);
        for t in 0..k {
            for a in 0..m {
                let j = t * m + a;
                lp.bounds[j] = (Some(Rational::zero()), None);
                lp.objective[j] = &prior[t] * game.utility(0, t, pidx(a, b));
            }
        }
        let j_pay = k * m;
        lp.bounds[j_pay] = (
            Some(Rational::zero()),
            if opts.payments { None } else { Some(Rational::zero()) },
        );
        lp.objective[j_pay] = -Rational::one();
        for t in 0..k {
            let mut coeffs = vec![Rational::zero(); k * m + 1];
            for a in 0..m {
                coeffs[t * m + a] = Rational::one();
            }
            lp.constrain(
                format!("simplex:{}", game.type_label(0, t)),
                coeffs,
                Relation::Eq,
                Rational::one(),
            );
        }
        for b2 in 0..n {
            if b2 == b {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); k * m + 1];
            for t in 0..k {
                for a in 0..m {
                    coeffs[t * m + a] =
                        &prior[t] * &(game.utility(1, 0, pidx(a, b)) - game.utility(1, 0, pidx(a, b2)));
                }
            }
            coeffs[k * m] = Rational::one();
            lp.constrain(
                format!("ic:{}", game.action_label(1, b2)),
                coeffs,
                Relation::Ge,
                Rational::zero(),
            );
        }
        lp
    };

    let solved: Vec<(LinearProgram, Option<(Rational, Vec<Rational>)>)> = (0..n)
        .into_par_iter()
        .map(|b| {
            let lp = build(b);
            let sol = solve_lp(&lp)?;
            let out = match sol.status {
                LpStatus::Optimal => {
                    debug_assert_eq!(verify_optimality(&lp, &sol), Ok(()));
                    Some((sol.objective_value, sol.assignment))
                }
                LpStatus::Infeasible => None,
                LpStatus::Unbounded => {
                    return Err(Error::Internal(format!("lp {} unbounded", lp.name)))
                }
            };
            Ok((lp, out))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(Rational, usize)> = None;
    for (b, (_, out)) in solved.iter().enumerate() {
        if let Some((value, _)) = out {
            if best.as_ref().map(|(bv, _)| value > bv).unwrap_or(true) {
                best = Some((value.clone(), b));
            }
        }
    }
    let Some((value, b_star)) = best else {
        return Err(Error::Internal(
            "some follower action best-responds to any typed mixture".to_string(),
        ));
    };
    let assignment = &solved[b_star].1.as_ref().expect("chosen feasible").1;
    let per_type: Vec<Vec<Rational>> =
        (0..k).map(|t| assignment[t * m..(t + 1) * m].to_vec()).collect();
    let pay = assignment[k * m].clone();

    // Follower incentive slacks under the prior.
    let mut certificate = Vec::new();
    for b2 in 0..n {
        if b2 == b_star {
            continue;
        }
        let mut slack = pay.clone();
        for t in 0..k {
            for a in 0..m {
                slack += &(&prior[t] * &per_type[t][a])
                    * &(game.utility(1, 0, pidx(a, b_star)) - game.utility(1, 0, pidx(a, b2)));
            }
        }
        certificate.push(CertificateEntry {
            id: format!("ic:{}", game.action_label(1, b2)),
            slack,
        });
    }
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));

    let mut weights = BTreeMap::new();
    for t in 0..k {
        weights.insert(
            game.type_label(0, t).to_string(),
            report::mixture_out(&game.actions()[0], &per_type[t]),
        );
    }
    let mut payments = BTreeMap::new();
    if !pay.is_zero() {
        payments.insert(game.action_label(1, b_star).to_string(), pay);
    }
    let mut play = BTreeMap::new();
    play.insert(game.action_label(1, b_star).to_string(), Rational::one());
    let lp_dumps = if opts.dump_lps {
        solved.iter().map(|(lp, _)| lp.dump()).collect()
    } else {
        Vec::new()
    };
    Ok(Solved {
        report: ReportOut {
            setting: "2p-leader-types-mixed".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::TypedMixture { weights },
                payments: report::PaymentsOut::FollowerActionOnly { values: payments },
            }),
            follower_play: report::FollowerPlayOut::Product { strategies: vec![play] },
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::example_game;
    use crate::rational::rat;

    #[test]
    fn pure_commitment_on_the_running_example() {
        let game = example_game();
        let solved = solve_two_player_pure(&game, &SolveOptions::default()).unwrap();
        // Paying 2 on (Bottom, Left) lifts Left to the follower's optimum
        // and nets 2 - 2 = 0; (Bottom, Middle) also nets 0 but comes later
        // in lexicographic order.
        assert_eq!(solved.report.value, rat("0"));
        let CommitmentOut::Standard(c) = &solved.report.commitment else { panic!() };
        assert_eq!(c.strategy, StrategyOut::PureAction { action: "Bottom".to_string() });
        let report::PaymentsOut::FollowerActionOnly { values } = &c.payments else { panic!() };
        assert_eq!(values.get("Left"), Some(&rat("2")));
    }

    #[test]
    fn pure_commitment_without_payments() {
        let game = example_game();
        let opts = SolveOptions { payments: false, ..SolveOptions::default() };
        let solved = solve_two_player_pure(&game, &opts).unwrap();
        // Only follower best responses are available: (Bottom, Middle).
        assert_eq!(solved.report.value, rat("0"));
        let CommitmentOut::Standard(c) = &solved.report.commitment else { panic!() };
        let report::PaymentsOut::FollowerActionOnly { values } = &c.payments else { panic!() };
        assert!(values.is_empty());
    }

    #[test]
    fn mixed_commitment_reaches_a_third() {
        let game = example_game();
        let solved = solve_two_player_mixed(&game, &SolveOptions::default()).unwrap();
        assert_eq!(solved.report.value, rat("1/3"));
        assert_eq!(solved.report.bound, "exact");
    }

    #[test]
    fn no_payment_mixed_commitment_is_weaker() {
        let game = example_game();
        let opts = SolveOptions { payments: false, ..SolveOptions::default() };
        let solved = solve_two_player_mixed(&game, &opts).unwrap();
        assert!(solved.report.value < rat("1/3"));
        let CommitmentOut::Standard(c) = &solved.report.commitment else { panic!() };
        assert_eq!(
            c.payments,
            report::PaymentsOut::FollowerActionOnly { values: BTreeMap::new() }
        );
    }

    #[test]
    fn sequential_rejects_no_payment_mode() {
        let game = NormalFormGame::new(
            vec![
                vec!["s".into()],
                vec!["l".into(), "r".into()],
                vec!["x".into(), "y".into()],
            ],
            vec![vec![rat("0"); 3]; 4],
        )
        .unwrap();
        let opts = SolveOptions { payments: false, ..SolveOptions::default() };
        assert!(matches!(
            solve_three_player_sequential_pure(&game, &opts),
            Err(Error::Validation { .. })
        ));
    }
}
