//! Solvers for the intractable settings: exact exponential-time enumerators
//! for the two Bayesian commitment problems, correct at desk scale behind
//! explicit budgets, and grid searches that certify lower bounds for the
//! three-player single and sequential commitment problems.

use crate::error::{Error, Result};
use crate::game::{
    evaluate_leader, evaluate_leader_bayesian, induce_game, BayesianGame, Commitment,
    FollowerPlay, NormalFormGame, PaymentFunction, Strategy,
};
use crate::lp::{solve_lp, verify_optimality, LinearProgram, LpStatus, Relation};
use crate::oracle::{best_nash_for_leader, commitment_of, CommitmentGrid, DEFAULT_SUPPORT_CAP};
use crate::rational::Rational;
use crate::report::{
    self, CertificateEntry, CommitmentOut, FollowerPlayOut, PaymentsOut, ReportOut,
    StandardCommitmentOut, StrategyOut, BOUND_EXACT, BOUND_LOWER,
};
use crate::solvers::{commit, constraint_slacks, SolveOptions, Solved};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Default ceiling on enumerated type assignments and grid points.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn assignment_count(base: usize, digits: usize, budget: u128, what: &str) -> Result<u128> {
    let count = (base as u128)
        .checked_pow(digits.try_into().map_err(|_| Error::validation("too many types"))?)
        .unwrap_or(u128::MAX);
    if count > budget || count == 0 {
        return Err(Error::budget(
            what,
            count,
            budget,
            Some("shrink the instance or use the grid approximators"),
        ));
    }
    Ok(count)
}

fn assignment_digits(index: u128, base: usize, digits: usize) -> Vec<usize> {
    let mut out = vec![0usize; digits];
    let mut rest = index;
    for d in (0..digits).rev() {
        out[d] = (rest % base as u128) as usize;
        rest /= base as u128;
    }
    out
}

/// Exact solver for a single-typed leader facing one follower with private
/// types: enumerate every assignment of follower types to actions, solve one
/// LP per assignment for the cheapest leader mixture and action-conditional
/// payments that make the assignment obedient, and keep the best.
pub fn solve_bayesian_follower_exact(
    game: &BayesianGame,
    budget: u128,
    opts: &SolveOptions,
) -> Result<Solved> {
    if game.players() != 2 {
        return Err(Error::validation(format!(
            "the follower-types solver is for 2-player games, got {}",
            game.players()
        )));
    }
    if game.type_count(0) != 1 {
        return Err(Error::validation(format!(
            "the follower-types solver needs a single-typed leader, got {} leader types",
            game.type_count(0)
        )));
    }
    let m = game.action_count(0);
    let n = game.action_count(1);
    let k = game.type_count(1);
    let prior = game.prior(1);
    let count = assignment_count(n, k, budget, "type-assignment enumeration")?;

    let build = |tau: &[usize]| -> LinearProgram {
        let range: Vec<usize> = {
            let set: std::collections::BTreeSet<usize> = tau.iter().copied().collect();
            set.into_iter().collect()
        };
        let pay_col = |b: usize| -> Option<usize> {
            range.binary_search(&b).ok().map(|pos| m + pos)
        };
        let mut vars: Vec<String> =
            (0..m).map(|a| format!("p({})", game.action_label(0, a))).collect();
        for &b in &range {
            vars.push(format!("P({})", game.action_label(1, b)));
        }
        let name = format!(
            "assign({})",
            tau.iter().map(|&b| game.action_label(1, b)).collect::<Vec<_>>().join(",")
        );
        let mut lp = LinearProgram::new(name, vars);
        for a in 0..m {
            lp.bounds[a] = (Some(Rational::zero()), None);
            let mut coeff = Rational::zero();
            for (t, pi) in prior.iter().enumerate() {
                coeff += pi * game.utility(0, 0, game.profile_index(&[a, tau[t]]));
            }
            lp.objective[a] = coeff;
        }
        for (pos, &b) in range.iter().enumerate() {
            let j = m + pos;
            lp.bounds[j] = (
                Some(Rational::zero()),
                if opts.payments { None } else { Some(Rational::zero()) },
            );
            let mut coeff = Rational::zero();
            for (t, pi) in prior.iter().enumerate() {
                if tau[t] == b {
                    coeff -= pi;
                }
            }
            lp.objective[j] = coeff;
        }
        let total = lp.variables.len();
        let mut ones = vec![Rational::zero(); total];
        for a in 0..m {
            ones[a] = Rational::one();
        }
        lp.constrain("mix", ones, Relation::Eq, Rational::one());
        for (t, _) in prior.iter().enumerate() {
            let target = tau[t];
            for b2 in 0..n {
                if b2 == target {
                    continue;
                }
                let mut coeffs = vec![Rational::zero(); total];
                for a in 0..m {
                    let on = game.utility(1, t, game.profile_index(&[a, target]));
                    let off = game.utility(1, t, game.profile_index(&[a, b2]));
                    coeffs[a] = on - off;
                }
                coeffs[pay_col(target).expect("target is in range")] = Rational::one();
                if let Some(col) = pay_col(b2) {
                    coeffs[col] = -Rational::one();
                }
                lp.constrain(
                    format!("ic:{}:{}", game.type_label(1, t), game.action_label(1, b2)),
                    coeffs,
                    Relation::Ge,
                    Rational::zero(),
                );
            }
        }
        lp
    };

    let values: Vec<Option<Rational>> = (0..count as usize)
        .into_par_iter()
        .map(|idx| {
            let tau = assignment_digits(idx as u128, n, k);
            let lp = build(&tau);
            let sol = solve_lp(&lp)?;
            match sol.status {
                LpStatus::Optimal => Ok(Some(sol.objective_value)),
                LpStatus::Infeasible => Ok(None),
                LpStatus::Unbounded => Err(Error::Internal(format!(
                    "lp {}: payments only lower the objective, it cannot be unbounded",
                    lp.name
                ))),
            }
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(Rational, usize)> = None;
    for (idx, v) in values.iter().enumerate() {
        if let Some(v) = v {
            if best.as_ref().map(|(bv, _)| v > bv).unwrap_or(true) {
                best = Some((v.clone(), idx));
            }
        }
    }
    let Some((value, idx)) = best else {
        if opts.payments {
            return Err(Error::Internal(
                "constant type assignments are always obedient under large payments".to_string(),
            ));
        }
        return Err(Error::validation(
            "no follower type assignment is obedient without payments; \
             re-run with payments enabled",
        ));
    };
    let tau = assignment_digits(idx as u128, n, k);
    let lp = build(&tau);
    let sol = solve_lp(&lp)?;
    debug_assert_eq!(sol.status, LpStatus::Optimal);
    debug_assert_eq!(verify_optimality(&lp, &sol), Ok(()));
    debug_assert_eq!(sol.objective_value, value);

    let sigma = sol.assignment[..m].to_vec();
    let range: Vec<usize> = {
        let set: std::collections::BTreeSet<usize> = tau.iter().copied().collect();
        set.into_iter().collect()
    };
    let mut pay = vec![Rational::zero(); n];
    for (pos, &b) in range.iter().enumerate() {
        pay[b] = sol.assignment[m + pos].clone();
    }
    let certificate = constraint_slacks(&lp, &sol.assignment, "ic:");
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));

    let commitment = Commitment {
        strategy: Strategy::Mixture(sigma.clone()),
        payments: PaymentFunction::follower_action_only(pay.clone())?,
    };
    let replay =
        evaluate_leader_bayesian(game, &commitment, &FollowerPlay::PerType(tau.clone()))?;
    if replay != value {
        return Err(Error::Internal(format!(
            "reported value {value} does not replay ({replay})"
        )));
    }

    Ok(Solved {
        report: ReportOut {
            setting: "bayes-follower-exact".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::Mixture {
                    weights: report::mixture_out(&game.actions()[0], &sigma),
                },
                payments: PaymentsOut::FollowerActionOnly {
                    values: pay
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(b, v)| (game.action_label(1, b).to_string(), v.clone()))
                        .collect(),
                },
            }),
            follower_play: FollowerPlayOut::PerType {
                actions: tau
                    .iter()
                    .enumerate()
                    .map(|(t, &b)| {
                        (game.type_label(1, t).to_string(), game.action_label(1, b).to_string())
                    })
                    .collect(),
            },
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps: if opts.dump_lps { vec![lp.dump()] } else { Vec::new() },
    })
}

/// Exact solver for a typed leader committing to one pure action per type
/// against a single-typed follower: enumerate action functions; for each
/// follower action the cheapest action-conditional payment making it weakly
/// best is a closed-form deficit, so no LP is needed.
pub fn solve_leader_types_pure_exact(
    game: &BayesianGame,
    budget: u128,
    opts: &SolveOptions,
) -> Result<Solved> {
    if game.players() != 2 {
        return Err(Error::validation(format!(
            "the leader-types solver is for 2-player games, got {}",
            game.players()
        )));
    }
    if game.type_count(1) != 1 {
        return Err(Error::validation(format!(
            "the leader-types solver needs a single-typed follower, got {} follower types",
            game.type_count(1)
        )));
    }
    let m = game.action_count(0);
    let n = game.action_count(1);
    let k = game.type_count(0);
    let prior = game.prior(0);
    let count = assignment_count(m, k, budget, "action-function enumeration")?;

    // Per function f and follower action b: follower's prior-expected base
    // utility, the payment deficit, and the leader's net value.
    let evaluate = |f: &[usize]| -> Option<(Rational, usize, Rational)> {
        let expected_u2: Vec<Rational> = (0..n)
            .map(|b| {
                let mut v = Rational::zero();
                for (t, pi) in prior.iter().enumerate() {
                    v += pi * game.utility(1, 0, game.profile_index(&[f[t], b]));
                }
                v
            })
            .collect();
        let mut best: Option<(Rational, usize, Rational)> = None;
        for b in 0..n {
            let rival = (0..n)
                .filter(|&b2| b2 != b)
                .map(|b2| expected_u2[b2].clone())
                .max();
            let deficit = match rival {
                Some(r) if r > expected_u2[b] => &r - &expected_u2[b],
                _ => Rational::zero(),
            };
            if !opts.payments && deficit.is_positive() {
                continue;
            }
            let mut value = -&deficit;
            for (t, pi) in prior.iter().enumerate() {
                value += pi * game.utility(0, t, game.profile_index(&[f[t], b]));
            }
            if best.as_ref().map(|(bv, ..)| value > *bv).unwrap_or(true) {
                best = Some((value, b, deficit));
            }
        }
        best
    };

    let evaluated: Vec<Option<(Rational, usize, Rational)>> = (0..count as usize)
        .into_par_iter()
        .map(|idx| evaluate(&assignment_digits(idx as u128, m, k)))
        .collect();

    let mut best: Option<(Rational, usize, usize, Rational)> = None;
    for (idx, entry) in evaluated.iter().enumerate() {
        if let Some((value, b, deficit)) = entry {
            if best.as_ref().map(|(bv, ..)| value > bv).unwrap_or(true) {
                best = Some((value.clone(), idx, *b, deficit.clone()));
            }
        }
    }
    let Some((value, idx, b_star, deficit)) = best else {
        return Err(Error::Internal(
            "every action function leaves the follower a payment-free best response".to_string(),
        ));
    };
    let f = assignment_digits(idx as u128, m, k);

    let expected_u2: Vec<Rational> = (0..n)
        .map(|b| {
            let mut v = Rational::zero();
            for (t, pi) in prior.iter().enumerate() {
                v += pi * game.utility(1, 0, game.profile_index(&[f[t], b]));
            }
            v
        })
        .collect();
    let paid = &expected_u2[b_star] + &deficit;
    let certificate: Vec<CertificateEntry> = (0..n)
        .filter(|&b2| b2 != b_star)
        .map(|b2| CertificateEntry {
            id: format!("ic:{}", game.action_label(1, b2)),
            slack: &paid - &expected_u2[b2],
        })
        .collect();
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));

    let mut pay = vec![Rational::zero(); n];
    pay[b_star] = deficit;
    let mut response = vec![Rational::zero(); n];
    response[b_star] = Rational::one();
    let commitment = Commitment {
        strategy: Strategy::TypedPure(f.clone()),
        payments: PaymentFunction::follower_action_only(pay.clone())?,
    };
    let replay = evaluate_leader_bayesian(
        game,
        &commitment,
        &FollowerPlay::Product(vec![response]),
    )?;
    if replay != value {
        return Err(Error::Internal(format!(
            "reported value {value} does not replay ({replay})"
        )));
    }

    let mut play = BTreeMap::new();
    play.insert(game.action_label(1, b_star).to_string(), Rational::one());
    Ok(Solved {
        report: ReportOut {
            setting: "leader-types-pure-exact".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::TypedPure {
                    actions: f
                        .iter()
                        .enumerate()
                        .map(|(t, &a)| {
                            (game.type_label(0, t).to_string(), game.action_label(0, a).to_string())
                        })
                        .collect(),
                },
                payments: PaymentsOut::FollowerActionOnly {
                    values: pay
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(b, v)| (game.action_label(1, b).to_string(), v.clone()))
                        .collect(),
                },
            }),
            follower_play: FollowerPlayOut::Product { strategies: vec![play] },
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps: Vec::new(),
    })
}

fn induced_best_response_slacks(
    induced: &NormalFormGame,
    s2: &[Rational],
    s3: &[Rational],
) -> Vec<CertificateEntry> {
    let mut out = Vec::new();
    for (player, (own, other)) in [(s2, s3), (s3, s2)].into_iter().enumerate() {
        let n_other = induced.action_count(1 - player);
        let u = |a: usize, o: usize| -> &Rational {
            let profile = if player == 0 { [a, o] } else { [o, a] };
            induced.utility_at(player, &profile)
        };
        let mut value = Rational::zero();
        for (a, wa) in own.iter().enumerate() {
            if wa.is_zero() {
                continue;
            }
            for o in 0..n_other {
                if !other[o].is_zero() {
                    value += &(wa * &other[o]) * u(a, o);
                }
            }
        }
        for a in 0..induced.action_count(player) {
            let mut dev = Rational::zero();
            for o in 0..n_other {
                if !other[o].is_zero() {
                    dev += &other[o] * u(a, o);
                }
            }
            out.push(CertificateEntry {
                id: format!("br:{}:{}", player + 2, induced.action_label(player, a)),
                slack: &value - &dev,
            });
        }
    }
    out
}

/// Grid lower bound for the three-player single-commitment setting: sweep
/// leader mixtures and outcome-conditional payment tensors; followers play
/// the leader-best Nash equilibrium of each induced game.
pub fn approx_single_commitment(
    game: &NormalFormGame,
    step: &Rational,
    cap: Option<Rational>,
    budget: u128,
    opts: &SolveOptions,
) -> Result<Solved> {
    if game.players() != 3 {
        return Err(Error::validation(format!(
            "the single-commitment approximator is for 3-player games, got {}",
            game.players()
        )));
    }
    let cap = if opts.payments { cap } else { Some(Rational::zero()) };
    let (grid, cap) = CommitmentGrid::new(game, step, cap, budget, "single-commitment grid")?;

    let mut best: Option<(Rational, Vec<Rational>, Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>)> =
        None;
    let mut all_complete = true;
    grid.for_each(game.players() - 1, |sigma, tensor| {
        let commitment = commitment_of(sigma, tensor);
        let nash = best_nash_for_leader(game, &commitment, DEFAULT_SUPPORT_CAP)?;
        all_complete &= nash.complete;
        if best.as_ref().map(|(bv, ..)| nash.value > *bv).unwrap_or(true) {
            best = Some((
                nash.value,
                sigma.to_vec(),
                tensor.to_vec(),
                nash.play.0,
                nash.play.1,
            ));
        }
        Ok(())
    })?;
    let (value, sigma, tensor, s2, s3) = best.expect("the grid contains at least one point");

    let commitment = commitment_of(&sigma, &tensor);
    let induced = induce_game(game, &commitment)?;
    let certificate = induced_best_response_slacks(&induced.followers, &s2, &s3);
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));
    let replay =
        evaluate_leader(game, &commitment, &FollowerPlay::Product(vec![s2.clone(), s3.clone()]))?;
    if replay != value {
        return Err(Error::Internal(format!(
            "reported value {value} does not replay ({replay})"
        )));
    }

    Ok(Solved {
        report: ReportOut {
            setting: "single-commit".to_string(),
            bound: BOUND_LOWER.to_string(),
            value,
            step: Some(step.clone()),
            cap: Some(cap),
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::Mixture {
                    weights: report::mixture_out(&game.actions()[0], &sigma),
                },
                payments: report::payments_out(game, &commitment.payments),
            }),
            follower_play: report::product_play_out(game, &[s2, s3]),
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: Some(
                if all_complete { "complete" } else { "vertex-representatives-only" }.to_string(),
            ),
        },
        lp_dumps: Vec::new(),
    })
}

/// Grid lower bound for the three-player sequential mixed setting: sweep
/// player 1's mixtures and payment tensors; on each induced game player 2's
/// own commitment problem against player 3 is solved exactly.
pub fn approx_sequential_mixed(
    game: &NormalFormGame,
    step: &Rational,
    cap: Option<Rational>,
    budget: u128,
    opts: &SolveOptions,
) -> Result<Solved> {
    if game.players() != 3 {
        return Err(Error::validation(format!(
            "the sequential approximator is for 3-player games, got {}",
            game.players()
        )));
    }
    let cap = if opts.payments { cap } else { Some(Rational::zero()) };
    let (grid, cap) = CommitmentGrid::new(game, step, cap, budget, "sequential grid")?;
    let inner_opts = SolveOptions { payments: opts.payments, dump_lps: false };

    struct Best {
        value: Rational,
        sigma: Vec<Rational>,
        tensor: Vec<Vec<Rational>>,
        s2: Vec<Rational>,
        s3: Vec<Rational>,
        inner: StandardCommitmentOut,
        certificate: Vec<CertificateEntry>,
    }
    let mut best: Option<Best> = None;
    grid.for_each(game.players() - 1, |sigma, tensor| {
        let commitment = commitment_of(sigma, tensor);
        let induced = induce_game(game, &commitment)?;
        let inner = commit::solve_two_player_mixed(&induced.followers, &inner_opts)?;
        let CommitmentOut::Standard(inner_out) = &inner.report.commitment else {
            return Err(Error::Internal("two-player solver emits a standard commitment".into()));
        };
        let s2 = report::strategy_internal(&induced.followers, &inner_out.strategy)?
            .distribution(induced.followers.action_count(0))?;
        let FollowerPlay::Product(dists) =
            report::follower_play_internal(&induced.followers, &inner.report.follower_play)?
        else {
            return Err(Error::Internal("two-player solver emits product play".into()));
        };
        let s3 = dists.into_iter().next().expect("one inner follower");
        let n3 = induced.followers.action_count(1);
        let mut value = Rational::zero();
        for (b, wb) in s2.iter().enumerate() {
            if wb.is_zero() {
                continue;
            }
            for (c, wc) in s3.iter().enumerate() {
                if !wc.is_zero() {
                    value += &(wb * wc) * &induced.leader_residual[b * n3 + c];
                }
            }
        }
        if best.as_ref().map(|b| value > b.value).unwrap_or(true) {
            best = Some(Best {
                value,
                sigma: sigma.to_vec(),
                tensor: tensor.to_vec(),
                s2,
                s3,
                inner: inner_out.clone(),
                certificate: inner
                    .report
                    .certificate
                    .iter()
                    .map(|c| CertificateEntry {
                        id: format!("inner:{}", c.id),
                        slack: c.slack.clone(),
                    })
                    .collect(),
            });
        }
        Ok(())
    })?;
    let best = best.expect("the grid contains at least one point");

    let commitment = commitment_of(&best.sigma, &best.tensor);
    let replay = evaluate_leader(
        game,
        &commitment,
        &FollowerPlay::Product(vec![best.s2.clone(), best.s3.clone()]),
    )?;
    if replay != best.value {
        return Err(Error::Internal(format!(
            "reported value {} does not replay ({replay})",
            best.value
        )));
    }

    let lp_dumps = if opts.dump_lps {
        let induced = induce_game(game, &commitment)?;
        commit::solve_two_player_mixed(
            &induced.followers,
            &SolveOptions { payments: opts.payments, dump_lps: true },
        )?
        .lp_dumps
    } else {
        Vec::new()
    };
    Ok(Solved {
        report: ReportOut {
            setting: "seq-mixed".to_string(),
            bound: BOUND_LOWER.to_string(),
            value: best.value,
            step: Some(step.clone()),
            cap: Some(cap),
            commitment: CommitmentOut::Standard(StandardCommitmentOut {
                strategy: StrategyOut::Mixture {
                    weights: report::mixture_out(&game.actions()[0], &best.sigma),
                },
                payments: report::payments_out(game, &commitment.payments),
            }),
            follower_play: report::product_play_out(game, &[best.s2, best.s3]),
            certificate: best.certificate,
            sequential_plan: None,
            inner_commitment: Some(best.inner),
            completeness: None,
        },
        lp_dumps,
    })
}
