//! Command-line surface: argument grammar, dispatch, and exit codes.
//!
//! Exit codes: 0 success, 1 failed verification (or internal inconsistency),
//! 2 validation errors, 3 budget and size limits. Reports go to stdout as
//! canonical JSON; `--dump-lp` listings go to stderr so stdout stays
//! byte-stable.

use crate::error::{Error, Result};
use crate::game::{
    evaluate_leader, evaluate_leader_bayesian, induce_game, BayesianGame, NormalFormGame,
    PaymentFunction,
};
use crate::io::{self, GameDoc};
use crate::lp::solve_lp;
use crate::oracle::{
    brute_force_commitment, enumerate_nash_two_player, payments_only_search,
    simulate_sequential_pure, DEFAULT_SUPPORT_CAP,
};
use crate::rational::Rational;
use crate::report::{
    self, CertificateEntry, CommitmentOut, EquilibriumOut, EquilibriumSetOut, FollowerPlayOut,
    ReportOut, StrategyOut, VerifyOut,
};
use crate::solvers::{commit, hard, signaling, SolveOptions, Solved};
use crate::{gen, reductions};
use clap::{ArgGroup, Parser, Subcommand};
use std::path::{Path, PathBuf};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

const SOLVE_SETTINGS: &str = "\
2p-pure                  two players; pure strategy plus payments
2p-mixed                 two players; mixed strategy plus payments
3p-seq-pure              three players committing in turn, pure strategies
2p-leader-types-mixed    leader types; one mixed strategy per type
sig-mixed                action recommendations from a joint distribution
sig-pure                 recommendations with a deterministic leader action
sig-leader-types         recommendations with leader types
bayes-follower-exact     follower types; exact search over response maps
leader-types-pure-exact  leader types; exact search over pure commitments";

/// Exact commitment solvers, oracles, and instance generators.
#[derive(Parser, Debug)]
#[command(name = "commitpay", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Fix every payment variable to zero (commitment to strategies alone).
    #[arg(long, global = true)]
    pub no_payments: bool,

    /// Print every solved linear program to stderr.
    #[arg(long, global = true)]
    pub dump_lp: bool,

    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a game exactly under one of the commitment settings.
    #[command(after_help = format!("Settings:\n{SOLVE_SETTINGS}"))]
    Solve {
        /// Commitment setting; see the listing below.
        #[arg(long)]
        setting: String,
        /// Game file (JSON).
        game: PathBuf,
        /// Enumeration budget for the exact exponential settings.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Grid-search a three-player commitment (certified lower bound).
    Approx {
        /// `single-commit` (simultaneous followers) or `seq-mixed`
        /// (player 2 commits in turn, exactly solved per grid point).
        #[arg(long)]
        setting: String,
        /// Game file (JSON).
        game: PathBuf,
        /// Grid step; must be 1/N for a positive integer N.
        #[arg(long)]
        step: Rational,
        /// Largest payment on the grid (default: the follower utility range).
        #[arg(long)]
        cap: Option<Rational>,
        /// Grid-size budget.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Ground-truth oracles: equilibrium enumeration and brute-force search.
    #[command(group(ArgGroup::new("mode").required(true).args(["nash", "brute_force", "payments_only"])))]
    Oracle {
        /// Enumerate the Nash equilibria of a two-player game.
        #[arg(long)]
        nash: bool,
        /// Grid-search two-player commitments (lower bound on 2p-mixed).
        #[arg(long)]
        brute_force: bool,
        /// Grid-search payment schedules without a strategy commitment.
        #[arg(long)]
        payments_only: bool,
        /// Game file (JSON).
        game: PathBuf,
        /// Grid step for the searches; must be 1/N.
        #[arg(long)]
        step: Option<Rational>,
        /// Largest payment on the grid (default: the follower utility range).
        #[arg(long)]
        cap: Option<Rational>,
        /// Grid-size budget.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Build a game from a combinatorial instance or draw a random one.
    #[command(group(ArgGroup::new("source").required(true).args(["reduction", "random"])))]
    Generate {
        /// Instance family: bcbs, bvc, vc-bayes, or pricing.
        #[arg(long, requires = "input")]
        reduction: Option<String>,
        /// Instance file for --reduction.
        input: Option<PathBuf>,
        /// Random complete game with this shape, e.g. 2x3 or 2x2x2;
        /// integer payoffs in [-4, 4] drawn from --seed.
        #[arg(long, value_name = "SHAPE")]
        random: Option<String>,
        /// Give the random game's leader this many types.
        #[arg(long, conflicts_with_all = ["reduction", "follower_types"])]
        leader_types: Option<usize>,
        /// Give the random game's follower this many types.
        #[arg(long, conflicts_with = "reduction")]
        follower_types: Option<usize>,
        /// Write the game here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a report: incentive compatibility or a reduction witness.
    #[command(group(ArgGroup::new("check").required(true).args(["ic", "witness"])))]
    Verify {
        /// Re-derive obedience slacks and the reported value from the game.
        #[arg(long)]
        ic: bool,
        /// Check the report against the combinatorial source instance.
        #[arg(long, requires = "reduction")]
        witness: bool,
        /// Reduction kind for --witness: bcbs, vc-bayes, or pricing.
        #[arg(long)]
        reduction: Option<String>,
        /// Game file for --ic; source instance file for --witness.
        source: PathBuf,
        /// Report file produced by solve, approx, or oracle.
        report: PathBuf,
    },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation { .. } | Error::Io(_) | Error::Json(_) => EXIT_VALIDATION,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_FAILED,
    }
}

/// Execute a parsed invocation. Returns the stdout payload and the exit
/// code; diagnostics and LP dumps go straight to stderr.
pub fn run(cli: &Cli) -> Result<(String, u8)> {
    let opts = SolveOptions { payments: !cli.no_payments, dump_lps: cli.dump_lp };
    match &cli.command {
        Command::Solve { setting, game, budget } => {
            let doc = io::parse_game_path(game)?;
            let budget = budget.unwrap_or(hard::DEFAULT_BUDGET);
            let solved = dispatch_solve(setting, &doc, budget, &opts)?;
            emit_dumps(&solved);
            Ok((io::to_canonical_json(&solved.report), EXIT_OK))
        }
        Command::Approx { setting, game, step, cap, budget } => {
            let doc = io::parse_game_path(game)?;
            let game = doc.as_normal()?;
            let budget = budget.unwrap_or(hard::DEFAULT_BUDGET);
            let solved = match setting.as_str() {
                "single-commit" => {
                    hard::approx_single_commitment(game, step, cap.clone(), budget, &opts)?
                }
                "seq-mixed" => {
                    hard::approx_sequential_mixed(game, step, cap.clone(), budget, &opts)?
                }
                other => {
                    return Err(Error::validation(format!(
                        "unknown approximation setting {other:?}; expected single-commit or seq-mixed"
                    )))
                }
            };
            emit_dumps(&solved);
            Ok((io::to_canonical_json(&solved.report), EXIT_OK))
        }
        Command::Oracle { nash, brute_force, payments_only: _, game, step, cap, budget } => {
            let doc = io::parse_game_path(game)?;
            let game = doc.as_normal()?;
            let budget = budget.unwrap_or(hard::DEFAULT_BUDGET);
            if *nash {
                let set = enumerate_nash_two_player(game, DEFAULT_SUPPORT_CAP)?;
                let equilibria = set
                    .pairs
                    .iter()
                    .zip(&set.payoffs)
                    .map(|((s1, s2), payoffs)| EquilibriumOut {
                        strategies: vec![
                            report::mixture_out(game.action_labels(0), s1),
                            report::mixture_out(game.action_labels(1), s2),
                        ],
                        payoffs: payoffs.to_vec(),
                    })
                    .collect();
                let out = EquilibriumSetOut {
                    setting: "nash".to_string(),
                    completeness: if set.complete {
                        "complete".to_string()
                    } else {
                        "vertex-representatives-only".to_string()
                    },
                    equilibria,
                };
                return Ok((io::to_canonical_json(&out), EXIT_OK));
            }
            let step = step
                .clone()
                .ok_or_else(|| Error::validation("the grid searches need --step"))?;
            // Commitment to strategies alone: a zero cap empties the
            // payment grid down to the zero schedule.
            let cap = if opts.payments { cap.clone() } else { Some(Rational::zero()) };
            let report = if *brute_force {
                brute_force_commitment(game, &step, cap, budget)?
            } else {
                payments_only_search(game, &step, cap, budget, DEFAULT_SUPPORT_CAP)?
            };
            Ok((io::to_canonical_json(&report), EXIT_OK))
        }
        Command::Generate { reduction, input, random, leader_types, follower_types, output } => {
            let doc = match (reduction, random) {
                (Some(kind), None) => {
                    let path = input.as_ref().expect("clap enforces input with --reduction");
                    let text = read_file(path)?;
                    reductions::reduce(kind, &text)?
                }
                (None, Some(shape)) => {
                    random_doc(shape, *leader_types, *follower_types, cli.seed)?
                }
                _ => unreachable!("clap enforces exactly one source"),
            };
            let json = io::to_canonical_json(&io::game_to_file(&doc));
            match output {
                Some(path) => {
                    std::fs::write(path, &json)?;
                    Ok((String::new(), EXIT_OK))
                }
                None => Ok((json, EXIT_OK)),
            }
        }
        Command::Verify { ic, witness: _, reduction, source, report } => {
            let report_text = read_file(report)?;
            let parsed: ReportOut = serde_json::from_str(&report_text)?;
            let out = if *ic {
                let doc = io::parse_game_path(source)?;
                verify_ic(&doc, &parsed)?
            } else {
                let kind = reduction.as_ref().expect("clap enforces --reduction");
                let source_text = read_file(source)?;
                reductions::verify_witness(kind, &source_text, &parsed)?
            };
            let code = if out.result == "pass" || out.result == reductions::RESULT_CONSISTENT {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((io::to_canonical_json(&out), code))
        }
    }
}

/// Solve `doc` under a named setting; the single dispatcher behind both the
/// CLI and the C ABI.
pub fn dispatch_solve(
    setting: &str,
    doc: &GameDoc,
    budget: u128,
    opts: &SolveOptions,
) -> Result<Solved> {
    match setting {
        "2p-pure" => commit::solve_two_player_pure(doc.as_normal()?, opts),
        "2p-mixed" => commit::solve_two_player_mixed(doc.as_normal()?, opts),
        "3p-seq-pure" => commit::solve_three_player_sequential_pure(doc.as_normal()?, opts),
        "2p-leader-types-mixed" => commit::solve_leader_types_mixed(doc.as_bayesian()?, opts),
        "sig-mixed" => signaling::solve_signaling_mixed(doc.as_normal()?, opts),
        "sig-pure" => signaling::solve_signaling_pure(doc.as_normal()?, opts),
        "sig-leader-types" => signaling::solve_signaling_leader_types(doc.as_bayesian()?, opts),
        "bayes-follower-exact" => {
            hard::solve_bayesian_follower_exact(doc.as_bayesian()?, budget, opts)
        }
        "leader-types-pure-exact" => {
            hard::solve_leader_types_pure_exact(doc.as_bayesian()?, budget, opts)
        }
        other => Err(Error::validation(format!(
            "unknown setting {other:?}; expected one of 2p-pure, 2p-mixed, 3p-seq-pure, \
             2p-leader-types-mixed, sig-mixed, sig-pure, sig-leader-types, \
             bayes-follower-exact, leader-types-pure-exact"
        ))),
    }
}

fn emit_dumps(solved: &Solved) {
    for dump in &solved.lp_dumps {
        eprintln!("{dump}");
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display())))
}

fn random_doc(
    shape: &str,
    leader_types: Option<usize>,
    follower_types: Option<usize>,
    seed: u64,
) -> Result<GameDoc> {
    let counts: Vec<usize> = shape
        .split('x')
        .map(|part| {
            part.parse::<usize>()
                .ok()
                .filter(|&n| (1..=8).contains(&n))
                .ok_or_else(|| {
                    Error::validation(format!(
                        "bad shape {shape:?}; expected action counts in 1..=8 joined by 'x'"
                    ))
                })
        })
        .collect::<Result<_>>()?;
    if !(2..=3).contains(&counts.len()) {
        return Err(Error::validation("random games have two or three players"));
    }
    let mut rng = gen::rng(seed);
    let typed = leader_types.or(follower_types);
    if let Some(n_types) = typed {
        if counts.len() != 2 {
            return Err(Error::validation("typed random games have exactly two players"));
        }
        if !(1..=6).contains(&n_types) {
            return Err(Error::validation("type counts range over 1..=6"));
        }
        let shape = [counts[0], counts[1]];
        let game = if leader_types.is_some() {
            gen::random_leader_types_game(&mut rng, n_types, shape, -4, 4)
        } else {
            gen::random_follower_types_game(&mut rng, n_types, shape, -4, 4)
        };
        return Ok(GameDoc::Bayesian(game));
    }
    Ok(GameDoc::Normal(gen::random_game(&mut rng, &counts, -4, 4)))
}

// ---------------------------------------------------------------------
// Report re-verification

fn pass(entries: Vec<CertificateEntry>, detail: String) -> VerifyOut {
    VerifyOut { result: "pass".to_string(), detail: Some(detail), slacks: Some(entries) }
}

fn fail(entries: Vec<CertificateEntry>, detail: String) -> VerifyOut {
    VerifyOut { result: "fail".to_string(), detail: Some(detail), slacks: Some(entries) }
}

fn judge(entries: Vec<CertificateEntry>, value_ok: bool, context: &str) -> VerifyOut {
    let worst = entries.iter().map(|e| &e.slack).min().cloned();
    let obedient = worst.map(|w| !w.is_negative()).unwrap_or(true);
    match (obedient, value_ok) {
        (true, true) => pass(entries, format!("{context}: obedient, value confirmed")),
        (false, _) => fail(entries, format!("{context}: a deviation has positive gain")),
        (true, false) => fail(entries, format!("{context}: reported value does not replay")),
    }
}

/// Re-derive a report's obedience slacks and value from the game file.
///
/// Signaling reports get the full conditional obedience check; commitment
/// reports get best-response slacks for the reported play plus an exact
/// value replay; sequential reports are replayed through the game tree.
/// Optimality of the reported value is not re-proved here.
pub fn verify_ic(doc: &GameDoc, rep: &ReportOut) -> Result<VerifyOut> {
    match (&rep.commitment, doc) {
        (CommitmentOut::Signaling(sig), GameDoc::Normal(game)) => {
            let scheme = signaling::scheme_from_report(game, sig)?;
            let ic = signaling::check_incentive_compatibility(
                game.actions(),
                &|player, p| game.utility(player, p).clone(),
                &scheme,
            )?;
            let value = signaling::scheme_value(
                &scheme,
                &counts(game.actions()),
                &|_t, p| game.utility(0, p).clone(),
            );
            Ok(if !ic.pass {
                fail(ic.entries, "a recommendation is not obedient".to_string())
            } else if value != rep.value {
                fail(
                    ic.entries,
                    format!("the distribution yields {value}, the report claims {}", rep.value),
                )
            } else {
                pass(ic.entries, "recommendations obedient, value confirmed".to_string())
            })
        }
        (CommitmentOut::Signaling(sig), GameDoc::Bayesian(game)) => {
            for f in 1..game.players() {
                if game.type_count(f) != 1 {
                    return Err(Error::validation(
                        "typed signaling reports require single-typed followers",
                    ));
                }
            }
            let scheme = signaling::scheme_from_report_typed(game, sig)?;
            let ic = signaling::check_incentive_compatibility(
                game.actions(),
                &|player, p| game.utility(player, 0, p).clone(),
                &scheme,
            )?;
            let value = signaling::scheme_value(
                &scheme,
                &counts(game.actions()),
                &|t, p| game.utility(0, t, p).clone(),
            );
            Ok(if !ic.pass {
                fail(ic.entries, "a recommendation is not obedient".to_string())
            } else if value != rep.value {
                fail(
                    ic.entries,
                    format!("the distribution yields {value}, the report claims {}", rep.value),
                )
            } else {
                pass(ic.entries, "recommendations obedient, value confirmed".to_string())
            })
        }
        (CommitmentOut::Standard(_), GameDoc::Normal(game)) => verify_standard_normal(game, rep),
        (CommitmentOut::Standard(_), GameDoc::Bayesian(game)) => {
            verify_standard_bayesian(game, rep)
        }
    }
}

fn counts(actions: &[Vec<String>]) -> Vec<usize> {
    actions.iter().map(|a| a.len()).collect()
}

fn verify_standard_normal(game: &NormalFormGame, rep: &ReportOut) -> Result<VerifyOut> {
    let CommitmentOut::Standard(commitment_out) = &rep.commitment else { unreachable!() };
    if rep.sequential_plan.is_some() {
        return verify_sequential_pure(game, rep);
    }
    if rep.inner_commitment.is_some() {
        return verify_sequential_mixed(game, rep);
    }
    if matches!(commitment_out.strategy, StrategyOut::None) {
        return verify_payments_only(game, rep);
    }
    let commitment = report::commitment_internal(game, commitment_out)?;
    let play = report::follower_play_internal(game, &rep.follower_play)?;
    let value = evaluate_leader(game, &commitment, &play)?;
    match game.players() {
        2 => {
            let crate::game::FollowerPlay::Product(dists) = &play else {
                return Err(Error::validation("expected product follower play"));
            };
            let sigma = commitment.strategy.distribution(game.action_count(0))?;
            let entries =
                follower_slacks(game, &sigma, &commitment.payments, &dists[0], "ic", 1)?;
            Ok(judge(entries, value == rep.value, "two-player commitment"))
        }
        3 => {
            let induced = induce_game(game, &commitment)?;
            let crate::game::FollowerPlay::Product(dists) = &play else {
                return Err(Error::validation("expected product follower play"));
            };
            let entries = bimatrix_nash_slacks(&induced.followers, &dists[0], &dists[1], 2)?;
            Ok(judge(entries, value == rep.value, "induced-game equilibrium"))
        }
        n => Err(Error::validation(format!("cannot re-verify a {n}-player commitment"))),
    }
}

/// Best-response slacks for one follower facing an expected payment per own
/// action: minimum paid value across the played support minus the paid value
/// of each action. Nonnegative slacks mean every supported action is a weak
/// best response.
fn follower_slacks(
    game: &NormalFormGame,
    sigma: &[Rational],
    payments: &PaymentFunction,
    dist: &[Rational],
    id_prefix: &str,
    player: usize,
) -> Result<Vec<CertificateEntry>> {
    let n = game.action_count(player);
    let mut paid = Vec::with_capacity(n);
    for b in 0..n {
        let mut v = Rational::zero();
        for (a, w) in sigma.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let profile = [a, b];
            v += &(w * game.utility_at(player, &profile))
                + &(w * &payments.at(game, &profile, player - 1));
        }
        paid.push(v);
    }
    let supported = (0..n)
        .filter(|&b| dist[b].is_positive())
        .map(|b| paid[b].clone())
        .min()
        .ok_or_else(|| Error::validation("follower play has empty support"))?;
    Ok((0..n)
        .map(|b| CertificateEntry {
            id: format!("{id_prefix}:{}", game.action_label(player, b)),
            slack: &supported - &paid[b],
        })
        .collect())
}

/// Equilibrium slacks for a two-player game: each player's expected payoff
/// at the reported pair minus the payoff of each unilateral deviation.
/// `first_number` names the players in certificate ids (2 and 3 for an
/// induced follower game).
fn bimatrix_nash_slacks(
    game: &NormalFormGame,
    s1: &[Rational],
    s2: &[Rational],
    first_number: usize,
) -> Result<Vec<CertificateEntry>> {
    for (player, dist) in [s1, s2].iter().enumerate() {
        if dist.len() != game.action_count(player) {
            return Err(Error::validation("play does not match the action set"));
        }
    }
    let expected = |player: usize, fixed: Option<(usize, usize)>| -> Rational {
        let mut total = Rational::zero();
        for a in 0..game.action_count(0) {
            for b in 0..game.action_count(1) {
                let w = match fixed {
                    Some((0, x)) => {
                        if a != x {
                            continue;
                        }
                        s2[b].clone()
                    }
                    Some((_, x)) => {
                        if b != x {
                            continue;
                        }
                        s1[a].clone()
                    }
                    None => &s1[a] * &s2[b],
                };
                if !w.is_zero() {
                    total += &w * game.utility_at(player, &[a, b]);
                }
            }
        }
        total
    };
    let mut entries = Vec::new();
    for player in 0..2 {
        let base = expected(player, None);
        for action in 0..game.action_count(player) {
            entries.push(CertificateEntry {
                id: format!(
                    "br:{}:{}",
                    player + first_number,
                    game.action_label(player, action)
                ),
                slack: &base - &expected(player, Some((player, action))),
            });
        }
    }
    Ok(entries)
}

fn verify_payments_only(game: &NormalFormGame, rep: &ReportOut) -> Result<VerifyOut> {
    let CommitmentOut::Standard(commitment_out) = &rep.commitment else { unreachable!() };
    if game.players() != 2 {
        return Err(Error::validation("payment-only reports cover two-player games"));
    }
    let payments = report::payments_internal(game, &commitment_out.payments)?;
    let FollowerPlayOut::Joint { distribution } = &rep.follower_play else {
        return Err(Error::validation("payment-only reports carry a joint distribution"));
    };
    let mut joint = vec![Rational::zero(); game.profile_count()];
    for (key, w) in distribution {
        let profile = game.parse_profile_key(key).map_err(Error::validation)?;
        joint[game.profile_index(&profile)] = w.clone();
    }
    // Marginals first; the joint play must be their product (both players
    // randomize independently in an equilibrium).
    let (n1, n2) = (game.action_count(0), game.action_count(1));
    let mut s1 = vec![Rational::zero(); n1];
    let mut s2 = vec![Rational::zero(); n2];
    for a in 0..n1 {
        for b in 0..n2 {
            let w = &joint[game.profile_index(&[a, b])];
            s1[a] += w;
            s2[b] += w;
        }
    }
    let total: Rational = s1.iter().sum();
    if total != Rational::one() {
        return Ok(fail(Vec::new(), format!("joint play sums to {total}, not 1")));
    }
    for a in 0..n1 {
        for b in 0..n2 {
            if joint[game.profile_index(&[a, b])] != &s1[a] * &s2[b] {
                return Ok(fail(
                    Vec::new(),
                    "joint play is not a product of independent strategies".to_string(),
                ));
            }
        }
    }
    let modified = {
        let utilities: Vec<Vec<Rational>> = (0..game.profile_count())
            .map(|p| {
                let pay = payments.at(game, &game.profile_at(p), 0);
                vec![game.utility(0, p) - &pay, game.utility(1, p) + &pay]
            })
            .collect();
        NormalFormGame::new(game.actions().to_vec(), utilities)
            .expect("payment shift keeps the game valid")
    };
    let entries = bimatrix_nash_slacks(&modified, &s1, &s2, 1)?;
    let mut value = Rational::zero();
    for a in 0..n1 {
        for b in 0..n2 {
            let w = &joint[game.profile_index(&[a, b])];
            if !w.is_zero() {
                value += w * modified.utility_at(0, &[a, b]);
            }
        }
    }
    Ok(judge(entries, value == rep.value, "payment-modified equilibrium"))
}

fn verify_sequential_pure(game: &NormalFormGame, rep: &ReportOut) -> Result<VerifyOut> {
    let CommitmentOut::Standard(commitment_out) = &rep.commitment else { unreachable!() };
    let plan = rep.sequential_plan.as_ref().expect("checked by caller");
    let commitment = report::commitment_internal(game, commitment_out)?;
    let crate::game::Strategy::PureAction(a1) = commitment.strategy else {
        return Err(Error::validation("sequential reports commit to a pure leader action"));
    };
    let outcome = simulate_sequential_pure(game, a1, &commitment.payments)?;
    let target = game.parse_profile_key(&plan.target).map_err(Error::validation)?;
    let reached = outcome.profile.to_vec() == target;
    let value_ok = outcome.leader_value == rep.value;
    Ok(if reached && value_ok {
        pass(
            Vec::new(),
            format!("replay reaches {} with leader value {}", plan.target, rep.value),
        )
    } else if !reached {
        fail(
            Vec::new(),
            format!(
                "replay reaches {}, not the targeted {}",
                game.profile_key(&outcome.profile),
                plan.target
            ),
        )
    } else {
        fail(
            Vec::new(),
            format!("replay yields {}, the report claims {}", outcome.leader_value, rep.value),
        )
    })
}

fn verify_sequential_mixed(game: &NormalFormGame, rep: &ReportOut) -> Result<VerifyOut> {
    let CommitmentOut::Standard(commitment_out) = &rep.commitment else { unreachable!() };
    let inner_out = rep.inner_commitment.as_ref().expect("checked by caller");
    if game.players() != 3 {
        return Err(Error::validation("sequential approximation covers three-player games"));
    }
    let commitment = report::commitment_internal(game, commitment_out)?;
    let induced = induce_game(game, &commitment)?;
    let solved = commit::solve_two_player_mixed(
        &induced.followers,
        &SolveOptions { payments: true, dump_lps: false },
    )?;
    let CommitmentOut::Standard(expected_inner) = &solved.report.commitment else {
        return Err(Error::Internal("inner solve emitted a non-standard commitment".into()));
    };
    if expected_inner != inner_out {
        return Ok(fail(
            Vec::new(),
            "re-solving player 2's stage does not reproduce the inner commitment".to_string(),
        ));
    }
    let s2 = report::strategy_internal(&induced.followers, &inner_out.strategy)?
        .distribution(induced.followers.action_count(0))?;
    let crate::game::FollowerPlay::Product(inner_play) =
        report::follower_play_internal(&induced.followers, &solved.report.follower_play)?
    else {
        return Err(Error::Internal("inner solve emitted non-product play".into()));
    };
    let s3 = inner_play[0].clone();
    let n3 = game.action_count(2);
    let mut value = Rational::zero();
    for (b, wb) in s2.iter().enumerate() {
        for (c, wc) in s3.iter().enumerate() {
            let w = wb * wc;
            if !w.is_zero() {
                value += &w * &induced.leader_residual[b * n3 + c];
            }
        }
    }
    let expected_play = report::product_play_out(game, &[s2, s3]);
    Ok(if expected_play != rep.follower_play {
        fail(Vec::new(), "reported follower play does not match the inner solve".to_string())
    } else if value != rep.value {
        fail(
            Vec::new(),
            format!("the inner solve yields leader value {value}, the report claims {}", rep.value),
        )
    } else {
        pass(Vec::new(), "inner stage re-solved, play and value confirmed".to_string())
    })
}

fn verify_standard_bayesian(game: &BayesianGame, rep: &ReportOut) -> Result<VerifyOut> {
    let CommitmentOut::Standard(commitment_out) = &rep.commitment else { unreachable!() };
    if game.players() != 2 {
        return Err(Error::validation("Bayesian verification covers two-player games"));
    }
    let commitment = report::commitment_internal_bayesian(game, commitment_out)?;
    let play = report::follower_play_internal_bayesian(game, &rep.follower_play)?;
    let value = evaluate_leader_bayesian(game, &commitment, &play)?;
    let pay_vector = bayesian_pay_vector(game, &commitment.payments)?;
    let entries = match (&commitment.strategy, &play) {
        // Leader types: the single-typed follower faces the prior-weighted
        // mixture of the per-type strategies.
        (
            crate::game::Strategy::TypedPure(_) | crate::game::Strategy::TypedMixture(_),
            crate::game::FollowerPlay::Product(dists),
        ) => {
            if game.type_count(1) != 1 {
                return Err(Error::validation(
                    "leader-typed reports require a single-typed follower",
                ));
            }
            let ex_ante = leader_ex_ante(game, &commitment.strategy)?;
            let nb = game.action_count(1);
            let paid = |b: usize| -> Rational {
                let mut v = pay_vector[b].clone();
                for (a, w) in ex_ante.iter().enumerate() {
                    if !w.is_zero() {
                        v += w * game.utility(1, 0, a * nb + b);
                    }
                }
                v
            };
            let supported = (0..nb)
                .filter(|&b| dists[0][b].is_positive())
                .map(&paid)
                .min()
                .ok_or_else(|| Error::validation("follower play has empty support"))?;
            (0..nb)
                .map(|b| CertificateEntry {
                    id: format!("ic:{}", game.action_label(1, b)),
                    slack: &supported - &paid(b),
                })
                .collect()
        }
        // Follower types: every type's assigned action must beat every
        // deviation under its own utility table.
        (
            crate::game::Strategy::PureAction(_) | crate::game::Strategy::Mixture(_),
            crate::game::FollowerPlay::PerType(assignment),
        ) => {
            let sigma = commitment.strategy.distribution(game.action_count(0))?;
            let nb = game.action_count(1);
            let mut entries = Vec::new();
            for (theta, &chosen) in assignment.iter().enumerate() {
                let paid = |b: usize| -> Rational {
                    let mut v = pay_vector[b].clone();
                    for (a, w) in sigma.iter().enumerate() {
                        if !w.is_zero() {
                            v += w * game.utility(1, theta, a * nb + b);
                        }
                    }
                    v
                };
                let own = paid(chosen);
                for b in 0..nb {
                    if b != chosen {
                        entries.push(CertificateEntry {
                            id: format!(
                                "ic:{}:{}",
                                game.type_label(1, theta),
                                game.action_label(1, b)
                            ),
                            slack: &own - &paid(b),
                        });
                    }
                }
            }
            entries
        }
        _ => {
            return Err(Error::validation(
                "unsupported strategy/play combination for a Bayesian report",
            ))
        }
    };
    Ok(judge(entries, value == rep.value, "Bayesian commitment"))
}

fn bayesian_pay_vector(game: &BayesianGame, payments: &PaymentFunction) -> Result<Vec<Rational>> {
    let nb = game.action_count(1);
    match payments {
        PaymentFunction::FollowerActionOnly(v) if v.len() == nb => Ok(v.clone()),
        PaymentFunction::RecommendationConditional(maps) if maps.len() == 1 => Ok((0..nb)
            .map(|b| maps[0].get(&b).cloned().unwrap_or_else(Rational::zero))
            .collect()),
        _ => Err(Error::validation(
            "Bayesian reports pay per follower action (or per recommendation)",
        )),
    }
}

fn leader_ex_ante(
    game: &BayesianGame,
    strategy: &crate::game::Strategy,
) -> Result<Vec<Rational>> {
    let na = game.action_count(0);
    let mut out = vec![Rational::zero(); na];
    match strategy {
        crate::game::Strategy::TypedPure(actions) => {
            for (t, &a) in actions.iter().enumerate() {
                out[a] += &game.prior(0)[t];
            }
        }
        crate::game::Strategy::TypedMixture(rows) => {
            for (t, row) in rows.iter().enumerate() {
                for (a, w) in row.iter().enumerate() {
                    out[a] += &(&game.prior(0)[t] * w);
                }
            }
        }
        _ => return Err(Error::validation("expected a per-type leader strategy")),
    }
    Ok(out)
}

// Used by the binary to keep LP solving behind the same error mapping as
// everything else; exercised in tests to keep the wiring honest.
#[allow(dead_code)]
fn solve_for_tests(lp: &crate::lp::LinearProgram) -> Result<crate::lp::LpSolution> {
    solve_lp(lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::example_game;
    use crate::rational::rat;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn emitted_reports_pass_their_own_ic_check() {
        let game = example_game();
        let doc = GameDoc::Normal(game.clone());
        for setting in ["2p-pure", "2p-mixed", "sig-mixed", "sig-pure"] {
            let solved = dispatch_solve(setting, &doc, hard::DEFAULT_BUDGET, &opts()).unwrap();
            let out = verify_ic(&doc, &solved.report).unwrap();
            assert_eq!(out.result, "pass", "{setting}: {:?}", out.detail);
        }
    }

    #[test]
    fn tampered_values_fail_the_ic_check() {
        let game = example_game();
        let doc = GameDoc::Normal(game);
        let solved = dispatch_solve("2p-mixed", &doc, hard::DEFAULT_BUDGET, &opts()).unwrap();
        let mut report = solved.report;
        report.value = &report.value + &rat("1/100");
        let out = verify_ic(&doc, &report).unwrap();
        assert_eq!(out.result, "fail");
    }

    #[test]
    fn oracle_reports_verify_too() {
        let game = example_game();
        let doc = GameDoc::Normal(game.clone());
        let brute =
            brute_force_commitment(&game, &rat("1/4"), None, hard::DEFAULT_BUDGET).unwrap();
        assert_eq!(verify_ic(&doc, &brute).unwrap().result, "pass");
        let pay_only = payments_only_search(
            &game,
            &rat("1/2"),
            Some(rat("2")),
            hard::DEFAULT_BUDGET,
            DEFAULT_SUPPORT_CAP,
        )
        .unwrap();
        assert_eq!(verify_ic(&doc, &pay_only).unwrap().result, "pass");
    }

    #[test]
    fn random_shapes_parse_and_reject() {
        assert!(random_doc("2x3", None, None, 1).is_ok());
        assert!(random_doc("2x2x2", None, None, 1).is_ok());
        assert!(random_doc("2x3", Some(2), None, 1).is_ok());
        assert!(random_doc("9x2", None, None, 1).is_err());
        assert!(random_doc("2", None, None, 1).is_err());
        assert!(random_doc("2x2x2", Some(2), None, 1).is_err());
    }
}
