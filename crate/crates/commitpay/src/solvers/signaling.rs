//! Signaling solvers: the leader commits to a joint distribution over full
//! action profiles plus payments conditional on each follower following its
//! recommendation. A single LP (or one per leader action in the pure
//! variant) maximizes leader value subject to obedience constraints.

use crate::error::{Error, Result};
use crate::game::{BayesianGame, NormalFormGame};
use crate::lp::{solve_lp, verify_optimality, LinearProgram, LpStatus, Relation};
use crate::rational::Rational;
use crate::report::{
    CertificateEntry, CommitmentOut, DistributionOut, FollowerPlayOut, ReportOut,
    SignalingCommitmentOut, BOUND_EXACT,
};
use crate::solvers::{SolveOptions, Solved};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// One joint-distribution variable per (leader type, action profile) keeps
/// the obedience program dense; reject instances past this size.
pub const SIGNALING_SIZE_LIMIT: u128 = 100_000;

/// A recommendation scheme resolved against a game: per-type distributions
/// over full profiles (a single "type" for normal-form games) and per
/// -follower payments on recommended actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalingScheme {
    /// `distribution[t][p]` with `t` ranging over leader types.
    pub distribution: Vec<Vec<Rational>>,
    /// Leader-type prior (singleton `[1]` for normal-form games).
    pub prior: Vec<Rational>,
    /// `payments[f]` maps follower `f`'s action to the payment for following
    /// that recommendation; never-recommended actions are absent.
    pub payments: Vec<BTreeMap<usize, Rational>>,
}

struct Layout {
    counts: Vec<usize>,
    profile_count: usize,
    n_types: usize,
    /// First transfer variable; transfers are laid out follower-major.
    t_start: usize,
    t_offsets: Vec<usize>,
}

impl Layout {
    fn p_var(&self, t: usize, profile: usize) -> usize {
        t * self.profile_count + profile
    }

    fn t_var(&self, follower: usize, action: usize) -> usize {
        self.t_start + self.t_offsets[follower] + action
    }

    fn coordinate(&self, profile: usize, player: usize) -> usize {
        let mut rest = profile;
        let players = self.counts.len();
        let mut coord = 0;
        for i in (0..players).rev() {
            let c = rest % self.counts[i];
            rest /= self.counts[i];
            if i == player {
                coord = c;
            }
        }
        coord
    }

    fn with_coordinate(&self, profile: usize, player: usize, action: usize) -> usize {
        let players = self.counts.len();
        let mut coords = vec![0usize; players];
        let mut rest = profile;
        for i in (0..players).rev() {
            coords[i] = rest % self.counts[i];
            rest /= self.counts[i];
        }
        coords[player] = action;
        let mut idx = 0;
        for i in 0..players {
            idx = idx * self.counts[i] + coords[i];
        }
        idx
    }
}

#[allow(clippy::too_many_arguments)]
fn build_signaling_lp(
    name: String,
    actions: &[Vec<String>],
    type_labels: Option<&[String]>,
    prior: &[Rational],
    u_leader: &dyn Fn(usize, usize) -> Rational,
    u_follower: &dyn Fn(usize, usize) -> Rational,
    opts: &SolveOptions,
) -> (LinearProgram, Layout) {
    let players = actions.len();
    let counts: Vec<usize> = actions.iter().map(|a| a.len()).collect();
    let profile_count: usize = counts.iter().product();
    let n_types = prior.len();

    let mut t_offsets = Vec::with_capacity(players - 1);
    let mut acc = 0usize;
    for i in 1..players {
        t_offsets.push(acc);
        acc += counts[i];
    }
    let layout = Layout {
        counts: counts.clone(),
        profile_count,
        n_types,
        t_start: n_types * profile_count,
        t_offsets,
    };

    let profile_key = |p: usize| -> String {
        let mut parts = Vec::with_capacity(players);
        let mut rest = p;
        let mut coords = vec![0usize; players];
        for i in (0..players).rev() {
            coords[i] = rest % counts[i];
            rest /= counts[i];
        }
        for i in 0..players {
            parts.push(actions[i][coords[i]].clone());
        }
        parts.join("|")
    };

    let mut vars = Vec::with_capacity(layout.t_start + acc);
    for t in 0..n_types {
        for p in 0..profile_count {
            match type_labels {
                Some(labels) => vars.push(format!("p({},{})", labels[t], profile_key(p))),
                None => vars.push(format!("p({})", profile_key(p))),
            }
        }
    }
    for f in 0..players - 1 {
        for a in 0..counts[f + 1] {
            vars.push(format!("t({},{})", f + 2, actions[f + 1][a]));
        }
    }

    let mut lp = LinearProgram::new(name, vars);
    for t in 0..n_types {
        for p in 0..profile_count {
            let j = layout.p_var(t, p);
            lp.bounds[j] = (Some(Rational::zero()), None);
            lp.objective[j] = &prior[t] * &u_leader(t, p);
        }
    }
    for f in 0..players - 1 {
        for a in 0..counts[f + 1] {
            let j = layout.t_var(f, a);
            lp.bounds[j] = (
                Some(Rational::zero()),
                if opts.payments { None } else { Some(Rational::zero()) },
            );
            lp.objective[j] = -Rational::one();
        }
    }

    let total_vars = lp.variables.len();
    for t in 0..n_types {
        let mut coeffs = vec![Rational::zero(); total_vars];
        for p in 0..profile_count {
            coeffs[layout.p_var(t, p)] = Rational::one();
        }
        let cname = match type_labels {
            Some(labels) => format!("simplex:{}", labels[t]),
            None => "simplex".to_string(),
        };
        lp.constrain(cname, coeffs, Relation::Eq, Rational::one());
    }
    for f in 0..players - 1 {
        let i = f + 1;
        for a in 0..counts[i] {
            for a2 in 0..counts[i] {
                if a2 == a {
                    continue;
                }
                let mut coeffs = vec![Rational::zero(); total_vars];
                for t in 0..n_types {
                    if prior[t].is_zero() {
                        continue;
                    }
                    for p in 0..profile_count {
                        if layout.coordinate(p, i) != a {
                            continue;
                        }
                        let q = layout.with_coordinate(p, i, a2);
                        let gain = &u_follower(i, p) - &u_follower(i, q);
                        coeffs[layout.p_var(t, p)] = &prior[t] * &gain;
                    }
                }
                coeffs[layout.t_var(f, a)] = Rational::one();
                lp.constrain(
                    format!("ic:{}:{}:{}", f + 2, actions[i][a], actions[i][a2]),
                    coeffs,
                    Relation::Ge,
                    Rational::zero(),
                );
            }
        }
    }
    (lp, layout)
}

/// Extract the scheme from an optimal assignment: distributions, ex-ante
/// recommendation probabilities, and per-recommendation payments.
fn extract_scheme(
    layout: &Layout,
    prior: &[Rational],
    assignment: &[Rational],
) -> Result<SignalingScheme> {
    let n_types = layout.n_types;
    let distribution: Vec<Vec<Rational>> = (0..n_types)
        .map(|t| {
            (0..layout.profile_count).map(|p| assignment[layout.p_var(t, p)].clone()).collect()
        })
        .collect();
    let players = layout.counts.len();
    let mut payments = Vec::with_capacity(players - 1);
    for f in 0..players - 1 {
        let i = f + 1;
        let mut map = BTreeMap::new();
        for a in 0..layout.counts[i] {
            let mut marginal = Rational::zero();
            for (t, pi) in prior.iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                for p in 0..layout.profile_count {
                    if layout.coordinate(p, i) == a {
                        marginal += pi * &distribution[t][p];
                    }
                }
            }
            let transfer = assignment[layout.t_var(f, a)].clone();
            if marginal.is_zero() {
                if !transfer.is_zero() {
                    return Err(Error::Internal(format!(
                        "positive transfer {transfer} on a never-recommended action; \
                         the optimum would have removed it"
                    )));
                }
                continue;
            }
            map.insert(a, &transfer / &marginal);
        }
        payments.push(map);
    }
    Ok(SignalingScheme { distribution, prior: prior.to_vec(), payments })
}

fn ic_slacks(lp: &LinearProgram, assignment: &[Rational]) -> Vec<CertificateEntry> {
    crate::solvers::constraint_slacks(lp, assignment, "ic:")
}

fn scheme_to_commitment_out(
    actions: &[Vec<String>],
    type_labels: Option<&[String]>,
    scheme: &SignalingScheme,
) -> SignalingCommitmentOut {
    let players = actions.len();
    let counts: Vec<usize> = actions.iter().map(|a| a.len()).collect();
    let key_of = |p: usize| -> String {
        let mut coords = vec![0usize; players];
        let mut rest = p;
        for i in (0..players).rev() {
            coords[i] = rest % counts[i];
            rest /= counts[i];
        }
        (0..players).map(|i| actions[i][coords[i]].clone()).collect::<Vec<_>>().join("|")
    };
    let dist_map = |d: &[Rational]| -> BTreeMap<String, Rational> {
        d.iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (key_of(p), w.clone()))
            .collect()
    };
    let distribution = match type_labels {
        None => DistributionOut::Plain(dist_map(&scheme.distribution[0])),
        Some(labels) => DistributionOut::PerType(
            labels
                .iter()
                .zip(&scheme.distribution)
                .map(|(l, d)| (l.clone(), dist_map(d)))
                .collect(),
        ),
    };
    let mut payments = BTreeMap::new();
    for (f, map) in scheme.payments.iter().enumerate() {
        payments.insert(
            (f + 2).to_string(),
            map.iter().map(|(&a, v)| (actions[f + 1][a].clone(), v.clone())).collect(),
        );
    }
    SignalingCommitmentOut { distribution, payments }
}

/// Leader value of a scheme: expected base utility minus expected transfers.
pub fn scheme_value(
    scheme: &SignalingScheme,
    counts: &[usize],
    u_leader: &dyn Fn(usize, usize) -> Rational,
) -> Rational {
    let mut value = Rational::zero();
    for (t, pi) in scheme.prior.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (p, w) in scheme.distribution[t].iter().enumerate() {
            if !w.is_zero() {
                value += &(pi * w) * &u_leader(t, p);
            }
        }
    }
    let layout_counts = counts;
    for (f, map) in scheme.payments.iter().enumerate() {
        let i = f + 1;
        for (&a, pay) in map {
            if pay.is_zero() {
                continue;
            }
            let mut marginal = Rational::zero();
            for (t, pi) in scheme.prior.iter().enumerate() {
                for (p, w) in scheme.distribution[t].iter().enumerate() {
                    if coordinate_of(p, layout_counts, i) == a {
                        marginal += pi * w;
                    }
                }
            }
            value -= &marginal * pay;
        }
    }
    value
}

fn coordinate_of(profile: usize, counts: &[usize], player: usize) -> usize {
    let mut rest = profile;
    let mut coord = 0;
    for i in (0..counts.len()).rev() {
        let c = rest % counts[i];
        rest /= counts[i];
        if i == player {
            coord = c;
        }
    }
    coord
}

fn guard_size(n_types: usize, profile_count: usize) -> Result<()> {
    let size = (n_types as u128).saturating_mul(profile_count as u128);
    if size > SIGNALING_SIZE_LIMIT {
        return Err(Error::budget(
            "signaling program",
            size,
            SIGNALING_SIZE_LIMIT,
            Some("the obedience program has one variable per (leader type, action profile)"),
        ));
    }
    Ok(())
}

fn solve_prepared(
    lp: &LinearProgram,
    layout: &Layout,
    prior: &[Rational],
) -> Result<(Rational, SignalingScheme, Vec<CertificateEntry>)> {
    let sol = solve_lp(lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => {
            return Err(Error::Internal(format!(
                "lp {}: an obedient recommendation scheme always exists",
                lp.name
            )))
        }
        LpStatus::Unbounded => {
            return Err(Error::Internal(format!(
                "lp {}: value is bounded by the leader's maximal utility",
                lp.name
            )))
        }
    }
    debug_assert_eq!(verify_optimality(lp, &sol), Ok(()));
    let scheme = extract_scheme(layout, prior, &sol.assignment)?;
    let certificate = ic_slacks(lp, &sol.assignment);
    debug_assert!(certificate.iter().all(|c| !c.slack.is_negative()));
    Ok((sol.objective_value, scheme, certificate))
}

fn joint_play_out(game: &NormalFormGame, dist: &[Rational]) -> FollowerPlayOut {
    FollowerPlayOut::Joint {
        distribution: dist
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (game.profile_key(&game.profile_at(p)), w.clone()))
            .collect(),
    }
}

/// Optimal mixed signaling: one obedience LP over joint distributions.
pub fn solve_signaling_mixed(game: &NormalFormGame, opts: &SolveOptions) -> Result<Solved> {
    if game.players() < 2 {
        return Err(Error::validation("signaling requires at least 2 players"));
    }
    guard_size(1, game.profile_count())?;
    let prior = vec![Rational::one()];
    let u_leader = |_t: usize, p: usize| game.utility(0, p).clone();
    let u_follower = |i: usize, p: usize| game.utility(i, p).clone();
    let (lp, layout) = build_signaling_lp(
        "signal".to_string(),
        game.actions(),
        None,
        &prior,
        &u_leader,
        &u_follower,
        opts,
    );
    let (value, scheme, certificate) = solve_prepared(&lp, &layout, &prior)?;
    Ok(Solved {
        report: ReportOut {
            setting: "sig-mixed".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Signaling(scheme_to_commitment_out(
                game.actions(),
                None,
                &scheme,
            )),
            follower_play: joint_play_out(game, &scheme.distribution[0]),
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps: if opts.dump_lps { vec![lp.dump()] } else { Vec::new() },
    })
}

/// Optimal signaling with a pure leader action: one obedience LP per leader
/// action, the distribution's leader coordinate pinned; ties resolve to the
/// lowest leader action index.
pub fn solve_signaling_pure(game: &NormalFormGame, opts: &SolveOptions) -> Result<Solved> {
    if game.players() < 2 {
        return Err(Error::validation("signaling requires at least 2 players"));
    }
    guard_size(1, game.profile_count())?;
    let prior = vec![Rational::one()];
    let u_leader = |_t: usize, p: usize| game.utility(0, p).clone();
    let u_follower = |i: usize, p: usize| game.utility(i, p).clone();

    let prepared: Vec<(LinearProgram, Layout)> = (0..game.action_count(0))
        .map(|a1| {
            let (mut lp, layout) = build_signaling_lp(
                format!("signal({})", game.action_label(0, a1)),
                game.actions(),
                None,
                &prior,
                &u_leader,
                &u_follower,
                opts,
            );
            let mut coeffs = vec![Rational::zero(); lp.variables.len()];
            for p in 0..layout.profile_count {
                if layout.coordinate(p, 0) == a1 {
                    coeffs[layout.p_var(0, p)] = Rational::one();
                }
            }
            lp.constrain(
                format!("onpath:{}", game.action_label(0, a1)),
                coeffs,
                Relation::Eq,
                Rational::one(),
            );
            (lp, layout)
        })
        .collect();

    let solved: Vec<(Rational, SignalingScheme, Vec<CertificateEntry>)> = prepared
        .par_iter()
        .map(|(lp, layout)| solve_prepared(lp, layout, &prior))
        .collect::<Result<_>>()?;

    let mut best: Option<(usize, &Rational)> = None;
    for (a1, (value, ..)) in solved.iter().enumerate() {
        if best.map(|(_, bv)| value > bv).unwrap_or(true) {
            best = Some((a1, value));
        }
    }
    let (a1_star, _) = best.expect("leader has at least one action");
    let (value, scheme, certificate) = solved[a1_star].clone();
    Ok(Solved {
        report: ReportOut {
            setting: "sig-pure".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Signaling(scheme_to_commitment_out(
                game.actions(),
                None,
                &scheme,
            )),
            follower_play: joint_play_out(game, &scheme.distribution[0]),
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps: if opts.dump_lps {
            prepared.iter().map(|(lp, _)| lp.dump()).collect()
        } else {
            Vec::new()
        },
    })
}

/// Optimal mixed signaling with leader types: per-type distributions, the
/// followers' obedience taken in expectation over the prior.
pub fn solve_signaling_leader_types(game: &BayesianGame, opts: &SolveOptions) -> Result<Solved> {
    if game.players() < 2 {
        return Err(Error::validation("signaling requires at least 2 players"));
    }
    for i in 1..game.players() {
        if game.type_count(i) != 1 {
            return Err(Error::validation(format!(
                "leader-types signaling requires single-typed followers; player {} has {} types",
                i + 1,
                game.type_count(i)
            )));
        }
    }
    guard_size(game.type_count(0), game.profile_count())?;
    let prior = game.prior(0).to_vec();
    let type_labels = game.types()[0].clone();
    let u_leader = |t: usize, p: usize| game.utility(0, t, p).clone();
    let u_follower = |i: usize, p: usize| game.utility(i, 0, p).clone();
    let (lp, layout) = build_signaling_lp(
        "signal-types".to_string(),
        game.actions(),
        Some(&type_labels),
        &prior,
        &u_leader,
        &u_follower,
        opts,
    );
    let (value, scheme, certificate) = solve_prepared(&lp, &layout, &prior)?;

    // Ex-ante recommendation distribution for the play record.
    let mut joint = BTreeMap::new();
    for p in 0..layout.profile_count {
        let mut w = Rational::zero();
        for (t, pi) in prior.iter().enumerate() {
            w += pi * &scheme.distribution[t][p];
        }
        if !w.is_zero() {
            joint.insert(game.profile_key(&profile_of(p, &layout.counts)), w);
        }
    }
    Ok(Solved {
        report: ReportOut {
            setting: "sig-leader-types".to_string(),
            bound: BOUND_EXACT.to_string(),
            value,
            step: None,
            cap: None,
            commitment: CommitmentOut::Signaling(scheme_to_commitment_out(
                game.actions(),
                Some(&type_labels),
                &scheme,
            )),
            follower_play: FollowerPlayOut::Joint { distribution: joint },
            certificate,
            sequential_plan: None,
            inner_commitment: None,
            completeness: None,
        },
        lp_dumps: if opts.dump_lps { vec![lp.dump()] } else { Vec::new() },
    })
}

fn profile_of(index: usize, counts: &[usize]) -> Vec<usize> {
    let mut coords = vec![0usize; counts.len()];
    let mut rest = index;
    for i in (0..counts.len()).rev() {
        coords[i] = rest % counts[i];
        rest /= counts[i];
    }
    coords
}

/// Conditional obedience slacks of a scheme: for every recommended action
/// and every deviation, the follower's conditional gain from obedience plus
/// the payment. Also flags positive payments on never-recommended actions.
pub struct IcReport {
    pub entries: Vec<CertificateEntry>,
    pub pass: bool,
}

pub fn check_incentive_compatibility(
    actions: &[Vec<String>],
    u_follower: &dyn Fn(usize, usize) -> Rational,
    scheme: &SignalingScheme,
) -> Result<IcReport> {
    let players = actions.len();
    let counts: Vec<usize> = actions.iter().map(|a| a.len()).collect();
    let profile_count: usize = counts.iter().product();
    if scheme.prior.len() != scheme.distribution.len() {
        return Err(Error::validation("scheme prior and distribution sizes differ"));
    }
    for d in &scheme.distribution {
        if d.len() != profile_count {
            return Err(Error::validation(format!(
                "distribution covers {} profiles, game has {profile_count}",
                d.len()
            )));
        }
        if d.iter().any(|w| w.is_negative()) {
            return Err(Error::validation("distribution has a negative entry"));
        }
        let total: Rational = d.iter().sum();
        if total != Rational::one() {
            return Err(Error::validation(format!("distribution sums to {total}, not 1")));
        }
    }
    if scheme.payments.len() != players - 1 {
        return Err(Error::validation(format!(
            "payments cover {} followers, game has {}",
            scheme.payments.len(),
            players - 1
        )));
    }

    let mut entries = Vec::new();
    let mut pass = true;
    for f in 0..players - 1 {
        let i = f + 1;
        for a in 0..counts[i] {
            let mut marginal = Rational::zero();
            for (t, pi) in scheme.prior.iter().enumerate() {
                for p in 0..profile_count {
                    if coordinate_of(p, &counts, i) == a {
                        marginal += pi * &scheme.distribution[t][p];
                    }
                }
            }
            let pay = scheme.payments[f].get(&a);
            if marginal.is_zero() {
                if let Some(pay) = pay {
                    if pay.is_positive() {
                        pass = false;
                        entries.push(CertificateEntry {
                            id: format!("pay:{}:{}", f + 2, actions[i][a]),
                            slack: -pay,
                        });
                    }
                }
                continue;
            }
            for a2 in 0..counts[i] {
                if a2 == a {
                    continue;
                }
                let mut gain = Rational::zero();
                for (t, pi) in scheme.prior.iter().enumerate() {
                    if pi.is_zero() {
                        continue;
                    }
                    for p in 0..profile_count {
                        if coordinate_of(p, &counts, i) != a {
                            continue;
                        }
                        let q = with_coordinate_of(p, &counts, i, a2);
                        let w = pi * &scheme.distribution[t][p];
                        if !w.is_zero() {
                            gain += &w * &(&u_follower(i, p) - &u_follower(i, q));
                        }
                    }
                }
                let mut slack = &gain / &marginal;
                if let Some(pay) = pay {
                    slack += pay;
                }
                if slack.is_negative() {
                    pass = false;
                }
                entries.push(CertificateEntry {
                    id: format!("ic:{}:{}:{}", f + 2, actions[i][a], actions[i][a2]),
                    slack,
                });
            }
        }
    }
    Ok(IcReport { entries, pass })
}

fn with_coordinate_of(profile: usize, counts: &[usize], player: usize, action: usize) -> usize {
    let mut coords = profile_of(profile, counts);
    coords[player] = action;
    let mut idx = 0;
    for i in 0..counts.len() {
        idx = idx * counts[i] + coords[i];
    }
    idx
}

/// Resolve a reported signaling commitment against a normal-form game.
pub fn scheme_from_report(
    game: &NormalFormGame,
    out: &SignalingCommitmentOut,
) -> Result<SignalingScheme> {
    let DistributionOut::Plain(map) = &out.distribution else {
        return Err(Error::validation(
            "per-type distribution supplied for a game without leader types",
        ));
    };
    let mut dist = vec![Rational::zero(); game.profile_count()];
    for (key, w) in map {
        let profile = game.parse_profile_key(key).map_err(Error::validation)?;
        dist[game.profile_index(&profile)] = w.clone();
    }
    let payments = payments_from_report(game.actions(), &out.payments)?;
    Ok(SignalingScheme {
        distribution: vec![dist],
        prior: vec![Rational::one()],
        payments,
    })
}

/// Resolve a reported signaling commitment against a Bayesian leader-types
/// game.
pub fn scheme_from_report_typed(
    game: &BayesianGame,
    out: &SignalingCommitmentOut,
) -> Result<SignalingScheme> {
    let DistributionOut::PerType(per_type) = &out.distribution else {
        return Err(Error::validation("expected a per-leader-type distribution"));
    };
    let counts: Vec<usize> = game.actions().iter().map(|a| a.len()).collect();
    let mut distribution = Vec::with_capacity(game.type_count(0));
    for t in 0..game.type_count(0) {
        let label = game.type_label(0, t);
        let Some(map) = per_type.get(label) else {
            return Err(Error::validation(format!("distribution missing leader type {label:?}")));
        };
        let mut dist = vec![Rational::zero(); game.profile_count()];
        for (key, w) in map {
            let parts: Vec<&str> = key.split('|').collect();
            if parts.len() != counts.len() {
                return Err(Error::validation(format!(
                    "profile key {key:?} names {} actions for {} players",
                    parts.len(),
                    counts.len()
                )));
            }
            let mut profile = Vec::with_capacity(counts.len());
            for (i, part) in parts.iter().enumerate() {
                let Some(a) = game.action_index(i, part) else {
                    return Err(Error::validation(format!(
                        "player {} has no action {part:?}",
                        i + 1
                    )));
                };
                profile.push(a);
            }
            dist[game.profile_index(&profile)] = w.clone();
        }
        distribution.push(dist);
    }
    let payments = payments_from_report(game.actions(), &out.payments)?;
    Ok(SignalingScheme { distribution, prior: game.prior(0).to_vec(), payments })
}

fn payments_from_report(
    actions: &[Vec<String>],
    out: &BTreeMap<String, BTreeMap<String, Rational>>,
) -> Result<Vec<BTreeMap<usize, Rational>>> {
    let players = actions.len();
    let mut payments = vec![BTreeMap::new(); players - 1];
    for (player_key, map) in out {
        let num: usize = player_key
            .parse()
            .map_err(|_| Error::validation(format!("bad player number {player_key:?}")))?;
        if num < 2 || num > players {
            return Err(Error::validation(format!("player number {num} out of range")));
        }
        for (label, v) in map {
            let Some(a) = actions[num - 1].iter().position(|l| l == label) else {
                return Err(Error::validation(format!("player {num} has no action {label:?}")));
            };
            if v.is_negative() {
                return Err(Error::validation(format!(
                    "negative payment {v} for player {num} action {label:?}"
                )));
            }
            payments[num - 2].insert(a, v.clone());
        }
    }
    Ok(payments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::example_game;

    #[test]
    fn signaling_at_least_matches_mixed_commitment() {
        let game = example_game();
        let opts = SolveOptions::default();
        let sig = solve_signaling_mixed(&game, &opts).unwrap();
        let mixed = crate::solvers::commit::solve_two_player_mixed(&game, &opts).unwrap();
        assert!(sig.report.value >= mixed.report.value);
        // The reported scheme must pass its own obedience check.
        let CommitmentOut::Signaling(out) = &sig.report.commitment else { panic!() };
        let scheme = scheme_from_report(&game, out).unwrap();
        let u2 = |i: usize, p: usize| game.utility(i, p).clone();
        let ic = check_incentive_compatibility(game.actions(), &u2, &scheme).unwrap();
        assert!(ic.pass, "{:?}", ic.entries);
        let u1 = |_t: usize, p: usize| game.utility(0, p).clone();
        let counts: Vec<usize> = game.actions().iter().map(|a| a.len()).collect();
        assert_eq!(scheme_value(&scheme, &counts, &u1), sig.report.value);
    }

    #[test]
    fn pure_signaling_is_weakly_worse_than_mixed_signaling() {
        let game = example_game();
        let opts = SolveOptions::default();
        let mixed = solve_signaling_mixed(&game, &opts).unwrap();
        let pure = solve_signaling_pure(&game, &opts).unwrap();
        assert!(pure.report.value <= mixed.report.value);
    }

    #[test]
    fn single_type_signaling_degenerates() {
        let game = example_game();
        let bayes = crate::game::BayesianGame::from_normal_form(&game);
        let opts = SolveOptions::default();
        let typed = solve_signaling_leader_types(&bayes, &opts).unwrap();
        let plain = solve_signaling_mixed(&game, &opts).unwrap();
        assert_eq!(typed.report.value, plain.report.value);
    }

    #[test]
    fn no_payment_signaling_is_weaker_or_equal() {
        let game = example_game();
        let with = solve_signaling_mixed(&game, &SolveOptions::default()).unwrap();
        let without = solve_signaling_mixed(
            &game,
            &SolveOptions { payments: false, ..SolveOptions::default() },
        )
        .unwrap();
        assert!(without.report.value <= with.report.value);
        let CommitmentOut::Signaling(out) = &without.report.commitment else { panic!() };
        for (_, per_action) in &out.payments {
            assert!(per_action.values().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn never_recommended_actions_are_absent() {
        let game = example_game();
        let solved = solve_signaling_mixed(&game, &SolveOptions::default()).unwrap();
        let CommitmentOut::Signaling(out) = &solved.report.commitment else { panic!() };
        let DistributionOut::Plain(dist) = &out.distribution else { panic!() };
        let recommended: std::collections::BTreeSet<&str> =
            dist.keys().map(|k| k.split('|').nth(1).unwrap()).collect();
        if let Some(p2) = out.payments.get("2") {
            for action in p2.keys() {
                assert!(recommended.contains(action.as_str()), "{action} never recommended");
            }
        }
    }
}
