//! Solve reports: the label-based JSON documents every solver and oracle
//! emits, plus converters back to internal index-based types so reports can
//! be re-verified ("self-verifying": the verify subcommands accept anything
//! the tool itself printed).
//!
//! All maps are BTreeMaps and all structs have fixed field order, so a
//! report serializes to canonical JSON: identical invocations produce
//! byte-identical output.

use crate::error::{Error, Result};
use crate::game::{
    BayesianGame, Commitment, FollowerPlay, NormalFormGame, PaymentFunction, Strategy,
};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StrategyOut {
    PureAction { action: String },
    Mixture { weights: BTreeMap<String, Rational> },
    /// Per leader-type pure action.
    TypedPure { actions: BTreeMap<String, String> },
    /// Per leader-type mixture.
    TypedMixture { weights: BTreeMap<String, BTreeMap<String, Rational>> },
    /// Payment-only commitments (the leader does not commit to a strategy).
    None,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PaymentsOut {
    /// Profile key -> one payment per follower (players 2..n in order).
    /// All-zero profiles are omitted.
    OutcomeConditional { values: BTreeMap<String, Vec<Rational>> },
    /// Player number ("2", "3", ...) -> own action -> payment for following
    /// the recommendation. Never-recommended actions are absent, not zero.
    RecommendationConditional { values: BTreeMap<String, BTreeMap<String, Rational>> },
    /// Two-player games: follower action -> payment. Zero entries omitted.
    FollowerActionOnly { values: BTreeMap<String, Rational> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StandardCommitmentOut {
    pub strategy: StrategyOut,
    pub payments: PaymentsOut,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum DistributionOut {
    /// Per-leader-type joint distributions over full action profiles.
    PerType(BTreeMap<String, BTreeMap<String, Rational>>),
    /// Joint distribution over full action profiles (keys "a1|a2|...").
    Plain(BTreeMap<String, Rational>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignalingCommitmentOut {
    pub distribution: DistributionOut,
    /// Player number -> recommended action -> payment (absent when never
    /// recommended).
    pub payments: BTreeMap<String, BTreeMap<String, Rational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CommitmentOut {
    Signaling(SignalingCommitmentOut),
    Standard(StandardCommitmentOut),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FollowerPlayOut {
    /// One strategy per follower (players 2..n in order).
    Product { strategies: Vec<BTreeMap<String, Rational>> },
    /// Joint distribution over full profiles (signaling recommendations).
    Joint { distribution: BTreeMap<String, Rational> },
    /// Follower-type label -> pure action (Bayesian follower games).
    PerType { actions: BTreeMap<String, String> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateEntry {
    pub id: String,
    pub slack: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TriggerOut {
    pub profile: String,
    pub payment: Rational,
}

/// Payment plan for the three-player sequential solver: on-path transfers
/// on the target outcome plus large off-path payments to player 3 that
/// deter player 2's deviations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct SequentialPlanOut {
    pub target: String,
    pub t12: Rational,
    pub t13: Rational,
    /// Player 2's minimal payment to player 3 on the target outcome.
    pub t23: Rational,
    pub big_m: Rational,
    pub triggers: Vec<TriggerOut>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ReportOut {
    pub setting: String,
    /// "exact" or "lower" (grid searches certify lower bounds only).
    pub bound: String,
    pub value: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<Rational>,
    pub commitment: CommitmentOut,
    pub follower_play: FollowerPlayOut,
    pub certificate: Vec<CertificateEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequential_plan: Option<SequentialPlanOut>,
    /// Player 2's own commitment in sequential approximation reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_commitment: Option<StandardCommitmentOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completeness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EquilibriumOut {
    pub strategies: Vec<BTreeMap<String, Rational>>,
    pub payoffs: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EquilibriumSetOut {
    pub setting: String,
    /// "complete" when every equilibrium is isolated and listed;
    /// "vertex-representatives-only" when degenerate continua were reduced
    /// to their polytope vertices.
    pub completeness: String,
    pub equilibria: Vec<EquilibriumOut>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyOut {
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slacks: Option<Vec<CertificateEntry>>,
}

pub const BOUND_EXACT: &str = "exact";
pub const BOUND_LOWER: &str = "lower";

// ---------------------------------------------------------------------
// Builders: internal -> report form.
// ---------------------------------------------------------------------

pub fn mixture_out(game_actions: &[String], weights: &[Rational]) -> BTreeMap<String, Rational> {
    game_actions
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(l, w)| (l.clone(), w.clone()))
        .collect()
}

pub fn strategy_out(game: &NormalFormGame, strategy: &Strategy) -> StrategyOut {
    match strategy {
        Strategy::PureAction(a) => StrategyOut::PureAction { action: game.action_label(0, *a).to_string() },
        Strategy::Mixture(w) => StrategyOut::Mixture { weights: mixture_out(game.action_labels(0), w) },
        _ => unreachable!("typed strategies belong to Bayesian games"),
    }
}

pub fn payments_out(game: &NormalFormGame, payments: &PaymentFunction) -> PaymentsOut {
    match payments {
        PaymentFunction::OutcomeConditional(values) => {
            let mut map = BTreeMap::new();
            for (p, row) in values.iter().enumerate() {
                if row.iter().all(|v| v.is_zero()) {
                    continue;
                }
                map.insert(game.profile_key(&game.profile_at(p)), row.clone());
            }
            PaymentsOut::OutcomeConditional { values: map }
        }
        PaymentFunction::RecommendationConditional(values) => {
            let mut map = BTreeMap::new();
            for (f, per_action) in values.iter().enumerate() {
                let inner: BTreeMap<String, Rational> = per_action
                    .iter()
                    .map(|(&a, v)| (game.action_label(f + 1, a).to_string(), v.clone()))
                    .collect();
                map.insert((f + 2).to_string(), inner);
            }
            PaymentsOut::RecommendationConditional { values: map }
        }
        PaymentFunction::FollowerActionOnly(values) => PaymentsOut::FollowerActionOnly {
            values: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(b, v)| (game.action_label(1, b).to_string(), v.clone()))
                .collect(),
        },
    }
}

pub fn product_play_out(game: &NormalFormGame, dists: &[Vec<Rational>]) -> FollowerPlayOut {
    FollowerPlayOut::Product {
        strategies: dists
            .iter()
            .enumerate()
            .map(|(f, d)| mixture_out(game.action_labels(f + 1), d))
            .collect(),
    }
}

pub fn pure_play_out(game: &NormalFormGame, actions: &[usize]) -> FollowerPlayOut {
    FollowerPlayOut::Product {
        strategies: actions
            .iter()
            .enumerate()
            .map(|(f, &a)| {
                let mut m = BTreeMap::new();
                m.insert(game.action_label(f + 1, a).to_string(), Rational::one());
                m
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------
// Converters: report form -> internal, resolved against a game.
// ---------------------------------------------------------------------

fn dist_from_map(
    what: &str,
    labels: &[String],
    map: &BTreeMap<String, Rational>,
) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); labels.len()];
    for (label, w) in map {
        let Some(i) = labels.iter().position(|l| l == label) else {
            return Err(Error::validation(format!("{what}: unknown action {label:?}")));
        };
        out[i] = w.clone();
    }
    Ok(out)
}

pub fn strategy_internal(game: &NormalFormGame, s: &StrategyOut) -> Result<Strategy> {
    match s {
        StrategyOut::PureAction { action } => game
            .action_index(0, action)
            .map(Strategy::PureAction)
            .ok_or_else(|| Error::validation(format!("unknown leader action {action:?}"))),
        StrategyOut::Mixture { weights } => Ok(Strategy::Mixture(dist_from_map(
            "leader mixture",
            &game.actions()[0],
            weights,
        )?)),
        StrategyOut::None => Err(Error::validation(
            "report carries a payment-only commitment with no leader strategy",
        )),
        _ => Err(Error::validation("typed strategy in a normal-form report")),
    }
}

pub fn strategy_internal_bayesian(game: &BayesianGame, s: &StrategyOut) -> Result<Strategy> {
    let type_labels = &game.types()[0];
    match s {
        StrategyOut::TypedPure { actions } => {
            let mut out = Vec::with_capacity(type_labels.len());
            for t in type_labels {
                let Some(label) = actions.get(t) else {
                    return Err(Error::validation(format!("typed strategy missing type {t:?}")));
                };
                let Some(a) = game.action_index(0, label) else {
                    return Err(Error::validation(format!("unknown leader action {label:?}")));
                };
                out.push(a);
            }
            Ok(Strategy::TypedPure(out))
        }
        StrategyOut::TypedMixture { weights } => {
            let mut out = Vec::with_capacity(type_labels.len());
            for t in type_labels {
                let Some(map) = weights.get(t) else {
                    return Err(Error::validation(format!("typed strategy missing type {t:?}")));
                };
                out.push(dist_from_map(
                    &format!("leader type {t} mixture"),
                    &game.actions()[0],
                    map,
                )?);
            }
            Ok(Strategy::TypedMixture(out))
        }
        StrategyOut::PureAction { action } => {
            // Untyped strategies are valid in Bayesian follower-type games.
            game.action_index(0, action)
                .map(Strategy::PureAction)
                .ok_or_else(|| Error::validation(format!("unknown leader action {action:?}")))
        }
        StrategyOut::Mixture { weights } => Ok(Strategy::Mixture(dist_from_map(
            "leader mixture",
            &game.actions()[0],
            weights,
        )?)),
        StrategyOut::None => Err(Error::validation(
            "report carries a payment-only commitment with no leader strategy",
        )),
    }
}

fn payments_internal_from_parts(
    actions: &[Vec<String>],
    profile_key_parse: impl Fn(&str) -> std::result::Result<Vec<usize>, String>,
    profile_index: impl Fn(&[usize]) -> usize,
    profile_count: usize,
    p: &PaymentsOut,
) -> Result<PaymentFunction> {
    let players = actions.len();
    match p {
        PaymentsOut::OutcomeConditional { values } => {
            let mut tensor = vec![vec![Rational::zero(); players - 1]; profile_count];
            for (key, row) in values {
                let profile = profile_key_parse(key).map_err(Error::validation)?;
                if row.len() != players - 1 {
                    return Err(Error::validation(format!(
                        "payment row for {key:?} has {} entries for {} followers",
                        row.len(),
                        players - 1
                    )));
                }
                tensor[profile_index(&profile)] = row.clone();
            }
            PaymentFunction::outcome_conditional(tensor)
        }
        PaymentsOut::RecommendationConditional { values } => {
            let mut per_follower = vec![BTreeMap::new(); players - 1];
            for (player_key, map) in values {
                let num: usize = player_key
                    .parse()
                    .map_err(|_| Error::validation(format!("bad player number {player_key:?}")))?;
                if num < 2 || num > players {
                    return Err(Error::validation(format!("player number {num} out of range")));
                }
                let f = num - 2;
                for (label, v) in map {
                    let Some(a) = actions[f + 1].iter().position(|l| l == label) else {
                        return Err(Error::validation(format!(
                            "player {num} has no action {label:?}"
                        )));
                    };
                    per_follower[f].insert(a, v.clone());
                }
            }
            PaymentFunction::recommendation_conditional(per_follower)
        }
        PaymentsOut::FollowerActionOnly { values } => {
            if players != 2 {
                return Err(Error::validation(
                    "follower-action-only payments require a 2-player game",
                ));
            }
            let mut vec = vec![Rational::zero(); actions[1].len()];
            for (label, v) in values {
                let Some(a) = actions[1].iter().position(|l| l == label) else {
                    return Err(Error::validation(format!("follower has no action {label:?}")));
                };
                vec[a] = v.clone();
            }
            PaymentFunction::follower_action_only(vec)
        }
    }
}

pub fn payments_internal(game: &NormalFormGame, p: &PaymentsOut) -> Result<PaymentFunction> {
    payments_internal_from_parts(
        game.actions(),
        |k| game.parse_profile_key(k),
        |pr| game.profile_index(pr),
        game.profile_count(),
        p,
    )
}

pub fn payments_internal_bayesian(game: &BayesianGame, p: &PaymentsOut) -> Result<PaymentFunction> {
    let actions = game.actions().to_vec();
    let counts: Vec<usize> = actions.iter().map(|a| a.len()).collect();
    let parse = move |key: &str| -> std::result::Result<Vec<usize>, String> {
        let parts: Vec<&str> = key.split('|').collect();
        if parts.len() != actions.len() {
            return Err(format!("profile key {key:?} has {} parts", parts.len()));
        }
        parts
            .iter()
            .enumerate()
            .map(|(i, l)| {
                actions[i]
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| format!("player {} has no action {l:?}", i + 1))
            })
            .collect()
    };
    let counts2 = counts.clone();
    payments_internal_from_parts(
        game.actions(),
        parse,
        move |pr| {
            let mut idx = 0usize;
            for (i, &a) in pr.iter().enumerate() {
                idx = idx * counts2[i] + a;
            }
            idx
        },
        counts.iter().product(),
        p,
    )
}

pub fn commitment_internal(game: &NormalFormGame, c: &StandardCommitmentOut) -> Result<Commitment> {
    Ok(Commitment {
        strategy: strategy_internal(game, &c.strategy)?,
        payments: payments_internal(game, &c.payments)?,
    })
}

pub fn commitment_internal_bayesian(
    game: &BayesianGame,
    c: &StandardCommitmentOut,
) -> Result<Commitment> {
    Ok(Commitment {
        strategy: strategy_internal_bayesian(game, &c.strategy)?,
        payments: payments_internal_bayesian(game, &c.payments)?,
    })
}

pub fn follower_play_internal(game: &NormalFormGame, p: &FollowerPlayOut) -> Result<FollowerPlay> {
    match p {
        FollowerPlayOut::Product { strategies } => {
            if strategies.len() != game.players() - 1 {
                return Err(Error::validation(format!(
                    "follower play covers {} followers, game has {}",
                    strategies.len(),
                    game.players() - 1
                )));
            }
            let mut out = Vec::new();
            for (f, map) in strategies.iter().enumerate() {
                out.push(dist_from_map(
                    &format!("follower {} play", f + 2),
                    &game.actions()[f + 1],
                    map,
                )?);
            }
            Ok(FollowerPlay::Product(out))
        }
        FollowerPlayOut::Joint { distribution } => {
            let mut out = vec![Rational::zero(); game.profile_count()];
            for (key, w) in distribution {
                let profile = game.parse_profile_key(key).map_err(Error::validation)?;
                out[game.profile_index(&profile)] = w.clone();
            }
            Ok(FollowerPlay::Joint(out))
        }
        FollowerPlayOut::PerType { .. } => Err(Error::validation(
            "per-type follower play requires a Bayesian game",
        )),
    }
}

pub fn follower_play_internal_bayesian(
    game: &BayesianGame,
    p: &FollowerPlayOut,
) -> Result<FollowerPlay> {
    match p {
        FollowerPlayOut::PerType { actions } => {
            let mut out = Vec::with_capacity(game.type_count(1));
            for t in &game.types()[1] {
                let Some(label) = actions.get(t) else {
                    return Err(Error::validation(format!("follower play missing type {t:?}")));
                };
                let Some(b) = game.action_index(1, label) else {
                    return Err(Error::validation(format!("unknown follower action {label:?}")));
                };
                out.push(b);
            }
            Ok(FollowerPlay::PerType(out))
        }
        FollowerPlayOut::Product { strategies } => {
            if strategies.len() != 1 {
                return Err(Error::validation("expected play for exactly one follower"));
            }
            Ok(FollowerPlay::Product(vec![dist_from_map(
                "follower play",
                &game.actions()[1],
                &strategies[0],
            )?]))
        }
        FollowerPlayOut::Joint { .. } => {
            Err(Error::validation("joint play not supported for Bayesian games here"))
        }
    }
}
