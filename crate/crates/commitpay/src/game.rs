//! Game representations and commitment primitives.
//!
//! Player 1 is the leader throughout; players 2..n are followers. Action
//! profiles are indexed row-major with player 1 most significant, and all
//! utilities are exact rationals. Values are immutable after construction:
//! every operation returns new objects.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::BTreeMap;

/// Finite normal-form game. `utilities[p][i]` is player `i`'s utility at the
/// action profile with row-major index `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormGame {
    actions: Vec<Vec<String>>,
    utilities: Vec<Vec<Rational>>,
    metadata: BTreeMap<String, String>,
}

pub(crate) fn check_labels(what: &str, owner: usize, labels: &[String], issues: &mut Vec<String>) {
    if labels.is_empty() {
        issues.push(format!("player {}: empty {} set", owner + 1, what));
    }
    let mut seen = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            issues.push(format!("player {}: empty {} label at position {}", owner + 1, what, i));
        }
        if l.contains('|') {
            issues.push(format!(
                "player {}: {} label {:?} contains '|', which is reserved as the profile separator",
                owner + 1,
                what,
                l
            ));
        }
        if let Some(prev) = seen.insert(l.clone(), i) {
            issues.push(format!(
                "player {}: duplicate {} label {:?} (positions {} and {})",
                owner + 1,
                what,
                l,
                prev,
                i
            ));
        }
    }
}

impl NormalFormGame {
    /// Validates everything and reports all violations, not just the first.
    pub fn new(actions: Vec<Vec<String>>, utilities: Vec<Vec<Rational>>) -> Result<Self> {
        Self::with_metadata(actions, utilities, BTreeMap::new())
    }

    pub fn with_metadata(
        actions: Vec<Vec<String>>,
        utilities: Vec<Vec<Rational>>,
        metadata: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut issues = Vec::new();
        if actions.is_empty() {
            issues.push("game must have at least 1 player".to_string());
        }
        for (i, set) in actions.iter().enumerate() {
            check_labels("action", i, set, &mut issues);
        }
        let players = actions.len();
        let profile_count: usize = actions.iter().map(|a| a.len().max(1)).product();
        if actions.iter().all(|a| !a.is_empty()) {
            if utilities.len() != profile_count {
                issues.push(format!(
                    "utilities cover {} profiles but the action sets define {}",
                    utilities.len(),
                    profile_count
                ));
            }
            for (p, row) in utilities.iter().enumerate() {
                if row.len() != players {
                    issues.push(format!(
                        "profile index {}: {} utility entries for {} players",
                        p,
                        row.len(),
                        players
                    ));
                }
            }
        }
        if issues.is_empty() {
            Ok(NormalFormGame { actions, utilities, metadata })
        } else {
            Err(Error::Validation { issues })
        }
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn action_labels(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn action_label(&self, player: usize, action: usize) -> &str {
        &self.actions[player][action]
    }

    pub fn action_index(&self, player: usize, label: &str) -> Option<usize> {
        self.actions[player].iter().position(|l| l == label)
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn profile_count(&self) -> usize {
        self.actions.iter().map(|a| a.len()).product()
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.players());
        let mut idx = 0usize;
        for (player, &a) in profile.iter().enumerate() {
            debug_assert!(a < self.action_count(player));
            idx = idx * self.action_count(player) + a;
        }
        idx
    }

    pub fn profile_at(&self, mut index: usize) -> Vec<usize> {
        let mut profile = vec![0usize; self.players()];
        for player in (0..self.players()).rev() {
            let n = self.action_count(player);
            profile[player] = index % n;
            index /= n;
        }
        profile
    }

    /// All action profiles in row-major index order.
    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.profile_count()).map(|i| self.profile_at(i))
    }

    pub fn utility(&self, player: usize, profile_index: usize) -> &Rational {
        &self.utilities[profile_index][player]
    }

    pub fn utility_at(&self, player: usize, profile: &[usize]) -> &Rational {
        self.utility(player, self.profile_index(profile))
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn profile_key(&self, profile: &[usize]) -> String {
        profile
            .iter()
            .enumerate()
            .map(|(player, &a)| self.actions[player][a].clone())
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn parse_profile_key(&self, key: &str) -> std::result::Result<Vec<usize>, String> {
        let parts: Vec<&str> = key.split('|').collect();
        if parts.len() != self.players() {
            return Err(format!(
                "profile key {:?} names {} actions for {} players",
                key,
                parts.len(),
                self.players()
            ));
        }
        parts
            .iter()
            .enumerate()
            .map(|(player, label)| {
                self.action_index(player, label).ok_or_else(|| {
                    format!("profile key {:?}: player {} has no action {:?}", key, player + 1, label)
                })
            })
            .collect()
    }

    pub fn utility_min(&self, player: usize) -> Rational {
        self.utilities.iter().map(|row| row[player].clone()).min().expect("nonempty game")
    }

    pub fn utility_max(&self, player: usize) -> Rational {
        self.utilities.iter().map(|row| row[player].clone()).max().expect("nonempty game")
    }

    /// max u_i - min u_i.
    pub fn utility_range(&self, player: usize) -> Rational {
        self.utility_max(player) - self.utility_min(player)
    }
}

/// Bayesian game: per-player type sets with independent priors. Utilities
/// depend on a player's own type only: `utilities[i][t][p]` is player `i`'s
/// utility with own type `t` at action profile `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BayesianGame {
    actions: Vec<Vec<String>>,
    types: Vec<Vec<String>>,
    prior: Vec<Vec<Rational>>,
    utilities: Vec<Vec<Vec<Rational>>>,
    metadata: BTreeMap<String, String>,
}

impl BayesianGame {
    pub fn new(
        actions: Vec<Vec<String>>,
        types: Vec<Vec<String>>,
        prior: Vec<Vec<Rational>>,
        utilities: Vec<Vec<Vec<Rational>>>,
        metadata: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut issues = Vec::new();
        if actions.is_empty() {
            issues.push("game must have at least 1 player".to_string());
        }
        for (i, set) in actions.iter().enumerate() {
            check_labels("action", i, set, &mut issues);
        }
        let players = actions.len();
        if types.len() != players {
            issues.push(format!("{} type sets for {} players", types.len(), players));
        }
        if prior.len() != players {
            issues.push(format!("{} prior distributions for {} players", prior.len(), players));
        }
        for (i, set) in types.iter().enumerate() {
            check_labels("type", i, set, &mut issues);
        }
        for (i, dist) in prior.iter().enumerate() {
            if types.get(i).map(|t| t.len()) != Some(dist.len()) {
                issues.push(format!(
                    "player {}: prior has {} entries for {} types",
                    i + 1,
                    dist.len(),
                    types.get(i).map(|t| t.len()).unwrap_or(0)
                ));
                continue;
            }
            if dist.iter().any(|p| p.is_negative()) {
                issues.push(format!("player {}: prior has a negative entry", i + 1));
            }
            let total: Rational = dist.iter().sum();
            if total != Rational::one() {
                issues.push(format!("player {}: prior sums to {}, not 1", i + 1, total));
            }
        }
        let profile_count: usize = actions.iter().map(|a| a.len().max(1)).product();
        if utilities.len() != players {
            issues.push(format!("{} utility tables for {} players", utilities.len(), players));
        } else {
            for (i, per_type) in utilities.iter().enumerate() {
                if types.get(i).map(|t| t.len()) != Some(per_type.len()) {
                    issues.push(format!(
                        "player {}: utilities cover {} types, expected {}",
                        i + 1,
                        per_type.len(),
                        types.get(i).map(|t| t.len()).unwrap_or(0)
                    ));
                    continue;
                }
                for (t, table) in per_type.iter().enumerate() {
                    if table.len() != profile_count {
                        issues.push(format!(
                            "player {} type {}: utilities cover {} profiles, expected {}",
                            i + 1,
                            t,
                            table.len(),
                            profile_count
                        ));
                    }
                }
            }
        }
        if issues.is_empty() {
            Ok(BayesianGame { actions, types, prior, utilities, metadata })
        } else {
            Err(Error::Validation { issues })
        }
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn action_label(&self, player: usize, action: usize) -> &str {
        &self.actions[player][action]
    }

    pub fn action_index(&self, player: usize, label: &str) -> Option<usize> {
        self.actions[player].iter().position(|l| l == label)
    }

    pub fn types(&self) -> &[Vec<String>] {
        &self.types
    }

    pub fn type_count(&self, player: usize) -> usize {
        self.types[player].len()
    }

    pub fn type_label(&self, player: usize, t: usize) -> &str {
        &self.types[player][t]
    }

    pub fn prior(&self, player: usize) -> &[Rational] {
        &self.prior[player]
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn profile_count(&self) -> usize {
        self.actions.iter().map(|a| a.len()).product()
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        let mut idx = 0usize;
        for (player, &a) in profile.iter().enumerate() {
            idx = idx * self.action_count(player) + a;
        }
        idx
    }

    pub fn profile_at(&self, mut index: usize) -> Vec<usize> {
        let mut profile = vec![0usize; self.players()];
        for player in (0..self.players()).rev() {
            let n = self.action_count(player);
            profile[player] = index % n;
            index /= n;
        }
        profile
    }

    pub fn profile_key(&self, profile: &[usize]) -> String {
        profile
            .iter()
            .enumerate()
            .map(|(player, &a)| self.actions[player][a].clone())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Player `i`'s utility with own type `t` at profile index `p`.
    pub fn utility(&self, player: usize, own_type: usize, profile_index: usize) -> &Rational {
        &self.utilities[player][own_type][profile_index]
    }

    /// A game where every player has exactly one type is an ordinary
    /// normal-form game.
    pub fn to_normal_form(&self) -> Option<NormalFormGame> {
        if self.types.iter().any(|t| t.len() != 1) {
            return None;
        }
        let utilities = (0..self.profile_count())
            .map(|p| (0..self.players()).map(|i| self.utilities[i][0][p].clone()).collect())
            .collect();
        Some(
            NormalFormGame::with_metadata(self.actions.clone(), utilities, self.metadata.clone())
                .expect("single-type projection of a valid game is valid"),
        )
    }

    pub fn from_normal_form(game: &NormalFormGame) -> Self {
        let players = game.players();
        let utilities = (0..players)
            .map(|i| vec![(0..game.profile_count()).map(|p| game.utility(i, p).clone()).collect()])
            .collect();
        BayesianGame {
            actions: game.actions().to_vec(),
            types: (0..players).map(|_| vec!["t".to_string()]).collect(),
            prior: (0..players).map(|_| vec![Rational::one()]).collect(),
            utilities,
            metadata: game.metadata().clone(),
        }
    }
}

/// Leader payment schedule. All amounts are validated nonnegative at
/// construction; the leader never charges followers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaymentFunction {
    /// `values[p][f]` pays follower `f` (player `f+2` in 1-based terms) when
    /// the full action profile with index `p` is realized.
    OutcomeConditional(Vec<Vec<Rational>>),
    /// `values[f]` maps follower `f`'s own action to the payment made when
    /// that follower plays it (used by signaling schemes, where it reads
    /// "paid on following the recommendation"). Absent actions pay nothing
    /// and are reported as absent, not zero.
    RecommendationConditional(Vec<BTreeMap<usize, Rational>>),
    /// Two-player games only: payment depends on the follower's action.
    FollowerActionOnly(Vec<Rational>),
}

impl PaymentFunction {
    pub fn outcome_conditional(values: Vec<Vec<Rational>>) -> Result<Self> {
        for row in &values {
            for v in row {
                if v.is_negative() {
                    return Err(Error::validation(format!(
                        "outcome-conditional payment {} is negative",
                        v
                    )));
                }
            }
        }
        Ok(PaymentFunction::OutcomeConditional(values))
    }

    pub fn recommendation_conditional(values: Vec<BTreeMap<usize, Rational>>) -> Result<Self> {
        for map in &values {
            for v in map.values() {
                if v.is_negative() {
                    return Err(Error::validation(format!(
                        "recommendation-conditional payment {} is negative",
                        v
                    )));
                }
            }
        }
        Ok(PaymentFunction::RecommendationConditional(values))
    }

    pub fn follower_action_only(values: Vec<Rational>) -> Result<Self> {
        for v in &values {
            if v.is_negative() {
                return Err(Error::validation(format!(
                    "follower-action payment {} is negative",
                    v
                )));
            }
        }
        Ok(PaymentFunction::FollowerActionOnly(values))
    }

    pub fn zero(game: &NormalFormGame) -> Self {
        PaymentFunction::OutcomeConditional(vec![
            vec![Rational::zero(); game.players() - 1];
            game.profile_count()
        ])
    }

    /// Payment to follower `f` (0-based among followers) at full profile
    /// `profile` of `game`.
    pub fn at(&self, game: &NormalFormGame, profile: &[usize], follower: usize) -> Rational {
        match self {
            PaymentFunction::OutcomeConditional(values) => {
                values[game.profile_index(profile)][follower].clone()
            }
            PaymentFunction::RecommendationConditional(values) => values[follower]
                .get(&profile[follower + 1])
                .cloned()
                .unwrap_or_else(Rational::zero),
            PaymentFunction::FollowerActionOnly(values) => {
                debug_assert_eq!(game.players(), 2);
                debug_assert_eq!(follower, 0);
                values[profile[1]].clone()
            }
        }
    }

    /// Dimension/shape check against a game; `at` assumes this passed.
    pub fn validate_against(&self, game: &NormalFormGame) -> Result<()> {
        let mut issues = Vec::new();
        let followers = game.players() - 1;
        match self {
            PaymentFunction::OutcomeConditional(values) => {
                if values.len() != game.profile_count() {
                    issues.push(format!(
                        "payments cover {} profiles, game has {}",
                        values.len(),
                        game.profile_count()
                    ));
                }
                for (p, row) in values.iter().enumerate() {
                    if row.len() != followers {
                        issues.push(format!(
                            "profile index {}: {} payment entries for {} followers",
                            p,
                            row.len(),
                            followers
                        ));
                    }
                }
            }
            PaymentFunction::RecommendationConditional(values) => {
                if values.len() != followers {
                    issues.push(format!(
                        "payments cover {} followers, game has {}",
                        values.len(),
                        followers
                    ));
                }
                for (f, map) in values.iter().enumerate() {
                    for a in map.keys() {
                        if *a >= game.action_count(f + 1) {
                            issues.push(format!(
                                "follower {} payment references action index {} out of range",
                                f + 2,
                                a
                            ));
                        }
                    }
                }
            }
            PaymentFunction::FollowerActionOnly(values) => {
                if game.players() != 2 {
                    issues.push(format!(
                        "follower-action-only payments require 2 players, game has {}",
                        game.players()
                    ));
                } else if values.len() != game.action_count(1) {
                    issues.push(format!(
                        "payments cover {} follower actions, game has {}",
                        values.len(),
                        game.action_count(1)
                    ));
                }
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation { issues })
        }
    }
}

/// Leader strategy component of a commitment. Typed variants index the
/// leader's type set of a Bayesian game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    PureAction(usize),
    Mixture(Vec<Rational>),
    TypedPure(Vec<usize>),
    TypedMixture(Vec<Vec<Rational>>),
}

impl Strategy {
    /// Leader distribution over own actions for a normal-form commitment.
    pub fn distribution(&self, leader_actions: usize) -> Result<Vec<Rational>> {
        match self {
            Strategy::PureAction(a) => {
                if *a >= leader_actions {
                    return Err(Error::validation(format!(
                        "leader action index {} out of range ({} actions)",
                        a, leader_actions
                    )));
                }
                let mut d = vec![Rational::zero(); leader_actions];
                d[*a] = Rational::one();
                Ok(d)
            }
            Strategy::Mixture(d) => {
                validate_distribution("leader mixture", d, leader_actions)?;
                Ok(d.clone())
            }
            _ => Err(Error::validation(
                "typed leader strategy supplied for a game without leader types",
            )),
        }
    }
}

pub(crate) fn validate_distribution(what: &str, d: &[Rational], len: usize) -> Result<()> {
    let mut issues = Vec::new();
    if d.len() != len {
        issues.push(format!("{what}: {} entries for {} actions", d.len(), len));
    }
    if d.iter().any(|p| p.is_negative()) {
        issues.push(format!("{what}: negative probability"));
    }
    let total: Rational = d.iter().sum();
    if total != Rational::one() {
        issues.push(format!("{what}: probabilities sum to {}, not 1", total));
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation { issues })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitment {
    pub strategy: Strategy,
    pub payments: PaymentFunction,
}

/// Realized follower behavior used to recompute leader values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FollowerPlay {
    /// Independent distribution per follower (players 2..n).
    Product(Vec<Vec<Rational>>),
    /// Joint distribution over full action profiles (signaling schemes).
    Joint(Vec<Rational>),
    /// Per-follower-type pure action (Bayesian follower games, n = 2).
    PerType(Vec<usize>),
}

/// The follower game induced by a leader commitment, together with the
/// leader's residual utility on follower profiles.
#[derive(Clone, Debug)]
pub struct InducedGame {
    pub followers: NormalFormGame,
    /// Leader's expected utility net of payments, indexed by follower
    /// profile (row-major over players 2..n).
    pub leader_residual: Vec<Rational>,
}

/// Collapse a leader commitment: followers face expected base utility plus
/// expected payment, the leader keeps expected utility minus total payments.
pub fn induce_game(game: &NormalFormGame, commitment: &Commitment) -> Result<InducedGame> {
    if game.players() < 2 {
        return Err(Error::validation("inducing a follower game requires at least 2 players"));
    }
    commitment.payments.validate_against(game)?;
    let sigma = commitment.strategy.distribution(game.action_count(0))?;
    let followers = game.players() - 1;
    let follower_actions: Vec<Vec<String>> = game.actions()[1..].to_vec();
    let follower_profile_count: usize = follower_actions.iter().map(|a| a.len()).product();

    let mut utilities = vec![vec![Rational::zero(); followers]; follower_profile_count];
    let mut residual = vec![Rational::zero(); follower_profile_count];
    let mut full = vec![0usize; game.players()];
    for fp in 0..follower_profile_count {
        // Decode the follower profile using the follower game's radices.
        let mut rest = fp;
        for f in (0..followers).rev() {
            let n = follower_actions[f].len();
            full[f + 1] = rest % n;
            rest /= n;
        }
        for (a1, w) in sigma.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            full[0] = a1;
            let pi = game.profile_index(&full);
            let mut paid = Rational::zero();
            for f in 0..followers {
                let pay = commitment.payments.at(game, &full, f);
                let v = &utilities[fp][f] + &(w * &(game.utility(f + 1, pi) + &pay));
                utilities[fp][f] = v;
                paid += pay;
            }
            let r = &residual[fp] + &(w * &(game.utility(0, pi) - &paid));
            residual[fp] = r;
        }
    }
    Ok(InducedGame {
        followers: NormalFormGame::new(follower_actions, utilities)?,
        leader_residual: residual,
    })
}

/// Exact leader value of a commitment against realized follower play.
pub fn evaluate_leader(
    game: &NormalFormGame,
    commitment: &Commitment,
    play: &FollowerPlay,
) -> Result<Rational> {
    commitment.payments.validate_against(game)?;
    match play {
        FollowerPlay::Product(dists) => {
            let sigma = commitment.strategy.distribution(game.action_count(0))?;
            if dists.len() != game.players() - 1 {
                return Err(Error::validation(format!(
                    "follower play covers {} followers, game has {}",
                    dists.len(),
                    game.players() - 1
                )));
            }
            for (f, d) in dists.iter().enumerate() {
                validate_distribution(
                    &format!("follower {} play", f + 2),
                    d,
                    game.action_count(f + 1),
                )?;
            }
            let mut value = Rational::zero();
            for profile in game.profiles() {
                let mut w = sigma[profile[0]].clone();
                if w.is_zero() {
                    continue;
                }
                for (f, d) in dists.iter().enumerate() {
                    w = w * &d[profile[f + 1]];
                    if w.is_zero() {
                        break;
                    }
                }
                if w.is_zero() {
                    continue;
                }
                let pi = game.profile_index(&profile);
                let mut net = game.utility(0, pi).clone();
                for f in 0..game.players() - 1 {
                    net = net - commitment.payments.at(game, &profile, f);
                }
                value += w * net;
            }
            Ok(value)
        }
        FollowerPlay::Joint(dist) => {
            if dist.len() != game.profile_count() {
                return Err(Error::validation(format!(
                    "joint play covers {} profiles, game has {}",
                    dist.len(),
                    game.profile_count()
                )));
            }
            if dist.iter().any(|p| p.is_negative()) {
                return Err(Error::validation("joint play: negative probability"));
            }
            let total: Rational = dist.iter().sum();
            if total != Rational::one() {
                return Err(Error::validation(format!(
                    "joint play: probabilities sum to {}, not 1",
                    total
                )));
            }
            // When the commitment fixes a leader strategy, the joint play
            // must marginalize to it.
            if matches!(commitment.strategy, Strategy::PureAction(_) | Strategy::Mixture(_)) {
                let sigma = commitment.strategy.distribution(game.action_count(0))?;
                let mut marginal = vec![Rational::zero(); game.action_count(0)];
                for (p, w) in dist.iter().enumerate() {
                    marginal[game.profile_at(p)[0]] += w;
                }
                if marginal != sigma {
                    return Err(Error::validation(
                        "joint play is inconsistent with the committed leader strategy",
                    ));
                }
            }
            let mut value = Rational::zero();
            for (p, w) in dist.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let profile = game.profile_at(p);
                let mut net = game.utility(0, p).clone();
                for f in 0..game.players() - 1 {
                    net = net - commitment.payments.at(game, &profile, f);
                }
                value += w * net;
            }
            Ok(value)
        }
        FollowerPlay::PerType(_) => Err(Error::validation(
            "per-type follower play requires a Bayesian game; use evaluate_leader_bayesian",
        )),
    }
}

/// Leader value in a Bayesian game. Supports the two families the solvers
/// emit: typed leader strategies against a single-typed follower's play, and
/// untyped leader strategies against per-type follower play (n = 2).
pub fn evaluate_leader_bayesian(
    game: &BayesianGame,
    commitment: &Commitment,
    play: &FollowerPlay,
) -> Result<Rational> {
    if game.players() != 2 {
        return Err(Error::validation("Bayesian evaluation implemented for 2-player games"));
    }
    let pay = |b: usize| -> Result<Rational> {
        match &commitment.payments {
            PaymentFunction::FollowerActionOnly(v) => {
                if v.len() != game.action_count(1) {
                    Err(Error::validation("payment vector does not match follower action set"))
                } else {
                    Ok(v[b].clone())
                }
            }
            PaymentFunction::RecommendationConditional(v) => {
                if v.len() != 1 {
                    Err(Error::validation("expected payments for exactly one follower"))
                } else {
                    Ok(v[0].get(&b).cloned().unwrap_or_else(Rational::zero))
                }
            }
            PaymentFunction::OutcomeConditional(_) => Err(Error::validation(
                "outcome-conditional payments are not defined for Bayesian evaluation",
            )),
        }
    };
    match (&commitment.strategy, play) {
        // Leader types: type-dependent strategy, single-typed follower.
        (Strategy::TypedPure(_) | Strategy::TypedMixture(_), FollowerPlay::Product(dists)) => {
            if game.type_count(1) != 1 {
                return Err(Error::validation(
                    "typed leader strategy requires a single-typed follower",
                ));
            }
            if dists.len() != 1 {
                return Err(Error::validation("expected play for exactly one follower"));
            }
            validate_distribution("follower play", &dists[0], game.action_count(1))?;
            let per_type: Vec<Vec<Rational>> = match &commitment.strategy {
                Strategy::TypedPure(choice) => {
                    if choice.len() != game.type_count(0) {
                        return Err(Error::validation(format!(
                            "typed strategy covers {} leader types, game has {}",
                            choice.len(),
                            game.type_count(0)
                        )));
                    }
                    choice
                        .iter()
                        .map(|&a| {
                            let mut d = vec![Rational::zero(); game.action_count(0)];
                            if a >= game.action_count(0) {
                                return Err(Error::validation("leader action index out of range"));
                            }
                            d[a] = Rational::one();
                            Ok(d)
                        })
                        .collect::<Result<_>>()?
                }
                Strategy::TypedMixture(ds) => {
                    if ds.len() != game.type_count(0) {
                        return Err(Error::validation(format!(
                            "typed strategy covers {} leader types, game has {}",
                            ds.len(),
                            game.type_count(0)
                        )));
                    }
                    for (t, d) in ds.iter().enumerate() {
                        validate_distribution(
                            &format!("leader type {} mixture", t),
                            d,
                            game.action_count(0),
                        )?;
                    }
                    ds.clone()
                }
                _ => unreachable!(),
            };
            let mut value = Rational::zero();
            for (t, sigma) in per_type.iter().enumerate() {
                let pt = &game.prior(0)[t];
                if pt.is_zero() {
                    continue;
                }
                let mut inner = Rational::zero();
                for (a, w) in sigma.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    for (b, q) in dists[0].iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        let pi = game.profile_index(&[a, b]);
                        inner += w * q * &(game.utility(0, t, pi) - &pay(b)?);
                    }
                }
                value += pt * &inner;
            }
            Ok(value)
        }
        // Follower types: untyped leader strategy, per-type pure follower
        // responses.
        (Strategy::PureAction(_) | Strategy::Mixture(_), FollowerPlay::PerType(choice)) => {
            if game.type_count(0) != 1 {
                return Err(Error::validation(
                    "per-type follower play requires a single-typed leader",
                ));
            }
            if choice.len() != game.type_count(1) {
                return Err(Error::validation(format!(
                    "follower play covers {} types, game has {}",
                    choice.len(),
                    game.type_count(1)
                )));
            }
            let sigma = commitment.strategy.distribution(game.action_count(0))?;
            let mut value = Rational::zero();
            for (t, &b) in choice.iter().enumerate() {
                if b >= game.action_count(1) {
                    return Err(Error::validation("follower action index out of range"));
                }
                let pt = &game.prior(1)[t];
                if pt.is_zero() {
                    continue;
                }
                let mut inner = -pay(b)?;
                for (a, w) in sigma.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    let pi = game.profile_index(&[a, b]);
                    inner += w * game.utility(0, 0, pi);
                }
                value += pt * &inner;
            }
            Ok(value)
        }
        _ => Err(Error::validation("unsupported strategy/play combination for Bayesian evaluation")),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::rat;

    /// Leader commits to a mixture over {Top, Bottom} against follower
    /// actions {Left, Middle, Right}; utility table from the worked example
    /// where a small payment on (Bottom, Left) swings the follower.
    pub(crate) fn example_game() -> NormalFormGame {
        let actions = vec![
            vec!["Top".to_string(), "Bottom".to_string()],
            vec!["Left".to_string(), "Middle".to_string(), "Right".to_string()],
        ];
        let u = |a: &str, b: &str| -> Vec<Rational> {
            match (a, b) {
                ("Top", "Left") => vec![rat("-1"), rat("0")],
                ("Top", "Middle") => vec![rat("-1"), rat("-2")],
                ("Top", "Right") => vec![rat("-1"), rat("0")],
                ("Bottom", "Left") => vec![rat("2"), rat("0")],
                ("Bottom", "Middle") => vec![rat("0"), rat("2")],
                ("Bottom", "Right") => vec![rat("0"), rat("1")],
                _ => unreachable!(),
            }
        };
        let mut utilities = Vec::new();
        for a in ["Top", "Bottom"] {
            for b in ["Left", "Middle", "Right"] {
                utilities.push(u(a, b));
            }
        }
        NormalFormGame::new(actions, utilities).unwrap()
    }

    fn example_commitment(game: &NormalFormGame) -> Commitment {
        let mut pay = vec![vec![Rational::zero()]; game.profile_count()];
        pay[game.profile_index(&[1, 0])][0] = rat("1");
        Commitment {
            strategy: Strategy::Mixture(vec![rat("1/3"), rat("2/3")]),
            payments: PaymentFunction::outcome_conditional(pay).unwrap(),
        }
    }

    #[test]
    fn induce_example_mixture_with_payment() {
        let game = example_game();
        let induced = induce_game(&game, &example_commitment(&game)).unwrap();
        // Follower is exactly indifferent across all three actions.
        for b in 0..3 {
            assert_eq!(*induced.followers.utility(0, b), rat("2/3"));
        }
        assert_eq!(induced.leader_residual, vec![rat("1/3"), rat("-1/3"), rat("-1/3")]);
    }

    #[test]
    fn induce_pure_zero_payment_is_row_selection() {
        let game = example_game();
        let commitment = Commitment {
            strategy: Strategy::PureAction(1),
            payments: PaymentFunction::zero(&game),
        };
        let induced = induce_game(&game, &commitment).unwrap();
        for b in 0..3 {
            assert_eq!(induced.followers.utility(0, b), game.utility_at(1, &[1, b]));
            assert_eq!(induced.leader_residual[b], *game.utility_at(0, &[1, b]));
        }
    }

    #[test]
    fn evaluate_example_value() {
        let game = example_game();
        let commitment = example_commitment(&game);
        let play = FollowerPlay::Product(vec![vec![rat("1"), rat("0"), rat("0")]]);
        assert_eq!(evaluate_leader(&game, &commitment, &play).unwrap(), rat("1/3"));
    }

    #[test]
    fn evaluate_rejects_bad_distribution() {
        let game = example_game();
        let commitment = example_commitment(&game);
        let play = FollowerPlay::Product(vec![vec![rat("1/2"), rat("0"), rat("0")]]);
        let err = evaluate_leader(&game, &commitment, &play).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn negative_payment_rejected() {
        assert!(PaymentFunction::follower_action_only(vec![rat("-1")]).is_err());
    }

    #[test]
    fn validation_collects_all_issues() {
        let actions = vec![
            vec!["a".to_string(), "a".to_string()],
            vec!["x|y".to_string()],
        ];
        let err = NormalFormGame::new(actions, vec![vec![rat("0")]; 2]).unwrap_err();
        match err {
            Error::Validation { issues } => {
                assert!(issues.iter().any(|i| i.contains("duplicate")));
                assert!(issues.iter().any(|i| i.contains("'|'")));
                assert!(issues.iter().any(|i| i.contains("utility entries")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
