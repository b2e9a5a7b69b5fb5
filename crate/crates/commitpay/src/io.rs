//! Game file schema and canonical JSON serialization.
//!
//! A game file is a JSON object:
//!
//! ```json
//! {
//!   "players": 2,
//!   "actions": [["Top", "Bottom"], ["Left", "Right"]],
//!   "utilities": { "Top|Left": ["1", "-1/2"], ... },
//!   "metadata": { "note": "optional string map" }
//! }
//! ```
//!
//! Bayesian games add `"types"` (one label list per player) and `"prior"`
//! (one distribution per player); utility keys then read
//! `"t1|...|tn|a1|...|an"`. Because utilities depend on a player's own type
//! only, entries must agree across the other players' types; disagreement is
//! reported per player and key.
//!
//! Canonical output is pretty-printed with sorted object keys and a trailing
//! newline, so identical documents serialize byte-identically.

use crate::error::{Error, Result};
use crate::game::{BayesianGame, NormalFormGame};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: usize,
    pub actions: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prior: Option<Vec<Vec<Rational>>>,
    pub utilities: BTreeMap<String, Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug)]
pub enum GameDoc {
    Normal(NormalFormGame),
    Bayesian(BayesianGame),
}

impl GameDoc {
    pub fn players(&self) -> usize {
        match self {
            GameDoc::Normal(g) => g.players(),
            GameDoc::Bayesian(g) => g.players(),
        }
    }

    pub fn as_normal(&self) -> Result<&NormalFormGame> {
        match self {
            GameDoc::Normal(g) => Ok(g),
            GameDoc::Bayesian(_) => {
                Err(Error::validation("this setting requires a game without type sets"))
            }
        }
    }

    pub fn as_bayesian(&self) -> Result<&BayesianGame> {
        match self {
            GameDoc::Bayesian(g) => Ok(g),
            GameDoc::Normal(_) => {
                Err(Error::validation("this setting requires a Bayesian game (types + prior)"))
            }
        }
    }
}

/// Serialize with sorted keys, two-space indentation, and a trailing
/// newline. All our maps are BTreeMaps, so key order is already sorted;
/// this is the single serialization entry point every command uses.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn parse_game_str(text: &str) -> Result<GameDoc> {
    let file: GameFile = serde_json::from_str(text)?;
    game_from_file(&file)
}

pub fn parse_game_path(path: &Path) -> Result<GameDoc> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display())))?;
    parse_game_str(&text).map_err(|e| match e {
        Error::Validation { mut issues } => {
            for issue in &mut issues {
                *issue = format!("{}: {issue}", path.display());
            }
            Error::Validation { issues }
        }
        other => other,
    })
}

pub fn game_from_file(file: &GameFile) -> Result<GameDoc> {
    match (&file.types, &file.prior) {
        (None, None) => parse_normal(file).map(GameDoc::Normal),
        (Some(_), Some(_)) => parse_bayesian(file).map(GameDoc::Bayesian),
        (Some(_), None) => Err(Error::validation("\"types\" given without \"prior\"")),
        (None, Some(_)) => Err(Error::validation("\"prior\" given without \"types\"")),
    }
}

pub fn game_to_file(doc: &GameDoc) -> GameFile {
    match doc {
        GameDoc::Normal(game) => {
            let mut utilities = BTreeMap::new();
            for p in 0..game.profile_count() {
                utilities.insert(
                    game.profile_key(&game.profile_at(p)),
                    (0..game.players()).map(|i| game.utility(i, p).clone()).collect(),
                );
            }
            GameFile {
                players: game.players(),
                actions: game.actions().to_vec(),
                types: None,
                prior: None,
                utilities,
                metadata: if game.metadata().is_empty() {
                    None
                } else {
                    Some(game.metadata().clone())
                },
            }
        }
        GameDoc::Bayesian(game) => {
            let mut utilities = BTreeMap::new();
            for tp in type_profiles(game.types()) {
                for p in 0..game.profile_count() {
                    let key = full_key(game, &tp, &game.profile_at(p));
                    let row = (0..game.players())
                        .map(|i| game.utility(i, tp[i], p).clone())
                        .collect();
                    utilities.insert(key, row);
                }
            }
            GameFile {
                players: game.players(),
                actions: game.actions().to_vec(),
                types: Some(game.types().to_vec()),
                prior: Some((0..game.players()).map(|i| game.prior(i).to_vec()).collect()),
                utilities,
                metadata: if game.metadata().is_empty() {
                    None
                } else {
                    Some(game.metadata().clone())
                },
            }
        }
    }
}

fn parse_normal(file: &GameFile) -> Result<NormalFormGame> {
    let mut issues = Vec::new();
    if file.players != file.actions.len() {
        issues.push(format!(
            "\"players\" is {} but \"actions\" lists {} players",
            file.players,
            file.actions.len()
        ));
    }
    // A zero-utility skeleton validates the label sets and provides key
    // parsing; utilities are filled in afterwards.
    let profile_count: usize = file.actions.iter().map(|a| a.len()).product();
    let skeleton = match NormalFormGame::new(
        file.actions.clone(),
        vec![vec![Rational::zero(); file.actions.len()]; profile_count],
    ) {
        Ok(g) => g,
        Err(Error::Validation { issues: label_issues }) => {
            issues.extend(label_issues);
            return Err(Error::Validation { issues });
        }
        Err(other) => return Err(other),
    };

    let mut utilities = vec![vec![Rational::zero(); file.actions.len()]; profile_count];
    let mut seen = vec![false; profile_count];
    for (key, row) in &file.utilities {
        let profile = match skeleton.parse_profile_key(key) {
            Ok(p) => p,
            Err(msg) => {
                issues.push(msg);
                continue;
            }
        };
        if row.len() != file.actions.len() {
            issues.push(format!(
                "utilities for {key:?} list {} payoffs for {} players",
                row.len(),
                file.actions.len()
            ));
            continue;
        }
        let idx = skeleton.profile_index(&profile);
        seen[idx] = true;
        utilities[idx] = row.clone();
    }
    for (idx, seen) in seen.iter().enumerate() {
        if !seen {
            issues
                .push(format!("missing utilities for {:?}", skeleton.profile_key(&skeleton.profile_at(idx))));
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation { issues });
    }
    let metadata = file.metadata.clone().unwrap_or_default();
    NormalFormGame::with_metadata(file.actions.clone(), utilities, metadata)
}

fn type_profiles(types: &[Vec<String>]) -> Vec<Vec<usize>> {
    let counts: Vec<usize> = types.iter().map(|t| t.len()).collect();
    let total: usize = counts.iter().product();
    (0..total)
        .map(|mut index| {
            let mut tp = vec![0usize; counts.len()];
            for i in (0..counts.len()).rev() {
                tp[i] = index % counts[i];
                index /= counts[i];
            }
            tp
        })
        .collect()
}

fn full_key(game: &BayesianGame, tp: &[usize], profile: &[usize]) -> String {
    let mut parts: Vec<&str> =
        tp.iter().enumerate().map(|(i, &t)| game.type_label(i, t)).collect();
    parts.extend(profile.iter().enumerate().map(|(i, &a)| game.action_label(i, a)));
    parts.join("|")
}

fn parse_bayesian(file: &GameFile) -> Result<BayesianGame> {
    let mut issues = Vec::new();
    if file.players != file.actions.len() {
        issues.push(format!(
            "\"players\" is {} but \"actions\" lists {} players",
            file.players,
            file.actions.len()
        ));
    }
    let types = file.types.as_ref().expect("checked by caller");
    let prior = file.prior.as_ref().expect("checked by caller");
    let players = file.actions.len();
    let profile_count: usize = file.actions.iter().map(|a| a.len()).product();

    // Validate the shape (labels, prior) with zero utilities first so key
    // parsing below can rely on a well-formed skeleton.
    let zero_utilities: Vec<Vec<Vec<Rational>>> = (0..players)
        .map(|i| vec![vec![Rational::zero(); profile_count]; types.get(i).map(|t| t.len()).unwrap_or(0)])
        .collect();
    let skeleton = match BayesianGame::new(
        file.actions.clone(),
        types.clone(),
        prior.clone(),
        zero_utilities,
        BTreeMap::new(),
    ) {
        Ok(g) => g,
        Err(Error::Validation { issues: shape_issues }) => {
            issues.extend(shape_issues);
            return Err(Error::Validation { issues });
        }
        Err(other) => return Err(other),
    };

    let mut utilities: Vec<Vec<Vec<Option<Rational>>>> = (0..players)
        .map(|i| vec![vec![None; profile_count]; types[i].len()])
        .collect();
    let mut seen: BTreeMap<String, bool> = BTreeMap::new();
    for tp in type_profiles(types) {
        for p in 0..profile_count {
            seen.insert(full_key(&skeleton, &tp, &skeleton.profile_at(p)), false);
        }
    }

    for (key, row) in &file.utilities {
        let parts: Vec<&str> = key.split('|').collect();
        if parts.len() != 2 * players {
            issues.push(format!(
                "key {key:?} has {} parts, expected {} (types then actions)",
                parts.len(),
                2 * players
            ));
            continue;
        }
        let mut tp = Vec::with_capacity(players);
        let mut profile = Vec::with_capacity(players);
        let mut bad = false;
        for i in 0..players {
            match types[i].iter().position(|t| t == parts[i]) {
                Some(t) => tp.push(t),
                None => {
                    issues.push(format!("key {key:?}: player {} has no type {:?}", i + 1, parts[i]));
                    bad = true;
                }
            }
            match file.actions[i].iter().position(|a| a == parts[players + i]) {
                Some(a) => profile.push(a),
                None => {
                    issues.push(format!(
                        "key {key:?}: player {} has no action {:?}",
                        i + 1,
                        parts[players + i]
                    ));
                    bad = true;
                }
            }
        }
        if bad {
            continue;
        }
        if row.len() != players {
            issues.push(format!(
                "utilities for {key:?} list {} payoffs for {} players",
                row.len(),
                players
            ));
            continue;
        }
        let p = skeleton.profile_index(&profile);
        seen.insert(key.clone(), true);
        for i in 0..players {
            match &utilities[i][tp[i]][p] {
                None => utilities[i][tp[i]][p] = Some(row[i].clone()),
                Some(existing) if *existing == row[i] => {}
                Some(existing) => issues.push(format!(
                    "player {}: utility at {key:?} is {} but an entry with the same own \
                     type gave {existing} (utilities may depend on a player's own type only)",
                    i + 1,
                    row[i]
                )),
            }
        }
    }
    for (key, seen) in &seen {
        if !seen {
            issues.push(format!("missing utilities for {key:?}"));
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation { issues });
    }
    let utilities = utilities
        .into_iter()
        .map(|per_type| {
            per_type
                .into_iter()
                .map(|table| table.into_iter().map(|v| v.expect("all keys seen")).collect())
                .collect()
        })
        .collect();
    BayesianGame::new(
        file.actions.clone(),
        types.clone(),
        prior.clone(),
        utilities,
        file.metadata.clone().unwrap_or_default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn table1_json() -> String {
        r#"{
          "players": 2,
          "actions": [["Top", "Bottom"], ["Left", "Middle", "Right"]],
          "utilities": {
            "Top|Left": ["-1", "2"],
            "Top|Middle": ["-1", "0"],
            "Top|Right": ["-1", "0"],
            "Bottom|Left": ["-1", "0"],
            "Bottom|Middle": ["-2", "2"],
            "Bottom|Right": ["0", "1"]
          }
        }"#
        .to_string()
    }

    #[test]
    fn normal_round_trip_is_canonical() {
        let doc = parse_game_str(&table1_json()).unwrap();
        let game = doc.as_normal().unwrap();
        assert_eq!(game.players(), 2);
        assert_eq!(*game.utility_at(0, &[1, 2]), rat("0"));
        assert_eq!(*game.utility_at(1, &[0, 0]), rat("2"));
        let text = to_canonical_json(&game_to_file(&doc));
        let again = to_canonical_json(&game_to_file(&parse_game_str(&text).unwrap()));
        assert_eq!(text, again);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn missing_and_unknown_keys_are_all_reported() {
        let text = r#"{
          "players": 2,
          "actions": [["T", "B"], ["L", "R"]],
          "utilities": {
            "T|L": ["0", "0"],
            "T|R": ["0", "0"],
            "B|L": ["0", "0"],
            "X|L": ["0", "0"]
          }
        }"#;
        let err = parse_game_str(text).unwrap_err();
        let Error::Validation { issues } = err else { panic!("expected validation") };
        assert!(issues.iter().any(|i| i.contains("\"B|R\"")), "{issues:?}");
        assert!(issues.iter().any(|i| i.contains("no action \"X\"")), "{issues:?}");
    }

    #[test]
    fn bayesian_consistency_is_enforced() {
        let text = r#"{
          "players": 2,
          "actions": [["a"], ["x", "y"]],
          "types": [["t"], ["hi", "lo"]],
          "prior": [["1"], ["1/2", "1/2"]],
          "utilities": {
            "t|hi|a|x": ["1", "3"],
            "t|hi|a|y": ["0", "0"],
            "t|lo|a|x": ["2", "5"],
            "t|lo|a|y": ["0", "0"]
          }
        }"#;
        let err = parse_game_str(text).unwrap_err();
        let Error::Validation { issues } = err else { panic!("expected validation") };
        // Player 1 is single-typed, so its utility may not differ between the
        // follower's types hi and lo.
        assert!(issues.iter().any(|i| i.starts_with("player 1:")), "{issues:?}");
    }

    #[test]
    fn bayesian_round_trip() {
        let text = r#"{
          "players": 2,
          "actions": [["a"], ["x", "y"]],
          "types": [["t"], ["hi", "lo"]],
          "prior": [["1"], ["1/3", "2/3"]],
          "utilities": {
            "t|hi|a|x": ["1", "3"],
            "t|hi|a|y": ["0", "0"],
            "t|lo|a|x": ["1", "5"],
            "t|lo|a|y": ["0", "-1"]
          }
        }"#;
        let doc = parse_game_str(text).unwrap();
        let game = doc.as_bayesian().unwrap();
        assert_eq!(game.type_count(1), 2);
        assert_eq!(*game.utility(1, 1, 1), rat("-1"));
        let canon = to_canonical_json(&game_to_file(&doc));
        let again = to_canonical_json(&game_to_file(&parse_game_str(&canon).unwrap()));
        assert_eq!(canon, again);
    }

    #[test]
    fn types_without_prior_rejected() {
        let text = r#"{
          "players": 1,
          "actions": [["a"]],
          "types": [["t"]],
          "utilities": { "t|a": ["0"] }
        }"#;
        assert!(parse_game_str(text).is_err());
    }
}
