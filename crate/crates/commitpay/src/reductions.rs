//! Instance factories that compile combinatorial problems into games, plus
//! witness checks tying solver reports back to the source instance.
//!
//! Four families are supported:
//!
//! - `bcbs`: balanced complete bipartite subgraph → 3-player game whose
//!   best-for-the-leader equilibrium has value 1 exactly when a k-biclique
//!   exists.
//! - `bvc`: balanced vertex cover → 3-player game where cooperative play
//!   worth ε to the leader exists exactly when a balanced cover does.
//! - `vc-bayes`: vertex cover → 2-player leader-types game with value 1
//!   exactly when a K-cover exists (and value ≤ 0 otherwise).
//! - `pricing`: unit-demand item pricing → 2-player follower-types game
//!   whose value equals the optimal posted-price revenue; payments convert
//!   back to prices via `r_i = Z - P(t_i)` with the offset Z recorded in the
//!   game metadata.
//!
//! `verify_witness` re-derives the combinatorial claim from a solve report
//! and the source instance: a consistent pair confirms the construction, a
//! violation pinpoints where the report and the instance disagree.

use crate::error::{Error, Result};
use crate::game::{BayesianGame, NormalFormGame};
use crate::io::GameDoc;
use crate::oracle::combinations;
use crate::rational::Rational;
use crate::report::{
    CommitmentOut, FollowerPlayOut, PaymentsOut, ReportOut, StrategyOut, VerifyOut,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Cap on brute-force witness searches and generated game tables.
pub const REDUCTION_SIZE_LIMIT: u128 = 1_000_000;

pub const RESULT_CONSISTENT: &str = "consistent";
pub const RESULT_VIOLATION: &str = "violation";

// ---------------------------------------------------------------------
// Source-instance schemas

/// Bipartite graph with a biclique size parameter k. Edges may list their
/// endpoints in either order; both must exist and must cross the partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteGraphInput {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub k: u32,
}

/// Simple undirected graph. `k` is the cover size for the vertex-cover
/// reduction; `epsilon` is the leader payoff scale for the balanced-cover
/// reduction (default 1/|V|⁵, the largest admissible value).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
}

/// Unit-demand pricing instance: a buyer drawn from `support` values each of
/// `itemCount` items and buys the best single item at the posted prices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct PricingInput {
    pub item_count: usize,
    pub support: Vec<PricingPoint>,
    /// Optional revenue threshold of the decision version; carried through
    /// but not needed to build the game.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PricingPoint {
    pub values: Vec<Rational>,
    pub probability: Rational,
}

/// Uniform-budget pricing instance: buyer `(β, wanted, probability)` values
/// every wanted item at exactly β and everything else at 0.
pub fn uniform_budget_pricing(
    item_count: usize,
    buyers: &[(Rational, Vec<usize>, Rational)],
) -> Result<PricingInput> {
    let mut issues = Vec::new();
    for (b, (budget, wanted, _)) in buyers.iter().enumerate() {
        if budget.is_negative() {
            issues.push(format!("buyer {}: negative budget {budget}", b + 1));
        }
        for &item in wanted {
            if item >= item_count {
                issues.push(format!(
                    "buyer {}: wants item index {item} but there are only {item_count} items",
                    b + 1
                ));
            }
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation { issues });
    }
    let support = buyers
        .iter()
        .map(|(budget, wanted, probability)| PricingPoint {
            values: (0..item_count)
                .map(|i| if wanted.contains(&i) { budget.clone() } else { Rational::zero() })
                .collect(),
            probability: probability.clone(),
        })
        .collect();
    let input = PricingInput { item_count, support, threshold: None };
    check_pricing(&input)?;
    Ok(input)
}

// ---------------------------------------------------------------------
// Validated internal forms

struct Bipartite {
    left: Vec<String>,
    right: Vec<String>,
    /// adj[l][r] for left index l, right index r.
    adj: Vec<Vec<bool>>,
    k: usize,
}

fn check_bipartite(input: &BipartiteGraphInput) -> Result<Bipartite> {
    let mut issues = Vec::new();
    if input.k == 0 {
        issues.push("k must be at least 1".to_string());
    }
    if input.left.is_empty() || input.right.is_empty() {
        issues.push("each partite set needs at least one vertex".to_string());
    }
    check_vertex_labels(input.left.iter().chain(input.right.iter()), &mut issues);
    let left_index: BTreeMap<&str, usize> =
        input.left.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let right_index: BTreeMap<&str, usize> =
        input.right.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut adj = vec![vec![false; input.right.len()]; input.left.len()];
    for (x, y) in &input.edges {
        let pair = match (left_index.get(x.as_str()), right_index.get(y.as_str())) {
            (Some(&l), Some(&r)) => Some((l, r)),
            _ => match (left_index.get(y.as_str()), right_index.get(x.as_str())) {
                (Some(&l), Some(&r)) => Some((l, r)),
                _ => None,
            },
        };
        match pair {
            Some((l, r)) => {
                if adj[l][r] {
                    issues.push(format!("duplicate edge ({x}, {y})"));
                }
                adj[l][r] = true;
            }
            None => issues.push(format!(
                "edge ({x}, {y}) must join one left vertex and one right vertex"
            )),
        }
    }
    if issues.is_empty() {
        Ok(Bipartite {
            left: input.left.clone(),
            right: input.right.clone(),
            adj,
            k: input.k as usize,
        })
    } else {
        Err(Error::Validation { issues })
    }
}

struct SimpleGraph {
    vertices: Vec<String>,
    /// Normalized (low index, high index) pairs in input order.
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    fn edge_label(&self, e: usize) -> String {
        let (x, y) = self.edges[e];
        format!("{},{}", self.vertices[x], self.vertices[y])
    }
}

fn check_graph(input: &GraphInput) -> Result<SimpleGraph> {
    let mut issues = Vec::new();
    if input.vertices.is_empty() {
        issues.push("the graph needs at least one vertex".to_string());
    }
    check_vertex_labels(input.vertices.iter(), &mut issues);
    let index: BTreeMap<&str, usize> =
        input.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (x, y) in &input.edges {
        match (index.get(x.as_str()), index.get(y.as_str())) {
            (Some(&a), Some(&b)) if a == b => {
                issues.push(format!("self-loop at {x}"));
            }
            (Some(&a), Some(&b)) => {
                let e = (a.min(b), a.max(b));
                if !seen.insert(e) {
                    issues.push(format!("duplicate edge ({x}, {y})"));
                }
                edges.push(e);
            }
            _ => issues.push(format!("edge ({x}, {y}) references an unknown vertex")),
        }
    }
    if issues.is_empty() {
        Ok(SimpleGraph { vertices: input.vertices.clone(), edges })
    } else {
        Err(Error::Validation { issues })
    }
}

fn check_vertex_labels<'a>(labels: impl Iterator<Item = &'a String>, issues: &mut Vec<String>) {
    let mut seen = BTreeSet::new();
    for l in labels {
        if l.is_empty() || l.contains('|') {
            issues.push(format!("vertex label {l:?} must be nonempty and free of '|'"));
        }
        if !seen.insert(l.clone()) {
            issues.push(format!("duplicate vertex label {l:?}"));
        }
    }
}

struct Pricing {
    /// values[type][item]
    values: Vec<Vec<Rational>>,
    probs: Vec<Rational>,
    /// Payment offset: one more than the largest value.
    z: Rational,
}

fn check_pricing(input: &PricingInput) -> Result<Pricing> {
    let mut issues = Vec::new();
    if input.item_count == 0 {
        issues.push("itemCount must be at least 1".to_string());
    }
    if input.support.is_empty() {
        issues.push("the support needs at least one value vector".to_string());
    }
    let mut z = Rational::one();
    for (j, point) in input.support.iter().enumerate() {
        if point.values.len() != input.item_count {
            issues.push(format!(
                "support point {}: {} values for {} items",
                j + 1,
                point.values.len(),
                input.item_count
            ));
        }
        for (i, v) in point.values.iter().enumerate() {
            if v.is_negative() {
                issues.push(format!("support point {}: item {} has negative value", j + 1, i + 1));
            }
            let bound = v + &Rational::one();
            if bound > z {
                z = bound;
            }
        }
        if !point.probability.is_positive() {
            issues.push(format!(
                "support point {}: probability must be positive (drop zero-probability points)",
                j + 1
            ));
        }
    }
    let total: Rational = input.support.iter().map(|p| &p.probability).sum();
    if total != Rational::one() {
        issues.push(format!("support probabilities sum to {total}, not 1"));
    }
    if let Some(t) = &input.threshold {
        if t.is_negative() {
            issues.push("threshold must be nonnegative".to_string());
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation { issues });
    }
    Ok(Pricing {
        values: input.support.iter().map(|p| p.values.clone()).collect(),
        probs: input.support.iter().map(|p| p.probability.clone()).collect(),
        z,
    })
}

fn guard_table(operation: &str, cells: u128) -> Result<()> {
    if cells > REDUCTION_SIZE_LIMIT {
        return Err(Error::budget(operation, cells, REDUCTION_SIZE_LIMIT, Some("shrink the instance")));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Generators

/// Biclique game: the leader has one action; players 2 and 3 each either
/// cooperate on a vertex of their fixed side or exploit a vertex of the
/// other side. Cooperating on an edge pays everyone 1; exploiting the vertex
/// the other player cooperates on pays the exploiter k and the victim −k−1;
/// everything else pays 0.
pub fn reduce_bcbs(input: &BipartiteGraphInput) -> Result<NormalFormGame> {
    let g = check_bipartite(input)?;
    let (nl, nr) = (g.left.len(), g.right.len());
    let n2 = nl + nr;
    guard_table("biclique reduction", (n2 as u128) * (n2 as u128))?;
    let p2: Vec<String> = g
        .left
        .iter()
        .map(|v| format!("C:{v}"))
        .chain(g.right.iter().map(|w| format!("E:{w}")))
        .collect();
    let p3: Vec<String> = g
        .right
        .iter()
        .map(|w| format!("C:{w}"))
        .chain(g.left.iter().map(|v| format!("E:{v}")))
        .collect();
    let k = Rational::from_int(input.k as i64);
    let hurt = -(&k + &Rational::one());
    let mut utilities = Vec::with_capacity(n2 * n2);
    for b in 0..n2 {
        for c in 0..n2 {
            let row = match (b < nl, c < nr) {
                (true, true) if g.adj[b][c] => {
                    vec![Rational::one(), Rational::one(), Rational::one()]
                }
                (false, true) if b - nl == c => {
                    vec![Rational::zero(), k.clone(), hurt.clone()]
                }
                (true, false) if b == c - nr => {
                    vec![Rational::zero(), hurt.clone(), k.clone()]
                }
                _ => vec![Rational::zero(), Rational::zero(), Rational::zero()],
            };
            utilities.push(row);
        }
    }
    let metadata = BTreeMap::from([("reduction".to_string(), "bcbs".to_string())]);
    NormalFormGame::with_metadata(vec![vec!["a0".to_string()], p2, p3], utilities, metadata)
}

/// Balanced-cover game: players 1 and 2 pick vertices, player 3 audits. The
/// leader pair earns ε only if player 3 stands down (`c0`, worth 1 to the
/// auditor). Each audit action is worth |V|/(|V|−2) unless refuted: `c:v` is
/// refuted by either player picking v, `c:u,w` by player 1 picking an
/// endpoint of that edge.
pub fn reduce_balanced_vertex_cover(input: &GraphInput) -> Result<NormalFormGame> {
    let g = check_graph(input)?;
    let n = g.vertices.len();
    let mut issues = Vec::new();
    if n < 4 || n % 2 != 0 {
        issues.push(format!("the vertex count must be even and at least 4, got {n}"));
    }
    if input.k.is_some() {
        issues.push("the balanced-cover reduction takes \"epsilon\", not \"k\"".to_string());
    }
    if !issues.is_empty() {
        return Err(Error::Validation { issues });
    }
    let limit = Rational::new(1, (n as i64).pow(5));
    let eps = input.epsilon.clone().unwrap_or_else(|| limit.clone());
    if !eps.is_positive() || eps > limit {
        return Err(Error::validation(format!(
            "epsilon must lie in (0, {limit}], got {eps}"
        )));
    }
    let m = g.edges.len();
    let n3 = n + m + 1;
    guard_table("balanced-cover reduction", (n as u128) * (n as u128) * (n3 as u128))?;
    let p1: Vec<String> = g.vertices.iter().map(|v| format!("a:{v}")).collect();
    let p2: Vec<String> = g.vertices.iter().map(|v| format!("b:{v}")).collect();
    let p3: Vec<String> = g
        .vertices
        .iter()
        .map(|v| format!("c:{v}"))
        .chain((0..m).map(|e| format!("c:{}", g.edge_label(e))))
        .chain(std::iter::once("c0".to_string()))
        .collect();
    let high = Rational::new(n as i64, n as i64 - 2);
    let mut utilities = Vec::with_capacity(n * n * n3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n3 {
                let (lead, aud) = if c == n + m {
                    (eps.clone(), Rational::one())
                } else {
                    let refuted = if c < n {
                        a == c || b == c
                    } else {
                        let (x, y) = g.edges[c - n];
                        a == x || a == y
                    };
                    (Rational::zero(), if refuted { Rational::zero() } else { high.clone() })
                };
                utilities.push(vec![lead.clone(), lead, aud]);
            }
        }
    }
    let metadata = BTreeMap::from([("reduction".to_string(), "bvc".to_string())]);
    NormalFormGame::with_metadata(vec![p1, p2, p3], utilities, metadata)
}

/// Cover game: the leader has K interchangeable types and picks a vertex per
/// type; the follower challenges an edge or stands down. Standing down pays
/// the leader 1; a challenged edge pays the follower 1 when no leader vertex
/// touches it and −K when one does, so a committed K-cover makes standing
/// down the follower's unique best response.
pub fn reduce_vertex_cover_bayesian(input: &GraphInput) -> Result<BayesianGame> {
    let g = check_graph(input)?;
    let cap = input
        .k
        .ok_or_else(|| Error::validation("the vertex-cover reduction needs \"k\""))?;
    if cap == 0 {
        return Err(Error::validation("k must be at least 1"));
    }
    if input.epsilon.is_some() {
        return Err(Error::validation("the vertex-cover reduction takes \"k\", not \"epsilon\""));
    }
    let n = g.vertices.len();
    let m = g.edges.len();
    let nb = m + 1;
    guard_table("vertex-cover reduction", (cap as u128) * (n as u128) * (nb as u128))?;
    let leader_actions: Vec<String> = g.vertices.iter().map(|v| format!("a:{v}")).collect();
    let follower_actions: Vec<String> = std::iter::once("b0".to_string())
        .chain((0..m).map(|e| format!("b:{}", g.edge_label(e))))
        .collect();
    let types = vec![
        (1..=cap).map(|t| format!("theta{t}")).collect::<Vec<_>>(),
        vec!["t".to_string()],
    ];
    let prior = vec![
        vec![Rational::new(1, cap as i64); cap as usize],
        vec![Rational::one()],
    ];
    let mut leader_table = Vec::with_capacity(n * nb);
    let mut follower_table = Vec::with_capacity(n * nb);
    let penalty = Rational::from_int(-(cap as i64));
    for a in 0..n {
        for b in 0..nb {
            leader_table.push(if b == 0 { Rational::one() } else { Rational::zero() });
            follower_table.push(if b == 0 {
                Rational::zero()
            } else {
                let (x, y) = g.edges[b - 1];
                if a == x || a == y { penalty.clone() } else { Rational::one() }
            });
        }
    }
    let utilities = vec![
        vec![leader_table; cap as usize],
        vec![follower_table],
    ];
    let metadata = BTreeMap::from([("reduction".to_string(), "vc-bayes".to_string())]);
    BayesianGame::new(vec![leader_actions, follower_actions], types, prior, utilities, metadata)
}

/// Pricing game: the buyer becomes a follower whose type is the value
/// vector. Buying item i pays the leader Z and the buyer v_i − Z, so the
/// leader's payment P(t_i) plays the role of a discount and the effective
/// price is r_i = Z − P(t_i). Z = (max value) + 1 is stored under the
/// metadata key "priceOffset".
pub fn reduce_item_pricing(input: &PricingInput) -> Result<BayesianGame> {
    let p = check_pricing(input)?;
    let m = input.item_count;
    let n_types = p.probs.len();
    guard_table("pricing reduction", (n_types as u128) * (m as u128 + 1))?;
    let follower_actions: Vec<String> = (0..=m).map(|i| format!("t{i}")).collect();
    let types = vec![
        vec!["t".to_string()],
        (1..=n_types).map(|j| format!("theta{j}")).collect(),
    ];
    let prior = vec![vec![Rational::one()], p.probs.clone()];
    let mut leader_table = Vec::with_capacity(m + 1);
    leader_table.push(Rational::zero());
    leader_table.extend(std::iter::repeat_n(p.z.clone(), m));
    let follower_tables: Vec<Vec<Rational>> = p
        .values
        .iter()
        .map(|values| {
            let mut table = Vec::with_capacity(m + 1);
            table.push(Rational::zero());
            table.extend(values.iter().map(|v| v - &p.z));
            table
        })
        .collect();
    let utilities = vec![vec![leader_table], follower_tables];
    let metadata = BTreeMap::from([
        ("reduction".to_string(), "pricing".to_string()),
        ("priceOffset".to_string(), p.z.to_string()),
    ]);
    BayesianGame::new(
        vec![vec!["a0".to_string()], follower_actions],
        types,
        prior,
        utilities,
        metadata,
    )
}

/// Build the game for `kind` ∈ {bcbs, bvc, vc-bayes, pricing} from the
/// instance JSON.
pub fn reduce(kind: &str, source_json: &str) -> Result<GameDoc> {
    match kind {
        "bcbs" => {
            let input: BipartiteGraphInput = serde_json::from_str(source_json)?;
            reduce_bcbs(&input).map(GameDoc::Normal)
        }
        "bvc" => {
            let input: GraphInput = serde_json::from_str(source_json)?;
            reduce_balanced_vertex_cover(&input).map(GameDoc::Normal)
        }
        "vc-bayes" => {
            let input: GraphInput = serde_json::from_str(source_json)?;
            reduce_vertex_cover_bayesian(&input).map(GameDoc::Bayesian)
        }
        "pricing" => {
            let input: PricingInput = serde_json::from_str(source_json)?;
            reduce_item_pricing(&input).map(GameDoc::Bayesian)
        }
        other => Err(Error::validation(format!(
            "unknown reduction {other:?}; expected bcbs, bvc, vc-bayes, or pricing"
        ))),
    }
}

// ---------------------------------------------------------------------
// Combinatorial ground truth

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    out
}

/// Smallest k-by-k all-adjacent vertex pair, if any, by exhaustive search.
pub fn find_k_biclique(input: &BipartiteGraphInput) -> Result<Option<(Vec<String>, Vec<String>)>> {
    let g = check_bipartite(input)?;
    let k = g.k;
    if k > g.left.len() || k > g.right.len() {
        return Ok(None);
    }
    let count = binomial(g.left.len(), k).saturating_mul(binomial(g.right.len(), k));
    if count > REDUCTION_SIZE_LIMIT {
        return Err(Error::budget("biclique search", count, REDUCTION_SIZE_LIMIT, None));
    }
    let rights = combinations(g.right.len(), k);
    for ls in combinations(g.left.len(), k) {
        for rs in &rights {
            if ls.iter().all(|&l| rs.iter().all(|&r| g.adj[l][r])) {
                return Ok(Some((
                    ls.iter().map(|&l| g.left[l].clone()).collect(),
                    rs.iter().map(|&r| g.right[r].clone()).collect(),
                )));
            }
        }
    }
    Ok(None)
}

/// Smallest vertex cover of size at most k, if any, by exhaustive search.
pub fn find_k_cover(input: &GraphInput) -> Result<Option<Vec<String>>> {
    let g = check_graph(input)?;
    let cap = input
        .k
        .ok_or_else(|| Error::validation("the cover search needs \"k\""))? as usize;
    let n = g.vertices.len();
    for size in 0..=cap.min(n) {
        let count = binomial(n, size);
        if count > REDUCTION_SIZE_LIMIT {
            return Err(Error::budget("cover search", count, REDUCTION_SIZE_LIMIT, None));
        }
        for s in combinations(n, size) {
            if g.edges.iter().all(|&(x, y)| s.contains(&x) || s.contains(&y)) {
                return Ok(Some(s.iter().map(|&v| g.vertices[v].clone()).collect()));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Buyer simulation and pricing brute force

/// The item a buyer with these values purchases at these prices, or None
/// for no purchase. Ties on surplus go to the higher-value item (which is
/// also the higher price, hence the seller-preferred resolution); a zero
/// surplus still buys.
pub fn buyer_choice(values: &[Rational], prices: &[Rational]) -> Option<usize> {
    let mut best: Option<(Rational, usize)> = None;
    for (i, (v, r)) in values.iter().zip(prices).enumerate() {
        let surplus = v - r;
        let better = match &best {
            None => true,
            Some((s, j)) => surplus > *s || (surplus == *s && *v > values[*j]),
        };
        if better {
            best = Some((surplus, i));
        }
    }
    match best {
        Some((s, i)) if !s.is_negative() => Some(i),
        _ => None,
    }
}

/// Expected revenue of a price vector over the instance's buyer
/// distribution.
pub fn pricing_revenue(instance: &PricingInput, prices: &[Rational]) -> Result<Rational> {
    let p = check_pricing(instance)?;
    if prices.len() != instance.item_count {
        return Err(Error::validation(format!(
            "{} prices for {} items",
            prices.len(),
            instance.item_count
        )));
    }
    let mut total = Rational::zero();
    for (values, prob) in p.values.iter().zip(&p.probs) {
        if let Some(i) = buyer_choice(values, prices) {
            total += &(prob * &prices[i]);
        }
    }
    Ok(total)
}

/// Best revenue over the breakpoint price grid: every item price ranges over
/// the distinct values appearing anywhere in the support, plus one
/// unbuyable sentinel above them all. First-found maximizer wins, so the
/// result is deterministic.
pub fn optimal_pricing(instance: &PricingInput) -> Result<(Rational, Vec<Rational>)> {
    let p = check_pricing(instance)?;
    let m = instance.item_count;
    let mut set: BTreeSet<Rational> = p.values.iter().flatten().cloned().collect();
    set.insert(p.z.clone());
    let candidates: Vec<Rational> = set.into_iter().collect();
    let count = (candidates.len() as u128)
        .checked_pow(m as u32)
        .filter(|&c| c <= REDUCTION_SIZE_LIMIT)
        .ok_or_else(|| {
            Error::budget(
                "pricing brute force",
                u128::MAX,
                REDUCTION_SIZE_LIMIT,
                Some("too many price combinations"),
            )
        })?;
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut digits = vec![0usize; m];
    for _ in 0..count {
        let prices: Vec<Rational> = digits.iter().map(|&d| candidates[d].clone()).collect();
        let revenue = pricing_revenue(instance, &prices)?;
        if best.as_ref().is_none_or(|(r, _)| revenue > *r) {
            best = Some((revenue, prices));
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < candidates.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(best.expect("at least one price vector"))
}

// ---------------------------------------------------------------------
// Witness checks

struct Witness;

impl Witness {
    fn consistent(detail: String) -> VerifyOut {
        VerifyOut { result: RESULT_CONSISTENT.to_string(), detail: Some(detail), slacks: None }
    }

    fn violation(detail: String) -> VerifyOut {
        VerifyOut { result: RESULT_VIOLATION.to_string(), detail: Some(detail), slacks: None }
    }
}

fn set_string(labels: &BTreeSet<String>) -> String {
    let joined = labels.iter().cloned().collect::<Vec<_>>().join(", ");
    format!("{{{joined}}}")
}

/// Check a solve report against the source instance it was generated from.
/// Supported kinds: `bcbs` (value ≥ 1 iff the played supports form a
/// k-biclique), `vc-bayes` (value > 0 iff the committed per-type vertices
/// cover every edge), `pricing` (the reported value equals the revenue of
/// the recovered prices). The balanced-cover reduction has no per-instance
/// witness and is rejected.
pub fn verify_witness(kind: &str, source_json: &str, report: &ReportOut) -> Result<VerifyOut> {
    match kind {
        "bcbs" => verify_bcbs(source_json, report),
        "vc-bayes" => verify_vc_bayes(source_json, report),
        "pricing" => verify_pricing(source_json, report),
        "bvc" => Err(Error::validation(
            "witness checking covers bcbs, vc-bayes, and pricing; the balanced-cover \
             reduction has no instance-level witness",
        )),
        other => Err(Error::validation(format!(
            "unknown reduction {other:?}; expected bcbs, vc-bayes, or pricing"
        ))),
    }
}

fn verify_bcbs(source_json: &str, report: &ReportOut) -> Result<VerifyOut> {
    let input: BipartiteGraphInput = serde_json::from_str(source_json)?;
    let g = check_bipartite(&input)?;
    if report.value < Rational::one() {
        return Ok(match find_k_biclique(&input)? {
            None => Witness::consistent(format!(
                "value {} is below 1 and the graph has no {}-biclique",
                report.value, g.k
            )),
            Some((ls, rs)) => Witness::violation(format!(
                "the graph has the {}-biclique ({} × {}) but the reported value {} is below 1",
                g.k,
                set_string(&ls.into_iter().collect()),
                set_string(&rs.into_iter().collect()),
                report.value
            )),
        });
    }
    let FollowerPlayOut::Product { strategies } = &report.follower_play else {
        return Ok(Witness::violation(
            "value is at least 1 but the report carries no product follower play".to_string(),
        ));
    };
    if strategies.len() != 2 {
        return Ok(Witness::violation(format!(
            "expected play for exactly 2 followers, got {}",
            strategies.len()
        )));
    }
    let mut supports: Vec<BTreeSet<String>> = Vec::new();
    for (f, (dist, side)) in strategies.iter().zip([&g.left, &g.right]).enumerate() {
        let mut support = BTreeSet::new();
        let mut total = Rational::zero();
        for (label, weight) in dist {
            if weight.is_negative() {
                return Ok(Witness::violation(format!(
                    "player {}: negative weight on {label}",
                    f + 2
                )));
            }
            total += weight;
            if weight.is_zero() {
                continue;
            }
            let Some(v) = label.strip_prefix("C:") else {
                return Ok(Witness::violation(format!(
                    "value is at least 1 but player {} plays the non-cooperative action {label}",
                    f + 2
                )));
            };
            if !side.contains(&v.to_string()) {
                return Ok(Witness::violation(format!(
                    "player {}: {label} does not name a vertex on its side",
                    f + 2
                )));
            }
            support.insert(v.to_string());
        }
        if total != Rational::one() {
            return Ok(Witness::violation(format!(
                "player {}: play weights sum to {total}, not 1",
                f + 2
            )));
        }
        if support.len() < g.k {
            return Ok(Witness::violation(format!(
                "player {} cooperates on only {} vertices, fewer than k = {}",
                f + 2,
                support.len(),
                g.k
            )));
        }
        supports.push(support);
    }
    for v in &supports[0] {
        for w in &supports[1] {
            let l = g.left.iter().position(|x| x == v).expect("validated above");
            let r = g.right.iter().position(|x| x == w).expect("validated above");
            if !g.adj[l][r] {
                return Ok(Witness::violation(format!(
                    "supports are not a biclique: ({v}, {w}) is not an edge"
                )));
            }
        }
    }
    Ok(Witness::consistent(format!(
        "play spans the {}-biclique {} × {}",
        g.k,
        set_string(&supports[0]),
        set_string(&supports[1])
    )))
}

fn verify_vc_bayes(source_json: &str, report: &ReportOut) -> Result<VerifyOut> {
    let input: GraphInput = serde_json::from_str(source_json)?;
    let g = check_graph(&input)?;
    let cap = input
        .k
        .ok_or_else(|| Error::validation("the vertex-cover reduction needs \"k\""))?;
    if !report.value.is_positive() {
        return Ok(match find_k_cover(&input)? {
            None => Witness::consistent(format!(
                "value {} is not positive and the graph has no cover of size at most {cap}",
                report.value
            )),
            Some(cover) => Witness::violation(format!(
                "the graph has the cover {} of size {} but the reported value {} is not positive",
                set_string(&cover.iter().cloned().collect()),
                cover.len(),
                report.value
            )),
        });
    }
    let CommitmentOut::Standard(commitment) = &report.commitment else {
        return Ok(Witness::violation(
            "value is positive but the report carries no per-type strategy".to_string(),
        ));
    };
    let StrategyOut::TypedPure { actions } = &commitment.strategy else {
        return Ok(Witness::violation(
            "value is positive but the commitment is not one pure action per type".to_string(),
        ));
    };
    let mut cover: BTreeSet<String> = BTreeSet::new();
    for t in 1..=cap {
        let label = format!("theta{t}");
        let Some(action) = actions.get(&label) else {
            return Ok(Witness::violation(format!("type {label} has no committed action")));
        };
        let Some(v) = action.strip_prefix("a:") else {
            return Ok(Witness::violation(format!("type {label} commits to unknown action {action}")));
        };
        if !g.vertices.contains(&v.to_string()) {
            return Ok(Witness::violation(format!("type {label} names the unknown vertex {v}")));
        }
        cover.insert(v.to_string());
    }
    for (e, &(x, y)) in g.edges.iter().enumerate() {
        if !cover.contains(&g.vertices[x]) && !cover.contains(&g.vertices[y]) {
            return Ok(Witness::violation(format!(
                "value is positive but edge ({}) is uncovered by the committed vertices {}",
                g.edge_label(e),
                set_string(&cover)
            )));
        }
    }
    Ok(Witness::consistent(format!(
        "committed vertices {} cover every edge with {} of {} types",
        set_string(&cover),
        cover.len(),
        cap
    )))
}

fn verify_pricing(source_json: &str, report: &ReportOut) -> Result<VerifyOut> {
    let input: PricingInput = serde_json::from_str(source_json)?;
    let p = check_pricing(&input)?;
    let CommitmentOut::Standard(commitment) = &report.commitment else {
        return Ok(Witness::violation(
            "the report carries no strategy-plus-payments commitment".to_string(),
        ));
    };
    let PaymentsOut::FollowerActionOnly { values: payments } = &commitment.payments else {
        return Ok(Witness::violation(
            "prices can only be recovered from per-action payments".to_string(),
        ));
    };
    let labels: Vec<String> = (1..=input.item_count).map(|i| format!("t{i}")).collect();
    for (label, payment) in payments {
        if label == "t0" && !payment.is_zero() {
            return Ok(Witness::violation(
                "the report pays on the no-purchase action; no price vector corresponds to it"
                    .to_string(),
            ));
        }
        if label != "t0" && !labels.contains(label) {
            return Ok(Witness::violation(format!("payment on unknown action {label}")));
        }
        if payment.is_negative() {
            return Ok(Witness::violation(format!("negative payment on {label}")));
        }
    }
    let prices: Vec<Rational> = labels
        .iter()
        .map(|l| &p.z - &payments.get(l).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let revenue = pricing_revenue(&input, &prices)?;
    if revenue == report.value {
        let shown =
            prices.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
        Ok(Witness::consistent(format!("prices [{shown}] yield revenue {revenue}")))
    } else {
        Ok(Witness::violation(format!(
            "the recovered prices yield revenue {revenue} but the report claims {}",
            report.value
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::solvers::hard::{
        approx_single_commitment, solve_bayesian_follower_exact, solve_leader_types_pure_exact,
        DEFAULT_BUDGET,
    };
    use crate::solvers::SolveOptions;

    fn k22(k: u32) -> BipartiteGraphInput {
        BipartiteGraphInput {
            left: vec!["v1".into(), "v2".into()],
            right: vec!["w1".into(), "w2".into()],
            edges: vec![
                ("v1".into(), "w1".into()),
                ("v1".into(), "w2".into()),
                ("v2".into(), "w1".into()),
                ("v2".into(), "w2".into()),
            ],
            k,
        }
    }

    fn four_cycle() -> GraphInput {
        GraphInput {
            vertices: vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()],
            edges: vec![
                ("v1".into(), "v2".into()),
                ("v2".into(), "v3".into()),
                ("v3".into(), "v4".into()),
                ("v4".into(), "v1".into()),
            ],
            k: None,
            epsilon: None,
        }
    }

    fn triangle(k: u32) -> GraphInput {
        GraphInput {
            vertices: vec!["v1".into(), "v2".into(), "v3".into()],
            edges: vec![
                ("v1".into(), "v2".into()),
                ("v2".into(), "v3".into()),
                ("v1".into(), "v3".into()),
            ],
            k: Some(k),
            epsilon: None,
        }
    }

    fn solve_bcbs(input: &BipartiteGraphInput) -> ReportOut {
        let game = reduce_bcbs(input).unwrap();
        approx_single_commitment(
            &game,
            &Rational::one(),
            Some(Rational::zero()),
            DEFAULT_BUDGET,
            &SolveOptions::default(),
        )
        .unwrap()
        .report
    }

    #[test]
    fn biclique_game_matches_the_itemized_payoffs() {
        let game = reduce_bcbs(&k22(2)).unwrap();
        assert_eq!(game.action_count(0), 1);
        assert_eq!(game.action_count(1), 4);
        assert_eq!(game.action_count(2), 4);
        assert_eq!(*game.utility_at(0, &[0, 0, 0]), rat("1"));
        assert_eq!(*game.utility_at(2, &[0, 0, 1]), rat("1"));
        // Exploiting the cooperated-on vertex: exploiter k, victim −k−1.
        let e_w1 = game.action_index(1, "E:w1").unwrap();
        let c_w1 = game.action_index(2, "C:w1").unwrap();
        assert_eq!(*game.utility_at(1, &[0, e_w1, c_w1]), rat("2"));
        assert_eq!(*game.utility_at(2, &[0, e_w1, c_w1]), rat("-3"));
        let c_v2 = game.action_index(1, "C:v2").unwrap();
        let e_v2 = game.action_index(2, "E:v2").unwrap();
        assert_eq!(*game.utility_at(1, &[0, c_v2, e_v2]), rat("-3"));
        assert_eq!(*game.utility_at(2, &[0, c_v2, e_v2]), rat("2"));
        // The leader profits exactly on adjacent cooperation.
        let ones = (0..game.profile_count())
            .filter(|&p| !game.utility(0, p).is_zero())
            .count();
        assert_eq!(ones, 4);
    }

    #[test]
    fn biclique_value_tracks_existence() {
        let single = BipartiteGraphInput {
            left: vec!["v".into()],
            right: vec!["w".into()],
            edges: vec![("v".into(), "w".into())],
            k: 1,
        };
        let report = solve_bcbs(&single);
        assert_eq!(report.value, rat("1"));
        let src = serde_json::to_string(&single).unwrap();
        let verdict = verify_witness("bcbs", &src, &report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);

        let mut missing = k22(2);
        missing.edges.pop();
        let report = solve_bcbs(&missing);
        assert!(report.value < rat("1"));
        let src = serde_json::to_string(&missing).unwrap();
        let verdict = verify_witness("bcbs", &src, &report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);

        let full = k22(2);
        let report = solve_bcbs(&full);
        assert_eq!(report.value, rat("1"));
        let src_full = serde_json::to_string(&full).unwrap();
        let verdict = verify_witness("bcbs", &src_full, &report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);
        assert!(verdict.detail.unwrap().contains("{v1, v2} × {w1, w2}"));

        // A tampered value claim on the edge-deleted graph is caught.
        let mut tampered = solve_bcbs(&missing);
        tampered.value = rat("1");
        tampered.follower_play = FollowerPlayOut::Product {
            strategies: vec![
                BTreeMap::from([("C:v1".to_string(), rat("1/2")), ("C:v2".to_string(), rat("1/2"))]),
                BTreeMap::from([("C:w1".to_string(), rat("1/2")), ("C:w2".to_string(), rat("1/2"))]),
            ],
        };
        let verdict = verify_witness("bcbs", &src, &tampered).unwrap();
        assert_eq!(verdict.result, RESULT_VIOLATION);
    }

    #[test]
    fn balanced_cover_game_matches_the_itemized_payoffs() {
        let game = reduce_balanced_vertex_cover(&four_cycle()).unwrap();
        assert_eq!(game.action_count(2), 4 + 4 + 1);
        let eps = rat("1/1024");
        let c0 = game.action_index(2, "c0").unwrap();
        assert_eq!(*game.utility_at(0, &[0, 0, c0]), eps);
        assert_eq!(*game.utility_at(1, &[3, 2, c0]), eps);
        assert_eq!(*game.utility_at(2, &[3, 2, c0]), rat("1"));
        // Audit payoffs: 0 when refuted, |V|/(|V|−2) = 2 otherwise.
        let c_v1 = game.action_index(2, "c:v1").unwrap();
        let a_v1 = game.action_index(0, "a:v1").unwrap();
        let b_v1 = game.action_index(1, "b:v1").unwrap();
        let a_v2 = game.action_index(0, "a:v2").unwrap();
        let b_v3 = game.action_index(1, "b:v3").unwrap();
        assert_eq!(*game.utility_at(2, &[a_v1, b_v3, c_v1]), rat("0"));
        assert_eq!(*game.utility_at(2, &[a_v2, b_v1, c_v1]), rat("0"));
        assert_eq!(*game.utility_at(2, &[a_v2, b_v3, c_v1]), rat("2"));
        let c_e = game.action_index(2, "c:v1,v2").unwrap();
        let a_v3 = game.action_index(0, "a:v3").unwrap();
        assert_eq!(*game.utility_at(2, &[a_v1, b_v3, c_e]), rat("0"));
        assert_eq!(*game.utility_at(2, &[a_v3, b_v1, c_e]), rat("2"));
        // Exactly the 16 stand-down profiles pay the auditor 1.
        let ones = (0..game.profile_count())
            .filter(|&p| *game.utility(2, p) == rat("1"))
            .count();
        assert_eq!(ones, 16);
        // Leader and partner earn only on stand-down.
        for p in 0..game.profile_count() {
            let profile = game.profile_at(p);
            let expected = if profile[2] == c0 { eps.clone() } else { rat("0") };
            assert_eq!(*game.utility(0, p), expected);
            assert_eq!(*game.utility(1, p), expected);
        }
    }

    #[test]
    fn balanced_cover_preconditions_are_enforced() {
        let mut g = four_cycle();
        g.epsilon = Some(rat("1/1024"));
        assert!(reduce_balanced_vertex_cover(&g).is_ok());
        g.epsilon = Some(rat("1/2000"));
        assert!(reduce_balanced_vertex_cover(&g).is_ok());
        g.epsilon = Some(rat("1/1000"));
        assert!(reduce_balanced_vertex_cover(&g).is_err());
        g.epsilon = Some(rat("0"));
        assert!(reduce_balanced_vertex_cover(&g).is_err());

        let odd = GraphInput {
            vertices: vec!["v1".into(), "v2".into(), "v3".into()],
            edges: vec![],
            k: None,
            epsilon: None,
        };
        assert!(reduce_balanced_vertex_cover(&odd).is_err());
        let tiny = GraphInput {
            vertices: vec!["v1".into(), "v2".into()],
            edges: vec![],
            k: None,
            epsilon: None,
        };
        assert!(reduce_balanced_vertex_cover(&tiny).is_err());
    }

    #[test]
    fn cover_value_tracks_existence() {
        let opts = SolveOptions::default();
        let game = reduce_vertex_cover_bayesian(&triangle(2)).unwrap();
        let covered = solve_leader_types_pure_exact(&game, DEFAULT_BUDGET, &opts).unwrap().report;
        assert_eq!(covered.value, rat("1"));
        let src = serde_json::to_string(&triangle(2)).unwrap();
        let verdict = verify_witness("vc-bayes", &src, &covered).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);

        let game = reduce_vertex_cover_bayesian(&triangle(1)).unwrap();
        let uncovered = solve_leader_types_pure_exact(&game, DEFAULT_BUDGET, &opts).unwrap().report;
        assert!(!uncovered.value.is_positive());
        let src1 = serde_json::to_string(&triangle(1)).unwrap();
        let verdict = verify_witness("vc-bayes", &src1, &uncovered).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);

        // Claiming a positive value without a cover is a violation.
        let mut tampered = uncovered.clone();
        tampered.value = rat("1");
        let verdict = verify_witness("vc-bayes", &src1, &tampered).unwrap();
        assert_eq!(verdict.result, RESULT_VIOLATION);

        let edge = GraphInput {
            vertices: vec!["v1".into(), "v2".into()],
            edges: vec![("v1".into(), "v2".into())],
            k: Some(1),
            epsilon: None,
        };
        let game = reduce_vertex_cover_bayesian(&edge).unwrap();
        let report = solve_leader_types_pure_exact(&game, DEFAULT_BUDGET, &opts).unwrap().report;
        assert_eq!(report.value, rat("1"));
    }

    #[test]
    fn pricing_single_item_recovers_the_price() {
        let input = PricingInput {
            item_count: 1,
            support: vec![PricingPoint { values: vec![rat("5")], probability: rat("1") }],
            threshold: None,
        };
        let game = reduce_item_pricing(&input).unwrap();
        assert_eq!(game.metadata().get("priceOffset").unwrap(), "6");
        let solved =
            solve_bayesian_follower_exact(&game, DEFAULT_BUDGET, &SolveOptions::default())
                .unwrap();
        assert_eq!(solved.report.value, rat("5"));
        let CommitmentOut::Standard(c) = &solved.report.commitment else { panic!("standard") };
        let PaymentsOut::FollowerActionOnly { values } = &c.payments else { panic!("per action") };
        assert_eq!(values.get("t1").unwrap(), &rat("1"));
        let src = serde_json::to_string(&input).unwrap();
        let verdict = verify_witness("pricing", &src, &solved.report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);
        assert!(verdict.detail.unwrap().contains("[5]"));
    }

    #[test]
    fn pricing_value_matches_the_breakpoint_brute_force() {
        let input = PricingInput {
            item_count: 2,
            support: vec![
                PricingPoint { values: vec![rat("10"), rat("0")], probability: rat("1/2") },
                PricingPoint { values: vec![rat("6"), rat("6")], probability: rat("1/2") },
            ],
            threshold: None,
        };
        let (revenue, prices) = optimal_pricing(&input).unwrap();
        assert_eq!(revenue, rat("8"));
        assert_eq!(prices, vec![rat("10"), rat("6")]);
        let game = reduce_item_pricing(&input).unwrap();
        let solved =
            solve_bayesian_follower_exact(&game, DEFAULT_BUDGET, &SolveOptions::default())
                .unwrap();
        assert_eq!(solved.report.value, rat("8"));
        let src = serde_json::to_string(&input).unwrap();
        let verdict = verify_witness("pricing", &src, &solved.report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);

        // Tampering with the claimed value breaks the revenue equation.
        let mut tampered = solved.report.clone();
        tampered.value = rat("9");
        let verdict = verify_witness("pricing", &src, &tampered).unwrap();
        assert_eq!(verdict.result, RESULT_VIOLATION);
    }

    #[test]
    fn worthless_items_stay_unsold() {
        let input = PricingInput {
            item_count: 1,
            support: vec![PricingPoint { values: vec![rat("0")], probability: rat("1") }],
            threshold: None,
        };
        let game = reduce_item_pricing(&input).unwrap();
        let solved =
            solve_bayesian_follower_exact(&game, DEFAULT_BUDGET, &SolveOptions::default())
                .unwrap();
        assert_eq!(solved.report.value, rat("0"));
        let FollowerPlayOut::PerType { actions } = &solved.report.follower_play else {
            panic!("per-type play")
        };
        assert_eq!(actions.get("theta1").unwrap(), "t0");
        let src = serde_json::to_string(&input).unwrap();
        let verdict = verify_witness("pricing", &src, &solved.report).unwrap();
        assert_eq!(verdict.result, RESULT_CONSISTENT);
    }

    #[test]
    fn follower_choice_in_the_game_is_the_buyer_choice() {
        let input = PricingInput {
            item_count: 2,
            support: vec![
                PricingPoint { values: vec![rat("3"), rat("1")], probability: rat("1/2") },
                PricingPoint { values: vec![rat("2"), rat("2")], probability: rat("1/2") },
            ],
            threshold: None,
        };
        let game = reduce_item_pricing(&input).unwrap();
        let z = rat("4");
        let grid = [rat("0"), rat("1/2"), rat("1"), rat("2"), rat("5/2"), rat("3"), rat("4")];
        for r1 in &grid {
            for r2 in &grid {
                let prices = vec![r1.clone(), r2.clone()];
                for (theta, point) in input.support.iter().enumerate() {
                    // Follower side: maximize utility plus payment, break
                    // ties toward the leader's net payoff.
                    let pay = [Rational::zero(), &z - r1, &z - r2];
                    let mut best = 0usize;
                    for t in 1..3 {
                        let gain = game.utility(1, theta, t) + &pay[t];
                        let best_gain = game.utility(1, theta, best) + &pay[best];
                        let leader = game.utility(0, 0, t) - &pay[t];
                        let best_leader = game.utility(0, 0, best) - &pay[best];
                        if gain > best_gain || (gain == best_gain && leader > best_leader) {
                            best = t;
                        }
                    }
                    let expected = match buyer_choice(&point.values, &prices) {
                        None => 0,
                        Some(i) => i + 1,
                    };
                    assert_eq!(best, expected, "prices {r1},{r2} type {theta}");
                }
            }
        }
    }

    #[test]
    fn uniform_budget_instances_take_the_budget_shape() {
        let input = uniform_budget_pricing(
            3,
            &[
                (rat("7"), vec![0, 2], rat("1/3")),
                (rat("4"), vec![1], rat("2/3")),
            ],
        )
        .unwrap();
        assert_eq!(input.support[0].values, vec![rat("7"), rat("0"), rat("7")]);
        assert_eq!(input.support[1].values, vec![rat("0"), rat("4"), rat("0")]);
        assert!(uniform_budget_pricing(2, &[(rat("3"), vec![5], rat("1"))]).is_err());
        assert!(uniform_budget_pricing(2, &[(rat("3"), vec![0], rat("1/2"))]).is_err());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let mut bad = k22(0);
        assert!(matches!(reduce_bcbs(&bad), Err(Error::Validation { .. })));
        bad = k22(2);
        bad.edges.push(("v1".into(), "v2".into()));
        assert!(matches!(reduce_bcbs(&bad), Err(Error::Validation { .. })));

        let mut graph = triangle(2);
        graph.edges.push(("v1".into(), "v1".into()));
        assert!(matches!(reduce_vertex_cover_bayesian(&graph), Err(Error::Validation { .. })));
        assert!(matches!(
            reduce_vertex_cover_bayesian(&four_cycle()),
            Err(Error::Validation { .. })
        ));

        assert!(matches!(reduce("bvc", "{"), Err(Error::Json(_))));
        assert!(matches!(reduce("nope", "{}"), Err(Error::Validation { .. })));
        let report = solve_bcbs(&k22(2));
        assert!(matches!(
            verify_witness("bvc", "{}", &report),
            Err(Error::Validation { .. })
        ));
    }
}
