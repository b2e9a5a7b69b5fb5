//! Seeded random instance generators for stress ensembles.
//!
//! Every draw is an integer (payoffs, prior weights, LP coefficients), so
//! generated instances carry small exact rationals and a fixed seed
//! reproduces them byte for byte.

use crate::game::{BayesianGame, NormalFormGame};
use crate::lp::{LinearProgram, Relation};
use crate::rational::Rational;
use crate::reductions::{uniform_budget_pricing, PricingInput};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// The one RNG used everywhere randomness is requested.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Player 1 gets actions a1, a2, ...; player 2 b1, b2, ...; and so on.
fn action_labels(player: usize, count: usize) -> Vec<String> {
    let letter = (b'a' + (player % 26) as u8) as char;
    (1..=count).map(|j| format!("{letter}{j}")).collect()
}

fn random_prior(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..count).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| Rational::new(w, total)).collect()
}

/// Complete game with the given action counts and integer payoffs drawn
/// uniformly from `lo..=hi`.
pub fn random_game(rng: &mut impl Rng, shape: &[usize], lo: i64, hi: i64) -> NormalFormGame {
    let actions: Vec<Vec<String>> =
        shape.iter().enumerate().map(|(i, &n)| action_labels(i, n)).collect();
    let profiles: usize = shape.iter().product();
    let utilities = (0..profiles)
        .map(|_| (0..shape.len()).map(|_| Rational::from_int(rng.gen_range(lo..=hi))).collect())
        .collect();
    NormalFormGame::new(actions, utilities).expect("generated shape is valid")
}

/// Two-player game where the leader has `n_types` private types (labels
/// theta1, theta2, ...) and the follower is single-typed.
pub fn random_leader_types_game(
    rng: &mut impl Rng,
    n_types: usize,
    shape: [usize; 2],
    lo: i64,
    hi: i64,
) -> BayesianGame {
    let actions = vec![action_labels(0, shape[0]), action_labels(1, shape[1])];
    let types = vec![
        (1..=n_types).map(|t| format!("theta{t}")).collect::<Vec<_>>(),
        vec!["t".to_string()],
    ];
    let prior = vec![random_prior(rng, n_types), vec![Rational::one()]];
    let profiles = shape[0] * shape[1];
    let table = |rng: &mut dyn rand::RngCore| -> Vec<Rational> {
        (0..profiles).map(|_| Rational::from_int(rng.gen_range(lo..=hi))).collect()
    };
    let utilities = vec![
        (0..n_types).map(|_| table(rng)).collect(),
        vec![table(rng)],
    ];
    BayesianGame::new(actions, types, prior, utilities, Default::default())
        .expect("generated shape is valid")
}

/// Two-player game where the follower has `n_types` private types and the
/// leader is single-typed.
pub fn random_follower_types_game(
    rng: &mut impl Rng,
    n_types: usize,
    shape: [usize; 2],
    lo: i64,
    hi: i64,
) -> BayesianGame {
    let actions = vec![action_labels(0, shape[0]), action_labels(1, shape[1])];
    let types = vec![
        vec!["t".to_string()],
        (1..=n_types).map(|t| format!("theta{t}")).collect::<Vec<_>>(),
    ];
    let prior = vec![vec![Rational::one()], random_prior(rng, n_types)];
    let profiles = shape[0] * shape[1];
    let table = |rng: &mut dyn rand::RngCore| -> Vec<Rational> {
        (0..profiles).map(|_| Rational::from_int(rng.gen_range(lo..=hi))).collect()
    };
    let utilities = vec![
        vec![table(rng)],
        (0..n_types).map(|_| table(rng)).collect(),
    ];
    BayesianGame::new(actions, types, prior, utilities, Default::default())
        .expect("generated shape is valid")
}

/// Random bounded LP: nonnegative variables under a budget row that keeps
/// the region bounded, plus random small-integer rows of every relation.
/// May be infeasible; is never unbounded.
pub fn random_lp(rng: &mut impl Rng, max_vars: usize, max_constraints: usize) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_constraints);
    let mut lp = LinearProgram::new(
        "random",
        (1..=n).map(|i| format!("x{i}")).collect(),
    );
    lp.objective = (0..n).map(|_| Rational::from_int(rng.gen_range(-5..=5))).collect();
    lp.bounds = vec![(Some(Rational::zero()), None); n];
    lp.constrain(
        "box",
        vec![Rational::one(); n],
        Relation::Le,
        Rational::from_int(rng.gen_range(1..=10)),
    );
    for c in 1..m {
        let coeffs = (0..n).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        let relation = match rng.gen_range(0..5) {
            0 | 1 => Relation::Le,
            2 | 3 => Relation::Ge,
            _ => Relation::Eq,
        };
        lp.constrain(format!("r{c}"), coeffs, relation, Rational::from_int(rng.gen_range(-5..=5)));
    }
    lp
}

/// Random uniform-budget pricing instance: each buyer wants a nonempty item
/// subset at one budget.
pub fn random_pricing(rng: &mut impl Rng, max_items: usize, max_buyers: usize) -> PricingInput {
    let items = rng.gen_range(1..=max_items);
    let buyers = rng.gen_range(1..=max_buyers);
    let weights: Vec<i64> = (0..buyers).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let specs: Vec<(Rational, Vec<usize>, Rational)> = weights
        .iter()
        .map(|&w| {
            let budget = Rational::from_int(rng.gen_range(1..=8));
            let mut wanted: Vec<usize> = (0..items).filter(|_| rng.gen_bool(0.5)).collect();
            if wanted.is_empty() {
                wanted.push(rng.gen_range(0..items));
            }
            (budget, wanted, Rational::new(w, total))
        })
        .collect();
    uniform_budget_pricing(items, &specs).expect("generated instance is valid")
}
