//! Independent reference machinery: Nash enumeration by supports, exhaustive
//! grid searches over commitments, and a step-by-step simulator for the
//! three-player sequential setting. Everything here is deliberately naive so
//! the LP-based solvers can be checked against it.

use crate::error::{Error, Result};
use crate::game::{induce_game, Commitment, NormalFormGame, PaymentFunction, Strategy};
use crate::linalg::{solve_unique, system_rank};
use crate::rational::Rational;
use crate::report::{
    self, CertificateEntry, CommitmentOut, FollowerPlayOut, ReportOut, StandardCommitmentOut,
    StrategyOut, BOUND_LOWER,
};
use std::collections::BTreeSet;

/// Nash equilibria of a two-player game. When some best-response region is
/// degenerate the full set contains continua; `pairs` then lists the
/// vertices of those components and `complete` is false.
#[derive(Clone, Debug)]
pub struct EquilibriumSet {
    /// Strategy pairs, deduplicated and sorted.
    pub pairs: Vec<(Vec<Rational>, Vec<Rational>)>,
    pub payoffs: Vec<[Rational; 2]>,
    pub complete: bool,
}

pub const DEFAULT_SUPPORT_CAP: usize = 6;

/// Enumerate all Nash equilibria of a two-player game by support pairs.
///
/// For supports (S1, S2) the equilibria form a product Q1 x Q2 of two
/// polytopes: player 2's indifference and dominance conditions constrain
/// sigma1 (giving Q1) and player 1's constrain sigma2 (giving Q2). Every
/// point of the product is an equilibrium, so listing vertex pairs of every
/// nonempty product covers all extreme equilibria; the set is complete when
/// every nonempty product is a single point.
pub fn enumerate_nash_two_player(game: &NormalFormGame, cap: usize) -> Result<EquilibriumSet> {
    if game.players() != 2 {
        return Err(Error::validation(format!(
            "equilibrium enumeration handles 2-player games, got {} players",
            game.players()
        )));
    }
    let (m, n) = (game.action_count(0), game.action_count(1));
    let limit = m.max(n);
    let cap = cap.min(16);
    if limit > cap {
        return Err(Error::budget(
            "support enumeration",
            limit as u128,
            cap as u128,
            Some("raise the enumeration cap if the cost is acceptable"),
        ));
    }

    let u = |player: usize, a: usize, b: usize| game.utility_at(player, &[a, b]).clone();

    let mut found: BTreeSet<(Vec<Rational>, Vec<Rational>)> = BTreeSet::new();
    let mut complete = true;
    for mask1 in 1u32..(1 << m) {
        let s1: Vec<usize> = (0..m).filter(|a| mask1 & (1 << a) != 0).collect();
        for mask2 in 1u32..(1 << n) {
            let s2: Vec<usize> = (0..n).filter(|b| mask2 & (1 << b) != 0).collect();
            let q1 = polytope_vertices(m, &s1, &s2, n, |a, b| u(1, a, b));
            if q1.is_empty() {
                continue;
            }
            let q2 = polytope_vertices(n, &s2, &s1, m, |b, a| u(0, a, b));
            if q2.is_empty() {
                continue;
            }
            if q1.len() > 1 || q2.len() > 1 {
                complete = false;
            }
            for v1 in &q1 {
                for v2 in &q2 {
                    found.insert((v1.clone(), v2.clone()));
                }
            }
        }
    }

    let pairs: Vec<(Vec<Rational>, Vec<Rational>)> = found.into_iter().collect();
    let payoffs = pairs
        .iter()
        .map(|(s1, s2)| {
            let mut p = [Rational::zero(), Rational::zero()];
            for (a, wa) in s1.iter().enumerate() {
                if wa.is_zero() {
                    continue;
                }
                for (b, wb) in s2.iter().enumerate() {
                    if wb.is_zero() {
                        continue;
                    }
                    let w = wa * wb;
                    p[0] += &w * &u(0, a, b);
                    p[1] += &w * &u(1, a, b);
                }
            }
            p
        })
        .collect();
    Ok(EquilibriumSet { pairs, payoffs, complete })
}

/// Vertices of { sigma on `own` support : opponent indifferent across
/// `opp_support` and weakly preferring it to everything else }, embedded in
/// the full `dim`-simplex. `opp_u(own_action, opp_action)` is the opponent's
/// utility.
fn polytope_vertices(
    dim: usize,
    own_support: &[usize],
    opp_support: &[usize],
    opp_total: usize,
    opp_u: impl Fn(usize, usize) -> Rational,
) -> Vec<Vec<Rational>> {
    let d = own_support.len();
    let opp_rest: Vec<usize> = {
        let mut seen = vec![false; opp_total];
        for &b in opp_support {
            seen[b] = true;
        }
        (0..opp_total).filter(|&b| !seen[b]).collect()
    };
    let b0 = opp_support[0];

    // Equalities over the support coordinates.
    let mut e_rows: Vec<Vec<Rational>> = vec![vec![Rational::one(); d]];
    let mut e_rhs: Vec<Rational> = vec![Rational::one()];
    for &b in &opp_support[1..] {
        e_rows.push(own_support.iter().map(|&a| opp_u(a, b) - opp_u(a, b0)).collect());
        e_rhs.push(Rational::zero());
    }

    // Inequalities g.x <= h: nonnegativity and dominance of the support.
    let mut g_rows: Vec<Vec<Rational>> = Vec::new();
    let mut g_rhs: Vec<Rational> = Vec::new();
    for j in 0..d {
        let mut row = vec![Rational::zero(); d];
        row[j] = -Rational::one();
        g_rows.push(row);
        g_rhs.push(Rational::zero());
    }
    for &b in &opp_rest {
        g_rows.push(own_support.iter().map(|&a| opp_u(a, b) - opp_u(a, b0)).collect());
        g_rhs.push(Rational::zero());
    }

    let Some(re) = system_rank(&e_rows, &e_rhs) else {
        return Vec::new();
    };

    let mut vertices: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut check_and_insert = |x: &[Rational]| {
        for (row, rhs) in g_rows.iter().zip(&g_rhs) {
            let lhs: Rational = row.iter().zip(x).map(|(c, v)| c * v).sum();
            if lhs > *rhs {
                return;
            }
        }
        let mut full = vec![Rational::zero(); dim];
        for (j, &a) in own_support.iter().enumerate() {
            full[a] = x[j].clone();
        }
        vertices.insert(full);
    };

    if re == d {
        if let Some(x) = solve_unique(&e_rows, &e_rhs) {
            check_and_insert(&x);
        }
        return vertices.into_iter().collect();
    }

    for subset in combinations(g_rows.len(), d - re) {
        let mut rows = e_rows.clone();
        let mut rhs = e_rhs.clone();
        for &i in &subset {
            rows.push(g_rows[i].clone());
            rhs.push(g_rhs[i].clone());
        }
        if let Some(x) = solve_unique(&rows, &rhs) {
            check_and_insert(&x);
        }
    }
    vertices.into_iter().collect()
}

/// All k-element index subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The equilibrium of the induced follower game that the leader likes best.
#[derive(Clone, Debug)]
pub struct BestNash {
    pub value: Rational,
    /// Follower strategies (players 2 and 3) at the chosen equilibrium.
    pub play: (Vec<Rational>, Vec<Rational>),
    pub complete: bool,
}

/// Best Nash equilibrium for the leader in the game induced by a
/// three-player commitment. Leader value is bilinear in the follower
/// strategies, so over each equilibrium component the maximum is attained at
/// a vertex pair; scanning the enumerated pairs is exact even when the
/// equilibrium set contains continua.
pub fn best_nash_for_leader(
    game: &NormalFormGame,
    commitment: &Commitment,
    cap: usize,
) -> Result<BestNash> {
    if game.players() != 3 {
        return Err(Error::validation(format!(
            "best-equilibrium selection is for 3-player games, got {} players",
            game.players()
        )));
    }
    let induced = induce_game(game, commitment)?;
    let eq = enumerate_nash_two_player(&induced.followers, cap)?;
    if eq.pairs.is_empty() {
        return Err(Error::Internal(
            "no equilibrium found in a finite game; enumeration is broken".to_string(),
        ));
    }
    let n3 = induced.followers.action_count(1);
    let mut best: Option<(Rational, usize)> = None;
    for (i, (s2, s3)) in eq.pairs.iter().enumerate() {
        let mut v = Rational::zero();
        for (b, wb) in s2.iter().enumerate() {
            if wb.is_zero() {
                continue;
            }
            for (c, wc) in s3.iter().enumerate() {
                if wc.is_zero() {
                    continue;
                }
                v += &(wb * wc) * &induced.leader_residual[b * n3 + c];
            }
        }
        if best.as_ref().map(|(bv, _)| v > *bv).unwrap_or(true) {
            best = Some((v, i));
        }
    }
    let (value, idx) = best.expect("nonempty equilibrium list");
    Ok(BestNash { value, play: eq.pairs[idx].clone(), complete: eq.complete })
}

/// Mixtures over `parts` coordinates whose weights are multiples of
/// `1/denom`, in lexicographic order of the weight vectors.
pub fn simplex_grid(parts: usize, denom: u64) -> Vec<Vec<Rational>> {
    fn rec(parts: usize, left: u64, denom: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<Rational>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(
                prefix
                    .iter()
                    .map(|&k| Rational::new(k as i64, denom as i64))
                    .collect(),
            );
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(parts - 1, left - k, denom, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(parts, denom, denom, &mut prefix, &mut out);
    out
}

pub fn simplex_grid_len(parts: usize, denom: u64) -> u128 {
    // C(denom + parts - 1, parts - 1)
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..(parts as u128 - 1) {
        num = num.saturating_mul(denom as u128 + i + 1);
        den = den.saturating_mul(i + 1);
    }
    num / den
}

/// Validate a grid step and return the grid denominator.
pub fn grid_denominator(step: &Rational) -> Result<u64> {
    if !step.is_positive() {
        return Err(Error::validation("grid step must be positive"));
    }
    let inv = step.recip();
    if *inv.denom() != num::BigInt::from(1) {
        return Err(Error::validation(format!(
            "grid step must be the reciprocal of a positive integer, got {step}"
        )));
    }
    use num::ToPrimitive;
    inv.numer()
        .to_u64()
        .ok_or_else(|| Error::validation(format!("grid step {step} is too fine")))
}

/// Payment amounts {0, step, 2 step, ...} up to `cap`.
pub fn amount_grid(step: &Rational, cap: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut v = step.clone();
    while v <= *cap {
        out.push(v.clone());
        v = &v + step;
    }
    out
}

/// Follower best response to a two-player commitment with leader-favoring
/// tie-breaks: the follower maximizes its paid utility, breaks ties toward
/// the leader's net value, then toward the lowest action index. Returns the
/// chosen action and the leader's net value.
pub fn follower_best_response(
    game: &NormalFormGame,
    sigma: &[Rational],
    pay: &[Rational],
) -> (usize, Rational) {
    let n = game.action_count(1);
    let mut best: Option<(usize, Rational, Rational)> = None;
    for b in 0..n {
        let mut fv = pay[b].clone();
        let mut lv = -&pay[b];
        for (a, w) in sigma.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            fv += w * game.utility_at(1, &[a, b]);
            lv += w * game.utility_at(0, &[a, b]);
        }
        let better = match &best {
            None => true,
            Some((_, bfv, blv)) => fv > *bfv || (fv == *bfv && lv > *blv),
        };
        if better {
            best = Some((b, fv, lv));
        }
    }
    let (b, _, lv) = best.expect("follower has at least one action");
    (b, lv)
}

/// Exhaustive grid search over two-player commitments: leader mixtures on
/// the `1/denom` grid crossed with single-action payment schedules. Single
/// -action schedules lose nothing: paying only the action the follower is
/// meant to choose preserves both the best response and the tie-break.
pub fn brute_force_commitment(
    game: &NormalFormGame,
    step: &Rational,
    cap: Option<Rational>,
    budget: u128,
) -> Result<ReportOut> {
    if game.players() != 2 {
        return Err(Error::validation("the brute-force search handles 2-player games"));
    }
    let denom = grid_denominator(step)?;
    let cap = cap.unwrap_or_else(|| game.utility_range(1));
    let m = game.action_count(0);
    let n = game.action_count(1);
    let amounts = amount_grid(step, &cap);
    let mixtures = simplex_grid_len(m, denom);
    let candidates = mixtures.saturating_mul(1 + (n as u128) * (amounts.len() as u128 - 1));
    if candidates > budget {
        return Err(Error::budget(
            "brute-force commitment search",
            candidates,
            budget,
            Some("coarsen the step or lower the payment cap"),
        ));
    }

    let mut best: Option<(Rational, Vec<Rational>, Option<(usize, Rational)>, usize)> = None;
    for sigma in simplex_grid(m, denom) {
        let mut consider = |payment: Option<(usize, Rational)>| {
            let mut pay = vec![Rational::zero(); n];
            if let Some((b, amt)) = &payment {
                pay[*b] = amt.clone();
            }
            let (b, lv) = follower_best_response(game, &sigma, &pay);
            let better = best.as_ref().map(|(bv, ..)| lv > *bv).unwrap_or(true);
            if better {
                best = Some((lv, sigma.clone(), payment, b));
            }
        };
        consider(None);
        for b in 0..n {
            for amt in &amounts[1..] {
                consider(Some((b, amt.clone())));
            }
        }
    }

    let (value, sigma, payment, b_star) = best.expect("grid contains the pure strategies");
    let mut pay = vec![Rational::zero(); n];
    if let Some((b, amt)) = &payment {
        pay[*b] = amt.clone();
    }
    let certificate = two_player_ic_certificate(game, &sigma, &pay, b_star);
    Ok(ReportOut {
        setting: "brute-force".to_string(),
        bound: BOUND_LOWER.to_string(),
        value,
        step: Some(step.clone()),
        cap: Some(cap),
        commitment: CommitmentOut::Standard(StandardCommitmentOut {
            strategy: StrategyOut::Mixture {
                weights: report::mixture_out(game.action_labels(0), &sigma),
            },
            payments: report::payments_out(
                game,
                &PaymentFunction::follower_action_only(pay).expect("nonnegative grid amounts"),
            ),
        }),
        follower_play: report::pure_play_out(game, &[b_star]),
        certificate,
        sequential_plan: None,
        inner_commitment: None,
        completeness: None,
    })
}

/// Incentive slacks for a two-player commitment: the follower's paid value
/// at the target action minus its paid value at each alternative.
pub fn two_player_ic_certificate(
    game: &NormalFormGame,
    sigma: &[Rational],
    pay: &[Rational],
    target: usize,
) -> Vec<CertificateEntry> {
    let follower_value = |b: usize| -> Rational {
        let mut fv = pay[b].clone();
        for (a, w) in sigma.iter().enumerate() {
            if !w.is_zero() {
                fv += w * game.utility_at(1, &[a, b]);
            }
        }
        fv
    };
    let target_value = follower_value(target);
    (0..game.action_count(1))
        .filter(|&b| b != target)
        .map(|b| CertificateEntry {
            id: format!("ic:{}", game.action_label(1, b)),
            slack: &target_value - &follower_value(b),
        })
        .collect()
}

/// Grid search over outcome-conditional payments alone (no strategy
/// commitment): both players then play a Nash equilibrium of the modified
/// game and the leader gets the best equilibrium, evaluated exactly over
/// the enumerated equilibrium set.
pub fn payments_only_search(
    game: &NormalFormGame,
    step: &Rational,
    cap: Option<Rational>,
    budget: u128,
    support_cap: usize,
) -> Result<ReportOut> {
    if game.players() != 2 {
        return Err(Error::validation("the payment-only search handles 2-player games"));
    }
    grid_denominator(step)?;
    let cap = cap.unwrap_or_else(|| game.utility_range(1));
    let amounts = amount_grid(step, &cap);
    let coords = game.profile_count();
    let combos = (amounts.len() as u128)
        .checked_pow(coords.try_into().map_err(|_| {
            Error::validation("game too large for the payment-only search")
        })?)
        .ok_or_else(|| {
            Error::budget("payment-only search", u128::MAX, budget, None)
        })?;
    if combos > budget {
        return Err(Error::budget(
            "payment-only search",
            combos,
            budget,
            Some("coarsen the step or lower the payment cap"),
        ));
    }

    let mut best: Option<(Rational, Vec<Rational>, (Vec<Rational>, Vec<Rational>), bool)> = None;
    let mut digits = vec![0usize; coords];
    loop {
        let payment: Vec<Rational> = digits.iter().map(|&k| amounts[k].clone()).collect();
        let modified = {
            let utilities: Vec<Vec<Rational>> = (0..coords)
                .map(|p| {
                    vec![game.utility(0, p) - &payment[p], game.utility(1, p) + &payment[p]]
                })
                .collect();
            NormalFormGame::new(game.actions().to_vec(), utilities)
                .expect("modifying utilities keeps the game valid")
        };
        let eq = enumerate_nash_two_player(&modified, support_cap)?;
        for (i, (s1, s2)) in eq.pairs.iter().enumerate() {
            let v = eq.payoffs[i][0].clone();
            let better = best.as_ref().map(|(bv, ..)| v > *bv).unwrap_or(true);
            if better {
                best = Some((v, payment.clone(), (s1.clone(), s2.clone()), eq.complete));
            }
        }

        let mut pos = coords;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if digits[pos] + 1 < amounts.len() {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
        if digits.iter().all(|&k| k == 0) {
            break;
        }
    }

    let (value, payment, (s1, s2), complete) = best.expect("every game has an equilibrium");
    let tensor: Vec<Vec<Rational>> = payment.iter().map(|p| vec![p.clone()]).collect();
    let mut joint = std::collections::BTreeMap::new();
    for (a, wa) in s1.iter().enumerate() {
        for (b, wb) in s2.iter().enumerate() {
            let w = wa * wb;
            if !w.is_zero() {
                joint.insert(game.profile_key(&[a, b]), w);
            }
        }
    }
    let certificate = nash_certificate(game, &payment, &s1, &s2);
    Ok(ReportOut {
        setting: "payments-only".to_string(),
        bound: BOUND_LOWER.to_string(),
        value,
        step: Some(step.clone()),
        cap: Some(cap),
        commitment: CommitmentOut::Standard(StandardCommitmentOut {
            strategy: StrategyOut::None,
            payments: report::payments_out(
                game,
                &PaymentFunction::outcome_conditional(tensor).expect("nonnegative grid amounts"),
            ),
        }),
        follower_play: FollowerPlayOut::Joint { distribution: joint },
        certificate,
        sequential_plan: None,
        inner_commitment: None,
        completeness: Some(
            if complete { "complete" } else { "vertex-representatives-only" }.to_string(),
        ),
    })
}

/// Best-response slacks certifying a strategy pair is an equilibrium of the
/// payment-modified game.
fn nash_certificate(
    game: &NormalFormGame,
    payment: &[Rational],
    s1: &[Rational],
    s2: &[Rational],
) -> Vec<CertificateEntry> {
    let mod_u = |player: usize, a: usize, b: usize| -> Rational {
        let p = game.profile_index(&[a, b]);
        match player {
            0 => game.utility(0, p) - &payment[p],
            _ => game.utility(1, p) + &payment[p],
        }
    };
    let mut out = Vec::new();
    let eq_value = |player: usize| -> Rational {
        let mut v = Rational::zero();
        for (a, wa) in s1.iter().enumerate() {
            for (b, wb) in s2.iter().enumerate() {
                let w = wa * wb;
                if !w.is_zero() {
                    v += &w * &mod_u(player, a, b);
                }
            }
        }
        v
    };
    let v1 = eq_value(0);
    for a in 0..game.action_count(0) {
        let mut dev = Rational::zero();
        for (b, wb) in s2.iter().enumerate() {
            if !wb.is_zero() {
                dev += wb * &mod_u(0, a, b);
            }
        }
        out.push(CertificateEntry {
            id: format!("br:1:{}", game.action_label(0, a)),
            slack: &v1 - &dev,
        });
    }
    let v2 = eq_value(1);
    for b in 0..game.action_count(1) {
        let mut dev = Rational::zero();
        for (a, wa) in s1.iter().enumerate() {
            if !wa.is_zero() {
                dev += wa * &mod_u(1, a, b);
            }
        }
        out.push(CertificateEntry {
            id: format!("br:2:{}", game.action_label(1, b)),
            slack: &v2 - &dev,
        });
    }
    out
}

/// Realized play in the three-player sequential setting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialOutcome {
    pub profile: [usize; 3],
    pub leader_value: Rational,
    pub p2_value: Rational,
    pub p3_value: Rational,
}

/// Simulate sequential play after the leader commits to `a1` and an
/// outcome-conditional payment schedule. Player 2 moves, then commits to a
/// single-target payment for player 3 (the exact amount that makes the
/// target weakly optimal), then player 3 moves. Ties are broken in the
/// established order: each mover prefers its own paid value, then the
/// previous movers' values in reverse seniority, then the lowest action
/// index.
pub fn simulate_sequential_pure(
    game: &NormalFormGame,
    a1: usize,
    payments: &PaymentFunction,
) -> Result<SequentialOutcome> {
    if game.players() != 3 {
        return Err(Error::validation("sequential simulation is for 3-player games"));
    }
    payments.validate_against(game)?;
    let n2 = game.action_count(1);
    let n3 = game.action_count(2);
    let w = |player: usize, b: usize, c: usize| -> Rational {
        let profile = [a1, b, c];
        game.utility_at(player, &profile) + &payments.at(game, &profile, player - 1)
    };
    let res1 = |b: usize, c: usize| -> Rational {
        let profile = [a1, b, c];
        game.utility_at(0, &profile)
            - &payments.at(game, &profile, 0)
            - &payments.at(game, &profile, 1)
    };

    // (p2 value, p1 value, b, x, p3 value), maximized lexicographically on
    // the first two with first-come tie-breaks on (b, target).
    let mut chosen: Option<(Rational, Rational, usize, usize, Rational)> = None;
    for b in 0..n2 {
        let w3_max = (0..n3).map(|x| w(2, b, x)).max().expect("actions");
        for target in 0..n3 {
            let delta = {
                let gap = &w3_max - &w(2, b, target);
                if gap.is_negative() {
                    Rational::zero()
                } else {
                    gap
                }
            };
            // Player 3's choice under (b, pay delta on target).
            let g = |x: usize| -> Rational {
                let mut v = w(2, b, x);
                if x == target {
                    v += delta.clone();
                }
                v
            };
            let p2_net = |x: usize| -> Rational {
                let mut v = w(1, b, x);
                if x == target {
                    v -= &delta;
                }
                v
            };
            let mut x_star: Option<(usize, Rational, Rational, Rational)> = None;
            for x in 0..n3 {
                let cand = (g(x), p2_net(x), res1(b, x));
                let better = match &x_star {
                    None => true,
                    Some((_, g0, p0, r0)) => {
                        cand.0 > *g0
                            || (cand.0 == *g0 && cand.1 > *p0)
                            || (cand.0 == *g0 && cand.1 == *p0 && cand.2 > *r0)
                    }
                };
                if better {
                    x_star = Some((x, cand.0, cand.1, cand.2));
                }
            }
            let (x, p3v, p2v, p1v) = x_star.expect("actions");
            let better = match &chosen {
                None => true,
                Some((bp2, bp1, ..)) => p2v > *bp2 || (p2v == *bp2 && p1v > *bp1),
            };
            if better {
                chosen = Some((p2v, p1v, b, x, p3v));
            }
        }
    }
    let (p2_value, leader_value, b, x, p3_value) = chosen.expect("actions");
    Ok(SequentialOutcome { profile: [a1, b, x], leader_value, p2_value, p3_value })
}

/// Grid commitment for a three-player game: a leader mixture plus an
/// outcome-conditional payment tensor, iterated coordinate-wise.
pub(crate) struct CommitmentGrid {
    pub mixtures: Vec<Vec<Rational>>,
    pub amounts: Vec<Rational>,
    pub coords: usize,
}

impl CommitmentGrid {
    pub fn new(
        game: &NormalFormGame,
        step: &Rational,
        cap: Option<Rational>,
        budget: u128,
        operation: &'static str,
    ) -> Result<(Self, Rational)> {
        let denom = grid_denominator(step)?;
        let cap = cap.unwrap_or_else(|| {
            (1..game.players()).map(|i| game.utility_range(i)).max().expect("followers")
        });
        let amounts = amount_grid(step, &cap);
        let coords = game.profile_count() * (game.players() - 1);
        let mix_count = simplex_grid_len(game.action_count(0), denom);
        let pay_count = (amounts.len() as u128)
            .checked_pow(coords.try_into().map_err(|_| Error::validation("game too large"))?)
            .unwrap_or(u128::MAX);
        let total = mix_count.saturating_mul(pay_count);
        if total > budget {
            return Err(Error::budget(
                operation,
                total,
                budget,
                Some("coarsen the step, lower the payment cap, or shrink the game"),
            ));
        }
        Ok((
            CommitmentGrid {
                mixtures: simplex_grid(game.action_count(0), denom),
                amounts,
                coords,
            },
            cap,
        ))
    }

    /// Visit every (mixture, payment tensor) pair in deterministic order.
    pub fn for_each(
        &self,
        followers: usize,
        mut f: impl FnMut(&[Rational], &[Vec<Rational>]) -> Result<()>,
    ) -> Result<()> {
        let per_profile = followers;
        for sigma in &self.mixtures {
            let mut digits = vec![0usize; self.coords];
            loop {
                let tensor: Vec<Vec<Rational>> = digits
                    .chunks(per_profile)
                    .map(|chunk| chunk.iter().map(|&k| self.amounts[k].clone()).collect())
                    .collect();
                f(sigma, &tensor)?;
                let mut pos = self.coords;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    if digits[pos] + 1 < self.amounts.len() {
                        digits[pos] += 1;
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn commitment_of(sigma: &[Rational], tensor: &[Vec<Rational>]) -> Commitment {
    Commitment {
        strategy: Strategy::Mixture(sigma.to_vec()),
        payments: PaymentFunction::OutcomeConditional(tensor.to_vec()),
    }
}
