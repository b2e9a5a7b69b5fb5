//! Independent oracles and enumerators shared by the integration suites.
//!
//! Everything here recomputes results from first principles (vertex
//! enumeration, exhaustive subset search) so the solvers are checked
//! against a second route, not against themselves.

use commitpay::lp::{LinearProgram, Relation};
use commitpay::rational::Rational;
use commitpay::reductions::PricingInput;

#[derive(Debug, PartialEq, Eq)]
pub enum VertexVerdict {
    Infeasible,
    Value(Rational),
}

/// Maximize an LP by enumerating basic points: every choice of `n` active
/// hyperplanes among constraint rows (as equalities) and finite variable
/// bounds. Sound for pointed feasible regions, which every generated LP has
/// (all variables carry a finite lower bound).
pub fn vertex_oracle(lp: &LinearProgram) -> VertexVerdict {
    let n = lp.variables.len();
    let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in &lp.constraints {
        planes.push((c.coeffs.clone(), c.rhs.clone()));
    }
    for (i, (lo, hi)) in lp.bounds.iter().enumerate() {
        for bound in [lo, hi].into_iter().flatten() {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[i] = Rational::one();
            planes.push((coeffs, bound.clone()));
        }
    }
    let mut best: Option<Rational> = None;
    for subset in subsets(planes.len(), n) {
        let rows: Vec<&(Vec<Rational>, Rational)> = subset.iter().map(|&i| &planes[i]).collect();
        let Some(x) = gauss_solve(&rows) else { continue };
        if !feasible(lp, &x) {
            continue;
        }
        let objective: Rational = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        if best.as_ref().map(|b| objective > *b).unwrap_or(true) {
            best = Some(objective);
        }
    }
    match best {
        Some(v) => VertexVerdict::Value(v),
        None => VertexVerdict::Infeasible,
    }
}

pub fn feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    for c in &lp.constraints {
        let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        };
        if !ok {
            return false;
        }
    }
    for (v, (lo, hi)) in x.iter().zip(&lp.bounds) {
        if lo.as_ref().map(|b| v < b).unwrap_or(false) {
            return false;
        }
        if hi.as_ref().map(|b| v > b).unwrap_or(false) {
            return false;
        }
    }
    true
}

/// Solve the square system given by `rows` (coefficients, rhs). `None` when
/// the system is singular.
fn gauss_solve(rows: &[&(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(coeffs, rhs)| {
            let mut row = coeffs.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for entry in a[col].iter_mut() {
            *entry = &*entry / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// All size-`k` index subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn recurse(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            recurse(items, k + 1, out);
            items.swap(k, i);
        }
    }
    recurse(&mut items, 0, &mut out);
    out
}

/// Every graph on `1..=max_n` vertices, one representative per isomorphism
/// class, as (vertex count, edges with endpoints `u < w`).
pub fn canonical_graphs(max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
        let index_of = |u: usize, w: usize| -> usize {
            pairs.iter().position(|&p| p == (u.min(w), u.max(w))).unwrap()
        };
        let perms = permutations(n);
        for mask in 0u32..(1 << pairs.len()) {
            let relabel = |perm: &[usize]| -> u32 {
                let mut m = 0u32;
                for (e, &(u, w)) in pairs.iter().enumerate() {
                    if mask & (1 << e) != 0 {
                        m |= 1 << index_of(perm[u], perm[w]);
                    }
                }
                m
            };
            if perms.iter().map(|p| relabel(p)).min().unwrap() == mask {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(e, _)| mask & (1 << *e) != 0)
                    .map(|(_, &p)| p)
                    .collect();
                out.push((n, edges));
            }
        }
    }
    out
}

/// Exhaustive check for a complete `k` x `k` bipartite subgraph. `edges`
/// holds (left index, right index) pairs.
pub fn has_k_biclique(l: usize, r: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if k > l || k > r {
        return false;
    }
    let adjacent = |u: usize, w: usize| edges.contains(&(u, w));
    for left in subsets(l, k) {
        for right in subsets(r, k) {
            if left.iter().all(|&u| right.iter().all(|&w| adjacent(u, w))) {
                return true;
            }
        }
    }
    false
}

/// Exhaustive check for a vertex set of size at most `k` touching every
/// edge.
pub fn has_k_cover(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    for size in 0..=k.min(n) {
        for cover in subsets(n, size) {
            if edges.iter().all(|&(u, w)| cover.contains(&u) || cover.contains(&w)) {
                return true;
            }
        }
    }
    false
}

/// Best revenue over all price vectors drawn from the value breakpoints
/// (every value in the support, plus one sky-high level that never sells).
/// The buyer takes a highest-surplus item, breaking ties toward the higher
/// value, and buys whenever the surplus is nonnegative.
pub fn best_breakpoint_revenue(inst: &PricingInput) -> Rational {
    let mut candidates: Vec<Rational> = inst
        .support
        .iter()
        .flat_map(|point| point.values.iter().cloned())
        .collect();
    let sky = candidates.iter().max().cloned().unwrap_or_else(Rational::zero) + Rational::one();
    candidates.push(sky);
    candidates.sort();
    candidates.dedup();
    let m = inst.item_count;
    let mut choice = vec![0usize; m];
    let mut best = Rational::zero();
    loop {
        let prices: Vec<&Rational> = choice.iter().map(|&c| &candidates[c]).collect();
        let mut revenue = Rational::zero();
        for point in &inst.support {
            let mut picked: Option<usize> = None;
            for i in 0..m {
                let surplus = &point.values[i] - prices[i];
                if surplus.is_negative() {
                    continue;
                }
                let better = match picked {
                    None => true,
                    Some(j) => {
                        let current = &point.values[j] - prices[j];
                        surplus > current || (surplus == current && point.values[i] > point.values[j])
                    }
                };
                if better {
                    picked = Some(i);
                }
            }
            if let Some(i) = picked {
                revenue += &point.probability * prices[i];
            }
        }
        if revenue > best {
            best = revenue;
        }
        let mut axis = 0;
        loop {
            if axis == m {
                return best;
            }
            choice[axis] += 1;
            if choice[axis] < candidates.len() {
                break;
            }
            choice[axis] = 0;
            axis += 1;
        }
    }
}
