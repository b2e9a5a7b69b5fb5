//! Exact linear programming over rationals.
//!
//! A dense two-phase tableau simplex with Bland's smallest-index rule: no
//! floats, no tolerances, no cycling. Problem sizes here are small (at most
//! a few thousand variables), so dense rows and textbook pivoting are the
//! right trade; determinism of the pivot sequence makes solver outputs
//! bit-stable, which the golden tests rely on.
//!
//! Every `Optimal` result carries the dual vector for the original
//! constraint system, and `verify_optimality` re-checks the full optimality
//! certificate (feasibility, dual signs, complementary slackness, zero
//! duality gap) from the original problem data, independently of the
//! tableau that produced it.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flip(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Constraint {
    /// Stable identifier; solver certificates are (name, slack) pairs.
    pub name: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub name: String,
    pub variables: Vec<String>,
    /// Maximized.
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// Per-variable (lower, upper); `None` means unbounded on that side.
    pub bounds: Vec<(Option<Rational>, Option<Rational>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal only: one value per variable.
    pub assignment: Vec<Rational>,
    /// Optimal only.
    pub objective_value: Rational,
    /// Optimal only: one dual per original constraint.
    pub duals: Vec<Rational>,
    /// Unbounded only: feasible improving direction.
    pub ray: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(name: impl Into<String>, variables: Vec<String>) -> Self {
        let n = variables.len();
        LinearProgram {
            name: name.into(),
            variables,
            objective: vec![Rational::zero(); n],
            constraints: Vec::new(),
            bounds: vec![(None, None); n],
        }
    }

    pub fn constrain(
        &mut self,
        name: impl Into<String>,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint { name: name.into(), coeffs, relation, rhs });
    }

    fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        let mut issues = Vec::new();
        if n == 0 {
            issues.push(format!("lp {}: no variables", self.name));
        }
        if self.objective.len() != n {
            issues.push(format!("lp {}: objective arity mismatch", self.name));
        }
        if self.bounds.len() != n {
            issues.push(format!("lp {}: bounds arity mismatch", self.name));
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                issues.push(format!("lp {}: constraint {} arity mismatch", self.name, c.name));
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation { issues })
        }
    }

    /// Human-readable rendering for `--dump-lp`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lp {}", self.name);
        let term = |coeffs: &[Rational]| -> String {
            let mut s = String::new();
            let mut first = true;
            for (j, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if first {
                    if c.is_negative() {
                        s.push_str("- ");
                    }
                    first = false;
                } else {
                    s.push_str(if c.is_negative() { " - " } else { " + " });
                }
                let a = c.abs();
                if a == Rational::one() {
                    let _ = write!(s, "{}", self.variables[j]);
                } else {
                    let _ = write!(s, "{} {}", a, self.variables[j]);
                }
            }
            if first {
                s.push('0');
            }
            s
        };
        let _ = writeln!(out, "maximize: {}", term(&self.objective));
        let _ = writeln!(out, "subject to:");
        for c in &self.constraints {
            let _ = writeln!(out, "  {}: {} {} {}", c.name, term(&c.coeffs), c.relation.symbol(), c.rhs);
        }
        let _ = writeln!(out, "bounds:");
        for (j, (lo, hi)) in self.bounds.iter().enumerate() {
            let line = match (lo, hi) {
                (None, None) => format!("  {} free", self.variables[j]),
                (Some(l), None) => format!("  {} >= {}", self.variables[j], l),
                (None, Some(u)) => format!("  {} <= {}", self.variables[j], u),
                (Some(l), Some(u)) => format!("  {} <= {} <= {}", l, self.variables[j], u),
            };
            let _ = writeln!(out, "{}", line);
        }
        out
    }
}

/// How an original variable maps into standard-form columns.
#[derive(Clone, Debug)]
enum Sub {
    /// x = offset + x'
    Shift { col: usize, offset: Rational },
    /// x = offset - x'
    Flip { col: usize, offset: Rational },
    /// x = x⁺ - x⁻
    Split { pos: usize, neg: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RowOrigin {
    Constraint(usize),
    VarBound,
}

struct Tableau {
    /// rows x (cols + 1); last entry of each row is the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Column index used to read the row's dual, and how: (col, negate).
    dual_read: Vec<(usize, bool)>,
    origin: Vec<RowOrigin>,
    flipped: Vec<bool>,
    cols: usize,
    artificial_start: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        for c in 0..=self.cols {
            let v = &self.rows[r][c] * &inv;
            self.rows[r][c] = v;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let factor = self.rows[i][e].clone();
            for c in 0..=self.cols {
                let v = &self.rows[i][c] - &(&factor * &self.rows[r][c]);
                self.rows[i][c] = v;
            }
        }
        self.basis[r] = e;
    }

    /// Bland's rule simplex on the current basis for cost vector `cost`
    /// (len = cols). Columns in [bar_from, cols) never enter. Returns the
    /// entering column on unboundedness.
    fn run(&mut self, cost: &[Rational], bar_from: usize) -> Option<usize> {
        loop {
            let cb: Vec<Rational> = self.basis.iter().map(|&b| cost[b].clone()).collect();
            let mut entering = None;
            'cols: for j in 0..bar_from {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (r, cbr) in cb.iter().enumerate() {
                    if !cbr.is_zero() && !self.rows[r][j].is_zero() {
                        rc = rc - cbr * &self.rows[r][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break 'cols;
                }
            }
            let Some(e) = entering else {
                return None;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][e].is_positive() {
                    let ratio = self.rhs(r) / &self.rows[r][e];
                    match &leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, best)) => {
                            if ratio < *best
                                || (ratio == *best && self.basis[r] < self.basis[*lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Some(e),
            }
        }
    }
}

fn build_tableau(lp: &LinearProgram) -> Result<(Vec<Sub>, Tableau, Vec<Rational>, Option<LpSolution>)> {
    // Substitute variables so every standard-form column is >= 0.
    let mut subs = Vec::with_capacity(lp.variables.len());
    let mut ncols = 0usize;
    let mut bound_rows = Vec::new(); // (col, cap)
    for (j, (lo, hi)) in lp.bounds.iter().enumerate() {
        match (lo, hi) {
            (Some(l), Some(u)) => {
                if l > u {
                    return Ok((
                        Vec::new(),
                        Tableau {
                            rows: vec![],
                            basis: vec![],
                            dual_read: vec![],
                            origin: vec![],
                            flipped: vec![],
                            cols: 0,
                            artificial_start: 0,
                        },
                        Vec::new(),
                        Some(LpSolution {
                            status: LpStatus::Infeasible,
                            assignment: vec![],
                            objective_value: Rational::zero(),
                            duals: vec![],
                            ray: vec![],
                        }),
                    ));
                }
                subs.push(Sub::Shift { col: ncols, offset: l.clone() });
                bound_rows.push((ncols, u - l));
                ncols += 1;
            }
            (Some(l), None) => {
                subs.push(Sub::Shift { col: ncols, offset: l.clone() });
                ncols += 1;
            }
            (None, Some(u)) => {
                subs.push(Sub::Flip { col: ncols, offset: u.clone() });
                ncols += 1;
            }
            (None, None) => {
                subs.push(Sub::Split { pos: ncols, neg: ncols + 1 });
                ncols += 2;
            }
        }
        let _ = j;
    }

    // Standard-form rows: original constraints then upper-bound rows.
    struct Row {
        coeffs: Vec<Rational>,
        rel: Relation,
        rhs: Rational,
        origin: RowOrigin,
        flipped: bool,
    }
    let mut rows = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); ncols];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &subs[j] {
                Sub::Shift { col, offset } => {
                    coeffs[*col] = &coeffs[*col] + a;
                    rhs = rhs - a * offset;
                }
                Sub::Flip { col, offset } => {
                    coeffs[*col] = &coeffs[*col] - a;
                    rhs = rhs - a * offset;
                }
                Sub::Split { pos, neg } => {
                    coeffs[*pos] = &coeffs[*pos] + a;
                    coeffs[*neg] = &coeffs[*neg] - a;
                }
            }
        }
        let mut row = Row { coeffs, rel: c.relation, rhs, origin: RowOrigin::Constraint(i), flipped: false };
        if row.rhs.is_negative() {
            row.coeffs = row.coeffs.iter().map(|v| -v).collect();
            row.rhs = -row.rhs;
            row.rel = row.rel.flip();
            row.flipped = true;
        }
        rows.push(row);
    }
    for (col, cap) in bound_rows {
        let mut coeffs = vec![Rational::zero(); ncols];
        coeffs[col] = Rational::one();
        rows.push(Row { coeffs, rel: Relation::Le, rhs: cap, origin: RowOrigin::VarBound, flipped: false });
    }

    // Attach slack/surplus/artificial columns.
    let m = rows.len();
    let mut slack_cols = 0usize;
    for row in &rows {
        if !matches!(row.rel, Relation::Eq) {
            slack_cols += 1;
        }
    }
    let mut art_cols = 0usize;
    for row in &rows {
        if !matches!(row.rel, Relation::Le) {
            art_cols += 1;
        }
    }
    let total = ncols + slack_cols + art_cols;
    let artificial_start = ncols + slack_cols;
    let mut trows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut dual_read = Vec::with_capacity(m);
    let mut next_slack = ncols;
    let mut next_art = artificial_start;
    for row in &rows {
        let mut t = vec![Rational::zero(); total + 1];
        t[..ncols].clone_from_slice(&row.coeffs);
        t[total] = row.rhs.clone();
        match row.rel {
            Relation::Le => {
                t[next_slack] = Rational::one();
                basis.push(next_slack);
                dual_read.push((next_slack, true));
                next_slack += 1;
            }
            Relation::Ge => {
                t[next_slack] = -Rational::one();
                dual_read.push((next_slack, false));
                next_slack += 1;
                t[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                t[next_art] = Rational::one();
                basis.push(next_art);
                dual_read.push((next_art, true));
                next_art += 1;
            }
        }
        trows.push(t);
    }
    let tableau = Tableau {
        rows: trows,
        basis,
        dual_read,
        origin: rows.iter().map(|r| r.origin).collect(),
        flipped: rows.iter().map(|r| r.flipped).collect(),
        cols: total,
        artificial_start,
    };

    // Objective over standard-form columns; the constant offset is not
    // tracked because the final objective value is recomputed from the
    // recovered original assignment.
    let mut cost = vec![Rational::zero(); total];
    for (j, c) in lp.objective.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match &subs[j] {
            Sub::Shift { col, .. } => cost[*col] = &cost[*col] + c,
            Sub::Flip { col, .. } => cost[*col] = &cost[*col] - c,
            Sub::Split { pos, neg } => {
                cost[*pos] = &cost[*pos] + c;
                cost[*neg] = &cost[*neg] - c;
            }
        }
    }
    Ok((subs, tableau, cost, None))
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let (subs, mut t, cost, early) = build_tableau(lp)?;
    if let Some(sol) = early {
        return Ok(sol);
    }

    // Phase 1: drive artificials to zero.
    if t.artificial_start < t.cols {
        let mut phase1 = vec![Rational::zero(); t.cols];
        for c in t.artificial_start..t.cols {
            phase1[c] = -Rational::one();
        }
        if t.run(&phase1, t.artificial_start).is_some() {
            return Err(Error::Internal("phase-1 objective unbounded".into()));
        }
        let mut infeas = Rational::zero();
        for (r, &b) in t.basis.iter().enumerate() {
            if b >= t.artificial_start {
                infeas += t.rhs(r).clone();
            }
        }
        if !infeas.is_zero() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                assignment: vec![],
                objective_value: Rational::zero(),
                duals: vec![],
                ray: vec![],
            });
        }
        // Pivot remaining zero-value artificials out; drop rows that are
        // redundant (no structural entry left).
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= t.artificial_start {
                match (0..t.artificial_start).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        t.dual_read.remove(r);
                        t.origin.remove(r);
                        t.flipped.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // Phase 2.
    if let Some(e) = t.run(&cost, t.artificial_start) {
        // Unbounded: direction raises column e, adjusting basic columns.
        let mut d_std = vec![Rational::zero(); t.cols];
        d_std[e] = Rational::one();
        for (r, &b) in t.basis.iter().enumerate() {
            if b < t.cols {
                d_std[b] = -t.rows[r][e].clone();
            }
        }
        let mut ray = vec![Rational::zero(); lp.variables.len()];
        for (j, sub) in subs.iter().enumerate() {
            ray[j] = match sub {
                Sub::Shift { col, .. } => d_std[*col].clone(),
                Sub::Flip { col, .. } => -d_std[*col].clone(),
                Sub::Split { pos, neg } => &d_std[*pos] - &d_std[*neg],
            };
        }
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            assignment: vec![],
            objective_value: Rational::zero(),
            duals: vec![],
            ray,
        });
    }

    // Recover the original assignment.
    let mut x_std = vec![Rational::zero(); t.cols];
    for (r, &b) in t.basis.iter().enumerate() {
        x_std[b] = t.rhs(r).clone();
    }
    let mut assignment = Vec::with_capacity(lp.variables.len());
    for sub in &subs {
        assignment.push(match sub {
            Sub::Shift { col, offset } => offset + &x_std[*col],
            Sub::Flip { col, offset } => offset - &x_std[*col],
            Sub::Split { pos, neg } => &x_std[*pos] - &x_std[*neg],
        });
    }
    let objective_value: Rational =
        lp.objective.iter().zip(&assignment).map(|(c, x)| c * x).sum();

    // Duals: reduced cost of each row's unit column under phase-2 costs.
    let cb: Vec<Rational> = t.basis.iter().map(|&b| cost[b].clone()).collect();
    let mut duals = vec![Rational::zero(); lp.constraints.len()];
    for r in 0..t.rows.len() {
        let RowOrigin::Constraint(i) = t.origin[r] else {
            continue;
        };
        let (col, negate) = t.dual_read[r];
        let mut rc = cost[col].clone();
        for (rr, cbr) in cb.iter().enumerate() {
            if !cbr.is_zero() && !t.rows[rr][col].is_zero() {
                rc = rc - cbr * &t.rows[rr][col];
            }
        }
        let mut y = if negate { -rc } else { rc };
        if t.flipped[r] {
            y = -y;
        }
        duals[i] = y;
    }

    Ok(LpSolution {
        status: LpStatus::Optimal,
        assignment,
        objective_value,
        duals,
        ray: vec![],
    })
}

/// Exact feasibility check of an assignment against the original problem.
pub fn check_feasible(lp: &LinearProgram, x: &[Rational]) -> std::result::Result<(), String> {
    if x.len() != lp.variables.len() {
        return Err(format!("assignment arity {} vs {} variables", x.len(), lp.variables.len()));
    }
    for (j, (lo, hi)) in lp.bounds.iter().enumerate() {
        if let Some(l) = lo {
            if &x[j] < l {
                return Err(format!("{} = {} below lower bound {}", lp.variables[j], x[j], l));
            }
        }
        if let Some(u) = hi {
            if &x[j] > u {
                return Err(format!("{} = {} above upper bound {}", lp.variables[j], x[j], u));
            }
        }
    }
    for c in &lp.constraints {
        let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        };
        if !ok {
            return Err(format!("constraint {} violated: lhs {} {} rhs {}", c.name, lhs, c.relation.symbol(), c.rhs));
        }
    }
    Ok(())
}

/// Full exact optimality certificate: primal feasibility, dual sign
/// conditions, complementary slackness, and a zero duality gap, all checked
/// against the original problem data.
pub fn verify_optimality(lp: &LinearProgram, sol: &LpSolution) -> std::result::Result<(), String> {
    if sol.status != LpStatus::Optimal {
        return Err("solution is not optimal".into());
    }
    check_feasible(lp, &sol.assignment)?;
    let check: Rational = lp.objective.iter().zip(&sol.assignment).map(|(c, x)| c * x).sum();
    if check != sol.objective_value {
        return Err(format!("objective value {} != c·x = {}", sol.objective_value, check));
    }
    if sol.duals.len() != lp.constraints.len() {
        return Err("dual arity mismatch".into());
    }
    for (c, y) in lp.constraints.iter().zip(&sol.duals) {
        match c.relation {
            Relation::Le if y.is_negative() => {
                return Err(format!("dual of <= constraint {} is negative: {}", c.name, y));
            }
            Relation::Ge if y.is_positive() => {
                return Err(format!("dual of >= constraint {} is positive: {}", c.name, y));
            }
            _ => {}
        }
        if !y.is_zero() {
            let lhs: Rational = c.coeffs.iter().zip(&sol.assignment).map(|(a, v)| a * v).sum();
            if lhs != c.rhs {
                return Err(format!(
                    "complementary slackness: dual {} on slack constraint {}",
                    y, c.name
                ));
            }
        }
    }
    // Reduced costs; nonzero ones must be supported by a finite bound the
    // variable sits on, and they enter the dual objective there.
    let mut dual_value: Rational =
        lp.constraints.iter().zip(&sol.duals).map(|(c, y)| y * &c.rhs).sum();
    for j in 0..lp.variables.len() {
        let mut r = lp.objective[j].clone();
        for (c, y) in lp.constraints.iter().zip(&sol.duals) {
            if !y.is_zero() && !c.coeffs[j].is_zero() {
                r = r - y * &c.coeffs[j];
            }
        }
        if r.is_zero() {
            continue;
        }
        let (lo, hi) = &lp.bounds[j];
        if r.is_positive() {
            match hi {
                Some(u) if &sol.assignment[j] == u => dual_value += &r * u,
                _ => {
                    return Err(format!(
                        "variable {} has positive reduced cost {} but is not at a finite upper bound",
                        lp.variables[j], r
                    ));
                }
            }
        } else {
            match lo {
                Some(l) if &sol.assignment[j] == l => dual_value += &r * l,
                _ => {
                    return Err(format!(
                        "variable {} has negative reduced cost {} but is not at a finite lower bound",
                        lp.variables[j], r
                    ));
                }
            }
        }
    }
    if dual_value != sol.objective_value {
        return Err(format!(
            "duality gap: primal {} vs dual {}",
            sol.objective_value, dual_value
        ));
    }
    Ok(())
}

/// Check that `ray` is a recession direction with positive objective slope.
pub fn verify_ray(lp: &LinearProgram, ray: &[Rational]) -> std::result::Result<(), String> {
    if ray.len() != lp.variables.len() {
        return Err("ray arity mismatch".into());
    }
    let slope: Rational = lp.objective.iter().zip(ray).map(|(c, d)| c * d).sum();
    if !slope.is_positive() {
        return Err(format!("ray objective slope {} is not positive", slope));
    }
    for (j, d) in ray.iter().enumerate() {
        let (lo, hi) = &lp.bounds[j];
        if d.is_negative() && lo.is_some() {
            return Err(format!("ray decreases {} which has a lower bound", lp.variables[j]));
        }
        if d.is_positive() && hi.is_some() {
            return Err(format!("ray increases {} which has an upper bound", lp.variables[j]));
        }
    }
    for c in &lp.constraints {
        let v: Rational = c.coeffs.iter().zip(ray).map(|(a, d)| a * d).sum();
        let ok = match c.relation {
            Relation::Le => !v.is_positive(),
            Relation::Ge => !v.is_negative(),
            Relation::Eq => v.is_zero(),
        };
        if !ok {
            return Err(format!("ray leaves constraint {} (direction value {})", c.name, v));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn nn(n: usize) -> Vec<(Option<Rational>, Option<Rational>)> {
        vec![(Some(Rational::zero()), None); n]
    }

    #[test]
    fn single_variable_optimum() {
        let mut lp = LinearProgram::new("t", vec!["x".into()]);
        lp.objective = vec![rat("1")];
        lp.bounds = nn(1);
        lp.constrain("cap", vec![rat("1")], Relation::Le, rat("3/2"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.assignment, vec![rat("3/2")]);
        assert_eq!(sol.objective_value, rat("3/2"));
        verify_optimality(&lp, &sol).unwrap();
    }

    #[test]
    fn infeasible_pair() {
        let mut lp = LinearProgram::new("t", vec!["x".into()]);
        lp.objective = vec![rat("1")];
        lp.bounds = vec![(None, None)];
        lp.constrain("lo", vec![rat("1")], Relation::Ge, rat("1"));
        lp.constrain("hi", vec![rat("1")], Relation::Le, rat("0"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_with_ray() {
        let mut lp = LinearProgram::new("t", vec!["x".into(), "y".into()]);
        lp.objective = vec![rat("1"), rat("0")];
        lp.bounds = nn(2);
        lp.constrain("c", vec![rat("-1"), rat("1")], Relation::Le, rat("2"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
        verify_ray(&lp, &sol.ray).unwrap();
    }

    #[test]
    fn known_duals() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x,y >= 0: optimum (4, 0)
        // with value 12; binding dual 3 on the first row.
        let mut lp = LinearProgram::new("t", vec!["x".into(), "y".into()]);
        lp.objective = vec![rat("3"), rat("2")];
        lp.bounds = nn(2);
        lp.constrain("r1", vec![rat("1"), rat("1")], Relation::Le, rat("4"));
        lp.constrain("r2", vec![rat("1"), rat("3")], Relation::Le, rat("6"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, rat("12"));
        assert_eq!(sol.assignment, vec![rat("4"), rat("0")]);
        assert_eq!(sol.duals, vec![rat("3"), rat("0")]);
        verify_optimality(&lp, &sol).unwrap();
    }

    #[test]
    fn equality_and_free_variables() {
        // max x - y s.t. x + y = 2, x - y >= -4, y free, 0 <= x <= 3.
        let mut lp = LinearProgram::new("t", vec!["x".into(), "y".into()]);
        lp.objective = vec![rat("1"), rat("-1")];
        lp.bounds = vec![(Some(rat("0")), Some(rat("3"))), (None, None)];
        lp.constrain("sum", vec![rat("1"), rat("1")], Relation::Eq, rat("2"));
        lp.constrain("gap", vec![rat("1"), rat("-1")], Relation::Ge, rat("-4"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.assignment, vec![rat("3"), rat("-1")]);
        assert_eq!(sol.objective_value, rat("4"));
        verify_optimality(&lp, &sol).unwrap();
    }

    #[test]
    fn negative_rhs_rows() {
        // max -x s.t. -x <= -2  (i.e. x >= 2).
        let mut lp = LinearProgram::new("t", vec!["x".into()]);
        lp.objective = vec![rat("-1")];
        lp.bounds = nn(1);
        lp.constrain("c", vec![rat("-1")], Relation::Le, rat("-2"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.assignment, vec![rat("2")]);
        assert_eq!(sol.objective_value, rat("-2"));
        verify_optimality(&lp, &sol).unwrap();
    }

    #[test]
    fn degenerate_program_terminates() {
        // Classic degeneracy: multiple redundant constraints through the
        // origin; Bland's rule must not cycle.
        let mut lp = LinearProgram::new("t", vec!["x".into(), "y".into(), "z".into()]);
        lp.objective = vec![rat("3/4"), rat("-150"), rat("1/50")];
        lp.bounds = nn(3);
        lp.constrain("a", vec![rat("1/4"), rat("-60"), rat("-1/25")], Relation::Le, rat("0"));
        lp.constrain("b", vec![rat("1/2"), rat("-90"), rat("-1/50")], Relation::Le, rat("0"));
        lp.constrain("c", vec![rat("0"), rat("0"), rat("1")], Relation::Le, rat("1"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        verify_optimality(&lp, &sol).unwrap();
        assert_eq!(sol.objective_value, rat("1/20"));
    }

    #[test]
    fn inconsistent_bounds_infeasible() {
        let mut lp = LinearProgram::new("t", vec!["x".into()]);
        lp.objective = vec![rat("1")];
        lp.bounds = vec![(Some(rat("2")), Some(rat("1")))];
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new("t", vec!["x".into(), "y".into()]);
        lp.objective = vec![rat("1"), rat("1")];
        lp.bounds = nn(2);
        lp.constrain("e1", vec![rat("1"), rat("1")], Relation::Eq, rat("1"));
        lp.constrain("e2", vec![rat("2"), rat("2")], Relation::Eq, rat("2"));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, rat("1"));
        verify_optimality(&lp, &sol).unwrap();
    }

    #[test]
    fn dump_is_stable() {
        let mut lp = LinearProgram::new("demo", vec!["x".into(), "y".into()]);
        lp.objective = vec![rat("1"), rat("-2/3")];
        lp.bounds = vec![(Some(rat("0")), None), (None, None)];
        lp.constrain("c1", vec![rat("1"), rat("1")], Relation::Le, rat("3/2"));
        let d = lp.dump();
        assert!(d.contains("lp demo"));
        assert!(d.contains("maximize: x - 2/3 y"));
        assert!(d.contains("c1: x + y <= 3/2"));
        assert!(d.contains("x >= 0"));
        assert!(d.contains("y free"));
    }
}
