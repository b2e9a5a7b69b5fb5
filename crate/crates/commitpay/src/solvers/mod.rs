//! Optimal-commitment solvers. Every solver returns a [`Solved`] report in
//! exact rationals together with the text of any linear programs it built
//! (for `--dump-lp`).

pub mod commit;
pub mod hard;
pub mod signaling;

use crate::report::ReportOut;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// When false every payment variable gets a zero upper bound, yielding
    /// the classical no-transfer benchmark under the same tie-breaking.
    pub payments: bool,
    /// Collect a text rendering of every LP the solver builds.
    pub dump_lps: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { payments: true, dump_lps: false }
    }
}

#[derive(Clone, Debug)]
pub struct Solved {
    pub report: ReportOut,
    pub lp_dumps: Vec<String>,
}

impl Solved {
    pub fn plain(report: ReportOut) -> Self {
        Solved { report, lp_dumps: Vec::new() }
    }
}

/// Exact slacks of the named constraints at a solution point, used to turn
/// LP rows into report certificates.
pub(crate) fn constraint_slacks(
    lp: &crate::lp::LinearProgram,
    assignment: &[crate::rational::Rational],
    prefix: &str,
) -> Vec<crate::report::CertificateEntry> {
    use crate::lp::Relation;
    lp.constraints
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .map(|c| {
            let lhs: crate::rational::Rational =
                c.coeffs.iter().zip(assignment).map(|(a, x)| a * x).sum();
            let slack = match c.relation {
                Relation::Ge | Relation::Eq => &lhs - &c.rhs,
                Relation::Le => &c.rhs - &lhs,
            };
            crate::report::CertificateEntry { id: c.name.clone(), slack }
        })
        .collect()
}
