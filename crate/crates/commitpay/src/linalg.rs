//! Small exact linear-algebra helpers shared by the equilibrium machinery.

use crate::rational::Rational;

/// Solve `A x = b` exactly. Returns the solution iff the system is
/// consistent and has a unique solution (i.e. rank(A) equals the number of
/// columns); returns None otherwise. `a` is row-major, rows may outnumber
/// columns.
pub(crate) fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    if rows != b.len() {
        return None;
    }
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][col].recip();
        for c in col..=cols {
            let v = &m[pivot_row][c] * &inv;
            m[pivot_row][c] = v;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let v = &m[r][c] - &(&factor * &m[pivot_row][c]);
                    m[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    // Inconsistent: a zero row with nonzero rhs.
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    // Underdetermined: fewer pivots than columns.
    if pivot_cols.len() != cols {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Rank of the consistent system `A x = b`, or None when the system is
/// inconsistent (a zero row of A paired with a nonzero rhs).
pub(crate) fn system_rank(a: &[Vec<Rational>], b: &[Rational]) -> Option<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][col].recip();
        for c in col..=cols {
            let v = &m[pivot_row][c] * &inv;
            m[pivot_row][c] = v;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let v = &m[r][c] - &(&factor * &m[pivot_row][c]);
                    m[r][c] = v;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    Some(pivot_row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|s| rat(s)).collect()).collect()
    }

    fn v(row: &[&str]) -> Vec<Rational> {
        row.iter().map(|s| rat(s)).collect()
    }

    #[test]
    fn solves_unique_system() {
        let a = m(&[&["2", "1"], &["1", "-1"]]);
        let x = solve_unique(&a, &v(&["5", "1"])).unwrap();
        assert_eq!(x, v(&["2", "1"]));
    }

    #[test]
    fn rejects_underdetermined_and_inconsistent() {
        let a = m(&[&["1", "1"]]);
        assert!(solve_unique(&a, &v(&["1"])).is_none());
        let a = m(&[&["1", "1"], &["2", "2"]]);
        assert!(solve_unique(&a, &v(&["1", "3"])).is_none());
    }

    #[test]
    fn overdetermined_consistent() {
        let a = m(&[&["1", "0"], &["0", "1"], &["1", "1"]]);
        let x = solve_unique(&a, &v(&["1/2", "1/3", "5/6"])).unwrap();
        assert_eq!(x, v(&["1/2", "1/3"]));
    }

    #[test]
    fn rank_and_consistency() {
        let a = m(&[&["1", "1"], &["2", "2"]]);
        assert_eq!(system_rank(&a, &v(&["1", "2"])), Some(1));
        assert_eq!(system_rank(&a, &v(&["1", "3"])), None);
        let a = m(&[&["1", "0"], &["0", "1"]]);
        assert_eq!(system_rank(&a, &v(&["4", "5"])), Some(2));
    }
}
