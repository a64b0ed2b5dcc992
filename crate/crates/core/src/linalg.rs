//! Exact linear algebra: fraction-free rank and dense rational solves.
//!
//! Pivoting is deterministic (first nonzero entry in row order, columns left
//! to right), so every rank and every solution is reproducible across runs.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rat;

/// Clear denominators of a rational row, yielding an integer row.
fn integerize(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    row.iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

/// Rank of a rational matrix (rows of equal length) by fraction-free
/// Bareiss elimination over the integers.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integerize(r)).collect();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        // first row at index >= rank with a nonzero entry in this column
        let Some(pivot_row) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = (&pivot * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solve `A c = t` for the unique `c`, where `columns` are the columns of A.
/// Errors if the system is inconsistent or the solution is not unique
/// (rank-deficient columns).
pub fn solve_unique(columns: &[Vec<Rat>], target: &[Rat]) -> Result<Vec<Rat>> {
    let ncols = columns.len();
    let nrows = target.len();
    for c in columns {
        if c.len() != nrows {
            return Err(Error::VarMismatch(c.len(), nrows));
        }
    }
    if ncols == 0 {
        return if target.iter().all(|t| t.is_zero()) {
            Ok(Vec::new())
        } else {
            Err(Error::Internal("inconsistent linear system".into()))
        };
    }
    // augmented matrix, row major
    let mut m: Vec<Vec<Rat>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=ncols {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..nrows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=ncols {
                    let v = &m[i][j] - &f * &m[row][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    if pivot_cols.len() < ncols {
        return Err(Error::Internal(
            "singular graded system: solution not unique".into(),
        ));
    }
    // consistency: remaining rows must have zero right-hand side
    for i in row..nrows {
        if !m[i][ncols].is_zero() {
            return Err(Error::Internal("inconsistent linear system".into()));
        }
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[r][ncols].clone();
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn solve_small_system() {
        // columns (1,0),(1,1); target (3,2) -> c = (1,2)
        let cols = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
        ];
        let sol = solve_unique(&cols, &[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(sol, vec![rat_int(1), rat_int(2)]);
    }

    #[test]
    fn solve_rejects_rank_deficiency() {
        let cols = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert!(solve_unique(&cols, &[rat_int(1), rat_int(2)]).is_err());
    }

    #[test]
    fn solve_rejects_inconsistency() {
        let cols = vec![vec![rat_int(1), rat_int(1)]];
        assert!(solve_unique(&cols, &[rat_int(1), rat_int(2)]).is_err());
    }
}
