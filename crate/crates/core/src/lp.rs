//! Exact phase-one simplex over the rationals.
//!
//! Finds a point of `{x >= 0 : A x = b}` or proves the set empty. Pivoting
//! follows Bland's least-index rule, which cannot cycle, so the method
//! terminates on every input.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense tableau with the right-hand side stored as the last column.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality.
    fn optimize(&mut self) {
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| self.cost[j].is_negative()) else {
                return;
            };
            let rhs = self.ncols;
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Phase one is bounded below by zero, so a leaving row always exists.
            let (r, _) = leave.expect("phase-one objective is bounded");
            self.pivot(r, enter);
        }
    }
}

/// Returns some `x >= 0` with `A x = b`, or `None` when no such `x` exists.
/// Every row of `a` must have the same length.
pub fn find_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len());
    let nvars = a.first().map_or(0, Vec::len);
    let m = a.len();

    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r: Vec<BigRational> = row.clone();
            r.push(rhs.clone());
            if rhs.is_negative() {
                for v in r.iter_mut() {
                    *v = -v.clone();
                }
            }
            r
        })
        .collect();

    // Reuse identity columns as the starting basis; other rows get artificials.
    let mut basis = vec![usize::MAX; m];
    #[allow(clippy::needless_range_loop)]
    for j in 0..nvars {
        let nonzero: Vec<usize> = (0..m).filter(|&i| !rows[i][j].is_zero()).collect();
        if let [i] = nonzero[..] {
            if basis[i] == usize::MAX && rows[i][j] == BigRational::from_integer(1.into()) {
                basis[i] = j;
            }
        }
    }
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| basis[i] == usize::MAX).collect();
    let ncols = nvars + artificial_rows.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().expect("rhs");
        row.resize(ncols, BigRational::zero());
        row.push(rhs);
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        rows[i][nvars + k] = BigRational::from_integer(1.into());
        basis[i] = nvars + k;
    }

    // Phase-one cost: sum of artificials, expressed in non-basic terms.
    let mut cost = vec![BigRational::zero(); ncols + 1];
    for &i in &artificial_rows {
        for (c, v) in cost.iter_mut().zip(&rows[i]) {
            *c -= v;
        }
    }
    for k in 0..artificial_rows.len() {
        cost[nvars + k] = BigRational::zero();
    }

    let mut t = Tableau {
        rows,
        cost,
        basis,
        ncols,
    };
    t.optimize();

    // cost[rhs] holds minus the optimal sum of artificials.
    if !t.cost[ncols].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &j) in t.basis.iter().enumerate() {
        if j < nvars {
            x[j] = t.rows[i][ncols].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let lhs: BigRational = row.iter().zip(x).map(|(p, v)| p * v).sum();
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn feasible_system() {
        let a = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![q(1, 1), q(1, 2)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1 and x + y = 2
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert!(find_feasible(&a, &[q(1, 1), q(2, 1)]).is_none());
        // x = -1 with x >= 0
        assert!(find_feasible(&mat(&[&[1]]), &[q(-1, 1)]).is_none());
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        let a = mat(&[&[-1, -1]]);
        let b = vec![q(-3, 1)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn degenerate_system_terminates() {
        // a classic cycling-prone shape; every rhs zero except the normalization row
        let a = mat(&[
            &[1, -2, -1, 2, 1, 0, 0],
            &[-1, 1, 1, -1, 0, 1, 0],
            &[1, 1, 1, 1, 0, 0, 0],
        ]);
        let b = vec![q(0, 1), q(0, 1), q(1, 1)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(find_feasible(&[], &[]), Some(vec![]));
    }
}
