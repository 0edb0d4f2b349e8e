//! Exact rational linear algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank over the rationals. Fraction-free elimination in `i128` is tried
/// first; on overflow the computation is redone over `BigRational`.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    bareiss_rank(rows).unwrap_or_else(|| big_rank(rows))
}

/// Bareiss elimination: every intermediate entry is a minor of the input, so
/// each division is exact.
fn bareiss_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                let v = m[rank][col]
                    .checked_mul(m[r][c])?
                    .checked_sub(m[r][col].checked_mul(m[rank][c])?)?;
                m[r][c] = v / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn big_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / &m[rank][col];
        for x in &mut m[rank][col..] {
            *x = &*x * &inv;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
