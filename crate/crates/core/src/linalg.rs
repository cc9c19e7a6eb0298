//! Small exact linear algebra over the rationals.

use num::{One, Signed, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Scalar::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
pub fn independent_rows(rows: &[Vec<Scalar>]) -> Vec<usize> {
    let mut kept: Matrix = Vec::new();
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        kept.push(r.clone());
        if rank(&kept) == kept.len() {
            out.push(i);
        } else {
            kept.pop();
        }
    }
    out
}

/// A basis of `{x : r · x = 0 for every row r}` in `R^cols`.
pub fn nullspace(rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` if singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Scales a nonzero vector so its entries are coprime integers, keeping the sign.
pub fn normalize_integer(v: &[Scalar]) -> Vec<Scalar> {
    use num::Integer;
    let lcm = v
        .iter()
        .fold(num::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num::BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Scalar::from_integer(x / g.abs()))
        .collect()
}
