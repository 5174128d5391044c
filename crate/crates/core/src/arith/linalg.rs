//! Dense exact linear algebra over Q: determinants, reduced echelon form,
//! kernels.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::BigRat;

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<BigRat>>) -> BigRat {
    let n = m.len();
    let mut d = BigRat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let pv = m[col][col].clone();
        d *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    d
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, row);
        let inv = BigRat::one() / &m[row][col];
        for c in col..cols {
            m[row][c] *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(mut m: Vec<Vec<BigRat>>, cols: usize) -> usize {
    rref(&mut m, cols).len()
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column, in
/// increasing order of the free column.
pub fn kernel(m: &[Vec<BigRat>], cols: usize) -> Vec<Vec<BigRat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRat::zero(); cols];
            v[f] = BigRat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix of polynomials (fraction-free Bareiss).
pub fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn q(v: &[&[i64]]) -> Vec<Vec<BigRat>> {
        v.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(det(q(&[&[2, 1], &[1, 3]])), int(5));
        assert_eq!(det(q(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(rank(q(&[&[1, 2], &[2, 4]]), 2), 1);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s: BigRat = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn polynomial_determinant() {
        let z = Poly::z();
        let one = Poly::one();
        // [[z, 1], [1, z]] -> z^2 - 1
        let m = vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]];
        assert_eq!(poly_det(m), Poly::from_ints(&[-1, 0, 1]));
        let sing = vec![vec![z.clone(), z.clone()], vec![one.clone(), one]];
        assert!(poly_det(sing).is_zero());
    }
}
