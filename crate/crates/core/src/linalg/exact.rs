//! Exact Gaussian elimination over [`Rational`].

use alloc::vec::Vec;

use super::Matrix;
use crate::{Error, Rational, Result, Scalar};

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
fn rref(m: &Matrix<Rational>) -> (Matrix<Rational>, Vec<usize>) {
    let mut r = m.clone();
    let (rows, cols) = (r.rows(), r.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                let tmp = r[(p, j)].clone();
                r[(p, j)] = r[(row, j)].clone();
                r[(row, j)] = tmp;
            }
        }
        let inv = Rational::one() / r[(row, col)].clone();
        for j in col..cols {
            r[(row, j)] = r[(row, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == row || r[(i, col)].is_zero() {
                continue;
            }
            let f = r[(i, col)].clone();
            for j in col..cols {
                if !r[(row, j)].is_zero() {
                    r[(i, j)] = r[(i, j)].clone() - f.clone() * r[(row, j)].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub(crate) fn nullspace(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let n = m.cols();
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = super::vector::zeros::<Rational>(n);
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn solve(m: &Matrix<Rational>, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.cols();
    let aug = Matrix::from_fn(m.rows(), n + 1, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if let Some(row) = pivots.iter().position(|&p| p == n) {
        return Err(Error::Infeasible {
            residual: r[(row, n)].to_f64().abs(),
        });
    }
    let mut x = super::vector::zeros::<Rational>(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok(x)
}

/// Positive definiteness by symmetric elimination: every pivot must be positive.
pub(crate) fn positive_definite(m: &Matrix<Rational>) -> bool {
    let n = m.rows();
    let mut a = m.clone();
    for k in 0..n {
        let pivot = a[(k, k)].clone();
        if pivot <= Rational::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = a[(i, k)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn solves_exactly() {
        let m = Matrix::from_rows(&[vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let x = solve(&m, &[q(5), q(6)]).unwrap();
        assert_eq!(x, vec![q(-4), Rational::new(9, 2)]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = Matrix::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}
