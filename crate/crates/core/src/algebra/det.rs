use std::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::ExactDiv;

/// Determinant by fraction-free (Bareiss) elimination over an integral domain.
///
/// Every intermediate division is exact; a failed division means the ring
/// is not an integral domain or arithmetic went wrong, and panics.
/// The empty matrix has determinant one.
pub fn bareiss_determinant<T>(matrix: &[Vec<T>]) -> T
where
    T: Clone + Zero + One + PartialEq + ExactDiv + Neg<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("inexact division in fraction-free elimination");
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;

    #[test]
    fn small_integer_matrices() {
        let empty: Vec<Vec<i64>> = vec![];
        assert_eq!(bareiss_determinant(&empty), 1);
        assert_eq!(bareiss_determinant(&[vec![7i64]]), 7);
        assert_eq!(bareiss_determinant(&[vec![1i64, 2], vec![3, 4]]), -2);
        assert_eq!(bareiss_determinant(&[vec![0i64, 1], vec![1, 0]]), -1);
        assert_eq!(
            bareiss_determinant(&[vec![2i64, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]),
            0
        );
        assert_eq!(bareiss_determinant(&[vec![0i64, 0], vec![1, 1]]), 0);
    }

    #[test]
    fn two_by_two_polynomial() {
        type P = LaurentPoly<i64>;
        let (a, b, c, d) = (P::var(0), P::var(1), P::var(2), P::var(3));
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        assert_eq!(bareiss_determinant(&m), &(&a * &d) - &(&b * &c));
    }
}
