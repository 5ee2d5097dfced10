//! Coordinate-vector helpers over a [`Scalar`].

use alloc::vec;
use alloc::vec::Vec;

use crate::Scalar;

pub fn zeros<T: Scalar>(n: usize) -> Vec<T> {
    vec![T::zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = zeros(n);
    v[i] = T::one();
    v
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn neg<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

/// `acc += s·x`.
pub fn axpy<T: Scalar>(acc: &mut [T], s: &T, x: &[T]) {
    debug_assert_eq!(acc.len(), x.len());
    if s.is_zero() {
        return;
    }
    for (a, xi) in acc.iter_mut().zip(x) {
        if !xi.is_zero() {
            *a = a.clone() + s.clone() * xi.clone();
        }
    }
}

/// Euclidean norm of the coordinates, in `f64`.
pub fn norm<T: Scalar>(a: &[T]) -> f64 {
    libm::sqrt(a.iter().map(|x| x.to_f64() * x.to_f64()).sum())
}

pub fn max_abs<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| libm::fabs(x.to_f64())).fold(0.0, f64::max)
}

pub fn is_zero<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `‖a‖ <= bound`, or exactly zero for exact scalars.
pub fn within<T: Scalar>(a: &[T], bound: f64) -> bool {
    if T::EXACT {
        is_zero(a)
    } else {
        norm(a) <= bound
    }
}

pub fn to_f64<T: Scalar>(a: &[T]) -> Vec<f64> {
    a.iter().map(Scalar::to_f64).collect()
}
