//! Unimodular matrices: completion of a primitive vector to a basis,
//! exact inverses, and random elements for test corpora.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::matrix::{IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnimodularError {
    #[error("cannot complete a zero-length vector")]
    EmptyVector,
    #[error("vector entries have gcd {gcd}, expected 1")]
    GcdNotOne { gcd: BigInt },
    #[error("matrix has determinant {det}, expected ±1")]
    NotUnimodular { det: BigInt },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Completes a primitive row vector to a unimodular matrix: returns `Q`
/// with `det(Q) = 1` and `a·Q = (1, 0, …, 0)`.
///
/// Built by induction on the length: a 2x2 Bézout block collapses the last
/// two coordinates to `(gcd, 0)`, then recurses leftwards. Bézout
/// coefficients are normalized to the minimal non-negative choice.
pub fn completion(a: &[BigInt]) -> Result<IntMatrix, UnimodularError> {
    if a.is_empty() {
        return Err(UnimodularError::EmptyVector);
    }
    let gcd = a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !gcd.is_one() {
        return Err(UnimodularError::GcdNotOne { gcd });
    }
    let n = a.len();
    let mut q = IntMatrix::identity(n);
    let mut v = a.to_vec();
    for k in (1..n).rev() {
        // Collapse (v[k-1], v[k]) to (gcd, 0) by a 2x2 block of determinant 1.
        let p = bezout_block(&v[k - 1], &v[k]);
        v[k - 1] = &v[k - 1] * &p[(0, 0)] + &v[k] * &p[(1, 0)];
        v[k] = BigInt::zero();
        // Right-multiply q by diag(I, p, I) acting on columns k-1 and k.
        for i in 0..n {
            let left = &q[(i, k - 1)] * &p[(0, 0)] + &q[(i, k)] * &p[(1, 0)];
            let right = &q[(i, k - 1)] * &p[(0, 1)] + &q[(i, k)] * &p[(1, 1)];
            q[(i, k - 1)] = left;
            q[(i, k)] = right;
        }
    }
    debug_assert!(v[0].is_one());
    Ok(q)
}

/// 2x2 matrix `P` of determinant 1 with `(u, v)·P = (gcd(u, v), 0)`.
fn bezout_block(u: &BigInt, v: &BigInt) -> IntMatrix {
    if u.is_zero() && v.is_zero() {
        return IntMatrix::identity(2);
    }
    let ext = u.extended_gcd(v);
    let (mut g, mut x) = (ext.gcd, ext.x);
    if g.is_negative() {
        g = -g;
        x = -x;
    }
    let (x, y) = if v.is_zero() {
        (x, BigInt::zero())
    } else {
        // Shift x by multiples of v/g to the least non-negative representative.
        let x = x.mod_floor(&(v / &g).abs());
        let y = (&g - u * &x) / v;
        (x, y)
    };
    let mut p = IntMatrix::zeros(2, 2);
    p[(0, 0)] = x;
    p[(0, 1)] = -(v / &g);
    p[(1, 0)] = y;
    p[(1, 1)] = u / &g;
    debug_assert!(p.det().unwrap().is_one());
    p
}

/// Exact integer inverse of a unimodular matrix, computed as `det(Q)·adj(Q)`.
pub fn inverse(q: &IntMatrix) -> Result<IntMatrix, UnimodularError> {
    let det = q.det()?;
    if !det.magnitude().is_one() {
        return Err(UnimodularError::NotUnimodular { det });
    }
    let adj = q.adjugate()?;
    Ok(if det.is_one() { adj } else { adj.neg() })
}

pub fn is_unimodular(q: &IntMatrix) -> bool {
    q.det().map(|d| d.magnitude().is_one()).unwrap_or(false)
}

/// Random unimodular matrix: a product of `steps` bounded elementary
/// operations (transvections with coefficient in [-2, 2], swaps, and row
/// negations), so entries stay small.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut q = IntMatrix::identity(n);
    if n < 2 {
        return q;
    }
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 | 1 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                for col in 0..n {
                    let t = &q[(j, col)] * &c;
                    q[(i, col)] += t;
                }
            }
            2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                for col in 0..n {
                    let tmp = q[(i, col)].clone();
                    q[(i, col)] = q[(j, col)].clone();
                    q[(j, col)] = tmp;
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for col in 0..n {
                    let t = -&q[(i, col)];
                    q[(i, col)] = t;
                }
            }
        }
    }
    q
}
