//! Rings of finite rank over the integers, presented by multiplication
//! tables.
//!
//! A rank-`n` ring is stored as the `n³` structure constants of its basis
//! products together with the coordinates of its multiplicative identity.
//! Construction always validates: associativity is checked through the
//! left-regular-representation homomorphism identity and the designated
//! identity is checked on both sides, so no invalid `FramedRing` can exist.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json_int::JsonInt;
use crate::matrix::IntMatrix;
use crate::unimodular;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("malformed table: {detail}")]
    Malformed { detail: String },
    #[error("coordinate vector has length {found}, expected rank {rank}")]
    DimensionMismatch { rank: usize, found: usize },
    #[error("associativity fails on basis triple ({i},{j},{k}), 0-based: (e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("designated one is not a {side:?} identity on basis element {index} (0-based)")]
    NotIdentity { side: Side, index: usize },
    #[error("change-of-basis matrix has determinant {det}, expected ±1")]
    NotUnimodular { det: BigInt },
    #[error("change-of-basis matrix is {rows}x{cols}, expected {rank}x{rank}")]
    BadBasisMatrix {
        rank: usize,
        rows: usize,
        cols: usize,
    },
    #[error("one-coordinates have gcd != 1; an invalid table slipped past validation")]
    InternalGcdViolation,
}

/// The `n³` structure constants of a candidate rank-`n` ring:
/// `products[i][k]` holds the coordinates of `e_i · e_k`, so its `j`-th
/// entry is the constant usually written `c_ijk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    rank: usize,
    products: Vec<Vec<Vec<BigInt>>>,
}

impl MultiplicationTable {
    pub fn new(rank: usize, products: Vec<Vec<Vec<BigInt>>>) -> Result<Self, RingError> {
        if rank == 0 {
            return Err(RingError::ZeroRank);
        }
        if products.len() != rank {
            return Err(RingError::Malformed {
                detail: format!("expected {rank} product rows, found {}", products.len()),
            });
        }
        for (i, row) in products.iter().enumerate() {
            if row.len() != rank {
                return Err(RingError::Malformed {
                    detail: format!("row {i} has {} products, expected {rank}", row.len()),
                });
            }
            for (k, coords) in row.iter().enumerate() {
                if coords.len() != rank {
                    return Err(RingError::Malformed {
                        detail: format!(
                            "product e{i}·e{k} has {} coordinates, expected {rank}",
                            coords.len()
                        ),
                    });
                }
            }
        }
        Ok(MultiplicationTable { rank, products })
    }

    /// Test and fixture helper.
    pub fn from_i64(rank: usize, products: &[&[&[i64]]]) -> Result<Self, RingError> {
        let products = products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coords| coords.iter().map(|&x| BigInt::from(x)).collect())
                    .collect()
            })
            .collect();
        Self::new(rank, products)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates of `e_i · e_k`.
    pub fn product(&self, i: usize, k: usize) -> &[BigInt] {
        &self.products[i][k]
    }

    /// Left-multiplication matrix of the basis element `e_i`: column `k`
    /// holds the coordinates of `e_i · e_k`.
    pub fn lambda_basis(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.rank, self.rank, |j, k| self.products[i][k][j].clone())
    }
}

impl std::fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rank {
            for k in 0..self.rank {
                write!(f, "e{i}·e{k} = (")?;
                for (j, c) in self.products[i][k].iter().enumerate() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                writeln!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// An element given by its coordinates in the framing basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    coords: Vec<BigInt>,
}

impl RingElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RingElement { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RingElement {
            coords: coords.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// The basis element `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[i] = BigInt::one();
        RingElement { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

/// A validated ring of rank `n` together with a basis: the multiplication
/// table, the coordinates of 1, and a flag telling whether the basis is
/// unital (first basis vector equal to 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedRing {
    table: MultiplicationTable,
    one: Vec<BigInt>,
    unital: bool,
    basis_traces: Vec<BigInt>,
}

impl FramedRing {
    /// Checks that `one_coords` is a two-sided identity and that the table
    /// is associative, then wraps them as a framed ring.
    ///
    /// Associativity is checked as the homomorphism identity
    /// `λ(e_i)·λ(e_j) = λ(e_i·e_j)` for all basis pairs; a failing column
    /// pinpoints the offending triple.
    pub fn validate(table: MultiplicationTable, one_coords: Vec<BigInt>) -> Result<Self, RingError> {
        let n = table.rank();
        if one_coords.len() != n {
            return Err(RingError::DimensionMismatch {
                rank: n,
                found: one_coords.len(),
            });
        }

        // Two-sided identity on every basis element.
        for k in 0..n {
            let left = table_mul(&table, &one_coords, k, true);
            if !is_basis_vector(&left, k) {
                return Err(RingError::NotIdentity {
                    side: Side::Left,
                    index: k,
                });
            }
            let right = table_mul(&table, &one_coords, k, false);
            if !is_basis_vector(&right, k) {
                return Err(RingError::NotIdentity {
                    side: Side::Right,
                    index: k,
                });
            }
        }

        let lambdas: Vec<IntMatrix> = (0..n).map(|i| table.lambda_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let product = lambdas[i].mul(&lambdas[j]).expect("rank-sized matrices");
                let mut expected = IntMatrix::zeros(n, n);
                for (l, lam) in lambdas.iter().enumerate() {
                    let c = &table.products[i][j][l];
                    if !c.is_zero() {
                        expected = expected.add(&lam.scalar_mul(c)).expect("same shape");
                    }
                }
                if product != expected {
                    let k = (0..n)
                        .find(|&k| (0..n).any(|r| product[(r, k)] != expected[(r, k)]))
                        .expect("matrices differ in some column");
                    return Err(RingError::NotAssociative { i, j, k });
                }
            }
        }

        let unital = is_basis_vector(&one_coords, 0);
        let basis_traces = (0..n)
            .map(|l| (0..n).map(|j| table.products[l][j][j].clone()).sum())
            .collect();
        Ok(FramedRing {
            table,
            one: one_coords,
            unital,
            basis_traces,
        })
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn table(&self) -> &MultiplicationTable {
        &self.table
    }

    pub fn one_coords(&self) -> &[BigInt] {
        &self.one
    }

    pub fn one(&self) -> RingElement {
        RingElement::new(self.one.clone())
    }

    pub fn is_unital_framing(&self) -> bool {
        self.unital
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        RingElement::basis(self.rank(), i)
    }

    fn check_len(&self, a: &RingElement) -> Result<(), RingError> {
        if a.coords.len() != self.rank() {
            return Err(RingError::DimensionMismatch {
                rank: self.rank(),
                found: a.coords.len(),
            });
        }
        Ok(())
    }

    /// Left regular representation: the matrix of left multiplication by
    /// `a`, with `a·e_k` down column `k`.
    pub fn lambda(&self, a: &RingElement) -> Result<IntMatrix, RingError> {
        self.check_len(a)?;
        let n = self.rank();
        let mut m = IntMatrix::zeros(n, n);
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for k in 0..n {
                for j in 0..n {
                    let c = &self.table.products[i][k][j];
                    if !c.is_zero() {
                        let t = ai * c;
                        m[(j, k)] += t;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Coordinates of the product `a·b`.
    pub fn mul_elements(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let n = self.rank();
        let mut out = vec![BigInt::zero(); n];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, bk) in b.coords.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let scale = ai * bk;
                for (j, c) in self.table.products[i][k].iter().enumerate() {
                    if !c.is_zero() {
                        out[j] += &scale * c;
                    }
                }
            }
        }
        Ok(RingElement::new(out))
    }

    pub fn add_elements(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(RingElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        ))
    }

    /// Trace of left multiplication by `a`.
    pub fn element_trace(&self, a: &RingElement) -> Result<BigInt, RingError> {
        self.check_len(a)?;
        Ok(self
            .basis_traces
            .iter()
            .zip(&a.coords)
            .map(|(t, x)| t * x)
            .sum())
    }

    /// The trace pairing `t(a, b) = Tr λ(a·b)`; symmetric and bilinear.
    pub fn trace_pairing(&self, a: &RingElement, b: &RingElement) -> Result<BigInt, RingError> {
        let ab = self.mul_elements(a, b)?;
        self.element_trace(&ab)
    }

    /// Gram matrix of the trace pairing on the framing basis.
    pub fn gram_matrix(&self) -> IntMatrix {
        let n = self.rank();
        IntMatrix::from_fn(n, n, |i, j| {
            self.basis_traces
                .iter()
                .zip(&self.table.products[i][j])
                .map(|(t, c)| t * c)
                .sum()
        })
    }

    /// Determinant of the Gram matrix; independent of the framing basis.
    pub fn discriminant(&self) -> BigInt {
        self.gram_matrix().det().expect("Gram matrix is square")
    }

    /// Re-expresses the ring in a new basis. Column `i` of `q` holds the
    /// old-basis coordinates of the new basis vector `f_i`; the Gram matrix
    /// transforms to `qᵀ·B·q` and the discriminant is unchanged.
    pub fn change_basis(&self, q: &IntMatrix) -> Result<FramedRing, RingError> {
        let n = self.rank();
        if q.n_rows() != n || q.n_cols() != n {
            return Err(RingError::BadBasisMatrix {
                rank: n,
                rows: q.n_rows(),
                cols: q.n_cols(),
            });
        }
        let det = q.det().expect("square");
        if !det.magnitude().is_one() {
            return Err(RingError::NotUnimodular { det });
        }
        let qinv = unimodular::inverse(q).expect("determinant is ±1");

        let new_basis: Vec<RingElement> = (0..n)
            .map(|i| RingElement::new((0..n).map(|r| q[(r, i)].clone()).collect()))
            .collect();
        let mut products = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            let lam = self.lambda(&new_basis[i]).expect("validated lengths");
            for k in 0..n {
                let prod_old = lam.mul_vec(new_basis[k].coords()).expect("rank length");
                products[i][k] = qinv.mul_vec(&prod_old).expect("rank length");
            }
        }
        let one = qinv.mul_vec(&self.one).expect("rank length");
        let table = MultiplicationTable::new(n, products)?;
        FramedRing::validate(table, one)
    }

    /// Rebase so the first basis vector is 1, returning the rebased ring
    /// and the change-of-basis matrix used (identity when the framing is
    /// already unital). Columns of the returned matrix hold the old-basis
    /// coordinates of the new basis, so it feeds straight back into
    /// [`FramedRing::change_basis`].
    pub fn make_unital(&self) -> Result<(FramedRing, IntMatrix), RingError> {
        let n = self.rank();
        if self.unital {
            return Ok((self.clone(), IntMatrix::identity(n)));
        }
        let completion = unimodular::completion(&self.one).map_err(|_| {
            // A validated identity always has coprime coordinates.
            RingError::InternalGcdViolation
        })?;
        let qinv = unimodular::inverse(&completion).expect("completion is unimodular");
        // New basis vectors are the rows of the inverse; as a transition
        // matrix (new basis in columns) that is its transpose.
        let transition = qinv.transpose();
        let rebased = self.change_basis(&transition)?;
        assert!(
            rebased.unital,
            "unimodular completion must move the identity to the first basis slot"
        );
        Ok((rebased, transition))
    }

    /// Pads to the product `ℤ^m × A`, using the rank-increasing basis
    /// `((1, e_1), (0, e_1), …, (0, e_n))` at each step. Preserves the
    /// discriminant and preserves unitality of the framing.
    pub fn pad_with_z(&self, m: usize) -> FramedRing {
        let mut ring = self.clone();
        for _ in 0..m {
            ring = ring.pad_once();
        }
        ring
    }

    fn pad_once(&self) -> FramedRing {
        let n = self.rank();
        let big = n + 1;
        let zero = BigInt::zero();
        let one = BigInt::one();
        let mut products = vec![vec![vec![zero.clone(); big]; big]; big];

        // g_0 = (1, e_0), g_{i+1} = (0, e_i) in ℤ × A.
        // g_0·g_0 = (1, e_0²) = g_0 + Σ_j (c_j - δ_{j0}) g_{j+1}.
        products[0][0][0] = one.clone();
        for j in 0..n {
            let mut c = self.table.products[0][0][j].clone();
            if j == 0 {
                c -= &one;
            }
            products[0][0][j + 1] = c;
        }
        for k in 0..n {
            // g_0·g_{k+1} = (0, e_0·e_k)
            for j in 0..n {
                products[0][k + 1][j + 1] = self.table.products[0][k][j].clone();
            }
            // g_{k+1}·g_0 = (0, e_k·e_0)
            for j in 0..n {
                products[k + 1][0][j + 1] = self.table.products[k][0][j].clone();
            }
        }
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    products[i + 1][k + 1][j + 1] = self.table.products[i][k][j].clone();
                }
            }
        }

        let mut new_one = vec![zero; big];
        new_one[0] = one.clone();
        for j in 0..n {
            let mut c = self.one[j].clone();
            if j == 0 {
                c -= &one;
            }
            new_one[j + 1] = c;
        }

        let table = MultiplicationTable::new(big, products).expect("shape by construction");
        FramedRing::validate(table, new_one).expect("padding a valid ring stays valid")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = RingFile {
            rank: self.rank(),
            one: self.one.iter().cloned().map(JsonInt).collect(),
            table: self
                .table
                .products
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|coords| coords.iter().cloned().map(JsonInt).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(file).expect("ring file serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("valid json value")
    }

    pub fn from_json_str(s: &str) -> Result<FramedRing, RingFileError> {
        let file: RingFile = serde_json::from_str(s)?;
        Self::from_file(file)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<FramedRing, RingFileError> {
        let file: RingFile = serde_json::from_value(v)?;
        Self::from_file(file)
    }

    fn from_file(file: RingFile) -> Result<FramedRing, RingFileError> {
        let products = file
            .table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|coords| coords.into_iter().map(|x| x.0).collect())
                    .collect()
            })
            .collect();
        let table = MultiplicationTable::new(file.rank, products)?;
        let one = file.one.into_iter().map(|x| x.0).collect();
        Ok(FramedRing::validate(table, one)?)
    }
}

fn is_basis_vector(coords: &[BigInt], i: usize) -> bool {
    coords
        .iter()
        .enumerate()
        .all(|(j, c)| if j == i { c.is_one() } else { c.is_zero() })
}

/// Product of `one` with the basis element `e_k`, on the given side.
fn table_mul(
    table: &MultiplicationTable,
    one: &[BigInt],
    k: usize,
    one_on_left: bool,
) -> Vec<BigInt> {
    let n = table.rank();
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in one.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let prod = if one_on_left {
            &table.products[i][k]
        } else {
            &table.products[k][i]
        };
        for j in 0..n {
            if !prod[j].is_zero() {
                out[j] += c * &prod[j];
            }
        }
    }
    out
}

/// On-disk form of a ring: `{"rank": n, "one": [...], "table": [[[...]]]}`
/// with `table[i][k][j]` the coefficient of `e_j` in `e_i·e_k`.
#[derive(Serialize, Deserialize)]
struct RingFile {
    rank: usize,
    one: Vec<JsonInt>,
    table: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Debug, Error)]
pub enum RingFileError {
    #[error("ring file parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("ring file is invalid: {0}")]
    Invalid(#[from] RingError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// The rank-2 table with e² = d, basis (1, e).
    fn sqrt_table(d: i64) -> MultiplicationTable {
        MultiplicationTable::from_i64(
            2,
            &[
                &[&[1, 0], &[0, 1]],
                &[&[0, 1], &[d, 0]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_sqrt_ring() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        assert!(ring.is_unital_framing());
        assert_eq!(ring.rank(), 2);
    }

    #[test]
    fn validate_catches_broken_associativity() {
        // Corrupt e1·e1 so that (e1·e1)·e1 != e1·(e1·e1).
        let table = MultiplicationTable::from_i64(
            2,
            &[
                &[&[1, 0], &[0, 1]],
                &[&[0, 1], &[5, 1]],
            ],
        )
        .unwrap();
        // e1² = 5 + e1 is still associative (x² = x + 5 is a valid monic
        // relation) so corrupt an off-identity entry instead.
        assert!(FramedRing::validate(table, vec![bi(1), bi(0)]).is_ok());

        let table = MultiplicationTable::from_i64(
            3,
            &[
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]],
                &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 1]],
            ],
        )
        .unwrap();
        let err = FramedRing::validate(table, vec![bi(1), bi(0), bi(0)]).unwrap_err();
        assert!(matches!(err, RingError::NotAssociative { .. }));
    }

    #[test]
    fn validate_catches_bad_identity() {
        let err = FramedRing::validate(sqrt_table(5), vec![bi(0), bi(1)]).unwrap_err();
        assert!(matches!(err, RingError::NotIdentity { .. }));
        let err = FramedRing::validate(sqrt_table(5), vec![bi(1)]).unwrap_err();
        assert!(matches!(err, RingError::DimensionMismatch { .. }));
    }

    #[test]
    fn lambda_of_one_is_identity() {
        let ring = FramedRing::validate(sqrt_table(7), vec![bi(1), bi(0)]).unwrap();
        let lam = ring.lambda(&ring.one()).unwrap();
        assert_eq!(lam, IntMatrix::identity(2));
    }

    #[test]
    fn lambda_of_sqrt_generator() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let e = ring.basis_element(1);
        let lam = ring.lambda(&e).unwrap();
        assert_eq!(lam, IntMatrix::from_i64_rows(&[&[0, 5], &[1, 0]]));
        // λ(e)² = d·I.
        assert_eq!(
            lam.mul(&lam).unwrap(),
            IntMatrix::identity(2).scalar_mul(&bi(5))
        );
    }

    #[test]
    fn trace_pairing_quadratic_values() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let one = ring.basis_element(0);
        let e = ring.basis_element(1);
        assert_eq!(ring.trace_pairing(&one, &one).unwrap(), bi(2));
        assert_eq!(ring.trace_pairing(&one, &e).unwrap(), bi(0));
        assert_eq!(ring.trace_pairing(&e, &e).unwrap(), bi(10));
    }

    #[test]
    fn gram_and_discriminant_of_sqrt_ring() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        assert_eq!(
            ring.gram_matrix(),
            IntMatrix::from_i64_rows(&[&[2, 0], &[0, 10]])
        );
        assert_eq!(ring.discriminant(), bi(20));
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let same = ring.change_basis(&IntMatrix::identity(2)).unwrap();
        assert_eq!(same, ring);
    }

    #[test]
    fn change_basis_shear_transforms_gram_by_congruence() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let q = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let rebased = ring.change_basis(&q).unwrap();
        assert_eq!(rebased.discriminant(), bi(20));
        let b = ring.gram_matrix();
        let want = q.transpose().mul(&b).unwrap().mul(&q).unwrap();
        assert_eq!(rebased.gram_matrix(), want);
    }

    #[test]
    fn change_basis_rejects_non_unimodular() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let q = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(matches!(
            ring.change_basis(&q),
            Err(RingError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn make_unital_on_unital_ring_is_identity() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        let (same, q) = ring.make_unital().unwrap();
        assert_eq!(same, ring);
        assert_eq!(q, IntMatrix::identity(2));
    }

    #[test]
    fn make_unital_on_z_times_z() {
        // ℤ×ℤ on the idempotent basis, identity (1,1).
        let table = MultiplicationTable::from_i64(
            2,
            &[
                &[&[1, 0], &[0, 0]],
                &[&[0, 0], &[0, 1]],
            ],
        )
        .unwrap();
        let ring = FramedRing::validate(table, vec![bi(1), bi(1)]).unwrap();
        assert!(!ring.is_unital_framing());
        let (unital, q) = ring.make_unital().unwrap();
        assert!(unital.is_unital_framing());
        assert!(q.det().unwrap().magnitude().is_one());
        // b11 = rank in any unital Gram matrix.
        assert_eq!(unital.gram_matrix()[(0, 0)], bi(2));
        assert_eq!(unital.discriminant(), ring.discriminant());
    }

    #[test]
    fn pad_with_z_preserves_disc_and_unitality() {
        let ring = FramedRing::validate(sqrt_table(5), vec![bi(1), bi(0)]).unwrap();
        assert_eq!(ring.pad_with_z(0), ring);
        let padded = ring.pad_with_z(2);
        assert_eq!(padded.rank(), 4);
        assert!(padded.is_unital_framing());
        assert_eq!(padded.discriminant(), bi(20));
    }

    #[test]
    fn pad_with_z_from_non_unital_framing() {
        let table = MultiplicationTable::from_i64(
            2,
            &[
                &[&[1, 0], &[0, 0]],
                &[&[0, 0], &[0, 1]],
            ],
        )
        .unwrap();
        let ring = FramedRing::validate(table, vec![bi(1), bi(1)]).unwrap();
        let padded = ring.pad_with_z(3);
        assert_eq!(padded.rank(), 5);
        assert_eq!(padded.discriminant(), ring.discriminant());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let ring = constructions::hurwitz_quaternions();
        let text = ring.to_json_string();
        let back = FramedRing::from_json_str(&text).unwrap();
        assert_eq!(back, ring);
    }

    #[test]
    fn json_accepts_large_integers_as_strings() {
        let text = r#"{
            "rank": 1,
            "one": ["1"],
            "table": [[["1"]]]
        }"#;
        let ring = FramedRing::from_json_str(text).unwrap();
        assert_eq!(ring.rank(), 1);

        let huge = "123456789012345678901234567890";
        let text = format!(
            r#"{{"rank": 2, "one": [1, 0],
                "table": [[[1,0],[0,1]],[[0,1],["{huge}",0]]]}}"#
        );
        let ring = FramedRing::from_json_str(&text).unwrap();
        let d: BigInt = huge.parse().unwrap();
        assert_eq!(ring.discriminant(), bi(4) * d);
        // Re-emission keeps the value intact as a string.
        let again = FramedRing::from_json_str(&ring.to_json_string()).unwrap();
        assert_eq!(again, ring);
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(matches!(
            FramedRing::from_json_str("{ not json"),
            Err(RingFileError::Parse(_))
        ));
        let text = r#"{"rank": 2, "one": [1, 0], "table": [[[1,0],[0,1]],[[0,1]]]}"#;
        assert!(matches!(
            FramedRing::from_json_str(text),
            Err(RingFileError::Invalid(_))
        ));
    }
}
