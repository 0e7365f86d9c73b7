//! Deliberately naive reference implementations used to cross-check every
//! fast algorithm in the crate: a Leibniz-expansion determinant, a
//! matching-sum pfaffian, the literal subset-and-matching discriminant
//! pfaffian, and direct evaluations of the matrix identities the
//! congruence pipeline relies on. Size limits are hard errors — an oracle
//! that silently degrades is worse than none.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{mod4, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input of size {size} exceeds the oracle limit {max}")]
    TooLarge { size: usize, max: usize },
    #[error("matrix is not skew-symmetric at ({row},{col})")]
    NotSkew { row: usize, col: usize },
    #[error("matrix is not skew-symmetric mod 2 at ({row},{col})")]
    NotSkewMod2 { row: usize, col: usize },
    #[error("expected matching square shapes, got {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("size {size} must be even")]
    OddSize { size: usize },
}

const DET_MAX: usize = 9;
const PF_MAX: usize = 12;
const DPF_MAX: usize = 8;
const STEMBRIDGE_MAX: usize = 8;

/// Leibniz-formula determinant: the signed sum over all permutations.
pub fn det_by_permutations(m: &IntMatrix) -> Result<BigInt, OracleError> {
    let n = square_size(m)?;
    if n > DET_MAX {
        return Err(OracleError::TooLarge { size: n, max: DET_MAX });
    }
    let mut acc = BigInt::zero();
    let mut used = vec![false; n];
    leibniz(m, 0, &mut used, 0, &BigInt::one(), &mut acc);
    Ok(acc)
}

fn leibniz(
    m: &IntMatrix,
    row: usize,
    used: &mut [bool],
    inversions: usize,
    partial: &BigInt,
    acc: &mut BigInt,
) {
    let n = used.len();
    if row == n {
        if inversions % 2 == 0 {
            *acc += partial;
        } else {
            *acc -= partial;
        }
        return;
    }
    for col in 0..n {
        if used[col] || m[(row, col)].is_zero() {
            continue;
        }
        // Columns already taken by earlier rows and larger than this one
        // each contribute an inversion.
        let extra = (col + 1..n).filter(|&c| used[c]).count();
        used[col] = true;
        let next = partial * &m[(row, col)];
        leibniz(m, row + 1, used, inversions + extra, &next, acc);
        used[col] = false;
    }
}

/// Pfaffian as the signed sum over perfect matchings, with the sign given
/// by the parity of the number of crossings of the matching drawn on a
/// line. Anchored by `pf([[0,1],[-1,0]]) = 1`; odd sizes return 0.
pub fn pfaffian_by_matchings(m: &IntMatrix) -> Result<BigInt, OracleError> {
    let n = square_size(m)?;
    for i in 0..n {
        for j in 0..=i {
            if m[(i, j)] != -&m[(j, i)] {
                return Err(OracleError::NotSkew { row: i, col: j });
            }
        }
    }
    if n % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if n > PF_MAX {
        return Err(OracleError::TooLarge { size: n, max: PF_MAX });
    }
    let all: Vec<usize> = (0..n).collect();
    let mut acc = BigInt::zero();
    let mut edges = Vec::with_capacity(n / 2);
    matching_sum(m, &all, &mut edges, &mut acc);
    Ok(acc)
}

fn matching_sum(
    m: &IntMatrix,
    remaining: &[usize],
    edges: &mut Vec<(usize, usize)>,
    acc: &mut BigInt,
) {
    if remaining.is_empty() {
        let mut term = BigInt::one();
        for &(i, j) in edges.iter() {
            term *= &m[(i, j)];
        }
        if crossings(edges) % 2 == 0 {
            *acc += term;
        } else {
            *acc -= term;
        }
        return;
    }
    let i = remaining[0];
    for (pos, &j) in remaining.iter().enumerate().skip(1) {
        if m[(i, j)].is_zero() {
            continue;
        }
        let mut rest: Vec<usize> = Vec::with_capacity(remaining.len() - 2);
        rest.extend(remaining[1..pos].iter());
        rest.extend(remaining[pos + 1..].iter());
        edges.push((i, j));
        matching_sum(m, &rest, edges, acc);
        edges.pop();
    }
}

/// Pairs `{a,b}, {c,d}` with `a < c < b < d` cross when drawn on a line.
fn crossings(edges: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for (idx, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[idx + 1..] {
            let (_, b, c, d) = if a < c { (a, b, c, d) } else { (c, d, a, b) };
            if c < b && b < d {
                count += 1;
            }
        }
    }
    count
}

/// The discriminant pfaffian evaluated literally from its definition: for
/// every even subset `J` of the non-corner indices and every perfect
/// matching `P` on `J`, multiply the matched entries `b_ij` and the
/// unmatched first-row entries `b_0k`, and add everything up. Returns the
/// value together with the number of terms.
pub fn dpf_by_enumeration(b: &IntMatrix) -> Result<(BigInt, u64), OracleError> {
    let n = square_size(b)?;
    if n > DPF_MAX {
        return Err(OracleError::TooLarge { size: n, max: DPF_MAX });
    }
    let inner: Vec<usize> = (1..n).collect();
    let m = inner.len();
    let mut total = BigInt::zero();
    let mut terms = 0u64;
    for mask in 0u32..(1u32 << m) {
        let subset: Vec<usize> = inner
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if subset.len() % 2 != 0 {
            continue;
        }
        let mut outside = BigInt::one();
        for &k in inner.iter().filter(|&&k| !subset.contains(&k)) {
            outside *= &b[(0, k)];
        }
        for matching in perfect_matchings(&subset) {
            let mut term = outside.clone();
            for &(i, j) in &matching {
                term *= &b[(i, j)];
            }
            total += term;
            terms += 1;
        }
    }
    Ok((total, terms))
}

fn perfect_matchings(set: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    let i = set[0];
    let mut out = Vec::new();
    for pos in 1..set.len() {
        let j = set[pos];
        let mut rest: Vec<usize> = Vec::with_capacity(set.len() - 2);
        rest.extend(set[1..pos].iter());
        rest.extend(set[pos + 1..].iter());
        for mut sub in perfect_matchings(&rest) {
            sub.insert(0, (i, j));
            out.push(sub);
        }
    }
    out
}

/// Sum over perfect matchings of the induced submatrix, modulo 2. The
/// empty index set contributes 1.
fn pf_mod2(m: &IntMatrix, indices: &[usize]) -> u8 {
    if indices.len() % 2 != 0 {
        return 0;
    }
    let mut parity = 0u8;
    for matching in perfect_matchings(indices) {
        let odd = matching
            .iter()
            .all(|&(i, j)| !(&m[(i, j)] % 2u8).is_zero());
        if odd {
            parity ^= 1;
        }
    }
    parity
}

/// Checks the mod-2 pfaffian split of a sum of two skew-mod-2 matrices:
/// `pf(B' + B'') ≡ Σ_J pf(B'_J)·pf(B''_{J^c}) (mod 2)`, the sum over even
/// subsets `J` of the index set. This is a theorem; a `false` is a bug.
pub fn stembridge_split_check(bp: &IntMatrix, bpp: &IntMatrix) -> Result<bool, OracleError> {
    let n = square_size(bp)?;
    let n2 = square_size(bpp)?;
    if n != n2 {
        return Err(OracleError::ShapeMismatch {
            left_rows: bp.n_rows(),
            left_cols: bp.n_cols(),
            right_rows: bpp.n_rows(),
            right_cols: bpp.n_cols(),
        });
    }
    if n % 2 != 0 {
        return Err(OracleError::OddSize { size: n });
    }
    if n > STEMBRIDGE_MAX {
        return Err(OracleError::TooLarge { size: n, max: STEMBRIDGE_MAX });
    }
    check_skew_mod2(bp)?;
    check_skew_mod2(bpp)?;

    let sum = bp.add(bpp).expect("same shape");
    let all: Vec<usize> = (0..n).collect();
    let left = pf_mod2(&sum, &all);
    let mut right = 0u8;
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|t| mask >> t & 1 == 1).collect();
        if subset.len() % 2 != 0 {
            continue;
        }
        let complement: Vec<usize> = (0..n).filter(|t| mask >> t & 1 == 0).collect();
        right ^= pf_mod2(bp, &subset) & pf_mod2(bpp, &complement);
    }
    Ok(left == right)
}

fn check_skew_mod2(m: &IntMatrix) -> Result<(), OracleError> {
    let n = m.n_rows();
    for i in 0..n {
        if !(&m[(i, i)] % 2u8).is_zero() {
            return Err(OracleError::NotSkewMod2 { row: i, col: i });
        }
        for j in 0..i {
            if !((&m[(i, j)] - &m[(j, i)]) % 2u8).is_zero() {
                return Err(OracleError::NotSkewMod2 { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Direct evaluation of the even-size trace identity
/// `2·Tr(adj(M - Mᵀ)·Mᵀ) = -n·det(M - Mᵀ)`. Must hold for every integer
/// matrix of even size.
pub fn uut_identity_check(m: &IntMatrix) -> Result<bool, OracleError> {
    let n = square_size(m)?;
    if n % 2 != 0 {
        return Err(OracleError::OddSize { size: n });
    }
    let skew = m.sub(&m.transpose()).expect("same shape");
    let adj = skew.adjugate().expect("square");
    let lhs = 2 * adj.mul(&m.transpose()).expect("same size").trace().expect("square");
    let rhs = -BigInt::from(n as u64) * skew.det().expect("square");
    Ok(lhs == rhs)
}

/// The fixed counterexamples showing the 4-divisibility hypothesis on the
/// even-diagonal pfaffian step is necessary: symmetric matrices with even
/// diagonal (sizes 1, 2, 3) whose determinants are not 0 or 1 mod 4.
pub fn remark_counterexamples() -> Vec<(IntMatrix, BigInt, u8)> {
    let first = IntMatrix::from_i64_rows(&[&[2]]);
    let second = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let third = IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    [first, second, third]
        .into_iter()
        .map(|m| {
            let det = m.det().expect("square");
            let residue = mod4(&det);
            (m, det, residue)
        })
        .collect()
}

fn square_size(m: &IntMatrix) -> Result<usize, OracleError> {
    if m.n_rows() != m.n_cols() {
        return Err(OracleError::ShapeMismatch {
            left_rows: m.n_rows(),
            left_cols: m.n_cols(),
            right_rows: m.n_rows(),
            right_cols: m.n_cols(),
        });
    }
    Ok(m.n_rows())
}
