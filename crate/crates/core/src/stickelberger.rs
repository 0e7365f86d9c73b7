//! The congruence pipeline: tracelike matrices, symmetrization to an even
//! diagonal, pfaffian extraction, the discriminant pfaffian, and audit
//! certificates.
//!
//! Two congruences are checked and certified. For every ring of finite
//! rank, `disc ≡ 0, 1 (mod 4)`; for every tracelike matrix `B`,
//! `det(B) ≡ dpf(B)² (mod 4)`, where `dpf` is the discriminant pfaffian —
//! a sum over involutions of the non-corner indices, with a fixed point
//! `i` contributing `b_1i` and a transposed pair `{i, j}` contributing
//! `b_ij`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json_int::{matrix_from_rows, matrix_to_rows, JsonInt};
use crate::matrix::{mod4, IntMatrix};
use crate::ring::{FramedRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StickelbergerError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("corner entry is {corner}, expected the rank {rank}")]
    CornerNotRank { corner: BigInt, rank: usize },
    #[error("diagonal entry {index} (0-based) fails b_ii ≡ b_0i² (mod 2)")]
    ParityViolation { index: usize },
    #[error("rank {rank} is not a multiple of 4")]
    RankNotMultipleOf4 { rank: usize },
    #[error("diagonal entry {index} (0-based) is odd; cannot split as U + Uᵀ")]
    OddDiagonal { index: usize },
    #[error("shapes {left_rows}x{left_cols} and {right_rows}x{right_cols} do not match")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("congruence pipeline violated at {stage}: {detail}")]
    CongruenceViolated { stage: &'static str, detail: String },
}

/// A symmetric integer matrix with tracelike shape: corner entry equal to
/// the rank and `b_ii ≡ b_0i² (mod 2)` off the corner, witnessed by the
/// integers `c_i` with `b_ii = b_0i² + 2c_i`.
///
/// Every Gram matrix of a unitally framed ring has this shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracelikeView {
    matrix: IntMatrix,
    witnesses: Vec<BigInt>,
}

impl TracelikeView {
    /// Accepts a matrix as tracelike or refuses with the first violated
    /// condition.
    pub fn new(b: IntMatrix) -> Result<Self, StickelbergerError> {
        if !b.is_square() {
            return Err(StickelbergerError::NotSquare {
                rows: b.n_rows(),
                cols: b.n_cols(),
            });
        }
        if !b.is_symmetric() {
            return Err(StickelbergerError::NotSymmetric);
        }
        let n = b.n_rows();
        if b[(0, 0)] != BigInt::from(n) {
            return Err(StickelbergerError::CornerNotRank {
                corner: b[(0, 0)].clone(),
                rank: n,
            });
        }
        let mut witnesses = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let diff = &b[(i, i)] - &b[(0, i)] * &b[(0, i)];
            if (&diff % 2u8).is_zero() {
                witnesses.push(diff / 2);
            } else {
                return Err(StickelbergerError::ParityViolation { index: i });
            }
        }
        Ok(TracelikeView { matrix: b, witnesses })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.n_rows()
    }

    /// The parity witnesses `c_i` for rows `1..n` (0-based).
    pub fn witnesses(&self) -> &[BigInt] {
        &self.witnesses
    }
}

/// Row-reduces a tracelike matrix (rank divisible by 4) to a symmetric
/// matrix `C` with even diagonal and `det(B) ≡ det(C) (mod 4)`: the first
/// row and column are kept, inner entry `(i,j)` becomes
/// `b_ij - b_0i·b_0j`, and the inner diagonal becomes `2c_i`.
pub fn symmetrize(view: &TracelikeView) -> Result<IntMatrix, StickelbergerError> {
    let n = view.rank();
    if n % 4 != 0 {
        return Err(StickelbergerError::RankNotMultipleOf4 { rank: n });
    }
    let b = &view.matrix;
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if i == 0 || j == 0 {
            b[(i, j)].clone()
        } else if i == j {
            2 * &view.witnesses[i - 1]
        } else {
            &b[(i, j)] - &b[(0, i)] * &b[(0, j)]
        }
    }))
}

/// Splits a symmetric even-diagonal matrix as `C = U + Uᵀ`, with `U` the
/// upper-triangular part of `C` carrying half the diagonal.
pub fn split_even_diagonal(c: &IntMatrix) -> Result<IntMatrix, StickelbergerError> {
    if !c.is_square() {
        return Err(StickelbergerError::NotSquare {
            rows: c.n_rows(),
            cols: c.n_cols(),
        });
    }
    if !c.is_symmetric() {
        return Err(StickelbergerError::NotSymmetric);
    }
    let n = c.n_rows();
    for i in 0..n {
        if !(&c[(i, i)] % 2u8).is_zero() {
            return Err(StickelbergerError::OddDiagonal { index: i });
        }
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            &c[(i, i)] / 2
        } else if i < j {
            c[(i, j)].clone()
        } else {
            BigInt::zero()
        }
    }))
}

/// Discriminant pfaffian of a square matrix: the sum over involutions of
/// the index set `{1, …, n-1}` (0-based) of the products in which a fixed
/// point `i` contributes `b_0i` and a 2-cycle `{i, j}` contributes `b_ij`.
///
/// Evaluated by the recursion `f(∅) = 1`,
/// `f(S) = b_0i·f(S∖{i}) + Σ_j b_ij·f(S∖{i,j})` with `i = min S`. The
/// formula reads any square matrix; the congruence
/// `det(B) ≡ dpf(B)² (mod 4)` is asserted only for tracelike `B`.
pub fn discriminant_pfaffian(b: &IntMatrix) -> BigInt {
    assert!(
        b.is_square(),
        "discriminant pfaffian reads a square matrix"
    );
    let n = b.n_rows();
    if n <= 1 {
        return BigInt::one();
    }
    let m = n - 1;
    assert!(m <= 63, "index subsets are tracked in a u64 bitmask");
    let full: u64 = (1u64 << m) - 1;
    if m <= 20 {
        // Bottom-up over all subsets; every state of the recursion is a
        // submask of its successors, so ascending order fills the table.
        let mut table = vec![BigInt::one(); 1 << m];
        for mask in 1..=full {
            table[mask as usize] = dpf_step(b, mask, |sub| table[sub as usize].clone());
        }
        table[full as usize].clone()
    } else {
        let mut memo: HashMap<u64, BigInt> = HashMap::new();
        dpf_rec(b, full, &mut memo)
    }
}

fn dpf_rec(b: &IntMatrix, mask: u64, memo: &mut HashMap<u64, BigInt>) -> BigInt {
    if mask == 0 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let v = dpf_step(b, mask, |sub| dpf_rec(b, sub, memo));
    memo.insert(mask, v.clone());
    v
}

fn dpf_step(b: &IntMatrix, mask: u64, mut sub_value: impl FnMut(u64) -> BigInt) -> BigInt {
    let t = mask.trailing_zeros() as usize;
    let i = t + 1;
    let rest = mask & !(1u64 << t);
    let mut sum = &b[(0, i)] * sub_value(rest);
    let mut bits = rest;
    while bits != 0 {
        let s = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let j = s + 1;
        if !b[(i, j)].is_zero() {
            sum += &b[(i, j)] * sub_value(rest & !(1u64 << s));
        }
    }
    sum
}

/// Number of monomials in the discriminant pfaffian of a rank-`n` matrix:
/// the involution count `I(n-1)` with `I(m) = I(m-1) + (m-1)·I(m-2)`.
pub fn dpf_term_count(n: usize) -> BigInt {
    assert!(n >= 1, "rank must be at least 1");
    let m = n - 1;
    let (mut prev, mut cur) = (BigInt::one(), BigInt::one());
    for k in 2..=m {
        let next = &cur + BigInt::from(k - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates `det(M) + 2·Tr(adj(M)·Q)` modulo 4, which equals
/// `det(M + 2Q) mod 4` for all integer matrices of equal size.
pub fn det_mod4_expansion(m: &IntMatrix, q: &IntMatrix) -> Result<u8, StickelbergerError> {
    if !m.is_square() || m.n_rows() != q.n_rows() || m.n_cols() != q.n_cols() {
        return Err(StickelbergerError::DimensionMismatch {
            left_rows: m.n_rows(),
            left_cols: m.n_cols(),
            right_rows: q.n_rows(),
            right_cols: q.n_cols(),
        });
    }
    let det = m.det().expect("square");
    let adj = m.adjugate().expect("square");
    let tr = adj.mul(q).expect("same size").trace().expect("square");
    Ok(mod4(&(det + 2 * tr)))
}

/// Provenance of a certificate: produced from a ring or from a bare
/// tracelike matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateSource {
    Ring,
    Tracelike,
}

/// Full audit trail of one congruence check.
///
/// `b` is the matrix the 4-divisible pipeline ran on (the Gram matrix of
/// the unitalized, ℤ-padded ring, or the rank-extended tracelike input);
/// `c = symmetrize(b)`, `u` its even-diagonal split, and `pf_value` the
/// pfaffian of `u - uᵀ`. `dpf_value` and `disc_value` refer to the
/// pre-padding object, whose discriminant the padding preserves exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub source: CertificateSource,
    pub b: IntMatrix,
    pub unital_q: Option<IntMatrix>,
    pub pad_count: usize,
    pub c: IntMatrix,
    pub u: IntMatrix,
    pub pf_value: BigInt,
    pub dpf_value: BigInt,
    pub disc_value: BigInt,
    pub residue: u8,
}

/// Runs the full congruence pipeline on a ring: unitalize, pad the rank to
/// a multiple of 4, take the Gram matrix, symmetrize, split, and extract
/// the pfaffian and discriminant pfaffian.
///
/// Every claimed congruence is rechecked on the way; a failure would
/// falsify the underlying theorems and is surfaced as a loud error, never
/// swallowed.
pub fn stickelberger_check(ring: &FramedRing) -> Result<Certificate, StickelbergerError> {
    let (unital, q) = ring.make_unital()?;
    let unital_q = if ring.is_unital_framing() { None } else { Some(q) };
    let n = unital.rank();
    let pad_count = (4 - n % 4) % 4;
    let padded = unital.pad_with_z(pad_count);
    let b = padded.gram_matrix();
    let disc = b.det().expect("square");

    let unpadded_gram = unital.gram_matrix();
    let unpadded_disc = unpadded_gram.det().expect("square");
    if unpadded_disc != disc {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "padding",
            detail: format!("disc changed from {unpadded_disc} to {disc} under ℤ-padding"),
        });
    }

    let (c, u, pf_value) = run_even_pipeline(&b, disc.clone())?;
    let dpf_value = discriminant_pfaffian(&unpadded_gram);
    finish_certificate(
        CertificateSource::Ring,
        b,
        unital_q,
        pad_count,
        c,
        u,
        pf_value,
        dpf_value,
        disc,
    )
}

/// Checks `det(B) ≡ dpf(B)² (mod 4)` for a tracelike matrix of any rank.
/// Ranks not divisible by 4 are first extended by the determinant- and
/// dpf-preserving one-step embedding, so the even-diagonal pipeline always
/// applies.
pub fn dpf_congruence_check(view: &TracelikeView) -> Result<Certificate, StickelbergerError> {
    let b_in = view.matrix();
    let n = view.rank();
    let pad_count = (4 - n % 4) % 4;
    let mut b = b_in.clone();
    for _ in 0..pad_count {
        b = extend_tracelike(&b);
    }
    let disc = b_in.det().expect("square");
    let ext_det = b.det().expect("square");
    if ext_det != disc {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "extension",
            detail: format!("det changed from {disc} to {ext_det} under rank extension"),
        });
    }
    let (c, u, pf_value) = run_even_pipeline(&b, disc.clone())?;
    let dpf_value = discriminant_pfaffian(b_in);
    finish_certificate(
        CertificateSource::Tracelike,
        b,
        None,
        pad_count,
        c,
        u,
        pf_value,
        dpf_value,
        disc,
    )
}

/// The 4-divisible part of both pipelines: tracelike view, symmetrize,
/// split, pfaffian, with the mod-4 agreements rechecked.
fn run_even_pipeline(
    b: &IntMatrix,
    disc: BigInt,
) -> Result<(IntMatrix, IntMatrix, BigInt), StickelbergerError> {
    let view = TracelikeView::new(b.clone())?;
    let c = symmetrize(&view)?;
    let det_c = c.det().expect("square");
    if mod4(&det_c) != mod4(&disc) {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "symmetrize",
            detail: format!("det(C) = {det_c} and disc = {disc} differ mod 4"),
        });
    }
    let u = split_even_diagonal(&c)?;
    let skew = u.sub(&u.transpose()).expect("same shape");
    let pf_value = skew.pfaffian().expect("skew by construction");
    if mod4(&(&pf_value * &pf_value)) != mod4(&disc) {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "pfaffian",
            detail: format!("pf² = {} and disc = {disc} differ mod 4", &pf_value * &pf_value),
        });
    }
    Ok((c, u, pf_value))
}

#[allow(clippy::too_many_arguments)]
fn finish_certificate(
    source: CertificateSource,
    b: IntMatrix,
    unital_q: Option<IntMatrix>,
    pad_count: usize,
    c: IntMatrix,
    u: IntMatrix,
    pf_value: BigInt,
    dpf_value: BigInt,
    disc_value: BigInt,
) -> Result<Certificate, StickelbergerError> {
    let dpf_sq = &dpf_value * &dpf_value;
    if mod4(&dpf_sq) != mod4(&disc_value) {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "dpf",
            detail: format!("dpf² = {dpf_sq} and disc = {disc_value} differ mod 4"),
        });
    }
    let residue = mod4(&disc_value);
    if residue > 1 {
        return Err(StickelbergerError::CongruenceViolated {
            stage: "residue",
            detail: format!("disc = {disc_value} has residue {residue} mod 4"),
        });
    }
    Ok(Certificate {
        source,
        b,
        unital_q,
        pad_count,
        c,
        u,
        pf_value,
        dpf_value,
        disc_value,
        residue,
    })
}

/// Embeds a tracelike rank-`n` matrix into a tracelike rank-`n+1` matrix
/// with the same determinant and the same discriminant pfaffian: adjoin a
/// diagonal 1, then add the new last row/column to the first.
pub fn extend_tracelike(b: &IntMatrix) -> IntMatrix {
    let n = b.n_rows();
    assert!(b.is_square());
    IntMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i == 0 && j == 0 {
            &b[(0, 0)] + 1
        } else if (i, j) == (0, n) || (i, j) == (n, 0) || (i, j) == (n, n) {
            BigInt::one()
        } else if i == n || j == n {
            BigInt::zero()
        } else {
            b[(i, j)].clone()
        }
    })
}

/// Deterministic random tracelike matrix: `b_0i`, the parity witnesses
/// `c_i`, and the inner off-diagonal entries are uniform in `[-9, 9]`; the
/// diagonal is forced to `b_0i² + 2c_i` and the corner to the rank.
pub fn random_tracelike<R: Rng>(rng: &mut R, n: usize) -> TracelikeView {
    assert!(n >= 1);
    let mut b = IntMatrix::zeros(n, n);
    b[(0, 0)] = BigInt::from(n);
    for i in 1..n {
        let b0i = BigInt::from(rng.gen_range(-9i64..=9));
        let ci = rng.gen_range(-9i64..=9);
        b[(i, i)] = &b0i * &b0i + BigInt::from(2 * ci);
        b[(0, i)] = b0i.clone();
        b[(i, 0)] = b0i;
    }
    for i in 1..n {
        for j in i + 1..n {
            let v = BigInt::from(rng.gen_range(-9i64..=9));
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    TracelikeView::new(b).expect("generated matrix is tracelike by construction")
}

/// What a certificate is checked against when replayed.
pub enum CertificateSubject<'a> {
    Ring(&'a FramedRing),
    Tracelike(&'a IntMatrix),
}

/// First field that failed to replay, with a human-readable detail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate field {field} mismatch: {detail}")]
pub struct VerificationFailure {
    pub field: &'static str,
    pub detail: String,
}

fn fail(field: &'static str, detail: impl Into<String>) -> VerificationFailure {
    VerificationFailure {
        field,
        detail: detail.into(),
    }
}

/// Recomputes every certificate field from the subject and the recorded
/// transition matrices. Returns the first mismatch, if any; a certificate
/// binds to the exact framing it was produced from.
pub fn verify_certificate(
    cert: &Certificate,
    subject: &CertificateSubject,
) -> Result<(), VerificationFailure> {
    let (pipeline_b, dpf_base, disc) = match subject {
        CertificateSubject::Ring(ring) => {
            if cert.source != CertificateSource::Ring {
                return Err(fail("source", "certificate was not produced from a ring"));
            }
            let unital = match &cert.unital_q {
                Some(q) => {
                    let rebased = ring
                        .change_basis(q)
                        .map_err(|e| fail("unital_q", format!("recorded rebasing failed: {e}")))?;
                    if !rebased.is_unital_framing() {
                        return Err(fail(
                            "unital_q",
                            "recorded rebasing does not produce a unital framing",
                        ));
                    }
                    rebased
                }
                None => {
                    if !ring.is_unital_framing() {
                        return Err(fail(
                            "unital_q",
                            "ring framing is not unital and no rebasing was recorded",
                        ));
                    }
                    (*ring).clone()
                }
            };
            let padded = unital.pad_with_z(cert.pad_count);
            if padded.rank() % 4 != 0 {
                return Err(fail(
                    "pad_count",
                    format!("padded rank {} is not a multiple of 4", padded.rank()),
                ));
            }
            let b = padded.gram_matrix();
            let gram = unital.gram_matrix();
            let disc = gram.det().expect("square");
            (b, gram, disc)
        }
        CertificateSubject::Tracelike(b_in) => {
            if cert.source != CertificateSource::Tracelike {
                return Err(fail(
                    "source",
                    "certificate was not produced from a tracelike matrix",
                ));
            }
            TracelikeView::new((*b_in).clone())
                .map_err(|e| fail("source", format!("subject is not tracelike: {e}")))?;
            let mut b = (*b_in).clone();
            for _ in 0..cert.pad_count {
                b = extend_tracelike(&b);
            }
            if b.n_rows() % 4 != 0 {
                return Err(fail(
                    "pad_count",
                    format!("extended rank {} is not a multiple of 4", b.n_rows()),
                ));
            }
            let disc = b_in.det().expect("square");
            (b, (*b_in).clone(), disc)
        }
    };

    if pipeline_b != cert.b {
        return Err(fail("b", "Gram mismatch: recomputed pipeline matrix differs"));
    }
    let view = TracelikeView::new(pipeline_b)
        .map_err(|e| fail("b", format!("recorded matrix is not tracelike: {e}")))?;
    let c = symmetrize(&view).map_err(|e| fail("c", format!("symmetrization failed: {e}")))?;
    if c != cert.c {
        return Err(fail("c", "symmetrized matrix differs"));
    }
    let u = split_even_diagonal(&c).map_err(|e| fail("u", format!("split failed: {e}")))?;
    if u != cert.u {
        return Err(fail("u", "upper-triangular split differs"));
    }
    let skew = u.sub(&u.transpose()).expect("same shape");
    let pf = skew.pfaffian().expect("skew by construction");
    if pf != cert.pf_value {
        return Err(fail(
            "pf_value",
            format!("pf mismatch: recomputed {pf}, certificate {}", cert.pf_value),
        ));
    }
    let dpf = discriminant_pfaffian(&dpf_base);
    if dpf != cert.dpf_value {
        return Err(fail(
            "dpf_value",
            format!("dpf mismatch: recomputed {dpf}, certificate {}", cert.dpf_value),
        ));
    }
    if disc != cert.disc_value {
        return Err(fail(
            "disc_value",
            format!(
                "disc mismatch: recomputed {disc}, certificate {}",
                cert.disc_value
            ),
        ));
    }
    let residue = mod4(&disc);
    if residue != cert.residue || residue > 1 {
        return Err(fail(
            "residue",
            format!("recomputed residue {residue}, certificate {}", cert.residue),
        ));
    }
    Ok(())
}

/// On-disk certificate: the certificate fields with matrices as row-major
/// integer arrays, plus a format version.
#[derive(Serialize, Deserialize)]
struct CertificateFile {
    format_version: u32,
    source: CertificateSource,
    b: Vec<Vec<JsonInt>>,
    unital_q: Option<Vec<Vec<JsonInt>>>,
    pad_count: usize,
    c: Vec<Vec<JsonInt>>,
    u: Vec<Vec<JsonInt>>,
    pf_value: JsonInt,
    dpf_value: JsonInt,
    disc_value: JsonInt,
    residue: u8,
}

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertificateFileError {
    #[error("certificate parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported certificate format version {0}")]
    UnsupportedVersion(u32),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

impl Certificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        let file = CertificateFile {
            format_version: CERTIFICATE_FORMAT_VERSION,
            source: self.source,
            b: matrix_to_rows(&self.b),
            unital_q: self.unital_q.as_ref().map(matrix_to_rows),
            pad_count: self.pad_count,
            c: matrix_to_rows(&self.c),
            u: matrix_to_rows(&self.u),
            pf_value: JsonInt(self.pf_value.clone()),
            dpf_value: JsonInt(self.dpf_value.clone()),
            disc_value: JsonInt(self.disc_value.clone()),
            residue: self.residue,
        };
        serde_json::to_value(file).expect("certificate serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("valid json value")
    }

    pub fn from_json_str(s: &str) -> Result<Certificate, CertificateFileError> {
        let file: CertificateFile = serde_json::from_str(s)?;
        if file.format_version != CERTIFICATE_FORMAT_VERSION {
            return Err(CertificateFileError::UnsupportedVersion(file.format_version));
        }
        let to_matrix = |rows: &[Vec<JsonInt>], name: &str| {
            matrix_from_rows(rows)
                .map_err(|e| CertificateFileError::Malformed(format!("field {name}: {e}")))
        };
        Ok(Certificate {
            source: file.source,
            b: to_matrix(&file.b, "b")?,
            unital_q: match &file.unital_q {
                Some(rows) => Some(to_matrix(rows, "unital_q")?),
                None => None,
            },
            pad_count: file.pad_count,
            c: to_matrix(&file.c, "c")?,
            u: to_matrix(&file.u, "u")?,
            pf_value: file.pf_value.0,
            dpf_value: file.dpf_value.0,
            disc_value: file.disc_value.0,
            residue: file.residue,
        })
    }
}
