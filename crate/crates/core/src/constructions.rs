//! Generators for concrete rings: quadratic and monogenic rings, matrix
//! rings in the matrix-unit basis, the Hurwitz quaternion order, group
//! rings, direct products, and a seeded random corpus built from these.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ring::{FramedRing, MultiplicationTable};
use crate::unimodular;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("not a group table: {diagnosis}")]
    NotAGroup { diagnosis: String },
}

/// The quadratic ring with basis `(1, e)` and `e² = d`. Well-defined for
/// every integer `d`, square or not; its discriminant is `4d`.
pub fn sqrt_ring(d: impl Into<BigInt>) -> FramedRing {
    quadratic_ring(BigInt::zero(), -d.into())
}

/// The quadratic ring `ℤ[x]/(x² - b·x + c)` with basis `(1, e)`, so
/// `e² = b·e - c`. Its discriminant is `b² - 4c` and its discriminant
/// pfaffian is exactly `b`.
pub fn quadratic_ring(b: impl Into<BigInt>, c: impl Into<BigInt>) -> FramedRing {
    monogenic_ring(&[c.into(), -b.into(), BigInt::one()])
        .expect("quadratic polynomial is monic")
}

/// The ring `ℤ[x]/(f)` for a monic `f`, with the power basis
/// `(1, x, …, x^{n-1})`. Coefficients are listed constant term first and
/// must end with a leading 1.
pub fn monogenic_ring(f: &[BigInt]) -> Result<FramedRing, ConstructionError> {
    if f.len() < 2 || !f[f.len() - 1].is_one() {
        return Err(ConstructionError::NotMonic);
    }
    let n = f.len() - 1;
    // Coordinates of x^m for m = 0 .. 2n-2, reducing by x^n = -Σ f_j x^j.
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n - 1);
    for m in 0..n {
        let mut coords = vec![BigInt::zero(); n];
        coords[m] = BigInt::one();
        powers.push(coords);
    }
    for _ in n..2 * n - 1 {
        let prev = powers.last().expect("n >= 1 powers exist");
        let mut coords = vec![BigInt::zero(); n];
        for j in 1..n {
            coords[j] = prev[j - 1].clone();
        }
        let overflow = prev[n - 1].clone();
        if !overflow.is_zero() {
            for j in 0..n {
                coords[j] -= &overflow * &f[j];
            }
        }
        powers.push(coords);
    }
    let products = (0..n)
        .map(|i| (0..n).map(|k| powers[i + k].clone()).collect())
        .collect();
    let table = MultiplicationTable::new(n, products).expect("shape by construction");
    let mut one = vec![BigInt::zero(); n];
    one[0] = BigInt::one();
    Ok(FramedRing::validate(table, one).expect("power basis tables are associative"))
}

/// The ring of `m×m` integer matrices in the matrix-unit basis
/// `E_11, E_12, …, E_mm` (row-major). The framing is not unital for
/// `m ≥ 2`: the identity is the sum of the diagonal units.
pub fn matrix_ring(m: usize) -> FramedRing {
    assert!(m >= 1, "matrix ring needs m >= 1");
    let n = m * m;
    let idx = |a: usize, b: usize| a * m + b;
    let mut products = vec![vec![vec![BigInt::zero(); n]; n]; n];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if b == c {
                        // E_ab · E_cd = E_ad
                        products[idx(a, b)][idx(c, d)][idx(a, d)] = BigInt::one();
                    }
                }
            }
        }
    }
    let mut one = vec![BigInt::zero(); n];
    for a in 0..m {
        one[idx(a, a)] = BigInt::one();
    }
    let table = MultiplicationTable::new(n, products).expect("shape by construction");
    FramedRing::validate(table, one).expect("matrix units multiply associatively")
}

/// The Hurwitz quaternion order with basis `(1, i, j, ω)` where
/// `ω = (-1 + i + j + k)/2` satisfies `ω² + ω + 1 = 0`, `i² = j² = -1`,
/// and `ij = k = 1 - i - j + 2ω`.
pub fn hurwitz_quaternions() -> FramedRing {
    let table = MultiplicationTable::from_i64(
        4,
        &[
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[1, -1, -1, 2], &[0, -1, -1, 1]],
            &[&[0, 0, 1, 0], &[-1, 1, 1, -2], &[-1, 0, 0, 0], &[-1, 1, 0, -1]],
            &[&[0, 0, 0, 1], &[-1, 0, 1, -1], &[0, -1, -1, 1], &[-1, 0, 0, -1]],
        ],
    )
    .expect("shape by construction");
    FramedRing::validate(table, vec![1.into(), 0.into(), 0.into(), 0.into()])
        .expect("the Hurwitz relations are associative")
}

/// Component-wise product ring on the concatenated basis. The identity is
/// the concatenation of the factor identities (so the framing is usually
/// not unital), and the discriminant is the product of the factor
/// discriminants.
pub fn direct_product(a: &FramedRing, b: &FramedRing) -> FramedRing {
    let (na, nb) = (a.rank(), b.rank());
    let n = na + nb;
    let mut products = vec![vec![vec![BigInt::zero(); n]; n]; n];
    for i in 0..na {
        for k in 0..na {
            for j in 0..na {
                products[i][k][j] = a.table().product(i, k)[j].clone();
            }
        }
    }
    for i in 0..nb {
        for k in 0..nb {
            for j in 0..nb {
                products[na + i][na + k][na + j] = b.table().product(i, k)[j].clone();
            }
        }
    }
    let one = a
        .one_coords()
        .iter()
        .chain(b.one_coords())
        .cloned()
        .collect();
    let table = MultiplicationTable::new(n, products).expect("shape by construction");
    FramedRing::validate(table, one).expect("product of valid rings is valid")
}

/// Group ring `ℤ[G]` from a Cayley table of element indices:
/// `cayley[g][h]` is the index of `g·h`. The table is checked to be a
/// group (identity, Latin square, associativity) before building the ring.
pub fn group_ring(cayley: &[Vec<usize>]) -> Result<FramedRing, ConstructionError> {
    let m = cayley.len();
    let diag = |d: String| ConstructionError::NotAGroup { diagnosis: d };
    if m == 0 {
        return Err(diag("empty table".into()));
    }
    for (g, row) in cayley.iter().enumerate() {
        if row.len() != m {
            return Err(diag(format!("row {g} has length {}, expected {m}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= m) {
            return Err(diag(format!("row {g} contains out-of-range index {bad}")));
        }
    }
    // Latin square: every row and column is a permutation.
    for g in 0..m {
        let mut seen_row = vec![false; m];
        let mut seen_col = vec![false; m];
        for h in 0..m {
            if seen_row[cayley[g][h]] {
                return Err(diag(format!("row {g} repeats element {}", cayley[g][h])));
            }
            seen_row[cayley[g][h]] = true;
            if seen_col[cayley[h][g]] {
                return Err(diag(format!("column {g} repeats element {}", cayley[h][g])));
            }
            seen_col[cayley[h][g]] = true;
        }
    }
    let identity = (0..m)
        .find(|&e| (0..m).all(|h| cayley[e][h] == h && cayley[h][e] == h))
        .ok_or_else(|| diag("no two-sided identity element".into()))?;
    for g in 0..m {
        for h in 0..m {
            for k in 0..m {
                if cayley[cayley[g][h]][k] != cayley[g][cayley[h][k]] {
                    return Err(diag(format!("associativity fails on ({g},{h},{k})")));
                }
            }
        }
    }

    let mut products = vec![vec![vec![BigInt::zero(); m]; m]; m];
    for g in 0..m {
        for h in 0..m {
            products[g][h][cayley[g][h]] = BigInt::one();
        }
    }
    let mut one = vec![BigInt::zero(); m];
    one[identity] = BigInt::one();
    let table = MultiplicationTable::new(m, products).expect("shape by construction");
    Ok(FramedRing::validate(table, one).expect("group tables are associative"))
}

/// Cayley table of the cyclic group of order `k`.
pub fn cyclic_group_table(k: usize) -> Vec<Vec<usize>> {
    assert!(k >= 1);
    (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect()
}

/// Cayley table of a direct product of two groups.
pub fn product_group_table(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (ma, mb) = (a.len(), b.len());
    let idx = |x: usize, y: usize| x * mb + y;
    let mut t = vec![vec![0; ma * mb]; ma * mb];
    for x1 in 0..ma {
        for y1 in 0..mb {
            for x2 in 0..ma {
                for y2 in 0..mb {
                    t[idx(x1, y1)][idx(x2, y2)] = idx(a[x1][x2], b[y1][y2]);
                }
            }
        }
    }
    t
}

/// Cayley table of the group generated by the given permutations (closure
/// under composition). Used for the small nonabelian groups.
fn permutation_group_table(generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let degree = generators[0].len();
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity];
    let mut frontier = vec![0usize];
    while let Some(at) = frontier.pop() {
        let current = elements[at].clone();
        for g in generators {
            let composed: Vec<usize> = (0..degree).map(|x| g[current[x]]).collect();
            if !elements.contains(&composed) {
                elements.push(composed);
                frontier.push(elements.len() - 1);
            }
        }
    }
    let m = elements.len();
    let mut table = vec![vec![0; m]; m];
    for (i, p) in elements.iter().enumerate() {
        for (j, q) in elements.iter().enumerate() {
            let composed: Vec<usize> = (0..degree).map(|x| p[q[x]]).collect();
            table[i][j] = elements
                .iter()
                .position(|e| e == &composed)
                .expect("closed under composition");
        }
    }
    table
}

/// The quaternion group of order 8: elements ±1, ±i, ±j, ±k encoded as
/// `unit·2 + sign` with units (1, i, j, k).
fn quaternion_group_table() -> Vec<Vec<usize>> {
    // unit_mul[u][v] = (sign, unit) of the product of units u·v.
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (ua, sa) = (a / 2, a % 2);
            let (ub, sb) = (b / 2, b % 2);
            let (sp, up) = UNIT_MUL[ua][ub];
            table[a][b] = up * 2 + (sa + sb + sp) % 2;
        }
    }
    table
}

/// Named small-group catalog for the CLI and the random corpus.
pub fn named_group_table(name: &str) -> Option<Vec<Vec<usize>>> {
    let c2 = || cyclic_group_table(2);
    match name {
        "c1" => Some(cyclic_group_table(1)),
        "c2" => Some(cyclic_group_table(2)),
        "c3" => Some(cyclic_group_table(3)),
        "c4" => Some(cyclic_group_table(4)),
        "c5" => Some(cyclic_group_table(5)),
        "c6" => Some(cyclic_group_table(6)),
        "c7" => Some(cyclic_group_table(7)),
        "c8" => Some(cyclic_group_table(8)),
        "c2xc2" | "v4" => Some(product_group_table(&c2(), &c2())),
        "c2xc4" => Some(product_group_table(&c2(), &cyclic_group_table(4))),
        "c2xc2xc2" => Some(product_group_table(&c2(), &product_group_table(&c2(), &c2()))),
        // Symmetric group on 3 letters: a transposition and a 3-cycle.
        "s3" => Some(permutation_group_table(&[vec![1, 0, 2], vec![1, 2, 0]])),
        // Dihedral group of the square: rotation and reflection.
        "d4" => Some(permutation_group_table(&[vec![1, 2, 3, 0], vec![1, 0, 3, 2]])),
        "q8" => Some(quaternion_group_table()),
        _ => None,
    }
}

pub fn group_names() -> &'static [&'static str] {
    &[
        "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c2xc2", "c2xc4", "c2xc2xc2", "s3",
        "d4", "q8",
    ]
}

/// Deterministically seeded random valid ring of rank at most `max_rank`.
///
/// Raw random structure constants are almost never associative, so the
/// corpus draws from closed constructions — quadratic and monogenic rings,
/// matrix rings, group rings, and direct products — and then applies a
/// random unimodular rebasing so non-trivial bases are exercised.
pub fn random_ring(seed: u64, max_rank: usize) -> FramedRing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_rank = max_rank.max(1);
    let ring = random_ring_with(&mut rng, max_rank, 1);
    let n = ring.rank();
    let q = unimodular::random_unimodular(&mut rng, n, 2 * n + 2);
    ring.change_basis(&q)
        .expect("random unimodular rebasing keeps the ring valid")
}

fn random_ring_with<R: Rng>(rng: &mut R, max_rank: usize, product_depth: usize) -> FramedRing {
    loop {
        match rng.gen_range(0..10) {
            0..=2 if max_rank >= 2 => {
                let b = rng.gen_range(-9i64..=9);
                let c = rng.gen_range(-9i64..=9);
                return quadratic_ring(b, c);
            }
            3..=4 => {
                let degree = rng.gen_range(1..=max_rank.min(6));
                let mut f: Vec<BigInt> =
                    (0..degree).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect();
                f.push(BigInt::one());
                return monogenic_ring(&f).expect("generated polynomial is monic");
            }
            5 if max_rank >= 4 => {
                let m = if max_rank >= 9 && rng.gen_bool(0.3) { 3 } else { 2 };
                return matrix_ring(m);
            }
            6..=7 => {
                let names: Vec<&str> = group_names()
                    .iter()
                    .copied()
                    .filter(|name| {
                        named_group_table(name).expect("catalog name").len() <= max_rank.min(8)
                    })
                    .collect();
                let name = names[rng.gen_range(0..names.len())];
                return group_ring(&named_group_table(name).expect("catalog name"))
                    .expect("catalog tables are groups");
            }
            8..=9 if product_depth > 0 && max_rank >= 2 => {
                let left_rank = rng.gen_range(1..max_rank);
                let left = random_ring_with(rng, left_rank, product_depth - 1);
                let right = random_ring_with(rng, max_rank - left.rank(), product_depth - 1);
                return direct_product(&left, &right);
            }
            _ => {
                // Rank-1 fallback: the integers.
                return monogenic_ring(&[BigInt::from(rng.gen_range(-4i64..=4)), BigInt::one()])
                    .expect("linear polynomial is monic");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{mod4, IntMatrix};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sqrt_ring_discriminants() {
        assert_eq!(sqrt_ring(5).discriminant(), bi(20));
        assert_eq!(sqrt_ring(0).discriminant(), bi(0));
        assert_eq!(sqrt_ring(-1).discriminant(), bi(-4));
    }

    #[test]
    fn quadratic_ring_discriminant_formula() {
        assert_eq!(quadratic_ring(1, 1).discriminant(), bi(-3));
        for b in -10i64..=10 {
            for c in -10i64..=10 {
                assert_eq!(quadratic_ring(b, c).discriminant(), bi(b * b - 4 * c));
            }
        }
    }

    #[test]
    fn quadratic_matches_sqrt_by_substitution() {
        for d in -6i64..=6 {
            assert_eq!(quadratic_ring(0, -d), sqrt_ring(d));
        }
    }

    #[test]
    fn monogenic_cubic_discriminant() {
        // x³ - x - 1 has discriminant -4p³ - 27q² = -23.
        let f = [bi(-1), bi(-1), bi(0), bi(1)];
        let ring = monogenic_ring(&f).unwrap();
        assert_eq!(ring.discriminant(), bi(-23));
    }

    #[test]
    fn monogenic_linear_is_the_integers() {
        let ring = monogenic_ring(&[bi(-7), bi(1)]).unwrap();
        assert_eq!(ring.rank(), 1);
        assert_eq!(ring.gram_matrix(), IntMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(ring.discriminant(), bi(1));
    }

    #[test]
    fn monogenic_rejects_non_monic() {
        assert_eq!(
            monogenic_ring(&[bi(1), bi(2)]).unwrap_err(),
            ConstructionError::NotMonic
        );
        assert_eq!(monogenic_ring(&[bi(1)]).unwrap_err(), ConstructionError::NotMonic);
    }

    #[test]
    fn quadratic_equals_monogenic_table() {
        let direct = quadratic_ring(3, 1);
        let via_poly = monogenic_ring(&[bi(1), bi(-3), bi(1)]).unwrap();
        assert_eq!(direct, via_poly);
    }

    #[test]
    fn matrix_ring_discriminants() {
        assert_eq!(matrix_ring(1).discriminant(), bi(1));
        assert_eq!(matrix_ring(2).discriminant(), bi(-16));
        assert_eq!(matrix_ring(3).discriminant(), bi(-19683));
        assert!(!matrix_ring(2).is_unital_framing());
    }

    #[test]
    fn hurwitz_golden_values() {
        let ring = hurwitz_quaternions();
        assert!(ring.is_unital_framing());
        let lam_i = ring.lambda(&ring.basis_element(1)).unwrap();
        let want = IntMatrix::from_i64_rows(&[
            &[0, -1, 1, 0],
            &[1, 0, -1, -1],
            &[0, 0, -1, -1],
            &[0, 0, 2, 1],
        ]);
        assert_eq!(lam_i, want);
        assert_eq!(lam_i.trace().unwrap(), bi(0));
        let gram = ring.gram_matrix();
        let want = IntMatrix::from_i64_rows(&[
            &[4, 0, 0, -2],
            &[0, -4, 0, -2],
            &[0, 0, -4, -2],
            &[-2, -2, -2, -2],
        ]);
        assert_eq!(gram, want);
        assert_eq!(ring.discriminant(), bi(-64));
    }

    #[test]
    fn direct_product_multiplies_discriminants() {
        let z = monogenic_ring(&[bi(0), bi(1)]).unwrap();
        let zz = direct_product(&z, &z);
        assert_eq!(zz.discriminant(), bi(1));
        let big = direct_product(&hurwitz_quaternions(), &sqrt_ring(5));
        assert_eq!(big.rank(), 6);
        assert_eq!(big.discriminant(), bi(-1280));
        let padded_style = direct_product(&hurwitz_quaternions(), &z);
        assert_eq!(padded_style.discriminant(), bi(-64));
    }

    #[test]
    fn group_ring_golden_values() {
        let trivial = group_ring(&cyclic_group_table(1)).unwrap();
        assert_eq!(trivial.rank(), 1);
        assert_eq!(trivial.discriminant(), bi(1));

        let c2 = group_ring(&cyclic_group_table(2)).unwrap();
        assert_eq!(
            c2.gram_matrix(),
            IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]])
        );
        assert_eq!(c2.discriminant(), bi(4));

        let c3 = group_ring(&cyclic_group_table(3)).unwrap();
        assert!(mod4(&c3.discriminant()) <= 1);
    }

    #[test]
    fn group_ring_rejects_non_groups() {
        // Constant rows are not a Latin square.
        let bad = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            group_ring(&bad),
            Err(ConstructionError::NotAGroup { .. })
        ));
        // Latin square of order 3 with no two-sided identity row.
        let no_identity = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        let err = group_ring(&no_identity).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::NotAGroup { ref diagnosis } if diagnosis.contains("identity")
        ));
        // The smallest nonassociative loop (order 5): Latin square with an
        // identity but (a·a)·b != a·(a·b).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_ring(&loop5).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::NotAGroup { ref diagnosis } if diagnosis.contains("associativity")
        ));
    }

    #[test]
    fn group_catalog_is_valid_and_sized() {
        for name in group_names() {
            let table = named_group_table(name).unwrap();
            let ring = group_ring(&table).unwrap();
            assert_eq!(ring.rank(), table.len());
            assert!(table.len() <= 8);
        }
        assert_eq!(named_group_table("s3").unwrap().len(), 6);
        assert_eq!(named_group_table("d4").unwrap().len(), 8);
        assert_eq!(named_group_table("q8").unwrap().len(), 8);
        assert!(named_group_table("nope").is_none());
    }

    #[test]
    fn quaternion_group_ring_is_not_hurwitz() {
        // ℤ[Q8] has rank 8; its discriminant still satisfies the congruence.
        let ring = group_ring(&named_group_table("q8").unwrap()).unwrap();
        assert_eq!(ring.rank(), 8);
        assert!(mod4(&ring.discriminant()) <= 1);
    }

    #[test]
    fn random_ring_is_deterministic_and_bounded() {
        let a = random_ring(42, 10);
        let b = random_ring(42, 10);
        assert_eq!(a, b);
        for seed in 0..30 {
            let ring = random_ring(seed, 10);
            assert!(ring.rank() >= 1 && ring.rank() <= 10);
            assert!(mod4(&ring.discriminant()) <= 1);
        }
        assert_eq!(random_ring(7, 1).rank(), 1);
    }
}
