//! Property-based invariants: the homomorphism and bilinearity laws,
//! basis-change invariance, the adjugate/pfaffian/determinant identities,
//! oracle agreement, and exact file-format round-trips.

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ringdisc::constructions::random_ring;
use ringdisc::matrix::{mod4, IntMatrix};
use ringdisc::oracles;
use ringdisc::stickelberger::{
    self, dpf_congruence_check, stickelberger_check, CertificateSubject, TracelikeView,
};
use ringdisc::unimodular;
use ringdisc::{Certificate, FramedRing, RingElement};

fn arb_ring(max_rank: usize) -> impl Strategy<Value = FramedRing> {
    any::<u64>().prop_map(move |seed| random_ring(seed, max_rank))
}

/// A ring together with two elements with small coordinates.
fn ring_and_elements() -> impl Strategy<Value = (FramedRing, RingElement, RingElement)> {
    arb_ring(6).prop_flat_map(|ring| {
        let n = ring.rank();
        (
            Just(ring),
            vec(-9i64..=9, n),
            vec(-9i64..=9, n),
        )
            .prop_map(|(ring, a, b)| {
                let a = RingElement::from_i64(&a);
                let b = RingElement::from_i64(&b);
                (ring, a, b)
            })
    })
}

fn arb_matrix(min_n: usize, max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (min_n..=max_n).prop_flat_map(|n| {
        vec(-9i64..=9, n * n).prop_map(move |entries| {
            IntMatrix::from_fn(n, n, |i, j| BigInt::from(entries[i * n + j]))
        })
    })
}

fn arb_skew(max_half: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_half).prop_flat_map(|h| {
        let n = 2 * h;
        vec(-9i64..=9, n * n).prop_map(move |entries| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v = BigInt::from(entries[i * n + j]);
                    m[(i, j)] = v.clone();
                    m[(j, i)] = -v;
                }
            }
            m
        })
    })
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lambda_is_a_unital_ring_homomorphism((ring, a, b) in ring_and_elements()) {
        let lam_one = ring.lambda(&ring.one()).unwrap();
        prop_assert_eq!(lam_one, IntMatrix::identity(ring.rank()));
        let ab = ring.mul_elements(&a, &b).unwrap();
        let left = ring.lambda(&ab).unwrap();
        let right = ring.lambda(&a).unwrap().mul(&ring.lambda(&b).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn trace_pairing_is_symmetric_and_bilinear(
        (ring, a, b) in ring_and_elements(),
        c in -9i64..=9,
    ) {
        prop_assert_eq!(
            ring.trace_pairing(&a, &b).unwrap(),
            ring.trace_pairing(&b, &a).unwrap()
        );
        // t(a + c·b, a) = t(a, a) + c·t(b, a).
        let scaled: Vec<BigInt> = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x + bi(c) * y)
            .collect();
        let combo = RingElement::new(scaled);
        let lhs = ring.trace_pairing(&combo, &a).unwrap();
        let rhs = ring.trace_pairing(&a, &a).unwrap()
            + bi(c) * ring.trace_pairing(&b, &a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_is_invariant_under_rebasing(ring in arb_ring(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ring.rank();
        let q = unimodular::random_unimodular(&mut rng, n, 2 * n + 2);
        let rebased = ring.change_basis(&q).unwrap();
        prop_assert_eq!(rebased.discriminant(), ring.discriminant());
        let want = q.transpose().mul(&ring.gram_matrix()).unwrap().mul(&q).unwrap();
        prop_assert_eq!(rebased.gram_matrix(), want);
    }

    #[test]
    fn unital_gram_matrices_are_tracelike(ring in arb_ring(8)) {
        let (unital, _) = ring.make_unital().unwrap();
        let gram = unital.gram_matrix();
        prop_assert_eq!(gram[(0, 0)].clone(), bi(unital.rank() as i64));
        prop_assert!(TracelikeView::new(gram).is_ok());
    }

    #[test]
    fn padding_preserves_discriminant(ring in arb_ring(6), m in 0usize..=4) {
        let padded = ring.pad_with_z(m);
        prop_assert_eq!(padded.rank(), ring.rank() + m);
        prop_assert_eq!(padded.discriminant(), ring.discriminant());
        let (unital, _) = ring.make_unital().unwrap();
        prop_assert!(unital.pad_with_z(m).is_unital_framing());
    }

    #[test]
    fn make_unital_is_idempotent(ring in arb_ring(6)) {
        let (unital, _) = ring.make_unital().unwrap();
        let (again, q) = unital.make_unital().unwrap();
        prop_assert_eq!(&again, &unital);
        prop_assert_eq!(q, IntMatrix::identity(unital.rank()));
    }

    #[test]
    fn ring_files_round_trip_exactly(ring in arb_ring(6)) {
        let text = ring.to_json_string();
        let back = FramedRing::from_json_str(&text).unwrap();
        prop_assert_eq!(back, ring);
    }

    #[test]
    fn ring_certificates_round_trip_and_verify(ring in arb_ring(6)) {
        let cert = stickelberger_check(&ring).unwrap();
        prop_assert!(cert.residue <= 1);
        let back = Certificate::from_json_str(&cert.to_json_string()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert!(
            stickelberger::verify_certificate(&back, &CertificateSubject::Ring(&ring)).is_ok()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjugate_laws(m in arb_matrix(1, 5), c in -4i64..=4) {
        let n = m.n_rows();
        let det = m.det().unwrap();
        let adj = m.adjugate().unwrap();
        let want = IntMatrix::identity(n).scalar_mul(&det);
        prop_assert_eq!(m.mul(&adj).unwrap(), want.clone());
        prop_assert_eq!(adj.mul(&m).unwrap(), want);
        prop_assert_eq!(m.transpose().adjugate().unwrap(), adj.transpose());
        // adj(c·M) = c^(n-1)·adj(M).
        let scaled = m.scalar_mul(&bi(c)).adjugate().unwrap();
        prop_assert_eq!(scaled, adj.scalar_mul(&bi(c).pow(n as u32 - 1)));
    }

    #[test]
    fn determinant_matches_leibniz_oracle(m in arb_matrix(1, 5)) {
        prop_assert_eq!(m.det().unwrap(), oracles::det_by_permutations(&m).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(m in arb_skew(4)) {
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.det().unwrap());
        prop_assert_eq!(pf, oracles::pfaffian_by_matchings(&m).unwrap());
    }

    #[test]
    fn trace_square_congruence(m in arb_matrix(1, 6)) {
        let tr = m.trace().unwrap();
        let tr_sq = m.mul(&m).unwrap().trace().unwrap();
        prop_assert_eq!(mod4(&(&tr * &tr - &tr_sq)) % 2, 0);
    }

    #[test]
    fn uut_trace_identity_for_even_sizes(m in arb_matrix(2, 6)) {
        if m.n_rows() % 2 == 0 {
            prop_assert!(oracles::uut_identity_check(&m).unwrap());
        }
    }

    #[test]
    fn dpf_recursion_matches_enumeration(b in arb_matrix(1, 6)) {
        let (value, terms) = oracles::dpf_by_enumeration(&b).unwrap();
        prop_assert_eq!(value, stickelberger::discriminant_pfaffian(&b));
        prop_assert_eq!(BigInt::from(terms), stickelberger::dpf_term_count(b.n_rows()));
    }

    #[test]
    fn dpf_theorem_on_random_tracelike(seed in any::<u64>(), n in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let view = stickelberger::random_tracelike(&mut rng, n);
        let cert = dpf_congruence_check(&view).unwrap();
        let dpf_sq = &cert.dpf_value * &cert.dpf_value;
        prop_assert_eq!(mod4(&dpf_sq), mod4(&cert.disc_value));
        prop_assert!(stickelberger::verify_certificate(
            &cert,
            &CertificateSubject::Tracelike(view.matrix())
        )
        .is_ok());
    }

    #[test]
    fn det_mod4_expansion_contract(m in arb_matrix(1, 5), seed in any::<u64>()) {
        let n = m.n_rows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let q = IntMatrix::from_fn(n, n, |_, _| bi(rng.gen_range(-9..=9)));
        let direct = m.add(&q.scalar_mul(&bi(2))).unwrap().det().unwrap();
        prop_assert_eq!(
            stickelberger::det_mod4_expansion(&m, &q).unwrap(),
            mod4(&direct)
        );
    }

    #[test]
    fn unimodular_completion_postconditions(entries in vec(-30i64..=30, 1..=6)) {
        let mut coords: Vec<BigInt> = entries.iter().map(|&x| bi(x)).collect();
        // Force gcd 1 so the precondition holds.
        coords.push(bi(1));
        let q = unimodular::completion(&coords).unwrap();
        prop_assert!(q.det().unwrap().magnitude() == bi(1).magnitude());
        let row = IntMatrix::from_rows(&[coords.clone()]);
        let image = row.mul(&q).unwrap();
        prop_assert_eq!(image[(0, 0)].clone(), bi(1));
        for j in 1..coords.len() {
            prop_assert_eq!(image[(0, j)].clone(), bi(0));
        }
        let qinv = unimodular::inverse(&q).unwrap();
        prop_assert_eq!(qinv.row(0), &coords[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stembridge_split_identity(half in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let n = 2 * half;
        let mut sym = |rng: &mut ChaCha8Rng| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v = bi(rng.gen_range(-9..=9));
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
            m
        };
        let a = sym(&mut rng);
        let b = sym(&mut rng);
        prop_assert!(oracles::stembridge_split_check(&a, &b).unwrap());
    }
}
