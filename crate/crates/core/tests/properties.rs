use std::sync::Arc;

use mixshuffle_core::random::{random_poly, random_rb, random_word};
use mixshuffle_core::ring::{smith_normal_form, Matrix, RingElem, RingSpec};
use mixshuffle_core::rota_baxter::{check_rb_identity, RbAlgebra};
use mixshuffle_core::semigroup::OrderedSemigroup;
use mixshuffle_core::shuffle::{shuffle_oracle, shuffle_words, ShuffleAlgebra, TensorPoly};
use mixshuffle_core::word::{cfl_factorize, is_lyndon, Word};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(i: usize) -> RingSpec {
    match i {
        0 => RingSpec::Rationals,
        1 => RingSpec::Integers,
        2 => RingSpec::prime_field(2).unwrap(),
        3 => RingSpec::prime_field(3).unwrap(),
        _ => RingSpec::truncated_padic(3, 6).unwrap(),
    }
}

fn algebra(r: usize, lambda: i64, gens: &[&str]) -> Arc<ShuffleAlgebra> {
    let ring = ring(r);
    ShuffleAlgebra::new(ring, RingElem::from_int(ring, lambda), OrderedSemigroup::free_abelian(gens).unwrap()).unwrap()
}

fn words(sg: &OrderedSemigroup, n: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_word(sg, 5, 4, &mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_commutative_associative_and_unital(r in 0usize..5, lambda in -2i64..=2, seed: u64) {
        let alg = algebra(r, lambda, &["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&alg, 3, 3, 2, &mut rng);
        let b = random_poly(&alg, 3, 3, 2, &mut rng);
        let c = random_poly(&alg, 2, 2, 2, &mut rng);
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.try_mul(&TensorPoly::one(&alg)).unwrap(), a.clone());
        let left = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn recursion_agrees_with_label_enumeration(lambda in -2i64..=2, seed: u64) {
        let alg = algebra(1, lambda, &["x", "y"]);
        let w = words(alg.semigroup(), 2, seed);
        let rec = TensorPoly::from_terms(&alg, shuffle_words(&alg, &w[0], &w[1]));
        prop_assert_eq!(rec, shuffle_oracle(&alg, &w[0], &w[1]));
    }

    #[test]
    fn product_degree_and_length_bounds(lambda in -2i64..=2, seed: u64) {
        let alg = algebra(0, lambda, &["x", "y"]);
        let w = words(alg.semigroup(), 2, seed);
        let (m, n) = (w[0].len(), w[1].len());
        for (u, _) in shuffle_words(&alg, &w[0], &w[1]) {
            prop_assert_eq!(u.degree(), w[0].degree() + w[1].degree());
            prop_assert!(u.len() <= m + n && u.len() >= m.max(n));
            if lambda == 0 {
                prop_assert_eq!(u.len(), m + n);
            }
        }
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(lambda in -2i64..=2, seed: u64) {
        let z = algebra(1, lambda, &["x", "y"]);
        let f3 = algebra(3, lambda, &["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&z, 3, 3, 2, &mut rng);
        let b = random_poly(&z, 3, 3, 2, &mut rng);
        let reduced = a.try_mul(&b).unwrap().map_to(&f3).unwrap();
        prop_assert_eq!(reduced, a.map_to(&f3).unwrap().try_mul(&b.map_to(&f3).unwrap()).unwrap());
    }

    #[test]
    fn cfl_factorization_reassembles(seed: u64) {
        let sg = OrderedSemigroup::free_abelian(&["a", "b"]).unwrap();
        for w in words(&sg, 4, seed).into_iter().filter(|w| !w.is_empty()) {
            let factors = cfl_factorize(&w).unwrap();
            let mut joined = Word::empty();
            for (f, k) in &factors {
                prop_assert!(is_lyndon(f).unwrap());
                joined = joined.concat(&f.tensor_power(*k));
            }
            prop_assert_eq!(&joined, &w);
            for pair in factors.windows(2) {
                prop_assert!(pair[0].0.lex_cmp(&pair[1].0).is_gt());
            }
        }
    }

    #[test]
    fn lyndon_test_matches_rotations(seed: u64) {
        // Lyndon iff strictly smaller than every proper rotation and primitive
        let sg = OrderedSemigroup::free_abelian(&["a", "b"]).unwrap();
        for w in words(&sg, 6, seed).into_iter().filter(|w| !w.is_empty()) {
            let n = w.len();
            let by_rotation = (1..n).all(|i| {
                let rot = Word([&w.0[i..], &w.0[..i]].concat());
                w.lex_cmp(&rot).is_lt()
            });
            prop_assert_eq!(is_lyndon(&w).unwrap(), by_rotation);
        }
    }

    #[test]
    fn rota_baxter_identity(r in 0usize..5, lambda in -2i64..=2, seed: u64) {
        let ring = ring(r);
        let alg = RbAlgebra::new(ring, RingElem::from_int(ring, lambda), OrderedSemigroup::free_monoid(&["x"]).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_rb(&alg, 3, 2, 2, &mut rng);
        let b = random_rb(&alg, 3, 2, 2, &mut rng);
        let check = check_rb_identity(&a, &b).unwrap();
        prop_assert!(check.holds, "{:?}", check.difference);
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
    }

    #[test]
    fn smith_form_diagonalizes(entries in prop::collection::vec(-6i64..=6, 12)) {
        let z = RingSpec::Integers;
        let rows: Vec<&[i64]> = entries.chunks(4).collect();
        let m = Matrix::from_ints(z, &rows);
        let snf = smith_normal_form(&m).unwrap();
        let d = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                let want = if i == j && i < snf.diagonal.len() { snf.diagonal[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(d.get(i, j).to_bigint().unwrap(), want);
            }
        }
        for pair in snf.diagonal.windows(2) {
            if pair[0] != BigInt::from(0) {
                prop_assert_eq!(&pair[1] % &pair[0], BigInt::from(0));
            }
        }
        prop_assert!(snf.u.mul(&snf.u_inv).unwrap() == Matrix::identity(z, 3));
    }
}
