//! Random words and elements for property checks.

use std::sync::Arc;

use rand::Rng;

use crate::ring::{RingElem, RingSpec};
use crate::rota_baxter::{RbAlgebra, RbElement};
use crate::semigroup::{Elem, OrderedSemigroup};
use crate::shuffle::{ShuffleAlgebra, TensorPoly};
use crate::word::Word;

/// A small nonzero-ish coefficient in `[-3, 3]`.
pub fn random_coeff<R: Rng>(ring: RingSpec, rng: &mut R) -> RingElem {
    RingElem::from_int(ring, rng.gen_range(-3..=3))
}

/// Letters of degree between `min_deg` and `max_deg`, chosen uniformly.
fn random_letter<R: Rng>(sg: &OrderedSemigroup, min_deg: usize, max_deg: usize, rng: &mut R) -> Option<Elem> {
    let pool: Vec<Elem> = (min_deg..=max_deg).flat_map(|d| sg.elements_of_degree(d)).collect();
    if pool.is_empty() {
        None
    } else {
        Some(pool[rng.gen_range(0..pool.len())].clone())
    }
}

/// A word of degree at most `max_deg` and length at most `max_len`.
pub fn random_word<R: Rng>(sg: &OrderedSemigroup, max_deg: usize, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters = Vec::with_capacity(len);
    let mut budget = max_deg;
    for _ in 0..len {
        match random_letter(sg, 0, budget, rng) {
            Some(a) => {
                budget -= a.degree();
                letters.push(a);
            }
            None => break,
        }
    }
    Word(letters)
}

pub fn random_poly<R: Rng>(alg: &Arc<ShuffleAlgebra>, max_deg: usize, max_len: usize, max_terms: usize, rng: &mut R) -> TensorPoly {
    let n = rng.gen_range(1..=max_terms.max(1));
    TensorPoly::from_terms(
        alg,
        (0..n).map(|_| (random_word(alg.semigroup(), max_deg, max_len, rng), random_coeff(alg.ring(), rng))),
    )
}

/// Sum of pure tensors `head⊗tail` with total degree at most `max_deg` and
/// tail length at most `max_len`.
pub fn random_rb<R: Rng>(alg: &Arc<RbAlgebra>, max_deg: usize, max_len: usize, max_terms: usize, rng: &mut R) -> RbElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut out = RbElement::zero(alg);
    for _ in 0..n {
        let head = random_letter(alg.head_semigroup(), 0, max_deg, rng).expect("head semigroup has an identity");
        let tail = random_word(alg.semigroup(), max_deg - head.degree(), max_len, rng);
        let t = RbElement::pure(alg, head, &tail).expect("letters come from the algebra");
        out = out.try_add(&t.scale(&random_coeff(alg.ring(), rng))).expect("same algebra");
    }
    out
}
