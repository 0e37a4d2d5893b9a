//! Randomized and exhaustive checks of the product laws and leading-term
//! identities.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckRecord, VerificationReport};
use crate::error::Result;
use crate::random::{random_rb, random_word};
use crate::ring::padic::{base_p_digits, binomial, factorial, is_p_adic_unit, multinomial, n_n, p_valuation};
use crate::ring::{RingElem, RingSpec};
use crate::rota_baxter::{check_rb_identity, RbAlgebra, RbElement};
use crate::semigroup::{Elem, OrderedSemigroup};
use crate::shuffle::{shuffle_oracle, shuffle_power, shuffle_power_direct, ShuffleAlgebra, TensorPoly};
use crate::word::{cfl_factorize, enumerate_lyndon, words_in_cell, Word};

/// The coefficient rings and weights exercised by the randomized checks.
pub fn default_rings() -> Vec<RingSpec> {
    vec![
        RingSpec::Rationals,
        RingSpec::Integers,
        RingSpec::prime_field(2).expect("prime"),
        RingSpec::prime_field(3).expect("prime"),
        RingSpec::truncated_padic(3, 6).expect("fits"),
    ]
}

pub const DEFAULT_LAMBDAS: [i64; 4] = [0, 1, -1, 2];

fn failure(name: &str, total: usize, first: Option<String>) -> CheckRecord {
    match first {
        None => CheckRecord::new(name, true, format!("{total} cases")),
        Some(f) => CheckRecord::new(name, false, f),
    }
}

fn word(alg: &Arc<ShuffleAlgebra>, w: &Word) -> TensorPoly {
    TensorPoly::word(alg, w.clone())
}

fn mul(a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    a.try_mul(b).expect("same algebra")
}

/// Commutativity and associativity on random words whose degrees sum to at
/// most `max_degree`.
pub fn product_laws<R: Rng>(
    alg: &Arc<ShuffleAlgebra>,
    trials: usize,
    max_degree: usize,
    rng: &mut R,
) -> CheckRecord {
    let sg = alg.semigroup();
    let mut first = None;
    for _ in 0..trials {
        let u = random_word(sg, max_degree, max_degree, rng);
        let v = random_word(sg, max_degree - u.degree(), max_degree, rng);
        let w = random_word(sg, max_degree - u.degree() - v.degree(), max_degree, rng);
        let (pu, pv, pw) = (word(alg, &u), word(alg, &v), word(alg, &w));
        let comm = mul(&pu, &pv) == mul(&pv, &pu);
        let assoc = mul(&mul(&pu, &pv), &pw) == mul(&pu, &mul(&pv, &pw));
        if !(comm && assoc) && first.is_none() {
            let f = |x: &Word| x.format(sg, true);
            first = Some(format!(
                "{} fails for u = {}, v = {}, w = {}",
                if comm { "associativity" } else { "commutativity" },
                f(&u),
                f(&v),
                f(&w)
            ));
        }
    }
    failure(&format!("product laws over {} with λ = {}", alg.ring(), alg.lambda()), trials, first)
}

/// Every word of length at most `max_len` over the given letters.
pub fn words_over(letters: &[Elem], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in letters {
                let mut v = w.0.clone();
                v.push(a.clone());
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The recursive product against the label-enumeration oracle on every pair
/// of words with combined length at most `max_len`.
pub fn oracle_equivalence(alg: &Arc<ShuffleAlgebra>, letters: &[Elem], max_len: usize) -> CheckRecord {
    let sg = alg.semigroup();
    let words = words_over(letters, max_len);
    let mut count = 0;
    let mut first = None;
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= max_len) {
            count += 1;
            if mul(&word(alg, u), &word(alg, v)) != shuffle_oracle(alg, u, v) && first.is_none() {
                first = Some(format!("mismatch at u = {}, v = {}", u.format(sg, true), v.format(sg, true)));
            }
        }
    }
    failure(&format!("oracle equivalence over {} with λ = {}", sg.describe(), alg.lambda()), count, first)
}

/// `w^{⧢p} ≡ λ^{(p−1)(n−1)} w^{∘p} (mod p)`, with the power expanded
/// directly over 𝔽_p.
pub fn freshman_dream(sg: &OrderedSemigroup, p: u64, lambda: i64, max_degree: usize, max_len: usize) -> Result<CheckRecord> {
    let fp = RingSpec::prime_field(p)?;
    let falg = ShuffleAlgebra::new(fp, RingElem::from_int(fp, lambda), sg.clone())?;
    let mut count = 0;
    let mut first = None;
    for d in 1..=max_degree {
        for w in words_in_cell(sg, d, max_len).into_iter().filter(|w| !w.is_empty()) {
            count += 1;
            let lhs = shuffle_power_direct(&falg, &w, p as u32);
            let scalar = RingElem::from_int(fp, lambda).pow((p - 1) * (w.len() as u64 - 1));
            let rhs = TensorPoly::term(&falg, w.componentwise_power(sg, p), scalar);
            if lhs != rhs && first.is_none() {
                first = Some(format!("w = {}: w^p = {}", w.format(sg, true), lhs.format(true)));
            }
        }
    }
    Ok(failure(&format!("freshman's dream p = {p}, λ = {lambda} over {}", sg.describe()), count, first))
}

fn leading(poly: &TensorPoly) -> Option<(Word, BigInt)> {
    poly.leading_term().ok().map(|(w, c)| (w.clone(), c.to_bigint().expect("integer")))
}

/// The four leading-term identities over ℤ up to `max_degree`.
pub fn leading_terms(sg: &OrderedSemigroup, lambda: i64, max_degree: usize, primes: &[u64]) -> Result<Vec<CheckRecord>> {
    let z = RingSpec::Integers;
    let alg = ShuffleAlgebra::new(z, RingElem::from_int(z, lambda), sg.clone())?;
    let fmt = |w: &Word| w.format(sg, true);
    let one = TensorPoly::one(&alg);
    let mut out = Vec::new();

    // (1) products of shuffle powers along the CFL factorization
    let mut count = 0;
    let mut first = None;
    for d in 1..=max_degree {
        for w in words_in_cell(sg, d, d) {
            count += 1;
            let f = cfl_factorize(&w)?;
            let prod = f.iter().fold(one.clone(), |acc, (u, i)| mul(&acc, &shuffle_power(&alg, u, *i as u32)));
            let coeff = f.iter().fold(BigInt::from(1), |acc, (_, i)| acc * factorial(*i as u64));
            if leading(&prod) != Some((w.clone(), coeff.clone())) && first.is_none() {
                first = Some(format!("w = {}: leading term {:?}, expected {coeff}", fmt(&w), leading(&prod).map(|(u, c)| (fmt(&u), c))));
            }
        }
    }
    out.push(failure(&format!("CFL leading terms, λ = {lambda}"), count, first));

    let lyn = enumerate_lyndon(sg, max_degree, None)?;

    // (2) u^{⊗s} ⧢ v for u Lyndon and v lexicographically smaller
    let (mut count, mut first) = (0, None);
    for u in lyn.iter() {
        for s in 1..=max_degree / u.degree() {
            let us = u.tensor_power(s);
            let rest = max_degree - us.degree();
            for dv in 1..=rest {
                for v in words_in_cell(sg, dv, dv).into_iter().filter(|v| v.lex_cmp(u).is_lt()) {
                    count += 1;
                    let prod = mul(&word(&alg, &us), &word(&alg, &v));
                    if leading(&prod) != Some((us.concat(&v), BigInt::from(1))) && first.is_none() {
                        first = Some(format!("u = {}, s = {s}, v = {}", fmt(u), fmt(&v)));
                    }
                }
            }
        }
    }
    out.push(failure(&format!("Lyndon prefix leading terms, λ = {lambda}"), count, first));

    // (3) products of tensor powers of one Lyndon word
    let (mut count, mut first) = (0, None);
    for u in lyn.iter() {
        let total = max_degree / u.degree();
        for parts in compositions(total) {
            if parts.len() < 2 {
                continue;
            }
            count += 1;
            let prod = parts.iter().fold(one.clone(), |acc, &n| mul(&acc, &word(&alg, &u.tensor_power(n as usize))));
            let n: u64 = parts.iter().sum();
            if leading(&prod) != Some((u.tensor_power(n as usize), multinomial(&parts))) && first.is_none() {
                first = Some(format!("u = {}, parts {parts:?}", fmt(u)));
            }
        }
    }
    out.push(failure(&format!("multinomial leading terms, λ = {lambda}"), count, first));

    // (4) base-p digit products with the unit N_n
    let (mut count, mut first) = (0, None);
    for &p in primes {
        for u in lyn.iter() {
            for n in 1..=(max_degree / u.degree()) as u64 {
                count += 1;
                let mut prod = one.clone();
                let mut pj = 1usize;
                for a in base_p_digits(n, p) {
                    prod = mul(&prod, &shuffle_power(&alg, &u.tensor_power(pj), a as u32));
                    pj *= p as usize;
                }
                let nn = n_n(n, p);
                let ok = leading(&prod) == Some((u.tensor_power(n as usize), nn.clone())) && is_p_adic_unit(&nn, p);
                if !ok && first.is_none() {
                    first = Some(format!("u = {}, n = {n}, p = {p}", fmt(u)));
                }
            }
        }
    }
    out.push(failure(&format!("base-p leading terms, λ = {lambda}"), count, first));
    Ok(out)
}

/// `N_n` is a p-adic unit, checked against Legendre's formula for `v_p(n!)`.
pub fn n_n_units(max_n: u64, primes: &[u64]) -> CheckRecord {
    let mut first = None;
    let mut count = 0;
    for &p in primes {
        for n in 1..=max_n {
            count += 1;
            let digits = base_p_digits(n, p);
            let legendre = |m: u64| (m - base_p_digits(m, p).iter().sum::<u64>()) / (p - 1);
            let mut denominator_valuation = 0;
            let mut pj = 1u64;
            for &a in &digits {
                denominator_valuation += a * legendre(pj);
                pj *= p;
            }
            let by_formula = legendre(n) == denominator_valuation;
            let direct = p_valuation(&n_n(n, p), p) == Some(0);
            if !(by_formula && direct) && first.is_none() {
                first = Some(format!("n = {n}, p = {p}"));
            }
        }
    }
    failure(&format!("N_n is a p-adic unit for n <= {max_n}"), count, first)
}

fn compositions(n: usize) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first as u64);
            out.push(rest);
        }
    }
    out
}

/// The Rota–Baxter identity on random pairs of bounded degree and length.
pub fn rb_identity<R: Rng>(alg: &Arc<RbAlgebra>, trials: usize, max_degree: usize, max_len: usize, rng: &mut R) -> Result<CheckRecord> {
    let mut first = None;
    for _ in 0..trials {
        let a = random_rb(alg, max_degree, max_len, 3, rng);
        let b = random_rb(alg, max_degree, max_len, 3, rng);
        let c = check_rb_identity(&a, &b)?;
        if !c.holds && first.is_none() {
            first = Some(format!("a = {}, b = {}: difference {}", a.format(true), b.format(true), c.difference.unwrap_or_default()));
        }
    }
    Ok(failure(&format!("Rota-Baxter identity over {} with λ = {}", alg.ring(), alg.lambda()), trials, first))
}

/// `x_m x_n = C(m+n, m) x_{m+n}` for `x_k = 1⊗1^{⊗k}` at weight zero over ℤ.
pub fn divided_powers(max_total: usize) -> Result<CheckRecord> {
    let z = RingSpec::Integers;
    let trivial = OrderedSemigroup::free_monoid::<&str>(&[])?;
    let alg = RbAlgebra::new(z, RingElem::zero(z), trivial)?;
    let x = |k: usize| RbElement::pure(&alg, Elem::One, &Word(vec![Elem::One; k]));
    let mut first = None;
    let mut count = 0;
    for m in 0..=max_total {
        for n in 0..=max_total - m {
            count += 1;
            let lhs = x(m)?.try_mul(&x(n)?)?;
            let c = RingElem::from_bigint(z, &binomial((m + n) as u64, m as u64));
            let rhs = x(m + n)?.scale(&c);
            if lhs.try_sub(&rhs)?.is_zero() {
                continue;
            }
            if first.is_none() {
                first = Some(format!("m = {m}, n = {n}: {}", lhs.format(true)));
            }
        }
    }
    Ok(failure(&format!("divided powers for m + n <= {max_total}"), count, first))
}

/// Every check above at its default size, seeded.
pub fn run_default_suite(seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("props", "several".into(), "several".into(), "F(x,y), M(x)".into(), 5, 5);
    let fxy = OrderedSemigroup::free_abelian(&["x", "y"])?;
    let fx = OrderedSemigroup::free_abelian(&["x"])?;
    let mx = OrderedSemigroup::free_monoid(&["x"])?;
    for ring in default_rings() {
        for &l in &DEFAULT_LAMBDAS {
            let lambda = RingElem::from_int(ring, l);
            let alg = ShuffleAlgebra::new(ring, lambda.clone(), fxy.clone())?;
            report.checks.push(product_laws(&alg, 200, 5, &mut rng));
            let rb = RbAlgebra::new(ring, lambda, mx.clone())?;
            report.checks.push(rb_identity(&rb, 200, 3, 3, &mut rng)?);
        }
    }
    let z = RingSpec::Integers;
    for &l in &DEFAULT_LAMBDAS {
        let one_gen = ShuffleAlgebra::new(z, RingElem::from_int(z, l), fx.clone())?;
        let x = fx.parse_elem("x")?;
        report.checks.push(oracle_equivalence(&one_gen, &[x.clone(), fx.pow(&x, 2)], 6));
        let two_gen = ShuffleAlgebra::new(z, RingElem::from_int(z, l), fxy.clone())?;
        report.checks.push(oracle_equivalence(&two_gen, &fxy.elements_of_degree(1), 6));
    }
    for p in [2, 3, 5] {
        for l in [1, 2] {
            report.checks.push(freshman_dream(&fx, p, l, 5, 3)?);
        }
    }
    for &l in &DEFAULT_LAMBDAS {
        report.checks.extend(leading_terms(&fx, l, 6, &[2, 3, 5])?);
    }
    report.checks.push(n_n_units(32, &[2, 3, 5]));
    report.checks.push(divided_powers(8)?);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
    }

    #[test]
    fn small_suite_pieces() {
        let fx = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        let z = RingSpec::Integers;
        let alg = ShuffleAlgebra::new(z, RingElem::one(z), fx.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(product_laws(&alg, 20, 4, &mut rng).passed);
        assert!(freshman_dream(&fx, 2, 1, 3, 2).unwrap().passed);
        assert!(leading_terms(&fx, 1, 4, &[2]).unwrap().iter().all(|c| c.passed));
        assert!(divided_powers(4).unwrap().passed);
        assert!(n_n_units(10, &[2, 3]).passed);
    }

    #[test]
    fn freshman_dream_detects_wrong_scalar() {
        // at λ = 1 the dream holds with scalar 1; a scalar of 2 mod 3 does not
        let fx = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        let f3 = RingSpec::prime_field(3).unwrap();
        let alg = ShuffleAlgebra::new(f3, RingElem::one(f3), fx.clone()).unwrap();
        let w = Word::parse(&fx, "x,x").unwrap();
        let wrong = TensorPoly::term(&alg, w.componentwise_power(&fx, 3), RingElem::from_int(f3, 2));
        assert_ne!(shuffle_power(&alg, &w, 3), wrong);
    }

    #[test]
    fn single_letter_dream_fails_when_p_divides_weight() {
        // x ⧢ x = 2·x⊗x + 2·x² at λ = 2, which is 0 over 𝔽_2, not x²
        let fx = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        let f2 = RingSpec::prime_field(2).unwrap();
        let alg = ShuffleAlgebra::new(f2, RingElem::from_int(f2, 2), fx.clone()).unwrap();
        let x = Word::parse(&fx, "x").unwrap();
        assert!(shuffle_power_direct(&alg, &x, 2).is_zero());
        assert!(!freshman_dream(&fx, 2, 2, 1, 1).unwrap().passed);
        assert!(freshman_dream(&fx, 3, 2, 5, 3).unwrap().passed);
    }
}
