//! p-adic valuations and the factorial ratios used by the leading-term lemmas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `v_p(n)`, or `None` for `n = 0`.
pub fn p_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

pub fn is_p_adic_unit(n: &BigInt, p: u64) -> bool {
    p_valuation(n, p) == Some(0)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts.iter().fold(factorial(total), |acc, &k| acc / factorial(k))
}

/// Base-p digits `a_0, a_1, …` of `n`, least significant first.
pub fn base_p_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    digits
}

/// `N_n = n! / ∏_j (p^j!)^{a_j}` where `n = Σ a_j p^j` in base p.
pub fn n_n(n: u64, p: u64) -> BigInt {
    let mut den = BigInt::one();
    let mut pj = 1u64;
    for a in base_p_digits(n, p) {
        let f = factorial(pj);
        for _ in 0..a {
            den *= &f;
        }
        pj *= p;
    }
    factorial(n) / den
}

pub fn n_n_is_p_adic_unit(n: u64, p: u64) -> bool {
    is_p_adic_unit(&n_n(n, p), p)
}
