//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the lines when everything passes.

use mixshuffle_core::ring::{RingElem, RingSpec};
use mixshuffle_core::rota_baxter::RbAlgebra;
use mixshuffle_core::semigroup::OrderedSemigroup;
use mixshuffle_core::shuffle::ShuffleAlgebra;
use mixshuffle_core::verify::props::{
    default_rings, divided_powers, freshman_dream, leading_terms, n_n_units, oracle_equivalence, product_laws,
    rb_identity, DEFAULT_LAMBDAS,
};
use mixshuffle_core::verify::{
    compute_cokernel_basis, verify_fp_nonzero, verify_fp_weight0, verify_lyndon_over_z, verify_nested_alphabets,
    verify_radford_hoffman, verify_rbaz, verify_rbl, verify_z_polynomial, verify_zp, CheckRecord, VerificationReport,
};
use mixshuffle_core::word::{words_in_cell, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.failures.push(what.into());
        }
    }

    fn record(&mut self, c: &CheckRecord) {
        self.check(c.passed, format!("{}: {}", c.name, c.detail));
    }

    fn report(&mut self, r: &VerificationReport) {
        self.check(
            r.passed,
            format!("{} over {} ({}): {}", r.theorem, r.semigroup, r.lambda, r.counterexample.clone().unwrap_or_default()),
        );
    }
}

fn free(names: &[&str]) -> OrderedSemigroup {
    OrderedSemigroup::free_abelian(names).unwrap()
}

fn int(ring: RingSpec, n: i64) -> RingElem {
    RingElem::from_int(ring, n)
}

/// Lyndon test straight from the definition: smaller than every proper suffix.
fn lyndon_by_definition(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w.lex_cmp(&Word(w.0[i..].to_vec())).is_lt())
}

fn lyndon_counts_oracle(sg: &OrderedSemigroup, max_degree: usize) -> Vec<usize> {
    (1..=max_degree)
        .map(|n| words_in_cell(sg, n, n).iter().filter(|w| lyndon_by_definition(w)).count())
        .collect()
}

fn compositions_count(n: usize) -> usize {
    // compositions of n by brute force over subsets of the n−1 gaps
    if n == 0 {
        return 1;
    }
    (0..1usize << (n - 1)).count()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let fxy = free(&["x", "y"]);
    for ring in default_rings() {
        for &l in &DEFAULT_LAMBDAS {
            let alg = ShuffleAlgebra::new(ring, int(ring, l), fxy.clone()).unwrap();
            o.record(&product_laws(&alg, 200, 5, &mut rng));
        }
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let z = RingSpec::Integers;
    let fx = free(&["x"]);
    let fxy = free(&["x", "y"]);
    let x = fx.parse_elem("x").unwrap();
    for &l in &DEFAULT_LAMBDAS {
        let one = ShuffleAlgebra::new(z, int(z, l), fx.clone()).unwrap();
        o.record(&oracle_equivalence(&one, &[x.clone(), fx.pow(&x, 2)], 6));
        let two = ShuffleAlgebra::new(z, int(z, l), fxy.clone()).unwrap();
        o.record(&oracle_equivalence(&two, &fxy.elements_of_degree(1), 6));
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for sg in [free(&["x"]), free(&["x", "y"])] {
        for p in [2, 3, 5] {
            for l in [1, 2] {
                o.record(&freshman_dream(&sg, p, l, 5, 3).unwrap());
            }
        }
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for sg in [free(&["x"]), free(&["x", "y"])] {
        for &l in &DEFAULT_LAMBDAS {
            for c in leading_terms(&sg, l, 6, &[2, 3, 5]).unwrap() {
                o.record(&c);
            }
        }
    }
    o.record(&n_n_units(32, &[2, 3, 5]));
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let q = RingSpec::Rationals;
    for l in ["0", "1", "5/3"] {
        let lambda = RingElem::parse(q, l).unwrap();
        let r = verify_radford_hoffman(&free(&["x"]), &lambda, 6, 6).unwrap();
        o.report(&r);
        let dims: Vec<usize> = r.cells.iter().map(|c| c.dimension).collect();
        let want: Vec<usize> = (0..=6).map(compositions_count).collect();
        o.check(dims == want, format!("one-generator dimensions {dims:?}, expected {want:?}"));
        o.check(r.cells.iter().all(|c| c.monomials == c.dimension), "monomial counts differ from dimensions");
        o.report(&verify_radford_hoffman(&free(&["x", "y"]), &lambda, 4, 4).unwrap());
    }
    o.report(&verify_radford_hoffman(&OrderedSemigroup::ordered_set(&["x", "y"]).unwrap(), &RingElem::zero(q), 4, 4).unwrap());
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    for p in [2, 3] {
        o.report(&verify_fp_weight0(&OrderedSemigroup::ordered_set(&["x"]).unwrap(), p, 5, 5).unwrap());
        o.report(&verify_fp_weight0(&free(&["x"]), p, 5, 5).unwrap());
    }
    let f2 = RingSpec::prime_field(2).unwrap();
    let f3 = RingSpec::prime_field(3).unwrap();
    let r = verify_fp_nonzero(&free(&["x"]), &RingElem::one(f2), 5, 5).unwrap();
    o.check(r.cells.iter().any(|c| c.branch == "FG"), "free branch did not run");
    o.report(&r);
    for l in [1, 2] {
        o.report(&verify_fp_nonzero(&free(&["x"]), &int(f3, l), 5, 5).unwrap());
    }
    let mu2 = OrderedSemigroup::mu_p(2, 1, None).unwrap();
    let mu3 = OrderedSemigroup::mu_p(3, 1, None).unwrap();
    for (sg, lambda) in [(mu2, RingElem::one(f2)), (mu3.clone(), RingElem::one(f3)), (mu3, int(f3, 2))] {
        let r = verify_fp_nonzero(&sg, &lambda, 5, 5).unwrap();
        o.check(r.cells.iter().any(|c| c.branch == "JG"), "power-stable branch did not run");
        o.check(r.checks.iter().any(|c| c.name.contains("relation")), "no relation was checked");
        o.report(&r);
    }
    let names: Vec<String> = ["i", "a", "b"].iter().map(|s| s.to_string()).collect();
    let idem3 = OrderedSemigroup::finite(&[vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]], &[0, 1, 2], Some(&names)).unwrap();
    let r = verify_fp_nonzero(&idem3, &RingElem::one(f3), 5, 5).unwrap();
    o.check(r.cells.iter().any(|c| c.branch == "JG"), "idempotent semigroup skipped the power-stable branch");
    o.report(&r);
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let want = lyndon_counts_oracle(&free(&["x"]), 5);
    o.check(want == vec![1, 1, 2, 3, 6], format!("Lyndon oracle gave {want:?}"));
    for (p, l) in [(2, 1), (3, 1), (3, 2)] {
        let ring = RingSpec::truncated_padic(p, 6).unwrap();
        let r = verify_zp(&free(&["x"]), &int(ring, l), 5).unwrap();
        o.report(&r);
        let counts = r.checks.iter().find(|c| c.name.starts_with("|TEL")).expect("count check");
        o.check(counts.detail.contains(&format!("TEL {want:?}")), format!("counts: {}", counts.detail));
        o.check(r.checks.iter().any(|c| c.name == "precision stability" && c.passed), "precision stability");
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let z = RingSpec::Integers;
    let want = lyndon_counts_oracle(&free(&["x"]), 6);
    for l in [1, -1] {
        let alg = ShuffleAlgebra::new(z, int(z, l), free(&["x"])).unwrap();
        let ranks: Vec<usize> = (1..=6).map(|n| compute_cokernel_basis(&alg, n).unwrap()).map(|c| c.rank).collect();
        o.check(ranks == want, format!("cokernel ranks {ranks:?}, Lyndon counts {want:?}"));
        o.report(&verify_z_polynomial(&free(&["x"]), &int(z, l), 6).unwrap());
        o.report(&verify_z_polynomial(&free(&["x", "y"]), &int(z, l), 4).unwrap());
        o.report(&verify_nested_alphabets(&int(z, l), 3, 3).unwrap());
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mx = OrderedSemigroup::free_monoid(&["x"]).unwrap();
    for ring in default_rings() {
        for &l in &DEFAULT_LAMBDAS {
            let alg = RbAlgebra::new(ring, int(ring, l), mx.clone()).unwrap();
            o.record(&rb_identity(&alg, 200, 3, 3, &mut rng).unwrap());
        }
    }
    o.record(&divided_powers(8).unwrap());
    let q = RingSpec::Rationals;
    for l in ["0", "1", "-1"] {
        o.report(&verify_rbl(&free(&["x"]), &RingElem::parse(q, l).unwrap(), 3, 3).unwrap());
    }
    let z = RingSpec::Integers;
    for l in [1, -1] {
        o.report(&verify_rbaz(&free(&["x"]), &int(z, l), 3, 3).unwrap());
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let z = RingSpec::Integers;
    let r = verify_lyndon_over_z(&free(&["x"]), &int(z, 1), 6).unwrap();
    o.check(!r.passed, "Lyndon words were accepted as integral generators");
    let failed = r.checks.iter().find(|c| c.name == "spanning" && !c.passed);
    o.check(
        failed.is_some_and(|c| c.detail.contains("unreachable word")),
        "no unreachable word was reported",
    );
    o
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("product laws", criterion_1),
        ("oracle equivalence", criterion_2),
        ("freshman's dream", criterion_3),
        ("leading terms", criterion_4),
        ("rational structure", criterion_5),
        ("prime field structure", criterion_6),
        ("p-adic structure", criterion_7),
        ("integral polynomial structure", criterion_8),
        ("Rota-Baxter layer", criterion_9),
        ("non-vacuity", criterion_10),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = run();
        println!(
            "criterion {:>2} {:<30} {} ({:.1}s)",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for f in &o.failures {
            println!("    {f}");
        }
        all &= o.passed;
    }
    assert!(all, "some acceptance criteria failed");
}
