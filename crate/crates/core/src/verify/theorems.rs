//! Presentations over fields and truncated p-adic rings.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{
    cells_for, check_cells, CellClaim, CheckRecord, Generator, Host, PresentedAlgebra, Relation, RbHost, ShuffleHost,
    Terms, VerificationReport,
};
use crate::error::{Error, Result};
use crate::ring::{smith_normal_form, RingElem, RingSpec};
use crate::rota_baxter::{rbl_generating_set, RbAlgebra};
use crate::semigroup::{Elem, OrderedSemigroup, SemigroupClass, SemigroupKind};
use crate::shuffle::{eettl_representative, ShuffleAlgebra};
use crate::word::{enumerate_lyndon, LyndonFamily, Word, WordSet};

use super::integral::mu_matrix;

pub(super) fn word_generator(host: &dyn Host, w: &Word, relation: Relation) -> Result<Generator> {
    Generator::new(host, Terms::from([(w.clone(), RingElem::one(host.ring()))]), relation)
}

/// `(cells, effective length bound)` for a semigroup's grading.
pub(super) fn grading_cells(sg: &OrderedSemigroup, degree_bound: usize, length_bound: usize) -> (Vec<(usize, usize)>, usize) {
    if sg.is_positively_graded() {
        (cells_for(true, degree_bound, degree_bound), degree_bound)
    } else if sg.is_finite() {
        ((0..=length_bound).map(|l| (0, l)).collect(), length_bound)
    } else {
        (cells_for(false, degree_bound, length_bound), length_bound)
    }
}

pub(super) fn run_branch(
    report: &mut VerificationReport,
    pres: &PresentedAlgebra,
    branch: &str,
    cells: &[(usize, usize)],
    claim: CellClaim,
) {
    report.cells.extend(check_cells(pres, branch, cells, claim));
    for mut c in pres.check_relations(report.degree_bound, report.length_bound) {
        if !branch.is_empty() {
            c.name = format!("{branch} {}", c.name);
        }
        report.checks.push(c);
    }
}

fn relation_scalar(lambda: &RingElem, p: u64, len: usize) -> RingElem {
    lambda.pow((p - 1) * (len as u64).saturating_sub(1))
}

fn tensor_one_powers(sg: &OrderedSemigroup, p: u64, length_bound: usize) -> BTreeSet<Word> {
    let one = sg.identity().expect("monoid");
    let mut out = BTreeSet::new();
    let mut k = 1usize;
    while k <= length_bound {
        out.insert(Word(vec![one.clone(); k]));
        k *= p as usize;
    }
    out
}

fn is_free_monoid(sg: &OrderedSemigroup) -> bool {
    matches!(sg.kind(), SemigroupKind::Unitarized(s) if matches!(s.kind(), SemigroupKind::FreeAbelian { .. }))
}

fn free_generators(sg: &OrderedSemigroup) -> Result<Vec<String>> {
    match sg.kind() {
        SemigroupKind::FreeAbelian { generators } => Ok(generators.clone()),
        SemigroupKind::Unitarized(s) => match s.kind() {
            SemigroupKind::FreeAbelian { generators } => Ok(generators.clone()),
            _ => Err(Error::Precondition("a free abelian generating set X is required".into())),
        },
        _ => Err(Error::Precondition("a free abelian generating set X is required".into())),
    }
}

fn field_prime(ring: RingSpec) -> Result<u64> {
    match ring {
        RingSpec::PrimeField { p } => Ok(p),
        other => Err(Error::Precondition(format!("a prime field is required, got {other}"))),
    }
}

/// Lyndon monomials over ℚ: a graded basis for any λ.
pub fn verify_radford_hoffman(
    sg: &OrderedSemigroup,
    lambda: &RingElem,
    degree_bound: usize,
    length_bound: usize,
) -> Result<VerificationReport> {
    let ring = lambda.ring();
    if ring != RingSpec::Rationals {
        return Err(Error::Precondition(format!("rational coefficients are required, got {ring}")));
    }
    let alg = ShuffleAlgebra::new(ring, lambda.clone(), sg.clone())?;
    let (cells, lb) = grading_cells(sg, degree_bound, length_bound);
    let lyn = enumerate_lyndon(sg, degree_bound, Some(lb))?;
    let host: Arc<dyn Host> = Arc::new(ShuffleHost(alg));
    let gens = lyn.iter().map(|w| word_generator(host.as_ref(), w, Relation::None)).collect::<Result<Vec<_>>>()?;
    let pres = PresentedAlgebra::new(host, gens)?;
    let mut report = VerificationReport::new("msq", ring.to_string(), lambda.to_string(), sg.describe(), degree_bound, lb);
    run_branch(&mut report, &pres, "", &cells, CellClaim::Basis);
    Ok(report.finish())
}

/// Weight zero over 𝔽_p: TL with `w^p = 0`.
pub fn verify_fp_weight0(sg: &OrderedSemigroup, p: u64, degree_bound: usize, length_bound: usize) -> Result<VerificationReport> {
    let ring = RingSpec::prime_field(p)?;
    let alg = ShuffleAlgebra::new(ring, RingElem::zero(ring), sg.clone())?;
    let (cells, lb) = grading_cells(sg, degree_bound, length_bound);
    let fam = LyndonFamily::build(sg, p, degree_bound, Some(lb))?;
    let host: Arc<dyn Host> = Arc::new(ShuffleHost(alg));
    let gens = fam
        .tl
        .iter()
        .map(|w| word_generator(host.as_ref(), w, Relation::PowerZero(p as u32)))
        .collect::<Result<Vec<_>>>()?;
    let pres = PresentedAlgebra::new(host, gens)?;
    let mut report = VerificationReport::new("psh", ring.to_string(), "0".into(), sg.describe(), degree_bound, lb);
    run_branch(&mut report, &pres, "", &cells, CellClaim::Basis);
    Ok(report.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FpBranch {
    /// Free abelian: polynomial on TEL.
    #[serde(rename = "FG")]
    Free,
    /// Power-monotone: TEL₂ free, TEL₁ with `w^p = λ^{(p−1)(len−1)} w`.
    #[serde(rename = "PG")]
    PowerMonotone,
    /// Power-stable: TL₁ with scalar relations, EETL₂ with `w^p = 0`.
    #[serde(rename = "JG")]
    PowerStable,
}

impl FpBranch {
    fn label(self) -> &'static str {
        match self {
            FpBranch::Free => "FG",
            FpBranch::PowerMonotone => "PG",
            FpBranch::PowerStable => "JG",
        }
    }
}

pub fn fp_nonzero_branches(sg: &OrderedSemigroup, p: u64, degree_bound: usize) -> Vec<FpBranch> {
    let classes = sg.classify(p, degree_bound);
    let mut out = Vec::new();
    if classes.contains(SemigroupClass::Free) {
        out.push(FpBranch::Free);
    }
    if classes.contains(SemigroupClass::PowerMonotone) {
        out.push(FpBranch::PowerMonotone);
    }
    if classes.contains(SemigroupClass::PowerStable) {
        out.push(FpBranch::PowerStable);
    }
    out
}

/// Nonzero weight over 𝔽_p, every branch the semigroup's classes admit.
pub fn verify_fp_nonzero(
    sg: &OrderedSemigroup,
    lambda: &RingElem,
    degree_bound: usize,
    length_bound: usize,
) -> Result<VerificationReport> {
    let ring = lambda.ring();
    let p = field_prime(ring)?;
    if lambda.is_zero() {
        return Err(Error::Precondition("the weight must be nonzero".into()));
    }
    let branches = fp_nonzero_branches(sg, p, degree_bound);
    if branches.is_empty() {
        return Err(Error::Precondition(format!("{} is in none of the classes FG, PG, JG for p = {p}", sg.describe())));
    }
    let alg = ShuffleAlgebra::new(ring, lambda.clone(), sg.clone())?;
    let (cells, lb) = grading_cells(sg, degree_bound, length_bound);
    let fam = LyndonFamily::build(sg, p, degree_bound, Some(lb))?;
    let host: Arc<dyn Host> = Arc::new(ShuffleHost(alg.clone()));
    let mut report = VerificationReport::new("pmsh", ring.to_string(), lambda.to_string(), sg.describe(), degree_bound, lb);
    report.checks.push(CheckRecord::new(
        "classes",
        true,
        branches.iter().map(|b| b.label()).collect::<Vec<_>>().join(", "),
    ));
    for b in branches {
        let gens: Vec<Generator> = match b {
            FpBranch::Free => fam
                .tel
                .iter()
                .map(|w| word_generator(host.as_ref(), w, Relation::None))
                .collect::<Result<_>>()?,
            FpBranch::PowerMonotone => {
                let mut g: Vec<Generator> = fam
                    .tel2
                    .iter()
                    .map(|w| word_generator(host.as_ref(), w, Relation::None))
                    .collect::<Result<_>>()?;
                for w in fam.tel1.iter() {
                    let rel = Relation::PowerScalar(p as u32, relation_scalar(lambda, p, w.len()));
                    g.push(word_generator(host.as_ref(), w, rel)?);
                }
                g
            }
            FpBranch::PowerStable => {
                let mut g: Vec<Generator> = Vec::new();
                for w in fam.tl1.iter() {
                    let rel = Relation::PowerScalar(p as u32, relation_scalar(lambda, p, w.len()));
                    g.push(word_generator(host.as_ref(), w, rel)?);
                }
                for w in fam.tl2.iter() {
                    let rep = eettl_representative(&alg, w, p)?;
                    g.push(Generator::new(host.as_ref(), rep.into_terms(), Relation::PowerZero(p as u32))?);
                }
                g
            }
        };
        let pres = PresentedAlgebra::new(host.clone(), gens)?;
        run_branch(&mut report, &pres, b.label(), &cells, CellClaim::Basis);
    }
    if is_free_monoid(sg) {
        let want = tensor_one_powers(sg, p, lb);
        let have: BTreeSet<Word> = fam.tel1.iter().cloned().collect();
        report.checks.push(CheckRecord::new(
            "TEL_1 = {1^(x)p^i}",
            have == want,
            format!("{} words", have.len()),
        ));
    }
    Ok(report.finish())
}

fn tel_counts_check(fam: &LyndonFamily, degree_bound: usize) -> CheckRecord {
    let tel: Vec<usize> = (1..=degree_bound).map(|n| fam.tel.of_degree(n).len()).collect();
    let lyn: Vec<usize> = (1..=degree_bound).map(|n| fam.l.of_degree(n).len()).collect();
    CheckRecord::new("|TEL(n)| = |Lyn(n)|", tel == lyn, format!("TEL {tel:?}, Lyn {lyn:?}"))
}

fn zp_cells(sg: &OrderedSemigroup, lambda: &RingElem, degree_bound: usize) -> Result<VerificationReport> {
    let ring = lambda.ring();
    let RingSpec::TruncatedPAdic { p, .. } = ring else {
        return Err(Error::Precondition(format!("a truncated p-adic ring is required, got {ring}")));
    };
    let alg = ShuffleAlgebra::new(ring, lambda.clone(), sg.clone())?;
    let fam = LyndonFamily::build(sg, p, degree_bound, None)?;
    let host: Arc<dyn Host> = Arc::new(ShuffleHost(alg));
    let gens = fam.tel.iter().map(|w| word_generator(host.as_ref(), w, Relation::None)).collect::<Result<Vec<_>>>()?;
    let pres = PresentedAlgebra::new(host, gens)?;
    let mut report = VerificationReport::new("isomor", ring.to_string(), lambda.to_string(), sg.describe(), degree_bound, degree_bound);
    run_branch(&mut report, &pres, "", &cells_for(true, degree_bound, degree_bound), CellClaim::Basis);
    report.checks.push(tel_counts_check(&fam, degree_bound));
    Ok(report)
}

/// Over ℤ/p^N with a p-unit weight: TEL monomials form a basis mod p, the
/// indecomposables have rank `|Lyn⁽ⁿ⁾|` after localizing at p, and the
/// verdicts agree at precision N+2.
pub fn verify_zp(sg: &OrderedSemigroup, lambda: &RingElem, degree_bound: usize) -> Result<VerificationReport> {
    let ring = lambda.ring();
    let RingSpec::TruncatedPAdic { p, precision } = ring else {
        return Err(Error::Precondition(format!("a truncated p-adic ring is required, got {ring}")));
    };
    if !lambda.is_unit() {
        return Err(Error::Precondition(format!("λ = {lambda} is not a p-adic unit")));
    }
    if !sg.classify(p, degree_bound).contains(SemigroupClass::Free) {
        return Err(Error::Precondition("a free abelian semigroup is required".into()));
    }
    let mut report = zp_cells(sg, lambda, degree_bound)?;

    let lift = lambda.symmetric_lift().expect("residue");
    let zalg = ShuffleAlgebra::new(RingSpec::Integers, RingElem::from_bigint(RingSpec::Integers, &lift), sg.clone())?;
    let lyn = enumerate_lyndon(sg, degree_bound, None)?;
    for n in 1..=degree_bound {
        let m = mu_matrix(&zalg, n);
        let snf = smith_normal_form(&m)?;
        let units = snf.diagonal.iter().filter(|d| crate::ring::padic::is_p_adic_unit(d, p)).count();
        let local_rank = m.rows() - units;
        let torsion: Vec<String> = snf
            .diagonal
            .iter()
            .filter(|d| !crate::ring::padic::is_p_adic_unit(d, p))
            .map(|d| d.to_string())
            .collect();
        let want = lyn.of_degree(n).len();
        report.checks.push(CheckRecord::new(
            "indecomposables",
            local_rank == want && torsion.is_empty(),
            format!(
                "degree {n}: rank {local_rank} (Lyn {want}){}",
                if torsion.is_empty() { String::new() } else { format!(", p-torsion divisors {}", torsion.join(", ")) }
            ),
        ));
    }

    match RingSpec::truncated_padic(p, precision + 2) {
        Ok(finer) => {
            let again = zp_cells(sg, &RingElem::from_bigint(finer, &lift), degree_bound)?;
            let same = again.cells.iter().map(|c| c.passed).eq(report.cells.iter().map(|c| c.passed));
            report.checks.push(CheckRecord::new(
                "precision stability",
                same,
                format!("cell verdicts at {finer} {}", if same { "agree" } else { "differ" }),
            ));
        }
        Err(_) => report.checks.push(CheckRecord::new(
            "precision stability",
            true,
            format!("skipped: {p}^{} exceeds the residue range", precision + 2),
        )),
    }
    Ok(report.finish())
}

fn rb_host(ring: RingSpec, lambda: &RingElem, sg: OrderedSemigroup) -> Result<(Arc<RbAlgebra>, Arc<dyn Host>)> {
    let alg = RbAlgebra::new(ring, lambda.clone(), sg)?;
    Ok((alg.clone(), Arc::new(RbHost(alg))))
}

fn full(head: Elem, tail: &Word) -> Word {
    let mut v = vec![head];
    v.extend(tail.0.iter().cloned());
    Word(v)
}

/// Over ℚ with A = ℚ[X]: X together with `1⊗w`, `w ∈ Lyn(M(X))`.
pub fn verify_rbl(x: &OrderedSemigroup, lambda: &RingElem, degree_bound: usize, length_bound: usize) -> Result<VerificationReport> {
    let ring = lambda.ring();
    if ring != RingSpec::Rationals {
        return Err(Error::Precondition(format!("rational coefficients are required, got {ring}")));
    }
    let m = OrderedSemigroup::free_monoid(&free_generators(x)?)?;
    let (alg, host) = rb_host(ring, lambda, m.clone())?;
    let gens = rbl_generating_set(&alg, degree_bound, length_bound)?
        .into_iter()
        .map(|e| Generator::new(host.as_ref(), e.terms().clone(), Relation::None))
        .collect::<Result<Vec<_>>>()?;
    let pres = PresentedAlgebra::new(host, gens)?;
    let mut report = VerificationReport::new("rbl", ring.to_string(), lambda.to_string(), m.describe(), degree_bound, length_bound);
    run_branch(&mut report, &pres, "", &cells_for(false, degree_bound, length_bound), CellClaim::Basis);
    Ok(report.finish())
}

/// `G = {e} ∪ μ_{p−1}` with `ξ^{p−1}` the identity of `μ_{p−1}`.
fn unitarized_cyclic(p: u64) -> Result<OrderedSemigroup> {
    let q = (p - 1) as usize;
    // index 0 is e, index i is ξ^i for 1 ≤ i ≤ q
    let table: Vec<Vec<usize>> = (0..=q)
        .map(|a| {
            (0..=q)
                .map(|b| match (a, b) {
                    (0, b) => b,
                    (a, 0) => a,
                    (a, b) => (a + b - 1) % q + 1,
                })
                .collect()
        })
        .collect();
    let names: Vec<String> =
        (0..=q).map(|i| if i == 0 { "e".into() } else if i == 1 { "xi".into() } else { format!("xi{i}") }).collect();
    let order: Vec<usize> = (0..=q).collect();
    OrderedSemigroup::finite(&table, &order, Some(&names))
}

/// `base^k` as a left-nested product, with injections of one letter.
fn power_semigroup(base: &OrderedSemigroup, k: usize) -> OrderedSemigroup {
    (1..k).fold(base.clone(), |acc, _| OrderedSemigroup::product(acc, base.clone()))
}

fn coordinate(k: usize, identity: &Elem, at: usize, value: &Elem) -> Elem {
    let pick = |i: usize| if i == at { value.clone() } else { identity.clone() };
    (1..k).fold(pick(0), |acc, i| Elem::pair(acc, pick(i)))
}

/// The four presentations of free commutative Rota–Baxter algebras over 𝔽_p.
pub fn verify_rbafp(
    case: u8,
    x: &OrderedSemigroup,
    lambda: &RingElem,
    degree_bound: usize,
    length_bound: usize,
) -> Result<VerificationReport> {
    let ring = lambda.ring();
    let p = field_prime(ring)?;
    let names = free_generators(x)?;
    match case {
        1 if !lambda.is_zero() => return Err(Error::Precondition("case 1 has weight zero".into())),
        2..=4 if lambda.is_zero() => return Err(Error::Precondition(format!("case {case} needs a nonzero weight"))),
        1..=4 => {}
        _ => return Err(Error::Precondition(format!("unknown case {case}"))),
    }
    let sg = match case {
        1 | 2 => OrderedSemigroup::free_monoid(&names)?,
        3 => power_semigroup(&unitarized_cyclic(p)?, names.len()),
        _ => OrderedSemigroup::mu_p(p, names.len() as u32, None)?,
    };
    let (cells, lb) = grading_cells(&sg, degree_bound, length_bound);
    let (alg, host) = rb_host(ring, lambda, sg.clone())?;
    let one = sg.identity().expect("monoid");
    let fam = LyndonFamily::build(&sg, p, degree_bound, Some(lb))?;
    let h = host.as_ref();
    let pu = p as u32;
    let tail_gen = |w: &Word, rel: Relation| word_generator(h, &full(one.clone(), w), rel);
    let scalar_rel = |w: &Word| Relation::PowerScalar(pu, relation_scalar(lambda, p, w.len()));

    let mut gens = Vec::new();
    match case {
        1 | 2 => {
            for xe in sg.elements_of_degree(1) {
                gens.push(word_generator(h, &Word::letter(xe), Relation::None)?);
            }
        }
        3 => {
            let g = unitarized_cyclic(p)?;
            let (e, xi) = (g.parse_elem("e")?, g.parse_elem("xi")?);
            for i in 0..names.len() {
                let head = coordinate(names.len(), &e, i, &xi);
                gens.push(word_generator(h, &Word::letter(head), Relation::PowerScalar(pu, RingElem::one(ring)))?);
            }
        }
        _ => {
            for i in 0..names.len() {
                let name = if names.len() == 1 { "g".to_string() } else { format!("g{}", i + 1) };
                gens.push(word_generator(h, &Word::letter(sg.parse_elem(&name)?), Relation::PowerOne(pu))?);
            }
        }
    }
    match case {
        1 => {
            for w in fam.tl.iter() {
                gens.push(tail_gen(w, Relation::PowerZero(pu))?);
            }
        }
        2 => {
            for w in fam.tel2.iter() {
                gens.push(tail_gen(w, Relation::None)?);
            }
            for w in tensor_one_powers(&sg, p, lb) {
                gens.push(tail_gen(&w, scalar_rel(&w))?);
            }
        }
        3 => {
            for w in fam.tel.iter() {
                gens.push(tail_gen(w, scalar_rel(w))?);
            }
        }
        _ => {
            for w in fam.tl1.iter() {
                gens.push(tail_gen(w, scalar_rel(w))?);
            }
            for w in fam.tl2.iter() {
                let rep = eettl_representative(alg.shuffle(), w, p)?;
                let image: Terms = rep.terms().iter().map(|(u, c)| (full(one.clone(), u), c.clone())).collect();
                gens.push(Generator::new(h, image, Relation::PowerZero(pu))?);
            }
        }
    }
    let pres = PresentedAlgebra::new(host.clone(), gens)?;
    let mut report = VerificationReport::new(
        &format!("rbafp{case}"),
        ring.to_string(),
        lambda.to_string(),
        sg.describe(),
        degree_bound,
        lb,
    );
    let class = sg.classify(p, degree_bound);
    match case {
        2 => {
            let have: BTreeSet<Word> = fam.tel1.iter().cloned().collect();
            report.checks.push(CheckRecord::new(
                "TEL_1 = {1^(x)p^i}",
                have == tensor_one_powers(&sg, p, lb),
                format!("{} words", have.len()),
            ));
        }
        3 => report.checks.push(CheckRecord::new(
            "S in PG",
            class.contains(SemigroupClass::PowerMonotone),
            sg.describe(),
        )),
        4 => report.checks.push(CheckRecord::new(
            "S in JG",
            class.contains(SemigroupClass::PowerStable),
            sg.describe(),
        )),
        _ => {}
    }
    run_branch(&mut report, &pres, "", &cells, CellClaim::Basis);
    Ok(report.finish())
}

/// Over ℤ/p^N: X ∪ {1⊗w : w ∈ TEL(F(X))} is algebraically independent.
pub fn verify_rbazp(x: &OrderedSemigroup, lambda: &RingElem, degree_bound: usize, length_bound: usize) -> Result<VerificationReport> {
    let ring = lambda.ring();
    let RingSpec::TruncatedPAdic { p, .. } = ring else {
        return Err(Error::Precondition(format!("a truncated p-adic ring is required, got {ring}")));
    };
    if !lambda.is_unit() {
        return Err(Error::Precondition(format!("λ = {lambda} is not a p-adic unit")));
    }
    let names = free_generators(x)?;
    let f = OrderedSemigroup::free_abelian(&names)?;
    let m = OrderedSemigroup::free_monoid(&names)?;
    let (_, host) = rb_host(ring, lambda, m.clone())?;
    let h = host.as_ref();
    let one = m.identity().expect("monoid");
    let mut gens = Vec::new();
    for xe in m.elements_of_degree(1) {
        gens.push(word_generator(h, &Word::letter(xe), Relation::None)?);
    }
    let tel: WordSet = LyndonFamily::build(&f, p, degree_bound, Some(length_bound))?.tel;
    for w in tel.iter() {
        // F(X) sits inside M(X) letter by letter
        let lifted = Word::parse(&m, &w.format(&f, true))?;
        gens.push(word_generator(h, &full(one.clone(), &lifted), Relation::None)?);
    }
    let pres = PresentedAlgebra::new(host, gens)?;
    let mut report = VerificationReport::new("rbazp", ring.to_string(), lambda.to_string(), m.describe(), degree_bound, length_bound);
    run_branch(&mut report, &pres, "", &cells_for(false, degree_bound, length_bound), CellClaim::Independent);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(names: &[&str]) -> OrderedSemigroup {
        OrderedSemigroup::free_abelian(names).unwrap()
    }

    #[test]
    fn radford_one_generator() {
        let q = RingSpec::Rationals;
        for lambda in ["0", "1", "5/3"] {
            let r = verify_radford_hoffman(&free(&["x"]), &RingElem::parse(q, lambda).unwrap(), 5, 5).unwrap();
            assert!(r.passed, "{}", r.render_table());
            let dims: Vec<usize> = r.cells.iter().map(|c| c.dimension).collect();
            assert_eq!(dims, vec![1, 1, 2, 4, 8, 16]);
        }
    }

    #[test]
    fn weight_zero_fp() {
        let set = OrderedSemigroup::ordered_set(&["x"]).unwrap();
        for p in [2, 3] {
            let r = verify_fp_weight0(&set, p, 5, 5).unwrap();
            assert!(r.passed, "{}", r.render_table());
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn nonzero_weight_branches() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let one = RingElem::one(f2);
        let r = verify_fp_nonzero(&free(&["x"]), &one, 5, 5).unwrap();
        assert!(r.passed, "{}", r.render_table());
        assert!(r.cells.iter().any(|c| c.branch == "FG"));

        let mu2 = OrderedSemigroup::mu_p(2, 1, None).unwrap();
        assert_eq!(fp_nonzero_branches(&mu2, 2, 3), vec![FpBranch::PowerStable]);
        let r = verify_fp_nonzero(&mu2, &one, 4, 4).unwrap();
        assert!(r.passed, "{}", r.render_table());

        let m = OrderedSemigroup::free_monoid(&["x"]).unwrap();
        let r = verify_fp_nonzero(&m, &one, 3, 3).unwrap();
        assert!(r.passed, "{}", r.render_table());
        assert!(r.checks.iter().any(|c| c.name.starts_with("TEL_1") && c.passed));
    }

    #[test]
    fn zp_rejects_non_unit_weight() {
        let r = RingSpec::truncated_padic(3, 6).unwrap();
        let err = verify_zp(&free(&["x"]), &RingElem::from_int(r, 3), 3).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let ok = verify_zp(&free(&["x"]), &RingElem::from_int(r, 1), 4).unwrap();
        assert!(ok.passed, "{}", ok.render_table());
    }

    #[test]
    fn unitarized_cyclic_is_power_idempotent() {
        let g = unitarized_cyclic(5).unwrap();
        let xi = g.parse_elem("xi").unwrap();
        assert_eq!(g.pow(&xi, 5), xi);
        assert_eq!(g.pow(&xi, 4), g.parse_elem("xi4").unwrap());
        assert_ne!(g.identity(), Some(g.parse_elem("xi4").unwrap()));
        assert!(g.classify(5, 1).contains(SemigroupClass::PowerMonotone));
    }

    #[test]
    fn rota_baxter_cases() {
        let q = RingSpec::Rationals;
        let r = verify_rbl(&free(&["x"]), &RingElem::one(q), 3, 3).unwrap();
        assert!(r.passed, "{}", r.render_table());
        let f2 = RingSpec::prime_field(2).unwrap();
        for case in 1..=4u8 {
            let lambda = if case == 1 { RingElem::zero(f2) } else { RingElem::one(f2) };
            let r = verify_rbafp(case, &free(&["x"]), &lambda, 3, 3).unwrap();
            assert!(r.passed, "case {case}\n{}", r.render_table());
        }
        let z = RingSpec::truncated_padic(2, 6).unwrap();
        let r = verify_rbazp(&free(&["x"]), &RingElem::one(z), 3, 3).unwrap();
        assert!(r.passed, "{}", r.render_table());
    }
}
