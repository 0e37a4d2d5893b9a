//! The free commutative Rota–Baxter algebra `kS ⊗ Ш⁺(S)` and its operator
//! `P(a₀⊗ā) = 1⊗a₀⊗ā`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};
use crate::semigroup::{Elem, OrderedSemigroup};
use crate::shuffle::{format_terms, shuffle_words, ShuffleAlgebra};
use crate::word::{enumerate_lyndon, words_in_cell, Word};

/// Tails multiply by the mixable shuffle; heads live in `S` if it has an
/// identity and in `S ∪ {1}` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbAlgebra {
    shuffle: Arc<ShuffleAlgebra>,
    heads: OrderedSemigroup,
}

impl RbAlgebra {
    pub fn new(ring: RingSpec, lambda: RingElem, sg: OrderedSemigroup) -> Result<Arc<Self>> {
        if !sg.has_product() {
            return Err(Error::NoProduct);
        }
        let heads = if sg.identity().is_some() { sg.clone() } else { OrderedSemigroup::unitarize(sg.clone()) };
        Ok(Arc::new(RbAlgebra { shuffle: ShuffleAlgebra::new(ring, lambda, sg)?, heads }))
    }

    pub fn shuffle(&self) -> &Arc<ShuffleAlgebra> {
        &self.shuffle
    }

    pub fn ring(&self) -> RingSpec {
        self.shuffle.ring()
    }

    pub fn lambda(&self) -> &RingElem {
        self.shuffle.lambda()
    }

    pub fn semigroup(&self) -> &OrderedSemigroup {
        self.shuffle.semigroup()
    }

    pub fn head_semigroup(&self) -> &OrderedSemigroup {
        &self.heads
    }

    /// `P` exists only when the tail semigroup itself has an identity.
    pub fn has_operator(&self) -> bool {
        self.semigroup().identity().is_some()
    }

    fn head_identity(&self) -> Elem {
        self.heads.identity().expect("head semigroup is a monoid")
    }
}

/// Linear combination of pure tensors `a₀⊗a₁⊗⋯⊗a_n`, keyed by the full
/// word with the head first.
#[derive(Clone, Debug)]
pub struct RbElement {
    alg: Arc<RbAlgebra>,
    terms: BTreeMap<Word, RingElem>,
}

impl PartialEq for RbElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}

impl Eq for RbElement {}

fn split(w: &Word) -> (&Elem, &[Elem]) {
    let (h, t) = w.letters().split_first().expect("pure tensors have a head");
    (h, t)
}

impl RbElement {
    pub fn zero(alg: &Arc<RbAlgebra>) -> Self {
        RbElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// `1⊗(empty tail)`, the unit.
    pub fn one(alg: &Arc<RbAlgebra>) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(Word::letter(alg.head_identity()), RingElem::one(alg.ring()));
        e
    }

    /// `head⊗tail` after checking membership.
    pub fn pure(alg: &Arc<RbAlgebra>, head: Elem, tail: &Word) -> Result<Self> {
        if !alg.heads.contains(&head) {
            return Err(Error::ForeignElement(format!("{head:?}")));
        }
        if !tail.belongs_to(alg.semigroup()) {
            return Err(Error::ForeignElement(format!("{tail:?}")));
        }
        let mut full = vec![head];
        full.extend(tail.letters().iter().cloned());
        let mut e = Self::zero(alg);
        e.add_term(Word(full), RingElem::one(alg.ring()));
        Ok(e)
    }

    /// Parses a full pure tensor such as `x⊗1⊗x²`; the first letter is the head.
    pub fn parse_pure(alg: &Arc<RbAlgebra>, s: &str) -> Result<Self> {
        let w = Word::parse(&alg.heads, s)?;
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let (h, t) = split(&w);
        Self::pure(alg, h.clone(), &Word(t.to_vec()))
    }

    pub fn algebra(&self) -> &Arc<RbAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Word, RingElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, full: Word, c: RingElem) {
        assert!(!full.is_empty(), "pure tensors have a head");
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&full) {
            Some(a) => a + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&full);
        } else {
            self.terms.insert(full, s);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-RingElem::one(self.alg.ring())))
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let mut out = Self::zero(&self.alg);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// `(a₀⊗ā)(b₀⊗b̄) = a₀b₀ ⊗ (ā ⧢ b̄)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alg);
        for (u, a) in &self.terms {
            let (uh, ut) = split(u);
            let ut = Word(ut.to_vec());
            for (v, b) in &other.terms {
                let (vh, vt) = split(v);
                let head = self.alg.heads.multiply(uh, vh);
                let ab = a * b;
                for (t, c) in shuffle_words(&self.alg.shuffle, &ut, &Word(vt.to_vec())) {
                    let mut full = Vec::with_capacity(t.len() + 1);
                    full.push(head.clone());
                    full.extend(t.0);
                    out.add_term(Word(full), &ab * &c);
                }
            }
        }
        Ok(out)
    }

    /// `P(a₀⊗ā) = 1⊗a₀⊗ā`, extended linearly.
    pub fn operator_p(&self) -> Result<Self> {
        if !self.alg.has_operator() {
            return Err(Error::NoIdentity);
        }
        let one = self.alg.head_identity();
        let mut out = Self::zero(&self.alg);
        for (w, c) in &self.terms {
            let mut full = Vec::with_capacity(w.len() + 1);
            full.push(one.clone());
            full.extend(w.letters().iter().cloned());
            out.add_term(Word(full), c.clone());
        }
        Ok(out)
    }

    pub fn format(&self, ascii: bool) -> String {
        format_terms(&self.alg.heads, self.terms.iter().rev(), ascii)
    }

    /// Like the tensor-polynomial JSON with a separate `"head"` per term.
    pub fn to_json(&self) -> Json {
        let sg = &self.alg.heads;
        let terms: Vec<Json> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let (h, t) = split(w);
                let tail: Vec<String> = t.iter().map(|e| sg.format_elem(e, true)).collect();
                json!({ "head": sg.format_elem(h, true), "word": tail, "coeff": c.to_string() })
            })
            .collect();
        json!({ "ring": self.alg.ring().to_string(), "lambda": self.alg.lambda().to_string(), "terms": terms })
    }
}

impl std::fmt::Display for RbElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format(false))
    }
}

/// Both sides of `P(a)P(b) = P(aP(b)) + P(P(a)b) + λP(ab)`.
#[derive(Clone, Debug, Serialize)]
pub struct RbIdentityCheck {
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    /// `lhs − rhs` when the two sides differ.
    pub difference: Option<String>,
}

pub fn check_rb_identity(a: &RbElement, b: &RbElement) -> Result<RbIdentityCheck> {
    a.check_same(b)?;
    let (pa, pb) = (a.operator_p()?, b.operator_p()?);
    let lhs = pa.try_mul(&pb)?;
    let rhs = a
        .try_mul(&pb)?
        .operator_p()?
        .try_add(&pa.try_mul(b)?.operator_p()?)?
        .try_add(&a.try_mul(b)?.operator_p()?.scale(a.alg.lambda()))?;
    let diff = lhs.try_sub(&rhs)?;
    Ok(RbIdentityCheck {
        holds: diff.is_zero(),
        lhs: lhs.format(false),
        rhs: rhs.format(false),
        difference: (!diff.is_zero()).then(|| diff.format(false)),
    })
}

/// `x⊗(empty tail)` for each generator, then `1⊗w` for each Lyndon word `w`
/// over `M(X)` within the bounds.
pub fn rbl_generating_set(alg: &Arc<RbAlgebra>, degree_bound: usize, length_bound: usize) -> Result<Vec<RbElement>> {
    let sg = alg.semigroup();
    if !alg.has_operator() {
        return Err(Error::NoIdentity);
    }
    let mut out: Vec<RbElement> = sg
        .elements_of_degree(1)
        .into_iter()
        .filter(|e| degree_bound >= 1 && e.degree() == 1)
        .map(|x| RbElement::pure(alg, x, &Word::empty()))
        .collect::<Result<_>>()?;
    let lyn = enumerate_lyndon(sg, degree_bound, Some(length_bound))?;
    for w in lyn.iter() {
        out.push(RbElement::pure(alg, alg.head_identity(), w)?);
    }
    Ok(out)
}

/// Full words `head⊗tail` of total degree `degree` with tail length at most
/// `max_tail`, in pro-length order.
pub fn rb_basis(heads: &OrderedSemigroup, tails: &OrderedSemigroup, degree: usize, max_tail: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for dh in 0..=degree {
        for h in heads.elements_of_degree(dh) {
            for t in words_in_cell(tails, degree - dh, max_tail) {
                let mut full = vec![h.clone()];
                full.extend(t.0);
                out.push(Word(full));
            }
        }
    }
    out.sort();
    out
}

/// The pure tensors `w₀⊗⋯⊗w_r` (`r ≥ 1`) within the bounds having some tail
/// letter equal to the identity.
pub fn rbaz_interior_identity_span(sg: &OrderedSemigroup, degree_bound: usize, length_bound: usize) -> Result<Vec<Word>> {
    let one = sg.identity().ok_or(Error::NoIdentity)?;
    Ok((0..=degree_bound)
        .flat_map(|d| rb_basis(sg, sg, d, length_bound))
        .filter(|w| has_interior_identity(w, &one))
        .collect())
}

pub fn has_interior_identity(full: &Word, one: &Elem) -> bool {
    full.letters().iter().skip(1).any(|e| e == one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(ring: RingSpec, lambda: i64) -> Arc<RbAlgebra> {
        let m = OrderedSemigroup::free_monoid(&["x", "y"]).unwrap();
        RbAlgebra::new(ring, RingElem::from_int(ring, lambda), m).unwrap()
    }

    fn pt(a: &Arc<RbAlgebra>, s: &str) -> RbElement {
        RbElement::parse_pure(a, s).unwrap()
    }

    #[test]
    fn products() {
        let a = alg(RingSpec::Rationals, 3);
        assert_eq!(pt(&a, "x").try_mul(&pt(&a, "y")).unwrap(), pt(&a, "xy"));
        assert_eq!(pt(&a, "1").try_mul(&pt(&a, "1")).unwrap(), RbElement::one(&a));
        let p = pt(&a, "1,x").try_mul(&pt(&a, "1,x")).unwrap();
        assert_eq!(p.format(false), "2·1⊗x⊗x + 3·1⊗x²");
    }

    #[test]
    fn operator() {
        let a = alg(RingSpec::Integers, -1);
        assert_eq!(pt(&a, "x").operator_p().unwrap(), pt(&a, "1,x"));
        assert_eq!(pt(&a, "1,x").operator_p().unwrap(), pt(&a, "1,1,x"));
        let p1 = RbElement::one(&a).operator_p().unwrap();
        assert_eq!(p1.format(false), "1⊗1");
        assert_eq!(p1.try_mul(&p1).unwrap().format(false), "2·1⊗1⊗1 - 1⊗1");
        let free = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        let b = RbAlgebra::new(RingSpec::Integers, RingElem::one(RingSpec::Integers), free).unwrap();
        assert!(matches!(RbElement::one(&b).operator_p(), Err(Error::NoIdentity)));
        assert_eq!(RbElement::parse_pure(&b, "x,x^2").unwrap().try_mul(&RbElement::one(&b)).unwrap().format(true), "x(x)x^2");
    }

    #[test]
    fn identity_on_units() {
        for l in [0, 1, -1, 2] {
            let a = alg(RingSpec::Rationals, l);
            let one = RbElement::one(&a);
            let r = check_rb_identity(&one, &one).unwrap();
            assert!(r.holds);
            let x = pt(&a, "x,1,y^2");
            assert!(check_rb_identity(&x, &pt(&a, "y,x")).unwrap().holds);
        }
    }

    #[test]
    fn divided_powers() {
        let triv = OrderedSemigroup::free_monoid::<&str>(&[]).unwrap();
        let z = RingSpec::Integers;
        let a = RbAlgebra::new(z, RingElem::zero(z), triv).unwrap();
        let xn = |n: usize| RbElement::pure(&a, Elem::One, &Word(vec![Elem::One; n])).unwrap();
        for m in 0..=4 {
            for n in 0..=4 {
                let c = crate::ring::padic::binomial((m + n) as u64, m as u64);
                let want = xn(m + n).scale(&RingElem::from_bigint(z, &c));
                assert_eq!(xn(m).try_mul(&xn(n)).unwrap(), want);
            }
        }
    }

    #[test]
    fn generating_set_and_interior_identities() {
        let m = OrderedSemigroup::free_monoid(&["x"]).unwrap();
        let a = RbAlgebra::new(RingSpec::Rationals, RingElem::one(RingSpec::Rationals), m.clone()).unwrap();
        let gens = rbl_generating_set(&a, 2, 2).unwrap();
        let shown: Vec<String> = gens.iter().map(|g| g.format(true)).collect();
        assert_eq!(shown[0], "x");
        assert!(shown.contains(&"1(x)1".to_string()));
        assert!(shown.contains(&"1(x)1(x)x".to_string()));
        assert!(gens[1..].iter().all(|g| g.terms().keys().all(|w| w.letters()[0] == Elem::One)));

        let n = rbaz_interior_identity_span(&m, 3, 3).unwrap();
        let has = |s: &str| n.contains(&Word::parse(&m, s).unwrap());
        assert!(has("1,1") && has("x,1,x"));
        assert!(!has("x,x^2") && !has("x"));

        let empty = OrderedSemigroup::free_monoid::<&str>(&[]).unwrap();
        let b = RbAlgebra::new(RingSpec::Rationals, RingElem::one(RingSpec::Rationals), empty).unwrap();
        let g: Vec<String> = rbl_generating_set(&b, 0, 1).unwrap().iter().map(|g| g.format(true)).collect();
        assert_eq!(g, vec!["1(x)1"]);
    }
}
