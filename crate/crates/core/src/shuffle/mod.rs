//! The mixable shuffle algebra: finite linear combinations of tensor words
//! with the weight-λ mixable shuffle product.

mod graded;
mod product;

pub use graded::{eettl_representative, graded_basis, GradedComponent};
pub use product::{shuffle_oracle, shuffle_power_direct, shuffle_words};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};
use crate::semigroup::OrderedSemigroup;
use crate::word::Word;

/// Coefficient ring, weight and semigroup shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleAlgebra {
    ring: RingSpec,
    lambda: RingElem,
    sg: OrderedSemigroup,
}

impl ShuffleAlgebra {
    /// Nonzero weight needs a product on the letters.
    pub fn new(ring: RingSpec, lambda: RingElem, sg: OrderedSemigroup) -> Result<Arc<Self>> {
        if lambda.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), lambda.ring().to_string()));
        }
        if !lambda.is_zero() && !sg.has_product() {
            return Err(Error::NoProduct);
        }
        Ok(Arc::new(ShuffleAlgebra { ring, lambda, sg }))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn lambda(&self) -> &RingElem {
        &self.lambda
    }

    pub fn semigroup(&self) -> &OrderedSemigroup {
        &self.sg
    }

    pub fn scalar(&self, n: i64) -> RingElem {
        RingElem::from_int(self.ring, n)
    }
}

/// `Σ c_w w` in canonical form: no zero coefficients, words keyed in
/// pro-length order.
#[derive(Clone, Debug)]
pub struct TensorPoly {
    alg: Arc<ShuffleAlgebra>,
    terms: BTreeMap<Word, RingElem>,
}

impl PartialEq for TensorPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}

impl Eq for TensorPoly {}

impl TensorPoly {
    pub fn zero(alg: &Arc<ShuffleAlgebra>) -> Self {
        TensorPoly { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// The empty word.
    pub fn one(alg: &Arc<ShuffleAlgebra>) -> Self {
        Self::word(alg, Word::empty())
    }

    pub fn word(alg: &Arc<ShuffleAlgebra>, w: Word) -> Self {
        Self::term(alg, w, RingElem::one(alg.ring))
    }

    pub fn term(alg: &Arc<ShuffleAlgebra>, w: Word, c: RingElem) -> Self {
        let mut p = Self::zero(alg);
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, RingElem)>>(alg: &Arc<ShuffleAlgebra>, terms: I) -> Self {
        let mut p = Self::zero(alg);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn algebra(&self) -> &Arc<ShuffleAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Word, RingElem> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, RingElem> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> RingElem {
        self.terms.get(w).cloned().unwrap_or_else(|| RingElem::zero(self.alg.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·w` in place, keeping the form canonical.
    pub fn add_term(&mut self, w: Word, c: RingElem) {
        assert_eq!(c.ring(), self.alg.ring, "coefficient from a different ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
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
        self.try_add(&other.scale(&-RingElem::one(self.alg.ring)))
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        Self::from_terms(&self.alg, self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    /// The mixable shuffle product, extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alg);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, c) in shuffle_words(&self.alg, u, v) {
                    out.add_term(w, &ab * &c);
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold shuffle power; the zeroth power is the empty word.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    /// The pro-length-largest word and its coefficient.
    pub fn leading_term(&self) -> Result<(&Word, &RingElem)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// Replaces every word `w` by `f(w)·w`, dropping terms that vanish.
    pub fn map_words_scaled<F: Fn(&Word) -> RingElem>(&self, f: F) -> Self {
        Self::from_terms(&self.alg, self.terms.iter().map(|(w, c)| (w.clone(), c * &f(w))))
    }

    /// Moves the polynomial into another algebra over the same semigroup,
    /// mapping each coefficient into the new ring.
    pub fn map_to(&self, alg: &Arc<ShuffleAlgebra>) -> Result<Self> {
        if alg.sg != self.alg.sg {
            return Err(Error::ContextMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.map_to(alg.ring)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(alg, terms))
    }

    /// True when every term has degree `n`.
    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.degree() == n)
    }

    pub fn format(&self, ascii: bool) -> String {
        format_terms(&self.alg.sg, self.terms.iter().rev(), ascii)
    }

    /// `{"ring", "lambda", "terms": [{"word": [...], "coeff"}]}`, terms in
    /// descending pro-length order.
    pub fn to_json(&self) -> Json {
        let sg = &self.alg.sg;
        let terms: Vec<Json> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let letters: Vec<String> = w.letters().iter().map(|e| sg.format_elem(e, true)).collect();
                json!({ "word": letters, "coeff": c.to_string() })
            })
            .collect();
        json!({ "ring": self.alg.ring.to_string(), "lambda": self.alg.lambda.to_string(), "terms": terms })
    }

    /// Parses the JSON form against a semigroup; ring and weight come from
    /// the document.
    pub fn from_json(sg: &OrderedSemigroup, value: &Json) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("tensor polynomial JSON: {m}"));
        let ring = RingSpec::parse(value["ring"].as_str().ok_or_else(|| bad("missing ring"))?)?;
        let lambda = RingElem::parse(ring, value["lambda"].as_str().ok_or_else(|| bad("missing lambda"))?)?;
        let alg = ShuffleAlgebra::new(ring, lambda, sg.clone())?;
        let mut p = Self::zero(&alg);
        for t in value["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let letters = t["word"]
                .as_array()
                .ok_or_else(|| bad("word must be an array"))?
                .iter()
                .map(|l| sg.parse_elem(l.as_str().ok_or_else(|| bad("letters must be strings"))?))
                .collect::<Result<Vec<_>>>()?;
            let c = RingElem::parse(ring, t["coeff"].as_str().ok_or_else(|| bad("coeff must be a string"))?)?;
            p.add_term(Word(letters), c);
        }
        Ok(p)
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(false))
    }
}

/// Renders `c·w` terms joined by signs. The empty word prints as its
/// coefficient alone when the semigroup has no identity letter.
pub(crate) fn format_terms<'a, I>(sg: &OrderedSemigroup, terms: I, ascii: bool) -> String
where
    I: Iterator<Item = (&'a Word, &'a RingElem)>,
{
    let dot = if ascii { "*" } else { "·" };
    let mut out = String::new();
    for (i, (w, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() && sg.identity().is_none() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&w.format(sg, ascii));
        } else {
            out.push_str(&format!("{mag}{dot}{}", w.format(sg, ascii)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `w^{⧢k}` for a single word.
pub fn shuffle_power(alg: &Arc<ShuffleAlgebra>, w: &Word, k: u32) -> TensorPoly {
    TensorPoly::word(alg, w.clone()).pow(k)
}
