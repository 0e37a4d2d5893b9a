//! Tensor words over an ordered semigroup.

mod lyndon;
mod operators;

pub use lyndon::{cfl_factorize, enumerate_lyndon, is_lyndon};
pub use operators::{
    has_p_root, operator_e, operator_t, subscript_split, tel2_orbit_check, LyndonFamily, OrbitReport, WordSet,
};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, OrderedSemigroup};

/// `u₁⊗⋯⊗u_r`; the empty word is the unit. `Ord` is the pro-length order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Elem>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOrder {
    Lex,
    ProLength,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn word_compare(u: &Word, v: &Word, order: WordOrder) -> Ordering {
    match order {
        WordOrder::Lex => u.lex_cmp(v),
        WordOrder::ProLength => u.cmp(v),
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(e: Elem) -> Self {
        Word(vec![e])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Elem::degree).sum()
    }

    pub fn letters(&self) -> &[Elem] {
        &self.0
    }

    /// Lexicographic comparison in which a proper prefix is smaller.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `w^{⊗k}`.
    pub fn tensor_power(&self, k: usize) -> Word {
        Word(self.0.iter().cloned().cycle().take(self.0.len() * k).collect())
    }

    /// `w^{∘p}`: every letter raised to the p-th power.
    pub fn componentwise_power(&self, sg: &OrderedSemigroup, p: u64) -> Word {
        Word(self.0.iter().map(|a| sg.pow(a, p)).collect())
    }

    pub fn belongs_to(&self, sg: &OrderedSemigroup) -> bool {
        self.0.iter().all(|e| sg.contains(e))
    }

    pub fn format(&self, sg: &OrderedSemigroup, ascii: bool) -> String {
        if self.0.is_empty() {
            return if ascii { "eps".into() } else { "ε".into() };
        }
        let sep = if ascii { "(x)" } else { "⊗" };
        self.0.iter().map(|e| sg.format_elem(e, ascii)).collect::<Vec<_>>().join(sep)
    }

    /// Parses letters separated by `,`, `⊗` or `(x)`. The empty string, `ε`
    /// and `eps` denote the empty word.
    pub fn parse(sg: &OrderedSemigroup, s: &str) -> Result<Word> {
        let s = s.trim().replace("(x)", "⊗").replace('⊗', ",");
        if s.is_empty() || s == "ε" || s == "eps" {
            return Ok(Word::empty());
        }
        let letters = crate::semigroup::split_top_level(&s, ',')
            .into_iter()
            .map(|part| {
                if part.trim().is_empty() {
                    Err(Error::Parse(format!("empty letter in word '{s}'")))
                } else {
                    sg.parse_elem(part)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }
}

/// `w^{∘p}`.
pub fn componentwise_p_power(sg: &OrderedSemigroup, w: &Word, p: u64) -> Word {
    w.componentwise_power(sg, p)
}

/// All words of degree exactly `degree` and length at most `max_len`, in
/// pro-length order.
pub fn words_in_cell(sg: &OrderedSemigroup, degree: usize, max_len: usize) -> Vec<Word> {
    let by_degree: Vec<Vec<Elem>> = (0..=degree).map(|k| sg.elements_of_degree(k)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(by_degree: &[Vec<Elem>], remaining: usize, max_len: usize, cur: &mut Vec<Elem>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word(cur.clone()));
        }
        if cur.len() == max_len {
            return;
        }
        for (k, letters) in by_degree.iter().enumerate().take(remaining + 1) {
            for a in letters {
                cur.push(a.clone());
                rec(by_degree, remaining - k, max_len, cur, out);
                cur.pop();
            }
        }
    }
    rec(&by_degree, degree, max_len, &mut cur, &mut out);
    out.sort();
    out
}
