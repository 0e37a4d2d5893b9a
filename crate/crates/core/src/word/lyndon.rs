use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{Word, WordSet};
use crate::error::{Error, Result};
use crate::semigroup::OrderedSemigroup;

/// True iff `w` is lexicographically smaller than each of its proper suffixes.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let l = &w.0;
    Ok((1..l.len()).all(|i| l.as_slice().cmp(&l[i..]) == Ordering::Less))
}

/// All Lyndon words of degree at most `degree_bound` (and length at most
/// `length_bound`, required when the semigroup has degree-0 elements).
///
/// Built by concatenation: every Lyndon word of length at least 2 is `u⊗v`
/// for Lyndon `u < v`, and every such concatenation is Lyndon.
pub fn enumerate_lyndon(sg: &OrderedSemigroup, degree_bound: usize, length_bound: Option<usize>) -> Result<WordSet> {
    let max_len = match length_bound {
        Some(l) => l,
        None if sg.is_positively_graded() => degree_bound,
        None => {
            return Err(Error::Precondition(
                "a length bound is required when the semigroup has degree-0 elements".into(),
            ))
        }
    };
    // by_len[r] = Lyndon words of length r, each with its degree
    let mut by_len: Vec<Vec<(Word, usize)>> = vec![Vec::new(); max_len + 1];
    if max_len >= 1 {
        by_len[1] = sg
            .elements_up_to(degree_bound)
            .into_iter()
            .map(|a| {
                let d = a.degree();
                (Word::letter(a), d)
            })
            .collect();
    }
    for r in 2..=max_len {
        let mut found = BTreeSet::new();
        for i in 1..r {
            for (u, du) in &by_len[i] {
                for (v, dv) in &by_len[r - i] {
                    if du + dv <= degree_bound && u.lex_cmp(v) == Ordering::Less {
                        found.insert(u.concat(v));
                    }
                }
            }
        }
        by_len[r] = found
            .into_iter()
            .map(|w| {
                let d = w.degree();
                (w, d)
            })
            .collect();
    }
    let members = by_len.into_iter().flatten().map(|(w, _)| w).collect();
    Ok(WordSet { degree_bound, length_bound, members })
}

/// Chen–Fox–Lyndon factorization `w = w₁^{i₁}⊗⋯⊗w_k^{i_k}` with
/// `w₁ > ⋯ > w_k` Lyndon, computed by Duval's algorithm.
pub fn cfl_factorize(w: &Word) -> Result<Vec<(Word, usize)>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = &w.0;
    let n = s.len();
    let mut out: Vec<(Word, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            let factor = Word(s[i..i + period].to_vec());
            match out.last_mut() {
                Some((f, m)) if *f == factor => *m += 1,
                _ => out.push((factor, 1)),
            }
            i += period;
        }
    }
    Ok(out)
}
