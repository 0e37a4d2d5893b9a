use std::collections::HashMap;
use std::sync::Arc;

use super::{ShuffleAlgebra, TensorPoly};
use crate::ring::padic::binomial;
use crate::ring::RingElem;
use crate::semigroup::Elem;
use crate::word::Word;

type RevTerms = HashMap<Vec<Elem>, RingElem>;

fn push_all(into: &mut RevTerms, from: &RevTerms, letter: &Elem, scale: Option<&RingElem>) {
    for (rw, c) in from {
        let mut k = Vec::with_capacity(rw.len() + 1);
        k.extend_from_slice(rw);
        k.push(letter.clone());
        let c = match scale {
            Some(s) => c * s,
            None => c.clone(),
        };
        if c.is_zero() {
            continue;
        }
        match into.get_mut(&k) {
            Some(e) => *e = &*e + &c,
            None => {
                into.insert(k, c);
            }
        }
    }
}

/// `u ⧢_λ v` for two words, by recursion on first letters:
/// `u ⧢ v = u₁⊗(u'⧢v) + v₁⊗(u⧢v') + λ(u₁v₁)⊗(u'⧢v')`.
///
/// Suffix pairs are tabulated bottom-up, with words kept reversed so that
/// prepending a letter is a push.
pub fn shuffle_words(alg: &Arc<ShuffleAlgebra>, u: &Word, v: &Word) -> Vec<(Word, RingElem)> {
    let (a, b) = (u.letters(), v.letters());
    let (m, n) = (a.len(), b.len());
    let one = RingElem::one(alg.ring());
    let merge = !alg.lambda().is_zero();
    let sg = alg.semigroup();
    let mut table: Vec<Vec<RevTerms>> = vec![vec![RevTerms::new(); n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let mut cell = RevTerms::new();
            if i == m || j == n {
                let tail: Vec<Elem> = if i == m { b[j..].iter().rev().cloned().collect() } else { a[i..].iter().rev().cloned().collect() };
                cell.insert(tail, one.clone());
            } else {
                let (right, down) = (&table[i + 1][j], &table[i][j + 1]);
                push_all(&mut cell, right, &a[i], None);
                push_all(&mut cell, down, &b[j], None);
                if merge {
                    let ab = sg.multiply(&a[i], &b[j]);
                    push_all(&mut cell, &table[i + 1][j + 1], &ab, Some(alg.lambda()));
                }
                cell.retain(|_, c| !c.is_zero());
            }
            table[i][j] = cell;
        }
        if i + 1 <= m {
            // row i + 1 is no longer needed
            table[i + 1] = Vec::new();
        }
    }
    let top = std::mem::take(&mut table[0][0]);
    top.into_iter()
        .map(|(mut rw, c)| {
            rw.reverse();
            (Word(rw), c)
        })
        .collect()
}

/// `w^{⧢k}` computed in one pass instead of by repeated products.
///
/// The state records how many of the `k` copies of `w` have consumed `j`
/// letters, for each `j`. Each output letter advances a nonempty choice of
/// `t_j` copies from each level `j`, merging their letters at a cost of
/// `λ^{t−1}` and with multiplicity `∏ C(c_j, t_j)`. Multiplicities are taken
/// in the coefficient ring, so branches that vanish there are cut at once.
pub fn shuffle_power_direct(alg: &Arc<ShuffleAlgebra>, w: &Word, k: u32) -> TensorPoly {
    let mut out = TensorPoly::zero(alg);
    if w.is_empty() || k == 0 {
        out.add_term(Word::empty(), RingElem::one(alg.ring()));
        return out;
    }
    let n = w.len();
    let mut counts = vec![0u32; n + 1];
    counts[0] = k;
    let mut prefix = Vec::new();
    power_step(alg, w.letters(), &mut counts, &mut prefix, RingElem::one(alg.ring()), &mut out);
    out
}

fn power_step(
    alg: &Arc<ShuffleAlgebra>,
    letters: &[Elem],
    counts: &mut Vec<u32>,
    prefix: &mut Vec<Elem>,
    coeff: RingElem,
    out: &mut TensorPoly,
) {
    let n = letters.len();
    if counts[..n].iter().all(|&c| c == 0) {
        out.add_term(Word(prefix.clone()), coeff);
        return;
    }
    let mut take = vec![0u32; n];
    choose_moves(alg, letters, counts, &mut take, 0, prefix, &coeff, out);
}

#[allow(clippy::too_many_arguments)]
fn choose_moves(
    alg: &Arc<ShuffleAlgebra>,
    letters: &[Elem],
    counts: &mut Vec<u32>,
    take: &mut Vec<u32>,
    level: usize,
    prefix: &mut Vec<Elem>,
    coeff: &RingElem,
    out: &mut TensorPoly,
) {
    let n = letters.len();
    if level == n {
        let moved: u32 = take.iter().sum();
        if moved == 0 || (moved > 1 && alg.lambda().is_zero()) {
            return;
        }
        let sg = alg.semigroup();
        let mut letter: Option<Elem> = None;
        let mut c = coeff * &alg.lambda().pow(u64::from(moved - 1));
        for (j, &t) in take.iter().enumerate() {
            if t == 0 {
                continue;
            }
            c = &c * &RingElem::from_bigint(alg.ring(), &binomial(u64::from(counts[j]), u64::from(t)));
            for _ in 0..t {
                letter = Some(match letter {
                    None => letters[j].clone(),
                    Some(l) => match sg.try_multiply(&l, &letters[j]) {
                        Ok(m) => m,
                        Err(_) => return,
                    },
                });
            }
        }
        if c.is_zero() {
            return;
        }
        let before = counts.clone();
        for (j, &t) in take.iter().enumerate() {
            counts[j] -= t;
            counts[j + 1] += t;
        }
        prefix.push(letter.expect("at least one copy moved"));
        power_step(alg, letters, counts, prefix, c, out);
        prefix.pop();
        *counts = before;
        return;
    }
    for t in 0..=counts[level] {
        take[level] = t;
        choose_moves(alg, letters, counts, take, level + 1, prefix, coeff, out);
    }
    take[level] = 0;
}

/// `u ⧢_λ v` by enumerating every mixable shuffle directly: each output
/// position is labelled as taking the next letter of `u`, the next letter of
/// `v`, or merging both into `λ·(uᵢvⱼ)`. All label strings in `{A, B, M}^r`
/// for `max(m, n) ≤ r ≤ m + n` are tried and the admissible ones kept.
pub fn shuffle_oracle(alg: &Arc<ShuffleAlgebra>, u: &Word, v: &Word) -> TensorPoly {
    let (a, b) = (u.letters(), v.letters());
    let (m, n) = (a.len(), b.len());
    let sg = alg.semigroup();
    let mut out = TensorPoly::zero(alg);
    for r in m.max(n)..=m + n {
        let total = 3usize.pow(r as u32);
        'labels: for code in 0..total {
            let mut labels = Vec::with_capacity(r);
            let mut c = code;
            for _ in 0..r {
                labels.push(c % 3);
                c /= 3;
            }
            let takes_a = labels.iter().filter(|&&l| l != 1).count();
            let takes_b = labels.iter().filter(|&&l| l != 0).count();
            if takes_a != m || takes_b != n {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            let mut word = Vec::with_capacity(r);
            let mut coeff = RingElem::one(alg.ring());
            for &l in &labels {
                match l {
                    0 => {
                        word.push(a[i].clone());
                        i += 1;
                    }
                    1 => {
                        word.push(b[j].clone());
                        j += 1;
                    }
                    _ => {
                        if alg.lambda().is_zero() {
                            continue 'labels;
                        }
                        word.push(sg.multiply(&a[i], &b[j]));
                        coeff = &coeff * alg.lambda();
                        i += 1;
                        j += 1;
                    }
                }
            }
            out.add_term(Word(word), coeff);
        }
    }
    out
}
