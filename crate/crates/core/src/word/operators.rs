//! The generator-set operators on sets of words: tensor powers `T`, the
//! root-free filter `E`, and the split by the fixed points of `∘p`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{enumerate_lyndon, Word};
use crate::error::Result;
use crate::semigroup::OrderedSemigroup;

/// A finite set of words cut off at a degree bound and, for semigroups with
/// degree-0 elements, a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    pub degree_bound: usize,
    pub length_bound: Option<usize>,
    pub members: BTreeSet<Word>,
}

impl WordSet {
    pub fn new(degree_bound: usize, length_bound: Option<usize>) -> Self {
        WordSet { degree_bound, length_bound, members: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }

    fn fits(&self, w: &Word) -> bool {
        w.degree() <= self.degree_bound && self.length_bound.map_or(true, |l| w.len() <= l)
    }

    fn with_members(&self, members: BTreeSet<Word>) -> WordSet {
        WordSet { degree_bound: self.degree_bound, length_bound: self.length_bound, members }
    }

    /// Members of degree exactly `n`, in pro-length order.
    pub fn of_degree(&self, n: usize) -> Vec<Word> {
        self.members.iter().filter(|w| w.degree() == n).cloned().collect()
    }

    /// Member counts keyed by degree.
    pub fn graded_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for w in &self.members {
            *out.entry(w.degree()).or_insert(0) += 1;
        }
        out
    }

    /// `{"degree": n, "words": [...]}` groups with ASCII letter names.
    pub fn to_json(&self, sg: &OrderedSemigroup) -> serde_json::Value {
        let mut groups: BTreeMap<usize, Vec<serde_json::Value>> = BTreeMap::new();
        for w in &self.members {
            let letters = w.letters().iter().map(|e| serde_json::Value::String(sg.format_elem(e, true))).collect();
            groups.entry(w.degree()).or_default().push(serde_json::Value::Array(letters));
        }
        serde_json::Value::Array(
            groups.into_iter().map(|(d, words)| serde_json::json!({ "degree": d, "words": words })).collect(),
        )
    }
}

/// `T(W) = {w^{⊗p^k} | w ∈ W, k ≥ 0}` within the bounds of `W`.
pub fn operator_t(w: &WordSet, p: u64) -> WordSet {
    let mut out = BTreeSet::new();
    for u in &w.members {
        if u.is_empty() {
            out.insert(u.clone());
            continue;
        }
        let mut k = 1usize;
        loop {
            let t = u.tensor_power(k);
            if !w.fits(&t) {
                break;
            }
            out.insert(t);
            k = match k.checked_mul(p as usize) {
                Some(k) => k,
                None => break,
            };
        }
    }
    w.with_members(out)
}

/// Whether `w = u^{∘p}` for some word `u`; roots are found letterwise.
pub fn has_p_root(sg: &OrderedSemigroup, w: &Word, p: u64) -> bool {
    w.letters().iter().all(|a| sg.p_th_root(a, p).is_some())
}

/// `E(W)`: members fixed by `∘p` or without a `∘p` root.
pub fn operator_e(sg: &OrderedSemigroup, w: &WordSet, p: u64) -> WordSet {
    let members = w
        .members
        .iter()
        .filter(|u| u.componentwise_power(sg, p) == **u || !has_p_root(sg, u, p))
        .cloned()
        .collect();
    w.with_members(members)
}

/// `(W₁, W₂)`: members fixed by `∘p`, and the rest.
pub fn subscript_split(sg: &OrderedSemigroup, w: &WordSet, p: u64) -> (WordSet, WordSet) {
    let (one, two): (BTreeSet<Word>, BTreeSet<Word>) =
        w.members.iter().cloned().partition(|u| u.componentwise_power(sg, p) == *u);
    (w.with_members(one), w.with_members(two))
}

/// The Lyndon-derived generator sets at one prime and bound.
#[derive(Clone, Debug)]
pub struct LyndonFamily {
    pub p: u64,
    pub l: WordSet,
    pub el: WordSet,
    pub tl: WordSet,
    pub tel: WordSet,
    pub tl1: WordSet,
    pub tl2: WordSet,
    pub tel1: WordSet,
    pub tel2: WordSet,
}

impl LyndonFamily {
    /// For a bare ordered set only `L` and `TL` are meaningful; the
    /// p-power based sets are then taken as if no letter had a p-th root.
    pub fn build(sg: &OrderedSemigroup, p: u64, degree_bound: usize, length_bound: Option<usize>) -> Result<Self> {
        let l = enumerate_lyndon(sg, degree_bound, length_bound)?;
        if !sg.has_product() {
            let tl = operator_t(&l, p);
            let empty = tl.with_members(Default::default());
            return Ok(LyndonFamily {
                p,
                el: l.clone(),
                tel: tl.clone(),
                tl1: empty.clone(),
                tel1: empty,
                tl2: tl.clone(),
                tel2: tl.clone(),
                l,
                tl,
            });
        }
        let el = operator_e(sg, &l, p);
        let tl = operator_t(&l, p);
        let tel = operator_t(&el, p);
        let (tl1, tl2) = subscript_split(sg, &tl, p);
        let (tel1, tel2) = subscript_split(sg, &tel, p);
        Ok(LyndonFamily { p, l, el, tl, tel, tl1, tl2, tel1, tel2 })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub holds: bool,
    pub tl2_size: usize,
    pub orbit_size: usize,
    /// Members of `TL₂` not reached by any orbit.
    pub missing: Vec<String>,
    /// Orbit elements that are not in `TL₂`.
    pub extra: Vec<String>,
    /// `(u, i, v, j)` with `u^{∘p^i} = v^{∘p^j}` and `(u, i) ≠ (v, j)`.
    pub collision: Option<(String, u32, String, u32)>,
}

/// Checks `TL₂ = {u^{∘p^i} | u ∈ TEL₂, i ≥ 0}` with all displayed elements
/// distinct, within the given bounds.
pub fn tel2_orbit_check(
    sg: &OrderedSemigroup,
    p: u64,
    degree_bound: usize,
    length_bound: Option<usize>,
) -> Result<OrbitReport> {
    let fam = LyndonFamily::build(sg, p, degree_bound, length_bound)?;
    let fmt = |w: &Word| w.format(sg, true);
    let mut seen: BTreeMap<Word, (Word, u32)> = BTreeMap::new();
    let mut collision = None;
    let mut extra = Vec::new();
    for u in &fam.tel2.members {
        let mut cur = u.clone();
        let mut i = 0u32;
        while fam.tl2.fits(&cur) {
            if let Some((v, j)) = seen.get(&cur) {
                if collision.is_none() {
                    collision = Some((fmt(v), *j, fmt(u), i));
                }
                // the rest of this orbit has been walked already
                break;
            } else {
                seen.insert(cur.clone(), (u.clone(), i));
            }
            if !fam.tl2.contains(&cur) {
                extra.push(fmt(&cur));
            }
            cur = cur.componentwise_power(sg, p);
            i += 1;
        }
    }
    let missing: Vec<String> = fam.tl2.members.iter().filter(|w| !seen.contains_key(*w)).map(fmt).collect();
    Ok(OrbitReport {
        holds: missing.is_empty() && extra.is_empty() && collision.is_none(),
        tl2_size: fam.tl2.len(),
        orbit_size: seen.len(),
        missing,
        extra,
        collision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{is_lyndon, words_in_cell};

    fn one_gen() -> OrderedSemigroup {
        OrderedSemigroup::free_abelian(&["x"]).unwrap()
    }

    fn idem3() -> OrderedSemigroup {
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        let names: Vec<String> = ["i", "a", "b"].iter().map(|s| s.to_string()).collect();
        OrderedSemigroup::finite(&t, &[0, 1, 2], Some(&names)).unwrap()
    }

    fn set(sg: &OrderedSemigroup, bound: usize, len: Option<usize>, words: &[&str]) -> WordSet {
        let mut w = WordSet::new(bound, len);
        w.members = words.iter().map(|s| Word::parse(sg, s).unwrap()).collect();
        w
    }

    #[test]
    fn tensor_powers() {
        let s = one_gen();
        let t = operator_t(&set(&s, 4, None, &["x"]), 2);
        assert_eq!(t, set(&s, 4, None, &["x", "x,x", "x,x,x,x"]));
        assert!(operator_t(&WordSet::new(4, None), 2).is_empty());
    }

    #[test]
    fn e_drops_roots() {
        let s = one_gen();
        let l = enumerate_lyndon(&s, 6, None).unwrap();
        let el = operator_e(&s, &l, 2);
        assert!(el.of_degree(2).is_empty());
        assert!(el.contains(&Word::parse(&s, "x,x^2").unwrap()));
        assert!(!el.contains(&Word::parse(&s, "x^2,x^4").unwrap()));
    }

    #[test]
    fn operator_identities() {
        let m = OrderedSemigroup::free_monoid(&["x"]).unwrap();
        let mu = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        let cases: Vec<(OrderedSemigroup, u64, usize, Option<usize>)> = vec![
            (one_gen(), 2, 8, None),
            (one_gen(), 3, 9, None),
            (OrderedSemigroup::free_abelian(&["a", "b"]).unwrap(), 2, 6, None),
            (m, 2, 4, Some(4)),
            (mu, 3, 0, Some(4)),
            (idem3(), 3, 0, Some(4)),
        ];
        for (sg, p, d, len) in cases {
            let l = enumerate_lyndon(&sg, d, len).unwrap();
            let (l1, l2) = subscript_split(&sg, &l, p);
            assert_eq!(operator_e(&sg, &operator_t(&l, p), p), operator_t(&operator_e(&sg, &l, p), p));
            for (i, wi) in [&l1, &l2].into_iter().enumerate() {
                let t = operator_t(&l, p);
                let (t1, t2) = subscript_split(&sg, &t, p);
                assert_eq!(&operator_t(wi, p), [&t1, &t2][i]);
            }
            let (e1, e2) = subscript_split(&sg, &operator_e(&sg, &l, p), p);
            assert_eq!(operator_e(&sg, &l1, p), l1);
            assert_eq!(e1, l1);
            assert_eq!(operator_e(&sg, &l2, p), e2);
            let fam = LyndonFamily::build(&sg, p, d, len).unwrap();
            assert_eq!(fam.tl1, fam.tel1);
        }
    }

    #[test]
    fn fixed_lyndon_words_live_over_s1() {
        let mu = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        let l = enumerate_lyndon(&mu, 0, Some(3)).unwrap();
        let (l1, _) = subscript_split(&mu, &l, 3);
        assert_eq!(l1, set(&mu, 0, Some(3), &["e"]));

        // over M(X) the fixed letters are just 1
        let m = OrderedSemigroup::free_monoid(&["x", "y"]).unwrap();
        let fam = LyndonFamily::build(&m, 2, 3, Some(4)).unwrap();
        assert_eq!(fam.tel1, set(&m, 3, Some(4), &["1", "1,1", "1,1,1,1"]));
        let brute: BTreeSet<Word> = words_in_cell(&m, 0, 4)
            .into_iter()
            .filter(|w| !w.is_empty() && is_lyndon(w).unwrap())
            .collect();
        let (l1, _) = subscript_split(&m, &fam.l, 2);
        assert_eq!(l1.members, brute);
    }

    #[test]
    fn lyndon_closed_under_componentwise_power() {
        for p in [2u64, 3] {
            let s = OrderedSemigroup::free_abelian(&["a", "b"]).unwrap();
            let l = enumerate_lyndon(&s, 3, None).unwrap();
            for w in l.iter() {
                assert!(is_lyndon(&w.componentwise_power(&s, p)).unwrap());
            }
        }
    }

    #[test]
    fn orbits_cover_tl2() {
        let r = tel2_orbit_check(&one_gen(), 2, 4, None).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.tl2_size > 0);
        for (sg, p, d, len) in [
            (one_gen(), 3, 9, None),
            (OrderedSemigroup::free_abelian(&["a", "b"]).unwrap(), 2, 6, None),
            (OrderedSemigroup::free_monoid(&["x"]).unwrap(), 2, 4, Some(4)),
        ] {
            let r = tel2_orbit_check(&sg, p, d, len).unwrap();
            assert!(r.holds, "{r:?}");
        }
        let r = tel2_orbit_check(&idem3(), 3, 0, Some(3)).unwrap();
        assert!(r.holds && r.tl2_size == 0);
    }

    #[test]
    fn json_groups_by_degree() {
        let s = one_gen();
        let j = set(&s, 3, None, &["x", "x,x^2"]).to_json(&s);
        assert_eq!(j, serde_json::json!([{"degree": 1, "words": [["x"]]}, {"degree": 3, "words": [["x", "x^2"]]}]));
    }
}
