use std::sync::Arc;

use serde::Serialize;

use super::{ShuffleAlgebra, TensorPoly};
use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::semigroup::OrderedSemigroup;
use crate::word::{cfl_factorize, words_in_cell, Word};

/// The words of one degree (and bounded length), in pro-length order.
#[derive(Clone, Debug, Serialize)]
pub struct GradedComponent {
    pub degree: usize,
    pub length_bound: usize,
    #[serde(skip)]
    pub basis: Vec<Word>,
}

impl GradedComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.basis.binary_search(w).ok()
    }
}

/// Basis of the degree-`n` piece. A length bound is required when the
/// semigroup has degree-0 elements; otherwise it defaults to `n`.
pub fn graded_basis(sg: &OrderedSemigroup, n: usize, length_bound: Option<usize>) -> Result<GradedComponent> {
    let length_bound = match length_bound {
        Some(l) => l,
        None if sg.is_positively_graded() => n,
        None => {
            return Err(Error::Precondition(
                "a length bound is required when the semigroup has degree-0 elements".into(),
            ))
        }
    };
    Ok(GradedComponent { degree: n, length_bound, basis: words_in_cell(sg, n, length_bound) })
}

/// `w − w^{∘p}` for `w ∈ TL₂`, i.e. `w = v^{⊗p^k}` with `v` Lyndon and
/// `w^{∘p} ≠ w`.
pub fn eettl_representative(alg: &Arc<ShuffleAlgebra>, w: &Word, p: u64) -> Result<TensorPoly> {
    let sg = alg.semigroup();
    let not_member = || Error::Precondition(format!("{} is not in TL_2", w.format(sg, true)));
    let f = cfl_factorize(w).map_err(|_| not_member())?;
    let tensor_power_of_lyndon = f.len() == 1 && {
        let mut k = f[0].1 as u64;
        while k % p == 0 {
            k /= p;
        }
        k == 1
    };
    let wp = w.componentwise_power(sg, p);
    if !tensor_power_of_lyndon || wp == *w {
        return Err(not_member());
    }
    let one = RingElem::one(alg.ring());
    Ok(TensorPoly::from_terms(alg, [(w.clone(), one.clone()), (wp, -one)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn component_sizes() {
        let x = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        assert_eq!(graded_basis(&x, 3, None).unwrap().dimension(), 4);
        let c0 = graded_basis(&x, 0, None).unwrap();
        assert_eq!(c0.basis, vec![Word::empty()]);
        let m = OrderedSemigroup::free_monoid(&["x"]).unwrap();
        assert!(graded_basis(&m, 1, None).is_err());
        assert_eq!(graded_basis(&m, 1, Some(2)).unwrap().dimension(), 3);
    }

    #[test]
    fn eettl_for_mu2() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let mu = OrderedSemigroup::mu_p(2, 1, None).unwrap();
        let alg = ShuffleAlgebra::new(f2, RingElem::one(f2), mu.clone()).unwrap();
        let g = Word::parse(&mu, "g").unwrap();
        let r = eettl_representative(&alg, &g, 2).unwrap();
        assert_eq!(r.format(true), "g + e");
        assert_eq!(r.leading_term().unwrap().0, &g);
        assert!(r.pow(2).is_zero());
        assert!(eettl_representative(&alg, &Word::parse(&mu, "e").unwrap(), 2).is_err());
        let gge = Word::parse(&mu, "g,g,g").unwrap();
        assert!(eettl_representative(&alg, &gge, 2).is_err());
    }
}
