use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Elem, OrderedSemigroup, SemigroupKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SemigroupClass {
    /// Free abelian on a finite ordered set, degree-lexicographic order.
    #[serde(rename = "FG")]
    Free,
    /// `a > b ⇒ a^p > b^p` and `a^p ≥ a`.
    #[serde(rename = "PG")]
    PowerMonotone,
    /// `g^{p²} = g^p` and p-fixed elements below the rest.
    #[serde(rename = "JG")]
    PowerStable,
    /// Finite with `g^p = g`.
    #[serde(rename = "IG")]
    PIdempotent,
    /// Elementary abelian p-group with the identity smallest.
    #[serde(rename = "EG")]
    ElementaryP,
}

impl fmt::Display for SemigroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemigroupClass::Free => "FG",
            SemigroupClass::PowerMonotone => "PG",
            SemigroupClass::PowerStable => "JG",
            SemigroupClass::PIdempotent => "IG",
            SemigroupClass::ElementaryP => "EG",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub p: u64,
    pub classes: BTreeSet<SemigroupClass>,
    /// `None` when the semigroup is finite and was checked exhaustively.
    pub degree_bound: Option<usize>,
    pub elements_checked: usize,
}

impl ClassReport {
    pub fn contains(&self, c: SemigroupClass) -> bool {
        self.classes.contains(&c)
    }
}

impl OrderedSemigroup {
    pub fn classify(&self, p: u64, degree_bound: usize) -> ClassReport {
        let elems = self.elements_up_to(degree_bound);
        let finite = self.is_finite();
        let mut classes = BTreeSet::new();
        let report = |classes| ClassReport {
            p,
            classes,
            degree_bound: (!finite).then_some(degree_bound),
            elements_checked: elems.len(),
        };
        if let SemigroupKind::FreeAbelian { generators } = &self.kind {
            if !generators.is_empty() {
                classes.insert(SemigroupClass::Free);
            }
        }
        if !self.has_product() {
            return report(classes);
        }
        let powers: Vec<Elem> = elems.iter().map(|a| self.pow(a, p)).collect();

        // elems is sorted, so a > b means a later index.
        let monotone = powers.windows(2).all(|w| w[1] > w[0]);
        let expanding = elems.iter().zip(&powers).all(|(a, ap)| ap >= a);
        if monotone && expanding {
            classes.insert(SemigroupClass::PowerMonotone);
        }

        let stable = powers.iter().all(|ap| self.pow(ap, p) == *ap);
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (a, ap) in elems.iter().zip(&powers) {
            if a == ap {
                s1.push(a);
            } else {
                s2.push(a);
            }
        }
        let separated = match (s1.iter().max(), s2.iter().min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        };
        if stable && separated {
            classes.insert(SemigroupClass::PowerStable);
        }

        if finite && s2.is_empty() {
            classes.insert(SemigroupClass::PIdempotent);
        }

        if finite {
            if let Some(e) = self.identity() {
                let group = elems.iter().all(|a| elems.iter().any(|b| self.multiply(a, b) == e));
                let exponent_p = powers.iter().all(|ap| *ap == e);
                if group && exponent_p && elems.first() == Some(&e) {
                    classes.insert(SemigroupClass::ElementaryP);
                }
            }
        }
        report(classes)
    }

    /// `S₁ = {g : g^p = g}` and `S₂` its complement, within the degree bound.
    pub fn split_s1_s2(&self, p: u64, degree_bound: usize) -> (Vec<Elem>, Vec<Elem>) {
        self.elements_up_to(degree_bound).into_iter().partition(|a| self.has_product() && self.pow(a, p) == *a)
    }

    /// `⋂_{r=1..iterations} {u^{p^r}}` restricted to degree ≤ `degree_bound`.
    pub fn p_divisible_elements(&self, p: u64, degree_bound: usize, iterations: u32) -> Vec<Elem> {
        if !self.has_product() {
            return Vec::new();
        }
        let elems = self.elements_up_to(degree_bound);
        let mut result: BTreeSet<Elem> = elems.iter().cloned().collect();
        for r in 1..=iterations {
            let Some(e) = p.checked_pow(r) else { break };
            let images: BTreeSet<Elem> = elems
                .iter()
                .filter(|u| u.degree() as u64 * e <= degree_bound as u64)
                .map(|u| self.pow(u, e))
                .collect();
            result = result.intersection(&images).cloned().collect();
        }
        result.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SemigroupClass::*;

    fn idempotent_three() -> OrderedSemigroup {
        // {ι} ∪ μ_2 with ι smallest: g^3 = g for every element.
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        OrderedSemigroup::finite(&table, &[0, 1, 2], Some(&["i".into(), "a".into(), "b".into()])).unwrap()
    }

    #[test]
    fn free_is_power_monotone() {
        let s = OrderedSemigroup::free_abelian(&["x", "y"]).unwrap();
        for p in [2, 3, 5] {
            let r = s.classify(p, 5);
            assert!(r.contains(Free) && r.contains(PowerMonotone));
            assert!(!r.contains(PowerStable));
            assert_eq!(r.degree_bound, Some(5));
        }
    }

    #[test]
    fn mu_p_is_elementary_and_stable() {
        for p in [2, 3, 5] {
            let r = OrderedSemigroup::mu_p(p, 1, None).unwrap().classify(p, 0);
            assert!(r.contains(ElementaryP) && r.contains(PowerStable));
            assert!(!r.contains(PowerMonotone));
        }
    }

    #[test]
    fn p_idempotent_classes() {
        let r = idempotent_three().classify(3, 0);
        assert!(r.contains(PIdempotent) && r.contains(PowerMonotone) && r.contains(PowerStable));
        assert_eq!(r.degree_bound, None);
    }

    #[test]
    fn closure_constructions_stay_power_monotone() {
        let m = OrderedSemigroup::free_monoid(&["x"]).unwrap();
        assert!(m.classify(2, 6).contains(PowerMonotone));
        let prod = OrderedSemigroup::product(OrderedSemigroup::free_abelian(&["x"]).unwrap(), idempotent_three());
        assert!(prod.classify(3, 4).contains(PowerMonotone));
        let coproduct_host = OrderedSemigroup::product(
            OrderedSemigroup::free_monoid(&["x"]).unwrap(),
            OrderedSemigroup::free_monoid(&["y"]).unwrap(),
        );
        assert!(coproduct_host.classify(2, 4).contains(PowerMonotone));
    }

    #[test]
    fn splits() {
        let s = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        let (s1, s2) = s.split_s1_s2(2, 4);
        assert!(s1.is_empty());
        assert_eq!(s2.len(), 4);
        let m = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        let (s1, s2) = m.split_s1_s2(3, 0);
        assert_eq!(s1, vec![m.identity().unwrap()]);
        assert_eq!(s2.len(), 2);
        assert!(idempotent_three().split_s1_s2(3, 0).1.is_empty());
    }

    #[test]
    fn p_divisible() {
        let s = OrderedSemigroup::free_abelian(&["x"]).unwrap();
        assert!(s.p_divisible_elements(2, 8, 4).is_empty());
        let idem = idempotent_three();
        assert_eq!(idem.p_divisible_elements(3, 0, 5).len(), 3);
        let m = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        assert_eq!(m.p_divisible_elements(3, 0, 3), vec![m.identity().unwrap()]);
    }
}
