//! Ordered abelian semigroups and monoids.
//!
//! Elements are structural values whose derived `Ord` is the semigroup order
//! within any single semigroup: finite semigroups store elements by their rank
//! in the chosen order, free abelian monomials compare by degree then
//! lexicographically, products compare lexicographically, and an adjoined
//! identity is the smallest element.

mod classes;
mod format;
pub(crate) use format::split_top_level;
mod spec;

pub use classes::{ClassReport, SemigroupClass};
pub use spec::SemigroupSpec;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Sorted multiset of generator indices; `[0, 0, 1]` is `x²y` over `{x < y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 6]>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Identity adjoined by unitarization.
    One,
    Mono(Monomial),
    /// Element of a finite semigroup, indexed by its rank in the order.
    Ranked(u32),
    /// Atom of a bare ordered set.
    Letter(u32),
    Pair(Box<(Elem, Elem)>),
}

impl Elem {
    pub fn degree(&self) -> usize {
        match self {
            Elem::One | Elem::Ranked(_) => 0,
            Elem::Mono(m) => m.0.len(),
            Elem::Letter(_) => 1,
            Elem::Pair(b) => b.0.degree() + b.1.degree(),
        }
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new((a, b)))
    }

    pub fn mono(indices: &[u16]) -> Elem {
        let mut v: SmallVec<[u16; 6]> = indices.iter().copied().collect();
        v.sort_unstable();
        Elem::Mono(Monomial(v))
    }
}

/// Multiplication table of a finite semigroup, indexed by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<u32>>,
}

impl FiniteTable {
    fn len(&self) -> usize {
        self.names.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    fn identity(&self) -> Option<u32> {
        (0..self.len() as u32).find(|&e| (0..self.len() as u32).all(|g| self.mul(e, g) == g))
    }

    fn validate(&self) -> Result<()> {
        let n = self.len() as u32;
        if n == 0 {
            return Err(Error::InvalidSemigroup("empty semigroup".into()));
        }
        if self.table.len() != n as usize || self.table.iter().any(|r| r.len() != n as usize || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidSemigroup("table is not closed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::InvalidSemigroup(format!(
                        "not commutative at ({}, {})",
                        self.names[a as usize], self.names[b as usize]
                    )));
                }
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidSemigroup(format!(
                            "not associative at ({}, {}, {})",
                            self.names[a as usize], self.names[b as usize], self.names[c as usize]
                        )));
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        if self.names.iter().any(|n| !seen.insert(n.clone())) {
            return Err(Error::InvalidSemigroup("duplicate element names".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupKind {
    FreeAbelian { generators: Vec<String> },
    FinitePIdempotent(FiniteTable),
    ElementaryPGroup { p: u64, copies: u32, table: FiniteTable },
    OrderedSet { letters: Vec<String> },
    Unitarized(Box<OrderedSemigroup>),
    Product(Box<OrderedSemigroup>, Box<OrderedSemigroup>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSemigroup {
    kind: SemigroupKind,
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        let ok = !n.is_empty()
            && n != "1"
            && n.chars().next().is_some_and(|c| c.is_alphabetic())
            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidSemigroup(format!("invalid generator name '{n}'")));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidSemigroup(format!("duplicate generator '{n}'")));
        }
    }
    Ok(())
}

impl OrderedSemigroup {
    /// Free abelian semigroup on `generators`, listed smallest first.
    pub fn free_abelian<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&generators)?;
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidSemigroup("too many generators".into()));
        }
        Ok(OrderedSemigroup { kind: SemigroupKind::FreeAbelian { generators } })
    }

    /// Bare ordered set; only usable at weight zero.
    pub fn ordered_set<S: AsRef<str>>(letters: &[S]) -> Result<Self> {
        let letters: Vec<String> = letters.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&letters)?;
        if letters.is_empty() {
            return Err(Error::InvalidSemigroup("empty ordered set".into()));
        }
        Ok(OrderedSemigroup { kind: SemigroupKind::OrderedSet { letters } })
    }

    /// Finite semigroup from a multiplication table over indices `0..n` and
    /// an order listing the indices smallest first.
    pub fn finite(table: &[Vec<usize>], order: &[usize], names: Option<&[String]>) -> Result<Self> {
        let n = table.len();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidSemigroup("order is not a permutation of the elements".into()));
        }
        let mut rank = vec![0u32; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r as u32;
        }
        let default_names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        let names = names.map(|s| s.to_vec()).unwrap_or(default_names);
        if names.len() != n {
            return Err(Error::InvalidSemigroup("one name per element required".into()));
        }
        check_names(&names)?;
        let mut ranked = vec![vec![0u32; n]; n];
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidSemigroup("table is not closed".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                ranked[rank[i] as usize][rank[j] as usize] = rank[x];
            }
        }
        let t = FiniteTable { names: order.iter().map(|&i| names[i].clone()).collect(), table: ranked };
        t.validate()?;
        Ok(OrderedSemigroup { kind: SemigroupKind::FinitePIdempotent(t) })
    }

    /// The elementary abelian group μ_p^k. `order` lists exponent vectors
    /// smallest first; by default they are sorted lexicographically, which
    /// puts the identity first.
    pub fn mu_p(p: u64, copies: u32, order: Option<&[Vec<u32>]>) -> Result<Self> {
        if !crate::ring::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let size = (p as usize)
            .checked_pow(copies)
            .filter(|&s| s <= 4096 && copies >= 1)
            .ok_or_else(|| Error::InvalidSemigroup(format!("μ_{p}^{copies} is too large or empty")))?;
        let all: Vec<Vec<u32>> = (0..size)
            .map(|mut i| {
                let mut v = vec![0u32; copies as usize];
                for slot in v.iter_mut().rev() {
                    *slot = (i % p as usize) as u32;
                    i /= p as usize;
                }
                v
            })
            .collect();
        let order: Vec<Vec<u32>> = match order {
            Some(o) => o.to_vec(),
            None => all.clone(),
        };
        let mut check = order.clone();
        check.sort();
        if check != all {
            return Err(Error::InvalidSemigroup("order must list every exponent vector once".into()));
        }
        if order[0].iter().any(|&a| a != 0) {
            return Err(Error::InvalidSemigroup("the identity must be the smallest element".into()));
        }
        let index = |v: &Vec<u32>| order.iter().position(|w| w == v).unwrap() as u32;
        let table = order
            .iter()
            .map(|a| {
                order
                    .iter()
                    .map(|b| index(&a.iter().zip(b).map(|(x, y)| (x + y) % p as u32).collect()))
                    .collect()
            })
            .collect();
        let names = order.iter().map(|v| mu_name(v)).collect();
        Ok(OrderedSemigroup {
            kind: SemigroupKind::ElementaryPGroup { p, copies, table: FiniteTable { names, table } },
        })
    }

    /// Adjoins a new identity, placed below every other element.
    pub fn unitarize(inner: OrderedSemigroup) -> Self {
        OrderedSemigroup { kind: SemigroupKind::Unitarized(Box::new(inner)) }
    }

    /// Direct product with the lexicographic order.
    pub fn product(left: OrderedSemigroup, right: OrderedSemigroup) -> Self {
        OrderedSemigroup { kind: SemigroupKind::Product(Box::new(left), Box::new(right)) }
    }

    /// Free abelian monoid `M(X)`.
    pub fn free_monoid<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        Ok(Self::unitarize(Self::free_abelian(generators)?))
    }

    pub fn kind(&self) -> &SemigroupKind {
        &self.kind
    }

    pub fn has_product(&self) -> bool {
        match &self.kind {
            SemigroupKind::OrderedSet { .. } => false,
            SemigroupKind::Unitarized(s) => s.has_product(),
            SemigroupKind::Product(a, b) => a.has_product() && b.has_product(),
            _ => true,
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.kind, e) {
            (SemigroupKind::FreeAbelian { generators }, Elem::Mono(m)) => {
                !m.0.is_empty() && m.0.iter().all(|&i| (i as usize) < generators.len()) && m.0.windows(2).all(|w| w[0] <= w[1])
            }
            (SemigroupKind::FinitePIdempotent(t), Elem::Ranked(r))
            | (SemigroupKind::ElementaryPGroup { table: t, .. }, Elem::Ranked(r)) => (*r as usize) < t.len(),
            (SemigroupKind::OrderedSet { letters }, Elem::Letter(i)) => (*i as usize) < letters.len(),
            (SemigroupKind::Unitarized(_), Elem::One) => true,
            (SemigroupKind::Unitarized(s), e) => s.contains(e),
            (SemigroupKind::Product(a, b), Elem::Pair(pr)) => a.contains(&pr.0) && b.contains(&pr.1),
            _ => false,
        }
    }

    pub fn try_multiply(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.has_product() {
            return Err(Error::NoProduct);
        }
        for e in [a, b] {
            if !self.contains(e) {
                return Err(Error::ForeignElement(format!("{e:?}")));
            }
        }
        Ok(self.multiply(a, b))
    }

    /// Product of two elements of this semigroup. Panics on a bare ordered set.
    pub fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (SemigroupKind::Unitarized(_), Elem::One, x) | (SemigroupKind::Unitarized(_), x, Elem::One) => x.clone(),
            (SemigroupKind::Unitarized(s), x, y) => s.multiply(x, y),
            (SemigroupKind::FreeAbelian { .. }, Elem::Mono(x), Elem::Mono(y)) => {
                let mut v: SmallVec<[u16; 6]> = SmallVec::with_capacity(x.0.len() + y.0.len());
                let (mut i, mut j) = (0, 0);
                while i < x.0.len() || j < y.0.len() {
                    if j == y.0.len() || (i < x.0.len() && x.0[i] <= y.0[j]) {
                        v.push(x.0[i]);
                        i += 1;
                    } else {
                        v.push(y.0[j]);
                        j += 1;
                    }
                }
                Elem::Mono(Monomial(v))
            }
            (SemigroupKind::FinitePIdempotent(t), Elem::Ranked(x), Elem::Ranked(y))
            | (SemigroupKind::ElementaryPGroup { table: t, .. }, Elem::Ranked(x), Elem::Ranked(y)) => Elem::Ranked(t.mul(*x, *y)),
            (SemigroupKind::Product(l, r), Elem::Pair(x), Elem::Pair(y)) => {
                Elem::pair(l.multiply(&x.0, &y.0), r.multiply(&x.1, &y.1))
            }
            (SemigroupKind::OrderedSet { .. }, _, _) => panic!("letters of an ordered set have no product"),
            _ => panic!("element does not belong to this semigroup: {a:?}, {b:?}"),
        }
    }

    /// `a^n` for `n ≥ 1`.
    pub fn pow(&self, a: &Elem, n: u64) -> Elem {
        assert!(n >= 1, "semigroup powers start at 1");
        let mut n = n - 1;
        let mut acc = a.clone();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    pub fn identity(&self) -> Option<Elem> {
        match &self.kind {
            SemigroupKind::Unitarized(_) => Some(Elem::One),
            SemigroupKind::FinitePIdempotent(t) | SemigroupKind::ElementaryPGroup { table: t, .. } => t.identity().map(Elem::Ranked),
            SemigroupKind::Product(a, b) => Some(Elem::pair(a.identity()?, b.identity()?)),
            _ => None,
        }
    }

    /// Some `r` with `r^p = a`, if one exists (unique for members of 𝒫G).
    pub fn p_th_root(&self, a: &Elem, p: u64) -> Option<Elem> {
        match (&self.kind, a) {
            (SemigroupKind::Unitarized(_), Elem::One) => Some(Elem::One),
            (SemigroupKind::Unitarized(s), x) => s.p_th_root(x, p),
            (SemigroupKind::FreeAbelian { .. }, Elem::Mono(m)) => {
                let p = p as usize;
                if m.0.len() % p != 0 {
                    return None;
                }
                let root: SmallVec<[u16; 6]> = m.0.iter().step_by(p).copied().collect();
                let r = Elem::Mono(Monomial(root));
                (self.pow(&r, p as u64) == *a).then_some(r)
            }
            (SemigroupKind::FinitePIdempotent(t), _) | (SemigroupKind::ElementaryPGroup { table: t, .. }, _) => {
                (0..t.len() as u32).map(Elem::Ranked).find(|r| self.pow(r, p) == *a)
            }
            (SemigroupKind::Product(l, r), Elem::Pair(x)) => Some(Elem::pair(l.p_th_root(&x.0, p)?, r.p_th_root(&x.1, p)?)),
            _ => None,
        }
    }

    /// True when no element has degree 0, so words are bounded by degree alone.
    pub fn is_positively_graded(&self) -> bool {
        self.elements_of_degree(0).is_empty()
    }

    /// Finite semigroups have every element in degree 0.
    pub fn is_finite(&self) -> bool {
        match &self.kind {
            SemigroupKind::FinitePIdempotent(_) | SemigroupKind::ElementaryPGroup { .. } => true,
            SemigroupKind::Unitarized(s) => s.is_finite(),
            SemigroupKind::Product(a, b) => a.is_finite() && b.is_finite(),
            _ => false,
        }
    }

    /// All elements of degree exactly `k`, in increasing order.
    pub fn elements_of_degree(&self, k: usize) -> Vec<Elem> {
        let mut out = match &self.kind {
            SemigroupKind::FreeAbelian { generators } => {
                if k == 0 {
                    return Vec::new();
                }
                let n = generators.len() as u16;
                let mut out = Vec::new();
                let mut cur: Vec<u16> = Vec::with_capacity(k);
                fn rec(n: u16, k: usize, start: u16, cur: &mut Vec<u16>, out: &mut Vec<Elem>) {
                    if cur.len() == k {
                        out.push(Elem::Mono(Monomial(cur.iter().copied().collect())));
                        return;
                    }
                    for i in start..n {
                        cur.push(i);
                        rec(n, k, i, cur, out);
                        cur.pop();
                    }
                }
                rec(n, k, 0, &mut cur, &mut out);
                out
            }
            SemigroupKind::FinitePIdempotent(t) | SemigroupKind::ElementaryPGroup { table: t, .. } => {
                if k == 0 {
                    (0..t.len() as u32).map(Elem::Ranked).collect()
                } else {
                    Vec::new()
                }
            }
            SemigroupKind::OrderedSet { letters } => {
                if k == 1 {
                    (0..letters.len() as u32).map(Elem::Letter).collect()
                } else {
                    Vec::new()
                }
            }
            SemigroupKind::Unitarized(s) => {
                let mut v = if k == 0 { vec![Elem::One] } else { Vec::new() };
                v.extend(s.elements_of_degree(k));
                v
            }
            SemigroupKind::Product(a, b) => {
                let mut v = Vec::new();
                for i in 0..=k {
                    let left = a.elements_of_degree(i);
                    if left.is_empty() {
                        continue;
                    }
                    let right = b.elements_of_degree(k - i);
                    for x in &left {
                        for y in &right {
                            v.push(Elem::pair(x.clone(), y.clone()));
                        }
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    /// Every element of degree at most `bound`, in increasing order.
    pub fn elements_up_to(&self, bound: usize) -> Vec<Elem> {
        let mut v: Vec<Elem> = (0..=bound).flat_map(|k| self.elements_of_degree(k)).collect();
        v.sort();
        v
    }
}

fn mu_name(v: &[u32]) -> String {
    if v.iter().all(|&a| a == 0) {
        return "e".into();
    }
    let single = v.len() == 1;
    v.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            let g = if single { "g".to_string() } else { format!("g{}", i + 1) };
            if a == 1 {
                g
            } else {
                format!("{g}^{a}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(names: &[&str]) -> OrderedSemigroup {
        OrderedSemigroup::free_abelian(names).unwrap()
    }

    #[test]
    fn free_products_and_order() {
        let s = free(&["x"]);
        let x = s.parse_elem("x").unwrap();
        assert_eq!(s.format_elem(&s.multiply(&x, &x), false), "x²");
        assert!(x < s.multiply(&x, &x));

        let s = free(&["a", "b"]);
        let deg2: Vec<String> = s.elements_of_degree(2).iter().map(|e| s.format_elem(e, true)).collect();
        assert_eq!(deg2, vec!["a^2", "ab", "b^2"]);
        assert_eq!(s.pow(&Elem::mono(&[0]), 3), Elem::mono(&[0, 0, 0]));
    }

    #[test]
    fn mu_p_behaviour() {
        let s = OrderedSemigroup::mu_p(2, 1, None).unwrap();
        let g = s.parse_elem("g").unwrap();
        assert_eq!(s.multiply(&g, &g), s.identity().unwrap());
        let s3 = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        for e in s3.elements_of_degree(0) {
            assert_eq!(s3.pow(&e, 3), s3.identity().unwrap());
        }
        assert!(OrderedSemigroup::mu_p(3, 1, Some(&[vec![1], vec![0], vec![2]])).is_err());
        assert!(OrderedSemigroup::mu_p(4, 1, None).is_err());
    }

    #[test]
    fn product_is_componentwise() {
        let s = OrderedSemigroup::product(free(&["x"]), OrderedSemigroup::mu_p(2, 1, None).unwrap());
        let a = s.parse_elem("(x,e)").unwrap();
        let b = s.parse_elem("(x,g)").unwrap();
        assert_eq!(s.format_elem(&s.multiply(&a, &b), true), "(x^2,g)");
    }

    #[test]
    fn unitarized_identity_is_smallest() {
        let s = OrderedSemigroup::free_monoid(&["x", "y"]).unwrap();
        let one = s.identity().unwrap();
        for g in s.elements_up_to(3) {
            assert!(one <= g);
            assert_eq!(s.multiply(&one, &g), g);
        }
    }

    #[test]
    fn finite_tables_are_validated() {
        // Not associative: a·a = b, b·a = a.
        let bad = vec![vec![1, 0], vec![0, 0]];
        assert!(OrderedSemigroup::finite(&bad, &[0, 1], None).is_err());
        let not_comm = vec![vec![0, 0], vec![1, 1]];
        assert!(OrderedSemigroup::finite(&not_comm, &[0, 1], None).is_err());
        let semilattice = vec![vec![0, 1], vec![1, 1]];
        let s = OrderedSemigroup::finite(&semilattice, &[1, 0], None).unwrap();
        assert_eq!(s.format_elem(&Elem::Ranked(0), true), "s1");
    }

    #[test]
    fn roots() {
        let s = free(&["x", "y"]);
        let x2y2 = Elem::mono(&[0, 0, 1, 1]);
        assert_eq!(s.p_th_root(&x2y2, 2), Some(Elem::mono(&[0, 1])));
        assert_eq!(s.p_th_root(&Elem::mono(&[0, 0, 1]), 3), None);
        let m = OrderedSemigroup::mu_p(3, 1, None).unwrap();
        assert!(m.p_th_root(&Elem::Ranked(1), 3).is_none());
        assert_eq!(m.p_th_root(&Elem::Ranked(0), 3), Some(Elem::Ranked(0)));
    }

    #[test]
    fn ordered_sets_have_no_product() {
        let s = OrderedSemigroup::ordered_set(&["x"]).unwrap();
        let x = s.parse_elem("x").unwrap();
        assert!(matches!(s.try_multiply(&x, &x), Err(Error::NoProduct)));
    }
}
