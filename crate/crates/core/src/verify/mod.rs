//! Certifies presentations of graded algebras by exact linear algebra on
//! bounded cells: each cell is the span of basis words of one degree and
//! bounded length, compared against the images of generator monomials.

mod integral;
pub mod props;
mod report;
mod theorems;

pub use integral::{
    compute_cokernel_basis, mu_matrix, verify_lyndon_over_z, verify_nested_alphabets, verify_rbaz, verify_z_polynomial,
    CokernelBasis, LiftMethod,
};
pub use report::{CellRecord, CheckRecord, VerificationReport};
pub use theorems::{
    fp_nonzero_branches, verify_fp_nonzero, verify_fp_weight0, verify_radford_hoffman, verify_rbafp, verify_rbazp,
    verify_rbl, verify_zp, FpBranch,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{rank, rank_mod_p, smith_normal_form, LinearSolver, Matrix, RingElem, RingSpec};
use crate::rota_baxter::{rb_basis, RbAlgebra};
use crate::shuffle::{shuffle_words, ShuffleAlgebra};
use crate::word::{words_in_cell, Word};

pub type Terms = BTreeMap<Word, RingElem>;

/// The algebra in which generator images are multiplied.
pub trait Host: Send + Sync {
    fn ring(&self) -> RingSpec;
    fn one(&self) -> Terms;
    fn mul(&self, a: &Terms, b: &Terms) -> Terms;
    /// `(degree, length)` of a basis word.
    fn size(&self, w: &Word) -> (usize, usize);
    /// Basis words of degree `d` and length at most `l`, in pro-length order.
    fn basis(&self, d: usize, l: usize) -> Vec<Word>;
    fn format_word(&self, w: &Word, ascii: bool) -> String;
    fn format_terms(&self, t: &Terms, ascii: bool) -> String;
}

fn accumulate(out: &mut Terms, w: Word, c: RingElem) {
    if c.is_zero() {
        return;
    }
    let s = match out.remove(&w) {
        Some(a) => a + c,
        None => c,
    };
    if !s.is_zero() {
        out.insert(w, s);
    }
}

pub struct ShuffleHost(pub Arc<ShuffleAlgebra>);

impl Host for ShuffleHost {
    fn ring(&self) -> RingSpec {
        self.0.ring()
    }

    fn one(&self) -> Terms {
        Terms::from([(Word::empty(), RingElem::one(self.0.ring()))])
    }

    fn mul(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (u, x) in a {
            for (v, y) in b {
                let xy = x * y;
                for (w, c) in shuffle_words(&self.0, u, v) {
                    accumulate(&mut out, w, &xy * &c);
                }
            }
        }
        out
    }

    fn size(&self, w: &Word) -> (usize, usize) {
        (w.degree(), w.len())
    }

    fn basis(&self, d: usize, l: usize) -> Vec<Word> {
        words_in_cell(self.0.semigroup(), d, l)
    }

    fn format_word(&self, w: &Word, ascii: bool) -> String {
        if w.is_empty() && self.0.semigroup().identity().is_none() {
            return "1".into();
        }
        w.format(self.0.semigroup(), ascii)
    }

    fn format_terms(&self, t: &Terms, ascii: bool) -> String {
        crate::shuffle::format_terms(self.0.semigroup(), t.iter().rev(), ascii)
    }
}

/// Terms are full words `head⊗tail`; the length of a word is its tail length.
pub struct RbHost(pub Arc<RbAlgebra>);

impl Host for RbHost {
    fn ring(&self) -> RingSpec {
        self.0.ring()
    }

    fn one(&self) -> Terms {
        crate::rota_baxter::RbElement::one(&self.0).terms().clone()
    }

    fn mul(&self, a: &Terms, b: &Terms) -> Terms {
        let heads = self.0.head_semigroup();
        let mut out = Terms::new();
        for (u, x) in a {
            let (uh, ut) = u.letters().split_first().expect("head");
            let ut = Word(ut.to_vec());
            for (v, y) in b {
                let (vh, vt) = v.letters().split_first().expect("head");
                let h = heads.multiply(uh, vh);
                let xy = x * y;
                for (t, c) in shuffle_words(self.0.shuffle(), &ut, &Word(vt.to_vec())) {
                    let mut full = Vec::with_capacity(t.len() + 1);
                    full.push(h.clone());
                    full.extend(t.0);
                    accumulate(&mut out, Word(full), &xy * &c);
                }
            }
        }
        out
    }

    fn size(&self, w: &Word) -> (usize, usize) {
        (w.degree(), w.len().saturating_sub(1))
    }

    fn basis(&self, d: usize, l: usize) -> Vec<Word> {
        rb_basis(self.0.head_semigroup(), self.0.semigroup(), d, l)
    }

    fn format_word(&self, w: &Word, ascii: bool) -> String {
        w.format(self.0.head_semigroup(), ascii)
    }

    fn format_terms(&self, t: &Terms, ascii: bool) -> String {
        crate::shuffle::format_terms(self.0.head_semigroup(), t.iter().rev(), ascii)
    }
}

/// Defining relation attached to a generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    None,
    /// `g^e = 0`
    PowerZero(u32),
    /// `g^e = c·g`
    PowerScalar(u32, RingElem),
    /// `g^e = 1`
    PowerOne(u32),
}

impl Relation {
    /// Largest exponent allowed in a reduced monomial.
    fn cap(&self) -> Option<u32> {
        match self {
            Relation::None => None,
            Relation::PowerZero(e) | Relation::PowerScalar(e, _) | Relation::PowerOne(e) => Some(e - 1),
        }
    }

    fn exponent(&self) -> Option<u32> {
        self.cap().map(|c| c + 1)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::None => f.write_str("free"),
            Relation::PowerZero(e) => write!(f, "g^{e} = 0"),
            Relation::PowerScalar(e, c) => write!(f, "g^{e} = {c}·g"),
            Relation::PowerOne(e) => write!(f, "g^{e} = 1"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub image: Terms,
    pub degree: usize,
    /// Largest length among the image's words.
    pub length: usize,
    pub relation: Relation,
}

impl Generator {
    /// Reads degree and length off the image; the image must be homogeneous
    /// in degree and nonzero.
    pub fn new(host: &dyn Host, image: Terms, relation: Relation) -> Result<Self> {
        let mut sizes = image.keys().map(|w| host.size(w));
        let (degree, mut length) = sizes.next().ok_or(Error::ZeroPolynomial)?;
        for (d, l) in sizes {
            if d != degree {
                return Err(Error::Precondition("generator image is not homogeneous".into()));
            }
            length = length.max(l);
        }
        if let Some(e) = relation.exponent() {
            if e < 2 {
                return Err(Error::Precondition("relation exponents start at 2".into()));
            }
        }
        let name = host.format_terms(&image, false);
        Ok(Generator { name, image, degree, length, relation })
    }
}

/// Generators with relations, evaluated inside a host algebra.
pub struct PresentedAlgebra {
    host: Arc<dyn Host>,
    pub generators: Vec<Generator>,
}

fn d_of(pres: &PresentedAlgebra, exps: &[(usize, u32)]) -> usize {
    exps.iter().map(|&(g, a)| pres.generators[g].degree * a as usize).sum()
}

/// A reduced monomial `∏ g_i^{a_i}` and its image; `length` is the largest
/// length among the image's words.
#[derive(Clone, Debug)]
pub struct MonomialImage {
    pub exponents: Vec<(usize, u32)>,
    pub degree: usize,
    pub length: usize,
    pub image: Terms,
}

impl PresentedAlgebra {
    pub fn new(host: Arc<dyn Host>, generators: Vec<Generator>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree == 0 && g.length == 0 && g.relation.cap().is_none()) {
            return Err(Error::Precondition(format!("generator {} has size zero and no relation", g.name)));
        }
        Ok(PresentedAlgebra { host, generators })
    }

    pub fn host(&self) -> &Arc<dyn Host> {
        &self.host
    }

    pub fn format_monomial(&self, m: &MonomialImage) -> String {
        if m.exponents.is_empty() {
            return "1".into();
        }
        m.exponents
            .iter()
            .map(|&(i, a)| {
                let g = &self.generators[i].name;
                let g = if g.contains(' ') { format!("({g})") } else { g.clone() };
                if a == 1 {
                    g
                } else {
                    format!("{g}^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }

    /// Every reduced monomial of degree exactly `d` whose image has length
    /// at most `max_len`, evaluated in the host.
    ///
    /// A `p`-th power may shorten the image (`w^p ≡ c·w^{∘p}` over 𝔽_p), so
    /// the search prunes only by the lengths of the distinct generators used
    /// and then filters by the length of the actual image.
    pub fn monomial_images(&self, d: usize, max_len: usize) -> Vec<MonomialImage> {
        let mut out = Vec::new();
        let mut exps = Vec::new();
        self.dfs(0, d, max_len, self.host.one(), &mut exps, &mut out);
        out.retain(|m| m.length <= max_len);
        out
    }

    fn dfs(&self, i: usize, rem_deg: usize, rem_len: usize, cur: Terms, exps: &mut Vec<(usize, u32)>, out: &mut Vec<MonomialImage>) {
        if i == self.generators.len() {
            if rem_deg == 0 {
                let length = cur.keys().map(|w| self.host.size(w).1).max().unwrap_or(0);
                out.push(MonomialImage { exponents: exps.clone(), degree: d_of(self, exps), length, image: cur });
            }
            return;
        }
        let g = &self.generators[i];
        let mut cap = g.relation.cap().unwrap_or(u32::MAX);
        if g.degree > 0 {
            cap = cap.min((rem_deg / g.degree) as u32);
        }
        if g.length > rem_len {
            cap = 0;
        } else if g.degree == 0 && g.length > 0 {
            cap = cap.min((rem_len / g.length) as u32);
        }
        let mut power = cur;
        for a in 0..=cap {
            if a > 0 {
                power = self.host.mul(&power, &g.image);
                exps.push((i, a));
            }
            // degree-0 generators are bounded by length alone
            let used = match a {
                0 => 0,
                _ if g.degree == 0 => g.length * a as usize,
                _ => g.length,
            };
            self.dfs(i + 1, rem_deg - g.degree * a as usize, rem_len - used, power.clone(), exps, out);
            if a > 0 {
                exps.pop();
            }
        }
    }

    /// Checks each relation `g^e = …` whose power fits in the bounds.
    pub fn check_relations(&self, degree_bound: usize, length_bound: usize) -> Vec<CheckRecord> {
        self.generators
            .par_iter()
            .filter_map(|g| {
                let e = g.relation.exponent()?;
                if g.degree * e as usize > degree_bound || g.length * e as usize > length_bound {
                    return None;
                }
                let mut pw = self.host.one();
                for _ in 0..e {
                    pw = self.host.mul(&pw, &g.image);
                }
                let want: Terms = match &g.relation {
                    Relation::PowerZero(_) => Terms::new(),
                    Relation::PowerScalar(_, c) => {
                        g.image.iter().map(|(w, a)| (w.clone(), a * c)).filter(|(_, a)| !a.is_zero()).collect()
                    }
                    Relation::PowerOne(_) => self.host.one(),
                    Relation::None => unreachable!(),
                };
                let passed = pw == want;
                let detail = if passed {
                    format!("{} holds for g = {}", g.relation, g.name)
                } else {
                    format!("g = {}: g^{e} = {}", g.name, self.host.format_terms(&pw, false))
                };
                Some(CheckRecord { name: "relation".into(), passed, detail })
            })
            .collect()
    }
}

/// What a cell has to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClaim {
    /// The monomial images are a basis of the cell.
    Basis,
    /// The monomial images are linearly independent (full column rank mod p
    /// over ℤ/p^N).
    Independent,
}

/// Which `(degree, length)` cells to check.
pub fn cells_for(positively_graded: bool, degree_bound: usize, length_bound: usize) -> Vec<(usize, usize)> {
    if positively_graded {
        (0..=degree_bound).map(|n| (n, n)).collect()
    } else {
        (0..=degree_bound).flat_map(|d| (0..=length_bound).map(move |l| (d, l))).collect()
    }
}

fn coefficient_matrix(ring: RingSpec, rows: &[Word], cols: &[&MonomialImage]) -> std::result::Result<Matrix, Word> {
    let index: BTreeMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = Matrix::zeros(ring, rows.len(), cols.len());
    for (j, mono) in cols.iter().enumerate() {
        for (w, c) in &mono.image {
            match index.get(w) {
                Some(&i) => m.set(i, j, c.clone()),
                None => return Err(w.clone()),
            }
        }
    }
    Ok(m)
}

/// Checks one cell against the monomials of that degree (taken from the
/// images computed once at the largest length).
pub fn check_cell(
    pres: &PresentedAlgebra,
    branch: &str,
    d: usize,
    l: usize,
    monomials: &[MonomialImage],
    claim: CellClaim,
) -> CellRecord {
    let host = pres.host();
    let basis = host.basis(d, l);
    let cols: Vec<&MonomialImage> = monomials.iter().filter(|m| m.degree == d && m.length <= l).collect();
    let mut rec = CellRecord {
        branch: branch.to_string(),
        degree: d,
        length: l,
        dimension: basis.len(),
        monomials: cols.len(),
        rank: 0,
        passed: false,
        note: None,
    };
    let ring = host.ring();
    let m = match coefficient_matrix(ring, &basis, &cols) {
        Ok(m) => m,
        Err(w) => {
            rec.note = Some(format!("an image leaves the cell through {}", host.format_word(&w, false)));
            return rec;
        }
    };
    if basis.is_empty() && cols.is_empty() {
        rec.passed = true;
        return rec;
    }
    match ring {
        RingSpec::Rationals | RingSpec::PrimeField { .. } => {
            rec.rank = rank(&m).expect("field");
            rec.passed = rec.rank == cols.len() && (claim == CellClaim::Independent || rec.rank == basis.len());
            if rec.rank < cols.len() {
                let red = crate::ring::row_reduce(&m).expect("field");
                let combo = &red.kernel_basis[0];
                let parts: Vec<String> = combo
                    .iter()
                    .zip(&cols)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, mono)| format!("{c}·[{}]", pres.format_monomial(mono)))
                    .collect();
                rec.note = Some(format!("vanishing combination: {}", parts.join(" + ")));
            } else if !rec.passed {
                rec.note = Some(unreachable_note(pres, &m, &basis));
            }
        }
        RingSpec::TruncatedPAdic { p, .. } => {
            rec.rank = rank_mod_p(&m, p);
            rec.passed = rec.rank == cols.len() && (claim == CellClaim::Independent || rec.rank == basis.len());
            if !rec.passed {
                rec.note = Some(format!("rank mod {p} is {} for {} monomials in dimension {}", rec.rank, cols.len(), basis.len()));
            }
        }
        RingSpec::Integers => {
            let snf = smith_normal_form(&m).expect("integer matrix");
            rec.rank = snf.rank();
            let unimodular = snf.diagonal.iter().all(|x| x.is_one());
            rec.passed = rec.rank == cols.len()
                && unimodular
                && (claim == CellClaim::Independent || rec.rank == basis.len());
            if !rec.passed {
                rec.note = Some(if rec.rank < cols.len() {
                    format!("monomials are dependent (rank {} < {})", rec.rank, cols.len())
                } else if claim == CellClaim::Basis && rec.rank == basis.len() {
                    let bad: Vec<String> = snf.diagonal.iter().filter(|x| !x.is_one()).map(BigInt::to_string).collect();
                    format!("{}; elementary divisors {}", unreachable_note(pres, &m, &basis), bad.join(", "))
                } else if !unimodular {
                    let bad: Vec<String> = snf.diagonal.iter().filter(|x| !x.is_one()).map(BigInt::to_string).collect();
                    format!("elementary divisors {}", bad.join(", "))
                } else {
                    unreachable_note(pres, &m, &basis)
                });
            }
        }
    }
    rec
}

/// Names the first basis word outside the span of the columns.
fn unreachable_note(pres: &PresentedAlgebra, m: &Matrix, basis: &[Word]) -> String {
    match first_unreachable(m, basis) {
        Some(w) => format!("unreachable word {}", pres.host().format_word(&w, false)),
        None => "span is complete".into(),
    }
}

pub fn first_unreachable(m: &Matrix, basis: &[Word]) -> Option<Word> {
    let solver = LinearSolver::new(m).ok()?;
    let ring = m.ring();
    for (i, w) in basis.iter().enumerate() {
        let mut e = vec![RingElem::zero(ring); basis.len()];
        e[i] = RingElem::one(ring);
        if solver.solve(&e).ok().flatten().is_none() {
            return Some(w.clone());
        }
    }
    None
}

/// Outcome of a spanning check on one cell.
#[derive(Clone, Debug)]
pub struct SpanningResult {
    pub spans: bool,
    pub unreachable: Option<Word>,
}

/// Whether every basis word of the cell is a combination of monomial images
/// over the host ring.
pub fn check_spanning(pres: &PresentedAlgebra, d: usize, l: usize) -> SpanningResult {
    let host = pres.host();
    let basis = host.basis(d, l);
    let monos = pres.monomial_images(d, l);
    let cols: Vec<&MonomialImage> = monos.iter().collect();
    match coefficient_matrix(host.ring(), &basis, &cols) {
        Ok(m) => {
            let unreachable = if cols.is_empty() { basis.first().cloned() } else { first_unreachable(&m, &basis) };
            SpanningResult { spans: unreachable.is_none(), unreachable }
        }
        Err(w) => SpanningResult { spans: false, unreachable: Some(w) },
    }
}

/// Runs the cell checks for one branch, sharing monomial images per degree.
pub fn check_cells(
    pres: &PresentedAlgebra,
    branch: &str,
    cells: &[(usize, usize)],
    claim: CellClaim,
) -> Vec<CellRecord> {
    let mut max_len: BTreeMap<usize, usize> = BTreeMap::new();
    for &(d, l) in cells {
        let e = max_len.entry(d).or_insert(0);
        *e = (*e).max(l);
    }
    let images: BTreeMap<usize, Vec<MonomialImage>> =
        max_len.par_iter().map(|(&d, &l)| (d, pres.monomial_images(d, l))).collect();
    cells.par_iter().map(|&(d, l)| check_cell(pres, branch, d, l, &images[&d], claim)).collect()
}
