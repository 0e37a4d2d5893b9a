use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::snf::{integer_rows, local_smith_form, snf_dense, LocalSmithForm};
use super::{inv_mod, mul_mod, RingElem, RingSpec};
use crate::error::{Error, Result};

/// Dense row-major matrix over one of the coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RingElem>,
}

impl Matrix {
    pub fn new(ring: RingSpec, rows: usize, cols: usize, entries: Vec<RingElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring.to_string(), e.ring().to_string()));
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, entries: vec![RingElem::zero(ring); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, RingElem::one(ring));
        }
        m
    }

    pub fn from_ints(ring: RingSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| RingElem::from_int(ring, x))).collect();
        Matrix::new(ring, rows.len(), cols, entries).expect("rows of equal length")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[Vec<RingElem>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                if x.ring() != ring {
                    return Err(Error::RingMismatch(ring.to_string(), x.ring().to_string()));
                }
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElem) {
        assert_eq!(x.ring(), self.ring);
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[RingElem]) -> Result<Vec<RingElem>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(RingElem::zero(self.ring), |acc, (a, b)| acc + &(a * b))
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise reduction (ℤ → 𝔽_p, ℤ/p^N → 𝔽_p, ℤ → ℤ/p^N, …).
    pub fn map_to(&self, ring: RingSpec) -> Result<Matrix> {
        let entries = self.entries.iter().map(|e| e.map_to(ring)).collect::<Result<Vec<_>>>()?;
        Matrix::new(ring, self.rows, self.cols, entries)
    }

    fn residue_rows(&self, p: u64) -> Vec<Vec<u64>> {
        let pb = BigInt::from(p);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| match e.residue() {
                        Some(r) => r % p,
                        None => {
                            let n = e.to_bigint().expect("integral entry");
                            n.mod_floor(&pb).try_into().unwrap()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.as_rational().expect("rational entry")).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(D::Error::custom("entries do not match rows/cols"));
        }
        let entries = r
            .entries
            .iter()
            .flatten()
            .map(|s| RingElem::parse(r.ring, s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Matrix::new(r.ring, r.rows, r.cols, entries).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<RingElem>>,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form mod p; leftmost pivot, topmost row. Returns pivots.
fn rref_mod_p(a: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(i) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, i);
        let inv = inv_mod(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_rational(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(i) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, i);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

enum Echelon {
    Fp(Vec<Vec<u64>>),
    Q(Vec<Vec<BigRational>>),
}

impl Echelon {
    fn of(m: &Matrix) -> Result<(Echelon, Vec<usize>)> {
        match m.ring {
            RingSpec::PrimeField { p } => {
                let mut a = m.residue_rows(p);
                let piv = rref_mod_p(&mut a, m.cols, p);
                Ok((Echelon::Fp(a), piv))
            }
            RingSpec::Rationals => {
                let mut a = m.rational_rows();
                let piv = rref_rational(&mut a, m.cols);
                Ok((Echelon::Q(a), piv))
            }
            other => Err(Error::NotAField(other.to_string())),
        }
    }

    fn entry(&self, ring: RingSpec, i: usize, j: usize) -> RingElem {
        match self {
            Echelon::Fp(a) => RingElem::from_int(ring, a[i][j] as i64),
            Echelon::Q(a) => RingElem::from_rational(ring, &a[i][j]).unwrap(),
        }
    }
}

pub fn row_reduce(m: &Matrix) -> Result<RowReduction> {
    let (ech, pivots) = Echelon::of(m)?;
    let mut kernel_basis = Vec::new();
    for f in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RingElem::zero(m.ring); m.cols];
        v[f] = RingElem::one(m.ring);
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -ech.entry(m.ring, i, f);
        }
        kernel_basis.push(v);
    }
    Ok(RowReduction { rank: pivots.len(), kernel_basis, pivot_columns: pivots })
}

/// Rank over ℚ or 𝔽_p; integer matrices are ranked over ℚ.
pub fn rank(m: &Matrix) -> Result<usize> {
    match m.ring {
        RingSpec::Integers => {
            let mut a = m.rational_rows();
            Ok(rref_rational(&mut a, m.cols).len())
        }
        RingSpec::Rationals | RingSpec::PrimeField { .. } => {
            let (_, piv) = Echelon::of(m)?;
            Ok(piv.len())
        }
        RingSpec::TruncatedPAdic { .. } => Ok(local_smith_form(m)?.rank()),
    }
}

/// Rank after reducing an integral matrix mod p.
pub fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let mut a = m.residue_rows(p);
    rref_mod_p(&mut a, m.cols, p).len()
}

/// Solves `m · x = b` for many right-hand sides after one factorization.
pub enum LinearSolver {
    Field { ring: RingSpec, transform: Matrix, pivots: Vec<usize>, cols: usize },
    Integer { diagonal: Vec<BigInt>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>> },
    Local { ring: RingSpec, form: LocalSmithForm },
}

impl LinearSolver {
    pub fn new(m: &Matrix) -> Result<Self> {
        match m.ring {
            RingSpec::Rationals | RingSpec::PrimeField { .. } => {
                // Row-reduce [m | I]; the right block records the row operations.
                let mut aug = Matrix::zeros(m.ring, m.rows, m.cols + m.rows);
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        aug.set(i, j, m.get(i, j).clone());
                    }
                    aug.set(i, m.cols + i, RingElem::one(m.ring));
                }
                let (ech, all_pivots) = Echelon::of(&aug)?;
                let pivots: Vec<usize> = all_pivots.into_iter().filter(|&c| c < m.cols).collect();
                let mut transform = Matrix::zeros(m.ring, m.rows, m.rows);
                for i in 0..m.rows {
                    for j in 0..m.rows {
                        transform.set(i, j, ech.entry(m.ring, i, m.cols + j));
                    }
                }
                Ok(LinearSolver::Field { ring: m.ring, transform, pivots, cols: m.cols })
            }
            RingSpec::Integers => {
                let d = snf_dense(integer_rows(m)?, m.cols, true);
                Ok(LinearSolver::Integer { diagonal: d.diagonal, u: d.u, v: d.v })
            }
            RingSpec::TruncatedPAdic { .. } => Ok(LinearSolver::Local { ring: m.ring, form: local_smith_form(m)? }),
        }
    }

    pub fn solve(&self, b: &[RingElem]) -> Result<Option<Vec<RingElem>>> {
        match self {
            LinearSolver::Field { ring, transform, pivots, cols } => {
                let c = transform.mul_vec(b)?;
                if c[pivots.len()..].iter().any(|x| !x.is_zero()) {
                    return Ok(None);
                }
                let mut x = vec![RingElem::zero(*ring); *cols];
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = c[i].clone();
                }
                Ok(Some(x))
            }
            LinearSolver::Integer { diagonal, u, v } => {
                if b.len() != u.len() {
                    return Err(Error::ShapeMismatch(format!("right-hand side of length {}", b.len())));
                }
                let bz: Vec<BigInt> = b
                    .iter()
                    .map(|e| e.to_bigint().ok_or_else(|| Error::Precondition("integral right-hand side".into())))
                    .collect::<Result<_>>()?;
                let c: Vec<BigInt> = u.iter().map(|row| row.iter().zip(&bz).map(|(a, b)| a * b).sum()).collect();
                let cols = v.len();
                let mut y = vec![BigInt::zero(); cols];
                for (i, ci) in c.iter().enumerate() {
                    if i < diagonal.len() {
                        let (q, r) = ci.div_rem(&diagonal[i]);
                        if !r.is_zero() {
                            return Ok(None);
                        }
                        y[i] = q;
                    } else if !ci.is_zero() {
                        return Ok(None);
                    }
                }
                let x = v
                    .iter()
                    .map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum::<BigInt>())
                    .map(|n| RingElem::from_bigint(RingSpec::Integers, &n))
                    .collect();
                Ok(Some(x))
            }
            LinearSolver::Local { ring, form } => {
                let m = form.modulus;
                if b.len() != form.u.len() {
                    return Err(Error::ShapeMismatch(format!("right-hand side of length {}", b.len())));
                }
                let bb: Vec<u64> = b.iter().map(|e| e.residue().expect("residue")).collect();
                let c: Vec<u64> = form
                    .u
                    .iter()
                    .map(|row| row.iter().zip(&bb).fold(0, |acc, (x, y)| (acc + mul_mod(*x, *y, m)) % m))
                    .collect();
                let cols = form.v.len();
                let mut y = vec![0u64; cols];
                for (i, &ci) in c.iter().enumerate() {
                    if i < form.valuations.len() {
                        let pv = form.p.pow(form.valuations[i]);
                        if ci % pv != 0 {
                            return Ok(None);
                        }
                        y[i] = ci / pv;
                    } else if ci != 0 {
                        return Ok(None);
                    }
                }
                let x = form
                    .v
                    .iter()
                    .map(|row| row.iter().zip(&y).fold(0, |acc, (a, b)| (acc + mul_mod(*a, *b, m)) % m))
                    .map(|r| RingElem::from_int(*ring, r as i64))
                    .collect();
                Ok(Some(x))
            }
        }
    }
}

pub fn solve_over_ring(m: &Matrix, b: &[RingElem]) -> Result<Option<Vec<RingElem>>> {
    if b.len() != m.rows {
        return Err(Error::ShapeMismatch(format!("right-hand side of length {} for {} rows", b.len(), m.rows)));
    }
    if let Some(e) = b.iter().find(|e| e.ring() != m.ring) {
        return Err(Error::RingMismatch(m.ring.to_string(), e.ring().to_string()));
    }
    LinearSolver::new(m)?.solve(b)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingSpec {
        RingSpec::Rationals
    }

    #[test]
    fn identity_has_full_rank() {
        let r = row_reduce(&Matrix::identity(q(), 3)).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.kernel_basis.is_empty());
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn small_kernels() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let r = row_reduce(&Matrix::from_ints(f2, &[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis, vec![vec![RingElem::one(f2), RingElem::one(f2)]]);

        let r = row_reduce(&Matrix::from_ints(q(), &[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis, vec![vec![RingElem::from_int(q(), -2), RingElem::one(q())]]);
    }

    #[test]
    fn integers_are_not_a_field() {
        let m = Matrix::from_ints(RingSpec::Integers, &[&[1]]);
        assert!(matches!(row_reduce(&m), Err(Error::NotAField(_))));
    }

    #[test]
    fn solving() {
        let id = Matrix::identity(q(), 2);
        let b = vec![RingElem::from_int(q(), 4), RingElem::from_int(q(), -7)];
        assert_eq!(solve_over_ring(&id, &b).unwrap(), Some(b.clone()));

        let two = Matrix::from_ints(RingSpec::Integers, &[&[2]]);
        assert_eq!(solve_over_ring(&two, &[RingElem::from_int(RingSpec::Integers, 3)]).unwrap(), None);

        let two = Matrix::from_ints(q(), &[&[2]]);
        let x = solve_over_ring(&two, &[RingElem::from_int(q(), 3)]).unwrap().unwrap();
        assert_eq!(x, vec![RingElem::parse(q(), "3/2").unwrap()]);

        assert!(matches!(solve_over_ring(&two, &[]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn local_solving() {
        let ring = RingSpec::truncated_padic(3, 3).unwrap();
        let m = Matrix::from_ints(ring, &[&[3, 1], &[0, 3]]);
        let b = vec![RingElem::from_int(ring, 5), RingElem::from_int(ring, 6)];
        let x = solve_over_ring(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let m = Matrix::from_ints(ring, &[&[3]]);
        assert_eq!(solve_over_ring(&m, &[RingElem::from_int(ring, 1)]).unwrap(), None);
    }

    #[test]
    fn json_shape() {
        let m = Matrix::from_ints(q(), &[&[1, 2]]);
        let js = serde_json::to_value(&m).unwrap();
        assert_eq!(js, serde_json::json!({"ring": "Q", "rows": 1, "cols": 2, "entries": [["1", "2"]]}));
        let back: Matrix = serde_json::from_value(js).unwrap();
        assert_eq!(back, m);
    }
}
