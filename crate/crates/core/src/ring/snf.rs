//! Smith normal form over ℤ and over the local rings ℤ/p^N.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{inv_mod, mul_mod, Matrix, RingElem, RingSpec};
use crate::error::{Error, Result};

/// `U · m · V = diag(diagonal)` (padded with zeros) with unimodular `U`, `V`.
/// Only the nonzero invariant factors are listed, and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Rank of the free part of the cokernel `ℤ^rows / im m`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.u.rows() - self.diagonal.len()
    }

    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| *d > &BigInt::from(1)).cloned().collect()
    }
}

pub(crate) struct DenseSnf {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

struct Tracker {
    track: bool,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Tracker {
    fn swap_rows(&mut self, a: &mut [Vec<BigInt>], i: usize, k: usize) {
        a.swap(i, k);
        if self.track {
            self.u.swap(i, k);
            for row in &mut self.u_inv {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, a: &mut [Vec<BigInt>], j: usize, k: usize) {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        if self.track {
            for row in &mut self.v {
                row.swap(j, k);
            }
        }
    }

    /// row_i += q · row_k
    fn add_row(&mut self, a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
        add_row_multiple(a, i, k, q);
        if self.track {
            add_row_multiple(&mut self.u, i, k, q);
            let neg = -q;
            for row in &mut self.u_inv {
                let t = &row[i] * &neg;
                row[k] += t;
            }
        }
    }

    /// col_j += q · col_k
    fn add_col(&mut self, a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let t = &row[k] * q;
            row[j] += t;
        }
        if self.track {
            for row in &mut self.v {
                let t = &row[k] * q;
                row[j] += t;
            }
        }
    }

    fn negate_row(&mut self, a: &mut [Vec<BigInt>], i: usize) {
        for x in a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in &mut self.u_inv {
                row[i] = -&row[i];
            }
        }
    }
}

fn add_row_multiple(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let (src, dst) = if i < k {
        let (lo, hi) = a.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d += s * q;
        }
    }
}

fn smallest_in_block(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub(crate) fn snf_dense(mut a: Vec<Vec<BigInt>>, cols: usize, track: bool) -> DenseSnf {
    let rows = a.len();
    let mut tr = Tracker {
        track,
        u: if track { identity(rows) } else { Vec::new() },
        u_inv: if track { identity(rows) } else { Vec::new() },
        v: if track { identity(cols) } else { Vec::new() },
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((i, j)) = smallest_in_block(&a, t) else { break };
        tr.swap_rows(&mut a, t, i);
        tr.swap_cols(&mut a, t, j);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    if !q.is_zero() {
                        tr.add_row(&mut a, i, t, &-q);
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    if !q.is_zero() {
                        tr.add_col(&mut a, j, t, &-q);
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // A nonzero remainder is strictly smaller than the pivot; move it in.
                let mut best: Option<(usize, bool)> = None;
                let mut best_abs = BigInt::zero();
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && (best.is_none() || a[i][t].abs() < best_abs) {
                        best_abs = a[i][t].abs();
                        best = Some((i, true));
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && (best.is_none() || a[t][j].abs() < best_abs) {
                        best_abs = a[t][j].abs();
                        best = Some((j, false));
                    }
                }
                match best {
                    Some((i, true)) => tr.swap_rows(&mut a, t, i),
                    Some((j, false)) => tr.swap_cols(&mut a, t, j),
                    None => unreachable!(),
                }
                continue;
            }
            let piv = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&piv)));
            match offender {
                Some(i) => tr.add_row(&mut a, t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            tr.negate_row(&mut a, t);
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    DenseSnf { diagonal, u: tr.u, u_inv: tr.u_inv, v: tr.v }
}

pub(crate) fn integer_rows(m: &Matrix) -> Result<Vec<Vec<BigInt>>> {
    if m.ring() != RingSpec::Integers {
        return Err(Error::Precondition(format!("integer matrix required, got {}", m.ring())));
    }
    Ok((0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_bigint().unwrap()).collect())
        .collect())
}

fn to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> Matrix {
    let r = rows.len();
    let entries = rows
        .into_iter()
        .flatten()
        .map(|x| RingElem::from_bigint(RingSpec::Integers, &x))
        .collect();
    Matrix::new(RingSpec::Integers, r, cols, entries).expect("shape is consistent")
}

pub fn smith_normal_form(m: &Matrix) -> Result<SmithNormalForm> {
    let dense = snf_dense(integer_rows(m)?, m.cols(), true);
    Ok(SmithNormalForm {
        diagonal: dense.diagonal,
        u: to_matrix(dense.u, m.rows()),
        u_inv: to_matrix(dense.u_inv, m.rows()),
        v: to_matrix(dense.v, m.cols()),
    })
}

/// Nonzero invariant factors only, without the transformation matrices.
pub fn elementary_divisors(m: &Matrix) -> Result<Vec<BigInt>> {
    Ok(snf_dense(integer_rows(m)?, m.cols(), false).diagonal)
}

/// Diagonal form over ℤ/p^N: `U · m · V = diag(p^{v_1}, …, p^{v_r}, 0, …)`.
#[derive(Clone, Debug)]
pub struct LocalSmithForm {
    pub p: u64,
    pub modulus: u64,
    pub valuations: Vec<u32>,
    pub(crate) u: Vec<Vec<u64>>,
    pub(crate) v: Vec<Vec<u64>>,
}

impl LocalSmithForm {
    /// Number of nonzero pivots.
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }

    /// Rank of the reduction mod p.
    pub fn rank_mod_p(&self) -> usize {
        self.valuations.iter().filter(|&&v| v == 0).count()
    }
}

fn valuation_u64(mut r: u64, p: u64) -> u32 {
    let mut v = 0;
    while r % p == 0 {
        r /= p;
        v += 1;
    }
    v
}

pub fn local_smith_form(m: &Matrix) -> Result<LocalSmithForm> {
    let (p, modulus) = match m.ring() {
        RingSpec::TruncatedPAdic { p, .. } | RingSpec::PrimeField { p } => (p, m.ring().modulus().unwrap()),
        other => return Err(Error::Precondition(format!("local ring required, got {other}"))),
    };
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).residue().unwrap()).collect())
        .collect();
    let ident = |n: usize| -> Vec<Vec<u64>> { (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect() };
    let mut u = ident(rows);
    let mut v = ident(cols);
    let sub_row = |x: &mut Vec<Vec<u64>>, i: usize, k: usize, q: u64| {
        for c in 0..x[i].len() {
            let t = mul_mod(x[k][c], q, modulus);
            x[i][c] = (x[i][c] + modulus - t) % modulus;
        }
    };
    let mut valuations = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let val = valuation_u64(x, p);
                    if best.map_or(true, |b| val < b.2) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((i, j, val)) = best else { break };
        a.swap(t, i);
        u.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        for row in v.iter_mut() {
            row.swap(t, j);
        }
        let pv = p.pow(val);
        let unit_inv = inv_mod(a[t][t] / pv, modulus).expect("pivot cofactor is a unit");
        for x in a[t].iter_mut() {
            *x = mul_mod(*x, unit_inv, modulus);
        }
        for x in u[t].iter_mut() {
            *x = mul_mod(*x, unit_inv, modulus);
        }
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let q = a[i][t] / pv;
                sub_row(&mut a, i, t, q);
                sub_row(&mut u, i, t, q);
            }
        }
        for j in t + 1..cols {
            if a[t][j] != 0 {
                let q = a[t][j] / pv;
                for row in a.iter_mut() {
                    let s = mul_mod(row[t], q, modulus);
                    row[j] = (row[j] + modulus - s) % modulus;
                }
                for row in v.iter_mut() {
                    let s = mul_mod(row[t], q, modulus);
                    row[j] = (row[j] + modulus - s) % modulus;
                }
            }
        }
        valuations.push(val);
    }
    Ok(LocalSmithForm { p, modulus, valuations, u, v })
}
