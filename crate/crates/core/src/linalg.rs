//! Exact rank computations.
//!
//! Integral matrices (boundary and coboundary maps) are stored sparsely as
//! rows of `(column, value)` pairs. Over the rationals they are reduced
//! fraction-free, over `F_p` by ordinary elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::field::{Field, FieldSpec, PrimeField};

/// A sparse integer matrix, one entry list per row.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: Vec<Vec<(usize, i64)>>,
    pub cols: usize,
}

impl SparseIntMatrix {
    pub fn new(cols: usize) -> Self {
        SparseIntMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    /// Appends a row, summing duplicate columns and dropping zeros.
    pub fn push_row(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            debug_assert!(c < self.cols);
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        self.rank_at_most(field, usize::MAX)
    }

    /// `min(rank, limit)`, stopping the elimination once `limit` pivots are
    /// found. Rows are eliminated from last to first.
    pub fn rank_at_most(&self, field: FieldSpec, limit: usize) -> usize {
        match field {
            FieldSpec::Rationals => rational_rank(&self.rows, limit),
            FieldSpec::Prime(p) => prime_rank(&self.rows, p, limit),
        }
    }

    /// `self * other` where `self` is `a x b` and `other` is `b x c` (both as rows).
    pub fn compose(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::new(other.cols);
        let mut acc = vec![0i64; other.cols];
        let mut touched = Vec::new();
        for row in &self.rows {
            for &(k, v) in row {
                for &(c, w) in &other.rows[k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] += v * w;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            out.push_row(
                touched
                    .iter()
                    .map(|&c| (c, std::mem::take(&mut acc[c])))
                    .collect(),
            );
            touched.clear();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols]; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                dense[r][c] = v;
            }
        }
        dense
    }
}

fn prime_rank(rows: &[Vec<(usize, i64)>], p: u64, limit: usize) -> usize {
    let f = PrimeField::new(p).expect("field spec holds a prime");
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows.iter().rev().filter(|r| !r.is_empty()) {
        if pivots.len() >= limit {
            break;
        }
        let mut cur: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, f.from_i64(v)))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(lead, val)) = cur.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // piv is normalised to a leading 1.
                    cur = combine_mod(&f, &cur, piv, val);
                }
                None => {
                    let inv = f.inv(&val).expect("nonzero lead");
                    let normalised = cur.iter().map(|&(c, v)| (c, f.mul(&v, &inv))).collect();
                    pivots.insert(lead, normalised);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a - scale * b` over F_p for sorted sparse rows.
fn combine_mod(
    f: &PrimeField,
    a: &[(usize, u64)],
    b: &[(usize, u64)],
    scale: u64,
) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (c, v) = if take_a {
            i += 1;
            a[i - 1]
        } else if take_b {
            j += 1;
            (b[j - 1].0, f.neg(&f.mul(&scale, &b[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, f.sub(&a[i - 1].1, &f.mul(&scale, &b[j - 1].1)))
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

fn rational_rank(rows: &[Vec<(usize, i64)>], limit: usize) -> usize {
    let small: Vec<Vec<(usize, i128)>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, v as i128)).collect())
        .collect();
    if let Some(rank) = fraction_free_rank(small, limit) {
        return rank;
    }
    let big: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    fraction_free_rank(big, limit).expect("big integers do not overflow")
}

/// Rank over Q of an integer matrix by fraction-free sparse elimination.
/// Returns `None` if the integer type overflows.
fn fraction_free_rank<T>(rows: Vec<Vec<(usize, T)>>, limit: usize) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut cur in rows.into_iter().rev().filter(|r| !r.is_empty()) {
        if pivots.len() >= limit {
            break;
        }
        while let Some((lead, val)) = cur.first().cloned() {
            match pivots.get(&lead) {
                Some(piv) => {
                    let pv = piv[0].1.clone();
                    let g = pv.gcd(&val);
                    cur = combine_int(&cur, &pv.div_floor(&g), piv, &val.div_floor(&g))?;
                    normalise_content(&mut cur);
                }
                None => {
                    normalise_content(&mut cur);
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `sa * a - sb * b` for sorted sparse integer rows.
fn combine_int<T>(a: &[(usize, T)], sa: &T, b: &[(usize, T)], sb: &T) -> Option<Vec<(usize, T)>>
where
    T: Integer + Clone + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, sa.checked_mul(&a[i - 1].1)?)
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (
                b[j - 1].0,
                T::zero().checked_sub(&sb.checked_mul(&b[j - 1].1)?)?,
            )
        } else {
            i += 1;
            j += 1;
            let left = sa.checked_mul(&a[i - 1].1)?;
            let right = sb.checked_mul(&b[j - 1].1)?;
            (a[i - 1].0, left.checked_sub(&right)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn normalise_content<T: Integer + Signed + Clone>(row: &mut [(usize, T)]) {
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
    if row.first().is_some_and(|e| e.1.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -v.clone();
        }
    }
}

/// Dense rank over Q by Bareiss fraction-free elimination.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &ExactMatrix<F>) -> ExactMatrix<F> {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = ExactMatrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !f.is_zero(&m[r * cols + col])) else {
                continue;
            };
            for c in 0..cols {
                m.swap(rank * cols + c, p * cols + c);
            }
            let inv = f.inv(&m[rank * cols + col]).expect("nonzero pivot");
            for r in (rank + 1)..rows {
                let factor = f.mul(&m[r * cols + col], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let v = f.sub(&m[r * cols + c], &f.mul(&factor, &m[rank * cols + c]));
                    m[r * cols + c] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}
