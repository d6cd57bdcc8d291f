//! Exact integer rank computations.
//!
//! Two fraction-free eliminations are provided: a dense Bareiss
//! elimination, and a sparse column echelon form that the cohomology engine
//! uses on the (very sparse) monomial matrices. They are cross-checked in
//! tests.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Integer matrix stored by columns, each column a list of `(row, value)`
/// pairs sorted by row with no zero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix {
            rows,
            columns: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Appends a column given as unsorted `(row, value)` entries; repeated
    /// rows are summed.
    pub fn push_column(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|&(r, _)| r);
        let mut col: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!(r < self.rows, "row {r} out of range {}", self.rows);
            match col.last_mut() {
                Some((lr, lv)) if *lr == r => *lv += v,
                _ => col.push((r, v)),
            }
        }
        col.retain(|&(_, v)| v != 0);
        self.columns.push(col);
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    /// Rank by fraction-free column echelon reduction.
    ///
    /// Each incoming column is reduced against the stored pivot columns
    /// keyed by their leading row. Reductions use `p·v − v_r·p_col` followed
    /// by division by the content, so every intermediate stays integral.
    pub fn rank(&self) -> Result<usize> {
        let mut pivots: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        let mut rank = 0;
        for col in &self.columns {
            let mut v = col.clone();
            while let Some(&(lead, lead_val)) = v.first() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let p_lead = p[0].1;
                        v = combine(p_lead, &v, lead_val, p)?;
                    }
                    None => {
                        pivots.insert(lead, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        Ok(rank)
    }
}

/// `a·v − b·w`, divided by the content of the result. Leading rows cancel.
fn combine(a: i64, v: &[(usize, i64)], b: i64, w: &[(usize, i64)]) -> Result<Vec<(usize, i64)>> {
    let g = gcd(a, b).max(1);
    let (a, b) = (a / g, b / g);
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let (row, x) = match (v.get(i), w.get(j)) {
            (Some(&(rv, xv)), Some(&(rw, _))) if rv < rw => {
                i += 1;
                (rv, mul(a, xv)?)
            }
            (Some(&(rv, _)), Some(&(rw, xw))) if rw < rv => {
                j += 1;
                (rw, mul(-b, xw)?)
            }
            (Some(&(rv, xv)), Some(&(_, xw))) => {
                i += 1;
                j += 1;
                let s = mul(a, xv)?
                    .checked_sub(mul(b, xw)?)
                    .ok_or(Error::Overflow)?;
                (rv, s)
            }
            (Some(&(rv, xv)), None) => {
                i += 1;
                (rv, mul(a, xv)?)
            }
            (None, Some(&(rw, xw))) => {
                j += 1;
                (rw, mul(-b, xw)?)
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((row, x));
        }
    }
    let content = out.iter().fold(0, |acc, &(_, x)| gcd(acc, x));
    if content > 1 {
        for e in &mut out {
            e.1 /= content;
        }
    }
    Ok(out)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
///
/// Every division performed is exact; intermediate entries are minors of
/// the input and are held in `i128`.
pub fn bareiss_rank(matrix: &[Vec<i64>]) -> Result<usize> {
    let rows = matrix.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();

    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in rank + 1..rows {
            let factor = m[r][c];
            for j in c..cols {
                let num = pivot
                    .checked_mul(m[r][j])
                    .and_then(|x| x.checked_sub(factor.checked_mul(m[rank][j])?))
                    .ok_or(Error::Overflow)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[r][j] = num / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}
