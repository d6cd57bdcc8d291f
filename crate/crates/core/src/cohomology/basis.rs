//! Explicit monomial bases for line-bundle cohomology on products of
//! projective spaces.
//!
//! On Pⁿ, H⁰(O(d)) has the monomials x^α with α ≥ 0, |α| = d, and
//! Hⁿ(O(d)) has the inverse monomials x^α with every α_j ≤ −1, |α| = d.
//! Cup product with a section x^β sends x^α to x^{α+β}, or to zero once
//! an inverse monomial stops being inverse. On P¹×P¹ a basis element of
//! H^i is a pair of factor elements whose levels add up to i.

use std::collections::HashMap;

use crate::error::Result;
use crate::model::{BundleClass, VarietyModel};

pub type Monomial = Vec<i64>;

#[derive(Debug, Clone)]
pub struct MonomialSpace {
    factor_dims: Vec<usize>,
    level: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialSpace {
    pub fn for_class(model: &VarietyModel, c: &BundleClass, level: usize) -> Result<Self> {
        let dims = model.factor_dims()?;
        let degs = model.factor_degrees(c)?;
        Ok(Self::new(&dims, &degs, level))
    }

    pub fn new(factor_dims: &[usize], degrees: &[i64], level: usize) -> Self {
        assert_eq!(factor_dims.len(), degrees.len());
        let nf = factor_dims.len();
        let mut basis: Vec<Monomial> = Vec::new();
        for mask in 0u32..(1 << nf) {
            let mask_level: usize = (0..nf)
                .filter(|f| mask & (1 << f) != 0)
                .map(|f| factor_dims[f])
                .sum();
            if mask_level != level {
                continue;
            }
            let per_factor: Vec<Vec<Monomial>> = (0..nf)
                .map(|f| {
                    let (n, d) = (factor_dims[f], degrees[f]);
                    if mask & (1 << f) != 0 {
                        compositions(-d - n as i64 - 1, n + 1)
                            .into_iter()
                            .map(|b| b.into_iter().map(|x| -1 - x).collect())
                            .collect()
                    } else {
                        compositions(d, n + 1)
                    }
                })
                .collect();
            let mut acc: Vec<Monomial> = vec![Vec::new()];
            for part in &per_factor {
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for prefix in &acc {
                    for m in part {
                        let mut v = prefix.clone();
                        v.extend_from_slice(m);
                        next.push(v);
                    }
                }
                acc = next;
            }
            basis.extend(acc);
        }
        basis.sort_unstable();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialSpace {
            factor_dims: factor_dims.to_vec(),
            level,
            basis,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Cup product of a section monomial with a basis element of this
    /// space's level, as an index into `target`. `None` when the product
    /// vanishes.
    pub fn cup(&self, section: &[i64], x: &[i64], target: &MonomialSpace) -> Option<usize> {
        debug_assert_eq!(section.len(), x.len());
        let mut p = Vec::with_capacity(x.len());
        let mut offset = 0;
        for &n in &self.factor_dims {
            let inverse = x[offset] < 0;
            for j in offset..offset + n + 1 {
                let e = section[j] + x[j];
                if inverse && e >= 0 {
                    return None;
                }
                p.push(e);
            }
            offset += n + 1;
        }
        let idx = target.index_of(&p);
        debug_assert!(idx.is_some(), "cup product left the target basis");
        idx
    }
}

/// Nonnegative integer vectors of length `parts` summing to `total`, in
/// lexicographic order.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if total < 0 || parts == 0 {
        return out;
    }
    let mut cur = vec![0i64; parts];
    fill(total, 0, &mut cur, &mut out);
    out
}

fn fill(rest: i64, pos: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for x in 0..=rest {
        cur[pos] = x;
        fill(rest - x, pos + 1, cur, out);
    }
}
