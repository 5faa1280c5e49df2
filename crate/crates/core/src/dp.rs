//! Reachable-product tables over all sub-multisets of a sequence.
//!
//! Sub-multisets are indexed in mixed radix over the support: the support
//! entry pushed `i`-th has weight `w_i = Π_{j<i} (v_j + 1)`, so the last
//! entry is the most significant digit and raising its multiplicity only
//! appends a contiguous block. That makes the table a stack: the
//! enumerators push and pop terms while walking canonical multisets, and a
//! one-shot query is a sequence of pushes.

use crate::error::{Error, Result};
use crate::group::{ElemMask, GroupTable};

/// `reach[T]` is the set of products `t_{τ(1)}⋯t_{τ(ℓ)}` over all orderings of `T`.
pub(crate) struct ReachTable<'g> {
    group: &'g GroupTable,
    support: Vec<usize>,
    mult: Vec<u32>,
    weight: Vec<usize>,
    reach: Vec<ElemMask>,
    digits: Vec<u32>,
    budget: u64,
}

impl<'g> ReachTable<'g> {
    pub fn new(group: &'g GroupTable, budget: u64) -> Self {
        ReachTable {
            group,
            support: Vec::new(),
            mult: Vec::new(),
            weight: Vec::new(),
            reach: vec![1],
            digits: Vec::new(),
            budget,
        }
    }

    /// Builds the table for a whole exponent vector, support in ascending element order.
    pub fn for_exponents(group: &'g GroupTable, exps: &[u32], budget: u64) -> Result<Self> {
        let states: u64 = exps
            .iter()
            .map(|&v| v as u64 + 1)
            .try_fold(1u64, |acc, x| acc.checked_mul(x))
            .unwrap_or(u64::MAX);
        if states > budget {
            return Err(Error::Budget { attempted: states, budget });
        }
        let mut t = ReachTable::new(group, budget);
        for (g, &v) in exps.iter().enumerate() {
            for _ in 0..v {
                t.push(g)?;
            }
        }
        Ok(t)
    }

    #[cfg(test)]
    pub fn states(&self) -> usize {
        self.reach.len()
    }

    pub fn len(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn weights(&self) -> &[usize] {
        &self.weight
    }

    #[cfg(test)]
    pub fn reach(&self, idx: usize) -> ElemMask {
        self.reach[idx]
    }

    #[inline]
    pub fn full(&self) -> ElemMask {
        *self.reach.last().unwrap()
    }

    #[inline]
    pub fn full_index(&self) -> usize {
        self.reach.len() - 1
    }

    #[inline]
    pub fn is_product_one(&self, idx: usize) -> bool {
        self.reach[idx] & 1 == 1
    }

    /// Appends one copy of element `g`, which must be the last support
    /// element or not yet in the support.
    pub fn push(&mut self, g: usize) -> Result<()> {
        let extending = self.support.last() == Some(&g);
        debug_assert!(extending || !self.support.contains(&g));
        let w = if extending { *self.weight.last().unwrap() } else { self.reach.len() };
        let new_len = self.reach.len() + w;
        if new_len as u64 > self.budget {
            return Err(Error::Budget {
                attempted: new_len as u64,
                budget: self.budget,
            });
        }
        if extending {
            *self.mult.last_mut().unwrap() += 1;
        } else {
            self.support.push(g);
            self.mult.push(1);
            self.weight.push(w);
        }
        let lower = self.support.len() - 1;
        let start = self.reach.len();
        self.reach.reserve(w);
        self.digits.clear();
        self.digits.resize(lower, 0);
        let group = self.group;
        for t in 0..w {
            let idx = start + t;
            let mut m = group.mul_mask(self.reach[idx - w], g);
            for i in 0..lower {
                if self.digits[i] > 0 {
                    m |= group.mul_mask(self.reach[idx - self.weight[i]], self.support[i]);
                }
            }
            self.reach.push(m);
            // odometer over the lower digits
            for i in 0..lower {
                if self.digits[i] < self.mult[i] {
                    self.digits[i] += 1;
                    break;
                }
                self.digits[i] = 0;
            }
        }
        Ok(())
    }

    /// Removes the most recently pushed term.
    pub fn pop(&mut self) {
        let w = *self.weight.last().expect("pop on empty table");
        let m = self.mult.last_mut().unwrap();
        *m -= 1;
        if *m == 0 {
            self.mult.pop();
            self.support.pop();
            self.weight.pop();
        }
        let keep = self.reach.len() - w;
        self.reach.truncate(keep);
    }

    /// True when the full multiset splits into two nonempty product-one parts.
    pub fn full_splits(&self) -> bool {
        let f = self.full_index();
        (1..=f / 2).any(|t| self.reach[t] & 1 == 1 && self.reach[f - t] & 1 == 1)
    }

    /// Lexicographically smallest ordering (by element index) of the full
    /// multiset whose product is `target`, if any.
    ///
    /// Requires the support to have been pushed in ascending order.
    pub fn smallest_ordering_to(&self, target: usize) -> Option<Vec<usize>> {
        if self.full() >> target & 1 == 0 {
            return None;
        }
        debug_assert!(self.support.windows(2).all(|w| w[0] < w[1]));
        let g = self.group;
        let mut left = self.mult.clone();
        let mut idx = self.full_index();
        let mut prefix = 0usize;
        let mut out = Vec::with_capacity(self.len());
        while idx > 0 {
            let step = (0..self.support.len()).find(|&i| {
                if left[i] == 0 {
                    return false;
                }
                let p = g.mul_idx(prefix, self.support[i]);
                // remaining terms must multiply to p⁻¹·target
                let need = g.mul_idx(g.inv_idx(p), target);
                self.reach[idx - self.weight[i]] >> need & 1 == 1
            })?;
            prefix = g.mul_idx(prefix, self.support[step]);
            left[step] -= 1;
            idx -= self.weight[step];
            out.push(self.support[step]);
        }
        Some(out)
    }
}
