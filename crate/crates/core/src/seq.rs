//! Sequences over a group: elements of the free abelian monoid on the
//! group's elements, stored as exponent vectors.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::dp::ReachTable;
use crate::error::{Error, Result};
use crate::group::{ElemMask, ElementId, GroupMap, GroupTable};

/// Default cap on the number of sub-multiset states a single DP may create.
pub const DEFAULT_DP_BUDGET: u64 = 2_000_000;

/// A finite multiset of group elements; `exponents[g]` is the multiplicity of `g`.
#[derive(Clone)]
pub struct Sequence {
    group: GroupTable,
    exponents: Vec<u32>,
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents && self.group == other.group
    }
}

impl Eq for Sequence {}

impl Hash for Sequence {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exponents.hash(state);
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: by length, then by the sorted term tuple.
impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.terms().cmp(&other.terms()))
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence[{self}]")
    }
}

/// Comma-separated `label^multiplicity` tokens; `1` for the empty sequence
/// would be ambiguous, so it prints as the empty string.
impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &v) in self.exponents.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(self.group.name(ElementId::from_index(g)))?;
            if v > 1 {
                write!(f, "^{v}")?;
            }
        }
        Ok(())
    }
}

/// The set of products of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductSet {
    mask: ElemMask,
}

impl ProductSet {
    pub fn from_mask(mask: ElemMask) -> Self {
        ProductSet { mask }
    }

    pub fn mask(&self) -> ElemMask {
        self.mask
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.mask >> a.index() & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Members in ascending order.
    pub fn elements(&self) -> Vec<ElementId> {
        (0..128)
            .filter(|&i| self.mask >> i & 1 == 1)
            .map(ElementId::from_index)
            .collect()
    }
}

/// An arrangement of the terms of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrdering {
    pub terms: Vec<ElementId>,
}

impl TermOrdering {
    pub fn new(terms: Vec<ElementId>) -> Self {
        TermOrdering { terms }
    }

    /// Left-to-right product.
    pub fn product(&self, g: &GroupTable) -> ElementId {
        self.terms
            .iter()
            .fold(ElementId::IDENTITY, |acc, &x| g.multiply(acc, x))
    }

    /// The ordering starting at position `k`, wrapping around.
    pub fn rotated(&self, k: usize) -> TermOrdering {
        let mut terms = self.terms.clone();
        if !terms.is_empty() {
            let k = k % terms.len();
            terms.rotate_left(k);
        }
        TermOrdering { terms }
    }

    pub fn reversed(&self) -> TermOrdering {
        TermOrdering {
            terms: self.terms.iter().rev().copied().collect(),
        }
    }

    pub fn to_sequence(&self, g: &GroupTable) -> Sequence {
        Sequence::from_terms(g, &self.terms)
    }

    pub fn render(&self, g: &GroupTable) -> String {
        self.terms.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join(" ")
    }
}

impl Sequence {
    pub fn empty(group: &GroupTable) -> Self {
        Sequence {
            group: group.clone(),
            exponents: vec![0; group.order()],
        }
    }

    pub fn from_exponents(group: &GroupTable, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != group.order() {
            return Err(Error::Parse(format!(
                "exponent vector has {} entries for a group of order {}",
                exponents.len(),
                group.order()
            )));
        }
        Ok(Sequence {
            group: group.clone(),
            exponents,
        })
    }

    pub fn from_terms(group: &GroupTable, terms: &[ElementId]) -> Self {
        let mut s = Sequence::empty(group);
        for t in terms {
            s.exponents[t.index()] += 1;
        }
        s
    }

    /// `g^{[k]}`: `k` copies of one element.
    pub fn repeated(group: &GroupTable, g: ElementId, k: u32) -> Self {
        let mut s = Sequence::empty(group);
        s.exponents[g.index()] = k;
        s
    }

    /// Parses comma-separated `label^multiplicity` tokens, e.g. `1^2,r,s^3`.
    pub fn parse(group: &GroupTable, text: &str) -> Result<Self> {
        let mut s = Sequence::empty(group);
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (label, mult) = match tok.rsplit_once('^') {
                Some((l, m)) => (
                    l.trim(),
                    m.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let g = group.parse_element(label)?;
            s.exponents[g.index()] += mult;
        }
        Ok(s)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn multiplicity(&self, g: ElementId) -> u32 {
        self.exponents[g.index()]
    }

    pub fn len(&self) -> usize {
        self.exponents.iter().map(|&v| v as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.iter().all(|&v| v == 0)
    }

    /// Terms in ascending element order.
    pub fn terms(&self) -> Vec<ElementId> {
        self.exponents
            .iter()
            .enumerate()
            .flat_map(|(g, &v)| std::iter::repeat(ElementId::from_index(g)).take(v as usize))
            .collect()
    }

    pub fn support(&self) -> Vec<ElementId> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(g, _)| ElementId::from_index(g))
            .collect()
    }

    /// Number of sub-multisets, `Π (v_g + 1)`, saturating.
    pub fn divisor_count(&self) -> u64 {
        self.exponents
            .iter()
            .map(|&v| v as u64 + 1)
            .try_fold(1u64, |acc, x| acc.checked_mul(x))
            .unwrap_or(u64::MAX)
    }

    fn check_group(&self, other: &Sequence) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        self.check_group(other)?;
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        Ok(Sequence {
            group: self.group.clone(),
            exponents,
        })
    }

    /// `S^{[k]}`.
    pub fn power(&self, k: u32) -> Sequence {
        Sequence {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|&v| v * k).collect(),
        }
    }

    /// Whether `self` divides `other` in the free monoid, i.e. is a sub-multiset.
    pub fn divides(&self, other: &Sequence) -> Result<bool> {
        self.check_group(other)?;
        Ok(self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b))
    }

    /// `self · divisor⁻¹`.
    pub fn quotient(&self, divisor: &Sequence) -> Result<Sequence> {
        if !divisor.divides(self)? {
            return Err(Error::NotDivisible);
        }
        let exponents = self.exponents.iter().zip(&divisor.exponents).map(|(a, b)| a - b).collect();
        Ok(Sequence {
            group: self.group.clone(),
            exponents,
        })
    }

    /// The same multiset read in another group of the same order.
    pub fn over(&self, group: &GroupTable) -> Result<Sequence> {
        if group.order() != self.group.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(Sequence {
            group: group.clone(),
            exponents: self.exponents.clone(),
        })
    }

    pub(crate) fn reach_table(&self, budget: u64) -> Result<ReachTable<'_>> {
        ReachTable::for_exponents(&self.group, &self.exponents, budget)
    }

    pub fn product_set(&self) -> Result<ProductSet> {
        self.product_set_within(DEFAULT_DP_BUDGET)
    }

    pub fn product_set_within(&self, budget: u64) -> Result<ProductSet> {
        Ok(ProductSet::from_mask(self.reach_table(budget)?.full()))
    }

    pub fn is_product_one(&self) -> Result<bool> {
        self.is_product_one_within(DEFAULT_DP_BUDGET)
    }

    pub fn is_product_one_within(&self, budget: u64) -> Result<bool> {
        Ok(self.reach_table(budget)?.full() & 1 == 1)
    }

    /// The lexicographically smallest product-one ordering, if the sequence is product-one.
    pub fn product_one_witness(&self) -> Result<Option<TermOrdering>> {
        self.product_one_witness_within(DEFAULT_DP_BUDGET)
    }

    pub fn product_one_witness_within(&self, budget: u64) -> Result<Option<TermOrdering>> {
        let t = self.reach_table(budget)?;
        Ok(t.smallest_ordering_to(0).map(|terms| {
            TermOrdering::new(terms.into_iter().map(ElementId::from_index).collect())
        }))
    }

    /// Pushes the sequence forward along `m`: `φ(g_1)·…·φ(g_ℓ)`.
    pub fn apply_map(&self, m: &GroupMap) -> Result<Sequence> {
        if self.group != m.source {
            return Err(Error::GroupMismatch);
        }
        let mut out = Sequence::empty(&m.target);
        for (g, &v) in self.exponents.iter().enumerate() {
            out.exponents[m.images[g].index()] += v;
        }
        Ok(out)
    }

    /// Every sub-multiset exactly once, in graded lexicographic order.
    pub fn sub_multisets(&self) -> impl Iterator<Item = Sequence> + '_ {
        (0..=self.len()).flat_map(move |k| {
            let mut out = Vec::new();
            let mut cur = vec![0u32; self.exponents.len()];
            sub_multisets_of_len(&self.exponents, 0, k, &mut cur, &mut |e| {
                out.push(Sequence {
                    group: self.group.clone(),
                    exponents: e.to_vec(),
                })
            });
            out.into_iter()
        })
    }
}

/// Calls `emit` for each sub-multiset of `bound` of size `k`, lexicographic in the term tuple.
fn sub_multisets_of_len(bound: &[u32], from: usize, k: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if k == 0 {
        emit(cur);
        return;
    }
    for g in from..bound.len() {
        if cur[g] < bound[g] {
            cur[g] += 1;
            // further terms are >= g; the next copy of g is allowed while multiplicity remains
            sub_multisets_of_len(bound, g, k - 1, cur, emit);
            cur[g] -= 1;
        }
    }
}
