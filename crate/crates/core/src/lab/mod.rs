//! Product-one-preserving bijections between groups.
//!
//! A bijection `φ: G₁ → G₂` extends letterwise to sequences. It is
//! *preserving at bound `m`* when, for every sequence `S` over `G₁` with
//! `|S| ≤ m`, `S` is product-one exactly when `φ(S)` is. Such a map induces
//! an isomorphism between the monoids of product-one sequences once `m`
//! reaches both large Davenport constants.
//!
//! # Checking through atoms
//!
//! Preservation at bound `m` holds iff every atom of `G₁` of length `≤ m`
//! maps to a product-one sequence and every atom of `G₂` of length `≤ m`
//! pulls back to one. One direction is immediate. For the other, a
//! product-one `S` with `|S| ≤ m` is a concatenation of atoms, each no longer
//! than `S`; their images are product-one, and so is their concatenation.
//! The same argument runs backwards through `φ⁻¹`.
//!
//! In particular, if `m ≥ max(D(G₁), D(G₂))` every atom of either group is
//! covered and `φ` preserves product-one sequences of every length.

mod assertions;
mod search;
mod theorem;

#[cfg(test)]
mod tests;

use crate::error::{Error, Result};
use crate::factor::{enumerate_atoms, AtomCatalog};
use crate::group::{ElementId, GroupMap, GroupTable};
use crate::seq::{Sequence, DEFAULT_DP_BUDGET};

pub use assertions::{
    check_assertions, AssertionOutcome, AssertionReport, Assertions, Classification, Counterexample, Status,
};
pub use search::{search_bijections, search_bijections_with, SearchOptions};
pub use theorem::{
    compare_invariants, compare_invariants_with, verify_theorem, verify_theorem_with, Comparison, InvariantRow,
    InvariantVerdict, TheoremRun, TheoremVerdict,
};

/// A bijection between two groups of equal order, with the largest length
/// at which preservation has been confirmed in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisBijection {
    pub map: GroupMap,
    pub verified_bound: usize,
}

impl BasisBijection {
    /// Wraps a bijective map; nothing is verified yet.
    pub fn new(map: GroupMap) -> Result<Self> {
        if !map.is_bijective() {
            return Err(Error::NotBijective);
        }
        Ok(BasisBijection { map, verified_bound: 0 })
    }

    pub fn source(&self) -> &GroupTable {
        &self.map.source
    }

    pub fn target(&self) -> &GroupTable {
        &self.map.target
    }

    pub fn images(&self) -> &[ElementId] {
        &self.map.images
    }

    /// `source-label -> target-label` pairs, for display.
    pub fn describe(&self) -> String {
        let (s, t) = (self.source(), self.target());
        s.elements()
            .map(|g| format!("{}->{}", s.name(g), t.name(self.map.apply(g))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The first atom of length `len` whose image under `map` is not product-one.
fn first_unpreserved(
    map: &GroupMap,
    catalog: &AtomCatalog,
    len: usize,
    dp_budget: u64,
) -> Result<Option<Vec<ElementId>>> {
    let t = &map.target;
    for atom in catalog.atoms_of_length(len) {
        let image: Vec<ElementId> = atom.witness.iter().map(|&g| map.apply(g)).collect();
        let forward = image.iter().fold(ElementId::IDENTITY, |acc, &x| t.multiply(acc, x));
        let backward = image.iter().rev().fold(ElementId::IDENTITY, |acc, &x| t.multiply(acc, x));
        if forward == ElementId::IDENTITY || backward == ElementId::IDENTITY {
            continue;
        }
        if !Sequence::from_terms(t, &image).is_product_one_within(dp_budget)? {
            return Ok(Some(atom.terms.clone()));
        }
    }
    Ok(None)
}

/// Preservation checker over two catalogs covering the bound.
pub(crate) struct Preservation<'a> {
    pub forward: &'a AtomCatalog,
    pub backward: &'a AtomCatalog,
    pub dp_budget: u64,
}

impl Preservation<'_> {
    fn require_cover(cat: &AtomCatalog, bound: usize) -> Result<()> {
        let need = bound.min(cat.group().order());
        if cat.covered_length() < need {
            return Err(Error::CatalogTooShort {
                have: cat.covered_length(),
                need,
            });
        }
        Ok(())
    }

    /// Checks lengths `from..=bound`, raising `*verified` after each
    /// completed length. Returns false at the first failing length.
    pub fn extend(&self, map: &GroupMap, from: usize, bound: usize, verified: &mut usize) -> Result<bool> {
        Self::require_cover(self.forward, bound)?;
        Self::require_cover(self.backward, bound)?;
        if self.forward.group() != &map.source || self.backward.group() != &map.target {
            return Err(Error::GroupMismatch);
        }
        let inverse = map.inverse_map()?;
        let top = bound.min(map.source.order().max(map.target.order()));
        for len in from.max(1)..=top {
            if first_unpreserved(map, self.forward, len, self.dp_budget)?.is_some()
                || first_unpreserved(&inverse, self.backward, len, self.dp_budget)?.is_some()
            {
                return Ok(false);
            }
            *verified = (*verified).max(len);
        }
        // no atoms beyond |G|, so longer lengths need no further work
        *verified = (*verified).max(bound);
        Ok(true)
    }

    pub fn holds(&self, map: &GroupMap, bound: usize) -> Result<bool> {
        let mut v = 0;
        self.extend(map, 1, bound, &mut v)
    }
}

/// Confirms product-one preservation in both directions for all sequences of
/// length at most `bound`, updating `b.verified_bound` as lengths complete.
pub fn verify_preserving(b: &mut BasisBijection, bound: usize) -> Result<bool> {
    let cap = |g: &GroupTable| bound.min(g.order());
    let forward = enumerate_atoms(b.source(), cap(b.source()))?;
    let backward = enumerate_atoms(b.target(), cap(b.target()))?;
    verify_preserving_with(b, bound, &forward, &backward, DEFAULT_DP_BUDGET)
}

/// [`verify_preserving`] against precomputed catalogs of source and target.
pub fn verify_preserving_with(
    b: &mut BasisBijection,
    bound: usize,
    source_atoms: &AtomCatalog,
    target_atoms: &AtomCatalog,
    dp_budget: u64,
) -> Result<bool> {
    if b.verified_bound >= bound {
        return Ok(true);
    }
    let check = Preservation {
        forward: source_atoms,
        backward: target_atoms,
        dp_budget,
    };
    let start = b.verified_bound + 1;
    check.extend(&b.map, start, bound, &mut b.verified_bound)
}

/// The same images viewed as a map into the opposite of the target group.
///
/// Reversing an ordering turns a product-one ordering over `G` into one over
/// `Gᵒᵖ`, so the two maps preserve exactly the same sequences and the
/// verified bound carries over.
pub fn opposite_transport(b: &BasisBijection) -> BasisBijection {
    BasisBijection {
        map: b.map.into_opposite_target(),
        verified_bound: b.verified_bound,
    }
}
