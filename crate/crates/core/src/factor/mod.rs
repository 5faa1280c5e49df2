//! The monoid of product-one sequences: atoms, the large Davenport constant,
//! factorizations, and sets of lengths.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::dp::ReachTable;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::seq::{Sequence, DEFAULT_DP_BUDGET};

pub mod cache;
mod enumerate;

pub use enumerate::{enumerate_atoms_with, EnumerateOptions};

/// A minimal product-one sequence, stored as its sorted terms together with
/// its lexicographically smallest product-one ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub terms: Vec<ElementId>,
    pub witness: Vec<ElementId>,
}

impl Atom {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sequence(&self, group: &GroupTable) -> Sequence {
        Sequence::from_terms(group, &self.terms)
    }

    pub fn exponents(&self, order: usize) -> Vec<u32> {
        let mut e = vec![0; order];
        for t in &self.terms {
            e[t.index()] += 1;
        }
        e
    }
}

/// All atoms of a group up to a length bound, grouped by length and sorted
/// lexicographically within each length.
#[derive(Clone, Debug)]
pub struct AtomCatalog {
    group: GroupTable,
    max_length: usize,
    exhaustive: bool,
    atoms_by_length: BTreeMap<usize, Vec<Atom>>,
}

impl AtomCatalog {
    pub(crate) fn from_atoms(group: GroupTable, max_length: usize, exhaustive: bool, atoms: Vec<Atom>) -> Self {
        let mut atoms_by_length: BTreeMap<usize, Vec<Atom>> = BTreeMap::new();
        for a in atoms {
            atoms_by_length.entry(a.len()).or_default().push(a);
        }
        for v in atoms_by_length.values_mut() {
            v.sort_by(|a, b| a.terms.cmp(&b.terms));
            v.dedup_by(|a, b| a.terms == b.terms);
        }
        AtomCatalog {
            group,
            max_length,
            exhaustive,
            atoms_by_length,
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// Whether the catalog contains every atom of the group. Atoms never
    /// exceed the group order, so an exhaustive catalog to length `|G|` is complete.
    pub fn is_complete(&self) -> bool {
        self.exhaustive && self.max_length >= self.group.order()
    }

    /// Longest length for which the catalog is known to list every atom.
    pub fn covered_length(&self) -> usize {
        if self.is_complete() {
            usize::MAX
        } else if self.exhaustive {
            self.max_length
        } else {
            0
        }
    }

    pub fn atoms_of_length(&self, len: usize) -> &[Atom] {
        self.atoms_by_length.get(&len).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All atoms, by length then lexicographically.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms_by_length.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.atoms_by_length.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `counts[k - 1]` = number of atoms of length `k`, for `k` up to the longest atom found.
    pub fn counts_by_length(&self) -> Vec<usize> {
        let longest = self.atoms_by_length.keys().next_back().copied().unwrap_or(0);
        (1..=longest).map(|k| self.atoms_of_length(k).len()).collect()
    }

    pub fn longest_atom(&self) -> usize {
        self.atoms_by_length.keys().next_back().copied().unwrap_or(0)
    }

    /// The large Davenport constant, when the catalog is complete.
    pub fn davenport(&self) -> Option<usize> {
        self.is_complete().then(|| self.longest_atom())
    }

    /// Restriction to atoms of length at most `max_length`.
    pub fn truncated(&self, max_length: usize) -> AtomCatalog {
        if max_length >= self.max_length {
            return self.clone();
        }
        AtomCatalog {
            group: self.group.clone(),
            max_length,
            exhaustive: self.exhaustive,
            atoms_by_length: self
                .atoms_by_length
                .range(..=max_length)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn contains(&self, s: &Sequence) -> bool {
        let terms = s.terms();
        self.atoms_of_length(terms.len())
            .binary_search_by(|a| a.terms.cmp(&terms))
            .is_ok()
    }
}

/// A set of factorization lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthSet {
    pub lengths: BTreeSet<usize>,
}

impl LengthSet {
    pub fn smallest(&self) -> Option<usize> {
        self.lengths.first().copied()
    }

    pub fn largest(&self) -> Option<usize> {
        self.lengths.last().copied()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.lengths.contains(&k)
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

impl FromIterator<usize> for LengthSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LengthSet {
            lengths: iter.into_iter().collect(),
        }
    }
}

impl std::fmt::Display for LengthSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The distinct sets of lengths of all product-one sequences up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSystem {
    pub bound: usize,
    pub sets: Vec<LengthSet>,
}

/// Monoid invariants that any isomorphism of product-one monoids preserves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// `atom_counts[k - 1]` = number of atoms of length `k`, for `k = 1..=davenport`.
    pub atom_counts: Vec<usize>,
    pub davenport: usize,
    /// Element orders of the abelianization, ascending.
    pub abelianization_profile: Vec<u32>,
}

/// Whether `s` is a nonempty product-one sequence with no split into two
/// nonempty product-one parts.
pub fn is_atom(s: &Sequence) -> Result<bool> {
    is_atom_within(s, DEFAULT_DP_BUDGET)
}

pub fn is_atom_within(s: &Sequence, budget: u64) -> Result<bool> {
    if s.is_empty() {
        return Ok(false);
    }
    let t = ReachTable::for_exponents(s.group(), s.exponents(), budget)?;
    Ok(t.is_product_one(t.full_index()) && !t.full_splits())
}

/// Every atom of length at most `max_length`, using default options.
pub fn enumerate_atoms(group: &GroupTable, max_length: usize) -> Result<AtomCatalog> {
    enumerate_atoms_with(group, max_length, EnumerateOptions::default())
}

/// The complete atom catalog (all atoms, which have length at most `|G|`).
pub fn complete_catalog(group: &GroupTable, opts: EnumerateOptions) -> Result<AtomCatalog> {
    enumerate_atoms_with(group, group.order(), opts)
}

/// Maximal length of an atom.
///
/// Atoms never exceed `|G|`: in a product-one ordering `g_1⋯g_ℓ` with
/// `ℓ > |G|`, two of the prefix products `p_0, …, p_{ℓ-1}` coincide, say
/// `p_i = p_j` with `i < j`, so `g_{i+1}⋯g_j` and the remaining terms are
/// both product-one. Searching lengths up to `|G|` is therefore exhaustive.
pub fn large_davenport(group: &GroupTable) -> Result<usize> {
    Ok(complete_catalog(group, EnumerateOptions::default())?.longest_atom())
}

fn check_catalog(catalog: &AtomCatalog, b: &Sequence) -> Result<()> {
    if catalog.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if catalog.covered_length() < b.len() {
        return Err(Error::CatalogTooShort {
            have: catalog.covered_length(),
            need: b.len(),
        });
    }
    if !b.is_product_one()? {
        return Err(Error::NotProductOne);
    }
    Ok(())
}

fn dividing_atoms<'c>(catalog: &'c AtomCatalog, b: &Sequence) -> Vec<(&'c Atom, Vec<u32>)> {
    let n = b.group().order();
    catalog
        .atoms()
        .take_while(|a| a.len() <= b.len())
        .map(|a| (a, a.exponents(n)))
        .filter(|(_, e)| e.iter().zip(b.exponents()).all(|(x, y)| x <= y))
        .collect()
}

/// All factorizations of `b` into atoms, each as a list of atoms in catalog order.
pub fn factorizations(b: &Sequence, catalog: &AtomCatalog) -> Result<Vec<Vec<Sequence>>> {
    check_catalog(catalog, b)?;
    let cands = dividing_atoms(catalog, b);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rest = b.exponents().to_vec();
    // Atoms are taken with non-increasing candidate index so each multiset of atoms appears once.
    fn rec(
        cands: &[(&Atom, Vec<u32>)],
        max: usize,
        rest: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.iter().all(|&v| v == 0) {
            out.push(chosen.clone());
            return;
        }
        for i in (0..max).rev() {
            let e = &cands[i].1;
            if e.iter().zip(rest.iter()).all(|(x, y)| x <= y) {
                rest.iter_mut().zip(e).for_each(|(r, x)| *r -= x);
                chosen.push(i);
                rec(cands, i + 1, rest, chosen, out);
                chosen.pop();
                rest.iter_mut().zip(e).for_each(|(r, x)| *r += x);
            }
        }
    }
    let mut found = Vec::new();
    rec(&cands, cands.len(), &mut rest, &mut chosen, &mut found);
    for f in found {
        out.push(f.into_iter().rev().map(|i| cands[i].0.sequence(b.group())).collect());
    }
    Ok(out)
}

/// Memoized sets of lengths over one group and catalog.
pub struct LengthOracle<'c> {
    catalog: &'c AtomCatalog,
    memo: HashMap<Vec<u32>, LengthSet>,
}

impl<'c> LengthOracle<'c> {
    pub fn new(catalog: &'c AtomCatalog) -> Self {
        LengthOracle {
            catalog,
            memo: HashMap::new(),
        }
    }

    /// `L(b)`; the empty sequence gets `{0}`.
    pub fn lengths(&mut self, b: &Sequence) -> Result<LengthSet> {
        check_catalog(self.catalog, b)?;
        let n = b.group().order();
        let cands: Vec<Vec<u32>> = dividing_atoms(self.catalog, b).into_iter().map(|(_, e)| e).collect();
        Ok(self.lengths_of(b.exponents().to_vec(), &cands, n))
    }

    fn lengths_of(&mut self, rest: Vec<u32>, cands: &[Vec<u32>], n: usize) -> LengthSet {
        if rest.iter().all(|&v| v == 0) {
            return LengthSet::from_iter([0]);
        }
        if let Some(l) = self.memo.get(&rest) {
            return l.clone();
        }
        // every factorization has exactly one atom holding a given copy of the smallest term
        let pivot = rest.iter().position(|&v| v > 0).unwrap();
        let mut out = BTreeSet::new();
        for e in cands {
            if e[pivot] > 0 && e.iter().zip(&rest).all(|(x, y)| x <= y) {
                let sub: Vec<u32> = rest.iter().zip(e).map(|(r, x)| r - x).collect();
                let l = self.lengths_of(sub, cands, n);
                out.extend(l.lengths.iter().map(|k| k + 1));
            }
        }
        let l = LengthSet { lengths: out };
        self.memo.insert(rest, l.clone());
        l
    }
}

/// `L(b)`: all `k` such that `b` is a product of `k` atoms.
pub fn set_of_lengths(b: &Sequence, catalog: &AtomCatalog) -> Result<LengthSet> {
    LengthOracle::new(catalog).lengths(b)
}

/// `{L(B) : B product-one, 1 <= |B| <= bound}`, deduplicated and sorted.
pub fn length_system(group: &GroupTable, bound: usize) -> Result<LengthSystem> {
    let catalog = enumerate_atoms(group, bound.min(group.order()))?;
    length_system_with(&catalog, bound)
}

pub fn length_system_with(catalog: &AtomCatalog, bound: usize) -> Result<LengthSystem> {
    if catalog.covered_length() < bound.min(catalog.group().order()) {
        return Err(Error::CatalogTooShort {
            have: catalog.covered_length(),
            need: bound,
        });
    }
    let group = catalog.group();
    let mut oracle = LengthOracle::new(catalog);
    let mut sets = BTreeSet::new();
    let mut err = None;
    for_each_multiset(group, bound, &mut |table: &ReachTable, exps: &[u32]| {
        if err.is_some() || !table.is_product_one(table.full_index()) {
            return;
        }
        let b = Sequence::from_exponents(group, exps.to_vec()).expect("sized to group");
        match oracle.lengths(&b) {
            Ok(l) => {
                sets.insert(l);
            }
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(LengthSystem {
        bound,
        sets: sets.into_iter().collect(),
    })
}

/// Visits every nonempty multiset of length at most `bound` in depth-first
/// canonical order, with its reach table.
pub(crate) fn for_each_multiset(
    group: &GroupTable,
    bound: usize,
    f: &mut dyn FnMut(&ReachTable, &[u32]),
) -> Result<()> {
    fn rec(
        table: &mut ReachTable,
        exps: &mut Vec<u32>,
        last: usize,
        bound: usize,
        f: &mut dyn FnMut(&ReachTable, &[u32]),
    ) -> Result<()> {
        if table.len() >= bound {
            return Ok(());
        }
        for g in last..exps.len() {
            table.push(g)?;
            exps[g] += 1;
            f(table, exps);
            rec(table, exps, g, bound, f)?;
            exps[g] -= 1;
            table.pop();
        }
        Ok(())
    }
    let mut table = ReachTable::new(group, DEFAULT_DP_BUDGET);
    let mut exps = vec![0; group.order()];
    rec(&mut table, &mut exps, 0, bound, f)
}

pub fn fingerprint(group: &GroupTable) -> Result<Fingerprint> {
    Ok(fingerprint_from_catalog(&complete_catalog(group, EnumerateOptions::default())?))
}

/// Fingerprint from an already complete catalog.
pub fn fingerprint_from_catalog(catalog: &AtomCatalog) -> Fingerprint {
    assert!(catalog.is_complete(), "fingerprint needs a complete catalog");
    Fingerprint {
        atom_counts: catalog.counts_by_length(),
        davenport: catalog.longest_atom(),
        abelianization_profile: catalog.group().abelianization().order_profile(),
    }
}
