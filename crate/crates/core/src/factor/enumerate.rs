//! Exhaustive atom enumeration over canonical (non-decreasing) multisets.
//!
//! The search walks multisets `g_1 <= g_2 <= …` depth-first, carrying a
//! [`ReachTable`] so each step only computes the states that contain the new
//! term. The identity only occurs in the length-one atom `(1)`; any longer
//! multiset containing it splits off `(1)`.
//!
//! In an abelian group a multiset with a nonempty zero-sum sub-multiset `T`
//! has no atom strictly above it (`A·T⁻¹` is zero-sum whenever `A` is), so
//! only zero-sum-free multisets are extended there. No such pruning is valid
//! in general: over a non-abelian group an atom may contain a product-one
//! sub-multiset whose complement is not product-one.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{Atom, AtomCatalog};
use crate::dp::ReachTable;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::par::{self, Parallelism};
use crate::seq::DEFAULT_DP_BUDGET;

/// Knobs for [`enumerate_atoms_with`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub parallelism: Parallelism,
    /// Cap on visited multisets; exceeding it yields [`Error::Incomplete`].
    pub node_budget: u64,
    pub dp_budget: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            parallelism: Parallelism::default(),
            node_budget: 2_000_000_000,
            dp_budget: DEFAULT_DP_BUDGET,
        }
    }
}

struct Shared<'a> {
    group: &'a GroupTable,
    abelian: bool,
    max_length: usize,
    nodes: AtomicU64,
    stopped: AtomicBool,
    node_budget: u64,
}

impl Shared<'_> {
    /// Counts one node; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.node_budget {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        !self.stopped.load(Ordering::Relaxed)
    }
}

/// Examines the multiset currently held in `table`; records it if it is an
/// atom and returns whether it may be extended.
fn visit(shared: &Shared, table: &ReachTable, out: &mut Vec<Atom>) -> bool {
    let full = table.full_index();
    if shared.abelian {
        // states containing the newest term are the top block
        let w = *table.weights().last().unwrap();
        let zero_sum_inside = (full + 1 - w..full).any(|t| table.is_product_one(t));
        if table.is_product_one(full) && !zero_sum_inside {
            out.push(atom_from(table));
        }
        return !zero_sum_inside && !table.is_product_one(full);
    }
    if table.is_product_one(full) && !table.full_splits() {
        out.push(atom_from(table));
    }
    true
}

fn atom_from(table: &ReachTable) -> Atom {
    let mut terms = Vec::with_capacity(table.len());
    for (&g, &m) in table.support().iter().zip(table.multiplicities()) {
        terms.extend(std::iter::repeat(ElementId::from_index(g)).take(m as usize));
    }
    let witness = table
        .smallest_ordering_to(0)
        .expect("atoms are product-one")
        .into_iter()
        .map(ElementId::from_index)
        .collect();
    Atom { terms, witness }
}

fn dfs(shared: &Shared, table: &mut ReachTable, last: usize, out: &mut Vec<Atom>) -> Result<()> {
    if table.len() >= shared.max_length {
        return Ok(());
    }
    for g in last..shared.group.order() {
        if !shared.tick() {
            return Ok(());
        }
        table.push(g)?;
        if visit(shared, table, out) {
            dfs(shared, table, g, out)?;
        }
        table.pop();
    }
    Ok(())
}

pub fn enumerate_atoms_with(group: &GroupTable, max_length: usize, opts: EnumerateOptions) -> Result<AtomCatalog> {
    let n = group.order();
    let shared = Shared {
        group,
        abelian: group.is_abelian(),
        max_length,
        nodes: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
        node_budget: opts.node_budget,
    };
    let mut atoms = Vec::new();
    if max_length >= 1 {
        atoms.push(Atom {
            terms: vec![ElementId::IDENTITY],
            witness: vec![ElementId::IDENTITY],
        });
    }
    // Length-one and length-two prefixes seed independent subtrees.
    let mut seeds = Vec::new();
    if max_length >= 2 {
        for a in 1..n {
            let mut table = ReachTable::new(group, opts.dp_budget);
            table.push(a)?;
            if !visit(&shared, &table, &mut atoms) {
                continue;
            }
            for b in a..n {
                seeds.push((a, b));
            }
        }
    }
    let parts = par::try_map(opts.parallelism, &seeds, |&(a, b)| -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        if !shared.tick() {
            return Ok(out);
        }
        let mut table = ReachTable::new(group, opts.dp_budget);
        table.push(a)?;
        table.push(b)?;
        if visit(&shared, &table, &mut out) {
            dfs(&shared, &mut table, b, &mut out)?;
        }
        Ok(out)
    })?;
    atoms.extend(parts.into_iter().flatten());
    let exhaustive = !shared.stopped.load(Ordering::Relaxed);
    let catalog = AtomCatalog::from_atoms(group.clone(), max_length, exhaustive, atoms);
    if exhaustive {
        Ok(catalog)
    } else {
        Err(Error::Incomplete {
            nodes: shared.nodes.load(Ordering::Relaxed),
            partial: Box::new(catalog),
        })
    }
}
