//! Backtracking search for preserving bijections.
//!
//! Domain elements are assigned in increasing index order. A partial
//! assignment is abandoned as soon as it contradicts a consequence of
//! preservation at the requested bound that only involves assigned elements:
//!
//! - `g^[k]` is product-one iff `ord(g) | k`, so for `k ≤ bound` the
//!   divisibility `ord(g) | k` must agree with `ord(φ(g)) | k`;
//! - with bound `≥ 2`, `a·b` is product-one iff `b = a⁻¹`;
//! - with bound `≥ 3`, `a·b·c` is product-one iff `abc = 1` or `acb = 1`
//!   (the other orderings are rotations of these two).
//!
//! Complete assignments are then checked against the atom catalogs.

use super::{BasisBijection, Preservation};
use crate::error::Result;
use crate::factor::{enumerate_atoms_with, AtomCatalog, EnumerateOptions};
use crate::group::{ElementId, GroupMap, GroupTable};
use crate::par::{self, Parallelism};
use crate::seq::DEFAULT_DP_BUDGET;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub parallelism: Parallelism,
    pub dp_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            parallelism: Parallelism::default(),
            dp_budget: DEFAULT_DP_BUDGET,
        }
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    g1: &'a GroupTable,
    g2: &'a GroupTable,
    bound: usize,
    check: Preservation<'a>,
}

fn triple_is_product_one(g: &GroupTable, a: usize, b: usize, c: usize) -> bool {
    g.mul_idx(g.mul_idx(a, b), c) == 0 || g.mul_idx(g.mul_idx(a, c), b) == 0
}

impl Search<'_> {
    fn orders_agree(&self, x: usize, y: usize) -> bool {
        let o1 = self.g1.order_of(ElementId::from_index(x)) as usize;
        let o2 = self.g2.order_of(ElementId::from_index(y)) as usize;
        (1..=self.bound.min(o1.max(o2))).all(|k| (k % o1 == 0) == (k % o2 == 0))
    }

    /// Whether `x ↦ y` is consistent with the assignments in `img`.
    fn compatible(&self, img: &[usize], x: usize, y: usize) -> bool {
        if !self.orders_agree(x, y) {
            return false;
        }
        let (g1, g2) = (self.g1, self.g2);
        let assigned = |a: usize| if a == x { y } else { img[a] };
        if self.bound >= 2 {
            let xi = g1.inv_idx(x);
            if img[xi] != UNSET && img[xi] != g2.inv_idx(y) {
                return false;
            }
            if xi != x && img.contains(&g2.inv_idx(y)) && img[xi] == UNSET {
                return false;
            }
        }
        if self.bound >= 3 {
            let known: Vec<usize> = (0..g1.order()).filter(|&a| a == x || img[a] != UNSET).collect();
            for (i, &a) in known.iter().enumerate() {
                for &c in &known[i..] {
                    let left = triple_is_product_one(g1, x, a, c);
                    let right = triple_is_product_one(g2, y, assigned(a), assigned(c));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dfs(&self, img: &mut Vec<usize>, used: &mut Vec<bool>, x: usize, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let n = self.g1.order();
        if x == n {
            let map = self.to_map(img);
            if self.check.holds(&map, self.bound)? {
                out.push(img.clone());
            }
            return Ok(());
        }
        for y in 1..n {
            if used[y] || !self.compatible(img, x, y) {
                continue;
            }
            img[x] = y;
            used[y] = true;
            self.dfs(img, used, x + 1, out)?;
            used[y] = false;
            img[x] = UNSET;
        }
        Ok(())
    }

    fn to_map(&self, img: &[usize]) -> GroupMap {
        GroupMap {
            source: self.g1.clone(),
            target: self.g2.clone(),
            images: img.iter().map(|&y| ElementId::from_index(y)).collect(),
        }
    }
}

/// Every bijection `G1 → G2` preserving product-one sequences of length at
/// most `bound` in both directions, sorted by image tuple.
pub fn search_bijections(g1: &GroupTable, g2: &GroupTable, bound: usize) -> Result<Vec<BasisBijection>> {
    if g1.order() != g2.order() {
        return Ok(Vec::new());
    }
    let opts = EnumerateOptions::default();
    let cat1 = enumerate_atoms_with(g1, bound.min(g1.order()), opts)?;
    let cat2 = enumerate_atoms_with(g2, bound.min(g2.order()), opts)?;
    search_bijections_with(&cat1, &cat2, bound, SearchOptions::default())
}

/// [`search_bijections`] over catalogs that cover `bound` (or are complete).
pub fn search_bijections_with(
    cat1: &AtomCatalog,
    cat2: &AtomCatalog,
    bound: usize,
    opts: SearchOptions,
) -> Result<Vec<BasisBijection>> {
    let (g1, g2) = (cat1.group(), cat2.group());
    let n = g1.order();
    if n != g2.order() {
        return Ok(Vec::new());
    }
    let search = Search {
        g1,
        g2,
        bound,
        check: Preservation {
            forward: cat1,
            backward: cat2,
            dp_budget: opts.dp_budget,
        },
    };
    let mut img = vec![UNSET; n];
    img[0] = 0;
    let mut found = Vec::new();
    if n == 1 {
        search.dfs(&mut img, &mut vec![true], 1, &mut found)?;
    } else {
        let first: Vec<usize> = (1..n).filter(|&y| search.compatible(&img, 1, y)).collect();
        let parts = par::try_map(opts.parallelism, &first, |&y| -> Result<Vec<Vec<usize>>> {
            let mut img = img.clone();
            let mut used = vec![false; n];
            used[0] = true;
            img[1] = y;
            used[y] = true;
            let mut out = Vec::new();
            search.dfs(&mut img, &mut used, 2, &mut out)?;
            Ok(out)
        })?;
        found = parts.into_iter().flatten().collect();
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|img| BasisBijection {
            map: search.to_map(&img),
            verified_bound: bound,
        })
        .collect())
}
