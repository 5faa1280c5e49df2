//! Brute-force oracles shared by the integration tests. None of them use the
//! library's product-set tables or atom search; they only multiply elements.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use prodone::group::{alternating, cyclic, dicyclic, dihedral, direct_product, symmetric};
use prodone::{ElementId, GroupTable};

/// The twenty groups used for exhaustive verification, with display names.
pub fn catalog() -> Vec<(&'static str, GroupTable)> {
    let c = |n| cyclic(n).unwrap();
    let x = |a: &GroupTable, b: &GroupTable| direct_product(a, b).unwrap();
    vec![
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", x(&c(2), &c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", symmetric(3).unwrap()),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", x(&c(4), &c(2))),
        ("C2xC2xC2", x(&x(&c(2), &c(2)), &c(2))),
        ("D8", dihedral(8).unwrap()),
        ("Q8", dicyclic(8).unwrap()),
        ("C9", c(9)),
        ("C3xC3", x(&c(3), &c(3))),
        ("D10", dihedral(10).unwrap()),
        ("C12", c(12)),
        ("D12", dihedral(12).unwrap()),
        ("Dic12", dicyclic(12).unwrap()),
        ("A4", alternating(4).unwrap()),
    ]
}

pub fn group(name: &str) -> GroupTable {
    catalog().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// Terms of the multiset with exponent vector `exps`, in index order.
pub fn terms_of(exps: &[u32]) -> Vec<ElementId> {
    exps.iter()
        .enumerate()
        .flat_map(|(g, &m)| std::iter::repeat(ElementId::from_index(g)).take(m as usize))
        .collect()
}

/// Products of all orderings, walking distinct permutations of the multiset.
pub fn naive_products(g: &GroupTable, terms: &[ElementId]) -> BTreeSet<ElementId> {
    fn rec(g: &GroupTable, counts: &mut Vec<(ElementId, u32)>, left: usize, acc: ElementId, out: &mut BTreeSet<ElementId>) {
        if left == 0 {
            out.insert(acc);
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            let x = counts[i].0;
            rec(g, counts, left - 1, g.multiply(acc, x), out);
            counts[i].1 += 1;
        }
    }
    let mut counts: Vec<(ElementId, u32)> = Vec::new();
    let mut sorted = terms.to_vec();
    sorted.sort();
    for t in sorted {
        match counts.last_mut() {
            Some((x, m)) if *x == t => *m += 1,
            _ => counts.push((t, 1)),
        }
    }
    let mut out = BTreeSet::new();
    rec(g, &mut counts, terms.len(), ElementId::IDENTITY, &mut out);
    out
}

/// Memoized brute-force predicates over exponent vectors.
pub struct Naive<'g> {
    pub group: &'g GroupTable,
    po: HashMap<Vec<u32>, bool>,
    atom: HashMap<Vec<u32>, bool>,
    lengths: HashMap<Vec<u32>, BTreeSet<usize>>,
}

impl<'g> Naive<'g> {
    pub fn new(group: &'g GroupTable) -> Self {
        Naive {
            group,
            po: HashMap::new(),
            atom: HashMap::new(),
            lengths: HashMap::new(),
        }
    }

    pub fn product_one(&mut self, exps: &[u32]) -> bool {
        if let Some(&v) = self.po.get(exps) {
            return v;
        }
        let v = naive_products(self.group, &terms_of(exps)).contains(&ElementId::IDENTITY);
        self.po.insert(exps.to_vec(), v);
        v
    }

    /// Nonempty, product-one, and no split into two nonempty product-one parts.
    pub fn is_atom(&mut self, exps: &[u32]) -> bool {
        if let Some(&v) = self.atom.get(exps) {
            return v;
        }
        let len: u32 = exps.iter().sum();
        let v = len > 0
            && self.product_one(exps)
            && !proper_parts(exps).into_iter().any(|t| {
                let rest = minus(exps, &t);
                self.product_one(&t) && self.product_one(&rest)
            });
        self.atom.insert(exps.to_vec(), v);
        v
    }

    /// Every length of a factorization, by peeling off each atom divisor in turn.
    pub fn lengths(&mut self, exps: &[u32]) -> BTreeSet<usize> {
        if exps.iter().all(|&v| v == 0) {
            return BTreeSet::from([0]);
        }
        if let Some(v) = self.lengths.get(exps) {
            return v.clone();
        }
        let mut out = BTreeSet::new();
        let mut parts = proper_parts(exps);
        parts.push(exps.to_vec());
        for t in parts {
            if !self.is_atom(&t) {
                continue;
            }
            let rest = minus(exps, &t);
            if self.product_one(&rest) {
                out.extend(self.lengths(&rest).into_iter().map(|k| k + 1));
            }
        }
        self.lengths.insert(exps.to_vec(), out.clone());
        out
    }
}

pub fn minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sub-multisets other than the empty one and the whole.
pub fn proper_parts(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for &v in exps {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=v).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    let total: u32 = exps.iter().sum();
    out.retain(|p| {
        let s: u32 = p.iter().sum();
        s > 0 && s < total
    });
    out
}

/// Exponent vectors of all multisets of exactly `len` elements over `n` elements.
pub fn multisets(n: usize, len: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, from: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for g in from..n {
            cur[g] += 1;
            rec(n, g, left - 1, cur, out);
            cur[g] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 0, len, &mut vec![0; n], &mut out);
    out
}
