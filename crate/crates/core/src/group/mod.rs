//! Finite groups stored as Cayley tables.
//!
//! Every [`GroupTable`] is validated on construction (identity at index 0,
//! Latin square, associativity) and immutable afterwards. Cloning is cheap:
//! the table data sits behind an `Arc`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

mod families;
mod isomorphism;
mod spec;

pub use families::{alternating, cyclic, dicyclic, dihedral, direct_product, symmetric};
pub use isomorphism::{are_isomorphic, find_group_isomorphisms};
pub use spec::{from_table_text, parse_group_spec, to_table_text};

/// Largest supported group order. Subsets of a group are `u128` bit masks.
pub const MAX_ORDER: usize = 128;

/// A set of group elements, bit `i` standing for element `i`.
pub type ElemMask = u128;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u8);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        debug_assert!(i < MAX_ORDER);
        ElementId(i as u8)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct TableData {
    order: usize,
    /// Row-major: `cells[a * order + b] = a·b`.
    cells: Vec<u8>,
    inverse: Vec<u8>,
    element_order: Vec<u32>,
    names: Vec<String>,
    aliases: Vec<(String, u8)>,
    /// Right multiplication of masks, four elements at a time:
    /// `nibbles[(h * chunks + c) * 16 + bits]`.
    nibbles: Vec<ElemMask>,
    chunks: usize,
}

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone)]
pub struct GroupTable {
    data: Arc<TableData>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.order == other.data.order && self.data.cells == other.data.cells)
    }
}

impl Eq for GroupTable {}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order())
            .field("names", &self.data.names)
            .finish()
    }
}

impl GroupTable {
    /// Builds a group from a square table of element indices.
    ///
    /// If the identity is not already at index 0, elements are relabeled by
    /// swapping the identity with element 0 (names follow their elements).
    pub fn from_rows(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Table("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Table(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::Table(format!("cell ({r}, {c}) holds {v}, outside 0..{n}")));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for (c, &v) in row.iter().enumerate() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatin(format!("row {r} repeats {v} at column {c}")));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for (r, row) in rows.iter().enumerate() {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(Error::NotLatin(format!("column {c} repeats {} at row {r}", row[c])));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(Error::NoIdentity)?;

        let mut names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if names.len() != n {
            return Err(Error::Table(format!("{} names for {n} elements", names.len())));
        }
        // swap labels e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u8;
            }
        }
        names.swap(0, e);

        for a in 0..n {
            for b in 0..n {
                let ab = cells[a * n + b] as usize;
                for c in 0..n {
                    let left = cells[ab * n + c] as usize;
                    let right = cells[a * n + cells[b * n + c] as usize] as usize;
                    if left != right {
                        return Err(Error::NotAssociative { a, b, c, left, right });
                    }
                }
            }
        }
        Ok(Self::from_validated(n, cells, names, Vec::new()))
    }

    /// Assembles a group from cells already known to form a group with identity 0.
    pub(crate) fn from_validated(
        n: usize,
        cells: Vec<u8>,
        names: Vec<String>,
        aliases: Vec<(String, u8)>,
    ) -> Self {
        let mut inverse = vec![0u8; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| cells[a * n + b] == 0).expect("Latin square") as u8;
        }
        let element_order = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = cells[x * n + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let chunks = n.div_ceil(4);
        let mut nibbles = vec![0; n * chunks * 16];
        for h in 0..n {
            for c in 0..chunks {
                for bits in 0..16usize {
                    let mut m: ElemMask = 0;
                    for i in 0..4 {
                        let x = 4 * c + i;
                        if bits >> i & 1 == 1 && x < n {
                            m |= 1 << cells[x * n + h];
                        }
                    }
                    nibbles[(h * chunks + c) * 16 + bits] = m;
                }
            }
        }
        GroupTable {
            data: Arc::new(TableData {
                order: n,
                cells,
                inverse,
                element_order,
                names,
                aliases,
                nibbles,
                chunks,
            }),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order()).map(ElementId::from_index)
    }

    #[inline]
    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.data.cells[a.index() * self.data.order + b.index()])
    }

    /// Raw index form of [`multiply`](Self::multiply) for inner loops.
    #[inline]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.data.cells[a * self.data.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        ElementId(self.data.inverse[a.index()])
    }

    #[inline]
    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        self.data.inverse[a] as usize
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    #[inline]
    pub fn order_of(&self, a: ElementId) -> u32 {
        self.data.element_order[a.index()]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: ElementId, k: i64) -> ElementId {
        let m = self.order_of(a) as i64;
        let k = k.rem_euclid(m);
        let mut x = ElementId::IDENTITY;
        for _ in 0..k {
            x = self.multiply(x, a);
        }
        x
    }

    /// `{x·h : x ∈ mask}`.
    #[inline]
    pub fn mul_mask(&self, mask: ElemMask, h: usize) -> ElemMask {
        let d = &*self.data;
        let base = h * d.chunks * 16;
        let mut out = 0;
        let mut m = mask;
        let mut c = base;
        while m != 0 {
            let bits = (m & 15) as usize;
            if bits != 0 {
                out |= d.nibbles[c + bits];
            }
            m >>= 4;
            c += 16;
        }
        out
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    /// Multiset of element orders, sorted ascending.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v = self.data.element_order.clone();
        v.sort_unstable();
        v
    }

    pub fn name(&self, a: ElementId) -> &str {
        &self.data.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    /// Resolves an element label: display names first, then aliases, then decimal indices.
    pub fn element_by_label(&self, label: &str) -> Option<ElementId> {
        let d = &*self.data;
        if let Some(i) = d.names.iter().position(|s| s == label) {
            return Some(ElementId::from_index(i));
        }
        if let Some((_, i)) = d.aliases.iter().find(|(s, _)| s == label) {
            return Some(ElementId(*i));
        }
        if matches!(label, "1" | "e" | "id") {
            return Some(ElementId::IDENTITY);
        }
        label
            .parse::<usize>()
            .ok()
            .filter(|&i| i < d.order)
            .map(ElementId::from_index)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.mul_idx(a, b)).collect()).collect()
    }

    /// Hex SHA-256 of the order and the table cells. Relabeled copies of a
    /// group hash differently.
    pub fn table_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order() as u32).to_le_bytes());
        h.update(&self.data.cells);
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The group with the same elements and `a ·op b = b · a`.
    pub fn opposite(&self) -> GroupTable {
        let n = self.order();
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[a * n + b] = self.data.cells[b * n + a];
            }
        }
        GroupTable::from_validated(n, cells, self.data.names.clone(), self.data.aliases.clone())
    }

    /// Closure of `generators` under multiplication (and hence inverses, the group being finite).
    pub fn subgroup_generated(&self, generators: impl IntoIterator<Item = ElementId>) -> BTreeSet<ElementId> {
        let mut members: BTreeSet<ElementId> = BTreeSet::from([ElementId::IDENTITY]);
        let gens: Vec<ElementId> = generators.into_iter().collect();
        let mut work: Vec<ElementId> = vec![ElementId::IDENTITY];
        while let Some(x) = work.pop() {
            for &g in &gens {
                let y = self.multiply(x, g);
                if members.insert(y) {
                    work.push(y);
                }
            }
        }
        members
    }

    /// `aba⁻¹b⁻¹`.
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        let ab = self.multiply(a, b);
        let abai = self.multiply(ab, self.inverse(a));
        self.multiply(abai, self.inverse(b))
    }

    pub fn commutator_subgroup(&self) -> BTreeSet<ElementId> {
        let comms: BTreeSet<ElementId> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(comms)
    }

    /// `G/G'` on coset representatives (smallest index in each coset).
    pub fn abelianization(&self) -> GroupTable {
        let derived: Vec<ElementId> = self.commutator_subgroup().into_iter().collect();
        self.quotient_by_normal(&derived)
    }

    fn quotient_by_normal(&self, normal: &[ElementId]) -> GroupTable {
        let n = self.order();
        let rep_of: Vec<usize> = (0..n)
            .map(|x| normal.iter().map(|k| self.mul_idx(x, k.index())).min().unwrap())
            .collect();
        let mut reps: Vec<usize> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let q = reps.len();
        let pos = |x: usize| reps.binary_search(&rep_of[x]).unwrap();
        let mut cells = vec![0u8; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                cells[i * q + j] = pos(self.mul_idx(a, b)) as u8;
            }
        }
        let names = reps.iter().map(|&r| self.data.names[r].clone()).collect();
        GroupTable::from_validated(q, cells, names, Vec::new())
    }

    /// Invariant factors `d1 | d2 | ...` of an abelian group (empty for the trivial group).
    ///
    /// Returns `None` when the group is not abelian.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order() as u64;
        let mut primary: Vec<Vec<u64>> = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                while rest % p == 0 {
                    rest /= p;
                }
                // c_k = #{x : x^(p^k) = 1}; each factor of exponent >= k contributes p to c_k / c_{k-1}
                let mut exps = Vec::new();
                let mut prev = 1u64;
                let mut pk = p;
                loop {
                    let ck = self
                        .elements()
                        .filter(|&x| (pk % self.order_of(x) as u64) == 0)
                        .count() as u64;
                    if ck == prev {
                        break;
                    }
                    let mut ratio = ck / prev;
                    let mut factors = 0;
                    while ratio > 1 {
                        ratio /= p;
                        factors += 1;
                    }
                    exps.push(factors);
                    prev = ck;
                    pk *= p;
                }
                // exps[k-1] = number of cyclic p-factors of exponent >= k
                let mut powers = Vec::new();
                for (k, &cnt) in exps.iter().enumerate() {
                    let next = exps.get(k + 1).copied().unwrap_or(0);
                    for _ in 0..(cnt - next) {
                        powers.push(p.pow(k as u32 + 1));
                    }
                }
                powers.sort_unstable_by(|a, b| b.cmp(a));
                primary.push(powers);
            }
            p += 1;
        }
        let width = primary.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..width)
            .map(|i| primary.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product())
            .collect();
        factors.reverse();
        Some(factors)
    }

    /// Short structural description, e.g. `C2xC2` for an abelian group or `nonabelian(6)`.
    pub fn structure_label(&self) -> String {
        match self.abelian_invariants() {
            Some(f) if f.is_empty() => "C1".to_string(),
            Some(f) => f.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x"),
            None => format!("nonabelian({})", self.order()),
        }
    }
}

/// A map between the element sets of two groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub source: GroupTable,
    pub target: GroupTable,
    pub images: Vec<ElementId>,
}

impl GroupMap {
    pub fn new(source: GroupTable, target: GroupTable, images: Vec<ElementId>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|x| x.index() >= target.order()) {
            return Err(Error::Precondition("map images do not fit source and target".into()));
        }
        Ok(GroupMap { source, target, images })
    }

    pub fn identity(g: &GroupTable) -> Self {
        GroupMap {
            source: g.clone(),
            target: g.clone(),
            images: g.elements().collect(),
        }
    }

    /// `g ↦ g⁻¹` from `g` to `opposite(g)`.
    pub fn inversion_into_opposite(g: &GroupTable) -> Self {
        GroupMap {
            source: g.clone(),
            target: g.opposite(),
            images: g.elements().map(|x| g.inverse(x)).collect(),
        }
    }

    /// `g ↦ g⁻¹` from `g` to itself.
    pub fn inversion(g: &GroupTable) -> Self {
        GroupMap {
            source: g.clone(),
            target: g.clone(),
            images: g.elements().map(|x| g.inverse(x)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.images[a.index()]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|x| !std::mem::replace(&mut seen[x.index()], true))
    }

    pub fn inverse_map(&self) -> Result<GroupMap> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut images = vec![ElementId::IDENTITY; self.target.order()];
        for (i, y) in self.images.iter().enumerate() {
            images[y.index()] = ElementId::from_index(i);
        }
        Ok(GroupMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }

    /// `φ(ab) = φ(a)φ(b)` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements().all(|a| {
            s.elements()
                .all(|b| self.apply(s.multiply(a, b)) == t.multiply(self.apply(a), self.apply(b)))
        })
    }

    /// `φ(ab) = φ(b)φ(a)` for all pairs.
    pub fn is_anti_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements().all(|a| {
            s.elements()
                .all(|b| self.apply(s.multiply(a, b)) == t.multiply(self.apply(b), self.apply(a)))
        })
    }

    /// Same images, viewed as a map into the opposite of the target.
    pub fn into_opposite_target(&self) -> GroupMap {
        GroupMap {
            source: self.source.clone(),
            target: self.target.opposite(),
            images: self.images.clone(),
        }
    }
}
