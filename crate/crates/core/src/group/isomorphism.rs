//! Brute-force isomorphism search, used as the ground-truth oracle for the
//! isomorphism laboratory.

use super::{ElementId, GroupMap, GroupTable};

const UNSET: u8 = u8::MAX;

/// Greedy generating set: repeatedly adjoin the smallest element not yet generated.
fn generators(g: &GroupTable) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut generated = g.subgroup_generated([]);
    for x in g.elements() {
        if !generated.contains(&x) {
            gens.push(x);
            generated = g.subgroup_generated(gens.iter().copied());
        }
    }
    gens
}

/// Extends generator images to the subgroup they generate, returning `None`
/// if the assignment is inconsistent or non-injective.
fn extend(g1: &GroupTable, g2: &GroupTable, gens: &[ElementId], imgs: &[ElementId]) -> Option<Vec<u8>> {
    let mut map = vec![UNSET; g1.order()];
    let mut used = vec![false; g2.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gen, img) in gens.iter().zip(imgs) {
            let y = g1.mul_idx(x, gen.index());
            let fy = g2.mul_idx(map[x] as usize, img.index()) as u8;
            if map[y] == UNSET {
                if std::mem::replace(&mut used[fy as usize], true) {
                    return None;
                }
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Up to `limit` isomorphisms `g1 → g2`, in lexicographic order of generator images.
///
/// Empty exactly when the groups are not isomorphic.
pub fn find_group_isomorphisms(g1: &GroupTable, g2: &GroupTable, limit: usize) -> Vec<GroupMap> {
    let mut out = Vec::new();
    if limit == 0 || g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return out;
    }
    let gens = generators(g1);
    let mut imgs = Vec::with_capacity(gens.len());
    search(g1, g2, &gens, &mut imgs, limit, &mut out);
    out
}

fn search(
    g1: &GroupTable,
    g2: &GroupTable,
    gens: &[ElementId],
    imgs: &mut Vec<ElementId>,
    limit: usize,
    out: &mut Vec<GroupMap>,
) {
    let k = imgs.len();
    if k == gens.len() {
        if let Some(map) = extend(g1, g2, gens, imgs) {
            if map.iter().all(|&y| y != UNSET) {
                let m = GroupMap {
                    source: g1.clone(),
                    target: g2.clone(),
                    images: map.into_iter().map(ElementId).collect(),
                };
                debug_assert!(m.is_homomorphism());
                out.push(m);
            }
        }
        return;
    }
    let want = g1.order_of(gens[k]);
    for y in g2.elements().filter(|&y| g2.order_of(y) == want) {
        imgs.push(y);
        if extend(g1, g2, &gens[..=k], imgs).is_some() {
            search(g1, g2, gens, imgs, limit, out);
        }
        imgs.pop();
        if out.len() >= limit {
            return;
        }
    }
}

pub fn are_isomorphic(g1: &GroupTable, g2: &GroupTable) -> bool {
    !find_group_isomorphisms(g1, g2, 1).is_empty()
}
