use super::*;
use crate::group::{cyclic, dicyclic, dihedral, direct_product, find_group_isomorphisms, symmetric};

fn klein() -> GroupTable {
    direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap()
}

/// Product-one by trying every ordering.
fn brute_po(g: &GroupTable, terms: &mut Vec<ElementId>, acc: ElementId) -> bool {
    if terms.is_empty() {
        return acc == ElementId::IDENTITY;
    }
    for i in 0..terms.len() {
        if terms[..i].contains(&terms[i]) {
            continue;
        }
        let x = terms.remove(i);
        let hit = brute_po(g, terms, g.multiply(acc, x));
        terms.insert(i, x);
        if hit {
            return true;
        }
    }
    false
}

fn multisets(n: usize, len: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for x in from..n {
        cur.push(x);
        multisets(n, len, x, cur, f);
        cur.pop();
    }
}

/// Checks `S ∈ B(G₁) ⟺ φ(S) ∈ B(G₂)` over every sequence with `lo ≤ |S| ≤ hi`.
fn literal_preserving(map: &GroupMap, lo: usize, hi: usize, brute: bool) -> bool {
    let (s, t) = (&map.source, &map.target);
    let mut ok = true;
    for len in lo..=hi {
        multisets(s.order(), len, 0, &mut Vec::new(), &mut |xs| {
            if !ok {
                return;
            }
            let src: Vec<ElementId> = xs.iter().map(|&x| ElementId::from_index(x)).collect();
            let dst: Vec<ElementId> = src.iter().map(|&x| map.apply(x)).collect();
            let (a, b) = if brute {
                (
                    brute_po(s, &mut src.clone(), ElementId::IDENTITY),
                    brute_po(t, &mut dst.clone(), ElementId::IDENTITY),
                )
            } else {
                (
                    Sequence::from_terms(s, &src).is_product_one().unwrap(),
                    Sequence::from_terms(t, &dst).is_product_one().unwrap(),
                )
            };
            ok = a == b;
        });
    }
    ok
}

fn all_bijections(g1: &GroupTable, g2: &GroupTable) -> Vec<GroupMap> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                cur.push(y);
                rec(n, cur, used, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(g1.order(), &mut Vec::new(), &mut vec![false; g1.order()], &mut out);
    out.into_iter()
        .map(|img| GroupMap::new(g1.clone(), g2.clone(), img.into_iter().map(ElementId::from_index).collect()).unwrap())
        .collect()
}

fn bij(map: GroupMap) -> BasisBijection {
    BasisBijection::new(map).unwrap()
}

#[test]
fn identity_and_isomorphisms_preserve() {
    for g in [symmetric(3).unwrap(), dicyclic(8).unwrap(), cyclic(5).unwrap()] {
        for bound in [1, 3, 6] {
            assert!(verify_preserving(&mut bij(GroupMap::identity(&g)), bound).unwrap());
        }
    }
    let d6 = dihedral(6).unwrap();
    let s3 = symmetric(3).unwrap();
    for m in find_group_isomorphisms(&d6, &s3, usize::MAX) {
        let mut b = bij(m);
        assert!(verify_preserving(&mut b, 6).unwrap());
        assert_eq!(b.verified_bound, 6);
    }
}

#[test]
fn inversion_preserves_on_s3() {
    let g = symmetric(3).unwrap();
    let inv = GroupMap::inversion(&g);
    assert!(!inv.is_homomorphism());
    assert!(literal_preserving(&inv, 1, 3, true));
    assert!(verify_preserving(&mut bij(inv), 3).unwrap());
}

#[test]
fn atom_check_matches_literal_check() {
    // every bijection of S3, at bounds 1 to 4
    let g = symmetric(3).unwrap();
    for map in all_bijections(&g, &g) {
        for bound in 1..=4 {
            let mut b = bij(map.clone());
            assert_eq!(
                verify_preserving(&mut b, bound).unwrap(),
                literal_preserving(&map, 1, bound, true),
                "{} at {bound}",
                b.describe()
            );
        }
    }
}

#[test]
fn verified_bound_stops_at_first_failure() {
    let g = cyclic(5).unwrap();
    // g ↔ g^2 and g^4 ↔ g^3 keep inverse pairs, but g·g^2·g^2 maps to g^2·g·g
    let images = [0, 2, 1, 4, 3].map(ElementId::from_index).to_vec();
    let mut b = bij(GroupMap::new(g.clone(), g.clone(), images).unwrap());
    assert!(!verify_preserving(&mut b, 5).unwrap());
    assert_eq!(b.verified_bound, 2);
    assert!(verify_preserving(&mut b, 2).unwrap());
}

#[test]
fn search_matches_brute_force() {
    let cases = [
        (symmetric(3).unwrap(), symmetric(3).unwrap(), 3),
        (symmetric(3).unwrap(), symmetric(3).unwrap(), 4),
        (cyclic(6).unwrap(), symmetric(3).unwrap(), 3),
        (cyclic(4).unwrap(), cyclic(4).unwrap(), 4),
        (cyclic(5).unwrap(), cyclic(5).unwrap(), 2),
        (cyclic(4).unwrap(), klein(), 2),
    ];
    for (g1, g2, bound) in cases {
        let want: Vec<Vec<ElementId>> = all_bijections(&g1, &g2)
            .into_iter()
            .filter(|m| literal_preserving(m, 1, bound, false))
            .map(|m| m.images)
            .collect();
        let got: Vec<Vec<ElementId>> = search_bijections(&g1, &g2, bound)
            .unwrap()
            .into_iter()
            .map(|b| b.map.images)
            .collect();
        assert_eq!(got, want, "bound {bound}");
    }
}

#[test]
fn search_examples() {
    let s3 = symmetric(3).unwrap();
    let found = search_bijections(&s3, &s3, 4).unwrap();
    assert_eq!(found.len(), 12);
    let reports: Vec<_> = found.iter().map(|b| check_assertions(b).unwrap()).collect();
    let isos = reports.iter().filter(|r| r.classification == Classification::Isomorphism).count();
    let antis = reports.iter().filter(|r| r.classification == Classification::AntiIsomorphism).count();
    assert_eq!((isos, antis), (6, 6));
    assert_eq!(isos, find_group_isomorphisms(&s3, &s3, usize::MAX).len());

    assert!(search_bijections(&cyclic(4).unwrap(), &klein(), 4).unwrap().is_empty());
    assert!(search_bijections(&dihedral(8).unwrap(), &dicyclic(8).unwrap(), 6).unwrap().is_empty());
    assert!(search_bijections(&cyclic(4).unwrap(), &cyclic(5).unwrap(), 4).unwrap().is_empty());
}

#[test]
fn search_is_sorted_and_sequential_agrees() {
    let g = dicyclic(8).unwrap();
    let cat = crate::factor::complete_catalog(&g, Default::default()).unwrap();
    let par = search_bijections_with(&cat, &cat, 6, SearchOptions::default()).unwrap();
    let seq = search_bijections_with(
        &cat,
        &cat,
        6,
        SearchOptions {
            parallelism: crate::Parallelism::Sequential,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(par, seq);
    assert!(par.windows(2).all(|w| w[0].images() < w[1].images()));
    // Q8: every automorphism, and each composed with inversion
    assert_eq!(par.len(), 48);
}

#[test]
fn search_is_symmetric() {
    let groups = [cyclic(6).unwrap(), symmetric(3).unwrap(), dihedral(8).unwrap(), dicyclic(8).unwrap(), cyclic(8).unwrap()];
    for a in &groups {
        for b in &groups {
            let ab = search_bijections(a, b, 4).unwrap();
            let ba = search_bijections(b, a, 4).unwrap();
            assert_eq!(ab.is_empty(), ba.is_empty());
            assert_eq!(ab.len(), ba.len());
        }
    }
}

#[test]
fn davenport_bound_is_sound() {
    for (g1, g2) in [
        (symmetric(3).unwrap(), dihedral(6).unwrap()),
        (dihedral(8).unwrap(), dihedral(8).unwrap()),
        (cyclic(6).unwrap(), cyclic(6).unwrap()),
        (klein(), klein()),
    ] {
        let m = crate::factor::large_davenport(&g1).unwrap().max(crate::factor::large_davenport(&g2).unwrap());
        let found = search_bijections(&g1, &g2, m).unwrap();
        assert!(!found.is_empty());
        for b in &found {
            assert!(literal_preserving(&b.map, m + 1, m + 2, false), "{}", b.describe());
        }
    }
}

#[test]
fn assertions_on_automorphisms_and_inversion() {
    let s3 = symmetric(3).unwrap();
    for m in find_group_isomorphisms(&s3, &s3, usize::MAX) {
        let r = check_assertions(&bij(m)).unwrap();
        assert!(r.assertions.all_hold());
        assert_eq!(r.assertions.a1.status, Status::Pass);
        assert_eq!(r.classification, Classification::Isomorphism);
        assert!(!r.both);
    }
    let r = check_assertions(&bij(GroupMap::inversion(&s3))).unwrap();
    assert!(r.assertions.all_hold());
    assert_eq!(r.classification, Classification::AntiIsomorphism);
    assert!(!r.is_isomorphism);

    let c5 = cyclic(5).unwrap();
    let r = check_assertions(&bij(GroupMap::inversion(&c5))).unwrap();
    assert_eq!(r.classification, Classification::Isomorphism);
    assert!(r.both);
    assert_eq!(r.assertions.a5.status, Status::Vacuous);
    assert_eq!(r.assertions.a6.status, Status::Vacuous);
}

#[test]
fn assertions_need_length_three_preservation() {
    let g = cyclic(5).unwrap();
    let images = [0, 2, 1, 4, 3].map(ElementId::from_index).to_vec();
    let b = bij(GroupMap::new(g.clone(), g, images).unwrap());
    assert!(matches!(check_assertions(&b), Err(Error::Precondition(_))));
}

#[test]
fn failing_assertions_carry_counterexamples() {
    // bypasses the precondition to exercise the failure paths
    let s3 = symmetric(3).unwrap();
    let c6 = cyclic(6).unwrap();
    let images = s3.elements().collect();
    let b = BasisBijection {
        map: GroupMap::new(s3, c6, images).unwrap(),
        verified_bound: 3,
    };
    let r = check_assertions(&b).unwrap();
    assert_eq!(r.classification, Classification::Neither);
    assert_eq!(r.assertions.a7.status, Status::Fail);
    assert!(r.assertions.a4.counterexample.is_some());
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"A7\""));
    assert_eq!(serde_json::from_str::<AssertionReport>(&json).unwrap(), r);
}

#[test]
fn opposite_transport_is_an_involution_swapping_classes() {
    let s3 = symmetric(3).unwrap();
    let inv = bij(GroupMap::inversion(&s3));
    let t = opposite_transport(&inv);
    assert_eq!(t.target(), &s3.opposite());
    assert!(t.map.is_homomorphism());
    let back = opposite_transport(&t);
    assert_eq!(back, inv);
    assert_eq!(back.target(), inv.target());

    for map in all_bijections(&s3, &s3).into_iter().step_by(7) {
        let mut b = bij(map);
        let mut t = opposite_transport(&b);
        assert_eq!(verify_preserving(&mut b, 4).unwrap(), verify_preserving(&mut t, 4).unwrap());
    }
    for b in search_bijections(&s3, &s3, 4).unwrap() {
        let c = check_assertions(&b).unwrap().classification;
        let ct = check_assertions(&opposite_transport(&b)).unwrap().classification;
        assert_ne!(c, ct);
    }
}

#[test]
fn theorem_examples() {
    let s3 = symmetric(3).unwrap();
    let v = verify_theorem(&s3, &s3).unwrap();
    assert!(v.consistent && v.groups_isomorphic);
    assert_eq!(v.bijections_found, 12);
    assert_eq!(v.bound, 6);

    let v = verify_theorem(&s3, &cyclic(6).unwrap()).unwrap();
    assert_eq!(v.bijections_found, 0);
    assert!(!v.groups_isomorphic && v.consistent);

    let v = verify_theorem(&dihedral(8).unwrap(), &dicyclic(8).unwrap()).unwrap();
    assert_eq!(v.bijections_found, 0);
    assert!(v.consistent);

    let k = klein();
    let v = verify_theorem(&k, &k).unwrap();
    // abelian: every bijection is both, and they are exactly Aut(V4)
    assert_eq!(v.bijections_found, 6);
    assert_eq!(v.isomorphisms, 6);
    assert!(v.all_assertions_hold);
}

#[test]
fn noncommutative_bijections_split_evenly() {
    for g in [dihedral(8).unwrap(), dicyclic(8).unwrap(), dihedral(10).unwrap()] {
        let cat = crate::factor::complete_catalog(&g, Default::default()).unwrap();
        let run = verify_theorem_with(&cat, &cat, SearchOptions::default()).unwrap();
        assert!(run.verdict.consistent);
        assert_eq!(run.verdict.isomorphisms, run.verdict.anti_isomorphisms);
        assert!(run.reports.iter().all(|r| !r.both));
    }
}

#[test]
fn comparisons() {
    let c = compare_invariants(&dihedral(6).unwrap(), &symmetric(3).unwrap(), 5).unwrap();
    assert!(c.invariants.iter().all(|r| r.verdict == InvariantVerdict::Matches));

    let c = compare_invariants(&dihedral(8).unwrap(), &dicyclic(8).unwrap(), 6).unwrap();
    assert_eq!(c.row("abelianization").unwrap().verdict, InvariantVerdict::Matches);
    assert_eq!(c.row("abelianization").unwrap().left, "C2xC2");

    let c = compare_invariants(&cyclic(4).unwrap(), &klein(), 4).unwrap();
    assert_eq!(c.fingerprints[0].davenport, 4);
    assert_eq!(c.fingerprints[1].davenport, 3);
    assert_eq!(c.row("fingerprint").unwrap().verdict, InvariantVerdict::Distinguishes);
    assert!(c.distinguishes());
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<Comparison>(&json).unwrap(), c);
}
