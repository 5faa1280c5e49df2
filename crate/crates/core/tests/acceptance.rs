//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{catalog, group, multisets, naive_products, Naive};
use prodone::factor::{complete_catalog, enumerate_atoms, large_davenport, set_of_lengths, AtomCatalog};
use prodone::group::{are_isomorphic, cyclic};
use prodone::lab::{verify_theorem, verify_theorem_with, Classification, SearchOptions, TheoremRun};
use prodone::{ElementId, GroupTable, Sequence, TermOrdering};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:.1?}, limit {:?}", start.elapsed(), limit)
    })
}

fn random_sequence(rng: &mut ChaCha8Rng, g: &GroupTable, len: usize) -> Sequence {
    let terms: Vec<ElementId> = (0..len).map(|_| ElementId::from_index(rng.gen_range(0..g.order()))).collect();
    Sequence::from_terms(g, &terms)
}

fn products_match_enumeration() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for name in ["C6", "S3", "D8", "Q8"].into_iter().chain(["C3xC4"]) {
        let g = if name == "C3xC4" {
            prodone::group::parse_group_spec("C3xC4").unwrap()
        } else {
            group(name)
        };
        for _ in 0..500 {
            let len = rng.gen_range(1..=6);
            let s = random_sequence(&mut rng, &g, len);
            let dp: Vec<ElementId> = s.product_set().unwrap().elements();
            let brute: Vec<ElementId> = naive_products(&g, &s.terms()).into_iter().collect();
            ensure(dp == brute, || format!("{name}: π({s}) differs from enumeration"))?;
            checked += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} sequences"))
}

fn atoms_match_naive_filter() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for (name, g) in catalog().into_iter().filter(|(_, g)| g.order() <= 8) {
        let max = 6.min(g.order());
        let cat = enumerate_atoms(&g, max).map_err(|e| e.to_string())?;
        let mut naive = Naive::new(&g);
        for len in 1..=max {
            let want: Vec<Vec<ElementId>> = multisets(g.order(), len)
                .into_iter()
                .filter(|e| naive.is_atom(e))
                .map(|e| common::terms_of(&e))
                .collect();
            let got: Vec<Vec<ElementId>> = cat.atoms_of_length(len).iter().map(|a| a.terms.clone()).collect();
            ensure(got == want, || format!("{name}: atoms of length {len} differ"))?;
            total += got.len();
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{total} atoms over 13 groups"))
}

fn cyclic_davenport() -> Check {
    for n in 2..=8 {
        let g = cyclic(n).unwrap();
        let d = large_davenport(&g).map_err(|e| e.to_string())?;
        ensure(d == n, || format!("D(C{n}) = {d}"))?;
        if n <= 6 {
            // naive scan one past n: an atom of length n exists, none longer
            let mut naive = Naive::new(&g);
            let longest = (1..=n + 1)
                .filter(|&len| multisets(n, len).iter().any(|e| naive.is_atom(e)))
                .max();
            ensure(longest == Some(n), || format!("naive oracle gives {longest:?} for C{n}"))?;
        }
    }
    Ok("n = 2..8 by search, n <= 6 by naive scan".into())
}

struct Catalogs(BTreeMap<&'static str, AtomCatalog>);

fn build_catalogs() -> Result<Catalogs, String> {
    let mut out = BTreeMap::new();
    for (name, g) in catalog() {
        out.insert(name, complete_catalog(&g, Default::default()).map_err(|e| e.to_string())?);
    }
    Ok(Catalogs(out))
}

type Runs = Vec<(String, TheoremRun)>;

fn theorem_over_catalog(cats: &Catalogs, started: Instant, runs: &mut Runs) -> Check {
    let names: Vec<&str> = catalog().into_iter().map(|(n, _)| n).collect();
    let mut with_bijections = 0;
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let run = verify_theorem_with(&cats.0[a], &cats.0[b], SearchOptions::default()).map_err(|e| e.to_string())?;
            ensure(run.verdict.consistent, || format!("({a}, {b}) inconsistent: {:?}", run.verdict))?;
            with_bijections += usize::from(run.verdict.bijections_found > 0);
            runs.push((format!("({a}, {b})"), run));
        }
    }
    within(Duration::from_secs(30 * 60), started)?;
    Ok(format!("{} pairs consistent, {with_bijections} with bijections", runs.len()))
}

fn bijections_pass_assertions(runs: &Runs) -> Check {
    ensure(!runs.is_empty(), || "no verification runs to inspect".into())?;
    let mut count = 0;
    for (pair, run) in runs {
        for (b, r) in run.bijections.iter().zip(&run.reports) {
            ensure(r.assertions.all_hold(), || format!("{pair}: {} fails an assertion", b.describe()))?;
            ensure(r.classification != Classification::Neither, || {
                format!("{pair}: {} is neither", b.describe())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} bijections, all A1-A7, all classified"))
}

fn abelianization_blind_spot() -> Check {
    let (d8, q8) = (group("D8"), group("Q8"));
    let (a, b) = (d8.abelianization(), q8.abelianization());
    let klein = prodone::group::parse_group_spec("C2xC2").unwrap();
    ensure(are_isomorphic(&a, &b) && are_isomorphic(&a, &klein), || "abelianizations differ".into())?;
    let v = verify_theorem(&d8, &q8).map_err(|e| e.to_string())?;
    ensure(v.bijections_found == 0 && v.consistent, || format!("{v:?}"))?;
    Ok("both Klein four; zero bijections".into())
}

fn nonabelian_orders() -> Check {
    let small: Vec<&str> = catalog()
        .into_iter()
        .filter(|(_, g)| !g.is_abelian() && g.order() < 6)
        .map(|(n, _)| n)
        .collect();
    ensure(small.is_empty(), || format!("non-abelian of order < 6: {small:?}"))?;
    let n = catalog().iter().filter(|(_, g)| !g.is_abelian()).count();
    Ok(format!("{n} non-abelian groups, all of order >= 6"))
}

fn witnesses_rotate_and_reverse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let groups = catalog();
    let mut witnesses = 0;
    let mut tried = 0;
    while witnesses < 1000 {
        tried += 1;
        let (name, g) = &groups[rng.gen_range(0..groups.len())];
        let len = rng.gen_range(1..=8);
        let s = random_sequence(&mut rng, g, len);
        let opp = g.opposite();
        let po = s.is_product_one().map_err(|e| e.to_string())?;
        let po_opp = s.over(&opp).unwrap().is_product_one().map_err(|e| e.to_string())?;
        ensure(po == po_opp, || format!("{name}: {s} differs over the opposite group"))?;
        let Some(w) = s.product_one_witness().map_err(|e| e.to_string())? else {
            continue;
        };
        for k in 0..w.terms.len() {
            ensure(w.rotated(k).product(g) == ElementId::IDENTITY, || {
                format!("{name}: rotation {k} of {} is not product-one", w.render(g))
            })?;
        }
        let rev: TermOrdering = w.reversed();
        ensure(rev.product(&opp) == ElementId::IDENTITY, || "reversal fails over the opposite".into())?;
        witnesses += 1;
    }
    Ok(format!("1000 witnesses from {tried} random sequences"))
}

fn lengths_match_naive() -> Check {
    let mut checked = 0;
    for name in ["C2", "C3", "S3"] {
        let g = group(name);
        let cat = complete_catalog(&g, Default::default()).map_err(|e| e.to_string())?;
        let mut naive = Naive::new(&g);
        for len in 1..=5 {
            for e in multisets(g.order(), len) {
                if !naive.product_one(&e) {
                    continue;
                }
                let s = Sequence::from_exponents(&g, e.clone()).unwrap();
                let l = set_of_lengths(&s, &cat).map_err(|e| e.to_string())?;
                let want = naive.lengths(&e);
                ensure(l.lengths == want, || format!("{name}: L({s}) = {l}, naive {want:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} product-one sequences"))
}

fn report(n: usize, what: &str, start: Instant, result: Check) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => {
            println!("criterion {n} [PRIMARY] PASS  {what}: {detail} ({secs:.1}s)");
            true
        }
        Err(why) => {
            println!("criterion {n} [PRIMARY] FAIL  {what}: {why} ({secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "set of products vs ordering enumeration", t, products_match_enumeration());
    let t = Instant::now();
    ok &= report(2, "atom enumeration vs naive filter", t, atoms_match_naive_filter());
    let t = Instant::now();
    ok &= report(3, "large Davenport constant of cyclic groups", t, cyclic_davenport());

    let t = Instant::now();
    let cats = build_catalogs();
    let mut runs = Runs::new();
    let result = cats.and_then(|cats| theorem_over_catalog(&cats, t, &mut runs));
    ok &= report(4, "bijections exist iff isomorphic, all catalog pairs", t, result);
    let t = Instant::now();
    ok &= report(5, "every bijection passes A1-A7 and is classified", t, bijections_pass_assertions(&runs));
    let t = Instant::now();
    ok &= report(6, "equal abelianizations, no bijection for D8/Q8", t, abelianization_blind_spot());
    let t = Instant::now();
    ok &= report(7, "non-abelian catalog groups have order >= 6", t, nonabelian_orders());
    let t = Instant::now();
    ok &= report(8, "witness rotations and opposite groups", t, witnesses_rotate_and_reverse());
    let t = Instant::now();
    ok &= report(9, "sets of lengths vs all-splits oracle", t, lengths_match_naive());
    if !ok {
        std::process::exit(1);
    }
}
