use serde::{Deserialize, Serialize};

use super::{check_assertions, search_bijections_with, AssertionReport, BasisBijection, Classification, SearchOptions};
use crate::error::{Error, Result};
use crate::factor::{
    complete_catalog, fingerprint_from_catalog, length_system_with, AtomCatalog, EnumerateOptions, Fingerprint,
    LengthSystem,
};
use crate::group::{are_isomorphic, find_group_isomorphisms, GroupTable};
use crate::par::{self, Parallelism};

/// Outcome of checking that preserving bijections exist exactly when the
/// groups are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub groups: [String; 2],
    pub bound: usize,
    pub bijections_found: usize,
    pub isomorphisms: usize,
    pub anti_isomorphisms: usize,
    /// Every bijection is an isomorphism or an anti-isomorphism.
    pub all_classified: bool,
    /// Every bijection passes all seven assertions.
    pub all_assertions_hold: bool,
    pub groups_isomorphic: bool,
    pub consistent: bool,
}

/// A verdict together with the bijections and their reports.
#[derive(Clone, Debug)]
pub struct TheoremRun {
    pub verdict: TheoremVerdict,
    pub bijections: Vec<BasisBijection>,
    pub reports: Vec<AssertionReport>,
}

fn label(g: &GroupTable) -> String {
    g.structure_label()
}

fn complete_pair(g1: &GroupTable, g2: &GroupTable, mode: Parallelism) -> Result<(AtomCatalog, AtomCatalog)> {
    let opts = EnumerateOptions {
        parallelism: mode,
        ..EnumerateOptions::default()
    };
    let (c1, c2) = par::join(mode, || complete_catalog(g1, opts), || complete_catalog(g2, opts));
    Ok((c1?, c2?))
}

fn require_complete(cat: &AtomCatalog) -> Result<()> {
    if cat.is_complete() {
        Ok(())
    } else {
        Err(Error::CatalogTooShort {
            have: cat.covered_length(),
            need: cat.group().order(),
        })
    }
}

pub fn verify_theorem(g1: &GroupTable, g2: &GroupTable) -> Result<TheoremVerdict> {
    let (c1, c2) = complete_pair(g1, g2, Parallelism::default())?;
    Ok(verify_theorem_with(&c1, &c2, SearchOptions::default())?.verdict)
}

/// Searches at the larger of the two large Davenport constants, using
/// complete catalogs for both groups.
pub fn verify_theorem_with(cat1: &AtomCatalog, cat2: &AtomCatalog, opts: SearchOptions) -> Result<TheoremRun> {
    require_complete(cat1)?;
    require_complete(cat2)?;
    let (g1, g2) = (cat1.group(), cat2.group());
    let bound = cat1.longest_atom().max(cat2.longest_atom());
    let bijections = search_bijections_with(cat1, cat2, bound, opts)?;
    let reports = bijections.iter().map(check_assertions).collect::<Result<Vec<_>>>()?;
    let count = |c: Classification| reports.iter().filter(|r| r.classification == c).count();
    let all_classified = reports.iter().all(|r| r.classification != Classification::Neither);
    let groups_isomorphic = !find_group_isomorphisms(g1, g2, 1).is_empty();
    let verdict = TheoremVerdict {
        groups: [label(g1), label(g2)],
        bound,
        bijections_found: bijections.len(),
        isomorphisms: count(Classification::Isomorphism),
        anti_isomorphisms: count(Classification::AntiIsomorphism),
        all_classified,
        all_assertions_hold: reports.iter().all(|r| r.assertions.all_hold()),
        groups_isomorphic,
        consistent: (!bijections.is_empty() == groups_isomorphic) && all_classified,
    };
    Ok(TheoremRun {
        verdict,
        bijections,
        reports,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantVerdict {
    Distinguishes,
    Matches,
    /// The computation did not finish within its budget.
    Inconclusive,
}

impl std::fmt::Display for InvariantVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InvariantVerdict::Distinguishes => "distinguishes",
            InvariantVerdict::Matches => "matches",
            InvariantVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub invariant: String,
    pub left: String,
    pub right: String,
    pub verdict: InvariantVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub groups: [String; 2],
    pub bound: usize,
    pub fingerprints: [Fingerprint; 2],
    pub invariants: Vec<InvariantRow>,
}

impl Comparison {
    pub fn row(&self, name: &str) -> Option<&InvariantRow> {
        self.invariants.iter().find(|r| r.invariant == name)
    }

    pub fn distinguishes(&self) -> bool {
        self.invariants.iter().any(|r| r.verdict == InvariantVerdict::Distinguishes)
    }
}

fn row(name: &str, left: String, right: String, equal: bool) -> InvariantRow {
    InvariantRow {
        invariant: name.to_string(),
        left,
        right,
        verdict: if equal {
            InvariantVerdict::Matches
        } else {
            InvariantVerdict::Distinguishes
        },
    }
}

fn describe_fingerprint(fp: &Fingerprint) -> String {
    let counts: Vec<String> = fp.atom_counts.iter().map(usize::to_string).collect();
    format!("D={} atoms=[{}]", fp.davenport, counts.join(","))
}

pub fn compare_invariants(g1: &GroupTable, g2: &GroupTable, bound: usize) -> Result<Comparison> {
    let (c1, c2) = complete_pair(g1, g2, Parallelism::default())?;
    compare_invariants_with(&c1, &c2, bound)
}

/// Side-by-side invariants of two groups from their complete catalogs.
/// Length systems that exceed the DP budget are reported as inconclusive.
pub fn compare_invariants_with(cat1: &AtomCatalog, cat2: &AtomCatalog, bound: usize) -> Result<Comparison> {
    require_complete(cat1)?;
    require_complete(cat2)?;
    let (g1, g2) = (cat1.group(), cat2.group());
    let (f1, f2) = (fingerprint_from_catalog(cat1), fingerprint_from_catalog(cat2));
    let mut rows = vec![
        row("order", g1.order().to_string(), g2.order().to_string(), g1.order() == g2.order()),
        row(
            "element_orders",
            format!("{:?}", g1.order_profile()),
            format!("{:?}", g2.order_profile()),
            g1.order_profile() == g2.order_profile(),
        ),
        row("fingerprint", describe_fingerprint(&f1), describe_fingerprint(&f2), f1 == f2),
    ];
    let (a1, a2) = (g1.abelianization(), g2.abelianization());
    rows.push(row("abelianization", a1.structure_label(), a2.structure_label(), are_isomorphic(&a1, &a2)));
    let ls = |cat: &AtomCatalog| match length_system_with(cat, bound) {
        Ok(sys) => Ok(Some(sys)),
        Err(e) if e.is_resource() => Ok(None),
        Err(e) => Err(e),
    };
    rows.push(match (ls(cat1)?, ls(cat2)?) {
        (Some(l1), Some(l2)) => row(
            "length_system",
            format!("{} sets", l1.sets.len()),
            format!("{} sets", l2.sets.len()),
            l1.sets == l2.sets,
        ),
        (l1, l2) => {
            let show = |l: Option<LengthSystem>| match l {
                Some(s) => format!("{} sets", s.sets.len()),
                None => "over budget".to_string(),
            };
            InvariantRow {
                invariant: "length_system".into(),
                left: show(l1),
                right: show(l2),
                verdict: InvariantVerdict::Inconclusive,
            }
        }
    });
    Ok(Comparison {
        groups: [label(g1), label(g2)],
        bound,
        fingerprints: [f1, f2],
        invariants: rows,
    })
}
