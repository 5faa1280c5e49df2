//! Direct checks of the seven structural assertions on a bijection.

use serde::{Deserialize, Serialize};

use super::{verify_preserving, BasisBijection};
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Holds because no element tuple meets the hypothesis.
    Vacuous,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Element labels in the source group.
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionOutcome {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl AssertionOutcome {
    fn pass() -> Self {
        AssertionOutcome {
            status: Status::Pass,
            counterexample: None,
        }
    }

    fn vacuous() -> Self {
        AssertionOutcome {
            status: Status::Vacuous,
            counterexample: None,
        }
    }

    fn fail(elements: Vec<String>, detail: String) -> Self {
        AssertionOutcome {
            status: Status::Fail,
            counterexample: Some(Counterexample { elements, detail }),
        }
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertions {
    #[serde(rename = "A1")]
    pub a1: AssertionOutcome,
    #[serde(rename = "A2")]
    pub a2: AssertionOutcome,
    #[serde(rename = "A3")]
    pub a3: AssertionOutcome,
    #[serde(rename = "A4")]
    pub a4: AssertionOutcome,
    #[serde(rename = "A5")]
    pub a5: AssertionOutcome,
    #[serde(rename = "A6")]
    pub a6: AssertionOutcome,
    #[serde(rename = "A7")]
    pub a7: AssertionOutcome,
}

impl Assertions {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &AssertionOutcome)> {
        [
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("A3", &self.a3),
            ("A4", &self.a4),
            ("A5", &self.a5),
            ("A6", &self.a6),
            ("A7", &self.a7),
        ]
        .into_iter()
    }

    pub fn all_hold(&self) -> bool {
        self.iter().all(|(_, o)| o.holds())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Isomorphism,
    AntiIsomorphism,
    Neither,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Isomorphism => "isomorphism",
            Classification::AntiIsomorphism => "anti_isomorphism",
            Classification::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionReport {
    pub assertions: Assertions,
    pub classification: Classification,
    pub is_isomorphism: bool,
    pub is_anti_isomorphism: bool,
    /// Both predicates hold (so the map is between abelian groups).
    pub both: bool,
}

struct Ctx<'a> {
    s: &'a GroupTable,
    t: &'a GroupTable,
    img: &'a [ElementId],
}

impl Ctx<'_> {
    fn phi(&self, g: ElementId) -> ElementId {
        self.img[g.index()]
    }

    fn labels(&self, gs: &[ElementId]) -> Vec<String> {
        gs.iter().map(|&g| self.s.name(g).to_string()).collect()
    }

    fn tname(&self, g: ElementId) -> &str {
        self.t.name(g)
    }

    /// `φ(ab) = φ(a)φ(b)`
    fn keeps(&self, a: ElementId, b: ElementId) -> bool {
        self.phi(self.s.multiply(a, b)) == self.t.multiply(self.phi(a), self.phi(b))
    }

    /// `φ(ab) = φ(b)φ(a)`
    fn swaps(&self, a: ElementId, b: ElementId) -> bool {
        self.phi(self.s.multiply(a, b)) == self.t.multiply(self.phi(b), self.phi(a))
    }

    fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.s.elements().flat_map(move |a| self.s.elements().map(move |b| (a, b)))
    }

    fn triples(&self) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
        self.pairs().flat_map(move |(a, b)| self.s.elements().map(move |c| (a, b, c)))
    }

    fn a1(&self) -> AssertionOutcome {
        if self.phi(ElementId::IDENTITY) != ElementId::IDENTITY {
            return AssertionOutcome::fail(
                self.labels(&[ElementId::IDENTITY]),
                format!("identity maps to {}", self.tname(self.phi(ElementId::IDENTITY))),
            );
        }
        for g in self.s.elements() {
            let (o1, o2) = (self.s.order_of(g), self.t.order_of(self.phi(g)));
            if o1 != o2 {
                return AssertionOutcome::fail(self.labels(&[g]), format!("ord {o1} maps to ord {o2}"));
            }
        }
        AssertionOutcome::pass()
    }

    fn a2(&self) -> AssertionOutcome {
        for g in self.s.elements() {
            let lhs = self.phi(self.s.inverse(g));
            let rhs = self.t.inverse(self.phi(g));
            if lhs != rhs {
                return AssertionOutcome::fail(
                    self.labels(&[g]),
                    format!("φ(g⁻¹) = {} but φ(g)⁻¹ = {}", self.tname(lhs), self.tname(rhs)),
                );
            }
        }
        AssertionOutcome::pass()
    }

    fn a3(&self) -> AssertionOutcome {
        if let Some((a, b)) = self.pairs().find(|&(a, b)| !self.keeps(a, b) && !self.swaps(a, b)) {
            return AssertionOutcome::fail(
                self.labels(&[a, b]),
                "φ(g₁g₂) is neither φ(g₁)φ(g₂) nor φ(g₂)φ(g₁)".into(),
            );
        }
        for g in self.s.elements() {
            for n in 0..self.s.order_of(g) as i64 {
                if self.phi(self.s.pow(g, n)) != self.t.pow(self.phi(g), n) {
                    return AssertionOutcome::fail(self.labels(&[g]), format!("φ(gⁿ) ≠ φ(g)ⁿ for n = {n}"));
                }
            }
        }
        AssertionOutcome::pass()
    }

    fn a4(&self) -> AssertionOutcome {
        let bad = self
            .pairs()
            .find(|&(a, b)| self.s.commutes(a, b) != self.t.commutes(self.phi(a), self.phi(b)));
        match bad {
            Some((a, b)) => AssertionOutcome::fail(self.labels(&[a, b]), "commutation is not preserved".into()),
            None => AssertionOutcome::pass(),
        }
    }

    fn a5(&self) -> AssertionOutcome {
        let s = self.s;
        let mut considered = false;
        for (g1, g2, g3) in self.triples() {
            if s.commutes(g1, g2) || s.commutes(g1, g3) || !s.commutes(g2, g3) {
                continue;
            }
            considered = true;
            if self.keeps(g1, g2) && self.swaps(g1, g3) {
                return AssertionOutcome::fail(
                    self.labels(&[g1, g2, g3]),
                    "φ keeps g₁g₂, swaps g₁g₃, with g₂g₃ = g₃g₂".into(),
                );
            }
        }
        if considered {
            AssertionOutcome::pass()
        } else {
            AssertionOutcome::vacuous()
        }
    }

    fn a6(&self) -> AssertionOutcome {
        let s = self.s;
        let mut considered = false;
        for (g1, g2, g3) in self.triples() {
            let hyp = !s.commutes(g1, g2) && self.keeps(g1, g2) && !s.commutes(g1, g3) && self.swaps(g1, g3);
            if !hyp {
                continue;
            }
            considered = true;
            let (i2, i3) = (s.inverse(g2), s.inverse(g3));
            let conclusions = [
                (self.keeps(g1, i2), "φ(g₁g₂⁻¹) = φ(g₁)φ(g₂⁻¹)"),
                (self.keeps(i2, g1), "φ(g₂⁻¹g₁) = φ(g₂⁻¹)φ(g₁)"),
                (self.swaps(g1, i3), "φ(g₁g₃⁻¹) = φ(g₃⁻¹)φ(g₁)"),
                (self.swaps(i3, g1), "φ(g₃⁻¹g₁) = φ(g₁)φ(g₃⁻¹)"),
            ];
            if let Some((_, text)) = conclusions.iter().find(|(ok, _)| !ok) {
                return AssertionOutcome::fail(self.labels(&[g1, g2, g3]), format!("{text} fails"));
            }
        }
        if considered {
            AssertionOutcome::pass()
        } else {
            AssertionOutcome::vacuous()
        }
    }

    fn a7(&self, hom: bool, anti: bool) -> AssertionOutcome {
        if hom || anti {
            return AssertionOutcome::pass();
        }
        let (a, b) = self.pairs().find(|&(a, b)| !self.keeps(a, b)).expect("not a homomorphism");
        let (c, d) = self.pairs().find(|&(a, b)| !self.swaps(a, b)).expect("not an anti-homomorphism");
        AssertionOutcome::fail(
            self.labels(&[a, b, c, d]),
            "φ(g₁g₂) ≠ φ(g₁)φ(g₂) and φ(g₃g₄) ≠ φ(g₄)φ(g₃)".into(),
        )
    }
}

/// Runs the seven checks and classifies the map.
///
/// The bijection must preserve product-one sequences up to length 3; that is
/// confirmed here when `b.verified_bound` is lower.
pub fn check_assertions(b: &BasisBijection) -> Result<AssertionReport> {
    if b.verified_bound < 3 {
        let mut probe = b.clone();
        if !verify_preserving(&mut probe, 3)? {
            return Err(Error::Precondition(
                "bijection does not preserve product-one sequences of length at most 3".into(),
            ));
        }
    }
    let ctx = Ctx {
        s: b.source(),
        t: b.target(),
        img: b.images(),
    };
    let hom = b.map.is_homomorphism();
    let anti = b.map.is_anti_homomorphism();
    let assertions = Assertions {
        a1: ctx.a1(),
        a2: ctx.a2(),
        a3: ctx.a3(),
        a4: ctx.a4(),
        a5: ctx.a5(),
        a6: ctx.a6(),
        a7: ctx.a7(hom, anti),
    };
    let classification = if hom {
        Classification::Isomorphism
    } else if anti {
        Classification::AntiIsomorphism
    } else {
        Classification::Neither
    };
    Ok(AssertionReport {
        assertions,
        classification,
        is_isomorphism: hom,
        is_anti_isomorphism: anti,
        both: hom && anti,
    })
}
