//! Command results, their JSON form, and plain-text tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use prodone::lab::{Classification, Comparison, TheoremVerdict};
use prodone::LengthSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCount {
    pub order: u32,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCount {
    pub length: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<OrderCount>,
    pub commutator_subgroup_order: usize,
    pub abelianization: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSetReport {
    pub group: String,
    pub sequence: String,
    pub products: Vec<String>,
    pub product_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub group: String,
    pub sequence: String,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomsReport {
    pub group: String,
    pub max_length: usize,
    pub exhaustive: bool,
    pub counts: Vec<LengthCount>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavenportReport {
    pub group: String,
    pub davenport: usize,
    pub atoms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthsReport {
    pub group: String,
    pub sequence: String,
    pub lengths: LengthSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSystemReport {
    pub group: String,
    pub bound: usize,
    pub sets: Vec<LengthSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionRow {
    pub map: String,
    pub classification: Classification,
    pub assertions_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: TheoremVerdict,
    pub bijections: Vec<BijectionRow>,
}

/// One command's result. The JSON form carries the subcommand name in a
/// `command` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    GroupInfo(GroupInfo),
    Pi(ProductSetReport),
    Witness(WitnessReport),
    Atoms(AtomsReport),
    Davenport(DavenportReport),
    Lengths(LengthsReport),
    LengthSystem(LengthSystemReport),
    Verify(VerifyReport),
    Compare(Comparison),
}

impl Report {
    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_structured(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        match self {
            Report::GroupInfo(r) => {
                let mut t = Table::new(&["property", "value"]);
                t.row(&["group", &r.group]);
                t.row(&["order", &r.order.to_string()]);
                t.row(&["abelian", if r.abelian { "yes" } else { "no" }]);
                t.row(&["commutator subgroup", &format!("size {}", r.commutator_subgroup_order)]);
                t.row(&["abelianization", &r.abelianization]);
                t.render(&mut out);
                out.push('\n');
                let mut t = Table::new(&["element order", "count"]);
                for oc in &r.element_orders {
                    t.row(&[&oc.order.to_string(), &oc.count.to_string()]);
                }
                t.render(&mut out);
                let _ = writeln!(out, "\nelements: {}", r.elements.join(" "));
            }
            Report::Pi(r) => {
                let _ = writeln!(out, "π({}) over {} = {{{}}}", r.sequence, r.group, r.products.join(", "));
                let _ = writeln!(out, "size {}, product-one: {}", r.products.len(), yes_no(r.product_one));
            }
            Report::Witness(r) => match &r.witness {
                Some(w) => {
                    let _ = writeln!(out, "{}", w.join(" "));
                }
                None => out.push_str("none\n"),
            },
            Report::Atoms(r) => {
                let mut t = Table::new(&["length", "atoms"]);
                for c in &r.counts {
                    t.row(&[&c.length.to_string(), &c.count.to_string()]);
                }
                t.row(&["total", &r.total.to_string()]);
                let _ = writeln!(
                    out,
                    "atoms of {} up to length {} ({})",
                    r.group,
                    r.max_length,
                    if r.exhaustive { "exhaustive" } else { "partial: search budget exhausted" }
                );
                t.render(&mut out);
            }
            Report::Davenport(r) => {
                let _ = writeln!(out, "D({}) = {}", r.group, r.davenport);
                let _ = writeln!(out, "{} atoms in total", r.atoms);
            }
            Report::Lengths(r) => {
                let _ = writeln!(out, "L({}) = {}", r.sequence, r.lengths);
            }
            Report::LengthSystem(r) => {
                let _ = writeln!(out, "sets of lengths over {} for sequences of length <= {}", r.group, r.bound);
                for s in &r.sets {
                    let _ = writeln!(out, "  {s}");
                }
                let _ = writeln!(out, "{} distinct sets", r.sets.len());
            }
            Report::Verify(r) => {
                let v = &r.verdict;
                let mut t = Table::new(&["field", "value"]);
                t.row(&["groups", &format!("{} / {}", v.groups[0], v.groups[1])]);
                t.row(&["bound", &v.bound.to_string()]);
                t.row(&["bijections_found", &v.bijections_found.to_string()]);
                t.row(&["isomorphisms", &v.isomorphisms.to_string()]);
                t.row(&["anti_isomorphisms", &v.anti_isomorphisms.to_string()]);
                t.row(&["all_classified", yes_no(v.all_classified)]);
                t.row(&["all_assertions_hold", yes_no(v.all_assertions_hold)]);
                t.row(&["groups_isomorphic", yes_no(v.groups_isomorphic)]);
                t.row(&["consistent", yes_no(v.consistent)]);
                t.render(&mut out);
                if !r.bijections.is_empty() {
                    out.push('\n');
                    let mut t = Table::new(&["#", "classification", "A1-A7", "map"]);
                    for (i, b) in r.bijections.iter().enumerate() {
                        t.row(&[
                            &(i + 1).to_string(),
                            &b.classification.to_string(),
                            if b.assertions_hold { "pass" } else { "FAIL" },
                            &b.map,
                        ]);
                    }
                    t.render(&mut out);
                }
            }
            Report::Compare(c) => {
                let _ = writeln!(out, "{} vs {} (length systems up to {})", c.groups[0], c.groups[1], c.bound);
                let mut t = Table::new(&["invariant", "left", "right", "verdict"]);
                for r in &c.invariants {
                    t.row(&[&r.invariant, &r.left, &r.right, &r.verdict.to_string()]);
                }
                t.render(&mut out);
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns sized to their widest cell.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: &[&str]) {
        self.rows.push(cells.iter().map(|s| s.to_string()).collect());
    }

    fn render(&self, out: &mut String) {
        let width = |i: usize| {
            std::iter::once(&self.header)
                .chain(&self.rows)
                .map(|r| r[i].chars().count())
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.header.len()).map(width).collect();
        let line = |out: &mut String, cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(out, &self.header);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(out, &rule);
        for r in &self.rows {
            line(out, r);
        }
    }
}
