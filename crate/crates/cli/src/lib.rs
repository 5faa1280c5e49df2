//! The `prodone` command line.
//!
//! Exit status: 0 on success (and for `verify`, a consistent verdict), 1 when
//! `verify` finds an inconsistency, 2 when a computation runs out of budget
//! or the cache cannot be used, 3 for usage and input errors.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use prodone::factor::{cache::CatalogCache, set_of_lengths, length_system_with, AtomCatalog, EnumerateOptions};
use prodone::group::parse_group_spec;
use prodone::lab::{compare_invariants_with, verify_theorem_with, SearchOptions};
use prodone::seq::DEFAULT_DP_BUDGET;
use prodone::{Error, GroupTable, Sequence};

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "prodone", version, about = "Product-one sequences over finite groups")]
pub struct Cli {
    /// Directory for cached atom catalogs.
    #[arg(long, global = true, env = "PRODONE_CACHE_DIR", default_value = ".prodone-cache")]
    pub cache_dir: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Cap on DP states per product-set table and on atom-search nodes.
    #[arg(long, global = true, value_parser = positive_u64)]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, element orders, commutator subgroup and abelianization.
    GroupInfo { group: String },
    /// The set of products of a sequence.
    Pi { group: String, sequence: String },
    /// The lexicographically smallest product-one ordering, or "none".
    Witness { group: String, sequence: String },
    /// Atom counts per length.
    Atoms {
        group: String,
        /// Longest atom length to enumerate (default: the group order, which is exhaustive).
        #[arg(long, value_parser = positive_usize)]
        max: Option<usize>,
    },
    /// The large Davenport constant.
    Davenport { group: String },
    /// The set of lengths of a product-one sequence.
    Lengths { group: String, sequence: String },
    /// All distinct sets of lengths of product-one sequences up to a length bound.
    LengthSystem {
        group: String,
        #[arg(long, default_value_t = 6, value_parser = positive_usize)]
        bound: usize,
    },
    /// Search preserving bijections and compare against group isomorphism.
    Verify { group1: String, group2: String },
    /// Side-by-side invariants of two groups.
    Compare {
        group1: String,
        group2: String,
        #[arg(long, default_value_t = 6, value_parser = positive_usize)]
        bound: usize,
    },
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive_usize(s).map(|v| v as u64)
}

/// A rendered result plus the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub status: i32,
    /// Printed on stderr alongside the report.
    pub note: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource() || matches!(e, Error::Io(_) | Error::Cache(_)) {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

struct Ctx {
    cache: CatalogCache,
    opts: EnumerateOptions,
    dp_budget: u64,
}

impl Ctx {
    fn catalog(&self, g: &GroupTable, max_length: usize) -> prodone::Result<AtomCatalog> {
        self.cache.load_or_build(g, max_length, self.opts)
    }

    fn complete(&self, g: &GroupTable) -> prodone::Result<AtomCatalog> {
        self.catalog(g, g.order())
    }
}

fn atoms_report(name: &str, max_length: usize, cat: &AtomCatalog) -> AtomsReport {
    let counts: Vec<LengthCount> = cat
        .counts_by_length()
        .into_iter()
        .enumerate()
        .map(|(i, count)| LengthCount { length: i + 1, count })
        .collect();
    AtomsReport {
        group: name.to_string(),
        max_length,
        exhaustive: cat.is_exhaustive(),
        total: cat.len(),
        counts,
    }
}

fn labels(g: &GroupTable, xs: impl IntoIterator<Item = prodone::ElementId>) -> Vec<String> {
    xs.into_iter().map(|x| g.name(x).to_string()).collect()
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> prodone::Result<Outcome> {
    let dp_budget = cli.budget.unwrap_or(DEFAULT_DP_BUDGET);
    let mut opts = EnumerateOptions {
        dp_budget,
        ..EnumerateOptions::default()
    };
    if let Some(b) = cli.budget {
        opts.node_budget = b;
    }
    let ctx = Ctx {
        cache: CatalogCache::new(&cli.cache_dir),
        opts,
        dp_budget,
    };
    let ok = |report| {
        Ok(Outcome {
            report,
            status: EXIT_OK,
            note: None,
        })
    };
    match &cli.command {
        Command::GroupInfo { group } => {
            let g = parse_group_spec(group)?;
            let mut element_orders: Vec<OrderCount> = Vec::new();
            for o in g.order_profile() {
                match element_orders.last_mut() {
                    Some(oc) if oc.order == o => oc.count += 1,
                    _ => element_orders.push(OrderCount { order: o, count: 1 }),
                }
            }
            ok(Report::GroupInfo(GroupInfo {
                group: group.clone(),
                order: g.order(),
                abelian: g.is_abelian(),
                element_orders,
                commutator_subgroup_order: g.commutator_subgroup().len(),
                abelianization: g.abelianization().structure_label(),
                elements: labels(&g, g.elements()),
            }))
        }
        Command::Pi { group, sequence } => {
            let g = parse_group_spec(group)?;
            let s = Sequence::parse(&g, sequence)?;
            let p = s.product_set_within(ctx.dp_budget)?;
            ok(Report::Pi(ProductSetReport {
                group: group.clone(),
                sequence: s.to_string(),
                products: labels(&g, p.elements()),
                product_one: p.contains(prodone::ElementId::IDENTITY),
            }))
        }
        Command::Witness { group, sequence } => {
            let g = parse_group_spec(group)?;
            let s = Sequence::parse(&g, sequence)?;
            let w = s.product_one_witness_within(ctx.dp_budget)?;
            ok(Report::Witness(WitnessReport {
                group: group.clone(),
                sequence: s.to_string(),
                witness: w.map(|o| labels(&g, o.terms)),
            }))
        }
        Command::Atoms { group, max } => {
            let g = parse_group_spec(group)?;
            let max = max.unwrap_or(g.order());
            match ctx.catalog(&g, max) {
                Ok(cat) => ok(Report::Atoms(atoms_report(group, max, &cat))),
                Err(Error::Incomplete { nodes, partial }) => {
                    Ok(Outcome {
                        report: Report::Atoms(atoms_report(group, max, &partial)),
                        status: EXIT_RESOURCE,
                        note: Some(format!("atom search stopped after {nodes} nodes; counts are partial")),
                    })
                }
                Err(e) => Err(e),
            }
        }
        Command::Davenport { group } => {
            let g = parse_group_spec(group)?;
            let cat = ctx.complete(&g)?;
            ok(Report::Davenport(DavenportReport {
                group: group.clone(),
                davenport: cat.longest_atom(),
                atoms: cat.len(),
            }))
        }
        Command::Lengths { group, sequence } => {
            let g = parse_group_spec(group)?;
            let s = Sequence::parse(&g, sequence)?;
            let cat = ctx.catalog(&g, s.len().clamp(1, g.order()))?;
            ok(Report::Lengths(LengthsReport {
                group: group.clone(),
                sequence: s.to_string(),
                lengths: set_of_lengths(&s, &cat)?,
            }))
        }
        Command::LengthSystem { group, bound } => {
            let g = parse_group_spec(group)?;
            let cat = ctx.catalog(&g, (*bound).min(g.order()))?;
            let sys = length_system_with(&cat, *bound)?;
            ok(Report::LengthSystem(LengthSystemReport {
                group: group.clone(),
                bound: *bound,
                sets: sys.sets,
            }))
        }
        Command::Verify { group1, group2 } => {
            let (g1, g2) = (parse_group_spec(group1)?, parse_group_spec(group2)?);
            let (c1, c2) = (ctx.complete(&g1)?, ctx.complete(&g2)?);
            let search = SearchOptions {
                dp_budget: ctx.dp_budget,
                ..SearchOptions::default()
            };
            let run = verify_theorem_with(&c1, &c2, search)?;
            let mut verdict = run.verdict;
            verdict.groups = [group1.clone(), group2.clone()];
            let status = if verdict.consistent { EXIT_OK } else { EXIT_INCONSISTENT };
            let bijections = run
                .bijections
                .iter()
                .zip(&run.reports)
                .map(|(b, r)| BijectionRow {
                    map: b.describe(),
                    classification: r.classification,
                    assertions_hold: r.assertions.all_hold(),
                })
                .collect();
            Ok(Outcome {
                report: Report::Verify(VerifyReport { verdict, bijections }),
                status,
                note: (status != EXIT_OK).then(|| "inconsistent verdict".to_string()),
            })
        }
        Command::Compare { group1, group2, bound } => {
            let (g1, g2) = (parse_group_spec(group1)?, parse_group_spec(group2)?);
            let (c1, c2) = (ctx.complete(&g1)?, ctx.complete(&g2)?);
            let mut cmp = compare_invariants_with(&c1, &c2, *bound)?;
            cmp.groups = [group1.clone(), group2.clone()];
            ok(Report::Compare(cmp))
        }
    }
}

/// Parses `args`, runs the command, writes the report to `out` and errors to
/// `err`, and returns the exit status.
pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(note) = &outcome.note {
                let _ = writeln!(err, "warning: {note}");
            }
            let text = match cli.format {
                Format::Human => outcome.report.to_human(),
                Format::Structured => outcome.report.to_structured() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
