//! The `prkit` command line. `run` does all the work and returns the text
//! to print, so tests can drive it without spawning processes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use prkit::appstruct::DEFAULT_SUB_CAP;
use prkit::catalog::{self, GeneratorSpec, Generated, Target};
use prkit::completeness::{self, find_supremum, FiberOrder};
use prkit::fiber::{self, Fiber, FiberOptions};
use prkit::format::{self, Document};
use prkit::order;
use prkit::properties::{evaluate, EvalOptions, Implication, Instance, Property};
use prkit::{BinRel, Error, PrStructure, PropId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

/// Environment variable capping the worker threads of `search`.
pub const THREADS_VAR: &str = "PRKIT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "prkit", version, about = "Finite PR-structures: deciders, canonical forms and searches")]
pub struct Cli {
    #[command(flatten)]
    pub budgets: Budgets,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Budgets {
    /// Largest fiber enumerated explicitly.
    #[arg(long, global = true, default_value_t = fiber::DEFAULT_MAX_FIBER)]
    pub max_fiber_size: usize,
    /// Largest carrier whose powerset is built.
    #[arg(long, global = true, default_value_t = prkit::appstruct::DEFAULT_SIGMA_CAP)]
    pub max_carrier: usize,
    /// Most families (or candidates, or enumerated structures) examined.
    #[arg(long, global = true, default_value_t = completeness::DEFAULT_MAX_FAMILIES)]
    pub max_families: u128,
    /// Fibers checked for the lattice-based properties.
    #[arg(long, global = true, default_value_t = 3)]
    pub fiber_depth: usize,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Decide one property and print the witness.
    Check {
        #[arg(long)]
        property: Property,
        input: Option<PathBuf>,
    },
    /// Print the canonical antichain form.
    Canonical { input: Option<PathBuf> },
    /// Print the degree.
    Degree { input: Option<PathBuf> },
    /// Decide every property.
    Classify { input: Option<PathBuf> },
    /// Build the PR-structure of an applicative structure.
    Induce {
        #[arg(long, value_enum)]
        mode: Option<InduceMode>,
        input: Option<PathBuf>,
    },
    /// Report on the fiber over an index set of the given size.
    Fiber {
        #[arg(long)]
        index_size: usize,
        /// Largest source of the reindexing maps checked.
        #[arg(long)]
        reindex_max: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Supremum of one family, or a completeness check of the whole fiber.
    Suprema {
        #[arg(long)]
        index_size: usize,
        /// Members separated by `;`, each a comma-separated tuple of
        /// proposition names.
        #[arg(long)]
        family: Option<String>,
        input: Option<PathBuf>,
    },
    /// Certify that `P(R)^R` is not complete, using the family built from
    /// one realizer.
    Witness {
        #[arg(long)]
        realizer: String,
        input: Option<PathBuf>,
    },
    /// Print a catalog structure.
    Gen {
        #[command(subcommand)]
        what: GenTarget,
    },
    /// Look for counterexamples to an implication between properties.
    Search {
        #[arg(long)]
        implication: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Stream generated structures, one JSON document per line.
    Enumerate {
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InduceMode {
    Sigma,
    Nested,
    Relative,
}

#[derive(Subcommand, Debug)]
pub enum GenTarget {
    SigmaN { n: usize },
    TwoElementLattical,
    FromBin { input: PathBuf },
    ZMod { n: usize },
    KleinFour,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Bounds {
    /// PR tables with this many propositions.
    #[arg(long, conflicts_with = "carrier", requires = "reals")]
    pub props: Option<usize>,
    #[arg(long)]
    pub reals: Option<usize>,
    /// Applicative structures on this many elements, tested through their
    /// induced PR-structure.
    #[arg(long)]
    pub carrier: Option<usize>,
    #[arg(long)]
    pub partial: bool,
    /// Sample this many structures instead of enumerating all of them.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Core(e @ Error::Budget { .. }) => (EXIT_BUDGET, e.to_string()),
                Failure::Core(e @ Error::Inconsistent(_)) => (EXIT_INCONSISTENT, e.to_string()),
                Failure::Core(e) => (EXIT_INPUT, e.to_string()),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> CmdResult {
    let b = cli.budgets;
    match &cli.verb {
        Verb::Check { property, input } => {
            let s = load_structure(input, stdin, &b)?;
            check(&s, *property, &b)
        }
        Verb::Canonical { input } => {
            let s = load_structure(input, stdin, &b)?;
            Ok(format::canonical_to_json(&prkit::canonicalize(&s)))
        }
        Verb::Degree { input } => {
            let s = load_structure(input, stdin, &b)?;
            Ok(format!("{}\n", prkit::degree(&s)))
        }
        Verb::Classify { input } => {
            let s = load_structure(input, stdin, &b)?;
            classify(&s, &b)
        }
        Verb::Induce { mode, input } => induce(load_document(input, stdin)?, *mode, &b),
        Verb::Fiber {
            index_size,
            reindex_max,
            input,
        } => {
            let s = load_structure(input, stdin, &b)?;
            let opts = FiberOptions {
                max_fiber_size: b.max_fiber_size,
                reindex_max: reindex_max.unwrap_or(*index_size),
            };
            let report = fiber::check_fiber(&s, *index_size, &opts)?;
            Ok(format::report_to_json(&report))
        }
        Verb::Suprema {
            index_size,
            family,
            input,
        } => {
            let s = load_structure(input, stdin, &b)?;
            suprema(&s, *index_size, family.as_deref(), &b)
        }
        Verb::Witness { realizer, input } => witness(load_document(input, stdin)?, realizer, &b),
        Verb::Gen { what } => gen(what),
        Verb::Search { implication, bounds } => search(implication, bounds, &b),
        Verb::Enumerate { bounds } => enumerate(bounds, &b),
    }
}

fn read_input(input: &Option<PathBuf>, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    match input {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn load_document(input: &Option<PathBuf>, stdin: &mut dyn Read) -> std::result::Result<Document, Failure> {
    let text = read_input(input, stdin)?;
    let name = input
        .as_ref()
        .map_or("stdin".to_string(), |p| p.display().to_string());
    format::parse_document(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))
}

/// A PR document as is; applicative structures through their induced
/// structure; relations through their `Sigma`.
fn load_structure(input: &Option<PathBuf>, stdin: &mut dyn Read, b: &Budgets) -> std::result::Result<PrStructure, Failure> {
    Ok(match load_document(input, stdin)? {
        Document::Pr(s) => s,
        Document::Pas(p) => p.induce_sigma(b.max_carrier)?,
        Document::Bin(r) => catalog::sigma_from_bin(&r)?,
        Document::SubPas(p) => p.induce_nested(b.max_carrier.min(DEFAULT_SUB_CAP))?,
    })
}

fn eval_options(b: &Budgets) -> EvalOptions {
    EvalOptions {
        fiber_depth: b.fiber_depth,
        max_fiber_size: b.max_fiber_size,
    }
}

/// The statement a verdict rests on.
pub fn theorem_anchor(p: Property) -> &'static str {
    match p {
        Property::Partitioned => "partitioned: every cell holds at most one realizer",
        Property::Preorderal => "preorderal characterization: identity and composition realizers",
        Property::Posetal => "posetal characterization: preorderal with antisymmetric entailment",
        Property::BoundedPosetal => "bounded-posetal characterization: uniformly realized bottom and top",
        Property::PStructure => "P-structure characterization: degree one, entailment pointwise",
        Property::Lattical => "pointwise lattice proposition: fibers are bounded lattices preserved by reindexing",
        Property::Distributive => "pointwise lattice proposition: fibers are distributive bounded lattices",
    }
}

fn check(s: &PrStructure, p: Property, b: &Budgets) -> CmdResult {
    let verdict = evaluate(s, p, &eval_options(b))?;
    let mut out = format!("{}: {verdict}\n", p.name());
    writeln!(out, "theorem: {}", theorem_anchor(p)).unwrap();
    if p.is_bounded_evidence() {
        writeln!(out, "evidence: fibers over 1..={} indices", b.fiber_depth).unwrap();
    }
    if let Some(w) = property_witness(s, p, b)? {
        writeln!(out, "witness: {w}").unwrap();
    }
    Ok(out)
}

fn names_of(s: &PrStructure, pairs: impl IntoIterator<Item = (PropId, PropId)>) -> Vec<(String, String)> {
    pairs
        .into_iter()
        .map(|(a, c)| (s.prop_name(a).to_string(), s.prop_name(c).to_string()))
        .collect()
}

fn property_witness(s: &PrStructure, p: Property, b: &Budgets) -> std::result::Result<Option<Value>, Failure> {
    let preorder = || {
        order::find_preorder_witness(s).map(|w| {
            let compose: Vec<Vec<&str>> = w
                .compose
                .iter()
                .map(|row| row.iter().map(|&r| s.real_name(r)).collect())
                .collect();
            json!({ "identity": s.real_name(w.identity), "compose": compose })
        })
    };
    Ok(match p {
        Property::Partitioned => {
            // a realizer in two cells refutes the property
            s.real_ids()
                .find(|&r| s.rho_inverse(r).map(|x| x.len() > 1).unwrap_or(false))
                .map(|r| {
                    let cells = names_of(s, s.rho_inverse(r).expect("valid id").iter());
                    json!({ "shared_realizer": s.real_name(r), "cells": cells })
                })
        }
        Property::Preorderal => preorder(),
        Property::Posetal => {
            let mutual = s.prop_ids().find_map(|a| {
                s.prop_ids()
                    .find(|&c| a != c && s.entails(a, c).unwrap_or(false) && s.entails(c, a).unwrap_or(false))
                    .map(|c| (a, c))
            });
            match (preorder(), mutual) {
                (w, Some((a, c))) => Some(json!({
                    "preorder": w,
                    "mutually_entailing": [s.prop_name(a), s.prop_name(c)],
                })),
                (w, None) => w,
            }
        }
        Property::BoundedPosetal => order::find_bounds_witness(s).map(|w| {
            json!({
                "bottom": s.prop_name(w.bottom),
                "top": s.prop_name(w.top),
                "bottom_realizer": s.real_name(w.b_real),
                "top_realizer": s.real_name(w.t_real),
            })
        }),
        Property::PStructure => {
            let c = prkit::canonicalize(s);
            let antichain: Vec<Vec<(String, String)>> =
                c.antichain().iter().map(|x| names_of(s, x.iter())).collect();
            Some(json!({ "degree": c.degree(), "antichain": antichain }))
        }
        Property::Lattical | Property::Distributive => {
            let opts = FiberOptions {
                max_fiber_size: b.max_fiber_size,
                reindex_max: b.fiber_depth,
            };
            let mut first_failure = None;
            for k in 1..=b.fiber_depth {
                let r = fiber::check_fiber(s, k, &opts)?;
                let distributive_fails = p == Property::Distributive && r.distributive == Some(false);
                if !r.is_preserved_bounded_lattice() || distributive_fails {
                    first_failure = Some(json!({
                        "index_size": k,
                        "bounded_lattice": r.bounded_lattice,
                        "distributive": r.distributive,
                        "reindexing_failures": r.reindexing_failures.iter().take(3).collect::<Vec<_>>(),
                    }));
                    break;
                }
            }
            first_failure
        }
    })
}

fn classify(s: &PrStructure, b: &Budgets) -> CmdResult {
    let opts = eval_options(b);
    let mut out = String::new();
    for p in Property::ALL {
        match evaluate(s, p, &opts) {
            Ok(v) => writeln!(out, "{}: {v}", p.name()).unwrap(),
            Err(e @ Error::Budget { .. }) => writeln!(out, "{}: unknown ({e})", p.name()).unwrap(),
            Err(e) => return Err(e.into()),
        }
    }
    writeln!(out, "degree: {}", prkit::degree(s)).unwrap();
    Ok(out)
}

fn induce(doc: Document, mode: Option<InduceMode>, b: &Budgets) -> CmdResult {
    let s = match (doc, mode) {
        (Document::Pas(p), None | Some(InduceMode::Sigma)) => p.induce_sigma(b.max_carrier)?,
        (Document::SubPas(p), None | Some(InduceMode::Nested)) => p.induce_nested(b.max_carrier.min(DEFAULT_SUB_CAP))?,
        (Document::SubPas(p), Some(InduceMode::Relative)) => p.induce_relative(b.max_carrier.min(DEFAULT_SUB_CAP))?,
        (Document::SubPas(p), Some(InduceMode::Sigma)) => p.sup().induce_sigma(b.max_carrier)?,
        (doc, m) => {
            return Err(Failure::Input(format!(
                "cannot induce from a {:?} document{}",
                doc.kind(),
                m.map_or(String::new(), |m| format!(" in mode {m:?}").to_lowercase())
            )))
        }
    };
    Ok(format::pr_to_json(&s))
}

fn parse_family(s: &PrStructure, fiber: &Fiber<'_>, text: &str) -> std::result::Result<Vec<usize>, Failure> {
    text.split(';')
        .filter(|m| !m.trim().is_empty())
        .map(|member| {
            let tuple = member
                .split(',')
                .map(|name| {
                    s.prop_id(name.trim())
                        .ok_or_else(|| Failure::Input(format!("unknown proposition {:?} in family", name.trim())))
                })
                .collect::<std::result::Result<Vec<PropId>, Failure>>()?;
            if tuple.len() != fiber.index_size() {
                return Err(Failure::Input(format!(
                    "family member {member:?} has {} entries, index size is {}",
                    tuple.len(),
                    fiber.index_size()
                )));
            }
            Ok(fiber.encode(&tuple))
        })
        .collect()
}

fn suprema(s: &PrStructure, k: usize, family: Option<&str>, b: &Budgets) -> CmdResult {
    let Some(text) = family else {
        let report = completeness::is_fiber_complete(s, k, b.max_families)?;
        let value = json!({
            "theorem": "incompleteness theorem: exhaustive supremum search over every family",
            "report": report,
        });
        return Ok(format::report_to_json(&value));
    };
    let fiber = Fiber::new(s, k, b.max_fiber_size)?;
    let members = parse_family(s, &fiber, text)?;
    let labels: Vec<String> = (0..fiber.size()).map(|x| fiber.names(x).join(",")).collect();
    let pairs: Vec<(usize, usize)> = (0..fiber.size())
        .flat_map(|x| (0..fiber.size()).map(move |y| (x, y)))
        .filter(|&(x, y)| fiber.leq(x, y))
        .collect();
    let rel = BinRel::from_pairs(labels.clone(), &pairs)?;
    let res = find_supremum(&rel, &members)?;
    let name = |xs: &[usize]| xs.iter().map(|&x| labels[x].clone()).collect::<Vec<_>>();
    let value = json!({
        "theorem": "supremum and adjoint supremum, which coincide on preorders",
        "family": name(&members),
        "suprema": name(&res.suprema),
        "adjoint_suprema": name(&res.adjoint_suprema),
    });
    Ok(format::report_to_json(&value))
}

fn witness(doc: Document, realizer: &str, b: &Budgets) -> CmdResult {
    let Document::Pas(pas) = doc else {
        return Err(Failure::Input(format!("witness needs a \"pas\" document, found {:?}", doc.kind())));
    };
    let r = pas
        .index_of(realizer)
        .ok_or_else(|| Failure::Input(format!("unknown element {realizer:?}")))?;
    let cert = completeness::incompleteness_witness(&pas, r, b.max_families)?;
    let verified = completeness::verify_certificate(&pas, &cert);
    let mut cross_check = Value::Null;
    // the fiber over the carrier is small enough to search directly only for
    // carriers of at most two elements
    if let Ok(s) = pas.induce_sigma(b.max_carrier) {
        if let Ok(f) = Fiber::new(&s, pas.size(), FiberOrder::MAX_SIZE) {
            let order = FiberOrder::from_fiber(&f)?;
            let mask = cert.family.iter().fold(0u64, |m, e| {
                let tuple: Vec<PropId> = e
                    .iter()
                    .map(|set| PropId(prkit::Subset::from_elems(set.iter().copied()).0 as usize))
                    .collect();
                m | 1 << f.encode(&tuple)
            });
            cross_check = json!({ "fiber_size": f.size(), "family_has_supremum": order.has_supremum(mask) });
        }
    }
    let value = json!({
        "theorem": "incompleteness theorem: no supremum for the family built from a realizer",
        "verified": verified,
        "cross_check": cross_check,
        "certificate": cert,
    });
    Ok(format::report_to_json(&value))
}

fn gen(what: &GenTarget) -> CmdResult {
    let doc = match what {
        GenTarget::SigmaN { n } => Document::Pr(catalog::sigma_n(*n)?),
        GenTarget::TwoElementLattical => Document::Pr(catalog::two_element_lattical()),
        GenTarget::FromBin { input } => {
            let text = std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            let rel = format::parse_bin(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            Document::Pr(catalog::sigma_from_bin(&rel)?)
        }
        GenTarget::ZMod { n } => Document::Pas(catalog::cyclic_group(*n)?),
        GenTarget::KleinFour => Document::Pas(catalog::klein_four()),
    };
    Ok(format::document_to_json(&doc))
}

fn generator_spec(bounds: &Bounds, b: &Budgets) -> std::result::Result<GeneratorSpec, Failure> {
    let target = match (bounds.props, bounds.reals, bounds.carrier) {
        (Some(props), Some(reals), None) => Target::Pr { props, reals },
        (None, None, Some(carrier)) => Target::Pas {
            carrier,
            partial: bounds.partial,
        },
        _ => {
            return Err(Failure::Input(
                "give either --props and --reals, or --carrier".into(),
            ))
        }
    };
    let mut spec = match bounds.random {
        Some(count) => GeneratorSpec::random(target, bounds.seed, count),
        None => GeneratorSpec::exhaustive(target),
    };
    spec.limit = b.max_families;
    Ok(spec)
}

fn compact(doc: &Document) -> String {
    let value: Value = serde_json::from_str(&format::document_to_json(doc)).expect("own output parses");
    value.to_string()
}

fn enumerate(bounds: &Bounds, b: &Budgets) -> CmdResult {
    let spec = generator_spec(bounds, b)?;
    let mut out = String::new();
    for item in catalog::generate(&spec)? {
        let doc = match item {
            Generated::Pr(s) => Document::Pr(s),
            Generated::Pas(p) => Document::Pas(p),
        };
        out.push_str(&compact(&doc));
        out.push('\n');
    }
    Ok(out)
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{THREADS_VAR}={v:?} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn search(implication: &str, bounds: &Bounds, b: &Budgets) -> CmdResult {
    let imp: Implication = implication.parse().map_err(|e: Error| Failure::Input(e.to_string()))?;
    let spec = generator_spec(bounds, b)?;
    let items: Vec<Generated> = catalog::generate(&spec)?.collect();
    let opts = eval_options(b);
    let max_carrier = b.max_carrier;
    let pool = thread_pool()?;
    // results stay in enumeration order whatever the schedule
    let results: Vec<prkit::Result<Instance>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| match item {
                Generated::Pr(s) => imp.test(s, &opts),
                Generated::Pas(p) => imp.test(&p.induce_sigma(max_carrier)?, &opts),
            })
            .collect()
    });
    let mut premises_hold = 0u64;
    let mut counterexamples = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r? {
            Instance::PremisesFail => {}
            Instance::Holds => premises_hold += 1,
            Instance::Counterexample => {
                premises_hold += 1;
                counterexamples.push(i);
            }
        }
    }
    let first = counterexamples.first().map(|&i| {
        let doc = match &items[i] {
            Generated::Pr(s) => Document::Pr(s.clone()),
            Generated::Pas(p) => Document::Pas(p.clone()),
        };
        serde_json::from_str::<Value>(&format::document_to_json(&doc)).expect("own output parses")
    });
    let (mode, seed) = match bounds.random {
        Some(count) => (format!("random {count}"), Some(bounds.seed)),
        None => ("exhaustive".to_string(), None),
    };
    let value = json!({
        "implication": imp.to_string(),
        "mode": mode,
        "seed": seed,
        "fiber_depth": b.fiber_depth,
        "checked": items.len(),
        "premises_hold": premises_hold,
        "counterexamples": counterexamples.len(),
        "first_counterexample_index": counterexamples.first(),
        "first_counterexample": first,
    });
    Ok(format::report_to_json(&value))
}
