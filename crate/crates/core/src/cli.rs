//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success, verdict true                               |
//! | 1    | verdict false                                       |
//! | 2    | invalid lattice                                     |
//! | 3    | parse, I/O or usage error                           |
//! | 4    | budget exceeded                                     |
//! | 5    | unknown object or attribute label                   |
//!
//! With `--format json` every command writes one JSON document carrying
//! `"schema": "reductkit.v1"`. Keys are sorted, so identical inputs give
//! byte-identical output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::context::{LContext, LSubset, SubcontextSelector};
use crate::derivation::{enumerate_concepts, exists_op, up, Mode, Strategy, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::format::{load_context, load_lattice};
use crate::lattice::{Builtin, Lattice, LatticeSource};
use crate::reduct::{is_reduct, search_reducts, CheckOptions, Method, ReductReport, SearchOptions, SideResult};
use crate::theorem::{verify_interdefinability, Case, InterdefinabilityReport, SamplerConfig};

pub const SCHEMA: &str = "reductkit.v1";

#[derive(Parser, Debug)]
#[command(name = "reductkit", version, about = "Fuzzy concept lattices and reducts of L-contexts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the residuated lattice axioms and the law of double negation.
    Validate {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the concept lattice of a context.
    Concepts {
        #[command(flatten)]
        input: ContextArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "generators")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether a subcontext is a reduct. Exits 1 when it is not.
    Check {
        #[command(flatten)]
        input: ContextArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Comma-separated kept object labels (default: all).
        #[arg(long)]
        objects: Option<String>,
        /// Comma-separated kept attribute labels (default: all).
        #[arg(long)]
        attributes: Option<String>,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the minimal reducts, or all reducts with --all.
    Search {
        #[command(flatten)]
        input: ContextArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare FCA reducts of phi with RST reducts of its negation.
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Required unless --exhaustive.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 3)]
        max_attributes: usize,
        /// Enumerate every context up to the size bounds.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LatticeArgs {
    /// Lattice spec file.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Builtin lattice: boolean, lukasiewicz(n) or godel(n).
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Debug)]
struct ContextArgs {
    #[arg(long)]
    context: PathBuf,
    /// Use the pointwise negation of the relation.
    #[arg(long)]
    negate: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Fca,
    Rst,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Naive,
    Generators,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Exhaustive,
    Generators,
    Auto,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Text,
    Json,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fca => Mode::Fca,
            ModeArg::Rst => Mode::Rst,
        }
    }
}

impl CheckArgs {
    fn options(&self) -> Result<CheckOptions> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        let method = match self.method {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Generators => Method::Generators,
            MethodArg::Auto => Method::Auto,
        };
        Ok(CheckOptions { method, budget: self.budget })
    }
}

/// A rendered result: exit code plus text and JSON forms.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Lattice(_) => 2,
        Error::BudgetExceeded { .. } => 4,
        Error::UnknownLabel(_) => 5,
        _ => 3,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                3
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let output = match &cli.command {
        Command::Validate { output, .. }
        | Command::Concepts { output, .. }
        | Command::Check { output, .. }
        | Command::Search { output, .. }
        | Command::Verify { output, .. } => output,
    };
    let command = match &cli.command {
        Command::Validate { .. } => "validate",
        Command::Concepts { .. } => "concepts",
        Command::Check { .. } => "check",
        Command::Search { .. } => "search",
        Command::Verify { .. } => "verify",
    };
    let outcome = dispatch(&cli.command).unwrap_or_else(|e| failure(&e));
    if outcome.code >= 2 {
        let _ = writeln!(err, "reductkit: {}", outcome_error(&outcome));
    }
    let rendered = match output.format {
        FormatArg::Text => outcome.text,
        FormatArg::Json => {
            let mut doc = outcome.json;
            doc["schema"] = json!(SCHEMA);
            doc["command"] = json!(command);
            doc["exit_code"] = json!(outcome.code);
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        }
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                let _ = writeln!(err, "reductkit: io error on {}: {e}", path.display());
                return 3;
            }
        }
        None => {
            let _ = out.write_all(rendered.as_bytes());
        }
    }
    outcome.code
}

fn outcome_error(o: &Outcome) -> String {
    o.json["error"]["message"].as_str().unwrap_or("error").to_owned()
}

fn failure(e: &Error) -> Outcome {
    let code = exit_code(e);
    let kind = match e {
        Error::Lattice(le) => le.code(),
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::UnknownLabel(_) => "unknown-label",
        Error::Parse { .. } => "parse",
        Error::Io { .. } => "io",
        _ => "invalid-input",
    };
    Outcome {
        code,
        text: String::new(),
        json: json!({ "error": { "kind": kind, "message": e.to_string() } }),
    }
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Validate { lattice, .. } => cmd_validate(lattice),
        Command::Concepts { input, mode, strategy, budget, .. } => {
            let strategy = match strategy {
                StrategyArg::Naive => Strategy::Naive,
                StrategyArg::Generators => Strategy::Generators,
            };
            cmd_concepts(&read_context(input)?, (*mode).into(), strategy, *budget)
        }
        Command::Check { input, mode, objects, attributes, check, .. } => {
            let ctx = read_context(input)?;
            let sel = selector(&ctx, objects.as_deref(), attributes.as_deref())?;
            cmd_check(&ctx, &sel, (*mode).into(), check.options()?)
        }
        Command::Search { input, mode, all, check, .. } => {
            let opts = SearchOptions { minimal_only: !all, check: check.options()? };
            cmd_search(&read_context(input)?, (*mode).into(), opts)
        }
        Command::Verify { lattice, seed, samples, max_objects, max_attributes, exhaustive, check, .. } => {
            let seed = match (seed, exhaustive) {
                (Some(s), _) => *s,
                (None, true) => 0,
                (None, false) => return Err(Error::InvalidArgument("--seed is required unless --exhaustive".into())),
            };
            let cfg = SamplerConfig {
                max_objects: *max_objects,
                max_attributes: *max_attributes,
                samples: *samples,
                seed,
                exhaustive: *exhaustive,
                check: check.options()?,
            };
            cmd_verify(Arc::new(read_lattice(lattice)?), &cfg)
        }
    }
}

fn read_lattice(args: &LatticeArgs) -> Result<Lattice> {
    match (&args.lattice, &args.builtin) {
        (Some(path), _) => load_lattice(path),
        (None, Some(desc)) => desc.parse::<Builtin>()?.build(),
        (None, None) => Err(Error::InvalidArgument("one of --lattice or --builtin is required".into())),
    }
}

fn read_context(args: &ContextArgs) -> Result<LContext> {
    let ctx = load_context(&args.context)?;
    Ok(if args.negate { ctx.negate() } else { ctx })
}

fn split_labels(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn selector(ctx: &LContext, objects: Option<&str>, attributes: Option<&str>) -> Result<SubcontextSelector> {
    let full = SubcontextSelector::full(ctx);
    let (all_objs, all_attrs) = full.labels(ctx);
    let objs = objects.map(split_labels).unwrap_or(all_objs);
    let attrs = attributes.map(split_labels).unwrap_or(all_attrs);
    SubcontextSelector::from_labels(ctx, &objs, &attrs)
}

fn lattice_name(l: &Lattice) -> String {
    match l.source() {
        LatticeSource::Builtin(b) => b.to_string(),
        LatticeSource::Explicit => "explicit".to_owned(),
    }
}

fn names(l: &Lattice, s: &LSubset) -> Vec<String> {
    s.to_names(l)
}

/// `label=value` pairs, space separated.
fn labelled(labels: &[String], l: &Lattice, s: &LSubset) -> String {
    if labels.is_empty() {
        return "(empty)".to_owned();
    }
    labels.iter().zip(s.to_names(l)).map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn set_text(labels: &[&str]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn cmd_validate(args: &LatticeArgs) -> Result<Outcome> {
    let l = match read_lattice(args) {
        Ok(l) => l,
        Err(Error::Lattice(le)) => {
            let text = format!("valid: false\nviolation: {}\n{}\n", le.code(), le);
            return Ok(Outcome {
                code: 2,
                text,
                json: json!({
                    "valid": false,
                    "violation": le.code(),
                    "error": { "kind": le.code(), "message": le.to_string() },
                }),
            });
        }
        Err(e) => return Err(e),
    };
    let witness = l.double_negation_witness();
    let mut text = String::new();
    let _ = writeln!(text, "lattice: {}", lattice_name(&l));
    let _ = writeln!(text, "elements: {}", l.names().join(" "));
    let _ = writeln!(text, "chain: {}", l.is_chain());
    let _ = writeln!(text, "valid: true");
    let _ = writeln!(text, "dne: {}", witness.is_none());
    if let Some(a) = witness {
        let nn = l.negation(l.negation(a));
        let _ = writeln!(text, "dne witness: {} (double negation {})", l.name(a), l.name(nn));
    }
    let json = json!({
        "lattice": lattice_name(&l),
        "elements": l.names(),
        "chain": l.is_chain(),
        "valid": true,
        "dne": witness.is_none(),
        "dne_witness": witness.map(|a| l.name(a).to_owned()),
    });
    Ok(Outcome { code: 0, text, json })
}

fn cmd_concepts(ctx: &LContext, mode: Mode, strategy: Strategy, budget: u64) -> Result<Outcome> {
    let cl = enumerate_concepts(ctx, mode, strategy, budget)?;
    let l = ctx.lattice();
    let mut text = String::new();
    let _ = writeln!(text, "mode: {mode}");
    let _ = writeln!(text, "lattice: {}", lattice_name(l));
    let _ = writeln!(text, "concepts: {}", cl.len());
    let mut listing = Vec::new();
    for mu in &cl.concepts {
        let partner = match mode {
            Mode::Fca => up(ctx, mu)?,
            Mode::Rst => exists_op(ctx, mu)?,
        };
        let _ = writeln!(
            text,
            "  {} | {}",
            labelled(ctx.objects(), l, mu),
            labelled(ctx.attributes(), l, &partner)
        );
        listing.push(json!({ "extent": names(l, mu), "intent": names(l, &partner) }));
    }
    let order: Vec<Vec<String>> =
        cl.order.iter().map(|row| row.iter().map(|&e| l.name(e).to_owned()).collect()).collect();
    let json = json!({
        "mode": mode.to_string(),
        "lattice": lattice_name(l),
        "objects": ctx.objects(),
        "attributes": ctx.attributes(),
        "count": cl.len(),
        "concepts": listing,
        "order": order,
    });
    Ok(Outcome { code: 0, text, json })
}

fn side_json(l: &Lattice, side: &SideResult) -> Value {
    json!({
        "reducible": side.reducible,
        "examined": side.examined,
        "witness": side.witness.as_ref().map(|w| names(l, w)),
        "full_image": side.witness_images.as_ref().map(|(f, _)| names(l, f)),
        "restricted_image": side.witness_images.as_ref().map(|(_, r)| names(l, r)),
    })
}

fn side_text(text: &mut String, title: &str, carrier: &[String], l: &Lattice, side: &SideResult) {
    if side.reducible {
        let _ = writeln!(text, "{title}: reducible ({} examined)", side.examined);
        return;
    }
    let _ = writeln!(text, "{title}: not reducible ({} examined)", side.examined);
    if let (Some(w), Some((full, restricted))) = (&side.witness, &side.witness_images) {
        let _ = writeln!(text, "  witness:    {}", labelled(carrier, l, w));
        let _ = writeln!(text, "  full:       {}", labelled(carrier, l, full));
        let _ = writeln!(text, "  restricted: {}", labelled(carrier, l, restricted));
    }
}

fn report_outcome(ctx: &LContext, report: &ReductReport) -> Outcome {
    let l = ctx.lattice();
    let (objs, attrs) = report.selector.labels(ctx);
    let mut text = String::new();
    let _ = writeln!(text, "mode: {}", report.mode);
    let _ = writeln!(text, "method: {}", report.method);
    let _ = writeln!(text, "objects: {}", set_text(&objs));
    let _ = writeln!(text, "attributes: {}", set_text(&attrs));
    side_text(&mut text, "object side", ctx.attributes(), l, &report.object_side);
    side_text(&mut text, "attribute side", ctx.objects(), l, &report.attribute_side);
    let _ = writeln!(text, "verdict: {}", report.verdict);
    let json = json!({
        "mode": report.mode.to_string(),
        "method": report.method.to_string(),
        "lattice": lattice_name(l),
        "objects": objs,
        "attributes": attrs,
        "object_side": side_json(l, &report.object_side),
        "attribute_side": side_json(l, &report.attribute_side),
        "verdict": report.verdict,
    });
    Outcome { code: if report.verdict { 0 } else { 1 }, text, json }
}

fn cmd_check(ctx: &LContext, sel: &SubcontextSelector, mode: Mode, opts: CheckOptions) -> Result<Outcome> {
    Ok(report_outcome(ctx, &is_reduct(ctx, sel, mode, opts)?))
}

fn selector_json(ctx: &LContext, sel: &SubcontextSelector) -> Value {
    let (objs, attrs) = sel.labels(ctx);
    json!({ "objects": objs, "attributes": attrs })
}

fn selector_text(ctx: &LContext, sel: &SubcontextSelector) -> String {
    let (objs, attrs) = sel.labels(ctx);
    format!("{} {}", set_text(&objs), set_text(&attrs))
}

fn cmd_search(ctx: &LContext, mode: Mode, opts: SearchOptions) -> Result<Outcome> {
    let report = search_reducts(ctx, mode, opts)?;
    let mut text = String::new();
    let _ = writeln!(text, "mode: {mode}");
    let _ = writeln!(text, "method: {}", report.method);
    let _ = writeln!(text, "selectors evaluated: {}", report.selectors_evaluated);
    let kind = if opts.minimal_only { "minimal reducts" } else { "reducts" };
    let _ = writeln!(text, "{kind}: {}", report.reducts.len());
    for sel in &report.reducts {
        let _ = writeln!(text, "  {}", selector_text(ctx, sel));
    }
    let _ = writeln!(text, "monotonicity violations: {}", report.monotonicity_violations.len());
    for (r, ext) in &report.monotonicity_violations {
        let _ = writeln!(text, "  {} extends to non-reduct {}", selector_text(ctx, r), selector_text(ctx, ext));
    }
    let json = json!({
        "mode": mode.to_string(),
        "method": report.method.to_string(),
        "minimal_only": opts.minimal_only,
        "selectors_evaluated": report.selectors_evaluated,
        "reducts": report.reducts.iter().map(|s| selector_json(ctx, s)).collect::<Vec<_>>(),
        "monotonicity_violations": report
            .monotonicity_violations
            .iter()
            .map(|(r, e)| json!({ "reduct": selector_json(ctx, r), "extension": selector_json(ctx, e) }))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome { code: 0, text, json })
}

fn case_text(text: &mut String, c: &Case) {
    let _ = writeln!(text, "  source: {} #{}", c.source, c.index);
    let _ = writeln!(text, "  attributes: {}", c.attributes.join(" "));
    for (x, row) in c.objects.iter().zip(&c.rows) {
        let _ = writeln!(text, "  row {x} {}", row.join(" "));
    }
    let _ = writeln!(text, "  kept objects: {{{}}}", c.kept_objects.join(", "));
    let _ = writeln!(text, "  kept attributes: {{{}}}", c.kept_attributes.join(", "));
    let _ = writeln!(text, "  fca reduct of phi: {}", c.fca_reduct);
    let _ = writeln!(text, "  rst reduct of negated phi: {}", c.rst_reduct);
}

fn cmd_verify(lattice: Arc<Lattice>, cfg: &SamplerConfig) -> Result<Outcome> {
    let report: InterdefinabilityReport = verify_interdefinability(lattice.clone(), cfg)?;
    let mut text = String::new();
    let _ = writeln!(text, "lattice: {}", lattice_name(&lattice));
    let _ = writeln!(text, "dne: {}", report.dne);
    let _ = writeln!(text, "seed: {}", report.seed);
    let _ = writeln!(text, "contexts checked: {}", report.contexts_checked);
    let _ = writeln!(text, "pairs checked: {}", report.pairs_checked);
    let _ = writeln!(text, "disagreements: {}", report.disagreements.len());
    if report.dne {
        for c in &report.disagreements {
            let _ = writeln!(text, "violation:");
            case_text(&mut text, c);
        }
    } else {
        match &report.witness {
            Some(w) => {
                let _ = writeln!(text, "witness:");
                case_text(&mut text, w);
            }
            None => {
                let _ = writeln!(text, "witness: none found");
            }
        }
    }
    let _ = writeln!(text, "ok: {}", report.ok);
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["lattice"] = json!(lattice_name(&lattice));
    json["samples"] = json!(cfg.samples);
    json["exhaustive"] = json!(cfg.exhaustive);
    json["max_objects"] = json!(cfg.max_objects);
    json["max_attributes"] = json!(cfg.max_attributes);
    Ok(Outcome { code: if report.ok { 0 } else { 1 }, text, json })
}
