use std::fmt::Debug;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::load::{load_relation, load_sequence, load_tree, load_vec, LoadError};
use super::selftest::run_selftest;
use super::syntax::{format_letters, format_xword, parse_word, EvalError, SyntaxError};
use crate::archipelago::{
    eta_element, eta_max_index, ha_equivalent, ker_theta_scan, KernelVerdict,
};
use crate::becker::{
    assembly_connected, build_assembly, build_gadget, export_svg, gadget_components,
    segment_disjointness_check, BeckerError,
};
use crate::earring::{
    embed_word, in_image_up_to_depth, stabilization_report, EarringError, MembershipVerdict,
    TruncatedCoherentSequence,
};
use crate::relcalc::{e_normal_form, fe_equivalent, quotient_word, EquivRelation, RelError, XWord};
use crate::word::{free_reduce, project, ReducedWord, Word};

/// Outcome of one invocation: exit status, JSON payload, one-line summary.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: i32,
    pub payload: Value,
    pub summary: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "wildwords",
    version,
    about = "Word calculus for wild fundamental groups"
)]
struct Cli {
    /// Print the JSON payload instead of the summary line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Freely reduce a word.
    Reduce { word: String },
    /// Delete generators above a level and reduce.
    Project {
        #[arg(long)]
        level: u32,
        word: String,
    },
    /// Truncated earring-group elements.
    #[command(subcommand)]
    Earring(EarringCommand),
    /// Harmonic archipelago kernel test and the branch gadget.
    #[command(subcommand)]
    Ha(HaCommand),
    /// The free group over an equivalence relation.
    #[command(subcommand)]
    Fe(FeCommand),
    /// Tree gadgets and fiber assemblies.
    #[command(subcommand)]
    Becker(BeckerCommand),
    /// Seeded randomized checks of the word calculus.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// An operand is word text, or `@path` naming a sequence JSON file.
#[derive(clap::Args, Debug)]
struct SequenceArgs {
    /// Depth for word operands (default: the largest generator index).
    #[arg(long)]
    depth: Option<u32>,
    /// Word operand.
    #[arg(long, conflicts_with = "operand")]
    word: Option<String>,
    /// Word text or `@file.json`.
    operand: Option<String>,
}

#[derive(Subcommand, Debug)]
enum EarringCommand {
    /// Stabilization report and truncated membership verdict.
    Check(SequenceArgs),
}

#[derive(Subcommand, Debug)]
enum HaCommand {
    /// Least kernel witness of one element.
    Kernel(SequenceArgs),
    /// Kernel test for `a^-1 b`.
    Equiv {
        #[arg(long)]
        depth: Option<u32>,
        left: String,
        right: String,
    },
    /// Levels of the gadget image of a prefix vector file.
    Eta {
        #[arg(long)]
        depth: Option<u32>,
        vec: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum FeCommand {
    /// Normal form with no adjacent cancelling related pair.
    Normal {
        #[arg(long)]
        relation: PathBuf,
        word: String,
    },
    /// Equivalence of two words.
    Eq {
        #[arg(long)]
        relation: PathBuf,
        left: String,
        right: String,
    },
    /// Image in the free group on the classes.
    Quotient {
        #[arg(long)]
        relation: PathBuf,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum BeckerCommand {
    /// Gadget geometry and its path components.
    Gadget {
        #[arg(long)]
        tree: PathBuf,
        /// Render depth.
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Fiber assembly over the binary strings of a given even length.
    Assembly {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Whether two auxiliary Cantor points are path connected.
    Connect {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        depth: usize,
        left: String,
        right: String,
    },
    /// SVG drawing of a gadget.
    Svg {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Output file; the document goes into the payload when omitted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Io { path: PathBuf, message: String },
    Syntax(SyntaxError),
    Eval(EvalError),
    Earring(EarringError),
    Rel(RelError),
    Becker(BeckerError),
    Load { path: PathBuf, error: LoadError },
    Selftest(Value),
}

fn variant_name<T: Debug>(e: &T) -> String {
    let text = format!("{e:?}");
    text.split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .next()
        .unwrap_or_default()
        .to_string()
}

fn load_error_name(e: &LoadError) -> String {
    match e {
        LoadError::Json(_) => "MalformedJson".into(),
        LoadError::LevelCount { .. } => "DepthMismatch".into(),
        LoadError::Syntax { .. } => "SyntaxError".into(),
        LoadError::Eval { source, .. } => variant_name(source),
        LoadError::Earring(inner) => variant_name(inner),
        LoadError::Prefix { .. } => "BranchPrefixError".into(),
        LoadError::Relation(inner) => variant_name(inner),
    }
}

impl Failure {
    fn name(&self) -> String {
        match self {
            Failure::Io { .. } => "IOError".into(),
            Failure::Syntax(_) => "SyntaxError".into(),
            Failure::Eval(e) => variant_name(e),
            Failure::Earring(e) => variant_name(e),
            Failure::Rel(e) => variant_name(e),
            Failure::Becker(BeckerError::Relation(e)) => variant_name(e),
            Failure::Becker(BeckerError::Tree(e)) => variant_name(e),
            Failure::Becker(BeckerError::Io(_)) => "IOError".into(),
            Failure::Becker(BeckerError::Json(_)) => "MalformedJson".into(),
            Failure::Becker(e) => variant_name(e),
            Failure::Load { error, .. } => load_error_name(error),
            Failure::Selftest(_) => "SelftestFailed".into(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::Syntax(e) => e.to_string(),
            Failure::Eval(e) => e.to_string(),
            Failure::Earring(e) => e.to_string(),
            Failure::Rel(e) => e.to_string(),
            Failure::Becker(e) => e.to_string(),
            Failure::Load { path, error } => format!("{}: {error}", path.display()),
            Failure::Selftest(_) => "randomized checks failed".into(),
        }
    }

    fn into_result(self) -> CommandResult {
        let name = self.name();
        let message = self.message();
        let mut payload = json!({ "error": name, "message": message });
        match &self {
            Failure::Syntax(e)
            | Failure::Load {
                error: LoadError::Syntax { source: e, .. },
                ..
            } => {
                payload["offset"] = json!(e.offset);
                payload["expected"] = json!(e.expected);
            }
            Failure::Selftest(report) => payload["report"] = report.clone(),
            _ => {}
        }
        CommandResult {
            status: 1,
            payload,
            summary: format!("error: {name}: {message}"),
        }
    }
}

macro_rules! impl_from {
    ($($ty:ty => $variant:ident),*) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Failure {
                Failure::$variant(e)
            }
        })*
    };
}

impl_from!(SyntaxError => Syntax, EvalError => Eval, EarringError => Earring, RelError => Rel, BeckerError => Becker);

type Outcome = Result<(Value, String), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    status: 0,
                    payload: json!({ "help": text }),
                    summary: text.trim_end().to_string(),
                },
                _ => CommandResult {
                    status: 2,
                    payload: json!({ "error": "UsageError", "message": text.trim_end() }),
                    summary: text.trim_end().to_string(),
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok((payload, summary)) => CommandResult {
            status: 0,
            payload,
            summary,
        },
        Err(f) => f.into_result(),
    }
}

/// Whether `--json` was requested; usage errors count as no.
pub fn wants_json<I, T>(argv: I) -> bool
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map(|c| c.json).unwrap_or(false)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load<T>(path: &Path, f: impl Fn(&str) -> Result<T, LoadError>) -> Result<T, Failure> {
    f(&read(path)?).map_err(|error| Failure::Load {
        path: path.to_path_buf(),
        error,
    })
}

fn gen_word(text: &str) -> Result<Word, Failure> {
    Ok(parse_word(text)?.to_word()?)
}

fn point_word(text: &str) -> Result<XWord, Failure> {
    Ok(parse_word(text)?.to_xword()?)
}

enum Operand {
    Word(ReducedWord),
    Sequence(TruncatedCoherentSequence),
}

fn operand(text: &str) -> Result<Operand, Failure> {
    match text.strip_prefix('@') {
        Some(path) => load(Path::new(path), load_sequence).map(Operand::Sequence),
        None => Ok(Operand::Word(free_reduce(&gen_word(text)?))),
    }
}

fn default_depth(ops: &[&Operand]) -> u32 {
    ops.iter()
        .map(|op| match op {
            Operand::Word(w) => w.max_index(),
            Operand::Sequence(s) => s.depth(),
        })
        .max()
        .unwrap_or(0)
        .max(1)
}

fn realize(op: Operand, depth: u32) -> Result<TruncatedCoherentSequence, Failure> {
    match op {
        Operand::Word(w) => Ok(embed_word(&w, depth)?),
        Operand::Sequence(s) if s.depth() == depth => Ok(s),
        Operand::Sequence(s) => Err(EarringError::DepthMismatch {
            left: s.depth(),
            right: depth,
        }
        .into()),
    }
}

fn single_sequence(args: SequenceArgs) -> Result<TruncatedCoherentSequence, Failure> {
    let text = match args.word.or(args.operand) {
        Some(t) => t,
        None => {
            return Err(Failure::Syntax(SyntaxError {
                offset: 0,
                expected: vec!["word or @file operand".into()],
            }))
        }
    };
    let op = operand(&text)?;
    let depth = args.depth.unwrap_or_else(|| default_depth(&[&op]));
    realize(op, depth)
}

fn verdict_json(v: KernelVerdict) -> Value {
    match v {
        KernelVerdict::Witnessed(n) => json!({ "verdict": "witnessed", "N": n }),
        KernelVerdict::NoWitness { depth } => json!({ "verdict": "no-witness", "depth": depth }),
    }
}

fn verdict_summary(v: KernelVerdict) -> String {
    match v {
        KernelVerdict::Witnessed(n) => format!("witnessed N={n}"),
        KernelVerdict::NoWitness { depth } => format!("no witness up to depth {depth}"),
    }
}

fn levels_json(a: &TruncatedCoherentSequence) -> Value {
    json!(a
        .levels()
        .iter()
        .map(|w| format_letters(w.letters()))
        .collect::<Vec<_>>())
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Reduce { word } => {
            let r = free_reduce(&gen_word(&word)?);
            let text = format_letters(r.letters());
            Ok((json!({ "word": text, "length": r.len() }), text))
        }
        Command::Project { level, word } => {
            let r = project(&free_reduce(&gen_word(&word)?), level);
            let text = format_letters(r.letters());
            Ok((json!({ "word": text, "level": level }), text))
        }
        Command::Earring(EarringCommand::Check(args)) => earring_check(single_sequence(args)?),
        Command::Ha(cmd) => ha(cmd),
        Command::Fe(cmd) => fe(cmd),
        Command::Becker(cmd) => becker(cmd),
        Command::Selftest { seed, cases } => {
            let report = run_selftest(seed, cases);
            let failures = report.failures();
            let payload = serde_json::to_value(&report).expect("report serializes");
            if failures == 0 {
                Ok((
                    payload,
                    format!("selftest seed {seed}: {cases} cases per check, all passed"),
                ))
            } else {
                Err(Failure::Selftest(payload))
            }
        }
    }
}

fn earring_check(a: TruncatedCoherentSequence) -> Outcome {
    let report = stabilization_report(&a);
    let series: Vec<Value> = report
        .series
        .iter()
        .map(|s| json!({ "generator": s.generator, "counts": s.counts, "witness": s.witness }))
        .collect();
    let (verdict, summary) = match in_image_up_to_depth(&a) {
        MembershipVerdict::ConsistentWithMembership(w) => (
            json!({ "verdict": "consistent-with-membership", "witnesses": w }),
            format!("consistent with membership at depth {}", a.depth()),
        ),
        MembershipVerdict::NotStabilized(ks) => (
            json!({ "verdict": "not-stabilized", "generators": ks }),
            format!("not stabilized at depth {}: generators {ks:?}", a.depth()),
        ),
    };
    let payload = json!({
        "depth": a.depth(),
        "levels": levels_json(&a),
        "series": series,
        "membership": verdict,
    });
    Ok((payload, summary))
}

fn ha(cmd: HaCommand) -> Outcome {
    match cmd {
        HaCommand::Kernel(args) => {
            let v = ker_theta_scan(&single_sequence(args)?);
            Ok((verdict_json(v), verdict_summary(v)))
        }
        HaCommand::Equiv { depth, left, right } => {
            let (l, r) = (operand(&left)?, operand(&right)?);
            let depth = depth.unwrap_or_else(|| default_depth(&[&l, &r]));
            let v = ha_equivalent(&realize(l, depth)?, &realize(r, depth)?)?;
            Ok((verdict_json(v), verdict_summary(v)))
        }
        HaCommand::Eta { depth, vec } => {
            let v = load(&vec, load_vec)?;
            let depth = match depth {
                Some(d) => d,
                None => u32::try_from(eta_max_index(&v)).unwrap_or(u32::MAX).max(1),
            };
            let a = eta_element(&v, depth);
            let top = a
                .level(depth)
                .map(|w| format_letters(w.letters()))
                .unwrap_or_default();
            Ok((json!({ "depth": depth, "levels": levels_json(&a) }), top))
        }
    }
}

fn fe(cmd: FeCommand) -> Outcome {
    match cmd {
        FeCommand::Normal { relation, word } => {
            let e: EquivRelation = load(&relation, load_relation)?;
            let nf = e_normal_form(&e, &point_word(&word)?)?;
            let text = format_xword(&nf.to_xword());
            Ok((json!({ "normal": text, "length": nf.len() }), text))
        }
        FeCommand::Eq {
            relation,
            left,
            right,
        } => {
            let e = load(&relation, load_relation)?;
            let eq = fe_equivalent(&e, &point_word(&left)?, &point_word(&right)?)?;
            Ok((json!({ "equivalent": eq }), eq.to_string()))
        }
        FeCommand::Quotient { relation, word } => {
            let e = load(&relation, load_relation)?;
            let text = format_xword(&quotient_word(&e, &point_word(&word)?)?);
            Ok((json!({ "quotient": text }), text))
        }
    }
}

fn becker(cmd: BeckerCommand) -> Outcome {
    match cmd {
        BeckerCommand::Gadget { tree, depth } => {
            let t = load(&tree, load_tree)?;
            let g = build_gadget(&t, depth)?;
            let c = gadget_components(&t);
            let summary = format!(
                "{} segments, {} zigzags, {} component(s)",
                g.segments.len(),
                g.polylines.len(),
                c.count
            );
            Ok((json!({ "geometry": g, "components": c }), summary))
        }
        BeckerCommand::Assembly { relation, depth } => {
            let e = load(&relation, load_relation)?;
            let a = build_assembly(&e, depth)?;
            let classes = a.cprime_classes();
            let disjoint = segment_disjointness_check(&a);
            let branched = a.fibers.values().filter(|t| t.has_branch()).count();
            let summary = format!(
                "{} fibers, {branched} with a branch, {} component(s) on C', segments disjoint: {disjoint}",
                a.points.len(),
                classes.len()
            );
            Ok((
                json!({ "assembly": a, "classes": classes, "segments_disjoint": disjoint }),
                summary,
            ))
        }
        BeckerCommand::Connect {
            relation,
            depth,
            left,
            right,
        } => {
            let e = load(&relation, load_relation)?;
            let a = build_assembly(&e, depth)?;
            let c = assembly_connected(&a, &left, &right)?;
            Ok((json!({ "connected": c }), c.to_string()))
        }
        BeckerCommand::Svg { tree, depth, svg } => {
            let t = load(&tree, load_tree)?;
            let doc = export_svg(&build_gadget(&t, depth)?);
            match svg {
                Some(path) => {
                    fs::write(&path, &doc).map_err(|e| Failure::Io {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                    let shown = path.display().to_string();
                    Ok((
                        json!({ "path": shown, "bytes": doc.len() }),
                        format!("wrote {shown}"),
                    ))
                }
                None => Ok((json!({ "svg": doc }), doc.trim_end().to_string())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        run_command(std::iter::once("wildwords").chain(args.iter().copied()))
    }

    #[test]
    fn reduce_and_project() {
        let r = run(&["reduce", "g1 g2 g2~"]);
        assert_eq!(r.status, 0);
        assert_eq!(r.payload["word"], "g1");
        let r = run(&["project", "--level", "1", "g1 g2 g1"]);
        assert_eq!(r.payload["word"], "g1 g1");
    }

    #[test]
    fn kernel_verdicts() {
        let r = run(&["ha", "kernel", "--depth", "5", "--word", "g1"]);
        assert_eq!(r.payload, json!({ "verdict": "no-witness", "depth": 5 }));
        let r = run(&["ha", "equiv", "--depth", "4", "g1", "g1"]);
        assert_eq!(r.payload, json!({ "verdict": "witnessed", "N": 1 }));
    }

    #[test]
    fn failures_have_status() {
        let r = run(&["reduce", "g0"]);
        assert_eq!(r.status, 1);
        assert_eq!(r.payload["error"], "SyntaxError");
        assert_eq!(r.payload["offset"], 1);
        assert_eq!(run(&["frobnicate"]).status, 2);
        assert_eq!(run(&["project", "g1"]).status, 2);
        let r = run(&["ha", "kernel", "--depth", "1", "--word", "g2"]);
        assert_eq!(r.payload["error"], "DepthTooSmall");
        let r = run(&[
            "fe",
            "eq",
            "--relation",
            "/nonexistent/rel.json",
            "'a'",
            "'b'",
        ]);
        assert_eq!(
            (r.status, r.payload["error"].as_str()),
            (1, Some("IOError"))
        );
        assert_eq!(run(&["--help"]).status, 0);
    }
}
