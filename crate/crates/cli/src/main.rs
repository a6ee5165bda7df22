use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opetope_kit::enumerate::{
    enumerate_pops_with, enumerate_positive_opetopes_with, work_limit_from_env, EnumerationBudget, Execution,
};
use opetope_kit::io::{emit_dot_hasse, emit_dot_tree, emit_dsl, emit_json, parse_dsl, parse_json, parse_map};
use opetope_kit::paths::{linear_order_s0, simple_zigzag, sources_partition, CertificateError};
use opetope_kit::{
    face_tree, from_hypergraph_view, is_dfc, is_opetopic_cardinal, is_positive_opetope, to_hypergraph_view,
    validate_morphism, Axiom, AxiomReport, FaceComplex, Morphism, RootedTree, TreeError, Violation,
};

#[derive(Parser)]
#[command(name = "opetope-kit", version, about = "Validate, convert and enumerate positive opetopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dsl,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pop,
    Phg,
    Cardinal,
    Opetope,
    Dfc,
    Both,
}

#[derive(clap::Args)]
struct Input {
    /// Complex file (`.dsl` or `.json`), or `-` for stdin.
    file: PathBuf,
    /// Input format; required for stdin.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Check axioms and print a report.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Re-emit a complex in another format.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: Format,
    },
    /// The rooted tree on the sources of a face.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        face: String,
        #[arg(long)]
        dot: bool,
    },
    /// The points in increasing order.
    Order {
        #[command(flatten)]
        input: Input,
    },
    /// The partition of a stratum by sources of non-target faces.
    Partition {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: usize,
    },
    /// The simple zig-zag between two sources of a face.
    Zigzag {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        anchor: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Enumerate complexes up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        max_faces: usize,
        /// Keep only positive opetopes.
        #[arg(long)]
        opetopes_only: bool,
        /// Print only the number of complexes.
        #[arg(long)]
        count_only: bool,
        /// Write one JSON file per complex into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        /// Run on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Hasse diagram in DOT.
    ExportDot {
        #[command(flatten)]
        input: Input,
    },
    /// Check a face map between two complexes.
    Morphism {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Lines `a => b`, or a JSON object.
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
}

/// A diagnostic with its exit code: 1 axiom failure, 2 input or usage
/// error, 3 internal error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { input, mode, json } => validate(&input, mode, json),
        Command::Convert { input, to } => {
            let c = load(&input)?;
            match to {
                Format::Json => println!("{}", emit_json(&c)),
                Format::Dsl => print!("{}", emit_dsl(&c).map_err(|e| Failure::usage(e.to_string()))?),
            }
            Ok(0)
        }
        Command::Tree { input, face, dot } => {
            let c = load_dfc(&input)?;
            if dot {
                print!("{}", emit_dot_tree(&c, &face).map_err(tree_failure)?);
            } else {
                print!("{}", render_tree(&face_tree(&c, &face).map_err(tree_failure)?));
            }
            Ok(0)
        }
        Command::Order { input } => {
            let c = load_dfc(&input)?;
            for p in linear_order_s0(&c).map_err(certificate_failure)? {
                println!("{p}");
            }
            Ok(0)
        }
        Command::Partition { input, dim } => {
            let c = load_dfc(&input)?;
            let p = sources_partition(&c, dim).map_err(certificate_failure)?;
            for (face, block) in &p.blocks {
                println!("{face} <- {}", block.join(", "));
            }
            println!("leftover: {}", p.leftover);
            Ok(0)
        }
        Command::Zigzag { input, anchor, from, to } => {
            let c = load_dfc(&input)?;
            println!("{}", simple_zigzag(&c, &anchor, &from, &to).map_err(certificate_failure)?);
            Ok(0)
        }
        Command::Enumerate { max_dim, max_faces, opetopes_only, count_only, emit_dir, sequential } => {
            let mut budget = EnumerationBudget::new(max_dim, max_faces);
            if let Some(limit) = work_limit_from_env().map_err(|e| Failure::usage(e.to_string()))? {
                budget = budget.with_work_limit(limit);
            }
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let found = if opetopes_only {
                enumerate_positive_opetopes_with(&budget, exec)
            } else {
                enumerate_pops_with(&budget, exec)
            }
            .map_err(|e| Failure::usage(e.to_string()))?;
            if count_only {
                println!("{}", found.len());
            } else if let Some(dir) = emit_dir {
                fs::create_dir_all(&dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
                let width = found.len().to_string().len().max(4);
                for (i, c) in found.iter().enumerate() {
                    let path = dir.join(format!("complex_{i:0width$}.json"));
                    fs::write(&path, emit_json(c) + "\n")
                        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                    println!("{}", path.display());
                }
            } else {
                let stdout = io::stdout();
                let mut out = stdout.lock();
                for c in &found {
                    let _ = writeln!(out, "{}", emit_json(c));
                }
            }
            Ok(0)
        }
        Command::ExportDot { input } => {
            print!("{}", emit_dot_hasse(&load(&input)?));
            Ok(0)
        }
        Command::Morphism { from, to, map, format, json } => {
            let s = load(&Input { file: from, format })?;
            let t = load(&Input { file: to, format })?;
            let text = read_text(&map)?;
            let pairs = parse_map(&text).map_err(|e| Failure::usage(format!("{}: {e}", map.display())))?;
            let m = Morphism::new(&s, &t, pairs).map_err(|e| Failure::usage(e.to_string()))?;
            let report = validate_morphism(&m);
            if json {
                println!("{}", with_mode("morphism", &report));
            } else {
                println!("morphism: {report}");
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn sniff(input: &Input) -> Result<Format, Failure> {
    if let Some(f) = input.format {
        return Ok(f);
    }
    if input.file == Path::new("-") {
        return Err(Failure::usage("reading stdin needs --format"));
    }
    match input.file.extension().and_then(|e| e.to_str()) {
        Some("dsl") => Ok(Format::Dsl),
        Some("json") => Ok(Format::Json),
        _ => Err(Failure::usage(format!("{}: unknown extension, pass --format", input.file.display()))),
    }
}

// Parse errors give exit 2; base-axiom failures are returned as a report.
fn load_checked(input: &Input) -> Result<Result<FaceComplex, AxiomReport>, Failure> {
    let format = sniff(input)?;
    let text = read_text(&input.file)?;
    let at = input.file.display();
    let doc = match format {
        Format::Dsl => parse_dsl(&text).map_err(|e| Failure::usage(format!("{at}: {e}")))?,
        Format::Json => parse_json(&text).map_err(|e| Failure::usage(format!("{at}: {e}")))?,
    };
    Ok(doc.build().map_err(|e| e.report()))
}

fn load(input: &Input) -> Result<FaceComplex, Failure> {
    load_checked(input)?.map_err(|r| Failure { code: 1, message: format!("not a valid complex: {r}") })
}

fn load_dfc(input: &Input) -> Result<FaceComplex, Failure> {
    let c = load(input)?;
    let report = is_dfc(&c);
    if !report.passed() {
        return Err(Failure { code: 1, message: format!("not a dendritic face complex: {report}") });
    }
    Ok(c)
}

fn tree_failure(e: TreeError) -> Failure {
    match e {
        TreeError::Query(q) => Failure::usage(q.to_string()),
        TreeError::InternalInvariantBroken(s) => Failure::internal(s),
    }
}

fn certificate_failure(e: CertificateError) -> Failure {
    match e {
        CertificateError::InternalInvariantBroken(s) => Failure::internal(s),
        other => Failure::usage(other.to_string()),
    }
}

fn with_mode(mode: &str, report: &AxiomReport) -> Value {
    let mut v = report.to_json_value();
    v["mode"] = json!(mode);
    v
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Pop => "pop",
        Mode::Phg => "phg",
        Mode::Cardinal => "cardinal",
        Mode::Opetope => "opetope",
        Mode::Dfc => "dfc",
        Mode::Both => "both",
    }
}

fn hypergraph_round_trip(c: &FaceComplex) -> AxiomReport {
    let view = to_hypergraph_view(c);
    let ok = from_hypergraph_view(&view).is_ok_and(|d| d == *c && to_hypergraph_view(&d) == view);
    let violations = if ok {
        vec![]
    } else {
        vec![Violation::new(Axiom::HypergraphRoundTrip, vec![], "tables do not rebuild the complex")]
    };
    AxiomReport::for_axiom(Axiom::HypergraphRoundTrip, violations)
}

fn validate(input: &Input, mode: Mode, as_json: bool) -> Outcome {
    let name = mode_name(mode);
    let c = match load_checked(input)? {
        Ok(c) => c,
        Err(report) => {
            if as_json {
                println!("{}", with_mode(name, &report));
            } else {
                println!("pop: {report}");
            }
            return Ok(1);
        }
    };
    let single = |report: AxiomReport| {
        if as_json {
            println!("{}", with_mode(name, &report));
        } else {
            println!("{name}: {report}");
        }
        Ok(if report.passed() { 0 } else { 1 })
    };
    match mode {
        Mode::Pop => single(AxiomReport::base()),
        Mode::Phg => single(hypergraph_round_trip(&c)),
        Mode::Cardinal => single(is_opetopic_cardinal(&c)),
        Mode::Opetope => single(is_positive_opetope(&c)),
        Mode::Dfc => single(is_dfc(&c)),
        Mode::Both => {
            let dfc = is_dfc(&c);
            let ope = is_positive_opetope(&c);
            let agree = dfc.passed() == ope.passed();
            if as_json {
                let v = json!({
                    "mode": "both",
                    "dfc": dfc.to_json_value(),
                    "opetope": ope.to_json_value(),
                    "agreement": agree,
                });
                println!("{v}");
            } else {
                println!("dfc: {dfc}\nopetope: {ope}\nagreement: {}", if agree { "yes" } else { "no" });
            }
            if !agree {
                eprintln!("internal error: the two axiom systems disagree; reproducer:");
                eprintln!("{}", emit_json(&c));
                return Ok(3);
            }
            Ok(if dfc.passed() { 0 } else { 1 })
        }
    }
}

fn render_tree(t: &RootedTree) -> String {
    let mut out = String::new();
    render_node(t, t.root(), 0, &mut out);
    out
}

fn render_node(t: &RootedTree, node: &str, depth: usize, out: &mut String) {
    if depth == 0 {
        out.push_str(node);
        out.push('\n');
    }
    for slot in t.arity(node) {
        let pad = "  ".repeat(depth + 1);
        match t.child_at(node, slot) {
            Some(child) => {
                out.push_str(&format!("{pad}{slot} -> {child}\n"));
                render_node(t, child, depth + 1, out);
            }
            None => out.push_str(&format!("{pad}{slot} (leaf)\n")),
        }
    }
}
