//! The `relattice` command line.
//!
//! Exit status: 0 on success, 1 when loading, parsing or evaluating fails
//! (or a law check fails), 2 for usage errors.

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use relattice::fca::{check_bridge, concept_to_relation, emit_dot, enumerate_concepts, parse_context};
use relattice::io::load_relation;
use relattice::query::{eval, is_relation_name, parse, Env};
use relattice::{
    check_distributivity, check_laws, check_modularity, find_distributivity_violation, find_modularity_violation,
    find_n5, lattice_closure, Law, LawReport, RandomRelations, Relation, Witness,
};

/// Largest closure searched for counterexamples.
pub const CLOSURE_CAP: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "relattice", version, about = "Relational algebra from natural join and generalized union")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one query and print the result
    Eval {
        /// Bind a CSV or JSON file to a name (A, B and C are preloaded)
        #[arg(short = 'r', long = "relation", value_name = "NAME=PATH", value_parser = parse_binding)]
        relations: Vec<(String, PathBuf)>,
        #[arg(short = 'q', long = "query")]
        query: String,
    },
    /// Read queries from standard input
    Repl {
        #[arg(short = 'r', long = "relation", value_name = "NAME=PATH", value_parser = parse_binding)]
        relations: Vec<(String, PathBuf)>,
    },
    /// Check the eight lattice identities on seeded random relations
    CheckLaws {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a distributivity or modularity violation
    Counterexample {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Generators to search instead of A, B and C
        #[arg(long, num_args = 1..)]
        from: Vec<PathBuf>,
    },
    /// Build the concept lattice of a cross table
    Fca {
        #[arg(long)]
        context: PathBuf,
        /// Write the Hasse diagram as DOT ("-" for standard output)
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print each concept as a relation
        #[arg(long)]
        relations: bool,
    },
    /// Check every law on all ordered triples of the given relations
    LawsOnFile {
        #[arg(short = 'r', long = "relation", value_name = "NAME=PATH", value_parser = parse_binding, required = true)]
        relations: Vec<(String, PathBuf)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Distributivity,
    Modularity,
}

fn parse_binding(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s.split_once('=').ok_or("expected NAME=PATH")?;
    if !is_relation_name(name) {
        return Err(format!("{name:?} is not a valid relation name"));
    }
    if path.is_empty() {
        return Err("empty path".into());
    }
    Ok((name.to_string(), PathBuf::from(path)))
}

/// A failure reported on standard error with exit status 1.
struct Failure(String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(format!("i/o error: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { relations, query } => cmd_eval(&relations, &query, out),
        Command::Repl { relations } => {
            let stdin = io::stdin();
            let prompt = io::IsTerminal::is_terminal(&stdin);
            load_env(&relations).and_then(|env| Ok(repl(env, stdin.lock(), out, err, prompt)?))
        }
        Command::CheckLaws { cases, seed } => cmd_check_laws(cases, seed, out),
        Command::Counterexample { kind, from } => cmd_counterexample(kind, &from, out),
        Command::Fca { context, dot, relations } => cmd_fca(&context, dot.as_deref(), relations, out),
        Command::LawsOnFile { relations } => cmd_laws_on_file(&relations, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn load(path: &Path) -> Result<Relation, Failure> {
    load_relation(path).map_err(|e| Failure(format!("loading {}: {e}", path.display())))
}

fn load_env(bindings: &[(String, PathBuf)]) -> Result<Env, Failure> {
    let mut env = Env::with_fixtures();
    for (name, path) in bindings {
        let rel = load(path)?;
        env.insert(name, rel).map_err(|e| Failure(e.to_string()))?;
    }
    Ok(env)
}

fn evaluate(text: &str, env: &Env) -> Result<Relation, Failure> {
    let expr = parse(text).map_err(|e| Failure(format!("parse error at {e}")))?;
    eval(&expr, env).map_err(|e| Failure(e.to_string()))
}

fn cmd_eval(bindings: &[(String, PathBuf)], query: &str, out: &mut dyn Write) -> Outcome {
    let env = load_env(bindings)?;
    let rel = evaluate(query, &env)?;
    write!(out, "{rel}")?;
    Ok(0)
}

/// Reads lines from `input` until end of input or `:quit`. Errors are
/// reported and the loop continues.
pub fn repl(mut env: Env, input: impl BufRead, out: &mut dyn Write, err: &mut dyn Write, prompt: bool) -> io::Result<i32> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "relattice> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else {
            break;
        };
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(command) = trimmed.strip_prefix(':') {
            let mut words = command.split_whitespace();
            match (words.next(), words.next(), words.next(), words.next()) {
                (Some("quit" | "q"), None, _, _) => break,
                (Some("names"), None, _, _) => {
                    let names: Vec<&str> = env.names().collect();
                    writeln!(out, "{}", names.join(" "))?;
                }
                (Some("load"), Some(name), Some(path), None) => {
                    match load(Path::new(path)).and_then(|r| env.insert(name, r).map_err(|e| Failure(e.to_string())))
                    {
                        Ok(()) => writeln!(out, "loaded {name}")?,
                        Err(Failure(msg)) => writeln!(err, "error: {msg}")?,
                    }
                }
                _ => writeln!(err, "error: unknown command {trimmed:?} (try :load NAME PATH, :names, :quit)")?,
            }
            continue;
        }
        match evaluate(trimmed, &env) {
            Ok(rel) => write!(out, "{rel}")?,
            Err(Failure(msg)) => writeln!(err, "error: {msg}")?,
        }
    }
    Ok(0)
}

fn print_report(report: &LawReport, names: &[&str], out: &mut dyn Write) -> io::Result<()> {
    let status = if report.holds { "holds" } else { "FAILS" };
    writeln!(out, "law: {} ({status})", report.law)?;
    if let Some(law) = Law::from_name(&report.law) {
        writeln!(out, "formula: {}", law.formula())?;
    }
    for note in &report.notes {
        writeln!(out, "note: {note}")?;
    }
    if let Some(w) = &report.witness {
        for (i, (label, rel)) in ["A", "B", "C"].iter().zip(&w.operands).enumerate() {
            match names.get(i) {
                Some(n) if n != label => writeln!(out, "{label} (relation {n}):")?,
                _ => writeln!(out, "{label}:")?,
            }
            write!(out, "{rel}")?;
        }
        writeln!(out, "left side:")?;
        write!(out, "{}", w.lhs)?;
        writeln!(out, "right side:")?;
        write!(out, "{}", w.rhs)?;
    }
    Ok(())
}

fn cmd_check_laws(cases: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let mut sampler = RandomRelations::new(seed);
    let reports = check_laws(&mut sampler, cases);
    let mut failed = 0;
    for r in &reports {
        let status = if r.holds { "PASS" } else { "FAIL" };
        writeln!(out, "{:<20} {status}  {} cases", r.law, r.cases)?;
    }
    for r in reports.iter().filter(|r| !r.holds) {
        failed += 1;
        writeln!(out)?;
        print_report(r, &[], out)?;
    }
    writeln!(out, "seed {seed}: {} of {} laws hold", reports.len() - failed, reports.len())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn cmd_counterexample(kind: Kind, from: &[PathBuf], out: &mut dyn Write) -> Outcome {
    let (names, gens): (Vec<String>, Vec<Relation>) = if from.is_empty() {
        relattice::fixtures::named().into_iter().map(|(n, r)| (n.to_string(), r)).unzip()
    } else {
        let mut names = Vec::new();
        let mut gens = Vec::new();
        for p in from {
            names.push(stem(p));
            gens.push(load(p)?);
        }
        (names, gens)
    };

    // Triples drawn directly from the generators come first.
    if kind == Kind::Distributivity && from.is_empty() {
        // with the fixtures, distributing C over A and B already fails
        let (report, _) = check_distributivity(&gens[2], &gens[0], &gens[1]);
        if !report.holds {
            print_report(&report, &["C", "A", "B"], out)?;
            return Ok(0);
        }
    }
    let n = gens.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (&gens[i], &gens[j], &gens[k]);
                let report = match kind {
                    Kind::Distributivity => {
                        let (jou, uoj) = check_distributivity(a, b, c);
                        if jou.holds {
                            uoj
                        } else {
                            jou
                        }
                    }
                    Kind::Modularity => check_modularity(a, b, c),
                };
                if !report.holds {
                    let labels = [names[i].as_str(), names[j].as_str(), names[k].as_str()];
                    print_report(&report, &labels, out)?;
                    return Ok(0);
                }
            }
        }
    }

    let closure = lattice_closure(&gens, CLOSURE_CAP).map_err(|e| Failure(e.to_string()))?;
    writeln!(
        out,
        "no violation among the generators; searching their closure ({} elements{})",
        closure.len(),
        if closure.truncated { ", truncated" } else { "" }
    )?;
    if closure.truncated {
        return Err(Failure(format!("closure exceeds {CLOSURE_CAP} elements")));
    }
    let found = match kind {
        Kind::Distributivity => find_distributivity_violation(&closure),
        Kind::Modularity => find_modularity_violation(&closure),
    }
    .map_err(|e| Failure(e.to_string()))?;
    match found {
        Some(report) => print_report(&report, &[], out)?,
        None => writeln!(out, "no counterexample found")?,
    }
    if kind == Kind::Modularity {
        if let Some(p) = find_n5(&closure).map_err(|e| Failure(e.to_string()))? {
            writeln!(out, "pentagon (bottom < a < b < top, x beside a and b):")?;
            for (label, rel) in [("bottom", &p.bottom), ("a", &p.a), ("b", &p.b), ("top", &p.top), ("x", &p.x)] {
                writeln!(out, "{label}:")?;
                write!(out, "{rel}")?;
            }
        }
    }
    Ok(0)
}

fn set(items: &std::collections::BTreeSet<String>) -> String {
    format!("{{{}}}", items.iter().map(String::as_str).collect::<Vec<_>>().join(", "))
}

fn cmd_fca(context: &Path, dot: Option<&Path>, relations: bool, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(context).map_err(|e| Failure(format!("{}: {e}", context.display())))?;
    let ctx = parse_context(&text).map_err(|e| Failure(format!("{}: {e}", context.display())))?;
    let lattice = enumerate_concepts(&ctx).map_err(|e| Failure(e.to_string()))?;
    writeln!(
        out,
        "{} objects, {} attributes, {} concepts, {} covering edges",
        ctx.objects().len(),
        ctx.attributes().len(),
        lattice.len(),
        lattice.hasse.len()
    )?;
    for (i, c) in lattice.concepts.iter().enumerate() {
        writeln!(out, "c{i}: extent {} intent {}", set(&c.extent), set(&c.intent))?;
    }
    if relations {
        for (i, c) in lattice.concepts.iter().enumerate() {
            writeln!(out, "\nc{i}:")?;
            write!(out, "{}", concept_to_relation(c))?;
        }
    }
    let bridge = check_bridge(&ctx).map_err(|e| Failure(e.to_string()))?;
    writeln!(
        out,
        "bridge: {} on {} concept pairs",
        if bridge.holds { "holds" } else { "FAILS" },
        bridge.cases
    )?;
    for note in &bridge.notes {
        writeln!(out, "note: {note}")?;
    }
    match dot {
        Some(p) if p == Path::new("-") => write!(out, "{}", emit_dot(&lattice))?,
        Some(p) => std::fs::write(p, emit_dot(&lattice)).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => {}
    }
    Ok(if bridge.holds { 0 } else { 1 })
}

fn cmd_laws_on_file(bindings: &[(String, PathBuf)], out: &mut dyn Write) -> Outcome {
    let mut names = Vec::new();
    let mut rels = Vec::new();
    for (name, path) in bindings {
        names.push(name.as_str());
        rels.push(load(path)?);
    }
    let n = rels.len();
    let mut lattice_failure = false;
    let mut failures = Vec::new();
    for law in Law::ALL {
        let mut cases = 0;
        let mut vacuous = 0;
        let mut first: Option<[usize; 3]> = None;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ops = [rels[i].clone(), rels[j].clone(), rels[k].clone()];
                    cases += 1;
                    if !law.premise(&ops) {
                        vacuous += 1;
                    } else if first.is_none() && !law.holds_on(&ops) {
                        first = Some([i, j, k]);
                    }
                }
            }
        }
        let status = if first.is_none() { "PASS" } else { "FAIL" };
        let extra = if vacuous > 0 { format!(" ({vacuous} vacuous)") } else { String::new() };
        writeln!(out, "{:<32} {status}  {cases} triples{extra}", law.name())?;
        if let Some(idx) = first {
            lattice_failure |= Law::LATTICE.contains(&law);
            failures.push((law, idx));
        }
    }
    for (law, [i, j, k]) in failures {
        writeln!(out)?;
        let ops = [rels[i].clone(), rels[j].clone(), rels[k].clone()];
        let (lhs, rhs) = law.sides(&ops);
        let report = LawReport {
            law: law.name().to_string(),
            cases: 1,
            holds: false,
            witness: Some(Witness { operands: ops.to_vec(), lhs, rhs }),
            notes: Vec::new(),
        };
        print_report(&report, &[names[i], names[j], names[k]], out)?;
    }
    Ok(if lattice_failure { 1 } else { 0 })
}
