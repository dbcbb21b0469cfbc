//! `bcx` — represent finite automata as Boolean circuits, transform and
//! verify the representations, evaluate the closed-form bounds, and run the
//! brute-force oracles.
//!
//! Exit codes: 0 success, 1 semantic failure (invalid representation,
//! violated precondition), 2 input error (unparseable file or arguments).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use bcx::automata::{enumerate_minimal_dfas, parse_dfa, parse_nfa, write_dfa, DEFAULT_ENUM_BUDGET};
use bcx::bits::width_for;
use bcx::bounds::{
    bc_lower_bound, bc_upper_bound, bound_circuit_count, bound_min_dfa_count, bound_nfa_circuit,
    bound_nfa_circuit_dense, rational_to_decimal, shannon_threshold, BoundReport,
};
use bcx::circuit::{enumerate_functions, merge_fg, unroll, write_circuit, CostModel};
use bcx::encoding::{
    first_violation, parse_representation, write_representation, Encoding, Representation,
    Violation,
};
use bcx::experiment::{shannon_experiment, ExperimentMode};
use bcx::oracle::{bc_oracle, BcOutcome, SearchBudget};
use bcx::synthesis::{
    best_single_letter_representation, cnf_to_representation, nfa_circuit_gate_budget,
    nfa_to_circuit, op_complement, op_concat, op_intersect, op_reverse, op_star, op_union,
    parse_dimacs, represent_dfa,
};
use bcx::Dfa;

#[derive(Parser)]
#[command(name = "bcx", version, about = "Finite automata as Boolean circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a representation bundle against a DFA; prints OK or the first
    /// violated transition/acceptance condition.
    Verify {
        /// DFA file (.dfa)
        dfa: PathBuf,
        /// Representation bundle (.bcrep)
        rep: PathBuf,
    },
    /// Apply a language/representation operation and write the result.
    Transform {
        /// One of: union, intersect, complement, reverse, concat, star,
        /// determinize, minimize, represent, tadpole, cnf2rep, unroll, merge
        op: String,
        /// Input files, in the order the operation expects them
        inputs: Vec<PathBuf>,
        /// Output path (default: derived from the first input)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Unroll depth (unroll only)
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Print the closed-form bounds as TSV (`name<TAB>params<TAB>value`)
    /// for whichever formulas the given parameters determine.
    Bounds {
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Threshold eps values, e.g. --eps 0.1 (repeatable)
        #[arg(long)]
        eps: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Gate count C for the circuit-count bound
        #[arg(long)]
        gates: Option<usize>,
        /// NFA transition count t for the determinization bound
        #[arg(long)]
        transitions: Option<usize>,
    },
    /// Exact register complexity of a tiny DFA by exhaustive search over
    /// minimal-width encodings (an upper bound on the unrestricted value).
    Oracle {
        dfa: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Count minimal DFAs or realizable circuit functions.
    Enumerate {
        /// What to count: dfas or functions
        what: String,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        gates: Option<usize>,
    },
    /// Measurement experiments.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Measure register complexity over a population of minimal DFAs and
    /// report the fraction below the almost-all threshold.
    Shannon {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        /// Measure every s-state-minimal language (s <= 3, k <= 2)
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Measure N random minimal DFAs (s <= 8)
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
}

#[derive(Args)]
struct CommonFlags {
    /// Cost model: gates | gates-outputs
    #[arg(long, default_value = "gates-outputs")]
    cost_model: CostModel,
    #[arg(long, default_value_t = SearchBudget::default().max_gates)]
    budget_gates: usize,
    #[arg(long, default_value_t = SearchBudget::default().max_seconds)]
    budget_seconds: u64,
    #[arg(long, default_value_t = SearchBudget::default().max_visited)]
    budget_visited: u64,
}

impl CommonFlags {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_gates: self.budget_gates,
            max_seconds: self.budget_seconds,
            max_visited: self.budget_visited,
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Failure {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn semantic(message: impl ToString) -> Failure {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { dfa, rep } => cmd_verify(&dfa, &rep),
        Command::Transform {
            op,
            inputs,
            out,
            steps,
            common,
        } => cmd_transform(&op, &inputs, out.as_deref(), steps, &common),
        Command::Bounds {
            s,
            k,
            eps,
            n,
            m,
            gates,
            transitions,
        } => cmd_bounds(s, k, &eps, n, m, gates, transitions),
        Command::Oracle { dfa, common } => cmd_oracle(&dfa, &common),
        Command::Enumerate {
            what,
            s,
            k,
            n,
            m,
            gates,
        } => cmd_enumerate(&what, s, k, n, m, gates),
        Command::Experiment {
            which:
                ExperimentCommand::Shannon {
                    s,
                    k,
                    exhaustive,
                    sample,
                    seed,
                    out,
                    common,
                },
        } => cmd_experiment_shannon(s, k, exhaustive, sample, seed, out.as_deref(), &common),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_dfa(path: &Path) -> Result<Dfa, Failure> {
    parse_dfa(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path) -> Result<Representation, Failure> {
    parse_representation(&read(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_verify(dfa_path: &Path, rep_path: &Path) -> Result<(), Failure> {
    let d = load_dfa(dfa_path)?;
    let r = load_rep(rep_path)?;
    match first_violation(&d, &r).map_err(Failure::semantic)? {
        None => {
            println!("OK");
            Ok(())
        }
        Some(Violation::Transition { state, letter }) => Err(Failure::semantic(format!(
            "transition condition fails at state {state}, letter {letter}"
        ))),
        Some(Violation::Acceptance { state }) => Err(Failure::semantic(format!(
            "acceptance condition fails at state {state}"
        ))),
    }
}

/// The report line every transform prints: operation, measured cost, the
/// guaranteed bound in the same units ("-" when the operation has none),
/// and whether the measurement is within the bound.
fn report(op: &str, value: usize, bound: Option<usize>) {
    match bound {
        Some(b) => println!(
            "{op} {value} {b} {}",
            if value <= b { "yes" } else { "no" }
        ),
        None => println!("{op} {value} - yes"),
    }
}

fn arity(op: &str, inputs: &[PathBuf], want: usize) -> Result<(), Failure> {
    if inputs.len() != want {
        return Err(Failure::input(format!(
            "{op} expects {want} input file(s), got {}",
            inputs.len()
        )));
    }
    Ok(())
}

fn out_path(inputs: &[PathBuf], out: Option<&Path>, op: &str, ext: &str) -> PathBuf {
    match out {
        Some(p) => p.to_path_buf(),
        None => {
            let stem = inputs[0]
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "out".into());
            inputs[0].with_file_name(format!("{stem}.{op}.{ext}"))
        }
    }
}

/// GatesOnly circuit size of both halves of a representation.
fn gates(r: &Representation) -> usize {
    r.f().gate_count() + r.g().gate_count()
}

fn cmd_transform(
    op: &str,
    inputs: &[PathBuf],
    out: Option<&Path>,
    steps: usize,
    common: &CommonFlags,
) -> Result<(), Failure> {
    let cm = common.cost_model;
    let lg = |k: usize| width_for(k);
    match op {
        "union" | "intersect" => {
            arity(op, inputs, 2)?;
            let a = load_rep(&inputs[0])?.with_cost_model(cm);
            let b = load_rep(&inputs[1])?.with_cost_model(cm);
            let r = if op == "union" {
                op_union(&a, &b)
            } else {
                op_intersect(&a, &b)
            }
            .map_err(Failure::semantic)?;
            report(op, r.bc(), Some(a.bc() + b.bc() + 1));
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "complement" => {
            arity(op, inputs, 1)?;
            let a = load_rep(&inputs[0])?.with_cost_model(cm);
            let r = op_complement(&a);
            report(op, r.bc(), Some(a.bc() + 1));
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "reverse" => {
            arity(op, inputs, 1)?;
            let d = load_dfa(&inputs[0])?;
            let (m, k) = (d.num_states(), d.alphabet_size());
            let r = op_reverse(&d, cm).map_err(Failure::semantic)?;
            report(op, gates(&r), Some((2 * k + 1) * m + k * lg(k) + 3 * m));
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "concat" => {
            arity(op, inputs, 2)?;
            let a = load_rep(&inputs[0])?.with_cost_model(cm);
            let d = load_dfa(&inputs[1])?;
            let (n, k) = (d.num_states(), d.alphabet_size());
            let r = op_concat(&a, &d).map_err(Failure::semantic)?;
            report(
                op,
                gates(&r),
                Some(gates(&a) + (2 * k + 1) * n + k * lg(k) + 3 * n),
            );
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "star" => {
            arity(op, inputs, 1)?;
            let d = load_dfa(&inputs[0])?;
            let (m, k) = (d.num_states(), d.alphabet_size());
            let r = op_star(&d, cm).map_err(Failure::semantic)?;
            report(
                op,
                gates(&r),
                Some(k * (m + 1) * (m + 1) + (k + 1) * (m + 1) + k * lg(k)),
            );
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "determinize" => {
            arity(op, inputs, 1)?;
            let nfa = parse_nfa(&read(&inputs[0])?)
                .map_err(|e| Failure::input(format!("{}: {e}", inputs[0].display())))?;
            let slack = if nfa.starts().len() > 1 {
                3 * nfa.num_states()
            } else {
                0
            };
            let r = nfa_to_circuit(&nfa, cm).map_err(Failure::semantic)?;
            report(op, gates(&r), Some(nfa_circuit_gate_budget(&nfa) + slack));
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "minimize" => {
            arity(op, inputs, 1)?;
            let d = load_dfa(&inputs[0])?.minimized();
            report(op, d.num_states(), None);
            write_out(&out_path(inputs, out, op, "dfa"), &write_dfa(&d))
        }
        "represent" => {
            arity(op, inputs, 1)?;
            let d = load_dfa(&inputs[0])?;
            let r = represent_dfa(&d, &Encoding::minimal(&d), cm).map_err(Failure::semantic)?;
            report(op, r.bc(), None);
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "tadpole" => {
            arity(op, inputs, 1)?;
            let d = load_dfa(&inputs[0])?;
            let r = best_single_letter_representation(&d, cm).map_err(Failure::semantic)?;
            report(op, r.bc(), None);
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "cnf2rep" => {
            arity(op, inputs, 1)?;
            let c = parse_dimacs(&read(&inputs[0])?)
                .map_err(|e| Failure::input(format!("{}: {e}", inputs[0].display())))?;
            let r = cnf_to_representation(&c, cm).map_err(Failure::semantic)?;
            report(op, r.bc(), None);
            write_out(&out_path(inputs, out, op, "bcrep"), &write_representation(&r))
        }
        "unroll" => {
            arity(op, inputs, 1)?;
            let r = load_rep(&inputs[0])?;
            let c = unroll(r.f(), r.g(), r.b_sigma(), r.b_q(), steps)
                .map_err(Failure::semantic)?;
            report(
                op,
                c.gate_count(),
                Some(steps * r.f().gate_count() + r.g().gate_count()),
            );
            write_out(&out_path(inputs, out, op, "bcirc"), &write_circuit(&c))
        }
        "merge" => {
            arity(op, inputs, 1)?;
            let r = load_rep(&inputs[0])?;
            let c = merge_fg(r.f(), r.g(), r.b_q()).map_err(Failure::semantic)?;
            report(op, c.gate_count(), None);
            write_out(&out_path(inputs, out, op, "bcirc"), &write_circuit(&c))
        }
        other => Err(Failure::input(format!("unknown transform op `{other}`"))),
    }
}

fn parse_eps(text: &str) -> Result<BigRational, Failure> {
    // Accept decimals like 0.1 and fractions like 1/10.
    let bad = || Failure::input(format!("bad eps value `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(BigRational::new(BigInt::from(n), BigInt::from(d)));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let int: i64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    if frac.is_empty() {
        return Ok(BigRational::from_integer(BigInt::from(int)));
    }
    let digits: i64 = frac.parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::from_integer(BigInt::from(int))
        + BigRational::new(BigInt::from(digits), scale))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    s: Option<usize>,
    k: Option<usize>,
    eps: &[String],
    n: Option<usize>,
    m: Option<usize>,
    gates: Option<usize>,
    transitions: Option<usize>,
) -> Result<(), Failure> {
    let mut rows: Vec<BoundReport> = Vec::new();
    if let Some(s) = s {
        if let Some(k) = k {
            if s >= 3 {
                let v = bound_min_dfa_count(s, k).map_err(Failure::input)?;
                rows.push(BoundReport::new("min-dfa-count", format!("s={s} k={k}"), v));
            }
            let v = bc_upper_bound(s, k).map_err(Failure::input)?;
            rows.push(BoundReport::new(
                "bc-upper",
                format!("s={s} k={k}"),
                rational_to_decimal(&v, 3),
            ));
            for e in eps {
                let eps = parse_eps(e)?;
                let v = shannon_threshold(s, k, &eps).map_err(Failure::input)?;
                rows.push(BoundReport::new(
                    "shannon-threshold",
                    format!("s={s} k={k} eps={e}"),
                    rational_to_decimal(&v, 3),
                ));
            }
        }
        let v = bc_lower_bound(s).map_err(Failure::input)?;
        rows.push(BoundReport::new("bc-lower", format!("s={s}"), v));
    }
    if let (Some(n), Some(m), Some(c)) = (n, m, gates) {
        rows.push(BoundReport::new(
            "circuit-count",
            format!("n={n} m={m} C={c}"),
            bound_circuit_count(n, m, c),
        ));
    }
    if let (Some(n), Some(k)) = (n, k) {
        if let Some(t) = transitions {
            rows.push(BoundReport::new(
                "nfa-circuit",
                format!("n={n} t={t} k={k}"),
                bound_nfa_circuit(n, t, k),
            ));
        }
        rows.push(BoundReport::new(
            "nfa-circuit-dense",
            format!("n={n} k={k}"),
            bound_nfa_circuit_dense(n, k),
        ));
    }
    if rows.is_empty() {
        return Err(Failure::input(
            "no bound is determined by the given parameters; supply --s/--k, --n/--m/--gates, or --n/--k[/--transitions]",
        ));
    }
    for r in rows {
        println!("{}\t{}\t{}", r.name, r.params, r.value);
    }
    Ok(())
}

fn cmd_oracle(dfa: &Path, common: &CommonFlags) -> Result<(), Failure> {
    let d = load_dfa(dfa)?;
    let outcome =
        bc_oracle(&d, common.cost_model, &common.budget()).map_err(Failure::input)?;
    // Minimal-width encodings only: an upper bound on the unrestricted
    // complexity, which quantifies over arbitrary-width encodings.
    match outcome {
        BcOutcome::Exact(v) => println!("exact {v} (minimal-width encodings)"),
        BcOutcome::Bracket { lower, upper } => {
            println!("bracket {lower} {upper} (budget exhausted; minimal-width encodings)")
        }
    }
    Ok(())
}

fn cmd_enumerate(
    what: &str,
    s: Option<usize>,
    k: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    gates: Option<usize>,
) -> Result<(), Failure> {
    match what {
        "dfas" => {
            let (s, k) = match (s, k) {
                (Some(s), Some(k)) => (s, k),
                _ => return Err(Failure::input("enumerate dfas needs --s and --k")),
            };
            let count = enumerate_minimal_dfas(s, k, DEFAULT_ENUM_BUDGET)
                .map_err(Failure::input)?
                .count();
            println!("{count}");
            Ok(())
        }
        "functions" => {
            let (n, m, c) = match (n, m, gates) {
                (Some(n), Some(m), Some(c)) => (n, m, c),
                _ => {
                    return Err(Failure::input(
                        "enumerate functions needs --n, --m and --gates",
                    ))
                }
            };
            let count = enumerate_functions(n, m, c).map_err(Failure::input)?;
            println!("{count}");
            Ok(())
        }
        other => Err(Failure::input(format!(
            "unknown enumeration `{other}`, expected dfas or functions"
        ))),
    }
}

fn cmd_experiment_shannon(
    s: usize,
    k: usize,
    exhaustive: bool,
    sample: Option<usize>,
    seed: u64,
    out: Option<&Path>,
    common: &CommonFlags,
) -> Result<(), Failure> {
    let mode = match (exhaustive, sample) {
        (true, None) => ExperimentMode::Exhaustive,
        (false, Some(n)) => ExperimentMode::Sample(n),
        _ => return Err(Failure::input("pass exactly one of --exhaustive or --sample N")),
    };
    let csv = shannon_experiment(s, k, mode, seed, common.cost_model, &common.budget())
        .map_err(Failure::input)?;
    match out {
        Some(p) => write_out(p, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
