use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use jwgadget::cost::{compare, cost_report, format_significant, CostReport};
use jwgadget::verify::{generate_trials, run_trials, summarize, Fault};
use jwgadget::{
    compile, jw_pauli_expansion, jw_projector_form, parse_hamiltonian, parse_term, Error,
    FermionTerm64, Hamiltonian64, Mode, SynthesisParams64,
};

/// Angle used when compiling for cost only; counts do not depend on it.
const COST_GAMMA: f64 = 1.0;

#[derive(Parser)]
#[command(
    name = "jwgadget",
    version,
    about = "Compile Jordan-Wigner term exponentials and count their T gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the Pauli expansion and projector form of every term.
    Jw {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compile terms into circuits.
    Compile(CompileArgs),
    /// Naive vs gadget T-count report.
    Cost(CostArgs),
    /// Random equivalence trials against the exact exponential.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CompileArgs {
    /// Hamiltonian file; alternatively give a single `--term`.
    file: Option<PathBuf>,
    /// A single record such as "four 0 1 2 3 [coeff]".
    #[arg(long, conflicts_with = "file")]
    term: Option<String>,
    /// Register size for `--term` (defaults to the largest index + 1).
    #[arg(long, requires = "term")]
    orbitals: Option<usize>,
    #[arg(long, default_value = "gadget")]
    mode: Mode,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long)]
    controlled: bool,
    /// Decompose multi-controlled Z gates into Toffolis.
    #[arg(long)]
    lower: bool,
    /// Dirty ancillae available to the gadget.
    #[arg(long, default_value_t = 2)]
    dirty: usize,
}

#[derive(Args)]
struct CostArgs {
    file: PathBuf,
    /// Total synthesis error budget.
    #[arg(long, default_value_t = 1e-5)]
    eps_s: f64,
    /// Rotations sharing the budget.
    #[arg(long, default_value_t = 10_000_000)]
    n_rot: u64,
    /// Fixed T cost per rotation, bypassing the synthesis formula.
    #[arg(long)]
    synth_cost: Option<u64>,
    #[arg(long, default_value_t = 4)]
    toffoli_cost: u64,
    /// Cost the bare exponentials instead of their controlled versions.
    #[arg(long)]
    uncontrolled: bool,
    #[arg(long, default_value_t = 2)]
    dirty: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    max_orbitals: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Negate every rotation angle before verifying (negative control).
    #[arg(long, hide = true)]
    inject_sign_flip: bool,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn read_hamiltonian(path: &PathBuf) -> Result<Hamiltonian64, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_hamiltonian(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn sources_text(h: &Hamiltonian64, k: usize) -> String {
    h.terms[k]
        .sources
        .iter()
        .map(|s| format!("line {}: {}", s.line, s.coefficient_text))
        .collect::<Vec<_>>()
        .join(", ")
}

fn term_header(term: &FermionTerm64) -> String {
    format!(
        "{} sign {} coefficient {}",
        term.family, term.sign, term.coefficient
    )
}

fn cmd_jw(file: &PathBuf, as_json: bool) -> CliResult {
    let h = read_hamiltonian(file)?;
    let mut out = String::new();
    let mut records = Vec::new();
    for (k, term) in h.terms().enumerate() {
        let expansion = jw_pauli_expansion(term)?;
        let form = jw_projector_form(term);
        if as_json {
            let strings: Vec<Value> = expansion
                .iter()
                .map(|s| json!({"re": s.coefficient.re, "im": s.coefficient.im, "letters": s.letters.to_string()}))
                .collect();
            records.push(json!({
                "family": term.family.to_string(),
                "sign": term.sign.to_string(),
                "coefficient": term.coefficient,
                "sources": sources_text(&h, k),
                "pauli": strings,
                "projector": {
                    "swap_qubits": form.swap_qubits,
                    "pattern_a": form.pattern_a.iter().map(|&b| b as u8).collect::<Vec<_>>(),
                    "pattern_b": form.pattern_b.iter().map(|&b| b as u8).collect::<Vec<_>>(),
                    "z_string": form.z_string,
                    "scale": form.scale,
                    "diagonal": form.diagonal,
                },
            }));
        } else {
            writeln!(
                out,
                "# term {} {} ({})",
                k + 1,
                term_header(term),
                sources_text(&h, k)
            )
            .unwrap();
            out.push_str(&expansion.to_text());
            writeln!(out, "{form}").unwrap();
        }
    }
    if as_json {
        out = json!({"orbitals": h.num_orbitals, "terms": records}).to_string() + "\n";
    }
    Ok(out)
}

fn cmd_compile(args: &CompileArgs) -> CliResult {
    let terms: Vec<FermionTerm64> = match (&args.file, &args.term) {
        (Some(file), _) => read_hamiltonian(file)?.terms().cloned().collect(),
        (None, Some(text)) => {
            let max_index = text
                .split_whitespace()
                .skip(1)
                .filter_map(|t| t.parse::<usize>().ok())
                .take(if text.trim_start().starts_with("four") {
                    4
                } else {
                    2
                })
                .max()
                .unwrap_or(0);
            vec![parse_term(text, args.orbitals.unwrap_or(max_index + 1))?]
        }
        (None, None) => return Err(Failure::Usage("give a Hamiltonian file or --term".into())),
    };
    let mut out = String::new();
    for term in &terms {
        let mut circuit = compile(term, args.mode, args.gamma, args.controlled, args.dirty)?;
        if args.lower {
            circuit = circuit.lowered()?;
        }
        if terms.len() > 1 {
            writeln!(out, "# {}", term_header(term)).unwrap();
        }
        write!(out, "{circuit}").unwrap();
    }
    Ok(out)
}

fn breakdown_json(r: &CostReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn summary_line(label: &str, r: &CostReport) -> String {
    format!(
        "{label} ppr={} toffoli={} t_rotations={} t_toffolis={} t_total={}",
        r.ppr_count, r.toffoli_count, r.t_from_rotations, r.t_from_toffolis, r.t_total
    )
}

fn cmd_cost(args: &CostArgs) -> CliResult {
    let h = read_hamiltonian(&args.file)?;
    let params = SynthesisParams64::new(args.eps_s, args.n_rot)?
        .with_override(args.synth_cost)
        .with_toffoli_cost(args.toffoli_cost);
    let controlled = !args.uncontrolled;

    let mut naive_total = CostReport::empty(&params)?;
    let mut gadget_total = CostReport::empty(&params)?;
    let mut out = String::new();
    let mut per_term = Vec::new();
    writeln!(
        out,
        "params eps_s={:e} n_rot={} per_rotation_epsilon={:e} formula_per_rotation_t={} override_per_rotation_t={} per_rotation_t={} toffoli_t={} controlled={}",
        params.eps_total,
        params.n_rot,
        params.per_rotation_epsilon(),
        naive_total.formula_per_rotation_t,
        params.per_rotation_cost_override.map_or("none".to_string(), |c| c.to_string()),
        naive_total.per_rotation_t,
        params.toffoli_t_cost,
        controlled
    )
    .unwrap();

    for (k, term) in h.terms().enumerate() {
        let naive = cost_report(
            &compile(term, Mode::Naive, COST_GAMMA, controlled, args.dirty)?,
            &params,
        )?;
        let gadget = cost_report(
            &compile(term, Mode::Gadget, COST_GAMMA, controlled, args.dirty)?,
            &params,
        )?;
        let ratio = compare(&naive, &gadget).ok();
        let ratio_text = ratio.map_or("undefined".to_string(), |r| format_significant(r, 4));
        writeln!(
            out,
            "term {} {} naive_t={} gadget_t={} ratio={}",
            k + 1,
            term.family,
            naive.t_total,
            gadget.t_total,
            ratio_text
        )
        .unwrap();
        per_term.push(json!({
            "family": term.family.to_string(),
            "sign": term.sign.to_string(),
            "coefficient": term.coefficient,
            "sources": sources_text(&h, k),
            "naive": breakdown_json(&naive),
            "gadget": breakdown_json(&gadget),
            "ratio": ratio,
        }));
        naive_total = naive_total.combine(&naive);
        gadget_total = gadget_total.combine(&gadget);
    }

    for (label, report) in [("naive", &naive_total), ("gadget", &gadget_total)] {
        writeln!(out, "{}", summary_line(label, report)).unwrap();
        for line in &report.breakdown {
            writeln!(
                out,
                "  {label} {} count={} t={}",
                line.source, line.count, line.t_count
            )
            .unwrap();
        }
    }
    let ratio = compare(&naive_total, &gadget_total).ok();
    match ratio {
        Some(r) => writeln!(out, "ratio {} full={r}", format_significant(r, 4)).unwrap(),
        None => writeln!(out, "ratio undefined").unwrap(),
    }

    if args.json {
        let doc = json!({
            "params": params,
            "terms": per_term,
            "naive": breakdown_json(&naive_total),
            "gadget": breakdown_json(&gadget_total),
            "ratio": ratio,
            "ratio_text": ratio.map(|r| format_significant(r, 4)),
        });
        return Ok(doc.to_string() + "\n");
    }
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let specs = generate_trials::<f64>(args.trials, args.max_orbitals, args.seed)?;
    let fault = args.inject_sign_flip.then_some(Fault::FlipRotationSign);
    let outcomes = run_trials(&specs, args.tol, fault)?;
    let summary = summarize(&outcomes);
    let failed = summary.total - summary.passed;
    let out = if args.json {
        let trials: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "index": o.spec.index,
                    "family": o.spec.term.family.to_string(),
                    "sign": o.spec.term.sign.to_string(),
                    "orbitals": o.spec.term.num_orbitals,
                    "gamma": o.spec.gamma,
                    "deviation": o.max_deviation(),
                    "passed": o.passed(),
                })
            })
            .collect();
        json!({
            "trials": trials,
            "total": summary.total,
            "passed": summary.passed,
            "failed": failed,
            "max_deviation": summary.max_deviation,
        })
        .to_string()
            + "\n"
    } else {
        let mut out = String::new();
        for o in &outcomes {
            writeln!(out, "{o}").unwrap();
        }
        writeln!(
            out,
            "summary trials={} passed={} failed={} max_dev={:.3e} tol={:e}",
            summary.total, summary.passed, failed, summary.max_deviation, args.tol
        )
        .unwrap();
        out
    };
    print!("{out}");
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(String::new())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Jw { file, json } => cmd_jw(file, *json),
        Command::Compile(args) => cmd_compile(args),
        Command::Cost(args) => cmd_cost(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
