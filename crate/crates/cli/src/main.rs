//! `stabforge` command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stabforge::optimizer::{registry, Level, OptimizeConfig, TargetGates};
use stabforge::simulator::{encode, measure_syndrome, parse_label};
use stabforge::{
    decode, from_json, optimize, parse_pauli, Circuit, Decoded, EncoderOptions, Error, GateSet, PauliString, Pipeline, SignPolicy,
    StabilizerCode, Syndrome,
};

#[derive(Parser)]
#[command(name = "stabforge", version, about = "Encoder and syndrome circuits for stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gates {
    Mixed,
    CnotCz,
}

#[derive(Clone, Copy, ValueEnum)]
enum Signs {
    Canonical,
    Strict,
    Regenerated,
}

impl From<Signs> for SignPolicy {
    fn from(s: Signs) -> Self {
        match s {
            Signs::Canonical => SignPolicy::Canonical,
            Signs::Strict => SignPolicy::Strict,
            Signs::Regenerated => SignPolicy::Regenerated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Rules,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    CnotH,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize an encoder circuit for a code.
    Synth {
        /// `.stab` path, fixture name, or built-in code name.
        code: String,
        #[arg(long, value_enum, default_value = "mixed")]
        gates: Gates,
        #[arg(long)]
        no_strip: bool,
        #[arg(long, value_enum, default_value = "canonical")]
        signs: Signs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimize a circuit and check it against its input.
    Optimize {
        circuit: PathBuf,
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
        #[arg(long)]
        search_budget: Option<u64>,
        #[arg(long, value_enum)]
        target_gates: Option<TargetArg>,
        /// Largest number of Hadamards spanned by one search window.
        #[arg(long)]
        window: Option<usize>,
        /// Random plateau moves after the deterministic passes.
        #[arg(long)]
        explore: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Stop once the two-qubit count reaches this value.
        #[arg(long)]
        stop_at: Option<usize>,
        /// Optimizer settings as JSON; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the single-qubit error syndrome table.
    Syndromes {
        code: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check an encoder against the code (exit 1 on failure).
    Verify {
        code: String,
        circuit: PathBuf,
        #[arg(long, value_enum, default_value = "canonical")]
        signs: Signs,
    },
    /// Encode, inject an error, measure the syndrome and correct.
    Simulate {
        code: String,
        /// Error as `P@q` (1-based qubit) or a full Pauli string.
        #[arg(long)]
        error: Option<String>,
        /// Logical input bits, e.g. `101`.
        #[arg(long)]
        logical: Option<String>,
        /// Encoder to use instead of a freshly synthesized one.
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Print the encoded amplitudes as JSON.
        #[arg(long)]
        dump: bool,
    },
    /// Write a circuit as OpenQASM 2.0.
    ExportQasm {
        circuit: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a pipeline (shipped name or JSON file): synthesize and optimize.
    Pipeline {
        pipeline: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the rewrite rules and their soundness checks.
    Rules,
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Equivalence(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_circuit(path: &Path) -> std::result::Result<Circuit, Failure> {
    Ok(from_json(&read(path)?)?)
}

fn parse_error(spec: &str, n: usize) -> std::result::Result<PauliString, Failure> {
    if let Some((p, q)) = spec.split_once('@') {
        let q: usize = q.parse().map_err(|_| Failure::Input(format!("bad qubit in '{spec}'")))?;
        let letter = p.chars().next().filter(|_| p.len() == 1).ok_or_else(|| Failure::Input(format!("bad Pauli letter in '{spec}'")))?;
        if q == 0 || q > n {
            return Err(Failure::Input(format!("qubit {q} out of range 1..{n}")));
        }
        return Ok(PauliString::single(n, q - 1, letter)?);
    }
    let p = parse_pauli(spec)?;
    if p.n() != n {
        return Err(Error::Dimension { expected: n, found: p.n() }.into());
    }
    Ok(p)
}

fn parse_bits(s: &str, k: usize) -> std::result::Result<Vec<bool>, Failure> {
    if s.len() != k {
        return Err(Failure::Input(format!("expected {k} logical bits, got '{s}'")));
    }
    parse_label(s)?;
    Ok(s.chars().map(|c| c == '1').collect())
}

fn synth(code: &str, gates: Gates, no_strip: bool, signs: Signs, output: Option<&Path>) -> Outcome {
    let code = StabilizerCode::load(code)?;
    let gate_set = match gates {
        Gates::Mixed => GateSet::Mixed,
        Gates::CnotCz => GateSet::CnotCz,
    };
    let c = code.encoder(&EncoderOptions { gate_set, strip: !no_strip, sign_policy: signs.into() })?;
    write_or_print(output, &c.to_json())?;
    if output.is_some() {
        println!("{}", c.gate_counts());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn optimize_cmd(
    circuit: &Path,
    level: Option<LevelArg>,
    budget: Option<u64>,
    target: Option<TargetArg>,
    window: Option<usize>,
    explore: Option<usize>,
    seed: Option<u64>,
    stop_at: Option<usize>,
    config: Option<&Path>,
    output: Option<&Path>,
    report: Option<&Path>,
) -> Outcome {
    let c = load_circuit(circuit)?;
    let mut cfg = match config {
        Some(p) => OptimizeConfig::from_json(&read(p)?)?,
        None => OptimizeConfig::default(),
    };
    if let Some(l) = level {
        cfg.level = match l {
            LevelArg::Rules => Level::Rules,
            LevelArg::Full => Level::Full,
        };
    }
    if let Some(b) = budget {
        cfg.search_budget = b;
    }
    if let Some(TargetArg::CnotH) = target {
        cfg.target_gates = Some(TargetGates::CnotH);
    }
    if let Some(w) = window {
        cfg.window = w;
    }
    if let Some(e) = explore {
        cfg.explore_iterations = e;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if stop_at.is_some() {
        cfg.stop_at = stop_at;
    }
    let (out, rep) = optimize(&c, &cfg)?;
    write_or_print(output, &out.to_json())?;
    if let Some(r) = report {
        fs::write(r, rep.to_json()).map_err(|e| Failure::Input(format!("{}: {e}", r.display())))?;
    }
    if output.is_some() {
        println!("{} -> {}", c.gate_counts(), out.gate_counts());
    }
    Ok(())
}

fn syndromes(code: &str, format: Format) -> Outcome {
    let code = StabilizerCode::load(code)?;
    let t = code.syndrome_table()?;
    let text = match format {
        Format::Table => t.to_table(),
        Format::Json => t.to_json(),
    };
    write_or_print(None, &text)
}

fn verify(code: &str, circuit: &Path, signs: Signs) -> Outcome {
    let code = StabilizerCode::load(code)?;
    let c = load_circuit(circuit)?;
    let check = code.verify_encoder(&c, signs.into())?;
    println!("{} logical basis states checked", check.states);
    if check.passed() {
        println!("ok: every encoded state is stabilized and matches the projector oracle");
        return Ok(());
    }
    if !check.unstabilized.is_empty() {
        println!("not stabilized: {}", check.unstabilized.join(" "));
    }
    if !check.oracle_mismatch.is_empty() {
        println!("oracle mismatch: {}", check.oracle_mismatch.join(" "));
    }
    Err(Failure::Verification("encoder check failed".into()))
}

fn simulate(code: &str, error: Option<&str>, logical: Option<&str>, circuit: Option<&Path>, dump: bool) -> Outcome {
    let code = StabilizerCode::load(code)?;
    let encoder = match circuit {
        Some(p) => load_circuit(p)?,
        None => code.encoder(&EncoderOptions::default())?,
    };
    let bits = match logical {
        Some(s) => parse_bits(s, code.k())?,
        None => vec![false; code.k()],
    };
    let e = match error {
        Some(s) => parse_error(s, code.n())?,
        None => PauliString::identity(code.n()),
    };
    let clean = encode(&encoder, &bits)?;
    if dump {
        println!("{}", clean.dump_json(1e-10));
    }
    let syn = Syndrome(measure_syndrome(&clean, &e, &code.syndrome_circuit(SignPolicy::Canonical)?)?);
    println!("error      {e}");
    println!("syndrome   {syn} ({})", syn.value());
    let table = code.syndrome_table()?;
    match decode(&syn, &table) {
        Decoded::Correction(p) => {
            println!("correction {p}");
            let ok = code.roundtrip_correct(&encoder, &bits, &e)?;
            println!("restored   {ok}");
            if !ok {
                return Err(Failure::Verification("correction did not restore the codeword".into()));
            }
        }
        Decoded::Uncorrectable => {
            println!("correction none (syndrome not in table)");
            return Err(Failure::Verification("uncorrectable syndrome".into()));
        }
    }
    Ok(())
}

fn export_qasm(circuit: &Path, output: Option<&Path>) -> Outcome {
    let c = load_circuit(circuit)?;
    write_or_print(output, &c.to_qasm())
}

fn pipeline(name: &str, output: Option<&Path>, report: Option<&Path>) -> Outcome {
    let p = match Pipeline::shipped(name) {
        Some(p) => p,
        None => Pipeline::from_json(&read(Path::new(name))?)?,
    };
    let run = p.run()?;
    write_or_print(output, &run.optimized.to_json())?;
    if let Some(r) = report {
        fs::write(r, run.report.to_json()).map_err(|e| Failure::Input(format!("{}: {e}", r.display())))?;
    }
    if output.is_some() {
        println!("{} -> {}", run.encoder.gate_counts(), run.optimized.gate_counts());
    }
    Ok(())
}

fn rules() -> Outcome {
    let mut bad = false;
    for r in registry() {
        let status = if r.failures.is_empty() { "sound" } else { "UNSOUND" };
        bad |= !r.failures.is_empty();
        println!("{:<28} {:<8} {:>6} windows  {}", r.rule.name(), status, r.windows_checked, r.rule.description());
    }
    if bad {
        return Err(Failure::Verification("a rewrite rule failed its check".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Synth { code, gates, no_strip, signs, output } => synth(code, *gates, *no_strip, *signs, output.as_deref()),
        Cmd::Optimize { circuit, level, search_budget, target_gates, window, explore, seed, stop_at, config, output, report } => {
            optimize_cmd(
                circuit,
                *level,
                *search_budget,
                *target_gates,
                *window,
                *explore,
                *seed,
                *stop_at,
                config.as_deref(),
                output.as_deref(),
                report.as_deref(),
            )
        }
        Cmd::Syndromes { code, format } => syndromes(code, *format),
        Cmd::Verify { code, circuit, signs } => verify(code, circuit, *signs),
        Cmd::Simulate { code, error, logical, circuit, dump } => {
            simulate(code, error.as_deref(), logical.as_deref(), circuit.as_deref(), *dump)
        }
        Cmd::ExportQasm { circuit, output } => export_qasm(circuit, output.as_deref()),
        Cmd::Pipeline { pipeline: p, output, report } => pipeline(p, output.as_deref(), report.as_deref()),
        Cmd::Rules => rules(),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
