use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gadgetopt::anneal::anneal;
use gadgetopt::oracle::{phase_aligned_error, unitary_of_circuit};
use gadgetopt::pipeline::{generate, optimize, Ansatz, AnsatzKind, AnsatzSpec, OptimizeOptions};
use gadgetopt::transform::extract;
use gadgetopt::{AnnealParams, Error, GateCircuit, NormalForm, SynthShape};

mod bench;

/// Phase-gadget circuit optimiser.
#[derive(Parser)]
#[command(name = "gadgetopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a circuit as phase gadgets followed by its CNOTs.
    Extract {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce CNOT count and depth of a circuit.
    Optimize(OptimizeArgs),
    /// Search for a basis change minimising the legs of a gadget file.
    Anneal {
        input: PathBuf,
        #[command(flatten)]
        anneal: AnnealArgs,
    },
    /// Write a benchmark ansatz.
    Generate(GenerateArgs),
    /// Mean CNOT savings on random gadget ansätze.
    Bench(bench::BenchArgs),
    /// Compare two circuits up to global phase.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Args, Clone)]
pub(crate) struct AnnealArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    attempts: usize,
    #[arg(long, default_value_t = 5000)]
    iterations: usize,
    /// Initial temperature [default: max(5, legs) / 10]
    #[arg(long)]
    t0: Option<f64>,
}

impl AnnealArgs {
    pub(crate) fn params(&self) -> AnnealParams {
        AnnealParams {
            t0: self.t0.unwrap_or(AnnealParams::default().t0),
            iterations: self.iterations,
            attempts: self.attempts,
            seed: self.seed,
        }
    }

    pub(crate) fn options(&self, shape: Shape, verify: bool) -> OptimizeOptions {
        OptimizeOptions {
            anneal: self.params(),
            auto_t0: self.t0.is_none(),
            shape: shape.into(),
            verify,
            exact_layers: false,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
pub(crate) enum Shape {
    Ladder,
    Tree,
}

impl From<Shape> for SynthShape {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Ladder => SynthShape::Ladder,
            Shape::Tree => SynthShape::Tree,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportFormat {
    Text,
    Kv,
}

#[derive(Args)]
struct OptimizeArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    anneal: AnnealArgs,
    #[arg(long, value_enum, default_value = "tree")]
    shape: Shape,
    #[arg(long)]
    no_verify: bool,
    /// Treat layers as repeats only if their angles match too.
    #[arg(long)]
    exact_layers: bool,
    #[arg(long, value_enum, default_value = "text")]
    report: ReportFormat,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Staircase,
    Brickwall,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    qubits: usize,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    /// Gadgets per layer (random only).
    #[arg(long, default_value_t = 10)]
    gadgets: usize,
    /// Add RX rotations (staircase and brickwall).
    #[arg(long)]
    rx: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write random ansätze as gadgets instead of gates.
    #[arg(long)]
    gadget_format: bool,
    #[arg(long, value_enum, default_value = "tree")]
    shape: Shape,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_circuit(path: &Path) -> anyhow::Result<GateCircuit> {
    read(path)?
        .parse()
        .with_context(|| format!("{}", path.display()))
}

fn write_out(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_optimize(a: &OptimizeArgs) -> anyhow::Result<()> {
    let c = read_circuit(&a.input)?;
    let mut opts = a.anneal.options(a.shape, !a.no_verify);
    opts.exact_layers = a.exact_layers;
    let (out, report) = optimize(&c, &opts)?;
    let text = match a.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Kv => report.to_kv(),
    };
    match &a.output {
        Some(p) => {
            write_out(Some(p), &out.to_text())?;
            print!("{text}");
        }
        None => {
            print!("{}", out.to_text());
            eprint!("{text}");
        }
    }
    Ok(())
}

fn cmd_anneal(input: &Path, a: &AnnealArgs) -> anyhow::Result<()> {
    let nf: NormalForm = read(input)?
        .parse()
        .with_context(|| format!("{}", input.display()))?;
    let (lz, lx) = nf.gadgets.leg_matrices();
    let mut params = a.params();
    if a.t0.is_none() {
        params.t0 = gadgetopt::anneal::default_t0(&lz, &lx);
    }
    let r = anneal(&lz, &lx, &params)?;
    println!("initial_energy={}", r.initial_energy);
    println!("best_energy={}", r.best_energy);
    let per: Vec<String> = r.per_attempt_energies.iter().map(ToString::to_string).collect();
    println!("attempts={}", per.join(","));
    println!("{}", r.best_c);
    Ok(())
}

fn cmd_generate(a: &GenerateArgs) -> anyhow::Result<()> {
    let kind = match a.kind {
        Kind::Staircase => AnsatzKind::Staircase,
        Kind::Brickwall => AnsatzKind::Brickwall,
        Kind::Random => AnsatzKind::RandomGadget,
    };
    let spec = AnsatzSpec {
        kind,
        n_qubits: a.qubits,
        layers: a.layers,
        gadgets_per_layer: a.gadgets,
        with_rx: a.rx,
        seed: a.seed,
    };
    let ansatz = generate::<f64>(&spec)?;
    let text = match (&ansatz, a.gadget_format) {
        (Ansatz::Gadgets(g), true) => g.to_text(),
        (_, true) => bail!("--gadget-format only applies to random ansätze"),
        _ => ansatz.to_gate_circuit(a.shape.into()).to_text(),
    };
    write_out(a.output.as_deref(), &text)
}

fn cmd_verify(a: &Path, b: &Path, tol: f64) -> anyhow::Result<bool> {
    let (ca, cb) = (read_circuit(a)?, read_circuit(b)?);
    if ca.n_qubits() != cb.n_qubits() {
        bail!("circuits have {} and {} qubits", ca.n_qubits(), cb.n_qubits());
    }
    let err = phase_aligned_error(&unitary_of_circuit(&ca)?, &unitary_of_circuit(&cb)?);
    let equal = err < tol;
    println!("{} max_error={err:e}", if equal { "equal" } else { "different" });
    Ok(equal)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Extract { input, output } => {
            let nf = extract(&gadgetopt::circuit::lower_to_basis(&read_circuit(&input)?))?;
            write_out(output.as_deref(), &nf.to_text())?;
        }
        Command::Optimize(a) => cmd_optimize(&a)?,
        Command::Anneal { input, anneal } => cmd_anneal(&input, &anneal)?,
        Command::Generate(a) => cmd_generate(&a)?,
        Command::Bench(a) => bench::run(&a)?,
        Command::Verify { a, b, tol } => {
            if !cmd_verify(&a, &b, tol)? {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::VerificationFailed { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
