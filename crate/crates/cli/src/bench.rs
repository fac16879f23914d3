use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};

use gadgetopt::anneal::{anneal, default_t0};
use gadgetopt::pipeline::{bench_grid, cell_seed, generate, summarize, Ansatz, AnsatzKind, AnsatzSpec, BenchSample, BenchSummary};

use crate::{AnnealArgs, Shape};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum Sweep {
    Attempts,
    Iterations,
    /// Number of qubits.
    Width,
    /// Gadgets per layer.
    Height,
}

#[derive(Args)]
pub(crate) struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    qubits: usize,
    /// Gadgets per layer, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    gadgets: Vec<usize>,
    /// Layer counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10")]
    layers: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[command(flatten)]
    anneal: AnnealArgs,
    #[arg(long, value_enum, default_value = "tree")]
    shape: Shape,
    /// Write per-sample results as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Instead of the optimisation table, record annealing scores while
    /// varying one parameter.
    #[arg(long, value_enum)]
    sweep: Option<Sweep>,
    /// Values for --sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    values: Vec<usize>,
}

fn table(out: &mut String, title: &str, rows: &[BenchSummary], pick: fn(&BenchSummary) -> (f64, f64)) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{:>8} {:>7} {:>8} {:>8} {:>6}", "gadgets", "layers", "before", "after", "saved");
    for r in rows {
        let (b, a) = pick(r);
        let _ = writeln!(
            out,
            "{:>8} {:>7} {:>8.0} {:>8.0} {:>5.0}%",
            r.gadgets,
            r.layers,
            b,
            a,
            100.0 * (1.0 - a / b)
        );
    }
}

fn csv(n: usize, samples: &[BenchSample]) -> String {
    let mut s = String::from("kind,n,gadgets,layers,sample,metric,before,after\n");
    for x in samples {
        for (metric, b, a) in [
            ("cnot_depth", x.before.cnot_depth, x.after.cnot_depth),
            ("cnot_count", x.before.cnot_count, x.after.cnot_count),
        ] {
            let _ = writeln!(s, "random_gadget,{n},{},{},{},{metric},{b},{a}", x.gadgets, x.layers, x.sample);
        }
    }
    s
}

fn sweep(a: &BenchArgs, which: Sweep) -> anyhow::Result<String> {
    let values = if a.values.is_empty() {
        match which {
            Sweep::Attempts => vec![1, 5, 10, 20],
            Sweep::Iterations => vec![100, 1000, 5000],
            Sweep::Width => vec![4, 6, 8, 10],
            Sweep::Height => vec![5, 10, 20],
        }
    } else {
        a.values.clone()
    };
    let name = match which {
        Sweep::Attempts => "attempts",
        Sweep::Iterations => "iterations",
        Sweep::Width => "width",
        Sweep::Height => "height",
    };
    let mut out = String::from("parameter,value,sample,initial_energy,best_energy\n");
    for &v in &values {
        if v == 0 {
            bail!("sweep values must be positive");
        }
        for s in 0..a.samples {
            let seed = cell_seed(a.anneal.seed, v, 0, s);
            let (mut n, mut gadgets) = (a.qubits, a.gadgets[0]);
            let mut params = a.anneal.params();
            match which {
                Sweep::Attempts => params.attempts = v,
                Sweep::Iterations => params.iterations = v,
                Sweep::Width => n = v,
                Sweep::Height => gadgets = v,
            }
            params.seed = seed;
            let spec = AnsatzSpec {
                gadgets_per_layer: gadgets,
                seed,
                ..AnsatzSpec::new(AnsatzKind::RandomGadget, n, 1)
            };
            let Ansatz::Gadgets(g) = generate::<f64>(&spec)? else {
                unreachable!("random ansatz is a gadget list")
            };
            let (lz, lx) = g.leg_matrices();
            if a.anneal.t0.is_none() {
                params.t0 = default_t0(&lz, &lx);
            }
            let r = anneal(&lz, &lx, &params)?;
            let _ = writeln!(out, "{name},{v},{s},{},{}", r.initial_energy, r.best_energy);
        }
    }
    Ok(out)
}

pub(crate) fn run(a: &BenchArgs) -> anyhow::Result<()> {
    if a.samples == 0 {
        bail!("--samples must be at least 1");
    }
    if a.gadgets.is_empty() || a.layers.is_empty() {
        bail!("empty gadget or layer list");
    }
    if a.layers.contains(&0) {
        bail!("layer counts must be positive");
    }
    if let Some(which) = a.sweep {
        let text = sweep(a, which)?;
        match &a.csv {
            Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
            None => print!("{text}"),
        }
        return Ok(());
    }
    // Verification is covered by the test suite; here it would dominate
    // the runtime.
    let opts = a.anneal.options(a.shape, false);
    let samples = bench_grid(a.qubits, &a.gadgets, &a.layers, a.samples, a.anneal.seed, &opts)?;
    let rows = summarize(&samples);
    let mut out = String::new();
    let _ = writeln!(out, "{} qubits, {} samples per cell", a.qubits, a.samples);
    table(&mut out, "CNOT depth", &rows, |r| (r.depth_before, r.depth_after));
    out.push('\n');
    table(&mut out, "CNOT count", &rows, |r| (r.count_before, r.count_after));
    if let Some(p) = &a.csv {
        fs::write(p, csv(a.qubits, &samples)).with_context(|| format!("cannot write {}", p.display()))?;
    } else {
        out.push('\n');
        for x in &samples {
            let _ = writeln!(
                out,
                "cell gadgets={} layers={} sample={} depth={}->{} count={}->{}",
                x.gadgets, x.layers, x.sample, x.before.cnot_depth, x.after.cnot_depth, x.before.cnot_count, x.after.cnot_count
            );
        }
    }
    print!("{out}");
    Ok(())
}
