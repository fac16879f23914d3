use rayon::prelude::*;

use super::{generate, optimize, AnsatzKind, AnsatzSpec, OptimizeOptions};
use crate::circuit::CircuitMetrics;
use crate::error::{Error, Result};

/// One benchmark sample: a random gadget ansatz before and after
/// optimisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSample {
    pub n_qubits: usize,
    pub gadgets: usize,
    pub layers: usize,
    pub sample: usize,
    pub before: CircuitMetrics,
    pub after: CircuitMetrics,
    pub energy_before: usize,
    pub energy_after: usize,
}

/// Seed of one grid cell, independent of the rest of the grid.
pub fn cell_seed(seed: u64, gadgets: usize, layers: usize, sample: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [gadgets as u64, layers as u64, sample as u64] {
        h = (h ^ v).wrapping_mul(0x1000_0000_01b3).rotate_left(29);
    }
    h
}

/// Optimises one random-gadget ansatz. The unoptimised circuit is the
/// gadget list synthesised with the same shape as the optimised one.
pub fn bench_sample(
    n_qubits: usize,
    gadgets: usize,
    layers: usize,
    sample: usize,
    seed: u64,
    opts: &OptimizeOptions,
) -> Result<BenchSample> {
    let s = cell_seed(seed, gadgets, layers, sample);
    let spec = AnsatzSpec {
        gadgets_per_layer: gadgets,
        seed: s,
        ..AnsatzSpec::new(AnsatzKind::RandomGadget, n_qubits, layers)
    };
    let c = generate::<f64>(&spec)?.to_gate_circuit(opts.shape);
    let mut o = *opts;
    o.anneal.seed = s;
    let (_, r) = optimize(&c, &o)?;
    Ok(BenchSample {
        n_qubits,
        gadgets,
        layers,
        sample,
        before: r.before,
        after: r.after,
        energy_before: r.energy_before,
        energy_after: r.energy_after,
    })
}

/// Every `(gadgets, layers, sample)` cell, run in parallel, returned in grid
/// order.
pub fn bench_grid(
    n_qubits: usize,
    gadgets: &[usize],
    layers: &[usize],
    samples: usize,
    seed: u64,
    opts: &OptimizeOptions,
) -> Result<Vec<BenchSample>> {
    if gadgets.is_empty() || layers.is_empty() || samples == 0 {
        return Err(Error::InvalidParams("empty benchmark grid".into()));
    }
    if gadgets.contains(&0) || layers.contains(&0) || n_qubits == 0 {
        return Err(Error::InvalidParams("qubits, gadgets and layers must be positive".into()));
    }
    let cells: Vec<(usize, usize, usize)> = gadgets
        .iter()
        .flat_map(|&g| layers.iter().flat_map(move |&l| (0..samples).map(move |s| (g, l, s))))
        .collect();
    cells
        .into_par_iter()
        .map(|(g, l, s)| bench_sample(n_qubits, g, l, s, seed, opts))
        .collect()
}

/// Mean before/after CNOT depth and count over samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchSummary {
    pub gadgets: usize,
    pub layers: usize,
    pub depth_before: f64,
    pub depth_after: f64,
    pub count_before: f64,
    pub count_after: f64,
}

impl BenchSummary {
    pub fn depth_saving(&self) -> f64 {
        1.0 - self.depth_after / self.depth_before
    }

    pub fn count_saving(&self) -> f64 {
        1.0 - self.count_after / self.count_before
    }
}

/// Groups samples by `(gadgets, layers)` in first-seen order.
pub fn summarize(samples: &[BenchSample]) -> Vec<BenchSummary> {
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for s in samples {
        if !keys.contains(&(s.gadgets, s.layers)) {
            keys.push((s.gadgets, s.layers));
        }
    }
    keys.into_iter()
        .map(|(g, l)| {
            let cell: Vec<&BenchSample> =
                samples.iter().filter(|s| s.gadgets == g && s.layers == l).collect();
            let mean = |f: &dyn Fn(&BenchSample) -> usize| {
                cell.iter().map(|s| f(s) as f64).sum::<f64>() / cell.len() as f64
            };
            BenchSummary {
                gadgets: g,
                layers: l,
                depth_before: mean(&|s| s.before.cnot_depth),
                depth_after: mean(&|s| s.after.cnot_depth),
                count_before: mean(&|s| s.before.cnot_count),
                count_after: mean(&|s| s.after.cnot_count),
            }
        })
        .collect()
}
