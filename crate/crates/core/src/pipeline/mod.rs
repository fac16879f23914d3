//! End-to-end optimisation, peephole passes and benchmark ansätze.

mod ansatz;
mod bench;
mod peephole;

use std::fmt::{self, Write};

pub use ansatz::{cnot_layer, generate, mppp_period, Ansatz, AnsatzKind, AnsatzSpec};
pub use bench::{bench_grid, bench_sample, cell_seed, summarize, BenchSample, BenchSummary};
pub use peephole::euler_peephole;

use crate::anneal::{anneal, default_t0, AnnealParams};
use crate::circuit::{lower_to_basis, CircuitMetrics, Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{fusion_plan, GadgetCircuit, GadgetEntry};
use crate::gf2::BitMatrix;
use crate::oracle::{phase_aligned_error, unitary_of_circuit, MAX_QUBITS};
use crate::transform::{
    detect_layers, detect_layers_exact, extract, synth_cnot, synth_gadget_circuit, LayerInfo,
    SynthShape,
};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    pub anneal: AnnealParams,
    /// Replace `anneal.t0` by the leg-count based default.
    pub auto_t0: bool,
    pub shape: SynthShape,
    pub verify: bool,
    /// Layers must also agree on angles to count as repeats.
    pub exact_layers: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            anneal: AnnealParams::default(),
            auto_t0: true,
            shape: SynthShape::Tree,
            verify: true,
            exact_layers: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verified {
    Yes,
    No,
    /// Too wide for the dense simulator, or verification disabled.
    Skipped,
}

impl fmt::Display for Verified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verified::Yes => "yes",
            Verified::No => "no",
            Verified::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeReport {
    pub n_qubits: usize,
    pub before: CircuitMetrics,
    pub after: CircuitMetrics,
    /// Legs in one repeating unit as extracted.
    pub energy_before: usize,
    /// Legs in one repeating unit after fusion and the chosen basis change.
    pub energy_after: usize,
    pub layers_detected: usize,
    pub unit_length: usize,
    pub prefix_length: usize,
    pub verified: Verified,
    pub max_error: Option<f64>,
}

fn percent(before: usize, after: usize) -> i64 {
    if before == 0 {
        return 0;
    }
    (100.0 * (before as f64 - after as f64) / before as f64).round() as i64
}

impl OptimizeReport {
    pub fn depth_saving_percent(&self) -> i64 {
        percent(self.before.cnot_depth, self.after.cnot_depth)
    }

    pub fn count_saving_percent(&self) -> i64 {
        percent(self.before.cnot_count, self.after.cnot_count)
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<12} {:>8} {:>8} {:>6}", "", "before", "after", "saved");
        let rows = [
            ("cnot depth", self.before.cnot_depth, self.after.cnot_depth),
            ("cnot count", self.before.cnot_count, self.after.cnot_count),
            ("gates", self.before.gate_count, self.after.gate_count),
        ];
        for (name, b, a) in rows {
            let _ = writeln!(s, "{name:<12} {b:>8} {a:>8} {:>5}%", percent(b, a));
        }
        let _ = writeln!(s, "{:<12} {:>8} {:>8}", "legs/unit", self.energy_before, self.energy_after);
        let _ = writeln!(
            s,
            "layers: {} x {} gadgets (prefix {})",
            self.layers_detected, self.unit_length, self.prefix_length
        );
        match self.max_error {
            Some(e) => {
                let _ = writeln!(s, "verified: {} (max error {e:.3e})", self.verified);
            }
            None => {
                let _ = writeln!(s, "verified: {}", self.verified);
            }
        }
        s
    }

    /// Stable `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let pairs: [(&str, String); 14] = [
            ("n_qubits", self.n_qubits.to_string()),
            ("before_cnot_count", self.before.cnot_count.to_string()),
            ("before_cnot_depth", self.before.cnot_depth.to_string()),
            ("before_gate_count", self.before.gate_count.to_string()),
            ("after_cnot_count", self.after.cnot_count.to_string()),
            ("after_cnot_depth", self.after.cnot_depth.to_string()),
            ("after_gate_count", self.after.gate_count.to_string()),
            ("energy_before", self.energy_before.to_string()),
            ("energy_after", self.energy_after.to_string()),
            ("layers_detected", self.layers_detected.to_string()),
            ("unit_length", self.unit_length.to_string()),
            ("prefix_length", self.prefix_length.to_string()),
            ("verified", self.verified.to_string()),
            (
                "max_error",
                self.max_error.map_or_else(|| "none".to_string(), |e| format!("{e:e}")),
            ),
        ];
        for (k, v) in pairs {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}

/// One layer of the fused unit: entry structure from `unit`, angles summed
/// over each fusion group.
fn fused_layer<T: Real>(
    layer: &[GadgetEntry<T>],
    unit: &[GadgetEntry<T>],
    plan: &[Vec<usize>],
) -> Vec<GadgetEntry<T>> {
    plan.iter()
        .map(|group| {
            let angle = group.iter().fold(T::zero(), |acc, &i| acc + layer[i].angle());
            unit[group[0]].with_angle(angle)
        })
        .collect()
}

/// Rewrites a circuit to reduce CNOT count and depth.
///
/// The circuit is lowered to CNOT/RZ/RX and brought into gadget normal form.
/// If the gadgets repeat in layers, one layer is fused and annealed for a
/// basis change `C`; the output is the untouched prefix gadgets, a CNOT block
/// for `C`, every layer with legs transformed by `C`, and one CNOT block for
/// the inverse of `C` merged with the original CNOT tail. A final pass
/// collapses single-qubit rotation runs.
///
/// With `opts.verify` and at most [`MAX_QUBITS`] qubits, the result is
/// compared with the input on the dense simulator; a mismatch is an error.
pub fn optimize<T: Real>(
    c: &GateCircuit<T>,
    opts: &OptimizeOptions,
) -> Result<(GateCircuit<T>, OptimizeReport)> {
    opts.anneal.validate()?;
    let n = c.n_qubits();
    let nf = extract(&lower_to_basis(c))?;
    let info = if opts.exact_layers {
        detect_layers_exact(&nf.gadgets)
    } else {
        detect_layers(&nf.gadgets)
    };
    let LayerInfo {
        unit_length,
        repeats,
        offset,
    } = info;
    log::debug!("layers: offset {offset}, unit {unit_length} x {repeats}");

    let entries = nf.gadgets.entries();
    let unit = &entries[info.layer(0)];
    let plan = fusion_plan(unit);
    let fused_unit = GadgetCircuit::from_entries(n, fused_layer(unit, unit, &plan))?;
    let energy_before = unit.iter().map(GadgetEntry::leg_count).sum();

    let (lz, lx) = fused_unit.leg_matrices();
    let mut params = opts.anneal;
    if opts.auto_t0 {
        params.t0 = default_t0(&lz, &lx);
    }
    let result = anneal(&lz, &lx, &params)?;
    let cmat = result.best_c;
    log::debug!(
        "anneal: {} -> {} legs per unit",
        result.initial_energy,
        result.best_energy
    );

    let mut out = synth_gadget_circuit(&nf.gadgets.slice(0..offset), opts.shape);
    let identity = cmat.is_identity();
    if !identity {
        out.append(&synth_cnot(&cmat)?.to_gate_circuit());
    }
    let mut layers = GadgetCircuit::new(n);
    for k in 0..repeats {
        for e in fused_layer(&entries[info.layer(k)], unit, &plan) {
            if !e.angle().is_zero_angle() {
                layers.push_entry(e);
            }
        }
    }
    out.append(&synth_gadget_circuit(&layers.apply_action(&cmat)?, opts.shape));
    let closing: BitMatrix = if identity {
        nf.tail.h_z()
    } else {
        nf.tail.h_z().mul(&cmat.invert()?)?
    };
    out.append(&synth_cnot(&closing)?.to_gate_circuit());

    let out = drop_zero_rotations(&euler_peephole(&out));

    let (verified, max_error) = if !opts.verify || n > MAX_QUBITS {
        if opts.verify {
            log::warn!("{n} qubits exceeds {MAX_QUBITS}; skipping verification");
        }
        (Verified::Skipped, None)
    } else {
        let err = phase_aligned_error(&unitary_of_circuit(c)?, &unitary_of_circuit(&out)?);
        let err = err.to_f64().unwrap_or(f64::INFINITY);
        if err.is_nan() || err >= T::verify_tol().to_f64().unwrap_or(1e-9) {
            return Err(Error::VerificationFailed { max_error: err });
        }
        (Verified::Yes, Some(err))
    };

    let report = OptimizeReport {
        n_qubits: n,
        before: c.metrics(),
        after: out.metrics(),
        energy_before,
        energy_after: result.best_energy,
        layers_detected: repeats,
        unit_length,
        prefix_length: offset,
        verified,
        max_error,
    };
    Ok((out, report))
}

fn drop_zero_rotations<T: Real>(c: &GateCircuit<T>) -> GateCircuit<T> {
    let gates = c
        .gates()
        .iter()
        .filter(|g| !matches!(g, Gate::Rz { angle, .. } | Gate::Rx { angle, .. } if angle.is_zero_angle()))
        .copied()
        .collect();
    GateCircuit::from_gates(c.n_qubits(), gates).expect("subset of a valid circuit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVec;
    use crate::oracle::equiv_up_to_phase;

    fn quick() -> OptimizeOptions {
        OptimizeOptions {
            anneal: AnnealParams {
                iterations: 500,
                attempts: 4,
                ..AnnealParams::default()
            },
            ..OptimizeOptions::default()
        }
    }

    fn worked_gadgets() -> GadgetCircuit<f64> {
        let mut g = GadgetCircuit::new(3);
        for (b, a, s) in [
            (crate::Basis::Z, 0.1, "110"),
            (crate::Basis::X, 0.2, "111"),
            (crate::Basis::X, 0.3, "110"),
            (crate::Basis::Z, 0.4, "100"),
            (crate::Basis::Z, 0.5, "110"),
        ] {
            g.push(b, a, BitVec::parse_bits(s).unwrap()).unwrap();
        }
        g
    }

    #[test]
    fn single_rotation_is_kept() {
        let c = GateCircuit::from_gates(2, vec![Gate::rz(0.4, 1)]).unwrap();
        let (out, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(out, c);
        assert_eq!(r.verified, Verified::Yes);
    }

    #[test]
    fn worked_example() {
        let c = synth_gadget_circuit(&worked_gadgets(), SynthShape::Ladder);
        let (out, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(r.energy_before, 10);
        assert!(r.energy_after <= 6);
        assert_eq!(r.verified, Verified::Yes);
        let (u, v) = (unitary_of_circuit(&c).unwrap(), unitary_of_circuit(&out).unwrap());
        assert!(equiv_up_to_phase(&u, &v, 1e-9));
    }

    #[test]
    fn repeated_layers_share_blocks() {
        let spec = AnsatzSpec {
            gadgets_per_layer: 6,
            seed: 3,
            ..AnsatzSpec::new(AnsatzKind::RandomGadget, 5, 4)
        };
        let c = generate::<f64>(&spec).unwrap().to_gate_circuit(SynthShape::Tree);
        let (_, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(r.layers_detected, 4);
        assert_eq!(r.unit_length, 6);
        assert_eq!(r.verified, Verified::Yes);
        assert!(r.energy_after <= r.energy_before);
    }

    #[test]
    fn mixed_gates_are_lowered() {
        let c: GateCircuit<f64> = "qubits 3\nh 0\ncz 0 1\ncrx 0.7 1 2\nry 0.3 2\ncu1 1.1 2 0\n"
            .parse()
            .unwrap();
        let (_, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(r.verified, Verified::Yes);
    }

    #[test]
    fn wide_circuits_skip_verification() {
        let mut c = GateCircuit::<f64>::new(12);
        c.push(Gate::cnot(0, 11));
        c.push(Gate::rz(0.3, 11));
        let (_, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(r.verified, Verified::Skipped);
        assert!(r.to_kv().contains("verified=skipped\n"));
    }

    #[test]
    fn single_precision() {
        let c = synth_gadget_circuit(&worked_gadgets().cast::<f32>(), SynthShape::Tree);
        let (_, r) = optimize(&c, &quick()).unwrap();
        assert_eq!(r.verified, Verified::Yes);
    }

    #[test]
    fn report_formats() {
        let c = synth_gadget_circuit(&worked_gadgets(), SynthShape::Ladder);
        let (_, r) = optimize(&c, &quick()).unwrap();
        let kv = r.to_kv();
        assert!(kv.starts_with("n_qubits=3\n"));
        assert!(kv.contains("energy_before=10\n"));
        assert!(r.to_text().contains("cnot depth"));
    }
}
