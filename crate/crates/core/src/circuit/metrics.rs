use super::{Gate, GateCircuit};
use crate::Real;

/// Gate-count summary of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircuitMetrics {
    pub cnot_count: usize,
    pub cnot_depth: usize,
    pub gate_count: usize,
}

impl CircuitMetrics {
    pub fn of<T: Real>(c: &GateCircuit<T>) -> Self {
        CircuitMetrics {
            cnot_count: cnot_count(c),
            cnot_depth: cnot_depth(c),
            gate_count: c.len(),
        }
    }
}

pub fn cnot_count<T: Real>(c: &GateCircuit<T>) -> usize {
    c.gates().iter().filter(|g| g.is_cnot()).count()
}

/// Number of CNOT-bearing layers in the greedy left-packed schedule.
///
/// Every gate is placed in the earliest layer after all earlier gates on its
/// qubits. Single-qubit gates take up a slot on their wire, but a layer only
/// counts towards the depth if it holds at least one CNOT.
pub fn cnot_depth<T: Real>(c: &GateCircuit<T>) -> usize {
    let mut frontier = vec![0usize; c.n_qubits()];
    let mut has_cnot: Vec<bool> = Vec::new();
    for g in c.gates() {
        let qs = g.qubits();
        let layer = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0);
        for &q in &qs {
            frontier[q] = layer + 1;
        }
        if has_cnot.len() <= layer {
            has_cnot.resize(layer + 1, false);
        }
        if matches!(g, Gate::Cnot { .. }) {
            has_cnot[layer] = true;
        }
    }
    has_cnot.into_iter().filter(|&b| b).count()
}
