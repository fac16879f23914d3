//! Gate-level circuits: representation, text format, metrics and lowering to
//! the `{CNOT, RZ, RX}` basis.

mod euler;
mod lower;
mod metrics;
pub(crate) mod text;

pub use euler::{euler_xzx_to_zxz, euler_zxz_to_xzx};
pub use lower::lower_to_basis;
pub use metrics::{cnot_count, cnot_depth, CircuitMetrics};
pub use text::parse;

use crate::error::{Error, Result};
use crate::Real;

/// A primitive gate. Angles are in radians; qubits are 0-indexed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate<T = f64> {
    Cnot { control: usize, target: usize },
    Rz { angle: T, qubit: usize },
    Rx { angle: T, qubit: usize },
    Ry { angle: T, qubit: usize },
    H { qubit: usize },
    Cz { a: usize, b: usize },
    Crz { angle: T, control: usize, target: usize },
    Crx { angle: T, control: usize, target: usize },
    Cu1 { angle: T, a: usize, b: usize },
}

impl<T: Real> Gate<T> {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn rz(angle: T, qubit: usize) -> Self {
        Gate::Rz { angle, qubit }
    }

    pub fn rx(angle: T, qubit: usize) -> Self {
        Gate::Rx { angle, qubit }
    }

    /// Qubits touched by this gate.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target }
            | Gate::Crz { control, target, .. }
            | Gate::Crx { control, target, .. } => vec![control, target],
            Gate::Cz { a, b } | Gate::Cu1 { a, b, .. } => vec![a, b],
            Gate::Rz { qubit, .. }
            | Gate::Rx { qubit, .. }
            | Gate::Ry { qubit, .. }
            | Gate::H { qubit } => vec![qubit],
        }
    }

    pub fn angle(&self) -> Option<T> {
        match *self {
            Gate::Rz { angle, .. }
            | Gate::Rx { angle, .. }
            | Gate::Ry { angle, .. }
            | Gate::Crz { angle, .. }
            | Gate::Crx { angle, .. }
            | Gate::Cu1 { angle, .. } => Some(angle),
            Gate::Cnot { .. } | Gate::H { .. } | Gate::Cz { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Cnot { .. } => "cnot",
            Gate::Rz { .. } => "rz",
            Gate::Rx { .. } => "rx",
            Gate::Ry { .. } => "ry",
            Gate::H { .. } => "h",
            Gate::Cz { .. } => "cz",
            Gate::Crz { .. } => "crz",
            Gate::Crx { .. } => "crx",
            Gate::Cu1 { .. } => "cu1",
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// True for gates in the `{CNOT, RZ, RX}` basis.
    pub fn is_basis(&self) -> bool {
        matches!(self, Gate::Cnot { .. } | Gate::Rz { .. } | Gate::Rx { .. })
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidGate(format!(
                "{} acts twice on qubit {}",
                self.name(),
                qs[0]
            )));
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidGate(format!(
                    "{} has non-finite angle",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    /// Converts the angle type.
    pub fn cast<U: Real>(&self) -> Gate<U> {
        let c = |a: T| U::from(a).expect("angle representable");
        match *self {
            Gate::Cnot { control, target } => Gate::Cnot { control, target },
            Gate::Rz { angle, qubit } => Gate::Rz { angle: c(angle), qubit },
            Gate::Rx { angle, qubit } => Gate::Rx { angle: c(angle), qubit },
            Gate::Ry { angle, qubit } => Gate::Ry { angle: c(angle), qubit },
            Gate::H { qubit } => Gate::H { qubit },
            Gate::Cz { a, b } => Gate::Cz { a, b },
            Gate::Crz { angle, control, target } => Gate::Crz { angle: c(angle), control, target },
            Gate::Crx { angle, control, target } => Gate::Crx { angle: c(angle), control, target },
            Gate::Cu1 { angle, a, b } => Gate::Cu1 { angle: c(angle), a, b },
        }
    }
}

/// An ordered list of gates on `n_qubits` wires, in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit<T = f64> {
    n_qubits: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Real> GateCircuit<T> {
    pub fn new(n_qubits: usize) -> Self {
        GateCircuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit, checking every gate against the width.
    pub fn from_gates(n_qubits: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(GateCircuit { n_qubits, gates })
    }

    /// Appends a gate.
    ///
    /// # Panics
    ///
    /// Panics if the gate is invalid for this circuit's width.
    pub fn push(&mut self, gate: Gate<T>) {
        if let Err(e) = gate.validate(self.n_qubits) {
            panic!("invalid gate {gate:?}: {e}");
        }
        self.gates.push(gate);
    }

    pub fn try_push(&mut self, gate: Gate<T>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`.
    pub fn append(&mut self, other: &GateCircuit<T>) {
        assert_eq!(self.n_qubits, other.n_qubits, "width mismatch");
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_basis(&self) -> bool {
        self.gates.iter().all(Gate::is_basis)
    }

    pub fn metrics(&self) -> CircuitMetrics {
        CircuitMetrics::of(self)
    }

    pub fn cast<U: Real>(&self) -> GateCircuit<U> {
        GateCircuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().map(Gate::cast).collect(),
        }
    }

    /// Serialises to the line-oriented text format.
    pub fn to_text(&self) -> String {
        text::serialize(self)
    }
}

impl<T: Real> std::str::FromStr for GateCircuit<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl<T: Real> std::fmt::Display for GateCircuit<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}
