use super::{Gate, GateCircuit};
use crate::Real;

/// Rewrites every gate into `{CNOT, RZ, RX}`, preserving the unitary up to
/// global phase.
///
/// * `H = RZ(π/2)·RX(π/2)·RZ(π/2)`
/// * `RY(φ) = RX(-π/2)·RZ(φ)·RX(π/2)`
/// * diagonal two-qubit gates become single-qubit RZs plus a two-leg Z
///   gadget (`CNOT; RZ; CNOT`)
/// * `CRX` is `CRZ` conjugated by a Hadamard on the target
pub fn lower_to_basis<T: Real>(c: &GateCircuit<T>) -> GateCircuit<T> {
    let mut out = GateCircuit::new(c.n_qubits());
    for g in c.gates() {
        lower_gate(g, &mut out.gates);
    }
    out
}

fn push_h<T: Real>(q: usize, out: &mut Vec<Gate<T>>) {
    let h = T::FRAC_PI_2();
    out.extend([Gate::rz(h, q), Gate::rx(h, q), Gate::rz(h, q)]);
}

/// `exp(-iθ/2 · Z_a Z_b)` as CNOT, RZ, CNOT.
fn push_zz<T: Real>(angle: T, a: usize, b: usize, out: &mut Vec<Gate<T>>) {
    out.extend([Gate::cnot(a, b), Gate::rz(angle, b), Gate::cnot(a, b)]);
}

fn push_crz<T: Real>(angle: T, control: usize, target: usize, out: &mut Vec<Gate<T>>) {
    let half = angle / T::lit(2.0);
    out.push(Gate::rz(half, target));
    push_zz(-half, control, target, out);
}

/// `diag(1, 1, 1, e^{iθ})` on `(a, b)`.
fn push_cu1<T: Real>(angle: T, a: usize, b: usize, out: &mut Vec<Gate<T>>) {
    let half = angle / T::lit(2.0);
    out.extend([Gate::rz(half, a), Gate::rz(half, b)]);
    push_zz(-half, a, b, out);
}

fn lower_gate<T: Real>(g: &Gate<T>, out: &mut Vec<Gate<T>>) {
    match *g {
        Gate::Cnot { .. } | Gate::Rz { .. } | Gate::Rx { .. } => out.push(*g),
        Gate::H { qubit } => push_h(qubit, out),
        Gate::Ry { angle, qubit } => {
            let h = T::FRAC_PI_2();
            out.extend([Gate::rx(h, qubit), Gate::rz(angle, qubit), Gate::rx(-h, qubit)]);
        }
        Gate::Cz { a, b } => push_cu1(T::PI(), a, b, out),
        Gate::Cu1 { angle, a, b } => push_cu1(angle, a, b, out),
        Gate::Crz { angle, control, target } => push_crz(angle, control, target, out),
        Gate::Crx { angle, control, target } => {
            push_h(target, out);
            push_crz(angle, control, target, out);
            push_h(target, out);
        }
    }
}
