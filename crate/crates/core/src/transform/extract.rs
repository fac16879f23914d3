use super::{CnotCircuit, NormalForm};
use crate::circuit::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{Basis, GadgetCircuit};
use crate::gf2::BitMatrix;
use crate::Real;

/// Rewrites a CNOT/RZ/RX circuit as gadgets followed by all its CNOTs.
///
/// A rotation after a CNOT prefix `P` is moved in front of `P`. An RZ on
/// qubit `q` becomes a Z gadget with legs `h_z(P)⁻¹ · e_q`, an RX a gadget
/// with legs `h_z(P)ᵀ · e_q`.
pub fn extract<T: Real>(c: &GateCircuit<T>) -> Result<NormalForm<T>> {
    let n = c.n_qubits();
    // `zt` is (h_z(P)⁻¹)ᵀ, `hz` is h_z(P); the legs are rows of these.
    let mut zt = BitMatrix::identity(n);
    let mut hz = BitMatrix::identity(n);
    let mut gadgets = GadgetCircuit::new(n);
    let mut tail = CnotCircuit::new(n);
    for g in c.gates() {
        match *g {
            Gate::Cnot { control, target } => {
                zt.add_row(control, target);
                hz.add_row(target, control);
                tail.try_push(control, target)?;
            }
            Gate::Rz { angle, qubit } => gadgets.push(Basis::Z, angle, zt.row(qubit))?,
            Gate::Rx { angle, qubit } => gadgets.push(Basis::X, angle, hz.row(qubit))?,
            ref other => return Err(Error::UnsupportedGate(other.name().into())),
        }
    }
    Ok(NormalForm { gadgets, tail })
}
