use super::CnotCircuit;
use crate::circuit::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{Basis, GadgetCircuit, GadgetEntry};
use crate::gf2::BitMatrix;
use crate::Real;

/// How the CNOTs collecting a gadget's parity are arranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SynthShape {
    /// A chain: CNOT-depth `2(k - 1)` for `k` legs.
    Ladder,
    /// A balanced binary tree: CNOT-depth `2⌈log₂ k⌉`.
    #[default]
    Tree,
}

impl std::str::FromStr for SynthShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ladder" => Ok(SynthShape::Ladder),
            "tree" => Ok(SynthShape::Tree),
            _ => Err(Error::InvalidParams(format!("unknown synthesis shape `{s}`"))),
        }
    }
}

/// A CNOT circuit whose `h_z` is `m`, by Gauss-Jordan elimination.
///
/// Uses at most `n²` CNOTs.
pub fn synth_cnot(m: &BitMatrix) -> Result<CnotCircuit> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    // Row op `row c ^= row t` is h_z(CNOT(c, t)) applied on the left.
    let mut ops = Vec::new();
    for j in 0..n {
        if !a.get(j, j) {
            let p = (j + 1..n).find(|&p| a.get(p, j)).ok_or(Error::NotInvertible)?;
            a.add_row(p, j);
            ops.push((j, p));
        }
        for i in 0..n {
            if i != j && a.get(i, j) {
                a.add_row(j, i);
                ops.push((i, j));
            }
        }
    }
    ops.reverse();
    CnotCircuit::from_pairs(n, ops)
}

/// Decomposes one gadget into CNOTs around a single rotation on its
/// lowest-index leg.
pub fn synth_gadget<T: Real>(e: &GadgetEntry<T>, shape: SynthShape) -> GateCircuit<T> {
    let mut out = GateCircuit::new(e.n_qubits());
    push_gadget(&mut out, e, shape);
    out
}

/// Concatenated per-gadget syntheses.
pub fn synth_gadget_circuit<T: Real>(g: &GadgetCircuit<T>, shape: SynthShape) -> GateCircuit<T> {
    let mut out = GateCircuit::new(g.n_qubits());
    for e in g.entries() {
        push_gadget(&mut out, e, shape);
    }
    out
}

fn push_gadget<T: Real>(out: &mut GateCircuit<T>, e: &GadgetEntry<T>, shape: SynthShape) {
    let legs: Vec<usize> = e.legs().ones().collect();
    let k = legs.len();
    // Pairs (from, into) in Z orientation: into ^= from.
    let mut fan_in = Vec::with_capacity(k.saturating_sub(1));
    match shape {
        SynthShape::Ladder => {
            for i in (1..k).rev() {
                fan_in.push((legs[i], legs[i - 1]));
            }
        }
        SynthShape::Tree => {
            let mut stride = 1;
            while stride < k {
                let mut i = 0;
                while i + stride < k {
                    fan_in.push((legs[i + stride], legs[i]));
                    i += 2 * stride;
                }
                stride *= 2;
            }
        }
    }
    let cnot = |(from, into): (usize, usize)| match e.basis() {
        Basis::Z => Gate::cnot(from, into),
        Basis::X => Gate::cnot(into, from),
    };
    for &p in &fan_in {
        out.push(cnot(p));
    }
    out.push(match e.basis() {
        Basis::Z => Gate::rz(e.angle(), legs[0]),
        Basis::X => Gate::rx(e.angle(), legs[0]),
    });
    for &p in fan_in.iter().rev() {
        out.push(cnot(p));
    }
}
