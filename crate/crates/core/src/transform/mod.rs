//! Moving between gate circuits and gadget circuits.
//!
//! Conventions: `h_z(CNOT(c, t))` is the identity plus a 1 at row `c`,
//! column `t`, and for a sequence `g1; g2` we have
//! `h_z(g1; g2) = h_z(g2) · h_z(g1)`. With this, a Z gadget with legs `v`
//! placed before a CNOT circuit `C` equals the same gadget with legs
//! `h_z(C) · v` placed after it. `h_x(C) = (h_z(C)ᵀ)⁻¹` plays the same role
//! for X gadgets.

mod extract;
mod layers;
mod synth;

use std::fmt;

pub use extract::extract;
pub use layers::{detect_layers, detect_layers_exact, LayerInfo};
pub use synth::{synth_cnot, synth_gadget, synth_gadget_circuit, SynthShape};

use crate::circuit::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{parse_gadget_text, write_entries, GadgetCircuit};
use crate::gf2::BitMatrix;
use crate::Real;

/// A circuit made only of CNOTs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnotCircuit {
    n_qubits: usize,
    cnots: Vec<(usize, usize)>,
}

impl CnotCircuit {
    pub fn new(n_qubits: usize) -> Self {
        CnotCircuit {
            n_qubits,
            cnots: Vec::new(),
        }
    }

    pub fn from_pairs(n_qubits: usize, cnots: Vec<(usize, usize)>) -> Result<Self> {
        let mut c = CnotCircuit::new(n_qubits);
        for (ctl, tgt) in cnots {
            c.try_push(ctl, tgt)?;
        }
        Ok(c)
    }

    pub fn try_push(&mut self, control: usize, target: usize) -> Result<()> {
        for q in [control, target] {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n_qubits,
                });
            }
        }
        if control == target {
            return Err(Error::InvalidGate(format!("CNOT on a single qubit {control}")));
        }
        self.cnots.push((control, target));
        Ok(())
    }

    /// # Panics
    ///
    /// Panics on an out-of-range qubit or `control == target`.
    pub fn push(&mut self, control: usize, target: usize) {
        if let Err(e) = self.try_push(control, target) {
            panic!("{e}");
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn cnots(&self) -> &[(usize, usize)] {
        &self.cnots
    }

    pub fn len(&self) -> usize {
        self.cnots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cnots.is_empty()
    }

    /// Concatenation `self; other`.
    pub fn then(&self, other: &CnotCircuit) -> CnotCircuit {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut cnots = self.cnots.clone();
        cnots.extend_from_slice(&other.cnots);
        CnotCircuit {
            n_qubits: self.n_qubits,
            cnots,
        }
    }

    /// The action on Z gadget legs.
    pub fn h_z(&self) -> BitMatrix {
        let mut m = BitMatrix::identity(self.n_qubits);
        for &(c, t) in &self.cnots {
            m.add_row(t, c);
        }
        m
    }

    /// The action on X gadget legs.
    pub fn h_x(&self) -> BitMatrix {
        let mut m = BitMatrix::identity(self.n_qubits);
        for &(c, t) in &self.cnots {
            m.add_row(c, t);
        }
        m
    }

    pub fn to_gate_circuit<T: Real>(&self) -> GateCircuit<T> {
        let mut g = GateCircuit::new(self.n_qubits);
        for &(c, t) in &self.cnots {
            g.push(Gate::cnot(c, t));
        }
        g
    }
}

/// Gadgets followed by a CNOT tail.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<T = f64> {
    pub gadgets: GadgetCircuit<T>,
    pub tail: CnotCircuit,
}

impl<T: Real> NormalForm<T> {
    pub fn new(gadgets: GadgetCircuit<T>, tail: CnotCircuit) -> Result<Self> {
        if gadgets.n_qubits() != tail.n_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit gadgets with {}-qubit tail",
                gadgets.n_qubits(),
                tail.n_qubits()
            )));
        }
        Ok(NormalForm { gadgets, tail })
    }

    pub fn n_qubits(&self) -> usize {
        self.gadgets.n_qubits()
    }

    /// Gadgets synthesised with `shape`, then the tail.
    pub fn to_gate_circuit(&self, shape: SynthShape) -> GateCircuit<T> {
        let mut g = synth_gadget_circuit(&self.gadgets, shape);
        g.append(&self.tail.to_gate_circuit());
        g
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (gadgets, tail) = parse_gadget_text::<T>(text)?;
        let pairs = tail.into_iter().map(|(_, c, t)| (c, t)).collect();
        let tail = CnotCircuit::from_pairs(gadgets.n_qubits(), pairs)?;
        Ok(NormalForm { gadgets, tail })
    }
}

impl<T: Real> fmt::Display for NormalForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("qubits {}\n", self.n_qubits());
        write_entries(&mut out, self.gadgets.entries());
        for &(c, t) in self.tail.cnots() {
            out.push_str(&format!("cnot {c} {t}\n"));
        }
        f.write_str(&out)
    }
}

impl<T: Real> std::str::FromStr for NormalForm<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_cnots(n: usize, len: usize, rng: &mut impl Rng) -> CnotCircuit {
        let mut c = CnotCircuit::new(n);
        if n < 2 {
            return c;
        }
        for _ in 0..len {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            c.push(a, b);
        }
        c
    }

    #[test]
    fn empty_is_identity() {
        assert!(CnotCircuit::new(5).h_z().is_identity());
        assert!(CnotCircuit::new(5).h_x().is_identity());
    }

    #[test]
    fn single_cnot_actions() {
        let c = CnotCircuit::from_pairs(2, vec![(0, 1)]).unwrap();
        assert_eq!(c.h_z(), BitMatrix::from_rows(&[[1, 1], [0, 1]]));
        assert_eq!(c.h_x(), BitMatrix::from_rows(&[[1, 0], [1, 1]]));
    }

    #[test]
    fn three_qubit_cycle_action() {
        let c = CnotCircuit::from_pairs(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c.h_z(), BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]]));
    }

    #[test]
    fn staircase_action_is_bidiagonal() {
        let c = CnotCircuit::from_pairs(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let a = BitMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]);
        assert_eq!(c.h_z(), a);
    }

    #[test]
    fn invalid_cnots_rejected() {
        assert!(CnotCircuit::from_pairs(2, vec![(0, 0)]).is_err());
        assert!(CnotCircuit::from_pairs(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn normal_form_text() {
        let text = "qubits 2\nzgadget 0.5 11\nxgadget -1 10\ncnot 0 1\n";
        let nf = NormalForm::<f64>::parse(text).unwrap();
        assert_eq!(nf.tail.cnots(), &[(0, 1)]);
        assert_eq!(nf.gadgets.len(), 2);
        assert_eq!(nf.to_text(), text);
        assert!(NormalForm::<f64>::parse("qubits 2\ncnot 0 1\nzgadget 1 11\n").is_err());
    }

    proptest! {
        #[test]
        fn h_x_is_inverse_transpose(n in 1usize..9, len in 0usize..31, seed in any::<u64>()) {
            let c = random_cnots(n, len, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(c.h_x(), c.h_z().inverse_transpose().unwrap());
        }

        #[test]
        fn h_z_reverses_composition(n in 2usize..8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_cnots(n, 10, &mut rng);
            let b = random_cnots(n, 10, &mut rng);
            prop_assert_eq!(a.then(&b).h_z(), b.h_z().mul(&a.h_z()).unwrap());
        }
    }
}
