//! Phase-gadget circuit optimisation.
//!
//! Circuits built from CNOT, RZ and RX gates are rewritten into a sequence of
//! Z and X phase gadgets followed by a CNOT block. The gadget legs live in
//! GF(2)^n, and conjugating the whole gadget sequence by a CNOT circuit acts on
//! them through an invertible binary matrix `C` (Z legs by `C`, X legs by
//! `(Cᵀ)⁻¹`). Simulated annealing over `GL(n, 2)` searches for a `C` that
//! minimises the total number of legs, and the circuit is resynthesised from
//! `C`, the transformed gadgets and `C⁻¹`.
//!
//! All angle-carrying types are generic over a [`Real`] scalar (`f32` or
//! `f64`); the crate root exports `f64` aliases for the common case.

pub mod anneal;
pub mod circuit;
pub mod error;
pub mod gadget;
pub mod gf2;
pub mod oracle;
pub mod pipeline;
pub mod transform;

mod real;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use real::Real;

pub use anneal::{AnnealParams, AnnealResult};
pub use gadget::Basis;
pub use pipeline::{AnsatzKind, AnsatzSpec, OptimizeOptions, OptimizeReport, Verified};
pub use transform::{CnotCircuit, LayerInfo, SynthShape};

/// Gate in double precision.
pub type Gate = circuit::Gate<f64>;
/// Gate-level circuit in double precision.
pub type GateCircuit = circuit::GateCircuit<f64>;
/// Gate-level circuit in single precision.
pub type GateCircuit32 = circuit::GateCircuit<f32>;
/// Phase gadget in double precision.
pub type GadgetEntry = gadget::GadgetEntry<f64>;
/// Phase-gadget circuit in double precision.
pub type GadgetCircuit = gadget::GadgetCircuit<f64>;
/// Phase-gadget circuit in single precision.
pub type GadgetCircuit32 = gadget::GadgetCircuit<f32>;
/// Gadgets-then-CNOTs normal form in double precision.
pub type NormalForm = transform::NormalForm<f64>;
/// Dense unitary in double precision.
pub type Unitary = oracle::Unitary<f64>;
