use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{Basis, GadgetCircuit};
use crate::gf2::BitVec;
use crate::transform::{synth_gadget_circuit, CnotCircuit, SynthShape};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzKind {
    /// Per layer: rotations on every qubit, then `CNOT(q, q+1)` for each `q`.
    Staircase,
    /// Per layer: rotations on every qubit, then CNOTs on even pairs
    /// `(0,1), (2,3), ...` followed by odd pairs `(1,2), (3,4), ...`.
    Brickwall,
    /// One random gadget structure repeated every layer with fresh angles.
    RandomGadget,
}

impl std::str::FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "staircase" => Ok(AnsatzKind::Staircase),
            "brickwall" | "brick_wall" => Ok(AnsatzKind::Brickwall),
            "random_gadget" | "random" => Ok(AnsatzKind::RandomGadget),
            _ => Err(Error::InvalidParams(format!("unknown ansatz kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    pub n_qubits: usize,
    pub layers: usize,
    /// Only used by [`AnsatzKind::RandomGadget`].
    pub gadgets_per_layer: usize,
    /// Add an RX after each RZ in the CNOT-layout ansätze.
    pub with_rx: bool,
    pub seed: u64,
}

impl AnsatzSpec {
    pub fn new(kind: AnsatzKind, n_qubits: usize, layers: usize) -> Self {
        AnsatzSpec {
            kind,
            n_qubits,
            layers,
            gadgets_per_layer: n_qubits,
            with_rx: false,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.layers == 0 {
            return Err(Error::InvalidParams("qubits and layers must be positive".into()));
        }
        if self.kind == AnsatzKind::RandomGadget && self.gadgets_per_layer == 0 {
            return Err(Error::InvalidParams("gadgets per layer must be positive".into()));
        }
        Ok(())
    }
}

/// Output of [`generate`]: gate layouts for staircase/brickwall, gadgets for
/// the random ansatz.
#[derive(Debug, Clone, PartialEq)]
pub enum Ansatz<T = f64> {
    Gates(GateCircuit<T>),
    Gadgets(GadgetCircuit<T>),
}

impl<T: Real> Ansatz<T> {
    /// Gadgets are synthesised with `shape`.
    pub fn to_gate_circuit(&self, shape: SynthShape) -> GateCircuit<T> {
        match self {
            Ansatz::Gates(c) => c.clone(),
            Ansatz::Gadgets(g) => synth_gadget_circuit(g, shape),
        }
    }
}

/// The CNOT layer of a staircase or brickwall ansatz.
pub fn cnot_layer(kind: AnsatzKind, n: usize) -> Result<CnotCircuit> {
    let pairs = match kind {
        AnsatzKind::Staircase => (0..n.saturating_sub(1)).map(|q| (q, q + 1)).collect(),
        AnsatzKind::Brickwall => {
            let even = (0..n.saturating_sub(1)).step_by(2);
            let odd = (1..n.saturating_sub(1)).step_by(2);
            even.chain(odd).map(|q| (q, q + 1)).collect()
        }
        AnsatzKind::RandomGadget => {
            return Err(Error::InvalidParams("random ansatz has no CNOT layer".into()))
        }
    };
    CnotCircuit::from_pairs(n, pairs)
}

/// Builds an ansatz; angles are uniform in `[0, 2π)` and reproducible from
/// `spec.seed`.
pub fn generate<T: Real>(spec: &AnsatzSpec) -> Result<Ansatz<T>> {
    spec.validate()?;
    let n = spec.n_qubits;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let angle = |rng: &mut ChaCha8Rng| T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
    match spec.kind {
        AnsatzKind::Staircase | AnsatzKind::Brickwall => {
            let layer = cnot_layer(spec.kind, n)?;
            let mut c = GateCircuit::new(n);
            for _ in 0..spec.layers {
                for q in 0..n {
                    c.push(Gate::rz(angle(&mut rng), q));
                    if spec.with_rx {
                        c.push(Gate::rx(angle(&mut rng), q));
                    }
                }
                c.append(&layer.to_gate_circuit());
            }
            Ok(Ansatz::Gates(c))
        }
        AnsatzKind::RandomGadget => {
            let structure: Vec<(Basis, BitVec)> = (0..spec.gadgets_per_layer)
                .map(|_| {
                    let basis = if rng.gen() { Basis::Z } else { Basis::X };
                    let mut legs = BitVec::zeros(n);
                    while legs.is_zero() {
                        for q in 0..n {
                            legs.set(q, rng.gen());
                        }
                    }
                    (basis, legs)
                })
                .collect();
            let mut g = GadgetCircuit::new(n);
            for _ in 0..spec.layers {
                for (basis, legs) in &structure {
                    g.push(*basis, angle(&mut rng), legs.clone())?;
                }
            }
            Ok(Ansatz::Gadgets(g))
        }
    }
}

/// Smallest `k ≥ 1` with `h_z(layer)^k = I`, for a monotonic CNOT layer.
pub fn mppp_period(layer: &CnotCircuit) -> Result<usize> {
    let cnots = layer.cnots();
    let up = cnots.iter().all(|&(c, t)| c < t);
    let down = cnots.iter().all(|&(c, t)| c > t);
    if !(up || down) {
        return Err(Error::NonMonotonic);
    }
    let b = layer.h_z();
    let mut p = b.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = p.mul(&b)?;
        k += 1;
    }
    Ok(k)
}
