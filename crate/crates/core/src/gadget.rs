//! Z/X phase-gadget circuits.
//!
//! A Z gadget with legs `P` and angle `θ` multiplies a computational basis
//! state by `e^{-iθ/2}` when the parity of the bits on `P` is even and by
//! `e^{+iθ/2}` when it is odd, i.e. it is `exp(-iθ/2 · Z^P)`. A single-leg Z
//! gadget is exactly `RZ(θ)`. X gadgets are the same operator conjugated by
//! Hadamards on every leg.

use std::fmt::Write;

use crate::circuit::text::{parse_angle, parse_header, parse_usize, tokens};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn dual(self) -> Basis {
        match self {
            Basis::Z => Basis::X,
            Basis::X => Basis::Z,
        }
    }
}

/// One phase gadget: basis, angle and leg positions.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetEntry<T = f64> {
    basis: Basis,
    angle: T,
    legs: BitVec,
}

impl<T: Real> GadgetEntry<T> {
    /// Fails on an empty leg set (a pure global phase) or a non-finite angle.
    pub fn new(basis: Basis, angle: T, legs: BitVec) -> Result<Self> {
        if legs.is_zero() {
            return Err(Error::InvalidGate("gadget without legs".into()));
        }
        if !angle.is_finite() {
            return Err(Error::InvalidGate("gadget angle is not finite".into()));
        }
        Ok(GadgetEntry { basis, angle, legs })
    }

    pub fn z(angle: T, legs: BitVec) -> Result<Self> {
        Self::new(Basis::Z, angle, legs)
    }

    pub fn x(angle: T, legs: BitVec) -> Result<Self> {
        Self::new(Basis::X, angle, legs)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn legs(&self) -> &BitVec {
        &self.legs
    }

    pub fn n_qubits(&self) -> usize {
        self.legs.len()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.weight()
    }

    /// Same basis and legs, ignoring the angle.
    pub fn same_structure(&self, other: &GadgetEntry<T>) -> bool {
        self.basis == other.basis && self.legs == other.legs
    }

    pub fn with_angle(&self, angle: T) -> Self {
        GadgetEntry {
            basis: self.basis,
            angle,
            legs: self.legs.clone(),
        }
    }

    pub(crate) fn with_legs(&self, legs: BitVec) -> Self {
        debug_assert!(!legs.is_zero());
        GadgetEntry {
            basis: self.basis,
            angle: self.angle,
            legs,
        }
    }

    pub fn cast<U: Real>(&self) -> GadgetEntry<U> {
        GadgetEntry {
            basis: self.basis,
            angle: U::from(self.angle).expect("angle representable"),
            legs: self.legs.clone(),
        }
    }
}

/// Z/X gadgets commute iff they share an even number of legs; gadgets of the
/// same basis are co-diagonal and always commute.
pub fn commutes<T: Real>(a: &GadgetEntry<T>, b: &GadgetEntry<T>) -> bool {
    assert_eq!(a.n_qubits(), b.n_qubits(), "gadgets on different widths");
    a.basis == b.basis || a.legs.and_weight(&b.legs).is_multiple_of(2)
}

/// An ordered sequence of gadgets on `n_qubits` wires.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetCircuit<T = f64> {
    n_qubits: usize,
    entries: Vec<GadgetEntry<T>>,
}

impl<T: Real> GadgetCircuit<T> {
    pub fn new(n_qubits: usize) -> Self {
        GadgetCircuit {
            n_qubits,
            entries: Vec::new(),
        }
    }

    pub fn from_entries(n_qubits: usize, entries: Vec<GadgetEntry<T>>) -> Result<Self> {
        for e in &entries {
            if e.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch(format!(
                    "gadget legs of length {} in {}-qubit circuit",
                    e.n_qubits(),
                    n_qubits
                )));
            }
        }
        Ok(GadgetCircuit { n_qubits, entries })
    }

    /// Appends a gadget. A gadget with no legs is only a global phase and is
    /// dropped.
    pub fn push(&mut self, basis: Basis, angle: T, legs: BitVec) -> Result<()> {
        if legs.len() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "gadget legs of length {} in {}-qubit circuit",
                legs.len(),
                self.n_qubits
            )));
        }
        if legs.is_zero() {
            log::debug!("dropping zero-leg {basis:?} gadget (angle {angle})");
            return Ok(());
        }
        self.entries.push(GadgetEntry::new(basis, angle, legs)?);
        Ok(())
    }

    pub fn push_entry(&mut self, e: GadgetEntry<T>) {
        assert_eq!(e.n_qubits(), self.n_qubits);
        self.entries.push(e);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn entries(&self) -> &[GadgetEntry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of legs over all gadgets.
    pub fn leg_count(&self) -> usize {
        self.entries.iter().map(GadgetEntry::leg_count).sum()
    }

    /// Sub-circuit of entries `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        GadgetCircuit {
            n_qubits: self.n_qubits,
            entries: self.entries[range].to_vec(),
        }
    }

    /// `(L_Z, L_X)`: column `j` of `L_Z` is the legs of the `j`-th Z gadget,
    /// likewise for X.
    pub fn leg_matrices(&self) -> (BitMatrix, BitMatrix) {
        let pick = |b: Basis| -> Vec<BitVec> {
            self.entries
                .iter()
                .filter(|e| e.basis == b)
                .map(|e| e.legs.clone())
                .collect()
        };
        (
            BitMatrix::from_columns(self.n_qubits, &pick(Basis::Z)),
            BitMatrix::from_columns(self.n_qubits, &pick(Basis::X)),
        )
    }

    /// The basis/angle sequence, i.e. everything except the legs.
    pub fn sequence(&self) -> Vec<(Basis, T)> {
        self.entries.iter().map(|e| (e.basis, e.angle)).collect()
    }

    /// Inverse of [`leg_matrices`](Self::leg_matrices) + [`sequence`](Self::sequence).
    pub fn from_matrices(lz: &BitMatrix, lx: &BitMatrix, sequence: &[(Basis, T)]) -> Result<Self> {
        if lz.rows() != lx.rows() {
            return Err(Error::DimensionMismatch("L_Z and L_X row counts differ".into()));
        }
        let dz = sequence.iter().filter(|(b, _)| *b == Basis::Z).count();
        if dz != lz.cols() || sequence.len() - dz != lx.cols() {
            return Err(Error::DimensionMismatch(format!(
                "sequence has {} Z and {} X entries but matrices have {} and {} columns",
                dz,
                sequence.len() - dz,
                lz.cols(),
                lx.cols()
            )));
        }
        let n = lz.rows();
        let (mut zi, mut xi) = (0, 0);
        let mut entries = Vec::with_capacity(sequence.len());
        for &(basis, angle) in sequence {
            let legs = match basis {
                Basis::Z => {
                    zi += 1;
                    lz.column(zi - 1)
                }
                Basis::X => {
                    xi += 1;
                    lx.column(xi - 1)
                }
            };
            entries.push(GadgetEntry::new(basis, angle, legs)?);
        }
        Ok(GadgetCircuit { n_qubits: n, entries })
    }

    /// Conjugates by a CNOT circuit with action `c`: Z legs become `c·legs`
    /// and X legs `(cᵀ)⁻¹·legs`. Order, bases and angles are unchanged.
    pub fn apply_action(&self, c: &BitMatrix) -> Result<Self> {
        if c.rows() != self.n_qubits || !c.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} action on {}-qubit gadgets",
                c.rows(),
                c.cols(),
                self.n_qubits
            )));
        }
        let dual = c.inverse_transpose()?;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let m = match e.basis {
                    Basis::Z => c,
                    Basis::X => &dual,
                };
                Ok(e.with_legs(m.mul_vec(&e.legs)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GadgetCircuit {
            n_qubits: self.n_qubits,
            entries,
        })
    }

    /// Merges gadgets of equal basis and legs that can be brought next to
    /// each other by commuting swaps, and removes gadgets whose angle is a
    /// multiple of 2π. Repeats until nothing changes.
    pub fn fuse_adjacent(&self) -> Self {
        let mut entries = self.entries.clone();
        loop {
            let plan = fusion_plan(&entries);
            let changed_structure = plan.iter().any(|g| g.len() > 1);
            let mut merged: Vec<GadgetEntry<T>> = plan
                .iter()
                .map(|group| {
                    let angle = group
                        .iter()
                        .fold(T::zero(), |acc, &i| acc + entries[i].angle);
                    entries[group[0]].with_angle(angle)
                })
                .collect();
            let before = merged.len();
            merged.retain(|e| !e.angle.is_zero_angle());
            let removed = merged.len() != before;
            entries = merged;
            if !changed_structure && !removed {
                break;
            }
        }
        GadgetCircuit {
            n_qubits: self.n_qubits,
            entries,
        }
    }

    pub fn cast<U: Real>(&self) -> GadgetCircuit<U> {
        GadgetCircuit {
            n_qubits: self.n_qubits,
            entries: self.entries.iter().map(GadgetEntry::cast).collect(),
        }
    }

    /// Serialises to the gadget text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        write_entries(&mut out, &self.entries);
        out
    }

    /// Parses the gadget text format. CNOT lines are rejected; use
    /// [`NormalForm`](crate::transform::NormalForm) for files with a tail.
    pub fn parse(text: &str) -> Result<Self> {
        let (g, tail) = parse_gadget_text(text)?;
        if let Some(&(line, _, _)) = tail.first() {
            return Err(Error::parse(line, "CNOT tail is not allowed in a gadget circuit"));
        }
        Ok(g)
    }
}

impl<T: Real> std::str::FromStr for GadgetCircuit<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Groups entry indices that fuse together, in output order.
///
/// Each group's first index fixes the output position; later members are
/// moved left past entries they commute with. Only structure is consulted,
/// so the same plan applies to every layer of a repeated ansatz.
pub(crate) fn fusion_plan<T: Real>(entries: &[GadgetEntry<T>]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    // Representative entry of each open group, in current order.
    let mut order: Vec<usize> = Vec::new();
    for (j, e) in entries.iter().enumerate() {
        let mut target = None;
        // Walk left over the current sequence until blocked.
        for pos in (0..order.len()).rev() {
            let rep = &entries[groups[order[pos]][0]];
            if rep.same_structure(e) {
                target = Some(order[pos]);
                break;
            }
            if !commutes(rep, e) {
                break;
            }
        }
        match target {
            Some(g) => groups[g].push(j),
            None => {
                groups.push(vec![j]);
                order.push(groups.len() - 1);
            }
        }
    }
    order.into_iter().map(|g| std::mem::take(&mut groups[g])).collect()
}

pub(crate) fn write_entries<T: Real>(out: &mut String, entries: &[GadgetEntry<T>]) {
    for e in entries {
        let kw = match e.basis {
            Basis::Z => "zgadget",
            Basis::X => "xgadget",
        };
        let _ = writeln!(out, "{kw} {} {}", e.angle, e.legs);
    }
}

/// `(line, control, target)` of each tail CNOT in a gadget file.
pub(crate) type TailLines = Vec<(usize, usize, usize)>;

/// Parses gadget lines plus optional trailing `cnot c t` lines.
pub(crate) fn parse_gadget_text<T: Real>(text: &str) -> Result<(GadgetCircuit<T>, TailLines)> {
    let mut circuit: Option<GadgetCircuit<T>> = None;
    let mut tail = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        if let Some(n) = parse_header(&toks, line)? {
            if circuit.is_some() {
                return Err(Error::parse(line, "duplicate `qubits` header"));
            }
            circuit = Some(GadgetCircuit::new(n));
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| Error::parse(line, "entry before `qubits` header"))?;
        let kw = toks[0].to_ascii_lowercase();
        match kw.as_str() {
            "zgadget" | "xgadget" => {
                if !tail.is_empty() {
                    return Err(Error::parse(line, "gadget after CNOT tail"));
                }
                if toks.len() != 3 {
                    return Err(Error::parse(line, format!("expected `{kw} <angle> <bitstring>`")));
                }
                let angle: T = parse_angle(toks[1], line)?;
                let legs = BitVec::parse_bits(toks[2])
                    .ok_or_else(|| Error::parse(line, format!("bad bitstring `{}`", toks[2])))?;
                if legs.len() != c.n_qubits {
                    return Err(Error::parse(
                        line,
                        format!("bitstring has {} bits, expected {}", legs.len(), c.n_qubits),
                    ));
                }
                let basis = if kw == "zgadget" { Basis::Z } else { Basis::X };
                c.push(basis, angle, legs).map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "cnot" | "cx" => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, "expected `cnot <control> <target>`"));
                }
                let ctl = parse_usize(toks[1], line, "qubit index")?;
                let tgt = parse_usize(toks[2], line, "qubit index")?;
                for q in [ctl, tgt] {
                    if q >= c.n_qubits {
                        return Err(Error::parse(
                            line,
                            format!("qubit {q} out of range for {}-qubit circuit", c.n_qubits),
                        ));
                    }
                }
                if ctl == tgt {
                    return Err(Error::parse(line, "CNOT control equals target"));
                }
                tail.push((line, ctl, tgt));
            }
            other => return Err(Error::parse(line, format!("unknown entry `{other}`"))),
        }
    }
    let g = circuit.ok_or_else(|| Error::parse(0, "missing `qubits` header"))?;
    Ok((g, tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> BitVec {
        BitVec::parse_bits(s).unwrap()
    }

    fn z(a: f64, s: &str) -> GadgetEntry<f64> {
        GadgetEntry::z(a, bits(s)).unwrap()
    }

    fn x(a: f64, s: &str) -> GadgetEntry<f64> {
        GadgetEntry::x(a, bits(s)).unwrap()
    }

    pub(crate) fn worked_example() -> GadgetCircuit<f64> {
        GadgetCircuit::from_entries(
            3,
            vec![z(0.1, "110"), x(0.2, "111"), x(0.3, "110"), z(0.4, "100"), z(0.5, "110")],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_leg_matrices() {
        let (lz, lx) = worked_example().leg_matrices();
        assert_eq!(lz, BitMatrix::from_rows(&[[1, 1, 1], [1, 0, 1], [0, 0, 0]]));
        assert_eq!(lx, BitMatrix::from_rows(&[[1, 1], [1, 1], [1, 0]]));
    }

    #[test]
    fn empty_and_single_leg_matrices() {
        let (lz, lx) = GadgetCircuit::<f64>::new(4).leg_matrices();
        assert_eq!((lz.rows(), lz.cols(), lx.rows(), lx.cols()), (4, 0, 4, 0));
        let g = GadgetCircuit::from_entries(2, vec![z(0.3, "01")]).unwrap();
        let (lz, lx) = g.leg_matrices();
        assert_eq!(lz, BitMatrix::from_rows(&[[0], [1]]));
        assert_eq!((lx.rows(), lx.cols()), (2, 0));
    }

    #[test]
    fn zero_leg_gadgets_dropped() {
        let mut g = GadgetCircuit::<f64>::new(3);
        g.push(Basis::Z, 0.4, bits("000")).unwrap();
        assert!(g.is_empty());
        assert!(GadgetEntry::z(0.4, bits("000")).is_err());
    }

    #[test]
    fn apply_action_worked_example() {
        let c = BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let out = worked_example().apply_action(&c).unwrap();
        let (lz, lx) = out.leg_matrices();
        assert_eq!(lz, BitMatrix::from_rows(&[[0, 1, 0], [1, 0, 1], [0, 0, 0]]));
        assert_eq!(lx, BitMatrix::from_rows(&[[1, 1], [0, 0], [1, 0]]));
        assert_eq!(out.sequence(), worked_example().sequence());
        assert_eq!(out.leg_count(), 6);
    }

    #[test]
    fn apply_identity_is_noop() {
        let g = worked_example();
        assert_eq!(g.apply_action(&BitMatrix::identity(3)).unwrap(), g);
        let singular = BitMatrix::from_rows(&[[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(g.apply_action(&singular), Err(Error::NotInvertible));
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&z(0.1, "110"), &x(0.2, "110")));
        assert!(!commutes(&z(0.1, "100"), &x(0.2, "110")));
        assert!(commutes(&z(0.1, "100"), &z(0.2, "011")));
        assert!(commutes(&x(0.1, "101"), &x(0.2, "111")));
    }

    #[test]
    fn fusion_examples() {
        let g = GadgetCircuit::from_entries(3, vec![z(0.3, "110"), z(0.4, "110")]).unwrap();
        let f = g.fuse_adjacent();
        assert_eq!(f.len(), 1);
        assert!((f.entries()[0].angle() - 0.7).abs() < 1e-15);

        let g = GadgetCircuit::from_entries(3, vec![z(0.9, "110"), z(-0.9, "110")]).unwrap();
        assert!(g.fuse_adjacent().is_empty());

        let g = GadgetCircuit::from_entries(3, vec![z(0.3, "100"), x(0.5, "110"), z(0.4, "100")])
            .unwrap();
        assert_eq!(g.fuse_adjacent(), g);
    }

    #[test]
    fn fusion_through_commuting_gadgets() {
        // X(011) shares two legs with Z(110)... one leg actually: blocks.
        let g = GadgetCircuit::from_entries(
            3,
            vec![z(0.3, "110"), x(0.5, "111"), z(0.4, "110")],
        )
        .unwrap();
        // Z(110) and X(111) share two legs, so they commute and the Zs fuse.
        let f = g.fuse_adjacent();
        assert_eq!(f.len(), 2);
        assert!(f.entries()[0].same_structure(&z(0.0, "110")));
        assert!((f.entries()[0].angle() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn fusion_cascades_after_cancellation() {
        let g = GadgetCircuit::from_entries(
            3,
            vec![z(0.3, "110"), x(0.5, "100"), x(-0.5, "100"), z(0.4, "110")],
        )
        .unwrap();
        let f = g.fuse_adjacent();
        assert_eq!(f.len(), 1);
        assert!((f.entries()[0].angle() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = worked_example();
        let text = g.to_text();
        assert!(text.contains("zgadget 0.1 110"));
        assert_eq!(GadgetCircuit::<f64>::parse(&text).unwrap(), g);
        for bad in [
            "zgadget 0.1 11",
            "qubits 2\nzgadget 0.1 1",
            "qubits 2\nzgadget 0.1 1a",
            "qubits 2\nygadget 0.1 11",
            "qubits 2\nzgadget nan 11",
            "qubits 2\ncnot 0 1",
        ] {
            assert!(GadgetCircuit::<f64>::parse(bad).is_err(), "{bad:?}");
        }
    }

    fn random_gadgets(n: usize, d: usize, seed: u64) -> GadgetCircuit<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = GadgetCircuit::new(n);
        while g.len() < d {
            let legs = BitVec::from_bits(&(0..n).map(|_| rng.gen::<bool>()).collect::<Vec<_>>());
            let basis = if rng.gen() { Basis::Z } else { Basis::X };
            g.push(basis, rng.gen_range(-3.0..3.0), legs).unwrap();
        }
        g
    }

    proptest! {
        #[test]
        fn action_round_trip(n in 1usize..7, d in 0usize..12, seed in any::<u64>()) {
            let g = random_gadgets(n, d, seed);
            let c = BitMatrix::random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
            let back = g.apply_action(&c).unwrap().apply_action(&c.invert().unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn action_preserves_commutation(n in 1usize..7, seed in any::<u64>()) {
            let g = random_gadgets(n, 6, seed);
            let c = BitMatrix::random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 2));
            let h = g.apply_action(&c).unwrap();
            for i in 0..g.len() {
                for j in 0..g.len() {
                    prop_assert_eq!(
                        commutes(&g.entries()[i], &g.entries()[j]),
                        commutes(&h.entries()[i], &h.entries()[j])
                    );
                }
            }
        }

        #[test]
        fn matrices_round_trip(n in 1usize..7, d in 0usize..12, seed in any::<u64>()) {
            let g = random_gadgets(n, d, seed);
            let (lz, lx) = g.leg_matrices();
            let back = GadgetCircuit::from_matrices(&lz, &lx, &g.sequence()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn fusion_shrinks_and_is_idempotent(n in 1usize..4, d in 0usize..14, seed in any::<u64>()) {
            let g = random_gadgets(n, d, seed);
            let f = g.fuse_adjacent();
            prop_assert!(f.len() <= g.len());
            prop_assert_eq!(f.fuse_adjacent(), f);
        }
    }
}
