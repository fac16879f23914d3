//! Dense unitary simulation, used as ground truth for equivalence checks.
//!
//! Qubit 0 is the most significant bit of the basis-state index, so on two
//! qubits `CNOT(0, 1)` swaps `|10⟩` and `|11⟩`. Gates compose in application
//! order: the circuit `g1; g2` has unitary `U(g2)·U(g1)`.

pub use num_complex::Complex;
use rayon::prelude::*;

use crate::circuit::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::gadget::{Basis, GadgetCircuit, GadgetEntry};
use crate::Real;

/// Widest circuit the dense simulator accepts.
pub const MAX_QUBITS: usize = 10;

/// A `2ⁿ × 2ⁿ` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary<T = f64> {
    n_qubits: usize,
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Unitary<T> {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Ok(Unitary { n_qubits, dim, data })
    }

    /// Builds from explicit rows; `rows.len()` must be a power of two.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let dim = rows.len();
        assert!(dim.is_power_of_two(), "dimension {dim} is not a power of two");
        let n_qubits = dim.trailing_zeros() as usize;
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            data.extend(r);
        }
        Unitary { n_qubits, dim, data }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Unitary {
            n_qubits: self.n_qubits,
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self · other`.
    pub fn matmul(&self, other: &Unitary<T>) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] = data[i * d + j] + a * other.data[k * d + j];
                }
            }
        }
        Unitary { n_qubits: self.n_qubits, dim: d, data }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        Unitary { n_qubits: self.n_qubits, dim: d, data }
    }

    /// Largest entry-wise deviation of `U·U†` from the identity.
    pub fn unitarity_error(&self) -> T {
        let p = self.matmul(&self.adjoint());
        let mut err = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j { T::one() } else { T::zero() };
                err = err.max((p.get(i, j) - Complex::new(expect, T::zero())).norm());
            }
        }
        err
    }

    /// Max-norm distance `max |u - v|` without phase alignment.
    pub fn max_diff(&self, other: &Unitary<T>) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Columns are basis-state images; simulate each independently.
    fn columns_mut(&mut self) -> Vec<Vec<Complex<T>>> {
        let d = self.dim;
        (0..d).map(|j| (0..d).map(|i| self.data[i * d + j]).collect()).collect()
    }

    fn from_columns(n_qubits: usize, cols: Vec<Vec<Complex<T>>>) -> Self {
        let d = cols.len();
        let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
        for (j, col) in cols.into_iter().enumerate() {
            for (i, z) in col.into_iter().enumerate() {
                data[i * d + j] = z;
            }
        }
        Unitary { n_qubits, dim: d, data }
    }
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

#[inline]
fn mask(n: usize, q: usize) -> usize {
    1usize << (n - 1 - q)
}

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// Applies a 2×2 matrix to qubit `q` of a state vector.
fn apply_1q<T: Real>(state: &mut [Complex<T>], n: usize, q: usize, m: [[Complex<T>; 2]; 2]) {
    let bit = mask(n, q);
    for i in 0..state.len() {
        if i & bit == 0 {
            let (a, b) = (state[i], state[i | bit]);
            state[i] = m[0][0] * a + m[0][1] * b;
            state[i | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// Applies a 2×2 matrix to `target` on the subspace where `control` is 1.
fn apply_controlled<T: Real>(
    state: &mut [Complex<T>],
    n: usize,
    control: usize,
    target: usize,
    m: [[Complex<T>; 2]; 2],
) {
    let cbit = mask(n, control);
    let tbit = mask(n, target);
    for i in 0..state.len() {
        if i & cbit != 0 && i & tbit == 0 {
            let (a, b) = (state[i], state[i | tbit]);
            state[i] = m[0][0] * a + m[0][1] * b;
            state[i | tbit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

pub(crate) fn rz_matrix<T: Real>(t: T) -> [[Complex<T>; 2]; 2] {
    let z = T::zero();
    let h = t / T::lit(2.0);
    [[Complex::from_polar(T::one(), -h), c(z, z)], [c(z, z), Complex::from_polar(T::one(), h)]]
}

pub(crate) fn rx_matrix<T: Real>(t: T) -> [[Complex<T>; 2]; 2] {
    let h = t / T::lit(2.0);
    let cs = c(h.cos(), T::zero());
    let sn = c(T::zero(), -h.sin());
    [[cs, sn], [sn, cs]]
}

pub(crate) fn ry_matrix<T: Real>(t: T) -> [[Complex<T>; 2]; 2] {
    let h = t / T::lit(2.0);
    let z = T::zero();
    [[c(h.cos(), z), c(-h.sin(), z)], [c(h.sin(), z), c(h.cos(), z)]]
}

fn h_matrix<T: Real>() -> [[Complex<T>; 2]; 2] {
    let s = T::FRAC_1_SQRT_2();
    let z = T::zero();
    [[c(s, z), c(s, z)], [c(s, z), c(-s, z)]]
}

fn x_matrix<T: Real>() -> [[Complex<T>; 2]; 2] {
    let (o, z) = (T::one(), T::zero());
    [[c(z, z), c(o, z)], [c(o, z), c(z, z)]]
}

fn apply_gate<T: Real>(state: &mut [Complex<T>], n: usize, g: &Gate<T>) {
    let one = c(T::one(), T::zero());
    let zero = c(T::zero(), T::zero());
    match *g {
        Gate::Cnot { control, target } => apply_controlled(state, n, control, target, x_matrix()),
        Gate::Rz { angle, qubit } => apply_1q(state, n, qubit, rz_matrix(angle)),
        Gate::Rx { angle, qubit } => apply_1q(state, n, qubit, rx_matrix(angle)),
        Gate::Ry { angle, qubit } => apply_1q(state, n, qubit, ry_matrix(angle)),
        Gate::H { qubit } => apply_1q(state, n, qubit, h_matrix()),
        Gate::Cz { a, b } => {
            apply_controlled(state, n, a, b, [[one, zero], [zero, -one]]);
        }
        Gate::Crz { angle, control, target } => {
            apply_controlled(state, n, control, target, rz_matrix(angle));
        }
        Gate::Crx { angle, control, target } => {
            apply_controlled(state, n, control, target, rx_matrix(angle));
        }
        Gate::Cu1 { angle, a, b } => {
            let p = Complex::from_polar(T::one(), angle);
            apply_controlled(state, n, a, b, [[one, zero], [zero, p]]);
        }
    }
}

/// Phase of a Z gadget on a computational basis state, `∓θ/2` by leg parity.
fn gadget_phase<T: Real>(angle: T, legs_mask: usize, index: usize) -> Complex<T> {
    let odd = (index & legs_mask).count_ones() % 2 == 1;
    let h = angle / T::lit(2.0);
    Complex::from_polar(T::one(), if odd { h } else { -h })
}

fn legs_mask<T: Real>(n: usize, e: &GadgetEntry<T>) -> usize {
    e.legs().ones().fold(0usize, |m, q| m | mask(n, q))
}

fn apply_gadget<T: Real>(state: &mut [Complex<T>], n: usize, e: &GadgetEntry<T>) {
    let lm = legs_mask(n, e);
    let legs: Vec<usize> = e.legs().ones().collect();
    match e.basis() {
        Basis::Z => {
            for (i, amp) in state.iter_mut().enumerate() {
                *amp = *amp * gadget_phase(e.angle(), lm, i);
            }
        }
        Basis::X => {
            for &q in &legs {
                apply_1q(state, n, q, h_matrix());
            }
            for (i, amp) in state.iter_mut().enumerate() {
                *amp = *amp * gadget_phase(e.angle(), lm, i);
            }
            for &q in &legs {
                apply_1q(state, n, q, h_matrix());
            }
        }
    }
}

fn simulate<T: Real, F>(n_qubits: usize, apply: F) -> Result<Unitary<T>>
where
    F: Fn(&mut [Complex<T>]) + Sync,
{
    let mut u = Unitary::identity(n_qubits)?;
    let mut cols = u.columns_mut();
    cols.par_iter_mut().for_each(|col| apply(col));
    u = Unitary::from_columns(n_qubits, cols);
    Ok(u)
}

/// Unitary of a gate circuit.
pub fn unitary_of_circuit<T: Real>(circuit: &GateCircuit<T>) -> Result<Unitary<T>> {
    let n = circuit.n_qubits();
    check_width(n)?;
    simulate(n, |col| {
        for g in circuit.gates() {
            apply_gate(col, n, g);
        }
    })
}

/// Unitary of a phase-gadget circuit.
pub fn unitary_of_gadgets<T: Real>(g: &GadgetCircuit<T>) -> Result<Unitary<T>> {
    let n = g.n_qubits();
    check_width(n)?;
    simulate(n, |col| {
        for e in g.entries() {
            apply_gadget(col, n, e);
        }
    })
}

/// Unitary of a single gadget.
pub fn unitary_of_gadget<T: Real>(n_qubits: usize, e: &GadgetEntry<T>) -> Result<Unitary<T>> {
    check_width(n_qubits)?;
    simulate(n_qubits, |col| apply_gadget(col, n_qubits, e))
}

/// Phase-aligned max-norm error `min_φ max |u - e^{iφ} v|`, with `φ` taken
/// from the trace of `v† u`.
///
/// When `u = e^{iφ} v` the trace is `d·e^{iφ}`, so the recovered phase is
/// exact; otherwise it is the Frobenius-optimal alignment. A vanishing trace
/// means no phase can align the two, and the unaligned error is reported.
pub fn phase_aligned_error<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> T {
    assert_eq!(u.dim, v.dim, "dimension mismatch");
    let tr = v
        .data
        .iter()
        .zip(&u.data)
        .fold(c(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
    let phase = if tr.norm() > T::zero() {
        tr / tr.norm()
    } else {
        c(T::one(), T::zero())
    };
    u.data
        .iter()
        .zip(&v.data)
        .map(|(a, b)| (a - phase * b).norm())
        .fold(T::zero(), T::max)
}

/// True iff `u` and `v` agree up to a global phase within `tol` (max norm).
pub fn equiv_up_to_phase<T: Real>(u: &Unitary<T>, v: &Unitary<T>, tol: T) -> bool {
    u.dim == v.dim && phase_aligned_error(u, v) < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVec;

    fn c64(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn circ(n: usize, gates: Vec<Gate<f64>>) -> GateCircuit<f64> {
        GateCircuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn cnot_matrix_msb_convention() {
        let u = unitary_of_circuit(&circ(2, vec![Gate::cnot(0, 1)])).unwrap();
        let (o, z) = (c64(1.0, 0.0), c64(0.0, 0.0));
        let expected = Unitary::from_rows(vec![
            vec![o, z, z, z],
            vec![z, o, z, z],
            vec![z, z, z, o],
            vec![z, z, o, z],
        ]);
        assert!(u.max_diff(&expected) < 1e-15);
    }

    #[test]
    fn crz_matrix() {
        let theta = 0.7;
        let g = Gate::Crz { angle: 2.0 * theta, control: 0, target: 1 };
        let u = unitary_of_circuit(&circ(2, vec![g])).unwrap();
        let (o, z) = (c64(1.0, 0.0), c64(0.0, 0.0));
        let expected = Unitary::from_rows(vec![
            vec![o, z, z, z],
            vec![z, o, z, z],
            vec![z, z, Complex::from_polar(1.0, -theta), z],
            vec![z, z, z, Complex::from_polar(1.0, theta)],
        ]);
        assert!(u.max_diff(&expected) < 1e-15);
    }

    #[test]
    fn empty_is_identity() {
        let u = unitary_of_circuit(&circ(3, vec![])).unwrap();
        assert!(u.max_diff(&Unitary::identity(3).unwrap()) < 1e-15);
    }

    #[test]
    fn too_wide() {
        let c = GateCircuit::<f64>::new(11);
        assert!(matches!(
            unitary_of_circuit(&c),
            Err(Error::TooManyQubits { n_qubits: 11, .. })
        ));
    }

    #[test]
    fn z_gadget_diagonal_pattern() {
        // Legs on qubits 0 and 2 of 3: odd parity on indices 1, 3, 4, 6.
        let theta = 0.9;
        let e = GadgetEntry::new(Basis::Z, theta, BitVec::parse_bits("101").unwrap()).unwrap();
        let u = unitary_of_gadget(3, &e).unwrap();
        let odd = [false, true, false, true, true, false, true, false];
        for (i, &is_odd) in odd.iter().enumerate() {
            let expect = Complex::from_polar(1.0, -theta / 2.0)
                * if is_odd { Complex::from_polar(1.0, theta) } else { c64(1.0, 0.0) };
            assert!((u.get(i, i) - expect).norm() < 1e-14, "index {i}");
        }
    }

    #[test]
    fn zero_angle_gadget_is_identity() {
        let e = GadgetEntry::new(Basis::X, 0.0, BitVec::parse_bits("11").unwrap()).unwrap();
        let u = unitary_of_gadget(2, &e).unwrap();
        assert!(u.max_diff(&Unitary::identity(2).unwrap()) < 1e-14);
    }

    #[test]
    fn phase_equivalence() {
        let u = unitary_of_circuit(&circ(2, vec![Gate::rx(0.3, 0), Gate::cnot(1, 0)])).unwrap();
        assert!(equiv_up_to_phase(&u, &u, 1e-12));
        assert!(equiv_up_to_phase(&u, &u.scale(c64(-1.0, 0.0)), 1e-12));
        assert!(equiv_up_to_phase(&u, &u.scale(Complex::from_polar(1.0, 2.1)), 1e-12));
        let cnot = unitary_of_circuit(&circ(2, vec![Gate::cnot(0, 1)])).unwrap();
        let cz = unitary_of_circuit(&circ(2, vec![Gate::Cz { a: 0, b: 1 }])).unwrap();
        assert!(!equiv_up_to_phase(&cnot, &cz, 1e-3));
    }

    #[test]
    fn gates_are_unitary() {
        let gates = vec![
            Gate::cnot(0, 2),
            Gate::rz(0.3, 1),
            Gate::rx(1.2, 0),
            Gate::Ry { angle: -0.4, qubit: 2 },
            Gate::H { qubit: 1 },
            Gate::Cz { a: 2, b: 0 },
            Gate::Crz { angle: 0.8, control: 1, target: 2 },
            Gate::Crx { angle: -2.0, control: 2, target: 0 },
            Gate::Cu1 { angle: 0.5, a: 0, b: 1 },
        ];
        for g in gates {
            let u = unitary_of_circuit(&circ(3, vec![g])).unwrap();
            assert!(u.unitarity_error() < 1e-12, "{g:?}");
        }
    }

    #[test]
    fn rotation_relations() {
        // RX = H RZ H and RY = RX(-π/2) RZ RX(π/2), exactly.
        let t = 0.77;
        let h = std::f64::consts::FRAC_PI_2;
        let rx = unitary_of_circuit(&circ(1, vec![Gate::rx(t, 0)])).unwrap();
        let hzh = unitary_of_circuit(&circ(
            1,
            vec![Gate::H { qubit: 0 }, Gate::rz(t, 0), Gate::H { qubit: 0 }],
        ))
        .unwrap();
        assert!(rx.max_diff(&hzh) < 1e-14);
        let ry = unitary_of_circuit(&circ(1, vec![Gate::Ry { angle: t, qubit: 0 }])).unwrap();
        let xzx = unitary_of_circuit(&circ(1, vec![Gate::rx(h, 0), Gate::rz(t, 0), Gate::rx(-h, 0)]))
            .unwrap();
        assert!(ry.max_diff(&xzx) < 1e-14);
    }
}
