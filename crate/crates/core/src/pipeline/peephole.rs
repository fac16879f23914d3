use crate::circuit::{euler_xzx_to_zxz, euler_zxz_to_xzx, Gate, GateCircuit};
use crate::gadget::Basis;
use crate::Real;

/// Collapses each maximal run of single-qubit rotations on a wire to at
/// most three rotations.
///
/// Same-basis neighbours are fused, rotations by multiples of 2π dropped,
/// and longer alternating runs rewritten three at a time with the Euler
/// identities. Non-basis gates are passed through and end any run on the
/// wires they touch.
pub fn euler_peephole<T: Real>(c: &GateCircuit<T>) -> GateCircuit<T> {
    let n = c.n_qubits();
    let mut runs: Vec<Vec<(Basis, T)>> = vec![Vec::new(); n];
    let mut out = GateCircuit::new(n);
    for g in c.gates() {
        match *g {
            Gate::Rz { angle, qubit } => runs[qubit].push((Basis::Z, angle)),
            Gate::Rx { angle, qubit } => runs[qubit].push((Basis::X, angle)),
            _ => {
                for q in g.qubits() {
                    flush(&mut out, q, &mut runs[q]);
                }
                out.push(*g);
            }
        }
    }
    for (q, run) in runs.iter_mut().enumerate() {
        flush(&mut out, q, run);
    }
    out
}

fn flush<T: Real>(out: &mut GateCircuit<T>, q: usize, run: &mut Vec<(Basis, T)>) {
    for (basis, angle) in simplify_run(std::mem::take(run)) {
        out.push(match basis {
            Basis::Z => Gate::rz(angle, q),
            Basis::X => Gate::rx(angle, q),
        });
    }
}

fn fuse<T: Real>(run: Vec<(Basis, T)>) -> Vec<(Basis, T)> {
    let mut out: Vec<(Basis, T)> = Vec::with_capacity(run.len());
    for (b, a) in run {
        match out.last_mut() {
            Some(last) if last.0 == b => last.1 = last.1 + a,
            _ => out.push((b, a)),
        }
        if out.last().is_some_and(|l| l.1.is_zero_angle()) {
            out.pop();
        }
    }
    out
}

pub(crate) fn simplify_run<T: Real>(run: Vec<(Basis, T)>) -> Vec<(Basis, T)> {
    let mut run = fuse(run);
    while run.len() > 3 {
        let (b0, a1) = run[0];
        let (a2, a3) = (run[1].1, run[2].1);
        let (c1, c2, c3) = match b0 {
            Basis::X => euler_xzx_to_zxz(a1, a2, a3),
            Basis::Z => euler_zxz_to_xzx(a1, a2, a3),
        };
        let d = b0.dual();
        let mut next = vec![(d, c1), (b0, c2), (d, c3)];
        next.extend_from_slice(&run[3..]);
        run = fuse(next);
    }
    run
}
