//! Simulated annealing over `GL(n, 2)` for the total gadget leg count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealParams {
    /// Initial temperature; the schedule is `t0 · (1 - k/K)`.
    pub t0: f64,
    /// Iterations per attempt (`K`).
    pub iterations: usize,
    /// Independent chains; the best result over all of them is kept.
    pub attempts: usize,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            t0: 0.5,
            iterations: 5000,
            attempts: 20,
            seed: 0,
        }
    }
}

impl AnnealParams {
    /// Defaults with `t0 = max(5, total legs) / 10`.
    pub fn for_matrices(lz: &BitMatrix, lx: &BitMatrix, seed: u64) -> Self {
        AnnealParams {
            t0: default_t0(lz, lx),
            seed,
            ..AnnealParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return Err(Error::InvalidParams(format!("t0 must be positive, got {}", self.t0)));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParams("iterations must be at least 1".into()));
        }
        if self.attempts == 0 {
            return Err(Error::InvalidParams("attempts must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn default_t0(lz: &BitMatrix, lx: &BitMatrix) -> f64 {
    (lz.popcount() + lx.popcount()).max(5) as f64 / 10.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealResult {
    pub best_c: BitMatrix,
    pub best_energy: usize,
    /// Energy of the identity.
    pub initial_energy: usize,
    /// Best energy reached by each chain, in attempt order.
    pub per_attempt_energies: Vec<usize>,
}

fn check_shapes(lz: &BitMatrix, lx: &BitMatrix) -> Result<usize> {
    if lz.rows() != lx.rows() {
        return Err(Error::DimensionMismatch(format!(
            "L_Z has {} rows but L_X has {}",
            lz.rows(),
            lx.rows()
        )));
    }
    Ok(lz.rows())
}

/// `popcount(C · L_Z) + popcount((Cᵀ)⁻¹ · L_X)`.
pub fn energy(c: &BitMatrix, lz: &BitMatrix, lx: &BitMatrix) -> Result<usize> {
    check_shapes(lz, lx)?;
    let z = c.mul(lz)?.popcount();
    let x = c.inverse_transpose()?.mul(lx)?.popcount();
    Ok(z + x)
}

/// Flips one uniformly chosen entry of `c`, redrawing until the result is
/// invertible. With `n = 1` no such flip exists and `c` is returned.
pub fn neighbor<R: Rng + ?Sized>(c: &BitMatrix, rng: &mut R) -> BitMatrix {
    let n = c.rows();
    if n < 2 {
        return c.clone();
    }
    loop {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut next = c.clone();
        next.flip(i, j);
        if next.is_invertible() {
            return next;
        }
    }
}

/// Chain state with `C⁻¹` and both products kept up to date.
struct Chain<'a> {
    lz: &'a BitMatrix,
    lx: &'a BitMatrix,
    c: BitMatrix,
    cinv: BitMatrix,
    pz: BitMatrix,
    px: BitMatrix,
    energy: usize,
}

/// A proposed flip of `C(i, j)` with its resulting energy.
struct Move {
    i: usize,
    j: usize,
    u: BitVec,
    v: BitVec,
    w: BitVec,
    energy: usize,
}

impl<'a> Chain<'a> {
    fn new(c: BitMatrix, lz: &'a BitMatrix, lx: &'a BitMatrix) -> Self {
        let cinv = c.invert().expect("chain start is invertible");
        let pz = c.mul(lz).expect("shapes checked");
        let px = cinv.transpose().mul(lx).expect("shapes checked");
        let energy = pz.popcount() + px.popcount();
        Chain {
            lz,
            lx,
            c,
            cinv,
            pz,
            px,
            energy,
        }
    }

    /// Flipping `C(i, j)` keeps `C` invertible iff `C⁻¹(j, i) = 0`.
    fn can_flip(&self, i: usize, j: usize) -> bool {
        !self.cinv.get(j, i)
    }

    fn propose(&self, i: usize, j: usize) -> Move {
        let n = self.c.rows();
        // Row i of C·L_Z gains row j of L_Z.
        let mut rz = self.pz.row(i);
        let before_z = rz.weight();
        rz.xor_assign(&self.lz.row(j));
        let mut e = self.energy - before_z + rz.weight();

        // New inverse is C⁻¹ + u vᵀ; (C⁻¹)ᵀ·L_X gains v ⊗ (uᵀ L_X).
        let u = self.cinv.column(i);
        let v = self.cinv.row(j);
        let mut w = BitVec::zeros(self.lx.cols());
        for k in u.ones() {
            w.xor_assign(&self.lx.row(k));
        }
        if !w.is_zero() {
            for k in v.ones() {
                let mut r = self.px.row(k);
                let before = r.weight();
                r.xor_assign(&w);
                e = e - before + r.weight();
            }
        }
        debug_assert!(n > 0);
        Move {
            i,
            j,
            u,
            v,
            w,
            energy: e,
        }
    }

    fn apply(&mut self, m: Move) {
        self.c.flip(m.i, m.j);
        let lz_row = self.lz.row(m.j);
        self.pz.xor_row(m.i, &lz_row);
        for k in m.u.ones() {
            self.cinv.xor_row(k, &m.v);
        }
        if !m.w.is_zero() {
            for k in m.v.ones() {
                self.px.xor_row(k, &m.w);
            }
        }
        self.energy = m.energy;
    }
}

/// One chain of `params.iterations` steps. Returns the best `C` seen.
fn run_chain(lz: &BitMatrix, lx: &BitMatrix, params: &AnnealParams, attempt: u64) -> (BitMatrix, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(attempt);
    let n = lz.rows();
    let mut chain = Chain::new(BitMatrix::random_invertible(n, &mut rng), lz, lx);
    let mut best = (chain.c.clone(), chain.energy);
    if n < 2 {
        return best;
    }
    let k_max = params.iterations as f64;
    for k in 0..params.iterations {
        let t = params.t0 * (1.0 - (k + 1) as f64 / k_max);
        let (i, j) = loop {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if chain.can_flip(i, j) {
                break (i, j);
            }
        };
        let m = chain.propose(i, j);
        let accept = if m.energy < chain.energy {
            true
        } else if t <= 0.0 {
            false
        } else {
            let p = ((chain.energy as f64 - m.energy as f64) / t).exp().min(1.0);
            rng.gen::<f64>() < p
        };
        if accept {
            chain.apply(m);
            if chain.energy < best.1 {
                best = (chain.c.clone(), chain.energy);
            }
        }
    }
    best
}

/// Runs `params.attempts` independent chains in parallel and returns the
/// best matrix found, or the identity if nothing beats it.
///
/// Attempt `a` draws from stream `a` of a ChaCha8 generator seeded with
/// `params.seed`, so results do not depend on the thread count and the
/// first `a` attempts are the same whatever the total.
pub fn anneal(lz: &BitMatrix, lx: &BitMatrix, params: &AnnealParams) -> Result<AnnealResult> {
    params.validate()?;
    let n = check_shapes(lz, lx)?;
    let identity = BitMatrix::identity(n);
    let initial_energy = lz.popcount() + lx.popcount();
    if n == 0 {
        return Ok(AnnealResult {
            best_c: identity,
            best_energy: 0,
            initial_energy: 0,
            per_attempt_energies: vec![0; params.attempts],
        });
    }
    let runs: Vec<(BitMatrix, usize)> = (0..params.attempts as u64)
        .into_par_iter()
        .map(|a| run_chain(lz, lx, params, a))
        .collect();
    let per_attempt_energies: Vec<usize> = runs.iter().map(|r| r.1).collect();
    log::debug!("anneal: identity {initial_energy}, attempts {per_attempt_energies:?}");
    let mut best = (identity, initial_energy);
    for (c, e) in runs {
        if e < best.1 {
            best = (c, e);
        }
    }
    Ok(AnnealResult {
        best_c: best.0,
        best_energy: best.1,
        initial_energy,
        per_attempt_energies,
    })
}

/// Every element of `GL(n, 2)`, for `n ≤ 4`.
pub fn general_linear_group(n: usize) -> Result<Vec<BitMatrix>> {
    if n > 4 {
        return Err(Error::InvalidParams(format!("GL({n}, 2) is too large to enumerate")));
    }
    let mut out = Vec::new();
    for code in 0u32..1 << (n * n) {
        let mut m = BitMatrix::zeros(n, n);
        for b in 0..n * n {
            if code >> b & 1 == 1 {
                m.set(b / n, b % n, true);
            }
        }
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// The true minimum energy by enumerating `GL(n, 2)`; first minimiser in
/// enumeration order.
pub fn exhaustive_minimum(lz: &BitMatrix, lx: &BitMatrix) -> Result<(BitMatrix, usize)> {
    let n = check_shapes(lz, lx)?;
    let mut best: Option<(BitMatrix, usize)> = None;
    for c in general_linear_group(n)? {
        let e = energy(&c, lz, lx)?;
        if best.as_ref().is_none_or(|b| e < b.1) {
            best = Some((c, e));
        }
    }
    Ok(best.expect("GL(n, 2) is non-empty"))
}
