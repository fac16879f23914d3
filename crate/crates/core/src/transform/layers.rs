use std::collections::HashMap;

use crate::gadget::{Basis, GadgetCircuit};
use crate::gf2::BitVec;
use crate::Real;

/// `entries = prefix ++ unit^repeats`, where `prefix` has `offset` entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerInfo {
    pub unit_length: usize,
    pub repeats: usize,
    pub offset: usize,
}

impl LayerInfo {
    /// Index range of layer `k`.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.offset + k * self.unit_length;
        start..start + self.unit_length
    }
}

/// Finds the repeated-layer structure, comparing basis and legs only.
///
/// The suffix after `offset` must be an exact power of a unit, and the
/// prefix must be shorter than the unit. Among the candidates the most
/// repeats win, then the shortest prefix.
pub fn detect_layers<T: Real>(g: &GadgetCircuit<T>) -> LayerInfo {
    let mut ids = HashMap::<(Basis, BitVec), usize>::new();
    let keys: Vec<usize> = g
        .entries()
        .iter()
        .map(|e| {
            let next = ids.len();
            *ids.entry((e.basis(), e.legs().clone())).or_insert(next)
        })
        .collect();
    best_decomposition(&keys)
}

/// Like [`detect_layers`] but angles must match exactly too.
pub fn detect_layers_exact<T: Real>(g: &GadgetCircuit<T>) -> LayerInfo {
    let mut ids = HashMap::<(Basis, BitVec, u64), usize>::new();
    let keys: Vec<usize> = g
        .entries()
        .iter()
        .map(|e| {
            let next = ids.len();
            let angle = e.angle().to_f64().unwrap_or(f64::NAN).to_bits();
            *ids.entry((e.basis(), e.legs().clone(), angle)).or_insert(next)
        })
        .collect();
    best_decomposition(&keys)
}

fn best_decomposition(keys: &[usize]) -> LayerInfo {
    let len = keys.len();
    let mut best = LayerInfo {
        unit_length: len,
        repeats: 1,
        offset: 0,
    };
    for offset in 0..len {
        let s = &keys[offset..];
        let p = period(s);
        if !s.len().is_multiple_of(p) {
            continue;
        }
        // Any multiple of the period that divides the length is also a
        // unit; take the shortest one longer than the prefix.
        let whole = s.len() / p;
        let Some(m) = (1..=whole).find(|m| whole.is_multiple_of(*m) && m * p > offset) else {
            continue;
        };
        let p = m * p;
        let repeats = s.len() / p;
        if repeats > best.repeats {
            best = LayerInfo {
                unit_length: p,
                repeats,
                offset,
            };
        }
    }
    best
}

/// Smallest period of `s` from the KMP failure function.
fn period(s: &[usize]) -> usize {
    if s.is_empty() {
        return 0;
    }
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    s.len() - fail[s.len() - 1]
}
