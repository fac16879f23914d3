//! Line-oriented circuit format.
//!
//! ```text
//! qubits 3
//! # comment
//! cnot 0 1
//! rz 1.5707963267948966 2
//! crz 0.25 0 2
//! ```
//!
//! Keywords are case-insensitive and `#` starts a comment. The `qubits`
//! header must precede every gate.

use std::fmt::Write;

use super::{Gate, GateCircuit};
use crate::error::{Error, Result};
use crate::Real;

/// Splits a line into lowercase-keyword tokens with comments stripped.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = line.split('#').next().unwrap_or("");
    body.split_whitespace().collect()
}

pub(crate) fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

pub(crate) fn parse_angle<T: Real>(tok: &str, line: usize) -> Result<T> {
    let a: T = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("expected angle, found `{tok}`")))?;
    if !a.is_finite() {
        return Err(Error::parse(line, format!("non-finite angle `{tok}`")));
    }
    Ok(a)
}

/// Parses the `qubits <n>` header. Returns `None` if the line is something else.
pub(crate) fn parse_header(toks: &[&str], line: usize) -> Result<Option<usize>> {
    if !toks[0].eq_ignore_ascii_case("qubits") {
        return Ok(None);
    }
    if toks.len() != 2 {
        return Err(Error::parse(line, "expected `qubits <n>`"));
    }
    let n = parse_usize(toks[1], line, "qubit count")?;
    if n == 0 {
        return Err(Error::parse(line, "qubit count must be positive"));
    }
    Ok(Some(n))
}

fn arity(toks: &[&str], expected: usize, line: usize) -> Result<()> {
    if toks.len() != expected + 1 {
        return Err(Error::parse(
            line,
            format!(
                "`{}` takes {} argument(s), found {}",
                toks[0],
                expected,
                toks.len() - 1
            ),
        ));
    }
    Ok(())
}

/// Parses a single gate line (already tokenised).
pub(crate) fn parse_gate<T: Real>(toks: &[&str], line: usize) -> Result<Gate<T>> {
    let kw = toks[0].to_ascii_lowercase();
    let q = |i: usize| parse_usize(toks[i], line, "qubit index");
    let gate = match kw.as_str() {
        "cnot" | "cx" => {
            arity(toks, 2, line)?;
            Gate::Cnot { control: q(1)?, target: q(2)? }
        }
        "rz" | "rx" | "ry" => {
            arity(toks, 2, line)?;
            let angle = parse_angle(toks[1], line)?;
            let qubit = q(2)?;
            match kw.as_str() {
                "rz" => Gate::Rz { angle, qubit },
                "rx" => Gate::Rx { angle, qubit },
                _ => Gate::Ry { angle, qubit },
            }
        }
        "h" => {
            arity(toks, 1, line)?;
            Gate::H { qubit: q(1)? }
        }
        "cz" => {
            arity(toks, 2, line)?;
            Gate::Cz { a: q(1)?, b: q(2)? }
        }
        "crz" | "crx" | "cu1" => {
            arity(toks, 3, line)?;
            let angle = parse_angle(toks[1], line)?;
            let (x, y) = (q(2)?, q(3)?);
            match kw.as_str() {
                "crz" => Gate::Crz { angle, control: x, target: y },
                "crx" => Gate::Crx { angle, control: x, target: y },
                _ => Gate::Cu1 { angle, a: x, b: y },
            }
        }
        other => return Err(Error::parse(line, format!("unknown gate `{other}`"))),
    };
    Ok(gate)
}

/// Parses the circuit text format.
pub fn parse<T: Real>(text: &str) -> Result<GateCircuit<T>> {
    let mut circuit: Option<GateCircuit<T>> = None;
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
            circuit = Some(GateCircuit::new(n));
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| Error::parse(line, "gate before `qubits` header"))?;
        let gate = parse_gate(&toks, line)?;
        c.try_push(gate).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| Error::parse(0, "missing `qubits` header"))
}

pub(crate) fn write_gate<T: Real>(out: &mut String, g: &Gate<T>) {
    let _ = match *g {
        Gate::Cnot { control, target } => writeln!(out, "cnot {control} {target}"),
        Gate::Rz { angle, qubit } => writeln!(out, "rz {angle} {qubit}"),
        Gate::Rx { angle, qubit } => writeln!(out, "rx {angle} {qubit}"),
        Gate::Ry { angle, qubit } => writeln!(out, "ry {angle} {qubit}"),
        Gate::H { qubit } => writeln!(out, "h {qubit}"),
        Gate::Cz { a, b } => writeln!(out, "cz {a} {b}"),
        Gate::Crz { angle, control, target } => writeln!(out, "crz {angle} {control} {target}"),
        Gate::Crx { angle, control, target } => writeln!(out, "crx {angle} {control} {target}"),
        Gate::Cu1 { angle, a, b } => writeln!(out, "cu1 {angle} {a} {b}"),
    };
}

pub(crate) fn serialize<T: Real>(c: &GateCircuit<T>) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for g in c.gates() {
        write_gate(&mut out, g);
    }
    out
}
