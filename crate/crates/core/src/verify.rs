//! Exhaustive contract checking of a netlist against a target permutation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, LineRole};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    General,
    Even,
    Conservative,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::General => "general",
            Backend::Even => "even",
            Backend::Conservative => "conservative",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleSummary {
    pub data: usize,
    pub ancilla0: usize,
    pub ancilla1: usize,
    pub borrowed: usize,
}

impl RoleSummary {
    pub fn of(roles: &[LineRole]) -> Self {
        let mut s = RoleSummary::default();
        for r in roles {
            match r {
                LineRole::Data => s.data += 1,
                LineRole::Ancilla(false) => s.ancilla0 += 1,
                LineRole::Ancilla(true) => s.ancilla1 += 1,
                LineRole::Borrowed => s.borrowed += 1,
            }
        }
        s
    }
}

/// A full-width input on which the circuit broke its contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub width: usize,
    pub input: u32,
    pub output: u32,
    pub expected: u32,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.width;
        write!(
            f,
            "input {:0w$b} -> output {:0w$b}, expected {:0w$b}",
            self.input, self.output, self.expected
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub backend: Option<Backend>,
    pub width: usize,
    pub gate_count: usize,
    pub primitive_gate_count: usize,
    pub roles: RoleSummary,
    pub verdict: Verdict,
}

impl fmt::Display for SynthesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = self.backend {
            writeln!(f, "backend: {b}")?;
        }
        writeln!(f, "width: {}", self.width)?;
        writeln!(f, "gates: {}", self.gate_count)?;
        writeln!(f, "primitive_gates: {}", self.primitive_gate_count)?;
        writeln!(
            f,
            "roles: data={} ancilla0={} ancilla1={} borrowed={}",
            self.roles.data, self.roles.ancilla0, self.roles.ancilla1, self.roles.borrowed
        )?;
        match &self.verdict {
            Verdict::Pass => write!(f, "verdict: pass"),
            Verdict::Fail(cx) => write!(f, "verdict: fail ({cx})"),
        }
    }
}

/// Checks that `c` realizes `target` under its line roles.
///
/// Every data assignment is tried with each ancilla line at its declared
/// value and every borrowed line at both values; the data lines must carry
/// `target(data)` and every other line must come back unchanged. Ancilla
/// lines are not exercised at the opposite value.
pub fn verify_realizes(c: &Circuit, target: &Permutation) -> Result<SynthesisReport> {
    let w = c.width();
    let data = c.data_lines();
    if data.len() != target.width() as usize {
        return Err(Error::WidthMismatch {
            circuit: data.len(),
            target: target.width(),
        });
    }
    let bit = |line: usize| 1u32 << (w - 1 - line);
    let borrowed = c.lines_with(|r| r == LineRole::Borrowed);
    let mut fixed = 0u32;
    for (l, r) in c.roles().iter().enumerate() {
        if *r == LineRole::Ancilla(true) {
            fixed |= bit(l);
        }
    }
    let spread = |value: u32, lines: &[usize]| -> u32 {
        let n = lines.len();
        lines
            .iter()
            .enumerate()
            .filter(|(j, _)| value >> (n - 1 - j) & 1 == 1)
            .fold(0, |acc, (_, &l)| acc | bit(l))
    };
    let data_mask = spread(u32::MAX >> (32 - data.len()), &data);

    let mut verdict = Verdict::Pass;
    'outer: for d in 0..1u32 << data.len() {
        let expected_data = spread(target.apply(d), &data);
        for b in 0..1u32 << borrowed.len() {
            let input = spread(d, &data) | spread(b, &borrowed) | fixed;
            let output = c.apply(input);
            let expected = expected_data | (input & !data_mask);
            if output != expected {
                verdict = Verdict::Fail(Counterexample {
                    width: w,
                    input,
                    output,
                    expected,
                });
                break 'outer;
            }
        }
    }
    Ok(SynthesisReport {
        backend: None,
        width: w,
        gate_count: c.gates().len(),
        primitive_gate_count: c.primitive_gate_count(),
        roles: RoleSummary::of(c.roles()),
        verdict,
    })
}
