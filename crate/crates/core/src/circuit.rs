//! Gate alphabet, circuits with line roles, and the exhaustive simulator.
//!
//! Lines are 0-based here; the netlist text format is 1-based. Line 0 is
//! the most significant bit of a simulator state.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_WIDTH};
use crate::{fredkin, toffoli};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Variated Toffoli: `(a, b, c) ↦ (a, b ⊕ 1, c ⊕ ab)`.
    Vtof,
    /// Fredkin: swaps lines 2 and 3 when line 1 is set.
    Fred,
    /// Flips the target when all `k` controls are set. `k = 0` is NOT,
    /// `k = 1` is CNOT.
    CkNot(usize),
    /// Swaps the two targets when all `k` controls are set. `k = 0` is SWAP.
    CkSwap(usize),
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Vtof | GateKind::Fred => 3,
            GateKind::CkNot(k) => k + 1,
            GateKind::CkSwap(k) => k + 2,
        }
    }

    pub fn is_primitive(self) -> bool {
        matches!(self, GateKind::Vtof | GateKind::Fred)
    }

    /// Weight-preserving kinds.
    pub fn is_conservative(self) -> bool {
        matches!(self, GateKind::Fred | GateKind::CkSwap(_))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Vtof => f.write_str("VTOF"),
            GateKind::Fred => f.write_str("FRED"),
            GateKind::CkNot(0) => f.write_str("NOT"),
            GateKind::CkNot(1) => f.write_str("CNOT"),
            GateKind::CkNot(k) => write!(f, "C^{k}NOT"),
            GateKind::CkSwap(0) => f.write_str("SWAP"),
            GateKind::CkSwap(k) => write!(f, "C^{k}SWAP"),
        }
    }
}

/// One gate applied to positional lines.
///
/// Line order: VTOF `[control, invert, target]`; FRED `[control, t1, t2]`;
/// C^kNOT `[c1..ck, target]`; C^kSWAP `[c1..ck, t1, t2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    lines: Vec<usize>,
}

impl Gate {
    /// Builds a gate, checking arity and that the lines are distinct.
    pub fn new(kind: GateKind, lines: Vec<usize>) -> Result<Self> {
        let gate = Gate { kind, lines };
        if gate.lines.len() != kind.arity() {
            return Err(gate.invalid(format!(
                "expects {} lines, got {}",
                kind.arity(),
                gate.lines.len()
            )));
        }
        for (i, a) in gate.lines.iter().enumerate() {
            if gate.lines[i + 1..].contains(a) {
                return Err(gate.invalid(format!("line {} used twice", a + 1)));
            }
        }
        Ok(gate)
    }

    // Constructors used by the synthesis backends, where distinctness is
    // established by construction.
    fn raw(kind: GateKind, lines: Vec<usize>) -> Self {
        debug_assert!(Gate::new(kind, lines.clone()).is_ok(), "{kind} {lines:?}");
        Gate { kind, lines }
    }

    pub fn vtof(control: usize, invert: usize, target: usize) -> Self {
        Gate::raw(GateKind::Vtof, vec![control, invert, target])
    }

    pub fn fred(control: usize, t1: usize, t2: usize) -> Self {
        Gate::raw(GateKind::Fred, vec![control, t1, t2])
    }

    pub fn not(target: usize) -> Self {
        Gate::raw(GateKind::CkNot(0), vec![target])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::raw(GateKind::CkNot(1), vec![control, target])
    }

    pub fn cknot(controls: &[usize], target: usize) -> Self {
        let mut lines = controls.to_vec();
        lines.push(target);
        Gate::raw(GateKind::CkNot(controls.len()), lines)
    }

    pub fn swap(t1: usize, t2: usize) -> Self {
        Gate::raw(GateKind::CkSwap(0), vec![t1, t2])
    }

    pub fn ckswap(controls: &[usize], t1: usize, t2: usize) -> Self {
        let mut lines = controls.to_vec();
        lines.extend([t1, t2]);
        Gate::raw(GateKind::CkSwap(controls.len()), lines)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    /// Control lines of a C^kNOT / C^kSWAP (or the single control of a
    /// primitive).
    pub fn controls(&self) -> &[usize] {
        match self.kind {
            GateKind::Vtof | GateKind::Fred => &self.lines[..1],
            GateKind::CkNot(k) | GateKind::CkSwap(k) => &self.lines[..k],
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.kind.is_primitive()
    }

    pub fn uses(&self, line: usize) -> bool {
        self.lines.contains(&line)
    }

    pub(crate) fn check_width(&self, width: usize) -> Result<()> {
        match self.lines.iter().find(|&&l| l >= width) {
            Some(l) => {
                Err(self.invalid(format!("line {} is outside a {width}-line circuit", l + 1)))
            }
            None => Ok(()),
        }
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidGate {
            gate: self.to_string(),
            reason,
        }
    }

    /// Applies the gate to a `width`-line state. Every output bit is
    /// computed from the input state.
    #[inline]
    pub fn apply(&self, state: u32, width: usize) -> u32 {
        let bit = |line: usize| 1u32 << (width - 1 - line);
        let all_set = |lines: &[usize]| lines.iter().all(|&l| state & bit(l) != 0);
        match self.kind {
            GateKind::Vtof => {
                let (a, b, c) = (bit(self.lines[0]), bit(self.lines[1]), bit(self.lines[2]));
                let carry = state & a != 0 && state & b != 0;
                let mut out = state ^ b;
                if carry {
                    out ^= c;
                }
                out
            }
            GateKind::Fred => {
                if state & bit(self.lines[0]) != 0 {
                    swap_bits(state, bit(self.lines[1]), bit(self.lines[2]))
                } else {
                    state
                }
            }
            GateKind::CkNot(k) => {
                if all_set(&self.lines[..k]) {
                    state ^ bit(self.lines[k])
                } else {
                    state
                }
            }
            GateKind::CkSwap(k) => {
                if all_set(&self.lines[..k]) {
                    swap_bits(state, bit(self.lines[k]), bit(self.lines[k + 1]))
                } else {
                    state
                }
            }
        }
    }
}

#[inline]
fn swap_bits(state: u32, x: u32, y: u32) -> u32 {
    if (state & x != 0) != (state & y != 0) {
        state ^ x ^ y
    } else {
        state
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for l in &self.lines {
            write!(f, " {}", l + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineRole {
    /// Carries a bit of the target permutation.
    Data,
    /// Starts at the given value and must be returned with it.
    Ancilla(bool),
    /// Starts at an arbitrary value and must be returned with it.
    Borrowed,
}

impl fmt::Display for LineRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineRole::Data => "data",
            LineRole::Ancilla(false) => "ancilla0",
            LineRole::Ancilla(true) => "ancilla1",
            LineRole::Borrowed => "borrowed",
        })
    }
}

/// Primitive alphabet a netlist is lowered to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Vtof,
    Fred,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Vtof => "VTOF",
            Alphabet::Fred => "FRED",
        }
    }
}

/// An ordered gate cascade over role-tagged lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    roles: Vec<LineRole>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(roles: Vec<LineRole>) -> Result<Self> {
        if roles.is_empty() || roles.len() > MAX_WIDTH as usize {
            return Err(Error::WidthOutOfRange {
                width: roles.len() as u32,
                min: 1,
                max: MAX_WIDTH,
            });
        }
        Ok(Circuit {
            roles,
            gates: Vec::new(),
        })
    }

    /// `n` data lines and no gates.
    pub fn with_data_lines(n: usize) -> Result<Self> {
        Circuit::new(vec![LineRole::Data; n])
    }

    pub fn width(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[LineRole] {
        &self.roles
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn data_lines(&self) -> Vec<usize> {
        self.lines_with(|r| r == LineRole::Data)
    }

    pub fn lines_with(&self, pred: impl Fn(LineRole) -> bool) -> Vec<usize> {
        (0..self.width()).filter(|&l| pred(self.roles[l])).collect()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check_width(self.width())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn is_primitive(&self) -> bool {
        self.gates.iter().all(Gate::is_primitive)
    }

    pub fn primitive_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_primitive()).count()
    }

    /// Runs the cascade on one `width`-bit state.
    pub fn apply(&self, state: u32) -> u32 {
        let w = self.width();
        self.gates.iter().fold(state, |s, g| g.apply(s, w))
    }

    /// The permutation of all `2^width` states induced by the cascade.
    pub fn to_permutation(&self) -> Permutation {
        let map = (0..1u32 << self.width()).map(|s| self.apply(s)).collect();
        Permutation::from_raw(self.width() as u32, map)
    }

    /// True when every state keeps its Hamming weight.
    pub fn preserves_weight(&self) -> bool {
        (0..1u32 << self.width()).all(|s| self.apply(s).count_ones() == s.count_ones())
    }

    /// First state, with every ancilla line at its declared value, on which
    /// `self` and `other` disagree.
    pub fn first_difference(&self, other: &Circuit) -> Option<u32> {
        assert_eq!(self.width(), other.width());
        let w = self.width();
        let (mut fixed_mask, mut fixed_value) = (0u32, 0u32);
        for (l, role) in self.roles.iter().enumerate() {
            if let LineRole::Ancilla(v) = role {
                fixed_mask |= 1 << (w - 1 - l);
                if *v {
                    fixed_value |= 1 << (w - 1 - l);
                }
            }
        }
        (0..1u32 << w)
            .filter(|s| s & fixed_mask == fixed_value)
            .find(|&s| self.apply(s) != other.apply(s))
    }
}

/// Lowers every macro to the primitive gate of `alphabet`.
///
/// C^kNOT (k ≥ 3) borrows a line outside the gate, preferring data lines;
/// the expansion restores it for both start values, so the permutation is
/// preserved on every state. C^kSWAP needs an ancilla line outside the gate
/// (value 0 for k ≥ 2, value 1 for k = 0); the result matches the macro on
/// every state in which that ancilla holds its declared value.
pub fn expand_macros(c: &Circuit, alphabet: Alphabet) -> Result<Circuit> {
    let mut out = Circuit::new(c.roles.clone())?;
    for g in &c.gates {
        out.gates.extend(expand_gate(g, &c.roles, alphabet)?);
    }
    Ok(out)
}

/// Expansion of a single gate in a circuit with the given line roles.
pub fn expand_gate(g: &Gate, roles: &[LineRole], alphabet: Alphabet) -> Result<Vec<Gate>> {
    let unexpandable = || Error::UnexpandableMacro {
        macro_name: g.kind.to_string(),
        alphabet: alphabet.name(),
    };
    match (alphabet, g.kind) {
        (Alphabet::Vtof, GateKind::Vtof) | (Alphabet::Fred, GateKind::Fred) => Ok(vec![g.clone()]),
        (Alphabet::Vtof, GateKind::CkNot(k)) => {
            let free = |pred: fn(LineRole) -> bool| {
                (0..roles.len()).filter(move |&l| pred(roles[l]) && !g.uses(l))
            };
            let spares: Vec<usize> = free(|r| r == LineRole::Data)
                .chain(free(|r| r != LineRole::Data))
                .collect();
            toffoli::synth_cknot(&g.lines[..k], g.lines[k], &spares)
        }
        (Alphabet::Fred, GateKind::CkSwap(1)) => {
            Ok(vec![Gate::fred(g.lines[0], g.lines[1], g.lines[2])])
        }
        (Alphabet::Fred, GateKind::CkSwap(k)) => {
            let ancilla = |v: bool| {
                (0..roles.len()).find(|&l| roles[l] == LineRole::Ancilla(v) && !g.uses(l))
            };
            let controls = &g.lines[..k];
            let targets = (g.lines[k], g.lines[k + 1]);
            if k >= 2 {
                if let Some(x) = ancilla(false) {
                    return Ok(fredkin::synth_ckswap_ancilla(controls, targets, x));
                }
            }
            match ancilla(true) {
                Some(x) => Ok(fredkin::ancilla_one_ckswap(controls, targets, x)),
                None => Err(Error::MissingAuxiliary {
                    macro_name: g.kind.to_string(),
                    needed: if k == 0 {
                        "an ancilla line fixed to 1"
                    } else {
                        "an ancilla line"
                    },
                }),
            }
        }
        _ => Err(unexpandable()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(g: &Gate, bits: &str) -> String {
        let w = bits.len();
        let s = u32::from_str_radix(bits, 2).unwrap();
        format!("{:0w$b}", g.apply(s, w))
    }

    #[test]
    fn vtof_uses_pre_flip_invert_line() {
        let g = Gate::vtof(0, 1, 2);
        assert_eq!(eval(&g, "000"), "010");
        assert_eq!(eval(&g, "100"), "110");
        assert_eq!(eval(&g, "110"), "101");
        assert_eq!(eval(&g, "111"), "100");
        assert_eq!(eval(&g, "010"), "000");
    }

    #[test]
    fn fredkin_swaps_under_control() {
        let g = Gate::fred(0, 1, 2);
        assert_eq!(eval(&g, "101"), "110");
        assert_eq!(eval(&g, "001"), "001");
        assert_eq!(eval(&g, "111"), "111");
    }

    #[test]
    fn macro_semantics() {
        assert_eq!(eval(&Gate::cknot(&[0, 2], 3), "1010"), "1011");
        assert_eq!(eval(&Gate::cknot(&[0, 2], 3), "1000"), "1000");
        assert_eq!(eval(&Gate::ckswap(&[3], 0, 1), "0101"), "1001");
        assert_eq!(eval(&Gate::swap(0, 2), "100"), "001");
        assert_eq!(eval(&Gate::not(1), "000"), "010");
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(GateKind::Vtof, vec![0, 0, 1]).is_err());
        assert!(Gate::new(GateKind::CkNot(2), vec![0, 1]).is_err());
        let mut c = Circuit::with_data_lines(3).unwrap();
        assert!(c
            .push(Gate::new(GateKind::Fred, vec![0, 1, 3]).unwrap())
            .is_err());
        assert!(c.push(Gate::fred(0, 1, 2)).is_ok());
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::with_data_lines(3).unwrap();
        assert!(c.to_permutation().is_identity());
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let mut c = Circuit::with_data_lines(3).unwrap();
        c.push(Gate::ckswap(&[0], 1, 2)).unwrap();
        assert!(matches!(
            expand_macros(&c, Alphabet::Vtof),
            Err(Error::UnexpandableMacro { .. })
        ));
        let mut c = Circuit::with_data_lines(3).unwrap();
        c.push(Gate::cnot(0, 1)).unwrap();
        assert!(matches!(
            expand_macros(&c, Alphabet::Fred),
            Err(Error::UnexpandableMacro { .. })
        ));
    }

    #[test]
    fn ckswap_without_ancilla_is_reported() {
        let mut c = Circuit::with_data_lines(4).unwrap();
        c.push(Gate::ckswap(&[0, 1], 2, 3)).unwrap();
        assert!(matches!(
            expand_macros(&c, Alphabet::Fred),
            Err(Error::MissingAuxiliary { .. })
        ));
    }

    #[test]
    fn cnot_macro_becomes_two_vtof() {
        let mut c = Circuit::with_data_lines(3).unwrap();
        c.push(Gate::cnot(0, 2)).unwrap();
        let e = expand_macros(&c, Alphabet::Vtof).unwrap();
        assert_eq!(e.gates().len(), 2);
        assert!(e.is_primitive());
        assert_eq!(e.to_permutation(), c.to_permutation());
    }

    #[test]
    fn ckswap1_becomes_one_fred() {
        let mut c = Circuit::with_data_lines(3).unwrap();
        c.push(Gate::ckswap(&[0], 1, 2)).unwrap();
        let e = expand_macros(&c, Alphabet::Fred).unwrap();
        assert_eq!(e.gates(), &[Gate::fred(0, 1, 2)]);
    }

    #[test]
    fn ccnot_macro_becomes_five_vtof() {
        let mut c = Circuit::with_data_lines(3).unwrap();
        c.push(Gate::cknot(&[0, 1], 2)).unwrap();
        let e = expand_macros(&c, Alphabet::Vtof).unwrap();
        assert_eq!(e.gates().len(), 5);
        // Oracle: Toffoli truth table.
        for s in 0..8u32 {
            let expected = if s & 0b110 == 0b110 { s ^ 1 } else { s };
            assert_eq!(e.apply(s), expected, "input {s:03b}");
        }
    }

    #[test]
    fn ckswap_expansion_matches_on_ancilla_subspace() {
        let mut roles = vec![LineRole::Data; 5];
        roles.push(LineRole::Ancilla(false));
        let mut c = Circuit::new(roles).unwrap();
        c.push(Gate::ckswap(&[0, 1, 2], 3, 4)).unwrap();
        let e = expand_macros(&c, Alphabet::Fred).unwrap();
        assert!(e.is_primitive());
        assert_eq!(e.first_difference(&c), None);
    }
}
