//! Any permutation as a variated-Toffoli netlist on `n + 1` lines, the
//! extra line borrowed.
//!
//! The permutation is split into the swap-bottom-pair / add-one generators,
//! each generator is a cascade of C^kNOT macros, and every C^kNOT is built
//! from VTOF gates with at most one borrowed line.

use crate::circuit::{expand_macros, Alphabet, Circuit, Gate, LineRole};
use crate::error::{Error, Result};
use crate::perm::{decompose_generators, Permutation, TokenVariant, TransformToken};

/// Inverts `target`; both helpers are restored whatever they start at.
pub fn synth_not(target: usize, helpers: [usize; 2]) -> Vec<Gate> {
    let [a, b] = helpers;
    vec![
        Gate::vtof(a, b, target),
        Gate::vtof(b, a, target),
        Gate::vtof(a, b, target),
        Gate::vtof(b, a, target),
    ]
}

/// `target ^= control`, using `helper` as the VTOF invert line. The helper
/// is flipped twice, so it comes back unchanged.
pub fn synth_cnot(control: usize, target: usize, helper: usize) -> Vec<Gate> {
    vec![Gate::vtof(control, helper, target); 2]
}

/// Regular Toffoli: one VTOF followed by the four-gate NOT on its invert
/// line. No extra line.
pub fn synth_ccnot(c1: usize, c2: usize, target: usize) -> Vec<Gate> {
    let mut gates = vec![Gate::vtof(c1, c2, target)];
    gates.extend(synth_not(c2, [c1, target]));
    gates
}

/// C^kNOT from VTOF gates.
///
/// `spares` are lines outside the gate that may be used and must be
/// restored: two are needed for k = 0, one for k = 1 and for k ≥ 3, none
/// for k = 2. For k ≥ 3 the first spare `x` is borrowed:
///
/// 1. C^(k-1)NOT(c1..c(k-1) → x), borrowing `target`
/// 2. CCNOT(ck, x → target)
/// 3. step 1 again
/// 4. step 2 again
pub fn synth_cknot(controls: &[usize], target: usize, spares: &[usize]) -> Result<Vec<Gate>> {
    let k = controls.len();
    let needed = match k {
        0 => 2,
        1 => 1,
        2 => 0,
        _ => 1,
    };
    if spares.len() < needed {
        return Err(Error::InsufficientLines {
            k,
            needed,
            available: spares.len(),
        });
    }
    Ok(match k {
        0 => synth_not(target, [spares[0], spares[1]]),
        1 => synth_cnot(controls[0], target, spares[0]),
        2 => synth_ccnot(controls[0], controls[1], target),
        _ => {
            let x = spares[0];
            let inner = synth_cknot(&controls[..k - 1], x, &[target])?;
            let outer = synth_ccnot(controls[k - 1], x, target);
            let mut gates = Vec::with_capacity(2 * (inner.len() + outer.len()));
            for _ in 0..2 {
                gates.extend_from_slice(&inner);
                gates.extend_from_slice(&outer);
            }
            gates
        }
    })
}

/// Swap of states 0 and 1 on `n` lines as C^kNOT macros: NOT on lines
/// 1..n-1, C^(n-1)NOT onto line n, NOT on lines 1..n-1 again.
pub fn synth_t1(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(width_error(n, 2, 16));
    }
    let mut c = Circuit::with_data_lines(n)?;
    let high: Vec<usize> = (0..n - 1).collect();
    c.extend(high.iter().map(|&l| Gate::not(l)))?;
    c.push(Gate::cknot(&high, n - 1))?;
    c.extend(high.iter().map(|&l| Gate::not(l)))?;
    Ok(c)
}

/// `k ↦ k + 1 mod 2^n` on `n` lines as C^kNOT macros.
///
/// Line `i` flips when every lower line is set, so the gates run from the
/// high line down: C^(n-1)NOT onto line 1, C^(n-2)NOT onto line 2, …,
/// CNOT onto line n-1, NOT on line n.
pub fn synth_t2(n: usize) -> Result<Circuit> {
    if n < 1 {
        return Err(width_error(n, 1, 16));
    }
    let mut c = Circuit::with_data_lines(n)?;
    c.extend(increment_ladder(0..n))?;
    Ok(c)
}

/// Increment over `lines` (first line most significant).
pub(crate) fn increment_ladder(lines: std::ops::Range<usize>) -> Vec<Gate> {
    let all: Vec<usize> = lines.collect();
    (0..all.len())
        .map(|i| Gate::cknot(&all[i + 1..], all[i]))
        .collect()
}

/// Synthesizes `p` on `width(p) + 1` lines; the last line is borrowed.
///
/// Every C^kNOT borrows a data line it does not touch when one exists and
/// the extra line otherwise.
pub fn synth_general(p: &Permutation) -> Result<Circuit> {
    let n = p.width() as usize;
    if !(3..=15).contains(&n) {
        return Err(width_error(n, 3, 15));
    }
    let mut roles = vec![LineRole::Data; n];
    roles.push(LineRole::Borrowed);
    let lower = |fragment: Circuit| -> Result<Vec<Gate>> {
        let mut embedded = Circuit::new(roles.clone())?;
        embedded.extend(fragment.gates().iter().cloned())?;
        Ok(expand_macros(&embedded, Alphabet::Vtof)?.gates().to_vec())
    };
    let t1 = lower(synth_t1(n)?)?;
    let t2 = lower(synth_t2(n)?)?;

    let mut out = Circuit::new(roles.clone())?;
    for token in decompose_generators(p, TokenVariant::Standard) {
        let gates = match token {
            TransformToken::T1 => &t1,
            TransformToken::T2 => &t2,
            other => unreachable!("standard decomposition produced {other}"),
        };
        out.extend(gates.iter().cloned())?;
    }
    Ok(out)
}

fn width_error(n: usize, min: u32, max: u32) -> Error {
    Error::WidthOutOfRange {
        width: n as u32,
        min,
        max,
    }
}
