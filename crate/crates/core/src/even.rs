//! Even permutations as variated-Toffoli netlists with no extra line.
//!
//! The primed generator sequence of an even permutation has even length;
//! it is cut into adjacent pairs and each pair is built on the `n` data
//! lines. Every C^kNOT in a pair has at most `n - 2` controls, so a data
//! line outside the gate is always free to borrow.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use crate::circuit::{expand_macros, Alphabet, Circuit, Gate};
use crate::error::{Error, Result};
use crate::perm::{decompose_generators, Permutation, TokenVariant, TransformToken};
use crate::toffoli::increment_ladder;

/// An adjacent pair of primed tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenPair {
    /// `T1' T1'`: identity.
    M1,
    /// `T2' T2'`: add two.
    M2,
    /// `T1' T2'`.
    M3,
    /// `T2' T1'`.
    M4,
}

impl fmt::Display for TokenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Splits a primed token sequence into consecutive pairs.
pub fn pair_tokens(tokens: &[TransformToken]) -> Result<Vec<TokenPair>> {
    if let Some(t) = tokens.iter().find(|t| !t.is_primed()) {
        return Err(Error::UnprimedToken(t.to_string()));
    }
    if !tokens.len().is_multiple_of(2) {
        return Err(Error::OddTokenCount(tokens.len()));
    }
    Ok(tokens
        .chunks_exact(2)
        .map(|pair| match (pair[0].is_swap(), pair[1].is_swap()) {
            (true, true) => TokenPair::M1,
            (false, false) => TokenPair::M2,
            (true, false) => TokenPair::M3,
            (false, true) => TokenPair::M4,
        })
        .collect())
}

/// "`b ^= a·C`, then `a ^= b·C`" where `C` is the product of `middle`,
/// from four C^kNOT gates whose controls split `middle` into halves
/// `x` (first ⌈len/2⌉) and `y`:
///
/// ```text
/// a ^= b·X;  b ^= a·Y;  a ^= b·X;  b ^= a·Y
/// ```
fn fused_macros(a: usize, b: usize, middle: &[usize]) -> Vec<Gate> {
    let (x, y) = middle.split_at(middle.len().div_ceil(2));
    let with = |line: usize, half: &[usize]| {
        let mut controls = vec![line];
        controls.extend_from_slice(half);
        controls
    };
    let onto_a = Gate::cknot(&with(b, x), a);
    let onto_b = Gate::cknot(&with(a, y), b);
    vec![onto_a.clone(), onto_b.clone(), onto_a, onto_b]
}

/// Macro-level circuit for one pair on `n` lines.
fn pair_macros(pair: TokenPair, n: usize) -> Vec<Gate> {
    let all: Vec<usize> = (0..n).collect();
    match pair {
        TokenPair::M1 => Vec::new(),
        // +2 is +1 on the high n-1 lines.
        TokenPair::M2 => increment_ladder(0..n - 1),
        // Swap of the top pair is C^(n-1)NOT onto line n; the add-one ladder
        // opens with C^(n-1)NOT onto line 1. Those two are fused and the
        // rest of the ladder is +1 on lines 2..n.
        TokenPair::M3 => {
            let mut gates = fused_macros(0, n - 1, &all[1..n - 1]);
            gates.extend(increment_ladder(1..n));
            gates
        }
        // T2' T1' = (controlled 3-cycle 01 → 11 → 10 on the low two lines,
        // under lines 1..n-2) followed by T1' T2'. The 3-cycle is the same
        // fused shape with lines n-1 and n.
        TokenPair::M4 => {
            let mut gates = fused_macros(n - 2, n - 1, &all[..n - 2]);
            gates.extend(pair_macros(TokenPair::M3, n));
            gates
        }
    }
}

fn lower(gates: Vec<Gate>, n: usize) -> Result<Circuit> {
    let mut c = Circuit::with_data_lines(n)?;
    c.extend(gates)?;
    expand_macros(&c, Alphabet::Vtof)
}

fn check_width(n: usize, max: u32) -> Result<()> {
    if (3..=max as usize).contains(&n) {
        Ok(())
    } else {
        Err(Error::WidthOutOfRange {
            width: n as u32,
            min: 3,
            max,
        })
    }
}

/// VTOF circuit for one token pair on exactly `n` lines.
pub fn synth_pair(pair: TokenPair, n: usize) -> Result<Circuit> {
    check_width(n, 16)?;
    lower(pair_macros(pair, n), n)
}

/// VTOF circuit on `n` lines for "swap the top pair of states, then
/// C^(n-1)NOT onto line 1": `a ← a + aC + bC`, `b ← b + aC` with `a` the
/// first line, `b` the last and `C` the product of the lines between.
pub fn synth_fused(n: usize) -> Result<Circuit> {
    check_width(n, 16)?;
    let middle: Vec<usize> = (1..n - 1).collect();
    lower(fused_macros(0, n - 1, &middle), n)
}

/// Realizes an even permutation on exactly its own width.
pub fn synth_even(p: &Permutation) -> Result<Circuit> {
    let n = p.width() as usize;
    check_width(n, 16)?;
    if !p.parity().is_even() {
        return Err(Error::OddPermutation);
    }
    let pairs = pair_tokens(&decompose_generators(p, TokenVariant::Primed))?;
    let mut lowered: HashMap<TokenPair, Vec<Gate>> = HashMap::new();
    let mut out = Circuit::with_data_lines(n)?;
    for pair in pairs {
        let gates = match lowered.entry(pair) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(synth_pair(pair, n)?.gates().to_vec()),
        };
        out.extend(gates.iter().cloned())?;
    }
    Ok(out)
}
