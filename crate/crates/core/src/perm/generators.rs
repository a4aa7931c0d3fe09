//! Decomposition of any permutation into the two generators "swap the
//! bottom pair" and "add one modulo `2^n`".

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Permutation;

/// One generator application.
///
/// `T1` swaps 0 and 1, `T1Prime` swaps `2^n - 2` and `2^n - 1`; `T2` and
/// `T2Prime` both map `k ↦ k + 1 mod 2^n`. A sequence uses either the plain
/// or the primed pair, never both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransformToken {
    T1,
    T2,
    T1Prime,
    T2Prime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenVariant {
    Standard,
    Primed,
}

impl TransformToken {
    pub fn is_primed(self) -> bool {
        matches!(self, TransformToken::T1Prime | TransformToken::T2Prime)
    }

    pub fn is_swap(self) -> bool {
        matches!(self, TransformToken::T1 | TransformToken::T1Prime)
    }

    /// Image of `x` on `width` bits.
    pub fn apply(self, x: u32, width: u32) -> u32 {
        let top = (1u32 << width) - 1;
        match self {
            TransformToken::T1 => match x {
                0 => 1,
                1 => 0,
                _ => x,
            },
            TransformToken::T1Prime => {
                if x == top {
                    top - 1
                } else if x == top - 1 {
                    top
                } else {
                    x
                }
            }
            TransformToken::T2 | TransformToken::T2Prime => (x + 1) & top,
        }
    }
}

impl fmt::Display for TransformToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformToken::T1 => "T1",
            TransformToken::T2 => "T2",
            TransformToken::T1Prime => "T1'",
            TransformToken::T2Prime => "T2'",
        })
    }
}

/// Expands `p` into generator tokens, composed left to right.
///
/// Each transposition `(i j)`, `i < j`, becomes the adjacent swaps
/// `(i i+1), …, (j-1 j), (j-2 j-1), …, (i i+1)`. Each adjacent swap
/// `(a a+1)` rotates the pair onto the generator's swap position, swaps,
/// and rotates back; the rotation counts always sum to `2^n`, so no
/// rotation is cancelled against its neighbour.
pub fn decompose_generators(p: &Permutation, variant: TokenVariant) -> Vec<TransformToken> {
    let width = p.width();
    let size = 1u64 << width;
    let mut tokens = Vec::new();
    for (a, b) in p.to_transpositions() {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let forward = i..j;
        let back = (i..j.saturating_sub(1)).rev();
        for k in forward.chain(back) {
            push_adjacent_swap(&mut tokens, k as u64, size, variant);
        }
    }
    tokens
}

fn push_adjacent_swap(tokens: &mut Vec<TransformToken>, k: u64, size: u64, variant: TokenVariant) {
    let (swap, shift, before) = match variant {
        TokenVariant::Standard => (TransformToken::T1, TransformToken::T2, size - k),
        TokenVariant::Primed => (
            TransformToken::T1Prime,
            TransformToken::T2Prime,
            size - 2 - k,
        ),
    };
    let after = size - before;
    tokens.extend(std::iter::repeat_n(shift, before as usize));
    tokens.push(swap);
    tokens.extend(std::iter::repeat_n(shift, after as usize));
}

/// Left-to-right composition of a token sequence on `width` bits.
pub fn compose_tokens(width: u32, tokens: &[TransformToken]) -> Permutation {
    let size = 1u32 << width;
    let map = (0..size)
        .map(|x| tokens.iter().fold(x, |v, t| t.apply(v, width)))
        .collect();
    Permutation::from_raw(width, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TransformToken::*;

    #[test]
    fn identity_has_no_tokens() {
        let p = Permutation::identity(3).unwrap();
        assert!(decompose_generators(&p, TokenVariant::Standard).is_empty());
        assert!(decompose_generators(&p, TokenVariant::Primed).is_empty());
    }

    #[test]
    fn adjacent_swap_follows_rotation_recipe() {
        let p = Permutation::transposition(2, 2, 3).unwrap();
        let tokens = decompose_generators(&p, TokenVariant::Standard);
        assert_eq!(tokens, vec![T2, T2, T1, T2, T2]);
        assert_eq!(compose_tokens(2, &tokens), p);
    }

    #[test]
    fn bottom_swap_uses_full_rotation() {
        let p = Permutation::transposition(2, 0, 1).unwrap();
        let tokens = decompose_generators(&p, TokenVariant::Standard);
        assert_eq!(tokens, vec![T2, T2, T2, T2, T1]);
        assert_eq!(compose_tokens(2, &tokens), p);
    }

    #[test]
    fn primed_top_swap() {
        let p = Permutation::transposition(2, 2, 3).unwrap();
        let tokens = decompose_generators(&p, TokenVariant::Primed);
        assert_eq!(tokens, vec![T1Prime, T2Prime, T2Prime, T2Prime, T2Prime]);
        assert_eq!(compose_tokens(2, &tokens), p);
    }

    #[test]
    fn per_transposition_counts() {
        // (1 6) on 3 bits: 5 + 4 adjacent swaps, odd; each has 8 shifts.
        let p = Permutation::transposition(3, 1, 6).unwrap();
        for variant in [TokenVariant::Standard, TokenVariant::Primed] {
            let tokens = decompose_generators(&p, variant);
            let swaps = tokens.iter().filter(|t| t.is_swap()).count();
            let shifts = tokens.len() - swaps;
            assert_eq!(swaps, 9);
            assert_eq!(shifts, 9 * 8);
            assert_eq!(compose_tokens(3, &tokens), p);
        }
    }

    #[test]
    fn width_one() {
        let p = Permutation::transposition(1, 0, 1).unwrap();
        for variant in [TokenVariant::Standard, TokenVariant::Primed] {
            assert_eq!(compose_tokens(1, &decompose_generators(&p, variant)), p);
        }
    }
}
