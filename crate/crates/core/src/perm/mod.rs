//! Permutations of `{0, ..., 2^n - 1}` and the algebra the synthesis
//! backends are built on.
//!
//! Bit strings are read most-significant bit first: line 1 of a circuit is
//! the high bit of the integer encoding.

mod generators;
mod sample;
mod weight;

pub use generators::{compose_tokens, decompose_generators, TokenVariant, TransformToken};
pub use sample::{sample_permutation, SampleKind};
pub use weight::{class_members, weight_decompose, WeightClassDecomposition};

use std::fmt;
use std::ops::BitXor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest permutation the crate will tabulate.
pub const MAX_WIDTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        Parity::from_count((self.bit() ^ rhs.bit()) as usize)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// Parity of an arbitrary bijection on `0..map.len()`, from its cycle count.
///
/// The caller guarantees `map` is a bijection.
pub fn parity_of_map(map: &[usize]) -> Parity {
    let mut seen = vec![false; map.len()];
    let mut cycles = 0;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
        }
    }
    Parity::from_count(map.len() - cycles)
}

/// A bijection on the `2^width` states of `width` bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    width: u32,
    map: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its value table, `map[i] = π(i)`.
    pub fn new(width: u32, map: Vec<u32>) -> Result<Self> {
        check_width(width)?;
        let size = 1usize << width;
        if map.len() != size {
            return Err(Error::NotABijection {
                len: map.len(),
                size,
            });
        }
        let mut seen = vec![false; size];
        for &v in &map {
            let v = v as usize;
            if v >= size || seen[v] {
                return Err(Error::NotABijection {
                    len: map.len(),
                    size,
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { width, map })
    }

    pub fn identity(width: u32) -> Result<Self> {
        check_width(width)?;
        Ok(Permutation {
            width,
            map: (0..1u32 << width).collect(),
        })
    }

    /// Swaps `a` and `b`, fixes everything else.
    pub fn transposition(width: u32, a: u32, b: u32) -> Result<Self> {
        let mut p = Permutation::identity(width)?;
        let size = p.len() as u32;
        if a >= size || b >= size {
            return Err(Error::Range(format!(
                "transposition ({a} {b}) is outside 0..{size}"
            )));
        }
        p.map.swap(a as usize, b as usize);
        Ok(p)
    }

    /// Tabulates `f`, which must be a bijection.
    pub fn from_fn(width: u32, f: impl Fn(u32) -> u32) -> Result<Self> {
        check_width(width)?;
        Permutation::new(width, (0..1u32 << width).map(f).collect())
    }

    // Callers have already established bijectivity.
    pub(crate) fn from_raw(width: u32, map: Vec<u32>) -> Self {
        debug_assert_eq!(map.len(), 1usize << width);
        Permutation { width, map }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of states, `2^width`.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `next`: `x ↦ next(self(x))`.
    ///
    /// # Panics
    ///
    /// If the widths differ.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(
            self.width, next.width,
            "composing permutations of different widths"
        );
        Permutation {
            width: self.width,
            map: self.map.iter().map(|&v| next.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation {
            width: self.width,
            map: inv,
        }
    }

    pub fn parity(&self) -> Parity {
        let map: Vec<usize> = self.map.iter().map(|&v| v as usize).collect();
        parity_of_map(&map)
    }

    /// True when every state keeps its Hamming weight.
    pub fn is_conservative(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(i, &v)| (i as u32).count_ones() == v.count_ones())
    }

    /// Cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.map[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Transpositions whose left-to-right composition equals `self`.
    ///
    /// A cycle `c0 → c1 → … → c(L-1)` becomes `(c0 c1), (c0 c2), …, (c0 c(L-1))`.
    pub fn to_transpositions(&self) -> Vec<(u32, u32)> {
        self.cycles()
            .into_iter()
            .flat_map(|cycle| {
                let head = cycle[0];
                cycle[1..]
                    .iter()
                    .map(move |&c| (head, c))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Left-to-right product of transpositions on `width` bits.
pub fn compose_transpositions(width: u32, transpositions: &[(u32, u32)]) -> Result<Permutation> {
    let mut map: Vec<u32> = Permutation::identity(width)?.map;
    let size = map.len() as u32;
    // Track where each input currently sits: applying (a b) after the
    // current map relabels the images a and b.
    let mut position: Vec<u32> = (0..size).collect();
    for &(a, b) in transpositions {
        if a >= size || b >= size {
            return Err(Error::Range(format!(
                "transposition ({a} {b}) is outside 0..{size}"
            )));
        }
        let (ia, ib) = (position[a as usize], position[b as usize]);
        map.swap(ia as usize, ib as usize);
        position.swap(a as usize, b as usize);
    }
    Ok(Permutation::from_raw(width, map))
}

pub(crate) fn check_width(width: u32) -> Result<()> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(Error::WidthOutOfRange {
            width,
            min: 1,
            max: MAX_WIDTH,
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.width)?;
        if self.map.len() <= 64 {
            write!(f, "{:?}", self.map)
        } else {
            write!(f, "({} cycles)", self.cycles().len())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_even() {
        assert_eq!(Permutation::identity(3).unwrap().parity(), Parity::Even);
    }

    #[test]
    fn single_transposition_is_odd() {
        let p = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(p.parity(), Parity::Odd);
    }

    #[test]
    fn three_cycle_is_even() {
        let p = Permutation::new(2, vec![1, 2, 0, 3]).unwrap();
        assert_eq!(p.parity(), Parity::Even);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(2, vec![0, 0, 1, 2]).is_err());
        assert!(Permutation::new(2, vec![0, 1, 2]).is_err());
        assert!(Permutation::new(2, vec![0, 1, 2, 4]).is_err());
        assert!(matches!(
            Permutation::new(17, vec![]),
            Err(Error::WidthOutOfRange { .. })
        ));
        assert!(Permutation::identity(0).is_err());
    }

    #[test]
    fn identity_has_no_transpositions() {
        assert!(Permutation::identity(3)
            .unwrap()
            .to_transpositions()
            .is_empty());
    }

    #[test]
    fn transposition_decomposes_to_itself() {
        let p = Permutation::transposition(2, 2, 3).unwrap();
        assert_eq!(p.to_transpositions(), vec![(2, 3)]);
    }

    #[test]
    fn three_cycle_composes_back() {
        let p = Permutation::new(2, vec![1, 2, 0, 3]).unwrap();
        let ts = p.to_transpositions();
        assert_eq!(ts.len(), 2);
        // Independent check: apply swaps to values one after another.
        for x in 0..4u32 {
            let mut v = x;
            for &(a, b) in &ts {
                if v == a {
                    v = b;
                } else if v == b {
                    v = a;
                }
            }
            assert_eq!(v, p.apply(x));
        }
        assert_eq!(compose_transpositions(2, &ts).unwrap(), p);
    }

    #[test]
    fn then_applies_left_first() {
        let swap01 = Permutation::transposition(2, 0, 1).unwrap();
        let shift = Permutation::from_fn(2, |x| (x + 1) % 4).unwrap();
        let both = swap01.then(&shift);
        assert_eq!(both.apply(0), 2);
        assert_eq!(both.apply(1), 1);
        assert_eq!(
            both.then(&both.inverse()),
            Permutation::identity(2).unwrap()
        );
    }
}
