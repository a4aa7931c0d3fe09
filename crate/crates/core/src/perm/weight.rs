//! Splitting a conservative permutation into its Hamming-weight classes.

use super::{parity_of_map, Parity, Permutation};
use crate::error::{Error, Result};

/// Strings of `width` bits with exactly `weight` ones, in ascending
/// (lexicographic, MSB first) order.
pub fn class_members(width: u32, weight: u32) -> Vec<u32> {
    (0..1u32 << width)
        .filter(|v| v.count_ones() == weight)
        .collect()
}

/// Per-weight-class permutations of a conservative permutation.
///
/// `classes[k][i] = j` means the `i`-th string of weight `k` maps to the
/// `j`-th string of weight `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassDecomposition {
    width: u32,
    classes: Vec<Vec<usize>>,
}

impl WeightClassDecomposition {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, weight: usize) -> &[usize] {
        &self.classes[weight]
    }

    pub fn class_parity(&self, weight: usize) -> Parity {
        parity_of_map(&self.classes[weight])
    }

    pub fn is_class_identity(&self, weight: usize) -> bool {
        self.classes[weight]
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j)
    }

    /// Reassembles the permutation on the full state space.
    pub fn recompose(&self) -> Permutation {
        let mut map = vec![0u32; 1 << self.width];
        for (weight, class) in self.classes.iter().enumerate() {
            let members = class_members(self.width, weight as u32);
            for (i, &j) in class.iter().enumerate() {
                map[members[i] as usize] = members[j];
            }
        }
        Permutation::from_raw(self.width, map)
    }
}

/// Fails with [`Error::NotConservative`] on the first string whose weight
/// changes.
pub fn weight_decompose(p: &Permutation) -> Result<WeightClassDecomposition> {
    let width = p.width();
    let mut local = vec![0usize; p.len()];
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); width as usize + 1];
    for v in 0..p.len() as u32 {
        let class = &mut members[v.count_ones() as usize];
        local[v as usize] = class.len();
        class.push(v);
    }
    let classes = members
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&v| {
                    let image = p.apply(v);
                    if image.count_ones() != v.count_ones() {
                        Err(Error::NotConservative {
                            input: v,
                            from: v.count_ones(),
                            to: image.count_ones(),
                        })
                    } else {
                        Ok(local[image as usize])
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightClassDecomposition { width, classes })
}
