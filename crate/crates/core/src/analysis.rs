//! Parity vectors of conservative permutations and the embedding parity
//! argument for small gates.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{check_width, weight_decompose, Parity, Permutation};

/// Per-class parities of a conservative permutation on `m` bits; entry `i`
/// is 1 when the permutation of the weight-`i` class is odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParityVector {
    width: u32,
    entries: Vec<u8>,
}

impl ParityVector {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Parity vector of the cascade of the two permutations.
    ///
    /// # Panics
    ///
    /// If the widths differ.
    pub fn xor(&self, other: &ParityVector) -> ParityVector {
        assert_eq!(self.width, other.width);
        ParityVector {
            width: self.width,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn parity_vector(p: &Permutation) -> Result<ParityVector> {
    let d = weight_decompose(p)?;
    Ok(ParityVector {
        width: p.width(),
        entries: (0..d.classes().len())
            .map(|i| d.class_parity(i).bit())
            .collect(),
    })
}

/// `C(n, k) mod 2` by Lucas: odd iff every bit of `k` is also set in `n`.
pub fn binomial_mod2(n: u64, k: u64) -> u8 {
    (k <= n && k & !n == 0) as u8
}

/// Closed form of the parity vector of C^kSWAP on `m` lines (`k = 0` is
/// SWAP): entry `i` is `C(m-2-k, i-k-1) mod 2`, zero outside that row.
pub fn ckswap_parity_formula(k: u32, m: u32) -> Result<ParityVector> {
    if m < 2 || k > m - 2 {
        return Err(Error::Range(format!("C^{k}SWAP does not fit on {m} lines")));
    }
    let row = (m - 2 - k) as u64;
    let entries = (0..=m)
        .map(|i| {
            if i <= k {
                0
            } else {
                binomial_mod2(row, (i - k - 1) as u64)
            }
        })
        .collect();
    Ok(ParityVector { width: m, entries })
}

/// Outcome of testing the C^kSWAP vector against the span of the vectors of
/// SWAP, CSWAP, …, C^(k-1)SWAP.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Independence {
    /// The reduced vector is non-zero; `coordinate` is its first non-zero
    /// entry, where no combination of the smaller gates can match.
    Independent { coordinate: usize },
    /// `coefficients[j]` multiplies the C^jSWAP vector.
    Dependent { coefficients: Vec<u8> },
}

impl fmt::Display for Independence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Independence::Independent { coordinate } => {
                write!(f, "independent (coordinate {coordinate})")
            }
            Independence::Dependent { coefficients } => {
                write!(f, "dependent (coefficients")?;
                for c in coefficients {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// GF(2) rank test of the C^kSWAP parity vector against the lower ones.
pub fn independence_check(k: u32, m: u32) -> Result<Independence> {
    if k < 1 || m < 3 || k > m - 2 {
        return Err(Error::Range(format!(
            "independence check needs 1 <= k <= m-2, got k={k}, m={m}"
        )));
    }
    // Echelon rows, each tagged with the combination of basis vectors it is.
    let mut rows: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for j in 0..k {
        let mut v = ckswap_parity_formula(j, m)?.entries;
        let mut combo = vec![0u8; k as usize];
        combo[j as usize] = 1;
        reduce(&mut v, &mut combo, &rows);
        if v.contains(&1) {
            rows.push((v, combo));
        }
    }
    let mut v = ckswap_parity_formula(k, m)?.entries;
    let mut combo = vec![0u8; k as usize];
    reduce(&mut v, &mut combo, &rows);
    Ok(match v.iter().position(|&e| e == 1) {
        Some(coordinate) => Independence::Independent { coordinate },
        None => Independence::Dependent {
            coefficients: combo,
        },
    })
}

fn reduce(v: &mut [u8], combo: &mut [u8], rows: &[(Vec<u8>, Vec<u8>)]) {
    for (row, row_combo) in rows {
        let pivot = row.iter().position(|&e| e == 1).unwrap();
        if v[pivot] == 1 {
            v.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            combo.iter_mut().zip(row_combo).for_each(|(a, b)| *a ^= b);
        }
    }
}

/// `g` acting on the first `g.width()` lines of an `n`-line register.
pub fn embed(g: &Permutation, n: u32) -> Result<Permutation> {
    check_width(n)?;
    let k = g.width();
    if n < k {
        return Err(Error::Range(format!(
            "cannot embed a {k}-bit gate in {n} lines"
        )));
    }
    let shift = n - k;
    let low = (1u32 << shift) - 1;
    Permutation::from_fn(n, |s| g.apply(s >> shift) << shift | s & low)
}

/// Parity of `g` viewed as an `n`-bit permutation.
pub fn embedded_parity(g: &Permutation, n: u32) -> Result<Parity> {
    Ok(embed(g, n)?.parity())
}
