use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_width, class_members, Permutation};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleKind {
    Any,
    Even,
    Conservative,
}

/// Seeded random permutation of `width` bits.
///
/// `Even` fixes up an odd shuffle by swapping the images of 0 and 1;
/// `Conservative` shuffles each weight class independently.
pub fn sample_permutation(width: u32, kind: SampleKind, seed: u64) -> Result<Permutation> {
    check_width(width)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = 1u32 << width;
    let map = match kind {
        SampleKind::Any | SampleKind::Even => {
            let mut map: Vec<u32> = (0..size).collect();
            map.shuffle(&mut rng);
            let mut p = Permutation::from_raw(width, map);
            if kind == SampleKind::Even && !p.parity().is_even() {
                p.map.swap(0, 1);
            }
            return Ok(p);
        }
        SampleKind::Conservative => {
            let mut map = vec![0u32; size as usize];
            for weight in 0..=width {
                let members = class_members(width, weight);
                let mut images = members.clone();
                images.shuffle(&mut rng);
                for (src, dst) in members.into_iter().zip(images) {
                    map[src as usize] = dst;
                }
            }
            map
        }
    };
    Ok(Permutation::from_raw(width, map))
}
