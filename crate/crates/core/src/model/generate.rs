use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AllotmentStructure;
use crate::{Error, Result};

/// Recipe for [`generate_structure`].
#[derive(Debug, Clone, PartialEq)]
pub enum StructureKind {
    /// `k` near-equal contiguous blocks, larger blocks first (number-in-hand).
    Partition,
    /// Player `i` holds every block of the partition except block `i`
    /// (number-on-forehead).
    Nof,
    /// Cyclic windows of `set_size` positions starting `stride` apart.
    EvenCyclic {
        set_size: usize,
        stride: Option<usize>,
    },
    /// Each position joins each set independently with probability `density`,
    /// then uncovered positions and empty sets are patched with seeded picks.
    RandomCovering { density: f64 },
    /// 1-based sets, validated and passed through.
    Explicit { sets: Vec<Vec<usize>> },
}

impl StructureKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Partition => "partition",
            Self::Nof => "nof",
            Self::EvenCyclic { .. } => "even_cyclic",
            Self::RandomCovering { .. } => "random_covering",
            Self::Explicit { .. } => "explicit",
        }
    }
}

/// Builds an allotment structure on `n` positions for `k` players.
/// Deterministic in all arguments; `seed` is only consulted by
/// [`StructureKind::RandomCovering`].
pub fn generate_structure(
    kind: &StructureKind,
    n: usize,
    k: usize,
    seed: u64,
) -> Result<AllotmentStructure> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    match kind {
        StructureKind::Partition => {
            if k > n {
                return Err(Error::InvalidParameter(format!(
                    "partition needs k <= n, got n={n}, k={k}"
                )));
            }
            AllotmentStructure::new(n, blocks(n, k))
        }
        StructureKind::Nof => {
            if k > n || k < 2 {
                return Err(Error::InvalidParameter(format!(
                    "nof needs 2 <= k <= n, got n={n}, k={k}"
                )));
            }
            let blocks = blocks(n, k);
            let sets = (0..k)
                .map(|own| {
                    blocks
                        .iter()
                        .enumerate()
                        .filter(|&(b, _)| b != own)
                        .flat_map(|(_, block)| block.iter().copied())
                        .collect()
                })
                .collect();
            AllotmentStructure::new(n, sets)
        }
        StructureKind::EvenCyclic { set_size, stride } => {
            let m = *set_size;
            if m == 0 || m > n {
                return Err(Error::InvalidParameter(format!(
                    "even_cyclic set size must lie in 1..={n}, got {m}"
                )));
            }
            let s = stride.unwrap_or(if k >= n { 1 } else { n / k });
            let sets = (0..k)
                .map(|i| (0..m).map(|t| (i * s + t) % n).collect())
                .collect();
            let structure = AllotmentStructure::new(n, sets)?;
            if !structure.is_covering() {
                return Err(Error::InvalidParameter(format!(
                    "even_cyclic with n={n}, k={k}, m={m}, stride={s} leaves positions uncovered"
                )));
            }
            Ok(structure)
        }
        StructureKind::RandomCovering { density } => {
            if !(0.0..=1.0).contains(density) {
                return Err(Error::InvalidParameter(format!(
                    "density must lie in [0, 1], got {density}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sets: Vec<Vec<usize>> = (0..k)
                .map(|_| (0..n).filter(|_| rng.gen_bool(*density)).collect())
                .collect();
            let mut covered = alloc::vec![false; n];
            for &i in sets.iter().flatten() {
                covered[i] = true;
            }
            for (i, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
                sets[rng.gen_range(0..k)].push(i);
            }
            for set in sets.iter_mut().filter(|s| s.is_empty()) {
                set.push(rng.gen_range(0..n));
            }
            AllotmentStructure::new(n, sets)
        }
        StructureKind::Explicit { sets } => {
            if sets.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "explicit structure has {} sets, expected k={k}",
                    sets.len()
                )));
            }
            AllotmentStructure::from_one_based(n, sets)
        }
    }
}

fn blocks(n: usize, k: usize) -> Vec<Vec<usize>> {
    let (base, extra) = (n / k, n % k);
    let mut start = 0;
    (0..k)
        .map(|b| {
            let len = base + usize::from(b < extra);
            let block = (start..start + len).collect();
            start += len;
            block
        })
        .collect()
}
