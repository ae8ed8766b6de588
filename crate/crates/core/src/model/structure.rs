use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::IntersectionGraph;
use crate::{Error, Result};

/// A sequence of `k` index sets over the positions `0..n`.
///
/// Positions are 0-based internally; [`AllotmentStructure::from_one_based`]
/// and [`AllotmentStructure::to_one_based`] convert at the boundary. Each set
/// is kept sorted and deduplicated. Covering is *not* enforced here so that a
/// raw structure that violates it can still be inspected; see
/// [`AllotmentStructure::is_covering`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AllotmentStructure {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl AllotmentStructure {
    /// Builds a structure from 0-based index sets.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if sets.is_empty() {
            return Err(Error::InvalidParameter(
                "an allotment needs at least one player".into(),
            ));
        }
        let mut sets = sets;
        for set in &mut sets {
            if let Some(&bad) = set.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad + 1, n });
            }
            set.sort_unstable();
            set.dedup();
        }
        Ok(Self { n, sets })
    }

    /// Builds a structure from 1-based index sets, as found in files.
    pub fn from_one_based(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let shifted = sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|&i| {
                        if i == 0 || i > n {
                            Err(Error::IndexOutOfRange { index: i, n })
                        } else {
                            Ok(i - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, shifted)
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|s| s.iter().map(|i| i + 1).collect())
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of players.
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The 0-based index set of `player` (0-based).
    pub fn set(&self, player: usize) -> &[usize] {
        &self.sets[player]
    }

    pub fn contains(&self, player: usize, index: usize) -> bool {
        self.sets[player].binary_search(&index).is_ok()
    }

    /// Number of sets holding `index`.
    pub fn multiplicity(&self, index: usize) -> usize {
        self.sets
            .iter()
            .filter(|s| s.binary_search(&index).is_ok())
            .count()
    }

    /// Multiplicity of every position, in index order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for set in &self.sets {
            for &i in set {
                counts[i] += 1;
            }
        }
        counts
    }

    /// 0-based positions that no player holds.
    pub fn uncovered(&self) -> Vec<usize> {
        self.multiplicities()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_covering(&self) -> bool {
        self.multiplicities().iter().all(|&c| c > 0)
    }

    /// `Err(Uncovered)` naming the first uncovered position.
    pub fn check_covering(&self) -> Result<()> {
        match self.uncovered().first() {
            Some(&i) => Err(Error::Uncovered { index: i + 1 }),
            None => Ok(()),
        }
    }

    /// The common multiplicity `C` if the structure is even: every position
    /// in exactly `C` sets and all sets the same size (then `|S_i| = N·C/k`).
    pub fn evenness(&self) -> Option<usize> {
        let counts = self.multiplicities();
        let c = counts[0];
        if c == 0 || counts.iter().any(|&m| m != c) {
            return None;
        }
        let size = self.sets[0].len();
        if self.sets.iter().any(|s| s.len() != size) {
            return None;
        }
        debug_assert_eq!(size * self.k(), self.n * c);
        Some(c)
    }

    /// Lowest-numbered player holding `index`: the one that announces it.
    pub fn responsible_player(&self, index: usize) -> Result<usize> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                n: self.n,
            });
        }
        self.sets
            .iter()
            .position(|s| s.binary_search(&index).is_ok())
            .ok_or(Error::Uncovered { index: index + 1 })
    }

    /// For each player, the ascending positions it is responsible for.
    pub fn responsibilities(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.k()];
        for index in 0..self.n {
            out[self.responsible_player(index)?].push(index);
        }
        Ok(out)
    }

    pub fn intersection_graph(&self) -> IntersectionGraph {
        IntersectionGraph::of(self)
    }
}

impl fmt::Display for AllotmentStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} ", self.n)?;
        for (p, set) in self.sets.iter().enumerate() {
            if p > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, i) in set.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
