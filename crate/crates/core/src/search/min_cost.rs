//! Minimum-cost search over simultaneous-message protocols.
//!
//! A candidate protocol gives each player `j` a message length `b_j` and a
//! table from its own-value assignments to `b_j`-bit labels. It is correct
//! when, for every player, inputs that agree on the blackboard and on that
//! player's own values never disagree on the function value: each player can
//! determine the answer from what it sees.
//!
//! Single-blind candidates are evaluated on the target structure alone. In
//! double-blind mode a player cannot tell which structure it is in, so a
//! candidate assigns each player one table per possible own set and must be
//! correct on the whole *blind family*: every covering structure in which
//! each player's set has the same size as in the target. Each player is
//! assumed to know its own id and the sizes `N` and `k`.
//!
//! Three reductions keep the enumeration small:
//!
//! * Relabeling a player's messages by a bijection does not change
//!   correctness, so tables are enumerated as restricted growth strings.
//! * Splitting a label in two never breaks a correct protocol, so a player
//!   given `b` bits only needs tables with exactly `min(2^b, len)` labels,
//!   and `b` is useless once `2^(b-1) ≥ len`.
//! * Once every other table is fixed, the remaining player's table is a
//!   proper colouring of a conflict graph on its own assignments with at
//!   most `2^b` colours, found by backtracking instead of enumeration.
//!
//! Length vectors are tried in order of (total, vector), so the first
//! correct candidate has minimum cost.

use alloc::vec;
use alloc::vec::Vec;

use super::{assignment_id, DEFAULT_CEILING};
use crate::model::{
    input_space_size, AllotmentStructure, Blindness, DiscreteInputs, MacroscopeSpec, TargetFunction,
};
use crate::{Error, Result};

/// A bounded search problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    function: TargetFunction,
    structure: AllotmentStructure,
    blindness: Blindness,
    budget: usize,
    ceiling: u64,
}

impl SearchSpace {
    pub fn new(
        function: TargetFunction,
        structure: AllotmentStructure,
        blindness: Blindness,
        budget: usize,
    ) -> Result<Self> {
        if !function.is_boolean() {
            return Err(Error::InvalidParameter(alloc::format!(
                "{function} cannot be searched; only Boolean functions have finite inputs"
            )));
        }
        // validates covering and non-empty sets
        let spec = MacroscopeSpec::new(function, structure, blindness)?;
        Ok(Self {
            function,
            structure: spec.structure().clone(),
            blindness,
            budget,
            ceiling: DEFAULT_CEILING,
        })
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn function(&self) -> &TargetFunction {
        &self.function
    }

    pub fn structure(&self) -> &AllotmentStructure {
        &self.structure
    }

    pub fn blindness(&self) -> Blindness {
        self.blindness
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    /// Structures the players cannot tell apart: just the target when
    /// single-blind, the blind family when double-blind. The target is first.
    pub fn family(&self) -> Result<Vec<AllotmentStructure>> {
        match self.blindness {
            Blindness::SingleBlind => Ok(vec![self.structure.clone()]),
            Blindness::DoubleBlind => blind_family(&self.structure, &self.function, self.ceiling),
        }
    }
}

/// Labels for one player's possible own set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageTable {
    /// 0-based positions.
    pub own_set: Vec<usize>,
    /// Label for each own-value assignment, indexed in counting order with
    /// the smallest own position most significant.
    pub labels: Vec<u64>,
}

/// A correct protocol found by the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub lengths: Vec<u32>,
    /// Per player, one table per possible own set.
    pub tables: Vec<Vec<MessageTable>>,
}

impl Witness {
    pub fn cost(&self) -> usize {
        self.lengths.iter().map(|&b| b as usize).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// `None` when no correct protocol costs at most the budget.
    pub min_cost: Option<usize>,
    pub witness: Option<Witness>,
    /// Number of candidate protocols checked.
    pub explored: u64,
    pub budget: usize,
}

/// Every covering structure whose set sizes match `target`'s, target first,
/// the rest in lexicographic order of their sets.
fn blind_family(
    target: &AllotmentStructure,
    function: &TargetFunction,
    ceiling: u64,
) -> Result<Vec<AllotmentStructure>> {
    let n = target.n();
    let options: Vec<Vec<Vec<usize>>> = target
        .sets()
        .iter()
        .map(|s| subsets_of_size(n, s.len()))
        .collect();
    let total: u128 = options.iter().map(|o| o.len() as u128).product();
    if total > u128::from(ceiling) {
        return Err(Error::CeilingExceeded {
            size: total,
            ceiling,
        });
    }
    let mut family = vec![target.clone()];
    let mut choice = vec![0usize; options.len()];
    loop {
        let sets: Vec<Vec<usize>> = choice
            .iter()
            .zip(&options)
            .map(|(&c, o)| o[c].clone())
            .collect();
        let candidate = AllotmentStructure::new(n, sets)?;
        if candidate != *target
            && candidate.is_covering()
            && MacroscopeSpec::new(*function, candidate.clone(), Blindness::DoubleBlind).is_ok()
        {
            family.push(candidate);
        }
        if !advance(&mut choice, |p| options[p].len()) {
            break;
        }
    }
    Ok(family)
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect::<alloc::collections::BTreeSet<Vec<usize>>>()
        .into_iter()
        .collect()
}

/// Odometer step; `false` after the last combination.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for p in (0..digits.len()).rev() {
        digits[p] += 1;
        if digits[p] < radix(p) {
            return true;
        }
        digits[p] = 0;
    }
    false
}

/// Precomputed facts about the family shared by every candidate.
struct Prepared {
    /// Possible own sets per player.
    player_sets: Vec<Vec<Vec<usize>>>,
    /// Offset of each (player, set) table within the player's concatenation.
    offsets: Vec<Vec<usize>>,
    /// Concatenated table length per player.
    table_len: Vec<usize>,
    /// Number of own-value assignments per (player, set).
    assignments: Vec<Vec<usize>>,
    cases: Vec<Case>,
}

/// One (structure, input) pair.
struct Case {
    value: u8,
    /// Per player: (set slot, own assignment id).
    own: Vec<(usize, usize)>,
}

fn prepare(space: &SearchSpace, family: &[AllotmentStructure]) -> Result<Prepared> {
    let alphabet = space
        .function
        .alphabet()
        .expect("search spaces are Boolean");
    let n = space.structure.n();
    let k = space.structure.k();
    let mut player_sets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    for s in family {
        for (p, sets) in player_sets.iter_mut().enumerate() {
            if !sets.iter().any(|t| t.as_slice() == s.set(p)) {
                sets.push(s.set(p).to_vec());
            }
        }
    }
    let assignments: Vec<Vec<usize>> = player_sets
        .iter()
        .map(|sets| {
            sets.iter()
                .map(|t| (alphabet as usize).pow(t.len() as u32))
                .collect()
        })
        .collect();
    let offsets: Vec<Vec<usize>> = assignments
        .iter()
        .map(|sizes| {
            sizes
                .iter()
                .scan(0, |acc, &m| {
                    let off = *acc;
                    *acc += m;
                    Some(off)
                })
                .collect()
        })
        .collect();
    let table_len = assignments.iter().map(|a| a.iter().sum()).collect();

    let inputs: Vec<Vec<u32>> = DiscreteInputs::new(n, alphabet).collect();
    let mut cases = Vec::with_capacity(family.len() * inputs.len());
    for s in family {
        let slots: Vec<usize> = (0..k)
            .map(|p| {
                player_sets[p]
                    .iter()
                    .position(|t| t.as_slice() == s.set(p))
                    .expect("every family set is registered")
            })
            .collect();
        for x in &inputs {
            let own = (0..k)
                .map(|p| {
                    let values: Vec<u32> = s.set(p).iter().map(|&i| x[i]).collect();
                    (slots[p], assignment_id(&values, alphabet))
                })
                .collect();
            cases.push(Case {
                value: space.function.eval_discrete(x)?,
                own,
            });
        }
    }
    Ok(Prepared {
        player_sets,
        offsets,
        table_len,
        assignments,
        cases,
    })
}

/// Label count a `bits`-bit message needs for a table of `len` entries, or
/// `None` when fewer bits would do.
fn exact_blocks(bits: u32, len: usize) -> Option<usize> {
    if bits == 0 {
        return Some(1);
    }
    if bits >= usize::BITS - 1 || 1usize << (bits - 1) >= len {
        return None;
    }
    Some((1usize << bits).min(len))
}

/// Restricted growth strings of length `len` using between `lo` and `hi`
/// distinct labels, in lexicographic order.
fn growth_strings(len: usize, lo: usize, hi: usize) -> Vec<Vec<u64>> {
    fn rec(
        prefix: &mut Vec<u64>,
        used: usize,
        len: usize,
        lo: usize,
        hi: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        let left = len - prefix.len();
        if used + left < lo {
            return;
        }
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=used.min(hi - 1) {
            prefix.push(label as u64);
            rec(prefix, used.max(label + 1), len, lo, hi, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if lo <= 1 && hi >= 1 {
            // an empty table still counts as the single "silent" strategy
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut Vec::with_capacity(len), 0, len, lo, hi, &mut out);
    out
}

/// Number of growth strings `growth_strings(len, lo, hi)` would return.
fn count_growth_strings(len: usize, lo: usize, hi: usize) -> u128 {
    if len == 0 {
        return u128::from(lo <= 1 && hi >= 1);
    }
    // Stirling numbers of the second kind, row by row.
    let top = hi.min(len);
    let mut row = vec![0u128; top + 1];
    row[0] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; top + 1];
        for c in 1..=top {
            next[c] = row[c - 1].saturating_add((c as u128).saturating_mul(row[c]));
        }
        row = next;
    }
    (lo.max(1)..=top)
        .map(|c| row[c])
        .fold(0u128, u128::saturating_add)
}

/// Length vectors summing to `total`, lexicographically.
fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for b in 0..=left {
            prefix.push(b as u32);
            rec(left - b, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Largest table the colouring step handles.
const COLOURABLE: usize = 128;

/// Checks one fully enumerated candidate; `scratch` holds one
/// determinability table per (player, set slot).
fn is_correct(
    prep: &Prepared,
    lengths: &[u32],
    strategies: &[&[u64]],
    scratch: &mut [Vec<Vec<u8>>],
) -> bool {
    const UNSEEN: u8 = u8::MAX;
    for tables in scratch.iter_mut() {
        for t in tables.iter_mut() {
            t.fill(UNSEEN);
        }
    }
    for case in &prep.cases {
        let mut board = 0usize;
        for (p, &(slot, own)) in case.own.iter().enumerate() {
            let label = strategies[p][prep.offsets[p][slot] + own] as usize;
            board = (board << lengths[p]) | label;
        }
        for (p, &(slot, own)) in case.own.iter().enumerate() {
            let cell = &mut scratch[p][slot][board * prep.assignments[p][slot] + own];
            if *cell == UNSEEN {
                *cell = case.value;
            } else if *cell != case.value {
                return false;
            }
        }
    }
    true
}

/// Completes a candidate whose tables are fixed except player `q`'s.
///
/// Two cases that look the same to some reader (same own entry, same labels
/// from everyone but `q`) and differ in value force `q` to label its own
/// entries in them differently. `groups` is scratch space indexed by
/// (reader entry, partial board) holding one bitset of `q` entries per value.
fn colour_last(
    prep: &Prepared,
    lengths: &[u32],
    strategies: &[&[u64]],
    q: usize,
    groups: &mut [Vec<[u128; 2]>],
) -> Option<Vec<u64>> {
    let boards = |case: &Case| {
        case.own
            .iter()
            .enumerate()
            .fold(0usize, |acc, (p, &(slot, own))| {
                if p == q {
                    acc
                } else {
                    let label = strategies[p][prep.offsets[p][slot] + own] as usize;
                    (acc << lengths[p]) | label
                }
            })
    };
    let width = 1usize << (lengths.iter().sum::<u32>() - lengths[q]);
    let entry = |p: usize, (slot, own): (usize, usize)| prep.offsets[p][slot] + own;
    let len = prep.table_len[q];
    let mut adjacent = vec![0u128; len];

    for case in &prep.cases {
        let board = boards(case);
        let mine = 1u128 << entry(q, case.own[q]);
        for (p, &own) in case.own.iter().enumerate() {
            groups[p][entry(p, own) * width + board][usize::from(case.value)] |= mine;
        }
    }
    for case in &prep.cases {
        let board = boards(case);
        let mine = entry(q, case.own[q]);
        for (p, &own) in case.own.iter().enumerate() {
            let cell = groups[p][entry(p, own) * width + board];
            adjacent[mine] |= cell[1 - usize::from(case.value)];
        }
    }
    for case in &prep.cases {
        let board = boards(case);
        for (p, &own) in case.own.iter().enumerate() {
            groups[p][entry(p, own) * width + board] = [0, 0];
        }
    }
    if (0..len).any(|v| adjacent[v] >> v & 1 == 1) {
        return None;
    }
    colour(&adjacent, 1usize << lengths[q])
}

/// A proper colouring with at most `colours` colours, each vertex taking a
/// colour at most one above those before it.
fn colour(adjacent: &[u128], colours: usize) -> Option<Vec<u64>> {
    fn rec(v: usize, used: usize, adjacent: &[u128], colours: usize, out: &mut Vec<u64>) -> bool {
        if v == adjacent.len() {
            return true;
        }
        for c in 0..=used.min(colours - 1) {
            let clash = (0..v).any(|u| adjacent[v] >> u & 1 == 1 && out[u] == c as u64);
            if clash {
                continue;
            }
            out.push(c as u64);
            if rec(v + 1, used.max(c + 1), adjacent, colours, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut out = Vec::with_capacity(adjacent.len());
    rec(0, 0, adjacent, colours, &mut out).then_some(out)
}

/// Finds the cheapest correct protocol within `space.budget()` bits.
pub fn min_cost_search(space: &SearchSpace) -> Result<SearchResult> {
    let alphabet = space.function.alphabet().unwrap_or(2);
    let inputs = input_space_size(space.structure.n(), alphabet)
        .filter(|&size| size <= space.ceiling)
        .ok_or(Error::CeilingExceeded {
            size: u128::from(alphabet).saturating_pow(space.structure.n() as u32),
            ceiling: space.ceiling,
        })?;
    let family = space.family()?;
    let cases = u128::from(inputs) * family.len() as u128;
    if cases > u128::from(space.ceiling) {
        return Err(Error::CeilingExceeded {
            size: cases,
            ceiling: space.ceiling,
        });
    }
    let prep = prepare(space, &family)?;
    let k = prep.table_len.len();
    let mut spent: u128 = 0;
    let mut explored: u64 = 0;

    let useful: usize = prep
        .table_len
        .iter()
        .map(|&len| crate::bits::ceil_log2(len as u64) as usize)
        .sum();
    for total in 0..=space.budget.min(useful) {
        for lengths in compositions(total, k) {
            let blocks: Option<Vec<usize>> = lengths
                .iter()
                .zip(&prep.table_len)
                .map(|(&b, &len)| exact_blocks(b, len))
                .collect();
            let Some(blocks) = blocks else { continue };
            let counts: Vec<u128> = blocks
                .iter()
                .zip(&prep.table_len)
                .map(|(&c, &len)| count_growth_strings(len, c, c))
                .collect();
            let last = (0..k)
                .filter(|&p| prep.table_len[p] <= COLOURABLE)
                .max_by_key(|&p| counts[p]);
            let size = (0..k)
                .filter(|&p| Some(p) != last)
                .map(|p| counts[p])
                .fold(1u128, u128::saturating_mul);
            if size == 0 {
                continue;
            }
            spent = spent.saturating_add(size.saturating_mul(cases));
            if spent > u128::from(space.ceiling) {
                return Err(Error::CeilingExceeded {
                    size: spent,
                    ceiling: space.ceiling,
                });
            }

            let per_player: Vec<Vec<Vec<u64>>> = (0..k)
                .map(|p| {
                    if Some(p) == last {
                        vec![Vec::new()]
                    } else {
                        growth_strings(prep.table_len[p], blocks[p], blocks[p])
                    }
                })
                .collect();
            let partial = 1usize << (total - last.map_or(0, |q| lengths[q] as usize));
            let mut groups: Vec<Vec<[u128; 2]>> = prep
                .table_len
                .iter()
                .map(|&len| {
                    if last.is_some() {
                        vec![[0, 0]; len * partial]
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            let mut scratch: Vec<Vec<Vec<u8>>> = prep
                .assignments
                .iter()
                .map(|sizes| {
                    sizes
                        .iter()
                        .map(|&m| {
                            if last.is_none() {
                                vec![0u8; (1usize << total) * m]
                            } else {
                                Vec::new()
                            }
                        })
                        .collect()
                })
                .collect();

            let mut choice = vec![0usize; k];
            loop {
                let mut strategies: Vec<&[u64]> = choice
                    .iter()
                    .enumerate()
                    .map(|(p, &c)| per_player[p][c].as_slice())
                    .collect();
                explored += 1;
                let completed = match last {
                    Some(q) => colour_last(&prep, &lengths, &strategies, q, &mut groups),
                    None => is_correct(&prep, &lengths, &strategies, &mut scratch).then(Vec::new),
                };
                if let Some(labels) = completed {
                    if let Some(q) = last {
                        strategies[q] = &labels;
                    }
                    let witness = build_witness(&prep, &lengths, &strategies);
                    return Ok(SearchResult {
                        min_cost: Some(total),
                        witness: Some(witness),
                        explored,
                        budget: space.budget,
                    });
                }
                if !advance(&mut choice, |p| per_player[p].len()) {
                    break;
                }
            }
        }
    }
    Ok(SearchResult {
        min_cost: None,
        witness: None,
        explored,
        budget: space.budget,
    })
}

fn build_witness(prep: &Prepared, lengths: &[u32], strategies: &[&[u64]]) -> Witness {
    let tables = prep
        .player_sets
        .iter()
        .enumerate()
        .map(|(p, sets)| {
            sets.iter()
                .enumerate()
                .map(|(slot, set)| {
                    let start = prep.offsets[p][slot];
                    let end = start + prep.assignments[p][slot];
                    MessageTable {
                        own_set: set.clone(),
                        labels: strategies[p][start..end].to_vec(),
                    }
                })
                .collect()
        })
        .collect();
    Witness {
        lengths: lengths.to_vec(),
        tables,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_string_counts_match_stirling() {
        // S(4,2) = 7, S(4,3) = 6, S(4,4) = 1, Bell(4) = 15
        assert_eq!(growth_strings(4, 2, 2).len(), 7);
        assert_eq!(count_growth_strings(4, 2, 2), 7);
        assert_eq!(growth_strings(4, 3, 4).len(), 7);
        assert_eq!(count_growth_strings(4, 3, 4), 7);
        assert_eq!(growth_strings(4, 1, 4).len(), 15);
        assert_eq!(count_growth_strings(8, 1, 8), 4140);
        assert_eq!(growth_strings(3, 5, 8).len(), 0);
        assert_eq!(count_growth_strings(3, 5, 8), 0);
        assert_eq!(growth_strings(0, 1, 1), vec![Vec::<u64>::new()]);
        for s in growth_strings(5, 1, 3) {
            let mut max_seen = 0;
            for (i, &l) in s.iter().enumerate() {
                assert!(l <= max_seen + u64::from(i > 0));
                max_seen = max_seen.max(l);
            }
        }
    }

    #[test]
    fn composition_order() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(3, 3).len(), 10);
    }

    fn singletons(n: usize) -> AllotmentStructure {
        AllotmentStructure::from_one_based(n, &(1..=n).map(|i| vec![i]).collect::<Vec<_>>())
            .unwrap()
    }

    fn search(
        f: TargetFunction,
        s: AllotmentStructure,
        b: Blindness,
        budget: usize,
    ) -> SearchResult {
        min_cost_search(&SearchSpace::new(f, s, b, budget).unwrap()).unwrap()
    }

    fn verify_witness(f: TargetFunction, s: AllotmentStructure, b: Blindness) {
        let space = SearchSpace::new(f, s.clone(), b, 8).unwrap();
        let result = min_cost_search(&space).unwrap();
        let witness = result.witness.unwrap();
        assert_eq!(Some(witness.cost()), result.min_cost);
        let protocol = crate::search::WitnessProtocol::new(&space, witness).unwrap();
        for member in space.family().unwrap() {
            let spec = MacroscopeSpec::new(f, member, b).unwrap();
            let report =
                crate::search::exhaustive_verify(&protocol, &spec, DEFAULT_CEILING).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn exact_block_counts() {
        assert_eq!(exact_blocks(0, 4), Some(1));
        assert_eq!(exact_blocks(1, 4), Some(2));
        assert_eq!(exact_blocks(2, 4), Some(4));
        assert_eq!(exact_blocks(3, 4), None);
        assert_eq!(exact_blocks(2, 3), Some(3));
        assert_eq!(exact_blocks(1, 1), None);
    }

    #[test]
    fn colouring() {
        // triangle plus a pendant vertex
        let adj = [0b0110u128, 0b0101, 0b1011, 0b0100];
        assert_eq!(colour(&adj, 2), None);
        let c = colour(&adj, 3).unwrap();
        assert_eq!(c, vec![0, 1, 2, 0]);
    }

    #[test]
    fn parity_singletons() {
        let r = search(
            TargetFunction::Parity,
            singletons(2),
            Blindness::SingleBlind,
            4,
        );
        assert_eq!(r.min_cost, Some(2));
        let r = search(
            TargetFunction::Parity,
            singletons(2),
            Blindness::SingleBlind,
            1,
        );
        assert_eq!(r.min_cost, None);
        assert!(r.witness.is_none());
        let r = search(
            TargetFunction::Parity,
            singletons(3),
            Blindness::SingleBlind,
            5,
        );
        assert_eq!(r.min_cost, Some(3));
    }

    #[test]
    fn constancy_cases() {
        let c2 = TargetFunction::Constancy { d: 2 };
        assert_eq!(
            search(c2, singletons(2), Blindness::SingleBlind, 4).min_cost,
            Some(2)
        );
        let full = AllotmentStructure::from_one_based(2, &[vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(
            search(c2, full, Blindness::SingleBlind, 4).min_cost,
            Some(0)
        );
        // players 2 and 3 each announce one equality; player 1 reads both
        let star =
            AllotmentStructure::from_one_based(3, &[vec![1], vec![1, 2], vec![1, 3]]).unwrap();
        assert_eq!(
            search(c2, star, Blindness::SingleBlind, 6).min_cost,
            Some(2)
        );
        let c3 = TargetFunction::Constancy { d: 3 };
        assert_eq!(
            search(c3, singletons(2), Blindness::SingleBlind, 6).min_cost,
            Some(4)
        );
    }

    #[test]
    fn witnesses_verify() {
        verify_witness(
            TargetFunction::Parity,
            singletons(3),
            Blindness::SingleBlind,
        );
        verify_witness(TargetFunction::Bsf, singletons(3), Blindness::SingleBlind);
        let chain = AllotmentStructure::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        verify_witness(
            TargetFunction::Constancy { d: 2 },
            chain.clone(),
            Blindness::SingleBlind,
        );
        verify_witness(
            TargetFunction::Constancy { d: 2 },
            chain,
            Blindness::DoubleBlind,
        );
        verify_witness(TargetFunction::Bsf, singletons(2), Blindness::DoubleBlind);
    }

    #[test]
    fn double_blind_never_cheaper_and_budget_monotone() {
        let structures = [
            singletons(2),
            singletons(3),
            AllotmentStructure::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap(),
            AllotmentStructure::from_one_based(3, &[vec![1, 2], vec![3]]).unwrap(),
        ];
        for f in [
            TargetFunction::Parity,
            TargetFunction::Bsf,
            TargetFunction::Constancy { d: 2 },
        ] {
            for s in &structures {
                let sb = search(f, s.clone(), Blindness::SingleBlind, 8)
                    .min_cost
                    .unwrap();
                if s.k() == s.n() {
                    let db = search(f, s.clone(), Blindness::DoubleBlind, 8)
                        .min_cost
                        .unwrap();
                    assert!(db >= sb, "{f} {s}: db {db} < sb {sb}");
                }
                for budget in 0..8 {
                    let r = search(f, s.clone(), Blindness::SingleBlind, budget);
                    assert_eq!(r.min_cost, (budget >= sb).then_some(sb));
                }
            }
        }
    }

    #[test]
    fn ceilings() {
        let space = SearchSpace::new(
            TargetFunction::Parity,
            singletons(3),
            Blindness::SingleBlind,
            3,
        )
        .unwrap()
        .with_ceiling(4);
        assert!(matches!(
            min_cost_search(&space),
            Err(Error::CeilingExceeded { .. })
        ));
        let avg = SearchSpace::new(
            TargetFunction::Average { epsilon: 0.5 },
            singletons(2),
            Blindness::SingleBlind,
            3,
        );
        assert!(avg.is_err());
    }

    #[test]
    fn family_of_singletons() {
        let s = AllotmentStructure::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        let fam = blind_family(&s, &TargetFunction::Parity, DEFAULT_CEILING).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0], s);
        assert_eq!(fam[1].to_one_based(), vec![vec![2], vec![1]]);
    }
}
