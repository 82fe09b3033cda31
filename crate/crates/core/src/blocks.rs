//! Block structure of (unit interval) parking functions.
//!
//! The sorted tuple `a'_1 <= ... <= a'_n` is cut in front of every index `i`
//! with `a'_i = i`. For a unit interval parking function each block then reads
//! `k, k, k+1, ..., k+l-2` with `k` its least value and `l` its size, so a
//! block is fully described by `(min_value, size)`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::multinomial;
use crate::error::{Error, Result};
use crate::parking::{is_parking_function, is_unit_interval_pf, PreferenceList};
use crate::partitions::next_permutation;
use crate::restricted::RestrictionSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub min_value: usize,
    pub size: usize,
}

impl Block {
    /// Sorted content in the canonical unit-interval form.
    pub fn canonical_content(&self) -> Vec<usize> {
        let k = self.min_value;
        match self.size {
            0 => vec![],
            1 => vec![k],
            l => std::iter::once(k).chain(k..=k + l - 2).collect(),
        }
    }

    /// Values `[min_value, min_value + size)` are the only ones the block can hold.
    pub fn value_range(&self) -> std::ops::Range<usize> {
        self.min_value..self.min_value + self.size
    }
}

/// Blocks in sorted order plus, for every position of the original tuple, the
/// 0-based index of the block its value falls in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    blocks: Vec<Block>,
    assignment: Vec<usize>,
}

impl BlockStructure {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Least value of the block holding position `i` (0-based).
    pub fn block_min_at(&self, i: usize) -> usize {
        self.blocks[self.assignment[i]].min_value
    }
}

/// Works for any parking function; the unit-interval results only hold when
/// the input is a unit interval parking function.
pub fn block_structure(pf: &PreferenceList) -> Result<BlockStructure> {
    if !is_parking_function(pf) {
        return Err(Error::NotParkingFunction);
    }
    let sorted = pf.sorted();
    let n = sorted.len();
    let mut starts: Vec<usize> = (1..=n).filter(|&i| sorted[i - 1] == i).collect();
    starts.push(n + 1);
    let blocks: Vec<Block> = starts
        .windows(2)
        .map(|w| Block {
            min_value: w[0],
            size: w[1] - w[0],
        })
        .collect();

    // a'_i <= i keeps every value of block j inside [start_j, start_{j+1})
    let mut block_of_value = vec![usize::MAX; n + 1];
    for (j, b) in blocks.iter().enumerate() {
        for v in b.value_range() {
            block_of_value[v] = j;
        }
    }
    let assignment = pf.entries().iter().map(|&v| block_of_value[v]).collect();
    Ok(BlockStructure { blocks, assignment })
}

fn checked_upf_structure(upf: &PreferenceList) -> Result<BlockStructure> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    block_structure(upf)
}

/// `n! / (|pi_1|! ... |pi_k|!)`.
pub fn rearrangement_count(bs: &BlockStructure) -> BigUint {
    multinomial(&bs.sizes())
}

/// Rearrangements of a unit interval parking function that keep the relative
/// order inside every block, i.e. all shuffles of the block words. Distinct
/// blocks hold disjoint values and a block's word is forced, so every shuffle
/// is a distinct tuple.
pub fn enumerate_rearrangements(upf: &PreferenceList) -> Result<Rearrangements> {
    let bs = checked_upf_structure(upf)?;
    let words = bs.blocks.iter().map(Block::canonical_content).collect();
    let mut labels = bs.assignment.clone();
    labels.sort_unstable();
    Ok(Rearrangements {
        words,
        labels,
        first: true,
    })
}

/// Iterator returned by [`enumerate_rearrangements`].
#[derive(Debug, Clone)]
pub struct Rearrangements {
    words: Vec<Vec<usize>>,
    labels: Vec<usize>,
    first: bool,
}

impl Iterator for Rearrangements {
    type Item = PreferenceList;

    fn next(&mut self) -> Option<PreferenceList> {
        if self.first {
            self.first = false;
        } else if !next_permutation(&mut self.labels) {
            return None;
        }
        let mut cursor = vec![0; self.words.len()];
        let out = self
            .labels
            .iter()
            .map(|&j| {
                let v = self.words[j][cursor[j]];
                cursor[j] += 1;
                v
            })
            .collect();
        Some(PreferenceList::new_unchecked(out))
    }
}

/// Block sizes equal `s_1, ..., s_k` exactly.
pub fn is_fully_determined(upf: &PreferenceList, seq: &RestrictionSequence) -> Result<bool> {
    let bs = checked_upf_structure(upf)?;
    Ok(bs
        .blocks
        .iter()
        .enumerate()
        .all(|(i, b)| seq.term(i + 1) == Some(b.size)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restricted::Tail;

    fn pl(v: &[usize]) -> PreferenceList {
        PreferenceList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn structure_examples() {
        let bs = block_structure(&pl(&[7, 5, 1, 1, 5, 7, 2, 8, 3])).unwrap();
        assert_eq!(bs.sizes(), vec![4, 2, 3]);
        assert_eq!(
            bs.blocks().iter().map(|b| b.min_value).collect::<Vec<_>>(),
            vec![1, 5, 7]
        );
        assert_eq!(bs.assignment(), &[2, 1, 0, 0, 1, 2, 0, 2, 0]);

        // (1,4,4,1,5,2,7,6) sorts to 11244567 and a'_8 = 7, so by the cut rule
        // 7 joins the middle block; the tuple is a PF but not unit interval.
        let odd = pl(&[1, 4, 4, 1, 5, 2, 7, 6]);
        assert_eq!(block_structure(&odd).unwrap().sizes(), vec![3, 5]);
        assert!(!is_unit_interval_pf(&odd));
        // with the last-but-one entry 8, the cut is 112|4456|8
        let bs = block_structure(&pl(&[1, 4, 4, 1, 5, 2, 8, 6])).unwrap();
        assert_eq!(bs.sizes(), vec![3, 4, 1]);
        assert_eq!(bs.blocks()[1].canonical_content(), vec![4, 4, 5, 6]);

        let bs = block_structure(&pl(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(bs.sizes(), vec![1; 5]);
    }

    #[test]
    fn third_block_of_psi_example_is_five_long() {
        let bs = block_structure(&pl(&[2, 2, 5, 3, 5, 6, 1, 7, 8])).unwrap();
        assert_eq!(bs.sizes(), vec![1, 3, 5]);
        assert_eq!(bs.blocks()[2].canonical_content(), vec![5, 5, 6, 7, 8]);
    }

    #[test]
    fn non_pf_rejected() {
        assert_eq!(block_structure(&pl(&[2, 2])), Err(Error::NotParkingFunction));
    }

    #[test]
    fn multinomial_examples() {
        let bs = block_structure(&pl(&[7, 5, 1, 1, 5, 7, 2, 8, 3])).unwrap();
        assert_eq!(rearrangement_count(&bs), BigUint::from(1260u32));
        let single = block_structure(&pl(&[1, 1, 2, 3])).unwrap();
        assert_eq!(rearrangement_count(&single), BigUint::from(1u32));
        let id = block_structure(&pl(&[1, 2, 3, 4])).unwrap();
        assert_eq!(rearrangement_count(&id), BigUint::from(24u32));
    }

    #[test]
    fn rearrangements_resolve_duplicates() {
        // brute force: of the three arrangements of the multiset {1,1,2} only
        // the sorted one is unit interval
        let got: Vec<_> = enumerate_rearrangements(&pl(&[1, 1, 2]))
            .unwrap()
            .map(PreferenceList::into_entries)
            .collect();
        assert_eq!(got, vec![vec![1, 1, 2]]);
        assert!(!is_unit_interval_pf(&pl(&[1, 2, 1])));
        assert!(!is_unit_interval_pf(&pl(&[2, 1, 1])));

        let mut got: Vec<_> = enumerate_rearrangements(&pl(&[1, 1, 3]))
            .unwrap()
            .map(PreferenceList::into_entries)
            .collect();
        got.sort();
        assert_eq!(got, vec![vec![1, 1, 3], vec![1, 3, 1], vec![3, 1, 1]]);

        let got: Vec<_> = enumerate_rearrangements(&pl(&[1])).unwrap().collect();
        assert_eq!(got, vec![pl(&[1])]);
    }

    #[test]
    fn fully_determined_examples() {
        let s = RestrictionSequence::new(vec![4, 2, 2, 3], Tail::Unbounded).unwrap();
        assert!(is_fully_determined(&pl(&[5, 1, 5, 7, 1, 2, 9, 9, 3, 10, 7]), &s).unwrap());
        let s = RestrictionSequence::new(vec![2, 2, 1, 3, 1], Tail::Constant(1)).unwrap();
        assert!(is_fully_determined(&pl(&[3, 6, 3, 6, 5, 7, 1, 1, 9]), &s).unwrap());
        let s = RestrictionSequence::new(vec![], Tail::Constant(9)).unwrap();
        assert!(!is_fully_determined(&pl(&[3, 6, 3, 6, 5, 7, 1, 1, 9]), &s).unwrap());
        assert_eq!(
            is_fully_determined(&pl(&[1, 5, 1, 3, 6, 2]), &s),
            Err(Error::NotUnitInterval)
        );
    }
}
