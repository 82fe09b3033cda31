//! Fubini rankings, ordered set partitions and the correspondence between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parking::PreferenceList;

/// A validated Fubini ranking: after a `k`-way tie at rank `x`, the next rank
/// used is `x + k`, and rank 1 is always present (for `n >= 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FubiniRanking(Vec<usize>);

impl FubiniRanking {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let pref = PreferenceList::new(entries)?;
        Self::try_from_preference(pref)
    }

    pub fn try_from_preference(pref: PreferenceList) -> Result<Self> {
        // the position-vector recursion doubles as the validator
        scan_position_vector(pref.entries())?;
        Ok(Self(pref.into_entries()))
    }

    pub(crate) fn new_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(is_fubini_ranking(&PreferenceList::new_unchecked(entries.clone())));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn to_preference(&self) -> PreferenceList {
        PreferenceList::new_unchecked(self.0.clone())
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }
}

impl TryFrom<Vec<usize>> for FubiniRanking {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FubiniRanking> for Vec<usize> {
    fn from(f: FubiniRanking) -> Self {
        f.0
    }
}

/// A composition of `n` recording, rank by rank, how many entries tie there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionVector(Vec<usize>);

impl PositionVector {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }
}

/// Walks rank 1, then `1 + c_1`, then `1 + c_1 + c_2`, ... and fails if the
/// walk does not account for every entry.
fn scan_position_vector(entries: &[usize]) -> Result<Vec<usize>> {
    let n = entries.len();
    let mut mult = vec![0usize; n + 2];
    for &v in entries {
        if v == 0 || v > n {
            return Err(Error::NotFubiniRanking(format!("entry {v} outside [1, {n}]")));
        }
        mult[v] += 1;
    }
    let mut parts = Vec::new();
    let mut rank = 1;
    let mut consumed = 0;
    while consumed < n {
        let c = mult[rank];
        if c == 0 {
            return Err(Error::NotFubiniRanking(format!(
                "expected rank {rank} after consuming {consumed} of {n} entries"
            )));
        }
        parts.push(c);
        consumed += c;
        rank += c;
    }
    Ok(parts)
}

pub fn is_fubini_ranking(t: &PreferenceList) -> bool {
    scan_position_vector(t.entries()).is_ok()
}

/// Distinct values, ascending.
pub fn ranks(fr: &FubiniRanking) -> Vec<usize> {
    let mut r = fr.0.clone();
    r.sort_unstable();
    r.dedup();
    r
}

pub fn position_vector(fr: &FubiniRanking) -> PositionVector {
    let parts = scan_position_vector(&fr.0).expect("FubiniRanking invariant violated");
    PositionVector(parts)
}

/// Multiplicity of each rank, in ascending rank order (same as the position
/// vector, keyed by rank).
pub fn tie_counts(fr: &FubiniRanking) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut rank = 1;
    for c in position_vector(fr).into_parts() {
        out.push((rank, c));
        rank += c;
    }
    out
}

/// An ordered set partition `(B_1, ..., B_k)` of `[n]`; each block is kept
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl OrderedSetPartition {
    /// Blocks may be given in any internal order; they are sorted on the way in.
    /// The ground set size is the total number of elements.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        Self::with_ground_set(blocks, n)
    }

    pub fn with_ground_set(mut blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut total = 0;
        for (j, b) in blocks.iter_mut().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", j + 1)));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside [1, {n}]"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!("element {x} repeated")));
                }
                seen[x] = true;
                total += 1;
            }
        }
        if total != n {
            let missing = (1..=n).find(|&x| !seen[x]).unwrap_or(0);
            return Err(Error::InvalidPartition(format!("element {missing} missing")));
        }
        Ok(Self { blocks, n })
    }

    pub(crate) fn new_unchecked(blocks: Vec<Vec<usize>>, n: usize) -> Self {
        debug_assert!(Self::with_ground_set(blocks.clone(), n).is_ok());
        Self { blocks, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// `block_of[x]` is the 0-based index of the block holding `x`
    /// (`block_of[0]` is unused).
    pub fn block_index(&self) -> Vec<usize> {
        let mut block_of = vec![usize::MAX; self.n + 1];
        for (j, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = j;
            }
        }
        block_of
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

impl TryFrom<Vec<Vec<usize>>> for OrderedSetPartition {
    type Error = Error;

    fn try_from(v: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<OrderedSetPartition> for Vec<Vec<usize>> {
    fn from(p: OrderedSetPartition) -> Self {
        p.blocks
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// `b_i = 1 + |B_1| + ... + |B_{j-1}|` where `i` lies in `B_j`.
pub fn osp_to_fr(osp: &OrderedSetPartition) -> FubiniRanking {
    let mut b = vec![0; osp.n];
    let mut rank = 1;
    for block in &osp.blocks {
        for &i in block {
            b[i - 1] = rank;
        }
        rank += block.len();
    }
    FubiniRanking::new_unchecked(b)
}

/// Groups positions by rank value; blocks come out in ascending rank order.
pub fn fr_to_osp(fr: &FubiniRanking) -> OrderedSetPartition {
    let n = fr.len();
    let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, &r) in fr.0.iter().enumerate() {
        by_rank[r].push(i + 1);
    }
    let blocks = by_rank.into_iter().filter(|b| !b.is_empty()).collect();
    OrderedSetPartition::new_unchecked(blocks, n)
}
