//! The maps between the families:
//!
//! * `phi` / `psi` between Fubini rankings and unit interval parking functions,
//! * `lambda` from even-block ordered set partitions onto partitions with no
//!   cyclical adjacencies, and its inverse,
//! * `gamma` from `(n-1)`-block ordered set partitions onto exceedances of
//!   permutations of `[n]`, and its inverse.

use serde::{Deserialize, Serialize};

use crate::blocks::block_structure;
use crate::error::{Error, Result};
use crate::fubini::{FubiniRanking, OrderedSetPartition};
use crate::parking::{is_unit_interval_pf, PreferenceList};

/// A permutation of `[n]` in one-line notation, `images[j - 1] = sigma(j)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `sigma(j)`, 1-based.
    pub fn image(&self, j: usize) -> usize {
        self.0[j - 1]
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// A permutation together with one of its exceedances `j` (`sigma(j) > j`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPointer")]
pub struct ExceedancePointer {
    perm: Permutation,
    index: usize,
}

#[derive(Deserialize)]
struct RawPointer {
    perm: Permutation,
    index: usize,
}

impl TryFrom<RawPointer> for ExceedancePointer {
    type Error = Error;

    fn try_from(r: RawPointer) -> Result<Self> {
        Self::new(r.perm, r.index)
    }
}

impl ExceedancePointer {
    pub fn new(perm: Permutation, index: usize) -> Result<Self> {
        let image = if index >= 1 && index <= perm.len() {
            perm.image(index)
        } else {
            0
        };
        if image <= index {
            return Err(Error::NotExceedance { index, image });
        }
        Ok(Self { perm, index })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

/// `a_i = b_i` on the first occurrence of a rank, `b_i + k - 2` on its `k`-th.
pub fn phi(fr: &FubiniRanking) -> PreferenceList {
    let n = fr.len();
    let mut seen = vec![0usize; n + 1];
    let out = fr
        .entries()
        .iter()
        .map(|&b| {
            seen[b] += 1;
            match seen[b] {
                1 => b,
                k => b + k - 2,
            }
        })
        .collect();
    PreferenceList::new_unchecked(out)
}

/// Replaces every entry by the least value of its block.
pub fn psi(upf: &PreferenceList) -> Result<FubiniRanking> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    let bs = block_structure(upf)?;
    let out = (0..upf.len()).map(|i| bs.block_min_at(i)).collect();
    Ok(FubiniRanking::new_unchecked(out))
}

/// Some block holds `j` and `j + 1`, or holds both `1` and `n`.
///
/// For `n = 1` the second clause is read literally: `1` and `n` are the same
/// element, so `({1})` counts as having a cyclical adjacency.
pub fn has_cyclical_adjacency_osp(osp: &OrderedSetPartition) -> bool {
    let n = osp.n();
    if n == 0 {
        return false;
    }
    let block_of = osp.block_index();
    (1..n).any(|j| block_of[j] == block_of[j + 1]) || block_of[1] == block_of[n]
}

/// Entries at consecutive positions (or at positions `1` and `n`) fall in the
/// same block. Same `n = 1` convention as [`has_cyclical_adjacency_osp`].
pub fn has_cyclical_adjacency_upf(upf: &PreferenceList) -> Result<bool> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    let n = upf.len();
    if n == 0 {
        return Ok(false);
    }
    let bs = block_structure(upf)?;
    let a = bs.assignment();
    Ok(a.windows(2).any(|w| w[0] == w[1]) || a[0] == a[n - 1])
}

fn cyclic_pred(x: usize, n: usize) -> usize {
    if x == 1 {
        n
    } else {
        x - 1
    }
}

fn cyclic_succ(x: usize, n: usize) -> usize {
    if x == n {
        1
    } else {
        x + 1
    }
}

/// Splits each block into maximal chains under the cyclic successor relation
/// and moves every second element of every chain into a new last block.
pub fn lambda(osp: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    let k = osp.num_blocks();
    if k % 2 != 0 {
        return Err(Error::OddBlockCount(k));
    }
    let n = osp.n();
    let block_of = osp.block_index();
    let mut kept_blocks = Vec::with_capacity(k + 1);
    let mut moved = Vec::new();

    for (j, block) in osp.blocks().iter().enumerate() {
        let mut kept = Vec::with_capacity(block.len());
        for &start in block {
            if block_of[cyclic_pred(start, n)] == j {
                continue;
            }
            // walk the chain start, start+1, ... while it stays in block j
            let mut x = start;
            let mut pos = 1;
            loop {
                if pos % 2 == 0 {
                    moved.push(x);
                } else {
                    kept.push(x);
                }
                let next = cyclic_succ(x, n);
                if block_of[next] != j || next == start {
                    break;
                }
                x = next;
                pos += 1;
            }
        }
        // a block equal to all of [n] has no chain start; it cannot occur
        // with an even, nonzero number of blocks
        debug_assert_eq!(kept.len() + moved.iter().filter(|&&m| block_of[m] == j).count(), block.len());
        kept.sort_unstable();
        kept_blocks.push(kept);
    }

    if !moved.is_empty() {
        moved.sort_unstable();
        kept_blocks.push(moved);
    }
    Ok(OrderedSetPartition::new_unchecked(kept_blocks, n))
}

/// Identity on an even number of blocks; otherwise each element of the last
/// block rejoins the block holding its cyclic predecessor.
pub fn lambda_inverse(osp: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    if has_cyclical_adjacency_osp(osp) {
        return Err(Error::CyclicalAdjacency);
    }
    let k = osp.num_blocks();
    if k % 2 == 0 {
        return Ok(osp.clone());
    }
    let n = osp.n();
    let block_of = osp.block_index();
    let mut blocks: Vec<Vec<usize>> = osp.blocks()[..k - 1].to_vec();
    for &x in &osp.blocks()[k - 1] {
        blocks[block_of[cyclic_pred(x, n)]].push(x);
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    Ok(OrderedSetPartition::new_unchecked(blocks, n))
}

/// Reads the elements block by block (the doubleton `{x, y}`, `x < y`,
/// contributes `x` then `y`), deletes `y` and reinserts it at position `x`.
/// The result carries its exceedance `x`.
pub fn gamma(osp: &OrderedSetPartition) -> Result<ExceedancePointer> {
    let n = osp.n();
    if n < 2 {
        return Err(Error::TooSmall {
            what: "gamma",
            n,
            min: 2,
        });
    }
    if osp.num_blocks() != n - 1 {
        return Err(Error::BlockCount {
            expected: n - 1,
            found: osp.num_blocks(),
        });
    }
    let doubleton = osp
        .blocks()
        .iter()
        .find(|b| b.len() == 2)
        .expect("n - 1 blocks covering [n] include exactly one doubleton");
    let (x, y) = (doubleton[0], doubleton[1]);
    let mut seq: Vec<usize> = osp.blocks().iter().flatten().copied().filter(|&v| v != y).collect();
    seq.insert(x - 1, y);
    let perm = Permutation(seq);
    Ok(ExceedancePointer { perm, index: x })
}

/// Deletes `sigma(j)` from the one-line notation, makes singletons of what is
/// left and merges `sigma(j)` into the singleton `{j}`.
pub fn gamma_inverse(ptr: &ExceedancePointer) -> OrderedSetPartition {
    let j = ptr.index;
    let v = ptr.perm.image(j);
    let n = ptr.perm.len();
    let blocks = ptr
        .perm
        .images()
        .iter()
        .enumerate()
        .filter(|&(pos, _)| pos + 1 != j)
        .map(|(_, &a)| if a == j { vec![j, v] } else { vec![a] })
        .collect();
    OrderedSetPartition::new_unchecked(blocks, n)
}

/// Indices `j` with `sigma(j) > j`, ascending.
pub fn exceedances(perm: &Permutation) -> Vec<usize> {
    perm.0
        .iter()
        .enumerate()
        .filter(|&(i, &v)| v > i + 1)
        .map(|(i, _)| i + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(v: &[usize]) -> PreferenceList {
        PreferenceList::new(v.to_vec()).unwrap()
    }

    fn fr(v: &[usize]) -> FubiniRanking {
        FubiniRanking::new(v.to_vec()).unwrap()
    }

    fn osp(v: &[&[usize]]) -> OrderedSetPartition {
        OrderedSetPartition::new(v.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&fr(&[3, 6, 3, 6, 5, 6, 1, 1, 9])).entries(),
            &[3, 6, 3, 6, 5, 7, 1, 1, 9]
        );
        assert_eq!(phi(&fr(&[1, 2, 3, 4])).entries(), &[1, 2, 3, 4]);
        assert_eq!(
            phi(&fr(&[2, 2, 5, 2, 5, 5, 1, 5, 5])).entries(),
            &[2, 2, 5, 3, 5, 6, 1, 7, 8]
        );
    }

    #[test]
    fn psi_examples() {
        assert_eq!(
            psi(&pl(&[2, 2, 5, 3, 5, 6, 1, 7, 8])).unwrap().entries(),
            &[2, 2, 5, 2, 5, 5, 1, 5, 5]
        );
        assert_eq!(psi(&pl(&[1, 2, 3])).unwrap().entries(), &[1, 2, 3]);
        let f = psi(&pl(&[1, 1, 2])).unwrap();
        assert_eq!(f.entries(), &[1, 1, 1]);
        assert_eq!(phi(&f), pl(&[1, 1, 2]));
        assert_eq!(psi(&pl(&[1, 5, 1, 3, 6, 2])), Err(Error::NotUnitInterval));
    }

    #[test]
    fn adjacency_osp_examples() {
        assert!(!has_cyclical_adjacency_osp(&osp(&[&[2, 4, 6], &[3, 5], &[1]])));
        assert!(has_cyclical_adjacency_osp(&osp(&[&[1, 2, 3], &[4], &[5, 6]])));
        assert!(has_cyclical_adjacency_osp(&osp(&[&[1, 2, 3, 4]])));
        assert!(has_cyclical_adjacency_osp(&osp(&[&[1, 4], &[2], &[3]])));
        assert!(has_cyclical_adjacency_osp(&osp(&[&[1]])));
    }

    #[test]
    fn adjacency_upf_examples() {
        assert!(!has_cyclical_adjacency_upf(&pl(&[1, 4, 1, 6, 2, 6, 4])).unwrap());
        assert!(has_cyclical_adjacency_upf(&pl(&[1, 1, 2])).unwrap());
        assert!(!has_cyclical_adjacency_upf(&pl(&[1, 2])).unwrap());
        assert!(has_cyclical_adjacency_upf(&pl(&[1])).unwrap());
        assert_eq!(
            has_cyclical_adjacency_upf(&pl(&[1, 1, 1])),
            Err(Error::NotUnitInterval)
        );
    }

    #[test]
    fn lambda_four_table() {
        let table: &[(&[&[usize]], &[&[usize]])] = &[
            (&[&[1, 2, 3], &[4]], &[&[1, 3], &[4], &[2]]),
            (&[&[4], &[1, 2, 3]], &[&[4], &[1, 3], &[2]]),
            (&[&[1], &[2, 3, 4]], &[&[1], &[2, 4], &[3]]),
            (&[&[2, 3, 4], &[1]], &[&[2, 4], &[1], &[3]]),
            (&[&[1, 2], &[3, 4]], &[&[1], &[3], &[2, 4]]),
            (&[&[3, 4], &[1, 2]], &[&[3], &[1], &[2, 4]]),
            (&[&[1, 3, 4], &[2]], &[&[1, 3], &[2], &[4]]),
            (&[&[2], &[1, 3, 4]], &[&[2], &[1, 3], &[4]]),
            (&[&[1, 4], &[2, 3]], &[&[4], &[2], &[1, 3]]),
            (&[&[2, 3], &[1, 4]], &[&[2], &[4], &[1, 3]]),
            (&[&[1, 2, 4], &[3]], &[&[2, 4], &[3], &[1]]),
            (&[&[3], &[1, 2, 4]], &[&[3], &[2, 4], &[1]]),
        ];
        for (input, want) in table {
            let got = lambda(&osp(input)).unwrap();
            assert_eq!(got, osp(want), "lambda{}", osp(input));
            assert_eq!(lambda_inverse(&got).unwrap(), osp(input));
        }
    }

    #[test]
    fn lambda_fixed_point_and_errors() {
        let b = osp(&[&[2, 4], &[1, 3]]);
        assert_eq!(lambda(&b).unwrap(), b);
        assert_eq!(lambda_inverse(&b).unwrap(), b);
        assert_eq!(lambda(&osp(&[&[1, 2, 3]])), Err(Error::OddBlockCount(1)));
        assert_eq!(
            lambda_inverse(&osp(&[&[1, 2], &[3]])),
            Err(Error::CyclicalAdjacency)
        );
    }

    #[test]
    fn lambda_inverse_examples() {
        assert_eq!(
            lambda_inverse(&osp(&[&[1, 3], &[4], &[2]])).unwrap(),
            osp(&[&[1, 2, 3], &[4]])
        );
        assert_eq!(
            lambda_inverse(&osp(&[&[4], &[2], &[1, 3]])).unwrap(),
            osp(&[&[1, 4], &[2, 3]])
        );
    }

    #[test]
    fn gamma_examples() {
        // the printed inputs list a block {9}; {4} is the only element of [8]
        // left over and reproduces both printed outputs
        let p = gamma(&osp(&[&[2], &[5], &[3, 7], &[1], &[6], &[8], &[4]])).unwrap();
        assert_eq!(p.perm().images(), &[2, 5, 7, 3, 1, 6, 8, 4]);
        assert_eq!(p.index(), 3);
        let p = gamma(&osp(&[&[5], &[7], &[3], &[1, 2], &[6], &[8], &[4]])).unwrap();
        assert_eq!(p.perm().images(), &[2, 5, 7, 3, 1, 6, 8, 4]);
        assert_eq!(p.index(), 1);
        let p = gamma(&osp(&[&[1, 2]])).unwrap();
        assert_eq!(p.perm().images(), &[2, 1]);
        assert_eq!(p.index(), 1);
    }

    #[test]
    fn gamma_errors() {
        assert_eq!(
            gamma(&osp(&[&[1, 2, 3], &[4, 5], &[6, 7, 8]])),
            Err(Error::BlockCount {
                expected: 7,
                found: 3
            })
        );
        assert!(matches!(gamma(&osp(&[&[1]])), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn gamma_inverse_examples() {
        let sigma = perm(&[2, 5, 7, 3, 1, 6, 8, 4]);
        let p = ExceedancePointer::new(sigma.clone(), 3).unwrap();
        assert_eq!(
            gamma_inverse(&p),
            osp(&[&[2], &[5], &[3, 7], &[1], &[6], &[8], &[4]])
        );
        let p = ExceedancePointer::new(sigma.clone(), 1).unwrap();
        assert_eq!(
            gamma_inverse(&p),
            osp(&[&[5], &[7], &[3], &[1, 2], &[6], &[8], &[4]])
        );
        let p = ExceedancePointer::new(perm(&[2, 1]), 1).unwrap();
        assert_eq!(gamma_inverse(&p), osp(&[&[1, 2]]));
        assert_eq!(
            ExceedancePointer::new(sigma, 4),
            Err(Error::NotExceedance { index: 4, image: 3 })
        );
    }

    #[test]
    fn exceedance_examples() {
        assert_eq!(exceedances(&perm(&[2, 4, 3, 1, 8, 5, 7, 6])), vec![1, 2, 5]);
        assert!(exceedances(&Permutation::identity(6)).is_empty());
        assert_eq!(exceedances(&perm(&[2, 3, 4, 5, 1])), vec![1, 2, 3, 4]);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
    }
}
