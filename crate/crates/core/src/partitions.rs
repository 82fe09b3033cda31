//! Enumeration primitives: set partitions by restricted growth strings,
//! ordered set partitions, compositions, and lexicographic permutation steps.

use crate::fubini::OrderedSetPartition;

/// Rearranges `v` into the next lexicographically greater permutation.
/// Returns `false` (leaving `v` sorted ascending) once the last one is passed.
/// Duplicates are handled, so this walks multiset permutations.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Restricted growth strings of length `n`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`. Each one names a set partition of `[n]`.
#[derive(Debug, Clone)]
pub struct RestrictedGrowthStrings {
    a: Vec<usize>,
    // prefix_max[i] = max(a[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowthStrings {
    pub fn new(n: usize) -> Self {
        Self {
            a: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.a.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.a[i] <= self.prefix_max[i - 1] {
                self.a[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.a[i]);
                for k in i + 1..n {
                    self.a[k] = 0;
                    self.prefix_max[k] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.a.clone())
    }
}

/// Converts a growth string into blocks (ordered by least element).
pub fn rgs_to_blocks(rgs: &[usize]) -> Vec<Vec<usize>> {
    let k = rgs.iter().max().map_or(0, |&m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b].push(i + 1);
    }
    blocks
}

/// All set partitions of `[n]`, blocks ordered by least element.
pub fn set_partitions(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    RestrictedGrowthStrings::new(n).map(|a| rgs_to_blocks(&a))
}

/// Every ordering of the blocks of a set partition, in lexicographic order of
/// the block permutation.
pub fn block_orderings(blocks: Vec<Vec<usize>>, n: usize) -> impl Iterator<Item = OrderedSetPartition> {
    let k = blocks.len();
    let mut order: Vec<usize> = (0..k).collect();
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
        } else if !next_permutation(&mut order) {
            return None;
        }
        let ordered = order.iter().map(|&j| blocks[j].clone()).collect();
        Some(OrderedSetPartition::new_unchecked(ordered, n))
    })
}

/// All ordered set partitions of `[n]`; `Fub_n` of them.
pub fn ordered_set_partitions(n: usize) -> impl Iterator<Item = OrderedSetPartition> {
    set_partitions(n).flat_map(move |blocks| block_orderings(blocks, n))
}

/// Calls `visit` on every composition of `n` (ordered, all parts >= 1)
/// accepted part-by-part by `allow(index, part)` where `index` is 1-based.
pub fn for_each_composition<A, F>(n: usize, allow: A, mut visit: F)
where
    A: Fn(usize, usize) -> bool,
    F: FnMut(&[usize]),
{
    fn go<A, F>(left: usize, parts: &mut Vec<usize>, allow: &A, visit: &mut F)
    where
        A: Fn(usize, usize) -> bool,
        F: FnMut(&[usize]),
    {
        if left == 0 {
            visit(parts);
            return;
        }
        let idx = parts.len() + 1;
        for c in 1..=left {
            if !allow(idx, c) {
                continue;
            }
            parts.push(c);
            go(left - c, parts, allow, visit);
            parts.pop();
        }
    }
    let mut parts = Vec::new();
    go(n, &mut parts, &allow, &mut visit);
}

/// Decodes `code` as a base-`n` tuple in `[n]^n`, least significant entry last
/// so that increasing codes walk tuples in lexicographic order.
pub fn decode_tuple(mut code: u64, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % n as u64) as usize + 1;
        code /= n as u64;
    }
}
