//! The three restriction types, for Fubini rankings and for unit interval
//! parking functions:
//!
//! | type | Fubini ranking                         | unit interval PF                |
//! |------|----------------------------------------|---------------------------------|
//! | 1    | number of distinct ranks lies in `S`   | number of lucky cars lies in `S`|
//! | 2    | every tie size lies in `S`             | every block size lies in `S`    |
//! | 3    | `c_i <= s_i` for the position vector   | `|pi_i| <= s_i` for the blocks  |
//!
//! Infinite restriction sets and sequences have closed finite descriptions;
//! no statistic involved ever exceeds `n`, so every use reduces to `S ∩ [n]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bijections::phi;
use crate::blocks::block_structure;
use crate::error::{Error, Result};
use crate::fubini::{osp_to_fr, position_vector, ranks, tie_counts, FubiniRanking, OrderedSetPartition};
use crate::parking::{is_unit_interval_pf, PreferenceList};
use crate::partitions::{block_orderings, set_partitions};

/// A subset of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RestrictionSet {
    Explicit(BTreeSet<usize>),
    Evens,
    Odds,
    AtLeast(usize),
    AtMost(usize),
    All,
}

impl RestrictionSet {
    pub fn explicit<I: IntoIterator<Item = usize>>(items: I) -> Result<Self> {
        let set: BTreeSet<usize> = items.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Unsupported("explicit restriction set must be nonempty".into()));
        }
        if set.contains(&0) {
            return Err(Error::Unsupported("restriction set elements must be >= 1".into()));
        }
        Ok(Self::Explicit(set))
    }

    pub fn contains(&self, k: usize) -> bool {
        if k == 0 {
            return false;
        }
        match self {
            Self::Explicit(s) => s.contains(&k),
            Self::Evens => k % 2 == 0,
            Self::Odds => k % 2 == 1,
            Self::AtLeast(m) => k >= *m,
            Self::AtMost(m) => k <= *m,
            Self::All => true,
        }
    }

    /// `S ∩ [n]`, ascending.
    pub fn effective_for(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&k| self.contains(k)).collect()
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, Self::Explicit(_))
    }
}

impl fmt::Display for RestrictionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Explicit(s) => {
                let items: Vec<String> = s.iter().map(usize::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            Self::Evens => write!(f, "evens"),
            Self::Odds => write!(f, "odds"),
            Self::AtLeast(m) => write!(f, ">={m}"),
            Self::AtMost(m) => write!(f, "<={m}"),
            Self::All => write!(f, "all"),
        }
    }
}

fn parse_error(position: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Parses a positive integer occupying `tok`, which starts at byte `offset`
/// of the original input.
fn parse_positive(tok: &str, offset: usize) -> Result<usize> {
    let lead = tok.len() - tok.trim_start().len();
    let t = tok.trim();
    match t.parse::<usize>() {
        Ok(0) => Err(parse_error(offset + lead, t, "expected a positive integer")),
        Ok(v) => Ok(v),
        Err(_) => Err(parse_error(offset + lead, t, "expected a positive integer")),
    }
}

/// Grammar: `evens | odds | all | >=m | <=m | {a,b,c}`.
impl FromStr for RestrictionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        match t {
            "evens" => return Ok(Self::Evens),
            "odds" => return Ok(Self::Odds),
            "all" => return Ok(Self::All),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix(">=") {
            return Ok(Self::AtLeast(parse_positive(rest, lead + 2)?));
        }
        if let Some(rest) = t.strip_prefix("<=") {
            return Ok(Self::AtMost(parse_positive(rest, lead + 2)?));
        }
        if let Some(inner) = t.strip_prefix('{') {
            let Some(inner) = inner.strip_suffix('}') else {
                return Err(parse_error(lead + t.len(), "", "missing closing '}'"));
            };
            let mut items = BTreeSet::new();
            let mut offset = lead + 1;
            for tok in inner.split(',') {
                items.insert(parse_positive(tok, offset)?);
                offset += tok.len() + 1;
            }
            return Self::explicit(items);
        }
        let token = t.split(|c: char| c.is_whitespace()).next().unwrap_or("");
        Err(parse_error(
            lead,
            token,
            "expected evens, odds, all, >=m, <=m or {a,b,...}",
        ))
    }
}

/// How a block sequence continues past its explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    Constant(usize),
    Unbounded,
}

/// A sequence `(s_1, s_2, ...)` of positive caps: an explicit prefix followed
/// by a tail rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictionSequence {
    prefix: Vec<usize>,
    tail: Tail,
}

impl RestrictionSequence {
    pub fn new(prefix: Vec<usize>, tail: Tail) -> Result<Self> {
        if prefix.contains(&0) || tail == Tail::Constant(0) {
            return Err(Error::Unsupported("sequence terms must be >= 1".into()));
        }
        Ok(Self { prefix, tail })
    }

    pub fn constant(c: usize) -> Result<Self> {
        Self::new(Vec::new(), Tail::Constant(c))
    }

    pub fn unbounded() -> Self {
        Self {
            prefix: Vec::new(),
            tail: Tail::Unbounded,
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `s_i` for 1-based `i`; `None` means no cap.
    pub fn term(&self, i: usize) -> Option<usize> {
        assert!(i >= 1, "sequence terms are 1-based");
        match self.prefix.get(i - 1) {
            Some(&s) => Some(s),
            None => match self.tail {
                Tail::Constant(c) => Some(c),
                Tail::Unbounded => None,
            },
        }
    }

    /// Whether a part of size `size` is allowed in slot `i`.
    pub fn allows(&self, i: usize, size: usize) -> bool {
        self.term(i).map_or(true, |s| size <= s)
    }
}

impl fmt::Display for RestrictionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.prefix.iter().map(usize::to_string).collect();
        write!(f, "{};", items.join(","))?;
        match self.tail {
            Tail::Constant(c) => write!(f, "const:{c}"),
            Tail::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Grammar: `s1,s2,...,sm;const:c` or `s1,...,sm;unbounded`. The prefix may
/// be empty; the tail rule may not.
impl FromStr for RestrictionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(semi) = s.find(';') else {
            return Err(parse_error(
                s.len(),
                "",
                "missing ';' and tail rule (use ';const:c' or ';unbounded')",
            ));
        };
        let (head, tail) = (&s[..semi], &s[semi + 1..]);
        let mut prefix = Vec::new();
        if !head.trim().is_empty() {
            let mut offset = 0;
            for tok in head.split(',') {
                prefix.push(parse_positive(tok, offset)?);
                offset += tok.len() + 1;
            }
        }
        let tail_off = semi + 1;
        let lead = tail.len() - tail.trim_start().len();
        let t = tail.trim();
        let tail = if t == "unbounded" {
            Tail::Unbounded
        } else if let Some(c) = t.strip_prefix("const:") {
            Tail::Constant(parse_positive(c, tail_off + lead + 6)?)
        } else {
            return Err(parse_error(
                tail_off + lead,
                t,
                "expected tail rule 'const:c' or 'unbounded'",
            ));
        };
        Self::new(prefix, tail)
    }
}

/// One of the three restriction types with its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Restriction {
    T1(RestrictionSet),
    T2(RestrictionSet),
    T3(RestrictionSequence),
}

impl Restriction {
    /// Whether an ordered set partition lands in the restricted family under
    /// the partition/ranking correspondence.
    pub fn admits_osp(&self, osp: &OrderedSetPartition) -> bool {
        match self {
            Self::T1(s) => s.contains(osp.num_blocks()),
            Self::T2(s) => osp.blocks().iter().all(|b| s.contains(b.len())),
            Self::T3(seq) => osp
                .blocks()
                .iter()
                .enumerate()
                .all(|(i, b)| seq.allows(i + 1, b.len())),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::T1(s) => write!(f, "T1[{s}]"),
            Self::T2(s) => write!(f, "T2[{s}]"),
            Self::T3(s) => write!(f, "T3[{s}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Fr,
    Upf,
}

pub fn fr_t1_member(fr: &FubiniRanking, s: &RestrictionSet) -> bool {
    s.contains(ranks(fr).len())
}

pub fn upf_t1_member(upf: &PreferenceList, s: &RestrictionSet) -> Result<bool> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    let lucky = crate::parking::lucky_cars(upf)?;
    Ok(s.contains(lucky.len()))
}

pub fn fr_t2_member(fr: &FubiniRanking, s: &RestrictionSet) -> bool {
    tie_counts(fr).iter().all(|&(_, c)| s.contains(c))
}

pub fn upf_t2_member(upf: &PreferenceList, s: &RestrictionSet) -> Result<bool> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    let bs = block_structure(upf)?;
    Ok(bs.blocks().iter().all(|b| s.contains(b.size)))
}

pub fn fr_t3_member(fr: &FubiniRanking, seq: &RestrictionSequence) -> bool {
    position_vector(fr)
        .parts()
        .iter()
        .enumerate()
        .all(|(i, &c)| seq.allows(i + 1, c))
}

pub fn upf_t3_member(upf: &PreferenceList, seq: &RestrictionSequence) -> Result<bool> {
    if !is_unit_interval_pf(upf) {
        return Err(Error::NotUnitInterval);
    }
    let bs = block_structure(upf)?;
    Ok(bs
        .blocks()
        .iter()
        .enumerate()
        .all(|(i, b)| seq.allows(i + 1, b.size)))
}

/// Membership of a raw tuple in a restricted family. Tuples outside the
/// unrestricted family are simply not members.
pub fn is_member(family: Family, t: &PreferenceList, r: &Restriction) -> bool {
    match family {
        Family::Fr => {
            let Ok(fr) = FubiniRanking::try_from_preference(t.clone()) else {
                return false;
            };
            match r {
                Restriction::T1(s) => fr_t1_member(&fr, s),
                Restriction::T2(s) => fr_t2_member(&fr, s),
                Restriction::T3(seq) => fr_t3_member(&fr, seq),
            }
        }
        Family::Upf => match r {
            Restriction::T1(s) => upf_t1_member(t, s),
            Restriction::T2(s) => upf_t2_member(t, s),
            Restriction::T3(seq) => upf_t3_member(t, seq),
        }
        .unwrap_or(false),
    }
}

/// Ordered set partitions of `[n]` admitted by `restriction` (all of them for
/// `None`). Set partitions are filtered on block count and sizes before any
/// block order is generated.
pub fn generate_osps(
    n: usize,
    restriction: Option<Restriction>,
) -> impl Iterator<Item = OrderedSetPartition> {
    let unordered_ok = {
        let r = restriction.clone();
        move |blocks: &Vec<Vec<usize>>| match &r {
            Some(Restriction::T1(s)) => n == 0 || s.contains(blocks.len()),
            Some(Restriction::T2(s)) => blocks.iter().all(|b| s.contains(b.len())),
            _ => true,
        }
    };
    set_partitions(n)
        .filter(unordered_ok)
        .flat_map(move |blocks| block_orderings(blocks, n))
        .filter(move |osp| match &restriction {
            Some(r @ Restriction::T3(_)) => r.admits_osp(osp),
            _ => true,
        })
}

/// Members of a restricted family of length `n`, each exactly once, built from
/// ordered set partitions through `osp_to_fr` (and `phi` for parking
/// functions). For `n = 0` the only member is the empty tuple.
pub fn generate_family(
    n: usize,
    family: Family,
    restriction: Option<Restriction>,
) -> impl Iterator<Item = PreferenceList> {
    generate_osps(n, restriction).map(move |osp| {
        let fr = osp_to_fr(&osp);
        match family {
            Family::Fr => fr.to_preference(),
            Family::Upf => phi(&fr),
        }
    })
}
