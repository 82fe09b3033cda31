//! Exhaustive ground truth for small `n`.
//!
//! Tuples are scanned over all of `[n]^n` as base-`n` codes cut into chunks of
//! [`CHUNK`] codes. Chunks run in parallel and their partial results are
//! merged in code order, so tables and lists are identical from run to run.
//! Ordered set partitions come from restricted growth strings with every
//! block order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::bijections::{
    exceedances, gamma, gamma_inverse, has_cyclical_adjacency_osp, lambda, lambda_inverse, phi,
    psi, ExceedancePointer, Permutation,
};
use crate::blocks::{block_structure, enumerate_rearrangements, is_fully_determined, rearrangement_count};
use crate::counting::{
    egf_closed_form, egf_coefficients, exceedance_total, fr_t2_count, fr_t3_count, fubini,
    fubini_by_compositions, fubini_by_recurrence, fully_determined_count, parking_function_count,
    stirling2, t1_count, t1_evens_closed, t2_count, with_empty_convention,
};
use crate::error::{Error, Result};
use crate::fubini::{fr_to_osp, is_fubini_ranking, osp_to_fr, position_vector, ranks, FubiniRanking, OrderedSetPartition};
use crate::parking::{is_parking_function, is_unit_interval_pf, lucky_cars, PreferenceList};
use crate::partitions::{block_orderings, decode_tuple, next_permutation, ordered_set_partitions, set_partitions};
use crate::restricted::{generate_family, is_member, Family, Restriction, RestrictionSequence, RestrictionSet, Tail};

/// Number of base-`n` codes handled by one parallel work item.
pub const CHUNK: u64 = 4096;

/// Largest `n` each exhaustive scan accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Scans over `[n]^n`.
    pub tuple_n: usize,
    /// Scans over ordered set partitions of `[n]`.
    pub osp_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { tuple_n: 7, osp_n: 8 }
    }
}

impl Caps {
    pub fn check_tuple(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.tuple_n {
            return Err(Error::CapExceeded {
                what,
                n,
                cap: self.tuple_n,
            });
        }
        Ok(())
    }

    pub fn check_osp(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.osp_n {
            return Err(Error::CapExceeded {
                what,
                n,
                cap: self.osp_n,
            });
        }
        Ok(())
    }
}

/// The unrestricted families a tuple of `[n]^n` can be tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TupleFamily {
    Pf,
    Upf,
    Fr,
}

impl From<Family> for TupleFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Fr => Self::Fr,
            Family::Upf => Self::Upf,
        }
    }
}

/// Runs `visit` over every tuple of `[n]^n` and returns one accumulator per
/// chunk, in code order.
fn scan_tuples<T, I, V>(n: usize, init: I, visit: V) -> Vec<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, PreferenceList) + Sync,
{
    let total = (n as u64).pow(n as u32);
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let mut buf = vec![0; n];
            for code in c * CHUNK..((c + 1) * CHUNK).min(total) {
                decode_tuple(code, n, &mut buf);
                visit(&mut acc, PreferenceList::new_unchecked(buf.clone()));
            }
            acc
        })
        .collect()
}

fn as_pairs<K: Serialize, S: Serializer>(map: &BTreeMap<K, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(map.iter())
}

fn merge_counts<K: Ord>(into: &mut BTreeMap<K, u64>, from: BTreeMap<K, u64>) {
    for (k, v) in from {
        *into.entry(k).or_default() += v;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedCount {
    pub family: Family,
    pub restriction: Restriction,
    pub count: u64,
}

/// Classification of every tuple of `[n]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CensusTable {
    pub n: usize,
    pub pf: u64,
    pub upf: u64,
    pub fr: u64,
    /// Unit interval PFs by number of lucky cars.
    pub lucky_counts: BTreeMap<usize, u64>,
    /// Fubini rankings by number of distinct ranks.
    pub rank_counts: BTreeMap<usize, u64>,
    /// Unit interval PFs by block sizes, sorted ascending.
    #[serde(serialize_with = "as_pairs")]
    pub block_profiles: BTreeMap<Vec<usize>, u64>,
    /// Fubini rankings by position vector.
    #[serde(serialize_with = "as_pairs")]
    pub position_vectors: BTreeMap<Vec<usize>, u64>,
    pub restricted: Vec<RestrictedCount>,
}

impl CensusTable {
    fn merge(&mut self, other: CensusTable) {
        self.pf += other.pf;
        self.upf += other.upf;
        self.fr += other.fr;
        merge_counts(&mut self.lucky_counts, other.lucky_counts);
        merge_counts(&mut self.rank_counts, other.rank_counts);
        merge_counts(&mut self.block_profiles, other.block_profiles);
        merge_counts(&mut self.position_vectors, other.position_vectors);
        for (mine, theirs) in self.restricted.iter_mut().zip(other.restricted) {
            mine.count += theirs.count;
        }
    }
}

pub fn census(n: usize, caps: &Caps) -> Result<CensusTable> {
    census_with(n, caps, &[])
}

/// [`census`] plus the size of each requested restricted family.
pub fn census_with(n: usize, caps: &Caps, restrictions: &[(Family, Restriction)]) -> Result<CensusTable> {
    caps.check_tuple("census", n)?;
    let empty = || CensusTable {
        n,
        restricted: restrictions
            .iter()
            .map(|(family, restriction)| RestrictedCount {
                family: *family,
                restriction: restriction.clone(),
                count: 0,
            })
            .collect(),
        ..CensusTable::default()
    };
    let parts = scan_tuples(n, empty, |table, t| {
        if is_parking_function(&t) {
            table.pf += 1;
            if is_unit_interval_pf(&t) {
                table.upf += 1;
                let lucky = lucky_cars(&t).expect("a PF parks everyone").len();
                *table.lucky_counts.entry(lucky).or_default() += 1;
                let mut sizes = block_structure(&t).expect("a PF has blocks").sizes();
                sizes.sort_unstable();
                *table.block_profiles.entry(sizes).or_default() += 1;
            }
        }
        if let Ok(fr) = FubiniRanking::try_from_preference(t.clone()) {
            table.fr += 1;
            *table.rank_counts.entry(ranks(&fr).len()).or_default() += 1;
            *table.position_vectors.entry(position_vector(&fr).into_parts()).or_default() += 1;
        }
        for (slot, (family, r)) in table.restricted.iter_mut().zip(restrictions) {
            if is_member(*family, &t, r) {
                slot.count += 1;
            }
        }
    });
    let mut table = empty();
    for part in parts {
        table.merge(part);
    }
    Ok(table)
}

fn tuple_predicate<'a>(
    family: TupleFamily,
    restriction: Option<&'a Restriction>,
) -> Result<impl Fn(&PreferenceList) -> bool + Sync + 'a> {
    if family == TupleFamily::Pf && restriction.is_some() {
        return Err(Error::Unsupported(
            "restrictions apply to unit interval PFs and Fubini rankings only".into(),
        ));
    }
    Ok(move |t: &PreferenceList| match (family, restriction) {
        (TupleFamily::Pf, _) => is_parking_function(t),
        (TupleFamily::Upf, None) => is_unit_interval_pf(t),
        (TupleFamily::Fr, None) => is_fubini_ranking(t),
        (TupleFamily::Upf, Some(r)) => is_member(Family::Upf, t, r),
        (TupleFamily::Fr, Some(r)) => is_member(Family::Fr, t, r),
    })
}

/// Every member of the family, found by filtering `[n]^n`, in lexicographic
/// order.
pub fn brute_force_family(
    n: usize,
    family: TupleFamily,
    restriction: Option<&Restriction>,
    caps: &Caps,
) -> Result<Vec<PreferenceList>> {
    caps.check_tuple("brute_force_family", n)?;
    let keep = tuple_predicate(family, restriction)?;
    let parts = scan_tuples(n, Vec::new, |found, t| {
        if keep(&t) {
            found.push(t);
        }
    });
    Ok(parts.into_iter().flatten().collect())
}

pub fn brute_force_count(
    n: usize,
    family: TupleFamily,
    restriction: Option<&Restriction>,
    caps: &Caps,
) -> Result<u64> {
    caps.check_tuple("brute_force_count", n)?;
    let keep = tuple_predicate(family, restriction)?;
    let parts = scan_tuples(n, || 0u64, |count, t| {
        if keep(&t) {
            *count += 1;
        }
    });
    Ok(parts.into_iter().sum())
}

/// Cyclical adjacency with the pair `(1, n)` only counted when `1 != n`.
fn has_adjacency_distinct_endpoints(osp: &OrderedSetPartition) -> bool {
    let n = osp.n();
    let block_of = osp.block_index();
    (1..n).any(|j| block_of[j] == block_of[j + 1]) || (n >= 2 && block_of[1] == block_of[n])
}

/// Counts over all ordered set partitions of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct OspCensus {
    pub n: usize,
    pub total: u64,
    /// Partitions with an even number of blocks.
    pub even_blocks: u64,
    /// Partitions with no cyclical adjacency, `1` and `n` counted as a pair
    /// even when they coincide.
    pub adjacency_free: u64,
    /// Same, but the pair `(1, n)` needs `n >= 2`. Differs from
    /// `adjacency_free` only at `n = 1`.
    pub adjacency_free_distinct_endpoints: u64,
    /// Partitions with exactly `n - 1` blocks.
    pub near_singleton: u64,
    pub by_block_count: BTreeMap<usize, u64>,
    #[serde(serialize_with = "as_pairs")]
    pub by_size_profile: BTreeMap<Vec<usize>, u64>,
}

impl OspCensus {
    fn merge(&mut self, other: OspCensus) {
        self.total += other.total;
        self.even_blocks += other.even_blocks;
        self.adjacency_free += other.adjacency_free;
        self.adjacency_free_distinct_endpoints += other.adjacency_free_distinct_endpoints;
        self.near_singleton += other.near_singleton;
        merge_counts(&mut self.by_block_count, other.by_block_count);
        merge_counts(&mut self.by_size_profile, other.by_size_profile);
    }
}

pub fn osp_census(n: usize, caps: &Caps) -> Result<OspCensus> {
    caps.check_osp("osp_census", n)?;
    let unordered: Vec<Vec<Vec<usize>>> = set_partitions(n).collect();
    let parts: Vec<OspCensus> = unordered
        .into_par_iter()
        .map(|blocks| {
            let mut c = OspCensus { n, ..OspCensus::default() };
            for osp in block_orderings(blocks, n) {
                let k = osp.num_blocks();
                c.total += 1;
                c.even_blocks += u64::from(k % 2 == 0);
                c.adjacency_free += u64::from(!has_cyclical_adjacency_osp(&osp));
                c.adjacency_free_distinct_endpoints += u64::from(!has_adjacency_distinct_endpoints(&osp));
                c.near_singleton += u64::from(k + 1 == n);
                *c.by_block_count.entry(k).or_default() += 1;
                *c.by_size_profile.entry(osp.block_sizes()).or_default() += 1;
            }
            c
        })
        .collect();
    let mut total = OspCensus { n, ..OspCensus::default() };
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}

/// The restriction sets exercised at length `n`: evens, odds, `{1}`, `{2}`,
/// `{n - 1}` (for `n >= 2`) and at most 2.
pub fn set_battery(n: usize) -> Vec<RestrictionSet> {
    let mut sets = vec![
        RestrictionSet::Evens,
        RestrictionSet::Odds,
        RestrictionSet::explicit([1]).unwrap(),
        RestrictionSet::explicit([2]).unwrap(),
    ];
    if n >= 2 {
        sets.push(RestrictionSet::explicit([n - 1]).unwrap());
    }
    sets.push(RestrictionSet::AtMost(2));
    sets
}

/// `(1, 1, ...)`, `(2, 2, ...)` and `(2, 4, 6, 8, 8, ...)`.
pub fn sequence_battery() -> Vec<RestrictionSequence> {
    vec![
        RestrictionSequence::constant(1).unwrap(),
        RestrictionSequence::constant(2).unwrap(),
        RestrictionSequence::new(vec![2, 4, 6], Tail::Constant(8)).unwrap(),
    ]
}

/// Every restriction of the battery at length `n`, all three types.
pub fn restriction_battery(n: usize) -> Vec<Restriction> {
    let sets = set_battery(n);
    sets.iter()
        .cloned()
        .map(Restriction::T1)
        .chain(sets.iter().cloned().map(Restriction::T2))
        .chain(sequence_battery().into_iter().map(Restriction::T3))
        .collect()
}

/// Deliberate mistakes that the suite must catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// The expected Fubini number is one too large for every `n >= 1`.
    FubiniOffByOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub caps: Caps,
    pub fault: Option<Fault>,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        Self {
            n_max,
            caps: Caps::default(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub instances: u64,
    pub passed: bool,
    /// First failing instance, smallest `n` first.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub fault: Option<Fault>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify n_max={}", self.n_max)?;
        if let Some(fault) = self.fault {
            writeln!(f, "fault injected: {fault:?}")?;
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {:<32} {:>8} instances  {}", c.name, c.instances, c.description)?;
            if let Some(ce) = &c.counterexample {
                write!(f, "\n     counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        if !self.notes.is_empty() {
            writeln!(f, "notes:")?;
            for note in &self.notes {
                writeln!(f, "  - {note}")?;
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

struct Check {
    name: &'static str,
    description: &'static str,
    instances: u64,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str, description: &'static str) -> Self {
        Self {
            name,
            description,
            instances: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            description: self.description,
            instances: self.instances,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

/// Brute-force families of one length.
struct Universe {
    n: usize,
    pf: u64,
    upf: Vec<PreferenceList>,
    fr: Vec<PreferenceList>,
}

impl Universe {
    fn scan(n: usize) -> Self {
        let parts = scan_tuples(
            n,
            || (0u64, Vec::new(), Vec::new()),
            |(pf, upf, fr), t| {
                if is_parking_function(&t) {
                    *pf += 1;
                    if is_unit_interval_pf(&t) {
                        upf.push(t.clone());
                    }
                }
                if is_fubini_ranking(&t) {
                    fr.push(t);
                }
            },
        );
        let mut u = Self {
            n,
            pf: 0,
            upf: Vec::new(),
            fr: Vec::new(),
        };
        for (pf, upf, fr) in parts {
            u.pf += pf;
            u.upf.extend(upf);
            u.fr.extend(fr);
        }
        u
    }

    fn family(&self, family: Family) -> &[PreferenceList] {
        match family {
            Family::Upf => &self.upf,
            Family::Fr => &self.fr,
        }
    }
}

fn fmt_tuple(t: &PreferenceList) -> String {
    format!("{:?}", t.entries())
}

fn expected_fubini(n: usize, fault: Option<Fault>) -> BigUint {
    match fault {
        Some(Fault::FubiniOffByOne) if n >= 1 => fubini(n) + BigUint::one(),
        _ => fubini(n),
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut v: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(v.clone()).expect("a rearrangement of 1..n"));
        if !next_permutation(&mut v) {
            return out;
        }
    }
}

/// Formula-only ranges reach further than the brute-force ones.
const FORMULA_N_MAX: usize = 20;
/// Multiset permutations are enumerated up to this length.
const REARRANGEMENT_N_MAX: usize = 5;

/// Runs every cross-check for `1 <= n <= n_max`. Failures are part of the
/// report; only a cap violation is an error.
pub fn verify_suite(opts: &VerifyOptions) -> Result<VerifyReport> {
    let n_max = opts.n_max;
    opts.caps.check_tuple("verify_suite", n_max)?;
    opts.caps.check_osp("verify_suite", n_max)?;
    let universes: Vec<Universe> = (1..=n_max).map(Universe::scan).collect();
    let fault = opts.fault;

    let mut checks = Vec::new();

    let mut c = Check::new("pf_count", "brute-force |PF_n| = (n+1)^(n-1)");
    for u in &universes {
        let want = parking_function_count(u.n);
        c.record(BigUint::from(u.pf) == want, || format!("n={}: oracle {}, formula {want}", u.n, u.pf));
    }
    checks.push(c.finish());

    for (name, description, family) in [
        ("upf_count_is_fubini", "brute-force |UPF_n| = Fub_n", Family::Upf),
        ("fr_count_is_fubini", "brute-force |FR_n| = Fub_n", Family::Fr),
    ] {
        let mut c = Check::new(name, description);
        for u in &universes {
            let got = u.family(family).len();
            let want = expected_fubini(u.n, fault);
            c.record(BigUint::from(got) == want, || format!("n={}: oracle {got}, formula {want}", u.n));
        }
        checks.push(c.finish());
    }

    let mut c = Check::new("fubini_identities", "Stirling sum = recurrence = composition sum");
    for n in 0..=FORMULA_N_MAX {
        let (a, b, d) = (fubini(n), fubini_by_recurrence(n), fubini_by_compositions(n.min(12)));
        let ok = a == b && (n > 12 || a == d);
        c.record(ok, || format!("n={n}: {a} / {b} / {d}"));
    }
    checks.push(c.finish());

    let mut c = Check::new("stirling_vs_set_partitions", "S(n,k) counts set partitions by block count");
    for n in 0..=n_max {
        let mut by_k = vec![0u64; n + 1];
        for p in set_partitions(n) {
            by_k[p.len()] += 1;
        }
        for (k, &got) in by_k.iter().enumerate() {
            let want = stirling2(n, k);
            c.record(BigUint::from(got) == want, || format!("S({n},{k}): enumerated {got}, table {want}"));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("generator_matches_brute_force", "OSP-based generation = filter over [n]^n");
    for u in &universes {
        for family in [Family::Upf, Family::Fr] {
            let mut generated: Vec<_> = generate_family(u.n, family, None).collect();
            generated.sort();
            let oracle = u.family(family);
            c.record(generated == oracle, || {
                format!("n={} {family:?}: generated {}, oracle {}", u.n, generated.len(), oracle.len())
            });
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("phi_psi_round_trip", "phi(psi(a)) = a on UPF_n, psi(phi(b)) = b on FR_n");
    for u in &universes {
        for t in &u.upf {
            let ok = psi(t).is_ok_and(|fr| phi(&fr) == *t && is_fubini_ranking(&fr.to_preference()));
            c.record(ok, || format!("UPF {}", fmt_tuple(t)));
        }
        for t in &u.fr {
            let fr = FubiniRanking::try_from_preference(t.clone()).expect("oracle FR");
            let image = phi(&fr);
            let ok = is_unit_interval_pf(&image) && psi(&image).is_ok_and(|back| back == fr);
            c.record(ok, || format!("FR {}", fmt_tuple(t)));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("osp_fr_round_trip", "ordered set partitions and Fubini rankings correspond");
    for u in &universes {
        for osp in ordered_set_partitions(u.n) {
            let ok = fr_to_osp(&osp_to_fr(&osp)) == osp;
            c.record(ok, || format!("OSP {osp}"));
        }
        for t in &u.fr {
            let fr = FubiniRanking::try_from_preference(t.clone()).expect("oracle FR");
            c.record(osp_to_fr(&fr_to_osp(&fr)) == fr, || format!("FR {}", fmt_tuple(t)));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("lucky_equals_blocks", "lucky cars of a UPF = its number of blocks");
    for u in &universes {
        for t in &u.upf {
            let lucky = lucky_cars(t).map(|l| l.len());
            let blocks = block_structure(t).map(|b| b.num_blocks());
            c.record(lucky.is_ok() && lucky == blocks, || {
                format!("{}: lucky {lucky:?}, blocks {blocks:?}", fmt_tuple(t))
            });
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("t1_statistic_distribution", "#UPF with k lucky = #FR with k ranks = k!S(n,k)");
    for u in &universes {
        let mut lucky = vec![0u64; u.n + 1];
        for t in &u.upf {
            lucky[lucky_cars(t).map_or(0, |l| l.len())] += 1;
        }
        let mut ranked = vec![0u64; u.n + 1];
        for t in &u.fr {
            let fr = FubiniRanking::try_from_preference(t.clone()).expect("oracle FR");
            ranked[ranks(&fr).len()] += 1;
        }
        for k in 1..=u.n {
            let want = crate::counting::factorial(k) * stirling2(u.n, k);
            let ok = lucky[k] == ranked[k] && BigUint::from(lucky[k]) == want;
            c.record(ok, || format!("n={} k={k}: UPF {}, FR {}, formula {want}", u.n, lucky[k], ranked[k]));
        }
    }
    checks.push(c.finish());

    type Formula = fn(usize, &Restriction) -> BigUint;
    let battery_checks: [(&'static str, &'static str, fn(&Restriction) -> bool, Formula); 3] = [
        (
            "t1_battery",
            "type 1: oracle = formula = generator",
            |r| matches!(r, Restriction::T1(_)),
            |n, r| match r {
                Restriction::T1(s) => t1_count(n, s),
                _ => unreachable!(),
            },
        ),
        (
            "t2_battery",
            "type 2: oracle = formula = generator",
            |r| matches!(r, Restriction::T2(_)),
            |n, r| match r {
                Restriction::T2(s) => t2_count(n, s),
                _ => unreachable!(),
            },
        ),
        (
            "t3_battery",
            "type 3: oracle = formula = generator",
            |r| matches!(r, Restriction::T3(_)),
            |n, r| match r {
                Restriction::T3(seq) => fr_t3_count(n, seq),
                _ => unreachable!(),
            },
        ),
    ];
    for (name, description, selects, formula) in battery_checks {
        let mut c = Check::new(name, description);
        for u in &universes {
            for r in restriction_battery(u.n).into_iter().filter(|r| selects(r)) {
                let want = formula(u.n, &r);
                for family in [Family::Upf, Family::Fr] {
                    let oracle: Vec<_> = u.family(family).iter().filter(|t| is_member(family, t, &r)).cloned().collect();
                    let mut generated: Vec<_> = generate_family(u.n, family, Some(r.clone())).collect();
                    generated.sort();
                    let ok = generated == oracle && BigUint::from(oracle.len()) == want;
                    c.record(ok, || {
                        format!(
                            "n={} {family:?} {r}: oracle {}, generator {}, formula {want}",
                            u.n,
                            oracle.len(),
                            generated.len()
                        )
                    });
                }
                if let Restriction::T2(s @ RestrictionSet::Explicit(_)) = &r {
                    let finite = fr_t2_count(u.n, s);
                    c.record(finite.as_ref() == Ok(&want), || {
                        format!("n={} {r}: explicit-set formula {finite:?}, general {want}", u.n)
                    });
                }
            }
        }
        checks.push(c.finish());
    }

    let mut c = Check::new("restriction_transport", "a UPF and psi of it satisfy the same restrictions");
    for u in &universes {
        let battery = restriction_battery(u.n);
        for t in &u.upf {
            let Ok(fr) = psi(t) else {
                c.record(false, || format!("psi rejected {}", fmt_tuple(t)));
                continue;
            };
            let image = fr.to_preference();
            for r in &battery {
                let ok = is_member(Family::Upf, t, r) == is_member(Family::Fr, &image, r);
                c.record(ok, || format!("{} under {r}", fmt_tuple(t)));
            }
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("exceedance_count", "|UPF with n-1 lucky cars| = total exceedances = (n-1)n!/2");
    for u in universes.iter().filter(|u| u.n >= 2) {
        let r = Restriction::T1(RestrictionSet::explicit([u.n - 1]).unwrap());
        let oracle = u.upf.iter().filter(|t| is_member(Family::Upf, t, &r)).count();
        let summed: usize = all_permutations(u.n).iter().map(|p| exceedances(p).len()).sum();
        let want = exceedance_total(u.n).expect("n >= 2");
        let ok = BigUint::from(oracle) == want && BigUint::from(summed) == want;
        c.record(ok, || format!("n={}: oracle {oracle}, permutations {summed}, formula {want}", u.n));
    }
    checks.push(c.finish());

    let mut c = Check::new("gamma_bijection", "gamma: (n-1)-block OSPs <-> exceedance pointers");
    for n in 2..=n_max {
        let mut images = HashSet::new();
        for osp in ordered_set_partitions(n).filter(|o| o.num_blocks() + 1 == n) {
            match gamma(&osp) {
                Ok(ptr) => {
                    let back = gamma_inverse(&ptr);
                    c.record(back == osp, || format!("gamma_inverse(gamma({osp})) = {back}"));
                    let fresh = images.insert(ptr.clone());
                    c.record(fresh, || format!("gamma not injective at {osp}"));
                }
                Err(e) => c.record(false, || format!("gamma({osp}) failed: {e}")),
            }
        }
        for perm in all_permutations(n) {
            for j in exceedances(&perm) {
                let ptr = ExceedancePointer::new(perm.clone(), j).expect("j is an exceedance");
                let osp = gamma_inverse(&ptr);
                let hit = images.contains(&ptr);
                let round = gamma(&osp).is_ok_and(|p| p == ptr);
                c.record(hit && round, || format!("pointer ({:?}, {j}) missed or not recovered", perm.images()));
            }
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("lambda_bijection", "lambda: even-block OSPs <-> adjacency-free OSPs");
    for n in 1..=n_max {
        let mut images = HashSet::new();
        let mut adjacency_free = 0u64;
        for osp in ordered_set_partitions(n) {
            if !has_cyclical_adjacency_osp(&osp) {
                adjacency_free += 1;
            }
            if osp.num_blocks() % 2 != 0 {
                continue;
            }
            match lambda(&osp) {
                Ok(image) => {
                    let ok = !has_cyclical_adjacency_osp(&image)
                        && lambda_inverse(&image).is_ok_and(|back| back == osp)
                        && images.insert(image.clone());
                    c.record(ok, || format!("lambda({osp}) = {image}"));
                }
                Err(e) => c.record(false, || format!("lambda({osp}) failed: {e}")),
            }
        }
        let count = images.len() as u64;
        c.record(count == adjacency_free, || {
            format!("n={n}: {count} images, {adjacency_free} adjacency-free partitions")
        });
    }
    checks.push(c.finish());

    let mut c = Check::new("rearrangement_count", "UPF rearrangements = multinomial of block sizes");
    for u in universes.iter().filter(|u| u.n <= REARRANGEMENT_N_MAX) {
        for t in &u.upf {
            let mut arrangement = t.sorted();
            let mut brute = Vec::new();
            loop {
                let cand = PreferenceList::new_unchecked(arrangement.clone());
                if is_unit_interval_pf(&cand) {
                    brute.push(cand);
                }
                if !next_permutation(&mut arrangement) {
                    break;
                }
            }
            let mut listed: Vec<_> = enumerate_rearrangements(t).expect("oracle UPF").collect();
            listed.sort();
            let want = rearrangement_count(&block_structure(t).expect("oracle UPF"));
            let ok = listed == brute && BigUint::from(brute.len()) == want;
            c.record(ok, || {
                format!("{}: brute {}, listed {}, multinomial {want}", fmt_tuple(t), brute.len(), listed.len())
            });
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("fully_determined_count", "UPFs with block sizes exactly s_1, s_2, ...");
    let sequences = [
        RestrictionSequence::constant(1).unwrap(),
        RestrictionSequence::constant(2).unwrap(),
        RestrictionSequence::new(vec![1, 2], Tail::Unbounded).unwrap(),
        RestrictionSequence::new(vec![2, 1], Tail::Constant(1)).unwrap(),
        RestrictionSequence::new(vec![3], Tail::Constant(2)).unwrap(),
    ];
    for u in &universes {
        for seq in &sequences {
            let oracle = u.upf.iter().filter(|t| is_fully_determined(t, seq).unwrap_or(false)).count();
            let want = fully_determined_count(u.n, seq);
            c.record(BigUint::from(oracle) == want, || format!("n={} {seq}: oracle {oracle}, formula {want}", u.n));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("evens_plus_odds", "type 1 evens + odds = Fub_n");
    for n in 1..=FORMULA_N_MAX {
        let sum = t1_count(n, &RestrictionSet::Evens) + t1_count(n, &RestrictionSet::Odds);
        c.record(sum == fubini(n), || format!("n={n}: {sum} vs {}", fubini(n)));
    }
    checks.push(c.finish());

    let mut c = Check::new("evens_closed_form", "alternating binomial sum = type 1 evens count");
    for n in 0..=FORMULA_N_MAX {
        let (a, b) = (t1_evens_closed(n), t1_count(n, &RestrictionSet::Evens));
        c.record(a == b, || format!("n={n}: {a} vs {b}"));
    }
    checks.push(c.finish());

    let mut c = Check::new("egf_series_matches_formula", "n![x^n] sum_(k in S) (e^x-1)^k = type 1 count");
    let mut sets = vec![
        RestrictionSet::Evens,
        RestrictionSet::Odds,
        RestrictionSet::All,
        RestrictionSet::explicit([2, 5]).unwrap(),
    ];
    sets.extend((1..=3).flat_map(|m| [RestrictionSet::AtLeast(m), RestrictionSet::AtMost(m)]));
    for s in &sets {
        let series = egf_coefficients(s, FORMULA_N_MAX);
        for (n, coeff) in series.iter().enumerate().skip(1) {
            let want = t1_count(n, s);
            c.record(*coeff == want, || format!("{s} n={n}: series {coeff}, formula {want}"));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("egf_closed_forms", "closed-form generating functions = raw series");
    for s in sets.iter().filter(|s| !s.is_explicit()) {
        let raw = egf_coefficients(s, FORMULA_N_MAX);
        match egf_closed_form(s, FORMULA_N_MAX) {
            Ok(closed) => {
                for n in 1..=FORMULA_N_MAX {
                    c.record(raw[n] == closed[n], || format!("{s} n={n}: closed {}, raw {}", closed[n], raw[n]));
                }
                let ok = with_empty_convention(raw) == with_empty_convention(closed);
                c.record(ok, || format!("{s}: differs after the n = 0 convention"));
            }
            Err(e) => c.record(false, || format!("{s}: {e}")),
        }
    }
    checks.push(c.finish());

    let mut notes = vec![
        "restricted counts at n = 0 are 1 (the empty object); raw series coefficients there are 0 and are \
         compared after setting index 0 to 1"
            .to_string(),
    ];
    if n_max >= 1 {
        let osp1 = osp_census(1, &opts.caps)?;
        notes.push(format!(
            "n = 1: {} even-block partitions; adjacency-free partitions: {} when 1 and n may coincide, {} when \
             they must differ; the first reading keeps the lambda correspondence",
            osp1.even_blocks, osp1.adjacency_free, osp1.adjacency_free_distinct_endpoints
        ));
    }
    if n_max < 2 {
        notes.push("gamma and the exceedance count need n >= 2; nothing to check".to_string());
    }

    Ok(VerifyReport {
        n_max,
        fault,
        checks,
        notes,
    })
}
