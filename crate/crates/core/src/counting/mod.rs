//! Exact counts for every family and restriction.
//!
//! Everything is computed with arbitrary-precision integers (and exact
//! rationals for series work); nothing here touches floating point.
//! Infinite restriction sets are truncated to `S ∩ [n]` inside each sum,
//! which is exact because no block, tie or rank statistic exceeds `n`.
//!
//! Counts of restricted families at `n = 0` are 1 (the empty object). Raw
//! series coefficients are reported as they come out of the series; see
//! [`with_empty_convention`].

mod series;

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::for_each_composition;
use crate::restricted::{RestrictionSequence, RestrictionSet};

pub use series::RationalSeries;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Default size of the memoized triangles.
pub const DEFAULT_TABLE_CAP: usize = 64;

/// Factorials, binomials and Stirling numbers of the second kind for all
/// arguments up to `cap`. Built once, read-only afterwards.
#[derive(Debug, Clone)]
pub struct Tables {
    cap: usize,
    factorial: Vec<BigUint>,
    binomial: Vec<Vec<BigUint>>,
    stirling2: Vec<Vec<BigUint>>,
}

impl Tables {
    pub fn new(cap: usize) -> Self {
        let mut factorial = Vec::with_capacity(cap + 1);
        factorial.push(BigUint::one());
        for i in 1..=cap {
            let next = &factorial[i - 1] * BigUint::from(i);
            factorial.push(next);
        }

        let mut binomial: Vec<Vec<BigUint>> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &binomial[n - 1][k - 1] + &binomial[n - 1][k];
            }
            binomial.push(row);
        }

        // S(n,k) = k S(n-1,k) + S(n-1,k-1), S(0,0) = 1
        let mut stirling2: Vec<Vec<BigUint>> = Vec::with_capacity(cap + 1);
        stirling2.push(vec![BigUint::one()]);
        for n in 1..=cap {
            let prev = &stirling2[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let stay = if k < n { &prev[k] * BigUint::from(k) } else { BigUint::zero() };
                row[k] = stay + &prev[k - 1];
            }
            stirling2.push(row);
        }

        Self {
            cap,
            factorial,
            binomial,
            stirling2,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| Tables::new(DEFAULT_TABLE_CAP))
}

pub fn factorial(n: usize) -> BigUint {
    let t = tables();
    if n <= t.cap {
        return t.factorial[n].clone();
    }
    (t.cap + 1..=n).fold(t.factorial[t.cap].clone(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let t = tables();
    if n <= t.cap {
        return t.binomial[n][k].clone();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(p_1 + ... + p_k)! / (p_1! ... p_k!)`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut total = 0;
    let mut acc = BigUint::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Stirling number of the second kind; zero when `k > n`.
pub fn stirling2(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let t = tables();
    if n <= t.cap {
        return t.stirling2[n][k].clone();
    }
    let mut row = t.stirling2[t.cap].clone();
    for m in t.cap + 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in 1..=m.min(k) {
            let stay = if j < m { &row[j] * BigUint::from(j) } else { BigUint::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row[k].clone()
}

/// `Fub_n = sum_k k! S(n,k)`.
pub fn fubini(n: usize) -> BigCount {
    (0..=n).map(|k| factorial(k) * stirling2(n, k)).sum()
}

/// `Fub_n = sum_{j=1}^n C(n,j) Fub_{n-j}`, `Fub_0 = 1`.
pub fn fubini_by_recurrence(n: usize) -> BigCount {
    let mut fub: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=n {
        let v = (1..=m).map(|j| binomial(m, j) * &fub[m - j]).sum();
        fub.push(v);
    }
    fub.pop().unwrap()
}

/// `Fub_n = sum over compositions c of n of the multinomial (n; c)`.
pub fn fubini_by_compositions(n: usize) -> BigCount {
    let mut total = BigUint::zero();
    for_each_composition(n, |_, _| true, |c| total += multinomial(c));
    total
}

/// `|UPF^T1_{n,S}| = sum_{k in S ∩ [n]} k! S(n,k)`; 1 at `n = 0`.
pub fn t1_count(n: usize, s: &RestrictionSet) -> BigCount {
    if n == 0 {
        return BigUint::one();
    }
    s.effective_for(n)
        .into_iter()
        .map(|k| factorial(k) * stirling2(n, k))
        .sum()
}

fn pow_usize(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// Surjections `[n] -> [m]` by inclusion-exclusion:
/// `sum_{j=0}^m (-1)^{m-j} C(m,j) j^n`.
pub fn surjection_count(n: usize, m: usize) -> BigCount {
    let mut acc = BigInt::zero();
    for j in 0..=m {
        let term = BigInt::from(binomial(m, j) * pow_usize(j, n));
        if (m - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("surjection count is nonnegative")
}

/// `sum_{k=1}^{floor(n/2)} sum_{i=0}^{2k} C(2k,i) (-1)^i i^n`.
pub fn t1_evens_closed(n: usize) -> BigCount {
    if n == 0 {
        return BigUint::one();
    }
    let mut acc = BigInt::zero();
    for k in 1..=n / 2 {
        for i in 0..=2 * k {
            let term = BigInt::from(binomial(2 * k, i) * pow_usize(i, n));
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc.to_biguint().expect("count is nonnegative")
}

/// Number of exceedances over all permutations of `[n]`: `(n-1) n! / 2`.
pub fn exceedance_total(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "exceedance_total",
            n,
            min: 2,
        });
    }
    Ok(BigUint::from(n - 1) * factorial(n) / BigUint::from(2u32))
}

/// `n! / (k!)^{n/k}` when `k | n`, else 0.
pub fn fr_t2_single(n: usize, k: usize) -> BigCount {
    if k == 0 || n % k != 0 {
        return BigUint::zero();
    }
    exact_div(factorial(n), num_traits::pow(factorial(k), n / k))
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "non-integral quotient {num}/{den}");
    q
}

/// Sum over nonnegative `c` with `sum s_i c_i = n` of
/// `n! * multinomial(sum c; c) / prod (s_i!)^{c_i}`, for an explicit set.
/// Every term is checked to divide exactly.
pub fn fr_t2_count(n: usize, s: &RestrictionSet) -> Result<BigCount> {
    let RestrictionSet::Explicit(items) = s else {
        return Err(Error::Unsupported(format!(
            "the finite-set formula needs an explicit set, got {s}; use t2_count"
        )));
    };
    let items: Vec<usize> = items.iter().copied().collect();
    Ok(t2_count_for(n, &items))
}

/// Type-2 count for any restriction set, through `S ∩ [n]`.
pub fn t2_count(n: usize, s: &RestrictionSet) -> BigCount {
    t2_count_for(n, &s.effective_for(n))
}

fn t2_count_for(n: usize, sizes: &[usize]) -> BigCount {
    if n == 0 {
        return BigUint::one();
    }
    fn go(sizes: &[usize], idx: usize, left: usize, c: &mut Vec<usize>, n: usize, total: &mut BigUint) {
        if idx == sizes.len() {
            if left == 0 {
                let blocks: usize = c.iter().sum();
                let num = factorial(n) * factorial(blocks);
                let mut den = BigUint::one();
                for (&ci, &si) in c.iter().zip(sizes) {
                    den *= factorial(ci) * num_traits::pow(factorial(si), ci);
                }
                *total += exact_div(num, den);
            }
            return;
        }
        let s = sizes[idx];
        for ci in 0..=left / s {
            c.push(ci);
            go(sizes, idx + 1, left - ci * s, c, n, total);
            c.pop();
        }
    }
    let mut total = BigUint::zero();
    go(sizes, 0, n, &mut Vec::new(), n, &mut total);
    total
}

/// Sum of multinomials `(n; c_1, ..., c_k)` over compositions of `n` with
/// `c_i <= s_i`; 1 at `n = 0`.
pub fn fr_t3_count(n: usize, seq: &RestrictionSequence) -> BigCount {
    let mut total = BigUint::zero();
    for_each_composition(n, |i, c| seq.allows(i, c), |c| total += multinomial(c));
    total
}

/// UPFs of length `n` whose block sizes are exactly `s_1, ..., s_k`: the
/// multinomial `(n; s_1, ..., s_k)` if some prefix of the sequence sums to
/// `n`, else 0.
pub fn fully_determined_count(n: usize, seq: &RestrictionSequence) -> BigCount {
    let mut parts = Vec::new();
    let mut sum = 0;
    let mut i = 1;
    while sum < n {
        let Some(s) = seq.term(i) else {
            return BigUint::zero();
        };
        parts.push(s);
        sum += s;
        i += 1;
    }
    if sum == n {
        multinomial(&parts)
    } else {
        BigUint::zero()
    }
}

/// `n! [x^n] sum_{k in S ∩ [n_max]} (e^x - 1)^k` for `n = 0..=n_max`, by exact
/// series arithmetic. The entry at `n = 0` is the raw series value (0).
pub fn egf_coefficients(s: &RestrictionSet, n_max: usize) -> Vec<BigCount> {
    let u = RationalSeries::exp_minus_one(n_max);
    let mut sum = RationalSeries::zero(n_max);
    let mut power = RationalSeries::one(n_max);
    for k in 1..=n_max {
        power = &power * &u;
        if s.contains(k) {
            sum = &sum + &power;
        }
    }
    sum.egf_counts().expect("egf coefficients are nonnegative integers")
}

/// Expands the closed rational form in `u = e^x - 1` attached to each infinite
/// restriction kind:
///
/// * evens: `1 / (1 - u^2)`
/// * odds: `u / (1 - u^2)`
/// * at least `m`: `u^m / (2 - e^x)`
/// * at most `m`: `(1 - u^{m+1}) / (2 - e^x)`
/// * all: `1 / (2 - e^x)`
///
/// Forms whose geometric sum starts at `u^0` carry a constant term of 1; that
/// is reported as is.
pub fn egf_closed_form(s: &RestrictionSet, n_max: usize) -> Result<Vec<BigCount>> {
    let u = RationalSeries::exp_minus_one(n_max);
    let one = RationalSeries::one(n_max);
    let one_minus_u = &one - &u;
    let one_minus_u2 = &one - &u.pow(2);
    let geometric = |den: &RationalSeries| den.inverse().expect("unit constant term");
    let series = match s {
        RestrictionSet::Evens => geometric(&one_minus_u2),
        RestrictionSet::Odds => &u * &geometric(&one_minus_u2),
        RestrictionSet::AtLeast(m) => &u.pow(*m) * &geometric(&one_minus_u),
        RestrictionSet::AtMost(m) => &(&one - &u.pow(m + 1)) * &geometric(&one_minus_u),
        RestrictionSet::All => geometric(&one_minus_u),
        RestrictionSet::Explicit(_) => {
            return Err(Error::Unsupported(format!(
                "no closed-form generating function for explicit set {s}"
            )))
        }
    };
    Ok(series
        .egf_counts()
        .expect("closed-form coefficients are nonnegative integers"))
}

/// Replaces the `n = 0` entry by 1, the count of the empty object.
pub fn with_empty_convention(mut v: Vec<BigCount>) -> Vec<BigCount> {
    if let Some(first) = v.first_mut() {
        *first = BigUint::one();
    }
    v
}

/// `(n + 1)^(n - 1)`, the number of parking functions; 1 at `n = 0`.
pub fn parking_function_count(n: usize) -> BigCount {
    if n == 0 {
        return BigUint::one();
    }
    pow_usize(n + 1, n - 1)
}
