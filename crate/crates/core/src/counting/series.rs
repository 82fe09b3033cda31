//! Truncated power series with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::factorial;

/// `c_0 + c_1 x + ... + c_N x^N`, everything beyond `x^N` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        Self { coeffs }
    }

    /// `e^x - 1 = sum_{n>=1} x^n / n!`.
    pub fn exp_minus_one(order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 1..=order {
            s.coeffs[n] = BigRational::new(BigInt::one(), BigInt::from(factorial(n)));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = c0.recip();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[m - j];
                }
            }
            inv[m] = -acc * &inv[0];
        }
        Some(Self { coeffs: inv })
    }

    /// `n! * c_n` for every `n`, provided each is a nonnegative integer.
    pub fn egf_counts(&self) -> Option<Vec<BigUint>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let v = c * BigRational::from_integer(BigInt::from(factorial(n)));
                if !v.is_integer() || v.is_negative() {
                    return None;
                }
                v.to_integer().to_biguint()
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;

    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;

    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;

    fn neg(self) -> RationalSeries {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;

    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RationalSeries { coeffs: out }
    }
}
