//! Exact evaluation of affine 2-regular sequences
//!
//! A sequence in this family is fixed by five non-negative integers:
//!
//! ```text
//! f(2n)   = A0·f(n) + b0
//! f(2n+1) = A1·f(n) + b1
//! ```
//!
//! together with the starting value `f(1)`. Index 0 is never used: the
//! relations may be inconsistent there. Everything in this module is exact
//! (big integers and big rationals).

mod catalog;

pub use catalog::{catalog_entries, catalog_lookup, catalog_names, CatalogEntry};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the level `N` of a fundamental region (2^N values).
pub const DEFAULT_MAX_LEVEL: u32 = 26;

/// Coefficients of an affine 2-regular sequence plus its value at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineParams {
    a0: BigUint,
    a1: BigUint,
    b0: BigUint,
    b1: BigUint,
    f1: BigUint,
}

/// The seven parameter regimes of the Lebesgue classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    /// Homogeneous, `A0 = A1 ≠ 0`.
    Case1A,
    /// Homogeneous, `A0 ≠ A1`, both non-zero.
    Case1B,
    /// Homogeneous, one of `A0, A1` is zero.
    Case1C,
    /// Inhomogeneous, `A0 + A1 ≤ 2`.
    Case2A,
    /// Inhomogeneous, `A0 = A1 > 1`.
    Case2B,
    /// Inhomogeneous, `A0 ≠ A1`, both non-zero, `A0 + A1 ≥ 3`.
    Case2C,
    /// Inhomogeneous, one of `A0, A1` is zero and the other is at least 3.
    Case2D,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 7] = [
        CaseLabel::Case1A,
        CaseLabel::Case1B,
        CaseLabel::Case1C,
        CaseLabel::Case2A,
        CaseLabel::Case2B,
        CaseLabel::Case2C,
        CaseLabel::Case2D,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Case1A => "1A",
            CaseLabel::Case1B => "1B",
            CaseLabel::Case1C => "1C",
            CaseLabel::Case2A => "2A",
            CaseLabel::Case2B => "2B",
            CaseLabel::Case2C => "2C",
            CaseLabel::Case2D => "2D",
        }
    }

    pub fn is_homogeneous(self) -> bool {
        matches!(
            self,
            CaseLabel::Case1A | CaseLabel::Case1B | CaseLabel::Case1C
        )
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl AffineParams {
    /// Builds a parameter set; rejects `A0 = A1 = b0 = b1 = 0`.
    pub fn new(
        a0: impl Into<BigUint>,
        a1: impl Into<BigUint>,
        b0: impl Into<BigUint>,
        b1: impl Into<BigUint>,
        f1: impl Into<BigUint>,
    ) -> Result<Self> {
        let p = AffineParams {
            a0: a0.into(),
            a1: a1.into(),
            b0: b0.into(),
            b1: b1.into(),
            f1: f1.into(),
        };
        if p.a0.is_zero() && p.a1.is_zero() && p.b0.is_zero() && p.b1.is_zero() {
            return Err(Error::domain(
                "coefficients A0, A1, b0, b1 must not all be zero",
            ));
        }
        Ok(p)
    }

    /// Same as [`AffineParams::new`] with the default starting value `f(1) = 1`.
    pub fn with_default_f1(a0: u64, a1: u64, b0: u64, b1: u64) -> Result<Self> {
        Self::new(a0, a1, b0, b1, 1u64)
    }

    pub fn a0(&self) -> &BigUint {
        &self.a0
    }
    pub fn a1(&self) -> &BigUint {
        &self.a1
    }
    pub fn b0(&self) -> &BigUint {
        &self.b0
    }
    pub fn b1(&self) -> &BigUint {
        &self.b1
    }
    pub fn f1(&self) -> &BigUint {
        &self.f1
    }

    /// Multiplier for digit `bit`.
    pub fn a(&self, bit: bool) -> &BigUint {
        if bit {
            &self.a1
        } else {
            &self.a0
        }
    }

    /// Offset for digit `bit`.
    pub fn b(&self, bit: bool) -> &BigUint {
        if bit {
            &self.b1
        } else {
            &self.b0
        }
    }

    /// `A = A0 + A1`.
    pub fn a_sum(&self) -> BigUint {
        &self.a0 + &self.a1
    }

    /// `b = b0 + b1`.
    pub fn b_sum(&self) -> BigUint {
        &self.b0 + &self.b1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b0.is_zero() && self.b1.is_zero()
    }

    /// True when every term of the sequence is zero (`f(1) = 0`, `b = 0`);
    /// no measure can be attached to such a sequence.
    pub fn is_identically_zero(&self) -> bool {
        self.f1.is_zero() && self.is_homogeneous()
    }

    /// The parameter regime. The seven cases partition the parameter space.
    pub fn case(&self) -> CaseLabel {
        let zero_a = self.a0.is_zero() || self.a1.is_zero();
        if self.is_homogeneous() {
            if self.a0 == self.a1 {
                CaseLabel::Case1A
            } else if !zero_a {
                CaseLabel::Case1B
            } else {
                CaseLabel::Case1C
            }
        } else if self.a_sum() <= BigUint::from(2u32) {
            CaseLabel::Case2A
        } else if self.a0 == self.a1 {
            CaseLabel::Case2B
        } else if !zero_a {
            CaseLabel::Case2C
        } else {
            CaseLabel::Case2D
        }
    }

    /// Small-parameter view as doubles `(A0, A1, b0, b1, f1)`.
    pub fn to_f64(&self) -> [f64; 5] {
        [&self.a0, &self.a1, &self.b0, &self.b1, &self.f1]
            .map(|v| v.to_f64().unwrap_or(f64::INFINITY))
    }

    /// Parameters with the roles of the two digits exchanged.
    pub fn digit_swapped(&self) -> AffineParams {
        AffineParams {
            a0: self.a1.clone(),
            a1: self.a0.clone(),
            b0: self.b1.clone(),
            b1: self.b0.clone(),
            f1: self.f1.clone(),
        }
    }
}

impl fmt::Display for AffineParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A0={}, A1={}, b0={}, b1={}, f1={})",
            self.a0, self.a1, self.b0, self.b1, self.f1
        )
    }
}

/// Resource caps for region-sized computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest fundamental-region level that may be materialised.
    pub max_level: u32,
    /// Largest level for Wiener averages (2^N coefficient evaluations).
    pub max_wiener_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_level: DEFAULT_MAX_LEVEL,
            max_wiener_level: 14,
        }
    }
}

impl Limits {
    /// Defaults overridden by `GHOST_MAX_LEVEL` / `GHOST_MAX_WIENER_LEVEL`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = env_u32("GHOST_MAX_LEVEL") {
            limits.max_level = v;
        }
        if let Some(v) = env_u32("GHOST_MAX_WIENER_LEVEL") {
            limits.max_wiener_level = v;
        }
        limits
    }

    pub fn check_level(&self, level: u32) -> Result<()> {
        if level > self.max_level {
            return Err(Error::ResourceCap {
                what: "region level",
                requested: level as u64,
                limit: self.max_level as u64,
            });
        }
        Ok(())
    }
}

fn env_u32(key: &str) -> Option<u32> {
    std::env::var(key).ok()?.trim().parse().ok()
}

/// `f((1 x1 x2 … xi)_2)`: descends the digits after the leading one.
pub fn eval_digits(params: &AffineParams, bits: &[bool]) -> BigUint {
    bits.iter().fold(params.f1.clone(), |v, &bit| {
        v * params.a(bit) + params.b(bit)
    })
}

/// `f(n)` for `n ≥ 1`.
pub fn eval_f(params: &AffineParams, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("n must be ≥ 1"));
    }
    Ok(eval_digits(params, &digits_below_leading(n)))
}

/// Binary digits of `n ≥ 1` after its leading one, most significant first.
pub fn digits_below_leading(n: u64) -> Vec<bool> {
    debug_assert!(n >= 1);
    let len = 63 - n.leading_zeros();
    (0..len).rev().map(|k| (n >> k) & 1 == 1).collect()
}

/// Successive fundamental regions `[f(2^N), …, f(2^{N+1}-1)]` for N = 0, 1, …
///
/// Each region is produced from the previous one: a parent value `v` at
/// offset `m` yields the children `A0·v + b0` and `A1·v + b1` at `2m`, `2m+1`.
#[derive(Debug, Clone)]
pub struct Regions<'a> {
    params: &'a AffineParams,
    current: Option<Vec<BigUint>>,
}

impl<'a> Regions<'a> {
    pub fn new(params: &'a AffineParams) -> Self {
        Regions {
            params,
            current: None,
        }
    }
}

/// Region `N` computed from region `N-1`.
pub fn next_region(params: &AffineParams, parent: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(parent.len() * 2);
    for v in parent {
        out.push(v * &params.a0 + &params.b0);
        out.push(v * &params.a1 + &params.b1);
    }
    out
}

impl Iterator for Regions<'_> {
    type Item = Vec<BigUint>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match &self.current {
            None => vec![self.params.f1.clone()],
            Some(parent) => next_region(self.params, parent),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// The level-`N` fundamental region, `2^N` values.
pub fn eval_region(params: &AffineParams, level: u32, limits: &Limits) -> Result<Vec<BigUint>> {
    limits.check_level(level)?;
    let mut region = vec![params.f1.clone()];
    for _ in 0..level {
        region = next_region(params, &region);
    }
    Ok(region)
}

/// `Σ(N)`, the sum over the level-`N` fundamental region, in closed form.
pub fn big_sigma(params: &AffineParams, level: u32) -> Result<BigUint> {
    let a = params.a_sum();
    let b = params.b_sum();
    let two_n = BigUint::one() << level;
    if a.is_zero() {
        if level == 0 {
            return Err(Error::domain(
                "Σ(0) is not given by the closed form when A0 + A1 = 0",
            ));
        }
        return Ok(b << (level - 1));
    }
    let a_small = a.to_u64();
    Ok(match a_small {
        Some(1) => &params.f1 + b * (two_n - 1u32),
        Some(2) => {
            let mut s = two_n * &params.f1;
            if level > 0 {
                s += (b * BigUint::from(level)) << (level - 1);
            }
            s
        }
        _ => {
            let a_n = a.pow(level);
            // A > 2, so A^N ≥ 2^N and the division is exact
            let geometric = (&a_n - &two_n) / (&a - 2u32);
            a_n * &params.f1 + b * geometric
        }
    })
}

/// `σ(N) = Σ(N) / A^N`, exact. Requires `A ≥ 1`.
pub fn sigma_norm(params: &AffineParams, level: u32) -> Result<BigRational> {
    let a = params.a_sum();
    if a.is_zero() {
        return Err(Error::domain("σ(N) requires A0 + A1 ≥ 1"));
    }
    let sigma = big_sigma(params, level)?;
    Ok(BigRational::new(
        BigInt::from(sigma),
        BigInt::from(a.pow(level)),
    ))
}

/// `σ(∞) = f(1) + b/(A - 2)`, exact. Requires `A > 2`.
pub fn sigma_inf(params: &AffineParams) -> Result<BigRational> {
    let a = params.a_sum();
    if a <= BigUint::from(2u32) {
        return Err(Error::domain(format!(
            "σ(∞) requires A0 + A1 > 2 (got {a}); σ(N) has no finite limit"
        )));
    }
    Ok(BigRational::from_integer(BigInt::from(params.f1.clone()))
        + BigRational::new(BigInt::from(params.b_sum()), BigInt::from(a - 2u32)))
}
