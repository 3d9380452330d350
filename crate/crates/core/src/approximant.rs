//! The level-`N` approximant: a Dirac comb on the torus `[0, 1)` with an atom
//! of weight `f(2^N + n) / Σ(N)` at `n / 2^N`.
//!
//! Weights stay exact integers; normalisation happens at the last step. These
//! combs are the brute-force side of every check on the limit measure.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{dyadic_phase, fmt_sig17, ratio_to_f64, CompensatedSum};
use crate::sequence::{big_sigma, eval_digits, eval_region, next_region, AffineParams, Limits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximant {
    level: u32,
    weights: Vec<BigUint>,
    total: BigUint,
}

/// A dyadic interval `E_i(x) = [0.x1…xi000…, 0.x1…xi111…)`, named by its
/// leading bits. The empty bit string is the whole torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DyadicInterval {
    bits: Vec<bool>,
}

impl DyadicInterval {
    pub fn new(bits: Vec<bool>) -> Self {
        DyadicInterval { bits }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("invalid bit `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// The depth-`depth` interval containing `x ∈ [0, 1)`.
    pub fn containing(x: f64, depth: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::domain(format!("x = {x} is outside [0, 1)")));
        }
        Ok(Self::new(binary_digits(x, depth)))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    /// `(0.x1…xi)_2` as an integer numerator over `2^i`.
    pub fn prefix_value(&self) -> BigUint {
        self.bits
            .iter()
            .fold(BigUint::zero(), |acc, &b| (acc << 1u32) + u32::from(b))
    }

    pub fn left(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.prefix_value()),
            BigInt::from(BigUint::one() << self.depth()),
        )
    }

    /// Lebesgue measure `2^{-i}`.
    pub fn length(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << self.depth()))
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Self::new(bits)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// First `depth` binary digits of `x ∈ [0, 1)`, most significant first.
pub fn binary_digits(x: f64, depth: usize) -> Vec<bool> {
    let mut r = x;
    (0..depth)
        .map(|_| {
            r *= 2.0;
            if r >= 1.0 {
                r -= 1.0;
                true
            } else {
                false
            }
        })
        .collect()
}

fn rational(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

/// Builds `μ_N`.
pub fn build_comb(params: &AffineParams, level: u32, limits: &Limits) -> Result<Approximant> {
    let weights = eval_region(params, level, limits)?;
    let total = big_sigma(params, level)?;
    Approximant::from_parts(level, weights, total)
}

impl Approximant {
    /// Assembles a comb from its region and the region sum.
    pub fn from_parts(level: u32, weights: Vec<BigUint>, total: BigUint) -> Result<Self> {
        if weights.len() != 1usize << level {
            return Err(Error::domain(format!(
                "level {level} comb needs {} weights, got {}",
                1usize << level,
                weights.len()
            )));
        }
        debug_assert_eq!(total, weights.iter().sum::<BigUint>());
        if total.is_zero() {
            return Err(Error::domain(format!(
                "Σ({level}) = 0: the level-{level} terms all vanish and no probability measure exists"
            )));
        }
        Ok(Approximant {
            level,
            weights,
            total,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Normalised weight of atom `n` as an exact rational.
    pub fn atom(&self, n: usize) -> BigRational {
        rational(self.weights[n].clone(), &self.total)
    }

    /// `μ̂_N(t)` by direct summation over the atoms.
    pub fn direct_fourier(&self, t: i64) -> Complex64 {
        if t == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut sum = CompensatedSum::new();
        let modulus = 1i64 << self.level;
        let tr = t.rem_euclid(modulus) as i128;
        for (n, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let k = ((tr * n as i128) % modulus as i128) as i64;
            let weight = ratio_to_f64(w, &self.total);
            sum.add(dyadic_phase(k, self.level) * weight);
        }
        sum.total()
    }

    /// `F_N(x) = μ_N([0, x])`, atom at `x` included.
    pub fn cdf(&self, x: f64) -> Result<BigRational> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("x = {x} is outside [0, 1]")));
        }
        let last = self.last_atom_at_or_below(x);
        let mass: BigUint = self.weights[..=last].iter().sum();
        Ok(rational(mass, &self.total))
    }

    fn last_atom_at_or_below(&self, x: f64) -> usize {
        // x·2^N is exact in binary floating point
        let scaled = (x * (1u64 << self.level) as f64).floor() as usize;
        scaled.min(self.weights.len() - 1)
    }

    /// `grid_size` equally spaced samples `(x_k, F_N(x_k))` with `x_k = k/(grid_size-1)`.
    pub fn cdf_series(&self, grid_size: usize) -> Result<Vec<(f64, f64)>> {
        if grid_size < 2 {
            return Err(Error::domain("grid_size must be ≥ 2"));
        }
        let mut prefix = Vec::with_capacity(self.weights.len());
        let mut acc = BigUint::zero();
        for w in &self.weights {
            acc += w;
            prefix.push(acc.clone());
        }
        Ok((0..grid_size)
            .map(|k| {
                let x = k as f64 / (grid_size - 1) as f64;
                let idx = self.last_atom_at_or_below(x);
                (x, ratio_to_f64(&prefix[idx], &self.total))
            })
            .collect())
    }

    /// `μ_N(E)`: atoms at the left endpoint count, the right endpoint does not.
    pub fn interval_mass(&self, interval: &DyadicInterval) -> Result<BigRational> {
        let i = interval.depth();
        if i > self.level as usize {
            return Err(Error::domain(format!(
                "interval depth {i} exceeds comb level {}",
                self.level
            )));
        }
        let width = 1usize << (self.level as usize - i);
        let start = interval
            .bits()
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
            * width;
        let mass: BigUint = self.weights[start..start + width].iter().sum();
        Ok(rational(mass, &self.total))
    }
}

/// `μ_N(E)` at level `N = i + c` without materialising the full comb: only
/// the `2^c` atoms inside `E` are generated, starting from `f((1 x1…xi)_2)`.
pub fn interval_mass_at_level(
    params: &AffineParams,
    interval: &DyadicInterval,
    level: u32,
    limits: &Limits,
) -> Result<BigRational> {
    let i = interval.depth() as u32;
    if i > level {
        return Err(Error::domain(format!(
            "interval depth {i} exceeds comb level {level}"
        )));
    }
    limits.check_level(level - i)?;
    let mut sub = vec![eval_digits(params, interval.bits())];
    for _ in i..level {
        sub = next_region(params, &sub);
    }
    let mass: BigUint = sub.iter().sum();
    let total = big_sigma(params, level)?;
    if total.is_zero() {
        return Err(Error::domain(format!("Σ({level}) = 0")));
    }
    Ok(rational(mass, &total))
}

/// Renders `(x, F)` samples as CSV with header `x,F`.
pub fn cdf_csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("x,F\n");
    for (x, f) in samples {
        out.push_str(&fmt_sig17(*x));
        out.push(',');
        out.push_str(&fmt_sig17(*f));
        out.push('\n');
    }
    out
}
