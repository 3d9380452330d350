//! Fourier coefficients of `μ_N` and `μ`.
//!
//! With `e_n = e^{-2πit/2^n}`, `A = A0 + A1` and `z_n = (A0 + A1 e_n)/A`,
//!
//! ```text
//! μ̂_N(t) = (σ(0)/σ(N)) Π_{n=1..N} z_n
//!         + (1/σ(N)) Σ_{n=1..N} 2^{n-1} χ(2^{n-1} | t) (b0 + b1 e_n)/A^n Π_{j=n+1..N} z_j
//! ```
//!
//! For `t = 2^a b` with `b` odd the indicator cuts the sum at `n = a + 1`.
//! The limit `μ̂` replaces `σ(N)` by `σ(∞)` and the finite products by infinite ones.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{dyadic_phase, ratio_to_f64, rational_to_f64, two_adic_split};
use crate::sequence::{big_sigma, sigma_inf, AffineParams, CaseLabel, Limits};

/// A coefficient together with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffValue {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Depth at which the infinite products were cut; 0 for closed forms.
    pub depth: u32,
}

impl CoeffValue {
    fn exact(value: Complex64) -> Self {
        CoeffValue {
            value,
            tail_bound: 0.0,
            depth: 0,
        }
    }
}

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Deepest product ever formed; beyond this every phase is 1 to double precision.
const MAX_DEPTH: u32 = 1100;

fn factor(a0: f64, a1: f64, t: i64, n: u32) -> Complex64 {
    (a1 * dyadic_phase(t, n) + a0) / (a0 + a1)
}

/// `Π_{j=n+1..depth} z_j` for every `n = 0..depth`, evaluated as sums of
/// log-magnitudes and phases; exact zeros are tracked separately.
fn suffix_products(a0: f64, a1: f64, t: i64, depth: u32) -> Vec<Complex64> {
    let mut out = vec![ONE; depth as usize + 1];
    let (mut log_mag, mut phase, mut zero) = (0.0f64, 0.0f64, false);
    for n in (1..=depth).rev() {
        let z = factor(a0, a1, t, n);
        if z.norm() == 0.0 {
            zero = true;
        } else {
            log_mag += z.norm().ln();
            phase += z.arg();
        }
        out[n as usize - 1] = if zero {
            ZERO
        } else {
            Complex64::from_polar(log_mag.exp(), phase)
        };
    }
    out
}

/// `μ̂_N(t)` from the finite formula.
pub fn coeff_recursive(params: &AffineParams, level: u32, t: i64) -> Result<Complex64> {
    if level == 0 {
        return Err(Error::domain("N must be ≥ 1"));
    }
    if t == 0 {
        return Ok(ONE);
    }
    let [a0, a1, b0, b1, _] = params.to_f64();
    let a = params.a_sum();
    let (two_adic, _) = two_adic_split(t);
    if a.is_zero() {
        // every term is b0 or b1, so μ_N only sees the last digit
        if two_adic + 1 < level {
            return Ok(ZERO);
        }
        return Ok((b1 * dyadic_phase(t, level) + b0) / (b0 + b1));
    }
    let sigma = big_sigma(params, level)?;
    if sigma.is_zero() {
        return Err(Error::domain(format!("Σ({level}) = 0")));
    }
    let suffix = suffix_products(a0, a1, t, level);
    let head = ratio_to_f64(&(params.f1() * a.pow(level)), &sigma);
    let mut value = suffix[0] * head;
    let last = level.min(two_adic + 1);
    for n in 1..=last {
        // 2^{n-1}/(A^n σ(N)) = 2^{n-1} A^{N-n} / Σ(N)
        let weight = ratio_to_f64(&((BigUint::one() << (n - 1)) * a.pow(level - n)), &sigma);
        value += (b1 * dyadic_phase(t, n) + b0) * weight * suffix[n as usize];
    }
    Ok(value)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance must be > 0 (got {tol})")));
    }
    Ok(())
}

/// Smallest depth `D ≥ floor` with `2π|t| A_max / (A 2^D) < tol/2`, and that sum.
fn truncation_depth(a0: f64, a1: f64, t: i64, tol: f64, floor: u32) -> (u32, f64) {
    let scale = 2.0 * std::f64::consts::PI * (t as f64).abs() * a0.max(a1) / (a0 + a1);
    let mut depth = floor.max(1);
    while depth < MAX_DEPTH && scale * 2f64.powi(-(depth as i32)) >= tol / 2.0 {
        depth += 1;
    }
    (depth, scale * 2f64.powi(-(depth as i32)))
}

/// `μ̂(t)`, with products truncated so that the reported tail bound is below `tol`.
pub fn coeff_limit(params: &AffineParams, t: i64, tol: f64) -> Result<CoeffValue> {
    check_tol(tol)?;
    if params.is_identically_zero() {
        return Err(Error::domain("the zero sequence has no ghost measure"));
    }
    if t == 0 {
        return Ok(CoeffValue::exact(ONE));
    }
    match params.case() {
        CaseLabel::Case2A => Ok(CoeffValue::exact(ZERO)),
        CaseLabel::Case2B => coeff_limit_2b(params, t),
        c if c.is_homogeneous() => nu_hat(params, t, tol),
        _ => coeff_limit_general(params, t, tol),
    }
}

/// The limit of the finite formula, for `A > 2`.
pub fn coeff_limit_general(params: &AffineParams, t: i64, tol: f64) -> Result<CoeffValue> {
    check_tol(tol)?;
    if t == 0 {
        return Ok(CoeffValue::exact(ONE));
    }
    let sigma = rational_to_f64(&sigma_inf(params)?);
    let [a0, a1, b0, b1, f1] = params.to_f64();
    let a = a0 + a1;
    let (two_adic, _) = two_adic_split(t);
    let (depth, s) = truncation_depth(a0, a1, t, tol, two_adic + 8);
    let suffix = suffix_products(a0, a1, t, depth);
    let mut value = suffix[0] * (f1 / sigma);
    let mut magnitude = value.norm();
    for n in 1..=two_adic + 1 {
        let weight = 2f64.powi(n as i32 - 1) / a.powi(n as i32) / sigma;
        let term = (b1 * dyadic_phase(t, n) + b0) * weight * suffix[n as usize];
        magnitude += term.norm();
        value += term;
    }
    Ok(CoeffValue {
        value,
        tail_bound: magnitude * s.exp_m1(),
        depth,
    })
}

/// `ν̂(t) = Π_{n≥1} (A0 + A1 e_n)/A`: the coefficients of the homogeneous
/// measure with the same multipliers.
pub fn nu_hat(params: &AffineParams, t: i64, tol: f64) -> Result<CoeffValue> {
    check_tol(tol)?;
    let [a0, a1, ..] = params.to_f64();
    if a0 + a1 == 0.0 {
        return Err(Error::domain("the product needs A0 + A1 ≥ 1"));
    }
    if t == 0 {
        return Ok(CoeffValue::exact(ONE));
    }
    let (two_adic, _) = two_adic_split(t);
    let (depth, s) = truncation_depth(a0, a1, t, tol, two_adic + 8);
    let value = suffix_products(a0, a1, t, depth)[0];
    Ok(CoeffValue {
        value,
        tail_bound: value.norm() * s.exp_m1(),
        depth,
    })
}

/// Closed form in case 2B: `μ̂(2^a b) = -i (b0 - b1) / (σ(∞) A0^{a+1} π b)`.
///
/// This is `(b0-b1)/(2σ(∞)) · A0^{-(a+1)} · Π_{j≥1}(1 + e^{-πib/2^j})/2` with the
/// product summed exactly: it equals `e^{-πib/2} sin(πb/2)/(πb/2) = -2i/(πb)`.
pub fn coeff_limit_2b(params: &AffineParams, t: i64) -> Result<CoeffValue> {
    if params.case() != CaseLabel::Case2B {
        return Err(Error::domain(format!(
            "the closed form holds in case 2B only (got {})",
            params.case()
        )));
    }
    if t == 0 {
        return Err(Error::domain("the closed form needs t ≠ 0"));
    }
    let sigma = rational_to_f64(&sigma_inf(params)?);
    let [a, _, b0, b1, _] = params.to_f64();
    let (two_adic, odd) = two_adic_split(t);
    let im = -(b0 - b1) / (sigma * a.powi(two_adic as i32 + 1) * std::f64::consts::PI * odd as f64);
    Ok(CoeffValue::exact(Complex64::new(0.0, im)))
}

/// `Π_{k=1..depth} (A0² + A1² + 2 A0 A1 cos(2πt/2^k)) / A²`, the truncated
/// `|ν̂(t)|²` at real `t`.
pub fn magnitude_sq_1b(params: &AffineParams, t: f64, depth: u32) -> Result<f64> {
    let [a0, a1, ..] = params.to_f64();
    let a = a0 + a1;
    if a == 0.0 {
        return Err(Error::domain("the product needs A0 + A1 ≥ 1"));
    }
    let mut log_sum = 0.0;
    for k in 1..=depth {
        let angle = 2.0 * std::f64::consts::PI * t * 2f64.powi(-(k as i32));
        let f = (a0 * a0 + a1 * a1 + 2.0 * a0 * a1 * angle.cos()) / (a * a);
        if f <= 0.0 {
            return Ok(0.0);
        }
        log_sum += f.ln();
    }
    Ok(log_sum.exp())
}

/// Depth used for real-argument products.
pub const KAPPA_DEPTH: u32 = 64;

/// `max_{t∈[0,2/5]} |ν̂(1-t)|² / min_{t∈[0,2/5]} |ν̂(t)|²` on a uniform grid.
pub fn kappa_1b(params: &AffineParams, grid_size: usize) -> Result<f64> {
    if params.case() != CaseLabel::Case1B {
        return Err(Error::domain(format!(
            "κ is defined for case 1B (got {})",
            params.case()
        )));
    }
    if grid_size < 2 {
        return Err(Error::domain("grid_size must be ≥ 2"));
    }
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..grid_size {
        let t = 0.4 * k as f64 / (grid_size - 1) as f64;
        hi = hi.max(magnitude_sq_1b(params, 1.0 - t, KAPPA_DEPTH)?);
        lo = lo.min(magnitude_sq_1b(params, t, KAPPA_DEPTH)?);
    }
    Ok(hi / lo)
}

/// Tolerance of each coefficient inside a Wiener average.
pub const WIENER_TOL: f64 = 1e-12;

/// `W_N = 2^{-N} Σ_{n=1..2^N} |μ̂(n)|²`.
pub fn wiener_average(params: &AffineParams, level: u32, limits: &Limits) -> Result<f64> {
    if level > limits.max_wiener_level {
        return Err(Error::ResourceCap {
            what: "wiener level",
            requested: level as u64,
            limit: limits.max_wiener_level as u64,
        });
    }
    let count = 1i64 << level;
    let squares = (1..=count)
        .into_par_iter()
        .map(|n| coeff_limit(params, n, WIENER_TOL).map(|c| c.value.norm_sqr()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(squares.iter().sum::<f64>() / count as f64)
}

/// `‖g‖₂² = 1 + (b0 - b1)² / (4 σ(∞)² (A0² - 1))` in case 2B, exact.
pub fn l2_norm_2b(params: &AffineParams) -> Result<BigRational> {
    if params.case() != CaseLabel::Case2B {
        return Err(Error::domain(format!(
            "the L² identity holds in case 2B only (got {})",
            params.case()
        )));
    }
    let sigma = sigma_inf(params)?;
    let diff = BigRational::from_integer(params.b0().clone().into())
        - BigRational::from_integer(params.b1().clone().into());
    let a = BigRational::from_integer(params.a0().clone().into());
    let four = BigRational::from_integer(4.into());
    Ok(BigRational::one()
        + &diff * &diff / (four * &sigma * &sigma * (&a * &a - BigRational::one())))
}

/// `Σ_{c=0..terms-1} Π_{j=1..depth} cos²(π(c+½)/2^j)`, which tends to 1/2.
pub fn viete_cos_sum(terms: u64, depth: u32) -> f64 {
    (0..terms)
        .map(|c| {
            (1..=depth)
                .map(|j| {
                    let v =
                        (std::f64::consts::PI * (c as f64 + 0.5) * 2f64.powi(-(j as i32))).cos();
                    v * v
                })
                .product::<f64>()
        })
        .sum()
}

/// Explicit `K` with `|μ̂(t)| ≤ K |ν̂(t)|` in case 2C:
/// `K = (f(1) + b/(A-2) + |b0-b1|/|A0-A1|) / σ(∞)`.
pub fn domination_constant_2c(params: &AffineParams) -> Result<f64> {
    if params.case() != CaseLabel::Case2C {
        return Err(Error::domain(format!(
            "the domination bound is for case 2C (got {})",
            params.case()
        )));
    }
    let [a0, a1, b0, b1, f1] = params.to_f64();
    let a = a0 + a1;
    let sigma = rational_to_f64(&sigma_inf(params)?);
    Ok((f1 + (b0 + b1) / (a - 2.0) + (b0 - b1).abs() / (a0 - a1).abs()) / sigma)
}
