//! Small numeric helpers shared across modules: exact-to-float conversion,
//! dyadic phases, compensated summation and the fixed float format used in
//! every emitted table.

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Splits `x` into `(m, e)` with `x ≈ m · 2^e` and `m` holding the top 64 bits.
fn split_top(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_u64().unwrap_or(0) as f64, 0)
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
        (top as f64, shift as i64)
    }
}

/// `v · 2^e` without intermediate overflow of the power.
pub fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

/// `num / den` as a double, for operands of any size.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    if den.is_zero() {
        return f64::INFINITY;
    }
    let (mn, en) = split_top(num);
    let (md, ed) = split_top(den);
    ldexp(mn / md, en - ed)
}

fn signed_ratio(num: &BigInt, den: &BigInt) -> f64 {
    let mag = ratio_to_f64(num.magnitude(), den.magnitude());
    if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
        -mag
    } else {
        mag
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    signed_ratio(q.numer(), q.denom())
}

/// Natural logarithm of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = split_top(x);
    m.ln() + e as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(q: &BigRational) -> f64 {
    ln_biguint(q.numer().magnitude()) - ln_biguint(q.denom().magnitude())
}

/// `e^{-2πi x}`. Exact at quarter turns; `x` is reduced modulo 1 first.
pub fn cis_neg_turns(x: f64) -> Complex64 {
    let r = x - x.floor();
    let scaled = 4.0 * r;
    let quadrant = scaled.floor();
    let angle = (scaled - quadrant) * std::f64::consts::FRAC_PI_2;
    let (s, c) = angle.sin_cos();
    // e^{-iθ} rotated by -q quarter turns
    let base = Complex64::new(c, -s);
    match quadrant as i64 & 3 {
        0 => base,
        1 => Complex64::new(base.im, -base.re),
        2 => -base,
        _ => Complex64::new(-base.im, base.re),
    }
}

/// `e^{-2πi t / 2^level}` for integer `t`, reduced exactly.
pub fn dyadic_phase(t: i64, level: u32) -> Complex64 {
    if level == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if level < 63 {
        let modulus = 1i64 << level;
        let r = t.rem_euclid(modulus);
        cis_neg_turns(r as f64 / modulus as f64)
    } else {
        cis_neg_turns(ldexp(t as f64, -(level as i64)))
    }
}

/// Writes `t ≠ 0` as `2^a · b` with `b` odd.
pub fn two_adic_split(t: i64) -> (u32, i64) {
    debug_assert!(t != 0);
    let a = t.trailing_zeros();
    (a, t >> a)
}

/// Kahan–Babuška compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

fn neumaier(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.sum.re, &mut self.carry.re, z.re);
        neumaier(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// Fixed float rendering: 17 significant digits, scientific notation.
/// Parsing the output and formatting again gives the same bytes.
pub fn fmt_sig17(v: f64) -> String {
    if v == 0.0 {
        // normalise -0
        return format!("{:.16e}", 0.0f64);
    }
    format!("{:.16e}", v)
}
