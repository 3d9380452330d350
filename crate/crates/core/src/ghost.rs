//! Exact properties of the limit measure `μ`: its Lebesgue type, the mass of
//! dyadic intervals, the density in the absolutely continuous regime, the
//! concentration diagnostics in the singular regime and the atoms in the
//! pure point regime.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approximant::DyadicInterval;
use crate::error::{Error, Result};
use crate::numeric::ln_biguint;
use crate::sequence::{eval_digits, sigma_inf, AffineParams, CaseLabel};

/// Seed used for fair-coin bit strings unless the caller picks another.
pub const DEFAULT_WITNESS_SEED: u64 = 0x5EED_2C2C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LebesgueKind {
    LebesgueMeasure,
    AbsolutelyContinuous,
    SingularContinuous,
    PurePoint,
}

/// Where a pure point measure lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PurePointSupport {
    DeltaAtZero,
    DyadicRationals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LebesgueClass {
    pub kind: LebesgueKind,
    pub case: CaseLabel,
    pub detail: Option<PurePointSupport>,
}

impl fmt::Display for LebesgueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match (self.kind, self.detail) {
            (LebesgueKind::LebesgueMeasure, _) => "lebesgue",
            (LebesgueKind::AbsolutelyContinuous, _) => "absolutely-continuous",
            (LebesgueKind::SingularContinuous, _) => "singular-continuous",
            (LebesgueKind::PurePoint, Some(PurePointSupport::DeltaAtZero)) => {
                "pure-point(delta-at-0)"
            }
            (LebesgueKind::PurePoint, _) => "pure-point(dyadic)",
        };
        write!(f, "{} {}", self.case, label)
    }
}

pub fn classify(params: &AffineParams) -> LebesgueClass {
    use CaseLabel::*;
    use LebesgueKind::*;
    let case = params.case();
    let (kind, detail) = match case {
        Case1A | Case2A => (LebesgueMeasure, None),
        Case2B => (AbsolutelyContinuous, None),
        Case1B | Case2C => (SingularContinuous, None),
        Case1C => (PurePoint, Some(PurePointSupport::DeltaAtZero)),
        Case2D => (PurePoint, Some(PurePointSupport::DyadicRationals)),
    };
    LebesgueClass { kind, case, detail }
}

fn ensure_nonzero_sequence(params: &AffineParams) -> Result<()> {
    if params.is_identically_zero() {
        return Err(Error::domain(
            "f(1) = 0 and b0 = b1 = 0: the sequence vanishes and has no ghost measure",
        ));
    }
    Ok(())
}

/// How `μ(E_i(x))` is obtained for a parameter set.
enum IntervalRule {
    /// `μ = λ`.
    Lebesgue,
    /// Homogeneous with both multipliers positive: `Π A_{x_j} / A^i`.
    Product,
    /// `A0, A1 > 0`, `A ≥ 3`, inhomogeneous.
    Affine,
}

fn interval_rule(params: &AffineParams) -> Result<IntervalRule> {
    ensure_nonzero_sequence(params)?;
    match params.case() {
        CaseLabel::Case2A => Ok(IntervalRule::Lebesgue),
        CaseLabel::Case1A | CaseLabel::Case1B => Ok(IntervalRule::Product),
        CaseLabel::Case2B | CaseLabel::Case2C => Ok(IntervalRule::Affine),
        other => Err(Error::domain(format!(
            "interval measure needs A0 > 0 and A1 > 0 (case {other} has a zero multiplier)"
        ))),
    }
}

/// Numerator and denominator of `μ(E_i)` given `F = f((1 x1…xi)_2)`.
fn interval_fraction(
    params: &AffineParams,
    rule: &IntervalRule,
    value: &BigUint,
    depth: usize,
) -> (BigUint, BigUint) {
    let a = params.a_sum();
    match rule {
        IntervalRule::Lebesgue => (BigUint::one(), BigUint::one() << depth),
        IntervalRule::Product => (value.clone(), a.pow(depth as u32) * params.f1()),
        IntervalRule::Affine => {
            // (F + b/(A-2)) / (A^i σ(∞)) with σ(∞) = f(1) + b/(A-2)
            let shift = &a - 2u32;
            let num = value * &shift + params.b_sum();
            let den = a.pow(depth as u32) * (params.f1() * &shift + params.b_sum());
            (num, den)
        }
    }
}

/// `μ(E_i(x))`, exact.
pub fn interval_measure(params: &AffineParams, interval: &DyadicInterval) -> Result<BigRational> {
    let rule = interval_rule(params)?;
    let value = eval_digits(params, interval.bits());
    let (num, den) = interval_fraction(params, &rule, &value, interval.depth());
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// A real value with a bound on the error from truncating a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub tail_bound: f64,
}

/// Radon–Nikodym derivative in case 2B, truncated after `depth` digits.
/// Missing digits are taken as 0 (dyadic points use the terminating expansion).
pub fn density(params: &AffineParams, bits: &[bool], depth: usize) -> Result<Truncated> {
    if params.case() != CaseLabel::Case2B {
        return Err(Error::domain(format!(
            "density is defined here for case 2B only (got {})",
            params.case()
        )));
    }
    let [a, _, b0, b1, f1] = params.to_f64();
    let series = (0..depth).rev().fold(0.0, |acc, j| {
        let bit = bits.get(j).copied().unwrap_or(false);
        (acc + if bit { b1 } else { b0 }) / a
    });
    let denominator = f1 + (b0 + b1) / (2.0 * a - 2.0);
    Ok(Truncated {
        value: (f1 + series) / denominator,
        tail_bound: b0.max(b1) / ((a - 1.0) * a.powi(depth as i32) * denominator),
    })
}

/// [`density`] at a real point of `[0, 1)`.
pub fn density_at(params: &AffineParams, x: f64, depth: usize) -> Result<Truncated> {
    let interval = DyadicInterval::containing(x, depth)?;
    density(params, interval.bits(), depth)
}

/// The lower-density cutoff for the minority digit in cases 1B and 2C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationThreshold {
    pub lambda_cap: f64,
    /// The digit with the smaller multiplier.
    pub minority_digit: bool,
}

pub fn lambda_threshold(params: &AffineParams) -> Result<ConcentrationThreshold> {
    let [a0, a1, ..] = params.to_f64();
    if a0 == a1 || a0 == 0.0 || a1 == 0.0 {
        return Err(Error::domain(
            "the concentration threshold needs A0 ≠ A1, both positive",
        ));
    }
    let (lo, hi) = (a0.min(a1), a0.max(a1));
    Ok(ConcentrationThreshold {
        lambda_cap: (2.0 * hi / (a0 + a1)).ln() / (hi / lo).ln(),
        minority_digit: a0 > a1,
    })
}

/// One entry of a ratio sequence: `μ(E_j(x)) / λ(E_j(x))` at depth `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub depth: usize,
    pub ln_ratio: f64,
}

impl RatioPoint {
    pub fn ratio(&self) -> f64 {
        self.ln_ratio.exp()
    }
}

/// `2^j · μ(E_j(x))` for `j = 1..=bits.len()`, evaluated in log space.
pub fn ratio_sequence(params: &AffineParams, bits: &[bool]) -> Result<Vec<RatioPoint>> {
    let rule = interval_rule(params)?;
    let mut value = params.f1().clone();
    let mut out = Vec::with_capacity(bits.len());
    for (j, &bit) in bits.iter().enumerate() {
        value = value * params.a(bit) + params.b(bit);
        let depth = j + 1;
        let (num, den) = interval_fraction(params, &rule, &value, depth);
        let ln_ratio = depth as f64 * std::f64::consts::LN_2 + ln_biguint(&num) - ln_biguint(&den);
        out.push(RatioPoint { depth, ln_ratio });
    }
    Ok(out)
}

/// `count` independent fair-coin bit strings of length `len`, reproducible from `seed`.
pub fn fair_coin_bits(seed: u64, count: usize, len: usize) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen::<bool>()).collect())
        .collect()
}

/// Case-2D parameters arranged so that the zero multiplier is `A1`.
///
/// For `A0 = 0` the atoms sit at the reflections `1 - x` of the atoms of the
/// digit-swapped sequence. Reflection keeps the position of the last one-bit
/// and the atom masses depend only on that position, so the swapped formulas
/// apply unchanged.
fn pure_point_frame(params: &AffineParams) -> Result<AffineParams> {
    ensure_nonzero_sequence(params)?;
    if params.case() != CaseLabel::Case2D {
        return Err(Error::domain(format!(
            "point masses are computed for case 2D only (got {})",
            params.case()
        )));
    }
    Ok(if params.a1().is_zero() {
        params.clone()
    } else {
        params.digit_swapped()
    })
}

fn int(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// `μ({0})` in the 2D frame.
fn mass_at_zero(frame: &AffineParams, sigma: &BigRational) -> BigRational {
    let a = int(frame.a0());
    (BigRational::from_integer(int(frame.f1())) + BigRational::new(int(frame.b0()), a - 1)) / sigma
}

/// Mass of each atom whose last one-bit is at position `n ≥ 1`.
fn mass_at_position(frame: &AffineParams, sigma: &BigRational, n: u32) -> BigRational {
    let a = int(frame.a0());
    let inner =
        BigRational::from_integer(int(frame.b1())) + BigRational::new(int(frame.b0()), &a - 1);
    inner / BigRational::from_integer(a.pow(n)) / sigma
}

/// Position (1-based) of the last one-bit, or `None` for `x = 0`.
fn last_one(bits: &[bool]) -> Option<u32> {
    bits.iter().rposition(|&b| b).map(|i| i as u32 + 1)
}

/// `μ({x})` for a dyadic rational `x = (0.x1…xk)_2`, case 2D.
pub fn point_mass(params: &AffineParams, bits: &[bool]) -> Result<BigRational> {
    let frame = pure_point_frame(params)?;
    let sigma = sigma_inf(&frame)?;
    Ok(match last_one(bits) {
        None => mass_at_zero(&frame, &sigma),
        Some(n) => mass_at_position(&frame, &sigma, n),
    })
}

/// Accumulated atom mass up to a given last-one-bit position.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMassTotal {
    /// `μ({0})` plus every atom whose last one-bit is at position `≤ n_max`.
    pub partial: BigRational,
    /// Mass of all remaining atoms (a geometric tail), exact.
    pub tail: BigRational,
    /// Total mass of all atoms from the closed form; equals 1.
    pub closed_total: BigRational,
}

pub fn point_mass_total(params: &AffineParams, n_max: u32) -> Result<PointMassTotal> {
    let frame = pure_point_frame(params)?;
    let sigma = sigma_inf(&frame)?;
    let mut partial = mass_at_zero(&frame, &sigma);
    for n in 1..=n_max {
        let atoms = BigRational::from_integer(BigInt::one() << (n - 1));
        partial += atoms * mass_at_position(&frame, &sigma, n);
    }
    let a = int(frame.a0());
    let weight =
        BigRational::from_integer(int(frame.b1())) + BigRational::new(int(frame.b0()), &a - 1);
    let ratio = BigRational::new(BigInt::from(2), a.clone());
    let tail = &weight * pow_rational(&ratio, n_max) / BigRational::from_integer(&a - 2) / &sigma;
    let closed_total =
        mass_at_zero(&frame, &sigma) + weight / BigRational::from_integer(a - 2) / &sigma;
    Ok(PointMassTotal {
        partial,
        tail,
        closed_total,
    })
}

fn pow_rational(q: &BigRational, n: u32) -> BigRational {
    BigRational::new(q.numer().pow(n), q.denom().pow(n))
}

/// Location of the level-`N` atom that carries the mass of the limit atom at
/// dyadic `x`: `x` itself when `A1 = 0`, the atom just below `x` (mod 1) when `A0 = 0`.
pub fn comb_index_for_atom(params: &AffineParams, bits: &[bool], level: u32) -> Result<usize> {
    pure_point_frame(params)?;
    if bits.len() > level as usize {
        return Err(Error::domain("dyadic point is finer than the comb level"));
    }
    let idx = bits
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
        << (level as usize - bits.len());
    Ok(if params.a1().is_zero() {
        idx
    } else {
        (idx + (1usize << level) - 1) % (1usize << level)
    })
}

/// Nearest double to an exact measure value.
pub fn to_f64(q: &BigRational) -> f64 {
    crate::numeric::rational_to_f64(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximant::{build_comb, interval_mass_at_level};
    use crate::numeric::rational_to_f64;
    use crate::sequence::{big_sigma, catalog_entries, catalog_lookup, Limits};
    use CaseLabel::*;

    fn p(a0: u64, a1: u64, b0: u64, b1: u64, f1: u64) -> AffineParams {
        AffineParams::new(a0, a1, b0, b1, f1).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn iv(bits: &str) -> DyadicInterval {
        DyadicInterval::parse(bits).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        iv(s).bits().to_vec()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&p(1, 1, 0, 1, 1));
        assert_eq!((c.case, c.kind), (Case2A, LebesgueKind::LebesgueMeasure));
        let c = classify(&catalog_lookup("gould_G").unwrap().params);
        assert_eq!((c.case, c.kind), (Case1B, LebesgueKind::SingularContinuous));
        let c = classify(&catalog_lookup("cantor").unwrap().params);
        assert_eq!(
            (c.case, c.kind),
            (Case2B, LebesgueKind::AbsolutelyContinuous)
        );
        let c = classify(&p(1, 0, 0, 0, 1));
        assert_eq!(c.detail, Some(PurePointSupport::DeltaAtZero));
        assert_eq!(c.to_string(), "1C pure-point(delta-at-0)");
        assert_eq!(
            classify(&p(3, 0, 0, 1, 1)).to_string(),
            "2D pure-point(dyadic)"
        );
    }

    #[test]
    fn classification_is_total_and_consistent() {
        let mut seen = std::collections::HashSet::new();
        for a0 in 0..=5u64 {
            for a1 in 0..=5u64 {
                for b0 in 0..=5u64 {
                    for b1 in 0..=5u64 {
                        let Ok(params) = AffineParams::new(a0, a1, b0, b1, 1u64) else {
                            continue;
                        };
                        let c = classify(&params);
                        seen.insert(c.case);
                        let point = c.kind == LebesgueKind::PurePoint;
                        assert_eq!(point, c.detail.is_some());
                        assert_eq!(c.case.is_homogeneous(), b0 + b1 == 0);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn interval_measure_examples() {
        let id = p(2, 2, 0, 1, 1);
        assert_eq!(interval_measure(&id, &iv("")).unwrap(), q(1, 1));
        assert_eq!(interval_measure(&id, &iv("1")).unwrap(), q(7, 12));
        // ∫ (2+2x)/3 over [1/4, 1/2)
        assert_eq!(interval_measure(&id, &iv("01")).unwrap(), q(11, 48));

        let c = p(1, 2, 1, 0, 1);
        let exact = interval_measure(&c, &iv("0")).unwrap();
        let comb = interval_mass_at_level(&c, &iv("0"), 20, &Limits::default()).unwrap();
        let err = rational_to_f64(&(exact - comb)).abs();
        assert!(err <= 2.0 * (2.0f64 / 3.0).powi(19), "{err}");

        let lam = p(1, 1, 0, 1, 1);
        assert_eq!(interval_measure(&lam, &iv("0110")).unwrap(), q(1, 16));
        let g = p(1, 2, 0, 0, 2);
        assert_eq!(interval_measure(&g, &iv("10")).unwrap(), q(2, 9));

        for bad in [p(1, 0, 0, 0, 1), p(3, 0, 0, 1, 1), p(0, 4, 1, 1, 1)] {
            assert!(matches!(
                interval_measure(&bad, &iv("1")),
                Err(Error::Domain(_))
            ));
        }
        assert!(interval_measure(&p(2, 3, 0, 0, 0), &iv("1")).is_err());
    }

    /// Remainder identity for inhomogeneous parameters with `A ≥ 3`:
    /// `μ_{i+c}(E) - μ(E) = R (2^i μ(E) - 1)` with
    /// `R = (b/(A-2)) (2/A)^c / (A^i σ(i+c))`.
    fn remainder(params: &AffineParams, i: usize, c: u32) -> BigRational {
        let a = BigInt::from(params.a_sum());
        let level = i as u32 + c;
        let sigma_n = BigRational::new(
            BigInt::from(big_sigma(params, level).unwrap()),
            a.pow(level),
        );
        BigRational::new(BigInt::from(params.b_sum()), &a - 2)
            * BigRational::new(BigInt::from(2).pow(c), a.pow(c))
            / BigRational::from_integer(a.pow(i as u32))
            / sigma_n
    }

    #[test]
    fn comb_remainder_is_exact() {
        let lim = Limits::default();
        for params in [
            p(2, 2, 0, 1, 1),
            p(1, 2, 1, 0, 1),
            p(3, 3, 0, 2, 1),
            p(1, 4, 2, 3, 5),
        ] {
            for s in ["", "0", "1", "0110", "11101", "00000001"] {
                let e = iv(s);
                let mu = interval_measure(&params, &e).unwrap();
                let two_i = BigRational::from_integer(BigInt::one() << e.depth());
                for c in [0u32, 3, 8] {
                    let comb =
                        interval_mass_at_level(&params, &e, e.depth() as u32 + c, &lim).unwrap();
                    let r = remainder(&params, e.depth(), c);
                    assert_eq!(
                        comb - &mu,
                        r * (&two_i * &mu - BigRational::one()),
                        "{params} {s} c={c}"
                    );
                }
            }
        }
    }

    #[test]
    fn homogeneous_combs_are_exact_at_every_level() {
        let lim = Limits::default();
        let g = p(1, 2, 0, 0, 2);
        for s in ["", "1", "0110", "111"] {
            let mu = interval_measure(&g, &iv(s)).unwrap();
            for level in s.len() as u32..12 {
                assert_eq!(interval_mass_at_level(&g, &iv(s), level, &lim).unwrap(), mu);
            }
        }
    }

    #[test]
    fn density_examples() {
        let id = p(2, 2, 0, 1, 1);
        let half = density(&id, &bits("1"), 40).unwrap();
        assert!((half.value - 1.0).abs() <= half.tail_bound + 1e-15);
        let zero = density(&id, &[], 40).unwrap();
        assert!((zero.value - 2.0 / 3.0).abs() < 1e-15);
        let cantor = catalog_lookup("cantor").unwrap().params;
        assert!((density(&cantor, &[], 30).unwrap().value - 2.0 / 3.0).abs() < 1e-15);
        // 2^i μ(E_i(0)) → g(0)
        let r = 2f64.powi(30)
            * to_f64(&interval_measure(&cantor, &DyadicInterval::new(vec![false; 30])).unwrap());
        assert!((r - 2.0 / 3.0).abs() < 1e-12, "{r}");
        assert!(matches!(
            density(&p(1, 2, 1, 0, 1), &[], 10),
            Err(Error::Domain(_))
        ));
        assert!(density_at(&id, 1.0, 10).is_err());
    }

    #[test]
    fn density_averages_to_one() {
        for params in [p(2, 2, 0, 1, 1), p(3, 3, 0, 2, 1), p(5, 5, 3, 1, 2)] {
            let d = 20;
            let n = 1usize << d;
            let mut sum = 0.0;
            let mut tail = 0.0;
            for k in 0..n {
                let b: Vec<bool> = (0..d).map(|j| (k >> (d - 1 - j)) & 1 == 1).collect();
                let g = density(&params, &b, d).unwrap();
                sum += g.value;
                tail = g.tail_bound;
            }
            let avg = sum / n as f64;
            assert!((avg - 1.0).abs() <= tail + 1e-12, "{params} {avg}");
        }
    }

    #[test]
    fn thresholds() {
        let t = lambda_threshold(&p(1, 2, 0, 0, 1)).unwrap();
        assert!((t.lambda_cap - (4.0f64 / 3.0).ln() / 2f64.ln()).abs() < 1e-15);
        assert!((t.lambda_cap - 0.41504).abs() < 1e-5);
        assert!(!t.minority_digit);
        let s = lambda_threshold(&p(2, 1, 1, 0, 1)).unwrap();
        assert_eq!(s.lambda_cap, t.lambda_cap);
        assert!(s.minority_digit);
        let u = lambda_threshold(&p(1, 3, 0, 0, 1)).unwrap();
        assert!((u.lambda_cap - 0.36907).abs() < 1e-5);
        assert!(lambda_threshold(&p(2, 2, 0, 1, 1)).is_err());
        assert!(lambda_threshold(&p(3, 0, 0, 1, 1)).is_err());
        for a0 in 1..=64u64 {
            for a1 in 1..=64u64 {
                if a0 != a1 {
                    let l = lambda_threshold(&p(a0, a1, 0, 0, 1)).unwrap().lambda_cap;
                    assert!(l > 0.0 && l < 0.5, "({a0},{a1}) {l}");
                }
            }
        }
    }

    #[test]
    fn ratio_tends_to_density_in_2b() {
        let id = p(2, 2, 0, 1, 1);
        for s in ["1", "0101", "1100111", "0"] {
            let mut x = bits(s);
            x.resize(48, false);
            let r = ratio_sequence(&id, &x).unwrap();
            let g = density(&id, &x, 48).unwrap().value;
            assert!((r[47].ratio() - g).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn ratio_collapses_on_minority_heavy_strings() {
        let c = p(1, 2, 1, 0, 1);
        let alt: Vec<bool> = (0..4096).map(|i| i % 2 == 1).collect();
        let r = ratio_sequence(&c, &alt).unwrap();
        // one 0 and one 1 per pair: ln((1/1.5)(2/1.5)) = ln(8/9) per two digits
        let slope = (r[4095].ln_ratio - r[63].ln_ratio) / 4032.0;
        assert!((slope - 0.5 * (8.0f64 / 9.0).ln()).abs() < 1e-3, "{slope}");
        assert!(r[4095].ratio() < 1e-100);
        assert!(r
            .windows(2)
            .skip(64)
            .step_by(2)
            .all(|w| w[1].ln_ratio < w[0].ln_ratio + 1.0));

        let ones = vec![true; 64];
        let r = ratio_sequence(&c, &ones).unwrap();
        // f((11…1)_2) = 2^j gives ratio_j = (4/3)^j (1 + 2^{-j}) / 2
        for point in &r {
            let j = point.depth as i32;
            let closed = (4.0f64 / 3.0).powi(j) * (1.0 + 2f64.powi(-j)) / 2.0;
            assert!((point.ratio() / closed - 1.0).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn fair_coin_witness_with_long_strings() {
        // at 64 digits the downward drift of ln(8/9)/2 per digit is still
        // smaller than the walk's spread, so long strings are used here
        for params in [
            p(1, 2, 1, 0, 1),
            p(2, 1, 0, 3, 1),
            p(1, 3, 1, 1, 1),
            p(2, 5, 1, 0, 1),
        ] {
            let strings = fair_coin_bits(DEFAULT_WITNESS_SEED, 100, 4096);
            let below = strings
                .iter()
                .filter(|x| ratio_sequence(&params, x).unwrap()[4095].ratio() < 1e-2)
                .count();
            assert!(below >= 95, "{params}: {below}");
        }
    }

    #[test]
    fn fair_coin_bits_are_reproducible() {
        let a = fair_coin_bits(7, 3, 50);
        assert_eq!(a, fair_coin_bits(7, 3, 50));
        assert_ne!(a, fair_coin_bits(8, 3, 50));
        let ones: usize = fair_coin_bits(1, 1, 10_000)[0]
            .iter()
            .filter(|&&b| b)
            .count();
        assert!((4_700..5_300).contains(&ones));
    }

    #[test]
    fn point_mass_examples() {
        let d = p(3, 0, 0, 1, 1);
        assert_eq!(point_mass(&d, &[]).unwrap(), q(1, 2));
        assert_eq!(point_mass(&d, &bits("1")).unwrap(), q(1, 6));
        assert_eq!(point_mass(&d, &bits("0110")).unwrap(), q(1, 54));
        assert_eq!(point_mass(&d, &bits("0100")).unwrap(), q(1, 18));
        let t = point_mass_total(&d, 1).unwrap();
        assert_eq!(t.partial, q(2, 3));
        assert_eq!(point_mass_total(&d, 0).unwrap().partial, q(1, 2));
        let t = point_mass_total(&d, 20).unwrap();
        assert_eq!(&t.partial + &t.tail, q(1, 1));
        assert_eq!(
            t.tail,
            q(1, 2) * BigRational::new(BigInt::from(2).pow(20), BigInt::from(3).pow(20))
        );
        assert!(point_mass(&p(2, 2, 0, 1, 1), &[]).is_err());
    }

    #[test]
    fn point_masses_complete_for_2d_family() {
        for a in 3..=7u64 {
            for (b0, b1, f1) in [(0, 1, 1), (2, 1, 1), (1, 0, 3), (4, 5, 0)] {
                for params in [p(a, 0, b0, b1, f1), p(0, a, b1, b0, f1)] {
                    for n_max in [0, 1, 5, 17] {
                        let t = point_mass_total(&params, n_max).unwrap();
                        assert_eq!(t.closed_total, q(1, 1), "{params}");
                        assert_eq!(t.partial + t.tail, q(1, 1), "{params}");
                    }
                }
            }
        }
    }

    #[test]
    fn point_masses_match_comb_atoms() {
        let lim = Limits::default();
        for params in [
            p(3, 0, 0, 1, 1),
            p(0, 3, 1, 0, 1),
            p(0, 4, 2, 1, 3),
            p(5, 0, 1, 2, 1),
        ] {
            let comb = build_comb(&params, 16, &lim).unwrap();
            for s in ["", "1", "01", "11", "101", "0011", "10000001"] {
                let x = bits(s);
                let exact = to_f64(&point_mass(&params, &x).unwrap());
                let idx = comb_index_for_atom(&params, &x, 16).unwrap();
                let w = rational_to_f64(&comb.atom(idx));
                assert!(
                    (w - exact).abs() <= 1e-3 * exact,
                    "{params} {s}: {w} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn ratio_sequence_matches_interval_measure() {
        for e in catalog_entries() {
            let Ok(r) = ratio_sequence(&e.params, &bits("1101001")) else {
                continue;
            };
            for point in r {
                let m = interval_measure(
                    &e.params,
                    &DyadicInterval::new(bits("1101001")[..point.depth].to_vec()),
                )
                .unwrap();
                let direct = to_f64(&m) * 2f64.powi(point.depth as i32);
                assert!(
                    (point.ratio() - direct).abs() <= 1e-12 * direct,
                    "{}",
                    e.name
                );
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn lemma_params() -> impl Strategy<Value = AffineParams> {
            (1u64..6, 1u64..6, 0u64..6, 0u64..6, 0u64..6)
                .prop_filter("A ≥ 3, not homogeneous", |(a0, a1, b0, b1, _)| {
                    a0 + a1 >= 3 && b0 + b1 > 0
                })
                .prop_map(|(a0, a1, b0, b1, f1)| p(a0, a1, b0, b1, f1))
        }

        proptest! {
            #[test]
            fn additivity(params in lemma_params(), x in proptest::collection::vec(any::<bool>(), 0..10)) {
                let e = DyadicInterval::new(x);
                let whole = interval_measure(&params, &e).unwrap();
                let split = interval_measure(&params, &e.child(false)).unwrap()
                    + interval_measure(&params, &e.child(true)).unwrap();
                prop_assert_eq!(whole, split);
            }

            #[test]
            fn remainder_bound(params in lemma_params(), x in proptest::collection::vec(any::<bool>(), 0..=8),
                               c in 8u32..=12) {
                let e = DyadicInterval::new(x);
                let mu = interval_measure(&params, &e).unwrap();
                let comb = interval_mass_at_level(&params, &e, e.depth() as u32 + c, &Limits::default()).unwrap();
                let two_i = BigRational::from_integer(BigInt::one() << e.depth());
                let diff = comb - &mu;
                let r = remainder(&params, e.depth(), c);
                prop_assert_eq!(&diff, &(&r * (two_i * &mu - BigRational::one())));
                // 2^i μ(E) ≤ 2^i · max(A_x)^i f-scale, so this is the bound in usable form
                prop_assert!(rational_to_f64(&diff).abs() <= rational_to_f64(&r) * (2f64.powi(e.depth() as i32) * to_f64(&mu) + 1.0));
            }
        }
    }
}
