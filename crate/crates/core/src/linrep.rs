//! Linear representations of affine sequences and the spectral-radius
//! diagnostic `log2(ρ/ρ*)`.
//!
//! Homogeneous parameters use the scalar representation `C_i = [A_i]`,
//! `M = [f(1)]`, `L = [1]`. Otherwise the representation is two-dimensional:
//!
//! ```text
//! C_i = | A_i  b_i |     M = | f(1) |     L = | 1 |
//!       |  0    1  |         |  1   |         | 0 |
//! ```
//!
//! and `f((1 x1 … xi)_2) = Lᵀ · C_{xi} ⋯ C_{x1} · M`: the digits after the
//! leading one are applied innermost-first, the leading one being absorbed
//! into `M`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sequence::{digits_below_leading, AffineParams};

/// Square matrix with non-negative integer entries, row-major.
pub type Matrix = Vec<Vec<BigUint>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub dim: usize,
    pub c0: Matrix,
    pub c1: Matrix,
    pub l: Vec<BigUint>,
    pub m: Vec<BigUint>,
}

/// `ρ`, `ρ*` and `log2(ρ/ρ*)` for the natural representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDiagnostic {
    /// Spectral radius of `C0 + C1` (exact: the sum matrix is triangular).
    pub rho: BigUint,
    /// Joint spectral radius of `{C0, C1}` (exact: simultaneously triangular).
    pub rho_star: BigUint,
    pub log_ratio: f64,
}

impl SpectralDiagnostic {
    /// `log2(ρ/ρ*) = 1` exactly.
    pub fn is_one(&self) -> bool {
        self.rho == &self.rho_star * 2u32
    }

    /// `log2(ρ/ρ*) = 0` exactly.
    pub fn is_zero(&self) -> bool {
        self.rho == self.rho_star
    }
}

fn big(v: u32) -> BigUint {
    BigUint::from(v)
}

pub fn build_linrep(params: &AffineParams) -> LinearRepresentation {
    if params.is_homogeneous() {
        LinearRepresentation {
            dim: 1,
            c0: vec![vec![params.a0().clone()]],
            c1: vec![vec![params.a1().clone()]],
            l: vec![big(1)],
            m: vec![params.f1().clone()],
        }
    } else {
        let c = |bit: bool| {
            vec![
                vec![params.a(bit).clone(), params.b(bit).clone()],
                vec![big(0), big(1)],
            ]
        };
        LinearRepresentation {
            dim: 2,
            c0: c(false),
            c1: c(true),
            l: vec![big(1), big(0)],
            m: vec![params.f1().clone(), big(1)],
        }
    }
}

pub fn mat_vec(a: &Matrix, v: &[BigUint]) -> Vec<BigUint> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Maximum absolute row sum.
pub fn row_sum_norm(a: &Matrix) -> BigUint {
    a.iter()
        .map(|row| row.iter().sum::<BigUint>())
        .max()
        .unwrap_or_default()
}

impl LinearRepresentation {
    pub fn matrix(&self, bit: bool) -> &Matrix {
        if bit {
            &self.c1
        } else {
            &self.c0
        }
    }

    /// `f(n)` through the matrix product.
    pub fn eval(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::domain("n must be ≥ 1"));
        }
        let v = digits_below_leading(n)
            .into_iter()
            .fold(self.m.clone(), |v, bit| mat_vec(self.matrix(bit), &v));
        Ok(self.l.iter().zip(&v).map(|(x, y)| x * y).sum())
    }
}

/// Free-function form of [`LinearRepresentation::eval`].
pub fn eval_via_linrep(rep: &LinearRepresentation, n: u64) -> Result<BigUint> {
    rep.eval(n)
}

/// Closed-form `ρ`, `ρ*` for the natural representation.
pub fn spectral_diagnostic(params: &AffineParams) -> Result<SpectralDiagnostic> {
    let a_sum = params.a_sum();
    let a_max = params.a0().max(params.a1()).clone();
    let (rho, rho_star) = if params.is_homogeneous() {
        (a_sum, a_max)
    } else {
        (a_sum.max(big(2)), a_max.max(big(1)))
    };
    if rho_star.is_zero() {
        return Err(Error::domain("joint spectral radius is zero"));
    }
    let log_ratio = if rho == rho_star {
        0.0
    } else if rho == &rho_star * 2u32 {
        1.0
    } else {
        let r = rho.to_f64().unwrap_or(f64::INFINITY);
        let s = rho_star.to_f64().unwrap_or(f64::INFINITY);
        (r / s).log2()
    };
    Ok(SpectralDiagnostic {
        rho,
        rho_star,
        log_ratio,
    })
}

/// Upper bound on the joint spectral radius from all products of `depth`
/// matrices: `max ‖P‖^{1/depth}` in the row-sum norm. Exponential in depth;
/// meant for checking the closed form, not for production use.
pub fn jsr_upper_bound(rep: &LinearRepresentation, depth: u32) -> f64 {
    assert!(depth >= 1);
    let mut products: Vec<Matrix> = vec![rep.c0.clone(), rep.c1.clone()];
    for _ in 1..depth {
        products = products
            .iter()
            .flat_map(|p| [mat_mul(p, &rep.c0), mat_mul(p, &rep.c1)])
            .collect();
    }
    let best = products.iter().map(row_sum_norm).max().unwrap_or_default();
    let ln = crate::numeric::ln_biguint(&best);
    (ln / depth as f64).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{catalog_entries, catalog_lookup, eval_f};

    fn p(a0: u64, a1: u64, b0: u64, b1: u64, f1: u64) -> AffineParams {
        AffineParams::new(a0, a1, b0, b1, f1).unwrap()
    }

    fn m(rows: &[&[u32]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| big(v)).collect())
            .collect()
    }

    #[test]
    fn representation_shapes() {
        let g = build_linrep(&p(1, 2, 0, 0, 2));
        assert_eq!(g.dim, 1);
        assert_eq!(g.c0, m(&[&[1]]));
        assert_eq!(g.c1, m(&[&[2]]));

        let id = build_linrep(&p(2, 2, 0, 1, 1));
        assert_eq!(id.dim, 2);
        assert_eq!(id.c0, m(&[&[2, 0], &[0, 1]]));
        assert_eq!(id.c1, m(&[&[2, 1], &[0, 1]]));

        let d = build_linrep(&p(3, 0, 0, 1, 1));
        assert_eq!(d.c0, m(&[&[3, 0], &[0, 1]]));
        assert_eq!(d.c1, m(&[&[0, 1], &[0, 1]]));
        for n in 1..=64 {
            assert_eq!(d.eval(n).unwrap(), eval_f(&p(3, 0, 0, 1, 1), n).unwrap());
        }
    }

    #[test]
    fn identity_eleven_by_explicit_product() {
        // 11 = 1011b: digits after the leading one are 0, 1, 1
        let rep = build_linrep(&p(2, 2, 0, 1, 1));
        let prod = mat_mul(&mat_mul(&rep.c1, &rep.c1), &rep.c0);
        let v = mat_vec(&prod, &rep.m);
        let value: BigUint = rep.l.iter().zip(&v).map(|(x, y)| x * y).sum();
        assert_eq!(value, big(11));
        assert_eq!(rep.eval(11).unwrap(), big(11));
    }

    #[test]
    fn eval_examples() {
        let id = build_linrep(&p(2, 2, 0, 1, 1));
        assert_eq!(eval_via_linrep(&id, 6).unwrap(), big(6));
        let g = build_linrep(&catalog_lookup("gould_G").unwrap().params);
        assert_eq!(g.eval(15).unwrap(), big(16));
        let c = build_linrep(&catalog_lookup("cantor").unwrap().params);
        assert_eq!(c.eval(4).unwrap(), big(9));
        assert!(c.eval(0).is_err());
    }

    #[test]
    fn faithful_on_catalog() {
        for e in catalog_entries() {
            let rep = build_linrep(&e.params);
            for n in 1..=4096 {
                assert_eq!(
                    rep.eval(n).unwrap(),
                    eval_f(&e.params, n).unwrap(),
                    "{}",
                    e.name
                );
            }
        }
    }

    #[test]
    fn table_rows() {
        let d = spectral_diagnostic(&p(1, 2, 0, 0, 1)).unwrap();
        assert!((d.log_ratio - 1.5f64.log2()).abs() < 1e-15);
        assert!((d.log_ratio - 0.585).abs() < 1e-3);
        assert_eq!(
            spectral_diagnostic(&p(2, 2, 0, 1, 1)).unwrap().log_ratio,
            1.0
        );
        assert_eq!(
            spectral_diagnostic(&p(3, 0, 0, 1, 1)).unwrap().log_ratio,
            0.0
        );
        // the 2A exception: one coefficient 0, the other 2
        let r = spectral_diagnostic(&p(2, 0, 0, 1, 1)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn closed_form_below_every_certificate() {
        for params in [
            p(1, 2, 0, 0, 1),
            p(2, 2, 0, 1, 1),
            p(3, 0, 0, 1, 1),
            p(1, 3, 2, 1, 1),
            p(4, 1, 0, 0, 1),
            p(1, 1, 0, 1, 1),
        ] {
            let rep = build_linrep(&params);
            let exact = spectral_diagnostic(&params)
                .unwrap()
                .rho_star
                .to_f64()
                .unwrap();
            let bounds: Vec<f64> = [1, 2, 4, 8]
                .iter()
                .map(|&d| jsr_upper_bound(&rep, d))
                .collect();
            for (i, b) in bounds.iter().enumerate() {
                assert!(*b >= exact * (1.0 - 1e-12), "{params}: {b} < {exact}");
                if i > 0 {
                    assert!(*b <= bounds[i - 1] * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn log_ratio_pattern_on_sweep() {
        use crate::sequence::CaseLabel::*;
        for a0 in 0..=5u64 {
            for a1 in 0..=5u64 {
                for b0 in 0..=5u64 {
                    for b1 in 0..=5u64 {
                        let Ok(params) = AffineParams::new(a0, a1, b0, b1, 1u64) else {
                            continue;
                        };
                        let d = spectral_diagnostic(&params).unwrap();
                        assert!((0.0..=1.0).contains(&d.log_ratio));
                        let two_a_exception =
                            params.case() == Case2A && a0.min(a1) == 0 && a0.max(a1) == 2;
                        let expect = match params.case() {
                            Case1A | Case2B => "one",
                            Case2A if !two_a_exception => "one",
                            Case1B | Case2C => "between",
                            _ => "zero",
                        };
                        let got = if d.is_one() {
                            "one"
                        } else if d.is_zero() {
                            "zero"
                        } else {
                            "between"
                        };
                        assert_eq!(got, expect, "({a0},{a1},{b0},{b1})");
                    }
                }
            }
        }
    }
}
