//! Named sequences with known fundamental-region sums and Lebesgue types.

use num_bigint::BigUint;
use num_traits::One;

use super::{AffineParams, CaseLabel};
use crate::error::{Error, Result};

/// A named sequence and the facts used as test fixtures.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: &'static str,
    pub params: AffineParams,
    /// The regime the sequence falls into.
    pub expected_case: CaseLabel,
    /// Closed form for `Σ(N)` (valid for `N ≥ 1`), where one is known.
    pub sigma_closed_form: Option<fn(u32) -> BigUint>,
}

const FIXED_NAMES: [&str; 10] = [
    "constant",
    "identity",
    "gould_g",
    "gould_G",
    "ruler_r",
    "ruler_R",
    "cantor",
    "no_ap",
    "moser_de_bruijn",
    "trivial_pp",
];

/// Every accepted name, with the parametrised family written as a pattern.
pub fn catalog_names() -> Vec<String> {
    FIXED_NAMES
        .iter()
        .map(|s| s.to_string())
        .chain(std::iter::once("missing_digit(d,j)".to_string()))
        .collect()
}

fn two_pow(n: u32) -> BigUint {
    BigUint::one() << n
}

fn sigma_constant(n: u32) -> BigUint {
    two_pow(n)
}

fn sigma_gould_g(n: u32) -> BigUint {
    // 2^{N-1}(N+2)
    (BigUint::from(n) + 2u32) * two_pow(n) / 2u32
}

fn sigma_gould_big_g(n: u32) -> BigUint {
    BigUint::from(3u32).pow(n) * 2u32
}

fn sigma_ruler_r(n: u32) -> BigUint {
    two_pow(n) - 1u32
}

fn entry(
    name: &str,
    description: &'static str,
    coeffs: (u64, u64, u64, u64, u64),
    expected_case: CaseLabel,
    sigma_closed_form: Option<fn(u32) -> BigUint>,
) -> CatalogEntry {
    let (a0, a1, b0, b1, f1) = coeffs;
    CatalogEntry {
        name: name.to_string(),
        description,
        params: AffineParams::new(a0, a1, b0, b1, f1).expect("catalog parameters are valid"),
        expected_case,
        sigma_closed_form,
    }
}

/// Looks up a named sequence. `missing_digit(d,j)` takes `d ≥ 2`, `1 ≤ j ≤ d-1`.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    use CaseLabel::*;
    let e = match name {
        "constant" => entry(
            name,
            "f(n) = 1",
            (0, 0, 1, 1, 1),
            Case2A,
            Some(sigma_constant),
        ),
        "identity" => entry(name, "f(n) = n", (2, 2, 0, 1, 1), Case2B, None),
        "gould_g" => entry(
            name,
            "number of ones in the binary expansion of n",
            (1, 1, 0, 1, 1),
            Case2A,
            Some(sigma_gould_g),
        ),
        "gould_G" => entry(
            name,
            "2^(number of ones); odd entries in row n of Pascal's triangle",
            (1, 2, 0, 0, 2),
            Case1B,
            Some(sigma_gould_big_g),
        ),
        "ruler_r" => entry(
            name,
            "2-adic valuation of n",
            (1, 0, 1, 0, 0),
            Case2A,
            Some(sigma_ruler_r),
        ),
        "ruler_R" => entry(
            name,
            "largest power of 2 dividing n",
            (2, 0, 0, 1, 1),
            Case2A,
            Some(sigma_gould_g),
        ),
        "cantor" => entry(
            name,
            "ternary expansions 1 followed by digits 0 and 2 only",
            (3, 3, 0, 2, 1),
            Case2B,
            None,
        ),
        "no_ap" => entry(
            name,
            "greedy sequence free of 3-term arithmetic progressions",
            (3, 3, 0, 1, 1),
            Case2B,
            None,
        ),
        "moser_de_bruijn" => entry(
            name,
            "sums of distinct powers of 4",
            (4, 4, 0, 1, 1),
            Case2B,
            None,
        ),
        "trivial_pp" => entry(
            name,
            "1 at powers of two, 0 elsewhere",
            (1, 0, 0, 0, 1),
            Case1C,
            None,
        ),
        other => return parse_missing_digit(other),
    };
    Ok(e)
}

fn unknown(name: &str) -> Error {
    Error::UnknownCatalog {
        name: name.to_string(),
        valid: catalog_names().join(", "),
    }
}

fn parse_missing_digit(name: &str) -> Result<CatalogEntry> {
    let inner = name
        .strip_prefix("missing_digit(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| unknown(name))?;
    let mut parts = inner.split(',').map(|s| s.trim().parse::<u64>());
    let (Some(Ok(d)), Some(Ok(j)), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(unknown(name));
    };
    if d < 2 || j < 1 || j >= d {
        return Err(Error::domain(format!(
            "missing_digit(d,j) needs d ≥ 2 and 1 ≤ j ≤ d-1 (got d={d}, j={j})"
        )));
    }
    Ok(entry(
        &format!("missing_digit({d},{j})"),
        "base-d expansions 1 followed by digits 0 and j only",
        (d, d, 0, j, 1),
        CaseLabel::Case2B,
        None,
    ))
}

/// The fixture corpus: every fixed name plus a few missing-digit instances.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    FIXED_NAMES
        .iter()
        .map(|n| n.to_string())
        .chain(["missing_digit(5,2)", "missing_digit(4,3)"].map(String::from))
        .map(|n| catalog_lookup(&n).expect("fixture names resolve"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::big_sigma;

    #[test]
    fn named_parameters() {
        let cantor = catalog_lookup("cantor").unwrap();
        assert_eq!(
            cantor.params,
            AffineParams::new(3u32, 3u32, 0u32, 2u32, 1u32).unwrap()
        );
        let m = catalog_lookup("moser_de_bruijn").unwrap();
        assert_eq!(
            m.params,
            AffineParams::new(4u32, 4u32, 0u32, 1u32, 1u32).unwrap()
        );
        let r = catalog_lookup("ruler_R").unwrap();
        assert_eq!(
            r.params,
            AffineParams::new(2u32, 0u32, 0u32, 1u32, 1u32).unwrap()
        );
    }

    #[test]
    fn unknown_name_lists_valid_names() {
        let err = catalog_lookup("stern").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("stern") && msg.contains("gould_G") && msg.contains("missing_digit"));
        assert!(catalog_lookup("missing_digit(3)").is_err());
        assert!(matches!(
            catalog_lookup("missing_digit(3,3)"),
            Err(Error::Domain(_))
        ));
        let md = catalog_lookup("missing_digit(3, 2)").unwrap();
        assert_eq!(md.params, catalog_lookup("cantor").unwrap().params);
    }

    #[test]
    fn expected_cases_match_parameters() {
        for e in catalog_entries() {
            assert_eq!(e.params.case(), e.expected_case, "{}", e.name);
        }
    }

    #[test]
    fn closed_forms_match_lemma() {
        for e in catalog_entries() {
            if let Some(closed) = e.sigma_closed_form {
                for n in 1..=24 {
                    assert_eq!(
                        big_sigma(&e.params, n).unwrap(),
                        closed(n),
                        "{} N={n}",
                        e.name
                    );
                }
            }
        }
    }
}
