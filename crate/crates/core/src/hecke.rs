//! The Hecke operator `T(2)`: normalisation `β`, the eigenvalue `λ(2)` and
//! the Satake product.

use crate::codes::{self, CodeData};
use crate::cuspform::CuspCoefficients;
use crate::exactq::{from_factors, is_prime_u64, BigInt, BigRational};
use crate::niemeier::{NiemeierError, Registry};
use crate::subcount::Counter;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error(transparent)]
    Data(#[from] NiemeierError),
    #[error("the row sum vanishes, so λ(2) would be 0")]
    ZeroRow,
    #[error("the row for {0} failed its consistency check")]
    RowCheck(String),
}

/// `β(p, m, n) = p^{n(n+1)/2 − mn/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeNormalization {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub value: BigRational,
    /// Only `(m, n) = (24, 12)` is exercised by the rest of the library.
    pub validated: bool,
}

pub fn beta(p: u64, m: u32, n: u32) -> HeckeNormalization {
    let e = (n as i64) * (n as i64 + 1) / 2 - (m as i64) * (n as i64) / 2;
    let pp = BigRational::from_integer(BigInt::from(p));
    let value = if e >= 0 {
        num_traits::pow(pp, e as usize)
    } else {
        num_traits::pow(pp, (-e) as usize).recip()
    };
    HeckeNormalization {
        p,
        m,
        n,
        value,
        validated: (m, n) == (24, 12),
    }
}

/// `2^7·3^11·5·17·901141`.
pub fn expected_lambda_over_beta() -> BigInt {
    from_factors(&[(2, 7), (3, 11), (5, 1), (17, 1), (901141, 1)])
}

/// `3^11·5·17·901141 / 2^26`.
pub fn expected_satake_product() -> BigRational {
    BigRational::new(
        from_factors(&[(3, 11), (5, 1), (17, 1), (901141, 1)]),
        from_factors(&[(2, 26)]),
    )
}

/// True when 901141 is prime, so that the factorisation above is complete.
pub fn factor_claims_hold() -> bool {
    is_prime_u64(901141)
}

/// `λ(2)` expressed as a multiple of `β(2,24,12)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub over_beta: BigRational,
    pub value: BigRational,
}

impl Eigenvalue {
    fn from_over_beta(over_beta: BigRational) -> Self {
        let value = &over_beta * beta(2, 24, 12).value;
        Eigenvalue { over_beta, value }
    }
}

/// `λ(2)` from the Leech row:
/// `λ·c_Leech = β·Σ_ν c_ν·|Aut Λ_ν|·n(Λ_ν(2) ⊆ Leech)/|Aut Leech|`.
/// Requires every `leechCount` in the registry.
pub fn lambda2(reg: &Registry, coeffs: &CuspCoefficients) -> Result<Eigenvalue, HeckeError> {
    let leech_aut = reg.record(1).aut_order.clone();
    let mut sum = BigRational::zero();
    for (r, c) in reg.records().iter().zip(&coeffs.values) {
        let n = r.leech_count.clone().ok_or_else(|| {
            NiemeierError::MissingData(format!(
                "λ(2) needs n(Λ(2) ⊆ Leech) for all 24 lattices; missing: {}",
                reg.missing_leech_counts().join(", ")
            ))
        })?;
        sum += c * BigRational::new(&r.aut_order * n, leech_aut.clone());
    }
    if sum.is_zero() {
        return Err(HeckeError::ZeroRow);
    }
    Ok(Eigenvalue::from_over_beta(sum / &coeffs.values[0]))
}

/// `λ(2)` from the `D24` row:
/// `λ·c_D24 = β·Σ_ν c_ν·n(D24⁺(2) ⊆ Λ_ν)`. The row is checked first: its
/// transpose must sum to `∏_{i<12}(2^i+1)` and the code automorphism
/// orders must satisfy the code mass formula.
pub fn lambda2_from_d24_row(
    reg: &Registry,
    counter: &Counter,
    coeffs: &CuspCoefficients,
    code_data: &[CodeData],
) -> Result<Eigenvalue, HeckeError> {
    let orders: Vec<BigInt> = code_data.iter().map(|c| c.aut_order.clone()).collect();
    if codes::code_mass(&orders) != codes::code_count() {
        return Err(HeckeError::RowCheck("code mass formula".into()));
    }
    let row = codes::d24_row(reg, counter, code_data);
    let total: BigRational = codes::d24_transposed(reg, &row).into_iter().sum();
    if total != BigRational::from_integer(crate::gf2quad::maximal_isotropic_count_formula(12)) {
        return Err(HeckeError::RowCheck("D24".into()));
    }
    let sum: BigRational = row.iter().zip(&coeffs.values).map(|(n, c)| n * c).sum();
    if sum.is_zero() {
        return Err(HeckeError::ZeroRow);
    }
    Ok(Eigenvalue::from_over_beta(sum / &coeffs.values[23]))
}

/// `|∏(y_i + 1/y_i)| = (λ/β)·2^{-33}`.
pub fn satake_product(lambda: &Eigenvalue) -> BigRational {
    let s = &lambda.over_beta / BigRational::from_integer(from_factors(&[(2, 33)]));
    if s < BigRational::zero() {
        -s
    } else {
        s
    }
}

/// True when the product exceeds `2^12`, its largest value if every
/// Satake parameter had absolute value 1.
pub fn ramanujan_violated(product: &BigRational) -> bool {
    *product > BigRational::from_integer(BigInt::from(4096))
}

pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_values() {
        assert_eq!(
            beta(2, 24, 12).value,
            BigRational::new(BigInt::one(), from_factors(&[(2, 66)]))
        );
        assert_eq!(
            beta(3, 24, 12).value,
            BigRational::new(BigInt::one(), from_factors(&[(3, 66)]))
        );
        assert!(beta(2, 24, 0).value.is_one());
        assert!(!beta(2, 16, 8).validated);
    }

    #[test]
    fn expected_values_are_consistent() {
        assert!(factor_claims_hold());
        let e = Eigenvalue::from_over_beta(BigRational::from_integer(expected_lambda_over_beta()));
        assert_eq!(satake_product(&e), expected_satake_product());
        assert!(ramanujan_violated(&expected_satake_product()));
    }
}
