//! The cusp form as a combination of Niemeier theta series: coefficients,
//! Fourier coefficients of root lattices, the determinant table and the
//! Witt–Igusa check.

use crate::exactq::{from_factors, BigInt, BigRational};
use crate::niemeier::{CountMatrix, Registry, D12_ROW};
use crate::rootsys::{IrreducibleType, RootSystemType};
use crate::subcount::Counter;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CuspError {
    #[error("kernel of the rank < 12 rows has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("the D12 normalisation vanishes on the kernel")]
    DegenerateNormalisation,
    #[error("lattice {0} has rank {1} > {2}")]
    RankTooLarge(String, u32, u32),
}

/// The 24 coefficients `c_ν` of `f = Σ c_ν θ_ν`, aligned with the registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspCoefficients {
    pub labels: Vec<String>,
    pub values: Vec<BigRational>,
}

/// One row of the determinant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub lattice: RootSystemType,
    pub det: BigInt,
    pub value: BigRational,
}

/// Solves the 23 vanishing conditions and normalises so that the Fourier
/// coefficient of `D12` is 1.
pub fn solve(matrix: &CountMatrix) -> Result<CuspCoefficients, CuspError> {
    let kernel = matrix.without_d12().nullspace();
    if kernel.len() != 1 {
        return Err(CuspError::KernelDimension(kernel.len()));
    }
    let v = &kernel[0];
    let d12 = &matrix.rows[D12_ROW];
    let aut = BigRational::from_integer(d12.aut_order());
    let norm: BigRational = matrix.entries[D12_ROW]
        .iter()
        .zip(v)
        .map(|(n, c)| BigRational::from_integer(n.clone()) * c)
        .sum::<BigRational>()
        * aut;
    if norm.is_zero() {
        return Err(CuspError::DegenerateNormalisation);
    }
    Ok(CuspCoefficients {
        labels: matrix.columns.clone(),
        values: v.iter().map(|c| c / &norm).collect(),
    })
}

/// `Σ_ν c_ν · N(r, R_ν) · |Aut(r)|` for every row of the matrix.
pub fn row_residuals(coeffs: &CuspCoefficients, matrix: &CountMatrix) -> Vec<BigRational> {
    matrix
        .rows
        .iter()
        .zip(&matrix.entries)
        .map(|(r, row)| {
            row.iter()
                .zip(&coeffs.values)
                .map(|(n, c)| BigRational::from_integer(n.clone()) * c)
                .sum::<BigRational>()
                * BigRational::from_integer(r.aut_order())
        })
        .collect()
}

/// Evaluates Fourier coefficients of root lattices.
pub struct CuspForm<'a> {
    pub coeffs: CuspCoefficients,
    pub registry: &'a Registry,
    pub counter: &'a Counter,
}

/// Largest rank accepted by [`CuspForm::coefficient`].
pub const MAX_COEFF_RANK: u32 = 12;

impl<'a> CuspForm<'a> {
    pub fn new(coeffs: CuspCoefficients, registry: &'a Registry, counter: &'a Counter) -> Self {
        CuspForm {
            coeffs,
            registry,
            counter,
        }
    }

    /// `a(M) = |Aut(M)| · Σ_ν c_ν · N(M, R_ν)`.
    pub fn coefficient(&self, m: &RootSystemType) -> Result<BigRational, CuspError> {
        if m.rank() > MAX_COEFF_RANK {
            return Err(CuspError::RankTooLarge(m.to_string(), m.rank(), MAX_COEFF_RANK));
        }
        let s: BigRational = self
            .registry
            .records()
            .iter()
            .zip(&self.coeffs.values)
            .map(|(r, c)| BigRational::from_integer(self.counter.count(m, &r.root_system)) * c)
            .sum();
        Ok(s * BigRational::from_integer(m.aut_order()))
    }

    /// Coefficients of all rank-12 root lattices of determinant at most
    /// `max_det`, sorted by determinant and then by lattice expression.
    pub fn det_table(&self, max_det: u64) -> Vec<CoefficientEntry> {
        let types = rank12_types_up_to_det(max_det);
        let mut out: Vec<CoefficientEntry> = types
            .par_iter()
            .map(|t| CoefficientEntry {
                lattice: t.clone(),
                det: t.determinant(),
                value: self.coefficient(t).expect("rank 12"),
            })
            .collect();
        out.sort_by(|a, b| {
            a.det
                .cmp(&b.det)
                .then_with(|| a.lattice.to_string().cmp(&b.lattice.to_string()))
        });
        out
    }
}

/// All root-system types of rank exactly 12 with determinant at most
/// `max_det`.
pub fn rank12_types_up_to_det(max_det: u64) -> Vec<RootSystemType> {
    let mut irr: Vec<IrreducibleType> = Vec::new();
    for n in 1..=12 {
        irr.push(IrreducibleType::a(n));
        if n >= 4 {
            irr.push(IrreducibleType::d(n));
        }
        if (6..=8).contains(&n) {
            irr.push(IrreducibleType::e(n));
        }
    }
    let dets: Vec<u64> = irr
        .iter()
        .map(|t| num_traits::ToPrimitive::to_u64(&t.determinant()).expect("small"))
        .collect();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        irr: &[IrreducibleType],
        dets: &[u64],
        i: usize,
        rank_left: u32,
        det: u64,
        max_det: u64,
        cur: &mut RootSystemType,
        out: &mut Vec<RootSystemType>,
    ) {
        if rank_left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == irr.len() {
            return;
        }
        rec(irr, dets, i + 1, rank_left, det, max_det, cur, out);
        let t = irr[i];
        let mut k = 1;
        let mut d = det;
        while k * t.rank <= rank_left {
            d *= dets[i];
            if d > max_det {
                break;
            }
            let mut next = cur.clone();
            next.add(t, k);
            rec(irr, dets, i + 1, rank_left - k * t.rank, d, max_det, &mut next, out);
            k += 1;
        }
    }
    rec(&irr, &dets, 0, 12, 1, max_det, &mut RootSystemType::empty(), &mut out);
    out.sort();
    out
}

/// The bound `2^7·3^5·5^2·7` on denominators of normalised coefficients.
pub fn denominator_bound() -> BigInt {
    from_factors(&[(2, 7), (3, 5), (5, 2), (7, 1)])
}

/// True when the denominator of `r` divides [`denominator_bound`].
pub fn denominator_within_bound(r: &BigRational) -> bool {
    (denominator_bound() % r.denom()).is_zero()
}

/// `|Aut(Leech)| · 2^6·3^5·5^2·7`, the factor between the raw and the
/// normalised coefficient of `D12`.
pub fn d12_scale_factor() -> BigInt {
    crate::niemeier::leech_aut_order() * from_factors(&[(2, 6), (3, 5), (5, 2), (7, 1)])
}

/// Outcome of comparing embeddings into `E8 ⊕ E8` and into `D16`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittIgusa {
    pub lattice: RootSystemType,
    pub e8e8: BigInt,
    pub d16: BigInt,
    pub equal: bool,
}

/// Compares embedding counts of `L` into `E8 ⊕ E8` and `D16`. Ranks above 3
/// are rejected unless `unchecked` is set.
pub fn witt_igusa_check(l: &RootSystemType, counter: &Counter, unchecked: bool) -> Result<WittIgusa, CuspError> {
    if l.rank() > 3 && !unchecked {
        return Err(CuspError::RankTooLarge(l.to_string(), l.rank(), 3));
    }
    let e8e8: RootSystemType = RootSystemType::from_components([(IrreducibleType::e(8), 2)]);
    let d16 = RootSystemType::single(IrreducibleType::d(16));
    let a = counter.embeddings(l, &e8e8);
    let b = counter.embeddings(l, &d16);
    Ok(WittIgusa {
        lattice: l.clone(),
        equal: a == b,
        e8e8: a,
        d16: b,
    })
}

/// `c_ν · |Aut(Leech)| · 2^6·3^5·5^2·7` for every ν: the signed counts
/// `Σ_F ε(F)` over the maximal isotropic subspaces `F` of `Leech/2Leech`
/// whose lattice is `Λ_ν`. They are integers, sum to zero and the `D24`
/// entry is the number of frames.
pub fn signed_leech_counts(coeffs: &CuspCoefficients) -> Vec<BigRational> {
    let k = BigRational::from_integer(d12_scale_factor());
    coeffs.values.iter().map(|c| c * &k).collect()
}

/// True when every value is an integer.
pub fn all_integral(xs: &[BigRational]) -> bool {
    xs.iter().all(|x| x.denom().is_one())
}
