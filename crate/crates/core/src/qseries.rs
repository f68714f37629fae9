//! Truncated integer power series in `q`, the weight 13/2 form
//! `η(8τ)^12·θ(τ)` and its comparison with cusp-form coefficients.

use crate::cuspform::CoefficientEntry;
use crate::exactq::{BigInt, BigRational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::Mul;

/// Default number of coefficients computed by the CLI.
pub const DEFAULT_TERMS: usize = 200;

/// Coefficients `c_0 … c_N` of a power series truncated after `q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    pub fn monomial(order: usize, exp: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exponents with nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigInt::zero());
        QSeries { coeffs: c }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (n, abs.is_one()) {
                (0, _) => abs.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{abs}q"),
                (_, true) => format!("q^{n}"),
                (_, false) => format!("{abs}q^{n}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// `θ(τ) = Σ_{k∈Z} q^{k²}`.
pub fn theta(order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    s.coeffs[0] = BigInt::one();
    let mut k = 1usize;
    while k * k <= order {
        s.coeffs[k * k] += 2;
        k += 1;
    }
    s
}

/// `∏_{n≥1} (1 − q^{8n})`.
pub fn euler_product_8(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut n = 8;
    while n <= order {
        let mut factor = QSeries::one(order);
        factor.coeffs[n] = BigInt::from(-1);
        s = &s * &factor;
        n += 8;
    }
    s
}

/// `∏(1 − q^{8n})^12` computed by twelve successive multiplications.
pub fn euler_product_8_pow12_naive(order: usize) -> QSeries {
    let e = euler_product_8(order);
    let mut acc = QSeries::one(order);
    for _ in 0..12 {
        acc = &acc * &e;
    }
    acc
}

/// `η(8τ)^12·θ(τ) = q^4 · ∏(1 − q^{8n})^12 · Σ q^{k²}`, truncated after
/// `q^order`.
pub fn eta8_12_theta(order: usize) -> QSeries {
    let order = order.max(4);
    let e12 = euler_product_8(order).pow(3).pow(4);
    let shifted = {
        let mut c = vec![BigInt::zero(); 4];
        c.extend(e12.coeffs.iter().take(order - 3).cloned());
        QSeries::from_coeffs(c)
    };
    &shifted * &theta(order)
}

/// One row of the coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub det: BigInt,
    pub residue: u32,
    pub lattice: String,
    pub coef: BigRational,
    pub series_coef: BigInt,
    /// `series_coef / coef`, when the coefficient is nonzero.
    pub ratio: Option<BigRational>,
}

impl CompareRow {
    /// `same`, `-2`, `ratio r` or `coef 0`.
    pub fn flag(&self) -> String {
        match &self.ratio {
            None => "coef 0".to_string(),
            Some(r) if r.is_one() => "same".to_string(),
            Some(r) if *r == BigRational::from_integer(BigInt::from(-2)) => "-2".to_string(),
            Some(r) => format!("ratio {r}"),
        }
    }
}

/// Pairs every table entry with the series coefficient of `q^det`.
pub fn compare_report(entries: &[CoefficientEntry], series: &QSeries) -> Vec<CompareRow> {
    entries
        .iter()
        .map(|e| {
            let n: usize = e.det.to_string().parse().expect("small determinant");
            let s = series.coeff(n);
            let ratio = (!e.value.is_zero()).then(|| BigRational::from_integer(s.clone()) / &e.value);
            CompareRow {
                det: e.det.clone(),
                residue: (n % 8) as u32,
                lattice: e.lattice.compact(),
                coef: e.value.clone(),
                series_coef: s,
                ratio,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms() {
        let s = eta8_12_theta(20);
        assert_eq!(s.coeff(4), BigInt::from(1));
        assert_eq!(s.coeff(5), BigInt::from(2));
        assert_eq!(s.coeff(7), BigInt::zero());
        assert_eq!(s.coeff(13), BigInt::from(-22));
        assert!(s.to_string().starts_with("q^4 + 2q^5 + 2q^8 - 12q^12"));
    }

    #[test]
    fn powers_agree() {
        assert_eq!(euler_product_8(120).pow(12), euler_product_8_pow12_naive(120));
        assert_eq!(euler_product_8(120).pow(3).pow(4), euler_product_8_pow12_naive(120));
    }

    #[test]
    fn compare_flags() {
        use crate::cuspform::CoefficientEntry;
        let s = eta8_12_theta(24);
        let entry = |det: i64, coef: i64, l: &str| CoefficientEntry {
            lattice: l.parse().unwrap(),
            det: BigInt::from(det),
            value: BigRational::from_integer(BigInt::from(coef)),
        };
        let rows = compare_report(&[entry(4, 1, "D12"), entry(13, 11, "A12"), entry(20, -8, "A1A4E7")], &s);
        assert_eq!(rows[0].flag(), "same");
        assert_eq!(rows[1].flag(), "-2");
        assert_eq!(rows[2].flag(), "ratio -7");
        assert_eq!(rows[1].residue, 5);
    }

    #[test]
    fn theta_squares() {
        let t = theta(30);
        assert_eq!(t.support(), vec![0, 1, 4, 9, 16, 25]);
        assert_eq!(t.coeff(9), BigInt::from(2));
    }
}
