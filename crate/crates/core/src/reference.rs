//! Published reference values bundled with the crate: the 24×24 count
//! table, the 24 normalised coefficients, the determinant ≤ 96 table and
//! the printed terms of `η(8τ)^12·θ(τ)`.

use crate::exactq::{parse_rational, BigInt, BigRational};
use crate::rootsys::RootSystemType;

const COUNT_MATRIX: &str = include_str!("../data/reference/count_matrix.tsv");
const COEFFICIENTS: &str = include_str!("../data/reference/coefficients.txt");
const DET_TABLE: &str = include_str!("../data/reference/det_table.tsv");
const ETA_THETA: &str = include_str!("../data/reference/eta_theta.tsv");

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty())
}

/// Rows of the count table: row lattice and 24 entries in registry order.
pub fn count_matrix() -> Vec<(RootSystemType, Vec<BigInt>)> {
    data_lines(COUNT_MATRIX)
        .map(|l| {
            let mut f = l.split('\t');
            let name = f.next().expect("row label");
            let row = if name == "0" {
                RootSystemType::empty()
            } else {
                name.parse().expect("row type")
            };
            (row, f.map(|x| x.parse().expect("integer")).collect())
        })
        .collect()
}

pub fn coefficients() -> Vec<BigRational> {
    data_lines(COEFFICIENTS)
        .map(|l| parse_rational(l.trim()).expect("rational"))
        .collect()
}

/// `(det, coefficient, lattice)` rows.
pub fn det_table() -> Vec<(BigInt, BigInt, RootSystemType)> {
    data_lines(DET_TABLE)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (
                f[0].parse().expect("det"),
                f[1].parse().expect("coef"),
                f[2].parse().expect("lattice"),
            )
        })
        .collect()
}

/// `(exponent, coefficient)` pairs of the printed q-expansion.
pub fn eta_theta() -> Vec<(usize, BigInt)> {
    data_lines(ETA_THETA)
        .map(|l| {
            let (e, c) = l.split_once('\t').expect("two fields");
            (e.parse().expect("exponent"), c.parse().expect("coefficient"))
        })
        .collect()
}
