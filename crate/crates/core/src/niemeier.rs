//! Registry of the 24 Niemeier lattices and the 24×24 sublattice-count
//! matrix.

use crate::exactq::{bernoulli, from_factors, BigInt, BigRational, ExactMatrix};
use crate::gf2quad::maximal_isotropic_count_formula;
use crate::rootsys::{IrreducibleType, RootSystemType};
use crate::subcount::Counter;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::path::Path;
use thiserror::Error;

/// The bundled data file.
pub const BUILTIN_DATA: &str = include_str!("../data/niemeier.tsv");

/// Number of frames of the Leech lattice.
pub const N_FRAMES: u64 = 8292375;

#[derive(Debug, Error)]
pub enum NiemeierError {
    #[error("data line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("data validation failed: {0}")]
    Validation(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiemeierRecord {
    pub index: usize,
    pub label: String,
    pub root_system: RootSystemType,
    pub coxeter_number: u32,
    pub glue_order: BigInt,
    pub aut_order: BigInt,
    /// `n(L(2) ⊆ Leech)`, if known.
    pub leech_count: Option<BigInt>,
}

/// `|Aut(Leech)| = 2^22·3^9·5^4·7^2·11·13·23`.
pub fn leech_aut_order() -> BigInt {
    from_factors(&[(2, 22), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)])
}

/// Exact mass `Σ 1/|Aut(L)|` of the genus of even unimodular lattices of
/// rank 24: `|B_12|/24 · ∏_{j=1}^{11} |B_{2j}|/(4j)`.
pub fn genus_mass() -> BigRational {
    let b = bernoulli(24);
    let mut m = b[12].abs() / BigRational::from_integer(BigInt::from(24));
    for j in 1..=11u32 {
        m *= b[2 * j as usize].abs() / BigRational::from_integer(BigInt::from(4 * j));
    }
    m
}

/// Validated registry.
#[derive(Clone, Debug)]
pub struct Registry {
    records: Vec<NiemeierRecord>,
}

impl Registry {
    /// The bundled registry.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_DATA).expect("bundled data is valid")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, NiemeierError> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|source| NiemeierError::Io {
            path: p.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses and validates the tab-separated data format.
    pub fn parse(text: &str) -> Result<Self, NiemeierError> {
        let mut records = Vec::new();
        let mut saw_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.starts_with('#') {
                saw_header = true;
                continue;
            }
            if t.is_empty() {
                continue;
            }
            let bad = |msg: &str| NiemeierError::Malformed {
                line,
                msg: msg.to_string(),
            };
            let f: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if f.len() != 6 {
                return Err(bad("expected 6 tab-separated fields"));
            }
            let index: usize = f[0].parse().map_err(|_| bad("bad index"))?;
            let root_system: RootSystemType = f[2].parse().map_err(|e| bad(&format!("{e}")))?;
            let coxeter_number: u32 = f[3].parse().map_err(|_| bad("bad Coxeter number"))?;
            let glue_order: BigInt = f[4].parse().map_err(|_| bad("bad glue order"))?;
            if !glue_order.is_positive() {
                return Err(bad("glue order must be positive"));
            }
            let leech_count = match f[5] {
                "?" => None,
                s => {
                    let v: BigInt = s.parse().map_err(|_| bad("bad leech count"))?;
                    if !v.is_positive() {
                        return Err(bad("leech count must be positive"));
                    }
                    Some(v)
                }
            };
            let aut_order = root_system.weyl_order() * &glue_order;
            records.push(NiemeierRecord {
                index,
                label: f[1].to_string(),
                root_system,
                coxeter_number,
                glue_order,
                aut_order,
                leech_count,
            });
        }
        if !saw_header {
            return Err(NiemeierError::Validation(
                "the provenance comment header is missing".into(),
            ));
        }
        let reg = Registry { records };
        reg.validate()?;
        Ok(reg)
    }

    fn validate(&self) -> Result<(), NiemeierError> {
        let fail = |m: String| Err(NiemeierError::Validation(m));
        if self.records.len() != 24 {
            return fail(format!("expected 24 records, found {}", self.records.len()));
        }
        let mut labels = std::collections::BTreeSet::new();
        for (i, r) in self.records.iter().enumerate() {
            if r.index != i + 1 {
                return fail(format!("record {} has index {}", i + 1, r.index));
            }
            if !labels.insert(r.label.clone()) {
                return fail(format!("duplicate label {}", r.label));
            }
            let want_rank = if i == 0 { 0 } else { 24 };
            if r.root_system.rank() != want_rank {
                return fail(format!("{} has root rank {}", r.label, r.root_system.rank()));
            }
            let h = r.root_system.coxeter_number().unwrap_or(0);
            if h != r.coxeter_number {
                return fail(format!(
                    "{} has Coxeter number {} but its roots give {h}",
                    r.label, r.coxeter_number
                ));
            }
            if i > 0 && r.root_system.root_count() != 24 * h as u64 {
                return fail(format!("{} does not have 24h roots", r.label));
            }
        }
        if self
            .records
            .windows(2)
            .any(|w| w[0].coxeter_number > w[1].coxeter_number)
        {
            return fail("records are not in Coxeter order".into());
        }
        if self.records[0].aut_order != leech_aut_order() {
            return fail("|Aut(Leech)| differs from 2^22·3^9·5^4·7^2·11·13·23".into());
        }
        let mass: BigRational = self
            .records
            .iter()
            .map(|r| BigRational::new(BigInt::one(), r.aut_order.clone()))
            .sum();
        if mass != genus_mass() {
            return fail(format!(
                "Σ 1/|Aut| = {mass} differs from the genus mass {}",
                genus_mass()
            ));
        }
        let d24 = &self.records[23];
        if let Some(n) = &d24.leech_count {
            if *n != BigInt::from(N_FRAMES) {
                return fail(format!("D24 leech count {n} differs from the frame count {N_FRAMES}"));
            }
            let m = BigRational::new(n.clone(), leech_aut_order());
            if m != BigRational::new(BigInt::one(), BigInt::from(2u64 * 501397585920)) {
                return fail("mass(D24) differs from 1/2 · 1/501397585920".into());
            }
        }
        if let Some(sum) = self.leech_count_sum() {
            if sum != maximal_isotropic_count_formula(12) {
                return fail(format!("leech counts sum to {sum}, not ∏(2^i+1)"));
            }
        }
        Ok(())
    }

    pub fn records(&self) -> &[NiemeierRecord] {
        &self.records
    }

    /// Record by 1-based index.
    pub fn record(&self, index: usize) -> &NiemeierRecord {
        &self.records[index - 1]
    }

    pub fn by_label(&self, label: &str) -> Option<&NiemeierRecord> {
        self.records.iter().find(|r| r.label.eq_ignore_ascii_case(label))
    }

    /// Index (1-based) of the lattice with the given root system.
    pub fn index_of_roots(&self, roots: &RootSystemType) -> Option<usize> {
        self.records.iter().find(|r| &r.root_system == roots).map(|r| r.index)
    }

    pub fn leech_counts_complete(&self) -> bool {
        self.records.iter().all(|r| r.leech_count.is_some())
    }

    pub fn leech_count_sum(&self) -> Option<BigInt> {
        self.records.iter().map(|r| r.leech_count.clone()).sum()
    }

    pub fn missing_leech_counts(&self) -> Vec<String> {
        self.records
            .iter()
            .filter(|r| r.leech_count.is_none())
            .map(|r| r.label.clone())
            .collect()
    }

    /// `mass(ν) = n(Λ_ν(2) ⊆ Leech) / |Aut(Leech)|`.
    pub fn mass(&self, index: usize) -> Result<BigRational, NiemeierError> {
        let r = self.record(index);
        let n = r
            .leech_count
            .clone()
            .ok_or_else(|| NiemeierError::MissingData(format!("leech count of {} is not in the data file", r.label)))?;
        Ok(BigRational::new(n, leech_aut_order()))
    }
}

/// Row lattices of the count matrix: the zero lattice, `A1..A11`,
/// `D4..D12`, `E6, E7, E8`.
pub fn row_types() -> Vec<RootSystemType> {
    let mut rows = vec![RootSystemType::empty()];
    rows.extend((1..=11).map(|n| RootSystemType::single(IrreducibleType::a(n))));
    rows.extend((4..=12).map(|n| RootSystemType::single(IrreducibleType::d(n))));
    rows.extend((6..=8).map(|n| RootSystemType::single(IrreducibleType::e(n))));
    rows
}

/// Index of the `D12` row.
pub const D12_ROW: usize = 20;

/// The 24×24 matrix of sublattice counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    pub rows: Vec<RootSystemType>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<BigInt>>,
}

impl CountMatrix {
    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_int_rows(&self.entries)
    }

    pub fn rank(&self) -> usize {
        self.to_exact().rank()
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row][col]
    }

    /// All rows except `D12`.
    pub fn without_d12(&self) -> ExactMatrix {
        let keep: Vec<usize> = (0..self.rows.len()).filter(|&i| i != D12_ROW).collect();
        self.to_exact().select_rows(&keep)
    }
}

/// Builds the count matrix; entries are computed in parallel.
pub fn build_matrix(reg: &Registry, counter: &Counter) -> CountMatrix {
    let rows = row_types();
    let columns: Vec<String> = reg.records().iter().map(|r| r.label.clone()).collect();
    let cells: Vec<(usize, usize)> = (0..rows.len()).flat_map(|i| (0..24).map(move |j| (i, j))).collect();
    let values: Vec<BigInt> = cells
        .par_iter()
        .map(|&(i, j)| counter.count(&rows[i], &reg.records()[j].root_system))
        .collect();
    let mut entries = vec![vec![BigInt::zero(); 24]; rows.len()];
    for ((i, j), v) in cells.into_iter().zip(values) {
        entries[i][j] = v;
    }
    CountMatrix { rows, columns, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let r = Registry::builtin();
        assert_eq!(r.record(24).label, "D24");
        assert_eq!(r.record(24).leech_count, Some(BigInt::from(N_FRAMES)));
        assert!(r.record(1).root_system.is_empty());
        assert_eq!(r.record(23).root_system, "E8^3".parse().unwrap());
        assert_eq!(
            r.mass(24).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(1002795171840u64))
        );
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Registry::parse("1\tLeech\t-\t0\t1\t?\n").is_err());
        let broken = BUILTIN_DATA.replace("E6^4\t12\t48", "E6^4\t12\t16");
        assert!(matches!(Registry::parse(&broken), Err(NiemeierError::Validation(_))));
        let no_header: String = BUILTIN_DATA
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        assert!(Registry::parse(&no_header).is_err());
    }
}
