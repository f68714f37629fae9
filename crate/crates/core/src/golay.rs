//! The extended binary Golay code on 24-bit masks and the frame-based
//! evaluation of `a(D12)`.
//!
//! A 12-element subset `S` of the 24 coordinates falls into one of five
//! classes: a codeword (umbral), a set containing three octads
//! (extraspecial) or one octad (special), a set at distance 2 from a
//! dodecad (penumbral), and everything else (transverse). The classes are
//! found by grouping all `C(24,12)` subsets by their octad-intersection
//! signature; the labels are then read off a representative.

use crate::exactq::{binomial, from_factors, BigInt};
use crate::niemeier::{leech_aut_order, N_FRAMES};
use crate::rootsys::IrreducibleType;
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

pub const LENGTH: u32 = 24;
const FULL: u32 = (1 << LENGTH) - 1;

/// Generator polynomial `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1` of the
/// cyclic binary Golay code of length 23.
const GENERATOR_POLY: u32 = 0b1100_0111_0101;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GolayError {
    #[error("code self-check failed: {0}")]
    SelfCheck(String),
    #[error("subset signatures give {0} classes, expected 5")]
    ClassCount(usize),
}

/// The 4096 codewords of the extended Golay code.
#[derive(Clone, Debug)]
pub struct GolayCode {
    pub basis: Vec<u32>,
    pub words: Vec<u32>,
}

impl GolayCode {
    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut d = BTreeMap::new();
        for w in &self.words {
            *d.entry(w.count_ones()).or_insert(0) += 1;
        }
        d
    }

    pub fn contains(&self, w: u32) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    pub fn octads(&self) -> Vec<u32> {
        self.words.iter().copied().filter(|w| w.count_ones() == 8).collect()
    }

    pub fn dodecads(&self) -> Vec<u32> {
        self.words.iter().copied().filter(|w| w.count_ones() == 12).collect()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    /// The octads containing the 5-set `s`.
    pub fn octads_containing(&self, s: u32) -> Vec<u32> {
        self.words
            .iter()
            .copied()
            .filter(|w| w.count_ones() == 8 && w & s == s)
            .collect()
    }
}

/// Builds the code from the cyclic length-23 code plus a parity bit and
/// checks linearity, self-duality and the weight distribution.
pub fn build_code() -> Result<GolayCode, GolayError> {
    let basis: Vec<u32> = (0..12)
        .map(|i| {
            let w = GENERATOR_POLY << i;
            w | ((w.count_ones() & 1) << 23)
        })
        .collect();
    let mut words: Vec<u32> = (0u32..1 << 12)
        .map(|m| (0..12).filter(|i| m >> i & 1 == 1).fold(0, |acc, i| acc ^ basis[i]))
        .collect();
    words.sort_unstable();
    words.dedup();
    let code = GolayCode { basis, words };
    if code.words.len() != 4096 {
        return Err(GolayError::SelfCheck(format!(
            "{} distinct codewords",
            code.words.len()
        )));
    }
    if !code.is_self_orthogonal() {
        return Err(GolayError::SelfCheck("not self-orthogonal".into()));
    }
    let want: BTreeMap<u32, usize> = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)].into_iter().collect();
    if code.weight_distribution() != want {
        return Err(GolayError::SelfCheck(format!(
            "weight distribution {:?}",
            code.weight_distribution()
        )));
    }
    Ok(code)
}

/// The code, built once.
pub fn code() -> &'static GolayCode {
    static CODE: OnceLock<GolayCode> = OnceLock::new();
    CODE.get_or_init(|| build_code().expect("Golay construction"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    Extraspecial,
    Special,
    Transverse,
    Penumbral,
    Umbral,
}

impl ClassLabel {
    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Extraspecial => "extraspecial",
            ClassLabel::Special => "special",
            ClassLabel::Transverse => "transverse",
            ClassLabel::Penumbral => "penumbral",
            ClassLabel::Umbral => "umbral",
        }
    }

    /// Class sizes per frame.
    pub fn expected_size(self) -> u64 {
        match self {
            ClassLabel::Extraspecial => 35420,
            ClassLabel::Special => 1275120,
            ClassLabel::Transverse => 1020096,
            ClassLabel::Penumbral => 370944,
            ClassLabel::Umbral => 2576,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orbit invariant of a 12-set: codeword membership and the number of
/// octads meeting it in `j` points for `j = 0..=8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub codeword: bool,
    pub octad_intersections: [u16; 9],
}

impl Signature {
    pub fn octads_contained(&self) -> u16 {
        self.octad_intersections[8]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.octad_intersections.iter().map(u16::to_string).collect();
        write!(f, "{}:{}", u8::from(self.codeword), v.join("/"))
    }
}

pub fn signature(code: &GolayCode, octads: &[u32], s: u32) -> Signature {
    let mut h = [0u16; 9];
    for o in octads {
        h[(o & s).count_ones() as usize] += 1;
    }
    Signature {
        codeword: code.contains(s),
        octad_intersections: h,
    }
}

/// One class of 12-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodecadClass {
    pub label: ClassLabel,
    pub size: u64,
    pub signature: Signature,
    pub representative: u32,
}

fn label_of(code: &GolayCode, sig: &Signature, s: u32) -> ClassLabel {
    if sig.codeword {
        ClassLabel::Umbral
    } else if sig.octads_contained() == 3 {
        ClassLabel::Extraspecial
    } else if sig.octads_contained() > 0 {
        ClassLabel::Special
    } else if code.dodecads().iter().any(|d| (d ^ s).count_ones() == 2) {
        ClassLabel::Penumbral
    } else {
        ClassLabel::Transverse
    }
}

/// Groups all 12-subsets by [`Signature`]; the result is sorted by label.
pub fn classify_subsets() -> Result<Vec<DodecadClass>, GolayError> {
    static CACHE: OnceLock<Result<Vec<DodecadClass>, GolayError>> = OnceLock::new();
    CACHE.get_or_init(classify_uncached).clone()
}

fn classify_uncached() -> Result<Vec<DodecadClass>, GolayError> {
    let code = code();
    let octads = code.octads();
    let tally: BTreeMap<Signature, (u64, u32)> = (0u32..1 << 12)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Signature, (u64, u32)>, hi| {
            for lo in 0u32..1 << 12 {
                let s = hi << 12 | lo;
                if s.count_ones() != 12 {
                    continue;
                }
                let e = acc.entry(signature(code, &octads, s)).or_insert((0, s));
                e.0 += 1;
                e.1 = e.1.min(s);
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, (n, r)) in b {
                let e = a.entry(k).or_insert((0, r));
                e.0 += n;
                e.1 = e.1.min(r);
            }
            a
        });
    if tally.len() != 5 {
        return Err(GolayError::ClassCount(tally.len()));
    }
    let mut out: Vec<DodecadClass> = tally
        .into_iter()
        .map(|(sig, (size, rep))| DodecadClass {
            label: label_of(code, &sig, rep),
            size,
            signature: sig,
            representative: rep,
        })
        .collect();
    out.sort_by_key(|c| c.label);
    Ok(out)
}

/// Sizes of the transverse and penumbral classes: the 12-sets that are
/// not codewords and contain no octad.
pub fn golay_free_count() -> Result<(BigInt, BigInt), GolayError> {
    let classes = classify_subsets()?;
    let size = |l: ClassLabel| classes.iter().find(|c| c.label == l).map_or(0, |c| c.size);
    Ok((
        BigInt::from(size(ClassLabel::Transverse)),
        BigInt::from(size(ClassLabel::Penumbral)),
    ))
}

/// Counts the same two classes directly, without signatures.
pub fn golay_free_count_direct() -> (u64, u64) {
    let code = code();
    let octads = code.octads();
    let dodecads = code.dodecads();
    (0u32..1 << 12)
        .into_par_iter()
        .map(|hi| {
            let mut t = (0u64, 0u64);
            for lo in 0u32..1 << 12 {
                let s = hi << 12 | lo;
                if s.count_ones() != 12 || code.contains(s) || octads.iter().any(|o| o & s == *o) {
                    continue;
                }
                if dodecads.iter().any(|d| (d ^ s).count_ones() == 2) {
                    t.1 += 1;
                } else {
                    t.0 += 1;
                }
            }
            t
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// `a(D12) = |Aut(D12)| · n_F · (ε_t·#transverse + ε_p·#penumbral)`.
pub fn a_d12_frames_signed(eps_transverse: i32, eps_penumbral: i32) -> Result<BigInt, GolayError> {
    let (t, p) = golay_free_count()?;
    let aut = crate::rootsys::RootSystemType::single(IrreducibleType::d(12)).aut_order();
    Ok(aut * BigInt::from(N_FRAMES) * (t * eps_transverse + p * eps_penumbral))
}

/// `a(D12)` with both signs `+1`.
pub fn a_d12_frames() -> Result<BigInt, GolayError> {
    a_d12_frames_signed(1, 1)
}

/// `2^28·3^14·5^6·7^3·11·13·23`.
pub fn a_d12_expected() -> BigInt {
    from_factors(&[(2, 28), (3, 14), (5, 6), (7, 3), (11, 1), (13, 1), (23, 1)])
}

/// True when `a(D12)` is nonzero for all four sign choices.
pub fn nonzero_for_all_signs() -> Result<bool, GolayError> {
    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        if a_d12_frames_signed(a, b)? == BigInt::from(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|Aut(Leech)| · 2^6·3^5·5^2·7`, the value `a(D12)` must take for the
/// normalised form to have `a(D12) = 1`.
pub fn d12_raw_value() -> BigInt {
    leech_aut_order() * from_factors(&[(2, 6), (3, 5), (5, 2), (7, 1)])
}

/// `C(24,12) · n_F`, the number of `D12(2)` sublattices across all frames.
pub fn d12_sublattices_total() -> BigInt {
    binomial(24, 12) * BigInt::from(N_FRAMES)
}

/// Checks on `samples` random 5-sets that each lies in exactly one octad.
pub fn steiner_check<R: Rng>(rng: &mut R, samples: usize) -> bool {
    let code = code();
    let octads = code.octads();
    (0..samples).all(|_| {
        let mut s = 0u32;
        while s.count_ones() < 5 {
            s |= 1 << rng.gen_range(0..LENGTH);
        }
        octads.iter().filter(|o| *o & s == s).count() == 1
    })
}

/// Complement of a subset.
pub fn complement(s: u32) -> u32 {
    !s & FULL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_shape() {
        let c = code();
        assert_eq!(c.octads().len(), 759);
        assert_eq!(c.dodecads().len(), 2576);
        assert!(c.contains(0));
        assert!(c.contains(FULL));
        assert!(c.words.iter().all(|w| c.contains(complement(*w))));
    }

    #[test]
    fn expected_value_factorisation() {
        let k = BigInt::from(2u64.pow(6) * 9 * 7 * 23);
        assert_eq!(BigInt::from(1020096) / &k, BigInt::from(11));
        assert_eq!(BigInt::from(370944) / &k, BigInt::from(4));
    }
}
