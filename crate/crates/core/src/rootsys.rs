//! ADE root systems: types, the text syntax, coordinate models, Cartan
//! matrices, determinants and automorphism-group orders.

use crate::exactq::{factorial, BigInt, ExactMatrix};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const MAX_RANK: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("unrecognised root-system token `{0}`")]
    BadToken(String),
    #[error("unsupported irreducible type {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

/// An irreducible simply-laced type. Ordering is by family (A < D < E) and
/// then by rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleType {
    pub family: Family,
    pub rank: u32,
}

impl IrreducibleType {
    pub const fn a(n: u32) -> Self {
        IrreducibleType {
            family: Family::A,
            rank: n,
        }
    }
    pub const fn d(n: u32) -> Self {
        IrreducibleType {
            family: Family::D,
            rank: n,
        }
    }
    pub const fn e(n: u32) -> Self {
        IrreducibleType {
            family: Family::E,
            rank: n,
        }
    }

    /// Whether the type is supported as stated (D2 and D3 are allowed and
    /// normalised by [`RootSystemType`]).
    pub fn validate(&self) -> Result<(), RootSysError> {
        let ok = match self.family {
            Family::A => (1..=MAX_RANK).contains(&self.rank),
            Family::D => (2..=MAX_RANK).contains(&self.rank),
            Family::E => (6..=8).contains(&self.rank),
        };
        if ok {
            Ok(())
        } else {
            Err(RootSysError::Unsupported(self.to_string()))
        }
    }

    pub fn root_count(&self) -> u64 {
        let n = self.rank as u64;
        match self.family {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    pub fn coxeter_number(&self) -> u32 {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => 2 * self.rank - 2,
            Family::E => match self.rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    pub fn determinant(&self) -> BigInt {
        BigInt::from(match self.family {
            Family::A => self.rank + 1,
            Family::D => 4,
            Family::E => 9 - self.rank,
        })
    }

    pub fn weyl_order(&self) -> BigInt {
        let n = self.rank as u64;
        match self.family {
            Family::A => factorial(n + 1),
            Family::D => (BigInt::one() << (n - 1)) * factorial(n),
            Family::E => BigInt::from(match n {
                6 => 51840u64,
                7 => 2903040,
                _ => 696729600,
            }),
        }
    }

    /// Order of the automorphism group of the root lattice: Weyl group
    /// times diagram automorphisms.
    pub fn aut_order(&self) -> BigInt {
        let graph = match (self.family, self.rank) {
            (Family::A, 1) => 1,
            (Family::A, _) => 2,
            (Family::D, 4) => 6,
            (Family::D, _) => 2,
            (Family::E, 6) => 2,
            (Family::E, _) => 1,
        };
        self.weyl_order() * graph
    }

    /// The Cartan matrix, with simple roots ordered as in [`simple_roots`].
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank as usize;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1)),
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                if n >= 3 {
                    link(n - 3, n - 1);
                } else if n == 2 {
                    // D2 = A1 + A1: two orthogonal roots, no edge.
                }
            }
            Family::E => {
                // Bourbaki numbering 1..n mapped to 0..n-1: 1-3-4-5-..., 2-4.
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
        }
        c
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}{}", self.rank)
    }
}

/// A formal multiset of irreducible types in canonical form: D2 and D3 are
/// rewritten as A1^2 and A3, components are sorted, zero multiplicities are
/// dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootSystemType {
    comps: BTreeMap<IrreducibleType, u32>,
}

impl RootSystemType {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(t: IrreducibleType) -> Self {
        Self::from_components([(t, 1)])
    }

    pub fn from_components(items: impl IntoIterator<Item = (IrreducibleType, u32)>) -> Self {
        let mut r = Self::default();
        for (t, m) in items {
            r.add(t, m);
        }
        r
    }

    /// Adds `m` copies of `t`, normalising D2 and D3.
    pub fn add(&mut self, t: IrreducibleType, m: u32) {
        if m == 0 {
            return;
        }
        match (t.family, t.rank) {
            (Family::D, 2) => self.add(IrreducibleType::a(1), 2 * m),
            (Family::D, 3) => self.add(IrreducibleType::a(3), m),
            _ => *self.comps.entry(t).or_insert(0) += m,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Components with multiplicities, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (IrreducibleType, u32)> + '_ {
        self.comps.iter().map(|(t, m)| (*t, *m))
    }

    /// Components listed with repetition, in canonical order.
    pub fn flat(&self) -> Vec<IrreducibleType> {
        self.comps
            .iter()
            .flat_map(|(t, m)| std::iter::repeat_n(*t, *m as usize))
            .collect()
    }

    pub fn multiplicity(&self, t: IrreducibleType) -> u32 {
        self.comps.get(&t).copied().unwrap_or(0)
    }

    pub fn component_count(&self) -> u32 {
        self.comps.values().sum()
    }

    pub fn rank(&self) -> u32 {
        self.comps.iter().map(|(t, m)| t.rank * m).sum()
    }

    pub fn root_count(&self) -> u64 {
        self.comps.iter().map(|(t, m)| t.root_count() * *m as u64).sum()
    }

    pub fn determinant(&self) -> BigInt {
        self.comps.iter().fold(BigInt::one(), |acc, (t, m)| {
            acc * num_traits::pow(t.determinant(), *m as usize)
        })
    }

    pub fn weyl_order(&self) -> BigInt {
        self.comps.iter().fold(BigInt::one(), |acc, (t, m)| {
            acc * num_traits::pow(t.weyl_order(), *m as usize)
        })
    }

    /// `∏ |Aut(component)|^{m} · m!` over distinct components.
    pub fn aut_order(&self) -> BigInt {
        self.comps.iter().fold(BigInt::one(), |acc, (t, m)| {
            acc * num_traits::pow(t.aut_order(), *m as usize) * factorial(*m as u64)
        })
    }

    /// The common Coxeter number when all components share one.
    pub fn coxeter_number(&self) -> Option<u32> {
        let mut hs = self.comps.keys().map(|t| t.coxeter_number());
        let first = hs.next()?;
        hs.all(|h| h == first).then_some(first)
    }

    /// Union of two multisets.
    pub fn plus(&self, other: &RootSystemType) -> RootSystemType {
        let mut r = self.clone();
        for (t, m) in other.components() {
            r.add(t, m);
        }
        r
    }

    /// `self` minus `other`, if `other` is a sub-multiset.
    pub fn minus(&self, other: &RootSystemType) -> Option<RootSystemType> {
        let mut r = self.clone();
        for (t, m) in other.components() {
            let e = r.comps.get_mut(&t)?;
            if *e < m {
                return None;
            }
            *e -= m;
            if *e == 0 {
                r.comps.remove(&t);
            }
        }
        Some(r)
    }

    /// All sub-multisets, the empty one first.
    pub fn sub_multisets(&self) -> Vec<RootSystemType> {
        let items: Vec<(IrreducibleType, u32)> = self.components().collect();
        let mut out = vec![RootSystemType::empty()];
        for (t, m) in items {
            let mut next = Vec::new();
            for base in &out {
                for k in 0..=m {
                    let mut b = base.clone();
                    b.add(t, k);
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// Compact label such as `A5^4D4`, as used for Niemeier lattices.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "-".into();
        }
        self.comps
            .iter()
            .map(|(t, m)| if *m == 1 { t.to_string() } else { format!("{t}^{m}") })
            .collect()
    }

    /// Block-diagonal Cartan matrix, components in canonical order.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let flat = self.flat();
        let n = self.rank() as usize;
        let mut g = vec![vec![0i64; n]; n];
        let mut off = 0;
        for t in flat {
            let c = t.cartan();
            for (i, row) in c.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    g[off + i][off + j] = *v;
                }
            }
            off += t.rank as usize;
        }
        g
    }
}

impl fmt::Display for RootSystemType {
    /// Space-separated canonical form such as `A1^2 A10`; the empty type
    /// prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(t, m)| if *m == 1 { t.to_string() } else { format!("{t}^{m}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_token(tok: &str) -> Result<(IrreducibleType, u32), RootSysError> {
    let bad = || RootSysError::BadToken(tok.to_string());
    let t = tok.to_ascii_uppercase().replace('_', "");
    let (base, mult) = match t.split_once('^') {
        Some((b, m)) => (b.to_string(), m.parse::<u32>().map_err(|_| bad())?),
        None => (t.clone(), 1),
    };
    let mut chars = base.chars();
    let family = match chars.next() {
        Some('A') => Family::A,
        Some('D') => Family::D,
        Some('E') => Family::E,
        _ => return Err(bad()),
    };
    let digits: String = chars.collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || mult == 0 {
        return Err(bad());
    }
    let rank: u32 = digits.parse().map_err(|_| bad())?;
    let it = IrreducibleType { family, rank };
    it.validate().map_err(|_| bad())?;
    Ok((it, mult))
}

/// Splits glued tokens such as `A5^4D4` into `A5^4`, `D4`.
fn split_compact(word: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for ch in word.chars() {
        if matches!(ch.to_ascii_uppercase(), 'A' | 'D' | 'E') || out.is_empty() {
            out.push(String::new());
        }
        out.last_mut().expect("non-empty").push(ch);
    }
    out
}

impl FromStr for RootSystemType {
    type Err = RootSysError;

    /// Whitespace-separated tokens like `A4 E8` or `A1^2 A10`, case
    /// insensitive; glued forms like `A5^4D4` are also accepted. The empty
    /// string, `-` and `0` denote the empty type.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut r = RootSystemType::empty();
        if s.is_empty() || s == "-" || s == "0" {
            return Ok(r);
        }
        for word in s.split(|c: char| c.is_whitespace() || c == ',' || c == '+') {
            if word.is_empty() {
                continue;
            }
            for tok in split_compact(word) {
                let (t, m) = parse_token(&tok)?;
                r.add(t, m);
            }
        }
        Ok(r)
    }
}

/// A set of roots given by integer coordinate vectors and a common scale:
/// the actual root is `v / scale`, and every root has norm 2.
#[derive(Clone, Debug)]
pub struct RootList {
    pub scale: i64,
    pub vectors: Vec<Vec<i64>>,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    /// Exact inner product of roots `i` and `j`.
    pub fn inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.vectors[i], &self.vectors[j]) / (self.scale * self.scale)
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.vectors.iter().position(|w| w == v)
    }

    /// The inner-product table, row-major.
    pub fn gram_table(&self) -> Vec<i8> {
        let n = self.len();
        let mut t = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.inner(i, j) as i8;
            }
        }
        t
    }

    /// Orthogonal direct sum of several root lists (scales unified).
    pub fn direct_sum(parts: &[RootList]) -> RootList {
        let scale = parts.iter().fold(1i64, |acc, p| num_integer::lcm(acc, p.scale));
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        let mut vectors = Vec::new();
        let mut off = 0;
        for p in parts {
            let k = scale / p.scale;
            for v in &p.vectors {
                let mut w = vec![0i64; total];
                for (i, x) in v.iter().enumerate() {
                    w[off + i] = x * k;
                }
                vectors.push(w);
            }
            off += p.dim();
        }
        RootList { scale, vectors }
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn e8_roots_doubled() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [2i64, -2] {
                for sj in [2i64, -2] {
                    let mut v = vec![0i64; 8];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out.sort();
    out
}

/// Simple roots of E8 (Bourbaki numbering) in doubled coordinates.
fn e8_simple_doubled() -> Vec<Vec<i64>> {
    let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1]];
    let mut a2 = vec![0i64; 8];
    a2[0] = 2;
    a2[1] = 2;
    s.push(a2);
    for k in 0..6 {
        let mut v = vec![0i64; 8];
        v[k] = -2;
        v[k + 1] = 2;
        s.push(v);
    }
    s
}

/// The roots of an irreducible type.
///
/// A_n lives in the sum-zero hyperplane of Z^{n+1}, D_n in Z^n, and E8 in
/// doubled coordinates (scale 2). E7 is the set of E8 roots orthogonal to
/// the highest root `e7 + e8`; E6 is the set orthogonal to the A2 spanned by
/// the highest root and `α8`.
pub fn roots(t: IrreducibleType) -> Result<RootList, RootSysError> {
    t.validate()?;
    let n = t.rank as usize;
    let unit = |dim: usize, i: usize, s: i64| {
        let mut v = vec![0i64; dim];
        v[i] = s;
        v
    };
    let add = |a: Vec<i64>, b: Vec<i64>| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let mut vectors = Vec::new();
    match t.family {
        Family::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        vectors.push(add(unit(n + 1, i, 1), unit(n + 1, j, -1)));
                    }
                }
            }
            Ok(RootList { scale: 1, vectors })
        }
        Family::D => {
            for i in 0..n {
                for j in i + 1..n {
                    for si in [1i64, -1] {
                        for sj in [1i64, -1] {
                            vectors.push(add(unit(n, i, si), unit(n, j, sj)));
                        }
                    }
                }
            }
            Ok(RootList { scale: 1, vectors })
        }
        Family::E => {
            let all = e8_roots_doubled();
            let highest = vec![0, 0, 0, 0, 0, 0, 2, 2];
            let alpha8 = e8_simple_doubled()[7].clone();
            let keep = |v: &Vec<i64>| match n {
                8 => true,
                7 => dot(v, &highest) == 0,
                _ => dot(v, &highest) == 0 && dot(v, &alpha8) == 0,
            };
            Ok(RootList {
                scale: 2,
                vectors: all.into_iter().filter(keep).collect(),
            })
        }
    }
}

/// Simple roots in the same coordinates as [`roots`], ordered to match
/// [`IrreducibleType::cartan`].
pub fn simple_roots(t: IrreducibleType) -> Result<RootList, RootSysError> {
    t.validate()?;
    let n = t.rank as usize;
    let vectors = match t.family {
        Family::A => (0..n)
            .map(|i| {
                let mut v = vec![0i64; n + 1];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect(),
        Family::D => {
            let mut s: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect();
            let mut last = vec![0i64; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            s.push(last);
            s
        }
        Family::E => e8_simple_doubled().into_iter().take(n).collect(),
    };
    let scale = if t.family == Family::E { 2 } else { 1 };
    Ok(RootList { scale, vectors })
}

/// Determinant of the Cartan matrix, computed by exact elimination.
pub fn cartan_determinant(t: &RootSystemType) -> BigInt {
    let c = t.cartan();
    if c.is_empty() {
        return BigInt::one();
    }
    let d = ExactMatrix::from_int_rows(&c).determinant();
    d.to_integer()
}

/// Root list of a reducible type as an orthogonal direct sum.
pub fn roots_of(t: &RootSystemType) -> Result<RootList, RootSysError> {
    let parts: Result<Vec<RootList>, _> = t.flat().into_iter().map(roots).collect();
    Ok(RootList::direct_sum(&parts?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t: RootSystemType = "a1^2 A10".parse().unwrap();
        assert_eq!(t.to_string(), "A1^2 A10");
        let g: RootSystemType = "A5^4D4".parse().unwrap();
        assert_eq!(g.compact(), "A5^4D4");
        assert_eq!(g.rank(), 24);
        assert!("B3".parse::<RootSystemType>().is_err());
        assert!("E9".parse::<RootSystemType>().is_err());
        assert!("A0".parse::<RootSystemType>().is_err());
        assert_eq!("D2".parse::<RootSystemType>().unwrap().to_string(), "A1^2");
        assert_eq!("D3".parse::<RootSystemType>().unwrap().to_string(), "A3");
        assert!("-".parse::<RootSystemType>().unwrap().is_empty());
    }

    #[test]
    fn aut_orders() {
        let d12: RootSystemType = "D12".parse().unwrap();
        assert_eq!(d12.aut_order(), (BigInt::one() << 12u32) * factorial(12));
        assert_eq!("A1".parse::<RootSystemType>().unwrap().aut_order(), BigInt::from(2));
        assert_eq!("A1^2".parse::<RootSystemType>().unwrap().aut_order(), BigInt::from(8));
        assert_eq!("D4".parse::<RootSystemType>().unwrap().aut_order(), BigInt::from(1152));
        assert_eq!(
            "E6".parse::<RootSystemType>().unwrap().aut_order(),
            BigInt::from(103680)
        );
    }

    #[test]
    fn determinants() {
        assert_eq!("D12".parse::<RootSystemType>().unwrap().determinant(), BigInt::from(4));
        assert_eq!(
            "A4 E8".parse::<RootSystemType>().unwrap().determinant(),
            BigInt::from(5)
        );
        assert_eq!(RootSystemType::empty().determinant(), BigInt::from(1));
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(IrreducibleType::a(1)).unwrap().len(), 2);
        assert_eq!(roots(IrreducibleType::d(24)).unwrap().len(), 1104);
        assert_eq!(roots(IrreducibleType::e(8)).unwrap().len(), 240);
        assert_eq!(roots(IrreducibleType::e(7)).unwrap().len(), 126);
        assert_eq!(roots(IrreducibleType::e(6)).unwrap().len(), 72);
    }
}
