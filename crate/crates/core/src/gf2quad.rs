//! Quadratic spaces over GF(2) in hyperbolic normal form.
//!
//! Vectors of an `m`-dimensional space are packed into the low `m` bits of a
//! `u32`; bit `i` is the coordinate `x_{i+1}`. The quadratic form is
//! `q(x) = Σ_{j<m/2} x_j x_{m/2+j}`.

use rand::Rng;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

pub type Vec2 = u32;

/// Largest dimension for which maximal isotropic subspaces are enumerated.
pub const ENUMERATION_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension {0} must be even and between 2 and 32")]
    BadDimension(usize),
    #[error("enumeration is limited to m <= {ENUMERATION_CAP}, got {0}")]
    TooLarge(usize),
    #[error("matrix does not preserve the quadratic form")]
    NotOrthogonal,
    #[error("subspace is not maximal isotropic")]
    NotMaximal,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("vector outside the ambient space")]
    OutOfRange,
}

#[inline]
fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// The hyperbolic quadratic space of dimension `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSpaceF2 {
    m: usize,
}

impl QuadraticSpaceF2 {
    pub fn new(m: usize) -> Result<Self, Gf2Error> {
        if m == 0 || m % 2 == 1 || m > 32 {
            return Err(Gf2Error::BadDimension(m));
        }
        Ok(QuadraticSpaceF2 { m })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn half(&self) -> usize {
        self.m / 2
    }

    fn mask(&self) -> u32 {
        if self.m == 32 {
            u32::MAX
        } else {
            (1u32 << self.m) - 1
        }
    }

    fn low_mask(&self) -> u32 {
        (1u32 << self.half()) - 1
    }

    pub fn q(&self, x: Vec2) -> u32 {
        let h = self.half();
        parity((x & self.low_mask()) & ((x >> h) & self.low_mask()))
    }

    pub fn b(&self, x: Vec2, y: Vec2) -> u32 {
        let h = self.half();
        let lo = self.low_mask();
        parity(((x & lo) & ((y >> h) & lo)) ^ ((y & lo) & ((x >> h) & lo)))
    }

    /// Unit vector `e_i` (1-based as in the usual notation).
    pub fn e(&self, i: usize) -> Vec2 {
        assert!(i >= 1 && i <= self.m);
        1 << (i - 1)
    }

    pub fn contains(&self, x: Vec2) -> bool {
        x & !self.mask() == 0
    }
}

/// An `m × m` matrix over GF(2), stored by rows. `rows[i]` has bit `j` set
/// when the entry `(i, j)` is 1, so `(Mx)_i = <rows[i], x>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixF2 {
    pub m: usize,
    pub rows: Vec<u32>,
}

impl MatrixF2 {
    pub fn identity(m: usize) -> Self {
        MatrixF2 {
            m,
            rows: (0..m).map(|i| 1 << i).collect(),
        }
    }

    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (parity(r & x) << i))
    }

    /// The product `self · other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &MatrixF2) -> MatrixF2 {
        assert_eq!(self.m, other.m);
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0;
                let mut bits = r;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc ^= other.rows[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        MatrixF2 { m: self.m, rows }
    }

    pub fn column(&self, j: usize) -> Vec2 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        (self.rows[i] >> j) & 1
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        Subspace::span(self.m, &self.rows).dim()
    }
}

/// A matrix known to preserve `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalMapF2 {
    space: QuadraticSpaceF2,
    mat: MatrixF2,
}

impl OrthogonalMapF2 {
    /// Accepts `mat` when it preserves `q` on the standard basis and `b` on
    /// all basis pairs, which is equivalent to preserving `q` everywhere.
    pub fn new(space: QuadraticSpaceF2, mat: MatrixF2) -> Result<Self, Gf2Error> {
        if mat.m != space.dim() || mat.rows.iter().any(|&r| !space.contains(r)) {
            return Err(Gf2Error::NotOrthogonal);
        }
        let cols: Vec<Vec2> = (0..space.dim()).map(|j| mat.column(j)).collect();
        for i in 0..space.dim() {
            if space.q(cols[i]) != space.q(1 << i) {
                return Err(Gf2Error::NotOrthogonal);
            }
            for j in i + 1..space.dim() {
                if space.b(cols[i], cols[j]) != space.b(1 << i, 1 << j) {
                    return Err(Gf2Error::NotOrthogonal);
                }
            }
        }
        Ok(OrthogonalMapF2 { space, mat })
    }

    pub fn identity(space: QuadraticSpaceF2) -> Self {
        OrthogonalMapF2 {
            space,
            mat: MatrixF2::identity(space.dim()),
        }
    }

    /// The transvection `x ↦ x + b(a, x) a`; requires `q(a) = 1`.
    pub fn transvection(space: QuadraticSpaceF2, a: Vec2) -> Result<Self, Gf2Error> {
        if !space.contains(a) {
            return Err(Gf2Error::OutOfRange);
        }
        if space.q(a) != 1 {
            return Err(Gf2Error::NotOrthogonal);
        }
        let m = space.dim();
        let cols: Vec<Vec2> = (0..m)
            .map(|j| {
                let e = 1 << j;
                if space.b(a, e) == 1 {
                    e ^ a
                } else {
                    e
                }
            })
            .collect();
        let rows = (0..m)
            .map(|i| (0..m).fold(0, |acc, j| acc | (((cols[j] >> i) & 1) << j)))
            .collect();
        Self::new(space, MatrixF2 { m, rows })
    }

    pub fn space(&self) -> QuadraticSpaceF2 {
        self.space
    }

    pub fn matrix(&self) -> &MatrixF2 {
        &self.mat
    }

    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.mat.apply(x)
    }

    pub fn compose(&self, other: &OrthogonalMapF2) -> OrthogonalMapF2 {
        OrthogonalMapF2 {
            space: self.space,
            mat: self.mat.compose(&other.mat),
        }
    }
}

/// Dickson invariant `σ(C'B)`, the trace of `C'B` for the block form
/// `M = (A B / C D)` with respect to the split `x = (x', x'')` into the two
/// halves of the hyperbolic basis.
pub fn dickson(g: &OrthogonalMapF2) -> u32 {
    let h = g.space.half();
    let lo = (1u32 << h) - 1;
    let rows = &g.mat.rows;
    (0..h).fold(0, |acc, i| {
        let b_row = (rows[i] >> h) & lo;
        let c_row = rows[h + i] & lo;
        acc ^ parity(b_row & c_row)
    })
}

/// Rank of `M + I` mod 2, an independent characterisation of the Dickson
/// invariant used as a cross-check.
pub fn dickson_by_rank(g: &OrthogonalMapF2) -> u32 {
    let m = g.space.dim();
    let rows: Vec<u32> = g.mat.rows.iter().enumerate().map(|(i, r)| r ^ (1 << i)).collect();
    (MatrixF2 { m, rows }.rank() % 2) as u32
}

/// A random element of the orthogonal group, built as a product of
/// `steps` random transvections.
pub fn random_orthogonal<R: Rng>(space: QuadraticSpaceF2, rng: &mut R, steps: usize) -> OrthogonalMapF2 {
    let mut g = OrthogonalMapF2::identity(space);
    let mask = space.mask();
    for _ in 0..steps {
        let a = loop {
            let a = rng.gen::<u32>() & mask;
            if space.q(a) == 1 {
                break a;
            }
        };
        g = OrthogonalMapF2::transvection(space, a).expect("q(a) = 1").compose(&g);
    }
    g
}

/// All orthogonal maps of a space with `m <= 4`, by exhaustive search.
pub fn orthogonal_group_exhaustive(space: QuadraticSpaceF2) -> Vec<OrthogonalMapF2> {
    let m = space.dim();
    assert!(m <= 4, "exhaustive orthogonal group only for m <= 4");
    let total = 1u64 << (m * m);
    let mask = (1u32 << m) - 1;
    (0..total)
        .filter_map(|bits| {
            let rows = (0..m).map(|i| ((bits >> (i * m)) as u32) & mask).collect();
            OrthogonalMapF2::new(space, MatrixF2 { m, rows }).ok()
        })
        .collect()
}

/// A subspace stored by its fully reduced echelon basis. The pivot of a
/// basis vector is its lowest set bit; every pivot column is clear in the
/// other basis vectors, and the basis is sorted by decreasing pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceF2 {
    m: usize,
    basis: Vec<Vec2>,
}

pub type Subspace = SubspaceF2;

impl SubspaceF2 {
    pub fn zero(m: usize) -> Self {
        SubspaceF2 { m, basis: Vec::new() }
    }

    /// The span of arbitrary vectors, put into canonical form.
    pub fn span(m: usize, vecs: &[Vec2]) -> Self {
        let mut basis: Vec<Vec2> = Vec::new();
        for &v in vecs {
            let mut v = v;
            for &b in &basis {
                if v & (b & b.wrapping_neg()) != 0 {
                    v ^= b;
                }
            }
            if v == 0 {
                continue;
            }
            let p = v & v.wrapping_neg();
            for b in basis.iter_mut() {
                if *b & p != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
        basis.sort_by_key(|b| std::cmp::Reverse(b.trailing_zeros()));
        SubspaceF2 { m, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec2] {
        &self.basis
    }

    pub fn contains(&self, v: Vec2) -> bool {
        let mut v = v;
        for &b in &self.basis {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        v == 0
    }

    pub fn contains_subspace(&self, other: &SubspaceF2) -> bool {
        other.basis.iter().all(|&v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceF2) -> SubspaceF2 {
        let all: Vec<Vec2> = self.basis.iter().chain(&other.basis).copied().collect();
        Self::span(self.m, &all)
    }

    pub fn intersection_dim(&self, other: &SubspaceF2) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// All `2^dim` elements.
    pub fn elements(&self) -> Vec<Vec2> {
        let mut out = vec![0];
        for &b in &self.basis {
            let extra: Vec<Vec2> = out.iter().map(|x| x ^ b).collect();
            out.extend(extra);
        }
        out
    }

    /// Image under an orthogonal map.
    pub fn image(&self, g: &OrthogonalMapF2) -> SubspaceF2 {
        let v: Vec<Vec2> = self.basis.iter().map(|&x| g.apply(x)).collect();
        Self::span(self.m, &v)
    }
}

/// `q` vanishes on `f`: checked as `q = 0` on the basis and `b = 0` on all
/// basis pairs.
pub fn is_isotropic(f: &SubspaceF2, v: &QuadraticSpaceF2) -> bool {
    let b = f.basis();
    b.iter().all(|&x| v.q(x) == 0) && (0..b.len()).all(|i| (i + 1..b.len()).all(|j| v.b(b[i], b[j]) == 0))
}

pub fn is_maximal_isotropic(f: &SubspaceF2, v: &QuadraticSpaceF2) -> bool {
    f.ambient_dim() == v.dim() && f.dim() == v.half() && is_isotropic(f, v)
}

/// `∏_{i=0}^{k-1} (2^i + 1)`, the number of maximal isotropic subspaces of
/// the hyperbolic space of dimension `2k`.
pub fn maximal_isotropic_count_formula(k: u32) -> num_bigint::BigInt {
    (0..k).fold(num_bigint::BigInt::from(1), |acc, i| {
        acc * ((num_bigint::BigInt::from(1) << i) + 1)
    })
}

fn enumeration_cache() -> &'static Mutex<HashMap<usize, std::sync::Arc<Vec<SubspaceF2>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<Vec<SubspaceF2>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every maximal isotropic subspace, each in canonical form, sorted.
///
/// Canonical bases are generated directly: rows are chosen in order of
/// decreasing pivot, each row having its pivot bit set, nothing below it,
/// and zeros in the pivots already chosen.
pub fn enumerate_maximal_isotropic(v: &QuadraticSpaceF2) -> Result<std::sync::Arc<Vec<SubspaceF2>>, Gf2Error> {
    let m = v.dim();
    if m > ENUMERATION_CAP {
        return Err(Gf2Error::TooLarge(m));
    }
    if let Some(hit) = enumeration_cache().lock().expect("cache poisoned").get(&m) {
        return Ok(hit.clone());
    }
    let h = v.half();
    let mut out = Vec::new();
    let mut rows: Vec<Vec2> = Vec::with_capacity(h);
    fn rec(
        v: &QuadraticSpaceF2,
        h: usize,
        upper: usize,
        rows: &mut Vec<Vec2>,
        pivmask: u32,
        out: &mut Vec<SubspaceF2>,
    ) {
        if rows.len() == h {
            out.push(SubspaceF2::span(v.dim(), rows));
            return;
        }
        let need = h - rows.len();
        for p in (0..upper).rev() {
            if p + 1 < need {
                break;
            }
            let free_mask = (((1u64 << v.dim()) - 1) as u32) & !((2u32 << p) - 1) & !pivmask;
            let free_bits: Vec<u32> = (0..32).filter(|b| free_mask >> b & 1 == 1).collect();
            for choice in 0u32..(1 << free_bits.len()) {
                let mut x = 1u32 << p;
                for (k, &bit) in free_bits.iter().enumerate() {
                    if choice >> k & 1 == 1 {
                        x |= 1 << bit;
                    }
                }
                if v.q(x) != 0 || rows.iter().any(|&r| v.b(r, x) != 0) {
                    continue;
                }
                rows.push(x);
                rec(v, h, p, rows, pivmask | (1 << p), out);
                rows.pop();
            }
        }
    }
    rec(v, h, m, &mut rows, 0, &mut out);
    out.sort();
    let arc = std::sync::Arc::new(out);
    enumeration_cache()
        .lock()
        .expect("cache poisoned")
        .insert(m, arc.clone());
    Ok(arc)
}

/// The sign `ε(F)` relative to the base point `F0`:
/// `(-1)^{m/2 - dim(F ∩ F0)}`, so that `ε(F0) = +1` and `ε` is constant on
/// the two orbits of the kernel of the Dickson invariant.
pub fn orbit_sign(f: &SubspaceF2, f0: &SubspaceF2, v: &QuadraticSpaceF2) -> Result<i32, Gf2Error> {
    if !is_maximal_isotropic(f, v) || !is_maximal_isotropic(f0, v) {
        return Err(Gf2Error::NotMaximal);
    }
    let d = v.half() - f.intersection_dim(f0);
    Ok(if d.is_multiple_of(2) { 1 } else { -1 })
}

/// `Σ ε(F)` over the maximal isotropic `F ⊇ F'`. Zero for every
/// non-maximal isotropic `F'`.
pub fn sum_epsilon_over_extensions(fp: &SubspaceF2, f0: &SubspaceF2, v: &QuadraticSpaceF2) -> Result<i64, Gf2Error> {
    if !is_isotropic(fp, v) {
        return Err(Gf2Error::NotIsotropic);
    }
    if fp.dim() >= v.half() {
        return Err(Gf2Error::NotMaximal);
    }
    let all = enumerate_maximal_isotropic(v)?;
    let mut s = 0i64;
    for f in all.iter().filter(|f| f.contains_subspace(fp)) {
        s += orbit_sign(f, f0, v)? as i64;
    }
    Ok(s)
}

/// The standard base point `span{e_1, …, e_{m/2}}`.
pub fn standard_f0(v: &QuadraticSpaceF2) -> SubspaceF2 {
    let b: Vec<Vec2> = (0..v.half()).map(|i| 1 << i).collect();
    SubspaceF2::span(v.dim(), &b)
}

/// All isotropic subspaces of dimension `k` (for small `m`), canonical and
/// sorted; obtained as subspaces of maximal ones.
pub fn enumerate_isotropic(v: &QuadraticSpaceF2, k: usize) -> Result<Vec<SubspaceF2>, Gf2Error> {
    let all = enumerate_maximal_isotropic(v)?;
    let mut set = std::collections::BTreeSet::new();
    for f in all.iter() {
        let elems = f.elements();
        collect_subspaces(v.dim(), &elems[1..], k, &mut Vec::new(), 0, &mut set);
    }
    Ok(set.into_iter().collect())
}

fn collect_subspaces(
    m: usize,
    elems: &[Vec2],
    k: usize,
    cur: &mut Vec<Vec2>,
    start: usize,
    out: &mut std::collections::BTreeSet<SubspaceF2>,
) {
    let s = SubspaceF2::span(m, cur);
    if s.dim() < cur.len() {
        return;
    }
    if cur.len() == k {
        out.insert(s);
        return;
    }
    for i in start..elems.len() {
        cur.push(elems[i]);
        collect_subspaces(m, elems, k, cur, i + 1, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let v = QuadraticSpaceF2::new(2).unwrap();
        assert!(is_isotropic(&SubspaceF2::zero(2), &v));
        assert!(is_isotropic(&SubspaceF2::span(2, &[v.e(1)]), &v));
        assert!(!is_isotropic(&SubspaceF2::span(2, &[v.e(1) | v.e(2)]), &v));
        assert_eq!(enumerate_maximal_isotropic(&v).unwrap().len(), 2);
    }

    #[test]
    fn orbit_sign_examples() {
        let v = QuadraticSpaceF2::new(4).unwrap();
        let f0 = SubspaceF2::span(4, &[v.e(1), v.e(2)]);
        let f = SubspaceF2::span(4, &[v.e(1), v.e(4)]);
        let g = SubspaceF2::span(4, &[v.e(3), v.e(4)]);
        assert_eq!(orbit_sign(&f, &f0, &v), Ok(-1));
        assert_eq!(orbit_sign(&g, &f0, &v), Ok(1));
        let v24 = QuadraticSpaceF2::new(24).unwrap();
        let f24 = standard_f0(&v24);
        assert_eq!(orbit_sign(&f24, &f24, &v24), Ok(1));
    }

    #[test]
    fn transvection_is_odd() {
        let v = QuadraticSpaceF2::new(6).unwrap();
        let a = v.e(1) | v.e(4);
        let t = OrthogonalMapF2::transvection(v, a).unwrap();
        assert_eq!(dickson(&t), 1);
        assert_eq!(dickson(&t.compose(&t)), 0);
        assert_eq!(dickson(&OrthogonalMapF2::identity(v)), 0);
    }

    #[test]
    fn rejects_non_orthogonal() {
        let v = QuadraticSpaceF2::new(2).unwrap();
        let m = MatrixF2 {
            m: 2,
            rows: vec![0b11, 0b10],
        };
        assert_eq!(OrthogonalMapF2::new(v, m), Err(Gf2Error::NotOrthogonal));
        assert!(QuadraticSpaceF2::new(3).is_err());
        assert!(enumerate_maximal_isotropic(&QuadraticSpaceF2::new(14).unwrap()).is_err());
    }
}
