//! Doubly-even self-dual binary codes of length 24 and the `D24` row of the
//! `T(2)` matrix.
//!
//! The nine codes are rebuilt from their tetrad (weight-4) components by a
//! glue search. For each code `C`, the maximal isotropic subspaces of
//! `D24⁺/2D24⁺` of "code type" produce the lattice whose roots are the
//! vectors `2·(±1^4)` supported on tetrads of `C` (with an even number of
//! minus signs). Together with the frame-type subspaces counted by
//! `A1^24` sublattices this gives `n(D24⁺(2) ⊆ Λ_μ)` for every μ.

use crate::exactq::{factorial, BigInt, BigRational, ExactMatrix};
use crate::golay;
use crate::niemeier::Registry;
use crate::rootsys::{IrreducibleType, RootSystemType};
use crate::subcount::Counter;
use num_traits::One;
use rayon::prelude::*;
use std::collections::HashSet;

const N: usize = 24;
const FULL: u32 = (1 << N) - 1;

fn wt(x: u32) -> u32 {
    x.count_ones()
}

/// Row-reduced basis of the span of `words`.
pub fn reduce_basis(words: &[u32]) -> Vec<u32> {
    let mut piv: Vec<u32> = Vec::new();
    for &w in words {
        let mut w = w;
        for &p in &piv {
            w = w.min(w ^ p);
        }
        if w != 0 {
            piv.push(w);
            piv.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    piv
}

pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let n = out.len();
        for i in 0..n {
            out.push(out[i] ^ b);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Basis of the dual code.
pub fn dual_basis(basis: &[u32]) -> Vec<u32> {
    let mut rows: Vec<u32> = reduce_basis(basis);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..N {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> c & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..N)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = 1u32 << f;
            for (i, &p) in pivots.iter().enumerate() {
                if rows[i] >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

/// Tetrad generators of a component of length `n`.
fn component(kind: char, n: usize) -> Vec<u32> {
    match (kind, n) {
        ('d', _) => (0..n / 2 - 1).map(|i| 0b1111 << (2 * i)).collect(),
        ('e', 7) => vec![0b111_1000, 0b110_0110, 0b101_0101],
        ('e', 8) => vec![0b1111_0000, 0b1100_1100, 0b1010_1010, 0b1111_1111],
        _ => unreachable!("unsupported component"),
    }
}

/// A doubly-even self-dual code of length 24.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIICode {
    pub name: &'static str,
    pub basis: Vec<u32>,
}

impl TypeIICode {
    pub fn words(&self) -> Vec<u32> {
        span(&self.basis)
    }

    pub fn tetrads(&self) -> Vec<u32> {
        self.words().into_iter().filter(|&w| wt(w) == 4).collect()
    }

    pub fn is_doubly_even_self_dual(&self) -> bool {
        self.basis.len() == 12 && self.words().iter().all(|&w| wt(w).is_multiple_of(4))
    }

    /// Root system of the associated lattice: the vectors `2·(±1^4)` on
    /// tetrads with an even number of minus signs, split into components.
    pub fn lattice_roots(&self) -> RootSystemType {
        let mut roots: Vec<[i8; N]> = Vec::new();
        for t in self.tetrads() {
            let idx: Vec<usize> = (0..N).filter(|i| t >> i & 1 == 1).collect();
            for signs in 0u32..16 {
                if signs.count_ones() % 2 == 1 {
                    continue;
                }
                let mut v = [0i8; N];
                for (k, &i) in idx.iter().enumerate() {
                    v[i] = if signs >> k & 1 == 1 { -2 } else { 2 };
                }
                roots.push(v);
            }
        }
        let dot = |a: &[i8; N], b: &[i8; N]| a.iter().zip(b).map(|(x, y)| *x as i32 * *y as i32).sum::<i32>();
        let mut comp = vec![usize::MAX; roots.len()];
        let mut out = RootSystemType::empty();
        for s in 0..roots.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for y in 0..roots.len() {
                    if comp[y] == usize::MAX && dot(&roots[x], &roots[y]) != 0 {
                        comp[y] = s;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            let rows: Vec<Vec<BigInt>> = members
                .iter()
                .map(|&i| roots[i].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let rank = ExactMatrix::from_int_rows(&rows).rank() as u32;
            out.add(irreducible_from_counts(members.len() as u64, rank), 1);
        }
        out
    }
}

/// The irreducible type with the given number of roots and rank.
fn irreducible_from_counts(n: u64, r: u32) -> IrreducibleType {
    let rr = r as u64;
    match (n, r) {
        (72, 6) => IrreducibleType::e(6),
        (126, 7) => IrreducibleType::e(7),
        (240, 8) => IrreducibleType::e(8),
        _ if n == rr * (rr + 1) => IrreducibleType::a(r),
        _ if r >= 4 && n == 2 * rr * (rr - 1) => IrreducibleType::d(r),
        _ => panic!("no irreducible root system with {n} roots and rank {r}"),
    }
}

fn span_stats(basis: &[u32]) -> Option<usize> {
    let s = span(basis);
    if s.iter().any(|&w| !wt(w).is_multiple_of(4)) {
        return None;
    }
    Some(s.iter().filter(|&&w| wt(w) == 4).count())
}

/// Extends the tetrad code spanned by `start` to a doubly-even self-dual
/// code without new tetrads.
fn glue_search(start: &[u32]) -> Option<Vec<u32>> {
    let base = reduce_basis(start);
    if base.len() == 12 {
        return Some(base);
    }
    let c = span(&base);
    let dual = span(&dual_basis(&base));
    let mut seen = vec![false; 1 << N];
    let mut cands = Vec::new();
    for &v in &dual {
        if seen[v as usize] {
            continue;
        }
        let coset: Vec<u32> = c.iter().map(|&x| x ^ v).collect();
        for &x in &coset {
            seen[x as usize] = true;
        }
        if c.binary_search(&v).is_ok() {
            continue;
        }
        let best = *coset.iter().min_by_key(|&&x| (wt(x), x)).unwrap();
        if wt(best) >= 8 && wt(best).is_multiple_of(4) {
            cands.push(best);
        }
    }
    fn rec(cur: &mut Vec<u32>, cands: &[u32], start: usize, tetrads: usize) -> bool {
        if cur.len() == 12 {
            return true;
        }
        let sp: HashSet<u32> = span(cur).into_iter().collect();
        for i in start..cands.len() {
            let g = cands[i];
            if sp.contains(&g) || cur.iter().any(|&x| wt(g & x) % 2 == 1) {
                continue;
            }
            cur.push(g);
            if span_stats(cur) == Some(tetrads) && rec(cur, cands, i + 1, tetrads) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let tetrads = span_stats(&base)?;
    let mut cur = base;
    rec(&mut cur, &cands, 0, tetrads).then_some(cur)
}

/// The tetrad systems of the nine codes.
pub const CODE_NAMES: [&str; 9] = [
    "d4^6", "d6^4", "d8^3", "d10e7^2", "d12^2", "d24", "e8^3", "d16e8", "g24",
];

fn components_of(name: &str) -> Vec<(char, usize)> {
    match name {
        "d4^6" => vec![('d', 4); 6],
        "d6^4" => vec![('d', 6); 4],
        "d8^3" => vec![('d', 8); 3],
        "d10e7^2" => vec![('d', 10), ('e', 7), ('e', 7)],
        "d12^2" => vec![('d', 12); 2],
        "d24" => vec![('d', 24)],
        "e8^3" => vec![('e', 8); 3],
        "d16e8" => vec![('d', 16), ('e', 8)],
        _ => Vec::new(),
    }
}

/// Builds one of the nine codes by name.
pub fn build(name: &'static str) -> Option<TypeIICode> {
    if name == "g24" {
        return Some(TypeIICode {
            name,
            basis: reduce_basis(&golay::code().basis),
        });
    }
    let mut gens = Vec::new();
    let mut off = 0;
    for (k, n) in components_of(name) {
        gens.extend(component(k, n).into_iter().map(|g| g << off));
        off += n;
    }
    if off != N {
        return None;
    }
    glue_search(&gens).map(|basis| TypeIICode { name, basis })
}

pub fn all_codes() -> Vec<TypeIICode> {
    CODE_NAMES.par_iter().map(|n| build(n).expect("code exists")).collect()
}

struct AutSearch {
    words: HashSet<u32>,
    basis: Vec<u32>,
    /// For each `t`, a codeword with highest coordinate `t`, if any.
    wtop: Vec<Option<u32>>,
    /// Dimension of the code shortened to `{0..=t}`.
    sd: Vec<usize>,
    min_words: Vec<u32>,
}

impl AutSearch {
    fn new(code: &TypeIICode) -> Self {
        let words: HashSet<u32> = code.words().into_iter().collect();
        let mut wtop: Vec<Option<u32>> = vec![None; N];
        for &c in &words {
            if c != 0 {
                let t = 31 - c.leading_zeros() as usize;
                if wtop[t].is_none_or(|w| c < w) {
                    wtop[t] = Some(c);
                }
            }
        }
        let dmin = words.iter().filter(|&&w| w != 0).map(|&w| wt(w)).min().unwrap_or(0);
        let mut min_words: Vec<u32> = words.iter().copied().filter(|&w| w != 0 && wt(w) == dmin).collect();
        min_words.sort_unstable();
        let mut s = AutSearch {
            words,
            basis: code.basis.clone(),
            wtop,
            sd: Vec::new(),
            min_words,
        };
        s.sd = (0..N)
            .map(|t| s.shortened_dim(((1u64 << (t + 1)) - 1) as u32))
            .collect();
        s
    }

    fn shortened_dim(&self, support: u32) -> usize {
        let outside: Vec<u32> = self.basis.iter().map(|b| b & !support & FULL).collect();
        12 - reduce_basis(&outside).len()
    }

    fn image(c: u32, pi: &[usize]) -> u32 {
        let mut r = 0u32;
        let mut c = c;
        while c != 0 {
            r |= 1 << pi[c.trailing_zeros() as usize];
            c &= c - 1;
        }
        r
    }

    /// Necessary conditions for the partial map `pi` on `{0..=t}` (with
    /// image set `used`) to extend to an automorphism.
    fn admissible(&self, pi: &[usize], used: u32, t: usize) -> bool {
        if let Some(w) = self.wtop[t] {
            if !self.words.contains(&Self::image(w, pi)) {
                return false;
            }
        }
        if self.shortened_dim(used) != self.sd[t] {
            return false;
        }
        let prefix = ((1u64 << (t + 1)) - 1) as u32;
        self.min_words.iter().filter(|&&c| c >> t & 1 == 1).all(|&c| {
            let s = Self::image(c & prefix, pi);
            self.min_words.iter().any(|&d| d & used == s)
        })
    }

    fn extend(&self, pi: &mut [usize], used: u32, t: usize) -> bool {
        if t == N {
            return true;
        }
        for j in 0..N {
            if used >> j & 1 == 1 {
                continue;
            }
            pi[t] = j;
            let u2 = used | 1 << j;
            if self.admissible(pi, u2, t) && self.extend(pi, u2, t + 1) {
                return true;
            }
        }
        false
    }
}

/// Order of the permutation automorphism group: the product of basic orbit
/// lengths along the base `0, 1, …, 23`, each orbit point confirmed by a
/// backtracking search for a full automorphism.
pub fn aut_order(code: &TypeIICode) -> BigInt {
    let search = AutSearch::new(code);
    let mut order = BigInt::one();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for i in 0..N {
        let mut g_i: Vec<Vec<usize>> = gens.iter().filter(|g| (0..i).all(|k| g[k] == k)).cloned().collect();
        let mut orb = vec![false; N];
        orb[i] = true;
        let close = |orb: &mut Vec<bool>, g_i: &[Vec<usize>]| {
            let mut frontier: Vec<usize> = (0..N).filter(|&x| orb[x]).collect();
            while let Some(x) = frontier.pop() {
                for g in g_i {
                    if !orb[g[x]] {
                        orb[g[x]] = true;
                        frontier.push(g[x]);
                    }
                }
            }
        };
        close(&mut orb, &g_i);
        for j in i + 1..N {
            if orb[j] {
                continue;
            }
            let mut pi: Vec<usize> = (0..N).collect();
            pi[i] = j;
            let used = ((1u64 << i) - 1) as u32 | 1 << j;
            if search.admissible(&pi, used, i) && search.extend(&mut pi, used, i + 1) {
                gens.push(pi.clone());
                g_i.push(pi);
                orb[j] = true;
                close(&mut orb, &g_i);
            }
        }
        order *= BigInt::from(orb.iter().filter(|&&b| b).count());
    }
    order
}

/// `Σ 24!/|Aut C|` over the nine codes.
pub fn code_mass(orders: &[BigInt]) -> BigInt {
    orders.iter().map(|a| factorial(24) / a).sum()
}

/// `∏_{i=0}^{10} (2^i + 1)`, the number of doubly-even self-dual codes of
/// length 24 on a fixed coordinate set.
pub fn code_count() -> BigInt {
    (0..=10).map(|i| BigInt::from((1u64 << i) + 1)).product()
}

/// One of the nine codes with its automorphism order and lattice.
#[derive(Clone, Debug)]
pub struct CodeData {
    pub code: TypeIICode,
    pub aut_order: BigInt,
    pub roots: RootSystemType,
}

pub fn code_data() -> Vec<CodeData> {
    all_codes()
        .into_par_iter()
        .map(|code| CodeData {
            aut_order: aut_order(&code),
            roots: code.lattice_roots(),
            code,
        })
        .collect()
}

/// `n(D24⁺(2) ⊆ Λ_μ)` for all μ in registry order:
/// `Σ_{C ↦ Λ_μ} |Aut Λ_μ| / (2^12·|Aut C|) + 2·N(A1^24, R_μ)`.
pub fn d24_row(reg: &Registry, counter: &Counter, codes: &[CodeData]) -> Vec<BigRational> {
    let a1_24 = RootSystemType::from_components([(IrreducibleType::a(1), 24)]);
    reg.records()
        .iter()
        .map(|r| {
            let f8: BigRational = codes
                .iter()
                .filter(|c| c.roots == r.root_system)
                .map(|c| BigRational::new(r.aut_order.clone(), BigInt::from(4096) * &c.aut_order))
                .sum();
            f8 + BigRational::from_integer(counter.count(&a1_24, &r.root_system) * 2)
        })
        .collect()
}

/// `n(Λ_μ(2) ⊆ D24⁺) = row_μ · |Aut D24⁺| / |Aut Λ_μ|`; these sum to the
/// number of maximal isotropic subspaces of a 24-dimensional space.
pub fn d24_transposed(reg: &Registry, row: &[BigRational]) -> Vec<BigRational> {
    let d24 = &reg.record(24).aut_order;
    reg.records()
        .iter()
        .zip(row)
        .map(|(r, x)| x * BigRational::new(d24.clone(), r.aut_order.clone()))
        .collect()
}

pub fn is_integral(xs: &[BigRational]) -> bool {
    xs.iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_hamming() {
        let e8 = component('e', 8);
        let d = dual_basis(&e8);
        assert_eq!(d.len(), 20);
        assert!(d.iter().all(|v| e8.iter().all(|w| (v & w).count_ones() % 2 == 0)));
    }

    #[test]
    fn small_codes() {
        let c = build("d24").unwrap();
        assert!(c.is_doubly_even_self_dual());
        assert_eq!(c.lattice_roots(), "D12^2".parse().unwrap());
        let g = build("g24").unwrap();
        assert!(g.tetrads().is_empty());
        assert!(g.lattice_roots().is_empty());
    }
}
