//! Counting root sublattices: `N(X, R)` is the number of root subsystems of
//! type `X` inside the root system `R`.
//!
//! Classical ambients use closed-form block counting, exceptional ambients
//! use backtracking over simple-root tuples, and reducible ambients combine
//! the per-component counts by distributing the components of `X`.

use crate::exactq::{factorial, BigInt};
use crate::rootsys::{self, Family, IrreducibleType, RootList, RootSystemType};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("brute force is limited to ambient rank <= {max}, got {got}")]
    RankBound { max: u32, got: u32 },
    #[error("cache file {path}: {msg}")]
    Cache { path: String, msg: String },
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A count together with what was counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemCount {
    pub x: RootSystemType,
    pub ambient: RootSystemType,
    pub value: BigInt,
}

fn multinomial_blocks(slots: u64, blocks: &[(u64, u64, u64)]) -> BigInt {
    // blocks: (size, weight, count)
    let used: u64 = blocks.iter().map(|(s, _, c)| s * c).sum();
    if used > slots {
        return BigInt::zero();
    }
    let mut num = factorial(slots);
    let mut den = factorial(slots - used);
    for &(size, weight, count) in blocks {
        num *= num_traits::pow(BigInt::from(weight), count as usize);
        den *= num_traits::pow(factorial(size), count as usize) * factorial(count);
    }
    num / den
}

/// `N(X, A_m)`: every component must be of type A; an `A_k` subsystem is the
/// set of roots `e_i - e_j` on a `(k+1)`-subset of the `m+1` coordinates.
pub fn count_in_a(x: &RootSystemType, m: u32) -> BigInt {
    let mut blocks = Vec::new();
    for (t, c) in x.components() {
        if t.family != Family::A {
            return BigInt::zero();
        }
        blocks.push((t.rank as u64 + 1, 1, c as u64));
    }
    multinomial_blocks(m as u64 + 1, &blocks)
}

/// `N(X, D_m)` by placing coordinate blocks: an `A_k` chain occupies `k+1`
/// coordinates with `2^k` sign patterns, a `D_k` block occupies `k`
/// coordinates, two orthogonal `A1`s may share a 2-support (a `D2` block)
/// and an `A3` may sit on 3 coordinates as a `D3` block.
pub fn count_in_d(x: &RootSystemType, m: u32) -> BigInt {
    if x.components().any(|(t, _)| t.family == Family::E) {
        return BigInt::zero();
    }
    let n1 = x.multiplicity(IrreducibleType::a(1)) as u64;
    let n3 = x.multiplicity(IrreducibleType::a(3)) as u64;
    let mut fixed = Vec::new();
    for (t, c) in x.components() {
        let c = c as u64;
        match (t.family, t.rank) {
            (Family::A, 1) | (Family::A, 3) => {}
            (Family::A, k) => fixed.push((k as u64 + 1, 1u64 << k, c)),
            (Family::D, k) => fixed.push((k as u64, 1, c)),
            (Family::E, _) => unreachable!(),
        }
    }
    let mut total = BigInt::zero();
    for p in 0..=n1 / 2 {
        for q in 0..=n3 {
            let mut blocks = fixed.clone();
            blocks.push((2, 2, n1 - 2 * p));
            blocks.push((2, 1, p));
            blocks.push((4, 8, n3 - q));
            blocks.push((3, 1, q));
            total += multinomial_blocks(m as u64, &blocks);
        }
    }
    total
}

/// `N(X, R)` for irreducible `X` and classical `R`.
pub fn count_irreducible_in_classical(x: IrreducibleType, r: IrreducibleType) -> BigInt {
    let xt = RootSystemType::single(x);
    match r.family {
        Family::A => count_in_a(&xt, r.rank),
        Family::D => count_in_d(&xt, r.rank),
        Family::E => panic!("{r} is not classical"),
    }
}

struct TupleSearch<'a> {
    n: usize,
    gram: Vec<i8>,
    neg: Vec<Vec<u16>>,
    orth: Vec<Vec<u16>>,
    target: Vec<Vec<i8>>,
    /// For each slot: an earlier slot joined to it by an edge, if any.
    anchor: Vec<Option<usize>>,
    /// For each slot that starts a component repeating the previous one: the
    /// first slot of that previous component.
    after: Vec<Option<usize>>,
    all: Vec<u16>,
    _roots: &'a RootList,
}

impl<'a> TupleSearch<'a> {
    fn new(x: &RootSystemType, roots: &'a RootList, ordered: bool, skip_first_order: bool) -> Self {
        let n = roots.len();
        let gram = roots.gram_table();
        let mut neg = vec![Vec::new(); n];
        let mut orth = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                match gram[i * n + j] {
                    -1 => neg[i].push(j as u16),
                    0 => orth[i].push(j as u16),
                    _ => {}
                }
            }
        }
        let target = x
            .cartan()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i8).collect())
            .collect::<Vec<Vec<i8>>>();
        let slots = target.len();
        let mut anchor = vec![None; slots];
        let mut after = vec![None; slots];
        let flat = x.flat();
        let mut off = 0;
        let mut prev: Option<(IrreducibleType, usize)> = None;
        for (ci, t) in flat.iter().enumerate() {
            let r = t.rank as usize;
            for s in off..off + r {
                anchor[s] = (off..s).find(|&u| target[s][u] == -1);
            }
            if ordered {
                if let Some((pt, pstart)) = prev {
                    if pt == *t && !(skip_first_order && ci == 1) {
                        after[off] = Some(pstart);
                    }
                }
            }
            prev = Some((*t, off));
            off += r;
        }
        TupleSearch {
            n,
            gram,
            neg,
            orth,
            target,
            anchor,
            after,
            all: (0..n as u16).collect(),
            _roots: roots,
        }
    }

    fn candidates(&self, s: usize, assign: &[u16]) -> &[u16] {
        if let Some(a) = self.anchor[s] {
            &self.neg[assign[a] as usize]
        } else if s > 0 {
            &self.orth[assign[0] as usize]
        } else {
            &self.all
        }
    }

    fn fits(&self, s: usize, c: u16, assign: &[u16]) -> bool {
        if let Some(p) = self.after[s] {
            if c <= assign[p] {
                return false;
            }
        }
        let row = &self.gram[c as usize * self.n..(c as usize + 1) * self.n];
        (0..s).all(|t| row[assign[t] as usize] == self.target[s][t])
    }

    fn count_from(&self, s: usize, assign: &mut Vec<u16>) -> u64 {
        if s == self.target.len() {
            return 1;
        }
        let mut total = 0;
        for &c in self.candidates(s, assign) {
            if self.fits(s, c, assign) {
                assign.push(c);
                total += self.count_from(s + 1, assign);
                assign.pop();
            }
        }
        total
    }
}

/// Number of ordered simple-root tuples in `roots` realising the Cartan
/// matrix of `x`, with the first root fixed to index 0 and repeated
/// components ordered (except the group containing the first component,
/// which is ordered only among its remaining members).
fn reduced_tuple_count(x: &RootSystemType, roots: &RootList) -> u64 {
    let search = TupleSearch::new(x, roots, true, true);
    let slots = search.target.len();
    if slots == 0 {
        return 1;
    }
    if slots == 1 {
        return 1;
    }
    let start = vec![0u16];
    // The stabiliser of a root acts transitively on the roots at inner
    // product -1 and on the roots orthogonal to it, so the second root can
    // be fixed as well when no ordering constraint refers to it.
    let second_free = search.after[1].is_none() && search.after.iter().all(|a| *a != Some(1));
    let cands = search.candidates(1, &start);
    if second_free && !cands.is_empty() {
        let mut a = vec![0u16, cands[0]];
        return cands.len() as u64 * search.count_from(2, &mut a);
    }
    cands
        .par_iter()
        .filter(|&&c| search.fits(1, c, &start))
        .map(|&c| {
            let mut a = vec![0u16, c];
            search.count_from(2, &mut a)
        })
        .sum()
}

/// `N(X, E_n)` by backtracking, without caching.
///
/// The Weyl group is transitive on roots, so the first root is fixed and
/// the tuple count multiplied by the number of roots. Repeated components
/// are taken in increasing order of their first root, which divides by the
/// matching factorials.
pub fn count_in_exceptional_uncached(x: &RootSystemType, e: IrreducibleType) -> BigInt {
    assert_eq!(e.family, Family::E);
    if x.is_empty() {
        return BigInt::one();
    }
    if x.rank() > e.rank || x.root_count() > e.root_count() {
        return BigInt::zero();
    }
    let roots = rootsys::roots(e).expect("valid exceptional type");
    let t = reduced_tuple_count(x, &roots);
    let flat = x.flat();
    let first = flat[0];
    let mut sym = BigInt::one();
    for (ty, m) in x.components() {
        let m = if ty == first { m - 1 } else { m };
        sym *= factorial(m as u64);
    }
    let full = BigInt::from(t) * roots.len() * sym;
    let aut = x.aut_order();
    debug_assert!((&full % &aut).is_zero());
    full / aut
}

/// Naive oracle: every ordered tuple of roots of `r` with the Gram matrix of
/// `x`, divided by `|Aut(x)|`. Limited to ambients of rank at most 8.
pub fn brute_force_count(x: &RootSystemType, r: &RootSystemType) -> Result<BigInt, CountError> {
    if r.rank() > 8 {
        return Err(CountError::RankBound { max: 8, got: r.rank() });
    }
    if x.is_empty() {
        return Ok(BigInt::one());
    }
    if r.is_empty() {
        return Ok(BigInt::zero());
    }
    let roots = rootsys::roots_of(r).expect("valid ambient");
    let target = x.cartan();
    let gram = roots.gram_table();
    let n = roots.len();
    fn rec(s: usize, assign: &mut Vec<usize>, n: usize, gram: &[i8], target: &[Vec<i64>]) -> u64 {
        if s == target.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if (0..s).all(|t| gram[c * n + assign[t]] as i64 == target[s][t]) {
                assign.push(c);
                total += rec(s + 1, assign, n, gram, target);
                assign.pop();
            }
        }
        total
    }
    let t = rec(0, &mut Vec::new(), n, &gram, &target);
    let aut = x.aut_order();
    let t = BigInt::from(t);
    debug_assert!((&t % &aut).is_zero());
    Ok(t / aut)
}

/// Counting engine with a persistent cache for exceptional ambients.
pub struct Counter {
    cache: Mutex<BTreeMap<String, BigInt>>,
    path: Option<PathBuf>,
}

impl Default for Counter {
    fn default() -> Self {
        Self::new()
    }
}

fn cache_key(x: &RootSystemType, e: IrreducibleType) -> String {
    format!("{x} @ {e}")
}

fn parse_cache_line(line: &str) -> Option<(RootSystemType, IrreducibleType, BigInt)> {
    let (lhs, value) = line.split_once('=')?;
    let (x, e) = lhs.split_once('@')?;
    let x: RootSystemType = x.trim().parse().ok()?;
    let et: RootSystemType = e.trim().parse().ok()?;
    let flat = et.flat();
    if flat.len() != 1 || flat[0].family != Family::E {
        return None;
    }
    let v: BigInt = value.trim().parse().ok()?;
    Some((x, flat[0], v))
}

impl Counter {
    pub fn new() -> Self {
        Counter {
            cache: Mutex::new(BTreeMap::new()),
            path: None,
        }
    }

    /// Opens (or starts) a cache file. Existing entries are parsed strictly
    /// and one entry chosen at random is recomputed; a mismatch is reported
    /// as corruption.
    pub fn with_cache_file(path: impl AsRef<Path>) -> Result<Self, CountError> {
        let path = path.as_ref().to_path_buf();
        let pstr = path.display().to_string();
        let mut map = BTreeMap::new();
        let mut entries = Vec::new();
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|source| CountError::Io {
                path: pstr.clone(),
                source,
            })?;
            for (ln, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (x, e, v) = parse_cache_line(line).ok_or_else(|| CountError::Cache {
                    path: pstr.clone(),
                    msg: format!("malformed line {}", ln + 1),
                })?;
                map.insert(cache_key(&x, e), v.clone());
                entries.push((x, e, v));
            }
        }
        if !entries.is_empty() {
            let i = rand::thread_rng().gen_range(0..entries.len());
            let (x, e, v) = &entries[i];
            let fresh = count_in_exceptional_uncached(x, *e);
            if &fresh != v {
                return Err(CountError::Cache {
                    path: pstr,
                    msg: format!("entry `{}` holds {v} but recomputes to {fresh}", cache_key(x, *e)),
                });
            }
        }
        Ok(Counter {
            cache: Mutex::new(map),
            path: Some(path),
        })
    }

    /// Writes the cache back to its file, if one was configured.
    pub fn save(&self) -> Result<(), CountError> {
        let Some(path) = &self.path else { return Ok(()) };
        let map = self.cache.lock().expect("cache poisoned");
        let mut out = String::from("# sublattice counts in exceptional root systems: X @ E_n = N(X, E_n)\n");
        for (k, v) in map.iter() {
            out.push_str(&format!("{k} = {v}\n"));
        }
        std::fs::write(path, out).map_err(|source| CountError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.lock().expect("cache poisoned").len()
    }

    /// `N(X, E_n)`, memoised.
    pub fn count_in_exceptional(&self, x: &RootSystemType, e: IrreducibleType) -> BigInt {
        if x.is_empty() {
            return BigInt::one();
        }
        if x.rank() > e.rank {
            return BigInt::zero();
        }
        let key = cache_key(x, e);
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = count_in_exceptional_uncached(x, e);
        self.cache.lock().expect("cache poisoned").insert(key, v.clone());
        v
    }

    /// `N(X, R)` for an irreducible ambient.
    pub fn count_in_irreducible(&self, x: &RootSystemType, r: IrreducibleType) -> BigInt {
        if x.is_empty() {
            return BigInt::one();
        }
        if x.rank() > r.rank {
            return BigInt::zero();
        }
        match r.family {
            Family::A => count_in_a(x, r.rank),
            Family::D => count_in_d(x, r.rank),
            Family::E => self.count_in_exceptional(x, r),
        }
    }

    /// `N(X, R)`: the components of `X` are distributed over the components
    /// of `R`; the state is the multiset of components still to place.
    pub fn count(&self, x: &RootSystemType, r: &RootSystemType) -> BigInt {
        if x.is_empty() {
            return BigInt::one();
        }
        if x.rank() > r.rank() {
            return BigInt::zero();
        }
        let mut state: HashMap<RootSystemType, BigInt> = HashMap::new();
        state.insert(x.clone(), BigInt::one());
        let ambient = r.flat();
        let mut local: HashMap<(RootSystemType, IrreducibleType), BigInt> = HashMap::new();
        let mut remaining_rank: u32 = r.rank();
        for a in ambient {
            remaining_rank -= a.rank;
            let mut next: HashMap<RootSystemType, BigInt> = HashMap::new();
            for (rem, val) in state {
                for y in rem.sub_multisets() {
                    if y.rank() > a.rank {
                        continue;
                    }
                    let rest = rem.minus(&y).expect("sub-multiset");
                    if rest.rank() > remaining_rank {
                        continue;
                    }
                    let n = local
                        .entry((y.clone(), a))
                        .or_insert_with(|| self.count_in_irreducible(&y, a))
                        .clone();
                    if n.is_zero() {
                        continue;
                    }
                    *next.entry(rest).or_insert_with(BigInt::zero) += &val * n;
                }
            }
            state = next;
            if state.is_empty() {
                return BigInt::zero();
            }
        }
        state.remove(&RootSystemType::empty()).unwrap_or_else(BigInt::zero)
    }

    /// Embeddings of the root lattice of `X`: `N(X, R) · |Aut(X)|`.
    pub fn embeddings(&self, x: &RootSystemType, r: &RootSystemType) -> BigInt {
        self.count(x, r) * x.aut_order()
    }

    pub fn subsystem_count(&self, x: &RootSystemType, r: &RootSystemType) -> SubsystemCount {
        SubsystemCount {
            x: x.clone(),
            ambient: r.clone(),
            value: self.count(x, r),
        }
    }
}

/// A process-wide engine without a cache file.
pub fn global() -> &'static Counter {
    static G: OnceLock<Counter> = OnceLock::new();
    G.get_or_init(Counter::new)
}

/// `N(X, R)` using the process-wide engine.
pub fn count(x: &RootSystemType, r: &RootSystemType) -> BigInt {
    global().count(x, r)
}

/// `N(X, R) · |Aut(X)|` using the process-wide engine.
pub fn embeddings(x: &RootSystemType, r: &RootSystemType) -> BigInt {
    global().embeddings(x, r)
}

/// `N(X, E_n)` using the process-wide engine.
pub fn count_in_exceptional(x: &RootSystemType, e: IrreducibleType) -> BigInt {
    global().count_in_exceptional(x, e)
}

/// All root-system types of total rank at most `max_rank`, built from
/// irreducibles of rank at most `max_rank`, in canonical order.
pub fn all_types_up_to_rank(max_rank: u32) -> Vec<RootSystemType> {
    let mut irr: Vec<IrreducibleType> = Vec::new();
    for n in 1..=max_rank {
        irr.push(IrreducibleType::a(n));
        if n >= 4 {
            irr.push(IrreducibleType::d(n));
        }
        if (6..=8).contains(&n) {
            irr.push(IrreducibleType::e(n));
        }
    }
    irr.sort();
    let mut out = Vec::new();
    fn rec(irr: &[IrreducibleType], i: usize, budget: u32, cur: &mut RootSystemType, out: &mut Vec<RootSystemType>) {
        if i == irr.len() {
            out.push(cur.clone());
            return;
        }
        let t = irr[i];
        let mut k = 0;
        loop {
            if k * t.rank > budget {
                break;
            }
            let mut next = cur.clone();
            next.add(t, k);
            rec(irr, i + 1, budget - k * t.rank, &mut next, out);
            k += 1;
        }
    }
    rec(&irr, 0, max_rank, &mut RootSystemType::empty(), &mut out);
    out.sort();
    out
}

/// Converts a count that is known to be small.
pub fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    #[test]
    fn classical_identities() {
        assert_eq!(count(&t("A1"), &t("D24")), BigInt::from(552));
        assert_eq!(count(&t("A2"), &t("D24")), BigInt::from(8096));
        assert_eq!(count(&t("A3"), &t("D24")), BigInt::from(87032));
        assert_eq!(count(&t("D12"), &t("D24")), BigInt::from(2704156));
        assert_eq!(count(&t("A11"), &t("D24")), BigInt::from(5538111488u64));
        assert_eq!(count(&t("A1^4"), &t("D4")), BigInt::from(3));
        assert_eq!(count(&t("D4"), &t("A24")), BigInt::zero());
        assert_eq!(count(&t("A2"), &t("A2")), BigInt::one());
    }

    #[test]
    fn distribution_over_components() {
        assert_eq!(count(&t("A1^2"), &t("A1^24")), BigInt::from(276));
        assert_eq!(count(&RootSystemType::empty(), &t("A7^2 D5^2")), BigInt::one());
    }

    #[test]
    fn small_exceptional() {
        assert_eq!(count(&t("E8"), &t("E7")), BigInt::zero());
        assert_eq!(count(&t("E6"), &t("E6")), BigInt::one());
        assert_eq!(count(&t("A1"), &t("E7")), BigInt::from(63));
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_count(&t("A1^2"), &t("D2")).unwrap(), BigInt::one());
        assert_eq!(brute_force_count(&t("A3"), &t("D4")).unwrap(), BigInt::from(12));
        assert_eq!(brute_force_count(&t("A2"), &t("A3")).unwrap(), BigInt::from(4));
        assert!(brute_force_count(&t("A1"), &t("D9")).is_err());
    }
}
