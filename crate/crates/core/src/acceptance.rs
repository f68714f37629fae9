//! The fourteen acceptance criteria as runnable checks. Each check returns a
//! verdict with a one-line detail; the CLI `selftest` command and the
//! `acceptance` test target both print them.

use crate::codes;
use crate::cuspform::{self, CuspCoefficients, CuspForm};
use crate::exactq::{factor_string, factor_string_rational, from_factors, BigInt, BigRational};
use crate::gf2quad::{self, OrthogonalMapF2, QuadraticSpaceF2};
use crate::golay;
use crate::hecke;
use crate::niemeier::{self, build_matrix, CountMatrix, Registry, D12_ROW};
use crate::qseries;
use crate::reference;
use crate::rootsys::{IrreducibleType, RootSystemType};
use crate::subcount::{all_types_up_to_rank, brute_force_count, Counter};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Criteria that depend on data the bundled registry does not contain.
pub const DATA_DEPENDENT: [u32; 2] = [10, 11];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

/// Shared state: registry, counting engine, matrix and coefficients.
pub struct Context {
    pub registry: Registry,
    pub counter: Counter,
    pub matrix: CountMatrix,
    pub coeffs: Option<CuspCoefficients>,
}

impl Context {
    pub fn new(registry: Registry, counter: Counter) -> Self {
        let matrix = build_matrix(&registry, &counter);
        let coeffs = cuspform::solve(&matrix).ok();
        Context {
            registry,
            counter,
            matrix,
            coeffs,
        }
    }

    fn form(&self) -> Option<CuspForm<'_>> {
        self.coeffs
            .clone()
            .map(|c| CuspForm::new(c, &self.registry, &self.counter))
    }
}

fn verdict(id: u32, name: &'static str, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        id,
        name,
        pass,
        detail: detail.into(),
    }
}

pub fn matrix_reproduction(ctx: &Context) -> Verdict {
    let reference = reference::count_matrix();
    let mut mismatches = Vec::new();
    for (i, (row, entries)) in reference.iter().enumerate() {
        if ctx.matrix.rows.get(i) != Some(row) {
            mismatches.push(format!("row {i} is {row}"));
            continue;
        }
        for (j, v) in entries.iter().enumerate() {
            if &ctx.matrix.entries[i][j] != v {
                mismatches.push(format!(
                    "N({row}, {}) = {} not {v}",
                    ctx.matrix.columns[j], ctx.matrix.entries[i][j]
                ));
            }
        }
    }
    let anchors = [(11, 23, 5538111488u64), (3, 23, 87032), (12, 23, 10626), (12, 22, 9450)];
    for (i, j, v) in anchors {
        if ctx.matrix.entries[i][j] != BigInt::from(v) {
            mismatches.push(format!("anchor ({i},{j}) != {v}"));
        }
    }
    let cells: usize = reference.iter().map(|r| r.1.len()).sum();
    verdict(
        1,
        "matrix reproduction",
        mismatches.is_empty() && cells == 576,
        if mismatches.is_empty() {
            format!("{cells} entries match")
        } else {
            mismatches.join("; ")
        },
    )
}

pub fn rank(ctx: &Context) -> Verdict {
    let r = ctx.matrix.rank();
    let k = ctx.matrix.without_d12().nullspace().len();
    verdict(
        2,
        "rank",
        r == 24 && k == 1,
        format!("rank {r}, kernel of the 23 small rows has dimension {k}"),
    )
}

pub fn coefficients(ctx: &Context) -> Verdict {
    match &ctx.coeffs {
        None => verdict(3, "coefficients", false, "solver failed"),
        Some(c) => {
            let ok = c.values == reference::coefficients();
            verdict(
                3,
                "coefficients",
                ok,
                format!("c(Leech) = {}, c(D24) = {}", c.values[0], c.values[23]),
            )
        }
    }
}

pub fn det_table(ctx: &Context) -> Verdict {
    let Some(form) = ctx.form() else {
        return verdict(4, "det table", false, "no coefficients");
    };
    let table = form.det_table(96);
    let reference = reference::det_table();
    let bad: Vec<String> = reference
        .iter()
        .filter(|(d, c, l)| {
            !table
                .iter()
                .any(|e| &e.lattice == l && &e.det == d && e.value == BigRational::from_integer(c.clone()))
        })
        .map(|(d, c, l)| format!("({d}, {c}, {l})"))
        .collect();
    let extra = table.iter().filter(|e| !e.value.is_zero()).count() - (reference.len() - bad.len());
    verdict(
        4,
        "det table",
        bad.is_empty() && extra == 0,
        if bad.is_empty() {
            format!(
                "{} printed rows match; {} computed types, {extra} unprinted nonzero",
                reference.len(),
                table.len()
            )
        } else {
            format!("mismatched {}", bad.join(" "))
        },
    )
}

pub fn vanishing(ctx: &Context) -> Verdict {
    let Some(form) = ctx.form() else {
        return verdict(5, "vanishing", false, "no coefficients");
    };
    let residuals = cuspform::row_residuals(&form.coeffs, &ctx.matrix);
    let rows_ok = residuals
        .iter()
        .enumerate()
        .all(|(i, r)| if i == D12_ROW { r.is_one() } else { r.is_zero() });
    let mut pool: Vec<RootSystemType> = all_types_up_to_rank(11)
        .into_iter()
        .filter(|t| !t.is_empty() && !ctx.matrix.rows.contains(t))
        .collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(11));
    pool.truncate(50);
    let nonzero: Vec<String> = pool
        .par_iter()
        .filter(|t| !form.coefficient(t).map(|v| v.is_zero()).unwrap_or(false))
        .map(|t| t.to_string())
        .collect();
    verdict(
        5,
        "vanishing",
        rows_ok && nonzero.is_empty() && pool.len() == 50,
        format!(
            "23 row types vanish: {rows_ok}; {} sampled rank ≤ 11 types, nonzero: {:?}",
            pool.len(),
            nonzero
        ),
    )
}

pub fn witt_igusa(ctx: &Context) -> Verdict {
    let small: Vec<RootSystemType> = all_types_up_to_rank(3).into_iter().filter(|t| !t.is_empty()).collect();
    let failures: Vec<String> = small
        .iter()
        .filter(|t| {
            !cuspform::witt_igusa_check(t, &ctx.counter, false)
                .map(|w| w.equal)
                .unwrap_or(false)
        })
        .map(|t| t.to_string())
        .collect();
    let d4 = RootSystemType::single(IrreducibleType::d(4));
    let w = cuspform::witt_igusa_check(&d4, &ctx.counter, true).expect("unchecked");
    let e8e8: RootSystemType = "E8^2".parse().expect("type");
    let d16: RootSystemType = "D16".parse().expect("type");
    verdict(
        6,
        "Witt-Igusa",
        failures.is_empty() && !w.equal,
        format!(
            "{} types of rank ≤ 3 agree; D4: {} vs {} sublattices",
            small.len() - failures.len(),
            ctx.counter.count(&d4, &e8e8),
            ctx.counter.count(&d4, &d16)
        ),
    )
}

pub fn q_series() -> Verdict {
    let s = qseries::eta8_12_theta(qseries::DEFAULT_TERMS);
    let printed = reference::eta_theta();
    let bad: Vec<usize> = printed
        .iter()
        .filter(|(e, c)| &s.coeff(*e) != c)
        .map(|(e, _)| *e)
        .collect();
    let support_ok = s.support().iter().all(|n| matches!(n % 8, 0 | 4 | 5));
    verdict(
        7,
        "q-series",
        bad.is_empty() && support_ok,
        format!(
            "{} printed coefficients, mismatches at {bad:?}; support in 0,4,5 mod 8: {support_ok}",
            printed.len()
        ),
    )
}

pub fn golay_route() -> Verdict {
    let classes = match golay::classify_subsets() {
        Ok(c) => c,
        Err(e) => return verdict(8, "Golay route", false, e.to_string()),
    };
    let sizes_ok = classes.len() == 5 && classes.iter().all(|c| c.size == c.label.expected_size());
    let a = golay::a_d12_frames().expect("classified");
    let sizes: Vec<String> = classes.iter().map(|c| format!("{} {}", c.label, c.size)).collect();
    verdict(
        8,
        "Golay route",
        sizes_ok && a == golay::a_d12_expected(),
        format!("{}; a(D12) = {}", sizes.join(", "), factor_string(&a)),
    )
}

pub fn two_proofs(ctx: &Context) -> Verdict {
    let Some(form) = ctx.form() else {
        return verdict(9, "two-proof consistency", false, "no coefficients");
    };
    let d12 = RootSystemType::single(IrreducibleType::d(12));
    let c = form.coefficient(&d12).expect("rank 12");
    let a = golay::a_d12_frames().expect("classified");
    let rhs = BigRational::from_integer(golay::d12_raw_value()) * &c;
    verdict(
        9,
        "two-proof consistency",
        c.is_one() && BigRational::from_integer(a) == rhs,
        format!(
            "coefficient(D12) = {c}; frames value equals |Aut Leech|·2^6·3^5·5^2·7: {}",
            c.is_one()
        ),
    )
}

pub fn hecke_eigenvalue(ctx: &Context) -> Verdict {
    let Some(c) = &ctx.coeffs else {
        return verdict(10, "Hecke eigenvalue", false, "no coefficients");
    };
    let expected = BigRational::from_integer(hecke::expected_lambda_over_beta());
    let d24 = hecke::lambda2_from_d24_row(&ctx.registry, &ctx.counter, c, &codes::code_data());
    let d24_note = match &d24 {
        Ok(l) => format!(
            "D24 row gives λ/β = {} and Satake product {:.4e}",
            factor_string_rational(&l.over_beta),
            crate::exactq::to_f64(&hecke::satake_product(l))
        ),
        Err(e) => format!("D24 row: {e}"),
    };
    match hecke::lambda2(&ctx.registry, c) {
        Ok(l) => {
            let s = hecke::satake_product(&l);
            let ok = l.over_beta == expected
                && s == hecke::expected_satake_product()
                && hecke::ramanujan_violated(&s)
                && hecke::factor_claims_hold();
            verdict(
                10,
                "Hecke eigenvalue",
                ok,
                format!("λ/β = {}; {d24_note}", factor_string_rational(&l.over_beta)),
            )
        }
        Err(e) => verdict(10, "Hecke eigenvalue", false, format!("{e}; {d24_note}")),
    }
}

pub fn mass_data(ctx: &Context) -> Verdict {
    let d24_ok = ctx.registry.mass(24).ok()
        == Some(BigRational::new(
            BigInt::one(),
            BigInt::from(2u64) * BigInt::from(501397585920u64),
        ));
    let closed_ok = (1..=4usize).all(|k| {
        let v = QuadraticSpaceF2::new(2 * k).expect("space");
        gf2quad::enumerate_maximal_isotropic(&v)
            .map(|a| BigInt::from(a.len()))
            .ok()
            == Some(gf2quad::maximal_isotropic_count_formula(k as u32))
    });
    let sum = ctx.registry.leech_count_sum();
    let sum_ok = sum.as_ref() == Some(&gf2quad::maximal_isotropic_count_formula(12));
    let sum_note = match &sum {
        Some(s) => format!("Σ leechCount = {s}"),
        None => format!(
            "Σ leechCount unavailable, missing for {}",
            ctx.registry.missing_leech_counts().len()
        ),
    };
    verdict(
        11,
        "mass data",
        d24_ok && closed_ok && sum_ok,
        format!("mass(D24) ok: {d24_ok}; closed form m = 2..8 ok: {closed_ok}; {sum_note}"),
    )
}

pub fn gf2_suite() -> Verdict {
    let v4 = QuadraticSpaceF2::new(4).expect("space");
    let group = gf2quad::orthogonal_group_exhaustive(v4);
    let hom = group.iter().all(|g| {
        group
            .iter()
            .all(|h| gf2quad::dickson(&g.compose(h)) == (gf2quad::dickson(g) + gf2quad::dickson(h)) % 2)
    });
    let transvections = (2..=8).step_by(2).all(|m| {
        let v = QuadraticSpaceF2::new(m).expect("space");
        (1..1u32 << m).filter(|&a| v.q(a) == 1).all(|a| {
            OrthogonalMapF2::transvection(v, a)
                .map(|t| gf2quad::dickson(&t) == 1)
                .unwrap_or(false)
        })
    });
    let mut orbits = true;
    let mut vanishing = true;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in (2..=8).step_by(2) {
        let v = QuadraticSpaceF2::new(m).expect("space");
        let f0 = gf2quad::standard_f0(&v);
        let all = gf2quad::enumerate_maximal_isotropic(&v).expect("small");
        let plus = all.iter().filter(|f| gf2quad::orbit_sign(f, &f0, &v) == Ok(1)).count();
        orbits &= 2 * plus == all.len();
        for _ in 0..5 {
            let g = gf2quad::random_orthogonal(v, &mut rng, 40);
            let flip = if gf2quad::dickson(&g) == 0 { 1 } else { -1 };
            orbits &= all.iter().take(20).all(|f| {
                gf2quad::orbit_sign(&f.image(&g), &f0, &v).ok()
                    == gf2quad::orbit_sign(f, &f0, &v).ok().map(|s| s * flip)
            });
        }
        for k in 0..m / 2 {
            let mut subs = gf2quad::enumerate_isotropic(&v, k).expect("small");
            if m == 8 {
                subs.shuffle(&mut rng);
                subs.truncate(60);
            }
            vanishing &= subs
                .iter()
                .all(|fp| gf2quad::sum_epsilon_over_extensions(fp, &f0, &v) == Ok(0));
        }
    }
    verdict(
        12,
        "GF(2) suite",
        hom && transvections && orbits && vanishing,
        format!(
            "Dickson homomorphism on |O(4)| = {}: {hom}; transvections odd: {transvections}; equal orbits: {orbits}; Σε = 0: {vanishing}",
            group.len()
        ),
    )
}

pub fn oracle(ctx: &Context) -> Verdict {
    let xs: Vec<RootSystemType> = all_types_up_to_rank(4).into_iter().filter(|x| !x.is_empty()).collect();
    let ambients: Vec<RootSystemType> = all_types_up_to_rank(8).into_iter().filter(|r| !r.is_empty()).collect();
    let pairs: Vec<(&RootSystemType, &RootSystemType)> =
        ambients.iter().flat_map(|r| xs.iter().map(move |x| (x, r))).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter(|(x, r)| brute_force_count(x, r).ok() != Some(ctx.counter.count(x, r)))
        .map(|(x, r)| format!("{x} in {r}"))
        .collect();
    verdict(
        13,
        "oracle equivalence",
        bad.is_empty(),
        format!("{} pairs, mismatches: {bad:?}", pairs.len()),
    )
}

pub fn denominators(ctx: &Context) -> Verdict {
    let Some(form) = ctx.form() else {
        return verdict(14, "denominator bound", false, "no coefficients");
    };
    let table = form.det_table(96);
    let integral = table.iter().all(|e| e.value.is_integer());
    let bounded = table.iter().all(|e| cuspform::denominator_within_bound(&e.value));
    let signed = cuspform::signed_leech_counts(&form.coeffs);
    let signed_ok = cuspform::all_integral(&signed);
    verdict(
        14,
        "denominator bound",
        integral && bounded && signed_ok,
        format!(
            "{} entries integral: {integral}; within {}: {bounded}; c·|Aut Leech|·2^6·3^5·5^2·7 integral: {signed_ok}",
            table.len(),
            factor_string(&from_factors(&[(2, 7), (3, 5), (5, 2), (7, 1)]))
        ),
    )
}

/// Runs all fourteen checks in order.
pub fn run_all(ctx: &Context) -> Vec<Verdict> {
    vec![
        matrix_reproduction(ctx),
        rank(ctx),
        coefficients(ctx),
        det_table(ctx),
        vanishing(ctx),
        witt_igusa(ctx),
        q_series(),
        golay_route(),
        two_proofs(ctx),
        hecke_eigenvalue(ctx),
        mass_data(ctx),
        gf2_suite(),
        oracle(ctx),
        denominators(ctx),
    ]
}

/// Registry with the bundled data and a fresh counter.
pub fn default_context() -> Context {
    Context::new(niemeier::Registry::builtin(), Counter::new())
}
