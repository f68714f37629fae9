use niemeier_cusp::codes;
use niemeier_cusp::cuspform;
use niemeier_cusp::exactq::{factor_string_rational, BigInt, BigRational};
use niemeier_cusp::hecke::{self, HeckeError};
use niemeier_cusp::niemeier::{build_matrix, Registry};
use niemeier_cusp::subcount::Counter;

#[test]
fn codes_and_mass_formula() {
    let data = codes::code_data();
    let expect = [
        ("d4^6", "A1^24", 8847360u64),
        ("d6^4", "A3^8", 7962624),
        ("d8^3", "D4^6", 42467328),
        ("d10e7^2", "A7^2D5^2", 108380160),
        ("d12^2", "D6^4", 1061683200),
        ("d24", "D12^2", 980995276800),
        ("e8^3", "D8^3", 14566293504),
        ("d16e8", "D8^3", 6936330240),
        ("g24", "-", 244823040),
    ];
    for ((name, roots, aut), d) in expect.iter().zip(&data) {
        assert_eq!(d.code.name, *name);
        assert!(d.code.is_doubly_even_self_dual());
        assert_eq!(d.roots, roots.parse().unwrap(), "{name}");
        assert_eq!(d.aut_order, BigInt::from(*aut), "{name}");
    }
    let orders: Vec<BigInt> = data.iter().map(|d| d.aut_order.clone()).collect();
    assert_eq!(codes::code_mass(&orders), codes::code_count());
}

#[test]
fn d24_row_is_consistent() {
    let reg = Registry::builtin();
    let counter = Counter::new();
    let row = codes::d24_row(&reg, &counter, &codes::code_data());
    assert!(codes::is_integral(&row));
    assert_eq!(row[0], BigRational::from_integer(BigInt::from(8292375)));
    let total: BigRational = codes::d24_transposed(&reg, &row).into_iter().sum();
    assert_eq!(
        total,
        BigRational::from_integer((0..12).map(|i| BigInt::from((1u64 << i) + 1)).product())
    );
}

#[test]
fn eigenvalues() {
    let reg = Registry::builtin();
    let counter = Counter::new();
    let c = cuspform::solve(&build_matrix(&reg, &counter)).unwrap();
    assert!(matches!(hecke::lambda2(&reg, &c), Err(HeckeError::Data(_))));
    let lam = hecke::lambda2_from_d24_row(&reg, &counter, &c, &codes::code_data()).unwrap();
    assert_eq!(factor_string_rational(&lam.over_beta), "2^13·3^10·5^4·41·167");
    let s = hecke::satake_product(&lam);
    assert!(hecke::ramanujan_violated(&s));
}
