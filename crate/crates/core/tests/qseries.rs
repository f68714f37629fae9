use niemeier_cusp::exactq::BigInt;
use niemeier_cusp::qseries::{eta8_12_theta, euler_product_8, theta, QSeries};
use num_traits::Zero;
use proptest::prelude::*;

fn printed() -> Vec<(usize, BigInt)> {
    niemeier_cusp::reference::eta_theta()
}

#[test]
fn printed_coefficients_match() {
    let s = eta8_12_theta(99);
    let p = printed();
    assert_eq!(p.len(), 36);
    for (e, c) in &p {
        assert_eq!(&s.coeff(*e), c, "q^{e}");
    }
    for n in 0..=99 {
        if !p.iter().any(|(e, _)| *e == n) {
            assert!(s.coeff(n).is_zero(), "q^{n} should vanish");
        }
    }
}

#[test]
fn support_residues() {
    let s = eta8_12_theta(2000);
    assert!(s.support().iter().all(|n| matches!(n % 8, 0 | 4 | 5)));
}

#[test]
fn truncation_is_consistent() {
    assert_eq!(eta8_12_theta(300).truncate(96), eta8_12_theta(96));
}

proptest! {
    #[test]
    fn multiplication_is_associative_and_commutative(n in 10usize..60, a in 1u32..4, b in 1u32..4) {
        let x = euler_product_8(n).pow(a);
        let y = theta(n).pow(b);
        let z = QSeries::monomial(n, 3, BigInt::from(-5));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
    }
}
