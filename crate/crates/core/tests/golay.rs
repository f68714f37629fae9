use niemeier_cusp::exactq::{binomial, BigInt};
use niemeier_cusp::golay::{self, ClassLabel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn five_classes_with_expected_sizes() {
    let classes = golay::classify_subsets().unwrap();
    assert_eq!(classes.len(), 5);
    for c in &classes {
        assert_eq!(c.size, c.label.expected_size(), "{}", c.label);
    }
    let total: u64 = classes.iter().map(|c| c.size).sum();
    assert_eq!(BigInt::from(total), binomial(24, 12));
    let umbral = classes.iter().find(|c| c.label == ClassLabel::Umbral).unwrap();
    assert!(umbral.signature.codeword);
}

#[test]
fn golay_free_classes() {
    let (t, p) = golay::golay_free_count().unwrap();
    assert_eq!((t.clone(), p.clone()), (BigInt::from(1020096), BigInt::from(370944)));
    assert_eq!(t + p, BigInt::from(1391040));
    assert_eq!(golay::golay_free_count_direct(), (1020096, 370944));
}

#[test]
fn a_d12_by_frames() {
    let a = golay::a_d12_frames().unwrap();
    assert_eq!(a, golay::a_d12_expected());
    assert_eq!(a, golay::d12_raw_value());
    let mixed = golay::a_d12_frames_signed(1, -1).unwrap();
    assert_eq!(mixed * 15, a.clone() * 7);
    assert!(golay::nonzero_for_all_signs().unwrap());
    assert_eq!(golay::d12_sublattices_total(), binomial(24, 12) * BigInt::from(8292375));
}

#[test]
fn steiner_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    assert!(golay::steiner_check(&mut rng, 10_000));
}
