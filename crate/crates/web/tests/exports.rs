use niemeier_web::{coefficient, q_expansion, subsystem_count, MAX_TERMS};

#[test]
fn coefficients() {
    assert_eq!(coefficient("D12").unwrap(), "1");
    assert_eq!(coefficient("A4 E8").unwrap(), "-1");
    assert_eq!(coefficient("A1A11").unwrap(), "108");
    assert!(coefficient("Q7").is_err());
}

#[test]
fn counts() {
    assert_eq!(subsystem_count("D4", "E8").unwrap(), "3150");
    assert_eq!(subsystem_count("A1", "A2").unwrap(), "3");
    assert!(subsystem_count("A1", "B3").is_err());
}

#[test]
fn series() {
    assert!(q_expansion(13)
        .unwrap()
        .starts_with("q^4 + 2q^5 + 2q^8 - 12q^12 - 22q^13"));
    assert!(q_expansion(MAX_TERMS + 1).is_err());
}
