use niemeier_cusp::cuspform::{self, CuspForm};
use niemeier_cusp::exactq::{BigInt, BigRational};
use niemeier_cusp::niemeier::{build_matrix, row_types, Registry, N_FRAMES};
use niemeier_cusp::reference;
use niemeier_cusp::rootsys::RootSystemType;
use niemeier_cusp::subcount::Counter;
use num_traits::{One, Zero};

fn frozen_matrix() -> Vec<(RootSystemType, Vec<BigInt>)> {
    reference::count_matrix()
}

fn frozen_coefficients() -> Vec<BigRational> {
    reference::coefficients()
}

#[test]
fn matrix_matches_frozen_table() {
    let reg = Registry::builtin();
    let m = build_matrix(&reg, &Counter::new());
    let frozen = frozen_matrix();
    assert_eq!(frozen.len(), 24);
    for (i, (name, row)) in frozen.iter().enumerate() {
        assert_eq!(&m.rows[i], name);
        for (j, want) in row.iter().enumerate() {
            assert_eq!(&m.entries[i][j], want, "N({name}, {})", m.columns[j]);
        }
    }
    assert_eq!(m.rows, row_types());
    assert_eq!(m.rank(), 24);
}

#[test]
fn coefficients_match_and_annihilate_small_rows() {
    let reg = Registry::builtin();
    let counter = Counter::new();
    let m = build_matrix(&reg, &counter);
    let c = cuspform::solve(&m).unwrap();
    assert_eq!(c.values, frozen_coefficients());
    for (i, r) in cuspform::row_residuals(&c, &m).iter().enumerate() {
        if i == niemeier_cusp::niemeier::D12_ROW {
            assert!(r.is_one());
        } else {
            assert!(r.is_zero(), "row {i}");
        }
    }
    let d = cuspform::signed_leech_counts(&c);
    assert!(cuspform::all_integral(&d));
    assert!(d.iter().sum::<BigRational>().is_zero());
    assert_eq!(d[23], BigRational::from_integer(BigInt::from(N_FRAMES)));
    let form = CuspForm::new(c, &reg, &counter);
    let d12: RootSystemType = "D12".parse().unwrap();
    assert!(form.coefficient(&d12).unwrap().is_one());
    assert!(form.coefficient(&"A5^2A1".parse().unwrap()).unwrap().is_zero());
}

fn frozen_det_table() -> Vec<(BigInt, BigInt, RootSystemType)> {
    reference::det_table()
}

#[test]
fn det_table_matches_frozen_entries() {
    let reg = Registry::builtin();
    let counter = Counter::new();
    let c = cuspform::solve(&build_matrix(&reg, &counter)).unwrap();
    let form = CuspForm::new(c, &reg, &counter);
    let table = form.det_table(96);
    for (det, coef, lat) in frozen_det_table() {
        let e = table
            .iter()
            .find(|e| e.lattice == lat)
            .unwrap_or_else(|| panic!("{lat} missing"));
        assert_eq!(e.det, det, "{lat}");
        assert_eq!(e.value, BigRational::from_integer(coef), "{lat}");
    }
    let extra: Vec<String> = table
        .iter()
        .filter(|e| !e.value.is_zero() && !frozen_det_table().iter().any(|f| f.2 == e.lattice))
        .map(|e| format!("{} {} {}", e.det, e.value, e.lattice))
        .collect();
    assert!(extra.is_empty(), "{extra:?}");
}
