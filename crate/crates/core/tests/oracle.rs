use niemeier_cusp::rootsys::RootSystemType;
use niemeier_cusp::subcount::{all_types_up_to_rank, brute_force_count, Counter};
use rayon::prelude::*;

#[test]
fn counts_agree_with_brute_force() {
    let counter = Counter::new();
    let xs: Vec<RootSystemType> = all_types_up_to_rank(4).into_iter().filter(|x| !x.is_empty()).collect();
    let ambients: Vec<RootSystemType> = all_types_up_to_rank(8).into_iter().filter(|r| !r.is_empty()).collect();
    let pairs: Vec<(&RootSystemType, &RootSystemType)> =
        ambients.iter().flat_map(|r| xs.iter().map(move |x| (x, r))).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|(x, r)| {
            let fast = counter.count(x, r);
            let slow = brute_force_count(x, r).unwrap();
            (fast != slow).then(|| format!("{x} in {r}: {fast} vs {slow}"))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(pairs.len() > 1000);
}
