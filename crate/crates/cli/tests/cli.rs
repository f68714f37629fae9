use std::process::{Command, Output};

fn niemeier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_niemeier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn coeff_values() {
    for (lattice, want) in [("D12", "1"), ("A4 E8", "-1"), ("A1", "0"), ("A11 A1", "108")] {
        let o = niemeier(&["coeff", lattice]);
        assert_eq!(o.status.code(), Some(0), "{lattice}");
        assert_eq!(stdout(&o).trim(), want, "{lattice}");
    }
}

#[test]
fn bad_lattice_is_usage_error() {
    let o = niemeier(&["coeff", "X9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(niemeier(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_data_file() {
    let o = niemeier(&["--data", "/nonexistent/niemeier.tsv", "cuspform"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corrupt_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cache.txt");
    std::fs::write(&p, "this is not a cache line\n").unwrap();
    let o = niemeier(&["--cache", p.to_str().unwrap(), "coeff", "D12"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cache.txt");
    let cache = p.to_str().unwrap();
    let first = niemeier(&["--cache", cache, "coeff", "D4 E8"]);
    assert_eq!(first.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.lines().any(|l| l.contains('@') && l.contains('=')));
    let second = niemeier(&["--cache", cache, "coeff", "D4 E8"]);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn leech_row_needs_missing_data() {
    let o = niemeier(&["hecke"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing data"));
}

#[test]
fn d24_row_json() {
    let o = niemeier(&["hecke", "--row", "d24", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda_over_beta_factored"], "2^13·3^10·5^4·41·167");
    assert_eq!(v["matches_expected"], false);
}

#[test]
fn output_is_thread_independent() {
    for args in [["table", "--format", "csv"], ["cuspform", "--format", "json"]] {
        let one = niemeier(&[args[0], args[1], args[2], "--threads", "1"]);
        let two = niemeier(&[args[0], args[1], args[2], "--threads", "2"]);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(stdout(&one), stdout(&two));
    }
}

#[test]
fn table_csv_has_89_rows() {
    let o = niemeier(&["table", "--format", "csv"]);
    let out = stdout(&o);
    let mut r = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(r.records().count(), 89);
}

#[test]
fn qexp_plain_leads_with_q4() {
    let o = niemeier(&["qexp", "--terms", "20"]);
    assert!(stdout(&o).starts_with("q^4 + 2q^5 + 2q^8 - 12q^12"));
}

#[test]
fn d12_methods_agree() {
    let frames = niemeier(&["d12", "--method", "frames", "--format", "json"]);
    let theta = niemeier(&["d12", "--method", "theta", "--format", "json"]);
    assert_eq!(frames.status.code(), Some(0));
    assert_eq!(theta.status.code(), Some(0));
    let f: serde_json::Value = serde_json::from_str(&stdout(&frames)).unwrap();
    let t: serde_json::Value = serde_json::from_str(&stdout(&theta)).unwrap();
    assert_eq!(f["equal"], true);
    assert_eq!(f["values"][0]["raw"], t["values"][1]["raw"]);
    assert_eq!(f["values"][0]["normalized"], "1");
}

#[test]
fn golay_classes() {
    let o = niemeier(&["golay", "classify", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}
