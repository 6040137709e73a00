use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_sho-verify");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(!text.contains('\r'));
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn default_verify_all_passes() {
    let out = run(&["verify-all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["version"], "1");
    let records = v["records"].as_array().unwrap();
    let ids: Vec<&str> = records.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let free = records.iter().find(|r| r["check_id"] == "free.linear.printed_coefficient_residual").unwrap();
    assert_eq!(free["informational"], true);
    assert_eq!(free["pass"], false);
}

#[test]
fn tight_tolerance_exits_one_and_names_checks() {
    let out = run(&["verify-all", "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("failed: eq01.02.standard_n0.residual"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify-all", "--grid-extent", "0.5"][..],
        &["verify-all", "--grid-step", "0.3"],
        &["verify-all", "--tol", "-1"],
        &["tabulate", "--family", "chi7"],
        &["overlap", "--family-a", "psi1", "--family-b", "fbar0", "--cutoffs", "3,4"],
        &["overlap", "--family-a", "wedge-psi0hat", "--family-b", "psi0"],
        &["evolve", "--levels", "2", "--state", "0,1"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.csv", "b.csv"].iter().map(|n| dir.path().join(n)).collect();
    for p in &paths {
        let out = run(&["verify-all", "--format", "csv", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn tabulate_fbar0_is_odd() {
    let rows = csv_rows(&run(&["tabulate", "--family", "fbar0", "--times", "0", "--format", "csv"]));
    let n = rows.len();
    for i in 0..n {
        let (a, b) = (&rows[i], &rows[n - 1 - i]);
        assert_eq!(num(&a[0]), -num(&b[0]));
        assert_eq!(num(&a[2]), -num(&b[2]));
        assert_eq!(a[5], b[5]);
    }
}

#[test]
fn tabulate_linear0_grows_in_time() {
    let rows = csv_rows(&run(&["tabulate", "--family", "linear0", "--times", "0,1,2", "--format", "csv"]));
    let mags: Vec<f64> = rows.iter().filter(|r| num(&r[0]) == 1.0).map(|r| num(&r[5])).collect();
    assert_eq!(mags.len(), 3);
    assert!(mags[0] < mags[1] && mags[1] < mags[2]);
}

#[test]
fn tabulate_wedge_ground_decays() {
    let rows = csv_rows(&run(&["tabulate", "--family", "wedge-psi0hat", "--times", "0", "--format", "csv"]));
    let logmag: Vec<f64> = rows.iter().map(|r| num(&r[5])).collect();
    assert!(logmag.windows(2).skip(64).all(|w| w[1] < w[0]));
}

#[test]
fn overlap_growth_laws() {
    let law = |a: &str, b: &str| {
        let out = run(&["overlap", "--family-a", a, "--family-b", b, "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0));
        csv_rows(&out)
    };
    let linear = law("psi1", "fbar0");
    assert_eq!(linear[0][2], "linear");
    assert!((num(&linear[0][3]) - 1.0).abs() < 0.01);
    let zero = law("psi0", "fbar0");
    assert_eq!(zero[0][2], "convergent");
    assert!(zero.iter().all(|r| num(&r[1]) == 0.0));
    assert_eq!(law("fbar0", "fbar0")[0][2], "exponential");
    // psi_m fbar_n ~ q^{m-n-1}: finite above the diagonal, cubic two levels below it.
    assert_eq!(law("psi1", "fbar2")[0][2], "convergent");
    assert_eq!(law("psi0", "fbar3")[0][2], "convergent");
    let cubic = law("psi3", "fbar0");
    assert_eq!(cubic[0][2], "power");
    assert!((num(&cubic[0][3]) - 3.0).abs() < 0.2);
}

#[test]
fn evolve_follows_closed_form() {
    let rows = csv_rows(&run(&["evolve", "--state", "0,1", "--times", "0,1,2,5,10", "--format", "csv"]));
    for r in &rows {
        let t = num(&r[0]);
        let (ar, ai, br, bi) = (num(&r[1]), num(&r[2]), num(&r[3]), num(&r[4]));
        // a = -i t b
        assert!((ar - t * bi).abs() < 1e-13 * (1.0 + t));
        assert!((ai + t * br).abs() < 1e-13 * (1.0 + t));
        assert!((num(&r[5]) - num(&rows[0][5])).abs() < 1e-13);
    }
    let rows = csv_rows(&run(&["evolve", "--state", "1,0", "--times", "0,3,30", "--format", "csv"]));
    for r in &rows {
        assert!(((num(&r[1]).powi(2) + num(&r[2]).powi(2)) - 1.0).abs() < 1e-14);
        assert_eq!((num(&r[3]), num(&r[4])), (0.0, 0.0));
    }
}

#[test]
fn physical_units_rescale_the_grid() {
    // ħ = 4, m = 1, ω = 1 doubles the length unit; cutoffs scale with it.
    let args = ["verify-all", "--hbar", "4", "--grid-extent", "8", "--grid-step", "1/128", "--cutoffs", "6,8,10,12"];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
