use std::process::{Command, Output};

fn qsample(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsample"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split('\t').map(str::to_string).collect()).collect()
}

#[test]
fn roots_of_spherical_polynomial() {
    let o = qsample(&["roots", "--input", "fixtures/spherical3.poly"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r[0], ["kind", "representative", "re", "r", "confident"]);
    assert_eq!(r[1][..4], ["nonreal_isolated", "1i", "0", "1"]);
    assert_eq!(r[2][..4], ["spherical", "1.73205i", "0", "1.73205"]);
    assert_eq!(r.len(), 3);
}

#[test]
fn method2_points() {
    let o = qsample(&["sample", "--input", "fixtures/spherical3.bvp", "--method", "2"]);
    assert!(o.status.success());
    let points: Vec<String> = rows(&stdout(&o)).into_iter().filter(|r| r[0] == "point").map(|r| r[3].clone()).collect();
    assert_eq!(points, ["1i", "1.73205i", "-1.73205i"]);
}

#[test]
fn isolated_spec_zeros_via_sample() {
    let o = qsample(&["sample", "--input", "fixtures/isolated3.bvp", "--method", "1", "--digits", "8"]);
    assert!(o.status.success());
    let mut points: Vec<String> =
        rows(&stdout(&o)).into_iter().filter(|r| r[0] == "point").map(|r| r[3].clone()).collect();
    points.sort();
    assert_eq!(points, ["-1i+2j", "-1i-1j", "-1i-3j"]);
}

#[test]
fn reconstruct_errors_are_small() {
    for method in ["1", "2"] {
        let o = qsample(&[
            "reconstruct",
            "--input",
            "fixtures/spherical3.bvp",
            "--data",
            "fixtures/spherical3.data",
            "--method",
            method,
        ]);
        assert!(o.status.success());
        for r in rows(&stdout(&o)).iter().skip(1) {
            assert_eq!(r[1], r[2]);
            assert!(r[3].parse::<f64>().unwrap() < 1e-10);
        }
    }
}

#[test]
fn charpoly_verdict_matches() {
    let o = qsample(&["charpoly", "--input", "fixtures/tridiag4.mat"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r.iter().filter(|r| r[0] == "zero").count(), 4);
    assert_eq!(r.last().unwrap()[..4], ["verdict", "-", "-", "match"]);
}

#[test]
fn json_output_is_line_delimited() {
    let o = qsample(&["--json", "eig", "--input", "fixtures/jacobi3.mat"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["value"], "1i");
}

#[test]
fn verify_seed_7_passes() {
    let o = qsample(&["verify", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(rows(&stdout(&o)).iter().skip(1).all(|r| r[2] == "pass"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--seed", "3", "--trials", "4"][..],
        &["sample", "--input", "fixtures/spherical3.bvp", "--method", "2", "--digits", "17"],
        &["charpoly", "--input", "fixtures/tridiag4.mat", "--digits", "17"],
    ] {
        assert_eq!(qsample(args).stdout, qsample(args).stdout);
    }
}

#[test]
fn errors_exit_with_one() {
    let o = qsample(&["sample", "--input", "fixtures/missing.bvp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "IoError");

    let o = qsample(&["charpoly", "--input", "fixtures/jacobi3.mat", "--s", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = qsample(&["roots"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UsageError");
}
