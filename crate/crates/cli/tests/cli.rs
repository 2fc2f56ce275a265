use std::process::{Command, Output};

const PHI: &str = "surd:(1+1*sqrt(5))/2";
const SQRT2: &str = "surd:(0+1*sqrt(2))/1";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threegap"))
        .args(args)
        .output()
        .expect("spawn threegap")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(i).unwrap().to_string())
        .collect()
}

#[test]
fn expand_golden_ratio() {
    let out = run(&["expand", PHI, "--terms", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(column(&text, "a"), ["1", "1", "1", "1"]);
    assert_eq!(column(&text, "q"), ["1", "1", "2", "3"]);
    assert_eq!(column(&text, "eta_err"), ["0"; 4]);
    // η_0 = φ - 1
    assert_eq!(column(&text, "eta")[0], "0.61803398875");
}

#[test]
fn expand_periodic_cf() {
    let out = run(&["expand", "cf:[0;(1,2)]", "--terms", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(column(&text, "a"), ["0", "1", "2", "1", "2"]);
    // interval mode reports a certified, nonzero error
    assert!(column(&text, "eta_err").iter().all(|e| e != "0"));
}

#[test]
fn expand_rational_surd_fails() {
    let out = run(&["expand", "surd:(0+1*sqrt(4))/1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rational value"));
}

#[test]
fn malformed_alpha_names_token() {
    let out = run(&["expand", "surd:(1+x*sqrt(5))/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`x`"));
}

#[test]
fn gaps_golden_ratio_m3() {
    let out = run(&["gaps", PHI, "--m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m=3 k=2 r=1 s=0"), "{text}");
    assert!(text.contains("SHORT 0.2360679775 x 2"), "{text}");
    assert!(text.contains("MID   0.14589803375 x 1"), "{text}");
    assert!(text.contains("LONG  0.38196601125 x 1"), "{text}");
    assert!(!text.contains("degenerate"));
    assert!(text.contains("ratio 2.61803398875 (err 0)"));
}

#[test]
fn gaps_flags_degenerate_long() {
    let out = run(&["gaps", PHI, "--m", "1"]);
    let text = stdout(&out);
    let long = text.lines().find(|l| l.starts_with("LONG")).unwrap();
    assert!(
        long.contains("x 0") && long.contains("degenerate (q_k = s+1)"),
        "{long}"
    );
}

#[test]
fn gaps_rejects_m_zero() {
    assert_eq!(run(&["gaps", PHI, "--m", "0"]).status.code(), Some(1));
    assert_eq!(run(&["gaps", PHI]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_golden_ratio_sup() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.csv");
    let out = run(&[
        "scan",
        PHI,
        "--max-m",
        "10000",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary = stdout(&out);
    assert!(summary.contains("sup=2.61803398875"), "{summary}");
    assert!(summary.contains("B=1 (certified), B+2=3"), "{summary}");

    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "m,k,r,s,epsilon,branch,d_max,d_min,ratio,ratio_err"
    );
    assert_eq!(csv.lines().count(), 10_001);
    let ms: Vec<u64> = column(&csv, "m")
        .iter()
        .map(|m| m.parse().unwrap())
        .collect();
    assert!(ms.iter().copied().eq(1..=10_000));
    assert!(column(&csv, "branch")
        .iter()
        .all(|b| b == "r=a" || b == "r<a"));
}

#[test]
fn scan_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for alpha in ["cf:[0;(1,2)]", SQRT2] {
        for p in [&a, &b] {
            let out = run(&[
                "scan",
                alpha,
                "--max-m",
                "800",
                "--csv",
                p.to_str().unwrap(),
            ]);
            assert!(out.status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn scan_sqrt2_below_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r2.csv");
    let out = run(&[
        "scan",
        SQRT2,
        "--max-m",
        "100",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let ratios = column(&csv, "ratio");
    assert_eq!(ratios.len(), 100);
    assert!(ratios.iter().all(|r| r.parse::<f64>().unwrap() < 4.0));
    assert!(stdout(&out).contains("B+2=4"));
}

#[test]
fn scan_natural_convergents_grow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nat.csv");
    let out = run(&[
        "scan",
        "rule:natural",
        "--max-m",
        "100000000000000",
        "--convergents-only",
        "--max-k",
        "15",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("uncertified"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let ratios: Vec<f64> = column(&csv, "ratio")
        .iter()
        .map(|r| r.parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 16);
    for (k, w) in ratios.windows(2).enumerate() {
        assert!(w[1] > w[0], "k={k}");
    }
    for (k, r) in ratios.iter().enumerate() {
        assert!(*r >= (k + 2) as f64, "k={k} ratio={r}");
    }
    assert!(column(&csv, "s").iter().all(|s| s == "0"));
    assert!(column(&csv, "branch").iter().all(|b| b == "r=a"));
    assert!(column(&csv, "ratio_err")
        .iter()
        .all(|e| e.parse::<f64>().unwrap() < 1e-9));
    assert_eq!(column(&csv, "m").last().unwrap(), "44811373131073");
}

#[test]
fn scan_unwritable_path_fails() {
    let out = run(&[
        "scan",
        PHI,
        "--max-m",
        "5",
        "--csv",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    for alpha in [PHI, SQRT2] {
        let out = run(&["verify", alpha, "--max-m", "2000"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains("disagreements 0"));
    }
    let out = run(&["verify", "cf:[0;(1,2)]", "--max-m", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("interval oracle (128 bits)") && text.contains("note: interval mode"),
        "{text}"
    );
}
