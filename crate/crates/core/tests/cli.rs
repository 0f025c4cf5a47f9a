use std::process::Command;

fn garside(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(args)
        .env_remove("GARSIDE_JOBS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn dtable_matches_golden_csv() {
    let (code, stdout, _) = garside(&["dtable"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, include_str!("golden/dtable.csv"));
}

#[test]
fn nf_golden() {
    let (code, stdout, _) = garside(&["nf", "n=3; 1 2 1"]);
    assert_eq!(
        (code, stdout.as_str()),
        (
            0,
            "{\"schema_version\":1,\"braid\":{\"n\":3,\"inf\":1,\"factors\":[]}}\n"
        )
    );
    let (_, stdout, _) = garside(&["nf", "n=3; -1"]);
    assert_eq!(
        stdout,
        "{\"schema_version\":1,\"braid\":{\"n\":3,\"inf\":-1,\"factors\":[[3,1,2]]}}\n"
    );
    let (_, stdout, _) = garside(&["nf", "--expand", "n=3; 2 1 1"]);
    assert_eq!(stdout, "n=3; 2 1 1\n");
}

#[test]
fn nf_reads_files_and_its_own_output() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("x.braid");
    std::fs::write(&word, "n=4;\n1 -2 3\nD 2\n").unwrap();
    let (code, first, _) = garside(&["nf", word.to_str().unwrap()]);
    assert_eq!(code, 0);
    let json = dir.path().join("x.json");
    std::fs::write(&json, &first).unwrap();
    assert_eq!(garside(&["nf", json.to_str().unwrap()]).1, first);
}

#[test]
fn conj_golden_and_exit_codes() {
    let (code, stdout, _) = garside(&["conj", "n=3; 1 1", "n=3; 2 2"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "{\"schema_version\":1,\"verdict\":\"CONJUGATE\",\"mode\":\"fast\",\"witness\":\"n=3; D\",\
         \"witness_braid\":{\"n\":3,\"inf\":1,\"factors\":[]},\"separation\":null,\"budget\":null}\n"
    );
    let (code, stdout, _) = garside(&["conj", "--mode", "exact", "n=3; 1 1", "n=3; 1 1 1"]);
    assert_eq!(code, 1);
    assert!(stdout.contains(
        "\"separation\":{\"x\":{\"inf_c\":0,\"sup_c\":2},\"y\":{\"inf_c\":0,\"sup_c\":3}}"
    ));
    let (code, stdout, _) = garside(&[
        "conj",
        "--mode",
        "exact",
        "--budget",
        "1",
        "n=4; 1 2 3 1 2 1 3 3 -2",
        "n=4; 2 3 1 2 1 3 3 -2 1",
    ]);
    assert_eq!(code, 3, "{stdout}");
    assert!(stdout.contains("\"verdict\":\"UNRESOLVED\""));
}

#[test]
fn rsss_golden() {
    let (code, stdout, _) = garside(&["rsss", "n=3; 1 1"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "{\"schema_version\":1,\"kind\":\"RSSS\",\"policy\":\"restricted\",\"summit_inf\":0,\"summit_sup\":2,\
         \"orbit_count\":2,\"element_count\":2,\"orbits\":[[{\"n\":3,\"inf\":0,\"factors\":[[1,3,2],[1,3,2]]}],\
         [{\"n\":3,\"inf\":0,\"factors\":[[2,1,3],[2,1,3]]}]],\"budget\":{\"limit\":1000000,\"candidates_tested\":6}}\n"
    );
}

#[test]
fn uss_budget_exhaustion_exits_3() {
    let (code, stdout, _) = garside(&[
        "uss",
        "--policy",
        "full",
        "--budget",
        "1",
        "n=5; 1 2 3 4 1 2 -3 4 4 2 1",
    ]);
    assert_eq!(code, 3);
    assert!(stdout.contains("\"status\":\"budget-exhausted\""));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let (code, _, stderr) = garside(&["nf", "n=3;\n 1 7"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2, column 4"), "{stderr}");
    assert_eq!(garside(&["nf"]).0, 2);
    assert_eq!(
        garside(&["mc", "--experiment", "nope", "--n", "4", "--k", "2"]).0,
        2
    );
    assert_eq!(
        garside(&["nf", "{\"n\":3,\"inf\":0,\"factors\":[[1,2,3]]}"]).0,
        2
    );
    assert_eq!(garside(&["--help"]).0, 0);
}

#[test]
fn mc_output_is_independent_of_jobs() {
    let args = [
        "mc",
        "--experiment",
        "wcw",
        "--n",
        "5",
        "--k",
        "6",
        "--samples",
        "400",
        "--seed",
        "3",
    ];
    let one = garside(&[&["--jobs", "1"], &args[..]].concat());
    let four = garside(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(one, four);
    assert!(one.1.contains("\"prng\":\"ChaCha8\""));
    let env = Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(args)
        .env("GARSIDE_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one.1);
}

#[test]
fn mc_csv_row() {
    let (code, stdout, _) = garside(&[
        "mc",
        "--experiment",
        "head-stability",
        "--n",
        "6",
        "--k",
        "5",
        "--samples",
        "200",
        "--seed",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let row = stdout.lines().nth(1).unwrap();
    assert!(
        row.starts_with("6,5,")
            && row.contains(",empirical,200,1,")
            && row.ends_with(",head-stability"),
        "{row}"
    );
}

#[test]
fn pacycle_found_and_absent() {
    let (code, stdout, _) = garside(&["pacycle", "n=3; 2 1 1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"found\":true,\"power\":1,\"cyclings\":0"));
    let (code, stdout, _) = garside(&[
        "pacycle",
        "--max-power",
        "1",
        "--max-cyclings",
        "1",
        "n=4; 1 3 -2",
    ]);
    if code == 3 {
        assert!(stdout.contains("\"found\":false"));
        assert!(stdout.contains("\"budgets\":{\"max_power\":1,\"max_cyclings\":1}"));
    }
}

#[test]
fn dtable_timings_and_grid() {
    let start = std::time::Instant::now();
    let (code, stdout, _) = garside(&[
        "dtable",
        "--n-list",
        "4,6,8,10,15,20,30,50,75,100",
        "--k-list",
        "2",
    ]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(code, 0);
    let values: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(
        values,
        [
            "6.04e-1", "8.58e-1", "1.06e0", "1.22e0", "1.54e0", "1.78e0", "2.13e0", "2.59e0",
            "2.97e0", "3.24e0"
        ]
    );
}
