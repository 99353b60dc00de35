use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_pellkit");

const CASES: &[(&str, &[&str], i32)] = &[
    ("cf_sqrt", &["cf", "sqrt", "34"], 0),
    ("cf_convergent", &["cf", "convergent", "34", "3"], 0),
    ("pell_fund", &["pell", "fund", "13"], 0),
    ("pell_iterate", &["pell", "iterate", "2", "3"], 0),
    ("pell_grelak", &["pell", "grelak", "3", "2"], 0),
    ("pell_grelak_unsolvable", &["pell", "grelak", "17", "2"], 0),
    (
        "pell_orbit",
        &["pell", "orbit", "6", "100", "50", "20", "3"],
        0,
    ),
    ("pell_brute", &["pell", "brute", "5", "-4", "20"], 0),
    ("pell_brute_empty", &["pell", "brute", "3", "2", "50"], 0),
    ("oracle_divisors", &["oracle", "divisors", "99"], 0),
    ("oracle_pairs", &["oracle", "pairs", "807", "4", "2"], 0),
    ("oracle_search", &["oracle", "search", "100", "2", "0"], 0),
    (
        "family_gen",
        &[
            "family", "gen", "--delta", "4", "--eps", "2", "--count", "2",
        ],
        0,
    ),
    (
        "family_verify",
        &[
            "family", "verify", "--delta", "2", "--eps", "4", "--count", "3", "--n-cap", "1000000",
        ],
        0,
    ),
    (
        "verify_theorem3",
        &[
            "verify", "theorem3", "--delta", "6", "--d-max", "4", "--n-max", "10000",
        ],
        0,
    ),
    ("error_square", &["cf", "sqrt", "49"], 1),
    (
        "error_parity",
        &[
            "family", "gen", "--delta", "2", "--eps", "2", "--count", "1",
        ],
        1,
    ),
    ("error_usage", &["pell", "fund"], 1),
    ("error_number", &["pell", "fund", "12x"], 1),
];

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("PELLKIT_RHO_SEED")
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.jsonl"))
}

#[test]
fn golden_records() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let out = run(args);
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(out.status.code(), Some(*code), "{name}: {stdout}");
        assert_eq!(stdout.lines().count(), 1, "{name}: one record per run");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != stdout {
            failures.push(format!("{name}\n  expected {expected}  actual   {stdout}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic_and_seed_independent() {
    let args = ["oracle", "divisors", "7761607"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let seeded = Command::new(BIN)
        .args(args)
        .env("PELLKIT_RHO_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(seeded.stdout, a);
}

#[test]
fn json_flag_is_the_default_format() {
    let plain = run(&["cf", "sqrt", "14"]).stdout;
    let flagged = run(&["--json", "cf", "sqrt", "14"]).stdout;
    assert_eq!(plain, flagged);
    let trailing = run(&["cf", "sqrt", "14", "--json"]).stdout;
    assert_eq!(plain, trailing);
}

#[test]
fn verbose_writes_tables_to_stderr_only() {
    let quiet = run(&["oracle", "search", "100", "2", "0"]);
    let loud = run(&["-v", "oracle", "search", "100", "2", "0"]);
    assert_eq!(quiet.stdout, loud.stdout);
    assert!(quiet.stderr.is_empty());
    let table = String::from_utf8(loud.stderr).unwrap();
    assert!(table.contains("169"));
}

#[test]
fn records_parse_with_decimal_strings() {
    let out = run(&[
        "family", "gen", "--delta", "2", "--eps", "4", "--count", "3",
    ]);
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["status"], "ok");
    let triples: Vec<[&str; 3]> = rec["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            [
                r["n"].as_str().unwrap(),
                r["d1"].as_str().unwrap(),
                r["d2"].as_str().unwrap(),
            ]
        })
        .collect();
    assert_eq!(
        triples,
        [["5", "1", "13"], ["47", "13", "85"], ["293", "85", "505"]]
    );
}

#[test]
fn big_arguments_survive() {
    // D = k^2 + 1 has period [2k] and unit (2k^2 + 1, 2k)
    let d = "1000000000000000000000000000001";
    let out = run(&["pell", "fund", d]);
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["inputs"]["d"], d);
    assert_eq!(rec["results"][0]["x"], "2000000000000000000000000000001");
    assert_eq!(rec["results"][0]["y"], "2000000000000000");
}

#[test]
fn huge_periods_fail_cleanly() {
    let out = run(&["pell", "fund", "123456789012345678901234567890"]);
    assert_eq!(out.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["status"], "error");
}

#[test]
fn negative_eps_is_accepted() {
    let out = run(&["oracle", "pairs", "7", "4", "-6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "family", "gen", "--delta", "4", "--eps", "-6", "--count", "1",
    ]);
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["results"][0]["n"], "99");
    assert_eq!(rec["results"][0]["d2"], "377");
}

#[test]
fn csv_export() {
    let dir = std::env::temp_dir().join(format!("pellkit-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.csv");
    let out = run(&[
        "--csv",
        path.to_str().unwrap(),
        "oracle",
        "search",
        "100",
        "2",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "n,d1,d2,delta,eps\n3,1,5,2,0\n17,5,29,2,0\n99,29,169,2,0\n"
    );

    let out = run(&["--csv", path.to_str().unwrap(), "cf", "sqrt", "2"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_seed_is_a_usage_error() {
    let out = Command::new(BIN)
        .args(["oracle", "divisors", "5"])
        .env("PELLKIT_RHO_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec["error_detail"]
        .as_str()
        .unwrap()
        .contains("PELLKIT_RHO_SEED"));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = run(&[
        "family", "gen", "--delta", "2", "--eps", "0", "--cuont", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec["error_detail"].as_str().unwrap().contains("--cuont"));
}
