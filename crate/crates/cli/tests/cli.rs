use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = "plg 1
v 0 1
v 1 1
v 2 1
e 0 0 1 1
e 1 1 2 1
e 2 2 0 1
rot 0 0 2
rot 1 1 0
rot 2 2 1
";

fn planecut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planecut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn file_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exact_unit_triangle_has_quotient_two() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.plg", TRIANGLE);
    for method in ["layered", "separator"] {
        let out = planecut(&[
            "exact",
            "--input",
            s(&tri),
            "--objective",
            "quotient",
            "--method",
            method,
        ]);
        assert_eq!(code(&out), 0);
        let v = stdout_json(&out);
        assert_eq!(v["value_num"], "2");
        assert_eq!(v["value_den"], "1");
    }
    let cut = dir.path().join("cut.json");
    let out = planecut(&[
        "exact",
        "--input",
        s(&tri),
        "--objective",
        "sparsity",
        "--emit-cut",
        s(&cut),
    ]);
    assert_eq!(code(&out), 0);
    let c = file_json(&cut);
    assert_eq!(c["objective"], "sparsity");
    assert_eq!(
        (c["value_num"].as_str(), c["value_den"].as_str()),
        (Some("1"), Some("1"))
    );
    assert_eq!(c["cut_edges"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.plg");
    assert_eq!(code(&planecut(&["exact", "--input", s(&missing)])), 2);
    assert_eq!(code(&planecut(&["exact"])), 2);
    assert_eq!(code(&planecut(&["frobnicate"])), 2);
    let tri = write(&dir, "tri.plg", TRIANGLE);
    assert_eq!(
        code(&planecut(&[
            "exact",
            "--input",
            s(&tri),
            "--objective",
            "ratio"
        ])),
        2
    );
    assert_eq!(
        code(&planecut(&["approx", "--input", s(&tri), "--eps", "2/3"])),
        2
    );
    let bad = write(&dir, "bad.plg", "plg 1\nv 0 x\n");
    let out = planecut(&["exact", "--input", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn approx_reports_cut_and_trace() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.plg");
    let meta = dir.path().join("m.json");
    assert_eq!(
        code(&planecut(&[
            "gen",
            "minplus",
            "--a",
            "1,2",
            "--b",
            "2,1",
            "--c",
            "9,3",
            "--out",
            s(&g),
            "--meta",
            s(&meta)
        ])),
        0
    );
    let cut = dir.path().join("cut.json");
    let trace = dir.path().join("trace.json");
    let out = planecut(&[
        "approx",
        "--input",
        s(&g),
        "--eps",
        "1/300",
        "--emit-cut",
        s(&cut),
        "--trace",
        s(&trace),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let approx = stdout_json(&out);
    assert_eq!(approx["eps"], "1/300");
    let t = file_json(&trace);
    assert_eq!(t["eps_inv"], 300);
    assert!(t["clusters"]["clusters"].as_u64().unwrap() >= 1);
    assert!(!t["steps"].as_array().unwrap().is_empty());

    let exact = stdout_json(&planecut(&["exact", "--input", s(&g)]));
    let val = |v: &Value| -> f64 {
        v["value_num"].as_str().unwrap().parse::<f64>().unwrap()
            / v["value_den"].as_str().unwrap().parse::<f64>().unwrap()
    };
    let ratio = val(&approx) / val(&exact);
    assert!((1.0..=3.29 * 1.003).contains(&ratio), "ratio {ratio}");
    assert_eq!(file_json(&cut)["value_num"], approx["value_num"]);
}

#[test]
fn diamond_gen_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("d.plg");
    let meta = dir.path().join("m.json");
    for seed in 0..100u64 {
        let n = (1 + seed % 12).to_string();
        let seed_s = seed.to_string();
        let out = planecut(&[
            "gen",
            "diamond",
            "--seed",
            &seed_s,
            "--n",
            &n,
            "--out",
            s(&g),
            "--meta",
            s(&meta),
        ]);
        assert_eq!(code(&out), 0);
        let out = planecut(&["verify", "diamond", "--input", s(&g), "--meta", s(&meta)]);
        assert_eq!(
            code(&out),
            0,
            "seed {seed}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert_eq!(file_json(&meta)["seed"], seed);
    }
}

#[test]
fn verify_rejects_mismatched_graph_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("d.plg");
    let meta = dir.path().join("m.json");
    planecut(&[
        "gen",
        "diamond",
        "--a",
        "10",
        "--b",
        "10",
        "--out",
        s(&g),
        "--meta",
        s(&meta),
    ]);
    // raise one edge cost
    let text = std::fs::read_to_string(&g).unwrap();
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.starts_with("e 0 ") {
                format!("{} 99", l.rsplit_once(' ').unwrap().0)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let bad = write(&dir, "bad.plg", &tampered);
    let report = dir.path().join("r.json");
    let out = planecut(&[
        "verify",
        "diamond",
        "--input",
        s(&bad),
        "--meta",
        s(&meta),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(file_json(&report)["pass"], false);
    // kind mismatch is a usage error
    assert_eq!(
        code(&planecut(&[
            "verify",
            "minplus",
            "--input",
            s(&g),
            "--meta",
            s(&meta)
        ])),
        2
    );
}

#[test]
fn every_generator_output_reparses_and_verifies() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.plg");
    let meta = dir.path().join("m.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["minplus", "--seed", "1", "--n", "3"],
        vec!["minplus", "--seed", "2", "--n", "2", "--unit"],
        vec!["diamond", "--a", "0110", "--b", "0011"],
        vec!["maxdist", "--vectors", "101,010,111"],
        vec!["maxdist", "--vectors", "10,01", "--unweighted"],
        vec!["sumdist", "--seed", "4", "--n", "4", "--d", "3"],
        vec!["linkage", "--mode", "complete", "--vectors", "110,011,100"],
        vec!["linkage", "--mode", "average", "--vectors", "1,0,1"],
    ];
    for case in cases {
        let mut args = vec!["gen"];
        args.extend(&case);
        args.extend(["--out", s(&g), "--meta", s(&meta)]);
        assert_eq!(code(&planecut(&args)), 0, "{case:?}");
        let kind = case[0];
        let out = planecut(&["verify", kind, "--input", s(&g), "--meta", s(&meta)]);
        assert_eq!(
            code(&out),
            0,
            "{case:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        // the emitted graph is a valid input for the solvers and oracles
        let out = planecut(&["oracle", "apsp", "--input", s(&g)]);
        assert_eq!(code(&out), 0, "{case:?}");
    }
}

#[test]
fn oracle_matches_exact_solver() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.plg", TRIANGLE);
    let report = dir.path().join("o.json");
    assert_eq!(
        code(&planecut(&[
            "oracle",
            "cuts",
            "--input",
            s(&tri),
            "--report",
            s(&report)
        ])),
        0
    );
    let r = file_json(&report);
    assert_eq!(r["cuts"], 3);
    assert_eq!(r["optimum"]["quotient"]["value_num"], "2");
    let cycles = stdout_json(&planecut(&["oracle", "cycles", "--input", s(&tri)]));
    assert_eq!(cycles["count"], 1);
    assert_eq!(cycles["cycles"][0]["cost"], 3);
    let apsp = stdout_json(&planecut(&["oracle", "apsp", "--input", s(&tri)]));
    assert_eq!(apsp["diameter"], 1);

    let g = dir.path().join("l.plg");
    let meta = dir.path().join("l.json");
    planecut(&[
        "gen",
        "linkage",
        "--vectors",
        "10,01,11",
        "--out",
        s(&g),
        "--meta",
        s(&meta),
    ]);
    let out = stdout_json(&planecut(&[
        "oracle",
        "linkage",
        "--input",
        s(&g),
        "--sets",
        s(&meta),
    ]));
    assert_eq!(out["merges"].as_array().unwrap().len(), 3 * 4 + 2 - 1);
    assert_eq!(out["set_distances"].as_array().unwrap().len(), 3);
}

fn bench(dir: &TempDir, suite: &str, threads: &str) -> Vec<csv::StringRecord> {
    let suite_path = write(dir, "suite.json", suite);
    let out_path = dir.path().join("out.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_planecut"))
        .args(["bench", "--suite", s(&suite_path), "--out", s(&out_path)])
        .env("PLANECUT_THREADS", threads)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&out_path).unwrap();
    assert_eq!(rdr.headers().unwrap().get(0), Some("instance"));
    rdr.records().map(|r| r.unwrap()).collect()
}

#[test]
fn bench_empty_suite_writes_header_only() {
    let dir = TempDir::new().unwrap();
    assert!(bench(&dir, "{\"runs\": []}", "1").is_empty());
    assert!(bench(&dir, "", "1").is_empty());
}

#[test]
fn bench_exact_methods_agree_on_grids() {
    let dir = TempDir::new().unwrap();
    let rows = bench(
        &dir,
        r#"{"runs": [{"generator": "grid", "sizes": [3, 4, 5, 6, 7, 8], "seeds": [11],
                      "methods": ["layered", "separator", "approx"]}]}"#,
        "4",
    );
    assert_eq!(rows.len(), 18);
    for chunk in rows.chunks(3) {
        assert_eq!(chunk[0][0], chunk[1][0]);
        assert_eq!(
            (&chunk[0][11], &chunk[0][12]),
            (&chunk[1][11], &chunk[1][12]),
            "{:?}",
            chunk
        );
        let ratio: f64 = chunk[2][13].parse().unwrap();
        assert!((1.0..=3.3).contains(&ratio), "{:?}", chunk[2]);
        assert_eq!(&chunk[2][17], "ok");
    }
}

#[test]
fn bench_marks_failures_and_continues() {
    let dir = TempDir::new().unwrap();
    // brute force is over budget at 36 vertices; the layered row still runs
    let rows = bench(
        &dir,
        r#"{"runs": [{"generator": "unit_grid", "sizes": [6], "seeds": [1], "methods": ["brute", "layered"]}]}"#,
        "1",
    );
    assert_eq!(rows.len(), 2);
    assert!(rows[0][17].starts_with("error"));
    assert_eq!(&rows[1][17], "ok");
    // the layered row is its own reference
    assert_eq!(&rows[1][13], "1.000000");
}

#[test]
fn minplus_sparsity_gap_and_safe_beta() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.plg");
    let meta = dir.path().join("m.json");
    let args = [
        "gen",
        "minplus",
        "--a",
        "8,5",
        "--b",
        "6,1",
        "--c",
        "11,14",
        "--out",
        s(&g),
        "--meta",
        s(&meta),
    ];
    assert_eq!(code(&planecut(&args)), 0);
    // an unbalanced cut undercuts the sparsity threshold at β = 4Tn²
    assert_eq!(
        code(&planecut(&[
            "verify",
            "minplus",
            "--input",
            s(&g),
            "--meta",
            s(&meta)
        ])),
        1
    );
    let mut safe = args.to_vec();
    safe.extend(["--beta-factor", "48"]);
    assert_eq!(code(&planecut(&safe)), 0);
    assert_eq!(file_json(&meta)["beta_factor"], 48);
    assert_eq!(
        code(&planecut(&[
            "verify",
            "minplus",
            "--input",
            s(&g),
            "--meta",
            s(&meta)
        ])),
        0
    );
}
