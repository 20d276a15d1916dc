use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linembed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn classify_example() {
    assert_eq!(
        stdout(&["classify", "--d", "2", "--alpha", "0,2.5"]),
        "{\"class\":\"Sparse\",\"exponent\":0.5}\n"
    );
    assert_eq!(
        stdout(&["classify", "--d", "1", "--alpha", "1"]),
        "{\"class\":\"Critical\",\"exponent\":1.0}\n"
    );
}

#[test]
fn janson_example() {
    assert_eq!(
        stdout(&["janson", "--d", "1", "--alpha", "0.8"]),
        "{\"min_exponent\":4.2,\"argmin\":[1,1,1,2]}\n"
    );
}

#[test]
fn sweep_example_rises_across_the_boundary() {
    let args = [
        "sweep",
        "--d",
        "1",
        "--n",
        "200",
        "--vary",
        "1",
        "--grid",
        "0.6:1.4:9",
        "--trials",
        "50",
        "--seed",
        "7",
    ];
    let csv = stdout(&args);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha,trials,no_core_rate,embed_success_rate,match_rate,mean_match_estimate,max_component_vertices"
    );
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0].0, 0.6);
    assert_eq!(rows[8].0, 1.4);
    let below: f64 = rows.iter().filter(|r| r.0 < 1.0).map(|r| r.1).sum::<f64>() / 4.0;
    let above: f64 = rows.iter().filter(|r| r.0 > 1.0).map(|r| r.1).sum::<f64>() / 4.0;
    assert!(below < 0.2 && above > 0.8, "below {below}, above {above}");
    for w in rows.windows(2) {
        assert!(w[1].1 + 0.1 >= w[0].1, "no_core_rate drops: {rows:?}");
    }
    // byte-identical reruns, also with a different worker count
    assert_eq!(stdout(&args), csv);
    let mut with_workers = vec!["--workers", "2"];
    with_workers.extend_from_slice(&args);
    assert_eq!(stdout(&with_workers), csv);
}

#[test]
fn sweep_help_documents_columns() {
    let help = stdout(&["sweep", "--help"]);
    for col in [
        "no_core_rate",
        "embed_success_rate",
        "match_rate",
        "mean_match_estimate",
        "max_component_vertices",
    ] {
        assert!(help.contains(col));
    }
}

#[test]
fn sweep_json_and_out_file() {
    let dir = std::env::temp_dir().join(format!("linembed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.json");
    let args = [
        "sweep",
        "--d",
        "1",
        "--n",
        "40",
        "--vary",
        "1",
        "--grid",
        "1.2:1.2:1",
        "--trials",
        "3",
        "--measure",
        "all",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ];
    assert_eq!(stdout(&args), "");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["trials"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sample_collapse_embed_pipeline() {
    let dir = std::env::temp_dir().join(format!("linembed-pipe-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let complex = dir.join("x.json");
    let x = stdout(&["sample", "--n", "30", "--alpha", "0,2.2", "--seed", "4"]);
    assert_eq!(x, stdout(&["sample", "--n", "30", "--alpha", "0,2.2", "--seed", "4"]));
    std::fs::write(&complex, &x).unwrap();
    let peel: serde_json::Value = serde_json::from_str(&stdout(&[
        "collapse",
        "--d",
        "2",
        "--complex",
        complex.to_str().unwrap(),
    ]))
    .unwrap();
    assert!(peel["core"].as_array().unwrap().is_empty());
    let config = stdout(&[
        "embed",
        "--d",
        "2",
        "--complex",
        complex.to_str().unwrap(),
        "--seed",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&config).unwrap();
    assert_eq!(v["m"], 4);
    assert_eq!(v["points"].as_array().unwrap().len(), 30);

    // the embedding has no Radon match with the complex
    let cfg = dir.join("c.json");
    std::fs::write(&cfg, &config).unwrap();
    let r: serde_json::Value = serde_json::from_str(&stdout(&[
        "radon-count",
        "--d",
        "2",
        "--complex",
        complex.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "2000",
    ]))
    .unwrap();
    assert_eq!(r["matches"], 0);
    assert_eq!(r["mode"], "sampled");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_and_radon_count() {
    let r: serde_json::Value =
        serde_json::from_str(&stdout(&["census", "--n", "9", "--m", "2", "--seed", "3"])).unwrap();
    assert_eq!(r["checked"], 126);
    assert_eq!(r["mode"], "census");
    let r: serde_json::Value =
        serde_json::from_str(&stdout(&["radon-count", "--d", "1", "--n", "12", "--alpha", "0.3"])).unwrap();
    assert_eq!(r["checked"], 495);
    assert_eq!(r["mode"], "exhaustive");
}

#[test]
fn exit_codes() {
    // malformed alpha and missing flags
    assert_eq!(code(&["classify", "--d", "2", "--alpha", "0,x"]), 2);
    assert_eq!(code(&["classify", "--alpha", "1"]), 2);
    assert_eq!(code(&["classify", "--d", "1", "--alpha", "-1"]), 2);
    assert_eq!(
        code(&["sweep", "--d", "1", "--n", "10", "--vary", "3", "--grid", "1:2:2", "--trials", "1"]),
        2
    );
    assert_eq!(
        code(&["sweep", "--d", "1", "--n", "10", "--vary", "1", "--grid", "1:2", "--trials", "1"]),
        2
    );
    // budget guard
    assert_eq!(
        code(&[
            "radon-count",
            "--d",
            "1",
            "--n",
            "40",
            "--alpha",
            "0.5",
            "--budget",
            "10"
        ]),
        3
    );
    // nonempty core cannot be embedded by the builder
    assert_eq!(code(&["embed", "--d", "1", "--n", "10", "--alpha", "0"]), 2);
    // degenerate configuration
    assert_eq!(code(&["census", "--n", "5", "--m", "2", "--coord-bound", "1"]), 2);
    let dir = std::env::temp_dir().join(format!("linembed-deg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.json");
    std::fs::write(&cfg, r#"{"m":2,"points":[[0,0],[1,1],[2,2],[0,5]]}"#).unwrap();
    assert_eq!(code(&["census", "--config", cfg.to_str().unwrap()]), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
