use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpolylog"))
        .args(args)
        .env_remove("FRACPOLYLOG_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn value(v: &serde_json::Value) -> (f64, f64) {
    (
        v["value"]["re"].as_f64().unwrap(),
        v["value"]["im"].as_f64().unwrap(),
    )
}

fn close(p: (f64, f64), q: (f64, f64), tol: f64) -> bool {
    (p.0 - q.0).hypot(p.1 - q.1) < tol
}

#[test]
fn monodromy_examples() {
    let plain = value(&json(&run(&["eval", "--alpha", "0.5", "--z", "0.3"])));
    let c0 = json(&run(&[
        "monodromy",
        "--alpha",
        "0.5",
        "--z",
        "0.3",
        "--word",
        "c0",
    ]));
    assert!(close(value(&c0), plain, 1e-14));
    let back = json(&run(&[
        "monodromy",
        "--alpha",
        "0.5",
        "--z",
        "0.3",
        "--word",
        "c1 c1^-1",
    ]));
    assert!(close(value(&back), plain, 1e-12));

    // e^{πi} − 1 = −2, so one loop around 1 gives Li − 2·M[0]
    let c1 = json(&run(&[
        "monodromy",
        "--alpha",
        "0.5",
        "--z",
        "0.3",
        "--word",
        "c1",
    ]));
    assert_eq!(c1["li_coeff"]["re"], 1.0);
    let m0 = &c1["m_coeffs"]["0"];
    assert!((m0["re"].as_f64().unwrap() + 2.0).abs() < 1e-15);
    // M[0] = Γ(1/2)·e^{−3πi/2}·(log 0.3)^{−1/2} on the [0, 2π) branch, real and positive
    let m0_value = std::f64::consts::PI.sqrt() / (-(0.3f64.ln())).sqrt();
    assert!(
        close(value(&c1), (plain.0 - 2.0 * m0_value, 0.0), 1e-9),
        "{c1}"
    );
}

#[test]
fn jump_examples() {
    for (alpha, x) in [("0.5", "2"), ("0.5", "10"), ("1.5", "2")] {
        let v = json(&run(&["jump", "--alpha", alpha, "--x", x]));
        assert!(v["difference"].as_f64().unwrap() < 1e-6, "{v}");
    }
    let v = json(&run(&["jump", "--alpha", "0.5", "--x", "2"]));
    assert!((v["closed_form"]["im"].as_f64().unwrap() - 4.2579).abs() < 1e-4);
    assert_eq!(
        run(&["jump", "--alpha", "0.5", "--x", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["jump", "--alpha", "2", "--x", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn table_rows_and_skips() {
    let o = run(&[
        "table",
        "--alpha=-0.5",
        "--z-re=-0.9:0.9:11",
        "--z-im=0:0:1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "z_re,z_im,val_re,val_im,err,method");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        let x: f64 = r[0].parse().unwrap();
        if x > 0.0 {
            assert!(r[3].parse::<f64>().unwrap().abs() < 1e-10);
        }
    }

    let o = run(&[
        "table", "--alpha", "0.5", "--z-re", "0.5:2:4", "--z-im", "0:0:1",
    ]);
    let text = stdout(&o);
    let skipped: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with("skipped:OnBranchCut"))
        .collect();
    assert_eq!(skipped.len(), 2, "{text}");
    assert!(skipped.iter().all(|l| l.contains(",,,,")));

    let o = run(&[
        "table",
        "--alpha",
        "0.5",
        "--z-re=-0.5:0.5:3",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&o).lines().count(), 3);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["val_re"].is_number());
    }

    assert_eq!(
        run(&["table", "--alpha", "0.5", "--z-re", "0:1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn table_output_is_deterministic() {
    let args = [
        "table",
        "--alpha",
        "0.3+0.2i",
        "--z-re=-2:2:9",
        "--z-im=-1:1:5",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn selfcheck_modes() {
    let o = run(&["selfcheck"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .lines()
        .last()
        .unwrap()
        .ends_with("checks passed"));

    let o = run(&["selfcheck", "--filter", "jump", "--json"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o)
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["name"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert!(!names.is_empty());
    assert!(names.iter().all(|n| n.starts_with("jump/")));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["eval", "--alpha", "0.5", "--z", "1+xi"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["eval", "--alpha", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(
        run(&["eval", "--alpha", "0.5", "--z", "1"]).status.code(),
        Some(2)
    );
    // a starved series cap surfaces as a convergence failure
    let o = run(&[
        "eval",
        "--alpha",
        "0.5",
        "--z",
        "0.99",
        "--method",
        "series",
        "--set",
        "max_series_terms=5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
}

#[test]
fn side_and_method_flags() {
    let above = json(&run(&[
        "eval", "--alpha", "0.5", "--z", "2", "--side", "above",
    ]));
    let below = json(&run(&[
        "eval", "--alpha", "0.5", "--z", "2", "--side", "below",
    ]));
    let (a, b) = (value(&above), value(&below));
    assert!((a.0 - b.0).abs() < 1e-9 && (a.1 + b.1).abs() < 1e-9);
    for m in ["series", "appell", "hankel"] {
        let v = json(&run(&[
            "eval", "--alpha", "0.5", "--z", "0.25", "--method", m,
        ]));
        assert!(close(value(&v), (0.3057349303992964, 0.0), 1e-9), "{m}");
    }
    let v = json(&run(&[
        "eval",
        "--alpha=-3",
        "--z",
        "0.5",
        "--method",
        "closed",
    ]));
    assert_eq!(value(&v), (26.0, 0.0));
}

#[test]
fn config_precedence() {
    let dir = std::env::temp_dir().join(format!("fracpolylog-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "# test config\noutput_format = plain\ntarget_abs_err = 1e-6"
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let o = run(&["eval", "--alpha", "0.5", "--z", "0.25", "--config", p]);
    assert!(stdout(&o).starts_with("alpha "), "{}", stdout(&o));
    let o = run(&[
        "eval",
        "--alpha",
        "0.5",
        "--z",
        "0.25",
        "--config",
        p,
        "--set",
        "output_format=csv",
    ]);
    assert!(stdout(&o).starts_with("alpha_re,alpha_im,"));
    let o = run(&[
        "eval",
        "--alpha",
        "0.5",
        "--z",
        "0.25",
        "--config",
        p,
        "--set",
        "output_format=csv",
        "--format",
        "json",
    ]);
    assert!(stdout(&o).starts_with('{'));

    let from_env = Command::new(env!("CARGO_BIN_EXE_fracpolylog"))
        .args(["eval", "--alpha", "0.5", "--z", "0.25"])
        .env("FRACPOLYLOG_CONFIG", p)
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&from_env.stdout).starts_with("alpha "));

    std::fs::write(&path, "tolerance = 3\n").unwrap();
    let o = run(&["eval", "--alpha", "0.5", "--z", "0.25", "--config", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown config key"));
    assert_eq!(
        run(&[
            "eval",
            "--alpha",
            "0.5",
            "--z",
            "0.25",
            "--config",
            "/nonexistent/cfg"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "eval",
            "--alpha",
            "0.5",
            "--z",
            "0.25",
            "--set",
            "target_abs_err=-1"
        ])
        .status
        .code(),
        Some(1)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
