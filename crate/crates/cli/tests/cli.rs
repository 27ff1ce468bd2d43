use std::io::Write;
use std::process::{Command, Output, Stdio};

const SAMPLE: &str = "p cnf 4 3\n1 2 -3 0\n-1 2 4 0\n-2 3 4 0\n";
const UNSAT: &str = "p cnf 3 8\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n-1 -2 3 0\n\
                     1 2 -3 0\n-1 2 -3 0\n1 -2 -3 0\n-1 -2 -3 0\n";

fn domred(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_domred"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn without_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("elapsed_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn reduced(kind: &str) -> String {
    let o = domred(&["reduce", "--kind", kind, "-"], Some(SAMPLE));
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn reduce_writes_graph_and_role_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("sample.cnf");
    std::fs::write(&cnf, SAMPLE).unwrap();
    let out = dir.path().join("out.graph");
    let o = domred(
        &[
            "reduce",
            "--kind",
            "bondage",
            cnf.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vertices 30 edges 41\n");
    let graph = std::fs::read_to_string(&out).unwrap();
    assert!(graph.starts_with("p graph 30 41\n"));
    let roles = std::fs::read_to_string(dir.path().join("out.graph.roles")).unwrap();
    assert_eq!(roles.lines().count(), 30);
    assert!(roles.lines().any(|l| l == "c1 clause"));
}

#[test]
fn gamma_prints_value_and_witness() {
    let o = domred(&["gamma", "-"], Some(&reduced("bondage")));
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "gamma 9");
    assert!(lines[1].starts_with("witness "));
    assert_eq!(lines[1].split_whitespace().count(), 10);
}

#[test]
fn gamma_t_lists_all_sets() {
    let o = domred(
        &["gamma-t", "--all", "-"],
        Some("p graph 4 4\nv a\nv b\nv c\nv d\ne a b\ne b c\ne c d\ne d a\n"),
    );
    assert_eq!(
        stdout(&o).lines().take(2).collect::<Vec<_>>(),
        ["gamma_t 2", "sets 4"]
    );
}

#[test]
fn perturbation_subcommands() {
    let o = domred(&["bondage", "-"], Some(&reduced("bondage")));
    assert_eq!(stdout(&o), "b 1\ngamma 9\nedge s1 s2\n");
    let o = domred(
        &["total-bondage", "-"],
        Some("p graph 4 3\nv a\nv b\nv c\nv d\ne a b\ne a c\ne a d\n"),
    );
    assert_eq!(stdout(&o), "b_t undefined\ngamma_t 2\n");
    let o = domred(
        &["reinforcement", "--max-k", "all", "-"],
        Some("p graph 3 2\nv a\nv b\nv c\ne a b\ne b c\n"),
    );
    assert_eq!(stdout(&o), "r 0\ngamma 1\n");
    let o = domred(
        &["total-reinforcement", "--max-k", "1", "-"],
        Some(&reduced("total-reinforcement")),
    );
    assert!(stdout(&o).starts_with("r_t 1\ngamma_t 10\nedge "));
}

#[test]
fn sat_reports_model_or_unsat() {
    let o = domred(&["sat", "-"], Some(SAMPLE));
    let text = stdout(&o);
    assert!(text.starts_with("s SATISFIABLE\nv "));
    assert!(text.trim_end().ends_with(" 0"));
    let o = domred(&["sat", "-"], Some(UNSAT));
    assert_eq!(stdout(&o), "s UNSATISFIABLE\n");
    assert!(o.status.success());
}

#[test]
fn verify_json_report_passes() {
    let o = domred(
        &["verify", "--kind", "reinforcement", "-", "--json"],
        Some(SAMPLE),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["kind"], "reinforcement");
    assert_eq!(v["gamma"], 9);
    assert_eq!(v["perturbation"], "1");
    assert!(v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn verify_unsat_control_passes_with_deep_checks() {
    for kind in [
        "bondage",
        "total-bondage",
        "reinforcement",
        "total-reinforcement",
    ] {
        let o = domred(&["verify", "--kind", kind, "--deep", "-"], Some(UNSAT));
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
        assert!(stdout(&o).contains(" sat=false "));
    }
}

#[test]
fn identical_invocations_give_identical_output() {
    let args = ["verify", "--kind", "total-bondage", "--deep", "-"];
    let a = stdout(&domred(&args, Some(SAMPLE)));
    let b = stdout(&domred(&args, Some(SAMPLE)));
    assert_eq!(without_timing(&a), without_timing(&b));

    let fuzz = |jobs: &str| {
        let o = domred(
            &[
                "fuzz", "--kind", "bondage", "--seed", "5", "--trials", "12", "-n", "3", "-m", "6",
                "--jobs", jobs, "--json",
            ],
            None,
        );
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    let one = fuzz("1");
    assert_eq!(one, fuzz("4"));
    assert_eq!(one["summary"]["trials"], 12);
    assert_eq!(one["summary"]["failed"], 0);
}

#[test]
fn fuzz_text_output() {
    let o = domred(
        &[
            "fuzz",
            "--kind",
            "reinforcement",
            "--trials",
            "3",
            "-n",
            "4",
            "-m",
            "5",
        ],
        None,
    );
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("trial ")).count(), 3);
    assert!(
        text.ends_with("summary trials=3 passed=3 failed=0 sat=3\n"),
        "{text}"
    );
}

#[test]
fn export_dot() {
    let o = domred(&["export-dot", "-"], Some("p graph 2 1\nv a\nv b\ne a b\n"));
    assert_eq!(
        stdout(&o),
        "graph {\n  \"a\";\n  \"b\";\n  \"a\" -- \"b\";\n}\n"
    );
}

#[test]
fn errors_exit_two_with_prefix() {
    let cases: [(&[&str], Option<&str>); 6] = [
        (&["gamma", "/nonexistent/graph"], None),
        (&["gamma", "-"], Some("p graph 2 1\nv a\nv b\ne a a\n")),
        (&["sat", "-"], Some("p cnf 3 1\n1 2 0\n")),
        (&["verify", "--kind", "sideways", "-"], Some(SAMPLE)),
        (
            &["verify", "--kind", "bondage", "--json", "--text", "-"],
            Some(SAMPLE),
        ),
        (&["fuzz", "--kind", "bondage", "-n", "2"], None),
    ];
    for (args, input) in cases {
        let o = domred(args, input);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}: {}", stderr(&o));
    }
    let o = domred(
        &["total-bondage", "-"],
        Some("p graph 3 1\nv a\nv b\nv c\ne a b\n"),
    );
    assert_eq!(o.status.code(), Some(2));
}
