use std::io::Write;
use std::process::{Command, Output};

fn graphbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn seq_bell_prefix() {
    let o = graphbell(&["seq", "--kind", "bell", "--n", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1,1,2,5,15,52,203\n");
}

#[test]
fn seq_formats() {
    let o = graphbell(&["seq", "--kind", "two-bell", "--n", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["values"],
        serde_json::json!(["1", "3", "10", "37", "151", "674"])
    );
    let o = graphbell(&["seq", "--kind", "stirling2", "--n", "4", "--csv"]);
    assert_eq!(stdout(&o), "k,value\n0,0\n1,1\n2,7\n3,6\n4,1\n");
    let o = graphbell(&["seq", "--kind", "avg-blocks", "--n", "3"]);
    assert_eq!(stdout(&o), "1/1,3/2,2/1\n");
}

#[test]
fn compute_cycle5() {
    let o = graphbell(&["compute", "--family", "cycle:5", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(
        v["counts"],
        serde_json::json!(["0", "0", "0", "5", "5", "1"])
    );
    assert_eq!(v["b"], "11");
    assert_eq!(v["t"], "40");
    assert_eq!(v["a"], "40/11");
}

#[test]
fn no_memo_gives_identical_output() {
    for fam in ["h:5,2,1", "cycle:9,2", "caterpillar:8,3"] {
        let a = graphbell(&["compute", "--family", fam, "--json"]);
        let b = graphbell(&["compute", "--family", fam, "--json", "--no-memo"]);
        assert_eq!(a.stdout, b.stdout, "{fam}");
    }
}

#[test]
fn family_uses_closed_form_and_agrees() {
    let f = graphbell(&["family", "--family", "h:5,2,1", "--json"]);
    let c = graphbell(&["compute", "--family", "h:5,2,1", "--json"]);
    let f: serde_json::Value = serde_json::from_slice(&f.stdout).unwrap();
    let c: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(f["method"], "closed_form");
    assert!(f["counts"].is_null());
    for key in ["n", "b", "t", "a"] {
        assert_eq!(f[key], c[key], "{key}");
    }
}

#[test]
fn edge_list_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# five-cycle\n5 5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
    let o = graphbell(&["compute", "--edges", file.path().to_str().unwrap(), "--csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "n,b,t,a,method,counts\n5,11,40,40/11,deletion_contraction,\"0,0,0,5,5,1\"\n"
    );

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "3 2\n0 1\n1 1").unwrap();
    let o = graphbell(&["compute", "--edges", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn large_graph_warns() {
    let o = graphbell(&["compute", "--family", "path:22"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn verify_i1_fifty_rows() {
    let o = graphbell(&["verify", "--id", "I1", "--n-max", "50", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[3]["lhs"], "225");
    assert_eq!(rows[3]["rhs"], "260");
    assert_eq!(rows[3]["margin"], "35");
}

#[test]
fn verify_with_jobs_is_deterministic() {
    let a = graphbell(&[
        "verify", "--id", "C17", "--n-max", "20", "--p-max", "3", "--csv", "--jobs", "1",
    ]);
    let b = graphbell(&[
        "verify", "--id", "C17", "--n-max", "20", "--p-max", "3", "--csv", "--jobs", "4",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn explore_does_not_change_exit_status() {
    let o = graphbell(&["verify", "--id", "I3", "--n-max", "10", "--explore"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("I3 n=3 p=0"));
    assert!(!stdout(&o).contains("n=3 "));
}

#[test]
fn exit_codes() {
    assert_eq!(
        graphbell(&["verify", "--id", "NOPE", "--n-max", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        graphbell(&["verify", "--id", "I1", "--n-max", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(graphbell(&["compute"]).status.code(), Some(1));
    assert_eq!(
        graphbell(&["seq", "--kind", "bell", "--n", "5", "--json", "--csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        graphbell(&["family", "--family", "complete:0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        graphbell(&["verify", "--id", "I1", "--n-max", "5000"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(graphbell(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_json_is_byte_identical() {
    let a = graphbell(&["selftest", "--seed", "7", "--json"]);
    let b = graphbell(&["selftest", "--seed", "7", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert!(v["checks"].as_array().unwrap().len() > 10);
}
