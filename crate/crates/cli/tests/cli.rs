use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str], recipe: Option<&str>, policy: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chernforge"));
    cmd.env_remove("CHERNFORGE_POLICY");
    if let Some(p) = policy {
        cmd.env("CHERNFORGE_POLICY", p);
    }
    let mut file = None;
    if let Some(text) = recipe {
        let mut f = tempfile();
        f.1.write_all(text.as_bytes()).unwrap();
        cmd.arg("eval").arg(&f.0);
        file = Some(f);
    }
    let out = cmd.args(args).output().unwrap();
    if let Some((path, _)) = file {
        let _ = std::fs::remove_file(path);
    }
    out
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "chernforge-cli-{}-{}.recipe",
        std::process::id(),
        N.fetch_add(1, Ordering::Relaxed)
    ));
    let f = std::fs::File::create(&path).unwrap();
    (path, f)
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[], Some("emit k3_family(2)"), None).status.code(), Some(0));
    assert_eq!(run(&[], Some("emit k3_famly(2)"), None).status.code(), Some(2));
    assert_eq!(run(&[], Some("emit blowup(k3_family(1), -2)"), None).status.code(), Some(1));
    assert_eq!(run(&[], Some("emit twistor(catalog(3))"), None).status.code(), Some(3));
    assert_eq!(run(&["eval", "/nonexistent/x.recipe"], None, None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None, None).status.code(), Some(2));
}

#[test]
fn policy_from_environment() {
    let text = "emit twistor(catalog(3))";
    assert_eq!(run(&[], Some(text), Some("assume")).status.code(), Some(0));
    assert_eq!(run(&["--policy", "known"], Some(text), Some("assume")).status.code(), Some(3));
}

#[test]
fn json_lines_per_emit() {
    let out = run(&["--json"], Some("emit k3_family(1)\nemit cp3_ac(1)\n"), None);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["c1c2"], 48);
    assert_eq!(lines[0]["kahler_type"], "yes");
    assert_eq!(lines[1]["c1_cubed"], 8);
    assert_eq!(lines[1]["schema_version"], 1);
}

#[test]
fn realize_and_threshold() {
    let out = run(&["realize", "--m", "1", "--n", "0", "--ntilde", "-6", "--json"], None, None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k"], 14);
    assert_eq!(v["l"], 6);
    let out = run(&["realize", "--m", "1", "--n", "0", "--ntilde", "-5"], None, None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-6"));
    let out = run(
        &["threshold", "--a3", "1", "--a2b", "4", "--ab2", "16", "--b3", "64", "--ap1", "4", "--bp1", "16", "--betti-sum", "4", "--json"],
        None,
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.to_string().contains('5'), "{v}");
}
