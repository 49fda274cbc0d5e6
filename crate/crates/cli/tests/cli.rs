use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn charp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ring_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = charp(&a);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")),
    )
}

#[test]
fn documented_examples() {
    let f7 = corpus("fermat7.ring");
    let f2 = corpus("fermat2.ring");
    assert_eq!(charp(&["member", "--ring", &f7, "z^2", "x,y"]).0, 1);

    let (code, v) = json(&["fclosure", "--ring", &f2, "x,y"]);
    assert_eq!(code, 0);
    let certs = v["result"]["certificates"].as_array().unwrap();
    assert!(certs.iter().any(|c| c["element"] == "z^2" && c["e"] == 1));

    let (code, out, _) = charp(&[
        "verify-theorem",
        "tc4",
        "--ring",
        &f7,
        "--c",
        "x",
        "--r",
        "z^2",
        "--ideal",
        "x,y",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"));

    let (code, v) = json(&["hsl", "--ring", &f7]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["m0_lower"], 0);
    assert_eq!(v["result"]["stabilized"], true);
}

#[test]
fn report_layout() {
    let (_, v) = json(&["gb", "--ring", &corpus("regular2.ring"), "x^2, x*y"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "schema",
            "invocation",
            "spec",
            "spec_text",
            "budgets",
            "seed",
            "exit_code",
            "result",
            "timing_ms"
        ]
    );
    assert_eq!(v["schema"], 1);
    assert_eq!(v["budgets"]["t_max"], 4);
    assert_eq!(v["result"]["gb_size"], 2);

    let (_, v) = json(&["stability", "--ring", &corpus("fermat2.ring")]);
    let chain = &v["result"]["per_level"][0]["chain"];
    assert!(chain[1].as_array().unwrap().iter().any(|g| g == "z^2"));
}

#[test]
fn exit_code_discipline() {
    let f2 = corpus("fermat2.ring");
    // usage errors
    assert_eq!(charp(&["member", "z", "x"]).0, 2);
    assert_eq!(charp(&["frobnicate", "--ring", &f2]).0, 2);
    assert_eq!(charp(&["member", "--ring", &f2, "w^2", "x"]).0, 2);
    assert_eq!(charp(&["member", "--ring", &f2, "x^^2", "x"]).0, 2);
    assert_eq!(charp(&["hsl", "--ring", &f2, "--t-max", "0"]).0, 2);
    // success and negatives
    assert_eq!(charp(&["member", "--ring", &f2, "z^3", "x,y"]).0, 0);
    assert_eq!(charp(&["cech-zero", "--ring", &f2, "z^2"]).0, 1);
    assert_eq!(charp(&["cech-zero", "--ring", &f2, "x*z"]).0, 0);
    // budget exhausted
    assert_eq!(
        charp(&["fclosure", "--ring", &f2, "--e-max", "1", "x,y"]).0,
        3
    );
    let non_cm = ring_file("p = 3\nvars = x, y, z\nquotient = x*z, y*z\nframe = x + z, y\n");
    let nc = non_cm.path().to_str().unwrap();
    assert_eq!(
        charp(&["cech-zero", "--ring", nc, "1", "--k-max", "3"]).0,
        3
    );
    assert_eq!(charp(&["cech-zero", "--ring", nc, "z"]).0, 0);
    // refused for rings not asserted CM
    assert_eq!(charp(&["hsl", "--ring", nc]).0, 2);
    // a false test-element assertion shows up as a counterexample
    let (code, out, _) = charp(&[
        "verify-theorem",
        "tc4",
        "--ring",
        &f2,
        "--c",
        "1",
        "--r",
        "z^2",
        "--ideal",
        "x,y",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("COUNTEREXAMPLE"));
}

#[test]
fn empty_task_list() {
    let f = ring_file("p = 2\nvars = x, y\n");
    let (code, v) = json(&["run", "--ring", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tasks"], Value::Array(vec![]));
}

#[test]
fn task_exit_code_is_the_maximum() {
    let f = ring_file("p = 2\nvars = x, y\ntask = member x \"x\"\ntask = member y \"x\"\n");
    let (code, v) = json(&["run", "--ring", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["tasks"][0]["exit_code"], 0);
    assert_eq!(v["result"]["tasks"][1]["exit_code"], 1);
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn reports_replay_identically() {
    let f7 = corpus("fermat7.ring");
    let f2 = corpus("fermat2.ring");
    let r3 = corpus("regular3.ring");
    let cases: Vec<Vec<&str>> = vec![
        vec!["member", "--ring", &f7, "z^2", "x, y"],
        vec!["hsl", "--ring", &f2, "--t-max", "3"],
        vec!["stability", "--ring", &r3, "--c", "x"],
        vec![
            "verify-theorem",
            "tc4",
            "--ring",
            &f2,
            "--random",
            "6",
            "--seed",
            "11",
        ],
        vec!["run", "--ring", &f2],
    ];
    for args in cases {
        let (code, first) = json(&args);
        let saved = ring_file(&first.to_string());
        let (code2, again) = json(&["replay", saved.path().to_str().unwrap()]);
        assert_eq!(code, code2);
        assert_eq!(strip_timing(first), strip_timing(again), "{args:?}");
    }
}
