use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bihole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihole"))
        .args(args)
        .output()
        .expect("spawn bihole")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bihole"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn bihole");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn sequence(o: &Output) -> Vec<usize> {
    stdout(o).split_whitespace().map(|w| w.parse().unwrap()).collect()
}

#[test]
fn alpha_tilde_values() {
    for (family, expected) in [("cycle,5", "3"), ("complete,4", "1"), ("path,3", "2"), ("petersen", "5")] {
        let o = bihole(&["alpha-tilde", "--family", family]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), expected, "{family}");
    }
}

#[test]
fn petersen_certificate() {
    let o = bihole(&["alpha-tilde", "--family", "petersen", "--certificate"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], 5);
    let levels = v["level_witnesses"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    for lw in levels {
        let s = lw["S"].as_array().unwrap();
        let mut sorted = s.clone();
        sorted.sort_by_key(|x| x.as_u64());
        assert_eq!(s, &sorted);
        assert_eq!(s.len() as u64, lw["s"].as_u64().unwrap());
    }
}

#[test]
fn input_sources_agree() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("c5.txt");
    std::fs::write(&zero, "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let one = dir.path().join("c5-one.txt");
    std::fs::write(&one, "5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
    let outputs = [
        bihole(&["alpha-tilde", "--edges", zero.to_str().unwrap()]),
        bihole(&["alpha-tilde", "--edges", one.to_str().unwrap(), "--one-based"]),
        bihole(&["alpha-tilde", "--graph6", "Dhc"]),
        with_stdin(&["alpha-tilde"], ">>graph6<<Dhc\n"),
    ];
    for o in &outputs {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(o).trim(), "3");
    }
}

#[test]
fn cycle_on_k4_is_hamiltonian() {
    let o = bihole(&["cycle", "--family", "complete,4", "--verify"]);
    assert!(o.status.success());
    let mut seq = sequence(&o);
    seq.sort();
    assert_eq!(seq, vec![0, 1, 2, 3]);
}

#[test]
fn path_on_k4_is_hamiltonian() {
    let o = bihole(&["path", "--family", "complete,4", "--from", "0", "--to", "3", "--verify"]);
    assert!(o.status.success());
    let seq = sequence(&o);
    assert_eq!((seq.len(), seq[0], seq[3]), (4, 0, 3));
}

#[test]
fn cycle_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("pet.dot");
    let o = bihole(&["cycle", "--family", "petersen", "--json", "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["threshold"], 5);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph {"));
    assert_eq!(text.matches("--").count(), 15);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bihole(args).status.code().unwrap();
    assert_eq!(code(&["cycle", "--family", "path,3"]), 2);
    assert_eq!(code(&["cycle", "--family", "empty,4"]), 2);
    assert_eq!(code(&["path", "--family", "path,3", "--from", "0", "--to", "2"]), 3);
    assert_eq!(code(&["path", "--family", "complete,4", "--from", "1", "--to", "1"]), 4);
    assert_eq!(code(&["path", "--family", "complete,4", "--from", "0", "--to", "9"]), 4);
    assert_eq!(code(&["alpha-tilde", "--graph6", "D~"]), 4);
    assert_eq!(code(&["alpha-tilde", "--family", "bogus"]), 4);
    assert_eq!(code(&["no-such-command"]), 4);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn disconnected_path_is_a_connectivity_error() {
    // two disjoint triangles
    let o = bihole(&["path", "--graph6", "EwCW", "--from", "0", "--to", "3"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn check_reports() {
    let o = bihole(&["check", "--family", "complete,4", "--conditions", "dirac,my"]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["conditions"]["dirac"]["holds"], true);
    assert_eq!(v["conditions"]["my"]["holds"], true);

    let v = json(&bihole(&["check", "--family", "cycle,5", "--conditions", "my"]));
    let my = &v["conditions"]["my"];
    assert_eq!(my["holds"], false);
    assert_eq!(my["parameters"]["min_degree"], 2);
    assert_eq!(my["parameters"]["alpha_tilde"], 3);

    let v = json(&bihole(&["check", "--family", "petersen", "--conditions", "zhou"]));
    assert_eq!(v["conditions"]["zhou"]["holds"], false);

    let o = bihole(&["check", "--family", "cycle,5", "--conditions", "nope"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dirac"));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--family", "petersen"];
    assert_eq!(bihole(&args).stdout, bihole(&args).stdout);
}

#[test]
fn sweep_examples() {
    let o = bihole(&["verify-sweep", "--enumerate", "4", "--properties", "alpha-oracle"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["graphs"], 64);
    assert_eq!(v["failures"], 0);

    let o = bihole(&["verify-sweep", "--enumerate", "5", "--properties", "thm4", "--jobs", "4"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["failures"], 0);
    // 2-connected labeled graphs on 5 vertices
    assert_eq!(v["properties"][0]["passed"], 238);

    let o = bihole(&["verify-sweep", "--random", "500,10,1/2,42", "--properties", "thm7"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["failures"], 0);
}

#[test]
fn sweep_is_independent_of_jobs() {
    let run = |jobs: &str| bihole(&["verify-sweep", "--random", "80,9,0.4,7", "--jobs", jobs]).stdout;
    assert_eq!(run("1"), run("3"));
}

#[test]
fn sweep_over_graph6_file_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("in.g6");
    std::fs::write(&file, "D~{\nDhc\nIheA@GUAo\n").unwrap();
    let dump = dir.path().join("dump.g6");
    let o = bihole(&[
        "verify-sweep",
        "--graph6-file",
        file.to_str().unwrap(),
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(json(&o)["graphs"], 3);
    assert_eq!(std::fs::read_to_string(&dump).unwrap(), "");
}

#[test]
fn sweep_errors() {
    let o = bihole(&["verify-sweep", "--enumerate", "4", "--properties", "nope"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha-oracle"));
    let o = bihole(&["verify-sweep", "--enumerate", "9"]);
    assert_eq!(o.status.code(), Some(4));
    let o = bihole(&["verify-sweep", "--random", "1,2,3"]);
    assert_eq!(o.status.code(), Some(4));
    let o = bihole(&["verify-sweep"]);
    assert_eq!(o.status.code(), Some(4));
}
