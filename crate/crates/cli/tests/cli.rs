//! End-to-end runs of the `moonshine` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(args)
        .env_remove("MOONSHINE_ELEMENT_CAP")
        .env_remove("MOONSHINE_IRREP_DIMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

#[test]
fn j_head() {
    assert_eq!(ok(&["j", "--order", "3"]), "-1 1\n0 744\n1 196884\n2 21493760\n");
    assert_eq!(ok(&["j", "--order", "0"]), "-1 1\n");
    assert!(ok(&["j", "--order", "3", "--normalized"]).lines().any(|l| l == "0 0"));
    let out = ok(&["j", "--order", "6"]);
    assert!(out.ends_with("4 20245856256\n5 333202640600\n"));
}

#[test]
fn eisenstein_coefficients() {
    assert_eq!(ok(&["eisenstein", "--weight", "4", "--order", "2"]), "0 1\n1 240\n");
    assert!(ok(&["eisenstein", "--weight", "6", "--order", "2"]).contains("1 -504\n"));
    // E_12 has rational coefficients: 65520/691 q
    assert!(ok(&["eisenstein", "--weight", "12", "--order", "2"]).contains("1 65520/691\n"));
    assert_eq!(run(&["eisenstein", "--weight", "2", "--order", "2"]).status.code(), Some(2));
    assert_eq!(run(&["eisenstein", "--weight", "5"]).status.code(), Some(2));
}

#[test]
fn delta_matches_eta_product() {
    let out = ok(&["delta", "--order", "30", "--verify"]);
    assert!(out.starts_with("1 1\n2 -24\n3 252\n"));
    assert!(out.ends_with("equal: true\n"));
}

#[test]
fn reduce_examples() {
    assert_eq!(ok(&["reduce", "--tau", "5,1"]), "0/1 1/1\nmatrix 1 -5 0 1\nword T^-5\n");
    assert_eq!(ok(&["reduce", "--tau", "0,1/2"]), "0/1 2/1\nmatrix 0 -1 1 0\nword S\n");
    let out = ok(&["reduce", "--tau", "7/3,1/5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(run(&["reduce", "--tau", "0,-1"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--tau", "nonsense"]).status.code(), Some(2));
}

#[test]
fn equivalence_and_lattices() {
    assert_eq!(ok(&["equiv", "--tau1", "0,2", "--tau2", "0,1/2"]), "equivalent: true\nmatrix 0 -1 1 0\n");
    assert_eq!(ok(&["equiv", "--tau1", "0,2", "--tau2", "0,3"]), "equivalent: false\n");
    let out = ok(&["lattice", "--w1", "1,0", "--w2", "0,1", "--v1", "1,1", "--v2", "0,1"]);
    assert!(out.contains("same: true\nchange 1 1 0 1"));
    let out = ok(&["lattice", "--w1", "1,0", "--w2", "0,1", "--v1", "2,0", "--v2", "0,1"]);
    assert!(out.contains("same: false"));
    let code = run(&["lattice", "--w1", "1,0", "--w2", "2,0", "--v1", "1,0", "--v2", "0,1"]).status.code();
    assert_eq!(code, Some(2));
}

#[test]
fn words() {
    assert_eq!(ok(&["word", "--matrix", "1,-5,0,1"]), "word T^-5\nmatrix 1 -5 0 1\n");
    // (ST)^3 = 1
    assert_eq!(ok(&["word", "--letters", "S T S T S T"]), "word 1\nmatrix 1 0 0 1\n");
    assert_eq!(ok(&["word", "--letters", "S S"]), "word 1\nmatrix 1 0 0 1\n");
    assert_eq!(run(&["word", "--matrix", "1,1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["word"]).status.code(), Some(2));
}

#[test]
fn groups() {
    assert_eq!(ok(&["group", "--name", "C12", "--action", "factors"]), "2 2 3\n");
    assert_eq!(ok(&["group", "--name", "D5", "--action", "factors"]), "2 5\n");
    assert_eq!(ok(&["group", "--name", "A5", "--action", "series"]), "chain 1 60\nfactors 60\n");
    assert_eq!(ok(&["group", "--name", "S4", "--action", "factors"]), "2 2 2 3\n");
    let normal = ok(&["group", "--name", "C12", "--action", "normal"]);
    assert_eq!(normal, "1\n2\n3\n4\n6\n12\n");
    let classes = ok(&["group", "--name", "A5", "--action", "classes"]);
    let sizes: Vec<u32> = classes.lines().map(|l| l.split(' ').next().unwrap().parse().unwrap()).collect();
    assert_eq!(sizes.iter().sum::<u32>(), 60);
    assert_eq!(sizes.len(), 5);
    assert!(ok(&["group", "--name", "D6", "--action", "census"]).contains("invariant: true"));
    assert_eq!(run(&["group", "--name", "Q8"]).status.code(), Some(2));
    assert_eq!(run(&["group", "--name", "C12", "--action", "bogus"]).status.code(), Some(2));
}

#[test]
fn element_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(["group", "--name", "S5"])
        .env("MOONSHINE_ELEMENT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("more than 100"));
    assert_eq!(ok(&["group", "--name", "S5", "--element-cap", "120"]), "2 60\n");
}

#[test]
fn mckay_without_and_with_extra_dimensions() {
    let out = ok(&["mckay"]);
    assert!(out.contains("c(2) 196884 = 1*r1 + 1*r2 = 196884 pass"));
    assert!(out.contains("c(5) 20245856256"));
    assert!(out.lines().any(|l| l.starts_with("c(6)") && l.contains("not-configured")));
    assert!(out.ends_with("all-configured-pass: true\n"));

    let dims = fixture("monster_irrep_dims_1_7.txt");
    let out = ok(&["mckay", "--irrep-dims", &dims]);
    assert_eq!(out.matches(" pass").count(), 5);
    assert!(!out.contains("not-configured"));

    let o = run(&["mckay", "--irrep-dims", &fixture("wrong_r6.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("c(6)") && l.ends_with("FAIL")));

    assert_eq!(run(&["mckay", "--irrep-dims", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["mckay", "--order", "2"]).status.code(), Some(2));
}

#[test]
fn knz() {
    assert_eq!(ok(&["knz", "--order", "2"]), "equal: true\n");
    assert_eq!(ok(&["knz", "--order", "0"]), "equal: true\n");
    let o = run(&["knz", "--order", "2", "--use-unnormalized-c0"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("equal: false\n"));
    assert!(out.contains("mismatch p^0 q^0 lhs -744 rhs 0"));
    assert_eq!(run(&["knz", "--order", "-1"]).status.code(), Some(2));
}

#[test]
fn facts() {
    let out = ok(&["facts"]);
    assert!(out.contains("order 808017424794512875886459904961710757005754368000000000\n"));
    assert!(out.contains("digits 54\n"));
    assert!(out.contains("conjugacy-classes 194\n"));
}

#[test]
fn json_mode_has_the_same_numbers() {
    let text = ok(&["j", "--order", "5"]);
    let json = ok(&["j", "--order", "5", "--json"]);
    for (t, j) in text.lines().zip(json.lines()) {
        let v: serde_json::Value = serde_json::from_str(j).unwrap();
        let (n, c) = t.split_once(' ').unwrap();
        assert_eq!(v["n"], n);
        assert_eq!(v["c"], c);
    }
    for line in ok(&["mckay", "--json"]).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.is_object());
    }
    let facts = ok(&["facts", "--json"]);
    let v: serde_json::Value = serde_json::from_str(facts.trim()).unwrap();
    assert_eq!(v["order"].as_str().unwrap().len(), 54);
}

#[test]
fn deterministic_output() {
    for args in [&["group", "--name", "S4", "--action", "classes"][..], &["knz", "--order", "3"], &["mckay", "--json"]] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["j", "--order", "x"]).status.code(), Some(2));
}
