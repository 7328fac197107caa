use pcf_cli::{run, Outcome};
use serde_json::Value;

fn pcf(args: &[&str]) -> Outcome {
    pcf_stdin(args, "")
}

fn pcf_stdin(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("pcf").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = pcf(&all);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn reduce_example() {
    let out = pcf(&["reduce", "[0,-2,0,2,0,3,0,5]"]);
    assert_eq!(out, Outcome { code: 0, stdout: "[0,8]\n".into(), stderr: String::new() });
    assert_eq!(pcf(&["reduce", "[3,0,-3,4; 0,1,0,-5]"]).stdout, "[; 0,-4]\n");
}

#[test]
fn classify_p1() {
    let out = pcf(&["classify", "[1; 2]"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("behavior: convergent"), "{}", out.stdout);
    assert!(out.stdout.contains("limit: sqrt(2) ~ 1.41421356"), "{}", out.stdout);
    let v = json(&["classify", "[1; 2]"]);
    assert_eq!(v["behavior"], "convergent");
    assert_eq!(v["limit"]["exact"], "sqrt(2)");
}

#[test]
fn limits_quasiconvergent_family() {
    let v = json(&["limits", "[; 1/2, 0, -2]"]);
    assert_eq!(v["behavior"], "strictly_quasiconvergent");
    let limits: Vec<&str> = v["residues"].as_array().unwrap().iter().map(|r| r["limit"]["exact"].as_str().unwrap()).collect();
    assert_eq!(limits, ["1/2", "-2", "-2"]);
    let text = pcf(&["limits", "[; 1/2, 0, -2]"]).stdout;
    assert!(text.contains("j=1: 1/2 ~ 0.5") && text.contains("(heavy)"), "{text}");
}

#[test]
fn p5_literal() {
    let lit = "[442+312*sqrt(2); -298532+211094*sqrt(2), 884+624*sqrt(2)]";
    let v = json(&["matrix", lit]);
    assert_eq!(v["matrix"][1][0], "-298532+211094*sqrt(2)");
    assert_eq!(v["det"], "1");
    let v = json(&["--precision", "64", "classify", lit]);
    assert_eq!(v["limit"]["decimal"].as_str().unwrap(), "1.847759065022573512");
    let chars = pcf(&["chars", lit]).stdout;
    assert!(chars.contains("product = 1, det = 1, units: true"), "{chars}");
}

#[test]
fn group_operations() {
    assert_eq!(pcf(&["star", "[1; 2]", "[2; -2, 4]"]).stdout, pcf(&["reduce", "[1; 3,-2,3]"]).stdout);
    assert_eq!(pcf(&["star", "[1,2]", "[3]"]).stdout, "[1,2,3]\n");
    let inv = pcf(&["inverse", "[1; 2]"]).stdout;
    assert!(inv.starts_with("dual: [1,0; -2]\n"), "{inv}");
    // [c1..cn]^-1 = [0, -cn, ..., -c1, 0]
    assert_eq!(pcf(&["inverse", "[1,2,3]"]).stdout, "[0,-3,-2,-1,0]\n");
    assert_eq!(pcf(&["equiv", "[1,0,2]", "[3]"]).stdout, "equivalent\n");
    assert!(pcf(&["equiv", "[1; 2]", "[1; 2, 2]"]).stdout.starts_with("not equivalent"));
}

#[test]
fn quad_and_roots() {
    assert_eq!(pcf(&["quad", "[1; 2]"]).stdout, pcf(&["quad", "[[1,2],[1,1]]"]).stdout);
    let v = json(&["roots", "poly(1,0,-2)"]);
    assert_eq!(v["kind"], "TwoRoots");
    let r: Vec<&str> = v["roots"].as_array().unwrap().iter().map(|x| x["exact"].as_str().unwrap()).collect();
    assert_eq!(r, ["sqrt(2)", "-sqrt(2)"]);
    let v = json(&["roots", "poly(0,0,5)"]);
    assert_eq!(v["kind"], "DoubleRoot");
}

#[test]
fn eval_convergents() {
    let out = pcf(&["--precision", "40", "eval", "-n", "3", "[1; 2]"]);
    assert_eq!(out.stdout, "C_1 = 1\nC_2 = 1.5\nC_3 = 1.4\n");
}

#[test]
fn kernel_checks() {
    let out = pcf(&["kernel-check", "--exceptions"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 7);
    assert!(out.stdout.lines().all(|l| l.ends_with(" identity")), "{}", out.stdout);
    let v = json(&["kernel-check", "--amalgam"]);
    assert_eq!(v["all_pass"], true);
    let v = json(&["kernel-check", "[1,-1,1,-1,1,-1]"]);
    assert_eq!(v["verdict"], "negative_identity");
    let v = json(&["kernel-check", "--variant", "four", "1+i"]);
    assert_eq!(v["verdict"], "identity");
}

#[test]
fn stdin_input() {
    let out = pcf_stdin(&["reduce"], "\n  [0,-2,0,2,0,3,0,5]\n");
    assert_eq!(out.stdout, "[0,8]\n");
    assert_eq!(pcf_stdin(&["classify", "-"], "[1; 2]").code, 0);
    assert_eq!(pcf_stdin(&["reduce"], "").code, 1);
}

#[test]
fn exit_codes() {
    let bad = pcf(&["reduce", "[1, 2"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.starts_with("error: parse error at byte"), "{}", bad.stderr);
    assert_eq!(bad.stderr.lines().count(), 1);
    let mixed = pcf(&["reduce", "[sqrt(2), sqrt(3)]"]);
    assert_eq!(mixed.code, 1);
    assert!(mixed.stderr.contains("byte 10"), "{}", mixed.stderr);
    assert_eq!(pcf(&["reduce", "[1; ]"]).code, 1);
    assert_eq!(pcf(&["frobnicate"]).code, 1);
    assert_eq!(pcf(&["--help"]).code, 0);
    let dom = pcf(&["kernel-check", "--variant", "inverse", "0"]);
    assert_eq!(dom.code, 2, "{:?}", dom);
    assert_eq!(pcf(&["classify", "[1,2,3]"]).code, 1);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        ["--json", "limits", "[; 1/2, 0, -2]"],
        ["--json", "chars", "[2; -2, 4]"],
        ["--json", "classify", "[3; 1, 1, 1]"],
    ] {
        let a = pcf(&args).stdout;
        let b = pcf(&args).stdout;
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert!(v.is_object());
    }
}
