use std::path::Path;
use std::process::{Command, Output};

use ammv::relations::RelationStore;

fn ammv(args: &[&str]) -> Output {
    ammv_env(args, None)
}

fn ammv_env(args: &[&str], config: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ammv"));
    c.args(args).env_remove("AMMV_CONFIG");
    if let Some(p) = config {
        c.env("AMMV_CONFIG", p);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_zeta2_over_two() {
    let o = ammv(&["eval", "M(2)", "--digits", "30"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("M(2)\t0.822467033424113218236207583323\t"), "{}", stdout(&o));
}

#[test]
fn eval_arctan_one() {
    let o = ammv(&["eval", "t(b1)", "--digits", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\t-0.78539816339744830962\t"), "{}", stdout(&o));
}

#[test]
fn eval_empty_index_is_one() {
    let o = ammv(&["eval", "M()"]);
    assert!(o.status.success());
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let v: f64 = row.split('\t').nth(1).unwrap().parse().unwrap();
    assert_eq!(v, 1.0);
}

#[test]
fn eval_show_word() {
    let o = ammv(&["eval", "M(b2,c1)", "--digits", "20", "--show-word"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("-0.77399120107887115233"), "{s}");
    assert!(s.contains("word\t-1\tw0 w-1^-1 w-1^-1"), "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("cmzv\t")).count(), 4);
}

#[test]
fn eval_word_text() {
    let o = ammv(&["eval", "w0 w-1^+1", "--digits", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = ammv(&["eval", "M(b2)", "--digits", "20"]);
    let val = |s: String| s.lines().nth(1).unwrap().split('\t').nth(1).unwrap().to_string();
    let (a, b) = (val(stdout(&o)), val(stdout(&m)));
    assert!(a == b || a.trim_start_matches('-') == b.trim_start_matches('-'), "{a} vs {b}");
}

#[test]
fn parse_error_exits_two_with_position() {
    let o = ammv(&["eval", "M(2,q)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error at 4"), "{}", stderr(&o));
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(ammv(&["eval"]).status.code(), Some(2));
    assert_eq!(ammv(&["product", "--kind", "concat", "M(1)", "M(2)"]).status.code(), Some(2));
}

#[test]
fn high_precision_is_a_budget_error() {
    let o = ammv(&["eval", "M(2)", "--digits", "80"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn product_shuffle_two_terms() {
    let o = ammv(&["product", "--kind", "shuffle", "M(cb1)", "M(cb2)"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("-1\tM(b1,c2)"), "{s}");
    assert!(s.contains("-2\tM(b2,c1)"), "{s}");
    assert_eq!(s.lines().count(), 3);
}

#[test]
fn product_stuffle() {
    let o = ammv(&["product", "--kind", "stuffle", "M(2)", "M(2)"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("2\tM(2,2)"), "{s}");
    assert!(s.contains("2\tM(4)"), "{s}");
}

#[test]
fn dual_three_terms() {
    let o = ammv(&["dual", "M(2,c1,cb2)", "--digits", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("# M(2,c1,cb2) = M(cb1,b1,c3) + M(b1,cb1,1,c2) + M(cb1,b1,c1,c2)"), "{s}");
    assert!(s.contains("duality\t") && s.contains("\tPASS\t"), "{s}");
}

#[test]
fn dbsf_and_reg_append_to_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("rel.jsonl");
    let st = store.to_str().unwrap();
    let o = ammv(&["dbsf", "M(b1)", "M(cb1)", "--digits", "20", "--out", st]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = ammv(&["reg", "M(c1)", "M(b2)", "--digits", "20", "--out", st]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("reg-dbsf"), "{}", stdout(&o));
    let loaded = RelationStore::load(&store).unwrap();
    assert!(loaded.len() >= 2);
    assert!(loaded.weights().any(|w| w == 2));
    assert!(loaded.weights().any(|w| w == 3));
}

#[test]
fn dims_weight_one() {
    let o = ammv(&["dims", "--weight", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("1\tAMMV\t2\t2\t2\t0"), "{}", stdout(&o));
}

#[test]
fn dims_weight_cap() {
    let o = ammv(&["dims", "--weight", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dims_weight_two_from_config_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.jsonl");
    let cfg = dir.path().join("ammv.toml");
    std::fs::write(&cfg, format!("digits = 25\nstore = {:?}\n", store.to_str().unwrap())).unwrap();
    let o = ammv_env(&["dims", "--weight", "2"], Some(&cfg));
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("# digits\t25"), "{s}");
    assert!(s.contains("2\tAMMV\t12\t4\t4\t0"), "{s}");
    let loaded = RelationStore::load(&store).unwrap();
    assert_eq!(loaded.rank(2), 8);
}

#[test]
fn config_sets_default_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ammv.toml");
    std::fs::write(&cfg, "digits = 12\n").unwrap();
    let o = ammv_env(&["eval", "pi"], Some(&cfg));
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("pi\t3.141592653590\t"), "{}", stdout(&o));
    let o = ammv_env(&["eval", "pi", "--digits", "5"], Some(&cfg));
    assert!(stdout(&o).contains("pi\t3.14159\t"), "{}", stdout(&o));
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ammv.toml");
    std::fs::write(&cfg, "digits = 0\n").unwrap();
    assert_eq!(ammv_env(&["eval", "pi"], Some(&cfg)).status.code(), Some(2));
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(ammv_env(&["eval", "pi"], Some(&cfg)).status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.cache");
    let cfg = dir.path().join("ammv.toml");
    std::fs::write(&cfg, format!("cache = {:?}\n", cache.to_str().unwrap())).unwrap();
    let a = ammv_env(&["eval", "M(2,b1)", "--digits", "20"], Some(&cfg));
    assert!(a.status.success(), "{}", stderr(&a));
    assert!(cache.exists());
    let b = ammv_env(&["eval", "M(2,b1)", "--digits", "20"], Some(&cfg));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn pslq_recovers_zeta2() {
    let o = ammv(&["pslq", "zeta(2)", "pi^2", "--digits", "25"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("zeta(2)\t6") && s.contains("pi^2\t-1"), "{s}");
}

#[test]
fn basis_tb2_independent() {
    let o = ammv(&["basis", "--family", "tB", "--weight", "2", "--digits", "30"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("joint\tall\tnone"));
}

#[test]
fn verify_regularization_suite() {
    let o = ammv(&["verify-paper", "--suite", "regularization", "--digits", "20"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("reg-w3: -0.7739912\tregularization\tPASS"), "{s}");
    assert!(s.contains("# tol override\treg-w3: -0.7739912\t1e-6"), "{s}");
}

#[test]
fn verify_arctan_suite() {
    let o = ammv(&["verify-paper", "--suite", "arctan", "--digits", "20", "--jobs", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    for id in ["A1", "A2", "A3", "A4"] {
        assert!(s.contains(&format!("\n{id}\tarctan\tPASS")), "{id}: {s}");
    }
}

#[test]
fn verify_all_is_deterministic_and_passes() {
    let strip = |s: String| -> Vec<String> {
        s.lines().map(|l| {
            let mut f: Vec<&str> = l.split('\t').collect();
            if f.len() == 7 {
                f[5] = "";
            }
            f.join("\t")
        }).collect()
    };
    let a = ammv(&["verify-paper", "--suite", "all", "--digits", "20"]);
    assert!(a.status.success(), "{}", stdout(&a));
    let b = ammv(&["verify-paper", "--suite", "all", "--digits", "20", "--jobs", "1"]);
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
    assert!(stdout(&a).contains("# 133 of 133 passed"));
}

#[test]
fn unknown_suite_exits_two() {
    assert_eq!(ammv(&["verify-paper", "--suite", "nope"]).status.code(), Some(2));
}
