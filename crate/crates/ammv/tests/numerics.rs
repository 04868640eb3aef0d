use ammv::expr::{eval_expr, parse_expr};
use ammv::mp::{with_precision, Mp};
use ammv::numerics::{default_evaluator, EvalConfig, Evaluator};
use ammv::{Error, Real, Scalar, Word};

const FROZEN: &[(&str, &str)] = &[
    ("M(2)", "0.822467033424113218236207583323012594609474951"),
    ("-1/2*M(cb2)", "0.915965594177219015054603514932384110774149374"),
    ("-M(b1)", "0.693147180559945309417232121458176568075500134"),
    ("zeta(3)", "1.20205690315959428539973816151144999076498629"),
    ("Li4(1/2)", "0.517479061673899386330758161898862945622377475"),
    ("ImLi3((1+i)/2)", "0.57007740708876897819560975759007455106314581"),
    ("beta(3)", "0.968946146259369380483634845846918600069540268"),
    ("T(b1,2)", "-1.32960837945041884712150339876852716756259762"),
];

const PI2_12_LONG: &str =
    "0.82246703342411321823620758332301259460947495060339921886777911468500373520160043691681445";

fn frozen(t: &str) -> Mp {
    with_precision(400, || Mp::parse_decimal(t).unwrap())
}

fn check(text: &str, want: &str, digits: u32) -> f64 {
    let ev = default_evaluator();
    let v = eval_expr(ev, &parse_expr(text).unwrap(), digits).unwrap();
    let w = frozen(want);
    (v.value - w).abs().to_f64()
}

#[test]
fn frozen_values_at_30_digits() {
    for (t, w) in FROZEN {
        let d = check(t, w, 30);
        assert!(d < 1e-27, "{t}: {d:e}");
    }
}

#[test]
fn arctan_one() {
    let d = check("t(b1)", "-0.785398163397448309615660845819875721049292349", 40);
    assert!(d < 1e-37, "{d:e}");
}

#[test]
fn empty_index_is_one() {
    let ev = default_evaluator();
    let v = ev.eval_index(&"M()".parse().unwrap(), 20).unwrap();
    assert_eq!(v.to_f64(), 1.0);
    assert_eq!(v.err, 0.0);
}

#[test]
fn error_estimates_cover_the_truth() {
    let ev = default_evaluator();
    let v = ev.eval_index(&"M(2)".parse().unwrap(), 25).unwrap();
    let w = frozen(PI2_12_LONG);
    assert!((v.value.clone() - w).abs().to_f64() <= v.err.max(1e-30));
    assert!(v.meets(24));
}

#[test]
fn regularization_anchor() {
    let ev = default_evaluator();
    let a = ev.eval_index(&"M(b2,c1)".parse().unwrap(), 20).unwrap();
    assert!((a.to_f64() + 0.7739912).abs() < 1e-6);
}

#[test]
fn precision_above_limit_needs_override() {
    let ev = Evaluator::new(EvalConfig::default());
    let i = "M(2)".parse().unwrap();
    assert!(matches!(ev.eval_index(&i, 70), Err(Error::Budget(_))));
    let ev = Evaluator::new(EvalConfig { allow_high_precision: true, ..EvalConfig::default() });
    let v = ev.eval_index(&i, 70).unwrap();
    let w = frozen(PI2_12_LONG);
    assert!((v.value - w).abs().to_f64() < 1e-68);
}

#[test]
fn words_and_indices_agree() {
    let ev = default_evaluator();
    for t in ["M(2)", "M(b2,c1)", "M(cb1,1,c2)", "M(3,cb1)"] {
        let i = t.parse().unwrap();
        let (s, w) = ammv::words::p_map(&i).unwrap();
        let a = ev.eval_index(&i, 20).unwrap();
        let b = ev.eval_word(&w, 20).unwrap();
        let d = (a.value - b.value * Mp::from_i64(s)).abs().to_f64();
        assert!(d < 1e-17, "{t}: {d:e}");
        let (c, _) = ev.eval_word_via_cmzv(&w, 20).unwrap();
        let e = (ev.eval_word(&w, 20).unwrap().value - c.value).abs().to_f64();
        assert!(e < 1e-15, "{t} via cmzv: {e:e}");
    }
}

#[test]
fn divergent_words_are_rejected() {
    let ev = default_evaluator();
    let w: Word = "w+1^+1".parse().unwrap();
    assert!(ev.eval_word(&w, 20).is_err());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile_dir();
    let path = dir.join("values.cache");
    let ev = Evaluator::new(EvalConfig::default());
    let a = ev.eval_index(&"M(2,b1)".parse().unwrap(), 20).unwrap();
    ev.save_cache(&path).unwrap();
    let fresh = Evaluator::new(EvalConfig::default());
    assert!(fresh.load_cache(&path).unwrap() >= 1);
    let b = fresh.eval_index(&"M(2,b1)".parse().unwrap(), 20).unwrap();
    assert_eq!(a.value.to_fixed(20), b.value.to_fixed(20));
    std::fs::remove_dir_all(dir).ok();
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("ammv-num-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
