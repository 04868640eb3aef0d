use num_bigint::BigInt;
use num_rational::BigRational;

use ammv::expr::{eval_expr, identity_residual, parse_expr};
use ammv::numerics::default_evaluator;
use ammv::relations::store::residual;
use ammv::relations::{
    basis_check, harvest, harvest_into, pslq, rank_and_dims, threshold, BasisFamily, RelationStore, Source,
};
use ammv::{Index, LinComb};

fn m(t: &str) -> Index {
    t.parse().unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn weight_one_bound_is_two() {
    let ev = default_evaluator();
    let mut store = RelationStore::new();
    harvest_into(ev, &mut store, 1, &Source::ALL, 25).unwrap();
    let r = rank_and_dims(1, &store);
    assert_eq!(r.bound, 2);
    assert_eq!(r.gap(), 0);
}

#[test]
fn weight_three_contains_regularization_relation() {
    let ev = default_evaluator();
    let mut store = RelationStore::new();
    let hs = harvest_into(ev, &mut store, 3, &Source::ALL, 25).unwrap();
    assert!(hs.iter().all(|h| h.rejected.is_empty()));
    let mut c = LinComb::new();
    c.add_term(m("M(c2,b1)"), q(1));
    c.add_term(m("M(cb2,cb1)"), q(1));
    c.add_term(m("M(b2,c1)"), q(-1));
    assert!(store.echelon(3).unwrap().contains(&c));
    let r = rank_and_dims(3, &store);
    assert_eq!(r.bound, 8);
    assert!(r.consistent());
}

#[test]
fn harvested_relations_are_sound() {
    let ev = default_evaluator();
    let h = harvest(ev, 3, &[Source::RegDbsf, Source::Duality], 22).unwrap();
    assert!(!h.accepted.is_empty());
    for r in &h.accepted {
        assert_eq!(r.weight, 3);
        assert!(residual(ev, r, 22).unwrap() < threshold(22), "{r}");
    }
}

#[test]
fn finite_dbsf_alone_is_weaker() {
    let ev = default_evaluator();
    let mut a = RelationStore::new();
    harvest_into(ev, &mut a, 3, &[Source::FiniteDbsf], 20).unwrap();
    let mut b = RelationStore::new();
    harvest_into(ev, &mut b, 3, &Source::ALL, 20).unwrap();
    assert!(a.rank(3) <= b.rank(3));
    assert!(rank_and_dims(3, &a).bound >= rank_and_dims(3, &b).bound);
}

#[test]
fn store_round_trip() {
    let ev = default_evaluator();
    let mut store = RelationStore::new();
    harvest_into(ev, &mut store, 2, &Source::ALL, 20).unwrap();
    let path = std::env::temp_dir().join(format!("ammv-store-{}.jsonl", std::process::id()));
    store.save(&path).unwrap();
    let back = RelationStore::load(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back.len(), store.len());
    assert_eq!(back.rank(2), store.rank(2));
    let a: Vec<String> = store.iter().map(|r| r.to_string()).collect();
    let b: Vec<String> = back.iter().map(|r| r.to_string()).collect();
    assert_eq!(a, b);
}

#[test]
fn pslq_recovers_regularization_relation() {
    let ev = default_evaluator();
    let vals: Vec<_> = ["M(c2,b1)", "M(cb2,cb1)", "M(b2,c1)"]
        .iter()
        .map(|t| eval_expr(ev, &parse_expr(t).unwrap(), 28).unwrap())
        .collect();
    let c = pslq(&vals, 25, 10).unwrap().unwrap();
    let want: Vec<BigInt> = [1, 1, -1].iter().map(|&x| x.into()).collect();
    let neg: Vec<BigInt> = want.iter().map(|x| -x).collect();
    assert!(c == want || c == neg, "{c:?}");
}

#[test]
fn pslq_zeta2() {
    let ev = default_evaluator();
    let vals: Vec<_> = ["zeta(2)", "pi^2"].iter().map(|t| eval_expr(ev, &parse_expr(t).unwrap(), 28).unwrap()).collect();
    let c = pslq(&vals, 25, 10).unwrap().unwrap();
    assert_eq!(c, vec![BigInt::from(6), BigInt::from(-1)]);
}

#[test]
fn pslq_finds_nothing_among_independent_constants() {
    let ev = default_evaluator();
    let vals: Vec<_> = ["pi", "log2", "G"].iter().map(|t| eval_expr(ev, &parse_expr(t).unwrap(), 33).unwrap()).collect();
    assert!(pslq(&vals, 30, 10).unwrap().is_none());
}

#[test]
fn low_weight_bases_are_independent() {
    let ev = default_evaluator();
    for (f, w) in [(BasisFamily::MB, 1), (BasisFamily::TLower, 2), (BasisFamily::TUpper, 2), (BasisFamily::SB, 2)] {
        let rep = basis_check(ev, f, w, 30, 10).unwrap();
        assert!(rep.independent(), "{f} weight {w}: {:?} {:?}", rep.joint, rep.pairwise);
        assert!(rep.reductions_hold(1e-12), "{f} weight {w}");
    }
}

#[test]
fn lower_t_weight_three_reductions() {
    let ev = default_evaluator();
    let rep = basis_check(ev, BasisFamily::TLower, 3, 30, 10).unwrap();
    for r in &rep.reductions {
        assert!(r.residual < 1e-12, "{} = {}: {:e}", r.lhs, r.rhs, r.residual);
    }
    let (_, d) = identity_residual(ev, "tt(b2,b1)", "1/4*pi^2*log2 - 7/4*zeta(3)", 20).unwrap();
    assert!(d < 1e-12);
}

#[test]
fn basis_weight_cap() {
    assert!(BasisFamily::MB.members(4).is_err());
    assert_eq!(BasisFamily::MB.members(3).unwrap().len(), 8);
    assert_eq!("tB".parse::<BasisFamily>().unwrap(), BasisFamily::TLower);
}
