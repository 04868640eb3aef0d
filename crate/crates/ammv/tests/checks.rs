use std::collections::BTreeSet;

use ammv::checks::{catalogue, find, run_checks, suite, Suite};
use ammv::numerics::default_evaluator;

#[test]
fn ids_are_unique_and_suites_nonempty() {
    let all = catalogue();
    let ids: BTreeSet<&str> = all.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids.len(), all.len());
    for s in Suite::ALL {
        assert!(!suite(s).is_empty(), "{s}");
        assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
    }
    assert!(find("reg-w3: -0.7739912").is_some());
    for id in ["A1", "A2", "A3", "A4", "P1", "D1-symbolic"] {
        assert!(find(id).is_some(), "{id}");
    }
    assert!(find("no-such-check").is_none());
}

#[test]
fn products_and_parity_pass() {
    let ev = default_evaluator();
    let mut list = suite(Suite::Products);
    list.extend(suite(Suite::Parity));
    let res = run_checks(ev, &list, 20);
    assert_eq!(res.len(), list.len());
    for (r, c) in res.iter().zip(&list) {
        assert_eq!(r.id, c.id);
        assert!(r.pass, "{}", r.tsv());
    }
}
