use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ammv::algebra::{shuffle, shuffle_indices, stuffle, Provenance, Relation};
use ammv::mp::with_precision;
use ammv::numerics::{default_evaluator, eval_lincomb};
use ammv::relations::harvest::duality_words;
use ammv::relations::{duality_relation, store::residual};
use ammv::words::{dual_word, p_map_any, q_map_any, words_to_indices};
use ammv::{Index, LinComb, Real, Word};

fn letter() -> impl Strategy<Value = ammv::Letter> {
    prop::sample::select(ammv::Letter::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word)
}

fn index(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    let comp = (1..=max_part, prop::sample::select(vec![1i64, -1]), prop::sample::select(vec![1i64, -1]));
    prop::collection::vec(comp, 0..=max_depth).prop_map(|t| Index::from_triples(&t))
}

fn admissible(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    index(max_depth, max_part).prop_filter("admissible", |i| i.is_admissible())
}

fn dual_domain() -> impl Strategy<Value = Word> {
    prop::sample::select((1..=4).flat_map(duality_words).collect::<Vec<_>>())
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn coefficient_sum<B: Ord + Clone>(c: &LinComb<B>) -> BigRational {
    c.iter().fold(BigRational::zero(), |acc, (_, k)| acc + k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffle_commutes(u in word(3), v in word(3)) {
        prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
    }

    #[test]
    fn shuffle_associates(u in word(2), v in word(2), w in word(2)) {
        let left = LinComb::product(&shuffle(&u, &v), &LinComb::basis(w.clone()), shuffle);
        let right = LinComb::product(&LinComb::basis(u.clone()), &shuffle(&v, &w), shuffle);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_is_graded_and_counts_binomially(u in word(4), v in word(4)) {
        let s = shuffle(&u, &v);
        for (x, _) in s.iter() {
            prop_assert_eq!(x.len(), u.len() + v.len());
        }
        let total = coefficient_sum(&s);
        prop_assert_eq!(total, BigRational::from_integer(binomial(u.len() + v.len(), u.len())));
    }

    #[test]
    fn stuffle_commutes_and_preserves_weight(i in index(3, 3), j in index(3, 3)) {
        let s = stuffle(&i, &j);
        prop_assert_eq!(&s, &stuffle(&j, &i));
        for (x, _) in s.iter() {
            prop_assert_eq!(x.weight(), i.weight() + j.weight());
            prop_assert!(x.depth() <= i.depth() + j.depth());
            prop_assert!(x.depth() >= i.depth().max(j.depth()));
        }
    }

    #[test]
    fn stuffle_associates(i in index(2, 2), j in index(2, 2), k in index(2, 2)) {
        let left = LinComb::product(&stuffle(&i, &j), &LinComb::basis(k.clone()), stuffle);
        let right = LinComb::product(&LinComb::basis(i.clone()), &stuffle(&j, &k), stuffle);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn q_inverts_p(i in index(4, 4)) {
        let (s, w) = p_map_any(&i);
        prop_assert_eq!(w.weight() as u32, i.weight());
        prop_assert_eq!(w.depth(), i.depth());
        let (t, j) = q_map_any(&w).unwrap();
        prop_assert_eq!(j, i);
        prop_assert_eq!(s * t, 1);
    }

    #[test]
    fn admissibility_agrees(i in index(4, 3)) {
        let (_, w) = p_map_any(&i);
        prop_assert_eq!(w.is_admissible(), i.is_admissible());
    }

    #[test]
    fn duality_preserves_weight(w in dual_domain()) {
        let d = words_to_indices(&dual_word(&w).unwrap()).unwrap();
        for (j, _) in d.iter() {
            prop_assert_eq!(j.weight() as usize, w.weight());
            prop_assert!(j.is_admissible());
        }
    }

    #[test]
    fn shuffle_of_indices_preserves_weight(i in admissible(2, 3), j in admissible(2, 3)) {
        let s = shuffle_indices(&i, &j).unwrap();
        for (x, _) in s.iter() {
            prop_assert_eq!(x.weight(), i.weight() + j.weight());
            prop_assert!(x.is_admissible());
        }
    }

    #[test]
    fn relations_are_primitive(i in admissible(2, 2), j in admissible(2, 2)) {
        let c = shuffle_indices(&i, &j).unwrap() - stuffle(&i, &j);
        let scaled = c.scale(&BigRational::new(BigInt::from(6), BigInt::from(35)));
        if let Ok(r) = Relation::new(scaled, Provenance::FiniteDbsf) {
            prop_assert!(r.terms.iter().all(|(_, k)| k.is_integer()));
            let g = r.terms.iter().fold(BigInt::zero(), |g, (_, k)| g.gcd(k.numer()));
            if !r.is_trivial() {
                prop_assert!(g.is_one());
                prop_assert!(r.terms.iter().next().unwrap().1.is_positive());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn products_are_homomorphisms(i in admissible(2, 2), j in admissible(2, 2)) {
        prop_assume!(i.weight() + j.weight() <= 5);
        let ev = default_evaluator();
        let d = 18;
        let a = ev.eval_index(&i, d).unwrap();
        let b = ev.eval_index(&j, d).unwrap();
        let p = with_precision(ev.bits(d), || a.value.clone() * b.value.clone());
        for c in [shuffle_indices(&i, &j).unwrap(), stuffle(&i, &j)] {
            let v = eval_lincomb(ev, &c, d).unwrap();
            let r = (p.clone() - v.value).abs().to_f64();
            prop_assert!(r < 1e-10, "{} * {}: {:e}", i, j, r);
        }
    }

    #[test]
    fn duality_holds_numerically(w in dual_domain()) {
        let ev = default_evaluator();
        let r = duality_relation(&w).unwrap();
        prop_assert!(residual(ev, &r, 18).unwrap() < 1e-10, "{}", r);
    }
}
