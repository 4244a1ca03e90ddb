mod common;

use common::{tw, word_matrix};
use lefschetz_core::homrep::{
    evaluate_word, mod_p_closure, sp_order, transitivity_certificate, transvection,
    transvection_power, TransitivityVerdict,
};
use lefschetz_core::pi1::{boundary_word, compose, is_inner, twist_automorphism};
use lefschetz_core::surface::chain_class;
use lefschetz_core::{FreeWord, HomologyClass, IntMatrix, SpMatrix, StdCurve, Twist, TwistAutomorphism};
use rand::{Rng, SeedableRng};

fn w(s: &str) -> FreeWord {
    s.parse().unwrap()
}

fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn twist_about_c1() {
    let t = twist_automorphism(2, Twist::chain(1)).unwrap();
    assert_eq!(t.apply(&w("a1")), w("a1"));
    assert_eq!(t.apply(&w("a2")), w("a2"));
    assert_eq!(t.apply(&w("b2")), w("b2"));
    // b1 + î(b1, a1)·a1 with î(b1, a1) = +1
    assert_eq!(t.apply(&w("b1")).abelianization(4), vec![1, 1, 0, 0]);
}

#[test]
fn twist_about_s1_conjugates_first_handle() {
    let t = twist_automorphism(2, Twist::pos(StdCurve::Sep)).unwrap();
    let k = w("b1 a1 B1 A1");
    for x in ["a1", "b1"] {
        assert_eq!(t.apply(&w(x)), k.conjugate(&w(x)));
    }
    assert_eq!(t.apply(&w("a2")), w("a2"));
    assert_eq!(t.apply(&w("b2")), w("b2"));
}

#[test]
fn inverses_cancel() {
    for label in ["t1", "t2", "t3", "t4", "t5", "s1"] {
        let word = tw(&format!("{label} {}", label.to_uppercase()));
        assert!(compose(2, &word).unwrap().is_identity());
    }
    assert!(compose(2, &[]).unwrap().is_identity());
}

#[test]
fn braid_and_commutation() {
    for (x, y) in [(1, 2), (2, 3), (3, 4), (4, 5)] {
        let a = compose(2, &tw(&format!("t{x} t{y} t{x}"))).unwrap();
        let b = compose(2, &tw(&format!("t{y} t{x} t{y}"))).unwrap();
        assert_eq!(a, b, "braid {x} {y}");
    }
    for (x, y) in [(1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)] {
        let a = compose(2, &tw(&format!("t{x} t{y}"))).unwrap();
        let b = compose(2, &tw(&format!("t{y} t{x}"))).unwrap();
        assert_eq!(a, b, "commute {x} {y}");
    }
    for x in [1, 2, 4, 5] {
        let a = compose(2, &tw(&format!("t{x} s1"))).unwrap();
        let b = compose(2, &tw(&format!("s1 t{x}"))).unwrap();
        assert_eq!(a, b, "s1 commutes with c{x}");
    }
}

#[test]
fn apply_examples() {
    let id = TwistAutomorphism::identity(4);
    assert_eq!(id.apply(&w("a1 B2 b1")), w("a1 B2 b1"));
    let t1 = twist_automorphism(2, Twist::chain(1)).unwrap();
    assert_eq!(t1.apply(&w("a1")), w("a1"));
}

#[test]
fn inner_detection() {
    assert_eq!(is_inner(&TwistAutomorphism::identity(4)), Some(FreeWord::empty()));
    let delta = boundary_word(2);
    let conj = TwistAutomorphism::conjugation(4, &delta);
    assert_eq!(is_inner(&conj), Some(delta));
    assert_eq!(is_inner(&twist_automorphism(2, Twist::chain(1)).unwrap()), None);
}

#[test]
fn length_twelve_chain_relation() {
    let lhs = compose(2, &tw(&"t1 t2 ".repeat(6))).unwrap();
    let rhs = twist_automorphism(2, Twist::pos(StdCurve::Sep)).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn closed_surface_relations_are_inner() {
    let delta = boundary_word(2);
    for word in [
        "t1 t2 t3 t4 t5 ".repeat(6),
        "t1 t2 t3 t4 ".repeat(10),
        "t1 t2 t3 t4 t5 t5 t4 t3 t2 t1 ".repeat(2),
        "t5 t4 t3 t2 t1 t1 t2 t3 t4 t5 ".repeat(2),
    ] {
        let aut = compose(2, &tw(&word)).unwrap();
        let c = is_inner(&aut).unwrap_or_else(|| panic!("{word}"));
        assert!(c == delta || c == delta.inverse(), "{word}: {c}");
        assert!(aut.abelianization() == IntMatrix::identity(4));
    }
}

#[test]
fn genus_one_chain_relation() {
    let aut = compose(1, &tw(&"t1 t2 ".repeat(6))).unwrap();
    assert!(is_inner(&aut).is_some());
    assert!(is_inner(&compose(1, &tw("t1 t2 t1")).unwrap()).is_none());
}

#[test]
fn transvection_examples() {
    assert!(transvection(&HomologyClass::zero(2)).unwrap().is_identity());
    let t = transvection(&chain_class(2, 1)).unwrap();
    assert_eq!(rows(t.matrix()), common::transvection(&common::chain(2, 1), 1));
    // b1 ↦ b1 + î(b1, a1)·a1, the rest fixed
    assert_eq!(t.apply(&[0, 1, 0, 0]).unwrap(), vec![1, 1, 0, 0]);
    assert_eq!(t.apply(&[1, 0, 0, 0]).unwrap(), vec![1, 0, 0, 0]);
    assert_eq!(t.apply(&[0, 0, 1, 1]).unwrap(), vec![0, 0, 1, 1]);
}

#[test]
fn transvection_powers_follow_formula() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = rng.gen_range(1..=3);
        let c: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-3..=3)).collect();
        let k = rng.gen_range(0..=5);
        let m = transvection_power(&HomologyClass(c.clone()), k).unwrap();
        let mut p = SpMatrix::identity(g);
        for _ in 0..k {
            p = p.mul(&transvection(&HomologyClass(c.clone())).unwrap()).unwrap();
        }
        assert_eq!(m, p);
        assert_eq!(rows(m.matrix()), common::transvection(&c, k));
        let mi = m.matrix().clone();
        let mut d = mi.clone();
        for i in 0..2 * g {
            d.set(i, i, mi.get(i, i) - 1);
        }
        assert!(d.mul(&d).unwrap().is_zero());
        let inv = transvection_power(&HomologyClass(c.clone()), -k).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.inverse().unwrap(), inv);
    }
}

#[test]
fn evaluate_is_a_homomorphism() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let w1 = common::random_word(&mut rng, 2, 8);
        let w2 = common::random_word(&mut rng, 2, 8);
        let mut both = w1.clone();
        both.extend(&w2);
        let lhs = evaluate_word(2, &both).unwrap();
        let rhs = evaluate_word(2, &w1).unwrap().mul(&evaluate_word(2, &w2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rows(lhs.matrix()), word_matrix(2, &both));
    }
    assert!(evaluate_word(2, &[]).unwrap().is_identity());
    assert!(evaluate_word(2, &tw(&"t1 t2 t3 t4 t5 ".repeat(6))).unwrap().is_identity());
}

fn chain_transvections() -> Vec<SpMatrix> {
    (1..=5).map(|i| transvection(&chain_class(2, i)).unwrap()).collect()
}

#[test]
fn closure_orders() {
    assert_eq!(mod_p_closure(&[SpMatrix::identity(2)], 2, 2).unwrap().order, 1);
    let single = mod_p_closure(&chain_transvections()[..1], 2, 2).unwrap();
    assert_eq!((single.order, single.surjective), (2, false));
    let full = mod_p_closure(&chain_transvections(), 2, 2).unwrap();
    assert_eq!((full.order, full.target_order, full.surjective), (720, 720, true));
    assert!(mod_p_closure(&chain_transvections(), 2, 7).is_err());
    assert!(mod_p_closure(&chain_transvections(), 3, 2).is_err());
}

#[test]
fn closure_matches_plain_bfs() {
    let gens: Vec<Vec<Vec<i64>>> = (1..=5).map(|i| common::transvection(&common::chain(2, i), 1)).collect();
    for p in [2u64, 3] {
        let oracle = common::group_order_mod_p(&gens, p as i64);
        assert_eq!(oracle as u64, common::sp_order(2, p));
        assert_eq!(mod_p_closure(&chain_transvections(), 2, p).unwrap().order, oracle as u64);
    }
    let two: Vec<_> = gens[..2].to_vec();
    let lib = mod_p_closure(&chain_transvections()[..2], 2, 3).unwrap().order;
    assert_eq!(lib, common::group_order_mod_p(&two, 3) as u64);
}

#[test]
fn symplectic_orders() {
    for (g, p) in [(1, 2), (1, 3), (2, 2), (2, 3), (2, 5)] {
        assert_eq!(sp_order(g, p), common::sp_order(g as u32, p));
    }
    assert_eq!(sp_order(2, 5), 9_360_000);
}

#[test]
fn certificate_verdicts() {
    let ok = transitivity_certificate(&chain_transvections(), 2, &[2, 3]).unwrap();
    assert_eq!(ok.verdict, TransitivityVerdict::ConsistentWithTransitive);
    let bad = transitivity_certificate(&chain_transvections()[..4], 2, &[2]).unwrap();
    assert_eq!(bad.verdict, TransitivityVerdict::NotTransitive);
}
