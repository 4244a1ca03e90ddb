//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use lefschetz_core::catalog;
use lefschetz_core::feasibility::{
    b2plus_one_types, enumerate_types, family_invariants, indecomposability_check, render_svg,
    CatalogStatus, Decomposition, PLOTTED_KNOWN,
};
use lefschetz_core::homrep::{evaluate_word, mod_p_closure, transvection};
use lefschetz_core::invariants::{betti_bound_check, invariant_report};
use lefschetz_core::monodromy::{hurwitz_move, identity_check, ns_type, Direction};
use lefschetz_core::pi1::{boundary_word, compose, is_inner, twist_automorphism};
use lefschetz_core::surface::{chain_class, parse_twist_word};
use lefschetz_core::{Curve, Factorization, Level, NSType, SpMatrix, StdCurve, Twist};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name under which a (4,3) entry would be registered.
const FOUR_THREE: &str = "baykur-korkmaz-43";

enum Outcome {
    Pass(String),
    /// Everything checked passed, but part of the criterion could not be run.
    Partial(String),
    Fail(String),
}

use Outcome::{Fail, Partial, Pass};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Fail(format!($($msg)+)));
        }
    };
}

type Check = Result<Outcome, lefschetz_core::Error>;

fn entry(name: &str) -> Result<Factorization, lefschetz_core::Error> {
    Ok(catalog::get(name)?.factorization()?.clone())
}

fn rows(m: &SpMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn picard_lefschetz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..1000 {
        let g = 1 + trial % 3;
        let b = common::random_curve(&mut rng, g, 6);
        let k: i64 = rng.gen_range(0..=5);
        let a: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-4..=4)).collect();
        let word: Vec<Twist> = (0..k).flat_map(|_| b.twist_word(true)).collect();
        let got = evaluate_word(g, &word)?.apply(&a)?;
        let want = common::picard_lefschetz(&a, &common::curve_class(g, &b), k);
        ensure!(got == want, "g={g} b={b} k={k} a={a:?}: got {got:?}, want {want:?}");
    }
    Ok(Pass("1000 random (a, b, k) over genus 1..3".into()))
}

fn relation_triviality() -> Check {
    for name in ["chakiris-alpha", "chakiris-beta", "chakiris-gamma", "hyperelliptic-sq"] {
        let r = identity_check(&entry(name)?, Level::Exact)?;
        ensure!(r.passed(), "{name} fails the exact level");
    }
    let l = catalog::get("lantern-std")?;
    let l = l.lantern()?;
    ensure!(
        l.boundary_factorization().evaluate()? == l.interior_factorization().evaluate()?,
        "lantern sides differ on homology"
    );
    Ok(Pass("four chain relations exact; lantern sides agree in Sp(4,Z)".into()))
}

fn invariant_table() -> Check {
    let gamma = invariant_report(&entry("chakiris-gamma")?, true)?;
    ensure!(
        (gamma.euler, gamma.signature, gamma.betti[1], gamma.b2_plus) == (16, Some(-12), 0, Some(1)),
        "(20,0) row: {gamma:?}"
    );
    let mut notes = vec!["(20,0) ok".to_string()];
    let mut skipped = false;

    match catalog::get(FOUR_THREE) {
        Ok(e) => {
            let r = invariant_report(e.factorization()?, true)?;
            ensure!(
                (r.euler, r.signature, r.betti[1], r.betti[2], r.b2_plus, r.b2_minus)
                    == (3, Some(-3), 2, 5, Some(1), Some(4)),
                "(4,3) row: {r:?}"
            );
            notes.push("(4,3) ok".into());
        }
        Err(_) => {
            let f = family_invariants(2)?;
            ensure!(
                (f.euler, f.signature, f.b1, f.b2, f.b2_plus, f.b2_minus) == (3, -3, 2, 5, 1, 4),
                "family_invariants(2): {f:?}"
            );
            skipped = true;
            notes.push("(4,3) SKIPPED (no catalog entry; formulas checked via family_invariants(2))".into());
        }
    }

    let m = invariant_report(&entry("matsumoto-62")?, true)?;
    ensure!(
        (m.signature, m.betti[1], m.b2_plus) == (Some(-4), 2, Some(1)),
        "(6,2) row: {m:?}"
    );
    notes.push("(6,2) ok".into());
    Ok(if skipped { Partial(notes.join("; ")) } else { Pass(notes.join("; ")) })
}

fn nine_types() -> Check {
    let got: BTreeSet<_> = b2plus_one_types().into_iter().map(|(r, b1)| (r.n, r.s, b1)).collect();
    let want: BTreeSet<_> = [(4, 3, 2), (6, 2, 2)]
        .into_iter()
        .chain([(8, 6), (10, 5), (12, 4), (14, 3), (16, 2), (18, 1), (20, 0)].map(|(n, s)| (n, s, 0)))
        .collect();
    ensure!(got == want, "got {got:?}");
    Ok(Pass("nine types, two with b1 = 2 and seven with b1 = 0".into()))
}

fn figure() -> Check {
    let reports = enumerate_types(20, 15)?;
    let known: BTreeSet<_> = reports
        .iter()
        .filter(|r| r.status == CatalogStatus::Known)
        .map(|r| (r.n, r.s))
        .collect();
    let open: BTreeSet<_> = reports
        .iter()
        .filter(|r| r.status == CatalogStatus::Unknown)
        .map(|r| (r.n, r.s))
        .collect();
    let plotted: BTreeSet<_> = PLOTTED_KNOWN.iter().copied().collect();
    ensure!(known == plotted, "known set {known:?}");
    let want_open = BTreeSet::from([(6, 7), (8, 11), (10, 15), (12, 14)]);
    ensure!(open == want_open, "open set {open:?}");
    let svg = render_svg(&reports, 20, 15);
    ensure!(svg.contains("data-c=\"3\"") && svg.contains("data-c=\"5\""), "missing reference lines");
    Ok(Pass(format!("{} filled, {} open, lines 2n-s = 3 and 5", known.len(), open.len())))
}

fn family() -> Check {
    for k in 2..=10 {
        let f = family_invariants(k)?;
        ensure!((f.n as i64, f.s as i64, f.b1) == (2 * k, 4 * k - 5, 2), "k={k}: {f:?}");
        let d = indecomposability_check(f.n, f.s)?;
        ensure!(matches!(d, Decomposition::Indecomposable(_)), "k={k}: {d:?}");
    }
    match indecomposability_check(12, 4)? {
        Decomposition::Inconclusive(splits) if splits.contains(&(NSType::new(6, 2), NSType::new(6, 2))) => {}
        other => return Ok(Fail(format!("(12,4): {other:?}"))),
    }
    Ok(Pass("k = 2..10 certified; (12,4) inconclusive with (6,2)+(6,2)".into()))
}

fn surgery() -> Check {
    let gamma = entry("chakiris-gamma")?;
    let base = invariant_report(&gamma, true)?;
    let m0 = gamma.evaluate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seq in 0..1000 {
        let mut f = gamma.clone();
        for _ in 0..rng.gen_range(1..=8) {
            let i = rng.gen_range(0..f.len() - 1);
            let dir = if rng.gen_bool(0.5) { Direction::Right } else { Direction::Left };
            f = hurwitz_move(&f, i, dir)?;
        }
        let r = invariant_report(&f, true)?;
        ensure!(
            f.evaluate()? == m0
                && r.ns == base.ns
                && r.euler == base.euler
                && r.signature == base.signature
                && r.h1 == base.h1,
            "sequence {seq} changed an invariant"
        );
    }
    let once = entry("lantern-18-1")?;
    let twice = entry("lantern-16-2")?;
    ensure!(ns_type(&once)? == NSType::new(18, 1), "first substitution gave {}", ns_type(&once)?);
    ensure!(ns_type(&twice)? == NSType::new(16, 2), "second substitution gave {}", ns_type(&twice)?);
    ensure!(once.evaluate()? == m0 && twice.evaluate()? == m0, "substitution changed evaluate");
    Ok(Pass("1000 move sequences invariant; lantern gives (18,1) then (16,2)".into()))
}

fn free_group_relations() -> Check {
    let twelve = compose(2, &parse_twist_word(&"t1 t2 ".repeat(6))?)?;
    ensure!(twelve == twist_automorphism(2, Twist::pos(StdCurve::Sep))?, "(t1 t2)^6 differs from t_s1");
    let alpha = compose(2, &parse_twist_word(&"t1 t2 t3 t4 t5 ".repeat(6))?)?;
    let delta = boundary_word(2);
    let which = match is_inner(&alpha) {
        Some(c) if c == delta => "δ",
        Some(c) if c == delta.inverse() => "δ^-1 (orientation convention of the action)",
        other => return Ok(Fail(format!("is_inner gave {other:?}"))),
    };
    Ok(Pass(format!("(t1 t2)^6 = t_s1 exactly; (t1..t5)^6 is conjugation by {which}")))
}

fn betti_bound_witness() -> Check {
    let mut count = 0;
    for (name, _) in catalog::list() {
        let Ok(f) = catalog::get(name)?.factorization().cloned() else {
            continue;
        };
        let r = betti_bound_check(&f)?;
        ensure!(r.b1 <= 2 && r.witness.is_some() && r.passed(), "{name}: {r:?}");
        count += 1;
    }
    let c1 = Curve::chain(1);
    let moved = Curve::new(StdCurve::Chain(1), parse_twist_word("t3 t5")?);
    let synthetic = Factorization::new(2, 0, vec![c1.clone(), moved, c1])?;
    let r = betti_bound_check(&synthetic)?;
    ensure!(r.witness.is_none() && !r.passed(), "synthetic word not flagged: {r:?}");
    Ok(Pass(format!("{count} catalog fibrations within bound with witnesses; synthetic word flagged")))
}

fn transitivity() -> Check {
    let gens: Vec<SpMatrix> = (1..=5)
        .map(|i| transvection(&chain_class(2, i)))
        .collect::<Result<_, _>>()?;
    let two = mod_p_closure(&gens, 2, 2)?;
    let three = mod_p_closure(&gens, 2, 3)?;
    ensure!((two.order, two.surjective) == (720, true), "mod 2: {two:?}");
    ensure!((three.order, three.surjective) == (51840, true), "mod 3: {three:?}");
    let single = mod_p_closure(&gens[..1], 2, 2)?;
    ensure!(!single.surjective, "single twist surjective mod 2");
    Ok(Pass("Sp(4,2) order 720, Sp(4,3) order 51840; one twist is not surjective".into()))
}

fn cross_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let len = rng.gen_range(0..=16);
        let w = common::random_word(&mut rng, 2, len);
        let ab = compose(2, &w)?.abelianization();
        let hm = evaluate_word(2, &w)?;
        ensure!(&ab == hm.matrix(), "word {w:?}");
        ensure!(rows(&hm) == common::word_matrix(2, &w), "oracle disagrees on {w:?}");
    }
    Ok(Pass("500 random genus-2 words".into()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Picard-Lefschetz law", picard_lefschetz),
        ("relation triviality", relation_triviality),
        ("invariant table", invariant_table),
        ("b2+ = 1 types", nine_types),
        ("feasibility plot", figure),
        ("(2k, 4k-5) family", family),
        ("surgery invariance", surgery),
        ("free-group chain relations", free_group_relations),
        ("b1 bound witness", betti_bound_witness),
        ("transitivity certificate", transitivity),
        ("cross-engine consistency", cross_engine),
    ];
    let (mut failed, mut partial) = (0, 0);
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(Pass(detail)) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Ok(Partial(detail)) => {
                partial += 1;
                println!("criterion {:>2} PARTIAL  {name}: {detail}", k + 1);
            }
            Ok(Fail(detail)) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: error: {e}", k + 1);
            }
        }
    }
    let passed = criteria.len() - failed - partial;
    println!("acceptance: {passed} passed, {partial} partial, {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
