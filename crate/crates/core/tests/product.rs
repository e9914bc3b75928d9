mod common;

use common::{f, options, FIG1};
use delag::fairness::translate_gf;
use delag::oracle::{automata_agree_on_lassos, equiv_on_lassos};
use delag::patterns::{phi_h, phi_r, phi_s};
use delag::product::{ComponentKind, Slot};
use delag::translate::translate_product;
use delag::{translate, Acceptance, Construction, TranslateOptions};

fn slots_of(text: &str) -> Vec<Vec<Slot>> {
    translate_product(&f(text), &options())
        .unwrap()
        .states
        .into_iter()
        .map(|s| s.slots)
        .collect()
}

#[test]
fn resolved_disjunct_prunes_the_rest() {
    // Once F a is accepted nothing else matters.
    let p = translate_product(&f("F a | G F b"), &options()).unwrap();
    let done = p
        .states
        .iter()
        .find(|s| s.slots.contains(&Slot::Acc))
        .unwrap();
    assert!(done
        .slots
        .iter()
        .all(|s| matches!(s, Slot::Acc | Slot::Rej)));
}

#[test]
fn rejected_conjunct_prunes_the_rest() {
    let p = translate_product(&f("G a & F G b"), &options()).unwrap();
    let dead = p
        .states
        .iter()
        .find(|s| s.slots.contains(&Slot::Rej))
        .unwrap();
    assert!(dead.slots.iter().all(|s| *s == Slot::Rej));
}

#[test]
fn fairness_waits_for_its_neighbours() {
    // Held until G b fails.
    let states = slots_of("F G a | G b");
    assert!(states[0].contains(&Slot::Hold));
    for s in &states {
        let held = s.contains(&Slot::Hold);
        let failed = s.contains(&Slot::Rej);
        assert!(held != failed, "{s:?}");
    }
    // No neighbours: released at once.
    assert!(slots_of("G F a").iter().all(|s| !s.contains(&Slot::Hold)));
}

#[test]
fn single_component_products() {
    let aut = translate(&f("G F (a1 & X a2)"), &options()).unwrap();
    let direct = translate_gf(&f("a1 & X a2")).unwrap();
    assert_eq!(aut, direct);
    let std = translate(&f("F (b1 & F b2)"), &TranslateOptions::standard()).unwrap();
    assert_eq!(std.state_count(), 3);
}

#[test]
fn lifted_acceptance_mirrors_the_formula() {
    let aut = translate(&phi_r(0), &options()).unwrap();
    assert_eq!(
        aut.acceptance(),
        &Acceptance::and([Acceptance::Fin(0), Acceptance::Inf(1)])
    );
    let aut = translate(&phi_s(1), &options()).unwrap();
    assert_eq!(aut.state_count(), 1);
    assert_eq!(aut.acceptance_size(), 4);
}

#[test]
fn history_pattern() {
    let aut = translate(&phi_h(2), &options()).unwrap();
    assert_eq!((aut.state_count(), aut.acceptance_size()), (4, 3));
    let local = translate(
        &phi_h(2),
        &TranslateOptions {
            global_history: false,
            ..options()
        },
    )
    .unwrap();
    assert_eq!(automata_agree_on_lassos(&aut, &local, 2, 3), None);
}

#[test]
fn running_example_pipeline() {
    let p = translate_product(&f(FIG1), &options()).unwrap();
    let names: Vec<String> = p.components.iter().map(|c| c.formula.to_string()).collect();
    assert!(names.contains(&"F G c".to_string()), "{names:?}");
    let external: Vec<_> = p
        .components
        .iter()
        .filter(|c| c.kind == ComponentKind::External)
        .collect();
    assert_eq!(external.len(), 1);
    assert_eq!(external[0].formula, f("G (c1 -> F c2)"));
    for c in p
        .components
        .iter()
        .filter(|c| c.kind == ComponentKind::External)
    {
        assert!(c.accepting_trap.is_none() && c.rejecting_trap.is_none());
    }
}

#[test]
fn piggybacking() {
    let on = TranslateOptions {
        piggyback: true,
        ..options()
    };
    for text in [
        "F G a & F b",
        "G F a & F b",
        "G F a | G b",
        "F G a | G b",
        "(F G a & F b) | (G F c & G d)",
    ] {
        let phi = f(text);
        let plain = translate(&phi, &options()).unwrap();
        let small = translate(&phi, &on).unwrap();
        assert!(small.acceptance_size() < plain.acceptance_size(), "{text}");
        assert_eq!(equiv_on_lassos(&phi, &small, 2, 3), None, "{text}");
    }
    // Nothing to absorb.
    let phi = f("F G a & G F b");
    assert_eq!(
        translate(&phi, &on).unwrap(),
        translate(&phi, &options()).unwrap()
    );
}

#[test]
fn complement_of_rabin_pattern() {
    for n in 0..2 {
        let aut = translate(&phi_r(n), &options()).unwrap();
        assert_eq!(
            equiv_on_lassos(&phi_r(n).negate(), &aut.complement(), 2, 3),
            None
        );
        let dual = translate(&phi_s(n), &options()).unwrap();
        assert_eq!(dual.acceptance_size(), aut.acceptance_size());
    }
}

#[test]
fn state_bound_is_enforced() {
    let o = TranslateOptions {
        state_bound: 8,
        construction: Construction::Enhanced,
        ..options()
    };
    assert!(matches!(
        translate(&phi_h(5), &o),
        Err(delag::Error::StateBound { bound: 8 })
    ));
}
