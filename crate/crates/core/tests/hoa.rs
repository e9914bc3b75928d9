mod common;

use common::f;
use delag::hoa::parse_hoa_partial;
use delag::oracle::equiv_on_lassos;
use delag::{parse_hoa, serialize_hoa, translate, Error, TranslateOptions};

#[test]
fn state_based_acceptance_is_pushed_onto_edges() {
    let text = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\n\
                State: 0\n[!0] 0\n[0] 1\nState: 1 {0}\n[!0] 0\n[0] 1\n--END--\n";
    let aut = parse_hoa(text).unwrap();
    assert_eq!(equiv_on_lassos(&f("G F a"), &aut, 2, 3), None);
}

#[test]
fn partial_automata_get_a_rejecting_sink() {
    // G a with the ¬a edge left out.
    let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 0 t\n--BODY--\nState: 0\n[0] 0\n--END--\n";
    assert!(matches!(parse_hoa(text), Err(Error::Incomplete { .. })));
    let aut = parse_hoa_partial(text)
        .unwrap()
        .complete_with_sink()
        .unwrap();
    assert_eq!(aut.state_count(), 2);
    assert_eq!(equiv_on_lassos(&f("G a"), &aut, 2, 3), None);
}

#[test]
fn translations_survive_serialization() {
    for text in [
        "G F (a1 & X a2) & F (b1 & F b2)",
        "F G a | G b",
        "(a U b) | F G c",
        "G (a -> X b) & F c",
    ] {
        let phi = f(text);
        let aut = translate(&phi, &TranslateOptions::default()).unwrap();
        let back = parse_hoa(&serialize_hoa(&aut)).unwrap();
        assert_eq!(equiv_on_lassos(&phi, &back, 2, 3), None, "{text}");
    }
}

#[test]
fn rejects_unsupported_headers() {
    let alt = "HOA: v1\nStates: 1\nStart: 0&0\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\n--END--\n";
    assert!(parse_hoa(alt).is_err());
    let neg = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(!0)\n--BODY--\nState: 0\n[t] 0\n--END--\n";
    assert!(matches!(parse_hoa(neg), Err(Error::UnknownAcceptance(_))));
}
