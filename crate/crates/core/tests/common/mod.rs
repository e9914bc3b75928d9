#![allow(dead_code)]

use std::path::PathBuf;

use delag::fallback::FallbackConfig;
use delag::patterns::{phi_h, phi_r, phi_s};
use delag::{parse, Formula, TranslateOptions};

pub fn f(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Stands in for an external translator; knows only `G (c1 -> F c2)`.
pub fn stub_fallback() -> FallbackConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/response.hoa");
    FallbackConfig::new(format!("cat '{}' # %f", path.display()))
}

pub fn options() -> TranslateOptions {
    TranslateOptions {
        fallback: Some(stub_fallback()),
        ..TranslateOptions::default()
    }
}

pub const FIG1: &str = "G F (a1 & X a2) & F (b1 & F b2) & G F (G c) & G (c1 -> F c2)";

/// Formulas checked against the oracle.
pub fn corpus() -> Vec<Formula> {
    let mut out: Vec<Formula> = [
        "G F (a1 & X a2)",
        "F (b1 & F b2)",
        "G F (G c)",
        "G (c1 -> F c2)",
        "G F (a1 & X a2) & F (b1 & F b2)",
        FIG1,
        "F G ((a | F b) & c)",
        "G F (a & X F b)",
        "G F (a U b)",
        "F G (a U b)",
        "F G a & F b",
        "G F a | G b",
        "F G (a | G b)",
        "G F (a & F b)",
        "F G a | G b",
        "a & X (b R c)",
        "F G (a | X b) & G F (!a & X X b)",
        "G (a -> X b) & F c",
        "(F a & G F b) | (G c & F G !b)",
        "(a U b) | F G c",
        "G F a -> G F b",
        "X X a | G F (a <-> X b)",
    ]
    .iter()
    .map(|t| f(t))
    .collect();
    for n in 0..3 {
        out.push(phi_r(n));
        out.push(phi_s(n));
        out.push(phi_h(n));
    }
    out
}
