//! Top-level translation pipeline.

use crate::derivative::{translate_derivative, Polarity, DEFAULT_STATE_BOUND};
use crate::error::{Error, Result};
use crate::fairness::{translate_buffer, FairnessKind};
use crate::fallback::{translate_external, FallbackConfig};
use crate::formula::Formula;
use crate::fragment::{classify, Fragment};
use crate::product::{build_product, Component, ComponentKind, Product, ProductOptions};
use crate::rewrite::normalize;
use crate::tela::Tela;

pub use crate::product::Construction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateOptions {
    pub construction: Construction,
    /// Share one history buffer among fairness components (enhanced only).
    pub global_history: bool,
    pub piggyback: bool,
    pub fallback: Option<FallbackConfig>,
    pub state_bound: usize,
}

impl Default for TranslateOptions {
    fn default() -> TranslateOptions {
        TranslateOptions {
            construction: Construction::Enhanced,
            global_history: true,
            piggyback: false,
            fallback: None,
            state_bound: DEFAULT_STATE_BOUND,
        }
    }
}

impl TranslateOptions {
    pub fn standard() -> TranslateOptions {
        TranslateOptions {
            construction: Construction::Standard,
            ..TranslateOptions::default()
        }
    }
}

/// Builds the component automaton for one skeleton atom.
pub fn component(atom: &Formula, options: &TranslateOptions) -> Result<Component> {
    let bound = options.state_bound;
    let derivative = |polarity, kind| -> Result<Component> {
        let d = translate_derivative(atom, polarity, bound)?;
        Ok(Component {
            formula: atom.clone(),
            kind,
            tela: d.tela,
            accepting_trap: d.accepting_trap,
            rejecting_trap: d.rejecting_trap,
            body: None,
        })
    };
    let buffer = |kind, body: &Formula| -> Result<Component> {
        Ok(Component {
            formula: atom.clone(),
            kind: ComponentKind::Fairness(kind),
            tela: translate_buffer(kind, body, bound)?,
            accepting_trap: None,
            rejecting_trap: None,
            body: Some(body.clone()),
        })
    };
    match classify(atom) {
        Fragment::Cosafety => derivative(Polarity::Cosafety, ComponentKind::Cosafety),
        Fragment::Safety => derivative(Polarity::Safety, ComponentKind::Safety),
        Fragment::FairnessGF => buffer(
            FairnessKind::InfinitelyOften,
            atom.as_gf().expect("GF leaf"),
        ),
        Fragment::FairnessFG => buffer(
            FairnessKind::EventuallyAlways,
            atom.as_fg().expect("FG leaf"),
        ),
        Fragment::FairnessBoolean | Fragment::Unsupported => match &options.fallback {
            Some(config) => Ok(Component {
                formula: atom.clone(),
                kind: ComponentKind::External,
                tela: translate_external(atom, config)?,
                accepting_trap: None,
                rejecting_trap: None,
                body: None,
            }),
            None => Err(Error::FallbackRequired {
                formula: atom.to_string(),
            }),
        },
    }
}

/// Normalizes `formula` and builds the product, keeping the meaning of
/// every product state.
pub fn translate_product(formula: &Formula, options: &TranslateOptions) -> Result<Product> {
    let normal = normalize(formula);
    let components = normal
        .skeleton_atoms()
        .iter()
        .map(|atom| component(atom, options))
        .collect::<Result<Vec<_>>>()?;
    build_product(
        &normal,
        &components,
        ProductOptions {
            construction: options.construction,
            global_history: options.global_history,
            state_bound: options.state_bound,
        },
    )
}

/// Translates `formula` into a deterministic TELA.
///
/// The automaton ranges over exactly the propositions of `formula`; ones
/// made irrelevant by simplification are kept in the alphabet.
pub fn translate(formula: &Formula, options: &TranslateOptions) -> Result<Tela> {
    let product = translate_product(formula, options)?;
    let aut = if options.piggyback {
        product.piggyback()?
    } else {
        product.tela
    };
    let ap: Vec<String> = formula.aps().into_iter().collect();
    if aut.ap() == ap.as_slice() {
        Ok(aut)
    } else {
        aut.extend_ap(&ap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::Acceptance;
    use crate::parser::parse;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn constants() {
        let t = translate(&Formula::tt(), &TranslateOptions::default()).unwrap();
        assert_eq!(t.state_count(), 1);
        assert_eq!(t.acceptance(), &Acceptance::True);
        let t = translate(&Formula::ff(), &TranslateOptions::default()).unwrap();
        assert_eq!(t.acceptance(), &Acceptance::False);
    }

    #[test]
    fn running_example_sizes() {
        let phi = f("G F (a1 & X a2) & F (b1 & F b2)");
        assert_eq!(
            translate(&phi, &TranslateOptions::default())
                .unwrap()
                .state_count(),
            4
        );
        assert_eq!(
            translate(&phi, &TranslateOptions::standard())
                .unwrap()
                .state_count(),
            6
        );
    }

    #[test]
    fn unsupported_needs_fallback() {
        let err = translate(&f("G (d1 -> F d2)"), &TranslateOptions::default()).unwrap_err();
        match err {
            Error::FallbackRequired { formula } => assert_eq!(formula, "G (!d1 | F d2)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn piggyback_shrinks_acceptance() {
        let phi = f("F G a & F b");
        let plain = translate(&phi, &TranslateOptions::default()).unwrap();
        let small = translate(
            &phi,
            &TranslateOptions {
                piggyback: true,
                ..TranslateOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.acceptance_size(), 2);
        assert_eq!(small.acceptance_size(), 1);
        assert_eq!(small.acceptance(), &Acceptance::Fin(0));
    }
}
