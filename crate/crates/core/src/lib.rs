//! Translation of LTL formulas into deterministic transition-based
//! Emerson-Lei automata.
//!
//! A formula is normalized, split into its maximal temporal subformulas, and
//! each subformula is translated by a construction specialised to its
//! fragment: buffer automata for `GF`/`FG` formulas over `X`, derivative
//! automata for safety and cosafety formulas, and an external tool for
//! everything else. The pieces are combined by a product whose acceptance
//! condition mirrors the Boolean structure of the input.
//!
//! ```
//! use delag::{parse, translate, TranslateOptions};
//!
//! let f = parse("G F (a1 & X a2) & F (b1 & F b2)").unwrap();
//! let aut = translate(&f, &TranslateOptions::default()).unwrap();
//! assert_eq!(aut.state_count(), 4);
//! ```

pub mod acceptance;
pub mod derivative;
pub mod error;
pub mod fairness;
pub mod fallback;
pub mod formula;
pub mod fragment;
pub mod hoa;
pub mod lasso;
pub mod oracle;
pub mod parser;
pub mod patterns;
pub mod product;
pub mod prop;
pub mod rewrite;
pub mod tela;
pub mod translate;

pub use acceptance::Acceptance;
pub use error::{Error, ParseError, Result};
pub use formula::{Formula, Node};
pub use fragment::{classify, Fragment};
pub use hoa::{parse_hoa, serialize_hoa};
pub use lasso::Lasso;
pub use parser::parse;
pub use prop::{prop_equiv, support};
pub use tela::{MarkSet, Tela};
pub use translate::{translate, Construction, TranslateOptions};
