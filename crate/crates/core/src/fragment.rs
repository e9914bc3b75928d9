use crate::formula::Formula;

/// Syntactic fragments with a dedicated construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    /// LTL(U, X).
    Cosafety,
    /// LTL(R, X).
    Safety,
    /// `GF ψ` with `ψ` in LTL(X).
    FairnessGF,
    /// `FG ψ` with `ψ` in LTL(X).
    FairnessFG,
    /// A Boolean combination of `GF`/`FG` formulas over LTL(X).
    FairnessBoolean,
    Unsupported,
}

impl Fragment {
    pub fn is_fairness(self) -> bool {
        matches!(self, Fragment::FairnessGF | Fragment::FairnessFG)
    }
}

/// The most specific fragment containing `formula`.
///
/// Formulas in both LTL(U, X) and LTL(R, X), i.e. LTL(X), are reported as
/// [`Fragment::Cosafety`].
pub fn classify(formula: &Formula) -> Fragment {
    if formula.is_cosafety() {
        return Fragment::Cosafety;
    }
    if formula.is_safety() {
        return Fragment::Safety;
    }
    if let Some(kind) = fairness_leaf(formula) {
        return kind;
    }
    let atoms = formula.skeleton_atoms();
    if !atoms.is_empty() && atoms.iter().all(|a| fairness_leaf(a).is_some()) {
        return Fragment::FairnessBoolean;
    }
    Fragment::Unsupported
}

fn fairness_leaf(formula: &Formula) -> Option<Fragment> {
    if formula.as_gf().is_some_and(Formula::is_ltl_x) {
        Some(Fragment::FairnessGF)
    } else if formula.as_fg().is_some_and(Formula::is_ltl_x) {
        Some(Fragment::FairnessFG)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn class(text: &str) -> Fragment {
        classify(&parse(text).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(class("F (b1 & F b2)"), Fragment::Cosafety);
        assert_eq!(class("G F (a1 & X a2)"), Fragment::FairnessGF);
        assert_eq!(class("F G (a | X b)"), Fragment::FairnessFG);
        assert_eq!(class("G (d1 -> F d2)"), Fragment::Unsupported);
        assert_eq!(class("G a & X !b"), Fragment::Safety);
        assert_eq!(class("X a"), Fragment::Cosafety);
        assert_eq!(class("F G a & G F b | F G c"), Fragment::FairnessBoolean);
        assert_eq!(class("F G a & b"), Fragment::Unsupported);
        assert_eq!(class("G F F a"), Fragment::Unsupported);
    }

    #[test]
    fn stable_under_reordering() {
        assert_eq!(class("G F b & F G a"), class("F G a & G F b"));
    }
}
