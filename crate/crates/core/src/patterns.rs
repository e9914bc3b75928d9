//! Benchmark formula families.

use std::collections::BTreeSet;

use crate::formula::Formula;

pub use crate::prop::good_leaf_sets;

fn pair(n: usize) -> (Formula, Formula) {
    (
        Formula::fg(Formula::atom(format!("a{n}"))),
        Formula::gf(Formula::atom(format!("b{n}"))),
    )
}

/// The alternating Rabin-like pattern: `FG a0 ∧ GF b0` at the base, then
/// `(FG a_n ∧ GF b_n) ∨ phi_s(n - 1)`.
pub fn phi_r(n: usize) -> Formula {
    let (fg, gf) = pair(n);
    let head = Formula::and([fg, gf]);
    if n == 0 {
        head
    } else {
        Formula::or([head, phi_s(n - 1)])
    }
}

/// The Streett-like dual of [`phi_r`].
pub fn phi_s(n: usize) -> Formula {
    let (fg, gf) = pair(n);
    let head = Formula::or([fg, gf]);
    if n == 0 {
        head
    } else {
        Formula::and([head, phi_r(n - 1)])
    }
}

/// `FG(a ∨ b) ∨ FG(¬a ∨ X b) ∨ FG(a ∨ X X b) ∨ ...` with `n + 1` disjuncts.
pub fn phi_h(n: usize) -> Formula {
    Formula::or((0..=n).map(|k| {
        let lit = Formula::literal("a", k % 2 == 0);
        Formula::fg(Formula::or([lit, Formula::next_n(Formula::atom("b"), k)]))
    }))
}

/// Number of good leaf sets, for tabulation.
pub fn good_leaf_set_count(formula: &Formula) -> usize {
    good_leaf_sets(formula).len()
}

/// The leaves of a fairness Boolean combination.
pub fn leaves(formula: &Formula) -> BTreeSet<Formula> {
    formula.skeleton_atoms().into_iter().collect()
}
