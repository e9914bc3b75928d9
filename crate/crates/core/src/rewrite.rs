//! Formula rewriting: generic simplification and the fairness normal form.
//!
//! [`normalize`] is what the translator applies before splitting a formula
//! into components.

use std::collections::BTreeSet;

use crate::formula::{Formula, Node};

/// Syntactic entailment: `entails(p, q)` implies that every word satisfying
/// `p` satisfies `q`. Incomplete by design.
pub fn entails(p: &Formula, q: &Formula) -> bool {
    if p == q || p.is_false() || q.is_true() {
        return true;
    }
    if let Node::And(ps) = p.node() {
        if ps.iter().any(|pi| entails(pi, q)) {
            return true;
        }
    }
    if let Node::Or(qs) = q.node() {
        if qs.iter().any(|qi| entails(p, qi)) {
            return true;
        }
    }
    if let Node::Or(ps) = p.node() {
        if ps.iter().all(|pi| entails(pi, q)) {
            return true;
        }
    }
    if let Node::And(qs) = q.node() {
        if qs.iter().all(|qi| entails(p, qi)) {
            return true;
        }
    }
    match (p.node(), q.node()) {
        (Node::Next(a), Node::Next(b)) if entails(a, b) => return true,
        (Node::Until(a1, a2), Node::Until(b1, b2))
        | (Node::Release(a1, a2), Node::Release(b1, b2))
            if entails(a1, b1) && entails(a2, b2) =>
        {
            return true
        }
        _ => {}
    }
    // p ⊑ ψ implies p ⊑ χ U ψ
    if let Node::Until(_, b2) = q.node() {
        if entails(p, b2) {
            return true;
        }
    }
    // φ ⊑ q implies χ R φ ⊑ q
    if let Node::Release(_, a2) = p.node() {
        if entails(a2, q) {
            return true;
        }
    }
    // α ⊑ F β implies χ U α ⊑ F β
    if let (Node::Until(_, a2), Some(_)) = (p.node(), q.as_eventually()) {
        if entails(a2, q) {
            return true;
        }
    }
    // G α ⊑ β implies G α ⊑ χ R β
    if let (Some(_), Node::Release(_, b2)) = (p.as_always(), q.node()) {
        if entails(p, b2) {
            return true;
        }
    }
    false
}

/// Drops disjuncts entailed by another disjunct and conjuncts entailing
/// another conjunct.
fn prune_junction(children: &[Formula], conj: bool) -> Vec<Formula> {
    let mut alive = vec![true; children.len()];
    for i in 0..children.len() {
        let dominated = (0..children.len()).any(|j| {
            j != i
                && alive[j]
                && if conj {
                    entails(&children[j], &children[i])
                } else {
                    entails(&children[i], &children[j])
                }
        });
        if dominated {
            alive[i] = false;
        }
    }
    children
        .iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(c, _)| c.clone())
        .collect()
}

/// Bottom-up simplification: `FF → F`, `GG → G`, `GF(φ U ψ) → GF ψ`,
/// `FG(φ U ψ) → GF ψ ∧ FG(φ ∨ ψ)` and junction subsumption.
pub fn simplify(formula: &Formula) -> Formula {
    let rebuilt = match formula.node() {
        Node::True | Node::False | Node::Atom(_) | Node::NegAtom(_) => return formula.clone(),
        Node::And(cs) => {
            let cs: Vec<Formula> = cs.iter().map(simplify).collect();
            let joined = Formula::and(cs);
            match joined.node() {
                Node::And(cs) => Formula::and(prune_junction(cs, true)),
                _ => joined,
            }
        }
        Node::Or(cs) => {
            let cs: Vec<Formula> = cs.iter().map(simplify).collect();
            let joined = Formula::or(cs);
            match joined.node() {
                Node::Or(cs) => Formula::or(prune_junction(cs, false)),
                _ => joined,
            }
        }
        Node::Next(c) => Formula::next(simplify(c)),
        Node::Until(l, r) => Formula::until(simplify(l), simplify(r)),
        Node::Release(l, r) => Formula::release(simplify(l), simplify(r)),
    };
    let local = [Rule::GfUntil, Rule::FgUntil, Rule::FF, Rule::GG]
        .iter()
        .find_map(|rule| rule.apply(&rebuilt));
    match local {
        Some(next) => simplify(&next),
        None => rebuilt,
    }
}

/// Individually applicable rewrite rules. Each is language-preserving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `FG(F φ) → GF φ`
    FgF,
    /// `GF(F φ) → GF φ`
    GfF,
    /// `FG(G φ) → FG φ`
    FgG,
    /// `GF(G φ) → FG φ`
    GfG,
    /// `FG(X φ) → FG φ`
    FgX,
    /// `GF(X φ) → GF φ`
    GfX,
    /// `FG(φ ∧ ψ) → FG φ ∧ FG ψ`
    FgAnd,
    /// `GF(φ ∨ ψ) → GF φ ∨ GF ψ`
    GfOr,
    /// `FG(φ ∨ F ψ) → FG φ ∨ GF ψ`
    FgOrF,
    /// `GF(φ ∧ F ψ) → GF φ ∧ GF ψ`
    GfAndF,
    /// `FG(φ ∨ G ψ) → FG φ ∨ FG ψ`
    FgOrG,
    /// `GF(φ ∧ G ψ) → GF φ ∧ FG ψ`
    GfAndG,
    /// `FG φ → FG(cnf φ)` for `φ` outside LTL(X)
    FgCnf,
    /// `GF φ → GF(dnf φ)` for `φ` outside LTL(X)
    GfDnf,
    /// `GF(φ U ψ) → GF ψ`
    GfUntil,
    /// `FG(φ U ψ) → GF ψ ∧ FG(φ ∨ ψ)`
    FgUntil,
    /// `F F φ → F φ`
    FF,
    /// `G G φ → G φ`
    GG,
    /// Under `FG`/`GF` with an argument outside LTL(X): `X` distributes over
    /// `∧`/`∨` and commutes with `F`/`G`.
    LiftNext,
}

impl Rule {
    /// The fourteen fairness normal form rules.
    pub const NORMAL_FORM: [Rule; 14] = [
        Rule::FgF,
        Rule::GfF,
        Rule::FgG,
        Rule::GfG,
        Rule::FgX,
        Rule::GfX,
        Rule::FgAnd,
        Rule::GfOr,
        Rule::FgOrF,
        Rule::GfAndF,
        Rule::FgOrG,
        Rule::GfAndG,
        Rule::FgCnf,
        Rule::GfDnf,
    ];

    pub const ALL: [Rule; 19] = [
        Rule::FgF,
        Rule::GfF,
        Rule::FgG,
        Rule::GfG,
        Rule::FgX,
        Rule::GfX,
        Rule::FgAnd,
        Rule::GfOr,
        Rule::FgOrF,
        Rule::GfAndF,
        Rule::FgOrG,
        Rule::GfAndG,
        Rule::FgCnf,
        Rule::GfDnf,
        Rule::GfUntil,
        Rule::FgUntil,
        Rule::FF,
        Rule::GG,
        Rule::LiftNext,
    ];

    /// The left-hand side instantiated with `phi` and `psi`. Rules with a
    /// single metavariable ignore `psi`.
    pub fn instantiate(self, phi: &Formula, psi: &Formula) -> Formula {
        let (p, q) = (phi.clone(), psi.clone());
        match self {
            Rule::FgF => Formula::fg(Formula::eventually(p)),
            Rule::GfF => Formula::gf(Formula::eventually(p)),
            Rule::FgG => Formula::fg(Formula::always(p)),
            Rule::GfG => Formula::gf(Formula::always(p)),
            Rule::FgX => Formula::fg(Formula::next(p)),
            Rule::GfX => Formula::gf(Formula::next(p)),
            Rule::FgAnd => Formula::fg(Formula::and([p, q])),
            Rule::GfOr => Formula::gf(Formula::or([p, q])),
            Rule::FgOrF => Formula::fg(Formula::or([p, Formula::eventually(q)])),
            Rule::GfAndF => Formula::gf(Formula::and([p, Formula::eventually(q)])),
            Rule::FgOrG => Formula::fg(Formula::or([p, Formula::always(q)])),
            Rule::GfAndG => Formula::gf(Formula::and([p, Formula::always(q)])),
            // (φ ∧ F ψ) ∨ G φ, outside LTL(X) with a conjunction to distribute
            Rule::FgCnf => Formula::fg(Formula::or([
                Formula::and([p.clone(), Formula::eventually(q)]),
                Formula::always(p),
            ])),
            Rule::GfDnf => Formula::gf(Formula::and([
                Formula::or([p.clone(), Formula::always(q)]),
                Formula::eventually(p),
            ])),
            Rule::GfUntil => Formula::gf(Formula::until(p, q)),
            Rule::FgUntil => Formula::fg(Formula::until(p, q)),
            Rule::FF => Formula::eventually(Formula::eventually(p)),
            Rule::GG => Formula::always(Formula::always(p)),
            Rule::LiftNext => Formula::fg(Formula::or([p, Formula::next(Formula::eventually(q))])),
        }
    }

    /// Applies the rule at the root of `formula`, if it matches and changes
    /// something.
    pub fn apply(self, formula: &Formula) -> Option<Formula> {
        let fg_arg = formula.as_fg();
        let gf_arg = formula.as_gf();
        let out = match self {
            Rule::FgF => Formula::gf(fg_arg?.as_eventually()?.clone()),
            Rule::GfF => Formula::gf(gf_arg?.as_eventually()?.clone()),
            Rule::FgG => Formula::fg(fg_arg?.as_always()?.clone()),
            Rule::GfG => Formula::fg(gf_arg?.as_always()?.clone()),
            Rule::FgX => match fg_arg?.node() {
                Node::Next(p) => Formula::fg(p.clone()),
                _ => return None,
            },
            Rule::GfX => match gf_arg?.node() {
                Node::Next(p) => Formula::gf(p.clone()),
                _ => return None,
            },
            Rule::FgAnd => match fg_arg?.node() {
                Node::And(cs) => Formula::and(cs.iter().cloned().map(Formula::fg)),
                _ => return None,
            },
            Rule::GfOr => match gf_arg?.node() {
                Node::Or(cs) => Formula::or(cs.iter().cloned().map(Formula::gf)),
                _ => return None,
            },
            Rule::FgOrF | Rule::FgOrG => {
                let Node::Or(cs) = fg_arg?.node() else {
                    return None;
                };
                let want_f = self == Rule::FgOrF;
                let pos = cs.iter().position(|c| {
                    if want_f {
                        c.as_eventually().is_some()
                    } else {
                        c.as_always().is_some()
                    }
                })?;
                let rest = Formula::or(
                    cs.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != pos)
                        .map(|(_, c)| c.clone()),
                );
                let extracted = if want_f {
                    Formula::gf(cs[pos].as_eventually()?.clone())
                } else {
                    Formula::fg(cs[pos].as_always()?.clone())
                };
                Formula::or([Formula::fg(rest), extracted])
            }
            Rule::GfAndF | Rule::GfAndG => {
                let Node::And(cs) = gf_arg?.node() else {
                    return None;
                };
                let want_f = self == Rule::GfAndF;
                let pos = cs.iter().position(|c| {
                    if want_f {
                        c.as_eventually().is_some()
                    } else {
                        c.as_always().is_some()
                    }
                })?;
                let rest = Formula::and(
                    cs.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != pos)
                        .map(|(_, c)| c.clone()),
                );
                let extracted = if want_f {
                    Formula::gf(cs[pos].as_eventually()?.clone())
                } else {
                    Formula::fg(cs[pos].as_always()?.clone())
                };
                Formula::and([Formula::gf(rest), extracted])
            }
            Rule::FgCnf => {
                let arg = fg_arg?;
                if arg.is_ltl_x() {
                    return None;
                }
                Formula::fg(to_cnf(arg))
            }
            Rule::GfDnf => {
                let arg = gf_arg?;
                if arg.is_ltl_x() {
                    return None;
                }
                Formula::gf(to_dnf(arg))
            }
            Rule::GfUntil => match gf_arg?.node() {
                Node::Until(_, r) => Formula::gf(r.clone()),
                _ => return None,
            },
            Rule::FgUntil => match fg_arg?.node() {
                Node::Until(l, r) => Formula::and([
                    Formula::gf(r.clone()),
                    Formula::fg(Formula::or([l.clone(), r.clone()])),
                ]),
                _ => return None,
            },
            Rule::FF => Formula::eventually(formula.as_eventually()?.as_eventually()?.clone()),
            Rule::GG => Formula::always(formula.as_always()?.as_always()?.clone()),
            Rule::LiftNext => {
                if let Some(arg) = fg_arg.filter(|a| !a.is_ltl_x()) {
                    Formula::fg(lift_next(arg))
                } else {
                    Formula::gf(lift_next(gf_arg.filter(|a| !a.is_ltl_x())?))
                }
            }
        };
        (out != *formula).then_some(out)
    }
}

/// Pushes `X` below `∧`/`∨` and above `F`/`G` throughout the skeleton, so
/// that `F`/`G` operands become visible to the normal form rules.
fn lift_next(formula: &Formula) -> Formula {
    match formula.node() {
        Node::And(cs) => Formula::and(cs.iter().map(lift_next)),
        Node::Or(cs) => Formula::or(cs.iter().map(lift_next)),
        Node::Next(inner) => {
            let inner = lift_next(inner);
            match inner.node() {
                Node::And(cs) => {
                    Formula::and(cs.iter().map(|c| lift_next(&Formula::next(c.clone()))))
                }
                Node::Or(cs) => {
                    Formula::or(cs.iter().map(|c| lift_next(&Formula::next(c.clone()))))
                }
                _ => {
                    if let Some(body) = inner.as_eventually() {
                        Formula::eventually(lift_next(&Formula::next(body.clone())))
                    } else if let Some(body) = inner.as_always() {
                        Formula::always(lift_next(&Formula::next(body.clone())))
                    } else {
                        Formula::next(inner)
                    }
                }
            }
        }
        _ => formula.clone(),
    }
}

/// Conjunctive normal form of the propositional skeleton.
pub fn to_cnf(formula: &Formula) -> Formula {
    Formula::and(clauses(formula, true).into_iter().map(Formula::or))
}

/// Disjunctive normal form of the propositional skeleton.
pub fn to_dnf(formula: &Formula) -> Formula {
    Formula::or(clauses(formula, false).into_iter().map(Formula::and))
}

/// For `cnf`, a set of clauses (sets of disjuncts); otherwise a set of cubes.
fn clauses(formula: &Formula, cnf: bool) -> BTreeSet<BTreeSet<Formula>> {
    let (outer, inner) = match formula.node() {
        Node::And(cs) => (cnf, cs),
        Node::Or(cs) => (!cnf, cs),
        Node::True | Node::False => {
            // In CNF tt is the empty conjunction and ff the empty clause.
            return if formula.is_true() == cnf {
                BTreeSet::new()
            } else {
                [BTreeSet::new()].into_iter().collect()
            };
        }
        _ => {
            return [[formula.clone()].into_iter().collect()]
                .into_iter()
                .collect()
        }
    };
    if outer {
        // Same junction as the normal form's outer level: union of parts.
        inner.iter().flat_map(|c| clauses(c, cnf)).collect()
    } else {
        // Distribute: pick one clause from each child.
        let mut acc: BTreeSet<BTreeSet<Formula>> = [BTreeSet::new()].into_iter().collect();
        for c in inner {
            let parts = clauses(c, cnf);
            let mut next = BTreeSet::new();
            for a in &acc {
                for p in &parts {
                    next.insert(a.union(p).cloned().collect());
                }
            }
            acc = next;
        }
        acc
    }
}

/// Exhaustive application of the normal form rules, innermost first. The
/// CNF/DNF rules are tried only when nothing else applies.
pub fn fairness_normal_form(formula: &Formula) -> Formula {
    let rebuilt = match formula.node() {
        Node::True | Node::False | Node::Atom(_) | Node::NegAtom(_) => return formula.clone(),
        Node::And(cs) => Formula::and(cs.iter().map(fairness_normal_form)),
        Node::Or(cs) => Formula::or(cs.iter().map(fairness_normal_form)),
        Node::Next(c) => Formula::next(fairness_normal_form(c)),
        Node::Until(l, r) => Formula::until(fairness_normal_form(l), fairness_normal_form(r)),
        Node::Release(l, r) => Formula::release(fairness_normal_form(l), fairness_normal_form(r)),
    };
    let first = Rule::NORMAL_FORM[..12]
        .iter()
        .find_map(|rule| rule.apply(&rebuilt))
        .or_else(|| {
            [Rule::FgCnf, Rule::GfDnf, Rule::LiftNext]
                .iter()
                .find_map(|rule| rule.apply(&rebuilt))
                // A CNF that only reorders leads nowhere.
                .filter(rewrites_further)
        });
    match first {
        Some(out) => fairness_normal_form(&out),
        None => rebuilt,
    }
}

/// Whether some non-normal-form-fallback rule fires on the root or on an
/// `FG`/`GF` directly below the root's skeleton.
fn rewrites_further(formula: &Formula) -> bool {
    let fires = |f: &Formula| Rule::NORMAL_FORM[..12].iter().any(|r| r.apply(f).is_some());
    fires(formula) || formula.skeleton_atoms().iter().any(fires)
}

/// Simplification and the fairness normal form, alternated to a fixpoint.
pub fn normalize(formula: &Formula) -> Formula {
    let mut current = simplify(formula);
    loop {
        let next = simplify(&fairness_normal_form(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::prop::prop_equiv;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn until_under_fairness() {
        assert_eq!(simplify(&f("G F (a U b)")), f("G F b"));
        assert_eq!(simplify(&f("F G (a U b)")), f("G F b & F G (a | b)"));
        assert_eq!(simplify(&Formula::and([f("a"), Formula::tt()])), f("a"));
    }

    #[test]
    fn subsumption() {
        assert_eq!(simplify(&f("F b2 | F (b1 & F b2)")), f("F b2"));
        assert_eq!(simplify(&f("a | a & b")), f("a"));
        assert_eq!(simplify(&f("G a & G (a | b)")), f("G a"));
        assert_eq!(simplify(&f("F F a")), f("F a"));
        assert_eq!(simplify(&f("a U b | b")), f("a U b"));
    }

    #[test]
    fn entailment_is_not_reflexively_symmetric() {
        assert!(entails(&f("a & b"), &f("a")));
        assert!(!entails(&f("a"), &f("a & b")));
        assert!(entails(&f("G a"), &f("a")));
        assert!(entails(&f("a"), &f("F a")));
        assert!(!entails(&f("F a"), &f("a")));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(fairness_normal_form(&f("F G F a")), f("G F a"));
        assert_eq!(fairness_normal_form(&f("G F a")), f("G F a"));
        assert_eq!(
            fairness_normal_form(&f("F G ((a | F b) & c)")),
            f("(F G a | G F b) & F G c")
        );
        assert_eq!(fairness_normal_form(&f("G F (G c)")), f("F G c"));
        assert_eq!(fairness_normal_form(&f("F G X a")), f("F G a"));
        assert_eq!(
            fairness_normal_form(&f("G F (a & X F b)")),
            f("G F a & G F b")
        );
    }

    #[test]
    fn normal_form_is_idempotent() {
        for text in [
            "F G ((a | F b) & c)",
            "G F (a & (G b | F c))",
            "F G (a | X G b) & G F (X X a)",
        ] {
            let once = fairness_normal_form(&f(text));
            assert_eq!(fairness_normal_form(&once), once);
        }
    }

    #[test]
    fn normal_forms() {
        let cnf = to_cnf(&f("(a & b) | c"));
        assert_eq!(cnf, f("(a | c) & (b | c)"));
        assert_eq!(to_cnf(&cnf), cnf);
        let dnf = to_dnf(&f("(F a | G b) & (F c | G d)"));
        assert!(matches!(dnf.node(), Node::Or(cs) if cs.len() == 4));
        assert!(prop_equiv(&dnf, &f("(F a | G b) & (F c | G d)")));
    }

    #[test]
    fn rules_fire_on_their_instances() {
        let (p, q) = (f("a"), f("b & X c"));
        for rule in Rule::ALL {
            let lhs = rule.instantiate(&p, &q);
            assert!(
                rule.apply(&lhs).is_some(),
                "{rule:?} does not fire on {lhs}"
            );
        }
    }
}
