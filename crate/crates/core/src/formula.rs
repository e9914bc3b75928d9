//! LTL formulas in negation normal form.
//!
//! A [`Formula`] is an immutable, reference-counted tree. All constructors
//! canonicalize: conjunctions and disjunctions are flattened, sorted under the
//! total order of [`Node`], deduplicated and constant-folded. `F φ` is stored
//! as `tt U φ` and `G φ` as `ff R φ`.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// One node of a formula tree.
///
/// The derived order ranks by variant first and then compares the payload,
/// which gives the canonical order used for `And`/`Or` children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    True,
    False,
    Atom(String),
    NegAtom(String),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Formula),
    Until(Formula, Formula),
    Release(Formula, Formula),
}

struct Inner {
    node: Node,
    hash: u64,
}

/// An LTL formula in negation normal form.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

impl Formula {
    fn from_node(node: Node) -> Formula {
        let mut hasher = DefaultHasher::new();
        node.hash(&mut hasher);
        Formula(Arc::new(Inner {
            hash: hasher.finish(),
            node,
        }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn tt() -> Formula {
        static TT: OnceLock<Formula> = OnceLock::new();
        TT.get_or_init(|| Formula::from_node(Node::True)).clone()
    }

    pub fn ff() -> Formula {
        static FF: OnceLock<Formula> = OnceLock::new();
        FF.get_or_init(|| Formula::from_node(Node::False)).clone()
    }

    pub fn constant(value: bool) -> Formula {
        if value {
            Formula::tt()
        } else {
            Formula::ff()
        }
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::from_node(Node::Atom(name.into()))
    }

    pub fn neg_atom(name: impl Into<String>) -> Formula {
        Formula::from_node(Node::NegAtom(name.into()))
    }

    pub fn literal(name: impl Into<String>, positive: bool) -> Formula {
        if positive {
            Formula::atom(name)
        } else {
            Formula::neg_atom(name)
        }
    }

    /// Canonical conjunction.
    pub fn and<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        Formula::junction(items, true)
    }

    /// Canonical disjunction.
    pub fn or<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        Formula::junction(items, false)
    }

    fn junction<I: IntoIterator<Item = Formula>>(items: I, conj: bool) -> Formula {
        let mut children = Vec::new();
        for item in items {
            match item.node() {
                Node::True if conj => {}
                Node::False if !conj => {}
                Node::False if conj => return Formula::ff(),
                Node::True if !conj => return Formula::tt(),
                Node::And(cs) if conj => children.extend(cs.iter().cloned()),
                Node::Or(cs) if !conj => children.extend(cs.iter().cloned()),
                _ => children.push(item),
            }
        }
        children.sort();
        children.dedup();
        // a & !a = ff, a | !a = tt
        let positives: HashSet<&str> = children
            .iter()
            .filter_map(|c| match c.node() {
                Node::Atom(a) => Some(a.as_str()),
                _ => None,
            })
            .collect();
        let clash = children
            .iter()
            .any(|c| matches!(c.node(), Node::NegAtom(a) if positives.contains(a.as_str())));
        if clash {
            return Formula::constant(!conj);
        }
        match children.len() {
            0 => Formula::constant(conj),
            1 => children.pop().unwrap(),
            _ if conj => Formula::from_node(Node::And(children)),
            _ => Formula::from_node(Node::Or(children)),
        }
    }

    pub fn next(inner: Formula) -> Formula {
        match inner.node() {
            Node::True | Node::False => inner,
            _ => Formula::from_node(Node::Next(inner)),
        }
    }

    pub fn until(left: Formula, right: Formula) -> Formula {
        if right.is_constant() || left.is_false() || left == right {
            return right;
        }
        Formula::from_node(Node::Until(left, right))
    }

    pub fn release(left: Formula, right: Formula) -> Formula {
        if right.is_constant() || left.is_true() || left == right {
            return right;
        }
        Formula::from_node(Node::Release(left, right))
    }

    /// `F φ`, stored as `tt U φ`.
    pub fn eventually(inner: Formula) -> Formula {
        Formula::until(Formula::tt(), inner)
    }

    /// `G φ`, stored as `ff R φ`.
    pub fn always(inner: Formula) -> Formula {
        Formula::release(Formula::ff(), inner)
    }

    pub fn gf(inner: Formula) -> Formula {
        Formula::always(Formula::eventually(inner))
    }

    pub fn fg(inner: Formula) -> Formula {
        Formula::eventually(Formula::always(inner))
    }

    /// `X^n φ`.
    pub fn next_n(inner: Formula, n: usize) -> Formula {
        (0..n).fold(inner, |f, _| Formula::next(f))
    }

    pub fn is_true(&self) -> bool {
        matches!(self.node(), Node::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.node(), Node::False)
    }

    pub fn is_constant(&self) -> bool {
        self.is_true() || self.is_false()
    }

    pub fn is_literal(&self) -> bool {
        matches!(self.node(), Node::Atom(_) | Node::NegAtom(_))
    }

    pub fn is_temporal(&self) -> bool {
        matches!(
            self.node(),
            Node::Next(_) | Node::Until(..) | Node::Release(..)
        )
    }

    /// Returns `φ` if this is `F φ`.
    pub fn as_eventually(&self) -> Option<&Formula> {
        match self.node() {
            Node::Until(l, r) if l.is_true() => Some(r),
            _ => None,
        }
    }

    /// Returns `φ` if this is `G φ`.
    pub fn as_always(&self) -> Option<&Formula> {
        match self.node() {
            Node::Release(l, r) if l.is_false() => Some(r),
            _ => None,
        }
    }

    /// Returns `φ` if this is `G F φ`.
    pub fn as_gf(&self) -> Option<&Formula> {
        self.as_always().and_then(Formula::as_eventually)
    }

    /// Returns `φ` if this is `F G φ`.
    pub fn as_fg(&self) -> Option<&Formula> {
        self.as_eventually().and_then(Formula::as_always)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self.node() {
            Node::True | Node::False | Node::Atom(_) | Node::NegAtom(_) => Vec::new(),
            Node::And(cs) | Node::Or(cs) => cs.iter().collect(),
            Node::Next(f) => vec![f],
            Node::Until(l, r) | Node::Release(l, r) => vec![l, r],
        }
    }

    /// The negation of this formula, pushed down to the atoms.
    pub fn negate(&self) -> Formula {
        match self.node() {
            Node::True => Formula::ff(),
            Node::False => Formula::tt(),
            Node::Atom(a) => Formula::neg_atom(a.clone()),
            Node::NegAtom(a) => Formula::atom(a.clone()),
            Node::And(cs) => Formula::or(cs.iter().map(Formula::negate)),
            Node::Or(cs) => Formula::and(cs.iter().map(Formula::negate)),
            Node::Next(f) => Formula::next(f.negate()),
            Node::Until(l, r) => Formula::release(l.negate(), r.negate()),
            Node::Release(l, r) => Formula::until(l.negate(), r.negate()),
        }
    }

    /// Number of nodes in the tree (shared subtrees counted per occurrence).
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Atomic propositions occurring in the formula.
    pub fn aps(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_aps(&mut out);
        out
    }

    fn collect_aps(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Atom(a) | Node::NegAtom(a) => {
                out.insert(a.clone());
            }
            _ => {
                for c in self.children() {
                    c.collect_aps(out);
                }
            }
        }
    }

    /// Maximal temporal subformulas not nested below another temporal operator.
    pub fn sff(&self) -> BTreeSet<Formula> {
        self.skeleton_atoms()
            .into_iter()
            .filter(Formula::is_temporal)
            .collect()
    }

    /// Leaves of the propositional skeleton: the members of [`Formula::sff`]
    /// together with literals that sit outside every temporal operator,
    /// listed in order of first occurrence in a depth-first traversal.
    pub fn skeleton_atoms(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_skeleton_atoms(&mut out, &mut seen);
        out
    }

    fn collect_skeleton_atoms(&self, out: &mut Vec<Formula>, seen: &mut HashSet<Formula>) {
        match self.node() {
            Node::True | Node::False => {}
            Node::And(cs) | Node::Or(cs) => {
                for c in cs {
                    c.collect_skeleton_atoms(out, seen);
                }
            }
            _ => {
                if seen.insert(self.clone()) {
                    out.push(self.clone());
                }
            }
        }
    }

    /// Children sets of every conjunction in the propositional skeleton.
    pub fn conjunct_sets(&self) -> BTreeSet<BTreeSet<Formula>> {
        let mut out = BTreeSet::new();
        self.collect_junction_sets(true, &mut out);
        out
    }

    /// Children sets of every disjunction in the propositional skeleton.
    pub fn disjunct_sets(&self) -> BTreeSet<BTreeSet<Formula>> {
        let mut out = BTreeSet::new();
        self.collect_junction_sets(false, &mut out);
        out
    }

    fn collect_junction_sets(&self, conj: bool, out: &mut BTreeSet<BTreeSet<Formula>>) {
        match self.node() {
            Node::And(cs) | Node::Or(cs) => {
                if conj == matches!(self.node(), Node::And(_)) {
                    out.insert(cs.iter().cloned().collect());
                }
                for c in cs {
                    c.collect_junction_sets(conj, out);
                }
            }
            _ => {}
        }
    }

    /// Replaces every occurrence of a member of `targets` by `replacement`
    /// and re-canonicalizes.
    pub fn substitute(&self, targets: &BTreeSet<Formula>, replacement: &Formula) -> Formula {
        if targets.is_empty() {
            return self.clone();
        }
        self.map_top_down(&|f| targets.contains(f).then(|| replacement.clone()))
    }

    /// Rebuilds the tree, replacing a subtree whenever `f` returns `Some`.
    pub fn map_top_down(&self, f: &dyn Fn(&Formula) -> Option<Formula>) -> Formula {
        if let Some(replaced) = f(self) {
            return replaced;
        }
        match self.node() {
            Node::True | Node::False | Node::Atom(_) | Node::NegAtom(_) => self.clone(),
            Node::And(cs) => Formula::and(cs.iter().map(|c| c.map_top_down(f))),
            Node::Or(cs) => Formula::or(cs.iter().map(|c| c.map_top_down(f))),
            Node::Next(c) => Formula::next(c.map_top_down(f)),
            Node::Until(l, r) => Formula::until(l.map_top_down(f), r.map_top_down(f)),
            Node::Release(l, r) => Formula::release(l.map_top_down(f), r.map_top_down(f)),
        }
    }

    /// Member of LTL(X): no `U` or `R`.
    pub fn is_ltl_x(&self) -> bool {
        match self.node() {
            Node::Until(..) | Node::Release(..) => false,
            _ => self.children().iter().all(|c| c.is_ltl_x()),
        }
    }

    /// Member of LTL(U, X): the cosafety fragment.
    pub fn is_cosafety(&self) -> bool {
        match self.node() {
            Node::Release(..) => false,
            _ => self.children().iter().all(|c| c.is_cosafety()),
        }
    }

    /// Member of LTL(R, X): the safety fragment.
    pub fn is_safety(&self) -> bool {
        match self.node() {
            Node::Until(..) => false,
            _ => self.children().iter().all(|c| c.is_safety()),
        }
    }

    /// Nesting depth of `X` operators.
    pub fn next_depth(&self) -> usize {
        let below = self
            .children()
            .iter()
            .map(|c| c.next_depth())
            .max()
            .unwrap_or(0);
        match self.node() {
            Node::Next(_) => below + 1,
            _ => below,
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.node.cmp(&other.0.node)
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

/// Prints in the input grammar, re-sugaring `F` and `G`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::True => write!(f, "true"),
            Node::False => write!(f, "false"),
            Node::Atom(a) => write!(f, "{a}"),
            Node::NegAtom(a) => write!(f, "!{a}"),
            Node::And(cs) => write_junction(f, cs, " & "),
            Node::Or(cs) => write_junction(f, cs, " | "),
            Node::Next(c) => {
                write!(f, "X ")?;
                write_operand(f, c)
            }
            Node::Until(l, r) => {
                if l.is_true() {
                    write!(f, "F ")?;
                    return write_operand(f, r);
                }
                write_operand(f, l)?;
                write!(f, " U ")?;
                write_operand(f, r)
            }
            Node::Release(l, r) => {
                if l.is_false() {
                    write!(f, "G ")?;
                    return write_operand(f, r);
                }
                write_operand(f, l)?;
                write!(f, " R ")?;
                write_operand(f, r)
            }
        }
    }
}

fn is_binary(formula: &Formula) -> bool {
    match formula.node() {
        Node::And(_) | Node::Or(_) => true,
        Node::Until(l, _) => !l.is_true(),
        Node::Release(l, _) => !l.is_false(),
        _ => false,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, operand: &Formula) -> fmt::Result {
    if is_binary(operand) {
        write!(f, "({operand})")
    } else {
        write!(f, "{operand}")
    }
}

fn write_junction(f: &mut fmt::Formatter<'_>, children: &[Formula], sep: &str) -> fmt::Result {
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write_operand(f, c)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }
    fn c() -> Formula {
        Formula::atom("c")
    }

    fn set(items: &[Formula]) -> BTreeSet<Formula> {
        items.iter().cloned().collect()
    }

    #[test]
    fn junctions_are_canonical() {
        let x = Formula::and([b(), a(), Formula::and([a(), c()])]);
        let y = Formula::and([c(), b(), a()]);
        assert_eq!(x, y);
        assert_eq!(Formula::and([a(), Formula::tt()]), a());
        assert_eq!(Formula::and([a(), Formula::ff()]), Formula::ff());
        assert_eq!(Formula::or([a(), Formula::ff()]), a());
        assert_eq!(Formula::or([a(), a().negate()]), Formula::tt());
        assert_eq!(Formula::and(Vec::new()), Formula::tt());
    }

    #[test]
    fn sugar_is_desugared() {
        let f = Formula::eventually(a());
        assert!(matches!(f.node(), Node::Until(l, _) if l.is_true()));
        let g = Formula::always(a());
        assert!(matches!(g.node(), Node::Release(l, _) if l.is_false()));
        assert_eq!(Formula::gf(a()).as_gf(), Some(&a()));
        assert_eq!(Formula::fg(a()).as_fg(), Some(&a()));
        assert_eq!(Formula::fg(a()).as_gf(), None);
    }

    #[test]
    fn sff_examples() {
        // (FG a) | X b
        let f = Formula::or([Formula::fg(a()), Formula::next(b())]);
        assert_eq!(f.sff(), set(&[Formula::fg(a()), Formula::next(b())]));
        assert!(Formula::tt().sff().is_empty());
        // F a & (X b | G c)
        let g = Formula::and([
            Formula::eventually(a()),
            Formula::or([Formula::next(b()), Formula::always(c())]),
        ]);
        assert_eq!(
            g.sff(),
            set(&[
                Formula::eventually(a()),
                Formula::next(b()),
                Formula::always(c())
            ])
        );
    }

    #[test]
    fn junction_set_examples() {
        let xb_or_gc = Formula::or([Formula::next(b()), Formula::always(c())]);
        let g = Formula::and([Formula::eventually(a()), xb_or_gc.clone()]);
        assert_eq!(
            g.conjunct_sets(),
            [set(&[Formula::eventually(a()), xb_or_gc])]
                .into_iter()
                .collect()
        );
        assert_eq!(
            g.disjunct_sets(),
            [set(&[Formula::next(b()), Formula::always(c())])]
                .into_iter()
                .collect()
        );
        assert!(a().conjunct_sets().is_empty());
        assert!(a().disjunct_sets().is_empty());

        let fga_gfb = Formula::and([Formula::fg(a()), Formula::gf(b())]);
        let h = Formula::or([fga_gfb.clone(), Formula::fg(c())]);
        assert_eq!(
            h.disjunct_sets(),
            [set(&[fga_gfb, Formula::fg(c())])].into_iter().collect()
        );
        assert_eq!(
            h.conjunct_sets(),
            [set(&[Formula::fg(a()), Formula::gf(b())])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn substitution_examples() {
        let xb_or_gc = Formula::or([Formula::next(b()), Formula::always(c())]);
        let g = Formula::and([Formula::eventually(a()), xb_or_gc.clone()]);
        let targets = set(&[Formula::eventually(a()), Formula::always(a())]);
        assert_eq!(g.substitute(&targets, &Formula::tt()), xb_or_gc);
        assert_eq!(g.substitute(&BTreeSet::new(), &Formula::tt()), g);

        let h = Formula::or([Formula::fg(a()), Formula::gf(b())]);
        assert_eq!(
            h.substitute(&set(&[Formula::gf(b())]), &Formula::ff()),
            Formula::fg(a())
        );
    }

    #[test]
    fn negation_dualizes() {
        let f = Formula::until(a(), b());
        assert_eq!(f.negate(), Formula::release(a().negate(), b().negate()));
        assert_eq!(f.negate().negate(), f);
        assert_eq!(Formula::next(a()).negate(), Formula::next(a().negate()));
    }

    #[test]
    fn display_resugars() {
        let f = Formula::and([
            Formula::gf(Formula::and([
                Formula::atom("a1"),
                Formula::next(Formula::atom("a2")),
            ])),
            Formula::eventually(Formula::and([
                Formula::atom("b1"),
                Formula::eventually(Formula::atom("b2")),
            ])),
        ]);
        assert_eq!(f.to_string(), "F (b1 & F b2) & G F (a1 & X a2)");
        assert_eq!(Formula::until(a(), b()).negate().to_string(), "!a R !b");
    }

    #[test]
    fn fragment_predicates() {
        assert!(Formula::next(a()).is_ltl_x());
        assert!(Formula::eventually(a()).is_cosafety());
        assert!(!Formula::eventually(a()).is_safety());
        assert!(Formula::always(a()).is_safety());
        assert!(!Formula::gf(a()).is_cosafety());
        assert_eq!(Formula::next_n(a(), 3).next_depth(), 3);
    }
}
