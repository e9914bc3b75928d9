//! Buffer automata for `GF φ` and `FG φ` with `φ` in LTL(X).
//!
//! The automaton remembers the last `n` letters, each masked down to the
//! propositions that can still influence `φ`, and decides on every step
//! whether the window ending with the current letter satisfies `φ`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::acceptance::Acceptance;
use crate::error::{Error, Result};
use crate::formula::{Formula, Node};
use crate::tela::{Edge, MarkSet, Tela};

/// A finite word over sets of propositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Mask(pub Vec<BTreeSet<String>>);

impl Mask {
    pub fn empty() -> Mask {
        Mask(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise union; the shorter operand is padded with `∅`.
    pub fn join(&self, other: &Mask) -> Mask {
        let n = self.len().max(other.len());
        Mask(
            (0..n)
                .map(|i| {
                    let mut s = self.0.get(i).cloned().unwrap_or_default();
                    if let Some(o) = other.0.get(i) {
                        s.extend(o.iter().cloned());
                    }
                    s
                })
                .collect(),
        )
    }

    /// Forward closure: position `i` becomes the union of positions `0..=i`.
    pub fn closure(&self) -> Mask {
        let mut acc = BTreeSet::new();
        Mask(
            self.0
                .iter()
                .map(|s| {
                    acc.extend(s.iter().cloned());
                    acc.clone()
                })
                .collect(),
        )
    }

    /// Removes the last position; `drop(ε) = ε`.
    pub fn drop_last(&self) -> Mask {
        let mut v = self.0.clone();
        v.pop();
        Mask(v)
    }

    /// Pointwise intersection of a word with the mask, truncated to the
    /// mask's length. Missing letters of `word` count as `∅`.
    pub fn meet(&self, word: &[BTreeSet<String>]) -> Vec<BTreeSet<String>> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, m)| match word.get(i) {
                Some(l) => l.intersection(m).cloned().collect(),
                None => BTreeSet::new(),
            })
            .collect()
    }

    /// Bitmask encoding over `ap`; propositions outside `ap` are dropped.
    pub fn to_bits(&self, ap: &[String]) -> Vec<u32> {
        self.0
            .iter()
            .map(|s| {
                ap.iter()
                    .enumerate()
                    .filter(|(_, a)| s.contains(*a))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect()
    }
}

/// The relevant history `H(φ)` of an LTL(X) formula.
pub fn relevant_history(formula: &Formula) -> Result<Mask> {
    match formula.node() {
        Node::True | Node::False => Ok(Mask::empty()),
        Node::Atom(a) | Node::NegAtom(a) => Ok(Mask(vec![[a.clone()].into_iter().collect()])),
        Node::And(cs) | Node::Or(cs) => cs
            .iter()
            .try_fold(Mask::empty(), |acc, c| Ok(acc.join(&relevant_history(c)?))),
        Node::Next(c) => {
            let mut v = vec![BTreeSet::new()];
            v.extend(relevant_history(c)?.0);
            Ok(Mask(v))
        }
        Node::Until(..) | Node::Release(..) => Err(Error::FragmentViolation {
            formula: formula.to_string(),
            expected: "LTL(X)",
        }),
    }
}

/// An LTL(X) formula compiled against a fixed proposition numbering.
#[derive(Debug, Clone)]
enum Compiled {
    Const(bool),
    Lit(u32, bool),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Next(Box<Compiled>),
}

impl Compiled {
    fn new(formula: &Formula, ap: &[String]) -> Result<Compiled> {
        let bit = |a: &String| -> Result<u32> {
            ap.iter()
                .position(|b| b == a)
                .map(|i| i as u32)
                .ok_or_else(|| {
                    Error::InvalidAutomaton(format!("proposition `{a}` missing from alphabet"))
                })
        };
        Ok(match formula.node() {
            Node::True => Compiled::Const(true),
            Node::False => Compiled::Const(false),
            Node::Atom(a) => Compiled::Lit(bit(a)?, true),
            Node::NegAtom(a) => Compiled::Lit(bit(a)?, false),
            Node::And(cs) => Compiled::And(
                cs.iter()
                    .map(|c| Compiled::new(c, ap))
                    .collect::<Result<_>>()?,
            ),
            Node::Or(cs) => Compiled::Or(
                cs.iter()
                    .map(|c| Compiled::new(c, ap))
                    .collect::<Result<_>>()?,
            ),
            Node::Next(c) => Compiled::Next(Box::new(Compiled::new(c, ap)?)),
            Node::Until(..) | Node::Release(..) => {
                return Err(Error::FragmentViolation {
                    formula: formula.to_string(),
                    expected: "LTL(X)",
                })
            }
        })
    }

    /// Satisfaction by `word · ∅^ω` from position `pos`.
    fn eval(&self, word: &[u32], pos: usize) -> bool {
        match self {
            Compiled::Const(v) => *v,
            Compiled::Lit(b, positive) => {
                let l = word.get(pos).copied().unwrap_or(0);
                (l >> b & 1 == 1) == *positive
            }
            Compiled::And(cs) => cs.iter().all(|c| c.eval(word, pos)),
            Compiled::Or(cs) => cs.iter().any(|c| c.eval(word, pos)),
            Compiled::Next(c) => c.eval(word, pos + 1),
        }
    }
}

/// Whether `word · ∅^ω ⊨ φ`, for `φ` in LTL(X).
pub fn eval_padded(formula: &Formula, word: &[BTreeSet<String>]) -> Result<bool> {
    let ap: Vec<String> = formula.aps().into_iter().collect();
    let compiled = Compiled::new(formula, &ap)?;
    let bits = Mask(word.to_vec()).to_bits(&ap);
    Ok(compiled.eval(&bits, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FairnessKind {
    /// `GF φ`
    InfinitelyOften,
    /// `FG φ`
    EventuallyAlways,
}

/// What the buffer construction needs to know about one fairness formula,
/// over a given alphabet.
#[derive(Debug, Clone)]
pub struct BufferSpec {
    pub kind: FairnessKind,
    pub body: Formula,
    compiled: Compiled,
    /// `cl(H(φ))` as bitmasks; its length is `n + 1` (or 0 for constants).
    closure: Vec<u32>,
}

impl BufferSpec {
    pub fn new(kind: FairnessKind, body: &Formula, ap: &[String]) -> Result<BufferSpec> {
        let history = relevant_history(body)?;
        Ok(BufferSpec {
            kind,
            body: body.clone(),
            compiled: Compiled::new(body, ap)?,
            closure: history.closure().to_bits(ap),
        })
    }

    /// Buffer length `n = max(|H| - 1, 0)`.
    pub fn len(&self) -> usize {
        self.closure.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `drop(cl(H(φ)))`: the masks of the buffer slots, oldest first.
    pub fn slot_masks(&self) -> &[u32] {
        &self.closure[..self.len()]
    }

    /// Whether `window · ∅^ω ⊨ φ`; `window` holds the buffer followed by the
    /// current letter.
    pub fn holds(&self, window: &[u32]) -> bool {
        self.compiled.eval(window, 0)
    }

    /// Whether the transition reading `window` carries the mark.
    pub fn marked(&self, window: &[u32]) -> bool {
        match self.kind {
            FairnessKind::InfinitelyOften => self.holds(window),
            FairnessKind::EventuallyAlways => !self.holds(window),
        }
    }

    pub fn acceptance(&self, mark: u32) -> Acceptance {
        match self.kind {
            FairnessKind::InfinitelyOften => Acceptance::Inf(mark),
            FairnessKind::EventuallyAlways => Acceptance::Fin(mark),
        }
    }

    pub fn formula(&self) -> Formula {
        match self.kind {
            FairnessKind::InfinitelyOften => Formula::gf(self.body.clone()),
            FairnessKind::EventuallyAlways => Formula::fg(self.body.clone()),
        }
    }
}

/// Buffer automaton over `aps(φ)`.
pub fn translate_buffer(kind: FairnessKind, body: &Formula, state_bound: usize) -> Result<Tela> {
    let ap: Vec<String> = body.aps().into_iter().collect();
    let spec = BufferSpec::new(kind, body, &ap)?;
    let masks = spec.slot_masks().to_vec();
    let n = masks.len();
    let letters = 1u32 << ap.len();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut states: Vec<Vec<u32>> = Vec::new();
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    let start = vec![0u32; n];
    index.insert(start.clone(), 0);
    states.push(start);
    let mut queue = VecDeque::from([0usize]);
    let mut window = vec![0u32; n + 1];
    while let Some(q) = queue.pop_front() {
        let w = states[q].clone();
        let mut row = Vec::with_capacity(letters as usize);
        for nu in 0..letters {
            window[..n].copy_from_slice(&w);
            window[n] = nu;
            let marks = if spec.marked(&window) {
                MarkSet::single(0)
            } else {
                MarkSet::new()
            };
            let next: Vec<u32> = (0..n).map(|i| window[i + 1] & masks[i]).collect();
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if states.len() >= state_bound {
                        return Err(Error::StateBound { bound: state_bound });
                    }
                    let t = states.len();
                    index.insert(next.clone(), t);
                    states.push(next);
                    queue.push_back(t);
                    t
                }
            };
            row.push(Edge::new(target, marks));
        }
        edges.push(row);
    }
    Tela::new(ap, 0, edges, spec.acceptance(0), 1)
}

/// Automaton for `GF φ`.
pub fn translate_gf(body: &Formula) -> Result<Tela> {
    translate_buffer(FairnessKind::InfinitelyOften, body, usize::MAX)
}

/// Automaton for `FG φ`.
pub fn translate_fg(body: &Formula) -> Result<Tela> {
    translate_buffer(FairnessKind::EventuallyAlways, body, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn mask(sets: &[&[&str]]) -> Mask {
        Mask(
            sets.iter()
                .map(|s| s.iter().map(|x| x.to_string()).collect())
                .collect(),
        )
    }

    #[test]
    fn history_examples() {
        assert_eq!(
            relevant_history(&f("a1 & X a2")).unwrap(),
            mask(&[&["a1"], &["a2"]])
        );
        assert_eq!(relevant_history(&Formula::tt()).unwrap(), Mask::empty());
        assert_eq!(
            relevant_history(&f("a | X (b & X c)")).unwrap(),
            mask(&[&["a"], &["b"], &["c"]])
        );
        assert!(relevant_history(&f("F a")).is_err());
    }

    #[test]
    fn mask_operations() {
        assert_eq!(
            mask(&[&["a"], &[], &["b"]]).closure(),
            mask(&[&["a"], &["a"], &["a", "b"]])
        );
        assert_eq!(mask(&[&["a1"], &["a2"]]).drop_last(), mask(&[&["a1"]]));
        assert_eq!(Mask::empty().drop_last(), Mask::empty());
        assert_eq!(
            mask(&[&["a"], &["b"]]).join(&mask(&[&["c"]])),
            mask(&[&["a", "c"], &["b"]])
        );
        let word = mask(&[&["a", "b"]]).0;
        assert_eq!(mask(&[&["a"], &["b"]]).meet(&word), mask(&[&["a"], &[]]).0);
    }

    #[test]
    fn running_example() {
        let a = translate_gf(&f("a1 & X a2")).unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.acceptance(), &Acceptance::Inf(0));
        // ap = [a1, a2]; state 1 is the buffer {a1}
        for q in 0..2 {
            for l in 0..4u32 {
                let accepting = a.edge(q, l).marks.contains(0);
                assert_eq!(accepting, q == 1 && l & 2 != 0, "state {q} letter {l}");
            }
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(translate_gf(&f("a")).unwrap().state_count(), 1);
        assert_eq!(translate_gf(&f("a & X X b")).unwrap().state_count(), 4);
        assert_eq!(
            translate_fg(&f("a | X b")).unwrap().acceptance(),
            &Acceptance::Fin(0)
        );
    }

    #[test]
    fn padded_evaluation() {
        let w = mask(&[&["a"]]).0;
        assert!(eval_padded(&f("a & X !b"), &w).unwrap());
        assert!(!eval_padded(&f("X a"), &w).unwrap());
    }
}
