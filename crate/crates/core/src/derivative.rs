//! Derivative automata for cosafety and safety formulas.
//!
//! States are propositional equivalence classes of the residual obligations
//! reached by repeatedly applying [`af_step`]. The classes of `tt` and `ff`
//! are traps.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::acceptance::Acceptance;
use crate::error::{Error, Result};
use crate::formula::{Formula, Node};
use crate::prop::PropClass;
use crate::rewrite::simplify;
use crate::tela::{Edge, MarkSet, Tela};

pub const DEFAULT_STATE_BOUND: usize = 100_000;

/// The one-letter left derivative, without simplification.
pub fn af_raw(formula: &Formula, holds: &dyn Fn(&str) -> bool) -> Formula {
    match formula.node() {
        Node::True | Node::False => formula.clone(),
        Node::Atom(a) => Formula::constant(holds(a)),
        Node::NegAtom(a) => Formula::constant(!holds(a)),
        Node::And(cs) => Formula::and(cs.iter().map(|c| af_raw(c, holds))),
        Node::Or(cs) => Formula::or(cs.iter().map(|c| af_raw(c, holds))),
        Node::Next(c) => c.clone(),
        Node::Until(l, r) => Formula::or([
            af_raw(r, holds),
            Formula::and([af_raw(l, holds), formula.clone()]),
        ]),
        Node::Release(l, r) => Formula::and([
            af_raw(r, holds),
            Formula::or([af_raw(l, holds), formula.clone()]),
        ]),
    }
}

/// The derivative of `formula` by `letter`, simplified.
pub fn af_step(formula: &Formula, letter: &BTreeSet<String>) -> Formula {
    simplify(&af_raw(formula, &|a| letter.contains(a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Accepting trap `tt`, acceptance `Inf`.
    Cosafety,
    /// Rejecting trap `ff`, acceptance `Fin`.
    Safety,
}

/// A derivative automaton together with the meaning of its states.
#[derive(Debug, Clone)]
pub struct DerivativeAutomaton {
    pub tela: Tela,
    /// Representative formula of each state.
    pub states: Vec<Formula>,
    pub accepting_trap: Option<usize>,
    pub rejecting_trap: Option<usize>,
}

/// Builds the derivative automaton over `aps(formula)`.
pub fn translate_derivative(
    formula: &Formula,
    polarity: Polarity,
    state_bound: usize,
) -> Result<DerivativeAutomaton> {
    let (ok, expected) = match polarity {
        Polarity::Cosafety => (formula.is_cosafety(), "cosafety"),
        Polarity::Safety => (formula.is_safety(), "safety"),
    };
    if !ok {
        return Err(Error::FragmentViolation {
            formula: formula.to_string(),
            expected,
        });
    }
    let ap: Vec<String> = formula.aps().into_iter().collect();
    let letters = 1u32 << ap.len();
    let mut index: HashMap<PropClass, usize> = HashMap::new();
    let mut states: Vec<Formula> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern =
        |f: Formula, states: &mut Vec<Formula>, queue: &mut VecDeque<usize>| -> Result<usize> {
            let key = PropClass::of(&f);
            if let Some(&q) = index.get(&key) {
                return Ok(q);
            }
            if states.len() >= state_bound {
                return Err(Error::StateBound { bound: state_bound });
            }
            let q = states.len();
            index.insert(key, q);
            states.push(f);
            queue.push_back(q);
            Ok(q)
        };
    intern(simplify(formula), &mut states, &mut queue)?;
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    while let Some(q) = queue.pop_front() {
        let current = states[q].clone();
        let mut row = Vec::with_capacity(letters as usize);
        for l in 0..letters {
            let next = if current.is_constant() {
                current.clone()
            } else {
                let holds = |a: &str| {
                    ap.iter()
                        .position(|b| b == a)
                        .is_some_and(|i| l >> i & 1 == 1)
                };
                simplify(&af_raw(&current, &holds))
            };
            let target = intern(next, &mut states, &mut queue)?;
            row.push(Edge::new(target, MarkSet::new()));
        }
        if edges.len() <= q {
            edges.resize(q + 1, Vec::new());
        }
        edges[q] = row;
    }
    let class_of = |v: bool| {
        states
            .iter()
            .position(|f| PropClass::of(f).constant() == Some(v))
    };
    let accepting_trap = class_of(true);
    let rejecting_trap = class_of(false);
    let marked_trap = match polarity {
        Polarity::Cosafety => accepting_trap,
        Polarity::Safety => rejecting_trap,
    };
    if let Some(t) = marked_trap {
        for e in &mut edges[t] {
            e.marks = MarkSet::single(0);
        }
    }
    let acceptance = match polarity {
        Polarity::Cosafety => Acceptance::Inf(0),
        Polarity::Safety => Acceptance::Fin(0),
    };
    let tela = Tela::new(ap, 0, edges, acceptance, 1)?;
    Ok(DerivativeAutomaton {
        tela,
        states,
        accepting_trap,
        rejecting_trap,
    })
}

pub fn translate_cosafety(formula: &Formula) -> Result<Tela> {
    Ok(translate_derivative(formula, Polarity::Cosafety, DEFAULT_STATE_BOUND)?.tela)
}

pub fn translate_safety(formula: &Formula) -> Result<Tela> {
    Ok(translate_derivative(formula, Polarity::Safety, DEFAULT_STATE_BOUND)?.tela)
}
