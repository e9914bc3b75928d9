//! Product of component automata.
//!
//! Every maximal temporal subformula of the input (and every literal outside
//! temporal operators) is a component with its own deterministic automaton.
//! The standard product runs them all in lockstep. The enhanced product
//! additionally replaces trap states by sentinels, silences components that
//! can no longer influence the outcome and suspends fairness components
//! until their (co)safety neighbours have settled.

use std::collections::{HashMap, VecDeque};

use crate::acceptance::Acceptance;
use crate::error::{Error, Result};
use crate::fairness::{BufferSpec, FairnessKind};
use crate::formula::{Formula, Node};
use crate::prop::{PropExpr, MAX_TABLE_VARS};
use crate::tela::{Edge, MarkSet, Tela};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Cosafety,
    Safety,
    Fairness(FairnessKind),
    /// Built by an external tool; never replaced by sentinels.
    External,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub formula: Formula,
    pub kind: ComponentKind,
    pub tela: Tela,
    pub accepting_trap: Option<usize>,
    pub rejecting_trap: Option<usize>,
    /// Body of a fairness formula, for the shared history.
    pub body: Option<Formula>,
}

impl Component {
    pub fn is_fairness(&self) -> bool {
        matches!(self.kind, ComponentKind::Fairness(_))
    }
}

/// Position of one component inside a product state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    State(usize),
    Acc,
    Rej,
    Hold,
}

impl Slot {
    fn code(self) -> u32 {
        match self {
            Slot::State(q) => q as u32,
            Slot::Acc => u32::MAX,
            Slot::Rej => u32::MAX - 1,
            Slot::Hold => u32::MAX - 2,
        }
    }

    fn kleene(self) -> Option<bool> {
        match self {
            Slot::Acc => Some(true),
            Slot::Rej => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductState {
    pub slots: Vec<Slot>,
    /// Shared history of recent letters over the product alphabet, oldest
    /// first. Empty unless the global history is in use.
    pub history: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Standard,
    Enhanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductOptions {
    pub construction: Construction,
    pub global_history: bool,
    pub state_bound: usize,
}

/// A product automaton that remembers what each state stands for.
#[derive(Debug, Clone)]
pub struct Product {
    pub tela: Tela,
    pub formula: Formula,
    pub components: Vec<Component>,
    pub states: Vec<ProductState>,
    /// First mark of each component.
    pub offsets: Vec<u32>,
    pub construction: Construction,
}

/// Acceptance of `formula` with component leaves replaced by `leaf`.
fn lift(formula: &Formula, leaf: &dyn Fn(&Formula) -> Acceptance) -> Acceptance {
    match formula.node() {
        Node::True => Acceptance::True,
        Node::False => Acceptance::False,
        Node::And(cs) => Acceptance::and(cs.iter().map(|c| lift(c, leaf))),
        Node::Or(cs) => Acceptance::or(cs.iter().map(|c| lift(c, leaf))),
        _ => leaf(formula),
    }
}

/// Lifted acceptance: the Boolean skeleton of `formula` over the
/// (renumbered) component conditions.
pub fn lift_acceptance(formula: &Formula, components: &[Component], offsets: &[u32]) -> Acceptance {
    let index: HashMap<&Formula, usize> = components
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.formula, i))
        .collect();
    lift(formula, &|atom| {
        let i = index[atom];
        components[i].tela.acceptance().shift(offsets[i])
    })
}

/// A junction of the skeleton, as seen by the release rule.
struct Junction {
    /// Component children.
    members: Vec<usize>,
    /// Children that must be settled before held members may start.
    guards: Vec<PropExpr>,
    /// Whether the guards must be settled true (conjunction) or false.
    want: bool,
}

struct Builder<'a> {
    formula: &'a Formula,
    components: &'a [Component],
    options: ProductOptions,
    ap: Vec<String>,
    offsets: Vec<u32>,
    /// `projection[i][letter]`: letter of component `i`.
    projection: Vec<Vec<u32>>,
    skeleton: PropExpr,
    junctions: Vec<Junction>,
    root: Option<usize>,
    prune_cache: HashMap<Vec<u8>, Vec<bool>>,
    /// Global history buffers, by component; `None` for ordinary slots.
    buffers: Vec<Option<BufferSpec>>,
    history_len: usize,
    /// Right-aligned slot masks of each fairness component.
    aligned_masks: Vec<Vec<u32>>,
    mask_cache: HashMap<Vec<bool>, Vec<u32>>,
    acc_marks: Vec<MarkSet>,
    rej_marks: Vec<MarkSet>,
}

impl<'a> Builder<'a> {
    fn new(
        formula: &'a Formula,
        components: &'a [Component],
        options: ProductOptions,
    ) -> Result<Builder<'a>> {
        let ap: Vec<String> = formula.aps().into_iter().collect();
        if ap.len() > crate::tela::MAX_APS {
            return Err(Error::TooManyAtoms {
                count: ap.len(),
                max: crate::tela::MAX_APS,
            });
        }
        if components.len() > MAX_TABLE_VARS {
            return Err(Error::TooManyAtoms {
                count: components.len(),
                max: MAX_TABLE_VARS,
            });
        }
        let index: HashMap<Formula, usize> = components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.formula.clone(), i))
            .collect();
        let mut offsets = Vec::with_capacity(components.len());
        let mut next = 0;
        for c in components {
            offsets.push(next);
            next += c.tela.mark_count();
        }
        let letters = 1u32 << ap.len();
        let projection = components
            .iter()
            .map(|c| {
                let positions: Vec<usize> = c
                    .tela
                    .ap()
                    .iter()
                    .map(|a| {
                        ap.iter().position(|b| b == a).ok_or_else(|| {
                            Error::InvalidAutomaton(format!(
                                "component uses unknown proposition `{a}`"
                            ))
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok((0..letters)
                    .map(|l| {
                        positions
                            .iter()
                            .enumerate()
                            .fold(0, |acc, (j, &p)| acc | ((l >> p) & 1) << j)
                    })
                    .collect())
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        let enhanced = options.construction == Construction::Enhanced;
        let use_global = enhanced && options.global_history;
        let buffers: Vec<Option<BufferSpec>> = components
            .iter()
            .map(|c| match (c.kind, &c.body) {
                (ComponentKind::Fairness(kind), Some(body)) if use_global => {
                    BufferSpec::new(kind, body, &ap).map(Some)
                }
                _ => Ok(None),
            })
            .collect::<Result<_>>()?;
        let history_len = buffers
            .iter()
            .flatten()
            .map(BufferSpec::len)
            .max()
            .unwrap_or(0);
        let aligned_masks = buffers
            .iter()
            .map(|b| match b {
                Some(spec) => {
                    let mut m = vec![0u32; history_len - spec.len()];
                    m.extend_from_slice(spec.slot_masks());
                    m
                }
                None => vec![0u32; history_len],
            })
            .collect();
        let mut junctions = Vec::new();
        for (sets, want) in [
            (formula.conjunct_sets(), true),
            (formula.disjunct_sets(), false),
        ] {
            for set in sets {
                let members = set.iter().filter_map(|c| index.get(c).copied()).collect();
                let guards = set
                    .iter()
                    .filter(|c| if want { c.is_cosafety() } else { c.is_safety() })
                    .map(|c| PropExpr::compile(c, &index))
                    .collect();
                junctions.push(Junction {
                    members,
                    guards,
                    want,
                });
            }
        }
        let loop_marks = |trap: Option<usize>, c: &Component, offset: u32| {
            trap.map(|t| c.tela.edge(t, 0).marks.shift(offset))
                .unwrap_or_default()
        };
        let acc_marks = components
            .iter()
            .zip(&offsets)
            .map(|(c, &o)| loop_marks(c.accepting_trap, c, o))
            .collect();
        let rej_marks = components
            .iter()
            .zip(&offsets)
            .map(|(c, &o)| loop_marks(c.rejecting_trap, c, o))
            .collect();
        Ok(Builder {
            formula,
            components,
            options,
            ap,
            offsets,
            projection,
            skeleton: PropExpr::compile(formula, &index),
            junctions,
            root: index.get(formula).copied(),
            prune_cache: HashMap::new(),
            buffers,
            history_len,
            aligned_masks,
            mask_cache: HashMap::new(),
            acc_marks,
            rej_marks,
        })
    }

    fn enhanced(&self) -> bool {
        self.options.construction == Construction::Enhanced
    }

    /// Slot for a component that has moved to local state `q`.
    fn settle(&self, i: usize, q: usize) -> Slot {
        let c = &self.components[i];
        if self.enhanced() && c.kind != ComponentKind::External {
            if Some(q) == c.accepting_trap {
                return Slot::Acc;
            }
            if Some(q) == c.rejecting_trap {
                return Slot::Rej;
            }
        }
        Slot::State(q)
    }

    fn start(&self, i: usize) -> Slot {
        if self.buffers[i].is_some() {
            Slot::State(0)
        } else {
            self.settle(i, self.components[i].tela.initial())
        }
    }

    /// Components outside the support of the partially evaluated skeleton
    /// move to `Rej`.
    fn prune(&mut self, slots: &mut [Slot]) {
        let key: Vec<u8> = slots
            .iter()
            .map(|s| match s {
                Slot::Acc => 1,
                Slot::Rej => 2,
                _ => 0,
            })
            .collect();
        let pruned = match self.prune_cache.get(&key) {
            Some(p) => p.clone(),
            None => {
                let restricted = self.skeleton.restrict(&|v| match key[v] {
                    1 => Some(true),
                    2 => Some(false),
                    _ => None,
                });
                let support = restricted.support();
                let p: Vec<bool> = (0..slots.len())
                    .map(|i| key[i] == 0 && !support.contains(&i))
                    .collect();
                self.prune_cache.insert(key, p.clone());
                p
            }
        };
        for (s, p) in slots.iter_mut().zip(pruned) {
            if p {
                *s = Slot::Rej;
            }
        }
    }

    /// Starts held components whose neighbours have settled.
    fn run(&self, slots: &mut [Slot]) {
        let held: Vec<usize> = (0..slots.len())
            .filter(|&i| slots[i] == Slot::Hold)
            .collect();
        if held.is_empty() {
            return;
        }
        let snapshot = slots.to_vec();
        let settled = |j: &Junction| {
            j.guards
                .iter()
                .all(|g| g.eval3(&|v| snapshot[v].kleene()) == Some(j.want))
        };
        for i in held {
            let release = self.root == Some(i)
                || self
                    .junctions
                    .iter()
                    .any(|j| j.members.contains(&i) && settled(j));
            if release {
                slots[i] = self.start(i);
            }
        }
    }

    fn history_mask(&mut self, live: Vec<bool>) -> Vec<u32> {
        if let Some(m) = self.mask_cache.get(&live) {
            return m.clone();
        }
        let mut mask = vec![0u32; self.history_len];
        for (i, &l) in live.iter().enumerate() {
            if l {
                for (m, a) in mask.iter_mut().zip(&self.aligned_masks[i]) {
                    *m |= a;
                }
            }
        }
        let mut acc = 0;
        for m in mask.iter_mut() {
            acc |= *m;
            *m = acc;
        }
        self.mask_cache.insert(live, mask.clone());
        mask
    }

    fn initial(&mut self) -> ProductState {
        let mut slots: Vec<Slot> = (0..self.components.len())
            .map(|i| {
                if self.enhanced() && self.components[i].is_fairness() {
                    Slot::Hold
                } else {
                    self.start(i)
                }
            })
            .collect();
        if self.enhanced() {
            self.run(&mut slots);
        }
        ProductState {
            slots,
            history: vec![0; self.history_len],
        }
    }

    fn step(&mut self, state: &ProductState, letter: u32) -> (ProductState, MarkSet) {
        let n = self.history_len;
        let mut marks = MarkSet::new();
        let mut slots = Vec::with_capacity(state.slots.len());
        let mut window = state.history.clone();
        window.push(letter);
        for (i, &slot) in state.slots.iter().enumerate() {
            let next = match slot {
                Slot::State(q) => {
                    if let Some(spec) = &self.buffers[i] {
                        if spec.marked(&window[n - spec.len()..]) {
                            marks.insert(self.offsets[i]);
                        }
                        Slot::State(0)
                    } else {
                        let e = self.components[i]
                            .tela
                            .edge(q, self.projection[i][letter as usize]);
                        marks.extend(&e.marks.shift(self.offsets[i]));
                        self.settle(i, e.target)
                    }
                }
                Slot::Acc => {
                    marks.extend(&self.acc_marks[i]);
                    Slot::Acc
                }
                Slot::Rej => {
                    marks.extend(&self.rej_marks[i]);
                    Slot::Rej
                }
                Slot::Hold => Slot::Hold,
            };
            slots.push(next);
        }
        if self.enhanced() {
            self.prune(&mut slots);
            self.run(&mut slots);
        }
        let history = if n == 0 {
            Vec::new()
        } else {
            // Only components running before and after this step keep
            // their letters; a freshly started buffer begins empty.
            let live: Vec<bool> = (0..slots.len())
                .map(|i| {
                    self.buffers[i].is_some()
                        && matches!(state.slots[i], Slot::State(_))
                        && matches!(slots[i], Slot::State(_))
                })
                .collect();
            let mask = self.history_mask(live);
            (0..n).map(|k| window[k + 1] & mask[k]).collect()
        };
        (ProductState { slots, history }, marks)
    }

    fn key(state: &ProductState) -> Vec<u32> {
        state
            .slots
            .iter()
            .map(|s| s.code())
            .chain(state.history.iter().copied())
            .collect()
    }

    fn build(mut self) -> Result<Product> {
        let letters = 1u32 << self.ap.len();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut states = Vec::new();
        let mut edges: Vec<Vec<Edge>> = Vec::new();
        let init = self.initial();
        index.insert(Builder::key(&init), 0);
        states.push(init);
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            let source = states[q].clone();
            let mut row = Vec::with_capacity(letters as usize);
            for l in 0..letters {
                let (target, marks) = self.step(&source, l);
                let key = Builder::key(&target);
                let t = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if states.len() >= self.options.state_bound {
                            return Err(Error::StateBound {
                                bound: self.options.state_bound,
                            });
                        }
                        let t = states.len();
                        index.insert(key, t);
                        states.push(target);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(Edge::new(t, marks));
            }
            edges.push(row);
        }
        let mark_count = self.components.iter().map(|c| c.tela.mark_count()).sum();
        let acceptance = lift_acceptance(self.formula, self.components, &self.offsets);
        let tela = Tela::new(self.ap.clone(), 0, edges, acceptance, mark_count)?;
        Ok(Product {
            tela,
            formula: self.formula.clone(),
            components: self.components.to_vec(),
            states,
            offsets: self.offsets,
            construction: self.options.construction,
        })
    }
}

/// Builds the product of `components`, one per skeleton atom of `formula`
/// in first-occurrence order.
pub fn build_product(
    formula: &Formula,
    components: &[Component],
    options: ProductOptions,
) -> Result<Product> {
    Builder::new(formula, components, options)?.build()
}

/// Number of occurrences of `atom` as a skeleton leaf of `formula`.
fn leaf_occurrences(formula: &Formula, atom: &Formula) -> usize {
    match formula.node() {
        Node::And(cs) | Node::Or(cs) => cs.iter().map(|c| leaf_occurrences(c, atom)).sum(),
        _ => usize::from(formula == atom),
    }
}

impl Product {
    /// Folds (co)safety conditions into the marks of neighbouring fairness
    /// components:
    ///
    /// * `ψr ∧ FG φ`: the `Fin` mark also covers edges with `ψr` not yet
    ///   accepted;
    /// * `ψr ∧ GF φ`: the `Inf` mark is withheld until `ψr` is accepted;
    /// * `ψs ∨ FG φ`: the `Fin` mark is withheld until `ψs` is rejected;
    /// * `ψs ∨ GF φ`: the `Inf` mark also covers edges with `ψs` not yet
    ///   rejected.
    ///
    /// Only components occurring once in the formula take part. The
    /// acceptance leaf of the absorbed (co)safety component is dropped and
    /// unused marks are removed.
    pub fn piggyback(&self) -> Result<Tela> {
        let comps = &self.components;
        let once: Vec<bool> = comps
            .iter()
            .map(|c| leaf_occurrences(&self.formula, &c.formula) == 1)
            .collect();
        let index: HashMap<&Formula, usize> = comps
            .iter()
            .enumerate()
            .map(|(i, c)| (&c.formula, i))
            .collect();
        let mut used = vec![false; comps.len()];
        // (absorbed component, fairness component, absorbed is cosafety)
        let mut pairs: Vec<(usize, usize, bool)> = Vec::new();
        for (sets, conj) in [
            (self.formula.conjunct_sets(), true),
            (self.formula.disjunct_sets(), false),
        ] {
            for set in sets {
                let members: Vec<usize> =
                    set.iter().filter_map(|c| index.get(c).copied()).collect();
                let wanted = if conj {
                    ComponentKind::Cosafety
                } else {
                    ComponentKind::Safety
                };
                for &r in &members {
                    if used[r] || !once[r] || comps[r].kind != wanted {
                        continue;
                    }
                    if let Some(&f) = members
                        .iter()
                        .find(|&&f| !used[f] && once[f] && comps[f].is_fairness())
                    {
                        used[r] = true;
                        used[f] = true;
                        pairs.push((r, f, conj));
                    }
                }
            }
        }
        if pairs.is_empty() {
            return Ok(self.tela.clone());
        }
        let settled = |state: usize, r: usize, conj: bool| -> bool {
            let slot = self.states[state].slots[r];
            let c = &comps[r];
            match (slot, conj) {
                (Slot::Acc, true) | (Slot::Rej, false) => true,
                (Slot::State(q), true) => Some(q) == c.accepting_trap,
                (Slot::State(q), false) => Some(q) == c.rejecting_trap,
                _ => false,
            }
        };
        let tela = &self.tela;
        let mut edges: Vec<Vec<Edge>> = Vec::with_capacity(tela.state_count());
        for q in 0..tela.state_count() {
            let mut row = tela.edges(q).to_vec();
            for &(r, f, conj) in &pairs {
                let mark = self.offsets[f];
                if settled(q, r, conj) {
                    continue;
                }
                let add = match (conj, comps[f].kind) {
                    (true, ComponentKind::Fairness(FairnessKind::EventuallyAlways)) => true,
                    (true, _) => false,
                    (false, ComponentKind::Fairness(FairnessKind::InfinitelyOften)) => true,
                    (false, _) => false,
                };
                for e in &mut row {
                    if add {
                        e.marks.insert(mark);
                    } else {
                        e.marks.remove(mark);
                    }
                }
            }
            edges.push(row);
        }
        let absorbed: HashMap<usize, bool> = pairs.iter().map(|&(r, _, conj)| (r, conj)).collect();
        let acceptance = lift(&self.formula, &|atom| {
            let i = index[atom];
            match absorbed.get(&i) {
                Some(true) => Acceptance::True,
                Some(false) => Acceptance::False,
                None => comps[i].tela.acceptance().shift(self.offsets[i]),
            }
        });
        compact(tela.ap().to_vec(), tela.initial(), edges, acceptance)
    }
}

/// Renumbers the marks used by `acceptance` densely and drops the rest.
pub fn compact(
    ap: Vec<String>,
    initial: usize,
    edges: Vec<Vec<Edge>>,
    acceptance: Acceptance,
) -> Result<Tela> {
    let used = acceptance.marks();
    let renumber: HashMap<u32, u32> = used
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i as u32))
        .collect();
    let edges = edges
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| {
                    Edge::new(
                        e.target,
                        MarkSet::from_iter(
                            e.marks.iter().filter_map(|m| renumber.get(&m).copied()),
                        ),
                    )
                })
                .collect()
        })
        .collect();
    let acceptance = acceptance.map_marks(&|m| renumber[&m]);
    Tela::new(ap, initial, edges, acceptance, used.len() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_have_distinct_codes() {
        let codes = [Slot::State(0), Slot::Acc, Slot::Rej, Slot::Hold].map(Slot::code);
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(codes[i], codes[j]);
            }
        }
    }

    #[test]
    fn compaction_drops_unused_marks() {
        let edges = vec![vec![Edge::new(0, MarkSet::from_iter([0, 2]))]];
        let t = compact(vec![], 0, edges, Acceptance::Inf(2)).unwrap();
        assert_eq!(t.mark_count(), 1);
        assert_eq!(t.acceptance(), &Acceptance::Inf(0));
        assert_eq!(t.edge(0, 0).marks, MarkSet::single(0));
    }
}
