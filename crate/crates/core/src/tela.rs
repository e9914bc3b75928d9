//! Deterministic, complete transition-based Emerson-Lei automata.

use std::collections::{HashMap, VecDeque};

use crate::acceptance::Acceptance;
use crate::error::{Error, Result};
use crate::lasso::Lasso;

/// Largest alphabet an explicit automaton may range over.
pub const MAX_APS: usize = 20;

/// Sorted, duplicate-free set of acceptance marks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkSet(Vec<u32>);

impl FromIterator<u32> for MarkSet {
    fn from_iter<I: IntoIterator<Item = u32>>(marks: I) -> MarkSet {
        let mut v: Vec<u32> = marks.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        MarkSet(v)
    }
}

impl MarkSet {
    pub fn new() -> MarkSet {
        MarkSet(Vec::new())
    }

    pub fn single(mark: u32) -> MarkSet {
        MarkSet(vec![mark])
    }

    pub fn contains(&self, mark: u32) -> bool {
        self.0.binary_search(&mark).is_ok()
    }

    pub fn insert(&mut self, mark: u32) {
        if let Err(pos) = self.0.binary_search(&mark) {
            self.0.insert(pos, mark);
        }
    }

    pub fn remove(&mut self, mark: u32) {
        if let Ok(pos) = self.0.binary_search(&mark) {
            self.0.remove(pos);
        }
    }

    pub fn union(&self, other: &MarkSet) -> MarkSet {
        MarkSet::from_iter(self.0.iter().chain(&other.0).copied())
    }

    pub fn extend(&mut self, other: &MarkSet) {
        if !other.is_empty() {
            *self = self.union(other);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn max_mark(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn shift(&self, offset: u32) -> MarkSet {
        MarkSet(self.0.iter().map(|m| m + offset).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub target: usize,
    pub marks: MarkSet,
}

impl Edge {
    pub fn new(target: usize, marks: MarkSet) -> Edge {
        Edge { target, marks }
    }
}

/// A deterministic and complete automaton over the alphabet `2^ap`.
///
/// Letters are bitmasks: bit `i` of a letter is set iff `ap[i]` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tela {
    ap: Vec<String>,
    initial: usize,
    /// `edges[q][letter]`
    edges: Vec<Vec<Edge>>,
    acceptance: Acceptance,
    mark_count: u32,
}

impl Tela {
    /// Builds and validates an automaton. States unreachable from `initial`
    /// are removed.
    pub fn new(
        ap: Vec<String>,
        initial: usize,
        edges: Vec<Vec<Edge>>,
        acceptance: Acceptance,
        mark_count: u32,
    ) -> Result<Tela> {
        if ap.len() > MAX_APS {
            return Err(Error::TooManyAtoms {
                count: ap.len(),
                max: MAX_APS,
            });
        }
        let letters = 1usize << ap.len();
        if initial >= edges.len() {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range"
            )));
        }
        for (q, row) in edges.iter().enumerate() {
            if row.len() != letters {
                return Err(Error::Incomplete {
                    state: q,
                    letter: row.len().min(letters) as u32,
                });
            }
            for e in row {
                if e.target >= edges.len() {
                    return Err(Error::InvalidAutomaton(format!(
                        "edge from {q} to missing state {}",
                        e.target
                    )));
                }
                if e.marks.max_mark().is_some_and(|m| m >= mark_count) {
                    return Err(Error::InvalidAutomaton(format!(
                        "mark {} used but only {mark_count} declared",
                        e.marks.max_mark().unwrap()
                    )));
                }
            }
        }
        if acceptance.max_mark().is_some_and(|m| m >= mark_count) {
            return Err(Error::InvalidAutomaton(format!(
                "acceptance refers to mark {} but only {mark_count} declared",
                acceptance.max_mark().unwrap()
            )));
        }
        let mut tela = Tela {
            ap,
            initial,
            edges,
            acceptance,
            mark_count,
        };
        tela.trim();
        Ok(tela)
    }

    /// Drops unreachable states, keeping the relative order of the rest.
    fn trim(&mut self) {
        let mut reachable = vec![false; self.edges.len()];
        let mut stack = vec![self.initial];
        reachable[self.initial] = true;
        while let Some(q) = stack.pop() {
            for e in &self.edges[q] {
                if !reachable[e.target] {
                    reachable[e.target] = true;
                    stack.push(e.target);
                }
            }
        }
        if reachable.iter().all(|&r| r) {
            return;
        }
        let mut index = vec![usize::MAX; self.edges.len()];
        let mut next = 0;
        for (q, &r) in reachable.iter().enumerate() {
            if r {
                index[q] = next;
                next += 1;
            }
        }
        let edges = std::mem::take(&mut self.edges)
            .into_iter()
            .enumerate()
            .filter(|(q, _)| reachable[*q])
            .map(|(_, row)| {
                row.into_iter()
                    .map(|e| Edge::new(index[e.target], e.marks))
                    .collect()
            })
            .collect();
        self.edges = edges;
        self.initial = index[self.initial];
    }

    pub fn ap(&self) -> &[String] {
        &self.ap
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn mark_count(&self) -> u32 {
        self.mark_count
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn letter_count(&self) -> usize {
        1 << self.ap.len()
    }

    pub fn acceptance_size(&self) -> usize {
        self.acceptance.size()
    }

    pub fn edge(&self, state: usize, letter: u32) -> &Edge {
        &self.edges[state][letter as usize]
    }

    pub fn edges(&self, state: usize) -> &[Edge] {
        &self.edges[state]
    }

    /// Same transition structure, dual acceptance.
    pub fn complement(&self) -> Tela {
        Tela {
            acceptance: self.acceptance.dual(),
            ..self.clone()
        }
    }

    pub fn with_acceptance(&self, acceptance: Acceptance, mark_count: u32) -> Result<Tela> {
        Tela::new(
            self.ap.clone(),
            self.initial,
            self.edges.clone(),
            acceptance,
            mark_count,
        )
    }

    /// Bitmask of `ap` letters for a set of proposition names; names outside
    /// `ap` are ignored.
    pub fn letter_of<'a>(&self, props: impl IntoIterator<Item = &'a String>) -> u32 {
        let index: HashMap<&str, usize> = self
            .ap
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_str(), i))
            .collect();
        props
            .into_iter()
            .filter_map(|p| index.get(p.as_str()))
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Runs on the ultimately periodic word and evaluates acceptance on the
    /// marks seen in the cycle.
    pub fn accepts_lasso(&self, lasso: &Lasso) -> bool {
        let stem: Vec<u32> = lasso.stem.iter().map(|l| self.letter_of(l)).collect();
        let cycle: Vec<u32> = lasso.cycle.iter().map(|l| self.letter_of(l)).collect();
        self.accepts_letters(&stem, &cycle)
    }

    /// As [`Tela::accepts_lasso`] with letters already encoded over `ap`.
    pub fn accepts_letters(&self, stem: &[u32], cycle: &[u32]) -> bool {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        let mut q = self.initial;
        for &l in stem {
            q = self.edges[q][l as usize].target;
        }
        // Position in the cycle at which each state was first entered.
        let k = cycle.len();
        let mut seen = vec![usize::MAX; self.edges.len() * k];
        let mut trace: Vec<&Edge> = Vec::new();
        let mut pos = 0;
        loop {
            let start = seen[q * k + pos];
            if start != usize::MAX {
                let inf: Vec<bool> = {
                    let mut v = vec![false; self.mark_count as usize];
                    for e in &trace[start..] {
                        let e: &Edge = e;
                        for m in e.marks.iter() {
                            v[m as usize] = true;
                        }
                    }
                    v
                };
                return self.acceptance.eval(&|i| inf[i as usize]);
            }
            seen[q * k + pos] = trace.len();
            let e = &self.edges[q][cycle[pos] as usize];
            trace.push(e);
            q = e.target;
            pos = (pos + 1) % k;
        }
    }

    /// Breadth-first state order from the initial state, letters ascending.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.edges.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for e in &self.edges[q] {
                if !seen[e.target] {
                    seen[e.target] = true;
                    queue.push_back(e.target);
                }
            }
        }
        order
    }

    /// Re-expresses the automaton over a larger alphabet that contains `ap`.
    pub fn extend_ap(&self, ap: &[String]) -> Result<Tela> {
        let position: Vec<usize> = self
            .ap
            .iter()
            .map(|a| {
                ap.iter().position(|b| b == a).ok_or_else(|| {
                    Error::InvalidAutomaton(format!(
                        "proposition `{a}` missing from target alphabet"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let letters = 1u32 << ap.len();
        let project = |l: u32| -> u32 {
            position
                .iter()
                .enumerate()
                .filter(|(_, &p)| l >> p & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let edges = self
            .edges
            .iter()
            .map(|row| {
                (0..letters)
                    .map(|l| row[project(l) as usize].clone())
                    .collect()
            })
            .collect();
        Tela::new(
            ap.to_vec(),
            self.initial,
            edges,
            self.acceptance.clone(),
            self.mark_count,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn props(names: &[&str]) -> std::collections::BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// One state over {a}, Inf(0) on letter a.
    fn gf_a() -> Tela {
        Tela::new(
            vec!["a".into()],
            0,
            vec![vec![
                Edge::new(0, MarkSet::new()),
                Edge::new(0, MarkSet::single(0)),
            ]],
            Acceptance::Inf(0),
            1,
        )
        .unwrap()
    }

    #[test]
    fn lasso_acceptance() {
        let a = gf_a();
        let yes = Lasso::new(vec![], vec![props(&[]), props(&["a"])]);
        let no = Lasso::new(vec![props(&["a"])], vec![props(&[])]);
        assert!(a.accepts_lasso(&yes));
        assert!(!a.accepts_lasso(&no));
        assert!(!a.complement().accepts_lasso(&yes));
        assert!(a.complement().accepts_lasso(&no));
        assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            Tela::new(
                vec!["a".into()],
                0,
                vec![vec![Edge::new(0, MarkSet::new())]],
                Acceptance::True,
                0
            ),
            Err(Error::Incomplete { .. })
        ));
        assert!(Tela::new(
            vec![],
            0,
            vec![vec![Edge::new(0, MarkSet::single(1))]],
            Acceptance::Inf(0),
            1
        )
        .is_err());
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let t = Tela::new(
            vec![],
            1,
            vec![
                vec![Edge::new(0, MarkSet::new())],
                vec![Edge::new(1, MarkSet::new())],
            ],
            Acceptance::True,
            0,
        )
        .unwrap();
        assert_eq!(t.state_count(), 1);
        assert_eq!(t.initial(), 0);
    }

    #[test]
    fn alphabet_extension_preserves_language() {
        let a = gf_a();
        let wide = a.extend_ap(&["b".into(), "a".into()]).unwrap();
        let w = Lasso::new(vec![], vec![props(&["b"]), props(&["a", "b"])]);
        assert_eq!(a.accepts_lasso(&w), wide.accepts_lasso(&w));
        assert!(wide.accepts_lasso(&w));
    }

    #[test]
    fn marks() {
        let mut m = MarkSet::from_iter([3, 1, 3]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![1, 3]);
        m.insert(2);
        m.remove(1);
        assert_eq!(m, MarkSet::from_iter([2, 3]));
        assert_eq!(m.shift(1), MarkSet::from_iter([3, 4]));
    }
}
