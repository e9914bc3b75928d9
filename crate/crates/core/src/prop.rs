//! The propositional skeleton of a formula.
//!
//! Temporal subformulas and literals outside temporal operators are treated
//! as opaque propositional variables. Truth tables are bitsliced: one bit per
//! assignment, with variable `i` true in assignment `x` iff bit `i` of `x` is
//! set.

use std::collections::{BTreeSet, HashMap};

use crate::formula::{Formula, Node};

/// Largest number of variables a truth table may range over.
pub const MAX_TABLE_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropExpr {
    Const(bool),
    Var(usize),
    And(Vec<PropExpr>),
    Or(Vec<PropExpr>),
}

impl PropExpr {
    /// Compiles the skeleton of `formula`; atoms are looked up in `index`.
    ///
    /// Panics if a skeleton atom is missing from `index`.
    pub fn compile(formula: &Formula, index: &HashMap<Formula, usize>) -> PropExpr {
        match formula.node() {
            Node::True => PropExpr::Const(true),
            Node::False => PropExpr::Const(false),
            Node::And(cs) => {
                PropExpr::And(cs.iter().map(|c| PropExpr::compile(c, index)).collect())
            }
            Node::Or(cs) => PropExpr::Or(cs.iter().map(|c| PropExpr::compile(c, index)).collect()),
            _ => PropExpr::Var(
                *index
                    .get(formula)
                    .unwrap_or_else(|| panic!("`{formula}` is not a known skeleton atom")),
            ),
        }
    }

    pub fn eval(&self, assignment: &dyn Fn(usize) -> bool) -> bool {
        match self {
            PropExpr::Const(v) => *v,
            PropExpr::Var(i) => assignment(*i),
            PropExpr::And(cs) => cs.iter().all(|c| c.eval(assignment)),
            PropExpr::Or(cs) => cs.iter().any(|c| c.eval(assignment)),
        }
    }

    /// Kleene evaluation; `None` stands for an unknown value.
    pub fn eval3(&self, assignment: &dyn Fn(usize) -> Option<bool>) -> Option<bool> {
        match self {
            PropExpr::Const(v) => Some(*v),
            PropExpr::Var(i) => assignment(*i),
            PropExpr::And(cs) => {
                let mut unknown = false;
                for c in cs {
                    match c.eval3(assignment) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                (!unknown).then_some(true)
            }
            PropExpr::Or(cs) => {
                let mut unknown = false;
                for c in cs {
                    match c.eval3(assignment) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                (!unknown).then_some(false)
            }
        }
    }

    /// Fixes the variables for which `assignment` returns a value and folds
    /// constants.
    pub fn restrict(&self, assignment: &dyn Fn(usize) -> Option<bool>) -> PropExpr {
        match self {
            PropExpr::Const(_) => self.clone(),
            PropExpr::Var(i) => match assignment(*i) {
                Some(v) => PropExpr::Const(v),
                None => self.clone(),
            },
            PropExpr::And(cs) | PropExpr::Or(cs) => {
                let conj = matches!(self, PropExpr::And(_));
                let mut kept = Vec::new();
                for c in cs {
                    match c.restrict(assignment) {
                        PropExpr::Const(v) if v == conj => {}
                        PropExpr::Const(v) => return PropExpr::Const(v),
                        other => kept.push(other),
                    }
                }
                match kept.len() {
                    0 => PropExpr::Const(conj),
                    1 => kept.pop().unwrap(),
                    _ if conj => PropExpr::And(kept),
                    _ => PropExpr::Or(kept),
                }
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            PropExpr::Const(_) => {}
            PropExpr::Var(i) => {
                out.insert(*i);
            }
            PropExpr::And(cs) | PropExpr::Or(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Truth table over variables `0..vars`.
    pub fn table(&self, vars: usize) -> TruthTable {
        match self {
            PropExpr::Const(v) => TruthTable::constant(vars, *v),
            PropExpr::Var(i) => TruthTable::var(vars, *i),
            PropExpr::And(cs) => cs.iter().fold(TruthTable::constant(vars, true), |acc, c| {
                acc.and(&c.table(vars))
            }),
            PropExpr::Or(cs) => cs.iter().fold(TruthTable::constant(vars, false), |acc, c| {
                acc.or(&c.table(vars))
            }),
        }
    }

    /// Variables the function actually depends on.
    pub fn support(&self) -> BTreeSet<usize> {
        let vars = self.vars();
        let Some(&max) = vars.iter().next_back() else {
            return BTreeSet::new();
        };
        // Renumber densely so the table only spans occurring variables.
        let dense: HashMap<usize, usize> = vars.iter().enumerate().map(|(d, &v)| (v, d)).collect();
        let renumbered = self.renumber(&|v| dense[&v]);
        let table = renumbered.table(vars.len());
        let _ = max;
        vars.iter()
            .enumerate()
            .filter(|(d, _)| table.depends_on(*d))
            .map(|(_, &v)| v)
            .collect()
    }

    pub fn renumber(&self, map: &dyn Fn(usize) -> usize) -> PropExpr {
        match self {
            PropExpr::Const(v) => PropExpr::Const(*v),
            PropExpr::Var(i) => PropExpr::Var(map(*i)),
            PropExpr::And(cs) => PropExpr::And(cs.iter().map(|c| c.renumber(map)).collect()),
            PropExpr::Or(cs) => PropExpr::Or(cs.iter().map(|c| c.renumber(map)).collect()),
        }
    }
}

const LOW_VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A Boolean function over `vars` variables, one bit per assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    vars: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn word_count(vars: usize) -> usize {
        assert!(
            vars <= MAX_TABLE_VARS,
            "truth table over {vars} variables exceeds {MAX_TABLE_VARS}"
        );
        if vars <= 6 {
            1
        } else {
            1 << (vars - 6)
        }
    }

    fn valid_mask(vars: usize) -> u64 {
        if vars >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << vars)) - 1
        }
    }

    fn normalized(mut self) -> TruthTable {
        let mask = TruthTable::valid_mask(self.vars);
        self.words[0] &= if self.vars >= 6 { u64::MAX } else { mask };
        self
    }

    pub fn constant(vars: usize, value: bool) -> TruthTable {
        let word = if value { u64::MAX } else { 0 };
        TruthTable {
            vars,
            words: vec![word; TruthTable::word_count(vars)],
        }
        .normalized()
    }

    pub fn var(vars: usize, index: usize) -> TruthTable {
        assert!(index < vars, "variable {index} out of range");
        let count = TruthTable::word_count(vars);
        let words = if index < 6 {
            vec![LOW_VAR_PATTERNS[index]; count]
        } else {
            (0..count)
                .map(|w| {
                    if (w >> (index - 6)) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                })
                .collect()
        };
        TruthTable { vars, words }.normalized()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        TruthTable {
            vars: self.vars,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        TruthTable {
            vars: self.vars,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn get(&self, assignment: usize) -> bool {
        (self.words[assignment >> 6] >> (assignment & 63)) & 1 == 1
    }

    pub fn is_constant(&self, value: bool) -> bool {
        *self == TruthTable::constant(self.vars, value)
    }

    /// Whether flipping variable `index` changes the value for some assignment.
    pub fn depends_on(&self, index: usize) -> bool {
        if index < 6 {
            let shift = 1 << index;
            let low = !LOW_VAR_PATTERNS[index] & TruthTable::valid_mask(self.vars);
            self.words.iter().any(|&w| ((w >> shift) ^ w) & low != 0)
        } else {
            let stride = 1 << (index - 6);
            (0..self.words.len())
                .filter(|w| w & stride == 0)
                .any(|w| self.words[w] != self.words[w + stride])
        }
    }

    pub fn assignments(&self) -> usize {
        1 << self.vars
    }
}

/// Skeleton of a formula with its atoms in canonical order.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub atoms: Vec<Formula>,
    pub expr: PropExpr,
}

impl Skeleton {
    pub fn of(formula: &Formula) -> Skeleton {
        Skeleton::over(std::iter::once(formula))
    }

    /// A shared atom numbering for several formulas; the expression is that of
    /// the first one.
    fn over<'a>(formulas: impl Iterator<Item = &'a Formula> + Clone) -> Skeleton {
        let atoms: Vec<Formula> = formulas
            .clone()
            .flat_map(|f| f.skeleton_atoms())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<Formula, usize> = atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let first = formulas.clone().next().expect("at least one formula");
        Skeleton {
            expr: PropExpr::compile(first, &index),
            atoms,
        }
    }

    fn index(&self) -> HashMap<Formula, usize> {
        self.atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect()
    }
}

/// Skeleton atoms on which the truth value of `formula` depends.
pub fn support(formula: &Formula) -> BTreeSet<Formula> {
    let skeleton = Skeleton::of(formula);
    skeleton
        .expr
        .support()
        .into_iter()
        .map(|i| skeleton.atoms[i].clone())
        .collect()
}

/// Propositional equivalence with temporal subformulas as opaque atoms.
pub fn prop_equiv(left: &Formula, right: &Formula) -> bool {
    let skeleton = Skeleton::over([left, right].into_iter());
    let index = skeleton.index();
    let n = skeleton.atoms.len();
    PropExpr::compile(left, &index).table(n) == PropExpr::compile(right, &index).table(n)
}

/// Canonical key of the propositional equivalence class of a formula: the
/// support atoms in canonical order and the truth table over them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropClass {
    pub support: Vec<Formula>,
    pub table: TruthTable,
}

impl PropClass {
    pub fn of(formula: &Formula) -> PropClass {
        let skeleton = Skeleton::of(formula);
        let support: Vec<usize> = skeleton.expr.support().into_iter().collect();
        let dense: HashMap<usize, usize> =
            support.iter().enumerate().map(|(d, &v)| (v, d)).collect();
        let restricted = skeleton
            .expr
            .restrict(&|v| (!dense.contains_key(&v)).then_some(false))
            .renumber(&|v| dense[&v]);
        PropClass {
            table: restricted.table(support.len()),
            support: support
                .into_iter()
                .map(|i| skeleton.atoms[i].clone())
                .collect(),
        }
    }

    /// `Some(v)` if the class is the constant `v`.
    pub fn constant(&self) -> Option<bool> {
        if !self.support.is_empty() {
            return None;
        }
        Some(self.table.get(0))
    }
}

/// Minimal sets of leaves whose truth (all other leaves false) satisfies the
/// skeleton of `formula`. Assumes the skeleton is monotone, as it is for any
/// formula in negation normal form built from positive leaves.
pub fn good_leaf_sets(formula: &Formula) -> BTreeSet<BTreeSet<Formula>> {
    let skeleton = Skeleton::of(formula);
    let n = skeleton.atoms.len();
    let table = skeleton.expr.table(n);
    let mut out = BTreeSet::new();
    for x in 0..table.assignments() {
        if !table.get(x) {
            continue;
        }
        let minimal = (0..n)
            .filter(|i| x >> i & 1 == 1)
            .all(|i| !table.get(x & !(1 << i)));
        if minimal {
            out.insert(
                (0..n)
                    .filter(|i| x >> i & 1 == 1)
                    .map(|i| skeleton.atoms[i].clone())
                    .collect(),
            );
        }
    }
    out
}
