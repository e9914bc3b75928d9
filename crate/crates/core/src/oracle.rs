//! Ground truth on ultimately periodic words.
//!
//! [`ltl_sat_lasso`] decides `u v^ω ⊨ φ` exactly. The `*_on_lassos`
//! functions compare formulas and automata on every lasso within the given
//! bounds, or on a fixed-seed random sample when the alphabet is too large
//! to enumerate.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Node};
use crate::lasso::Lasso;
use crate::tela::Tela;

/// Largest alphabet (in propositions) that is enumerated exhaustively.
pub const EXHAUSTIVE_APS: usize = 3;
pub const SAMPLES: usize = 10_000;
pub const SEED: u64 = 0x5eed_0de1;

enum Op {
    Const(bool),
    Lit(usize, bool),
    And(Vec<usize>),
    Or(Vec<usize>),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

/// A formula flattened into subformula nodes, children before parents.
pub struct Evaluator {
    ap: Vec<String>,
    ops: Vec<Op>,
}

impl Evaluator {
    /// Atoms of `formula` missing from `ap` are false everywhere.
    pub fn new(formula: &Formula, ap: &[String]) -> Evaluator {
        let mut e = Evaluator {
            ap: ap.to_vec(),
            ops: Vec::new(),
        };
        let mut memo = HashMap::new();
        e.add(formula, &mut memo);
        e
    }

    fn add(&mut self, f: &Formula, memo: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let lit =
            |this: &Evaluator, a: &str, positive: bool| match this.ap.iter().position(|b| b == a) {
                Some(i) => Op::Lit(i, positive),
                None => Op::Const(!positive),
            };
        let op = match f.node() {
            Node::True => Op::Const(true),
            Node::False => Op::Const(false),
            Node::Atom(a) => lit(self, a, true),
            Node::NegAtom(a) => lit(self, a, false),
            Node::And(cs) => Op::And(cs.iter().map(|c| self.add(c, memo)).collect()),
            Node::Or(cs) => Op::Or(cs.iter().map(|c| self.add(c, memo)).collect()),
            Node::Next(c) => Op::Next(self.add(c, memo)),
            Node::Until(l, r) => Op::Until(self.add(l, memo), self.add(r, memo)),
            Node::Release(l, r) => Op::Release(self.add(l, memo), self.add(r, memo)),
        };
        self.ops.push(op);
        let i = self.ops.len() - 1;
        memo.insert(f.clone(), i);
        i
    }

    /// Truth at position 0 of `stem · cycle^ω`, letters over the evaluator's
    /// alphabet.
    pub fn eval(&self, stem: &[u32], cycle: &[u32]) -> bool {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        let s = stem.len();
        let len = s + cycle.len();
        let letter = |i: usize| if i < s { stem[i] } else { cycle[i - s] };
        let succ = |i: usize| if i + 1 < len { i + 1 } else { s };
        let mut vals: Vec<Vec<bool>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v: Vec<bool> = match op {
                Op::Const(b) => vec![*b; len],
                Op::Lit(p, pos) => (0..len)
                    .map(|i| (letter(i) >> p & 1 == 1) == *pos)
                    .collect(),
                Op::And(cs) => (0..len).map(|i| cs.iter().all(|&c| vals[c][i])).collect(),
                Op::Or(cs) => (0..len).map(|i| cs.iter().any(|&c| vals[c][i])).collect(),
                Op::Next(c) => (0..len).map(|i| vals[*c][succ(i)]).collect(),
                Op::Until(l, r) => fixpoint(len, false, |i, next| {
                    vals[*r][i] || (vals[*l][i] && next[succ(i)])
                }),
                Op::Release(l, r) => fixpoint(len, true, |i, next| {
                    vals[*r][i] && (vals[*l][i] || next[succ(i)])
                }),
            };
            vals.push(v);
        }
        vals.last().is_none_or(|v| v[0])
    }
}

/// Iterates the one-step expansion from `start` until stable.
fn fixpoint(len: usize, start: bool, step: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let mut v = vec![start; len];
    loop {
        let mut changed = false;
        for i in (0..len).rev() {
            let x = step(i, &v);
            if x != v[i] {
                v[i] = x;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

fn encode(ap: &[String], letter: &BTreeSet<String>) -> u32 {
    ap.iter()
        .enumerate()
        .filter(|(_, a)| letter.contains(*a))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Whether `lasso ⊨ formula`.
pub fn ltl_sat_lasso(formula: &Formula, lasso: &Lasso) -> bool {
    let ap: Vec<String> = formula.aps().into_iter().collect();
    let stem: Vec<u32> = lasso.stem.iter().map(|l| encode(&ap, l)).collect();
    let cycle: Vec<u32> = lasso.cycle.iter().map(|l| encode(&ap, l)).collect();
    Evaluator::new(formula, &ap).eval(&stem, &cycle)
}

/// Calls `visit` on every lasso within the bounds (or on a random sample
/// for large alphabets) until it returns `false`; returns that lasso.
pub fn find_lasso(
    ap: &[String],
    stem_max: usize,
    loop_max: usize,
    mut visit: impl FnMut(&[u32], &[u32]) -> bool,
) -> Option<Lasso> {
    let letters = 1u64 << ap.len();
    if ap.len() <= EXHAUSTIVE_APS {
        for s in 0..=stem_max {
            for c in 1..=loop_max {
                let total = s + c;
                let count = letters.pow(total as u32);
                let mut word = vec![0u32; total];
                for n in 0..count {
                    let mut x = n;
                    for w in word.iter_mut() {
                        *w = (x % letters) as u32;
                        x /= letters;
                    }
                    if !visit(&word[..s], &word[s..]) {
                        return Some(Lasso::from_letters(ap, &word[..s], &word[s..]));
                    }
                }
            }
        }
        None
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..SAMPLES {
            let s = rng.gen_range(0..=stem_max);
            let c = rng.gen_range(1..=loop_max.max(1));
            let word: Vec<u32> = (0..s + c)
                .map(|_| rng.gen_range(0..letters) as u32)
                .collect();
            if !visit(&word[..s], &word[s..]) {
                return Some(Lasso::from_letters(ap, &word[..s], &word[s..]));
            }
        }
        None
    }
}

/// Maps letters over `from` to letters over `to`; propositions of `to`
/// missing from `from` are false.
fn projection(from: &[String], to: &[String]) -> Vec<u32> {
    let positions: Vec<Option<usize>> = to
        .iter()
        .map(|a| from.iter().position(|b| b == a))
        .collect();
    (0..1u32 << from.len())
        .map(|l| {
            positions
                .iter()
                .enumerate()
                .filter_map(|(j, p)| p.map(|p| (j, p)))
                .fold(0, |acc, (j, p)| acc | ((l >> p) & 1) << j)
        })
        .collect()
}

struct Runner<'a> {
    aut: &'a Tela,
    map: Vec<u32>,
}

impl<'a> Runner<'a> {
    fn new(aut: &'a Tela, ap: &[String]) -> Runner<'a> {
        Runner {
            aut,
            map: projection(ap, aut.ap()),
        }
    }

    fn accepts(&self, stem: &[u32], cycle: &[u32]) -> bool {
        let stem: Vec<u32> = stem.iter().map(|&l| self.map[l as usize]).collect();
        let cycle: Vec<u32> = cycle.iter().map(|&l| self.map[l as usize]).collect();
        self.aut.accepts_letters(&stem, &cycle)
    }
}

fn union(a: impl IntoIterator<Item = String>, b: impl IntoIterator<Item = String>) -> Vec<String> {
    a.into_iter()
        .chain(b)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// First lasso on which `aut` and `formula` disagree, if any.
pub fn equiv_on_lassos(
    formula: &Formula,
    aut: &Tela,
    stem_max: usize,
    loop_max: usize,
) -> Option<Lasso> {
    let ap = union(formula.aps(), aut.ap().iter().cloned());
    let eval = Evaluator::new(formula, &ap);
    let run = Runner::new(aut, &ap);
    find_lasso(&ap, stem_max, loop_max, |s, c| {
        eval.eval(s, c) == run.accepts(s, c)
    })
}

/// First lasso on which the two formulas disagree, if any.
pub fn formulas_agree_on_lassos(
    left: &Formula,
    right: &Formula,
    stem_max: usize,
    loop_max: usize,
) -> Option<Lasso> {
    let ap = union(left.aps(), right.aps());
    let l = Evaluator::new(left, &ap);
    let r = Evaluator::new(right, &ap);
    find_lasso(&ap, stem_max, loop_max, |s, c| l.eval(s, c) == r.eval(s, c))
}

/// First lasso on which the two automata disagree, if any.
pub fn automata_agree_on_lassos(
    left: &Tela,
    right: &Tela,
    stem_max: usize,
    loop_max: usize,
) -> Option<Lasso> {
    let ap = union(left.ap().iter().cloned(), right.ap().iter().cloned());
    let l = Runner::new(left, &ap);
    let r = Runner::new(right, &ap);
    find_lasso(&ap, stem_max, loop_max, |s, c| {
        l.accepts(s, c) == r.accepts(s, c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::Acceptance;
    use crate::parser::parse;
    use crate::tela::{Edge, MarkSet};

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn set(props: &[&str]) -> BTreeSet<String> {
        props.iter().map(|s| s.to_string()).collect()
    }

    fn constant(value: bool) -> Tela {
        let acc = if value {
            Acceptance::True
        } else {
            Acceptance::False
        };
        Tela::new(vec![], 0, vec![vec![Edge::new(0, MarkSet::new())]], acc, 0).unwrap()
    }

    #[test]
    fn examples() {
        let w = Lasso::new(vec![], vec![set(&["a1"]), set(&["a2"])]);
        assert!(ltl_sat_lasso(&f("G F (a1 & X a2)"), &w));
        assert!(!ltl_sat_lasso(
            &f("F b1"),
            &Lasso::new(vec![], vec![set(&[])])
        ));
        let w = Lasso::new(vec![set(&["a"]), set(&["a"]), set(&["b"])], vec![set(&[])]);
        assert!(ltl_sat_lasso(&f("a U b"), &w));
        assert!(!ltl_sat_lasso(&f("G a"), &w));
        assert!(ltl_sat_lasso(&f("F G !a"), &w));
    }

    #[test]
    fn next_wraps_around_the_cycle() {
        let w = Lasso::new(vec![set(&[])], vec![set(&["a"]), set(&[])]);
        assert!(ltl_sat_lasso(&f("X a & X X X a"), &w));
        assert!(!ltl_sat_lasso(&f("X X a"), &w));
    }

    #[test]
    fn rotation_invariance() {
        let formulas = ["G F (a & X b)", "a U (b R a)", "F G (a | X b)", "X (a U b)"];
        let ap = vec!["a".to_string(), "b".to_string()];
        for text in formulas {
            let phi = f(text);
            let e = Evaluator::new(&phi, &ap);
            let bad = find_lasso(&ap, 1, 3, |s, c| {
                let mut s2 = s.to_vec();
                s2.push(c[0]);
                let mut c2 = c[1..].to_vec();
                c2.push(c[0]);
                e.eval(s, c) == e.eval(&s2, &c2)
            });
            assert_eq!(bad, None, "{text}");
        }
    }

    #[test]
    fn automata_checks() {
        assert_eq!(equiv_on_lassos(&Formula::tt(), &constant(true), 2, 3), None);
        let cex = equiv_on_lassos(&f("F a"), &constant(false), 2, 3).unwrap();
        assert_eq!(cex, Lasso::new(vec![], vec![set(&["a"])]));
        assert!(automata_agree_on_lassos(&constant(true), &constant(false), 0, 1).is_some());
        assert_eq!(formulas_agree_on_lassos(&f("F F a"), &f("F a"), 2, 3), None);
        assert!(formulas_agree_on_lassos(&f("F a"), &f("G a"), 2, 3).is_some());
    }

    #[test]
    fn sampling_for_large_alphabets() {
        let phi = f("G F (a & b & c & d)");
        assert_eq!(formulas_agree_on_lassos(&phi, &phi, 2, 3), None);
        assert!(formulas_agree_on_lassos(&phi, &f("F G (a & b & c & d)"), 2, 3).is_some());
    }
}
