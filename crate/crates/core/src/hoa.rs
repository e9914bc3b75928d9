//! Reading and writing the Hanoi Omega-Automata format (HOA v1).
//!
//! Only deterministic automata with transition-based or state-based
//! acceptance are read; state-based marks are moved onto outgoing edges.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::acceptance::Acceptance;
use crate::error::{Error, Result};
use crate::tela::{Edge, MarkSet, Tela};

/// Canonical HOA text: states numbered breadth-first from the initial state,
/// edges ordered by their least letter.
pub fn serialize_hoa(aut: &Tela) -> String {
    let order = aut.bfs_order();
    let mut number = vec![usize::MAX; aut.state_count()];
    for (i, &q) in order.iter().enumerate() {
        number[q] = i;
    }
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    out.push_str("tool: \"delag\"\n");
    let _ = writeln!(out, "States: {}", order.len());
    out.push_str("Start: 0\n");
    let _ = write!(out, "AP: {}", aut.ap().len());
    for a in aut.ap() {
        let _ = write!(out, " \"{}\"", a.replace('\\', "\\\\").replace('"', "\\\""));
    }
    out.push('\n');
    if let Some(name) = acc_name(aut.acceptance(), aut.mark_count()) {
        let _ = writeln!(out, "acc-name: {name}");
    }
    let _ = writeln!(out, "Acceptance: {} {}", aut.mark_count(), aut.acceptance());
    out.push_str("properties: trans-labels explicit-labels trans-acc deterministic complete\n");
    out.push_str("--BODY--\n");
    let k = aut.ap().len();
    for &q in &order {
        let _ = writeln!(out, "State: {}", number[q]);
        // Group letters by (target, marks), keyed by the least letter.
        let mut groups: Vec<((usize, MarkSet), Vec<u32>)> = Vec::new();
        let mut index: HashMap<(usize, MarkSet), usize> = HashMap::new();
        for (l, e) in aut.edges(q).iter().enumerate() {
            let key = (number[e.target], e.marks.clone());
            match index.get(&key) {
                Some(&g) => groups[g].1.push(l as u32),
                None => {
                    index.insert(key.clone(), groups.len());
                    groups.push((key, vec![l as u32]));
                }
            }
        }
        for ((target, marks), letters) in groups {
            let _ = write!(out, "[{}] {}", label(&letters, k), target);
            if !marks.is_empty() {
                let ms: Vec<String> = marks.iter().map(|m| m.to_string()).collect();
                let _ = write!(out, " {{{}}}", ms.join(" "));
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

fn acc_name(acc: &Acceptance, marks: u32) -> Option<String> {
    let all = |f: fn(&Acceptance) -> Option<u32>, cs: &[Acceptance]| {
        cs.iter().enumerate().all(|(i, c)| f(c) == Some(i as u32))
    };
    let inf = |a: &Acceptance| match a {
        Acceptance::Inf(i) => Some(*i),
        _ => None,
    };
    let fin = |a: &Acceptance| match a {
        Acceptance::Fin(i) => Some(*i),
        _ => None,
    };
    match acc {
        Acceptance::True if marks == 0 => Some("all".into()),
        Acceptance::False if marks == 0 => Some("none".into()),
        Acceptance::Inf(0) if marks == 1 => Some("Buchi".into()),
        Acceptance::Fin(0) if marks == 1 => Some("co-Buchi".into()),
        Acceptance::And(cs) if cs.len() as u32 == marks && all(inf, cs) => {
            Some(format!("generalized-Buchi {marks}"))
        }
        Acceptance::Or(cs) if cs.len() as u32 == marks && all(fin, cs) => {
            Some(format!("generalized-co-Buchi {marks}"))
        }
        _ => None,
    }
}

/// A cube: letters `l` with `l & care == value`.
type Cube = (u32, u32);

/// Label formula for a set of letters over `k` propositions: a greedy cover
/// by prime implicants.
fn label(letters: &[u32], k: usize) -> String {
    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    if letters.len() == 1usize << k {
        return "t".into();
    }
    let minterms: HashSet<u32> = letters.iter().copied().collect();
    let mut level: HashSet<Cube> = letters.iter().map(|&l| (l, full)).collect();
    let mut primes: Vec<Cube> = Vec::new();
    while !level.is_empty() {
        let mut merged: HashSet<Cube> = HashSet::new();
        let mut next: HashSet<Cube> = HashSet::new();
        for &(value, care) in &level {
            for bit in 0..k {
                let b = 1u32 << bit;
                if care & b == 0 {
                    continue;
                }
                let partner = (value ^ b, care);
                if level.contains(&partner) {
                    merged.insert((value, care));
                    next.insert((value & !b, care & !b));
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    primes.sort_by_key(|&(value, care)| {
        (std::cmp::Reverse((!care & full).count_ones()), care, value)
    });
    let mut uncovered = minterms;
    let mut chosen: Vec<Cube> = Vec::new();
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .copied()
            .max_by_key(|&(v, c)| {
                let n = uncovered.iter().filter(|&&l| l & c == v).count();
                // max_by_key keeps the last maximum; prefer earlier primes
                (
                    n,
                    std::cmp::Reverse(primes.iter().position(|&p| p == (v, c))),
                )
            })
            .expect("primes cover every minterm");
        uncovered.retain(|&l| l & best.1 != best.0);
        chosen.push(best);
    }
    chosen.sort_by_key(|&(value, care)| {
        (0..k)
            .map(|i| {
                let b = 1 << i;
                if care & b == 0 {
                    2u8
                } else if value & b != 0 {
                    1
                } else {
                    0
                }
            })
            .collect::<Vec<_>>()
    });
    chosen
        .iter()
        .map(|&(value, care)| {
            let lits: Vec<String> = (0..k)
                .filter(|i| care >> i & 1 == 1)
                .map(|i| {
                    if value >> i & 1 == 1 {
                        i.to_string()
                    } else {
                        format!("!{i}")
                    }
                })
                .collect();
            if lits.is_empty() {
                "t".to_string()
            } else {
                lits.join("&")
            }
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Header(String),
    Ident(String),
    Str(String),
    Int(u64),
    Sym(char),
    Body,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line) = (0, 1);
    let err = |line, message: String| Error::Hoa { line, message };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            let start = line;
            i += 2;
            loop {
                match chars.get(i) {
                    None => return Err(err(start, "unterminated comment".into())),
                    Some('*') if chars.get(i + 1) == Some(&'/') => {
                        i += 2;
                        break;
                    }
                    Some('\n') => {
                        line += 1;
                        i += 1;
                    }
                    _ => i += 1,
                }
            }
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(err(line, "unterminated string".into())),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        if let Some(&n) = chars.get(i + 1) {
                            s.push(n);
                        }
                        i += 2;
                    }
                    Some(&ch) => {
                        if ch == '\n' {
                            line += 1;
                        }
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push((Tok::Str(s), line));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| err(line, format!("bad integer `{s}`")))?;
            out.push((Tok::Int(n), line));
        } else if c == '-' && chars[i..].starts_with(&['-', '-']) {
            let start = i;
            i += 2;
            while i < chars.len() && (chars[i].is_ascii_alphabetic()) {
                i += 1;
            }
            if chars[i..].starts_with(&['-', '-']) {
                i += 2;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "--BODY--" => out.push((Tok::Body, line)),
                "--END--" => out.push((Tok::End, line)),
                "--ABORT--" => return Err(err(line, "automaton aborted by producer".into())),
                _ => return Err(err(line, format!("unknown marker `{word}`"))),
            }
        } else if c.is_alphabetic() || c == '_' || c == '@' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '-' | '@'))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if chars.get(i) == Some(&':') {
                i += 1;
                out.push((Tok::Header(word), line));
            } else {
                out.push((Tok::Ident(word), line));
            }
        } else if "[]{}()!&|".contains(c) {
            out.push((Tok::Sym(c), line));
            i += 1;
        } else {
            return Err(err(line, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Label expression over AP indices.
#[derive(Debug, Clone)]
enum Label {
    Const(bool),
    Ap(usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, letter: u32) -> bool {
        match self {
            Label::Const(v) => *v,
            Label::Ap(i) => letter >> i & 1 == 1,
            Label::Not(l) => !l.eval(letter),
            Label::And(a, b) => a.eval(letter) && b.eval(letter),
            Label::Or(a, b) => a.eval(letter) || b.eval(letter),
        }
    }
}

struct Reader {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Reader {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map(|(_, l)| *l)
            .unwrap_or(1)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Hoa {
            line: self.line(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn int(&mut self) -> Result<u64> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                Err(self.error("expected an integer"))
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn label_or(&mut self, aps: usize) -> Result<Label> {
        let mut lhs = self.label_and(aps)?;
        while self.peek() == Some(&Tok::Sym('|')) {
            self.pos += 1;
            lhs = Label::Or(Box::new(lhs), Box::new(self.label_and(aps)?));
        }
        Ok(lhs)
    }

    fn label_and(&mut self, aps: usize) -> Result<Label> {
        let mut lhs = self.label_atom(aps)?;
        while self.peek() == Some(&Tok::Sym('&')) {
            self.pos += 1;
            lhs = Label::And(Box::new(lhs), Box::new(self.label_atom(aps)?));
        }
        Ok(lhs)
    }

    fn label_atom(&mut self, aps: usize) -> Result<Label> {
        match self.next() {
            Some(Tok::Ident(w)) if w == "t" => Ok(Label::Const(true)),
            Some(Tok::Ident(w)) if w == "f" => Ok(Label::Const(false)),
            Some(Tok::Int(n)) if (n as usize) < aps => Ok(Label::Ap(n as usize)),
            Some(Tok::Int(n)) => {
                self.pos -= 1;
                Err(self.error(format!("AP index {n} out of range")))
            }
            Some(Tok::Sym('!')) => Ok(Label::Not(Box::new(self.label_atom(aps)?))),
            Some(Tok::Sym('(')) => {
                let inner = self.label_or(aps)?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Tok::Ident(w)) if w.starts_with('@') => {
                self.pos -= 1;
                Err(self.error("aliases are not supported"))
            }
            _ => {
                self.pos -= 1;
                Err(self.error("malformed label"))
            }
        }
    }

    fn marks(&mut self) -> Result<MarkSet> {
        let mut m = MarkSet::new();
        if self.peek() == Some(&Tok::Sym('{')) {
            self.pos += 1;
            while let Some(Tok::Int(n)) = self.peek().cloned() {
                self.pos += 1;
                m.insert(n as u32);
            }
            self.expect('}')?;
        }
        Ok(m)
    }
}

/// Token text for rebuilding an acceptance condition.
fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Ident(w) => w.clone(),
        Tok::Int(n) => n.to_string(),
        Tok::Sym(c) => c.to_string(),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Header(h) => format!("{h}:"),
        Tok::Body => "--BODY--".into(),
        Tok::End => "--END--".into(),
    }
}

/// Automaton data as read, before completeness is enforced.
pub struct PartialTela {
    pub ap: Vec<String>,
    pub initial: usize,
    pub edges: Vec<Vec<Option<Edge>>>,
    pub acceptance: Acceptance,
    pub mark_count: u32,
}

impl PartialTela {
    pub fn is_complete(&self) -> bool {
        self.edges.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Fails on the first missing edge.
    pub fn into_complete(self) -> Result<Tela> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (q, row) in self.edges.into_iter().enumerate() {
            let mut full = Vec::with_capacity(row.len());
            for (l, e) in row.into_iter().enumerate() {
                full.push(e.ok_or(Error::Incomplete {
                    state: q,
                    letter: l as u32,
                })?);
            }
            edges.push(full);
        }
        Tela::new(
            self.ap,
            self.initial,
            edges,
            self.acceptance,
            self.mark_count,
        )
    }

    /// Redirects missing edges to a fresh rejecting sink. If the sink's
    /// unmarked loop would satisfy the condition, the loop gets a new mark
    /// `K` and the condition becomes `acc ∧ Fin(K)`.
    pub fn complete_with_sink(mut self) -> Result<Tela> {
        if self.is_complete() {
            return self.into_complete();
        }
        let sink = self.edges.len();
        let letters = 1usize << self.ap.len();
        let mut loop_marks = MarkSet::new();
        if self.acceptance.eval(&|_| false) {
            loop_marks = MarkSet::single(self.mark_count);
            self.acceptance =
                Acceptance::and([self.acceptance.clone(), Acceptance::Fin(self.mark_count)]);
            self.mark_count += 1;
        }
        for row in &mut self.edges {
            for e in row.iter_mut() {
                if e.is_none() {
                    *e = Some(Edge::new(sink, MarkSet::new()));
                }
            }
        }
        self.edges
            .push(vec![Some(Edge::new(sink, loop_marks)); letters]);
        self.into_complete()
    }
}

/// Parses a deterministic and complete automaton.
pub fn parse_hoa(text: &str) -> Result<Tela> {
    parse_hoa_partial(text)?.into_complete()
}

/// Parses a deterministic automaton that may lack edges.
pub fn parse_hoa_partial(text: &str) -> Result<PartialTela> {
    let mut r = Reader {
        tokens: lex(text)?,
        pos: 0,
    };
    match (r.next(), r.next()) {
        (Some(Tok::Header(h)), Some(Tok::Ident(v))) if h == "HOA" && v == "v1" => {}
        _ => {
            r.pos = 0;
            return Err(r.error("expected `HOA: v1`"));
        }
    }
    let mut states: Option<usize> = None;
    let mut start: Option<usize> = None;
    let mut ap: Option<Vec<String>> = None;
    let mut acceptance: Option<(u32, Acceptance)> = None;
    loop {
        let line = r.line();
        match r.next() {
            Some(Tok::Body) => break,
            Some(Tok::Header(h)) => match h.as_str() {
                "States" => states = Some(r.int()? as usize),
                "Start" => {
                    if start.is_some() {
                        return Err(r.error("several initial states"));
                    }
                    start = Some(r.int()? as usize);
                    if r.peek() == Some(&Tok::Sym('&')) {
                        return Err(r.error("alternating automata are not supported"));
                    }
                }
                "AP" => {
                    let n = r.int()? as usize;
                    let mut names = Vec::with_capacity(n);
                    for _ in 0..n {
                        match r.next() {
                            Some(Tok::Str(s)) => names.push(s),
                            _ => {
                                r.pos -= 1;
                                return Err(r.error("expected an AP name"));
                            }
                        }
                    }
                    ap = Some(names);
                }
                "Acceptance" => {
                    let n = r.int()? as u32;
                    let mut parts = Vec::new();
                    while let Some(t) = r.peek() {
                        if matches!(t, Tok::Header(_) | Tok::Body) {
                            break;
                        }
                        parts.push(tok_text(t));
                        r.pos += 1;
                    }
                    let acc = Acceptance::parse(&parts.join(" "))?;
                    if acc.max_mark().is_some_and(|m| m >= n) {
                        return Err(Error::Hoa {
                            line,
                            message: format!("acceptance uses more than {n} sets"),
                        });
                    }
                    acceptance = Some((n, acc));
                }
                _ => {
                    // Skip unknown or informational headers.
                    while let Some(t) = r.peek() {
                        if matches!(t, Tok::Header(_) | Tok::Body) {
                            break;
                        }
                        r.pos += 1;
                    }
                }
            },
            _ => {
                r.pos -= 1;
                return Err(r.error("expected a header"));
            }
        }
    }
    let ap = ap.unwrap_or_default();
    if ap.len() > crate::tela::MAX_APS {
        return Err(Error::TooManyAtoms {
            count: ap.len(),
            max: crate::tela::MAX_APS,
        });
    }
    let (mark_count, acceptance) =
        acceptance.ok_or_else(|| r.error("missing `Acceptance:` header"))?;
    let letters = 1u32 << ap.len();
    let mut rows: BTreeMap<usize, Vec<Option<Edge>>> = BTreeMap::new();
    let mut max_state = 0usize;
    loop {
        match r.next() {
            Some(Tok::End) => break,
            Some(Tok::Header(h)) if h == "State" => {}
            None => return Err(r.error("missing `--END--`")),
            _ => {
                r.pos -= 1;
                return Err(r.error("expected `State:`"));
            }
        }
        if r.peek() == Some(&Tok::Sym('[')) {
            return Err(r.error("state labels are not supported"));
        }
        let q = r.int()? as usize;
        max_state = max_state.max(q);
        if let Some(Tok::Str(_)) = r.peek() {
            r.pos += 1;
        }
        let state_marks = r.marks()?;
        if rows.contains_key(&q) {
            return Err(r.error(format!("state {q} defined twice")));
        }
        let mut row: Vec<Option<Edge>> = vec![None; letters as usize];
        let mut implicit = 0u32;
        loop {
            let label = match r.peek() {
                Some(Tok::Sym('[')) => {
                    r.pos += 1;
                    let l = r.label_or(ap.len())?;
                    r.expect(']')?;
                    Some(l)
                }
                Some(Tok::Int(_)) => None,
                _ => break,
            };
            let target = r.int()? as usize;
            if r.peek() == Some(&Tok::Sym('&')) {
                return Err(r.error("universal branching is not supported"));
            }
            max_state = max_state.max(target);
            let marks = r.marks()?.union(&state_marks);
            if marks.max_mark().is_some_and(|m| m >= mark_count) {
                return Err(r.error(format!(
                    "mark {} exceeds declared sets",
                    marks.max_mark().unwrap()
                )));
            }
            let covered: Vec<u32> = match label {
                Some(l) => (0..letters).filter(|&x| l.eval(x)).collect(),
                None => {
                    if implicit >= letters {
                        return Err(r.error("too many implicitly labelled edges"));
                    }
                    implicit += 1;
                    vec![implicit - 1]
                }
            };
            for x in covered {
                if row[x as usize].is_some() {
                    return Err(Error::Nondeterministic {
                        state: q,
                        letter: x,
                    });
                }
                row[x as usize] = Some(Edge::new(target, marks.clone()));
            }
        }
        rows.insert(q, row);
    }
    let count = states.unwrap_or(0).max(max_state + 1).max(rows.len());
    if let Some(n) = states {
        if max_state >= n {
            return Err(r.error(format!("state {max_state} exceeds declared count {n}")));
        }
    }
    let edges: Vec<Vec<Option<Edge>>> = (0..count)
        .map(|q| {
            rows.remove(&q)
                .unwrap_or_else(|| vec![None; letters as usize])
        })
        .collect();
    let initial = start.ok_or_else(|| r.error("missing `Start:` header"))?;
    if initial >= count {
        return Err(r.error(format!("initial state {initial} out of range")));
    }
    Ok(PartialTela {
        ap,
        initial,
        edges,
        acceptance,
        mark_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// GF(a1 & X a2) as a buffer automaton.
    pub(crate) const FIG2A: &str = "HOA: v1
States: 2
Start: 0
AP: 2 \"a1\" \"a2\"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[!0] 0
[0] 1
State: 1
[!0&!1] 0
[!0&1] 0 {0}
[0&!1] 1
[0&1] 1 {0}
--END--
";

    #[test]
    fn round_trip() {
        let a = parse_hoa(FIG2A).unwrap();
        assert_eq!(a.state_count(), 2);
        let text = serialize_hoa(&a);
        assert!(text.contains("States: 2"));
        assert!(text.contains("Acceptance: 1 Inf(0)"));
        assert!(text.contains("acc-name: Buchi"));
        let b = parse_hoa(&text).unwrap();
        assert_eq!(serialize_hoa(&b), text);
    }

    #[test]
    fn labels_are_compact() {
        assert_eq!(label(&[0, 1, 2, 3], 2), "t");
        assert_eq!(label(&[1, 3], 2), "0");
        assert_eq!(label(&[0, 1, 3], 2), "0 | !1");
        assert_eq!(label(&[0], 2), "!0&!1");
        assert_eq!(label(&[0], 0), "t");
    }

    #[test]
    fn implicit_labels_and_state_marks() {
        let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n0\n0\n--END--\n";
        let a = parse_hoa(text).unwrap();
        assert!(a.edge(0, 0).marks.contains(0));
        assert!(a.edge(0, 1).marks.contains(0));
    }

    #[test]
    fn rejects_nondeterminism() {
        let text = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nAcceptance: 0 t\n--BODY--\nState: 0\n[0] 0\n[t] 1\nState: 1\n[t] 1\n--END--\n";
        assert!(matches!(
            parse_hoa(text),
            Err(Error::Nondeterministic {
                state: 0,
                letter: 1
            })
        ));
    }

    #[test]
    fn incomplete_needs_completion() {
        let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 0 t\n--BODY--\nState: 0\n[0] 0\n--END--\n";
        assert!(matches!(parse_hoa(text), Err(Error::Incomplete { .. })));
        let a = parse_hoa_partial(text)
            .unwrap()
            .complete_with_sink()
            .unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.acceptance(), &Acceptance::Fin(0));
        let w = crate::lasso::Lasso::from_letters(a.ap(), &[0], &[1]);
        assert!(!a.accepts_lasso(&w));
        let w = crate::lasso::Lasso::from_letters(a.ap(), &[], &[1]);
        assert!(a.accepts_lasso(&w));
    }

    #[test]
    fn unknown_acceptance_primitive() {
        let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Foo(0)\n--BODY--\nState: 0\n[t] 0\n--END--\n";
        assert!(matches!(parse_hoa(text), Err(Error::UnknownAcceptance(_))));
    }

    #[test]
    fn malformed_header_reports_line() {
        let text = "HOA: v1\nStates: x\n";
        assert!(matches!(parse_hoa(text), Err(Error::Hoa { line: 2, .. })));
    }
}
