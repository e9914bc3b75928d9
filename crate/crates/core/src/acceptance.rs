//! Emerson-Lei acceptance conditions.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Acceptance {
    True,
    False,
    Fin(u32),
    Inf(u32),
    And(Vec<Acceptance>),
    Or(Vec<Acceptance>),
}

impl Acceptance {
    /// Conjunction with constant folding and flattening.
    pub fn and<I: IntoIterator<Item = Acceptance>>(items: I) -> Acceptance {
        Acceptance::junction(items, true)
    }

    pub fn or<I: IntoIterator<Item = Acceptance>>(items: I) -> Acceptance {
        Acceptance::junction(items, false)
    }

    fn junction<I: IntoIterator<Item = Acceptance>>(items: I, conj: bool) -> Acceptance {
        let mut out = Vec::new();
        for item in items {
            match item {
                Acceptance::True if conj => {}
                Acceptance::False if !conj => {}
                Acceptance::True | Acceptance::False => return item,
                Acceptance::And(cs) if conj => out.extend(cs),
                Acceptance::Or(cs) if !conj => out.extend(cs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => {
                if conj {
                    Acceptance::True
                } else {
                    Acceptance::False
                }
            }
            1 => out.pop().unwrap(),
            _ if conj => Acceptance::And(out),
            _ => Acceptance::Or(out),
        }
    }

    /// Evaluates the condition; `inf(i)` tells whether mark `i` is seen
    /// infinitely often.
    pub fn eval(&self, inf: &dyn Fn(u32) -> bool) -> bool {
        match self {
            Acceptance::True => true,
            Acceptance::False => false,
            Acceptance::Fin(i) => !inf(*i),
            Acceptance::Inf(i) => inf(*i),
            Acceptance::And(cs) => cs.iter().all(|c| c.eval(inf)),
            Acceptance::Or(cs) => cs.iter().any(|c| c.eval(inf)),
        }
    }

    /// The complementary condition.
    pub fn dual(&self) -> Acceptance {
        match self {
            Acceptance::True => Acceptance::False,
            Acceptance::False => Acceptance::True,
            Acceptance::Fin(i) => Acceptance::Inf(*i),
            Acceptance::Inf(i) => Acceptance::Fin(*i),
            Acceptance::And(cs) => Acceptance::Or(cs.iter().map(Acceptance::dual).collect()),
            Acceptance::Or(cs) => Acceptance::And(cs.iter().map(Acceptance::dual).collect()),
        }
    }

    /// Number of `Fin`/`Inf` leaves.
    pub fn size(&self) -> usize {
        match self {
            Acceptance::True | Acceptance::False => 0,
            Acceptance::Fin(_) | Acceptance::Inf(_) => 1,
            Acceptance::And(cs) | Acceptance::Or(cs) => cs.iter().map(Acceptance::size).sum(),
        }
    }

    pub fn max_mark(&self) -> Option<u32> {
        match self {
            Acceptance::True | Acceptance::False => None,
            Acceptance::Fin(i) | Acceptance::Inf(i) => Some(*i),
            Acceptance::And(cs) | Acceptance::Or(cs) => {
                cs.iter().filter_map(Acceptance::max_mark).max()
            }
        }
    }

    pub fn marks(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_marks(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_marks(&self, out: &mut Vec<u32>) {
        match self {
            Acceptance::True | Acceptance::False => {}
            Acceptance::Fin(i) | Acceptance::Inf(i) => out.push(*i),
            Acceptance::And(cs) | Acceptance::Or(cs) => {
                cs.iter().for_each(|c| c.collect_marks(out))
            }
        }
    }

    pub fn map_marks(&self, f: &dyn Fn(u32) -> u32) -> Acceptance {
        match self {
            Acceptance::True => Acceptance::True,
            Acceptance::False => Acceptance::False,
            Acceptance::Fin(i) => Acceptance::Fin(f(*i)),
            Acceptance::Inf(i) => Acceptance::Inf(f(*i)),
            Acceptance::And(cs) => Acceptance::And(cs.iter().map(|c| c.map_marks(f)).collect()),
            Acceptance::Or(cs) => Acceptance::Or(cs.iter().map(|c| c.map_marks(f)).collect()),
        }
    }

    pub fn shift(&self, offset: u32) -> Acceptance {
        self.map_marks(&|i| i + offset)
    }

    /// Parses the condition part of an HOA `Acceptance:` line.
    pub fn parse(text: &str) -> Result<Acceptance> {
        let tokens = lex(text)?;
        let mut pos = 0;
        let acc = parse_or(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::UnknownAcceptance(text.trim().to_string()));
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    True,
    False,
    Fin(u32, bool),
    Inf(u32, bool),
    And,
    Or,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let bad = || Error::UnknownAcceptance(text.trim().to_string());
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            't' => {
                out.push(Tok::True);
                i += 1;
            }
            'f' => {
                out.push(Tok::False);
                i += 1;
            }
            '&' => {
                out.push(Tok::And);
                i += 1;
            }
            '|' => {
                out.push(Tok::Or);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'F' | 'I' => {
                let fin = chars[i] == 'F';
                let word = if fin { "Fin" } else { "Inf" };
                let rest: String = chars[i..].iter().collect();
                if !rest.starts_with(word) {
                    let end = chars[i..]
                        .iter()
                        .position(|c| !c.is_alphanumeric())
                        .unwrap_or(chars.len() - i);
                    return Err(Error::UnknownAcceptance(chars[i..i + end].iter().collect()));
                }
                i += 3;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if chars.get(i) != Some(&'(') {
                    return Err(bad());
                }
                i += 1;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                let negated = chars.get(i) == Some(&'!');
                if negated {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u32 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad())?;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if chars.get(i) != Some(&')') {
                    return Err(bad());
                }
                i += 1;
                out.push(if fin {
                    Tok::Fin(n, negated)
                } else {
                    Tok::Inf(n, negated)
                });
            }
            _ => {
                let end = chars[i..]
                    .iter()
                    .position(|c| c.is_whitespace() || *c == '(' || *c == ')')
                    .unwrap_or(chars.len() - i)
                    .max(1);
                return Err(Error::UnknownAcceptance(chars[i..i + end].iter().collect()));
            }
        }
    }
    Ok(out)
}

fn parse_or(tokens: &[Tok], pos: &mut usize) -> Result<Acceptance> {
    let mut parts = vec![parse_and(tokens, pos)?];
    while tokens.get(*pos) == Some(&Tok::Or) {
        *pos += 1;
        parts.push(parse_and(tokens, pos)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Acceptance::Or(parts)
    })
}

fn parse_and(tokens: &[Tok], pos: &mut usize) -> Result<Acceptance> {
    let mut parts = vec![parse_atom(tokens, pos)?];
    while tokens.get(*pos) == Some(&Tok::And) {
        *pos += 1;
        parts.push(parse_atom(tokens, pos)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Acceptance::And(parts)
    })
}

fn parse_atom(tokens: &[Tok], pos: &mut usize) -> Result<Acceptance> {
    let tok = tokens
        .get(*pos)
        .cloned()
        .ok_or_else(|| Error::UnknownAcceptance("unexpected end of acceptance".into()))?;
    *pos += 1;
    match tok {
        Tok::True => Ok(Acceptance::True),
        Tok::False => Ok(Acceptance::False),
        Tok::Fin(_, true) | Tok::Inf(_, true) => Err(Error::UnknownAcceptance(
            "negated acceptance sets are not supported".into(),
        )),
        Tok::Fin(n, false) => Ok(Acceptance::Fin(n)),
        Tok::Inf(n, false) => Ok(Acceptance::Inf(n)),
        Tok::LParen => {
            let inner = parse_or(tokens, pos)?;
            if tokens.get(*pos) != Some(&Tok::RParen) {
                return Err(Error::UnknownAcceptance("expected `)`".into()));
            }
            *pos += 1;
            Ok(inner)
        }
        other => Err(Error::UnknownAcceptance(format!("unexpected {other:?}"))),
    }
}

/// HOA syntax.
impl fmt::Display for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Acceptance::True => write!(f, "t"),
            Acceptance::False => write!(f, "f"),
            Acceptance::Fin(i) => write!(f, "Fin({i})"),
            Acceptance::Inf(i) => write!(f, "Inf({i})"),
            Acceptance::And(cs) | Acceptance::Or(cs) => {
                let conj = matches!(self, Acceptance::And(_));
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "{}", if conj { " & " } else { " | " })?;
                    }
                    let wrap = matches!(c, Acceptance::And(_) | Acceptance::Or(_));
                    if wrap {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_dual() {
        let a = Acceptance::and([Acceptance::Fin(0), Acceptance::Inf(1)]);
        assert_eq!(a.size(), 2);
        assert_eq!(Acceptance::Inf(0).dual(), Acceptance::Fin(0));
        assert_eq!(a.dual().dual(), a);
    }

    #[test]
    fn folding() {
        assert_eq!(
            Acceptance::and([Acceptance::True, Acceptance::Inf(0)]),
            Acceptance::Inf(0)
        );
        assert_eq!(
            Acceptance::or([Acceptance::True, Acceptance::Inf(0)]),
            Acceptance::True
        );
        assert_eq!(Acceptance::and([]), Acceptance::True);
    }

    #[test]
    fn display_and_parse() {
        let a = Acceptance::or([
            Acceptance::and([Acceptance::Fin(0), Acceptance::Inf(1)]),
            Acceptance::Inf(2),
        ]);
        let text = a.to_string();
        assert_eq!(text, "(Fin(0) & Inf(1)) | Inf(2)");
        assert_eq!(Acceptance::parse(&text).unwrap(), a);
        assert_eq!(Acceptance::parse("t").unwrap(), Acceptance::True);
        assert_eq!(Acceptance::parse(" Inf( 0 ) ").unwrap(), Acceptance::Inf(0));
        assert!(matches!(
            Acceptance::parse("Buchi(0)"),
            Err(Error::UnknownAcceptance(_))
        ));
    }

    #[test]
    fn evaluation() {
        let a = Acceptance::and([Acceptance::Fin(0), Acceptance::Inf(1)]);
        assert!(a.eval(&|i| i == 1));
        assert!(!a.eval(&|_| true));
    }
}
