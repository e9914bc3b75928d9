//! Infix LTL syntax.
//!
//! ```text
//! expr    := or (("->" | "<->") expr)?
//! or      := and (("|" | "||") and)*
//! and     := until (("&" | "&&") until)*
//! until   := unary (("U" | "R") until)?
//! unary   := ("!" | "X" | "F" | "G") unary | primary
//! primary := "true" | "false" | "tt" | "ff" | "1" | "0" | atom | "(" expr ")"
//! ```
//!
//! An identifier made only of the letters `F`, `G` and `X` (such as `GF`) is
//! read as a chain of unary operators.

use crate::error::ParseError;
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(bool),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Unary(char),
    Binary(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, message: String| ParseError {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let push = |tok, width: usize, out: &mut Vec<Token>| {
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
            width
        };
        let width = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '(' => push(Tok::LParen, 1, &mut out),
            ')' => push(Tok::RParen, 1, &mut out),
            '!' | '~' => push(Tok::Not, 1, &mut out),
            '&' => {
                let w = if chars.get(i + 1) == Some(&'&') { 2 } else { 1 };
                push(Tok::And, w, &mut out)
            }
            '|' => {
                let w = if chars.get(i + 1) == Some(&'|') { 2 } else { 1 };
                push(Tok::Or, w, &mut out)
            }
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Implies, 2, &mut out),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::Iff, 3, &mut out)
            }
            '0' | '1' => push(Tok::Const(c == '1'), 1, &mut out),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                match word.as_str() {
                    "true" | "tt" => push(Tok::Const(true), j - i, &mut out),
                    "false" | "ff" => push(Tok::Const(false), j - i, &mut out),
                    "U" | "R" => push(Tok::Binary(word.chars().next().unwrap()), 1, &mut out),
                    w if w.chars().all(|ch| matches!(ch, 'X' | 'F' | 'G')) => {
                        for (k, ch) in w.chars().enumerate() {
                            out.push(Token {
                                tok: Tok::Unary(ch),
                                line: tl,
                                column: tc + k,
                            });
                        }
                        j - i
                    }
                    _ => push(Tok::Ident(word), j - i, &mut out),
                }
            }
            other => {
                return Err(err(line, column, format!("unexpected character `{other}`")));
            }
        };
        i += width;
        column += width;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Raw syntax tree before negation normal form.
enum Ast {
    Const(bool),
    Atom(String),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Implies(Box<Ast>, Box<Ast>),
    Iff(Box<Ast>, Box<Ast>),
    Unary(char, Box<Ast>),
    Binary(char, Box<Ast>, Box<Ast>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let lhs = self.or()?;
        match self.peek().tok {
            Tok::Implies => {
                self.bump();
                Ok(Ast::Implies(Box::new(lhs), Box::new(self.expr()?)))
            }
            Tok::Iff => {
                self.bump();
                Ok(Ast::Iff(Box::new(lhs), Box::new(self.expr()?)))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.and()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            lhs = Ast::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.until()?;
        while self.peek().tok == Tok::And {
            self.bump();
            lhs = Ast::And(Box::new(lhs), Box::new(self.until()?));
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ast, ParseError> {
        let lhs = self.unary()?;
        if let Tok::Binary(op) = self.peek().tok {
            self.bump();
            let rhs = self.until()?;
            return Ok(Ast::Binary(op, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek().tok {
            Tok::Not => {
                self.bump();
                Ok(Ast::Not(Box::new(self.unary()?)))
            }
            Tok::Unary(op) => {
                self.bump();
                Ok(Ast::Unary(op, Box::new(self.unary()?)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        match self.peek().tok.clone() {
            Tok::Const(v) => {
                self.bump();
                Ok(Ast::Const(v))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Ast::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a formula")),
        }
    }
}

fn to_nnf(ast: &Ast, negated: bool) -> Formula {
    match ast {
        Ast::Const(v) => Formula::constant(*v != negated),
        Ast::Atom(a) => Formula::literal(a.clone(), !negated),
        Ast::Not(inner) => to_nnf(inner, !negated),
        Ast::And(l, r) | Ast::Or(l, r) => {
            let conj = matches!(ast, Ast::And(..)) != negated;
            let parts = [to_nnf(l, negated), to_nnf(r, negated)];
            if conj {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            }
        }
        // a -> b == !a | b
        Ast::Implies(l, r) => {
            if negated {
                Formula::and([to_nnf(l, false), to_nnf(r, true)])
            } else {
                Formula::or([to_nnf(l, true), to_nnf(r, false)])
            }
        }
        // a <-> b == (a & b) | (!a & !b); negated: (a & !b) | (!a & b)
        Ast::Iff(l, r) => Formula::or([
            Formula::and([to_nnf(l, false), to_nnf(r, negated)]),
            Formula::and([to_nnf(l, true), to_nnf(r, !negated)]),
        ]),
        Ast::Unary(op, inner) => {
            let inner = to_nnf(inner, negated);
            match (op, negated) {
                ('X', _) => Formula::next(inner),
                ('F', false) | ('G', true) => Formula::eventually(inner),
                _ => Formula::always(inner),
            }
        }
        Ast::Binary(op, l, r) => {
            let (l, r) = (to_nnf(l, negated), to_nnf(r, negated));
            if (*op == 'U') != negated {
                Formula::until(l, r)
            } else {
                Formula::release(l, r)
            }
        }
    }
}

/// Parses a formula and returns its canonical negation normal form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let ast = parser.expr()?;
    if parser.peek().tok != Tok::End {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(to_nnf(&ast, false))
}
