//! Lexer and recursive-descent parser.
//!
//! ```text
//! script := stmt*
//! stmt   := NAME "=" expr | NAME "(" args ")"
//! expr   := INT ["/" INT] | "[" [expr ("," expr)*] "]" | NAME "(" args ")" | group | NAME
//! group  := NAME ["^" INT] ("*" NAME ["^" INT])*
//! args   := [arg ("," arg)*]
//! arg    := [NAME "="] expr
//! ```
//!
//! `#` starts a line comment; `;` and newlines are optional separators.

use crate::ast::{Arg, Call, Expr, Pos, Script, Stmt};
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    Punct(char),
    Eof,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, CliError> {
        let mut out = Vec::new();
        loop {
            let pos = Pos {
                line: self.line,
                col: self.col,
            };
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, pos));
                return Ok(out);
            };
            if c.is_whitespace() || c == ';' {
                self.bump();
            } else if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                    s.push(c);
                    self.bump();
                }
                out.push((Tok::Name(s), pos));
            } else if c.is_ascii_digit() || c == '-' {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(c);
                    self.bump();
                }
                let n = s.parse::<i64>().map_err(|_| parse_error(pos, format!("bad integer `{s}`")))?;
                out.push((Tok::Int(n), pos));
            } else if "()[],=^*/".contains(c) {
                self.bump();
                out.push((Tok::Punct(c), pos));
            } else {
                return Err(parse_error(pos, format!("unexpected character `{c}`")));
            }
        }
    }
}

fn parse_error(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_error(self.pos(), format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.next() {
            (Tok::Int(n), _) => Ok(n),
            (t, p) => Err(parse_error(p, format!("expected an integer, found {}", describe(&t)))),
        }
    }

    fn name(&mut self) -> Result<(String, Pos), CliError> {
        match self.next() {
            (Tok::Name(s), p) => Ok((s, p)),
            (t, p) => Err(parse_error(p, format!("expected a name, found {}", describe(&t)))),
        }
    }

    fn script(&mut self) -> Result<Script, CliError> {
        let mut stmts = Vec::new();
        while *self.peek() != Tok::Eof {
            let (name, pos) = self.name()?;
            if self.eat('=') {
                let value = self.expr()?;
                stmts.push(Stmt::Decl { name, value, pos });
            } else if *self.peek() == Tok::Punct('(') {
                stmts.push(Stmt::Cmd(self.call(name, pos)?));
            } else {
                return Err(parse_error(
                    self.pos(),
                    format!("expected `=` or `(` after `{name}`, found {}", describe(self.peek())),
                ));
            }
        }
        Ok(Script { stmts })
    }

    fn call(&mut self, head: String, pos: Pos) -> Result<Call, CliError> {
        self.expect('(')?;
        let mut args = Vec::new();
        while *self.peek() != Tok::Punct(')') {
            let key = match (self.peek().clone(), self.peek2()) {
                (Tok::Name(k), Tok::Punct('=')) => {
                    self.next();
                    self.next();
                    Some(k)
                }
                _ => None,
            };
            args.push(Arg {
                key,
                value: self.expr()?,
            });
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        Ok(Call { head, args, pos })
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.next().0 {
            Tok::Int(n) => {
                if self.eat('/') {
                    let d = self.int()?;
                    if d <= 0 {
                        return Err(parse_error(pos, "denominator must be positive"));
                    }
                    Ok(Expr::Ratio(n, d, pos))
                } else {
                    Ok(Expr::Int(n, pos))
                }
            }
            Tok::Punct('[') => {
                let mut xs = Vec::new();
                while *self.peek() != Tok::Punct(']') {
                    xs.push(self.expr()?);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                Ok(Expr::List(xs, pos))
            }
            Tok::Name(s) => {
                if *self.peek() == Tok::Punct('(') {
                    return Ok(Expr::Call(self.call(s, pos)?));
                }
                let mut sym = s;
                loop {
                    if self.eat('^') {
                        sym.push_str(&format!("^{}", self.int()?));
                    } else if self.eat('*') {
                        sym.push('*');
                        sym.push_str(&self.name()?.0);
                    } else {
                        break;
                    }
                }
                Ok(Expr::Symbol(sym, pos))
            }
            t => Err(parse_error(pos, format!("expected an expression, found {}", describe(&t)))),
        }
    }
}

pub fn parse(text: &str) -> Result<Script, CliError> {
    let toks = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    }
    .tokens()?;
    Parser { toks, at: 0 }.script()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke() {
        let s = parse("A = matrix(Q, [0,1,2,2,3])\nk0(A)").unwrap();
        assert_eq!((s.declarations(), s.commands()), (1, 1));
    }

    #[test]
    fn nested_constructor() {
        let s = parse("B = poly(matrix(Q,[0,0]), deg=[1])").unwrap();
        let Stmt::Decl { value: Expr::Call(c), .. } = &s.stmts[0] else {
            panic!("not a call");
        };
        assert_eq!(c.head, "poly");
        assert_eq!(c.args[1].key.as_deref(), Some("deg"));
        assert!(matches!(&c.args[0].value, Expr::Call(inner) if inner.head == "matrix"));
    }

    #[test]
    fn group_symbols_and_ratios() {
        let s = parse("G = groupalg(F3, Z^2*Z3) # comment\nx = [1/2, -3]").unwrap();
        assert_eq!(s.to_string(), "G = groupalg(F3, Z^2*Z3)\nx = [1/2, -3]\n");
    }

    #[test]
    fn error_positions() {
        match parse("A = matrix(Q,\n  [0,1)") {
            Err(CliError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("A matrix"), Err(CliError::Parse { line: 1, col: 3, .. })));
        assert!(matches!(parse("x = 1/0"), Err(CliError::Parse { .. })));
    }
}
