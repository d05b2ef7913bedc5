use super::{Expr, Func, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lit = &text[start..i];
            let v: f64 = lit.parse().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("bad number `{lit}`"),
            })?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                    })
                }
            };
            i += c.len_utf8();
            out.push((tok, start));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                // a bare literal folds into a negative constant, unless it is a power base
                if let (Tok::Num(v), next) = (self.peek().clone(), self.peek2()) {
                    if *next != Tok::Op('^') {
                        self.bump();
                        return Ok(Expr::Const(-v));
                    }
                }
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let exp = self.unary()?;
        match exp {
            Expr::Const(c) if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 => {
                Ok(Expr::Pow(Box::new(base), c as i32))
            }
            other => Ok(Expr::Call(
                Func::Exp,
                Box::new(Expr::Mul(Box::new(other), Box::new(Expr::Call(Func::Log, Box::new(base))))),
            )),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(Error::Syntax { pos: self.toks[self.at - 1].1, msg: "expected `)`".into() });
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    if *self.peek() != Tok::LParen {
                        return self.fail(format!("function `{name}` needs `(`"));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    if self.bump() != Tok::RParen {
                        return Err(Error::Syntax { pos: self.toks[self.at - 1].1, msg: "expected `)`".into() });
                    }
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                self.variable(&name, pos).map(Expr::Var)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            tok => Err(Error::Syntax { pos, msg: format!("unexpected token {tok:?}") }),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Var> {
        if name == "t" {
            return Ok(Var::T);
        }
        let (head, digits) = name.split_at(1);
        let idx: usize = match digits.parse() {
            Ok(i) if (head == "x" || head == "v") && digits.bytes().all(|b| b.is_ascii_digit()) => i,
            _ => return Err(Error::UnknownVariable { name: name.to_string(), pos }),
        };
        if idx == 0 || idx > self.n {
            return Err(Error::IndexOutOfRange { name: name.to_string(), pos, n: self.n });
        }
        Ok(if head == "x" { Var::X(idx - 1) } else { Var::V(idx - 1) })
    }
}

/// Parse infix text over `t`, `x1..xn`, `v1..vn`.
pub fn parse_expression(text: &str, n: usize) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, n };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_integrands() {
        let e = parse_expression("x1^2*(1 - v1^2)", 1).unwrap();
        let expect = Expr::Mul(
            Box::new(Expr::Pow(Box::new(Expr::Var(Var::X(0))), 2)),
            Box::new(Expr::Sub(
                Box::new(Expr::Const(1.0)),
                Box::new(Expr::Pow(Box::new(Expr::Var(Var::V(0))), 2)),
            )),
        );
        assert_eq!(e, expect);
        assert_eq!(parse_expression("t", 1).unwrap(), Expr::Var(Var::T));
        assert!(parse_expression("(v1 - v2^3)^2 + x1*v2^2", 2).is_ok());
    }

    #[test]
    fn precedence() {
        let e = parse_expression("-x1^2", 1).unwrap();
        assert_eq!(e.eval(0.0, &[3.0], &[0.0]).unwrap(), -9.0);
        let e = parse_expression("-2^2", 1).unwrap();
        assert_eq!(e.eval(0.0, &[], &[]).unwrap(), -4.0);
        let e = parse_expression("2^3^2", 1).unwrap();
        assert!((e.eval(0.0, &[], &[]).unwrap() - 512.0).abs() < 1e-9);
        let e = parse_expression("1 - 2 - 3", 1).unwrap();
        assert_eq!(e.eval(0.0, &[], &[]).unwrap(), -4.0);
        let e = parse_expression("8 / 4 / 2", 1).unwrap();
        assert_eq!(e.eval(0.0, &[], &[]).unwrap(), 1.0);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_expression("x1 + * 2", 1), Err(Error::Syntax { pos: 5, msg: "unexpected token Op('*')".into() }));
        assert!(matches!(parse_expression("y1", 1), Err(Error::UnknownVariable { pos: 0, .. })));
        assert!(matches!(parse_expression("1 + x3", 2), Err(Error::IndexOutOfRange { pos: 4, n: 2, .. })));
        assert!(matches!(parse_expression("x0", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_expression("2 x1", 1), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("sin x1", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("(t", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("t $", 1), Err(Error::Syntax { pos: 2, .. })));
    }
}
