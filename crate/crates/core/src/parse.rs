//! Text input grammar.
//!
//! Jets are written `q`, `q'`, `q''`, ... or `q^(k)`; `t` is time; `log(e)`
//! is the natural logarithm; any other identifier is a symbolic parameter.
//! `sigma(n)`, `krivonos(n)`, `schippers(n)`, `presch()` and `L2()` expand
//! to the built-in Lagrangians. Exponents must be integers and there is no
//! implicit multiplication.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::ParseError;
use crate::expr::{normalize, Atom, Expr, Rational, Tree};
use crate::hierarchy::{builtin, HierarchyId};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Jet(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        let start = i;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(syntax(
                        Pos {
                            line,
                            column: col + (i - start),
                        },
                        "decimal literals are not supported; write a ratio such as 3/2",
                    ));
                }
                let digits: String = chars[start..i].iter().collect();
                i -= 1;
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                if name == "q" {
                    let mut primes = 0;
                    while i < chars.len() && chars[i] == '\'' {
                        primes += 1;
                        i += 1;
                    }
                    if primes == 0 {
                        if let Some((k, len)) = paren_order(&chars[i..]) {
                            i += len;
                            primes = k;
                        }
                    }
                    i -= 1;
                    Tok::Jet(primes)
                } else {
                    if i < chars.len() && chars[i] == '\'' {
                        return Err(syntax(
                            Pos {
                                line,
                                column: col + (i - start),
                            },
                            format!("primes are only allowed on q, not on `{name}`"),
                        ));
                    }
                    i -= 1;
                    Tok::Ident(name)
                }
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        i += 1;
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

/// Matches `^(digits)` right after a bare `q`.
fn paren_order(rest: &[char]) -> Option<(u32, usize)> {
    if rest.len() < 4 || rest[0] != '^' || rest[1] != '(' {
        return None;
    }
    let digits = rest[2..].iter().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 || rest.get(2 + digits) != Some(&')') {
        return None;
    }
    let k: String = rest[2..2 + digits].iter().collect();
    Some((k.parse().ok()?, digits + 3))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {what}, found {}", describe(self.peek())),
            ))
        }
    }

    fn sum(&mut self) -> Result<Tree, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Tree::add(lhs, self.product()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Tree::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Tree, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Tree::mul(lhs, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Tree::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Tree, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Tree::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Tree, ParseError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let exponent = self.exponent()?;
            let value = normalize(&exponent)
                .ok()
                .and_then(|e| e.as_constant())
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().to_i64())
                .ok_or(ParseError::UnsupportedExponent {
                    line: pos.line,
                    column: pos.column,
                })?;
            base = Tree::pow(base, value);
        }
        Ok(base)
    }

    /// Signed primary; binds tighter than the following `^`.
    fn exponent(&mut self) -> Result<Tree, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Tree::Neg(Box::new(self.exponent()?)))
            }
            Tok::Plus => {
                self.bump();
                self.exponent()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Tree, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Tree::Const(Rational::from_integer(n))),
            Tok::Jet(k) => Ok(Tree::Atom(Atom::Jet(k))),
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(name, pos),
            other => Err(syntax(
                pos,
                format!("expected an operand, found {}", describe(&other)),
            )),
        }
    }

    fn identifier(&mut self, name: String, pos: Pos) -> Result<Tree, ParseError> {
        let called = *self.peek() == Tok::LParen;
        match name.as_str() {
            "t" => Ok(Tree::Atom(Atom::Time)),
            "log" => {
                self.expect(Tok::LParen, "`(` after log")?;
                let arg = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Tree::Log(Box::new(arg)))
            }
            "sigma" | "krivonos" | "schippers" if called => {
                self.bump();
                let order_pos = self.pos();
                let order = match self.bump().0 {
                    Tok::Int(n) => n
                        .to_u32()
                        .ok_or_else(|| syntax(order_pos, "order out of range"))?,
                    other => {
                        return Err(syntax(
                            order_pos,
                            format!("expected an integer order, found {}", describe(&other)),
                        ))
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                let id = HierarchyId::from_name(&name, Some(order)).map_err(|m| syntax(pos, m))?;
                Ok(Tree::Expr(builtin(id)?))
            }
            "presch" | "L2" if called => {
                self.bump();
                self.expect(Tok::RParen, "`)` (this builtin takes no arguments)")?;
                let id = HierarchyId::from_name(&name, None).map_err(|m| syntax(pos, m))?;
                Ok(Tree::Expr(builtin(id)?))
            }
            _ if called => Err(syntax(pos, format!("unknown function `{name}`"))),
            _ => Ok(Tree::Atom(Atom::param(&name))),
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Jet(k) => format!("`{}`", Atom::Jet(*k)),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses `src` into an unnormalized tree.
pub fn parse(src: &str) -> Result<Tree, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    if *p.peek() == Tok::Eof {
        return Err(syntax(p.pos(), "empty expression"));
    }
    let tree = p.sum()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(
            p.pos(),
            format!("unexpected {}", describe(p.peek())),
        ));
    }
    Ok(tree)
}

/// Parses and normalizes.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    Ok(normalize(&parse(src)?)?)
}

/// Parses a rational literal such as `-3/2` or `7`.
pub fn parse_rational(src: &str) -> Option<Rational> {
    let e = parse_expr(src).ok()?;
    let r = e.as_constant()?;
    (!r.denom().is_zero()).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{krivonos, schwarzian};

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn jets_and_atoms() {
        assert_eq!(p("q"), Expr::jet(0));
        assert_eq!(p("q'''"), Expr::jet(3));
        assert_eq!(p("q^(7)"), Expr::jet(7));
        assert_eq!(p("q^(4)^2"), Expr::jet(4).pow(2).unwrap());
        assert_eq!(p("q^2"), Expr::jet(0).pow(2).unwrap());
        assert_eq!(p("t"), Expr::time());
        assert_eq!(p("c_1"), Expr::param("c_1"));
    }

    #[test]
    fn precedence() {
        assert_eq!(p("-q^2"), -Expr::jet(0).pow(2).unwrap());
        assert_eq!(p("1 - 2 - 3"), Expr::integer(-4));
        assert_eq!(p("12/2/3"), Expr::integer(2));
        assert_eq!(p("3/2*q"), &Expr::ratio(3, 2) * &Expr::jet(0));
        assert_eq!(p("q^-1"), Expr::jet(0).pow(-1).unwrap());
        assert_eq!(p("2^3^2"), Expr::integer(64));
    }

    #[test]
    fn builtins_expand() {
        assert_eq!(p("sigma(3)"), schwarzian());
        assert_eq!(p("krivonos(5)"), krivonos(5).unwrap());
        assert_eq!(p("q'''/q' - 3/2*(q''/q')^2"), schwarzian());
        assert_eq!(p("presch() * q'"), Expr::jet(2));
        assert!(matches!(
            parse_expr("sigma(7)"),
            Err(ParseError::Hierarchy(_))
        ));
    }

    #[test]
    fn logs() {
        assert_eq!(p("log(q')"), Expr::log(Expr::jet(1)).unwrap());
        assert_eq!(p("log(1)"), Expr::zero());
        assert!(matches!(parse_expr("log(2)"), Err(ParseError::Expr(_))));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("q +\n  * q"),
            Err(ParseError::Syntax {
                line: 2,
                column: 3,
                message: "expected an operand, found `*`".into()
            })
        );
        assert_eq!(
            parse_expr("q^(1/2)"),
            Err(ParseError::UnsupportedExponent { line: 1, column: 3 })
        );
        assert!(matches!(
            parse_expr("q'^q"),
            Err(ParseError::UnsupportedExponent { .. })
        ));
        assert!(matches!(parse_expr("2 q"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("x'"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("1.5"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_expr("foo(q)"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_expr(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("1/0"), Err(ParseError::Expr(_))));
    }

    #[test]
    fn render_round_trip() {
        for e in [
            schwarzian(),
            krivonos(6).unwrap(),
            p("log(q' + c)*t - 7/3*q^(5)^-2"),
        ] {
            assert_eq!(p(&e.to_string()), e);
        }
    }
}
