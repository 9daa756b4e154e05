//! Canonical text, LaTeX and JSON renderings of expressions.

use std::fmt;
use std::io;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::expr::{Atom, Expr, Monomial, Polynomial, Rational};

/// Output format for rendered expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RenderMode {
    /// The input grammar; `parse(render(e))` normalizes back to `e`.
    #[default]
    #[value(name = "canonical")]
    CanonicalText,
    #[value(name = "latex")]
    Latex,
    #[value(name = "json")]
    JsonAst,
}

pub fn render(e: &Expr, mode: RenderMode) -> String {
    match mode {
        RenderMode::CanonicalText => e.to_string(),
        RenderMode::Latex => latex(e),
        RenderMode::JsonAst => json(e),
    }
}

// ---------------------------------------------------------------- text

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::Time => "t".into(),
        Atom::Jet(0) => "q".into(),
        Atom::Jet(k @ 1..=3) => format!("q{}", "'".repeat(*k as usize)),
        Atom::Jet(k) => format!("q^({k})"),
        Atom::Param(name) => name.to_string(),
        Atom::Log(arg) => format!("log({arg})"),
    }
}

fn monomial_text(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(a, e)| {
            if *e == 1 {
                atom_text(a)
            } else {
                format!("{}^{e}", atom_text(a))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// A term without its sign.
fn term_text(m: &Monomial, c: &Rational) -> String {
    let c = c.abs();
    if m.is_one() {
        return c.to_string();
    }
    if c.is_one() {
        monomial_text(m)
    } else {
        format!("{c}*{}", monomial_text(m))
    }
}

fn join_signed(p: &Polynomial, term: impl Fn(&Monomial, &Rational) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let t = term(m, c);
        match (i, c.is_negative()) {
            (0, true) => {
                out.push('-');
                out.push_str(&t);
            }
            (0, false) => out.push_str(&t),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
    }
    out
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&atom_text(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(self, term_text))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num().to_string();
        if self.den().is_one() {
            return f.write_str(&num);
        }
        let num = if self.num().len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let bare_den = match self.den().terms() {
            [(m, c)] => m.is_one() || (c.is_one() && m.factors().len() == 1),
            _ => false,
        };
        if bare_den {
            write!(f, "{num}/{}", self.den())
        } else {
            write!(f, "{num}/({})", self.den())
        }
    }
}

// ---------------------------------------------------------------- latex

fn latex_name(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit() || c == '_')
        .unwrap_or(name.len());
    let (head, tail) = name.split_at(split);
    let head = if head.chars().count() == 1 {
        head.to_string()
    } else {
        format!("\\mathrm{{{head}}}")
    };
    let tail = tail.trim_start_matches('_');
    if tail.is_empty() {
        head
    } else {
        format!("{head}_{{{tail}}}")
    }
}

fn latex_atom(a: &Atom) -> String {
    match a {
        Atom::Time => "t".into(),
        Atom::Jet(0) => "q".into(),
        Atom::Jet(1) => "\\dot{q}".into(),
        Atom::Jet(2) => "\\ddot{q}".into(),
        Atom::Jet(3) => "\\dddot{q}".into(),
        Atom::Jet(k) => format!("q^{{({k})}}"),
        Atom::Param(name) => latex_name(name),
        Atom::Log(arg) => format!("\\log\\left({}\\right)", latex(arg)),
    }
}

fn latex_power(a: &Atom, e: u32) -> String {
    let base = latex_atom(a);
    if e == 1 {
        return base;
    }
    match a {
        Atom::Jet(k) if *k >= 4 => format!("\\left({base}\\right)^{{{e}}}"),
        Atom::Log(_) => format!("\\left({base}\\right)^{{{e}}}"),
        _ => format!("{base}^{{{e}}}"),
    }
}

fn latex_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_term(m: &Monomial, c: &Rational) -> String {
    let c = c.abs();
    let body = m
        .factors()
        .iter()
        .map(|(a, e)| latex_power(a, *e))
        .collect::<Vec<_>>()
        .join(" ");
    if m.is_one() {
        latex_rational(&c)
    } else if c.is_one() {
        body
    } else {
        format!("{} {body}", latex_rational(&c))
    }
}

fn latex(e: &Expr) -> String {
    let num = join_signed(e.num(), latex_term);
    if e.den().is_one() {
        return num;
    }
    let den = join_signed(e.den(), latex_term);
    format!("\\frac{{{num}}}{{{den}}}")
}

// ---------------------------------------------------------------- json

#[derive(Serialize)]
struct JsonExpr {
    num: Vec<JsonTerm>,
    den: Vec<JsonTerm>,
}

#[derive(Serialize)]
struct JsonTerm {
    coeff: JsonCoeff,
    atoms: Vec<JsonAtom>,
}

#[derive(Serialize)]
struct JsonCoeff {
    n: String,
    d: String,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum JsonAtom {
    Time { exp: u32 },
    Jet { order: u32, exp: u32 },
    Param { name: String, exp: u32 },
    Log { arg: Box<JsonExpr>, exp: u32 },
}

fn json_poly(p: &Polynomial) -> Vec<JsonTerm> {
    p.terms()
        .iter()
        .map(|(m, c)| JsonTerm {
            coeff: JsonCoeff {
                n: c.numer().to_string(),
                d: c.denom().to_string(),
            },
            atoms: m
                .factors()
                .iter()
                .map(|(a, exp)| {
                    let exp = *exp;
                    match a {
                        Atom::Time => JsonAtom::Time { exp },
                        Atom::Jet(order) => JsonAtom::Jet { order: *order, exp },
                        Atom::Param(name) => JsonAtom::Param {
                            name: name.to_string(),
                            exp,
                        },
                        Atom::Log(arg) => JsonAtom::Log {
                            arg: Box::new(json_expr(arg)),
                            exp,
                        },
                    }
                })
                .collect(),
        })
        .collect()
}

fn json_expr(e: &Expr) -> JsonExpr {
    JsonExpr {
        num: json_poly(e.num()),
        den: json_poly(e.den()),
    }
}

/// `", "` between items and `": "` after keys, on a single line.
struct SpacedFormatter;

impl serde_json::ser::Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

fn json(e: &Expr) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SpacedFormatter);
    json_expr(e)
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
