use super::{Atom, Expr, Rational};
use crate::error::ExprError;

/// Unnormalized arithmetic tree, as produced by the parser.
#[derive(Clone, Debug, PartialEq)]
pub enum Tree {
    Const(Rational),
    Atom(Atom),
    /// An already canonical subexpression (builtins expand to these).
    Expr(Expr),
    Neg(Box<Tree>),
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Div(Box<Tree>, Box<Tree>),
    Pow(Box<Tree>, i64),
    Log(Box<Tree>),
}

// Constructors named after the operators they build; `Tree` is syntax, not a number.
#[allow(clippy::should_implement_trait)]
impl Tree {
    pub fn jet(order: u32) -> Tree {
        Tree::Atom(Atom::Jet(order))
    }

    pub fn int(n: i64) -> Tree {
        Tree::Const(Rational::from_integer(n.into()))
    }

    pub fn add(a: Tree, b: Tree) -> Tree {
        Tree::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Tree, b: Tree) -> Tree {
        Tree::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Tree, b: Tree) -> Tree {
        Tree::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Tree, b: Tree) -> Tree {
        Tree::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Tree, e: i64) -> Tree {
        Tree::Pow(Box::new(a), e)
    }
}

/// Canonical form of a tree.
pub fn normalize(tree: &Tree) -> Result<Expr, ExprError> {
    Ok(match tree {
        Tree::Const(c) => Expr::rational(c.clone()),
        Tree::Atom(a) => Expr::atom(a.clone()),
        Tree::Expr(e) => e.clone(),
        Tree::Neg(a) => -normalize(a)?,
        Tree::Add(a, b) => normalize(a)? + normalize(b)?,
        Tree::Sub(a, b) => normalize(a)? - normalize(b)?,
        Tree::Mul(a, b) => normalize(a)? * normalize(b)?,
        Tree::Div(a, b) => normalize(a)?.checked_div(&normalize(b)?)?,
        Tree::Pow(a, e) => normalize(a)?.pow(*e)?,
        Tree::Log(a) => Expr::log(normalize(a)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_examples() {
        let t = Tree::mul(Tree::div(Tree::jet(2), Tree::jet(1)), Tree::jet(1));
        assert_eq!(normalize(&t).unwrap(), Expr::jet(2));
        let t = Tree::div(Tree::jet(1), Tree::jet(1));
        assert_eq!(normalize(&t).unwrap(), Expr::one());
        let t = Tree::div(Tree::jet(1), Tree::sub(Tree::jet(0), Tree::jet(0)));
        assert_eq!(normalize(&t), Err(ExprError::DivisionByZero));
    }
}
