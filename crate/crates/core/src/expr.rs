//! Generator expressions.
//!
//! Concrete syntax, with `;` sequential composition in data-flow order
//! (`e1 ; e2` runs `e1` first) and `*` tensor binding tighter:
//!
//! ```text
//! expr := seq
//! seq  := ten (";" ten)*
//! ten  := atom ("*" atom)*
//! atom := "eta" | "nabla" | "eps" | "delta" | "anti"
//!       | "node" ("[" ident "]")?
//!       | "id" "(" nat ")" | "sym" "(" nat "," nat ")"
//!       | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::idag::Label;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// unit `0 -> 1`
    Eta,
    /// multiplication `2 -> 1`
    Nabla,
    /// counit `1 -> 0`
    Eps,
    /// comultiplication `1 -> 2`
    Delta,
    /// labelled node `1 -> 1`
    Node(Label),
    /// antipode `1 -> 1`
    Anti,
    Id(usize),
    /// block symmetry `n + m -> m + n`
    Sym(usize, usize),
    /// first the left, then the right
    Seq(Box<Expr>, Box<Expr>),
    Ten(Box<Expr>, Box<Expr>),
}

/// Names of the generators, used in error messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Eta,
    Nabla,
    Eps,
    Delta,
    Node,
    Anti,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Eta => "eta",
            Generator::Nabla => "nabla",
            Generator::Eps => "eps",
            Generator::Delta => "delta",
            Generator::Node => "node",
            Generator::Anti => "anti",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("type mismatch at composition #{position}: left side has coarity {found}, right side has arity {expected}")]
pub struct TypeMismatch {
    /// Pre-order index of the offending `Seq` node.
    pub position: usize,
    pub expected: usize,
    pub found: usize,
}

impl Expr {
    pub fn node(label: impl Into<String>) -> Expr {
        Expr::Node(Label::new(label))
    }

    pub fn seq(first: Expr, then: Expr) -> Expr {
        Expr::Seq(Box::new(first), Box::new(then))
    }

    pub fn ten(left: Expr, right: Expr) -> Expr {
        Expr::Ten(Box::new(left), Box::new(right))
    }

    /// Left-associated sequence; `Id(0)` when empty.
    pub fn seq_all(parts: impl IntoIterator<Item = Expr>) -> Expr {
        parts.into_iter().reduce(Expr::seq).unwrap_or(Expr::Id(0))
    }

    /// Left-associated tensor; `Id(0)` when empty.
    pub fn ten_all(parts: impl IntoIterator<Item = Expr>) -> Expr {
        parts.into_iter().reduce(Expr::ten).unwrap_or(Expr::Id(0))
    }

    pub fn generator(&self) -> Option<Generator> {
        Some(match self {
            Expr::Eta => Generator::Eta,
            Expr::Nabla => Generator::Nabla,
            Expr::Eps => Generator::Eps,
            Expr::Delta => Generator::Delta,
            Expr::Node(_) => Generator::Node,
            Expr::Anti => Generator::Anti,
            _ => return None,
        })
    }

    /// `(arity, coarity)`, or the first interface mismatch in pre-order.
    pub fn arity(&self) -> Result<(usize, usize), TypeMismatch> {
        let mut counter = 0;
        self.arity_at(&mut counter)
    }

    fn arity_at(&self, counter: &mut usize) -> Result<(usize, usize), TypeMismatch> {
        let here = *counter;
        *counter += 1;
        Ok(match self {
            Expr::Eta => (0, 1),
            Expr::Nabla => (2, 1),
            Expr::Eps => (1, 0),
            Expr::Delta => (1, 2),
            Expr::Node(_) | Expr::Anti => (1, 1),
            Expr::Id(n) => (*n, *n),
            Expr::Sym(n, m) => (n + m, m + n),
            Expr::Seq(a, b) => {
                let (n, k) = a.arity_at(counter)?;
                let (k2, m) = b.arity_at(counter)?;
                if k != k2 {
                    return Err(TypeMismatch {
                        position: here,
                        expected: k2,
                        found: k,
                    });
                }
                (n, m)
            }
            Expr::Ten(a, b) => {
                let (n1, m1) = a.arity_at(counter)?;
                let (n2, m2) = b.arity_at(counter)?;
                (n1 + n2, m1 + m2)
            }
        })
    }

    /// Visits every generator occurrence.
    pub fn generators(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::Seq(a, b) | Expr::Ten(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Expr::Id(_) | Expr::Sym(..) => {}
                g => out.push(g),
            }
        }
        out
    }

    /// Replaces every node occurrence with `f(label)`.
    pub fn substitute_nodes(&self, f: &impl Fn(&Label) -> Expr) -> Expr {
        match self {
            Expr::Node(l) => f(l),
            Expr::Seq(a, b) => Expr::seq(a.substitute_nodes(f), b.substitute_nodes(f)),
            Expr::Ten(a, b) => Expr::ten(a.substitute_nodes(f), b.substitute_nodes(f)),
            other => other.clone(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Seq(a, b) | Expr::Ten(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Seq(a, b) | Expr::Ten(a, b) => 1 + a.depth().max(b.depth()),
            _ => 1,
        }
    }
}

/// `Sym(n, m)` written with `Sym(1, 1)`, `Id`, `Ten` and `Seq` only, by
/// moving the last `m` wires in front one at a time.
pub fn expand_symmetry(n: usize, m: usize) -> Expr {
    if n == 0 || m == 0 {
        return Expr::Id(n + m);
    }
    if n == 1 && m == 1 {
        return Expr::Sym(1, 1);
    }
    // sym(n, 1): bubble the last wire to the front
    let bubble = |n: usize, after: usize| -> Expr {
        let steps = (0..n).rev().map(|k| {
            let mut parts = Vec::new();
            if k > 0 {
                parts.push(Expr::Id(k));
            }
            parts.push(Expr::Sym(1, 1));
            let rest = n - 1 - k + after;
            if rest > 0 {
                parts.push(Expr::Id(rest));
            }
            Expr::ten_all(parts)
        });
        Expr::seq_all(steps)
    };
    // Wire n + t of the input (t-th of the last block) moves to position t.
    let moves = (0..m).map(|t| {
        let inner = bubble(n, m - 1 - t);
        if t == 0 {
            inner
        } else {
            Expr::ten(Expr::Id(t), inner)
        }
    });
    Expr::seq_all(moves)
}

// Printing. Precedence: atoms > tensor > sequence; both operators are
// left-associative, so a right operand of the same operator is bracketed.

fn write_atom(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Eta => f.write_str("eta"),
        Expr::Nabla => f.write_str("nabla"),
        Expr::Eps => f.write_str("eps"),
        Expr::Delta => f.write_str("delta"),
        Expr::Anti => f.write_str("anti"),
        Expr::Node(l) if l.is_default() => f.write_str("node"),
        Expr::Node(l) => write!(f, "node[{l}]"),
        Expr::Id(n) => write!(f, "id({n})"),
        Expr::Sym(n, m) => write!(f, "sym({n},{m})"),
        other => write!(f, "({other})"),
    }
}

fn write_ten(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Ten(a, b) => {
            write_ten(a, f)?;
            f.write_str(" * ")?;
            write_atom(b, f)
        }
        other => write_atom(other, f),
    }
}

fn write_seq(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Seq(a, b) => {
            write_seq(a, f)?;
            f.write_str(" ; ")?;
            match **b {
                Expr::Seq(..) => write_atom(b, f),
                _ => write_ten(b, f),
            }
        }
        other => write_ten(other, f),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_arities() {
        assert_eq!(Expr::Eta.arity(), Ok((0, 1)));
        assert_eq!(Expr::Nabla.arity(), Ok((2, 1)));
        assert_eq!(Expr::Eps.arity(), Ok((1, 0)));
        assert_eq!(Expr::Delta.arity(), Ok((1, 2)));
        assert_eq!(Expr::node("x").arity(), Ok((1, 1)));
        assert_eq!(Expr::Anti.arity(), Ok((1, 1)));
        assert_eq!(Expr::Id(4).arity(), Ok((4, 4)));
        assert_eq!(Expr::Sym(2, 3).arity(), Ok((5, 5)));
    }

    #[test]
    fn composite_arities() {
        assert_eq!(Expr::seq(Expr::Delta, Expr::Nabla).arity(), Ok((1, 1)));
        assert_eq!(
            Expr::seq(Expr::Nabla, Expr::Nabla).arity(),
            Err(TypeMismatch {
                position: 0,
                expected: 2,
                found: 1
            })
        );
        let nested = Expr::ten(Expr::Eta, Expr::seq(Expr::Eta, Expr::Nabla));
        assert!(matches!(nested.arity(), Err(TypeMismatch { position: 2, .. })));
        assert_eq!(Expr::ten(Expr::Eta, Expr::Eps).arity(), Ok((1, 1)));
    }

    #[test]
    fn printing() {
        assert_eq!(Expr::seq(Expr::Delta, Expr::Nabla).to_string(), "delta ; nabla");
        assert_eq!(Expr::ten(Expr::Id(2), Expr::Eta).to_string(), "id(2) * eta");
        assert_eq!(
            Expr::seq(Expr::ten(Expr::node("x"), Expr::Id(1)), Expr::Sym(1, 1)).to_string(),
            "node[x] * id(1) ; sym(1,1)"
        );
        assert_eq!(
            Expr::seq(Expr::Delta, Expr::seq(Expr::Anti, Expr::Anti)).to_string(),
            "delta ; (anti ; anti)"
        );
        assert_eq!(
            Expr::ten(Expr::Eta, Expr::ten(Expr::Eta, Expr::Eta)).to_string(),
            "eta * (eta * eta)"
        );
        assert_eq!(
            Expr::ten(Expr::seq(Expr::Delta, Expr::Nabla), Expr::Eta).to_string(),
            "(delta ; nabla) * eta"
        );
        assert_eq!(Expr::Node(Label::default()).to_string(), "node");
    }

    #[test]
    fn trivial_symmetries() {
        assert_eq!(expand_symmetry(1, 1), Expr::Sym(1, 1));
        assert_eq!(expand_symmetry(3, 0), Expr::Id(3));
        assert_eq!(expand_symmetry(0, 2), Expr::Id(2));
        for n in 0..5 {
            for m in 0..5 {
                assert_eq!(expand_symmetry(n, m).arity(), Ok((n + m, n + m)));
                let only_small = expand_symmetry(n, m)
                    .to_string()
                    .split("sym(")
                    .skip(1)
                    .all(|s| s.starts_with("1,1)"));
                assert!(only_small);
            }
        }
    }
}
