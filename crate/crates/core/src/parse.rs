//! Recursive-descent parser for generator expressions. Parsing also
//! type-checks every `;`.

use thiserror::Error;

use crate::expr::Expr;
use crate::idag::Label;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: type mismatch: left side has coarity {found}, right side has arity {expected}")]
    TypeMismatch {
        line: usize,
        column: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Star,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !"()[],;*".contains(c)
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::End, line, column));
                return Ok(out);
            };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '*' => Tok::Star,
                _ => {
                    let mut word = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if !is_word_char(c) {
                            break;
                        }
                        word.push(c);
                        self.bump();
                    }
                    let tok = if word.chars().all(|c| c.is_ascii_digit()) {
                        word.parse().map(Tok::Nat).map_err(|_| ParseError::Syntax {
                            line,
                            column,
                            message: format!("number `{word}` is too large"),
                        })?
                    } else {
                        Tok::Word(word)
                    };
                    out.push((tok, line, column));
                    continue;
                }
            };
            self.bump();
            out.push((tok, line, column));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

type Typed = (Expr, (usize, usize));

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn error<T>(&self, message: String) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax {
            line,
            column,
            message,
        })
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.advance();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            ))
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.advance();
                Ok(n)
            }
            other => self.error(format!("expected a number, found {}", other.describe())),
        }
    }

    fn seq(&mut self) -> Result<Typed, ParseError> {
        let (mut e, (n, mut k)) = self.ten()?;
        while *self.peek() == Tok::Semi {
            let (line, column) = self.here();
            self.advance();
            let (rhs, (k2, m)) = self.ten()?;
            if k != k2 {
                return Err(ParseError::TypeMismatch {
                    line,
                    column,
                    expected: k2,
                    found: k,
                });
            }
            e = Expr::seq(e, rhs);
            k = m;
        }
        Ok((e, (n, k)))
    }

    fn ten(&mut self) -> Result<Typed, ParseError> {
        let (mut e, (mut n, mut m)) = self.atom()?;
        while *self.peek() == Tok::Star {
            self.advance();
            let (rhs, (n2, m2)) = self.atom()?;
            e = Expr::ten(e, rhs);
            n += n2;
            m += m2;
        }
        Ok((e, (n, m)))
    }

    fn atom(&mut self) -> Result<Typed, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.advance();
                let inner = self.seq()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Word(w) => {
                self.advance();
                let e = match w.as_str() {
                    "eta" => Expr::Eta,
                    "nabla" => Expr::Nabla,
                    "eps" => Expr::Eps,
                    "delta" => Expr::Delta,
                    "anti" => Expr::Anti,
                    "node" => {
                        if *self.peek() == Tok::LBracket {
                            self.advance();
                            let label = match self.peek().clone() {
                                Tok::Word(l) => l,
                                Tok::Nat(n) => n.to_string(),
                                other => {
                                    return self
                                        .error(format!("expected a label, found {}", other.describe()))
                                }
                            };
                            self.advance();
                            self.expect(Tok::RBracket)?;
                            Expr::Node(Label::new(label))
                        } else {
                            Expr::Node(Label::default())
                        }
                    }
                    "id" => {
                        self.expect(Tok::LParen)?;
                        let n = self.nat()?;
                        self.expect(Tok::RParen)?;
                        Expr::Id(n)
                    }
                    "sym" => {
                        self.expect(Tok::LParen)?;
                        let n = self.nat()?;
                        self.expect(Tok::Comma)?;
                        let m = self.nat()?;
                        self.expect(Tok::RParen)?;
                        Expr::Sym(n, m)
                    }
                    _ => {
                        self.pos -= 1;
                        return self.error(format!("unknown generator `{w}`"));
                    }
                };
                let arity = e.arity().expect("atoms are well typed");
                Ok((e, arity))
            }
            other => self.error(format!("expected an expression, found {}", other.describe())),
        }
    }
}

/// Parses and type-checks an expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    }
    .tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let (e, _) = p.seq()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse("delta ; nabla").unwrap(), Expr::seq(Expr::Delta, Expr::Nabla));
        assert_eq!(
            parse("(node[x] * id(1)) ; sym(1,1)").unwrap(),
            Expr::seq(Expr::ten(Expr::node("x"), Expr::Id(1)), Expr::Sym(1, 1))
        );
        let hopf = parse("delta ; (anti * id(1)) ; nabla").unwrap();
        assert_eq!(
            hopf,
            Expr::seq(
                Expr::seq(Expr::Delta, Expr::ten(Expr::Anti, Expr::Id(1))),
                Expr::Nabla
            )
        );
        assert_eq!(hopf.arity(), Ok((1, 1)));
    }

    #[test]
    fn default_and_explicit_labels() {
        assert_eq!(parse("node").unwrap(), Expr::Node(Label::default()));
        assert_eq!(parse("node[•]").unwrap(), Expr::Node(Label::default()));
        assert_eq!(parse("node[x_1]").unwrap(), Expr::node("x_1"));
        assert_eq!(parse("node[7]").unwrap(), Expr::node("7"));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("eta * eta ; nabla").unwrap(),
            Expr::seq(Expr::ten(Expr::Eta, Expr::Eta), Expr::Nabla)
        );
        assert_eq!(
            parse("id(1) * id(1) * id(1)").unwrap(),
            Expr::ten(Expr::ten(Expr::Id(1), Expr::Id(1)), Expr::Id(1))
        );
    }

    #[test]
    fn type_errors_carry_location() {
        assert_eq!(
            parse("nabla ; nabla"),
            Err(ParseError::TypeMismatch {
                line: 1,
                column: 7,
                expected: 2,
                found: 1
            })
        );
        let err = parse("delta ;\n  eps").unwrap_err();
        assert_eq!(
            err,
            ParseError::TypeMismatch {
                line: 1,
                column: 7,
                expected: 1,
                found: 2
            }
        );
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "delta ;", "foo", "id(", "id(x)", "sym(1)", "node[", "(eta", "eta eta", "node[]"] {
            assert!(matches!(parse(bad), Err(ParseError::Syntax { .. })), "{bad:?}");
        }
        assert_eq!(
            parse("eta ; )"),
            Err(ParseError::Syntax {
                line: 1,
                column: 7,
                message: "expected an expression, found `)`".into()
            })
        );
    }

    #[test]
    fn printed_text_reparses() {
        for text in [
            "delta ; nabla",
            "id(2) * eta",
            "node[x] * id(1) ; sym(1,1)",
            "delta ; (anti ; anti) * id(1) ; nabla",
            "eta * (eta * eta)",
            "(delta ; nabla) * eta",
        ] {
            assert_eq!(parse(text).unwrap().to_string(), text);
        }
    }
}
