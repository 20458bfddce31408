//! Recursive-descent parser for formulas and sequents.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sequent := [formula {"," formula}] "|-" [formula]
//! formula := disj ["->" formula]
//! disj    := conj {"|" conj}
//! conj    := unary {"&" unary}
//! unary   := "~" unary | atom | "(" formula ")"
//! ```
//!
//! `¬ ∧ ∨ → ⊢` are accepted as aliases for `~ & | -> |-`.

use thiserror::Error;

use super::formula::Formula;
use super::sequent::{Sequent, Succedent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("empty judgment: `|-` needs an antecedent or a succedent")]
    EmptyJudgment,
}

impl ParseError {
    fn at(pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Turnstile,
    Comma,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

/// Tokens paired with their 1-based character column.
fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => out.push((col, Tok::Not)),
            '&' | '∧' => out.push((col, Tok::And)),
            '∨' => out.push((col, Tok::Or)),
            '→' => out.push((col, Tok::Imp)),
            '⊢' => out.push((col, Tok::Turnstile)),
            ',' => out.push((col, Tok::Comma)),
            '(' => out.push((col, Tok::LParen)),
            ')' => out.push((col, Tok::RParen)),
            '|' if next == Some('-') => {
                out.push((col, Tok::Turnstile));
                i += 2;
                continue;
            }
            '|' => out.push((col, Tok::Or)),
            '-' if next == Some('>') => {
                out.push((col, Tok::Imp));
                i += 2;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(ParseError::at(col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::at(self.col(), format!("expected {wanted}, found {}", t.describe())),
            None => ParseError::at(self.col(), format!("expected {wanted}, found end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disj()?;
        if self.eat(&Tok::Imp) {
            let right = self.formula()?;
            Ok(Formula::imp(left, right))
        } else {
            Ok(left)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while self.eat(&Tok::Or) {
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::atom(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

fn parser_for(text: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        end_col: text.chars().count() + 1,
    })
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = parser_for(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = parser_for(text)?;
    let mut antecedent = Vec::new();
    if p.peek() != Some(&Tok::Turnstile) {
        antecedent.push(p.formula()?);
        while p.eat(&Tok::Comma) {
            antecedent.push(p.formula()?);
        }
    }
    if !p.eat(&Tok::Turnstile) {
        return Err(p.unexpected("`,` or `|-`"));
    }
    let succedent = match p.peek() {
        None => Succedent::Absurd,
        Some(_) => Succedent::Conclusion(p.formula()?),
    };
    p.finish()?;
    let s = Sequent::new(antecedent, succedent);
    if s.is_empty_judgment() {
        return Err(ParseError::EmptyJudgment);
    }
    Ok(s)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn parses_lewis_theorem() {
        let f = parse_formula("~A -> (A -> B)").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::neg(atom("A")),
                Formula::imp(atom("A"), atom("B"))
            )
        );
    }

    #[test]
    fn atom_alone() {
        assert_eq!(parse_formula("p").unwrap(), atom("p"));
    }

    #[test]
    fn implication_is_right_associative() {
        let right = parse_formula("p -> q -> r").unwrap();
        assert_eq!(
            right,
            Formula::imp(atom("p"), Formula::imp(atom("q"), atom("r")))
        );
        let left = parse_formula("(p->q)->r").unwrap();
        assert_ne!(left, right);
        assert_eq!(
            left,
            Formula::imp(Formula::imp(atom("p"), atom("q")), atom("r"))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("~p & q | r -> s").unwrap(),
            Formula::imp(
                Formula::or(Formula::and(Formula::neg(atom("p")), atom("q")), atom("r")),
                atom("s")
            )
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(
            parse_formula("¬A → (A ∧ B ∨ C)").unwrap(),
            parse_formula("~A -> (A & B | C)").unwrap()
        );
        assert_eq!(
            parse_sequent("¬A, A ⊢ B").unwrap(),
            parse_sequent("~A, A |- B").unwrap()
        );
    }

    #[test]
    fn sequent_shapes() {
        let s = parse_sequent("~A, A |- B").unwrap();
        assert_eq!(s.antecedent().len(), 2);
        assert_eq!(s.succedent(), &Succedent::Conclusion(atom("B")));

        let s = parse_sequent("~A, A |-").unwrap();
        assert!(s.succedent().is_absurd());

        let s = parse_sequent("A, A |- A").unwrap();
        assert_eq!(s, Sequent::proves([atom("A")], atom("A")));

        let s = parse_sequent("|- ~A -> (A -> B)").unwrap();
        assert!(s.antecedent().is_empty());
    }

    #[test]
    fn rejects_empty_judgment() {
        assert_eq!(parse_sequent("|-"), Err(ParseError::EmptyJudgment));
        assert_eq!(parse_sequent("  ⊢ "), Err(ParseError::EmptyJudgment));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p & & q") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("(p -> q") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("p $ q").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_sequent("p, |- q").is_err());
        assert!(parse_sequent("p q |- q").is_err());
        assert!(parse_sequent("p |- q |- r").is_err());
    }
}
