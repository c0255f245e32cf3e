use std::fmt;

use thiserror::Error;

use super::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
    Turnstile,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "identifier `{name}`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Syntax error. `token` is the 1-based index of the offending token and
/// `offset` its character offset in the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at token {token} (offset {offset}): found {found}, expected one of: {}", expected.join(", "))]
pub struct ParseError {
    pub token: usize,
    pub offset: usize,
    pub found: String,
    pub expected: Vec<String>,
}

/// Result of [`parse`]: a bare formula or a sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Formula(Formula),
    Sequent(Sequent),
}

struct Spanned {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '∨' => Tok::Or,
            '⊢' => Tok::Turnstile,
            '|' => {
                if chars.get(i + 1) == Some(&'-') {
                    i += 1;
                    Tok::Turnstile
                } else {
                    Tok::Or
                }
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_alphabetic() => {
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    offset: start,
                });
                continue;
            }
            other => {
                return Err(ParseError {
                    token: out.len() + 1,
                    offset: start,
                    found: format!("character `{other}`"),
                    expected: vec!["a token".into()],
                })
            }
        };
        i += 1;
        out.push(Spanned { tok, offset: start });
    }
    out.push(Spanned {
        tok: Tok::End,
        offset: chars.len(),
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const OPERAND: &[&str] = &["identifier", "`~`", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            token: self.pos + 1,
            offset: here.offset,
            found: here.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Or {
            self.pos += 1;
            let right = self.conj()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.neg()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            let right = self.neg()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Not {
            self.pos += 1;
            return Ok(Formula::neg(self.neg()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Formula::Var(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`&`", "`|`", "`)`"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses either a formula or a sequent, depending on whether `|-` occurs.
pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let first = p.formula()?;
    match p.peek() {
        Tok::End => Ok(Parsed::Formula(first)),
        Tok::Turnstile => {
            p.pos += 1;
            let second = p.formula()?;
            if *p.peek() != Tok::End {
                return Err(p.error(&["`&`", "`|`", "end of input"]));
            }
            Ok(Parsed::Sequent(Sequent::new(first, second)))
        }
        _ => Err(p.error(&["`&`", "`|`", "`|-`", "end of input"])),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["`&`", "`|`", "end of input"]));
    }
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    match parse(text)? {
        Parsed::Sequent(s) => Ok(s),
        Parsed::Formula(_) => {
            let toks = lex(text)?;
            let last = toks.len() - 1;
            Err(ParseError {
                token: toks.len(),
                offset: toks[last].offset,
                found: Tok::End.to_string(),
                expected: vec!["`|-`".into()],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("p & q | r").unwrap(),
            Formula::or(Formula::and(v("p"), v("q")), v("r"))
        );
        assert_eq!(
            parse_formula("p | q | r").unwrap(),
            Formula::or(Formula::or(v("p"), v("q")), v("r"))
        );
        assert_eq!(
            parse_formula("~p & q").unwrap(),
            Formula::and(Formula::neg(v("p")), v("q"))
        );
    }

    #[test]
    fn disjunctive_syllogism_sequent() {
        let parsed = parse("~p & (p | q) |- q").unwrap();
        let expected = Sequent::new(
            Formula::and(Formula::neg(v("p")), Formula::or(v("p"), v("q"))),
            v("q"),
        );
        assert_eq!(parsed, Parsed::Sequent(expected));
    }

    #[test]
    fn unicode_aliases() {
        let a = parse_sequent("¬p ∧ (p ∨ q) ⊢ q").unwrap();
        let b = parse_sequent("~p & (p | q) |- q").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identifiers_with_digits_and_underscores() {
        assert_eq!(parse_formula("p1_x").unwrap(), v("p1_x"));
        assert!(parse_formula("1p").is_err());
    }

    #[test]
    fn error_reports_token_index() {
        let err = parse("p & & q").unwrap_err();
        assert_eq!(err.token, 3);
        assert_eq!(err.offset, 4);
        assert_eq!(err.expected, vec!["identifier", "`~`", "`(`"]);
    }

    #[test]
    fn other_errors() {
        assert!(parse("").is_err());
        assert!(parse("(p & q").is_err());
        assert!(parse("p |- q |- r").is_err());
        assert!(parse("p $ q").is_err());
        assert_eq!(parse_sequent("p & q").unwrap_err().token, 4);
    }
}
