use super::{Formula, Sequent};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token {text:?} at position {pos}")]
    UnknownToken { pos: usize, text: String },
    #[error("unbalanced parenthesis at position {pos}")]
    Unbalanced { pos: usize },
    #[error("syntax error at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("expected a formula, found a sequent")]
    NotAFormula,
}

/// Result of [`parse`]: either a bare formula or a sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Formula(Formula),
    Sequent(Sequent),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    False,
    True,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Comma,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(a) => format!("atom '{a}'"),
            Tok::False => "'false'".into(),
            Tok::True => "'true'".into(),
            Tok::Not => "'~'".into(),
            Tok::Box => "'[]'".into(),
            Tok::Dia => "'<>'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Arrow => "'=>'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, s: &str| {
        let pat: Vec<char> = s.chars().collect();
        chars.len() >= i + pat.len() && chars[i..i + pat.len()] == pat[..]
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit() || chars[i] == '_')
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "false" => Tok::False,
                "true" => Tok::True,
                _ => Tok::Atom(word),
            };
            out.push((start, tok));
            continue;
        }
        let table: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("<>", Tok::Dia),
            ("[]", Tok::Box),
            ("->", Tok::Imp),
            ("=>", Tok::Arrow),
            ("~", Tok::Not),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            (",", Tok::Comma),
            ("¬", Tok::Not),
            ("∧", Tok::And),
            ("∨", Tok::Or),
            ("→", Tok::Imp),
            ("↔", Tok::Iff),
            ("□", Tok::Box),
            ("◇", Tok::Dia),
            ("⊥", Tok::False),
            ("⊤", Tok::True),
            ("⇒", Tok::Arrow),
            ("⊢", Tok::Arrow),
        ];
        match table.iter().find(|(s, _)| starts(i, s)) {
            Some((s, tok)) => {
                out.push((i, tok.clone()));
                i += s.chars().count();
            }
            None => {
                return Err(ParseError::UnknownToken {
                    pos: i,
                    text: c.to_string(),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    open: Vec<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(Tok::RParen) if self.open.is_empty() => ParseError::Unbalanced { pos: self.pos() },
            None if !self.open.is_empty() => ParseError::Unbalanced {
                pos: *self.open.last().unwrap(),
            },
            Some(t) => ParseError::Syntax {
                pos: self.pos(),
                expected,
                found: t.describe(),
            },
            None => ParseError::Syntax {
                pos: self.pos(),
                expected,
                found: "end of input".into(),
            },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        match self.peek() {
            Some(Tok::Imp) => {
                self.idx += 1;
                let rhs = self.implication()?;
                Ok(Formula::imp(lhs, rhs))
            }
            Some(Tok::Iff) => {
                self.idx += 1;
                let rhs = self.implication()?;
                Ok(Formula::iff(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.idx += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.prefix()?;
        while self.peek() == Some(&Tok::And) {
            self.idx += 1;
            let rhs = self.prefix()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.err("a formula")),
        };
        match tok {
            Tok::Not => {
                self.idx += 1;
                Ok(Formula::neg(self.prefix()?))
            }
            Tok::Box => {
                self.idx += 1;
                Ok(Formula::boxed(self.prefix()?))
            }
            Tok::Dia => {
                self.idx += 1;
                Ok(Formula::dia(self.prefix()?))
            }
            Tok::Atom(a) => {
                self.idx += 1;
                Ok(Formula::Atom(a))
            }
            Tok::False => {
                self.idx += 1;
                Ok(Formula::Bottom)
            }
            Tok::True => {
                self.idx += 1;
                Ok(Formula::top())
            }
            Tok::LParen => {
                self.open.push(self.pos());
                self.idx += 1;
                let inner = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("')'"));
                }
                self.open.pop();
                self.idx += 1;
                Ok(inner)
            }
            _ => Err(self.err("a formula")),
        }
    }
}

/// Parses a formula or a sequent (`A1, ..., An => B`, `A1, ..., An =>`, `=> B`).
pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.chars().count(),
        open: Vec::new(),
    };
    let mut antecedent = Vec::new();
    if p.peek() != Some(&Tok::Arrow) {
        antecedent.push(p.implication()?);
        while p.peek() == Some(&Tok::Comma) {
            p.idx += 1;
            antecedent.push(p.implication()?);
        }
    }
    match p.peek() {
        None if antecedent.len() == 1 => Ok(Parsed::Formula(antecedent.pop().unwrap())),
        None => Err(p.err("'=>'")),
        Some(Tok::Arrow) => {
            p.idx += 1;
            let succedent = if p.peek().is_none() {
                None
            } else {
                Some(p.implication()?)
            };
            if p.peek().is_some() {
                return Err(p.err("end of input"));
            }
            Ok(Parsed::Sequent(Sequent::new(antecedent, succedent)))
        }
        Some(_) if antecedent.len() == 1 => Err(p.err("an operator or end of input")),
        Some(_) => Err(p.err("',' or '=>'")),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    match parse(text)? {
        Parsed::Formula(f) => Ok(f),
        Parsed::Sequent(_) => Err(ParseError::NotAFormula),
    }
}

/// Parses a sequent; a bare formula `A` is read as `=> A`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    match parse(text)? {
        Parsed::Formula(f) => Ok(Sequent::theorem(f)),
        Parsed::Sequent(s) => Ok(s),
    }
}
