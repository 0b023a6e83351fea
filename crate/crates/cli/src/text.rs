//! The `.alg` presentation format.
//!
//! ```text
//! # the symmetric group S3
//! generators: a b
//! relation: a^2 - 1
//! relation: b^3 - 1
//! relation: a*b*a*b - 1
//! ```
//!
//! A relation is a signed sum of terms; a term is an optional rational
//! coefficient (`3`, `-2/5`), an optional `*`, and a word such as `X*Y^2*X`.
//! `X^0` is the empty word. Whitespace inside an expression is ignored.

use std::fmt::Write as _;

use irrepcount_core::presentation::{FreeElement, FreeWord, Presentation, PresentationError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("`generators:` line appears more than once")]
    RepeatedDeclaration,
    #[error("no `generators:` line before this point")]
    MissingDeclaration,
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub presentation: Presentation,
    pub warnings: Vec<Warning>,
}

pub fn parse_presentation(source: &str, name: Option<String>) -> Result<Parsed, ParseError> {
    let mut generators: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut warnings = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let start = chars.iter().take_while(|c| c.is_whitespace()).count();
        let rest: String = chars[start..].iter().collect();
        if rest.trim().is_empty() {
            continue;
        }
        let err = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
        if let Some(list) = rest.strip_prefix("generators:") {
            if generators.is_some() {
                return Err(err(start + 1, ParseErrorKind::RepeatedDeclaration));
            }
            let offset = start + "generators:".len();
            let mut names: Vec<String> = Vec::new();
            for (col, token) in tokens(list) {
                let column = offset + col + 1;
                if !is_identifier(&token) {
                    return Err(err(column, ParseErrorKind::Syntax(format!("`{token}` is not an identifier"))));
                }
                if names.contains(&token) {
                    return Err(err(column, ParseErrorKind::DuplicateGenerator(token)));
                }
                names.push(token);
            }
            generators = Some(names);
        } else if let Some(expr) = rest.strip_prefix("relation:") {
            let Some(names) = &generators else {
                return Err(err(start + 1, ParseErrorKind::MissingDeclaration));
            };
            let offset = start + "relation:".len();
            let mut parser = ExprParser {
                chars: expr.chars().collect(),
                pos: 0,
                names,
                line,
                offset,
            };
            let element = parser.expression()?;
            if element.is_zero() {
                warnings.push(Warning {
                    line,
                    message: "relation is zero and was dropped".into(),
                });
            } else {
                relations.push(element);
            }
        } else {
            return Err(err(
                start + 1,
                ParseErrorKind::Syntax("expected `generators:` or `relation:`".into()),
            ));
        }
    }
    let Some(names) = generators else {
        return Err(ParseError {
            line: last_line + 1,
            column: 1,
            kind: ParseErrorKind::MissingDeclaration,
        });
    };
    let presentation = Presentation::new(names, relations, name).map_err(|e| match e {
        // both are caught above with positions; keep a fallback anyway
        PresentationError::DuplicateGenerator(g) => ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::DuplicateGenerator(g),
        },
        other => ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::Syntax(other.to_string()),
        },
    })?;
    Ok(Parsed {
        presentation,
        warnings,
    })
}

/// Whitespace- or comma-separated tokens with their 0-based char columns.
fn tokens(s: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current: Option<(usize, String)> = None;
    for (i, c) in s.chars().enumerate() {
        if c.is_whitespace() || c == ',' {
            out.extend(current.take());
        } else {
            current.get_or_insert_with(|| (i, String::new())).1.push(c);
        }
    }
    out.extend(current);
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
    line: usize,
    /// Column of `chars[0]` minus one.
    offset: usize,
}

impl ExprParser<'_> {
    fn error(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.offset + at + 1,
            kind,
        }
    }

    fn syntax(&self, at: usize, msg: &str) -> ParseError {
        self.error(at, ParseErrorKind::Syntax(msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<FreeElement, ParseError> {
        let mut acc = FreeElement::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -BigRational::one()
            }
            Some('+') => {
                self.pos += 1;
                BigRational::one()
            }
            None => return Err(self.syntax(self.pos, "empty relation")),
            _ => BigRational::one(),
        };
        loop {
            let (coef, word) = self.term()?;
            acc = acc.add(&FreeElement::from_terms([(word, sign * coef)]));
            sign = match self.peek() {
                Some('+') => BigRational::one(),
                Some('-') => -BigRational::one(),
                None => return Ok(acc),
                Some(c) => return Err(self.syntax(self.pos, &format!("unexpected `{c}`"))),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(BigRational, FreeWord), ParseError> {
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.rational()?),
            Some(c) if c.is_ascii_alphabetic() => None,
            Some(c) => return Err(self.syntax(self.pos, &format!("expected a term, found `{c}`"))),
            None => return Err(self.syntax(self.pos, "expected a term")),
        };
        let star = if coef.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.word()?;
                Ok((coef.unwrap_or_else(BigRational::one), word))
            }
            _ if star => Err(self.syntax(self.pos, "expected a generator after `*`")),
            _ => Ok((coef.expect("checked above"), FreeWord::empty())),
        }
    }

    fn integer(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let start = self.pos;
        let num = self.integer();
        if self.peek() != Some('/') {
            return Ok(BigRational::from_integer(num.parse::<BigInt>().expect("digits")));
        }
        self.pos += 1;
        let den = self.integer();
        let text = || self.chars[start..self.pos].iter().collect::<String>();
        if den.is_empty() {
            return Err(self.error(start, ParseErrorKind::MalformedRational(text())));
        }
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return Err(self.error(start, ParseErrorKind::MalformedRational(text())));
        }
        Ok(BigRational::new(num.parse().expect("digits"), den))
    }

    fn identifier(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        self.names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| self.error(start, ParseErrorKind::UndeclaredGenerator(name)))
    }

    fn word(&mut self) -> Result<FreeWord, ParseError> {
        let mut letters = Vec::new();
        let mut last = Some(self.identifier()?);
        letters.push(last.unwrap());
        loop {
            match self.peek() {
                Some('*') => {
                    let at = self.pos;
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_ascii_alphabetic() => {
                            let l = self.identifier()?;
                            letters.push(l);
                            last = Some(l);
                        }
                        Some(c) if c.is_ascii_digit() => {
                            return Err(self.syntax(self.pos, "coefficients must come before the word"))
                        }
                        _ => return Err(self.syntax(at, "expected a generator after `*`")),
                    }
                }
                Some('^') => {
                    let at = self.pos;
                    self.pos += 1;
                    let Some(l) = last.take() else {
                        return Err(self.syntax(at, "`^` must follow a generator"));
                    };
                    let digits = self.integer();
                    if digits.is_empty() {
                        return Err(self.syntax(self.pos, "expected a nonnegative integer exponent"));
                    }
                    let e: u32 = digits
                        .parse()
                        .ok()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| self.syntax(at, "exponent too large"))?;
                    letters.pop();
                    letters.extend(std::iter::repeat_n(l, e as usize));
                }
                _ => return Ok(FreeWord::new(letters)),
            }
        }
    }
}

/// Canonical text for `p`; parsing it back gives `p` again (zero relations
/// aside, which the parser drops).
pub fn format_presentation(p: &Presentation) -> String {
    let names = p.generator_names();
    let mut out = String::new();
    if let Some(name) = p.name() {
        let _ = writeln!(out, "# {name}");
    }
    let _ = writeln!(out, "generators: {}", names.join(" "));
    for r in p.relations() {
        let _ = writeln!(out, "relation: {}", r.display_with(&names));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn word(letters: &[usize]) -> FreeWord {
        FreeWord::new(letters.to_vec())
    }

    fn parse(src: &str) -> Result<Presentation, ParseError> {
        parse_presentation(src, None).map(|p| p.presentation)
    }

    #[test]
    fn weyl_relation() {
        let p = parse("generators: X Y\nrelation: X*Y - Y*X - 1").unwrap();
        assert_eq!(p.generator_count(), 2);
        let r = &p.relations()[0];
        assert_eq!(r.len(), 3);
        assert_eq!(r.coefficient(&word(&[0, 1])), rat(1, 1));
        assert_eq!(r.coefficient(&word(&[1, 0])), rat(-1, 1));
        assert_eq!(r.coefficient(&word(&[])), rat(-1, 1));
    }

    #[test]
    fn powers_expand() {
        let p = parse("generators: X\nrelation: X^2 - X").unwrap();
        let r = &p.relations()[0];
        assert_eq!(r.coefficient(&word(&[0, 0])), rat(1, 1));
        assert_eq!(r.coefficient(&word(&[0])), rat(-1, 1));
        let q = parse("generators: X Y\nrelation: 3/2 * X^0*Y^3 + 2X").unwrap();
        let r = &q.relations()[0];
        assert_eq!(r.coefficient(&word(&[1, 1, 1])), rat(3, 2));
        assert_eq!(r.coefficient(&word(&[0])), rat(2, 1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header\n\ngenerators: a, b   # two\nrelation: a^2 - 1 # involution\n";
        let p = parse(src).unwrap();
        assert_eq!(p.generator_names(), ["a", "b"]);
        assert_eq!(p.relations().len(), 1);
    }

    #[test]
    fn zero_relations_warn() {
        let parsed = parse_presentation("generators: X\nrelation: X - X\nrelation: 0", None).unwrap();
        assert!(parsed.presentation.relations().is_empty());
        assert_eq!(parsed.warnings.len(), 2);
        assert_eq!(parsed.warnings[1].line, 3);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("generators: X\nrelation: X*Z").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredGenerator("Z".into()));
        assert_eq!((e.line, e.column), (2, 13));

        let e = parse("generators: X\nrelation: 1/0*X").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedRational("1/0".into()));
        assert_eq!(e.column, 11);

        let e = parse("generators: X\nrelation: 2/ X").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedRational(_)));

        let e = parse("generators: X\nrelation: X + ").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse("generators: X\nrelation: X*2").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse("relation: X").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingDeclaration);

        let e = parse("generators: X X").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator("X".into()));
        assert_eq!(e.column, 15);

        let e = parse("generators: 1X").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse("gens: X").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));

        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::MissingDeclaration);
        assert_eq!(
            parse("generators: X\ngenerators: Y").unwrap_err().kind,
            ParseErrorKind::RepeatedDeclaration
        );
        let e = parse("generators: X\nrelation: X^2^3").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn formatting() {
        let p = parse("generators: X Y\nrelation: -Y*X + X*Y - 1\nrelation: 1/2 X^3").unwrap();
        assert_eq!(
            format_presentation(&p),
            "generators: X Y\nrelation: -1 + X*Y - Y*X\nrelation: 1/2*X^3\n"
        );
    }

    fn presentation() -> impl Strategy<Value = Presentation> {
        let names = proptest::sample::subsequence(vec!["X", "Y", "Z", "a1", "b_2"], 1..=3);
        names.prop_flat_map(|names| {
            let s = names.len();
            let term = (proptest::collection::vec(0..s, 0..4), -5i64..6, 1i64..4);
            let rel = proptest::collection::vec(term, 1..4).prop_map(|ts| {
                FreeElement::from_terms(ts.into_iter().map(|(w, n, d)| (FreeWord::new(w), BigRational::new(n.into(), d.into()))))
            });
            let names: Vec<String> = names.into_iter().map(String::from).collect();
            proptest::collection::vec(rel, 0..4).prop_map(move |rels| {
                let rels = rels.into_iter().filter(|r| !r.is_zero()).collect();
                Presentation::new(names.clone(), rels, None).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_format(p in presentation()) {
            let text = format_presentation(&p);
            prop_assert_eq!(parse(&text).unwrap(), p);
        }
    }
}
