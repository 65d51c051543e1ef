//! Text syntax for presentations:
//!
//! ```text
//! gens: a, b
//! rels: a^3; b^2; [a, b]
//! ```
//!
//! A word is `term ('*' term)*` with `term := ident ('^' int)? | '[' word ',' word ']' | '1'`.
//! `[u, v]` stands for `u⁻¹ v⁻¹ u v`. Relators are separated by `;` or line
//! breaks. Without a `gens:` section the generators are taken in order of
//! first appearance.

use std::collections::HashSet;

use super::{FreeWord, Presentation};
#[cfg(test)]
use super::Letter;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    pub warnings: Vec<String>,
}

const MAX_EXPONENT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Caret,
    Star,
    Minus,
    Plus,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Newline,
    Colon,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let simple = match c {
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '-' => Some(Tok::Minus),
            '+' => Some(Tok::Plus),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '\n' => Some(Tok::Newline),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, pos));
            i += 1;
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| err(pos, format!("integer '{s}' is too large")))?;
            out.push((Tok::Int(n), pos));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(err(pos, format!("unexpected character '{c}'")));
        }
        column += i - start;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Term {
    Gen { name: String, pos: Pos, exp: i64 },
    Comm(Vec<Term>, Vec<Term>),
    One,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = lex(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = Pos {
            line: lines.len(),
            column: lines.last().map_or(0, |l| l.chars().count()) + 1,
        };
        Ok(Parser { toks, at: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Int(n)) => format!("'{n}'"),
            Some(Tok::Newline) => "line break".into(),
            Some(t) => {
                let c = match t {
                    Tok::Caret => '^',
                    Tok::Star => '*',
                    Tok::Minus => '-',
                    Tok::Plus => '+',
                    Tok::LBracket => '[',
                    Tok::RBracket => ']',
                    Tok::Comma => ',',
                    Tok::Semi => ';',
                    _ => ':',
                };
                format!("'{c}'")
            }
        }
    }

    fn at_section(&self) -> bool {
        matches!((self.peek(), self.peek2()), (Some(Tok::Ident(_)), Some(Tok::Colon)))
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Tok::Semi | Tok::Newline)) {
            self.at += 1;
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Some(Tok::Newline)) {
            self.at += 1;
        }
    }

    fn word(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while matches!(self.peek(), Some(Tok::Star)) {
            self.at += 1;
            self.skip_newlines();
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Ident(name), _)) => {
                let exp = if matches!(self.peek(), Some(Tok::Caret)) {
                    self.at += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok(Term::Gen { name, pos, exp })
            }
            Some((Tok::Int(1), _)) => Ok(Term::One),
            Some((Tok::LBracket, _)) => {
                self.skip_newlines();
                let u = self.word()?;
                self.skip_newlines();
                if !matches!(self.peek(), Some(Tok::Comma)) {
                    return Err(err(self.pos(), format!("expected ',' in commutator, found {}", self.describe())));
                }
                self.at += 1;
                self.skip_newlines();
                let v = self.word()?;
                self.skip_newlines();
                if !matches!(self.peek(), Some(Tok::RBracket)) {
                    return Err(err(self.pos(), format!("expected ']' closing commutator, found {}", self.describe())));
                }
                self.at += 1;
                Ok(Term::Comm(u, v))
            }
            _ => {
                self.at -= 1;
                Err(err(pos, format!("expected a generator, '1' or '[', found {}", self.describe())))
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                if n > MAX_EXPONENT {
                    return Err(err(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")));
                }
                Ok(sign * n as i64)
            }
            _ => {
                self.at -= 1;
                Err(err(pos, format!("expected an integer exponent, found {}", self.describe())))
            }
        }
    }
}

fn collect_names(terms: &[Term], out: &mut Vec<String>, seen: &mut HashSet<String>) {
    for t in terms {
        match t {
            Term::Gen { name, .. } => {
                if seen.insert(name.clone()) {
                    out.push(name.clone());
                }
            }
            Term::Comm(u, v) => {
                collect_names(u, out, seen);
                collect_names(v, out, seen);
            }
            Term::One => {}
        }
    }
}

fn evaluate(terms: &[Term], generators: &HashSet<&str>) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for t in terms {
        let w = match t {
            Term::Gen { name, pos, exp } => {
                if !generators.contains(name.as_str()) {
                    return Err(err(*pos, format!("unknown generator '{name}'")));
                }
                FreeWord::power(name, *exp)
            }
            Term::Comm(u, v) => {
                let (u, v) = (evaluate(u, generators)?, evaluate(v, generators)?);
                u.inverse().concat(&v.inverse()).concat(&u).concat(&v)
            }
            Term::One => FreeWord::empty(),
        };
        letters.extend(w.letters().iter().cloned());
    }
    Ok(FreeWord::new(letters))
}

pub fn parse_presentation(text: &str) -> Result<ParsedPresentation> {
    let mut p = Parser::new(text)?;
    let mut gens: Option<Vec<(String, Pos)>> = None;
    let mut rels: Vec<(Vec<Term>, Pos)> = Vec::new();
    loop {
        p.skip_separators();
        let Some(tok) = p.peek().cloned() else { break };
        let pos = p.pos();
        let section = match (tok, p.peek2()) {
            (Tok::Ident(s), Some(Tok::Colon)) => s,
            _ => return Err(err(pos, format!("expected 'gens:' or 'rels:', found {}", p.describe()))),
        };
        p.at += 2;
        match section.as_str() {
            "gens" | "generators" => {
                if gens.is_some() {
                    return Err(err(pos, "generators declared twice"));
                }
                let mut list = Vec::new();
                p.skip_newlines();
                if matches!(p.peek(), Some(Tok::Ident(_))) && !p.at_section() {
                    loop {
                        let gpos = p.pos();
                        match p.bump() {
                            Some((Tok::Ident(name), _)) => {
                                if list.iter().any(|(n, _)| *n == name) {
                                    return Err(err(gpos, format!("generator '{name}' declared twice")));
                                }
                                list.push((name, gpos));
                            }
                            _ => {
                                p.at -= 1;
                                return Err(err(gpos, format!("expected a generator name, found {}", p.describe())));
                            }
                        }
                        if matches!(p.peek(), Some(Tok::Comma)) {
                            p.at += 1;
                            p.skip_newlines();
                        } else {
                            break;
                        }
                    }
                }
                if !matches!(p.peek(), None | Some(Tok::Semi | Tok::Newline)) {
                    return Err(err(p.pos(), format!("expected ',' or end of generator list, found {}", p.describe())));
                }
                gens = Some(list);
            }
            "rels" | "relators" => loop {
                p.skip_separators();
                if p.peek().is_none() || p.at_section() {
                    break;
                }
                let rpos = p.pos();
                let w = p.word()?;
                if !matches!(p.peek(), None | Some(Tok::Semi | Tok::Newline)) {
                    return Err(err(p.pos(), format!("expected '*', ';' or line break, found {}", p.describe())));
                }
                rels.push((w, rpos));
            },
            other => return Err(err(pos, format!("unknown section '{other}'"))),
        }
    }

    let generators: Vec<String> = match gens {
        Some(list) => list.into_iter().map(|(n, _)| n).collect(),
        None => {
            let (mut out, mut seen) = (Vec::new(), HashSet::new());
            for (w, _) in &rels {
                collect_names(w, &mut out, &mut seen);
            }
            out
        }
    };
    let known: HashSet<&str> = generators.iter().map(String::as_str).collect();
    let mut relators = Vec::new();
    let mut warnings = Vec::new();
    for (w, pos) in &rels {
        let r = evaluate(w, &known)?;
        if r.is_empty() {
            warnings.push(format!(
                "line {}, column {}: relator reduces to the empty word and was dropped",
                pos.line, pos.column
            ));
        } else {
            relators.push(r);
        }
    }
    Ok(ParsedPresentation {
        presentation: Presentation::new(generators, relators)?,
        warnings,
    })
}

/// Parses a single word over the given generators.
pub fn parse_relator(text: &str, generators: &[String]) -> Result<FreeWord> {
    let mut p = Parser::new(text)?;
    p.skip_newlines();
    let w = p.word()?;
    p.skip_newlines();
    if p.peek().is_some() {
        return Err(err(p.pos(), format!("unexpected {} after word", p.describe())));
    }
    let known: HashSet<&str> = generators.iter().map(String::as_str).collect();
    evaluate(&w, &known)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(g: &str, e: i8) -> Letter {
        Letter::new(g, e)
    }

    #[test]
    fn one_generator_one_relator() {
        let p = parse_presentation("gens: a; rels: a^3").unwrap();
        assert_eq!(p.presentation.generators(), ["a"]);
        assert_eq!(p.presentation.relators(), [FreeWord::power("a", 3)]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn commutator_sugar() {
        let p = parse_presentation("rels: [a,b]").unwrap();
        assert_eq!(p.presentation.generators(), ["a", "b"]);
        let expected = FreeWord::new([letter("a", -1), letter("b", -1), letter("a", 1), letter("b", 1)]);
        assert_eq!(p.presentation.relators(), [expected]);
    }

    #[test]
    fn trivial_relator_is_dropped_with_warning() {
        let p = parse_presentation("gens: a\nrels: a*a^-1").unwrap();
        assert!(p.presentation.relators().is_empty());
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].starts_with("line 2, column 7"));
    }

    #[test]
    fn multiline_relators() {
        let text = "gens: x, y\nrels: x^2\n  y^-3 * x\n  [x*y, y]";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.presentation.relators().len(), 3);
        assert_eq!(p.presentation.relators()[1].to_string(), "y^-3*x");
    }

    #[test]
    fn unknown_generator_is_located() {
        match parse_presentation("gens: a\nrels: a^2; b").unwrap_err() {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 12));
                assert!(message.contains("'b'"));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn malformed_syntax_is_located() {
        match parse_presentation("gens: a, b\nrels: [a, b").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 12)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_presentation("gens: a\nrels: a^x").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 9)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_presentation("gens: a b"), Err(Error::Parse { line: 1, column: 9, .. })));
        assert!(matches!(parse_presentation("oops"), Err(Error::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn single_word() {
        let gens = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_relator("a^2*b*b^-1", &gens).unwrap(), FreeWord::power("a", 2));
        assert!(parse_relator("c", &gens).is_err());
        assert!(parse_relator("a;b", &gens).is_err());
    }
}
