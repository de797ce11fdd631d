//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term  := join
//! join  := meet { "\/" meet }
//! meet  := prod { "/\" prod }
//! prod  := atom { atom }
//! atom  := "e" | gen [ "^" int ] | "(" term ")" [ "^" int ]
//!        | "abs(" term ")" | "conj(" term "," term ")" | "comm(" term "," term ")"
//! ```

use super::{Alphabet, Generator, LTerm, TermError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Join,
    Meet,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, TermError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                out.push((Tok::Join, start));
                i += 2;
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                out.push((Tok::Meet, start));
                i += 2;
            }
            b'^' => {
                out.push((Tok::Caret, start));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, start));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, start));
                i += 1;
            }
            b',' => {
                out.push((Tok::Comma, start));
                i += 1;
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let n = lit.parse::<i64>().map_err(|_| TermError::Syntax {
                    pos: start,
                    message: format!("bad integer {lit:?}"),
                })?;
                out.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(TermError::Syntax {
                    pos: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermError> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<LTerm, TermError> {
        let mut parts = vec![self.meet()?];
        while self.peek() == Some(&Tok::Join) {
            self.at += 1;
            parts.push(self.meet()?);
        }
        Ok(LTerm::join(parts))
    }

    fn meet(&mut self) -> Result<LTerm, TermError> {
        let mut parts = vec![self.prod()?];
        while self.peek() == Some(&Tok::Meet) {
            self.at += 1;
            parts.push(self.prod()?);
        }
        Ok(LTerm::meet(parts))
    }

    fn prod(&mut self) -> Result<LTerm, TermError> {
        let mut parts = vec![self.atom()?];
        while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen)) {
            parts.push(self.atom()?);
        }
        Ok(LTerm::product(parts))
    }

    fn exponent(&mut self) -> Result<Option<i64>, TermError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.at += 1;
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(Some(n))
            }
            _ => self.error("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<LTerm, TermError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(match self.exponent()? {
                    Some(k) => LTerm::pow(inner, k),
                    None => inner,
                })
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let call = self.peek() == Some(&Tok::LParen);
                match name.as_str() {
                    "e" => Ok(LTerm::Identity),
                    "abs" if call => {
                        self.at += 1;
                        let t = self.term()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(LTerm::abs(t))
                    }
                    "conj" | "comm" if call => {
                        self.at += 1;
                        let f = self.term()?;
                        self.expect(Tok::Comma, "','")?;
                        let g = self.term()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(if name == "conj" {
                            LTerm::conj(f, g)
                        } else {
                            LTerm::comm(f, g)
                        })
                    }
                    _ => {
                        let g = Generator::new(name.clone())
                            .ok()
                            .filter(|g| self.alphabet.contains(g))
                            .ok_or(TermError::UnknownGenerator { name, pos })?;
                        let atom = LTerm::Gen(g);
                        Ok(match self.exponent()? {
                            Some(k) => LTerm::pow(atom, k),
                            None => atom,
                        })
                    }
                }
            }
            Some(_) => self.error("expected a term"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` into a term whose generators all belong to `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<LTerm, TermError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        alphabet,
    };
    let t = p.term()?;
    if p.at != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(t)
}
