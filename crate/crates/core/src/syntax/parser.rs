//! Concrete grammar.
//!
//! ```text
//! term  ::= '\' var '.' term | '\>' var '.' term | '\<' var '.' term
//!         | 'let' var '*' var '=' term 'in' term
//!         | tens
//! tens  ::= lappc ('*' lappc)*            -- left associative
//! lappc ::= app ('<@' app)*               -- left associative
//! app   ::= atom+                         -- left associative
//! atom  ::= var | '#' name | '(' term ')' | lambda-or-let
//! ```
//!
//! A lambda or let in argument position extends as far right as possible.
//! Comments run from `--` to end of line.

use super::{lapp, letpair, rapp, tensor, Discipline, Name, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(Name),
    Const(Name),
    Lambda,      // '\' or '\>'
    LambdaLeft,  // '\<'
    Dot,
    LParen,
    RParen,
    Star,
    LAppArrow, // '<@'
    Let,
    In,
    Equals,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.src.get(self.pos + 1).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            // skip whitespace and comments
            loop {
                match self.peek() {
                    Some(c) if (c as char).is_whitespace() => {
                        self.bump();
                    }
                    Some(b'-') if self.peek2() == Some(b'-') => {
                        while let Some(c) = self.peek() {
                            if c == b'\n' {
                                break;
                            }
                            self.bump();
                        }
                    }
                    _ => break,
                }
            }
            let (line, col) = (self.line, self.col);
            let c = match self.peek() {
                None => return Ok(out),
                Some(c) => c,
            };
            let tok = match c {
                b'\\' => {
                    self.bump();
                    match self.peek() {
                        Some(b'>') => {
                            self.bump();
                            Tok::Lambda
                        }
                        Some(b'<') => {
                            self.bump();
                            Tok::LambdaLeft
                        }
                        _ => Tok::Lambda,
                    }
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'=' => {
                    self.bump();
                    Tok::Equals
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'@') {
                        self.bump();
                        Tok::LAppArrow
                    } else {
                        return Err(self.error("expected '<@'"));
                    }
                }
                b'#' => {
                    self.bump();
                    let name = self.ident_tail()?;
                    Tok::Const(name)
                }
                c if (c as char).is_ascii_lowercase() => {
                    let name = self.ident_tail()?;
                    match name.as_str() {
                        "let" => Tok::Let,
                        "in" => Tok::In,
                        _ => Tok::Ident(name),
                    }
                }
                c => return Err(self.error(format!("unexpected character {:?}", c as char))),
            };
            out.push((tok, line, col));
        }
    }

    fn ident_tail(&mut self) -> Result<Name, ParseError> {
        let mut s = String::new();
        match self.peek() {
            Some(c) if (c as char).is_ascii_alphabetic() => {
                s.push(c as char);
                self.bump();
            }
            _ => return Err(self.error("expected identifier")),
        }
        while let Some(c) = self.peek() {
            let ch = c as char;
            if ch.is_ascii_alphanumeric() || ch == '_' {
                s.push(ch);
                self.bump();
            } else {
                break;
            }
        }
        Ok(s)
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    d: &'a Discipline,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((0, 0));
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<Name, ParseError> {
        match self.next() {
            Some(Tok::Ident(n)) => Ok(n),
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    fn starts_term(t: &Tok) -> bool {
        matches!(
            t,
            Tok::Ident(_) | Tok::Const(_) | Tok::LParen | Tok::Lambda | Tok::LambdaLeft | Tok::Let
        )
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Lambda) => {
                self.next();
                let x = self.expect_ident("binder name")?;
                self.expect(Tok::Dot, "'.'")?;
                let body = self.term()?;
                Ok(Term::RAbs(x, Box::new(body)))
            }
            Some(Tok::LambdaLeft) => {
                self.next();
                let x = self.expect_ident("binder name")?;
                self.expect(Tok::Dot, "'.'")?;
                let body = self.term()?;
                Ok(Term::LAbs(x, Box::new(body)))
            }
            Some(Tok::Let) => {
                self.next();
                let x = self.expect_ident("let binder")?;
                self.expect(Tok::Star, "'*'")?;
                let y = self.expect_ident("let binder")?;
                self.expect(Tok::Equals, "'='")?;
                let scrut = self.term()?;
                self.expect(Tok::In, "'in'")?;
                let body = self.term()?;
                Ok(letpair(&x, &y, scrut, body))
            }
            _ => self.tens(),
        }
    }

    fn tens(&mut self) -> Result<Term, ParseError> {
        let mut t = self.lappc()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let rhs = if self
                .peek()
                .map(|t| matches!(t, Tok::Lambda | Tok::LambdaLeft | Tok::Let))
                .unwrap_or(false)
            {
                self.term()?
            } else {
                self.lappc()?
            };
            t = tensor(t, rhs);
        }
        Ok(t)
    }

    fn lappc(&mut self) -> Result<Term, ParseError> {
        let mut t = self.app()?;
        while self.peek() == Some(&Tok::LAppArrow) {
            self.next();
            let rhs = if self
                .peek()
                .map(|t| matches!(t, Tok::Lambda | Tok::LambdaLeft | Tok::Let))
                .unwrap_or(false)
            {
                self.term()?
            } else {
                self.app()?
            };
            t = lapp(t, rhs);
        }
        Ok(t)
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some(tok) if Self::starts_term(tok) => {
                    if matches!(tok, Tok::Lambda | Tok::LambdaLeft | Tok::Let) {
                        // trailing lambda/let extends right
                        let arg = self.term()?;
                        t = rapp(t, arg);
                        return Ok(t);
                    }
                    let arg = self.atom()?;
                    t = rapp(t, arg);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Ident(n)) => Ok(Term::Var(n)),
            Some(Tok::Const(c)) => {
                if self.d.constants.contains(&c) {
                    Ok(Term::Const(c))
                } else {
                    Err(self.error_here(format!("unknown constant #{c}")))
                }
            }
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => Err(self.error_here("expected a term")),
        }
    }
}

/// Parses `text` under the grammar. Constants must be declared in the
/// discipline; structural validity is *not* checked here (see
/// [`super::validate`]).
pub fn parse(text: &str, d: &Discipline) -> Result<Term, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0, d };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.error_here("trailing input"));
    }
    Ok(t)
}
