//! Tokenizer shared by the N-Triples, Turtle-subset and ShExC readers.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// `<...>`, contents without the angle brackets.
    IriRef(String),
    /// `prefix:local`; the local part may be empty (`ex:`).
    PName { prefix: String, local: String },
    /// `_:label`
    Blank(String),
    /// Quoted string, escapes resolved.
    Str(String),
    /// `@word` (a language tag or `@prefix`).
    AtWord(String),
    /// A bare `@`, as in `@<Label>`.
    At,
    Integer(String),
    /// Bare identifier such as `IRI`, `AND`, `EXTRA`, `PREFIX`.
    Name(String),
    Dot,
    Semi,
    Comma,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Pipe,
    Star,
    Plus,
    Question,
    Caret,
    CaretCaret,
    Bang,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::IriRef(s) => write!(f, "<{s}>"),
            Tok::PName { prefix, local } => write!(f, "{prefix}:{local}"),
            Tok::Blank(s) => write!(f, "_:{s}"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::AtWord(s) => write!(f, "@{s}"),
            Tok::At => f.write_str("@"),
            Tok::Integer(s) => f.write_str(s),
            Tok::Name(s) => f.write_str(s),
            Tok::Dot => f.write_str("'.'"),
            Tok::Semi => f.write_str("';'"),
            Tok::Comma => f.write_str("','"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Question => f.write_str("'?'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::CaretCaret => f.write_str("'^^'"),
            Tok::Bang => f.write_str("'!'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    /// Tokenizes the whole input; the last token is always `Eof`.
    pub fn tokenize(mut self) -> Result<Vec<(Tok, Pos)>, LexError> {
        let mut out = Vec::new();
        loop {
            let (tok, pos) = self.next_token()?;
            let eof = tok == Tok::Eof;
            out.push((tok, pos));
            if eof {
                return Ok(out);
            }
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn err<T>(&self, pos: Pos, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            pos,
            message: message.into(),
        })
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<(Tok, Pos), LexError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let tok = match c {
            '<' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('>') => break,
                        Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                            return self.err(pos, "invalid character in IRI");
                        }
                        Some(c) => s.push(c),
                        None => return self.err(pos, "unterminated IRI"),
                    }
                }
                Tok::IriRef(s)
            }
            '"' => {
                self.bump();
                Tok::Str(self.string_body(pos)?)
            }
            '@' => {
                self.bump();
                let mut w = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || (c == '-' && !w.is_empty()) {
                        w.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if w.is_empty() {
                    Tok::At
                } else {
                    Tok::AtWord(w)
                }
            }
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Tok::CaretCaret
                } else {
                    Tok::Caret
                }
            }
            '_' => {
                self.bump();
                if self.peek() == Some(':') {
                    self.bump();
                    let label = self.name_chars(true);
                    if label.is_empty() {
                        return self.err(pos, "empty blank node label");
                    }
                    Tok::Blank(label)
                } else {
                    let rest = self.name_chars(false);
                    Tok::Name(format!("_{rest}"))
                }
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                if c == '-' {
                    s.push(c);
                    self.bump();
                }
                while let Some(d) = self.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if s == "-" {
                    return self.err(pos, "expected digits after '-'");
                }
                Tok::Integer(s)
            }
            ':' => {
                self.bump();
                let local = self.name_chars(true);
                Tok::PName {
                    prefix: String::new(),
                    local,
                }
            }
            c if c.is_alphabetic() => {
                let word = self.name_chars(false);
                if self.peek() == Some(':') {
                    self.bump();
                    let local = self.name_chars(true);
                    Tok::PName {
                        prefix: word,
                        local,
                    }
                } else {
                    Tok::Name(word)
                }
            }
            _ => {
                self.bump();
                match c {
                    '.' => Tok::Dot,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '|' => Tok::Pipe,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '?' => Tok::Question,
                    '!' => Tok::Bang,
                    other => return self.err(pos, format!("unexpected character {other:?}")),
                }
            }
        };
        Ok((tok, pos))
    }

    /// Reads name characters. Local names may contain '.', but never end with one.
    fn name_chars(&mut self, local: bool) -> String {
        let mut s = String::new();
        let mut pending_dots = 0usize;
        loop {
            match self.peek() {
                Some(c) if c.is_alphanumeric() || c == '_' || c == '-' => {
                    for _ in 0..pending_dots {
                        s.push('.');
                    }
                    pending_dots = 0;
                    s.push(c);
                    self.bump();
                }
                Some('.') if local && !s.is_empty() => {
                    // A dot is part of the name only if a name character follows.
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    match ahead.peek() {
                        Some(&n) if n.is_alphanumeric() || n == '_' || n == '-' || n == '.' => {
                            pending_dots += 1;
                            self.bump();
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        s
    }

    fn string_body(&mut self, start: Pos) -> Result<String, LexError> {
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(s),
                Some('\\') => {
                    let esc = self.bump();
                    match esc {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('\'') => s.push('\''),
                        Some('n') => s.push('\n'),
                        Some('r') => s.push('\r'),
                        Some('t') => s.push('\t'),
                        Some('u') => s.push(self.hex_escape(4, start)?),
                        Some('U') => s.push(self.hex_escape(8, start)?),
                        _ => return self.err(start, "invalid escape in string"),
                    }
                }
                Some('\n') | None => return self.err(start, "unterminated string"),
                Some(c) => s.push(c),
            }
        }
    }

    fn hex_escape(&mut self, n: usize, start: Pos) -> Result<char, LexError> {
        let mut v = 0u32;
        for _ in 0..n {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| LexError {
                    pos: start,
                    message: "invalid unicode escape".into(),
                })?;
            v = v * 16 + d;
        }
        char::from_u32(v).ok_or_else(|| LexError {
            pos: start,
            message: "invalid unicode scalar".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        Lexer::new(s)
            .tokenize()
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect()
    }

    #[test]
    fn pname_does_not_swallow_final_dot() {
        assert_eq!(
            toks("ex:a ex:has-vars ex:v.x ."),
            vec![
                Tok::PName {
                    prefix: "ex".into(),
                    local: "a".into()
                },
                Tok::PName {
                    prefix: "ex".into(),
                    local: "has-vars".into()
                },
                Tok::PName {
                    prefix: "ex".into(),
                    local: "v.x".into()
                },
                Tok::Dot,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn shape_reference_tokens() {
        assert_eq!(
            toks("!@<S> ^is:p \"x\"^^xsd:date @en # comment"),
            vec![
                Tok::Bang,
                Tok::At,
                Tok::IriRef("S".into()),
                Tok::Caret,
                Tok::PName {
                    prefix: "is".into(),
                    local: "p".into()
                },
                Tok::Str("x".into()),
                Tok::CaretCaret,
                Tok::PName {
                    prefix: "xsd".into(),
                    local: "date".into()
                },
                Tok::AtWord("en".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn unterminated_string_reports_position() {
        let err = Lexer::new("\n  \"abc").tokenize().unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 3 });
    }
}
