//! Readers for N-Triples and the Turtle subset used by the corpus.

use std::collections::{BTreeMap, HashSet};
use std::str::FromStr;

use thiserror::Error;

use super::lexer::{LexError, Lexer, Pos, Tok};
use super::term::{Iri, Literal, Term, Triple, XSD_INTEGER, XSD_STRING};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unknown prefix '{prefix}:' at {line}:{col}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        col: usize,
    },
}

impl DataError {
    pub(crate) fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        DataError::Syntax {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

impl From<LexError> for DataError {
    fn from(e: LexError) -> Self {
        DataError::syntax(e.pos, e.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataFormat {
    NTriples,
    /// `@prefix`, prefixed names, `;` and `,` lists, typed literals, integers.
    TurtleLite,
}

impl FromStr for DataFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nt" => Ok(DataFormat::NTriples),
            "ttl-lite" | "ttl" => Ok(DataFormat::TurtleLite),
            other => Err(format!("unknown data format '{other}' (expected nt or ttl-lite)")),
        }
    }
}

pub type PrefixMap = BTreeMap<String, String>;

/// Deduplicated triples in first-occurrence order, with the prefixes that were declared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleSet {
    pub triples: Vec<Triple>,
    pub prefixes: PrefixMap,
}

impl TripleSet {
    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut seen = HashSet::new();
        let triples = triples
            .into_iter()
            .filter(|t| seen.insert(t.clone()))
            .collect();
        TripleSet {
            triples,
            prefixes: PrefixMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

pub fn parse_data(text: &str, format: DataFormat) -> Result<TripleSet, DataError> {
    let toks = Lexer::new(text).tokenize()?;
    let mut p = DataParser {
        toks,
        at: 0,
        format,
        prefixes: PrefixMap::new(),
        out: Vec::new(),
        seen: HashSet::new(),
    };
    p.document()?;
    Ok(TripleSet {
        triples: p.out,
        prefixes: p.prefixes,
    })
}

/// Expands a prefixed name; shared with the schema reader.
pub(crate) fn expand_pname(
    prefixes: &PrefixMap,
    prefix: &str,
    local: &str,
    pos: Pos,
) -> Result<String, DataError> {
    match prefixes.get(prefix) {
        Some(ns) => Ok(format!("{ns}{local}")),
        None => Err(DataError::UnknownPrefix {
            prefix: prefix.to_string(),
            line: pos.line,
            col: pos.col,
        }),
    }
}

struct DataParser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    format: DataFormat,
    prefixes: PrefixMap,
    out: Vec<Triple>,
    seen: HashSet<Triple>,
}

impl DataParser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), DataError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(DataError::syntax(pos, format!("expected {want}, found {tok}")))
        }
    }

    fn turtle(&self) -> bool {
        self.format == DataFormat::TurtleLite
    }

    fn document(&mut self) -> Result<(), DataError> {
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(()),
                Tok::AtWord(w) if w == "prefix" && self.turtle() => {
                    self.next();
                    self.prefix_decl()?;
                    self.expect(Tok::Dot)?;
                }
                Tok::Name(w) if w.eq_ignore_ascii_case("prefix") && self.turtle() => {
                    self.next();
                    self.prefix_decl()?;
                }
                _ => {
                    self.statement()?;
                    self.expect(Tok::Dot)?;
                }
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), DataError> {
        let (tok, pos) = self.next();
        let Tok::PName { prefix, local } = tok else {
            return Err(DataError::syntax(pos, format!("expected prefix name, found {tok}")));
        };
        if !local.is_empty() {
            return Err(DataError::syntax(pos, "prefix declaration must end with ':'"));
        }
        let (tok, pos) = self.next();
        let Tok::IriRef(ns) = tok else {
            return Err(DataError::syntax(pos, format!("expected IRI, found {tok}")));
        };
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn statement(&mut self) -> Result<(), DataError> {
        let subject = self.subject()?;
        loop {
            let predicate = self.iri("predicate")?;
            loop {
                let object = self.object()?;
                let t = Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                };
                if self.seen.insert(t.clone()) {
                    self.out.push(t);
                }
                if self.turtle() && *self.peek() == Tok::Comma {
                    self.next();
                    continue;
                }
                break;
            }
            if self.turtle() && *self.peek() == Tok::Semi {
                while *self.peek() == Tok::Semi {
                    self.next();
                }
                if *self.peek() == Tok::Dot {
                    return Ok(());
                }
                continue;
            }
            return Ok(());
        }
    }

    fn iri(&mut self, what: &str) -> Result<Iri, DataError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::IriRef(s) => Ok(Iri::new(s)),
            Tok::PName { prefix, local } if self.turtle() => {
                Ok(Iri::new(expand_pname(&self.prefixes, &prefix, &local, pos)?))
            }
            other => Err(DataError::syntax(pos, format!("expected {what} IRI, found {other}"))),
        }
    }

    fn subject(&mut self) -> Result<Term, DataError> {
        if let Tok::Blank(b) = self.peek().clone() {
            self.next();
            return Ok(Term::Blank(b));
        }
        Ok(Term::Iri(self.iri("subject")?))
    }

    fn object(&mut self) -> Result<Term, DataError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Blank(b) => {
                self.next();
                Ok(Term::Blank(b))
            }
            Tok::Str(s) => {
                self.next();
                match self.peek().clone() {
                    Tok::CaretCaret => {
                        self.next();
                        let dt = self.iri("datatype")?;
                        Ok(Term::Literal(Literal {
                            lexical: s,
                            datatype: dt,
                            lang: None,
                        }))
                    }
                    Tok::AtWord(lang) => {
                        self.next();
                        Ok(Term::Literal(Literal::lang_string(s, lang)))
                    }
                    _ => Ok(Term::Literal(Literal::typed(s, XSD_STRING))),
                }
            }
            Tok::Integer(n) if self.turtle() => {
                self.next();
                Ok(Term::Literal(Literal::typed(n, XSD_INTEGER)))
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(Term::Iri(self.iri("object")?)),
            other => Err(DataError::syntax(pos, format!("expected object, found {other}"))),
        }
    }
}

/// Canonical N-Triples dump, one triple per line, sorted.
pub fn to_ntriples(triples: &[Triple]) -> String {
    let mut lines: Vec<String> = triples.iter().map(|t| t.to_string()).collect();
    lines.sort();
    lines.dedup();
    let mut s = lines.join("\n");
    if !s.is_empty() {
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREFIXES: &str = "@prefix ex: <http://example.org/> .\n@prefix is: <http://example.org/issues/> .\n";

    #[test]
    fn single_turtle_triple() {
        let src = format!("{PREFIXES}ex:issue1 is:reportedBy ex:fatima .");
        let ts = parse_data(&src, DataFormat::TurtleLite).unwrap();
        assert_eq!(
            ts.triples,
            vec![Triple::new(
                Term::iri("http://example.org/issue1"),
                "http://example.org/issues/reportedBy",
                Term::iri("http://example.org/fatima")
            )]
        );
    }

    #[test]
    fn empty_input_is_empty_set() {
        assert!(parse_data("", DataFormat::TurtleLite).unwrap().is_empty());
        assert!(parse_data("# only a comment\n", DataFormat::NTriples).unwrap().is_empty());
    }

    #[test]
    fn predicate_and_object_lists() {
        let src = format!(
            "{PREFIXES}ex:a is:p ex:b, ex:c ; is:q 1 ; is:r \"x\"^^<http://t> ; .\nex:a is:p ex:b ."
        );
        let ts = parse_data(&src, DataFormat::TurtleLite).unwrap();
        assert_eq!(ts.len(), 4);
        assert_eq!(
            ts.triples[2].object,
            Term::Literal(Literal::integer("1"))
        );
        assert_eq!(
            ts.triples[3].object,
            Term::Literal(Literal::typed("x", "http://t"))
        );
    }

    #[test]
    fn unknown_prefix_is_reported() {
        let err = parse_data("zz:a <http://p> <http://o> .", DataFormat::TurtleLite).unwrap_err();
        assert_eq!(
            err,
            DataError::UnknownPrefix {
                prefix: "zz".into(),
                line: 1,
                col: 1
            }
        );
    }

    #[test]
    fn ntriples_rejects_turtle_sugar() {
        let err = parse_data("<http://a> <http://p> <http://b> , <http://c> .", DataFormat::NTriples)
            .unwrap_err();
        assert!(matches!(err, DataError::Syntax { line: 1, .. }), "{err}");
        assert!(parse_data("<http://a> <http://p> 1 .", DataFormat::NTriples).is_err());
    }

    #[test]
    fn ntriples_with_blank_and_lang() {
        let ts = parse_data(
            "_:x <http://p> \"hi\"@en .\n_:x <http://p> _:y . # trailing\n",
            DataFormat::NTriples,
        )
        .unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(
            ts.triples[0].object,
            Term::Literal(Literal::lang_string("hi", "en"))
        );
    }

    #[test]
    fn missing_final_dot_is_syntax_error() {
        let err = parse_data("<http://a> <http://p> <http://b>", DataFormat::NTriples).unwrap_err();
        assert!(matches!(err, DataError::Syntax { .. }));
    }
}
