use std::fmt;
use std::sync::Arc;

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

/// An absolute (or, for shape labels, relative) IRI. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(s: impl AsRef<str>) -> Self {
        Iri(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Iri {
    fn from(s: &str) -> Self {
        Iri::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Iri,
    pub lang: Option<String>,
}

impl Literal {
    pub fn typed(lexical: impl Into<String>, datatype: impl AsRef<str>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new(datatype),
            lang: None,
        }
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Self::typed(lexical, XSD_STRING)
    }

    pub fn integer(lexical: impl Into<String>) -> Self {
        Self::typed(lexical, XSD_INTEGER)
    }

    pub fn lang_string(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new(RDF_LANG_STRING),
            lang: Some(lang.into()),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quoted(f, &self.lexical)?;
        match &self.lang {
            Some(lang) => write!(f, "@{lang}"),
            None => write!(f, "^^<{}>", self.datatype),
        }
    }
}

fn write_quoted(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

/// A concrete RDF term as it appears in a document.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(s: impl AsRef<str>) -> Self {
        Term::Iri(Iri::new(s))
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// The abstract value of the node: blank labels collapse to `_b`.
    pub fn value(&self) -> Value {
        match self {
            Term::Iri(i) => Value::Iri(i.clone()),
            Term::Blank(_) => Value::Blank,
            Term::Literal(l) => Value::Literal(l.clone()),
        }
    }
}

/// N-Triples form; also used as the canonical node key in witnesses.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => write!(f, "<{i}>"),
            Term::Blank(b) => write!(f, "_:{b}"),
            Term::Literal(l) => write!(f, "{l}"),
        }
    }
}

/// Codomain of the value function on graph nodes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Iri(Iri),
    Literal(Literal),
    /// The `_b` constant standing for any blank node.
    Blank,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Iri(i) => write!(f, "<{i}>"),
            Value::Literal(l) => write!(f, "{l}"),
            Value::Blank => f.write_str("_b"),
        }
    }
}

/// A property, possibly decorated with the inverse hat.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedProperty {
    pub iri: Iri,
    pub inverse: bool,
}

impl DirectedProperty {
    pub fn forward(iri: impl AsRef<str>) -> Self {
        DirectedProperty {
            iri: Iri::new(iri),
            inverse: false,
        }
    }

    pub fn inverse(iri: impl AsRef<str>) -> Self {
        DirectedProperty {
            iri: Iri::new(iri),
            inverse: true,
        }
    }

    pub fn flipped(&self) -> Self {
        DirectedProperty {
            iri: self.iri.clone(),
            inverse: !self.inverse,
        }
    }

    /// Parses the display form (`iri` or `^iri`).
    pub fn parse_display(s: &str) -> Self {
        match s.strip_prefix('^') {
            Some(rest) => Self::inverse(rest),
            None => Self::forward(s),
        }
    }
}

impl fmt::Display for DirectedProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            f.write_str("^")?;
        }
        write!(f, "{}", self.iri)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: impl AsRef<str>, object: Term) -> Self {
        Triple {
            subject,
            predicate: Iri::new(predicate),
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_display_escapes() {
        let l = Literal::string("a \"b\"\n");
        assert_eq!(
            l.to_string(),
            "\"a \\\"b\\\"\\n\"^^<http://www.w3.org/2001/XMLSchema#string>"
        );
        assert_eq!(Literal::lang_string("x", "en").to_string(), "\"x\"@en");
    }

    #[test]
    fn blank_value_is_constant() {
        assert_eq!(Term::blank("a").value(), Term::blank("b").value());
        assert_ne!(Term::blank("a"), Term::blank("b"));
    }

    #[test]
    fn directed_property_display_round_trips() {
        let p = DirectedProperty::inverse("http://x/p");
        assert_eq!(p.to_string(), "^http://x/p");
        assert_eq!(DirectedProperty::parse_display(&p.to_string()), p);
        assert_eq!(p.flipped().flipped(), p);
    }
}
