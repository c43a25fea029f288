//! Recursive-descent parser for Turtle 1.1 and N-Triples.
//!
//! N-Triples is handled by the same machinery with the Turtle-only
//! productions switched off. Positions are 1-based line and column counted
//! in characters. RDF-star (`<<`, `{|`) is recognised and rejected as an
//! unsupported construct.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use super::{vocab, BlankId, Literal, Subject, Syntax, Term, Triple, TripleSet};
use crate::iri::{self, Iri};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Unsupported,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax => f.write_str("syntax error"),
            ParseErrorKind::Unsupported => f.write_str("unsupported construct"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Result<T> = std::result::Result<T, ParseError>;

pub fn parse_document(text: &str, syntax: Syntax) -> Result<TripleSet> {
    parse_document_with_base(text, syntax, None)
}

/// Parses `text`, resolving relative IRIs against `base` until the
/// document declares its own.
pub fn parse_document_with_base(
    text: &str,
    syntax: Syntax,
    base: Option<&Iri>,
) -> Result<TripleSet> {
    let mut p = Parser::new(text, syntax, base.cloned());
    p.document()?;
    Ok(TripleSet {
        triples: p.triples,
        base: p.base,
        prefixes: p.prefixes,
    })
}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: usize,
    col: usize,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    syntax: Syntax,
    base: Option<Iri>,
    prefixes: BTreeMap<String, Iri>,
    triples: BTreeSet<Triple>,
    blank_labels: HashMap<String, String>,
    used_labels: HashSet<String>,
    next_blank: usize,
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c,
            '\u{C0}'..='\u{D6}'
            | '\u{D8}'..='\u{F6}'
            | '\u{F8}'..='\u{2FF}'
            | '\u{370}'..='\u{37D}'
            | '\u{37F}'..='\u{1FFF}'
            | '\u{200C}'..='\u{200D}'
            | '\u{2070}'..='\u{218F}'
            | '\u{2C00}'..='\u{2FEF}'
            | '\u{3001}'..='\u{D7FF}'
            | '\u{F900}'..='\u{FDCF}'
            | '\u{FDF0}'..='\u{FFFD}'
            | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || matches!(c, '\u{B7}' | '\u{300}'..='\u{36F}' | '\u{203F}'..='\u{2040}')
}

fn is_local_escape(c: char) -> bool {
    matches!(
        c,
        '_' | '~'
            | '.'
            | '-'
            | '!'
            | '$'
            | '&'
            | '\''
            | '('
            | ')'
            | '*'
            | '+'
            | ','
            | ';'
            | '='
            | '/'
            | '?'
            | '#'
            | '@'
            | '%'
    )
}

fn describe(c: Option<char>) -> String {
    match c {
        None => "end of input".to_string(),
        Some(c) if c.is_control() || c.is_whitespace() => format!("{:?}", c),
        Some(c) => format!("'{c}'"),
    }
}

impl Parser {
    fn new(text: &str, syntax: Syntax, base: Option<Iri>) -> Self {
        let mut chars: Vec<char> = text.chars().collect();
        if chars.first() == Some(&'\u{FEFF}') {
            chars.remove(0);
        }
        Parser {
            chars,
            pos: 0,
            line: 1,
            col: 1,
            syntax,
            base,
            prefixes: BTreeMap::new(),
            triples: BTreeSet::new(),
            blank_labels: HashMap::new(),
            used_labels: HashSet::new(),
            next_blank: 0,
        }
    }

    fn turtle(&self) -> bool {
        self.syntax == Syntax::Turtle
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            col: self.col,
        }
    }

    fn reset(&mut self, m: Mark) {
        self.pos = m.pos;
        self.line = m.line;
        self.col = m.col;
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn error_at(&self, m: Mark, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            line: m.line,
            column: m.col,
            message: message.into(),
        }
    }

    fn syntax_error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.mark(), ParseErrorKind::Syntax, message)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.syntax_error(format!(
            "expected {expected}, found {}",
            describe(self.peek())
        ))
    }

    fn unsupported(&self, what: &str) -> ParseError {
        self.error_at(self.mark(), ParseErrorKind::Unsupported, what.to_string())
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.bump();
                }
                '#' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: char, what: &str) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn check_rdf_star(&self) -> Result<()> {
        if self.starts_with("<<") {
            return Err(self.unsupported("RDF-star quoted triples are not supported"));
        }
        if self.starts_with("{|") {
            return Err(self.unsupported("RDF-star annotations are not supported"));
        }
        Ok(())
    }

    fn emit(&mut self, subject: Subject, predicate: Iri, object: Term) {
        self.triples.insert(Triple {
            subject,
            predicate,
            object,
        });
    }

    fn fresh_blank(&mut self) -> BlankId {
        loop {
            self.next_blank += 1;
            let label = format!("b{}", self.next_blank);
            if !self.used_labels.contains(&label) {
                self.used_labels.insert(label.clone());
                return BlankId(label);
            }
        }
    }

    fn labelled_blank(&mut self, label: String) -> BlankId {
        if let Some(internal) = self.blank_labels.get(&label) {
            return BlankId(internal.clone());
        }
        let internal = if self.used_labels.contains(&label) {
            self.fresh_blank().0
        } else {
            self.used_labels.insert(label.clone());
            label.clone()
        };
        self.blank_labels.insert(label, internal.clone());
        BlankId(internal)
    }

    fn document(&mut self) -> Result<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> Result<()> {
        if self.peek() == Some('@') {
            if !self.turtle() {
                return Err(self.syntax_error("directives are not allowed in N-Triples"));
            }
            return self.at_directive();
        }
        if self.turtle() && self.sparql_directive()? {
            return Ok(());
        }
        self.triples_statement()?;
        self.expect('.', "'.' at end of statement")
    }

    fn at_directive(&mut self) -> Result<()> {
        let start = self.mark();
        self.bump();
        let mut word = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            word.push(c);
            self.bump();
        }
        match word.as_str() {
            "prefix" => {
                self.prefix_body()?;
                self.expect('.', "'.' after @prefix declaration")
            }
            "base" => {
                self.base_body()?;
                self.expect('.', "'.' after @base declaration")
            }
            _ => Err(self.error_at(
                start,
                ParseErrorKind::Syntax,
                format!("unknown directive '@{word}'"),
            )),
        }
    }

    fn sparql_directive(&mut self) -> Result<bool> {
        let start = self.mark();
        let mut word = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            word.push(c);
            self.bump();
        }
        let is_ws = matches!(self.peek(), Some(' ' | '\t' | '\r' | '\n' | '#') | None);
        if is_ws && word.eq_ignore_ascii_case("prefix") {
            self.prefix_body()?;
            Ok(true)
        } else if is_ws && word.eq_ignore_ascii_case("base") {
            self.base_body()?;
            Ok(true)
        } else {
            self.reset(start);
            Ok(false)
        }
    }

    fn prefix_body(&mut self) -> Result<()> {
        self.skip_ws();
        let start = self.mark();
        let prefix = self.scan_prefix()?;
        if self.peek() != Some(':') {
            return Err(self.unexpected("':' after prefix name"));
        }
        self.bump();
        if !prefix.is_empty() {
            self.validate_prefix(&prefix, start)?;
        }
        self.skip_ws();
        let ns = self.iri_ref()?;
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn base_body(&mut self) -> Result<()> {
        self.skip_ws();
        let base = self.iri_ref()?;
        self.base = Some(base);
        Ok(())
    }

    fn triples_statement(&mut self) -> Result<()> {
        self.skip_ws();
        if self.turtle() && self.peek() == Some('[') {
            let (node, empty) = self.blank_node_property_list()?;
            self.skip_ws();
            if empty || self.peek() != Some('.') {
                self.predicate_object_list(&Subject::Blank(node))?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Subject> {
        self.skip_ws();
        self.check_rdf_star()?;
        match self.peek() {
            Some('<') => Ok(Subject::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Subject::Blank(self.blank_label()?)),
            Some('(') if self.turtle() => match self.collection()? {
                Term::Iri(i) => Ok(Subject::Iri(i)),
                Term::Blank(b) => Ok(Subject::Blank(b)),
                Term::Literal(_) => unreachable!("collections are never literals"),
            },
            Some('"' | '\'') => Err(self.syntax_error("a literal cannot be a subject")),
            Some(c) if self.turtle() && (is_pn_chars_base(c) || c == ':') => {
                Ok(Subject::Iri(self.prefixed_name()?))
            }
            _ => Err(self.unexpected("subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> Result<()> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if !(self.turtle() && self.peek() == Some(';')) {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri> {
        self.skip_ws();
        self.check_rdf_star()?;
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some('a') if self.turtle() && !self.continues_name(1) => {
                self.bump();
                Ok(vocab::rdf_type())
            }
            Some(c) if self.turtle() && (is_pn_chars_base(c) || c == ':') => self.prefixed_name(),
            _ => Err(self.unexpected("predicate")),
        }
    }

    /// True if the character `k` ahead could extend a prefixed name.
    fn continues_name(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Some(c) if is_pn_chars(c) || c == ':' => true,
            Some('.') => {
                let mut j = k;
                while self.peek_at(j) == Some('.') {
                    j += 1;
                }
                matches!(self.peek_at(j), Some(c) if is_pn_chars(c) || c == ':')
            }
            _ => false,
        }
    }

    fn object_list(&mut self, subject: &Subject, predicate: &Iri) -> Result<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object);
            self.skip_ws();
            self.check_rdf_star()?;
            if self.turtle() && self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term> {
        self.skip_ws();
        self.check_rdf_star()?;
        let turtle = self.turtle();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.blank_label()?)),
            Some('"') => self.literal().map(Term::Literal),
            Some('\'') if turtle => self.literal().map(Term::Literal),
            Some('[') if turtle => Ok(Term::Blank(self.blank_node_property_list()?.0)),
            Some('(') if turtle => self.collection(),
            Some(c) if turtle && (c.is_ascii_digit() || c == '+' || c == '-') => {
                self.numeric().map(Term::Literal)
            }
            Some('.') if turtle && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.numeric().map(Term::Literal)
            }
            Some(c) if turtle && (is_pn_chars_base(c) || c == ':') => {
                if let Some(b) = self.boolean() {
                    return Ok(Term::Literal(b));
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            _ => Err(self.unexpected("object")),
        }
    }

    fn boolean(&mut self) -> Option<Literal> {
        for word in ["true", "false"] {
            if self.starts_with(word) && !self.continues_name(word.len()) {
                for _ in 0..word.len() {
                    self.bump();
                }
                return Some(Literal::typed(word, vocab::iri(vocab::XSD_BOOLEAN)));
            }
        }
        None
    }

    fn blank_node_property_list(&mut self) -> Result<(BlankId, bool)> {
        self.bump(); // '['
        let node = self.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok((node, true));
        }
        self.predicate_object_list(&Subject::Blank(node.clone()))?;
        self.expect(']', "']' to close blank node property list")?;
        Ok((node, false))
    }

    fn collection(&mut self) -> Result<Term> {
        self.bump(); // '('
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return Err(self.unexpected("')' to close collection")),
                _ => items.push(self.object()?),
            }
        }
        let nil = Term::Iri(vocab::iri(vocab::RDF_NIL));
        if items.is_empty() {
            return Ok(nil);
        }
        let nodes: Vec<BlankId> = items.iter().map(|_| self.fresh_blank()).collect();
        let first = vocab::iri(vocab::RDF_FIRST);
        let rest = vocab::iri(vocab::RDF_REST);
        for (i, item) in items.into_iter().enumerate() {
            let node = Subject::Blank(nodes[i].clone());
            self.emit(node.clone(), first.clone(), item);
            let next = nodes
                .get(i + 1)
                .map(|b| Term::Blank(b.clone()))
                .unwrap_or_else(|| nil.clone());
            self.emit(node, rest.clone(), next);
        }
        Ok(Term::Blank(nodes[0].clone()))
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char> {
        let start = self.mark();
        let mut value = 0u32;
        for _ in 0..digits {
            match self.peek().and_then(|c| c.to_digit(16)) {
                Some(d) => {
                    value = value * 16 + d;
                    self.bump();
                }
                None => return Err(self.unexpected("hexadecimal digit")),
            }
        }
        char::from_u32(value).ok_or_else(|| {
            self.error_at(
                start,
                ParseErrorKind::Syntax,
                format!("escape U+{value:X} is not a valid character"),
            )
        })
    }

    fn iri_ref(&mut self) -> Result<Iri> {
        self.skip_ws();
        let start = self.mark();
        if self.peek() != Some('<') {
            return Err(self.unexpected("IRI"));
        }
        self.check_rdf_star()?;
        self.bump();
        let mut raw = String::new();
        loop {
            match self.peek() {
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.bump() {
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => {
                            return Err(
                                self.syntax_error("only \\u and \\U escapes are allowed in IRIs")
                            )
                        }
                    };
                    raw.push(c);
                }
                None => return Err(self.unexpected("'>' to close IRI")),
                Some(c) if iri::is_forbidden(c) => {
                    return Err(self.syntax_error(format!(
                        "character {} is not allowed in an IRI",
                        describe(Some(c))
                    )));
                }
                Some(c) => {
                    raw.push(c);
                    self.bump();
                }
            }
        }
        self.make_iri(&raw, start)
    }

    fn make_iri(&self, raw: &str, start: Mark) -> Result<Iri> {
        let resolved = if iri::is_absolute(raw) {
            raw.to_string()
        } else {
            match &self.base {
                Some(base) => iri::resolve(base.as_str(), raw),
                None => {
                    return Err(self.error_at(
                        start,
                        ParseErrorKind::Syntax,
                        format!("relative IRI <{raw}> with no base IRI in scope"),
                    ))
                }
            }
        };
        Iri::new(resolved).map_err(|e| self.error_at(start, ParseErrorKind::Syntax, e.to_string()))
    }

    /// Scans PN_PREFIX characters up to (not including) a ':'.
    fn scan_prefix(&mut self) -> Result<String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || (c == '.' && self.continues_name(1)) {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn validate_prefix(&self, prefix: &str, start: Mark) -> Result<()> {
        let first = prefix.chars().next().expect("non-empty prefix");
        if !is_pn_chars_base(first) || prefix.ends_with('.') {
            return Err(self.error_at(
                start,
                ParseErrorKind::Syntax,
                format!("invalid prefix name '{prefix}'"),
            ));
        }
        Ok(())
    }

    fn prefixed_name(&mut self) -> Result<Iri> {
        let start = self.mark();
        let prefix = self.scan_prefix()?;
        if self.peek() != Some(':') {
            self.reset(start);
            return Err(self.unexpected("prefixed name"));
        }
        self.bump();
        if !prefix.is_empty() {
            self.validate_prefix(&prefix, start)?;
        }
        let local = self.scan_local()?;
        let ns = self.prefixes.get(&prefix).ok_or_else(|| {
            self.error_at(
                start,
                ParseErrorKind::Syntax,
                format!("undefined prefix '{prefix}:'"),
            )
        })?;
        let full = format!("{}{}", ns.as_str(), local);
        Iri::new(full).map_err(|e| self.error_at(start, ParseErrorKind::Syntax, e.to_string()))
    }

    fn scan_local(&mut self) -> Result<String> {
        let mut out = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            if c == '%' {
                let a = self.peek_at(1).filter(|c| c.is_ascii_hexdigit());
                let b = self.peek_at(2).filter(|c| c.is_ascii_hexdigit());
                match (a, b) {
                    (Some(a), Some(b)) => {
                        out.push('%');
                        out.push(a);
                        out.push(b);
                        self.bump();
                        self.bump();
                        self.bump();
                    }
                    _ => return Err(self.syntax_error("'%' must be followed by two hex digits")),
                }
            } else if c == '\\' {
                match self.peek_at(1) {
                    Some(e) if is_local_escape(e) => {
                        out.push(e);
                        self.bump();
                        self.bump();
                    }
                    _ => return Err(self.syntax_error("invalid escape in local name")),
                }
            } else if c == ':'
                || (first && (is_pn_chars_u(c) || c.is_ascii_digit()))
                || (!first && is_pn_chars(c))
                || (c == '.' && !first && self.local_continues_after_dots())
            {
                out.push(c);
                self.bump();
            } else {
                break;
            }
            first = false;
        }
        Ok(out)
    }

    fn local_continues_after_dots(&self) -> bool {
        let mut j = 0;
        while self.peek_at(j) == Some('.') {
            j += 1;
        }
        matches!(self.peek_at(j), Some(c) if is_pn_chars(c) || matches!(c, ':' | '%' | '\\'))
    }

    fn blank_label(&mut self) -> Result<BlankId> {
        self.bump();
        self.bump(); // "_:"
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return Err(self.unexpected("blank node label")),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || (c == '.' && self.continues_blank_label()) {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(self.labelled_blank(label))
    }

    fn continues_blank_label(&self) -> bool {
        let mut j = 0;
        while self.peek_at(j) == Some('.') {
            j += 1;
        }
        matches!(self.peek_at(j), Some(c) if is_pn_chars(c))
    }

    fn literal(&mut self) -> Result<Literal> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let lang = self.language_tag()?;
                Ok(Literal::lang(lexical, lang))
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.bump();
                self.bump();
                let datatype = match self.peek() {
                    Some('<') => self.iri_ref()?,
                    Some(c) if self.turtle() && (is_pn_chars_base(c) || c == ':') => {
                        self.prefixed_name()?
                    }
                    _ => return Err(self.unexpected("datatype IRI after '^^'")),
                };
                Ok(Literal::typed(lexical, datatype))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn language_tag(&mut self) -> Result<String> {
        let mut tag = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            tag.push(c);
            self.bump();
        }
        if tag.is_empty() {
            return Err(self.unexpected("language tag"));
        }
        while self.peek() == Some('-') {
            let mut sub = String::new();
            let dash = self.mark();
            self.bump();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric()) {
                sub.push(c);
                self.bump();
            }
            if sub.is_empty() {
                self.reset(dash);
                return Err(self.syntax_error("empty language subtag"));
            }
            tag.push('-');
            tag.push_str(&sub);
        }
        Ok(tag)
    }

    fn string(&mut self) -> Result<String> {
        let start = self.mark();
        let quote = self.peek().expect("caller checked quote");
        let long =
            self.turtle() && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        if long {
            self.bump();
            self.bump();
            self.bump();
        } else {
            self.bump();
        }
        let mut out = String::new();
        loop {
            match self.peek() {
                None => {
                    return Err(self.error_at(
                        start,
                        ParseErrorKind::Syntax,
                        "unterminated string literal",
                    ))
                }
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        return Ok(out);
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        // a long string may end with up to two extra quotes
                        while self.peek_at(3) == Some(quote) {
                            out.push(quote);
                            self.bump();
                        }
                        self.bump();
                        self.bump();
                        self.bump();
                        return Ok(out);
                    }
                    out.push(c);
                    self.bump();
                }
                Some('\\') => {
                    let escape = self.mark();
                    self.bump();
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        other => {
                            return Err(self.error_at(
                                escape,
                                ParseErrorKind::Syntax,
                                format!(
                                    "invalid escape sequence '\\{}'",
                                    other.map(String::from).unwrap_or_default()
                                ),
                            ))
                        }
                    };
                    out.push(c);
                }
                Some('\n' | '\r') if !long => {
                    return Err(self.syntax_error("line break in single-line string literal"));
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn numeric(&mut self) -> Result<Literal> {
        let start = self.mark();
        let mut lex = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            lex.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            lex.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut frac_digits = 0;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            lex.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                lex.push(c);
                self.bump();
                frac_digits += 1;
            }
        }
        let mut exponent = false;
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let m = self.mark();
            let mut exp = String::from(e);
            self.bump();
            if let Some(s @ ('+' | '-')) = self.peek() {
                exp.push(s);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                exp.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                self.reset(m);
                return Err(self.syntax_error("exponent requires digits"));
            }
            lex.push_str(&exp);
            exponent = true;
        }
        if int_digits == 0 && frac_digits == 0 {
            return Err(self.error_at(start, ParseErrorKind::Syntax, "malformed numeric literal"));
        }
        let datatype = if exponent {
            vocab::XSD_DOUBLE
        } else if frac_digits > 0 {
            vocab::XSD_DECIMAL
        } else {
            vocab::XSD_INTEGER
        };
        Ok(Literal::typed(lex, vocab::iri(datatype)))
    }
}
