use std::fmt::Write;

use super::{vocab, Literal, Subject, Term, Triple, TripleSet};

fn escape_into(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
}

fn write_literal(out: &mut String, lit: &Literal) {
    out.push('"');
    escape_into(out, &lit.lexical);
    out.push('"');
    if let Some(lang) = &lit.language {
        out.push('@');
        out.push_str(lang);
    } else if lit.datatype.as_str() != vocab::XSD_STRING {
        let _ = write!(out, "^^<{}>", lit.datatype);
    }
}

/// Writes one term in N-Triples form.
pub fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => {
            let _ = write!(out, "<{iri}>");
        }
        Term::Blank(b) => {
            let _ = write!(out, "{b}");
        }
        Term::Literal(lit) => write_literal(out, lit),
    }
}

pub(crate) fn write_triple(out: &mut String, t: &Triple) {
    match &t.subject {
        Subject::Iri(iri) => {
            let _ = write!(out, "<{iri}>");
        }
        Subject::Blank(b) => {
            let _ = write!(out, "{b}");
        }
    }
    let _ = write!(out, " <{}> ", t.predicate);
    write_term(out, &t.object);
    out.push_str(" .");
}

/// Canonical N-Triples: one triple per line in set order.
pub fn to_ntriples(set: &TripleSet) -> String {
    let mut out = String::new();
    for t in &set.triples {
        write_triple(&mut out, t);
        out.push('\n');
    }
    out
}

/// Turtle carrying the base and prefix declarations, followed by the
/// triples in N-Triples form.
pub fn to_turtle(set: &TripleSet) -> String {
    let mut out = String::new();
    if let Some(base) = &set.base {
        let _ = writeln!(out, "@base <{base}> .");
    }
    for (prefix, ns) in &set.prefixes {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    out.push_str(&to_ntriples(set));
    out
}
