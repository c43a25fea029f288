//! Runs every file under `fixtures/parser`.
//!
//! `valid/NAME.{ttl,nt}` must parse to exactly the triples listed in
//! `valid/NAME.expected.nt`; `malformed/NAME.{ttl,nt}` must fail at the
//! `line:column kind` given in `malformed/NAME.error`.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use ontoqg_core::rdf::{parse_document, to_ntriples, ParseErrorKind, Syntax};

fn corpus(dir: &str) -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/parser")
        .join(dir);
    let mut files: Vec<PathBuf> = fs::read_dir(root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let name = p.file_name().unwrap().to_string_lossy();
            !name.ends_with(".expected.nt") && !name.ends_with(".error")
        })
        .collect();
    files.sort();
    files
}

fn lines(text: &str) -> BTreeSet<String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

#[test]
fn valid_documents_parse_to_expected_triples() {
    let files = corpus("valid");
    assert!(files.len() >= 20);
    let mut failures = Vec::new();
    for path in &files {
        let text = fs::read_to_string(path).unwrap();
        let expected = fs::read_to_string(path.with_extension("expected.nt")).unwrap();
        match parse_document(&text, Syntax::from_path(path)) {
            Ok(set) => {
                let got = lines(&to_ntriples(&set));
                if got != lines(&expected) {
                    failures.push(format!("{}:\n  got {got:#?}", path.display()));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn malformed_documents_fail_at_expected_position() {
    let files = corpus("malformed");
    assert!(files.len() >= 10);
    let mut failures = Vec::new();
    for path in &files {
        let text = fs::read_to_string(path).unwrap();
        let spec = fs::read_to_string(path.with_extension("error")).unwrap();
        let (pos, kind) = spec.trim().split_once(' ').unwrap();
        let (line, column) = pos.split_once(':').unwrap();
        let (line, column): (usize, usize) = (line.parse().unwrap(), column.parse().unwrap());
        let kind = match kind {
            "syntax" => ParseErrorKind::Syntax,
            "unsupported" => ParseErrorKind::Unsupported,
            k => panic!("unknown kind {k}"),
        };
        match parse_document(&text, Syntax::from_path(path)) {
            Ok(set) => failures.push(format!("{}: parsed {} triples", path.display(), set.len())),
            Err(e) if (e.line, e.column, e.kind) != (line, column, kind) => failures.push(format!(
                "{}: expected {line}:{column} {kind:?}, got {e}",
                path.display()
            )),
            Err(_) => {}
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
