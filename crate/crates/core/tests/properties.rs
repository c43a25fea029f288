use std::collections::{BTreeMap, BTreeSet};

use ontoqg_core::ingest::{build_knowledge_base, IngestOptions};
use ontoqg_core::metrics::{evaluate_all, normalize_profiles, Metric, MetricsConfig};
use ontoqg_core::rdf::{
    parse_document, to_ntriples, to_turtle, BlankId, Literal, Subject, Syntax, Term, Triple,
    TripleSet,
};
use ontoqg_core::{Iri, KnowledgeBase};
use proptest::prelude::*;

fn iri(s: &str) -> Iri {
    Iri::new(format!("http://e/{s}")).unwrap()
}

fn arb_iri() -> impl Strategy<Value = Iri> {
    "[a-z][a-z0-9]{0,4}".prop_map(|s| iri(&s))
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    let lexical = "[a-z \"'\\\\\n\t\r\u{e9}\u{1F600}]{0,8}";
    prop_oneof![
        lexical.prop_map(Literal::string),
        (lexical, "[a-z]{2}(-[A-Z]{2})?").prop_map(|(l, t)| Literal::lang(l, t)),
        (lexical, arb_iri()).prop_map(|(l, d)| Literal::typed(l, d)),
    ]
}

fn arb_subject() -> impl Strategy<Value = Subject> {
    prop_oneof![
        3 => arb_iri().prop_map(Subject::Iri),
        1 => "[a-z][a-z0-9]{0,3}".prop_map(|l| Subject::Blank(BlankId(l))),
    ]
}

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        arb_iri().prop_map(Term::Iri),
        "[a-z][a-z0-9]{0,3}".prop_map(|l| Term::Blank(BlankId(l))),
        arb_literal().prop_map(Term::Literal),
    ]
}

fn arb_triples() -> impl Strategy<Value = BTreeSet<Triple>> {
    prop::collection::btree_set(
        (arb_subject(), arb_iri(), arb_term()).prop_map(|(s, p, o)| Triple::new(s, p, o)),
        0..30,
    )
}

/// A small random schema: classes `c0..cn` where every subsumption edge
/// points from a higher index to a lower one, so the hierarchy is acyclic.
#[derive(Debug, Clone)]
struct Shape {
    classes: usize,
    edges: BTreeSet<(usize, usize)>,
    members: Vec<(usize, usize)>,
    links: Vec<(usize, usize, usize)>,
}

fn arb_shape() -> impl Strategy<Value = Shape> {
    (1usize..10).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::btree_set((0..n, 0..n), 0..2 * n),
            prop::collection::vec((0usize..12, 0..n), 0..20),
            prop::collection::vec((0usize..12, 0usize..3, 0usize..12), 0..25),
        )
            .prop_map(|(classes, raw, members, links)| Shape {
                classes,
                edges: raw.into_iter().filter(|(a, b)| a > b).collect(),
                members,
                links,
            })
    })
}

fn statements(shape: &Shape) -> Vec<String> {
    let mut out = Vec::new();
    for c in 0..shape.classes {
        out.push(format!(":c{c} a owl:Class ; rdfs:label \"Class {c}\" ."));
    }
    for (child, parent) in &shape.edges {
        out.push(format!(":c{child} rdfs:subClassOf :c{parent} ."));
    }
    for p in 0..3 {
        out.push(format!(
            ":p{p} a owl:ObjectProperty ; rdfs:comment \"property {p}\" ."
        ));
    }
    for (i, c) in &shape.members {
        out.push(format!(":i{i} a :c{c} ."));
    }
    for (s, p, o) in &shape.links {
        out.push(format!(":i{s} :p{p} :i{o} ."));
    }
    out
}

fn ingest(stmts: &[String]) -> KnowledgeBase {
    let text = format!(
        "@prefix : <http://e/> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
         @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n{}\n",
        stmts.join("\n")
    );
    let set = parse_document(&text, Syntax::Turtle).unwrap();
    build_knowledge_base(&set, &IngestOptions::default())
        .unwrap()
        .kb
}

/// Shortest upward path length, by enumerating every path to a root.
fn depth_by_paths(c: usize, edges: &BTreeSet<(usize, usize)>) -> usize {
    fn walk(c: usize, edges: &BTreeSet<(usize, usize)>, len: usize, best: &mut usize) {
        let parents: Vec<usize> = edges
            .iter()
            .filter(|(ch, _)| *ch == c)
            .map(|(_, p)| *p)
            .collect();
        if parents.is_empty() {
            *best = (*best).min(len);
        }
        for p in parents {
            walk(p, edges, len + 1, best);
        }
    }
    let mut best = usize::MAX;
    walk(c, edges, 1, &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn turtle_round_trip(triples in arb_triples()) {
        let set: TripleSet = triples.iter().cloned().collect();
        let back = parse_document(&to_turtle(&set), Syntax::Turtle).unwrap();
        prop_assert_eq!(&back.triples, &triples);
        let nt = parse_document(&to_ntriples(&set), Syntax::NTriples).unwrap();
        prop_assert_eq!(&nt.triples, &triples);
        let again = parse_document(&to_turtle(&back), Syntax::Turtle).unwrap();
        prop_assert_eq!(again.triples, back.triples);
    }

    #[test]
    fn ingest_ignores_statement_order(
        (stmts, shuffled) in arb_shape().prop_flat_map(|s| {
            let stmts = statements(&s);
            (Just(stmts.clone()), Just(stmts).prop_shuffle())
        })
    ) {
        prop_assert_eq!(ingest(&stmts), ingest(&shuffled));
    }

    #[test]
    fn depth_is_shortest_path(shape in arb_shape()) {
        let kb = ingest(&statements(&shape));
        for c in 0..shape.classes {
            let got = kb.concept_depth(&iri(&format!("c{c}"))).unwrap();
            prop_assert_eq!(got, depth_by_paths(c, &shape.edges), "class c{}", c);
        }
    }

    #[test]
    fn siblings_are_symmetric_and_share_a_parent(shape in arb_shape()) {
        let kb = ingest(&statements(&shape));
        for c in kb.schema().concepts() {
            for s in kb.siblings_of(c).unwrap() {
                prop_assert!(s != c);
                prop_assert!(kb.siblings_of(s).unwrap().contains(c));
                prop_assert!(kb.parents(c).intersection(kb.parents(s)).next().is_some());
            }
        }
    }

    #[test]
    fn metric_ranges(shapes in prop::collection::vec(arb_shape(), 1..4)) {
        let reports: Vec<_> = shapes
            .iter()
            .enumerate()
            .map(|(n, s)| evaluate_all(&ingest(&statements(s)), &format!("kb{n}"), &MetricsConfig::default()))
            .collect();
        for r in &reports {
            for m in Metric::ALL {
                let v = r.value(m);
                prop_assert!(v.is_finite() && v >= 0.0, "{} = {}", m, v);
                if m.is_bounded() {
                    prop_assert!(v <= 1.0, "{} = {}", m, v);
                }
            }
            prop_assert!(r.value(Metric::AverageDepth) >= 1.0);
        }
        let norm = normalize_profiles(&reports).unwrap();
        for m in Metric::ALL {
            let column: Vec<f64> = norm.iter().map(|n| n.values.get(m)).collect();
            prop_assert!(column.iter().all(|v| (0.0..=1.0).contains(v)));
            let max = column.iter().copied().fold(0.0, f64::max);
            if !m.is_bounded() && reports.iter().any(|r| r.value(m) > 0.0) {
                prop_assert_eq!(max, 1.0);
            }
        }
    }

    #[test]
    fn inferred_membership_only_adds(shape in arb_shape()) {
        let kb = ingest(&statements(&shape));
        let closed = kb.with_inferred_membership();
        let before: BTreeMap<_, _> = kb.concept_instances().clone();
        for (c, members) in &before {
            prop_assert!(closed.instances_of(c).is_superset(members));
            for a in kb.ancestors(c) {
                prop_assert!(closed.instances_of(a).is_superset(members));
            }
        }
        prop_assert_eq!(closed.instances(), kb.instances());
    }
}
