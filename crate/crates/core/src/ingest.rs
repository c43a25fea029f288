//! Maps a parsed [`TripleSet`] onto the schema / knowledge-base model.
//!
//! Rules, in order:
//! 1. IRI subjects typed `owl:Class` or `rdfs:Class` are concepts
//!    (`owl:Thing` and `owl:Nothing` excluded).
//! 2. Subjects typed as object, datatype or plain RDF properties (or with an
//!    OWL property characteristic) are properties; annotation-property
//!    declarations are tracked separately.
//! 3. `rdfs:subClassOf` between two named concepts is a subsumption pair.
//! 4. `rdfs:domain` / `rdfs:range` of a property fill its signature;
//!    `owl:unionOf` lists are expanded.
//! 5. Members of a concept (and `owl:NamedIndividual`s) are individuals.
//! 6. Triples whose predicate is a property are assertions; untyped
//!    subjects and IRI objects become individuals.
//! 7. `rdfs:comment` on a concept or property is a schema annotation; on an
//!    individual it is kept as an instance comment.
//!
//! Anything dropped along the way is reported as a [`Warning`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::iri::Iri;
use crate::model::{find_cycle, KnowledgeBase, ModelError, Object, PropertyKind, Role};
use crate::rdf::{vocab, Subject, Term, Triple, TripleSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("subsumption cycle among named classes: {}", .0.iter().map(Iri::as_str).collect::<Vec<_>>().join(" -> "))]
    Cycle(Vec<Iri>),
    #[error("{iri} is used both as {first} and as {second}; punning is not supported")]
    Punning { iri: Iri, first: Role, second: Role },
    #[error("the document contains no triples and no classes")]
    EmptyOntology,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WarningCode {
    BlankSubsumption,
    UndeclaredClass,
    SelfSubsumption,
    UnsupportedSignature,
    BlankIndividual,
    UndeclaredType,
    UndeclaredProperty,
    IgnoredAnnotation,
    ImportNotFollowed,
}

impl WarningCode {
    pub fn as_str(self) -> &'static str {
        match self {
            WarningCode::BlankSubsumption => "blank-subsumption",
            WarningCode::UndeclaredClass => "undeclared-class",
            WarningCode::SelfSubsumption => "self-subsumption",
            WarningCode::UnsupportedSignature => "unsupported-signature",
            WarningCode::BlankIndividual => "blank-individual",
            WarningCode::UndeclaredType => "undeclared-type",
            WarningCode::UndeclaredProperty => "undeclared-property",
            WarningCode::IgnoredAnnotation => "ignored-annotation",
            WarningCode::ImportNotFollowed => "import-not-followed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
    /// The triple or entity the warning is about.
    pub location: Option<String>,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning[{}]: {}", self.code.as_str(), self.message)?;
        if let Some(loc) = &self.location {
            write!(f, " ({loc})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestOptions {
    /// Close concept membership upward along the asserted hierarchy.
    pub inferred_membership: bool,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub kb: KnowledgeBase,
    pub warnings: Vec<Warning>,
}

struct Ctx {
    warnings: BTreeSet<Warning>,
}

impl Ctx {
    fn warn(&mut self, code: WarningCode, message: impl Into<String>, location: Option<String>) {
        self.warnings.insert(Warning {
            code,
            message: message.into(),
            location,
        });
    }
}

const CLASS_TYPES: [&str; 2] = [vocab::OWL_CLASS, vocab::RDFS_CLASS];
const NON_CLASSES: [&str; 2] = [vocab::OWL_THING, vocab::OWL_NOTHING];

fn property_kind_for(type_iri: &str) -> Option<PropertyKind> {
    match type_iri {
        vocab::OWL_OBJECT_PROPERTY => Some(PropertyKind::Object),
        vocab::OWL_DATATYPE_PROPERTY => Some(PropertyKind::Datatype),
        vocab::RDF_PROPERTY => Some(PropertyKind::Untyped),
        t if vocab::OWL_PROPERTY_CHARACTERISTICS.contains(&t) => Some(PropertyKind::Untyped),
        _ => None,
    }
}

/// Builds the knowledge base for one parsed document.
pub fn build_knowledge_base(
    set: &TripleSet,
    options: &IngestOptions,
) -> Result<Ingested, IngestError> {
    let mut ctx = Ctx {
        warnings: BTreeSet::new(),
    };

    // types by subject
    let mut types: BTreeMap<&Subject, BTreeSet<&Iri>> = BTreeMap::new();
    for t in set.iter() {
        if t.predicate.as_str() == vocab::RDF_TYPE {
            if let Term::Iri(ty) = &t.object {
                types.entry(&t.subject).or_default().insert(ty);
            }
        }
    }

    // (1) and (2)
    let mut concepts: BTreeSet<Iri> = BTreeSet::new();
    let mut properties: BTreeMap<Iri, PropertyKind> = BTreeMap::new();
    let mut annotation_properties: BTreeSet<Iri> = BTreeSet::new();
    for (subject, tys) in &types {
        let Subject::Iri(s) = subject else { continue };
        if tys.iter().any(|t| CLASS_TYPES.contains(&t.as_str()))
            && !NON_CLASSES.contains(&s.as_str())
        {
            concepts.insert(s.clone());
        }
        let mut kind = None;
        for t in tys {
            match (kind, property_kind_for(t.as_str())) {
                (_, Some(PropertyKind::Datatype)) => kind = Some(PropertyKind::Datatype),
                (None | Some(PropertyKind::Untyped), Some(PropertyKind::Object)) => {
                    kind = Some(PropertyKind::Object)
                }
                (None, Some(PropertyKind::Untyped)) => kind = Some(PropertyKind::Untyped),
                _ => {}
            }
        }
        if let Some(kind) = kind {
            properties.insert(s.clone(), kind);
        }
        if tys
            .iter()
            .any(|t| t.as_str() == vocab::OWL_ANNOTATION_PROPERTY)
        {
            annotation_properties.insert(s.clone());
        }
    }
    if set.is_empty() && concepts.is_empty() {
        return Err(IngestError::EmptyOntology);
    }
    if let Some(p) = properties.keys().find(|p| concepts.contains(*p)) {
        return Err(IngestError::Punning {
            iri: p.clone(),
            first: Role::Concept,
            second: Role::Property,
        });
    }
    let is_schema = |i: &Iri| concepts.contains(i) || properties.contains_key(i);
    let role_of = |i: &Iri| {
        if concepts.contains(i) {
            Role::Concept
        } else {
            Role::Property
        }
    };

    let mut b = KnowledgeBase::builder();
    for c in &concepts {
        b.concept(c);
    }
    for (p, kind) in &properties {
        b.property(p, *kind);
    }

    // (3)
    let mut parents: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for t in set
        .iter()
        .filter(|t| t.predicate.as_str() == vocab::RDFS_SUBCLASS_OF)
    {
        let loc = Some(t.to_string());
        match (&t.subject, &t.object) {
            (_, Term::Iri(parent)) if NON_CLASSES.contains(&parent.as_str()) => {}
            (Subject::Iri(child), Term::Iri(parent)) => {
                if !concepts.contains(child) || !concepts.contains(parent) {
                    ctx.warn(
                        WarningCode::UndeclaredClass,
                        "subsumption involving an undeclared class dropped",
                        loc,
                    );
                } else if child == parent {
                    ctx.warn(
                        WarningCode::SelfSubsumption,
                        "self-subsumption dropped",
                        loc,
                    );
                } else {
                    parents
                        .entry(child.clone())
                        .or_default()
                        .insert(parent.clone());
                    b.subclass(child, parent);
                }
            }
            _ => ctx.warn(
                WarningCode::BlankSubsumption,
                "subsumption involving an anonymous class expression dropped",
                loc,
            ),
        }
    }
    if let Some(cycle) = find_cycle(&concepts, &parents) {
        return Err(IngestError::Cycle(cycle));
    }

    // (4)
    for t in set.iter() {
        let is_domain = t.predicate.as_str() == vocab::RDFS_DOMAIN;
        let is_range = t.predicate.as_str() == vocab::RDFS_RANGE;
        if !(is_domain || is_range) {
            continue;
        }
        let Some(p) = t.subject.as_iri().filter(|p| properties.contains_key(*p)) else {
            continue;
        };
        let members = match &t.object {
            Term::Iri(o) => vec![o.clone()],
            Term::Blank(node) => match union_members(set, node) {
                Some(m) => m,
                None => {
                    ctx.warn(
                        WarningCode::UnsupportedSignature,
                        "anonymous domain/range expression dropped",
                        Some(t.to_string()),
                    );
                    continue;
                }
            },
            Term::Literal(_) => continue,
        };
        for m in members {
            if is_domain {
                if concepts.contains(&m) || m.as_str() == vocab::OWL_THING {
                    b.domain(p, &m);
                } else {
                    ctx.warn(
                        WarningCode::UndeclaredClass,
                        format!("domain {m} is not a declared class"),
                        Some(t.to_string()),
                    );
                }
            } else {
                b.range(p, &m);
            }
        }
    }

    // (5)
    for (subject, tys) in &types {
        let named_individual = tys
            .iter()
            .any(|t| matches!(t.as_str(), vocab::OWL_NAMED_INDIVIDUAL | vocab::OWL_THING));
        let memberships: Vec<&Iri> = tys
            .iter()
            .copied()
            .filter(|t| concepts.contains(*t))
            .collect();
        let subject = match subject {
            Subject::Iri(s) => s,
            Subject::Blank(_) => {
                if !memberships.is_empty() || named_individual {
                    ctx.warn(
                        WarningCode::BlankIndividual,
                        "anonymous individual dropped",
                        Some(subject_text(subject)),
                    );
                }
                continue;
            }
        };
        if is_schema(subject) {
            if !memberships.is_empty() || named_individual {
                return Err(IngestError::Punning {
                    iri: subject.clone(),
                    first: role_of(subject),
                    second: Role::Instance,
                });
            }
            continue;
        }
        if named_individual {
            b.instance(subject);
        }
        for c in &memberships {
            b.instance_of(subject, c);
        }
        for t in tys
            .iter()
            .filter(|t| !concepts.contains(**t) && !vocab::is_builtin(t))
        {
            if !annotation_properties.contains(subject) {
                ctx.warn(
                    WarningCode::UndeclaredType,
                    format!("type {t} is not a declared class"),
                    Some(subject.to_string()),
                );
            }
        }
    }

    // (6)
    let mut undeclared: BTreeMap<&Iri, usize> = BTreeMap::new();
    let mut ignored_annotations: BTreeMap<&Iri, usize> = BTreeMap::new();
    for t in set.iter() {
        let p = &t.predicate;
        if !properties.contains_key(p) {
            if !vocab::is_builtin(p) {
                if annotation_properties.contains(p) {
                    *ignored_annotations.entry(p).or_default() += 1;
                } else {
                    *undeclared.entry(p).or_default() += 1;
                }
            }
            continue;
        }
        let subject = match &t.subject {
            Subject::Iri(s) => s,
            Subject::Blank(_) => {
                ctx.warn(
                    WarningCode::BlankIndividual,
                    "assertion on an anonymous individual dropped",
                    Some(t.to_string()),
                );
                continue;
            }
        };
        if is_schema(subject) {
            return Err(IngestError::Punning {
                iri: subject.clone(),
                first: role_of(subject),
                second: Role::Instance,
            });
        }
        let object = match &t.object {
            Term::Iri(o) if is_schema(o) => {
                return Err(IngestError::Punning {
                    iri: o.clone(),
                    first: role_of(o),
                    second: Role::Instance,
                })
            }
            Term::Iri(o) => Object::Instance(o.clone()),
            Term::Literal(l) => Object::Literal(l.clone()),
            Term::Blank(_) => {
                ctx.warn(
                    WarningCode::BlankIndividual,
                    "assertion with an anonymous object dropped",
                    Some(t.to_string()),
                );
                continue;
            }
        };
        b.assert(subject, p, object);
    }
    for (p, n) in undeclared {
        ctx.warn(
            WarningCode::UndeclaredProperty,
            format!("{n} triple(s) use a predicate that is not a declared property"),
            Some(p.to_string()),
        );
    }

    // (7) comments and labels
    let mut labels: BTreeMap<&Iri, Vec<(u8, &str)>> = BTreeMap::new();
    let mut instance_comments = Vec::new();
    let individuals = b.instances().clone();
    for t in set.iter() {
        let Some(s) = t.subject.as_iri() else {
            continue;
        };
        match t.predicate.as_str() {
            vocab::RDFS_COMMENT => {
                let Term::Literal(text) = &t.object else {
                    continue;
                };
                if is_schema(s) {
                    b.annotation(s, text.lexical.clone());
                } else if individuals.contains(s) {
                    instance_comments.push((s, text.lexical.clone()));
                } else {
                    *ignored_annotations.entry(&t.predicate).or_default() += 1;
                }
            }
            vocab::RDFS_LABEL => {
                if let Term::Literal(l) = &t.object {
                    let rank = match l.language.as_deref() {
                        None => 0,
                        Some(lang) if lang.eq_ignore_ascii_case("en") => 1,
                        Some(_) => 2,
                    };
                    labels
                        .entry(s)
                        .or_default()
                        .push((rank, l.lexical.as_str()));
                }
            }
            vocab::OWL_IMPORTS => ctx.warn(
                WarningCode::ImportNotFollowed,
                "owl:imports is not followed",
                Some(t.to_string()),
            ),
            _ => {}
        }
    }
    for (p, n) in ignored_annotations {
        ctx.warn(
            WarningCode::IgnoredAnnotation,
            format!("{n} annotation triple(s) ignored"),
            Some(p.to_string()),
        );
    }
    for (s, mut candidates) in labels {
        candidates.sort();
        b.label(s, candidates[0].1);
    }
    for (i, text) in instance_comments {
        b.instance_comment(i, text);
    }

    let kb = b.build()?;
    let kb = if options.inferred_membership {
        kb.with_inferred_membership()
    } else {
        kb
    };
    Ok(Ingested {
        kb,
        warnings: ctx.warnings.into_iter().collect(),
    })
}

fn subject_text(s: &Subject) -> String {
    match s {
        Subject::Iri(i) => i.to_string(),
        Subject::Blank(b) => b.to_string(),
    }
}

/// Named members of `node owl:unionOf ( ... )`, if `node` is such a union
/// over named classes.
fn union_members(set: &TripleSet, node: &crate::rdf::BlankId) -> Option<Vec<Iri>> {
    let subject = Subject::Blank(node.clone());
    let head = set
        .iter()
        .find(|t| t.subject == subject && t.predicate.as_str() == vocab::OWL_UNION_OF)?;
    let mut members = Vec::new();
    let mut cursor = head.object.clone();
    let mut guard = 0;
    loop {
        match &cursor {
            Term::Iri(i) if i.as_str() == vocab::RDF_NIL => return Some(members),
            Term::Blank(b) => {
                let s = Subject::Blank(b.clone());
                let first = find_object(set, &s, vocab::RDF_FIRST)?;
                members.push(first.as_iri()?.clone());
                cursor = find_object(set, &s, vocab::RDF_REST)?.clone();
            }
            _ => return None,
        }
        guard += 1;
        if guard > set.len() {
            return None;
        }
    }
}

fn find_object<'a>(set: &'a TripleSet, s: &Subject, p: &str) -> Option<&'a Term> {
    set.iter()
        .find(|t: &&Triple| &t.subject == s && t.predicate.as_str() == p)
        .map(|t| &t.object)
}
