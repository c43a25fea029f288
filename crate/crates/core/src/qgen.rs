//! Template-based question generation.
//!
//! Each strategy instantiates one fixed stem template against the knowledge
//! base. Output order is deterministic: every strategy walks its input in
//! ascending IRI order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::iri::Iri;
use crate::model::{KnowledgeBase, Object};
use crate::rdf::{vocab, Subject, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QGenError {
    #[error("invalid parameter: {name} must be at least 1 (got {value})")]
    InvalidParameter { name: &'static str, value: usize },
    #[error("unknown strategy '{0}'")]
    UnknownStrategy(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    ClassMembership,
    PropertyBased,
    Terminology,
    Annotation,
    Mcq,
    MultiEntity,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::ClassMembership,
        Strategy::PropertyBased,
        Strategy::Terminology,
        Strategy::Annotation,
        Strategy::Mcq,
        Strategy::MultiEntity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::ClassMembership => "class-membership",
            Strategy::PropertyBased => "property-based",
            Strategy::Terminology => "terminology",
            Strategy::Annotation => "annotation",
            Strategy::Mcq => "mcq",
            Strategy::MultiEntity => "multi-entity",
        }
    }

    /// Row heading used by the count summary.
    pub fn title(self) -> &'static str {
        match self {
            Strategy::ClassMembership => "Class membership",
            Strategy::PropertyBased => "Property-based",
            Strategy::Terminology => "Terminology-based",
            Strategy::Annotation => "Annotation-based",
            Strategy::Mcq => "MCQs",
            Strategy::MultiEntity => "Multi-entity",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = QGenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| QGenError::UnknownStrategy(s.to_string()))
    }
}

/// Parses strategy names; `all` selects every strategy.
pub fn parse_strategies<S: AsRef<str>>(names: &[S]) -> Result<BTreeSet<Strategy>, QGenError> {
    let mut out = BTreeSet::new();
    for name in names {
        let name = name.as_ref().trim();
        if name == "all" {
            out.extend(Strategy::ALL);
        } else {
            out.insert(name.parse()?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QGenConfig {
    pub strategies: BTreeSet<Strategy>,
    pub max_distractors: usize,
    pub pair_cap: usize,
    pub instance_comments: bool,
}

impl Default for QGenConfig {
    fn default() -> Self {
        QGenConfig {
            strategies: Strategy::ALL.into_iter().collect(),
            max_distractors: 3,
            pair_cap: 3,
            instance_comments: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Question {
    pub strategy: Strategy,
    pub stem: String,
    pub answers: Vec<String>,
    pub distractors: Vec<String>,
    #[serde(serialize_with = "ser_triples")]
    pub source: Vec<Triple>,
    pub focus: Iri,
}

fn ser_triples<S: Serializer>(triples: &[Triple], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(triples.iter().map(ToString::to_string))
}

impl Question {
    fn single(
        strategy: Strategy,
        stem: String,
        answer: String,
        source: Triple,
        focus: &Iri,
    ) -> Self {
        Question {
            strategy,
            stem,
            answers: vec![answer],
            distractors: Vec::new(),
            source: vec![source],
            focus: focus.clone(),
        }
    }
}

fn object_term(o: &Object) -> Term {
    match o {
        Object::Instance(i) => Term::Iri(i.clone()),
        Object::Literal(l) => Term::Literal(l.clone()),
    }
}

fn type_triple(i: &Iri, c: &Iri) -> Triple {
    Triple::iris(i, &vocab::rdf_type(), c)
}

/// One question per distinct (instance, class) membership.
pub fn gen_class_membership(kb: &KnowledgeBase) -> Vec<Question> {
    let mut out = Vec::new();
    for (c, members) in kb.concept_instances() {
        for i in members {
            out.push(Question::single(
                Strategy::ClassMembership,
                format!("To which class does {} belong?", kb.display_name(i)),
                kb.display_name(c).to_string(),
                type_triple(i, c),
                i,
            ));
        }
    }
    out
}

/// One question per distinct property assertion.
pub fn gen_property_based(kb: &KnowledgeBase) -> Vec<Question> {
    let mut out = Vec::new();
    for (p, pairs) in kb.property_instances() {
        for (x, y) in pairs {
            out.push(Question::single(
                Strategy::PropertyBased,
                format!(
                    "What is the {} of {}?",
                    kb.display_name(p),
                    kb.display_name(x)
                ),
                kb.render_object(y),
                Triple::new(Subject::Iri(x.clone()), p.clone(), object_term(y)),
                x,
            ));
        }
    }
    out
}

/// One question per asserted subsumption pair.
pub fn gen_terminology(kb: &KnowledgeBase) -> Vec<Question> {
    kb.schema()
        .hierarchy()
        .iter()
        .map(|(child, parent)| {
            Question::single(
                Strategy::Terminology,
                format!("What is the superclass of {}?", kb.display_name(child)),
                kb.display_name(parent).to_string(),
                Triple::iris(child, &vocab::rdfs_subclass_of(), parent),
                child,
            )
        })
        .collect()
}

/// One question per schema comment, plus instance comments when asked.
pub fn gen_annotation(kb: &KnowledgeBase, instance_comments: bool) -> Vec<Question> {
    let schema = kb.schema().annotations().iter();
    let instances = kb.instance_comments().iter().filter(|_| instance_comments);
    schema
        .chain(instances)
        .map(|(entity, text)| {
            Question::single(
                Strategy::Annotation,
                format!("Which term is described as: '{text}'?"),
                kb.display_name(entity).to_string(),
                Triple::new(
                    Subject::Iri(entity.clone()),
                    vocab::rdfs_comment(),
                    Term::Literal(crate::rdf::Literal::string(text.clone())),
                ),
                entity,
            )
        })
        .collect()
}

/// "Which of these is a X?" for every populated class with a populated
/// sibling. The answer is the first instance of X; distractors are the first
/// eligible instance of each populated sibling, up to `max_distractors`.
/// An instance is never a distractor if it belongs to X or any subclass of X.
pub fn gen_mcq(kb: &KnowledgeBase, max_distractors: usize) -> Result<Vec<Question>, QGenError> {
    if max_distractors < 1 {
        return Err(QGenError::InvalidParameter {
            name: "max-distractors",
            value: max_distractors,
        });
    }
    let populated = kb.populated_concepts();
    let mut out = Vec::new();
    let mut stems = BTreeSet::new();
    for x in &populated {
        let siblings: Vec<&Iri> = kb
            .siblings_of(x)
            .expect("populated concepts are declared")
            .into_iter()
            .filter(|s| populated.contains(s))
            .collect();
        if siblings.is_empty() {
            continue;
        }
        let mut target_members: BTreeSet<&Iri> = kb.instances_of(x).iter().collect();
        for d in kb.descendants(x) {
            target_members.extend(kb.instances_of(d));
        }
        let answer = kb.instances_of(x).iter().next().expect("populated");

        let mut distractors = Vec::new();
        let mut source = vec![type_triple(answer, x)];
        let mut parents_used = BTreeSet::new();
        for y in siblings {
            if distractors.len() == max_distractors {
                break;
            }
            let Some(d) = kb
                .instances_of(y)
                .iter()
                .find(|i| !target_members.contains(i))
            else {
                continue;
            };
            let z = kb
                .parents(x)
                .intersection(kb.parents(y))
                .next()
                .expect("siblings share a parent");
            if parents_used.insert(z) {
                source.push(Triple::iris(x, &vocab::rdfs_subclass_of(), z));
            }
            source.push(Triple::iris(y, &vocab::rdfs_subclass_of(), z));
            source.push(type_triple(d, y));
            distractors.push(kb.display_name(d).to_string());
        }
        if distractors.is_empty() {
            continue;
        }
        let stem = format!("Which of these is a {}?", kb.display_name(x));
        if !stems.insert(stem.clone()) {
            continue;
        }
        out.push(Question {
            strategy: Strategy::Mcq,
            stem,
            answers: vec![kb.display_name(answer).to_string()],
            distractors,
            source,
            focus: (*x).clone(),
        });
    }
    Ok(out)
}

/// Two facts about one instance: one is the constraint, the other is asked.
/// Pairs are enumerated in (property, object) order over assertions with
/// distinct properties, at most `pair_cap` per instance.
pub fn gen_multi_entity(kb: &KnowledgeBase, pair_cap: usize) -> Result<Vec<Question>, QGenError> {
    if pair_cap < 1 {
        return Err(QGenError::InvalidParameter {
            name: "pair-cap",
            value: pair_cap,
        });
    }
    let mut out = Vec::new();
    for x in kb.instances() {
        let facts = kb.out_assertions(x).expect("known instance");
        let mut emitted = 0;
        'pairs: for (i, (p1, y)) in facts.iter().enumerate() {
            for (p2, z) in &facts[i + 1..] {
                if emitted == pair_cap {
                    break 'pairs;
                }
                if p1 == p2 {
                    continue;
                }
                out.push(Question {
                    strategy: Strategy::MultiEntity,
                    stem: format!(
                        "Regarding {}, which has {} = {}: what is its {}?",
                        kb.display_name(x),
                        kb.display_name(p2),
                        kb.render_object(z),
                        kb.display_name(p1),
                    ),
                    answers: vec![kb.render_object(y)],
                    distractors: Vec::new(),
                    source: vec![
                        Triple::new(Subject::Iri(x.clone()), p1.clone(), object_term(y)),
                        Triple::new(Subject::Iri(x.clone()), p2.clone(), object_term(z)),
                    ],
                    focus: x.clone(),
                });
                emitted += 1;
            }
        }
    }
    Ok(out)
}

/// Runs the selected strategies and merges questions that share a stem:
/// the first occurrence keeps its position and gains the other answers.
pub fn generate_all(kb: &KnowledgeBase, config: &QGenConfig) -> Result<Vec<Question>, QGenError> {
    let mut all = Vec::new();
    for s in &config.strategies {
        let batch = match s {
            Strategy::ClassMembership => gen_class_membership(kb),
            Strategy::PropertyBased => gen_property_based(kb),
            Strategy::Terminology => gen_terminology(kb),
            Strategy::Annotation => gen_annotation(kb, config.instance_comments),
            Strategy::Mcq => gen_mcq(kb, config.max_distractors)?,
            Strategy::MultiEntity => gen_multi_entity(kb, config.pair_cap)?,
        };
        all.extend(batch);
    }
    Ok(dedup_stems(all))
}

fn dedup_stems(questions: Vec<Question>) -> Vec<Question> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut out: Vec<Question> = Vec::with_capacity(questions.len());
    for q in questions {
        match index.get(&q.stem) {
            Some(&at) => {
                let kept = &mut out[at];
                for a in q.answers {
                    if !kept.answers.contains(&a) && !kept.distractors.contains(&a) {
                        kept.answers.push(a);
                    }
                }
                kept.source.extend(q.source);
            }
            None => {
                index.insert(q.stem.clone(), out.len());
                out.push(q);
            }
        }
    }
    out
}

/// Number of questions per strategy, in strategy order.
pub fn count_by_strategy(questions: &[Question]) -> Vec<(Strategy, usize)> {
    Strategy::ALL
        .into_iter()
        .map(|s| (s, questions.iter().filter(|q| q.strategy == s).count()))
        .collect()
}

/// Per-strategy counts followed by a total row.
pub fn render_summary(questions: &[Question]) -> String {
    let mut out = String::new();
    for (s, n) in count_by_strategy(questions) {
        out.push_str(&format!("{:<20}{n:>8}\n", s.title()));
    }
    out.push_str(&format!("{:<20}{:>8}\n", "Total", questions.len()));
    out
}

/// Human-readable rendering: one block per question.
pub fn render_text(questions: &[Question]) -> String {
    let mut out = String::new();
    for (n, q) in questions.iter().enumerate() {
        out.push_str(&format!("{}. [{}] {}\n", n + 1, q.strategy, q.stem));
        for a in &q.answers {
            out.push_str(&format!("   * {a}\n"));
        }
        for d in &q.distractors {
            out.push_str(&format!("   - {d}\n"));
        }
    }
    out
}

/// JSON Lines: one object per question.
pub fn to_jsonl(questions: &[Question]) -> String {
    let mut out = String::new();
    for q in questions {
        out.push_str(&serde_json::to_string(q).expect("questions serialise"));
        out.push('\n');
    }
    out
}

/// CSV with one row per question; list fields are joined with " | ".
pub fn to_csv(questions: &[Question]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["strategy", "stem", "answers", "distractors", "focus"])
        .expect("in-memory write");
    for q in questions {
        w.write_record([
            q.strategy.as_str(),
            &q.stem,
            &q.answers.join(" | "),
            &q.distractors.join(" | "),
            q.focus.as_str(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}
