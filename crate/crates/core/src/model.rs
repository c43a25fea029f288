//! Ontology schema and knowledge base.
//!
//! The schema holds named concepts, properties, the asserted subsumption
//! pairs between named concepts, property signatures and `rdfs:comment`
//! annotations. The knowledge base adds individuals, literals, concept
//! memberships and property assertions. Both are immutable once built; all
//! queries borrow.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iri::Iri;
use crate::rdf::Literal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown concept {0}")]
    UnknownConcept(Iri),
    #[error("unknown property {0}")]
    UnknownProperty(Iri),
    #[error("unknown instance {0}")]
    UnknownInstance(Iri),
    #[error("{iri} is used both as {first} and as {second}")]
    RoleConflict { iri: Iri, first: Role, second: Role },
    #[error("subsumption cycle: {}", render_cycle(.0))]
    Cycle(Vec<Iri>),
}

fn render_cycle(cycle: &[Iri]) -> String {
    cycle
        .iter()
        .map(|i| i.as_str())
        .collect::<Vec<_>>()
        .join(" -> ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Concept,
    Property,
    Instance,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Concept => "a class",
            Role::Property => "a property",
            Role::Instance => "an individual",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    Object,
    Datatype,
    /// Declared only through `rdf:Property` or an OWL characteristic.
    Untyped,
}

/// Declared domains and ranges of one property. The `prop` mapping of the
/// schema is the cross product of the two sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertySignature {
    pub domains: BTreeSet<Iri>,
    pub ranges: BTreeSet<Iri>,
}

impl PropertySignature {
    /// (domain, range) pairs; a missing side is `None`.
    pub fn pairs(&self) -> Vec<(Option<&Iri>, Option<&Iri>)> {
        let domains: Vec<Option<&Iri>> = if self.domains.is_empty() {
            vec![None]
        } else {
            self.domains.iter().map(Some).collect()
        };
        let ranges: Vec<Option<&Iri>> = if self.ranges.is_empty() {
            vec![None]
        } else {
            self.ranges.iter().map(Some).collect()
        };
        domains
            .iter()
            .flat_map(|d| ranges.iter().map(move |r| (*d, *r)))
            .filter(|(d, r)| d.is_some() || r.is_some())
            .collect()
    }
}

/// The object of a property assertion: an individual or a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Instance(Iri),
    Literal(Literal),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OntologySchema {
    pub(crate) concepts: BTreeSet<Iri>,
    pub(crate) properties: BTreeMap<Iri, PropertyKind>,
    pub(crate) hierarchy: BTreeSet<(Iri, Iri)>,
    pub(crate) signatures: BTreeMap<Iri, PropertySignature>,
    pub(crate) annotations: BTreeSet<(Iri, String)>,
}

impl OntologySchema {
    pub fn concepts(&self) -> &BTreeSet<Iri> {
        &self.concepts
    }

    pub fn properties(&self) -> impl Iterator<Item = &Iri> {
        self.properties.keys()
    }

    pub fn property_kind(&self, p: &Iri) -> Option<PropertyKind> {
        self.properties.get(p).copied()
    }

    pub fn property_count(&self) -> usize {
        self.properties.len()
    }

    /// Asserted (child, parent) pairs.
    pub fn hierarchy(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.hierarchy
    }

    pub fn signature(&self, p: &Iri) -> Option<&PropertySignature> {
        self.signatures.get(p)
    }

    pub fn signatures(&self) -> &BTreeMap<Iri, PropertySignature> {
        &self.signatures
    }

    /// (entity, comment text) pairs on classes and properties.
    pub fn annotations(&self) -> &BTreeSet<(Iri, String)> {
        &self.annotations
    }

    pub fn is_concept(&self, iri: &Iri) -> bool {
        self.concepts.contains(iri)
    }

    pub fn is_property(&self, iri: &Iri) -> bool {
        self.properties.contains_key(iri)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    schema: OntologySchema,
    instances: BTreeSet<Iri>,
    literals: BTreeSet<Literal>,
    concept_inst: BTreeMap<Iri, BTreeSet<Iri>>,
    property_inst: BTreeMap<Iri, BTreeSet<(Iri, Object)>>,
    labels: BTreeMap<Iri, String>,
    instance_comments: BTreeSet<(Iri, String)>,
    // derived indexes
    parents: BTreeMap<Iri, BTreeSet<Iri>>,
    children: BTreeMap<Iri, BTreeSet<Iri>>,
    depths: BTreeMap<Iri, usize>,
    out: BTreeMap<Iri, Vec<(Iri, Object)>>,
}

static EMPTY_IRIS: BTreeSet<Iri> = BTreeSet::new();

impl KnowledgeBase {
    pub fn builder() -> KbBuilder {
        KbBuilder::default()
    }

    pub fn schema(&self) -> &OntologySchema {
        &self.schema
    }

    pub fn instances(&self) -> &BTreeSet<Iri> {
        &self.instances
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    /// Concept → instances. Only concepts with at least one member appear.
    pub fn concept_instances(&self) -> &BTreeMap<Iri, BTreeSet<Iri>> {
        &self.concept_inst
    }

    pub fn instances_of(&self, concept: &Iri) -> &BTreeSet<Iri> {
        self.concept_inst.get(concept).unwrap_or(&EMPTY_IRIS)
    }

    /// Property → (subject, object) pairs. Only used properties appear.
    pub fn property_instances(&self) -> &BTreeMap<Iri, BTreeSet<(Iri, Object)>> {
        &self.property_inst
    }

    pub fn membership_count(&self) -> usize {
        self.concept_inst.values().map(BTreeSet::len).sum()
    }

    pub fn assertion_count(&self) -> usize {
        self.property_inst.values().map(BTreeSet::len).sum()
    }

    pub fn label(&self, iri: &Iri) -> Option<&str> {
        self.labels.get(iri).map(String::as_str)
    }

    /// `rdfs:label` when present, otherwise the IRI's local name.
    pub fn display_name<'a>(&'a self, iri: &'a Iri) -> &'a str {
        self.label(iri).unwrap_or_else(|| iri.local_name())
    }

    pub fn render_object(&self, o: &Object) -> String {
        match o {
            Object::Instance(i) => self.display_name(i).to_string(),
            Object::Literal(l) => l.lexical.clone(),
        }
    }

    /// Comments attached to individuals; these do not belong to the schema.
    pub fn instance_comments(&self) -> &BTreeSet<(Iri, String)> {
        &self.instance_comments
    }

    /// Concepts with at least one instance.
    pub fn populated_concepts(&self) -> BTreeSet<&Iri> {
        self.concept_inst
            .iter()
            .filter(|(_, members)| !members.is_empty())
            .map(|(c, _)| c)
            .collect()
    }

    fn check_concept(&self, c: &Iri) -> Result<(), ModelError> {
        if self.schema.is_concept(c) {
            Ok(())
        } else {
            Err(ModelError::UnknownConcept(c.clone()))
        }
    }

    pub fn parents(&self, c: &Iri) -> &BTreeSet<Iri> {
        self.parents.get(c).unwrap_or(&EMPTY_IRIS)
    }

    pub fn children(&self, c: &Iri) -> &BTreeSet<Iri> {
        self.children.get(c).unwrap_or(&EMPTY_IRIS)
    }

    /// All strict ancestors following asserted subsumption.
    pub fn ancestors(&self, c: &Iri) -> BTreeSet<&Iri> {
        self.closure(c, |k| self.parents(k))
    }

    /// All strict descendants following asserted subsumption.
    pub fn descendants(&self, c: &Iri) -> BTreeSet<&Iri> {
        self.closure(c, |k| self.children(k))
    }

    fn closure<'a>(
        &'a self,
        start: &Iri,
        step: impl Fn(&Iri) -> &'a BTreeSet<Iri>,
    ) -> BTreeSet<&'a Iri> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Iri> = step(start).iter().collect();
        while let Some(next) = stack.pop() {
            if seen.insert(next) {
                stack.extend(step(next).iter());
            }
        }
        seen
    }

    /// Concepts sharing at least one asserted immediate parent with `c`.
    /// Top-level concepts are not siblings of one another.
    pub fn siblings_of(&self, c: &Iri) -> Result<BTreeSet<&Iri>, ModelError> {
        self.check_concept(c)?;
        Ok(self
            .parents(c)
            .iter()
            .flat_map(|p| self.children(p).iter())
            .filter(|d| *d != c)
            .collect())
    }

    /// Number of edges on the shortest upward path from `c` to the implicit
    /// top concept: a concept without asserted parents has depth 1.
    pub fn concept_depth(&self, c: &Iri) -> Result<usize, ModelError> {
        self.depths
            .get(c)
            .copied()
            .ok_or_else(|| ModelError::UnknownConcept(c.clone()))
    }

    /// Outgoing (property, object) assertions of an individual, sorted.
    pub fn out_assertions(&self, i: &Iri) -> Result<&[(Iri, Object)], ModelError> {
        if !self.instances.contains(i) {
            return Err(ModelError::UnknownInstance(i.clone()));
        }
        Ok(self.out.get(i).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Classes the individual is asserted to belong to.
    pub fn classes_of(&self, i: &Iri) -> BTreeSet<&Iri> {
        self.concept_inst
            .iter()
            .filter(|(_, members)| members.contains(i))
            .map(|(c, _)| c)
            .collect()
    }

    /// A copy in which every instance of a concept is also an instance of
    /// all the concept's ancestors.
    pub fn with_inferred_membership(&self) -> KnowledgeBase {
        let mut kb = self.clone();
        let mut closed: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for (c, members) in &self.concept_inst {
            for target in std::iter::once(c).chain(self.ancestors(c)) {
                closed
                    .entry(target.clone())
                    .or_default()
                    .extend(members.iter().cloned());
            }
        }
        kb.concept_inst = closed;
        kb
    }
}

/// Collects schema and instance data and validates it into a
/// [`KnowledgeBase`].
#[derive(Debug, Clone, Default)]
pub struct KbBuilder {
    schema: OntologySchema,
    instances: BTreeSet<Iri>,
    literals: BTreeSet<Literal>,
    concept_inst: BTreeMap<Iri, BTreeSet<Iri>>,
    property_inst: BTreeMap<Iri, BTreeSet<(Iri, Object)>>,
    labels: BTreeMap<Iri, String>,
    instance_comments: BTreeSet<(Iri, String)>,
}

impl KbBuilder {
    pub fn concept(&mut self, c: &Iri) -> &mut Self {
        self.schema.concepts.insert(c.clone());
        self
    }

    pub fn property(&mut self, p: &Iri, kind: PropertyKind) -> &mut Self {
        self.schema.properties.insert(p.clone(), kind);
        self
    }

    pub fn subclass(&mut self, child: &Iri, parent: &Iri) -> &mut Self {
        self.schema
            .hierarchy
            .insert((child.clone(), parent.clone()));
        self
    }

    pub fn domain(&mut self, p: &Iri, c: &Iri) -> &mut Self {
        self.schema
            .signatures
            .entry(p.clone())
            .or_default()
            .domains
            .insert(c.clone());
        self
    }

    pub fn range(&mut self, p: &Iri, r: &Iri) -> &mut Self {
        self.schema
            .signatures
            .entry(p.clone())
            .or_default()
            .ranges
            .insert(r.clone());
        self
    }

    pub fn annotation(&mut self, entity: &Iri, text: impl Into<String>) -> &mut Self {
        self.schema
            .annotations
            .insert((entity.clone(), text.into()));
        self
    }

    pub fn instance(&mut self, i: &Iri) -> &mut Self {
        self.instances.insert(i.clone());
        self
    }

    pub fn instance_of(&mut self, i: &Iri, c: &Iri) -> &mut Self {
        self.instances.insert(i.clone());
        self.concept_inst
            .entry(c.clone())
            .or_default()
            .insert(i.clone());
        self
    }

    /// Records `p(subject, object)`; the subject (and an individual object)
    /// become instances, a literal object joins the literal set.
    pub fn assert(&mut self, subject: &Iri, p: &Iri, object: Object) -> &mut Self {
        self.instances.insert(subject.clone());
        match &object {
            Object::Instance(o) => {
                self.instances.insert(o.clone());
            }
            Object::Literal(l) => {
                self.literals.insert(l.clone());
            }
        }
        self.property_inst
            .entry(p.clone())
            .or_default()
            .insert((subject.clone(), object));
        self
    }

    pub fn label(&mut self, iri: &Iri, label: impl Into<String>) -> &mut Self {
        self.labels.insert(iri.clone(), label.into());
        self
    }

    pub fn instance_comment(&mut self, i: &Iri, text: impl Into<String>) -> &mut Self {
        self.instance_comments.insert((i.clone(), text.into()));
        self
    }

    pub fn instances(&self) -> &BTreeSet<Iri> {
        &self.instances
    }

    pub fn build(self) -> Result<KnowledgeBase, ModelError> {
        let KbBuilder {
            schema,
            instances,
            literals,
            concept_inst,
            property_inst,
            labels,
            instance_comments,
        } = self;

        for p in schema.properties.keys() {
            if schema.concepts.contains(p) {
                return Err(conflict(p, Role::Concept, Role::Property));
            }
        }
        for i in &instances {
            if schema.concepts.contains(i) {
                return Err(conflict(i, Role::Concept, Role::Instance));
            }
            if schema.properties.contains_key(i) {
                return Err(conflict(i, Role::Property, Role::Instance));
            }
        }
        for (child, parent) in &schema.hierarchy {
            for c in [child, parent] {
                if !schema.concepts.contains(c) {
                    return Err(ModelError::UnknownConcept(c.clone()));
                }
            }
        }
        for p in schema.signatures.keys() {
            if !schema.properties.contains_key(p) {
                return Err(ModelError::UnknownProperty(p.clone()));
            }
        }
        for (e, _) in &schema.annotations {
            if !schema.concepts.contains(e) && !schema.properties.contains_key(e) {
                return Err(ModelError::UnknownConcept(e.clone()));
            }
        }
        for c in concept_inst.keys() {
            if !schema.concepts.contains(c) {
                return Err(ModelError::UnknownConcept(c.clone()));
            }
        }
        for p in property_inst.keys() {
            if !schema.properties.contains_key(p) {
                return Err(ModelError::UnknownProperty(p.clone()));
            }
        }
        for (i, _) in &instance_comments {
            if !instances.contains(i) {
                return Err(ModelError::UnknownInstance(i.clone()));
            }
        }

        let mut parents: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        let mut children: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for (child, parent) in &schema.hierarchy {
            parents
                .entry(child.clone())
                .or_default()
                .insert(parent.clone());
            children
                .entry(parent.clone())
                .or_default()
                .insert(child.clone());
        }
        if let Some(cycle) = find_cycle(&schema.concepts, &parents) {
            return Err(ModelError::Cycle(cycle));
        }
        let depths = shortest_depths(&schema.concepts, &parents, &children);

        let mut out: BTreeMap<Iri, Vec<(Iri, Object)>> = BTreeMap::new();
        for (p, pairs) in &property_inst {
            for (s, o) in pairs {
                out.entry(s.clone())
                    .or_default()
                    .push((p.clone(), o.clone()));
            }
        }
        for v in out.values_mut() {
            v.sort();
        }

        let concept_inst = concept_inst
            .into_iter()
            .filter(|(_, members)| !members.is_empty())
            .collect();
        let property_inst = property_inst
            .into_iter()
            .filter(|(_, pairs)| !pairs.is_empty())
            .collect();

        Ok(KnowledgeBase {
            schema,
            instances,
            literals,
            concept_inst,
            property_inst,
            labels,
            instance_comments,
            parents,
            children,
            depths,
            out,
        })
    }
}

fn conflict(iri: &Iri, first: Role, second: Role) -> ModelError {
    ModelError::RoleConflict {
        iri: iri.clone(),
        first,
        second,
    }
}

/// Returns one cycle (first node repeated at the end) if the child→parent
/// graph has any.
pub(crate) fn find_cycle(
    nodes: &BTreeSet<Iri>,
    parents: &BTreeMap<Iri, BTreeSet<Iri>>,
) -> Option<Vec<Iri>> {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Fresh,
        Open,
        Done,
    }
    let mut state: BTreeMap<&Iri, State> = nodes.iter().map(|n| (n, State::Fresh)).collect();
    let empty = BTreeSet::new();
    for root in nodes {
        if state[root] != State::Fresh {
            continue;
        }
        // iterative DFS keeping the current path
        let mut path: Vec<&Iri> = vec![root];
        let mut iters = vec![parents.get(root).unwrap_or(&empty).iter()];
        state.insert(root, State::Open);
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(next) => match state.get(next).copied().unwrap_or(State::Done) {
                    State::Open => {
                        let start = path
                            .iter()
                            .position(|n| *n == next)
                            .expect("open node is on path");
                        let mut cycle: Vec<Iri> =
                            path[start..].iter().map(|n| (*n).clone()).collect();
                        cycle.push(next.clone());
                        return Some(cycle);
                    }
                    State::Fresh => {
                        state.insert(next, State::Open);
                        path.push(next);
                        iters.push(parents.get(next).unwrap_or(&empty).iter());
                    }
                    State::Done => {}
                },
                None => {
                    let done = path.pop().expect("path tracks iterators");
                    state.insert(done, State::Done);
                    iters.pop();
                }
            }
        }
    }
    None
}

/// Multi-source BFS downward from every parentless concept.
fn shortest_depths(
    nodes: &BTreeSet<Iri>,
    parents: &BTreeMap<Iri, BTreeSet<Iri>>,
    children: &BTreeMap<Iri, BTreeSet<Iri>>,
) -> BTreeMap<Iri, usize> {
    let mut depths = BTreeMap::new();
    let mut queue = VecDeque::new();
    for n in nodes {
        if parents.get(n).is_none_or(BTreeSet::is_empty) {
            depths.insert(n.clone(), 1);
            queue.push_back(n);
        }
    }
    while let Some(n) = queue.pop_front() {
        let d = depths[n];
        for child in children.get(n).into_iter().flatten() {
            if !depths.contains_key(child) {
                depths.insert(child.clone(), d + 1);
                queue.push_back(child);
            }
        }
    }
    depths
}
