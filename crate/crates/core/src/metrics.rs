//! The nine question-generation fitness metrics and profile normalisation.
//!
//! | key     | metric                          | range   |
//! |---------|---------------------------------|---------|
//! | `pc`    | pattern coverage                | [0, 1]  |
//! | `cr`    | class richness                  | [0, 1]  |
//! | `p`     | average population              | ≥ 0     |
//! | `ir`    | inheritance richness            | ≥ 0     |
//! | `rd`    | relationship diversity          | [0, 1]  |
//! | `rrBar` | average relationship richness   | [0, 1]  |
//! | `cnBar` | average connectivity            | ≥ 0     |
//! | `sf`    | sibling fan-outness             | ≥ 0     |
//! | `dBar`  | average depth                   | ≥ 0     |
//!
//! A metric whose denominator is empty is *undefined*; [`evaluate_all`]
//! reports it as 0 and lists it in [`MetricReport::undefined`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iri::Iri;
use crate::model::KnowledgeBase;
use crate::rdf::vocab;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("{metric} is undefined: {reason}")]
    Undefined {
        metric: Metric,
        reason: &'static str,
    },
    #[error("no reports to normalise")]
    EmptyInput,
    #[error("the pattern-fragment inventory is empty")]
    EmptyFragmentInventory,
}

/// Atomic triple-pattern kinds the question templates are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FragmentKind {
    ConceptInstantiation,
    PropertyInstantiation,
    Subsumption,
    Annotation,
}

impl FragmentKind {
    pub const ALL: [FragmentKind; 4] = [
        FragmentKind::ConceptInstantiation,
        FragmentKind::PropertyInstantiation,
        FragmentKind::Subsumption,
        FragmentKind::Annotation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FragmentKind::ConceptInstantiation => "concept-instantiation",
            FragmentKind::PropertyInstantiation => "property-instantiation",
            FragmentKind::Subsumption => "subsumption",
            FragmentKind::Annotation => "annotation",
        }
    }
}

impl FromStr for FragmentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FragmentKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown pattern fragment '{s}'"))
    }
}

/// Denominator used by sibling fan-outness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SfDenominator {
    /// Number of populated concepts.
    #[default]
    Populated,
    /// Number of all concepts.
    All,
}

impl FromStr for SfDenominator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "populated" => Ok(SfDenominator::Populated),
            "all" => Ok(SfDenominator::All),
            _ => Err(format!(
                "unknown SF denominator '{s}' (expected populated or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsConfig {
    pub fragments: Vec<FragmentKind>,
    pub sf_denominator: SfDenominator,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            fragments: FragmentKind::ALL.to_vec(),
            sf_denominator: SfDenominator::Populated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "pc")]
    PatternCoverage,
    #[serde(rename = "cr")]
    ClassRichness,
    #[serde(rename = "p")]
    AveragePopulation,
    #[serde(rename = "ir")]
    InheritanceRichness,
    #[serde(rename = "rd")]
    RelationshipDiversity,
    #[serde(rename = "rrBar")]
    AverageRelationshipRichness,
    #[serde(rename = "cnBar")]
    AverageConnectivity,
    #[serde(rename = "sf")]
    SiblingFanOutness,
    #[serde(rename = "dBar")]
    AverageDepth,
}

impl Metric {
    pub const ALL: [Metric; 9] = [
        Metric::PatternCoverage,
        Metric::ClassRichness,
        Metric::AveragePopulation,
        Metric::InheritanceRichness,
        Metric::RelationshipDiversity,
        Metric::AverageRelationshipRichness,
        Metric::AverageConnectivity,
        Metric::SiblingFanOutness,
        Metric::AverageDepth,
    ];

    /// Field name used in JSON and CSV output.
    pub fn key(self) -> &'static str {
        match self {
            Metric::PatternCoverage => "pc",
            Metric::ClassRichness => "cr",
            Metric::AveragePopulation => "p",
            Metric::InheritanceRichness => "ir",
            Metric::RelationshipDiversity => "rd",
            Metric::AverageRelationshipRichness => "rrBar",
            Metric::AverageConnectivity => "cnBar",
            Metric::SiblingFanOutness => "sf",
            Metric::AverageDepth => "dBar",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Metric::PatternCoverage => "PC",
            Metric::ClassRichness => "CR",
            Metric::AveragePopulation => "P",
            Metric::InheritanceRichness => "IR",
            Metric::RelationshipDiversity => "RD",
            Metric::AverageRelationshipRichness => "RR",
            Metric::AverageConnectivity => "Cn",
            Metric::SiblingFanOutness => "SF",
            Metric::AverageDepth => "D",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::PatternCoverage => "Pattern Coverage",
            Metric::ClassRichness => "Class Richness",
            Metric::AveragePopulation => "Average Population",
            Metric::InheritanceRichness => "Inheritance Richness",
            Metric::RelationshipDiversity => "Relationship Diversity",
            Metric::AverageRelationshipRichness => "Av. Relationship Richness",
            Metric::AverageConnectivity => "Average Connectivity",
            Metric::SiblingFanOutness => "Sibling Fan-Outness",
            Metric::AverageDepth => "Average Depth",
        }
    }

    /// Metrics that are ratios in [0, 1] by construction.
    pub fn is_bounded(self) -> bool {
        matches!(
            self,
            Metric::PatternCoverage
                | Metric::ClassRichness
                | Metric::RelationshipDiversity
                | Metric::AverageRelationshipRichness
        )
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub pc: f64,
    pub cr: f64,
    pub p: f64,
    pub ir: f64,
    pub rd: f64,
    #[serde(rename = "rrBar")]
    pub rr_bar: f64,
    #[serde(rename = "cnBar")]
    pub cn_bar: f64,
    pub sf: f64,
    #[serde(rename = "dBar")]
    pub d_bar: f64,
}

impl MetricValues {
    pub fn get(&self, m: Metric) -> f64 {
        match m {
            Metric::PatternCoverage => self.pc,
            Metric::ClassRichness => self.cr,
            Metric::AveragePopulation => self.p,
            Metric::InheritanceRichness => self.ir,
            Metric::RelationshipDiversity => self.rd,
            Metric::AverageRelationshipRichness => self.rr_bar,
            Metric::AverageConnectivity => self.cn_bar,
            Metric::SiblingFanOutness => self.sf,
            Metric::AverageDepth => self.d_bar,
        }
    }

    pub fn set(&mut self, m: Metric, v: f64) {
        let slot = match m {
            Metric::PatternCoverage => &mut self.pc,
            Metric::ClassRichness => &mut self.cr,
            Metric::AveragePopulation => &mut self.p,
            Metric::InheritanceRichness => &mut self.ir,
            Metric::RelationshipDiversity => &mut self.rd,
            Metric::AverageRelationshipRichness => &mut self.rr_bar,
            Metric::AverageConnectivity => &mut self.cn_bar,
            Metric::SiblingFanOutness => &mut self.sf,
            Metric::AverageDepth => &mut self.d_bar,
        };
        *slot = v;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Counts {
    pub concepts: usize,
    pub populated_concepts: usize,
    pub instances: usize,
    pub subsumptions: usize,
    pub assertions: usize,
    pub populated_siblings: usize,
    pub properties: usize,
    pub memberships: usize,
    pub annotations: usize,
}

impl Counts {
    pub fn of(kb: &KnowledgeBase) -> Counts {
        Counts {
            concepts: kb.schema().concepts().len(),
            populated_concepts: kb.populated_concepts().len(),
            instances: kb.instances().len(),
            subsumptions: kb.schema().hierarchy().len(),
            assertions: kb.assertion_count(),
            populated_siblings: populated_sibling_concepts(kb).len(),
            properties: kb.schema().property_count(),
            memberships: kb.membership_count(),
            annotations: kb.schema().annotations().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricReport {
    pub ontology_id: String,
    #[serde(flatten)]
    pub values: MetricValues,
    pub used_fragments: BTreeSet<FragmentKind>,
    pub counts: Counts,
    /// Metrics whose denominator was empty; their value is reported as 0.
    pub undefined: BTreeSet<Metric>,
}

impl MetricReport {
    pub fn value(&self, m: Metric) -> f64 {
        self.values.get(m)
    }

    pub fn is_undefined(&self, m: Metric) -> bool {
        self.undefined.contains(&m)
    }
}

fn ratio(metric: Metric, num: usize, den: usize, reason: &'static str) -> Result<f64, MetricError> {
    if den == 0 {
        Err(MetricError::Undefined { metric, reason })
    } else {
        Ok(num as f64 / den as f64)
    }
}

/// Fragment kinds with at least one matching assertion.
pub fn used_fragments(kb: &KnowledgeBase) -> BTreeSet<FragmentKind> {
    let mut used = BTreeSet::new();
    if kb.membership_count() > 0 {
        used.insert(FragmentKind::ConceptInstantiation);
    }
    if kb.assertion_count() > 0 {
        used.insert(FragmentKind::PropertyInstantiation);
    }
    if !kb.schema().hierarchy().is_empty() {
        used.insert(FragmentKind::Subsumption);
    }
    if !kb.schema().annotations().is_empty() {
        used.insert(FragmentKind::Annotation);
    }
    used
}

/// Share of the fragment inventory the knowledge base instantiates.
pub fn pattern_coverage(
    kb: &KnowledgeBase,
    inventory: &[FragmentKind],
) -> Result<(f64, BTreeSet<FragmentKind>), MetricError> {
    let inventory: BTreeSet<FragmentKind> = inventory.iter().copied().collect();
    if inventory.is_empty() {
        return Err(MetricError::EmptyFragmentInventory);
    }
    let used: BTreeSet<FragmentKind> = used_fragments(kb)
        .intersection(&inventory)
        .copied()
        .collect();
    Ok((used.len() as f64 / inventory.len() as f64, used))
}

pub fn class_richness(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    ratio(
        Metric::ClassRichness,
        kb.populated_concepts().len(),
        kb.schema().concepts().len(),
        "no classes",
    )
}

pub fn average_population(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    ratio(
        Metric::AveragePopulation,
        kb.instances().len(),
        kb.schema().concepts().len(),
        "no classes",
    )
}

pub fn inheritance_richness(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    ratio(
        Metric::InheritanceRichness,
        kb.schema().hierarchy().len(),
        kb.schema().concepts().len(),
        "no classes",
    )
}

pub fn relationship_diversity(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    let assertions = kb.assertion_count();
    ratio(
        Metric::RelationshipDiversity,
        assertions,
        assertions + kb.schema().hierarchy().len(),
        "no property assertions and no subsumptions",
    )
}

/// Properties counted as defined for `c`: those whose domain is `c`, one of
/// its ancestors, or `owl:Thing`. When no property declares any domain,
/// every property counts as defined for every populated class.
pub fn defined_properties<'a>(kb: &'a KnowledgeBase, c: &Iri) -> BTreeSet<&'a Iri> {
    let schema = kb.schema();
    let any_domain = schema.signatures().values().any(|s| !s.domains.is_empty());
    if !any_domain {
        if kb.instances_of(c).is_empty() {
            return BTreeSet::new();
        }
        return schema.properties().collect();
    }
    let mut scope = kb.ancestors(c);
    scope.insert(c);
    schema
        .signatures()
        .iter()
        .filter(|(_, sig)| {
            sig.domains
                .iter()
                .any(|d| d.as_str() == vocab::OWL_THING || scope.contains(d))
        })
        .map(|(p, _)| p)
        .collect()
}

/// Mean over classes with at least one defined property of the share of
/// those properties used by the class's instances.
pub fn average_relationship_richness(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for c in kb.schema().concepts() {
        let defined = defined_properties(kb, c);
        if defined.is_empty() {
            continue;
        }
        let used: BTreeSet<&Iri> = kb
            .instances_of(c)
            .iter()
            .flat_map(|i| kb.out_assertions(i).unwrap_or(&[]).iter().map(|(p, _)| p))
            .filter(|p| defined.contains(p))
            .collect();
        sum += used.len() as f64 / defined.len() as f64;
        n += 1;
    }
    if n == 0 {
        return Err(MetricError::Undefined {
            metric: Metric::AverageRelationshipRichness,
            reason: "no class has a defined property",
        });
    }
    Ok(sum / n as f64)
}

pub fn average_connectivity(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    let total: usize = kb
        .instances()
        .iter()
        .map(|i| kb.out_assertions(i).map(<[_]>::len).unwrap_or(0))
        .sum();
    ratio(
        Metric::AverageConnectivity,
        total,
        kb.instances().len(),
        "no instances",
    )
}

/// Populated concepts with at least one populated sibling.
pub fn populated_sibling_concepts(kb: &KnowledgeBase) -> BTreeSet<&Iri> {
    let populated = kb.populated_concepts();
    populated
        .iter()
        .copied()
        .filter(|c| {
            kb.siblings_of(c)
                .map(|sibs| sibs.iter().any(|s| populated.contains(s)))
                .unwrap_or(false)
        })
        .collect()
}

pub fn sibling_fan_outness(
    kb: &KnowledgeBase,
    denominator: SfDenominator,
) -> Result<f64, MetricError> {
    let num = populated_sibling_concepts(kb).len();
    match denominator {
        SfDenominator::Populated => ratio(
            Metric::SiblingFanOutness,
            num,
            kb.populated_concepts().len(),
            "no populated classes",
        ),
        SfDenominator::All => ratio(
            Metric::SiblingFanOutness,
            num,
            kb.schema().concepts().len(),
            "no classes",
        ),
    }
}

pub fn average_depth(kb: &KnowledgeBase) -> Result<f64, MetricError> {
    let concepts = kb.schema().concepts();
    let total: usize = concepts
        .iter()
        .map(|c| kb.concept_depth(c).expect("every concept has a depth"))
        .sum();
    ratio(Metric::AverageDepth, total, concepts.len(), "no classes")
}

/// Runs all nine metrics. Undefined metrics are reported as 0 and flagged.
pub fn evaluate_all(kb: &KnowledgeBase, ontology_id: &str, config: &MetricsConfig) -> MetricReport {
    let mut values = MetricValues::default();
    let mut undefined = BTreeSet::new();
    let mut record = |m: Metric, r: Result<f64, MetricError>| match r {
        Ok(v) => values.set(m, v),
        Err(_) => {
            values.set(m, 0.0);
            undefined.insert(m);
        }
    };
    let (pc, used) = match pattern_coverage(kb, &config.fragments) {
        Ok((v, used)) => (Ok(v), used),
        Err(e) => (Err(e), BTreeSet::new()),
    };
    record(Metric::PatternCoverage, pc);
    record(Metric::ClassRichness, class_richness(kb));
    record(Metric::AveragePopulation, average_population(kb));
    record(Metric::InheritanceRichness, inheritance_richness(kb));
    record(Metric::RelationshipDiversity, relationship_diversity(kb));
    record(
        Metric::AverageRelationshipRichness,
        average_relationship_richness(kb),
    );
    record(Metric::AverageConnectivity, average_connectivity(kb));
    record(
        Metric::SiblingFanOutness,
        sibling_fan_outness(kb, config.sf_denominator),
    );
    record(Metric::AverageDepth, average_depth(kb));
    MetricReport {
        ontology_id: ontology_id.to_string(),
        values,
        used_fragments: used,
        counts: Counts::of(kb),
        undefined,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalizedProfile {
    pub ontology_id: String,
    #[serde(flatten)]
    pub values: MetricValues,
}

/// Bounded metrics pass through; every other metric is divided by its
/// maximum over the input (an all-zero column stays zero).
pub fn normalize_profiles(reports: &[MetricReport]) -> Result<Vec<NormalizedProfile>, MetricError> {
    if reports.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    let mut out: Vec<NormalizedProfile> = reports
        .iter()
        .map(|r| NormalizedProfile {
            ontology_id: r.ontology_id.clone(),
            values: r.values,
        })
        .collect();
    for m in Metric::ALL.into_iter().filter(|m| !m.is_bounded()) {
        let max = reports.iter().map(|r| r.value(m)).fold(0.0_f64, f64::max);
        for profile in &mut out {
            let v = profile.values.get(m);
            profile.values.set(m, if max > 0.0 { v / max } else { 0.0 });
        }
    }
    Ok(out)
}

/// One-decimal rounding used by the text rendering.
pub fn round1(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Object, PropertyKind};

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://e/{s}")).unwrap()
    }

    fn empty_kb() -> KnowledgeBase {
        KnowledgeBase::builder().build().unwrap()
    }

    #[test]
    fn empty_kb_is_all_zero_with_every_flag() {
        let report = evaluate_all(&empty_kb(), "empty", &MetricsConfig::default());
        for m in Metric::ALL {
            assert_eq!(report.value(m), 0.0, "{m}");
        }
        // PC is defined (0 of 4 fragments); every ratio over classes,
        // instances or assertions is not
        let expected: BTreeSet<Metric> = Metric::ALL
            .into_iter()
            .filter(|m| *m != Metric::PatternCoverage)
            .collect();
        assert_eq!(report.undefined, expected);
        assert_eq!(
            pattern_coverage(&empty_kb(), &FragmentKind::ALL).unwrap().0,
            0.0
        );
    }

    #[test]
    fn class_richness_half_populated() {
        let mut b = KnowledgeBase::builder();
        for c in ["A", "B", "C", "D"] {
            b.concept(&iri(c));
        }
        b.instance_of(&iri("a"), &iri("A"))
            .instance_of(&iri("b"), &iri("B"));
        let kb = b.build().unwrap();
        assert_eq!(class_richness(&kb).unwrap(), 0.5);
        assert_eq!(average_population(&kb).unwrap(), 0.5);
    }

    #[test]
    fn no_instances_means_zero_population() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"));
        assert_eq!(average_population(&b.build().unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn inheritance_richness_of_a_chain() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .concept(&iri("B"))
            .concept(&iri("C"))
            .subclass(&iri("B"), &iri("A"))
            .subclass(&iri("C"), &iri("B"));
        let kb = b.build().unwrap();
        assert!((inheritance_richness(&kb).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn relationship_diversity_three_to_one() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .concept(&iri("B"))
            .subclass(&iri("B"), &iri("A"))
            .property(&iri("p"), PropertyKind::Object);
        for (s, o) in [("x", "y"), ("y", "z"), ("z", "x")] {
            b.assert(&iri(s), &iri("p"), Object::Instance(iri(o)));
        }
        let kb = b.build().unwrap();
        assert_eq!(relationship_diversity(&kb).unwrap(), 0.75);
    }

    #[test]
    fn relationship_richness_one_of_two() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .property(&iri("p"), PropertyKind::Object)
            .property(&iri("q"), PropertyKind::Object)
            .domain(&iri("p"), &iri("A"))
            .domain(&iri("q"), &iri("A"))
            .instance_of(&iri("a"), &iri("A"))
            .assert(&iri("a"), &iri("p"), Object::Instance(iri("a")));
        let kb = b.build().unwrap();
        assert_eq!(average_relationship_richness(&kb).unwrap(), 0.5);
    }

    #[test]
    fn relationship_richness_inherits_domains() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .concept(&iri("B"))
            .subclass(&iri("B"), &iri("A"))
            .property(&iri("p"), PropertyKind::Object)
            .domain(&iri("p"), &iri("A"))
            .instance_of(&iri("b"), &iri("B"))
            .assert(&iri("b"), &iri("p"), Object::Instance(iri("b")));
        let kb = b.build().unwrap();
        // A: 0/1 (no instances), B: 1/1
        assert_eq!(average_relationship_richness(&kb).unwrap(), 0.5);
    }

    #[test]
    fn relationship_richness_fallback_without_domains() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .concept(&iri("B"))
            .property(&iri("p"), PropertyKind::Object)
            .property(&iri("q"), PropertyKind::Datatype)
            .instance_of(&iri("a"), &iri("A"))
            .assert(&iri("a"), &iri("p"), Object::Instance(iri("a")));
        let kb = b.build().unwrap();
        // only A is populated, so only A has defined properties
        assert_eq!(average_relationship_richness(&kb).unwrap(), 0.5);
    }

    #[test]
    fn connectivity_is_an_arithmetic_mean() {
        let mut b = KnowledgeBase::builder();
        b.property(&iri("p"), PropertyKind::Datatype);
        b.assert(
            &iri("a"),
            &iri("p"),
            Object::Literal(crate::rdf::Literal::string("1")),
        );
        for v in ["1", "2", "3"] {
            b.assert(
                &iri("b"),
                &iri("p"),
                Object::Literal(crate::rdf::Literal::string(v)),
            );
        }
        let kb = b.build().unwrap();
        assert_eq!(average_connectivity(&kb).unwrap(), 2.0);
    }

    #[test]
    fn lone_populated_class_has_no_fan_out() {
        let mut b = KnowledgeBase::builder();
        b.concept(&iri("A"))
            .concept(&iri("B"))
            .subclass(&iri("B"), &iri("A"));
        b.instance_of(&iri("b"), &iri("B"));
        let kb = b.build().unwrap();
        assert_eq!(
            sibling_fan_outness(&kb, SfDenominator::Populated).unwrap(),
            0.0
        );
    }

    #[test]
    fn fan_out_denominators() {
        let mut b = KnowledgeBase::builder();
        for c in ["Z", "X", "Y", "W"] {
            b.concept(&iri(c));
        }
        b.subclass(&iri("X"), &iri("Z"))
            .subclass(&iri("Y"), &iri("Z"))
            .subclass(&iri("W"), &iri("Z"))
            .instance_of(&iri("x"), &iri("X"))
            .instance_of(&iri("y"), &iri("Y"))
            .instance_of(&iri("z"), &iri("Z"));
        let kb = b.build().unwrap();
        // populated {X, Y, Z}; X and Y are populated siblings
        assert!(
            (sibling_fan_outness(&kb, SfDenominator::Populated).unwrap() - 2.0 / 3.0).abs() < 1e-12
        );
        assert_eq!(sibling_fan_outness(&kb, SfDenominator::All).unwrap(), 0.5);
    }

    #[test]
    fn depth_mean() {
        let mut b = KnowledgeBase::builder();
        for c in ["A", "B", "C", "D"] {
            b.concept(&iri(c));
        }
        b.subclass(&iri("C"), &iri("A"))
            .subclass(&iri("D"), &iri("C"));
        let kb = b.build().unwrap();
        // depths {1, 1, 2, 3}
        assert_eq!(average_depth(&kb).unwrap(), 1.75);
    }

    #[test]
    fn flat_schema_has_depth_one() {
        let mut b = KnowledgeBase::builder();
        for c in ["A", "B", "C"] {
            b.concept(&iri(c));
        }
        let kb = b.build().unwrap();
        assert_eq!(average_depth(&kb).unwrap(), 1.0);
        assert_eq!(inheritance_richness(&kb).unwrap(), 0.0);
    }

    fn report_with(id: &str, p: f64) -> MetricReport {
        let mut r = evaluate_all(&empty_kb(), id, &MetricsConfig::default());
        r.values.p = p;
        r
    }

    #[test]
    fn normalisation_divides_by_column_max() {
        let reports: Vec<_> = [0.2, 2436.0, 517.0, 0.3]
            .iter()
            .enumerate()
            .map(|(i, p)| report_with(&format!("o{i}"), *p))
            .collect();
        let norm = normalize_profiles(&reports).unwrap();
        let got: Vec<f64> = norm.iter().map(|n| n.values.p).collect();
        // hand computation: x / 2436
        let expected = [0.0000821018, 1.0, 0.2122331691, 0.0001231527];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-9, "{g} vs {e}");
        }
        // all-zero column
        assert!(norm.iter().all(|n| n.values.ir == 0.0));
        assert_eq!(normalize_profiles(&[]), Err(MetricError::EmptyInput));
    }

    #[test]
    fn single_report_normalises_to_one() {
        let mut r = report_with("only", 7.0);
        r.values.d_bar = 2.3;
        r.values.pc = 0.5;
        let norm = normalize_profiles(&[r]).unwrap();
        assert_eq!(norm[0].values.p, 1.0);
        assert_eq!(norm[0].values.d_bar, 1.0);
        assert_eq!(norm[0].values.pc, 0.5);
    }

    #[test]
    fn report_json_uses_documented_field_names() {
        let r = report_with("x", 1.5);
        let json = serde_json::to_value(&r).unwrap();
        for key in [
            "ontologyId",
            "pc",
            "cr",
            "p",
            "ir",
            "rd",
            "rrBar",
            "cnBar",
            "sf",
            "dBar",
            "usedFragments",
            "counts",
            "undefined",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        let back: MetricReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
