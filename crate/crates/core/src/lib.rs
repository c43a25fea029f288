//! Evaluates how well an RDF ontology supports template-based automatic
//! question generation, and generates the questions themselves.
//!
//! The pipeline is: [`rdf::parse_document`] → [`ingest::build_knowledge_base`]
//! → [`metrics::evaluate_all`] and [`qgen::generate_all`].

pub mod config;
pub mod ingest;
pub mod iri;
pub mod metrics;
pub mod model;
pub mod qgen;
pub mod rdf;
pub mod report;

pub use iri::{Iri, IriError};
pub use model::{KbBuilder, KnowledgeBase, ModelError, Object, OntologySchema, PropertyKind};
