//! A workbench for GSN safety cases expressed in structured prose.
//!
//! What it does:
//!
//! - **model + rules** ([`model`], [`validate`], [`lint`]): the six GSN
//!   element kinds, the two relationship kinds, decorators, and the full
//!   structural connection matrix with text-form lints;
//! - **prose I/O** ([`prose`]): a line-oriented `.gsn.txt` format with a
//!   strict parser, a lenient extractor for free-form model output, and a
//!   round-trip-exact serializer;
//! - **diagrams** ([`dot`]): DOT rendering with the GSN shape vocabulary;
//! - **generation** ([`pipeline`]): prompt assembly for the four
//!   experiment variants, a pluggable completion endpoint with a
//!   deterministic replay client, and auditable run manifests;
//! - **measures** ([`eval`]): Kendall's tau, term-frequency and
//!   embedding-based cosine similarity, 1-5 rating aggregation, the
//!   grade mapping, and report tables;
//! - **reference corpus** ([`corpus`]): the map-system worked example and
//!   the two ground-truth skeletons.
//!
//! The `examples/` directory has one runnable program per capability;
//! `gsn-workbench` is the thin command-line front end over [`cli`].

pub mod cli;
pub mod config;
pub mod corpus;
pub mod dot;
pub mod eval;
pub mod lint;
pub mod model;
pub mod pipeline;
pub mod prose;
pub mod validate;

pub use model::{
    Decorator, DiagCode, Diagnostic, ElementKind, GsnElement, ModelError, Relationship,
    RelationshipKind, SafetyCase, Severity, Subject,
};
