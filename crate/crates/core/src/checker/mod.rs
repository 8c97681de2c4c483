//! The trusted checker: replays `.rpf` scripts step by step against a
//! registry of previously verified theorems.
//!
//! Every `have` step is discharged by normalization, by degree-bounded ideal
//! membership over cited facts, or by instantiating a conditional rule whose
//! premises are themselves membership-checked against the steps so far. A
//! verified script exports its final equation, quantified over the script
//! variables, together with the ambient axioms and rules it assumed. Imports
//! are only usable where every assumption they were proved under is
//! available, up to renaming of variables.

mod config;
mod corpus;
mod registry;
mod statement;
mod verify;

pub use config::{ConfigError, OutputFormat, RunConfiguration, CONFIG_ENV};
pub use corpus::{load_script, verify_corpus, CorpusError, CorpusReport, Manifest, ManifestEntry};
pub use registry::{Provenance, RegisteredTheorem, RegistryError, TheoremRegistry};
pub use statement::{ConditionalRule, Identity, Statement, SubstitutionError};
pub use verify::{
    export_theorem, verify_script, ExportError, FailureReason, MembershipCheck, StepReport, VerificationReport,
    VerifyFailure, VerifyOptions,
};
