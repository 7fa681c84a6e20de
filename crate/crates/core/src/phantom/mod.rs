//! Phantom extensions: the canonical diagram attached to `α: R → M`, the
//! closure test on `ν̃`, module modifications along parameter relations and
//! the certificates that accompany them.

mod diagram;
mod independence;
mod modification;
mod sequence;

pub use diagram::{alpha_avoids_mm, canonical_diagram, factor_phantom_check, phantom_check, splitting, ExtensionDiagram, FactorReport};
pub use independence::{padded_diagram, presentation_independence_test, IndependenceReport, Redundancy};
pub use modification::{
    modify, sop_certificate_verify, sop_relation_kernel, IdentityCheck, ModificationResult,
    SopCertificateReport, SopRelation,
};
pub use sequence::{modification_sequence, SequenceReport, SopSource, StepReport};

#[cfg(test)]
mod tests;
