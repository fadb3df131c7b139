//! Typed model of the instructional-design ontologies with parsing,
//! serialization, schema validation, composition and diffing.

pub mod canonical;
pub mod diff;
pub mod enums;
pub mod model;
pub mod owl;
pub mod validate;

pub use diff::{
    apply_delta, diff, substitute_guidelines, ContentChange, FieldChange, GoalChange,
    GuidelineChange, StructuralChange, UiChange, VariantDelta,
};
pub use enums::*;
pub use model::*;
pub use validate::{validate_schema, Violation};

use thiserror::Error;

use crate::id::Id;

#[derive(Debug, Error)]
pub enum OntologyError {
    /// Document syntax error; the message carries line and column.
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(Id),
    #[error("dangling reference from {from} to `{to}`")]
    DanglingReference { from: String, to: Id },
    #[error("design failed validation with {} violation(s):\n{}", .0.len(), validate::render_violations(.0))]
    Validation(Vec<Violation>),
    #[error("unknown process node `{0}`")]
    UnknownProcessNode(Id),
    #[error("cannot apply delta: {0}")]
    Apply(String),
}

/// The parts a design is composed from, and that decomposition recovers.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignParts {
    pub id: Id,
    pub context: ContextSpec,
    pub goals: Vec<GoalNode>,
    pub process: ProcessTree,
    pub content: ContentCatalog,
    pub ui: UiConfig,
    pub metadata: std::collections::BTreeMap<String, String>,
}

/// Stitches parts into a validated design. Cross-part references must
/// resolve and the result must pass schema validation.
pub fn compose(parts: DesignParts) -> Result<InstructionalDesign, OntologyError> {
    let mut design = InstructionalDesign {
        id: parts.id,
        context: parts.context,
        goals: parts.goals,
        process: parts.process,
        content: parts.content,
        ui: parts.ui,
        metadata: parts.metadata,
    };
    design.normalize();
    canonical::check_references(&design)?;
    let violations = validate::validate_schema(&design);
    if !violations.is_empty() {
        return Err(OntologyError::Validation(violations));
    }
    Ok(design)
}

/// Splits a design back into its parts.
pub fn decompose(design: &InstructionalDesign) -> DesignParts {
    DesignParts {
        id: design.id.clone(),
        context: design.context.clone(),
        goals: design.goals.clone(),
        process: design.process.clone(),
        content: design.content.clone(),
        ui: design.ui.clone(),
        metadata: design.metadata.clone(),
    }
}

/// Parses a design document in either supported format: canonical JSON, or
/// the OWL/XML projection (detected by a leading `<`).
pub fn parse_design(document: &str) -> Result<InstructionalDesign, OntologyError> {
    let mut design = if document.trim_start().starts_with('<') {
        owl::parse_owl_xml(document)?
    } else {
        canonical::parse_json(document)?
    };
    design.normalize();
    canonical::check_references(&design)?;
    Ok(design)
}

/// Serializes a design to the canonical JSON document.
pub fn serialize_canonical(design: &InstructionalDesign) -> String {
    canonical::to_json(design)
}

/// Serializes a design to the OWL/XML projection with default options.
pub fn serialize_owl_xml(design: &InstructionalDesign) -> String {
    owl::serialize_owl_xml(design, &owl::OwlOptions::default())
}
