//! Composable instructional-design ontologies with an Indic-script engine,
//! a primer compiler, curriculum checks and a content packager.
//!
//! The pieces fit together as a pipeline:
//!
//! 1. [`script`] decomposes sentences of an abugida script into words,
//!    syllables and phonemes, and composes candidate words from learnt units.
//! 2. [`compiler`] turns a declarative primer spec plus a lexicon and an act
//!    template into a complete [`ontology::InstructionalDesign`].
//! 3. [`ontology`] models, parses, serializes, validates and diffs designs.
//! 4. [`validator`] runs whole-curriculum checks and a simulated learner.
//! 5. [`packager`] emits per-design content packages and language variants.
//! 6. [`pipeline`] batches the whole flow for many primers at once.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and the `idont` binary for the command-line interface.

pub mod compiler;
pub mod id;
pub mod ontology;
pub mod packager;
pub mod pipeline;
pub mod script;
pub mod validator;

pub use id::Id;
pub use ontology::{InstructionalDesign, VariantDelta, Violation};
pub use script::{Lexicon, ScriptProfile};
