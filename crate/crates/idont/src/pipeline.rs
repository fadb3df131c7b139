//! Batch pipeline.
