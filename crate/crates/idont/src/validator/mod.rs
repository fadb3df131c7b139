//! Curriculum checks.
