//! Primer compilation.
