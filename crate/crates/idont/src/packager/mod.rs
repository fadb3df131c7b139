//! Content packaging.
