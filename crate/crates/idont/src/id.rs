//! Identifiers for design elements.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

/// An element identifier: non-empty, lowercase ASCII letters, digits and
/// hyphens only (`[a-z0-9-]+`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Id(String);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid identifier `{0}`: expected non-empty [a-z0-9-]+")]
pub struct IdError(pub String);

impl Id {
    pub fn new(raw: impl Into<String>) -> Result<Self, IdError> {
        let raw = raw.into();
        if raw.is_empty()
            || !raw
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
        {
            return Err(IdError(raw));
        }
        Ok(Id(raw))
    }

    /// Builds an id from arbitrary text by lowercasing and replacing
    /// disallowed characters with hyphens.
    pub fn sanitized(raw: &str) -> Self {
        let mut out = String::with_capacity(raw.len());
        for ch in raw.chars() {
            match ch {
                'a'..='z' | '0'..='9' | '-' => out.push(ch),
                'A'..='Z' => out.push(ch.to_ascii_lowercase()),
                _ => out.push('-'),
            }
        }
        if out.is_empty() {
            out.push_str("x");
        }
        Id(out)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Id {
    type Err = IdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Id::new(s)
    }
}

impl Borrow<str> for Id {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Id {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Id::new(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_well_formed_ids() {
        assert!(Id::new("lesson-1-play").is_ok());
        assert!(Id::new("a").is_ok());
    }

    #[test]
    fn rejects_bad_ids() {
        assert!(Id::new("").is_err());
        assert!(Id::new("Lesson").is_err());
        assert!(Id::new("a_b").is_err());
        assert!(Id::new("క").is_err());
    }

    #[test]
    fn sanitizes() {
        assert_eq!(Id::sanitized("Primer TE").as_str(), "primer-te");
    }
}
