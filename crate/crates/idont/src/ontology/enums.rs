//! Closed enumerations of the design vocabulary.
//!
//! Every enumeration is closed: parsing an unknown token fails and the error
//! names the offending token.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} `{token}`")]
pub struct UnknownToken {
    pub kind: &'static str,
    pub token: String,
}

/// Defines a closed string-backed enum: canonical lowerCamelCase token,
/// `FromStr`/`Display`, serde as the token string, and an `ALL` table.
macro_rules! string_enum {
    ($(#[$meta:meta])* $name:ident, $kind:literal, { $($variant:ident => $token:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Canonical document token (lowerCamelCase).
            pub fn token(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }

            pub fn concept_name() -> &'static str {
                stringify!($name)
            }
        }

        impl FromStr for $name {
            type Err = UnknownToken;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($token => Ok($name::$variant),)+
                    _ => Err(UnknownToken { kind: $kind, token: s.to_string() }),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.token())
            }
        }

        impl serde::Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.token())
            }
        }

        impl<'de> serde::Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let raw = String::deserialize(deserializer)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_enum!(
    /// The kinds of acts a lesson play is divided into.
    ActKind, "act kind", {
        Motivating => "motivating",
        NewPhonemes => "newPhonemes",
        FormingWordsAndSounds => "formingWordsAndSounds",
        SyllableBank => "syllableBank",
        Comparing => "comparing",
        LearningRules => "learningRules",
        WritingInstructions => "writingInstructions",
        Exercise => "exercise",
        Summary => "summary",
    }
);

string_enum!(
    /// The kinds of scenes an act is divided into.
    SceneKind, "scene kind", {
        SimilarSounds => "similarSounds",
        SimilarSyllables => "similarSyllables",
        InspectingSyllableBank => "inspectingSyllableBank",
        SyllableFormationRules => "syllableFormationRules",
        FamiliarWords => "familiarWords",
        SyllableBanner => "syllableBanner",
        FormingWords => "formingWords",
    }
);

string_enum!(
    /// First-principles tags attachable to instructions.
    MerrillPrinciple, "principle", {
        Activation => "activation",
        Demonstration => "demonstration",
        Application => "application",
        Integration => "integration",
    }
);

string_enum!(
    /// Concrete activity kinds performed inside an instruction.
    ActivityKind, "activity kind", {
        Learning => "learning",
        Support => "support",
        Structure => "structure",
        Guidance => "guidance",
        Coaching => "coaching",
        Reflection => "reflection",
        Interpreted => "interpreted",
        Monitored => "monitored",
    }
);

string_enum!(
    /// A three-step ordered level, used for goal priority and animation speed.
    Level, "level", {
        Low => "low",
        Medium => "medium",
        High => "high",
    }
);

string_enum!(
    /// The process granularity a goal attaches to.
    Granularity, "granularity", {
        Play => "play",
        Act => "act",
        Scene => "scene",
        Instruction => "instruction",
    }
);

string_enum!(
    /// Knowledge dimension of a goal.
    KnowledgeLevel, "knowledge level", {
        Factual => "factual",
        Conceptual => "conceptual",
        Procedural => "procedural",
        Metacognitive => "metacognitive",
    }
);

string_enum!(
    /// Cognitive-process dimension of a goal.
    CognitiveLevel, "cognitive level", {
        Remember => "remember",
        Understand => "understand",
        Apply => "apply",
        Analyze => "analyze",
        Evaluate => "evaluate",
        Create => "create",
    }
);

string_enum!(
    /// Raw media kind of a content fragment.
    FragmentKind, "fragment kind", {
        Text => "text",
        Audio => "audio",
        Animation => "animation",
        Video => "video",
        Image => "image",
    }
);

string_enum!(
    /// Aggregation level of a learning object.
    LearningObjectKind, "learning object kind", {
        PlayObject => "playObject",
        ActObject => "actObject",
        SceneObject => "sceneObject",
        InstructionObject => "instructionObject",
    }
);

/// Pedagogical typing of a content object. The core set is closed; domain
/// extensions carry a free-form name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContentType {
    Fact,
    Case,
    Rule,
    Model,
    Theory,
    Extended(String),
}

impl ContentType {
    pub const CORE: &'static [ContentType] = &[
        ContentType::Fact,
        ContentType::Case,
        ContentType::Rule,
        ContentType::Model,
        ContentType::Theory,
    ];

    pub fn token(&self) -> &str {
        match self {
            ContentType::Fact => "fact",
            ContentType::Case => "case",
            ContentType::Rule => "rule",
            ContentType::Model => "model",
            ContentType::Theory => "theory",
            ContentType::Extended(name) => name,
        }
    }
}

impl fmt::Display for ContentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContentType::Extended(name) => write!(f, "extended:{name}"),
            core => f.write_str(core.token()),
        }
    }
}

impl FromStr for ContentType {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "fact" => ContentType::Fact,
            "case" => ContentType::Case,
            "rule" => ContentType::Rule,
            "model" => ContentType::Model,
            "theory" => ContentType::Theory,
            other => match other.strip_prefix("extended:") {
                Some(name) if !name.is_empty() => ContentType::Extended(name.to_string()),
                _ => {
                    return Err(UnknownToken {
                        kind: "content type",
                        token: other.to_string(),
                    })
                }
            },
        })
    }
}

impl serde::Serialize for ContentType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ContentType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_kind_names_token() {
        let err = "DancingAct".parse::<ActKind>().unwrap_err();
        assert_eq!(err.token, "DancingAct");
        assert!(err.to_string().contains("DancingAct"));
    }

    #[test]
    fn tokens_roundtrip() {
        for kind in ActKind::ALL {
            assert_eq!(kind.token().parse::<ActKind>().unwrap(), *kind);
        }
        for kind in SceneKind::ALL {
            assert_eq!(kind.token().parse::<SceneKind>().unwrap(), *kind);
        }
    }

    #[test]
    fn content_type_extended() {
        let t: ContentType = "extended:worksheet".parse().unwrap();
        assert_eq!(t, ContentType::Extended("worksheet".into()));
        assert_eq!(t.to_string(), "extended:worksheet");
        assert!("extended:".parse::<ContentType>().is_err());
    }
}
