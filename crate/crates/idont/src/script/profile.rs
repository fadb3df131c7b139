//! Per-language script tables: codepoint classification, phoneme mapping and
//! syllable caps. Profiles are pure data; no codepoint knowledge is compiled
//! into the engine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::script::ScriptError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum UnitClass {
    IndependentVowel,
    Consonant,
    VowelSign,
    NasalSign,
    Virama,
    Digit,
    Other,
}

impl UnitClass {
    /// Classes whose units contribute phonemes and therefore need a
    /// phoneme-table entry.
    pub fn carries_sound(self) -> bool {
        matches!(
            self,
            UnitClass::IndependentVowel
                | UnitClass::Consonant
                | UnitClass::VowelSign
                | UnitClass::NasalSign
        )
    }
}

/// One classified codepoint of a script.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub codepoint: char,
    pub class: UnitClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScriptProfile {
    pub language_tag: String,
    units: BTreeMap<char, UnitEntry>,
    pub inherent_vowel: String,
    pub max_vowel_signs: usize,
    pub max_nasal_signs: usize,
    /// Codepoint range of the script block, used to distinguish "unknown
    /// unit of this script" from pass-through punctuation.
    block: Option<(char, char)>,
}

#[derive(Debug, Clone, PartialEq)]
struct UnitEntry {
    class: UnitClass,
    phonemes: Vec<String>,
}

// --- file format -----------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ProfileFile {
    language_tag: String,
    units: Vec<UnitFileEntry>,
    inherent_vowel: String,
    #[serde(default)]
    caps: CapsFile,
    #[serde(default)]
    block: Option<BlockFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitFileEntry {
    cp: String,
    class: UnitClass,
    #[serde(default)]
    phonemes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CapsFile {
    vowel_signs: usize,
    nasal_signs: usize,
}

impl Default for CapsFile {
    fn default() -> Self {
        CapsFile {
            vowel_signs: 1,
            nasal_signs: 1,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    from: String,
    to: String,
}

fn parse_codepoint(raw: &str) -> Result<char, ScriptError> {
    let bad = || ScriptError::ProfileInvalid(format!("bad codepoint `{raw}`"));
    if let Some(hex) = raw.strip_prefix("U+") {
        let value = u32::from_str_radix(hex, 16).map_err(|_| bad())?;
        return char::from_u32(value).ok_or_else(bad);
    }
    let mut chars = raw.chars();
    match (chars.next(), chars.next()) {
        (Some(ch), None) => Ok(ch),
        _ => Err(bad()),
    }
}

impl ScriptProfile {
    pub fn from_json(json: &str) -> Result<Self, ScriptError> {
        let file: ProfileFile =
            serde_json::from_str(json).map_err(|e| ScriptError::ProfileInvalid(e.to_string()))?;
        let mut units = BTreeMap::new();
        let mut virama_count = 0usize;
        for entry in file.units {
            let cp = parse_codepoint(&entry.cp)?;
            if entry.class == UnitClass::Virama {
                virama_count += 1;
            }
            if entry.class.carries_sound() && entry.phonemes.is_empty() {
                return Err(ScriptError::ProfileInvalid(format!(
                    "unit U+{:04X} of class {:?} has no phonemes",
                    cp as u32, entry.class
                )));
            }
            if units
                .insert(
                    cp,
                    UnitEntry {
                        class: entry.class,
                        phonemes: entry.phonemes,
                    },
                )
                .is_some()
            {
                return Err(ScriptError::ProfileInvalid(format!(
                    "duplicate unit U+{:04X}",
                    cp as u32
                )));
            }
        }
        if virama_count > 1 {
            return Err(ScriptError::ProfileInvalid(format!(
                "{virama_count} virama codepoints; a script may have at most one"
            )));
        }
        let block = match file.block {
            Some(b) => Some((parse_codepoint(&b.from)?, parse_codepoint(&b.to)?)),
            None => None,
        };
        Ok(ScriptProfile {
            language_tag: file.language_tag,
            units,
            inherent_vowel: file.inherent_vowel,
            max_vowel_signs: file.caps.vowel_signs,
            max_nasal_signs: file.caps.nasal_signs,
            block,
        })
    }

    /// The bundled profile for a language tag, if one ships with the crate.
    pub fn bundled(language_tag: &str) -> Option<Self> {
        let json = match language_tag {
            "te" => include_str!("../../data/profiles/te.json"),
            "hi" => include_str!("../../data/profiles/hi.json"),
            _ => return None,
        };
        Some(Self::from_json(json).expect("bundled profile is valid"))
    }

    pub fn class_of(&self, cp: char) -> Option<UnitClass> {
        self.units.get(&cp).map(|e| e.class)
    }

    pub fn phonemes_of(&self, cp: char) -> Option<&[String]> {
        self.units.get(&cp).map(|e| e.phonemes.as_slice())
    }

    pub fn in_block(&self, cp: char) -> bool {
        match self.block {
            Some((from, to)) => (from..=to).contains(&cp),
            None => false,
        }
    }

    /// All codepoints of a given class, in codepoint order.
    pub fn units_of_class(&self, class: UnitClass) -> Vec<char> {
        self.units
            .iter()
            .filter(|(_, e)| e.class == class)
            .map(|(cp, _)| *cp)
            .collect()
    }

    /// Every codepoint the profile classifies.
    pub fn known_units(&self) -> impl Iterator<Item = Unit> + '_ {
        self.units.iter().map(|(cp, e)| Unit {
            codepoint: *cp,
            class: e.class,
        })
    }

    /// Classifies one codepoint as a [`Unit`]. Unknown codepoints inside the
    /// script block are errors; anything else passes through as `Other`.
    pub fn unit(&self, cp: char) -> Result<Unit, ScriptError> {
        match self.class_of(cp) {
            Some(class) => Ok(Unit {
                codepoint: cp,
                class,
            }),
            None if self.in_block(cp) => Err(ScriptError::UnknownUnit { codepoint: cp }),
            None => Ok(Unit {
                codepoint: cp,
                class: UnitClass::Other,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_profile() {
        let profile = ScriptProfile::from_json(
            r#"{
                "languageTag": "xx",
                "units": [
                    {"cp": "U+0C15", "class": "consonant", "phonemes": ["k"]},
                    {"cp": "U+0C4D", "class": "virama"}
                ],
                "inherentVowel": "a"
            }"#,
        )
        .unwrap();
        assert_eq!(profile.max_vowel_signs, 1);
        assert_eq!(profile.class_of('క'), Some(UnitClass::Consonant));
        assert_eq!(profile.phonemes_of('క').unwrap(), ["k"]);
    }

    #[test]
    fn rejects_soundless_consonant() {
        let err = ScriptProfile::from_json(
            r#"{
                "languageTag": "xx",
                "units": [{"cp": "U+0C15", "class": "consonant"}],
                "inherentVowel": "a"
            }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("no phonemes"));
    }

    #[test]
    fn rejects_two_viramas() {
        let err = ScriptProfile::from_json(
            r#"{
                "languageTag": "xx",
                "units": [
                    {"cp": "U+0C4D", "class": "virama"},
                    {"cp": "U+094D", "class": "virama"}
                ],
                "inherentVowel": "a"
            }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("at most one"));
    }

    #[test]
    fn unknown_in_block_is_error() {
        let profile = ScriptProfile::from_json(
            r#"{
                "languageTag": "xx",
                "units": [{"cp": "U+0C15", "class": "consonant", "phonemes": ["k"]}],
                "inherentVowel": "a",
                "block": {"from": "U+0C00", "to": "U+0C7F"}
            }"#,
        )
        .unwrap();
        assert!(matches!(
            profile.unit('ఖ'),
            Err(ScriptError::UnknownUnit { codepoint: 'ఖ' })
        ));
        assert_eq!(profile.unit('.').unwrap().class, UnitClass::Other);
    }
}
