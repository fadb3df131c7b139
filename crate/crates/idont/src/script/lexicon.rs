//! Familiar-word lexicons and candidate-word enumeration over learnt units.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::script::decompose::Word;
use crate::script::profile::ScriptProfile;
use crate::script::ScriptError;

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub word: Word,
    /// Learner familiarity in [0, 1]; orders candidate lists.
    pub familiarity: f64,
    pub gloss: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFileEntry {
    surface: String,
    familiarity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gloss: Option<String>,
}

impl Lexicon {
    /// Loads a lexicon, decomposing every word under the profile. Duplicate
    /// surfaces, undecomposable words and out-of-range familiarity are
    /// rejected.
    pub fn from_json(json: &str, profile: &ScriptProfile) -> Result<Self, ScriptError> {
        let raw: Vec<LexiconFileEntry> =
            serde_json::from_str(json).map_err(|e| ScriptError::LexiconInvalid(e.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(raw.len());
        for item in raw {
            if !seen.insert(item.surface.clone()) {
                return Err(ScriptError::LexiconInvalid(format!(
                    "duplicate word `{}`",
                    item.surface
                )));
            }
            if !(0.0..=1.0).contains(&item.familiarity) {
                return Err(ScriptError::LexiconInvalid(format!(
                    "familiarity {} of `{}` outside [0, 1]",
                    item.familiarity, item.surface
                )));
            }
            let word = Word::parse(&item.surface, profile).map_err(|e| {
                ScriptError::LexiconInvalid(format!("word `{}`: {e}", item.surface))
            })?;
            entries.push(LexiconEntry {
                word,
                familiarity: item.familiarity,
                gloss: item.gloss,
            });
        }
        Ok(Lexicon { entries })
    }

    /// The bundled lexicon for a language tag, if one ships with the crate.
    pub fn bundled(language_tag: &str, profile: &ScriptProfile) -> Option<Self> {
        let json = match language_tag {
            "te" => include_str!("../../data/lexicons/te.json"),
            "hi" => include_str!("../../data/lexicons/hi.json"),
            _ => return None,
        };
        Some(Self::from_json(json, profile).expect("bundled lexicon is valid"))
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.entries.iter().any(|e| e.word.surface == surface)
    }

    /// Every lexicon word writable with only the learnt units, ordered by
    /// familiarity descending, then surface.
    pub fn candidate_words(&self, learnt_units: &BTreeSet<char>) -> Vec<Word> {
        let mut hits: Vec<&LexiconEntry> = self
            .entries
            .iter()
            .filter(|e| e.word.surface.chars().all(|cp| learnt_units.contains(&cp)))
            .collect();
        hits.sort_by(|a, b| {
            b.familiarity
                .total_cmp(&a.familiarity)
                .then_with(|| a.word.surface.cmp(&b.word.surface))
        });
        hits.into_iter().map(|e| e.word.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn te() -> ScriptProfile {
        ScriptProfile::bundled("te").unwrap()
    }

    fn mini() -> Lexicon {
        Lexicon::from_json(
            r#"[
                {"surface": "కల", "familiarity": 0.9, "gloss": "dream"},
                {"surface": "కలు", "familiarity": 0.8},
                {"surface": "ఊక", "familiarity": 0.7, "gloss": "rice husk"},
                {"surface": "వదిన", "familiarity": 0.6, "gloss": "sister-in-law"}
            ]"#,
            &te(),
        )
        .unwrap()
    }

    fn learnt(chars: &str) -> BTreeSet<char> {
        chars.chars().collect()
    }

    #[test]
    fn single_learnt_unit_yields_nothing() {
        assert!(mini().candidate_words(&learnt("క")).is_empty());
    }

    #[test]
    fn figure_word_set() {
        let words: Vec<String> = mini()
            .candidate_words(&learnt("కలుఊ"))
            .into_iter()
            .map(|w| w.surface)
            .collect();
        assert_eq!(words, ["కల", "కలు", "ఊక"]);
    }

    #[test]
    fn all_units_unlock_whole_lexicon() {
        let lex = mini();
        let everything: BTreeSet<char> = lex
            .entries()
            .iter()
            .flat_map(|e| e.word.surface.chars())
            .collect();
        assert_eq!(lex.candidate_words(&everything).len(), lex.len());
    }

    #[test]
    fn duplicate_word_rejected() {
        let err = Lexicon::from_json(
            r#"[
                {"surface": "కల", "familiarity": 0.9},
                {"surface": "కల", "familiarity": 0.1}
            ]"#,
            &te(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn undecomposable_word_rejected() {
        let err = Lexicon::from_json(r#"[{"surface": "ాక", "familiarity": 0.5}]"#, &te());
        assert!(err.is_err());
    }
}
