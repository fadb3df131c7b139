//! Top-down decomposition (sentence → words → syllables → phonemes) and
//! bottom-up composition of words from syllables.

use crate::script::grammar::{syllabify, Syllable};
use crate::script::profile::{ScriptProfile, Unit, UnitClass};
use crate::script::ScriptError;

/// One phoneme with the units it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phoneme {
    pub id: String,
    pub source_units: Vec<Unit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub surface: String,
    pub syllables: Vec<Syllable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub surface: String,
    pub words: Vec<Word>,
}

/// Full decomposition of a sentence; every parent surface is the
/// concatenation of its children's surfaces (words joined by single spaces).
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTree {
    pub surface: String,
    pub words: Vec<WordNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordNode {
    pub surface: String,
    pub syllables: Vec<SyllableNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyllableNode {
    pub syllable: Syllable,
    pub phonemes: Vec<Phoneme>,
}

impl DecompositionTree {
    pub fn word_surfaces(&self) -> Vec<&str> {
        self.words.iter().map(|w| w.surface.as_str()).collect()
    }
}

/// Classifies every scalar of `text` against the profile. Whitespace and
/// punctuation outside the script block pass through as `other`; codepoints
/// inside the block but missing from the table are errors.
pub fn segment_graphemes(text: &str, profile: &ScriptProfile) -> Result<Vec<Unit>, ScriptError> {
    text.chars().map(|cp| profile.unit(cp)).collect()
}

/// Splits a word's text into syllables.
pub fn syllabify_text(text: &str, profile: &ScriptProfile) -> Result<Vec<Syllable>, ScriptError> {
    let units = segment_graphemes(text, profile)?;
    syllabify(&units, profile)
}

/// Phonemizes one syllable: consonants in a cluster keep their bare phoneme
/// (the virama suppresses the inherent vowel), the final consonant takes its
/// vowel signs' phonemes or, with none, the profile's inherent vowel; nasal
/// signs append their phonemes.
pub fn phonemize_syllable(
    syllable: &Syllable,
    profile: &ScriptProfile,
) -> Result<Vec<Phoneme>, ScriptError> {
    let mut out = Vec::new();
    let push_all = |out: &mut Vec<Phoneme>, unit: Unit| -> Result<(), ScriptError> {
        let phonemes = profile
            .phonemes_of(unit.codepoint)
            .ok_or(ScriptError::UnknownUnit {
                codepoint: unit.codepoint,
            })?;
        for p in phonemes {
            out.push(Phoneme {
                id: p.clone(),
                source_units: vec![unit],
            });
        }
        Ok(())
    };

    let last_consonant = syllable
        .units
        .iter()
        .rposition(|u| u.class == UnitClass::Consonant);
    let has_vowel_sign = syllable
        .units
        .iter()
        .any(|u| u.class == UnitClass::VowelSign);

    for (i, unit) in syllable.units.iter().enumerate() {
        match unit.class {
            UnitClass::IndependentVowel | UnitClass::VowelSign | UnitClass::NasalSign => {
                push_all(&mut out, *unit)?;
            }
            UnitClass::Consonant => {
                push_all(&mut out, *unit)?;
                if Some(i) == last_consonant && !has_vowel_sign {
                    out.push(Phoneme {
                        id: profile.inherent_vowel.clone(),
                        source_units: vec![*unit],
                    });
                }
            }
            UnitClass::Virama => {}
            UnitClass::Digit | UnitClass::Other => {
                return Err(ScriptError::Malformed {
                    offset: i,
                    codepoint: unit.codepoint,
                    class: unit.class,
                })
            }
        }
    }
    Ok(out)
}

/// Phonemizes a whole word in reading order.
pub fn decompose_to_phonemes(word: &str, profile: &ScriptProfile) -> Result<Vec<Phoneme>, ScriptError> {
    let mut out = Vec::new();
    for syllable in syllabify_text(word, profile)? {
        out.extend(phonemize_syllable(&syllable, profile)?);
    }
    Ok(out)
}

/// Decomposes a sentence down to phonemes. Words are split on Unicode
/// whitespace; the tree's surface is the words rejoined by single spaces.
pub fn decompose_sentence(
    text: &str,
    profile: &ScriptProfile,
) -> Result<DecompositionTree, ScriptError> {
    if text.trim().is_empty() {
        return Err(ScriptError::EmptyText);
    }
    let mut words = Vec::new();
    for raw in text.split_whitespace() {
        let syllables = syllabify_text(raw, profile)?;
        let mut nodes = Vec::with_capacity(syllables.len());
        for syllable in syllables {
            let phonemes = phonemize_syllable(&syllable, profile)?;
            nodes.push(SyllableNode { syllable, phonemes });
        }
        words.push(WordNode {
            surface: raw.to_string(),
            syllables: nodes,
        });
    }
    let surface = words
        .iter()
        .map(|w| w.surface.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(DecompositionTree { surface, words })
}

/// Joins syllables into a word; the surface is the exact concatenation.
pub fn compose_word(syllables: &[Syllable]) -> Word {
    let surface = syllables.iter().map(|s| s.surface.as_str()).collect();
    Word {
        surface,
        syllables: syllables.to_vec(),
    }
}

/// Renders a word back to text.
pub fn render(word: &Word) -> &str {
    &word.surface
}

impl Word {
    /// Decomposes `text` into a word under the profile.
    pub fn parse(text: &str, profile: &ScriptProfile) -> Result<Self, ScriptError> {
        Ok(Word {
            surface: text.to_string(),
            syllables: syllabify_text(text, profile)?,
        })
    }

    /// The distinct codepoints this word is written with.
    pub fn unit_codepoints(&self) -> std::collections::BTreeSet<char> {
        self.surface.chars().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn te() -> ScriptProfile {
        ScriptProfile::bundled("te").unwrap()
    }

    fn phoneme_ids(word: &str) -> Vec<String> {
        decompose_to_phonemes(word, &te())
            .unwrap()
            .into_iter()
            .map(|p| p.id)
            .collect()
    }

    #[test]
    fn segment_empty_text() {
        assert_eq!(segment_graphemes("", &te()).unwrap(), vec![]);
    }

    #[test]
    fn segment_single_consonant() {
        let units = segment_graphemes("క", &te()).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].codepoint, 'క');
        assert_eq!(units[0].class, UnitClass::Consonant);
    }

    #[test]
    fn segment_consonant_with_sign() {
        let units = segment_graphemes("కా", &te()).unwrap();
        let classes: Vec<UnitClass> = units.iter().map(|u| u.class).collect();
        assert_eq!(classes, [UnitClass::Consonant, UnitClass::VowelSign]);
    }

    #[test]
    fn sentence_splits_into_two_words() {
        let tree = decompose_sentence("కాలం మారింది", &te()).unwrap();
        assert_eq!(tree.word_surfaces(), ["కాలం", "మారింది"]);
        assert_eq!(tree.surface, "కాలం మారింది");
    }

    #[test]
    fn surfaces_concatenate_upwards() {
        let tree = decompose_sentence("కాలం మారింది", &te()).unwrap();
        for word in &tree.words {
            let joined: String = word
                .syllables
                .iter()
                .map(|s| s.syllable.surface.as_str())
                .collect();
            assert_eq!(joined, word.surface);
        }
    }

    #[test]
    fn phonemes_bare_vowel() {
        assert_eq!(phoneme_ids("అ"), ["a"]);
    }

    #[test]
    fn phonemes_inherent_vowel() {
        assert_eq!(phoneme_ids("కల"), ["k", "a", "l", "a"]);
    }

    #[test]
    fn phonemes_vowel_sign_replaces_inherent() {
        assert_eq!(phoneme_ids("కా"), ["k", "aː"]);
    }

    #[test]
    fn phonemes_virama_suppresses_inherent() {
        assert_eq!(phoneme_ids("క్క"), ["k", "k", "a"]);
    }

    #[test]
    fn compose_word_from_syllables() {
        let syls = syllabify_text("కల", &te()).unwrap();
        let word = compose_word(&syls);
        assert_eq!(render(&word), "కల");
    }

    #[test]
    fn empty_sentence_rejected() {
        assert!(matches!(
            decompose_sentence("  ", &te()),
            Err(ScriptError::EmptyText)
        ));
    }
}
