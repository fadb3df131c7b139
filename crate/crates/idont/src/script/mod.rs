//! Unicode-level parser and composer for abugida scripts: grapheme
//! segmentation, the akshara grammar, phoneme mapping and candidate-word
//! enumeration.

mod decompose;
mod grammar;
mod lexicon;
mod profile;

pub use decompose::{
    compose_word, decompose_sentence, decompose_to_phonemes, phonemize_syllable, render,
    segment_graphemes, syllabify_text, DecompositionTree, Phoneme, Sentence, SyllableNode, Word,
    WordNode,
};
pub use grammar::{classify, compose_syllable, syllabify, CompositionClass, Syllable};
pub use lexicon::{Lexicon, LexiconEntry};
pub use profile::{ScriptProfile, Unit, UnitClass};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScriptError {
    #[error("unknown unit U+{:04X} `{codepoint}`: in the script block but not in the profile", *codepoint as u32)]
    UnknownUnit { codepoint: char },
    #[error("malformed syllable at offset {offset}: `{codepoint}` ({class:?}) fits no grammar rule")]
    Malformed {
        offset: usize,
        codepoint: char,
        class: UnitClass,
    },
    #[error("MAX_VOWEL_SIGNS: vowel sign at offset {offset} exceeds the cap of {cap}")]
    MaxVowelSigns { offset: usize, cap: usize },
    #[error("MAX_NASAL_SIGNS: nasal sign at offset {offset} exceeds the cap of {cap}")]
    MaxNasalSigns { offset: usize, cap: usize },
    #[error("cannot build a syllable from no units")]
    EmptySyllable,
    #[error("text is empty")]
    EmptyText,
    #[error("invalid script profile: {0}")]
    ProfileInvalid(String),
    #[error("invalid lexicon: {0}")]
    LexiconInvalid(String),
}
