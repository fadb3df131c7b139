//! The akshara grammar: which unit sequences form one orthographic syllable,
//! and how a sequence is split into syllables.
//!
//! The grammar is
//!
//! ```text
//! Akshara := IV NasalSign{0..=maxN}
//!          | (C Virama)* C VowelSign{0..=maxV} NasalSign{0..=maxN}
//! ```
//!
//! with the sign caps taken from the profile. Syllable heads are only
//! independent vowels or consonants while extensions are signs or a
//! virama-consonant pair, so maximal munch can never run across a syllable
//! boundary; greedy longest-match segmentation is exact.

use serde::{Deserialize, Serialize};

use crate::script::profile::{ScriptProfile, Unit, UnitClass};
use crate::script::ScriptError;

/// Composition shape of an akshara.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CompositionClass {
    /// Independent vowel, optionally nasalized.
    #[serde(rename = "V")]
    V,
    /// Single consonant without a vowel sign (inherent vowel), optionally
    /// nasalized.
    #[serde(rename = "C")]
    C,
    /// Consonant with a vowel sign.
    #[serde(rename = "C_V")]
    CV,
    /// Consonant cluster (virama-joined) without a vowel sign.
    #[serde(rename = "C_C")]
    CC,
    /// Consonant cluster with a vowel sign.
    #[serde(rename = "C_C_V")]
    CCV,
}

impl CompositionClass {
    pub fn label(self) -> &'static str {
        match self {
            CompositionClass::V => "V",
            CompositionClass::C => "C",
            CompositionClass::CV => "C_V",
            CompositionClass::CC => "C_C",
            CompositionClass::CCV => "C_C_V",
        }
    }
}

impl std::fmt::Display for CompositionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One orthographic syllable: its units, shape and rendered text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub units: Vec<Unit>,
    pub composition_class: CompositionClass,
    pub surface: String,
}

impl Syllable {
    fn from_units(units: Vec<Unit>, class: CompositionClass) -> Self {
        let surface = units.iter().map(|u| u.codepoint).collect();
        Syllable {
            units,
            composition_class: class,
            surface,
        }
    }
}

/// Scanner state while consuming one akshara left to right.
#[derive(Debug, Clone, Copy)]
struct Scan {
    vowel_head: bool,
    consonants: usize,
    pending_virama: bool,
    vowel_signs: usize,
    nasal_signs: usize,
}

impl Scan {
    fn start() -> Self {
        Scan {
            vowel_head: false,
            consonants: 0,
            pending_virama: false,
            vowel_signs: 0,
            nasal_signs: 0,
        }
    }

    fn empty(&self) -> bool {
        !self.vowel_head && self.consonants == 0
    }

    /// Consume one unit; `at` is its offset, for error reporting.
    fn step(mut self, unit: Unit, at: usize, profile: &ScriptProfile) -> Result<Self, ScriptError> {
        let malformed = || ScriptError::Malformed {
            offset: at,
            codepoint: unit.codepoint,
            class: unit.class,
        };
        match unit.class {
            UnitClass::IndependentVowel => {
                if !self.empty() {
                    return Err(malformed());
                }
                self.vowel_head = true;
            }
            UnitClass::Consonant => {
                if self.empty() || self.pending_virama {
                    self.consonants += 1;
                    self.pending_virama = false;
                } else {
                    return Err(malformed());
                }
            }
            UnitClass::Virama => {
                if self.consonants == 0
                    || self.pending_virama
                    || self.vowel_head
                    || self.vowel_signs > 0
                    || self.nasal_signs > 0
                {
                    return Err(malformed());
                }
                self.pending_virama = true;
            }
            UnitClass::VowelSign => {
                if self.consonants == 0 || self.pending_virama || self.nasal_signs > 0 {
                    return Err(malformed());
                }
                if self.vowel_signs + 1 > profile.max_vowel_signs {
                    return Err(ScriptError::MaxVowelSigns {
                        offset: at,
                        cap: profile.max_vowel_signs,
                    });
                }
                self.vowel_signs += 1;
            }
            UnitClass::NasalSign => {
                if self.empty() || self.pending_virama {
                    return Err(malformed());
                }
                if self.nasal_signs + 1 > profile.max_nasal_signs {
                    return Err(ScriptError::MaxNasalSigns {
                        offset: at,
                        cap: profile.max_nasal_signs,
                    });
                }
                self.nasal_signs += 1;
            }
            UnitClass::Digit | UnitClass::Other => return Err(malformed()),
        }
        Ok(self)
    }

    fn accepting(&self) -> bool {
        self.vowel_head || (self.consonants > 0 && !self.pending_virama)
    }

    fn class(&self) -> CompositionClass {
        if self.vowel_head {
            CompositionClass::V
        } else if self.consonants == 1 {
            if self.vowel_signs > 0 {
                CompositionClass::CV
            } else {
                CompositionClass::C
            }
        } else if self.vowel_signs > 0 {
            CompositionClass::CCV
        } else {
            CompositionClass::CC
        }
    }
}

/// Classifies a unit sequence that must form exactly one akshara.
pub fn classify(units: &[Unit], profile: &ScriptProfile) -> Result<CompositionClass, ScriptError> {
    scan_all(units, profile).map(|scan| scan.class())
}

fn scan_all(units: &[Unit], profile: &ScriptProfile) -> Result<Scan, ScriptError> {
    if units.is_empty() {
        return Err(ScriptError::EmptySyllable);
    }
    let mut scan = Scan::start();
    for (at, unit) in units.iter().enumerate() {
        scan = scan.step(*unit, at, profile)?;
    }
    if !scan.accepting() {
        // Ends mid-cluster: the trailing virama is the offending unit.
        let at = units.len() - 1;
        return Err(ScriptError::Malformed {
            offset: at,
            codepoint: units[at].codepoint,
            class: units[at].class,
        });
    }
    Ok(scan)
}

/// Builds one syllable from units, enforcing the grammar and the profile's
/// sign caps.
pub fn compose_syllable(units: &[Unit], profile: &ScriptProfile) -> Result<Syllable, ScriptError> {
    let scan = scan_all(units, profile)?;
    Ok(Syllable::from_units(units.to_vec(), scan.class()))
}

/// Splits a word's units into syllables by maximal munch.
pub fn syllabify(units: &[Unit], profile: &ScriptProfile) -> Result<Vec<Syllable>, ScriptError> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < units.len() {
        let mut scan = Scan::start();
        let mut accepted: Option<(usize, Scan)> = None;
        let mut first_err: Option<ScriptError> = None;
        for (i, unit) in units[start..].iter().enumerate() {
            match scan.step(*unit, start + i, profile) {
                Ok(next) => {
                    scan = next;
                    if scan.accepting() {
                        accepted = Some((i + 1, scan));
                    }
                }
                Err(e) => {
                    first_err = Some(e);
                    break;
                }
            }
        }
        match accepted {
            Some((len, scan)) => {
                out.push(Syllable::from_units(
                    units[start..start + len].to_vec(),
                    scan.class(),
                ));
                start += len;
            }
            None => {
                return Err(first_err.unwrap_or(ScriptError::Malformed {
                    offset: start,
                    codepoint: units[start].codepoint,
                    class: units[start].class,
                }))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::segment_graphemes;

    fn te() -> ScriptProfile {
        ScriptProfile::bundled("te").unwrap()
    }

    fn units(text: &str) -> Vec<Unit> {
        segment_graphemes(text, &te()).unwrap()
    }

    #[test]
    fn classify_bare_vowel() {
        assert_eq!(classify(&units("అ"), &te()).unwrap(), CompositionClass::V);
    }

    #[test]
    fn classify_consonant_vowel_sign() {
        assert_eq!(classify(&units("కా"), &te()).unwrap(), CompositionClass::CV);
    }

    #[test]
    fn classify_conjunct_with_vowel() {
        assert_eq!(
            classify(&units("క్కా"), &te()).unwrap(),
            CompositionClass::CCV
        );
    }

    #[test]
    fn classify_conjunct_bare() {
        assert_eq!(
            classify(&units("క్క"), &te()).unwrap(),
            CompositionClass::CC
        );
    }

    #[test]
    fn nasalized_consonant_is_class_c() {
        let syl = compose_syllable(&units("లం"), &te()).unwrap();
        assert_eq!(syl.composition_class, CompositionClass::C);
        assert_eq!(syl.surface, "లం");
    }

    #[test]
    fn compose_rejects_second_vowel_sign() {
        let mut u = units("కా");
        u.extend(units("కి")[1..].iter().copied());
        let err = compose_syllable(&u, &te()).unwrap_err();
        assert!(matches!(err, ScriptError::MaxVowelSigns { cap: 1, .. }));
    }

    #[test]
    fn compose_rejects_trailing_virama() {
        let mut u = units("క");
        u.push(Unit {
            codepoint: '్',
            class: UnitClass::Virama,
        });
        assert!(compose_syllable(&u, &te()).is_err());
    }

    #[test]
    fn syllabify_kaalam() {
        let syls = syllabify(&units("కాలం"), &te()).unwrap();
        let surfaces: Vec<&str> = syls.iter().map(|s| s.surface.as_str()).collect();
        assert_eq!(surfaces, ["కా", "లం"]);
    }

    #[test]
    fn syllabify_maarindi() {
        let syls = syllabify(&units("మారింది"), &te()).unwrap();
        let surfaces: Vec<&str> = syls.iter().map(|s| s.surface.as_str()).collect();
        assert_eq!(surfaces, ["మా", "రిం", "ది"]);
    }

    #[test]
    fn leading_vowel_sign_is_rejected_at_offset_zero() {
        let err = syllabify(&units("ాక"), &te()).unwrap_err();
        match err {
            ScriptError::Malformed { offset, .. } => assert_eq!(offset, 0),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
