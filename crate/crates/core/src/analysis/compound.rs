use std::collections::HashMap;

use super::{capitalize, decapitalize, starts_upper, Analysis};
use crate::inflection::base_stem;
use crate::lexicon::Lexicon;
use crate::tagset::PosCategory;

/// Linking elements, tried in this order.
pub const LINKING: [&str; 7] = ["", "s", "es", "n", "en", "er", "e"];

const MIN_ELEMENT: usize = 3;

/// One written piece of a compound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompoundPart {
    /// The piece as it appears in the form, without linking element.
    pub surface: String,
    pub linking: String,
    pub lemma: String,
    /// Consonant dropped before an identical one (`Schif|fahrt`).
    pub restored: Option<char>,
}

/// Dictionary of possible non-final compound members.
#[derive(Debug, Clone, Default)]
pub struct CompoundElements {
    by_key: HashMap<String, String>,
}

impl CompoundElements {
    /// Noun roots, adjective roots and main-verb stems; nouns win over
    /// adjectives, adjectives over verbs.
    pub fn new(lex: &Lexicon) -> CompoundElements {
        let mut by_key = HashMap::new();
        let passes: [&dyn Fn(PosCategory) -> bool; 3] = [
            &|p| p == PosCategory::Sub,
            &|p| p == PosCategory::Adj,
            &|p| p == PosCategory::Ver,
        ];
        for pass in passes {
            for e in lex.entries() {
                if !pass(e.pos) {
                    continue;
                }
                let (key, lemma) = if e.pos == PosCategory::Ver {
                    let p = e.prefix.as_deref().unwrap_or("");
                    (format!("{p}{}", base_stem(e)), format!("{p}{}", e.root))
                } else {
                    (e.root.clone(), e.root.clone())
                };
                let key = key.to_lowercase();
                if key.chars().count() >= MIN_ELEMENT {
                    by_key.entry(key).or_insert(lemma);
                }
            }
        }
        CompoundElements { by_key }
    }

    pub fn len(&self) -> usize {
        self.by_key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_key.is_empty()
    }

    pub fn lemma_of(&self, piece: &str) -> Option<&str> {
        self.by_key.get(&piece.to_lowercase()).map(String::as_str)
    }

    fn match_piece(&self, text: &str, next: char) -> Option<CompoundPart> {
        for linking in LINKING {
            let Some(core) = text.strip_suffix(linking) else {
                continue;
            };
            if core.chars().count() < MIN_ELEMENT {
                continue;
            }
            if let Some(lemma) = self.lemma_of(core) {
                return Some(CompoundPart {
                    surface: core.to_owned(),
                    linking: linking.to_owned(),
                    lemma: lemma.to_owned(),
                    restored: None,
                });
            }
            let next = next.to_lowercase().next().unwrap_or(next);
            if linking.is_empty() && !"aeiouäöüy".contains(next) && core.ends_with(next) {
                if let Some(lemma) = self.lemma_of(&format!("{core}{next}")) {
                    return Some(CompoundPart {
                        surface: core.to_owned(),
                        linking: String::new(),
                        lemma: lemma.to_owned(),
                        restored: Some(next),
                    });
                }
            }
        }
        None
    }

    /// Splits `left` into the fewest known pieces; ties go to the longest
    /// rightmost piece. `next` is the first letter after `left`.
    fn split_left(&self, left: &[char], next: char) -> Option<Vec<CompoundPart>> {
        let n = left.len();
        let mut best: Vec<Option<Vec<CompoundPart>>> = vec![None; n + 1];
        best[0] = Some(Vec::new());
        for k in 1..=n {
            let follow = if k == n { next } else { left[k] };
            for j in 0..k {
                let Some(prev) = &best[j] else { continue };
                if best[k].as_ref().is_some_and(|b| b.len() <= prev.len() + 1) {
                    continue;
                }
                let text: String = left[j..k].iter().collect();
                if let Some(part) = self.match_piece(&text, follow) {
                    let mut v = prev.clone();
                    v.push(part);
                    best[k] = Some(v);
                }
            }
        }
        best.pop().flatten()
    }

    /// Compound readings of `form`. The head is the longest final piece
    /// that `read_head` analyzes as a noun once capitalized.
    pub fn segment<F>(&self, form: &str, read_head: F) -> Vec<Analysis>
    where
        F: Fn(&str) -> Vec<Analysis>,
    {
        if !starts_upper(form) {
            return Vec::new();
        }
        let chars: Vec<char> = form.chars().collect();
        for i in MIN_ELEMENT..chars.len() {
            if chars.len() - i < MIN_ELEMENT {
                break;
            }
            let head: String = chars[i..].iter().collect();
            let heads: Vec<Analysis> = read_head(&capitalize(&head))
                .into_iter()
                .filter(|a| a.tag.pos() == PosCategory::Sub)
                .collect();
            if heads.is_empty() {
                continue;
            }
            let Some(mut parts) = self.split_left(&chars[..i], chars[i]) else {
                continue;
            };
            let left: String = chars[..i].iter().collect();
            let segments: Vec<String> = parts.iter().map(|p| p.lemma.clone()).collect();
            parts.push(CompoundPart {
                surface: head.clone(),
                linking: String::new(),
                lemma: String::new(),
                restored: None,
            });
            return heads
                .into_iter()
                .map(|h| {
                    let mut segs = segments.clone();
                    segs.push(h.lemma.clone());
                    let mut ps = parts.clone();
                    if let Some(last) = ps.last_mut() {
                        last.lemma = h.lemma.clone();
                    }
                    Analysis {
                        lemma: format!("{left}{}", decapitalize(&h.lemma)),
                        tag: h.tag,
                        segments: segs,
                        parts: ps,
                    }
                })
                .collect();
        }
        Vec::new()
    }
}

/// Writes the pieces back together.
pub fn reassemble(parts: &[CompoundPart]) -> String {
    parts
        .iter()
        .map(|p| format!("{}{}", p.surface, p.linking))
        .collect()
}
