//! Generation: every inflected form of an entry with its large tag.
//!
//! Three mechanisms act on top of the paradigm tables: umlaut of the stem
//! vowel, the old-orthography `ß`/`ss` alternation, and the `ge`/`zu`
//! participle markers.

mod paradigm;

pub use paradigm::{
    Marker, ParadigmError, ParadigmSet, ParadigmTable, Slot, StemName, StemTransform, TagTemplate,
};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::lexicon::{Flag, Lexicon, LexiconEntry, PrefixKind};
use crate::tagset::{PosCategory, Tag, TagError};

#[derive(Debug, Error)]
pub enum InflectionError {
    #[error("{root:?}: unknown class {class_id:?}")]
    MissingClass { root: String, class_id: String },
    #[error("{root:?}: override {key:?} names no slot or stem of its class")]
    BadOverride { root: String, key: String },
    #[error("{root:?} is not a verb")]
    NotAVerb { root: String },
    #[error("{root:?}: {source}")]
    Tag { root: String, source: TagError },
}

const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u', 'ä', 'ö', 'ü'];

fn umlaut_of(c: char) -> Option<char> {
    Some(match c {
        'a' => 'ä',
        'o' => 'ö',
        'u' => 'ü',
        'A' => 'Ä',
        'O' => 'Ö',
        'U' => 'Ü',
        _ => return None,
    })
}

fn plain_of(c: char) -> Option<char> {
    Some(match c {
        'ä' => 'a',
        'ö' => 'o',
        'ü' => 'u',
        'Ä' => 'A',
        'Ö' => 'O',
        'Ü' => 'U',
        _ => return None,
    })
}

/// Mutates the rightmost `au`, `a`, `o` or `u` of the stem.
pub fn apply_umlaut(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    for i in (0..chars.len()).rev() {
        let c = chars[i];
        if matches!(c, 'u' | 'U') && i > 0 && matches!(chars[i - 1], 'a' | 'A') {
            let mut out = chars.clone();
            out[i - 1] = umlaut_of(chars[i - 1]).unwrap();
            return out.into_iter().collect();
        }
        if let Some(u) = umlaut_of(c) {
            let mut out = chars;
            out[i] = u;
            return out.into_iter().collect();
        }
    }
    stem.to_owned()
}

/// Reverses the rightmost umlaut, or `None` if the string has none.
pub fn remove_umlaut(s: &str) -> Option<String> {
    let mut chars: Vec<char> = s.chars().collect();
    let i = chars.iter().rposition(|&c| plain_of(c).is_some())?;
    chars[i] = plain_of(chars[i]).unwrap();
    Some(chars.into_iter().collect())
}

/// Concatenates stem and suffix, writing a stem-final `ß` as `ss` before a
/// vowel when the shift is enabled.
pub fn join_with_s_shift(stem: &str, suffix: &str, shift_enabled: bool) -> String {
    let vowel_next = suffix.chars().next().is_some_and(|c| VOWELS.contains(&c));
    match stem.strip_suffix('ß') {
        Some(head) if shift_enabled && vowel_next => format!("{head}ss{suffix}"),
        _ => format!("{stem}{suffix}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParticipleMarker {
    Ge,
    Zu,
}

/// Attaches the participle marker and any verb prefix to an unprefixed form.
pub fn mark_participle(
    stem_form: &str,
    entry: &LexiconEntry,
    marker: ParticipleMarker,
) -> Result<String, InflectionError> {
    if !entry.pos.is_verb() {
        return Err(InflectionError::NotAVerb {
            root: entry.root.clone(),
        });
    }
    let prefix = entry.prefix.as_deref().unwrap_or("");
    Ok(match (marker, entry.prefix_kind) {
        (ParticipleMarker::Ge, PrefixKind::Inseparable) => format!("{prefix}{stem_form}"),
        (ParticipleMarker::Ge, _) if entry.has_flag(Flag::NoGeParticiple) => {
            format!("{prefix}{stem_form}")
        }
        (ParticipleMarker::Ge, _) => format!("{prefix}ge{stem_form}"),
        (ParticipleMarker::Zu, PrefixKind::Separable) => format!("{prefix}zu{stem_form}"),
        (ParticipleMarker::Zu, _) => format!("{prefix}{stem_form}"),
    })
}

/// The stem slots attach to. Verbs drop the infinitive ending.
pub fn base_stem(entry: &LexiconEntry) -> String {
    let root = entry.root.as_str();
    let stem = if entry.pos.is_verb() {
        root.strip_suffix("en")
            .or_else(|| root.strip_suffix('n'))
            .unwrap_or(root)
    } else {
        root
    };
    if entry.has_flag(Flag::SsSharpShift) && entry.pos.is_verb() {
        if let Some(head) = stem.strip_suffix("ss") {
            return format!("{head}ß");
        }
    }
    stem.to_owned()
}

/// Dictionary citation form: `(ein)nehmen`, `ver-spielen`, or the root.
pub fn citation_lemma(entry: &LexiconEntry) -> String {
    match (&entry.prefix, entry.prefix_kind) {
        (Some(p), PrefixKind::Separable) => format!("({p}){}", entry.root),
        (Some(p), PrefixKind::Inseparable) => format!("{p}-{}", entry.root),
        _ => entry.root.clone(),
    }
}

fn umlaut_if(entry: &LexiconEntry, s: &str) -> String {
    if entry.has_flag(Flag::UmlautInParadigm) {
        apply_umlaut(s)
    } else {
        s.to_owned()
    }
}

/// Value of a named stem, and the stem it was derived from before any
/// default umlaut. The second value is what the analyzer indexes.
pub fn named_stem(entry: &LexiconEntry, name: StemName) -> (String, String) {
    if let Some(v) = entry.overrides.get(name.as_str()) {
        return (v.clone(), v.clone());
    }
    let base = base_stem(entry);
    let over = |n: StemName| entry.overrides.get(n.as_str()).cloned();
    match name {
        StemName::Kj2 => {
            let pret = over(StemName::Pret).unwrap_or_else(|| base.clone());
            (apply_umlaut(&pret), pret)
        }
        StemName::Comp => {
            let decl = over(StemName::Decl).unwrap_or_else(|| base.clone());
            (umlaut_if(entry, &decl), decl)
        }
        StemName::Pres23 | StemName::Sup => (umlaut_if(entry, &base), base),
        StemName::Pret | StemName::Part2 | StemName::Imp | StemName::PresSg | StemName::Decl => {
            (base.clone(), base)
        }
    }
}

/// One generated form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormRow {
    pub surface: String,
    pub tag: Tag,
    pub lemma: String,
    pub slot_id: String,
}

/// All forms of one lexeme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTable {
    pub lemma: String,
    pub rows: Vec<FormRow>,
}

impl FormTable {
    pub fn surfaces(&self) -> BTreeSet<&str> {
        self.rows.iter().map(|r| r.surface.as_str()).collect()
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.rows.iter().any(|r| r.surface == surface)
    }

    pub fn tags_of(&self, surface: &str) -> Vec<Tag> {
        self.rows
            .iter()
            .filter(|r| r.surface == surface)
            .map(|r| r.tag)
            .collect()
    }
}

/// An entry together with the lemma its forms are reported under. Verb
/// entries also give rise to participle adjectives with their own lemmas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lexeme {
    pub entry: LexiconEntry,
    pub lemma: String,
}

fn check_overrides(entry: &LexiconEntry, table: &ParadigmTable) -> Result<(), InflectionError> {
    for key in entry.overrides.keys() {
        if !table.accepts_override(key) {
            return Err(InflectionError::BadOverride {
                root: entry.root.clone(),
                key: key.clone(),
            });
        }
    }
    Ok(())
}

fn strip_ge(s: &str) -> &str {
    s.strip_prefix("ge").unwrap_or(s)
}

/// Surface form of one slot, or `None` when the slot does not apply.
fn slot_surface(entry: &LexiconEntry, slot: &Slot) -> Option<String> {
    let shift = entry.has_flag(Flag::SsSharpShift);
    let prefix = entry.prefix.as_deref().unwrap_or("");
    if slot.marker == Marker::Zu && !entry.is_separable() {
        return None;
    }
    if let Some(full) = entry.overrides.get(&slot.id) {
        return Some(match entry.prefix_kind {
            PrefixKind::Inseparable if slot.marker == Marker::Ge => {
                format!("{prefix}{}", strip_ge(full))
            }
            _ => format!("{prefix}{full}"),
        });
    }
    let core = match slot.transform {
        StemTransform::Whole => return Some(format!("{prefix}{}", slot.suffix)),
        StemTransform::None => join_with_s_shift(&base_stem(entry), &slot.suffix, shift),
        StemTransform::Umlaut => {
            join_with_s_shift(&umlaut_if(entry, &base_stem(entry)), &slot.suffix, shift)
        }
        StemTransform::Named(n) => join_with_s_shift(&named_stem(entry, n).0, &slot.suffix, shift),
    };
    Some(match slot.marker {
        Marker::None => format!("{prefix}{core}"),
        Marker::Ge => mark_participle(&core, entry, ParticipleMarker::Ge).ok()?,
        Marker::Zu => mark_participle(&core, entry, ParticipleMarker::Zu).ok()?,
    })
}

fn generate_with_lemma(
    entry: &LexiconEntry,
    lemma: &str,
    classes: &ParadigmSet,
) -> Result<FormTable, InflectionError> {
    let table = classes
        .get(&entry.class_id)
        .ok_or_else(|| InflectionError::MissingClass {
            root: entry.root.clone(),
            class_id: entry.class_id.clone(),
        })?;
    check_overrides(entry, table)?;
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for slot in &table.slots {
        let Some(surface) = slot_surface(entry, slot) else {
            continue;
        };
        let tags = slot
            .template
            .expand(entry.pos, entry.gender)
            .map_err(|source| InflectionError::Tag {
                root: entry.root.clone(),
                source,
            })?;
        for tag in tags {
            if seen.insert((surface.clone(), tag)) {
                rows.push(FormRow {
                    surface: surface.clone(),
                    tag,
                    lemma: lemma.to_owned(),
                    slot_id: slot.id.clone(),
                });
            }
        }
    }
    Ok(FormTable {
        lemma: lemma.to_owned(),
        rows,
    })
}

/// Every form of `entry`, in slot order.
pub fn generate_forms(entry: &LexiconEntry, classes: &ParadigmSet) -> Result<FormTable, InflectionError> {
    generate_with_lemma(entry, &citation_lemma(entry), classes)
}

/// Forms of a lexeme under its own lemma.
pub fn generate_lexeme(lexeme: &Lexeme, classes: &ParadigmSet) -> Result<FormTable, InflectionError> {
    generate_with_lemma(&lexeme.entry, &lexeme.lemma, classes)
}

/// Class of adjectives derived from past participles.
pub const PARTICIPLE_ADJ_CLASS: &str = "adj_part";
/// Class of present participles.
pub const PRESENT_PARTICIPLE_CLASS: &str = "pa1";

fn slot_form(table: &FormTable, slot_id: &str) -> Option<String> {
    table
        .rows
        .iter()
        .find(|r| r.slot_id == slot_id)
        .map(|r| r.surface.clone())
}

/// The entry itself plus, for main verbs, the adjectives built on its
/// participles: `verspielt (ver-spielen)` and `flatternd (flattern)`.
pub fn lexemes(entry: &LexiconEntry, classes: &ParadigmSet) -> Result<Vec<Lexeme>, InflectionError> {
    let lemma = citation_lemma(entry);
    let mut out = vec![Lexeme {
        entry: entry.clone(),
        lemma: lemma.clone(),
    }];
    if entry.pos != PosCategory::Ver {
        return Ok(out);
    }
    let verb = generate_forms(entry, classes)?;
    if let (Some(part2), true) = (slot_form(&verb, "part2"), classes.get(PARTICIPLE_ADJ_CLASS).is_some()) {
        out.push(Lexeme {
            entry: LexiconEntry::new(part2.clone(), PosCategory::Adj, PARTICIPLE_ADJ_CLASS),
            lemma: format!("{part2} ({lemma})"),
        });
    }
    if let (Some(inf), true) = (slot_form(&verb, "inf"), classes.get(PRESENT_PARTICIPLE_CLASS).is_some()) {
        let root = format!("{inf}d");
        out.push(Lexeme {
            entry: LexiconEntry::new(root.clone(), PosCategory::Adj, PRESENT_PARTICIPLE_CLASS),
            lemma: format!("{root} ({lemma})"),
        });
    }
    Ok(out)
}

/// Every lexeme of a lexicon, in entry order.
pub fn all_lexemes(lex: &Lexicon, classes: &ParadigmSet) -> Result<Vec<Lexeme>, InflectionError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for entry in lex.entries() {
        for lexeme in lexemes(entry, classes)? {
            if seen.insert((lexeme.lemma.clone(), lexeme.entry.clone())) {
                out.push(lexeme);
            }
        }
    }
    Ok(out)
}

/// A reading without segmentation: lemma plus large tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reading {
    pub tag: Tag,
    pub lemma: String,
}

/// Surface form → readings, for every form of every lexeme.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FullFormLexicon {
    map: BTreeMap<String, BTreeSet<Reading>>,
}

impl FullFormLexicon {
    pub fn lookup(&self, surface: &str) -> Option<&BTreeSet<Reading>> {
        self.map.get(surface)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<Reading>)> {
        self.map.iter()
    }

    pub fn insert_table(&mut self, table: &FormTable) {
        for row in &table.rows {
            self.map.entry(row.surface.clone()).or_default().insert(Reading {
                tag: row.tag,
                lemma: row.lemma.clone(),
            });
        }
    }

    /// `surface<TAB>lemma<TAB>tag` lines, sorted.
    pub fn export(&self) -> String {
        let mut lines: Vec<String> = self
            .map
            .iter()
            .flat_map(|(s, rs)| rs.iter().map(move |r| format!("{s}\t{}\t{}", r.lemma, r.tag)))
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Union of the form tables of every lexeme in the lexicon.
pub fn expand_full_form_lexicon(
    lex: &Lexicon,
    classes: &ParadigmSet,
) -> Result<FullFormLexicon, InflectionError> {
    let mut full = FullFormLexicon::default();
    for lexeme in all_lexemes(lex, classes)? {
        full.insert_table(&generate_lexeme(&lexeme, classes)?);
    }
    Ok(full)
}
