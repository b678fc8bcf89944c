//! Root lexicon: entries with inflection classes, the line-oriented file
//! format, and the classification dialogue used to add new roots.
//!
//! File format, one entry per line, fields separated by a single TAB:
//!
//! ```text
//! root<TAB>pos<TAB>class_id[<TAB>key=value[,key=value…]]
//! ```
//!
//! Keys are `gender`, `prefix`, `prefix_kind`, `flags` and
//! `override.<slot-or-stem>`. `flags` takes a comma separated list, so items
//! without `=` after a `flags=` item continue the flag list. Attributes may
//! also be spread over several TAB separated fields. Lines starting with `#`
//! and blank lines are ignored.

mod dialogue;

pub use dialogue::{
    answer, start_classification, Alternative, DialogueError, DialogueState, PosTrack, Question,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::inflection::ParadigmSet;
use crate::tagset::{Gender, PosCategory, TagError};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown class id {class_id:?}")]
    UnknownClass { line: usize, class_id: String },
    #[error("line {line}: unknown flag {flag:?}")]
    UnknownFlag { line: usize, flag: String },
    #[error("line {line}: {source}")]
    BadPos { line: usize, source: TagError },
    #[error("invalid entry {root:?}: {message}")]
    InvalidEntry { root: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrefixKind {
    None,
    Separable,
    Inseparable,
}

impl PrefixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PrefixKind::None => "none",
            PrefixKind::Separable => "separable",
            PrefixKind::Inseparable => "inseparable",
        }
    }
}

impl FromStr for PrefixKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(PrefixKind::None),
            "separable" => Ok(PrefixKind::Separable),
            "inseparable" => Ok(PrefixKind::Inseparable),
            other => Err(format!("unknown prefix kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// Slots marked `umlaut` mutate the stem vowel.
    UmlautInParadigm,
    /// Stem-final `ß` is written `ss` before a vowel-initial suffix.
    SsSharpShift,
    /// The past participle takes no `ge` marker.
    NoGeParticiple,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::UmlautInParadigm => "umlaut_in_paradigm",
            Flag::SsSharpShift => "ss_sharp_shift",
            Flag::NoGeParticiple => "no_ge_participle",
        }
    }
}

impl FromStr for Flag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "umlaut_in_paradigm" => Ok(Flag::UmlautInParadigm),
            "ss_sharp_shift" => Ok(Flag::SsSharpShift),
            "no_ge_participle" => Ok(Flag::NoGeParticiple),
            other => Err(other.to_owned()),
        }
    }
}

/// One root with its inflection class.
///
/// Verbs store the infinitive without prefix (`nehmen`); the prefix lives in
/// `prefix`. Nouns are stored capitalized in the nominative singular.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexiconEntry {
    pub root: String,
    pub pos: PosCategory,
    pub class_id: String,
    pub gender: Option<Gender>,
    pub prefix: Option<String>,
    pub prefix_kind: PrefixKind,
    pub flags: BTreeSet<Flag>,
    pub overrides: BTreeMap<String, String>,
}

impl LexiconEntry {
    pub fn new(root: impl Into<String>, pos: PosCategory, class_id: impl Into<String>) -> Self {
        LexiconEntry {
            root: root.into(),
            pos,
            class_id: class_id.into(),
            gender: None,
            prefix: None,
            prefix_kind: PrefixKind::None,
            flags: BTreeSet::new(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_gender(mut self, gender: Gender) -> Self {
        self.gender = Some(gender);
        self
    }

    pub fn with_prefix(mut self, prefix: impl Into<String>, kind: PrefixKind) -> Self {
        self.prefix = Some(prefix.into());
        self.prefix_kind = kind;
        self
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        self.flags.insert(flag);
        self
    }

    pub fn with_override(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.overrides.insert(key.into(), value.into());
        self
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn is_separable(&self) -> bool {
        self.prefix.is_some() && self.prefix_kind == PrefixKind::Separable
    }

    /// Checks the entry invariants against the paradigm data.
    pub fn validate(&self, classes: &ParadigmSet) -> Result<(), LexiconError> {
        let invalid = |message: String| LexiconError::InvalidEntry {
            root: self.root.clone(),
            message,
        };
        if self.root.is_empty() {
            return Err(invalid("empty root".into()));
        }
        if self.root.contains(['\t', '\n']) {
            return Err(invalid("root contains a reserved character".into()));
        }
        if matches!(self.pos, PosCategory::Sub | PosCategory::Eig) && self.gender.is_none() {
            return Err(invalid("nouns need a gender".into()));
        }
        if self.prefix.is_some() && self.prefix_kind == PrefixKind::None {
            return Err(invalid("prefix without prefix_kind".into()));
        }
        if self.prefix.is_none() && self.prefix_kind != PrefixKind::None {
            return Err(invalid("prefix_kind without prefix".into()));
        }
        let table = classes
            .get(&self.class_id)
            .ok_or_else(|| invalid(format!("unknown class id {:?}", self.class_id)))?;
        for key in self.overrides.keys() {
            if !table.accepts_override(key) {
                return Err(invalid(format!(
                    "override {key:?} names no slot or stem of class {:?}",
                    self.class_id
                )));
            }
        }
        Ok(())
    }

    fn attributes(&self) -> Vec<String> {
        let mut attrs = Vec::new();
        if let Some(g) = self.gender {
            attrs.push(format!("gender={}", g.token()));
        }
        if let Some(p) = &self.prefix {
            attrs.push(format!("prefix={p}"));
        }
        if self.prefix_kind != PrefixKind::None {
            attrs.push(format!("prefix_kind={}", self.prefix_kind.as_str()));
        }
        if !self.flags.is_empty() {
            let flags: Vec<_> = self.flags.iter().map(|f| f.as_str()).collect();
            attrs.push(format!("flags={}", flags.join(",")));
        }
        for (k, v) in &self.overrides {
            attrs.push(format!("override.{k}={v}"));
        }
        attrs
    }

    /// The entry as one lexicon file line, without the newline.
    pub fn to_line(&self) -> String {
        let mut line = format!("{}\t{}\t{}", self.root, self.pos.code(), self.class_id);
        let attrs = self.attributes();
        if !attrs.is_empty() {
            line.push('\t');
            line.push_str(&attrs.join(","));
        }
        line
    }
}

impl fmt::Display for LexiconEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

fn parse_gender(s: &str) -> Option<Gender> {
    Gender::ALL.iter().copied().find(|g| g.token() == s)
}

fn parse_line(
    line_no: usize,
    line: &str,
    classes: &ParadigmSet,
) -> Result<LexiconEntry, LexiconError> {
    let malformed = |message: String| LexiconError::Malformed {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < 3 {
        return Err(malformed(format!(
            "expected root, pos and class id, found {} field(s)",
            fields.len()
        )));
    }
    let pos = PosCategory::from_code(fields[1]).map_err(|source| LexiconError::BadPos {
        line: line_no,
        source,
    })?;
    let class_id = fields[2];
    if classes.get(class_id).is_none() {
        return Err(LexiconError::UnknownClass {
            line: line_no,
            class_id: class_id.to_owned(),
        });
    }
    let mut entry = LexiconEntry::new(fields[0], pos, class_id);

    let mut last_key: Option<String> = None;
    for item in fields[3..].iter().flat_map(|f| f.split(',')) {
        if item.is_empty() {
            continue;
        }
        let (key, value) = match item.split_once('=') {
            Some((k, v)) => (k.to_owned(), v),
            None => match last_key.as_deref() {
                Some("flags") => ("flags".to_owned(), item),
                _ => return Err(malformed(format!("attribute {item:?} has no value"))),
            },
        };
        match key.as_str() {
            "gender" => {
                entry.gender = Some(
                    parse_gender(value).ok_or_else(|| malformed(format!("bad gender {value:?}")))?,
                )
            }
            "prefix" => entry.prefix = Some(value.to_owned()),
            "prefix_kind" => entry.prefix_kind = value.parse().map_err(malformed)?,
            "flags" => {
                let flag = value.parse().map_err(|flag| LexiconError::UnknownFlag {
                    line: line_no,
                    flag,
                })?;
                entry.flags.insert(flag);
            }
            k if k.starts_with("override.") && k.len() > "override.".len() => {
                entry
                    .overrides
                    .insert(k["override.".len()..].to_owned(), value.to_owned());
            }
            other => return Err(malformed(format!("unknown key {other:?}"))),
        }
        last_key = Some(key);
    }
    entry.validate(classes).map_err(|e| match e {
        LexiconError::InvalidEntry { message, .. } => malformed(message),
        other => other,
    })?;
    Ok(entry)
}

/// A multiset of entries indexed by root. Byte-identical duplicates are
/// dropped on insertion.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    by_root: HashMap<String, Vec<usize>>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entry_set() == other.entry_set()
    }
}

impl Eq for Lexicon {}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry. Returns `false` if an identical entry already exists.
    pub fn insert(&mut self, entry: LexiconEntry) -> bool {
        let slots = self.by_root.entry(entry.root.clone()).or_default();
        if slots.iter().any(|&i| self.entries[i] == entry) {
            return false;
        }
        slots.push(self.entries.len());
        self.entries.push(entry);
        true
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

    pub fn entry_set(&self) -> BTreeSet<&LexiconEntry> {
        self.entries.iter().collect()
    }

    /// All entries whose root equals `root` exactly.
    pub fn lookup_roots(&self, root: &str) -> Vec<&LexiconEntry> {
        self.by_root
            .get(root)
            .map(|ids| ids.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }
}

/// Parses lexicon file text.
pub fn load_lexicon(source: &str, classes: &ParadigmSet) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::new();
    for (i, line) in source.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        lex.insert(parse_line(i + 1, line, classes)?);
    }
    Ok(lex)
}

/// Serializes a lexicon, ordered by root, then part of speech, then class.
pub fn save_lexicon(lex: &Lexicon) -> String {
    let mut entries: Vec<&LexiconEntry> = lex.entries.iter().collect();
    entries.sort_by(|a, b| {
        (&a.root, a.pos.code(), &a.class_id)
            .cmp(&(&b.root, b.pos.code(), &b.class_id))
            .then_with(|| a.to_line().cmp(&b.to_line()))
    });
    let mut out = String::new();
    for e in entries {
        out.push_str(&e.to_line());
        out.push('\n');
    }
    out
}
