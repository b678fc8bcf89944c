//! Paradigm class tables.
//!
//! Class file lines: `class_id<TAB>slot_id<TAB>tag template<TAB>suffix<TAB>stem_transform<TAB>marker`.
//! A suffix of `-` is the empty suffix. In tag templates `*` stands for the
//! entry's own part of speech and `A|B` lists alternatives, so one slot can
//! carry several tags for the same surface.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tagset::{parse_tag, Base, Dimension, Feature, Gender, PosCategory, Tag, TagError, TagSetKind};

#[derive(Debug, Error)]
pub enum ParadigmError {
    #[error("class file line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("class file line {line}: {source}")]
    BadTemplate { line: usize, source: TagError },
    #[error("class {class_id:?}: duplicate slot {slot_id:?}")]
    DuplicateSlot { class_id: String, slot_id: String },
}

/// A named alternative stem. Entries may override any of them with
/// `override.<name>=…`; otherwise a default is derived from the base stem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StemName {
    Pret,
    Part2,
    Pres23,
    Kj2,
    Imp,
    PresSg,
    Decl,
    Comp,
    Sup,
}

impl StemName {
    pub const ALL: [StemName; 9] = [
        StemName::Pret,
        StemName::Part2,
        StemName::Pres23,
        StemName::Kj2,
        StemName::Imp,
        StemName::PresSg,
        StemName::Decl,
        StemName::Comp,
        StemName::Sup,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StemName::Pret => "pret_stem",
            StemName::Part2 => "part2_stem",
            StemName::Pres23 => "pres23_stem",
            StemName::Kj2 => "kj2_stem",
            StemName::Imp => "imp_stem",
            StemName::PresSg => "pres_sg_stem",
            StemName::Decl => "decl_stem",
            StemName::Comp => "comp_stem",
            StemName::Sup => "sup_stem",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StemTransform {
    None,
    /// Umlaut, if the entry carries `umlaut_in_paradigm`.
    Umlaut,
    Named(StemName),
    /// The suffix field is the complete surface form.
    Whole,
}

impl FromStr for StemTransform {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(StemTransform::None),
            "umlaut" => Ok(StemTransform::Umlaut),
            "whole" => Ok(StemTransform::Whole),
            other => StemName::ALL
                .iter()
                .find(|n| n.as_str() == other)
                .map(|&n| StemTransform::Named(n))
                .ok_or_else(|| format!("unknown stem transform {other:?}")),
        }
    }
}

impl fmt::Display for StemTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StemTransform::None => f.write_str("none"),
            StemTransform::Umlaut => f.write_str("umlaut"),
            StemTransform::Whole => f.write_str("whole"),
            StemTransform::Named(n) => f.write_str(n.as_str()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    None,
    Ge,
    Zu,
}

impl FromStr for Marker {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Marker::None),
            "ge_prefix_or_infix" => Ok(Marker::Ge),
            "zu_infix" => Ok(Marker::Zu),
            other => Err(format!("unknown marker {other:?}")),
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::None => "none",
            Marker::Ge => "ge_prefix_or_infix",
            Marker::Zu => "zu_infix",
        })
    }
}

/// A tag template: one list of alternative tokens per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagTemplate {
    raw: String,
    tokens: Vec<Vec<String>>,
}

impl TagTemplate {
    pub fn parse(raw: &str) -> Result<TagTemplate, TagError> {
        if raw.is_empty() {
            return Err(TagError::Empty);
        }
        let tokens: Vec<Vec<String>> = raw
            .split(' ')
            .map(|t| t.split('|').map(str::to_owned).collect())
            .collect();
        let template = TagTemplate {
            raw: raw.to_owned(),
            tokens,
        };
        if !template.uses_entry_pos() {
            template.expand(PosCategory::Sub, None)?;
        }
        Ok(template)
    }

    pub fn as_str(&self) -> &str {
        &self.raw
    }

    fn uses_entry_pos(&self) -> bool {
        self.tokens.iter().any(|alts| alts.iter().any(|t| t == "*"))
    }

    /// Expands the alternatives for an entry. Noun tags without a gender
    /// receive the entry's gender.
    pub fn expand(&self, pos: PosCategory, gender: Option<Gender>) -> Result<Vec<Tag>, TagError> {
        let mut strings = vec![String::new()];
        for alts in &self.tokens {
            let mut next = Vec::with_capacity(strings.len() * alts.len());
            for prefix in &strings {
                for alt in alts {
                    let token = if alt == "*" { pos.code() } else { alt.as_str() };
                    let mut s = prefix.clone();
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    s.push_str(token);
                    next.push(s);
                }
            }
            strings = next;
        }
        strings
            .iter()
            .map(|s| {
                let mut tag = parse_tag(s, TagSetKind::Large)?;
                if let (Some(g), Base::Pos(PosCategory::Sub | PosCategory::Eig)) = (gender, tag.base) {
                    if tag.features.get(Dimension::Gender).is_none() {
                        tag.features.insert(Feature::Gender(g));
                    }
                }
                Ok(tag)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub id: String,
    pub template: TagTemplate,
    /// Empty string for the empty suffix.
    pub suffix: String,
    pub transform: StemTransform,
    pub marker: Marker,
}

/// The slots of one inflection class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadigmTable {
    pub class_id: String,
    pub slots: Vec<Slot>,
}

impl ParadigmTable {
    pub fn slot(&self, id: &str) -> Option<&Slot> {
        self.slots.iter().find(|s| s.id == id)
    }

    /// Named stems some slot of this class draws on.
    pub fn stem_names(&self) -> BTreeSet<StemName> {
        self.slots
            .iter()
            .filter_map(|s| match s.transform {
                StemTransform::Named(n) => Some(n),
                _ => None,
            })
            .collect()
    }

    /// Override keys may name a slot (full form) or a stem the class uses.
    pub fn accepts_override(&self, key: &str) -> bool {
        self.slot(key).is_some() || self.stem_names().iter().any(|n| n.as_str() == key)
    }
}

/// All classes, keyed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParadigmSet {
    classes: BTreeMap<String, ParadigmTable>,
}

impl ParadigmSet {
    pub fn get(&self, class_id: &str) -> Option<&ParadigmTable> {
        self.classes.get(class_id)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ParadigmTable> {
        self.classes.values()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Every suffix a regular slot can attach, including the empty one.
    /// Whole-form slots contribute nothing: their forms are indexed directly.
    pub fn suffix_inventory(&self) -> Vec<String> {
        let mut set: BTreeSet<String> = BTreeSet::new();
        set.insert(String::new());
        for table in self.classes.values() {
            for slot in &table.slots {
                if slot.transform != StemTransform::Whole {
                    set.insert(slot.suffix.clone());
                }
            }
        }
        let mut out: Vec<String> = set.into_iter().collect();
        out.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then(a.cmp(b)));
        out
    }

    pub fn load(source: &str) -> Result<ParadigmSet, ParadigmError> {
        let mut classes: BTreeMap<String, ParadigmTable> = BTreeMap::new();
        for (i, line) in source.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |message: String| ParadigmError::Malformed {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 6 {
                return Err(malformed(format!("expected 6 fields, found {}", fields.len())));
            }
            let template = TagTemplate::parse(fields[2]).map_err(|source| {
                ParadigmError::BadTemplate {
                    line: line_no,
                    source,
                }
            })?;
            let suffix = if fields[3] == "-" { "" } else { fields[3] };
            let slot = Slot {
                id: fields[1].to_owned(),
                template,
                suffix: suffix.to_owned(),
                transform: fields[4].parse().map_err(malformed)?,
                marker: fields[5].parse().map_err(malformed)?,
            };
            let table = classes
                .entry(fields[0].to_owned())
                .or_insert_with(|| ParadigmTable {
                    class_id: fields[0].to_owned(),
                    slots: Vec::new(),
                });
            if table.slot(&slot.id).is_some() {
                return Err(ParadigmError::DuplicateSlot {
                    class_id: fields[0].to_owned(),
                    slot_id: slot.id,
                });
            }
            table.slots.push(slot);
        }
        Ok(ParadigmSet { classes })
    }
}
