//! Analysis of word forms.
//!
//! A form is analyzed by cutting off every suffix the paradigm tables know,
//! building candidate roots from the remainder, looking those up, generating
//! the forms of every hit and keeping the readings whose surface equals the
//! input. Forms without readings are tried as noun compounds.

mod compound;
mod suffix;

pub use compound::{reassemble, CompoundElements, CompoundPart, LINKING};
pub use suffix::{guess_unknown, train_suffix_model, SuffixModel, CAP_KEY};

use std::collections::{BTreeSet, HashMap};

use crate::inflection::{
    all_lexemes, base_stem, generate_lexeme, named_stem, FormTable, FullFormLexicon,
    InflectionError, Lexeme, ParadigmSet, StemTransform,
};
use crate::lexicon::Lexicon;
use crate::tagset::Tag;

/// One reading of a form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Analysis {
    pub lemma: String,
    pub tag: Tag,
    /// Lemmas of the compound members, or just the lemma.
    pub segments: Vec<String>,
    /// Written pieces of a compound; empty for simple forms.
    pub parts: Vec<CompoundPart>,
}

impl Analysis {
    fn simple(lemma: &str, tag: Tag) -> Analysis {
        Analysis {
            lemma: lemma.to_owned(),
            tag,
            segments: vec![lemma.to_owned()],
            parts: Vec::new(),
        }
    }

    pub fn is_compound(&self) -> bool {
        !self.parts.is_empty()
    }

    /// `surface<TAB>lemma<TAB>tag<TAB>seg1/seg2…`
    pub fn to_line(&self, surface: &str) -> String {
        format!(
            "{surface}\t{}\t{}\t{}",
            self.lemma,
            self.tag,
            self.segments.join("/")
        )
    }
}

fn sort_analyses(v: &mut Vec<Analysis>) {
    v.sort_by(|a, b| {
        a.tag
            .to_string()
            .cmp(&b.tag.to_string())
            .then_with(|| a.lemma.cmp(&b.lemma))
            .then_with(|| a.segments.cmp(&b.segments))
    });
    v.dedup();
}

/// A root candidate produced by suffix stripping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootCandidate {
    pub root: String,
    pub suffix: String,
    /// Which reversals produced the root, `+` separated; empty for the bare
    /// remainder.
    pub note: String,
}

pub(crate) fn starts_upper(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

pub(crate) fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

pub(crate) fn decapitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_lowercase().chain(c).collect(),
        None => String::new(),
    }
}

fn replace_last(s: &str, from: &str, to: &str) -> Option<String> {
    let i = s.rfind(from)?;
    Some(format!("{}{to}{}", &s[..i], &s[i + from.len()..]))
}

/// Marker-free variants: a leading `ge`, or an infixed `ge`/`zu` after at
/// least two characters of prefix.
fn marker_variants(s: &str) -> Vec<(String, &'static str)> {
    let mut out = Vec::new();
    if let Some(rest) = s.strip_prefix("ge") {
        if !rest.is_empty() {
            out.push((rest.to_owned(), "ge"));
        }
    }
    for (marker, note) in [("ge", "ge"), ("zu", "zu")] {
        for (i, _) in s.match_indices(marker) {
            if i >= 2 && i + 2 < s.len() {
                out.push((format!("{}{}", &s[..i], &s[i + 2..]), note));
            }
        }
    }
    out
}

/// Root candidates for `form` under the given suffix inventory.
pub fn candidate_roots(form: &str, suffixes: &[String]) -> Vec<RootCandidate> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut emit = |root: String, suffix: &str, note: String| {
        if !root.is_empty() && seen.insert((root.clone(), suffix.to_owned())) {
            out.push(RootCandidate {
                root,
                suffix: suffix.to_owned(),
                note,
            });
        }
    };
    for suffix in suffixes {
        let Some(rest) = form.strip_suffix(suffix.as_str()) else {
            continue;
        };
        if rest.is_empty() {
            continue;
        }
        let mut variants: Vec<(String, Vec<&str>)> = vec![(rest.to_owned(), vec![])];
        if let Some(d) = crate::inflection::remove_umlaut(rest) {
            variants.push((d, vec!["umlaut"]));
        }
        for (v, notes) in variants.clone() {
            if let Some(s) = replace_last(&v, "ss", "ß") {
                let mut n = notes.clone();
                n.push("ss");
                variants.push((s, n));
            }
        }
        for (v, notes) in variants.clone() {
            if starts_upper(&v) {
                let mut n = notes.clone();
                n.push("lower");
                variants.push((decapitalize(&v), n));
            }
        }
        for (v, notes) in variants.clone() {
            for (m, note) in marker_variants(&v) {
                let mut n = notes.clone();
                n.push(note);
                variants.push((m, n));
            }
        }
        for (v, notes) in variants {
            emit(v, suffix, notes.join("+"));
        }
    }
    out
}

fn surface_matches(surface: &str, form: &str) -> bool {
    surface == form || (starts_upper(form) && !starts_upper(surface) && capitalize(surface) == form)
}

/// Analyzer over a lexicon: a stem index into the lexemes plus their
/// generated form tables.
#[derive(Debug, Clone)]
pub struct Analyzer {
    lexemes: Vec<Lexeme>,
    tables: Vec<FormTable>,
    index: HashMap<String, Vec<usize>>,
    suffixes: Vec<String>,
    elements: CompoundElements,
}

impl Analyzer {
    pub fn new(lex: &Lexicon, classes: &ParadigmSet) -> Result<Analyzer, InflectionError> {
        let lexemes = all_lexemes(lex, classes)?;
        let mut tables = Vec::with_capacity(lexemes.len());
        let mut index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, lexeme) in lexemes.iter().enumerate() {
            let table = generate_lexeme(lexeme, classes)?;
            for key in index_keys(lexeme, &table, classes) {
                let ids = index.entry(key).or_default();
                if ids.last() != Some(&i) {
                    ids.push(i);
                }
            }
            tables.push(table);
        }
        Ok(Analyzer {
            lexemes,
            tables,
            index,
            suffixes: classes.suffix_inventory(),
            elements: CompoundElements::new(lex),
        })
    }

    pub fn lexemes(&self) -> &[Lexeme] {
        &self.lexemes
    }

    pub fn tables(&self) -> &[FormTable] {
        &self.tables
    }

    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }

    pub fn elements(&self) -> &CompoundElements {
        &self.elements
    }

    pub fn candidate_roots(&self, form: &str) -> Vec<RootCandidate> {
        candidate_roots(form, &self.suffixes)
    }

    /// Readings from the lexicon alone, without compound segmentation. A
    /// capitalized form also matches lower-case generated forms.
    pub fn analyze_simple(&self, form: &str) -> Vec<Analysis> {
        let mut ids = BTreeSet::new();
        for c in self.candidate_roots(form) {
            if let Some(hits) = self.index.get(&c.root) {
                ids.extend(hits.iter().copied());
            }
        }
        let mut out = Vec::new();
        for i in ids {
            for row in &self.tables[i].rows {
                if surface_matches(&row.surface, form) {
                    out.push(Analysis::simple(&row.lemma, row.tag));
                }
            }
        }
        sort_analyses(&mut out);
        out
    }

    /// All readings of `form`; compounds are tried only when the lexicon
    /// gives none.
    pub fn analyze(&self, form: &str) -> Vec<Analysis> {
        let direct = self.analyze_simple(form);
        if !direct.is_empty() {
            return direct;
        }
        self.segment_compound(form)
    }

    pub fn segment_compound(&self, form: &str) -> Vec<Analysis> {
        let mut out = self.elements.segment(form, |head| self.analyze_simple(head));
        sort_analyses(&mut out);
        out
    }
}

/// Strings under which a lexeme is found: its stems before any default
/// umlaut, with the prefix attached, plus the full surface of every
/// irregular slot.
fn index_keys(lexeme: &Lexeme, table: &FormTable, classes: &ParadigmSet) -> BTreeSet<String> {
    let e = &lexeme.entry;
    let prefix = e.prefix.as_deref().unwrap_or("");
    let mut keys = BTreeSet::new();
    keys.insert(format!("{prefix}{}", base_stem(e)));
    let Some(class) = classes.get(&e.class_id) else {
        return keys;
    };
    for name in class.stem_names() {
        keys.insert(format!("{prefix}{}", named_stem(e, name).1));
    }
    let irregular: BTreeSet<&str> = class
        .slots
        .iter()
        .filter(|s| s.transform == StemTransform::Whole || e.overrides.contains_key(&s.id))
        .map(|s| s.id.as_str())
        .collect();
    for row in &table.rows {
        if irregular.contains(row.slot_id.as_str()) {
            keys.insert(row.surface.clone());
        }
    }
    keys
}

/// Convenience wrapper building a fresh [`Analyzer`].
pub fn analyze(form: &str, lex: &Lexicon, classes: &ParadigmSet) -> Result<Vec<Analysis>, InflectionError> {
    Ok(Analyzer::new(lex, classes)?.analyze(form))
}

/// Readings by direct lookup in a full-form lexicon, with the same
/// capitalization rule and the same compound routine as [`Analyzer`].
pub fn analyze_full_form(full: &FullFormLexicon, elements: &CompoundElements, form: &str) -> Vec<Analysis> {
    let simple = |f: &str| {
        let mut out = Vec::new();
        let mut add = |key: &str| {
            if let Some(rs) = full.lookup(key) {
                out.extend(rs.iter().map(|r| Analysis::simple(&r.lemma, r.tag)));
            }
        };
        add(f);
        if starts_upper(f) {
            let lower = decapitalize(f);
            if lower != f {
                add(&lower);
            }
        }
        sort_analyses(&mut out);
        out
    };
    let direct = simple(form);
    if !direct.is_empty() {
        return direct;
    }
    let mut out = elements.segment(form, simple);
    sort_analyses(&mut out);
    out
}
