//! Question-driven classification of new roots.
//!
//! Every question offers numbered alternatives. Where possible the
//! alternatives are concrete forms generated from candidate entries, so a
//! speaker answers by recognition. A state only stores the answers given so
//! far; the pending question is recomputed by replaying them.

use thiserror::Error;

use super::{Flag, LexiconEntry, PrefixKind};
use crate::inflection::{apply_umlaut, generate_forms, ParadigmSet};
use crate::tagset::{Gender, PosCategory};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DialogueError {
    #[error("empty root")]
    EmptyRoot,
    #[error("{0:?} is not an infinitive")]
    NotAnInfinitive(String),
    #[error("choice {choice} out of range 1..={max}")]
    OutOfRange { choice: usize, max: usize },
    #[error("classification already complete")]
    Completed,
    #[error("class {0:?} missing from the paradigm data")]
    MissingClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosTrack {
    Verb,
    Noun,
    Name,
    Adjective,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternative {
    /// 1-based.
    pub number: usize,
    pub label: String,
    /// The generated surface form the label shows, if any.
    pub form: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    pub id: &'static str,
    pub text: String,
    pub alternatives: Vec<Alternative>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueState {
    pub pos: PosCategory,
    pub pos_track: PosTrack,
    pub root: String,
    pub answered: Vec<(&'static str, usize)>,
    pub pending: Option<Question>,
    pub draft: LexiconEntry,
}

impl DialogueState {
    pub fn is_complete(&self) -> bool {
        self.pending.is_none()
    }

    /// The finished entry, once no question is pending.
    pub fn entry(&self) -> Option<&LexiconEntry> {
        self.is_complete().then_some(&self.draft)
    }

    /// Surface forms of the alternatives chosen so far.
    pub fn chosen_forms(&self, classes: &ParadigmSet) -> Vec<String> {
        let mut out = Vec::new();
        for n in 0..self.answered.len() {
            let Ok(Step::Ask(q, _)) = replay(self.pos, &self.root, &self.answered_choices()[..n], classes)
            else {
                continue;
            };
            let choice = self.answered[n].1;
            if let Some(form) = &q.alternatives[choice - 1].form {
                out.push(form.clone());
            }
        }
        out
    }

    fn answered_choices(&self) -> Vec<usize> {
        self.answered.iter().map(|&(_, c)| c).collect()
    }
}

fn track_of(pos: PosCategory) -> PosTrack {
    match pos {
        PosCategory::Ver => PosTrack::Verb,
        PosCategory::Sub => PosTrack::Noun,
        PosCategory::Eig => PosTrack::Name,
        PosCategory::Adj => PosTrack::Adjective,
        _ => PosTrack::Closed,
    }
}

enum Step {
    Ask(Question, LexiconEntry),
    Done(LexiconEntry),
}

/// A candidate draft behind one alternative.
struct Candidate {
    label: String,
    form: Option<String>,
    entry: LexiconEntry,
}

struct Walker<'a> {
    answers: &'a [usize],
    next: usize,
}

impl Walker<'_> {
    /// Returns the chosen candidate, or the question itself when it has not
    /// been answered yet.
    fn choose(
        &mut self,
        id: &'static str,
        text: String,
        candidates: Vec<Candidate>,
    ) -> Result<LexiconEntry, Step> {
        match self.answers.get(self.next) {
            Some(&c) => {
                self.next += 1;
                Ok(candidates.into_iter().nth(c - 1).expect("validated choice").entry)
            }
            None => {
                let draft = candidates[0].entry.clone();
                let alternatives = candidates
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| Alternative {
                        number: i + 1,
                        label: c.label,
                        form: c.form,
                    })
                    .collect();
                Err(Step::Ask(
                    Question {
                        id,
                        text,
                        alternatives,
                    },
                    draft,
                ))
            }
        }
    }
}

fn yes_no(yes: LexiconEntry, no: LexiconEntry) -> Vec<Candidate> {
    vec![
        Candidate {
            label: "Ja".into(),
            form: None,
            entry: yes,
        },
        Candidate {
            label: "Nein".into(),
            form: None,
            entry: no,
        },
    ]
}

fn slot_form(entry: &LexiconEntry, slot: &str, classes: &ParadigmSet) -> Option<String> {
    generate_forms(entry, classes)
        .ok()?
        .rows
        .into_iter()
        .find(|r| r.slot_id == slot)
        .map(|r| r.surface)
}

/// Candidates labelled by the form they generate in `slot`; candidates
/// with a duplicate or missing form are dropped.
fn form_candidates(
    entries: Vec<LexiconEntry>,
    slot: &str,
    label_prefix: &str,
    classes: &ParadigmSet,
) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for entry in entries {
        let Some(form) = slot_form(&entry, slot, classes) else {
            continue;
        };
        if out.iter().any(|c| c.form.as_deref() == Some(form.as_str())) {
            continue;
        }
        out.push(Candidate {
            label: format!("{label_prefix}{form}"),
            form: Some(form),
            entry,
        });
    }
    out
}

const SEPARABLE: &[&str] = &[
    "zurück", "nach", "mit", "auf", "aus", "ein", "vor", "weg", "ab", "an", "zu",
];

fn verb_stem(root: &str) -> &str {
    root.strip_suffix("en")
        .or_else(|| root.strip_suffix('n'))
        .unwrap_or(root)
}

fn is_vowel(c: char) -> bool {
    "aeiouäöü".contains(c)
}

/// Byte range of the last vowel run of `s`.
fn nucleus(s: &str) -> Option<(usize, usize)> {
    let idx: Vec<(usize, char)> = s.char_indices().collect();
    let last = idx.iter().rposition(|&(_, c)| is_vowel(c))?;
    let mut first = last;
    while first > 0 && is_vowel(idx[first - 1].1) {
        first -= 1;
    }
    let end = idx[last].0 + idx[last].1.len_utf8();
    Some((idx[first].0, end))
}

/// Replaces the stem nucleus; with `shorten`, a following `h` is dropped and
/// the next consonant doubled (`nehm` → `nomm`).
fn with_vowel(stem: &str, vowel: &str, shorten: bool) -> Option<String> {
    let (a, b) = nucleus(stem)?;
    let tail = &stem[b..];
    if !shorten {
        return Some(format!("{}{vowel}{tail}", &stem[..a]));
    }
    let rest = tail.strip_prefix('h')?;
    let mut chars = rest.chars();
    let c = chars.next()?;
    if is_vowel(c) || chars.next().is_some() {
        return None;
    }
    Some(format!("{}{vowel}{c}{c}", &stem[..a]))
}

fn verb_tree(
    root: &str,
    w: &mut Walker,
    classes: &ParadigmSet,
) -> Result<LexiconEntry, Step> {
    let mut base = LexiconEntry::new(root, PosCategory::Ver, "v_weak");
    if let Some((p, rest)) = SEPARABLE
        .iter()
        .find_map(|p| root.strip_prefix(p).map(|r| (*p, r)))
        .filter(|(_, r)| verb_stem(r).chars().count() >= 3)
    {
        let split = LexiconEntry {
            root: rest.to_owned(),
            ..base.clone()
        }
        .with_prefix(p, PrefixKind::Separable);
        base = w.choose(
            "separable",
            format!("Wird „{p}“ im Hauptsatz abgetrennt (er … {p})?"),
            yes_no(split, base),
        )?;
    }
    if verb_stem(&base.root).ends_with("ss") {
        base = base.with_flag(Flag::SsSharpShift);
    }
    let stem = verb_stem(&base.root).to_owned();
    let weak = w.choose(
        "weak",
        "Wird das Verb schwach konjugiert?".into(),
        yes_no(base.clone(), LexiconEntry {
            class_id: "v_strong".into(),
            ..base.clone()
        }),
    )?;
    if weak.class_id == "v_weak" {
        let ends_n = !base.root.ends_with("en");
        let first = if ends_n { "v_weak_n" } else { "v_weak" };
        let entries = [first, "v_weak_et", "v_weak_s"]
            .iter()
            .map(|c| LexiconEntry {
                class_id: (*c).into(),
                ..base.clone()
            })
            .collect();
        let chosen = w.choose(
            "pres_2sg",
            "Wie lautet die 2. Person Singular Präsens?".into(),
            form_candidates(entries, "pres_2sg", "du ", classes),
        )?;
        if chosen.is_separable() {
            return Ok(chosen);
        }
        let entries = vec![chosen.clone().with_flag(Flag::NoGeParticiple), chosen];
        return w.choose(
            "participle",
            "Wie lautet das Partizip des Verbs?".into(),
            form_candidates(entries, "part2", "", classes),
        );
    }

    let class = match stem.chars().last() {
        Some('d' | 't') => "v_strong_et",
        Some('s' | 'ß' | 'z' | 'x') => "v_strong_s",
        _ => "v_strong",
    };
    let strong = LexiconEntry {
        class_id: class.into(),
        ..base.clone()
    };
    let orig = nucleus(&stem).map(|(a, b)| stem[a..b].to_owned()).unwrap_or_default();
    let pret: Vec<LexiconEntry> = ["a", "ie", "i", "o", "u"]
        .iter()
        .filter(|v| **v != orig)
        .filter_map(|v| with_vowel(&stem, v, false))
        .map(|p| strong.clone().with_override("pret_stem", p))
        .collect();
    let strong = w.choose(
        "preterite",
        "Wie lautet die 1. Person Singular Präteritum?".into(),
        form_candidates(pret, "prt_sg", "ich ", classes),
    )?;
    let mut part2 = vec![strong.clone()];
    for v in ["o", "a", "u", "ie", "i"] {
        for shorten in [false, true] {
            if let Some(s) = with_vowel(&stem, v, shorten) {
                part2.push(strong.clone().with_override("part2_stem", s));
            }
        }
    }
    let strong = w.choose(
        "participle",
        "Wie lautet das Partizip des Verbs?".into(),
        form_candidates(part2, "part2", "", classes),
    )?;
    let mut pres = vec![strong.clone()];
    if apply_umlaut(&stem) != stem {
        pres.push(strong.clone().with_flag(Flag::UmlautInParadigm));
    }
    if orig == "e" {
        for (v, shorten) in [("i", false), ("ie", false), ("i", true)] {
            if let Some(s) = with_vowel(&stem, v, shorten) {
                pres.push(
                    strong
                        .clone()
                        .with_override("pres23_stem", s.clone())
                        .with_override("imp_stem", s),
                );
            }
        }
    }
    w.choose(
        "pres_2sg",
        "Wie lautet die 2. Person Singular Präsens?".into(),
        form_candidates(pres, "pres_2sg", "du ", classes),
    )
}

fn article(g: Gender) -> &'static str {
    match g {
        Gender::Mas => "der",
        Gender::Fem => "die",
        Gender::Neu => "das",
    }
}

fn gender_question(root: &str, pos: PosCategory, class: &str, w: &mut Walker) -> Result<LexiconEntry, Step> {
    let candidates = Gender::ALL
        .iter()
        .map(|&g| Candidate {
            label: format!("{} {root}", article(g)),
            form: None,
            entry: LexiconEntry::new(root, pos, class).with_gender(g),
        })
        .collect();
    w.choose("gender", "Welches Genus hat das Wort?".into(), candidates)
}

fn noun_tree(root: &str, w: &mut Walker, classes: &ParadigmSet) -> Result<LexiconEntry, Step> {
    let chosen = gender_question(root, PosCategory::Sub, "n_e_s", w)?;
    let gender = chosen.gender.expect("gender chosen");
    let provisional = if gender == Gender::Fem { "0" } else { "s" };
    let zero = if root.ends_with('n') { "0n" } else { "0" };
    let mut entries = Vec::new();
    for pl in ["e", "en", "n", "er", "s", zero] {
        let plain = LexiconEntry {
            class_id: format!("n_{pl}_{provisional}"),
            ..chosen.clone()
        };
        let mut variants = vec![plain.clone()];
        if apply_umlaut(root) != root {
            variants.push(plain.clone().with_flag(Flag::UmlautInParadigm));
        }
        if root.ends_with('ß') {
            let shifted: Vec<_> = variants.iter().map(|v| v.clone().with_flag(Flag::SsSharpShift)).collect();
            variants.extend(shifted);
        }
        entries.extend(variants);
    }
    let chosen = w.choose(
        "plural",
        "Wie lautet der Nominativ Plural?".into(),
        form_candidates(entries, "pl", "die ", classes),
    )?;
    if gender == Gender::Fem {
        return Ok(chosen);
    }
    let pl = chosen.class_id["n_".len()..chosen.class_id.rfind('_').unwrap()].to_owned();
    let entries = ["es", "s", "en", "n"]
        .iter()
        .map(|g| LexiconEntry {
            class_id: format!("n_{pl}_{g}"),
            ..chosen.clone()
        })
        .collect();
    w.choose(
        "genitive",
        "Wie lautet der Genitiv Singular?".into(),
        form_candidates(entries, "gen_sg", "des ", classes),
    )
}

fn adjective_tree(root: &str, w: &mut Walker, classes: &ParadigmSet) -> Result<LexiconEntry, Step> {
    let mut base = LexiconEntry::new(root, PosCategory::Adj, "adj");
    if let Some(head) = root.strip_suffix('e') {
        base = base.with_override("decl_stem", head);
    } else if root.ends_with("el") || root.ends_with("er") {
        let n = root.len();
        let contracted = format!("{}{}", &root[..n - 2], &root[n - 1..]);
        let entries = vec![base.clone().with_override("decl_stem", contracted), base.clone()];
        base = w.choose(
            "decl_stem",
            "Wie lautet die attributive Form (Nominativ Singular feminin)?".into(),
            form_candidates(entries, "pos_e0", "die ", classes),
        )?;
    }
    let mut entries = vec![base.clone()];
    if apply_umlaut(root) != root {
        entries.push(base.clone().with_flag(Flag::UmlautInParadigm));
    }
    let mut candidates = form_candidates(entries, "adv_kom", "", classes);
    candidates.push(Candidate {
        label: "nicht steigerbar".into(),
        form: None,
        entry: LexiconEntry {
            class_id: "adj_nocomp".into(),
            ..base.clone()
        },
    });
    let chosen = w.choose("comparative", "Wie lautet der Komparativ?".into(), candidates)?;
    let sibilant = ["s", "ß", "z", "x", "t", "d"].iter().any(|s| root.ends_with(s));
    if chosen.class_id == "adj_nocomp" || !sibilant {
        return Ok(chosen);
    }
    let entries = vec![
        LexiconEntry {
            class_id: "adj_est".into(),
            ..chosen.clone()
        },
        chosen,
    ];
    w.choose(
        "superlative",
        "Wie lautet der Superlativ?".into(),
        form_candidates(entries, "adv_sup", "am ", classes),
    )
}

fn closed_entry(root: &str, pos: PosCategory) -> LexiconEntry {
    let class = if pos == PosCategory::Prp { "prp_dat_akk" } else { "inv" };
    LexiconEntry::new(root, pos, class)
}

fn replay(
    pos: PosCategory,
    root: &str,
    answers: &[usize],
    classes: &ParadigmSet,
) -> Result<Step, DialogueError> {
    let mut w = Walker { answers, next: 0 };
    let result = match track_of(pos) {
        PosTrack::Verb => verb_tree(root, &mut w, classes),
        PosTrack::Noun => noun_tree(root, &mut w, classes),
        PosTrack::Name => gender_question(root, pos, "eig", &mut w),
        PosTrack::Adjective => adjective_tree(root, &mut w, classes),
        PosTrack::Closed => Ok(closed_entry(root, pos)),
    };
    let step = match result {
        Ok(entry) => Step::Done(entry),
        Err(ask) => ask,
    };
    if let Step::Done(entry) = &step {
        if classes.get(&entry.class_id).is_none() {
            return Err(DialogueError::MissingClass(entry.class_id.clone()));
        }
    }
    Ok(step)
}

fn state_from(
    pos: PosCategory,
    root: &str,
    answered: Vec<(&'static str, usize)>,
    classes: &ParadigmSet,
) -> Result<DialogueState, DialogueError> {
    let choices: Vec<usize> = answered.iter().map(|&(_, c)| c).collect();
    let (pending, draft) = match replay(pos, root, &choices, classes)? {
        Step::Ask(q, draft) => (Some(q), draft),
        Step::Done(entry) => (None, entry),
    };
    Ok(DialogueState {
        pos,
        pos_track: track_of(pos),
        root: root.to_owned(),
        answered,
        pending,
        draft,
    })
}

/// Starts classifying `root`. Verbs are entered as infinitives.
pub fn start_classification(
    pos: PosCategory,
    root: &str,
    classes: &ParadigmSet,
) -> Result<DialogueState, DialogueError> {
    let root = root.trim();
    if root.is_empty() {
        return Err(DialogueError::EmptyRoot);
    }
    if pos == PosCategory::Ver && !root.ends_with('n') {
        return Err(DialogueError::NotAnInfinitive(root.to_owned()));
    }
    state_from(pos, root, Vec::new(), classes)
}

/// Answers the pending question with a 1-based choice.
pub fn answer(
    state: &DialogueState,
    choice: usize,
    classes: &ParadigmSet,
) -> Result<DialogueState, DialogueError> {
    let q = state.pending.as_ref().ok_or(DialogueError::Completed)?;
    let max = q.alternatives.len();
    if choice == 0 || choice > max {
        return Err(DialogueError::OutOfRange { choice, max });
    }
    let mut answered = state.answered.clone();
    answered.push((q.id, choice));
    state_from(state.pos, &state.root, answered, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    fn run(pos: PosCategory, root: &str, choices: &[usize]) -> DialogueState {
        let c = seed::paradigms();
        let mut s = start_classification(pos, root, &c).unwrap();
        for &ch in choices {
            s = answer(&s, ch, &c).unwrap();
        }
        s
    }

    #[test]
    fn telefonieren_follows_the_printed_transcript() {
        let c = seed::paradigms();
        let s = start_classification(PosCategory::Ver, "telefonieren", &c).unwrap();
        let q = s.pending.as_ref().unwrap();
        assert_eq!(q.text, "Wird das Verb schwach konjugiert?");
        let labels: Vec<_> = q.alternatives.iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["Ja", "Nein"]);

        let s = answer(&s, 1, &c).unwrap();
        let q = s.pending.as_ref().unwrap();
        assert_eq!(q.text, "Wie lautet die 2. Person Singular Präsens?");
        let labels: Vec<_> = q.alternatives.iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["du telefonierst", "du telefonierest", "du telefoniert"]);

        let s = answer(&s, 1, &c).unwrap();
        let q = s.pending.as_ref().unwrap();
        assert_eq!(q.text, "Wie lautet das Partizip des Verbs?");
        let labels: Vec<_> = q.alternatives.iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["telefoniert", "getelefoniert"]);

        let s = answer(&s, 1, &c).unwrap();
        let e = s.entry().unwrap();
        assert_eq!(e.class_id, "v_weak");
        assert!(e.has_flag(Flag::NoGeParticiple));
        let forms = generate_forms(e, &c).unwrap();
        assert!(forms.contains("telefonierst"));
        assert!(forms.contains("telefoniert"));
        assert!(!forms.contains("getelefoniert"));
    }

    #[test]
    fn spielen_takes_ge() {
        let s = run(PosCategory::Ver, "spielen", &[1, 1, 2]);
        let e = s.entry().unwrap();
        assert!(!e.has_flag(Flag::NoGeParticiple));
        assert!(generate_forms(e, &seed::paradigms()).unwrap().contains("gespielt"));
    }

    #[test]
    fn noun_starts_with_gender() {
        let s = run(PosCategory::Sub, "Haus", &[]);
        assert_eq!(s.pending.as_ref().unwrap().id, "gender");
        let s = run(PosCategory::Sub, "Haus", &[3]);
        let q = s.pending.as_ref().unwrap();
        assert!(q.alternatives.iter().any(|a| a.label == "die Häuser"));
    }

    #[test]
    fn closed_classes_need_no_questions() {
        let s = run(PosCategory::Prp, "durch", &[]);
        assert!(s.is_complete());
        assert_eq!(s.entry().unwrap().root, "durch");
    }

    #[test]
    fn rejects_bad_choices_and_roots() {
        let c = seed::paradigms();
        let s = start_classification(PosCategory::Ver, "spielen", &c).unwrap();
        assert_eq!(
            answer(&s, 9, &c).unwrap_err(),
            DialogueError::OutOfRange { choice: 9, max: 2 }
        );
        assert_eq!(answer(&s, 0, &c).unwrap_err(), DialogueError::OutOfRange { choice: 0, max: 2 });
        assert_eq!(
            start_classification(PosCategory::Sub, "  ", &c).unwrap_err(),
            DialogueError::EmptyRoot
        );
        let done = run(PosCategory::Prp, "durch", &[]);
        assert_eq!(answer(&done, 1, &c).unwrap_err(), DialogueError::Completed);
    }

    #[test]
    fn strong_verb_reaches_nehmen() {
        let c = seed::paradigms();
        let mut s = start_classification(PosCategory::Ver, "nehmen", &c).unwrap();
        s = answer(&s, 2, &c).unwrap();
        for want in ["ich nahm", "genommen", "du nimmst"] {
            let q = s.pending.clone().unwrap();
            let pick = q
                .alternatives
                .iter()
                .find(|a| a.label == want)
                .unwrap_or_else(|| panic!("{want} missing from {:?}", q.alternatives));
            s = answer(&s, pick.number, &c).unwrap();
        }
        let forms = generate_forms(s.entry().unwrap(), &c).unwrap();
        for f in ["nimmt", "nahmen", "nähme", "genommen", "nimm"] {
            assert!(forms.contains(f), "{f}");
        }
    }
}
