use std::collections::BTreeMap;

use crate::tagset::{Tag, TagSet, TagSetKind};

/// Pseudo-suffix under which capitalized training forms are counted.
pub const CAP_KEY: &str = "<CAP>";

/// Tag counts per word-final letter sequence, for guessing unknown words.
#[derive(Debug, Clone, PartialEq)]
pub struct SuffixModel {
    pub kind: TagSetKind,
    pub max_len: usize,
    pub threshold: u64,
    counts: BTreeMap<String, BTreeMap<Tag, u64>>,
}

impl SuffixModel {
    pub fn new(kind: TagSetKind, max_len: usize, threshold: u64) -> SuffixModel {
        SuffixModel {
            kind,
            max_len,
            threshold,
            counts: BTreeMap::new(),
        }
    }

    /// Counts every proper suffix of `form` up to `max_len` letters, and the
    /// capitalization key.
    pub fn observe(&mut self, form: &str, tag: Tag) {
        let tag = tag.to_kind(self.kind);
        let chars: Vec<char> = form.chars().collect();
        let n = chars.len();
        for len in 1..=self.max_len.min(n.saturating_sub(1)) {
            let suffix: String = chars[n - len..].iter().collect();
            self.add_count(&suffix, tag, 1);
        }
        if super::starts_upper(form) {
            self.add_count(CAP_KEY, tag, 1);
        }
    }

    pub fn add_count(&mut self, suffix: &str, tag: Tag, count: u64) {
        *self
            .counts
            .entry(suffix.to_owned())
            .or_default()
            .entry(tag.to_kind(self.kind))
            .or_default() += count;
    }

    pub fn count(&self, suffix: &str, tag: &Tag) -> u64 {
        self.counts
            .get(suffix)
            .and_then(|m| m.get(tag))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(suffix, tag, count)` in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Tag, u64)> {
        self.counts
            .iter()
            .flat_map(|(s, m)| m.iter().map(move |(t, c)| (s.as_str(), t, *c)))
    }

    fn distribution(&self, key: &str) -> Option<BTreeMap<Tag, f64>> {
        let m = self.counts.get(key)?;
        let kept: Vec<(&Tag, u64)> = m
            .iter()
            .filter(|(t, _)| !t.pos().is_punctuation())
            .map(|(t, c)| (t, *c))
            .collect();
        let total: u64 = kept.iter().map(|(_, c)| c).sum();
        if total == 0 {
            return None;
        }
        Some(
            kept.into_iter()
                .map(|(t, c)| (*t, c as f64 / total as f64))
                .collect(),
        )
    }

    fn total_without_punctuation(&self, key: &str) -> u64 {
        self.counts.get(key).map_or(0, |m| {
            m.iter()
                .filter(|(t, _)| !t.pos().is_punctuation())
                .map(|(_, c)| c)
                .sum()
        })
    }
}

pub fn train_suffix_model<'a, I>(pairs: I, kind: TagSetKind, max_len: usize) -> SuffixModel
where
    I: IntoIterator<Item = (&'a str, Tag)>,
{
    let mut m = SuffixModel::new(kind, max_len, 3);
    for (form, tag) in pairs {
        m.observe(form, tag);
    }
    m
}

fn open_class_uniform(kind: TagSetKind) -> BTreeMap<Tag, f64> {
    let tags: Vec<Tag> = TagSet::new(kind)
        .members()
        .iter()
        .filter(|t| t.pos().is_open_class())
        .copied()
        .collect();
    let p = 1.0 / tags.len() as f64;
    tags.into_iter().map(|t| (t, p)).collect()
}

/// Tag distribution for a word the lexicon does not know: the longest
/// suffix seen at least `threshold` times, mixed half and half with the
/// capitalization distribution for capitalized forms. Sorted by falling
/// probability, then tag.
pub fn guess_unknown(form: &str, model: &SuffixModel) -> Vec<(Tag, f64)> {
    let chars: Vec<char> = form.chars().collect();
    let n = chars.len();
    let mut by_suffix = None;
    for len in (1..=model.max_len.min(n.saturating_sub(1))).rev() {
        let suffix: String = chars[n - len..].iter().collect();
        if model.total_without_punctuation(&suffix) >= model.threshold.max(1) {
            by_suffix = model.distribution(&suffix);
            break;
        }
    }
    let by_cap = if super::starts_upper(form) {
        model.distribution(CAP_KEY)
    } else {
        None
    };
    let dist = match (by_suffix, by_cap) {
        (Some(s), Some(c)) => {
            let mut d: BTreeMap<Tag, f64> = BTreeMap::new();
            for (t, p) in s {
                *d.entry(t).or_default() += 0.5 * p;
            }
            for (t, p) in c {
                *d.entry(t).or_default() += 0.5 * p;
            }
            d
        }
        (Some(d), None) | (None, Some(d)) => d,
        (None, None) => open_class_uniform(model.kind),
    };
    let total: f64 = dist.values().sum();
    let mut out: Vec<(Tag, f64)> = dist.into_iter().map(|(t, p)| (t, p / total)).collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}
