//! Supervised tagging: tag n-gram and lexical counts from an annotated
//! corpus, and three decoders over the candidate tags morphology offers.

mod decode;
mod io;

pub use decode::{
    decode_bruteforce, decode_church, decode_varcontext, sequence_score, tag_bruteforce, tag_church,
    tag_varcontext, BRUTEFORCE_LIMIT,
};
pub use io::{read_models, write_models};

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::analysis::{guess_unknown, Analyzer, SuffixModel};
use crate::corpus::AnnotatedCorpus;
use crate::tagset::{Base, Features, PosCategory, Tag, TagSet, TagSetKind};

#[derive(Debug, Error, PartialEq)]
pub enum TaggerError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("line {line}: tag {tag} is not in the {kind} tag set")]
    InvalidTag { line: usize, tag: String, kind: String },
    #[error("{count} candidate sequences exceed the limit of {limit}")]
    TooManySequences { count: u128, limit: u128 },
    #[error("n-gram order {0} is below 3")]
    Order(usize),
    #[error("model file line {line}: {message}")]
    ModelFile { line: usize, message: String },
}

/// Symbol id of the sentence boundary.
pub const BOUNDARY: u16 = 0;
/// Written form of the boundary in model files.
pub const BOUNDARY_NAME: &str = "<B>";
/// How many suffix-model guesses an unknown word keeps.
pub const UNKNOWN_CANDIDATES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smoothing {
    /// Weights of the unigram, bigram and trigram frequencies.
    pub lambdas: [f64; 3],
    pub epsilon: f64,
}

impl Default for Smoothing {
    fn default() -> Smoothing {
        Smoothing {
            lambdas: [0.1, 0.3, 0.6],
            epsilon: 1e-6,
        }
    }
}

/// Trained counts plus smoothing settings. Immutable once built.
#[derive(Debug, Clone)]
pub struct Models {
    pub kind: TagSetKind,
    pub n_max: usize,
    pub smoothing: Smoothing,
    /// Lexical probabilities replaced by a uniform choice among candidates.
    pub lexical_ablated: bool,
    vocab: Vec<Tag>,
    names: Vec<String>,
    ids: HashMap<Tag, u16>,
    ngrams: HashMap<Vec<u16>, u64>,
    prefix_totals: HashMap<Vec<u16>, u64>,
    symbols_total: u64,
    lexical: HashMap<String, HashMap<u16, u64>>,
    pub suffix: SuffixModel,
}

impl Models {
    /// Empty models over the full tag set of `kind`.
    pub fn empty(kind: TagSetKind, n_max: usize) -> Result<Models, TaggerError> {
        if n_max < 3 {
            return Err(TaggerError::Order(n_max));
        }
        let vocab: Vec<Tag> = TagSet::new(kind).members().to_vec();
        let mut names = vec![BOUNDARY_NAME.to_owned()];
        names.extend(vocab.iter().map(Tag::to_string));
        let ids = vocab
            .iter()
            .enumerate()
            .map(|(i, t)| (*t, (i + 1) as u16))
            .collect();
        Ok(Models {
            kind,
            n_max,
            smoothing: Smoothing::default(),
            lexical_ablated: false,
            vocab,
            names,
            ids,
            ngrams: HashMap::new(),
            prefix_totals: HashMap::new(),
            symbols_total: 0,
            lexical: HashMap::new(),
            suffix: SuffixModel::new(kind, 5, 3),
        })
    }

    /// Symbol of a tag, after mapping it to this model's tag set.
    pub fn id_of(&self, tag: &Tag) -> Option<u16> {
        self.ids.get(&tag.to_kind(self.kind)).copied()
    }

    pub fn tag_of(&self, id: u16) -> Option<Tag> {
        if id == BOUNDARY {
            None
        } else {
            self.vocab.get(id as usize - 1).copied()
        }
    }

    pub fn name_of(&self, id: u16) -> &str {
        &self.names[id as usize]
    }

    pub(crate) fn id_of_name(&self, name: &str) -> Option<u16> {
        if name == BOUNDARY_NAME {
            return Some(BOUNDARY);
        }
        let tag = crate::tagset::parse_tag(name, self.kind).ok()?;
        self.ids.get(&tag).copied()
    }

    /// Every symbol a context can predict: the boundary and all tags.
    pub fn symbols(&self) -> std::ops::RangeInclusive<u16> {
        0..=self.vocab.len() as u16
    }

    pub fn vocabulary(&self) -> &[Tag] {
        &self.vocab
    }

    pub fn count(&self, seq: &[u16]) -> u64 {
        self.ngrams.get(seq).copied().unwrap_or(0)
    }

    pub fn ngram_len(&self) -> usize {
        self.ngrams.len()
    }

    pub fn add_ngram(&mut self, seq: &[u16], count: u64) {
        *self.ngrams.entry(seq.to_vec()).or_default() += count;
        if seq.len() == 1 {
            self.symbols_total += count;
        } else {
            *self.prefix_totals.entry(seq[..seq.len() - 1].to_vec()).or_default() += count;
        }
    }

    pub fn add_lexical(&mut self, form: &str, id: u16, count: u64) {
        *self
            .lexical
            .entry(form.to_owned())
            .or_default()
            .entry(id)
            .or_default() += count;
    }

    pub fn lexical_count(&self, form: &str, id: u16) -> u64 {
        self.lexical
            .get(form)
            .and_then(|m| m.get(&id))
            .copied()
            .unwrap_or(0)
    }

    /// Sorted n-grams as `(sequence, count)`.
    pub fn ngrams(&self) -> Vec<(&[u16], u64)> {
        let mut v: Vec<(&[u16], u64)> = self.ngrams.iter().map(|(k, c)| (k.as_slice(), *c)).collect();
        v.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.iter().map(|s| self.name_of(*s)).cmp(b.0.iter().map(|s| self.name_of(*s))))
        });
        v
    }

    /// Sorted lexical counts as `(form, tag, count)`.
    pub fn lexical_counts(&self) -> Vec<(&str, u16, u64)> {
        let mut v: Vec<(&str, u16, u64)> = self
            .lexical
            .iter()
            .flat_map(|(f, m)| m.iter().map(move |(t, c)| (f.as_str(), *t, *c)))
            .collect();
        v.sort_by(|a, b| a.0.cmp(b.0).then_with(|| self.name_of(a.1).cmp(self.name_of(b.1))));
        v
    }

    /// Two-symbol contexts observed in training.
    pub fn contexts(&self) -> Vec<[u16; 2]> {
        let mut v: Vec<[u16; 2]> = self
            .prefix_totals
            .keys()
            .filter(|k| k.len() == 2)
            .map(|k| [k[0], k[1]])
            .collect();
        v.sort_unstable();
        v
    }

    fn relative(&self, context: &[u16], t: u16) -> Option<f64> {
        let total = if context.is_empty() {
            self.symbols_total
        } else {
            self.prefix_totals.get(context).copied().unwrap_or(0)
        };
        if total == 0 {
            return None;
        }
        let mut key = [0u16; 3];
        key[..context.len()].copy_from_slice(context);
        key[context.len()] = t;
        Some(self.count(&key[..=context.len()]) as f64 / total as f64)
    }

    /// Smoothed P(t | u v). An unseen context falls back to the next lower
    /// order, so each distribution sums to one over [`Models::symbols`].
    pub fn contextual(&self, u: u16, v: u16, t: u16) -> f64 {
        let [l1, l2, l3] = self.smoothing.lambdas;
        let eps = self.smoothing.epsilon;
        let uni = self.relative(&[], t).unwrap_or(1.0 / (self.vocab.len() + 1) as f64);
        let bi = self.relative(&[v], t).unwrap_or(uni);
        let tri = self.relative(&[u, v], t).unwrap_or(bi);
        let size = (self.vocab.len() + 1) as f64;
        (l1 * uni + l2 * bi + l3 * tri + eps) / (1.0 + size * eps)
    }

    /// P(form | tag) from the counts, floored at epsilon.
    pub fn lexical(&self, form: &str, id: u16) -> f64 {
        let tag_total = self.count(&[id]);
        let eps = self.smoothing.epsilon;
        if tag_total == 0 {
            return eps;
        }
        (self.lexical_count(form, id) as f64 / tag_total as f64).max(eps)
    }

    /// Bayes inversion of a suffix guess P(tag | form) into P(form | tag),
    /// with the form's own prior taken as one token in the corpus.
    fn lexical_from_guess(&self, p_tag_given_form: f64, id: u16) -> f64 {
        let eps = self.smoothing.epsilon;
        let n = self.symbols_total.max(1) as f64;
        let prior = (self.count(&[id]) as f64 / n).max(eps);
        (p_tag_given_form / n / prior).clamp(eps, 1.0)
    }

    /// Copy whose lexical probabilities are uniform over each token's
    /// candidates.
    pub fn ablate_lexical(&self) -> Models {
        let mut m = self.clone();
        m.lexical_ablated = true;
        m
    }
}

/// Counts tag n-grams up to `n_max`, with `n_max - 1` boundary symbols
/// before each sentence and one after, plus lexical and suffix counts.
pub fn train_models(corpus: &AnnotatedCorpus, kind: TagSetKind, n_max: usize) -> Result<Models, TaggerError> {
    if corpus.token_count() == 0 {
        return Err(TaggerError::EmptyCorpus);
    }
    let mut m = Models::empty(kind, n_max)?;
    let mut counts: BTreeMap<Vec<u16>, u64> = BTreeMap::new();
    for (si, sentence) in corpus.sentences.iter().enumerate() {
        let mut seq = vec![BOUNDARY; n_max - 1];
        for (ti, tok) in sentence.iter().enumerate() {
            let id = m.id_of(&tok.tag).ok_or_else(|| TaggerError::InvalidTag {
                line: corpus.line_of(si, ti),
                tag: tok.tag.to_string(),
                kind: kind.as_str().to_owned(),
            })?;
            seq.push(id);
            m.add_lexical(&tok.surface, id, 1);
            m.suffix.observe(&tok.surface, tok.tag);
        }
        seq.push(BOUNDARY);
        for k in 1..=n_max {
            for w in seq.windows(k) {
                *counts.entry(w.to_vec()).or_default() += 1;
            }
        }
    }
    for (k, c) in counts {
        m.add_ngram(&k, c);
    }
    Ok(m)
}

/// One candidate tag of a token.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub tag: Tag,
    pub id: u16,
    /// P(form | tag).
    pub lexical: f64,
}

/// Candidates per token, each column sorted by tag string.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub forms: Vec<String>,
    pub columns: Vec<Vec<Candidate>>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Number of distinct tag sequences.
    pub fn paths(&self) -> u128 {
        self.columns
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Builds a lattice from explicit candidate lists, for tests and
    /// synthetic input.
    pub fn from_columns(models: &Models, columns: Vec<Vec<(Tag, f64)>>) -> Lattice {
        let cols = columns
            .into_iter()
            .map(|c| {
                let mut v: Vec<Candidate> = c
                    .into_iter()
                    .filter_map(|(tag, p)| {
                        models.id_of(&tag).map(|id| Candidate {
                            tag: tag.to_kind(models.kind),
                            id,
                            lexical: p,
                        })
                    })
                    .collect();
                v.sort_by(|a, b| models.name_of(a.id).cmp(models.name_of(b.id)));
                v.dedup_by_key(|c| c.id);
                v
            })
            .collect::<Vec<_>>();
        Lattice {
            forms: vec![String::new(); cols.len()],
            columns: cols,
        }
    }
}

fn is_digit_token(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn number_tag() -> Tag {
    Tag::large(Base::Pos(PosCategory::Zan), Features::default())
}

/// Candidate tags of a form with P(form | tag), sorted by tag string.
/// Forms the lexicon does not know get suffix-model guesses.
pub fn candidate_tags(form: &str, lex: &Analyzer, models: &Models) -> Vec<(Tag, f64)> {
    let mut tags: Vec<Tag> = lex.analyze(form).into_iter().map(|a| a.tag).collect();
    if tags.is_empty() && crate::analysis::starts_upper(form) {
        let lower = crate::analysis::decapitalize(form);
        tags = lex.analyze(&lower).into_iter().map(|a| a.tag).collect();
    }
    if tags.is_empty() && is_digit_token(form) {
        tags.push(number_tag());
    }
    let mut ids: Vec<u16> = tags.iter().filter_map(|t| models.id_of(t)).collect();
    ids.sort_by(|a, b| models.name_of(*a).cmp(models.name_of(*b)));
    ids.dedup();
    let out: Vec<(Tag, f64)> = if ids.is_empty() {
        let mut guessed: Vec<(u16, f64)> = guess_unknown(form, &models.suffix)
            .into_iter()
            .filter_map(|(t, p)| models.id_of(&t).map(|id| (id, p)))
            .take(UNKNOWN_CANDIDATES)
            .collect();
        guessed.sort_by(|a, b| models.name_of(a.0).cmp(models.name_of(b.0)));
        guessed
            .into_iter()
            .map(|(id, p)| (models.tag_of(id).unwrap_or_else(number_tag), models.lexical_from_guess(p, id)))
            .collect()
    } else {
        ids.iter()
            .map(|id| (models.tag_of(*id).unwrap_or_else(number_tag), models.lexical(form, *id)))
            .collect()
    };
    if models.lexical_ablated {
        let p = 1.0 / out.len().max(1) as f64;
        out.into_iter().map(|(t, _)| (t, p)).collect()
    } else {
        out
    }
}

/// The candidate lattice of a tokenized sentence.
pub fn build_lattice<S: AsRef<str>>(sentence: &[S], lex: &Analyzer, models: &Models) -> Lattice {
    let columns = sentence
        .iter()
        .map(|f| {
            candidate_tags(f.as_ref(), lex, models)
                .into_iter()
                .filter_map(|(tag, p)| {
                    models.id_of(&tag).map(|id| Candidate {
                        tag: tag.to_kind(models.kind),
                        id,
                        lexical: p,
                    })
                })
                .collect()
        })
        .collect();
    Lattice {
        forms: sentence.iter().map(|s| s.as_ref().to_owned()).collect(),
        columns,
    }
}

/// Tagged output of a decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<(String, Tag)>,
    /// Whether boundary symbols served as context.
    pub boundaries: bool,
}

impl TaggedSentence {
    pub fn tags(&self) -> Vec<Tag> {
        self.tokens.iter().map(|t| t.1).collect()
    }

    /// `form<TAB>tag` lines and a closing blank line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        crate::corpus::write_sentence(&mut out, self.tokens.iter().map(|(f, t)| (f.as_str(), t)));
        out
    }
}
