//! Accuracy against gold annotation and the experiments built on it.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::{capitalize, Analyzer};
use crate::corpus::{AnnotatedCorpus, Token};
use crate::tagger::{
    build_lattice, candidate_tags, decode_church, decode_varcontext, train_models, Models, TaggedSentence,
    TaggerError,
};
use crate::tagset::{Tag, TagSetKind};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("sentence {0}: predicted and gold differ in length")]
    ShapeMismatch(usize),
    #[error("{predicted} predicted sentences for {gold} gold sentences")]
    SentenceCount { gold: usize, predicted: usize },
    #[error("training size {size} exceeds the {available} available tokens")]
    SizeExceedsCorpus { size: usize, available: usize },
    #[error("checkpoints must be ascending")]
    Checkpoints,
    #[error("rate {0} outside [0, 1]")]
    Rate(f64),
    #[error(transparent)]
    Tagger(#[from] TaggerError),
}

/// Default n-gram order used by the experiments.
pub const N_MAX: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Church,
    VarContext,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "church" => Ok(Algorithm::Church),
            "varcontext" => Ok(Algorithm::VarContext),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Church => "church",
            Algorithm::VarContext => "varcontext",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub kind: TagSetKind,
    pub token_count: usize,
    pub correct_count: usize,
    pub accuracy: f64,
    pub token_count_no_punct: usize,
    pub correct_no_punct: usize,
    pub accuracy_no_punct: f64,
    pub unknown_count: usize,
    pub unknown_correct: usize,
    pub unknown_token_accuracy: f64,
    /// (gold, predicted) tag strings of every error.
    pub confusion: BTreeMap<(String, String), usize>,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl EvalReport {
    /// Aligned summary, then a `key<TAB>value` section.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rows = [
            ("tag set", self.kind.as_str().to_owned()),
            ("tokens", self.token_count.to_string()),
            ("correct", self.correct_count.to_string()),
            ("accuracy", format!("{:.4}", self.accuracy)),
            ("accuracy without punctuation", format!("{:.4}", self.accuracy_no_punct)),
            ("unknown tokens", self.unknown_count.to_string()),
            ("unknown accuracy", format!("{:.4}", self.unknown_token_accuracy)),
        ];
        for (k, v) in &rows {
            let _ = writeln!(out, "{k:<30}{v:>10}");
        }
        let mut errors: Vec<_> = self.confusion.iter().collect();
        errors.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
        if !errors.is_empty() {
            let _ = writeln!(out, "\nmost frequent errors (gold -> predicted)");
            for ((g, p), c) in errors.iter().take(10) {
                let _ = writeln!(out, "{c:>6}  {g} -> {p}");
            }
        }
        out.push('\n');
        let kv = [
            ("kind", self.kind.as_str().to_owned()),
            ("token_count", self.token_count.to_string()),
            ("correct_count", self.correct_count.to_string()),
            ("accuracy", self.accuracy.to_string()),
            ("token_count_no_punct", self.token_count_no_punct.to_string()),
            ("correct_no_punct", self.correct_no_punct.to_string()),
            ("accuracy_no_punct", self.accuracy_no_punct.to_string()),
            ("unknown_count", self.unknown_count.to_string()),
            ("unknown_correct", self.unknown_correct.to_string()),
            ("unknown_token_accuracy", self.unknown_token_accuracy.to_string()),
        ];
        for (k, v) in kv {
            let _ = writeln!(out, "{k}\t{v}");
        }
        out
    }
}

/// Exact-match accuracy, with large gold tags mapped down for the small
/// set. Tokens for which `is_unknown` holds are also scored separately.
pub fn evaluate_with<F>(
    gold: &AnnotatedCorpus,
    predicted: &[TaggedSentence],
    kind: TagSetKind,
    is_unknown: F,
) -> Result<EvalReport, EvalError>
where
    F: Fn(&str) -> bool,
{
    if gold.sentences.len() != predicted.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.sentences.len(),
            predicted: predicted.len(),
        });
    }
    let mut r = EvalReport {
        kind,
        token_count: 0,
        correct_count: 0,
        accuracy: 0.0,
        token_count_no_punct: 0,
        correct_no_punct: 0,
        accuracy_no_punct: 0.0,
        unknown_count: 0,
        unknown_correct: 0,
        unknown_token_accuracy: 0.0,
        confusion: BTreeMap::new(),
    };
    for (i, (g, p)) in gold.sentences.iter().zip(predicted).enumerate() {
        if g.len() != p.tokens.len() {
            return Err(EvalError::ShapeMismatch(i));
        }
        for (gt, (form, pt)) in g.iter().zip(&p.tokens) {
            let gold_tag = gt.tag.to_kind(kind);
            let pred_tag = pt.to_kind(kind);
            let ok = gold_tag == pred_tag;
            let punct = gold_tag.pos().is_punctuation();
            r.token_count += 1;
            r.correct_count += ok as usize;
            if !punct {
                r.token_count_no_punct += 1;
                r.correct_no_punct += ok as usize;
            }
            if is_unknown(form) {
                r.unknown_count += 1;
                r.unknown_correct += ok as usize;
            }
            if !ok {
                *r.confusion
                    .entry((gold_tag.to_string(), pred_tag.to_string()))
                    .or_default() += 1;
            }
        }
    }
    r.accuracy = ratio(r.correct_count, r.token_count);
    r.accuracy_no_punct = ratio(r.correct_no_punct, r.token_count_no_punct);
    r.unknown_token_accuracy = ratio(r.unknown_correct, r.unknown_count);
    Ok(r)
}

pub fn evaluate(gold: &AnnotatedCorpus, predicted: &[TaggedSentence], kind: TagSetKind) -> Result<EvalReport, EvalError> {
    evaluate_with(gold, predicted, kind, |_| false)
}

fn tag_one(forms: &[String], models: &Models, lex: &Analyzer, algo: Algorithm) -> Result<TaggedSentence, TaggerError> {
    let lattice = build_lattice(forms, lex, models);
    let path = match algo {
        Algorithm::Church => decode_church(&lattice, models)?,
        Algorithm::VarContext => decode_varcontext(&lattice, models, true)?,
    };
    Ok(TaggedSentence {
        tokens: forms
            .iter()
            .zip(&path)
            .enumerate()
            .map(|(i, (f, c))| (f.clone(), lattice.columns[i][*c].tag))
            .collect(),
        boundaries: true,
    })
}

/// Tags every sentence, spread over threads; the output order and content
/// do not depend on the thread count.
pub fn tag_sentences(
    sentences: &[Vec<String>],
    models: &Models,
    lex: &Analyzer,
    algo: Algorithm,
) -> Result<Vec<TaggedSentence>, TaggerError> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = sentences.len().div_ceil(threads).max(1);
    let parts: Vec<Result<Vec<TaggedSentence>, TaggerError>> = std::thread::scope(|s| {
        let handles: Vec<_> = sentences
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|f| tag_one(f, models, lex, algo)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("tagging thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(sentences.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn surfaces(corpus: &AnnotatedCorpus) -> Vec<Vec<String>> {
    corpus
        .sentences
        .iter()
        .map(|s| s.iter().map(|t| t.surface.clone()).collect())
        .collect()
}

/// Tags the test corpus with the given models and scores the result.
pub fn evaluate_models(
    test: &AnnotatedCorpus,
    models: &Models,
    lex: &Analyzer,
    algo: Algorithm,
) -> Result<EvalReport, EvalError> {
    let predicted = tag_sentences(&surfaces(test), models, lex, algo)?;
    evaluate_with(test, &predicted, models.kind, |f| lex.analyze(f).is_empty())
}

/// Trains on `train` and evaluates on `test`.
pub fn run_experiment(
    train: &AnnotatedCorpus,
    test: &AnnotatedCorpus,
    lex: &Analyzer,
    kind: TagSetKind,
    algo: Algorithm,
) -> Result<EvalReport, EvalError> {
    let models = train_models(train, kind, N_MAX)?;
    evaluate_models(test, &models, lex, algo)
}

/// Accuracy on `holdout` after training on the first `size` tokens (whole
/// sentences) of `train`. Size 0 uses empty models.
pub fn learning_curve(
    train: &AnnotatedCorpus,
    holdout: &AnnotatedCorpus,
    lex: &Analyzer,
    algo: Algorithm,
    kind: TagSetKind,
    sizes: &[usize],
) -> Result<Vec<(usize, f64)>, EvalError> {
    let available = train.token_count();
    let mut out = Vec::new();
    for &size in sizes {
        if size > available {
            return Err(EvalError::SizeExceedsCorpus { size, available });
        }
        let models = if size == 0 {
            Models::empty(kind, N_MAX)?
        } else {
            train_models(&train.prefix_tokens(size), kind, N_MAX)?
        };
        out.push((size, evaluate_models(holdout, &models, lex, algo)?.accuracy));
    }
    Ok(out)
}

const ONSETS: &[&str] = &[
    "b", "br", "d", "dr", "f", "fl", "g", "gr", "gl", "h", "k", "kl", "kr", "l", "m", "n", "p", "pl", "pr", "r", "s",
    "sch", "schl", "schm", "schn", "schr", "schw", "sp", "st", "str", "t", "tr", "w", "z", "zw",
];
const NUCLEI: &[&str] = &["a", "e", "i", "o", "u", "ä", "ö", "ü", "au", "ei", "ie"];
const CODAS: &[&str] = &["", "b", "ck", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "x", "z", "rk", "lm", "nd"];

fn pseudo_stem(rng: &mut ChaCha8Rng) -> String {
    let syllables = rng.gen_range(1..=2);
    let mut s = String::new();
    for _ in 0..syllables {
        s.push_str(ONSETS[rng.gen_range(0..ONSETS.len())]);
        s.push_str(NUCLEI[rng.gen_range(0..NUCLEI.len())]);
        s.push_str(CODAS[rng.gen_range(0..CODAS.len())]);
    }
    s
}

/// Ending kept from the original form: up to two final letters of words
/// longer than three letters.
fn inflection_like_ending(form: &str) -> String {
    let chars: Vec<char> = form.chars().collect();
    if chars.len() <= 3 || !chars.iter().all(|c| c.is_alphabetic()) {
        return String::new();
    }
    let take = if chars.len() > 5 { 2 } else { 1 };
    chars[chars.len() - take..].iter().collect()
}

/// Replaces `floor(rate * N)` uniformly chosen token surfaces by invented
/// words that keep capitalization and the last letters of the original.
/// Gold tags stay. `is_known` rejects candidates the lexicon would know.
pub fn perturb_unknowns<F>(corpus: &AnnotatedCorpus, rate: f64, seed: u64, is_known: F) -> Result<AnnotatedCorpus, EvalError>
where
    F: Fn(&str) -> bool,
{
    if !(0.0..=1.0).contains(&rate) {
        return Err(EvalError::Rate(rate));
    }
    let n = corpus.token_count();
    let k = (rate * n as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<usize> = sample(&mut rng, n, k).into_vec();
    chosen.sort_unstable();
    let mut out = corpus.clone();
    let mut next = chosen.into_iter().peekable();
    let mut idx = 0;
    for sentence in &mut out.sentences {
        for tok in sentence.iter_mut() {
            if next.peek() == Some(&idx) {
                next.next();
                tok.surface = invent(&tok.surface, &mut rng, &is_known);
            }
            idx += 1;
        }
    }
    Ok(out)
}

fn invent<F: Fn(&str) -> bool>(original: &str, rng: &mut ChaCha8Rng, is_known: &F) -> String {
    let ending = inflection_like_ending(original);
    let upper = original.chars().next().is_some_and(char::is_uppercase);
    loop {
        let mut w = pseudo_stem(rng);
        w.push_str(&ending);
        if upper {
            w = capitalize(&w);
        }
        if w != original && !is_known(&w) {
            return w;
        }
    }
}

/// Mean number of candidate tags per token.
pub fn ambiguity_rate(sentences: &[Vec<String>], lex: &Analyzer, models: &Models) -> f64 {
    let mut tokens = 0usize;
    let mut candidates = 0usize;
    for s in sentences {
        for f in s {
            tokens += 1;
            candidates += candidate_tags(f, lex, models).len();
        }
    }
    ratio(candidates, tokens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub checkpoint: usize,
    pub n: usize,
    pub distinct: usize,
}

/// Distinct n-grams within each prefix of `stream` named by a checkpoint.
/// Checkpoints past the end count the whole stream.
pub fn ngram_growth<T: Hash + Eq>(stream: &[T], n_values: &[usize], checkpoints: &[usize]) -> Result<Vec<GrowthRow>, EvalError> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EvalError::Checkpoints);
    }
    let mut seen: Vec<HashSet<&[T]>> = n_values.iter().map(|_| HashSet::new()).collect();
    let mut out = Vec::new();
    let mut done = 0usize;
    for &cp in checkpoints {
        let end = cp.min(stream.len());
        for (j, &n) in n_values.iter().enumerate() {
            if n == 0 {
                continue;
            }
            // windows ending in (done, end]
            let first = done.max(n) - n;
            for start in first..end.saturating_sub(n - 1) {
                if start + n > done {
                    seen[j].insert(&stream[start..start + n]);
                }
            }
        }
        done = end;
        for (j, &n) in n_values.iter().enumerate() {
            out.push(GrowthRow {
                checkpoint: cp,
                n,
                distinct: seen[j].len(),
            });
        }
    }
    Ok(out)
}

/// Tokens of a corpus with their gold tags mapped to `kind`.
pub fn tag_stream(corpus: &AnnotatedCorpus, kind: TagSetKind) -> Vec<Tag> {
    corpus.tokens().map(|t: &Token| t.tag.to_kind(kind)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::read_corpus;

    const GOLD: &str = "Die\tART DEF NOM FEM SIN\nFrau\tSUB NOM FEM SIN\n.\tSZE\n\nEr\tPRO PER 3PE NOM MAS SIN\nsingt\tVER 3PE SIN PRÄ\n.\tSZE\n\n";

    fn as_predicted(c: &AnnotatedCorpus) -> Vec<TaggedSentence> {
        c.sentences
            .iter()
            .map(|s| TaggedSentence {
                tokens: s.iter().map(|t| (t.surface.clone(), t.tag)).collect(),
                boundaries: true,
            })
            .collect()
    }

    #[test]
    fn perfect_and_wrong() {
        let g = read_corpus(GOLD).unwrap();
        let r = evaluate(&g, &as_predicted(&g), TagSetKind::Large).unwrap();
        assert_eq!(r.accuracy, 1.0);
        assert_eq!(r.token_count, 6);
        assert_eq!(r.token_count_no_punct, 4);
        let wrong_tag = crate::tagset::parse_tag("INJ", TagSetKind::Large).unwrap();
        let mut p = as_predicted(&g);
        for s in &mut p {
            for t in &mut s.tokens {
                t.1 = wrong_tag;
            }
        }
        let r = evaluate(&g, &p, TagSetKind::Small).unwrap();
        assert_eq!(r.accuracy, 0.0);
        assert_eq!(r.confusion.values().sum::<usize>(), 6);
        p[0].tokens.pop();
        assert_eq!(evaluate(&g, &p, TagSetKind::Small).unwrap_err(), EvalError::ShapeMismatch(0));
    }

    #[test]
    fn perturbation_counts() {
        let g = read_corpus(GOLD).unwrap();
        assert_eq!(perturb_unknowns(&g, 0.0, 1, |_| false).unwrap(), g);
        let all = perturb_unknowns(&g, 1.0, 1, |_| false).unwrap();
        for (a, b) in all.tokens().zip(g.tokens()) {
            assert_ne!(a.surface, b.surface);
            assert_eq!(a.tag, b.tag);
        }
        let half = perturb_unknowns(&g, 0.5, 9, |_| false).unwrap();
        let changed = half.tokens().zip(g.tokens()).filter(|(a, b)| a.surface != b.surface).count();
        assert_eq!(changed, 3);
        assert_eq!(half, perturb_unknowns(&g, 0.5, 9, |_| false).unwrap());
        assert!(perturb_unknowns(&g, 1.5, 9, |_| false).is_err());
    }

    #[test]
    fn growth() {
        let s = [1, 2, 1, 2, 3, 1, 2, 3, 4];
        let rows = ngram_growth(&s, &[2, 3], &[1, 4, 9, 20]).unwrap();
        let at = |cp, n| rows.iter().find(|r| r.checkpoint == cp && r.n == n).unwrap().distinct;
        assert_eq!(at(1, 2), 0);
        assert_eq!(at(4, 2), 2);
        assert_eq!(at(4, 3), 2);
        assert_eq!(at(9, 2), 5);
        assert_eq!(at(9, 3), 6);
        assert_eq!(at(20, 3), 6);
        assert!(ngram_growth(&s, &[2], &[3, 3]).is_err());
        let one = ngram_growth(&[7], &[2, 3, 4], &[1]).unwrap();
        assert!(one.iter().all(|r| r.distinct == 0));
    }
}
