//! Annotated corpora: one `surface<TAB>tag` line per token, a blank line
//! after each sentence, `#` lines ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::tagset::{parse_tag, Tag, TagSetKind};

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub tag: Tag,
}

pub type Sentence = Vec<Token>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotatedCorpus {
    pub sentences: Vec<Sentence>,
}

impl AnnotatedCorpus {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// All tokens in order.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    /// Whole sentences from the start until at least `tokens` tokens are
    /// covered.
    pub fn prefix_tokens(&self, tokens: usize) -> AnnotatedCorpus {
        let mut out = Vec::new();
        let mut n = 0;
        for s in &self.sentences {
            if n >= tokens {
                break;
            }
            n += s.len();
            out.push(s.clone());
        }
        AnnotatedCorpus { sentences: out }
    }

    /// 1-based line of a token in the written form of this corpus.
    pub fn line_of(&self, sentence: usize, token: usize) -> usize {
        self.sentences[..sentence].iter().map(|s| s.len() + 1).sum::<usize>() + token + 1
    }
}

pub fn read_corpus(text: &str) -> Result<AnnotatedCorpus, CorpusError> {
    read_corpus_filtered(text, |_| true)
}

/// Like [`read_corpus`], dropping lines for which `keep` returns false
/// before parsing.
pub fn read_corpus_filtered<F>(text: &str, keep: F) -> Result<AnnotatedCorpus, CorpusError>
where
    F: Fn(&str) -> bool,
{
    let mut sentences = Vec::new();
    let mut current: Sentence = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.starts_with('#') || !keep(raw) {
            continue;
        }
        if raw.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let Some((surface, tag)) = raw.split_once('\t') else {
            return Err(CorpusError::Malformed {
                line,
                message: "expected surface<TAB>tag".into(),
            });
        };
        if surface.is_empty() {
            return Err(CorpusError::Malformed {
                line,
                message: "empty surface".into(),
            });
        }
        let tag = parse_tag(tag, TagSetKind::Large).map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        current.push(Token {
            surface: surface.to_owned(),
            tag,
        });
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(AnnotatedCorpus { sentences })
}

pub fn write_corpus(corpus: &AnnotatedCorpus) -> String {
    let mut out = String::new();
    for s in &corpus.sentences {
        write_sentence(&mut out, s.iter().map(|t| (t.surface.as_str(), &t.tag)));
    }
    out
}

pub(crate) fn write_sentence<'a, I>(out: &mut String, tokens: I)
where
    I: IntoIterator<Item = (&'a str, &'a Tag)>,
{
    for (surface, tag) in tokens {
        let _ = writeln!(out, "{surface}\t{tag}");
    }
    out.push('\n');
}
