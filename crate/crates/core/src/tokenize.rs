//! Whitespace tokenization with punctuation split off, and sentence
//! splitting after `.`, `!` and `?`.

use std::collections::BTreeSet;

use crate::lexicon::Lexicon;
use crate::tagset::PosCategory;

const LEADING: &[char] = &['(', '"', '\'', '„', '“', '»', '«'];
const TRAILING: &[char] = &['.', ',', ';', ':', '!', '?', ')', '"', '\'', '“', '”', '«', '»'];
const SENTENCE_END: &[&str] = &[".", "!", "?"];

/// Abbreviations written with a final period, taken from the lexicon.
pub fn abbreviations(lex: &Lexicon) -> BTreeSet<String> {
    lex.entries()
        .iter()
        .filter(|e| e.pos == PosCategory::Abk && e.root.ends_with('.'))
        .map(|e| e.root.clone())
        .collect()
}

fn is_number(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
        && s.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

/// Splits one whitespace-separated chunk into tokens.
fn split_chunk(chunk: &str, abbrevs: &BTreeSet<String>, out: &mut Vec<String>) {
    let mut rest = chunk;
    while let Some(c) = rest.chars().next() {
        if LEADING.contains(&c) && rest.len() > c.len_utf8() {
            out.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        } else {
            break;
        }
    }
    let mut tail = Vec::new();
    loop {
        if rest.is_empty() || abbrevs.contains(rest) {
            break;
        }
        let Some(c) = rest.chars().last() else { break };
        if !TRAILING.contains(&c) {
            break;
        }
        let head = &rest[..rest.len() - c.len_utf8()];
        if head.is_empty() {
            break;
        }
        if (c == '.' || c == ',') && is_number(rest) && !is_number(head) {
            break;
        }
        tail.push(c.to_string());
        rest = head;
    }
    if !rest.is_empty() {
        out.push(rest.to_owned());
    }
    out.extend(tail.into_iter().rev());
}

/// Tokens of `text` in order.
pub fn tokenize(text: &str, abbrevs: &BTreeSet<String>) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        split_chunk(chunk, abbrevs, &mut out);
    }
    out
}

/// Tokens grouped into sentences; a trailing fragment without final
/// punctuation forms its own sentence.
pub fn sentences(text: &str, abbrevs: &BTreeSet<String>) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for t in tokenize(text, abbrevs) {
        let end = SENTENCE_END.contains(&t.as_str());
        cur.push(t);
        if end {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}
