//! Browser bindings: analyze, generate and tag over the seed lexicon and
//! models trained on the bundled desk corpus. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wortart::analysis::Analyzer;
use wortart::eval::{Algorithm, N_MAX};
use wortart::inflection::{citation_lemma, generate_forms, ParadigmSet};
use wortart::lexicon::Lexicon;
use wortart::seed;
use wortart::tagger::{candidate_tags, tag_church, tag_varcontext, train_models, Models};
use wortart::tagset::TagSetKind;
use wortart::tokenize::{abbreviations, sentences, tokenize};

struct Demo {
    classes: ParadigmSet,
    lexicon: Lexicon,
    analyzer: Analyzer,
    abbrevs: BTreeSet<String>,
    small: Models,
    large: Models,
}

fn demo() -> &'static Demo {
    static D: OnceLock<Demo> = OnceLock::new();
    D.get_or_init(|| {
        let classes = seed::paradigms();
        let lexicon = seed::lexicon();
        let analyzer = Analyzer::new(&lexicon, &classes).expect("seed lexicon builds");
        let train = seed::desk_train();
        Demo {
            abbrevs: abbreviations(&lexicon),
            small: train_models(&train, TagSetKind::Small, N_MAX).expect("desk corpus trains"),
            large: train_models(&train, TagSetKind::Large, N_MAX).expect("desk corpus trains"),
            classes,
            lexicon,
            analyzer,
        }
    })
}

fn err(msg: impl std::fmt::Display) -> Value {
    json!({ "error": msg.to_string() })
}

pub fn analyze_json(text: &str) -> Value {
    let d = demo();
    let tokens: Vec<Value> = tokenize(text, &d.abbrevs)
        .into_iter()
        .map(|t| {
            let analyses: Vec<Value> = d
                .analyzer
                .analyze(&t)
                .iter()
                .map(|a| json!({ "lemma": a.lemma, "tag": a.tag.to_string(), "segments": a.segments }))
                .collect();
            json!({ "surface": t, "analyses": analyses })
        })
        .collect();
    json!({ "tokens": tokens })
}

pub fn generate_json(word: &str) -> Value {
    let d = demo();
    let word = word.trim();
    let mut tables = Vec::new();
    for e in d.lexicon.entries().iter().filter(|e| e.root == word || citation_lemma(e) == word) {
        match generate_forms(e, &d.classes) {
            Ok(t) => {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| json!({ "surface": r.surface, "tag": r.tag.to_string() }))
                    .collect();
                tables.push(json!({ "lemma": t.lemma, "pos": e.pos.code(), "forms": rows }));
            }
            Err(e) => return err(e),
        }
    }
    if tables.is_empty() {
        return err(format!("{word:?} is not in the lexicon"));
    }
    json!({ "tables": tables })
}

pub fn tag_json(text: &str, tagset: &str, algo: &str) -> Value {
    let d = demo();
    let kind: TagSetKind = match tagset.parse() {
        Ok(k) => k,
        Err(e) => return err(e),
    };
    let algo: Algorithm = match algo.parse() {
        Ok(a) => a,
        Err(e) => return err(e),
    };
    let models = if kind == TagSetKind::Small { &d.small } else { &d.large };
    let mut out = Vec::new();
    for s in sentences(text, &d.abbrevs) {
        let tagged = match algo {
            Algorithm::Church => tag_church(&s, models, &d.analyzer),
            Algorithm::VarContext => tag_varcontext(&s, models, &d.analyzer, true),
        };
        let tagged = match tagged {
            Ok(t) => t,
            Err(e) => return err(e),
        };
        let tokens: Vec<Value> = tagged
            .tokens
            .iter()
            .map(|(form, tag)| {
                let cands: Vec<Value> = candidate_tags(form, &d.analyzer, models)
                    .into_iter()
                    .map(|(c, p)| json!({ "tag": c.to_string(), "p": p }))
                    .collect();
                json!({ "surface": form, "tag": tag.to_string(), "candidates": cands })
            })
            .collect();
        out.push(json!({ "tokens": tokens }));
    }
    json!({ "tagset": kind.as_str(), "algo": algo.as_str(), "sentences": out })
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> String {
    analyze_json(text).to_string()
}

#[wasm_bindgen]
pub fn generate(word: &str) -> String {
    generate_json(word).to_string()
}

#[wasm_bindgen]
pub fn tag(text: &str, tagset: &str, algo: &str) -> String {
    tag_json(text, tagset, algo).to_string()
}
