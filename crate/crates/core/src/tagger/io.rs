use std::fmt::Write as _;

use super::{Models, Smoothing, TaggerError};
use crate::analysis::SuffixModel;
use crate::tagset::{parse_tag, TagSetKind};

/// Model file text: `META`, `NGRAM`, `LEX` and `SUFFIX` lines in a fixed
/// order.
pub fn write_models(m: &Models) -> String {
    let mut out = String::new();
    let [l1, l2, l3] = m.smoothing.lambdas;
    let meta: [(&str, String); 9] = [
        ("kind", m.kind.as_str().to_owned()),
        ("n_max", m.n_max.to_string()),
        ("lambda1", l1.to_string()),
        ("lambda2", l2.to_string()),
        ("lambda3", l3.to_string()),
        ("epsilon", m.smoothing.epsilon.to_string()),
        ("lexical_ablated", m.lexical_ablated.to_string()),
        ("suffix_max_len", m.suffix.max_len.to_string()),
        ("suffix_threshold", m.suffix.threshold.to_string()),
    ];
    for (k, v) in meta {
        let _ = writeln!(out, "META\t{k}\t{v}");
    }
    for (seq, count) in m.ngrams() {
        let names: Vec<&str> = seq.iter().map(|s| m.name_of(*s)).collect();
        let _ = writeln!(out, "NGRAM\t{}\t{}\t{count}", seq.len(), names.join("|"));
    }
    for (form, id, count) in m.lexical_counts() {
        let _ = writeln!(out, "LEX\t{form}\t{}\t{count}", m.name_of(id));
    }
    for (suffix, tag, count) in m.suffix.iter() {
        let _ = writeln!(out, "SUFFIX\t{suffix}\t{tag}\t{count}");
    }
    out
}

fn bad(line: usize, message: impl Into<String>) -> TaggerError {
    TaggerError::ModelFile {
        line,
        message: message.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, TaggerError> {
    s.parse().map_err(|_| bad(line, format!("bad number {s:?}")))
}

pub fn read_models(text: &str) -> Result<Models, TaggerError> {
    let mut kind = None;
    let mut n_max = None;
    let mut smoothing = Smoothing::default();
    let mut ablated = false;
    let mut suffix_len = 5usize;
    let mut threshold = 3u64;
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields[0] != "META" {
            body.push((line, fields));
            continue;
        }
        if fields.len() != 3 {
            return Err(bad(line, "META needs a key and a value"));
        }
        let v = fields[2];
        match fields[1] {
            "kind" => {
                kind = Some(match v {
                    "small" => TagSetKind::Small,
                    "large" => TagSetKind::Large,
                    _ => return Err(bad(line, format!("unknown tag set {v:?}"))),
                })
            }
            "n_max" => n_max = Some(num(line, v)?),
            "lambda1" => smoothing.lambdas[0] = num(line, v)?,
            "lambda2" => smoothing.lambdas[1] = num(line, v)?,
            "lambda3" => smoothing.lambdas[2] = num(line, v)?,
            "epsilon" => smoothing.epsilon = num(line, v)?,
            "lexical_ablated" => ablated = num(line, v)?,
            "suffix_max_len" => suffix_len = num(line, v)?,
            "suffix_threshold" => threshold = num(line, v)?,
            k => return Err(bad(line, format!("unknown META key {k:?}"))),
        }
    }
    let kind = kind.ok_or_else(|| bad(0, "missing META kind"))?;
    let n_max = n_max.ok_or_else(|| bad(0, "missing META n_max"))?;
    let sum: f64 = smoothing.lambdas.iter().sum();
    if smoothing.lambdas.iter().any(|l| *l < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(bad(0, "interpolation weights must be non-negative and sum to 1"));
    }
    let mut m = Models::empty(kind, n_max)?;
    m.smoothing = smoothing;
    m.lexical_ablated = ablated;
    m.suffix = SuffixModel::new(kind, suffix_len, threshold);
    for (line, f) in body {
        match (f[0], f.len()) {
            ("NGRAM", 4) => {
                let k: usize = num(line, f[1])?;
                let seq = f[2]
                    .split('|')
                    .map(|name| m.id_of_name(name).ok_or_else(|| bad(line, format!("unknown tag {name:?}"))))
                    .collect::<Result<Vec<u16>, _>>()?;
                if seq.len() != k || k == 0 || k > n_max {
                    return Err(bad(line, "n-gram length mismatch"));
                }
                m.add_ngram(&seq, num(line, f[3])?);
            }
            ("LEX", 4) => {
                let id = m.id_of_name(f[2]).ok_or_else(|| bad(line, format!("unknown tag {:?}", f[2])))?;
                m.add_lexical(f[1], id, num(line, f[3])?);
            }
            ("SUFFIX", 4) => {
                let tag = parse_tag(f[2], kind).map_err(|e| bad(line, e.to_string()))?;
                m.suffix.add_count(f[1], tag, num(line, f[3])?);
            }
            (tag, _) => return Err(bad(line, format!("malformed {tag} line"))),
        }
    }
    Ok(m)
}
