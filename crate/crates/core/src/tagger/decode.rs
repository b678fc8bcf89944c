use super::{build_lattice, Lattice, Models, TaggedSentence, TaggerError, BOUNDARY};
use crate::analysis::Analyzer;

/// Largest number of sequences the exhaustive decoder enumerates.
pub const BRUTEFORCE_LIMIT: u128 = 1_000_000;

fn symbol(lattice: &Lattice, path: &[usize], pos: isize) -> u16 {
    if pos < 0 {
        BOUNDARY
    } else {
        lattice.columns[pos as usize][path[pos as usize]].id
    }
}

/// Log score contribution of token `i` given its two predecessors.
fn step(lattice: &Lattice, models: &Models, i: usize, u: u16, v: u16, c: usize) -> f64 {
    let cand = &lattice.columns[i][c];
    cand.lexical.ln() + models.contextual(u, v, cand.id).ln()
}

fn closing(models: &Models, u: u16, v: u16) -> f64 {
    models.contextual(u, v, BOUNDARY).ln()
}

/// Log of the Church objective for one path, summed left to right.
pub fn sequence_score(lattice: &Lattice, models: &Models, path: &[usize]) -> f64 {
    let n = path.len() as isize;
    let mut s = 0.0;
    for i in 0..n {
        let u = symbol(lattice, path, i - 2);
        let v = symbol(lattice, path, i - 1);
        s += step(lattice, models, i as usize, u, v, path[i as usize]);
    }
    s + closing(models, symbol(lattice, path, n - 2), symbol(lattice, path, n - 1))
}

fn better(score: f64, path: &[usize], best: &Option<(f64, Vec<usize>)>) -> bool {
    match best {
        None => true,
        Some((s, p)) => score > *s || (score == *s && path < p.as_slice()),
    }
}

/// Exact trigram decoding by dynamic programming over pairs of adjacent
/// candidates. Equal scores go to the sequence whose tag strings come first.
pub fn decode_church(lattice: &Lattice, models: &Models) -> Result<Vec<usize>, TaggerError> {
    let n = lattice.len();
    if n == 0 || lattice.columns.iter().any(Vec::is_empty) {
        return Err(TaggerError::EmptySentence);
    }
    // states[a][b]: best path ending in candidate a at i-1 and b at i;
    // at i = 0 there is a single row for the boundary.
    let mut states: Vec<Vec<Option<(f64, Vec<usize>)>>> = vec![lattice.columns[0]
        .iter()
        .enumerate()
        .map(|(b, _)| Some((step(lattice, models, 0, BOUNDARY, BOUNDARY, b), vec![b])))
        .collect()];
    for i in 1..n {
        let prev_width = lattice.columns[i - 1].len();
        let width = lattice.columns[i].len();
        let mut next: Vec<Vec<Option<(f64, Vec<usize>)>>> = vec![vec![None; width]; prev_width];
        for row in &states {
            for (a, cell) in row.iter().enumerate() {
                let Some((s, path)) = cell else { continue };
                let u = if i >= 2 {
                    lattice.columns[i - 2][path[i - 2]].id
                } else {
                    BOUNDARY
                };
                let v = lattice.columns[i - 1][a].id;
                for b in 0..width {
                    let score = s + step(lattice, models, i, u, v, b);
                    let mut p = path.clone();
                    p.push(b);
                    if better(score, &p, &next[a][b]) {
                        next[a][b] = Some((score, p));
                    }
                }
            }
        }
        states = next;
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    for row in &states {
        for (s, path) in row.iter().flatten() {
            let u = if n >= 2 {
                lattice.columns[n - 2][path[n - 2]].id
            } else {
                BOUNDARY
            };
            let v = lattice.columns[n - 1][path[n - 1]].id;
            let score = s + closing(models, u, v);
            if better(score, path, &best) {
                best = Some((score, path.clone()));
            }
        }
    }
    Ok(best.map(|b| b.1).unwrap_or_default())
}

/// Scores every sequence with the Church objective.
pub fn decode_bruteforce(lattice: &Lattice, models: &Models) -> Result<Vec<usize>, TaggerError> {
    if lattice.is_empty() || lattice.columns.iter().any(Vec::is_empty) {
        return Err(TaggerError::EmptySentence);
    }
    let count = lattice.paths();
    if count > BRUTEFORCE_LIMIT {
        return Err(TaggerError::TooManySequences {
            count,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut path = vec![0usize; lattice.len()];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let s = sequence_score(lattice, models, &path);
        if better(s, &path, &best) {
            best = Some((s, path.clone()));
        }
        let mut i = lattice.len();
        loop {
            if i == 0 {
                return Ok(best.map(|b| b.1).unwrap_or_default());
            }
            i -= 1;
            path[i] += 1;
            if path[i] < lattice.columns[i].len() {
                break;
            }
            path[i] = 0;
        }
    }
}

/// Longest attested window through candidate `c` at `i`, and its count.
fn window(
    lattice: &Lattice,
    models: &Models,
    assigned: &[u16],
    i: usize,
    c: usize,
    boundaries: bool,
) -> (usize, u64) {
    let n_max = models.n_max;
    let n = lattice.len();
    let mut best = (0usize, 0u64);
    for l in 0..n_max {
        if l > i && !boundaries {
            break;
        }
        let mut seq: Vec<u16> = (0..l)
            .map(|k| {
                let pos = i as isize - l as isize + k as isize;
                if pos < 0 {
                    BOUNDARY
                } else {
                    assigned[pos as usize]
                }
            })
            .collect();
        seq.push(lattice.columns[i][c].id);
        let count = models.count(&seq);
        if count == 0 {
            // longer left contexts only shrink the count
            break;
        }
        extend_right(lattice, models, &mut seq, i + 1, n, n_max, boundaries, &mut best);
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn extend_right(
    lattice: &Lattice,
    models: &Models,
    seq: &mut Vec<u16>,
    pos: usize,
    n: usize,
    n_max: usize,
    boundaries: bool,
    best: &mut (usize, u64),
) {
    let count = models.count(seq);
    if count == 0 {
        return;
    }
    if (seq.len(), count) > *best {
        *best = (seq.len(), count);
    }
    if seq.len() >= n_max {
        return;
    }
    if pos < n {
        for cand in &lattice.columns[pos] {
            seq.push(cand.id);
            extend_right(lattice, models, seq, pos + 1, n, n_max, boundaries, best);
            seq.pop();
        }
    } else if pos == n && boundaries {
        seq.push(BOUNDARY);
        extend_right(lattice, models, seq, pos + 1, n, n_max, boundaries, best);
        seq.pop();
    }
}

/// Greedy left-to-right decoding: each ambiguous token takes the candidate
/// with the longest attested tag window, then the higher window count, then
/// the higher lexical probability, then the earlier tag string.
pub fn decode_varcontext(lattice: &Lattice, models: &Models, boundaries: bool) -> Result<Vec<usize>, TaggerError> {
    if lattice.is_empty() || lattice.columns.iter().any(Vec::is_empty) {
        return Err(TaggerError::EmptySentence);
    }
    let mut path = Vec::with_capacity(lattice.len());
    let mut assigned = Vec::with_capacity(lattice.len());
    for (i, col) in lattice.columns.iter().enumerate() {
        let mut choice = 0;
        if col.len() > 1 {
            let mut best: Option<(usize, u64, f64)> = None;
            for c in 0..col.len() {
                let (len, count) = window(lattice, models, &assigned, i, c, boundaries);
                let key = (len, count, col[c].lexical);
                let wins = match best {
                    None => true,
                    Some(b) => key.0 > b.0 || (key.0 == b.0 && (key.1 > b.1 || (key.1 == b.1 && key.2 > b.2))),
                };
                if wins {
                    best = Some(key);
                    choice = c;
                }
            }
        }
        path.push(choice);
        assigned.push(col[choice].id);
    }
    Ok(path)
}

fn tagged(lattice: &Lattice, path: &[usize], boundaries: bool) -> TaggedSentence {
    TaggedSentence {
        tokens: lattice
            .forms
            .iter()
            .zip(path)
            .enumerate()
            .map(|(i, (f, c))| (f.clone(), lattice.columns[i][*c].tag))
            .collect(),
        boundaries,
    }
}

fn nonempty<S: AsRef<str>>(sentence: &[S]) -> Result<(), TaggerError> {
    if sentence.is_empty() {
        Err(TaggerError::EmptySentence)
    } else {
        Ok(())
    }
}

pub fn tag_church<S: AsRef<str>>(sentence: &[S], models: &Models, lex: &Analyzer) -> Result<TaggedSentence, TaggerError> {
    nonempty(sentence)?;
    let lattice = build_lattice(sentence, lex, models);
    let path = decode_church(&lattice, models)?;
    Ok(tagged(&lattice, &path, true))
}

pub fn tag_bruteforce<S: AsRef<str>>(
    sentence: &[S],
    models: &Models,
    lex: &Analyzer,
) -> Result<TaggedSentence, TaggerError> {
    nonempty(sentence)?;
    let lattice = build_lattice(sentence, lex, models);
    let path = decode_bruteforce(&lattice, models)?;
    Ok(tagged(&lattice, &path, true))
}

pub fn tag_varcontext<S: AsRef<str>>(
    sentence: &[S],
    models: &Models,
    lex: &Analyzer,
    assume_boundaries: bool,
) -> Result<TaggedSentence, TaggerError> {
    nonempty(sentence)?;
    let lattice = build_lattice(sentence, lex, models);
    let path = decode_varcontext(&lattice, models, assume_boundaries)?;
    Ok(tagged(&lattice, &path, assume_boundaries))
}
