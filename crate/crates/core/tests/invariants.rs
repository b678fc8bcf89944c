use std::sync::OnceLock;

use proptest::prelude::*;

use wortart::analysis::Analyzer;
use wortart::corpus::{read_corpus, write_corpus};
use wortart::eval::{surfaces, tag_sentences, Algorithm, N_MAX};
use wortart::inflection::generate_forms;
use wortart::lexicon::{answer, start_classification, DialogueState};
use wortart::seed;
use wortart::tagger::{
    build_lattice, decode_church, sequence_score, tag_varcontext, train_models, Lattice, Models,
};
use wortart::tagset::{PosCategory, TagSetKind};

fn analyzer() -> &'static Analyzer {
    static A: OnceLock<Analyzer> = OnceLock::new();
    A.get_or_init(|| Analyzer::new(&seed::lexicon(), &seed::paradigms()).unwrap())
}

fn models(kind: TagSetKind) -> &'static Models {
    static S: OnceLock<Models> = OnceLock::new();
    static L: OnceLock<Models> = OnceLock::new();
    let cell = if kind == TagSetKind::Small { &S } else { &L };
    cell.get_or_init(|| train_models(&seed::desk_train(), kind, N_MAX).unwrap())
}

#[test]
fn church_beats_gold_sequence() {
    let test = seed::desk_test();
    for kind in [TagSetKind::Small, TagSetKind::Large] {
        let m = models(kind);
        for s in test.sentences.iter().take(100) {
            let forms: Vec<&str> = s.iter().map(|t| t.surface.as_str()).collect();
            let lattice = build_lattice(&forms, analyzer(), m);
            let best = decode_church(&lattice, m).unwrap();
            let gold: Option<Vec<usize>> = s
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let tag = t.tag.to_kind(kind);
                    lattice.columns[i].iter().position(|c| c.tag == tag)
                })
                .collect();
            let Some(gold) = gold else { continue };
            assert!(sequence_score(&lattice, m, &best) >= sequence_score(&lattice, m, &gold));
        }
    }
}

#[test]
fn varcontext_edges_only_touch_the_ends() {
    let corpus = seed::desk_train();
    let mut checked = 0;
    for kind in [TagSetKind::Small, TagSetKind::Large] {
        let m = models(kind);
        for s in corpus.sentences.iter().filter(|s| s.len() >= 2 * N_MAX) {
            let forms: Vec<&str> = s.iter().map(|t| t.surface.as_str()).collect();
            let on = tag_varcontext(&forms, m, analyzer(), true).unwrap().tags();
            let off = tag_varcontext(&forms, m, analyzer(), false).unwrap().tags();
            assert_eq!(on[N_MAX..s.len() - N_MAX], off[N_MAX..s.len() - N_MAX], "{forms:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn tagging_is_deterministic() {
    let test = seed::desk_test();
    let sents = surfaces(&test);
    for algo in [Algorithm::Church, Algorithm::VarContext] {
        let a = tag_sentences(&sents, models(TagSetKind::Large), analyzer(), algo).unwrap();
        let b = tag_sentences(&sents, models(TagSetKind::Large), analyzer(), algo).unwrap();
        let one_by_one: Vec<_> = sents
            .iter()
            .flat_map(|s| tag_sentences(std::slice::from_ref(s), models(TagSetKind::Large), analyzer(), algo).unwrap())
            .collect();
        assert_eq!(a, b);
        assert_eq!(a, one_by_one);
    }
}

fn walk(state: DialogueState, leaves: &mut Vec<DialogueState>) {
    let c = seed::paradigms();
    match &state.pending {
        None => leaves.push(state),
        Some(q) => {
            for alt in &q.alternatives {
                walk(answer(&state, alt.number, &c).unwrap(), leaves);
            }
        }
    }
}

#[test]
fn every_dialogue_path_ends_in_a_valid_entry() {
    let c = seed::paradigms();
    let roots = [
        (PosCategory::Ver, "telefonieren"),
        (PosCategory::Ver, "spielen"),
        (PosCategory::Ver, "nehmen"),
        (PosCategory::Sub, "Haus"),
        (PosCategory::Sub, "Zeitung"),
        (PosCategory::Adj, "schnell"),
        (PosCategory::Adj, "edel"),
        (PosCategory::Eig, "Hansen"),
        (PosCategory::Adv, "gern"),
    ];
    for (pos, root) in roots {
        let mut leaves = Vec::new();
        walk(start_classification(pos, root, &c).unwrap(), &mut leaves);
        assert!(!leaves.is_empty());
        for leaf in leaves {
            let entry = leaf.entry().unwrap();
            entry.validate(&c).unwrap();
            let forms = generate_forms(entry, &c).unwrap();
            assert!(!forms.rows.is_empty(), "{root} {:?}", leaf.answered);
        }
    }
}

fn word() -> impl Strategy<Value = String> {
    let words: Vec<String> = analyzer()
        .tables()
        .iter()
        .flat_map(|t| t.rows.iter().map(|r| r.surface.clone()))
        .collect();
    prop_oneof![
        4 => prop::sample::select(words),
        1 => "[a-zäöüß]{1,10}",
        1 => "[A-ZÄÖÜ][a-zäöüß]{2,12}",
        1 => prop::sample::select(vec![".".to_owned(), ",".to_owned(), "?".to_owned(), "17".to_owned()]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contextual_is_a_distribution(u in 0u16..40, v in 0u16..40) {
        for kind in [TagSetKind::Small, TagSetKind::Large] {
            let m = models(kind);
            let sum: f64 = m.symbols().map(|t| m.contextual(u, v, t)).sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn decoders_return_one_candidate_per_token(sentence in prop::collection::vec(word(), 1..12)) {
        for kind in [TagSetKind::Small, TagSetKind::Large] {
            let m = models(kind);
            let lattice: Lattice = build_lattice(&sentence, analyzer(), m);
            prop_assert!(lattice.columns.iter().all(|c| !c.is_empty()));
            let path = decode_church(&lattice, m).unwrap();
            prop_assert_eq!(path.len(), sentence.len());
            let vc = tag_varcontext(&sentence, m, analyzer(), true).unwrap();
            for (i, (form, tag)) in vc.tokens.iter().enumerate() {
                prop_assert_eq!(form, &sentence[i]);
                prop_assert!(lattice.columns[i].iter().any(|c| c.tag == *tag));
            }
        }
    }

    #[test]
    fn analysis_is_consistent_with_generation(form in word()) {
        let a = analyzer();
        for r in a.analyze(&form) {
            if r.is_compound() {
                continue;
            }
            let generated = a.tables().iter().any(|t| {
                t.lemma == r.lemma
                    && t.rows.iter().any(|row| row.tag == r.tag && (row.surface == form || capitalize(&row.surface) == form))
            });
            prop_assert!(generated, "{} {} {}", form, r.lemma, r.tag);
        }
    }

    #[test]
    fn corpus_text_round_trips(sentence in prop::collection::vec(word(), 1..8)) {
        let m = models(TagSetKind::Large);
        let tagged = tag_varcontext(&sentence, m, analyzer(), true).unwrap();
        let text = tagged.to_text();
        let back = read_corpus(&text).unwrap();
        prop_assert_eq!(write_corpus(&back), text);
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}
