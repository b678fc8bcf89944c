//! Data shipped with the crate: paradigm classes, the seed lexicon, the
//! annotated desk corpus and a plain text for n-gram statistics.

use std::path::{Path, PathBuf};

use crate::corpus::{read_corpus, AnnotatedCorpus};
use crate::inflection::ParadigmSet;
use crate::lexicon::{load_lexicon, Lexicon};

pub const CLASSES_TSV: &str = include_str!("../data/classes.tsv");
pub const LEXICON_TSV: &str = include_str!("../data/lexicon.tsv");

/// The shipped paradigm classes.
pub fn paradigms() -> ParadigmSet {
    ParadigmSet::load(CLASSES_TSV).expect("shipped class file is valid")
}

/// The shipped seed lexicon.
pub fn lexicon() -> Lexicon {
    load_lexicon(LEXICON_TSV, &paradigms()).expect("shipped lexicon is valid")
}

pub const DESK_TRAIN_TSV: &str = include_str!("../data/desk_train.tsv");
pub const DESK_TEST_TSV: &str = include_str!("../data/desk_test.tsv");

pub fn desk_train() -> AnnotatedCorpus {
    read_corpus(DESK_TRAIN_TSV).expect("shipped corpus is valid")
}

pub fn desk_test() -> AnnotatedCorpus {
    read_corpus(DESK_TEST_TSV).expect("shipped corpus is valid")
}

/// Location of the plain text in the source tree. It is not embedded.
pub fn desk_text_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/desk_text.txt")
}
