//! Operations shared by the command line and the HTTP service.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use wortart::analysis::{Analysis, Analyzer};
use wortart::eval::Algorithm;
use wortart::inflection::{citation_lemma, generate_forms, FormTable, InflectionError, ParadigmSet};
use wortart::lexicon::{load_lexicon, DialogueState, Lexicon, LexiconEntry, PosTrack};
use wortart::seed;
use wortart::tagger::{read_models, tag_church, tag_varcontext, Models, TaggedSentence, TaggerError};
use wortart::tagset::PosCategory;
use wortart::tokenize::{abbreviations, sentences, tokenize};

pub const ENV_LEXICON: &str = "MORPHY_LEXICON";
pub const ENV_MODELS: &str = "MORPHY_MODELS";
pub const ENV_DATA_DIR: &str = "MORPHY_DATA_DIR";

#[derive(Debug)]
pub enum Failure {
    /// Bad invocation: exit code 1.
    Usage(String),
    /// Bad or unreadable data: exit code 2.
    Data(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) => m,
        }
    }
}

pub fn data(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

/// Flag value, else environment variable.
pub fn flag_or_env(flag: Option<&Path>, var: &str) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(var).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Lexicon, paradigms and the analyzer built from them.
pub struct Engine {
    pub classes: ParadigmSet,
    pub lexicon: Lexicon,
    pub analyzer: Analyzer,
    pub abbrevs: BTreeSet<String>,
}

impl Engine {
    pub fn new(lexicon: Lexicon) -> Result<Engine, Failure> {
        let classes = seed::paradigms();
        let analyzer = Analyzer::new(&lexicon, &classes).map_err(data)?;
        Ok(Engine {
            abbrevs: abbreviations(&lexicon),
            classes,
            lexicon,
            analyzer,
        })
    }

    /// The lexicon file at `path`, or the seed lexicon.
    pub fn load(path: Option<&Path>) -> Result<Engine, Failure> {
        let lexicon = match path {
            Some(p) => load_lexicon(&read_file(p)?, &seed::paradigms())
                .map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?,
            None => seed::lexicon(),
        };
        Engine::new(lexicon)
    }

    pub fn analyze_text(&self, text: &str) -> Vec<(String, Vec<Analysis>)> {
        tokenize(text, &self.abbrevs)
            .into_iter()
            .map(|t| {
                let a = self.analyzer.analyze(&t);
                (t, a)
            })
            .collect()
    }

    pub fn sentences(&self, text: &str) -> Vec<Vec<String>> {
        sentences(text, &self.abbrevs)
    }

    pub fn tag_text(
        &self,
        text: &str,
        models: &Models,
        algo: Algorithm,
        boundaries: bool,
    ) -> Result<Vec<TaggedSentence>, TaggerError> {
        self.sentences(text)
            .iter()
            .map(|s| match algo {
                Algorithm::Church => tag_church(s, models, &self.analyzer),
                Algorithm::VarContext => tag_varcontext(s, models, &self.analyzer, boundaries),
            })
            .collect()
    }

    /// Entries whose root or citation lemma is `word`.
    pub fn entries_for(&self, word: &str, pos: Option<PosCategory>) -> Vec<&LexiconEntry> {
        self.lexicon
            .entries()
            .iter()
            .filter(|e| e.root == word || citation_lemma(e) == word)
            .filter(|e| pos.map_or(true, |p| e.pos == p))
            .collect()
    }

    pub fn forms(&self, entry: &LexiconEntry) -> Result<FormTable, InflectionError> {
        generate_forms(entry, &self.classes)
    }
}

pub fn load_models(path: &Path) -> Result<Models, Failure> {
    read_models(&read_file(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Closing line of a finished classification dialogue.
pub fn completion_text(state: &DialogueState) -> String {
    let what = match state.pos_track {
        PosTrack::Verb => "Verb",
        PosTrack::Noun => "Substantiv",
        PosTrack::Name => "Eigenname",
        PosTrack::Adjective => "Adjektiv",
        PosTrack::Closed => "Wort",
    };
    format!("{what} klassifiziert!")
}

/// Appends one entry line to a lexicon file, creating it from the seed
/// lexicon if it does not exist yet.
pub fn append_entry(path: &Path, entry: &LexiconEntry) -> Result<(), Failure> {
    use std::io::Write;
    if !path.exists() {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(data)?;
        }
        std::fs::write(path, seed::LEXICON_TSV).map_err(data)?;
    }
    let mut f = std::fs::OpenOptions::new().append(true).open(path).map_err(data)?;
    writeln!(f, "{}", entry.to_line()).map_err(data)
}
