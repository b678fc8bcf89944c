use std::io::{BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use wortart::corpus::{read_corpus, write_corpus};
use wortart::eval::{
    evaluate_models, learning_curve, ngram_growth, perturb_unknowns, tag_stream, Algorithm, N_MAX,
};
use wortart::inflection::expand_full_form_lexicon;
use wortart::lexicon::{answer, start_classification};
use wortart::tagger::{train_models, write_models};
use wortart::tagset::{PosCategory, TagSetKind};

use crate::ops::{
    append_entry, completion_text, data, flag_or_env, load_models, read_file, Engine, Failure, ENV_DATA_DIR,
    ENV_LEXICON, ENV_MODELS,
};

#[derive(Parser, Debug)]
#[command(name = "wortart", version, about = "German morphology and part-of-speech tagging")]
struct Cli {
    /// Lexicon file (default: $MORPHY_LEXICON, then the built-in seed lexicon)
    #[arg(long, global = true, value_name = "PATH")]
    lexicon: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Io {
    /// Input file (default: stdin)
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Morphological readings of every token of the input text
    Analyze {
        #[command(flatten)]
        io: Io,
    },
    /// Form table of a lexicon entry, looked up by root or lemma
    Generate {
        word: String,
        /// Restrict to one part of speech, e.g. "VER"
        #[arg(long)]
        pos: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Tag plain text; prints the corpus format
    Tag {
        #[command(flatten)]
        io: Io,
        /// Model file (default: $MORPHY_MODELS)
        #[arg(long, value_name = "PATH")]
        models: Option<PathBuf>,
        #[arg(long, default_value = "church")]
        algo: String,
        /// Must match the tag set of the models when given
        #[arg(long)]
        tagset: Option<String>,
        /// Do not use sentence boundaries as context (varcontext only)
        #[arg(long)]
        no_boundaries: bool,
    },
    /// Train models from an annotated corpus
    Train {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "large")]
        tagset: String,
        #[arg(long, default_value_t = N_MAX)]
        n_max: usize,
    },
    /// Tag a gold corpus and report accuracy
    Eval {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_name = "PATH")]
        models: Option<PathBuf>,
        #[arg(long, default_value = "church")]
        algo: String,
    },
    /// Accuracy on a holdout corpus for growing training prefixes
    Curve {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_name = "PATH")]
        holdout: PathBuf,
        #[arg(long, default_value = "church")]
        algo: String,
        #[arg(long, default_value = "large")]
        tagset: String,
        /// Training sizes in tokens, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Replace a share of the token surfaces by invented unknown words
    Perturb {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distinct n-grams at evenly spaced checkpoints of a token or tag stream
    Ngrams {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        checkpoints: usize,
        /// Read an annotated corpus and count tag n-grams
        #[arg(long)]
        tags: bool,
        #[arg(long, default_value = "large")]
        tagset: String,
    },
    /// Classify a new root interactively and add it to the lexicon
    LexiconAdd {
        /// Part of speech, e.g. "VER" or "SUB"
        pos: String,
        root: String,
    },
    /// Full-form lexicon of every form the lexicon generates
    Expand {
        #[command(flatten)]
        io: Io,
    },
    /// Start the HTTP service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Corpora and lexicon directory (default: $MORPHY_DATA_DIR, then ./data)
        #[arg(long, value_name = "PATH")]
        data_dir: Option<PathBuf>,
        /// Model files; tag sets without one are trained on the desk corpus
        #[arg(long, value_name = "PATH")]
        models: Vec<PathBuf>,
        /// Directory served at /
        #[arg(long, value_name = "PATH")]
        static_dir: Option<PathBuf>,
        /// Idle seconds before a dialogue session expires
        #[arg(long, default_value_t = 1800)]
        session_timeout: u64,
    },
}

/// Settings for [`crate::server`], as resolved from flags and environment.
#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: String,
    pub data_dir: PathBuf,
    pub models: Vec<PathBuf>,
    pub static_dir: Option<PathBuf>,
    pub session_timeout: u64,
}

/// What the binary should do after parsing: either output was produced, or
/// the service should start.
pub enum Outcome {
    Done,
    Serve(ServeConfig),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse<T: FromStr<Err = String>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(Failure::Usage)
}

fn pos(s: &str) -> Result<PosCategory, Failure> {
    PosCategory::from_code(s).map_err(usage)
}

fn input(io: &Io, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &io.input {
        Some(p) => read_file(p),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(data)?;
            Ok(s)
        }
    }
}

fn output(io: &Io, stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &io.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(data),
    }
}

fn required_models(flag: Option<&Path>) -> Result<PathBuf, Failure> {
    flag_or_env(flag, ENV_MODELS).ok_or_else(|| Failure::Usage(format!("--models is required (or set {ENV_MODELS})")))
}

/// Runs one invocation. Help and version output count as success.
pub fn run(args: &[String], stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> (i32, Option<ServeConfig>) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return (code, None);
        }
    };
    match dispatch(cli, stdin, stdout) {
        Ok(Outcome::Done) => (0, None),
        Ok(Outcome::Serve(cfg)) => (0, Some(cfg)),
        Err(f) => {
            let _ = writeln!(stderr, "wortart: {}", f.message());
            if let Failure::Usage(_) = f {
                let _ = writeln!(stderr, "run `wortart --help` for usage");
            }
            (f.exit_code(), None)
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<Outcome, Failure> {
    let lexicon_path = flag_or_env(cli.lexicon.as_deref(), ENV_LEXICON);
    let engine = || Engine::load(lexicon_path.as_deref());
    match cli.command {
        Command::Analyze { io } => {
            let text = input(&io, stdin)?;
            let e = engine()?;
            let mut out = String::new();
            for (surface, readings) in e.analyze_text(&text) {
                if readings.is_empty() {
                    out.push_str(&format!("{surface}\t?\n"));
                }
                for r in readings {
                    out.push_str(&r.to_line(&surface));
                    out.push('\n');
                }
            }
            output(&io, stdout, &out)?;
        }
        Command::Generate { word, pos: p, io } => {
            let e = engine()?;
            let p = p.as_deref().map(pos).transpose()?;
            let entries = e.entries_for(&word, p);
            if entries.is_empty() {
                return Err(Failure::Data(format!("{word:?} is not in the lexicon")));
            }
            let mut out = String::new();
            for entry in entries {
                let table = e.forms(entry).map_err(data)?;
                for r in &table.rows {
                    out.push_str(&format!("{}\t{}\t{}\n", r.surface, r.tag, r.lemma));
                }
            }
            output(&io, stdout, &out)?;
        }
        Command::Tag {
            io,
            models,
            algo,
            tagset,
            no_boundaries,
        } => {
            let path = required_models(models.as_deref())?;
            let algo: Algorithm = parse(&algo)?;
            let tagset: Option<TagSetKind> = tagset.as_deref().map(parse).transpose()?;
            let text = input(&io, stdin)?;
            let models = load_models(&path)?;
            if let Some(k) = tagset.filter(|k| *k != models.kind) {
                return Err(Failure::Usage(format!(
                    "--tagset {k} does not match the {} tag set of {}",
                    models.kind,
                    path.display()
                )));
            }
            let e = engine()?;
            let tagged = e.tag_text(&text, &models, algo, !no_boundaries).map_err(data)?;
            let out: String = tagged.iter().map(|s| s.to_text()).collect();
            output(&io, stdout, &out)?;
        }
        Command::Train { io, tagset, n_max } => {
            let kind: TagSetKind = parse(&tagset)?;
            let corpus = read_corpus(&input(&io, stdin)?).map_err(data)?;
            let m = train_models(&corpus, kind, n_max).map_err(data)?;
            output(&io, stdout, &write_models(&m))?;
        }
        Command::Eval { io, models, algo } => {
            let path = required_models(models.as_deref())?;
            let algo: Algorithm = parse(&algo)?;
            let gold = read_corpus(&input(&io, stdin)?).map_err(data)?;
            let m = load_models(&path)?;
            let e = engine()?;
            let report = evaluate_models(&gold, &m, &e.analyzer, algo).map_err(data)?;
            output(&io, stdout, &report.to_text())?;
        }
        Command::Curve {
            io,
            holdout,
            algo,
            tagset,
            sizes,
        } => {
            let algo: Algorithm = parse(&algo)?;
            let kind: TagSetKind = parse(&tagset)?;
            let train = read_corpus(&input(&io, stdin)?).map_err(data)?;
            let holdout = read_corpus(&read_file(&holdout)?).map_err(data)?;
            let e = engine()?;
            let points = learning_curve(&train, &holdout, &e.analyzer, algo, kind, &sizes).map_err(data)?;
            let mut out = String::from("size\taccuracy\n");
            for (size, acc) in points {
                out.push_str(&format!("{size}\t{acc:.6}\n"));
            }
            output(&io, stdout, &out)?;
        }
        Command::Perturb { io, rate, seed } => {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Failure::Usage(format!("--rate must lie in [0, 1], got {rate}")));
            }
            let corpus = read_corpus(&input(&io, stdin)?).map_err(data)?;
            let e = engine()?;
            let out = perturb_unknowns(&corpus, rate, seed, |w| !e.analyzer.analyze(w).is_empty()).map_err(data)?;
            output(&io, stdout, &write_corpus(&out))?;
        }
        Command::Ngrams {
            io,
            n,
            checkpoints,
            tags,
            tagset,
        } => {
            if checkpoints == 0 {
                return Err(Failure::Usage("--checkpoints must be at least 1".into()));
            }
            let text = input(&io, stdin)?;
            let rows = if tags {
                let kind: TagSetKind = parse(&tagset)?;
                let corpus = read_corpus(&text).map_err(data)?;
                let stream: Vec<String> = tag_stream(&corpus, kind).iter().map(|t| t.to_string()).collect();
                growth(&stream, &n, checkpoints)?
            } else {
                let e = engine()?;
                let stream: Vec<String> = text.lines().flat_map(|l| wortart::tokenize::tokenize(l, &e.abbrevs)).collect();
                growth(&stream, &n, checkpoints)?
            };
            output(&io, stdout, &rows)?;
        }
        Command::LexiconAdd { pos: p, root } => {
            let p = pos(&p)?;
            lexicon_add(p, &root, lexicon_path.as_deref(), stdin, stdout)?;
        }
        Command::Expand { io } => {
            let e = engine()?;
            let full = expand_full_form_lexicon(&e.lexicon, &e.classes).map_err(data)?;
            output(&io, stdout, &full.export())?;
        }
        Command::Serve {
            port,
            host,
            data_dir,
            models,
            static_dir,
            session_timeout,
        } => {
            let data_dir = flag_or_env(data_dir.as_deref(), ENV_DATA_DIR).unwrap_or_else(|| PathBuf::from("data"));
            let mut models = models;
            if models.is_empty() {
                models.extend(flag_or_env(None, ENV_MODELS));
            }
            return Ok(Outcome::Serve(ServeConfig {
                addr: format!("{host}:{port}"),
                data_dir,
                models,
                static_dir,
                session_timeout,
            }));
        }
    }
    Ok(Outcome::Done)
}

fn growth(stream: &[String], n: &[usize], checkpoints: usize) -> Result<String, Failure> {
    let cps: Vec<usize> = (1..=checkpoints).map(|i| stream.len() * i / checkpoints).collect();
    let mut cps_unique = cps.clone();
    cps_unique.dedup();
    let rows = ngram_growth(stream, n, &cps_unique).map_err(data)?;
    let mut out = String::from("checkpoint\tn\tdistinct\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.checkpoint, r.n, r.distinct));
    }
    Ok(out)
}

fn lexicon_add(
    p: PosCategory,
    root: &str,
    lexicon_path: Option<&Path>,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let e = Engine::load(lexicon_path.filter(|p| p.exists()))?;
    let mut state = start_classification(p, root, &e.classes).map_err(data)?;
    let mut step = 1;
    writeln!(stdout, "{step}. Geben Sie den Stamm ein: {root}").map_err(data)?;
    while let Some(q) = state.pending.clone() {
        step += 1;
        writeln!(stdout, "{step}. {}", q.text).map_err(data)?;
        for a in &q.alternatives {
            writeln!(stdout, "   {}: {}", a.number, a.label).map_err(data)?;
        }
        let choice = loop {
            write!(stdout, "> ").map_err(data)?;
            stdout.flush().map_err(data)?;
            let mut line = String::new();
            if stdin.read_line(&mut line).map_err(data)? == 0 {
                return Err(Failure::Data("input ended before the classification was complete".into()));
            }
            match line.trim().parse::<usize>() {
                Ok(n) if (1..=q.alternatives.len()).contains(&n) => break n,
                _ => writeln!(stdout, "Bitte eine Zahl von 1 bis {} eingeben.", q.alternatives.len()).map_err(data)?,
            }
        };
        state = answer(&state, choice, &e.classes).map_err(data)?;
    }
    writeln!(stdout, "{}", completion_text(&state)).map_err(data)?;
    let entry = state.entry().expect("complete dialogue has an entry").clone();
    writeln!(stdout, "{}", entry.to_line()).map_err(data)?;
    let target = lexicon_path
        .map(Path::to_path_buf)
        .or_else(|| flag_or_env(None, ENV_DATA_DIR).map(|d| d.join("lexicon.tsv")));
    if let Some(path) = target {
        append_entry(&path, &entry)?;
        writeln!(stdout, "added to {}", path.display()).map_err(data)?;
    }
    Ok(())
}
