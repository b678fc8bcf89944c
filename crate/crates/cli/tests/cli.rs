use std::io::Cursor;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use wortart_cli::run;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["wortart".to_owned()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let (code, serve) = run(&argv, &mut input, &mut out, &mut err);
    assert!(serve.is_none());
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn train(dir: &tempfile::TempDir, tagset: &str) -> String {
    let path = dir.path().join(format!("{tagset}.model"));
    let p = path.to_str().unwrap();
    let train = data("desk_train.tsv");
    let (code, _, err) = call(&["train", "--in", train.to_str().unwrap(), "--tagset", tagset, "--out", p], "");
    assert_eq!(code, 0, "{err}");
    p.to_owned()
}

#[test]
fn analyze_kuesse_prints_seven_readings() {
    let (code, out, _) = call(&["analyze"], "Küsse");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().all(|l| l.starts_with("Küsse\t")));
    assert!(out.contains("Küsse\tküssen\tVER IMP SIN\tküssen\n"));
}

#[test]
fn analyze_marks_unknown_words() {
    let (code, out, _) = call(&["analyze"], "Xyzzy .");
    assert_eq!(code, 0);
    assert_eq!(out, "Xyzzy\t?\n.\t.\tSZE\t.\n");
}

#[test]
fn tag_reproduces_the_example_sentence() {
    let dir = tempfile::tempdir().unwrap();
    let m = train(&dir, "small");
    let (code, out, err) = call(&["tag", "--algo", "church", "--tagset", "small", "--models", &m], "Die Frau bringt das Essen .");
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "Die\tART DEF\nFrau\tSUB\nbringt\tVER\ndas\tART DEF\nEssen\tSUB\n.\tSZE\n\n");
    let (code, again, _) = call(&["tag", "--algo", "church", "--models", &m], "Die Frau bringt das Essen .");
    assert_eq!(code, 0);
    assert_eq!(again, out);
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = call(&["tag"], "Die Frau .");
    assert_eq!(code, 1);
    assert!(err.contains("--models"));
    assert_eq!(call(&["frobnicate"], "").0, 1);
    assert_eq!(call(&["analyze", "--bogus"], "").0, 1);
    let dir = tempfile::tempdir().unwrap();
    let m = train(&dir, "small");
    assert_eq!(call(&["tag", "--models", &m, "--tagset", "large"], "x").0, 1);
    assert_eq!(call(&["tag", "--models", &m, "--algo", "viterbi"], "x").0, 1);
    assert_eq!(call(&["perturb", "--rate", "1.5"], "").0, 1);
    let (code, out, _) = call(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("lexicon-add"));
}

#[test]
fn data_errors_exit_two() {
    let (code, _, err) = call(&["train"], "Die\tBOGUS\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert_eq!(call(&["eval", "--models", "/nonexistent/model"], "").0, 2);
    assert_eq!(call(&["generate", "Quux"], "").0, 2);
    assert_eq!(call(&["--lexicon", "/nonexistent/lexicon.tsv", "analyze"], "x").0, 2);
}

#[test]
fn generate_lists_the_form_table() {
    let (code, out, _) = call(&["generate", "Fluß"], "");
    assert_eq!(code, 0);
    assert!(out.contains("Flüssen\tSUB DAT MAS PLU\tFluß\n"));
    let (code, out, _) = call(&["generate", "(ein)nehmen"], "");
    assert_eq!(code, 0);
    assert!(out.contains("einnahm\tVER 3PE SIN PRT\t(ein)nehmen\n"));
}

#[test]
fn eval_curve_perturb_ngrams() {
    let dir = tempfile::tempdir().unwrap();
    let m = train(&dir, "large");
    let test = data("desk_test.tsv");
    let test = test.to_str().unwrap();
    let (code, out, err) = call(&["eval", "--models", &m, "--in", test], "");
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("accuracy\t"));

    let train = data("desk_train.tsv");
    let (code, out, _) = call(
        &["curve", "--in", train.to_str().unwrap(), "--holdout", test, "--sizes", "0,300,3000", "--tagset", "small"],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);

    let corpus = std::fs::read_to_string(test).unwrap();
    let (code, a, _) = call(&["perturb", "--rate", "0.02", "--seed", "9"], &corpus);
    assert_eq!(code, 0);
    let (_, b, _) = call(&["perturb", "--rate", "0.02", "--seed", "9"], &corpus);
    assert_eq!(a, b);
    assert_ne!(a, corpus.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect::<String>());
    let (_, same, _) = call(&["perturb", "--rate", "0"], &corpus);
    let (_, canonical, _) = call(&["perturb", "--rate", "0"], &same);
    assert_eq!(same, canonical);

    let (code, out, _) = call(&["ngrams", "--checkpoints", "2"], "a b c a b c a b d");
    assert_eq!(code, 0);
    assert_eq!(out, "checkpoint\tn\tdistinct\n4\t2\t3\n4\t3\t2\n4\t4\t1\n9\t2\t4\n9\t3\t4\n9\t4\t4\n");
    let (code, out, _) = call(&["ngrams", "--tags", "--tagset", "small", "--n", "1"], &corpus);
    assert_eq!(code, 0);
    assert!(out.lines().count() > 2);
}

#[test]
fn expand_lists_full_forms() {
    let (code, out, _) = call(&["expand"], "");
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("Flüssen\t")));
}

#[test]
fn lexicon_add_runs_the_dialogue_and_appends() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("lexicon.tsv");
    let lex_s = lex.to_str().unwrap();
    let (code, out, err) = call(&["--lexicon", lex_s, "lexicon-add", "VER", "faxen"], "1\n7\n1\n1\n");
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("Bitte eine Zahl von 1 bis"), "{out}");
    assert!(out.contains("Verb klassifiziert!"));
    let saved = std::fs::read_to_string(&lex).unwrap();
    assert!(saved.starts_with(wortart::seed::LEXICON_TSV));
    assert!(saved.ends_with("faxen\tVER\tv_weak\tflags=no_ge_participle\n"), "{saved}");
    let (_, out, _) = call(&["--lexicon", lex_s, "analyze"], "faxt");
    assert!(out.contains("faxen\tVER 3PE SIN PRÄ"), "{out}");

    let (code, _, _) = call(&["--lexicon", lex_s, "lexicon-add", "VER", "faxen"], "1\n");
    assert_eq!(code, 2, "input ends early");
}

#[test]
fn binary_reads_environment() {
    let dir = tempfile::tempdir().unwrap();
    let m = train(&dir, "small");
    let bin = env!("CARGO_BIN_EXE_wortart");
    let run_with = |env: &[(&str, &str)], args: &[&str]| {
        let mut c = Command::new(bin);
        c.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
        for (k, v) in env {
            c.env(k, v);
        }
        let mut child = c.spawn().unwrap();
        use std::io::Write;
        child.stdin.take().unwrap().write_all("Ich meine meine Frau .".as_bytes()).unwrap();
        child.wait_with_output().unwrap()
    };
    let o = run_with(&[("MORPHY_MODELS", &m)], &["tag"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "Ich\tPRO PER\nmeine\tVER\nmeine\tPRO POS ATT\nFrau\tSUB\n.\tSZE\n\n"
    );
    let o = run_with(&[("MORPHY_MODELS", "")], &["tag"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_with(&[("MORPHY_LEXICON", "/nonexistent")], &["analyze"]);
    assert_eq!(o.status.code(), Some(2));
}
