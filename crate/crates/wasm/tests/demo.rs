use serde_json::Value;

use wortart_wasm::{analyze, generate, tag};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_returns_all_readings() {
    let v = parse(analyze("Küsse"));
    assert_eq!(v["tokens"][0]["analyses"].as_array().unwrap().len(), 7);
    let v = parse(analyze("Xyzzy"));
    assert!(v["tokens"][0]["analyses"].as_array().unwrap().is_empty());
}

#[test]
fn generate_by_citation_lemma() {
    let v = parse(generate("(ein)nehmen"));
    let forms = v["tables"][0]["forms"].as_array().unwrap();
    assert!(forms.iter().any(|f| f["surface"] == "einnahm" && f["tag"] == "VER 3PE SIN PRT"));
    let v = parse(generate("Fluß"));
    assert_eq!(v["tables"][0]["pos"], "SUB");
    assert!(parse(generate("Quux"))["error"].is_string());
}

#[test]
fn tag_the_examples() {
    let v = parse(tag("Die Frau bringt das Essen.", "small", "church"));
    let tags: Vec<&str> = v["sentences"][0]["tokens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["tag"].as_str().unwrap())
        .collect();
    assert_eq!(tags, ["ART DEF", "SUB", "VER", "ART DEF", "SUB", "SZE"]);
    let v = parse(tag("Ich meine meine Frau. Die Frau bringt das Essen.", "large", "varcontext"));
    assert_eq!(v["sentences"].as_array().unwrap().len(), 2);
    assert_eq!(v["sentences"][0]["tokens"][1]["tag"].as_str().unwrap().split(' ').next(), Some("VER"));
    assert!(parse(tag("x", "huge", "church"))["error"].is_string());
    assert!(parse(tag("x", "small", "viterbi"))["error"].is_string());
    assert_eq!(tag("Die Frau.", "small", "church"), tag("Die Frau.", "small", "church"));
}
