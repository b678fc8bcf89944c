//! Writes the desk corpus (train and test halves) and the plain n-gram text
//! into `crates/core/data`. Every form and gold tag is drawn from the forms
//! the seed lexicon generates.

use std::collections::HashMap;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wortart::corpus::{write_corpus, AnnotatedCorpus, Sentence, Token};
use wortart::inflection::{all_lexemes, generate_lexeme};
use wortart::seed;
use wortart::tagset::{Base, Features, PosCategory, Tag};

type Key = (String, PosCategory);

struct Forms {
    rows: HashMap<Key, Vec<(String, Tag)>>,
}

fn tokens(t: &Tag) -> Vec<String> {
    t.to_string().split(' ').map(str::to_owned).collect()
}

impl Forms {
    fn new() -> Forms {
        let classes = seed::paradigms();
        let lex = seed::lexicon();
        let mut rows: HashMap<Key, Vec<(String, Tag)>> = HashMap::new();
        for l in all_lexemes(&lex, &classes).expect("lexemes") {
            let table = generate_lexeme(&l, &classes).expect("forms");
            for r in table.rows {
                rows.entry((r.lemma.clone(), r.tag.pos()))
                    .or_default()
                    .push((r.surface, r.tag));
            }
        }
        Forms { rows }
    }

    /// Form of `lemma` whose tag has every token in `want` and the fewest
    /// other features, optionally ending in `ending`.
    fn find(&self, lemma: &str, pos: PosCategory, want: &[&str], ending: Option<&str>) -> Token {
        let rows = self
            .rows
            .get(&(lemma.to_owned(), pos))
            .unwrap_or_else(|| panic!("no lexeme {lemma} {pos}"));
        let mut best: Option<(usize, &(String, Tag))> = None;
        for row in rows {
            let have = tokens(&row.1);
            if want.iter().all(|w| have.iter().any(|h| h == w)) && ending.map_or(true, |e| row.0.ends_with(e)) {
                if best.map_or(true, |(n, _)| have.len() < n) {
                    best = Some((have.len(), row));
                }
            }
        }
        let (_, (surface, tag)) = best.unwrap_or_else(|| panic!("no form of {lemma} {pos} with {want:?} {ending:?}"));
        Token {
            surface: surface.clone(),
            tag: *tag,
        }
    }

    fn get(&self, lemma: &str, pos: PosCategory, want: &[&str]) -> Token {
        self.find(lemma, pos, want, None)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Det {
    Def,
    Ind,
    Poss,
    Kein,
    Dies,
    Bare,
}

#[derive(Clone, Copy)]
struct Agr {
    person: &'static str,
    number: &'static str,
    gender: &'static str,
}

const NOUNS_MAS: &[&str] = &[
    "Mann", "Hund", "Baum", "Garten", "Lehrer", "Schüler", "Brief", "Tag", "Zug", "Bahnhof", "Vater", "Bruder",
    "Freund", "Kollege", "Student", "Arzt", "Wald", "Berg", "Preis", "Markt", "Platz", "Film", "Abend", "Minister",
    "Präsident", "Satz", "Weg", "Kopf", "Herr", "Nachbar", "Vogel", "Fisch", "Gast", "Koch", "Kaffee", "Tee", "Wein",
    "Winter", "Sommer", "Regen", "Himmel", "Professor", "Laden", "Fahrer", "Urlaub", "Mensch", "Plan", "Schlüssel",
    "Schuh", "Stuhl", "Schrank", "Wagen", "Kunde", "Wind", "Hafen", "Meister", "Bauer", "Tisch", "Apfel", "Fluß",
    "Kuß",
];
const NOUNS_FEM: &[&str] = &[
    "Frau", "Stadt", "Katze", "Straße", "Zeitung", "Verspätung", "Wohnung", "Rechnung", "Hoffnung", "Meinung",
    "Regierung", "Woche", "Tür", "Mutter", "Schwester", "Schule", "Arbeit", "Musik", "Nacht", "Partei", "Frage",
    "Antwort", "Sprache", "Zeit", "Stunde", "Hand", "Polizei", "Kirche", "Blume", "Küche", "Suppe", "Flasche",
    "Geschichte", "Sonne", "Insel", "Universität", "Brücke", "Reise", "Familie", "Gruppe", "Welt", "Idee", "Tasche",
    "Farbe", "Post", "Bank", "Zahl", "Uhr", "Firma", "Fahrt", "Winde",
];
const NOUNS_NEU: &[&str] = &[
    "Haus", "Kind", "Essen", "Segel", "Buch", "Jahr", "Auto", "Büro", "Hotel", "Zimmer", "Fenster", "Wasser", "Brot",
    "Land", "Dorf", "Feld", "Geld", "Spiel", "Lied", "Bild", "Problem", "Wort", "Pferd", "Bier", "Glas", "Ende",
    "Wetter", "Meer", "Geschäft", "Hemd", "Kleid", "Boot", "Schiff",
];
const NAMES: &[&str] = &["Egon", "Hansen", "Anna", "Peter", "Maria"];
const PLACES: &[&str] = &["Berlin", "Hamburg", "München", "Frankfurt"];

const TRANSITIVE: &[&str] = &[
    "bringen", "kaufen", "suchen", "brauchen", "lieben", "sehen", "nehmen", "essen", "trinken", "lesen", "schreiben",
    "finden", "kennen", "machen", "holen", "zeigen", "bauen", "meinen", "hören", "kochen", "tragen", "geben",
    "schicken", "öffnen", "zählen", "sammeln", "be-zahlen", "be-suchen", "ver-stehen", "küssen", "grüßen", "fragen",
    "er-zählen", "reparieren", "spielen", "singen", "schenken",
];
const INTRANSITIVE: &[&str] = &[
    "wohnen", "lachen", "kommen", "gehen", "fahren", "schlafen", "arbeiten", "warten", "wandern", "reisen",
    "laufen", "stehen", "sitzen", "liegen", "bleiben", "tanzen", "fliegen", "weinen", "träumen", "leben",
    "telefonieren", "studieren", "feiern", "reden",
];
const SEIN_VERBS: &[&str] = &["kommen", "gehen", "fahren", "reisen", "wandern", "laufen", "fliegen", "bleiben"];
const MODALS: &[&str] = &["können", "wollen", "müssen", "sollen", "dürfen", "mögen"];
const ADJS: &[&str] = &[
    "schnell", "klein", "schön", "blau", "grün", "billig", "schwer", "voll", "reich", "arm", "still", "hell",
    "dunkel", "sauber", "einfach", "wichtig", "richtig", "freundlich", "glücklich", "lustig", "jung", "lang", "warm",
    "edel", "teuer", "müde", "leise", "gut", "groß", "neu", "rot", "weiß", "heiß", "leicht", "laut", "nett", "frisch",
    "alt", "kurz", "kalt", "schwarz", "hart",
];
const PREDICATIVE: &[&str] = &["gut", "schön", "neu", "alt", "groß", "klein", "teuer", "billig", "richtig", "wichtig", "müde", "schnell", "kalt", "warm", "lustig"];
const ADVS: &[&str] = &[
    "schon", "manchmal", "nicht", "sehr", "auch", "noch", "heute", "morgen", "gestern", "hier", "dort", "jetzt",
    "immer", "oft", "gern", "bald", "dann", "sofort", "leider", "wieder", "nur", "vielleicht", "natürlich",
    "wirklich", "also", "doch", "zusammen",
];
const FRONT_ADVS: &[&str] = &["Heute", "Morgen", "Gestern", "Dann", "Jetzt", "Leider", "Manchmal", "Oft", "Bald", "Hier", "Dort", "Natürlich", "Vielleicht"];
const PRP_DAT: &[&str] = &["mit", "nach", "von", "zu", "aus", "bei", "seit", "gegenüber"];
const PRP_AKK: &[&str] = &["durch", "für", "gegen", "um", "ohne"];
const PRP_TWO: &[&str] = &["in", "an", "auf", "über", "unter", "vor", "hinter", "neben", "zwischen"];
const PRP_GEN: &[&str] = &["wegen", "während", "trotz"];
const POSS: &[&str] = &["mein", "dein", "sein", "ihr", "unser", "euer"];
const SUBORD: &[&str] = &["daß", "weil", "wenn", "ob", "obwohl", "bevor", "nachdem", "da"];
const COORD: &[&str] = &["und", "aber", "oder", "denn"];
const NUMBERS: &[&str] = &["zwei", "drei", "vier", "fünf", "sechs", "sieben", "acht", "zehn", "hundert"];
const PA1_VERBS: &[&str] = &["flattern", "spielen", "lachen", "singen", "schlafen", "laufen", "warten", "kochen"];
const SEPARABLE: &[(&str, &str, &str)] = &[
    ("(ein)nehmen", "nehmen", "ein"),
    ("(mit)nehmen", "nehmen", "mit"),
    ("(ein)kaufen", "kaufen", "ein"),
    ("(auf)machen", "machen", "auf"),
    ("(vor)stellen", "stellen", "vor"),
    ("(ab)spielen", "spielen", "ab"),
    ("(ab)fahren", "fahren", "ab"),
];

struct Gen {
    f: Forms,
    rng: ChaCha8Rng,
}

fn cap(t: &mut Token) {
    let mut c = t.surface.chars();
    if let Some(first) = c.next() {
        t.surface = first.to_uppercase().chain(c).collect();
    }
}

fn punct(s: &str, pos: PosCategory) -> Token {
    Token {
        surface: s.to_owned(),
        tag: Tag::large(Base::Pos(pos), Features::default()),
    }
}

impl Gen {
    fn pick<'a>(&mut self, xs: &[&'a str]) -> &'a str {
        xs[self.rng.gen_range(0..xs.len())]
    }

    /// Rank-weighted choice, P(rank r) proportional to 1/(r+1).
    fn zipf<'a>(&mut self, xs: &[&'a str]) -> &'a str {
        let total: f64 = (1..=xs.len()).map(|r| 1.0 / r as f64).sum();
        let mut x = self.rng.gen::<f64>() * total;
        for (i, w) in xs.iter().enumerate() {
            x -= 1.0 / (i + 1) as f64;
            if x <= 0.0 {
                return w;
            }
        }
        xs[xs.len() - 1]
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn inv(&self, word: &str, pos: PosCategory) -> Token {
        self.f.get(word, pos, &[])
    }

    fn noun(&mut self) -> (&'static str, &'static str) {
        let r: f64 = self.rng.gen();
        if r < 0.4 {
            (self.zipf(NOUNS_MAS), "MAS")
        } else if r < 0.72 {
            (self.zipf(NOUNS_FEM), "FEM")
        } else {
            (self.zipf(NOUNS_NEU), "NEU")
        }
    }

    fn adjective(&mut self, case: &str, gender: &str, number: &str, det: Det) -> Token {
        let a = self.zipf(ADJS);
        let ending = adj_ending(case, gender, number, det);
        self.f.find(a, PosCategory::Adj, &[case, gender, number], Some(ending))
    }

    fn participle(&mut self, case: &str, gender: &str, number: &str, det: Det) -> Token {
        let v = self.pick(PA1_VERBS);
        let lemma = format!("{v}d ({v})");
        let decl = match det {
            Det::Def | Det::Dies => "DEF",
            Det::Bare => "SOL",
            _ => "IND",
        };
        let ending = adj_ending(case, gender, number, det);
        self.f.find(&lemma, PosCategory::Adj, &[decl, case, gender, number], Some(ending))
    }

    /// A noun phrase in `case`; returns its tokens and agreement.
    fn np(&mut self, case: &str, allow_pronoun: bool) -> (Vec<Token>, Agr) {
        if allow_pronoun && self.chance(0.25) {
            return self.pronoun(case);
        }
        if self.chance(0.06) {
            let name = if case == "DAT" && self.chance(0.5) {
                self.pick(PLACES)
            } else {
                self.pick(NAMES)
            };
            let mut toks = Vec::new();
            if self.chance(0.2) {
                toks.push(self.inv("Dr.", PosCategory::Abk));
            }
            toks.push(self.f.get(name, PosCategory::Eig, &[case, "SIN"]));
            return (toks, Agr { person: "3PE", number: "SIN", gender: "MAS" });
        }
        let (noun, gender) = self.noun();
        let number = if self.chance(0.3) { "PLU" } else { "SIN" };
        let det = {
            let r: f64 = self.rng.gen();
            if r < 0.45 {
                Det::Def
            } else if r < 0.62 {
                if number == "SIN" {
                    Det::Ind
                } else {
                    Det::Bare
                }
            } else if r < 0.8 {
                Det::Poss
            } else if r < 0.88 {
                Det::Kein
            } else if r < 0.95 {
                Det::Dies
            } else {
                Det::Bare
            }
        };
        let det = if det == Det::Bare && number == "SIN" { Det::Def } else { det };
        let mut toks = Vec::new();
        match det {
            Det::Def => toks.push(self.f.get("der", PosCategory::ArtDef, &[case, gender, number])),
            Det::Ind => toks.push(self.f.get("ein", PosCategory::ArtInd, &[case, gender, number])),
            Det::Poss => {
                let p = self.pick(POSS);
                toks.push(self.f.get(p, PosCategory::ProPosAtt, &[case, gender, number]));
            }
            Det::Kein => toks.push(self.f.get("kein", PosCategory::ProIndAtt, &[case, gender, number])),
            Det::Dies => toks.push(self.f.get("dies", PosCategory::ProDemAtt, &[case, gender, number])),
            Det::Bare => {
                if self.chance(0.3) {
                    let n = self.pick(NUMBERS);
                    toks.push(self.inv(n, PosCategory::Zal));
                } else if self.chance(0.1) {
                    let n = self.rng.gen_range(2..40).to_string();
                    toks.push(punct(&n, PosCategory::Zan));
                }
            }
        }
        if self.chance(0.25) {
            let t = self.adjective(case, gender, number, det);
            toks.push(t);
        } else if self.chance(0.04) {
            let t = self.participle(case, gender, number, det);
            toks.push(t);
        }
        toks.push(self.f.get(noun, PosCategory::Sub, &[case, gender, number]));
        (toks, Agr { person: "3PE", number, gender })
    }

    fn pronoun(&mut self, case: &str) -> (Vec<Token>, Agr) {
        let choices: &[(&str, &str, &str, &str)] = &[
            ("ich", "1PE", "SIN", ""),
            ("du", "2PE", "SIN", ""),
            ("er", "3PE", "SIN", "MAS"),
            ("sie", "3PE", "SIN", "FEM"),
            ("es", "3PE", "SIN", "NEU"),
            ("wir", "1PE", "PLU", ""),
            ("ihr", "2PE", "PLU", ""),
            ("sie", "3PE", "PLU", ""),
        ];
        let (lemma, p, n, g) = choices[self.rng.gen_range(0..choices.len())];
        let mut want = vec![p, case, n];
        if !g.is_empty() {
            want.push(g);
        }
        let t = self.f.get(lemma, PosCategory::ProPer, &want);
        (vec![t], Agr { person: p, number: n, gender: if g.is_empty() { "MAS" } else { g } })
    }

    fn finite(&mut self, verb: &str, agr: Agr, mood: &str) -> Token {
        self.f.get(verb, PosCategory::Ver, &[agr.person, agr.number, mood])
    }

    fn mood(&mut self) -> &'static str {
        let r: f64 = self.rng.gen();
        if r < 0.72 {
            "PRÄ"
        } else if r < 0.95 {
            "PRT"
        } else {
            "KJ2"
        }
    }

    fn pp(&mut self) -> Vec<Token> {
        let r: f64 = self.rng.gen();
        let (p, case, pos) = if r < 0.4 {
            (self.pick(PRP_DAT), "DAT", PosCategory::Prp)
        } else if r < 0.6 {
            (self.pick(PRP_AKK), "AKK", PosCategory::Prp)
        } else if r < 0.95 {
            let c = if self.chance(0.6) { "DAT" } else { "AKK" };
            (self.pick(PRP_TWO), c, PosCategory::Prp)
        } else {
            (self.pick(PRP_GEN), "GEN", PosCategory::Prp)
        };
        let mut out = vec![self.f.get(p, pos, &[case])];
        out.extend(self.np(case, false).0);
        out
    }

    fn object(&mut self) -> Vec<Token> {
        self.np("AKK", true).0
    }

    fn adverb(&mut self) -> Token {
        let a = self.pick(ADVS);
        self.inv(a, PosCategory::Adv)
    }

    fn subject(&mut self) -> (Vec<Token>, Agr) {
        self.np("NOM", true)
    }

    fn end(&mut self) -> Token {
        punct(".", PosCategory::Sze)
    }

    /// Main clause with the verb in second position.
    fn main_clause(&mut self) -> Vec<Token> {
        let (mut subj, agr) = self.subject();
        let mood = self.mood();
        let mut out = Vec::new();
        let front_adv = self.chance(0.15);
        let r: f64 = self.rng.gen();
        if r < 0.42 {
            let v = self.zipf(TRANSITIVE);
            let verb = self.finite(v, agr, mood);
            let obj = self.object();
            if front_adv {
                let a = self.pick(FRONT_ADVS);
                out.push(self.inv(&a.to_lowercase(), PosCategory::Adv));
                out.push(verb);
                out.append(&mut subj);
            } else {
                out.append(&mut subj);
                out.push(verb);
            }
            if self.chance(0.2) {
                out.push(self.adverb());
            }
            out.extend(obj);
            if self.chance(0.25) {
                out.extend(self.pp());
            }
        } else if r < 0.62 {
            let v = self.zipf(INTRANSITIVE);
            out.append(&mut subj);
            out.push(self.finite(v, agr, mood));
            if self.chance(0.5) {
                out.push(self.adverb());
            }
            if self.chance(0.6) {
                out.extend(self.pp());
            }
        } else if r < 0.72 {
            let m = self.pick(MODALS);
            out.append(&mut subj);
            out.push(self.f.get(m, PosCategory::VerMod, &[agr.person, agr.number, "PRÄ"]));
            let v = self.zipf(TRANSITIVE);
            out.extend(self.object());
            out.push(self.f.get(v, PosCategory::VerInf, &[]));
        } else if r < 0.8 {
            out.append(&mut subj);
            if self.chance(0.5) {
                let v = self.zipf(TRANSITIVE);
                out.push(self.f.get("haben", PosCategory::VerAux, &[agr.person, agr.number, "PRÄ"]));
                out.extend(self.object());
                out.push(self.f.get(v, PosCategory::VerPa2, &[]));
            } else {
                let v = self.pick(SEIN_VERBS);
                out.push(self.f.get("sein", PosCategory::VerAux, &[agr.person, agr.number, "PRÄ"]));
                out.extend(self.pp());
                out.push(self.f.get(v, PosCategory::VerPa2, &[]));
            }
        } else if r < 0.87 {
            // predicative adjective
            out.append(&mut subj);
            out.push(self.f.get("sein", PosCategory::VerAux, &[agr.person, agr.number, mood]));
            if self.chance(0.3) {
                out.push(self.inv("sehr", PosCategory::Adv));
            }
            let a = self.zipf(PREDICATIVE);
            out.push(self.f.get(a, PosCategory::AdjAdv, &["POS"]));
        } else if r < 0.94 {
            let (lemma, base, particle) = SEPARABLE[self.rng.gen_range(0..SEPARABLE.len())];
            let _ = lemma;
            out.append(&mut subj);
            out.push(self.finite(base, agr, mood));
            out.extend(self.object());
            out.push(self.inv(particle, PosCategory::Zus));
        } else {
            // the verb meinen with a possessive object, as in the example
            let (mut pron, agr) = self.pronoun("NOM");
            out.append(&mut pron);
            out.push(self.finite("meinen", agr, "PRÄ"));
            if self.chance(0.7) {
                let (noun, gender) = self.noun();
                let p = self.pick(POSS);
                out.push(self.f.get(p, PosCategory::ProPosAtt, &["AKK", gender, "SIN"]));
                out.push(self.f.get(noun, PosCategory::Sub, &["AKK", gender, "SIN"]));
            } else {
                out.push(self.f.get("der", PosCategory::ProDemPro, &["AKK", "NEU", "SIN"]));
            }
        }
        out
    }

    /// Clause with the verb last, after a subordinating conjunction.
    fn subordinate(&mut self) -> Vec<Token> {
        let k = self.pick(SUBORD);
        let mut out = vec![self.inv(k, PosCategory::KonUnt)];
        let (subj, agr) = self.subject();
        out.extend(subj);
        if self.chance(0.6) {
            let v = self.zipf(TRANSITIVE);
            out.extend(self.object());
            let mood = self.mood();
            out.push(self.finite(v, agr, mood));
        } else {
            let v = self.zipf(INTRANSITIVE);
            if self.chance(0.5) {
                out.push(self.adverb());
            }
            let mood = self.mood();
            out.push(self.finite(v, agr, mood));
        }
        out
    }

    fn relative(&mut self, agr: Agr) -> Vec<Token> {
        let mut out = vec![punct(",", PosCategory::Szk)];
        out.push(self.f.get("der", PosCategory::ProRelPro, &["NOM", agr.gender, agr.number]));
        let v = self.zipf(TRANSITIVE);
        out.extend(self.object());
        out.push(self.finite(v, Agr { person: "3PE", ..agr }, "PRÄ"));
        out.push(punct(",", PosCategory::Szk));
        out
    }

    fn sentence(&mut self) -> Sentence {
        let r: f64 = self.rng.gen();
        let mut s = if r < 0.5 {
            let mut s = self.main_clause();
            s.push(self.end());
            s
        } else if r < 0.6 {
            let mut s = self.main_clause();
            s.push(punct(",", PosCategory::Szk));
            s.extend(self.subordinate());
            s.push(self.end());
            s
        } else if r < 0.67 {
            let mut s = self.main_clause();
            let c = self.pick(COORD);
            s.push(self.inv(c, PosCategory::KonNeb));
            s.extend(self.main_clause());
            s.push(self.end());
            s
        } else if r < 0.73 {
            // subject with a relative clause
            let (noun, gender) = self.noun();
            let number = if self.chance(0.3) { "PLU" } else { "SIN" };
            let mut s = vec![
                self.f.get("der", PosCategory::ArtDef, &["NOM", gender, number]),
                self.f.get(noun, PosCategory::Sub, &["NOM", gender, number]),
            ];
            let agr = Agr { person: "3PE", number, gender };
            s.extend(self.relative(agr));
            let v = self.zipf(INTRANSITIVE);
            s.push(self.finite(v, agr, "PRÄ"));
            if self.chance(0.5) {
                s.push(self.adverb());
            }
            s.push(self.end());
            s
        } else if r < 0.78 {
            // um ... zu
            let mut s = self.main_clause();
            s.push(punct(",", PosCategory::Szk));
            s.push(self.inv("um", PosCategory::KonInf));
            s.extend(self.object());
            if self.chance(0.5) {
                let (lemma, _, _) = SEPARABLE[self.rng.gen_range(0..SEPARABLE.len())];
                s.push(self.f.get(lemma, PosCategory::VerEiz, &[]));
            } else {
                let v = self.zipf(TRANSITIVE);
                s.push(self.inv("zu", PosCategory::Skz));
                s.push(self.f.get(v, PosCategory::VerInf, &[]));
            }
            s.push(self.end());
            s
        } else if r < 0.84 {
            // questions
            let mut s = Vec::new();
            if self.chance(0.5) {
                s.push(self.f.get("wer", PosCategory::ProInrPro, &["NOM", "SIN", "MAS"]));
                let v = self.zipf(TRANSITIVE);
                s.push(self.finite(v, Agr { person: "3PE", number: "SIN", gender: "MAS" }, "PRÄ"));
                s.extend(self.object());
            } else {
                let v = self.zipf(TRANSITIVE);
                let (subj, agr) = self.subject();
                s.push(self.finite(v, agr, "PRÄ"));
                s.extend(subj);
                s.extend(self.object());
            }
            s.push(punct("?", PosCategory::Sze));
            s
        } else if r < 0.88 {
            // imperative
            let v = self.zipf(TRANSITIVE);
            let n = if self.chance(0.6) { "SIN" } else { "PLU" };
            let mut s = vec![self.f.get(v, PosCategory::VerImp, &[n])];
            s.extend(self.np("AKK", false).0);
            s.push(punct("!", PosCategory::Sze));
            s
        } else if r < 0.92 {
            // demonstrative subject
            let mut s = vec![self.f.get("der", PosCategory::ProDemPro, &["NOM", "NEU", "SIN"])];
            let mood = self.mood();
            s.push(self.f.get("sein", PosCategory::VerAux, &["3PE", "SIN", mood]));
            if self.chance(0.5) {
                s.extend(self.np("NOM", false).0);
            } else {
                let a = self.zipf(PREDICATIVE);
                s.push(self.f.get(a, PosCategory::AdjAdv, &["POS"]));
            }
            s.push(self.end());
            s
        } else if r < 0.95 {
            // interjection or colon
            let i = self.pick(&["ach", "oh", "ja", "nein", "hallo"]);
            let mut s = vec![self.inv(i, PosCategory::Inj)];
            s.push(if self.chance(0.7) {
                punct(",", PosCategory::Szk)
            } else {
                punct(":", PosCategory::Szd)
            });
            s.extend(self.main_clause());
            s.push(self.end());
            s
        } else {
            // comparison
            let (mut subj, agr) = self.subject();
            let mut s = Vec::new();
            s.append(&mut subj);
            s.push(self.f.get("sein", PosCategory::VerAux, &[agr.person, agr.number, "PRÄ"]));
            let a = self.zipf(PREDICATIVE);
            s.push(self.f.get(a, PosCategory::AdjAdv, &["KOM"]));
            s.push(self.inv("als", PosCategory::KonVgl));
            s.extend(self.np("NOM", false).0);
            s.push(self.end());
            s
        };
        if let Some(first) = s.first_mut() {
            cap(first);
        }
        s
    }
}

fn adj_ending(case: &str, gender: &str, number: &str, det: Det) -> &'static str {
    let weak = matches!(det, Det::Def | Det::Dies);
    let mixed = matches!(det, Det::Ind | Det::Poss | Det::Kein);
    if number == "PLU" {
        return if weak || mixed {
            "en"
        } else {
            match case {
                "NOM" | "AKK" => "e",
                "GEN" => "er",
                _ => "en",
            }
        };
    }
    if weak {
        return match (case, gender) {
            ("NOM", _) => "e",
            ("AKK", "FEM") | ("AKK", "NEU") => "e",
            _ => "en",
        };
    }
    let strong = match (case, gender) {
        ("NOM", "MAS") => "er",
        ("NOM", "FEM") | ("AKK", "FEM") => "e",
        ("NOM", "NEU") | ("AKK", "NEU") => "es",
        ("GEN", "FEM") | ("DAT", "FEM") => "er",
        ("GEN", _) => "en",
        ("DAT", _) => "em",
        _ => "en",
    };
    if mixed {
        match (case, gender) {
            ("NOM", "MAS") => "er",
            ("NOM", "NEU") | ("AKK", "NEU") => "es",
            ("NOM", "FEM") | ("AKK", "FEM") => "e",
            _ => "en",
        }
    } else {
        strong
    }
}

fn generate(gen: &mut Gen, min_tokens: usize) -> AnnotatedCorpus {
    let mut c = AnnotatedCorpus::default();
    while c.token_count() < min_tokens {
        c.sentences.push(gen.sentence());
    }
    c
}

/// Plain text: tokens joined by spaces, punctuation attached to the left,
/// one sentence per line.
fn plain(c: &AnnotatedCorpus) -> String {
    let mut out = String::new();
    for s in &c.sentences {
        let mut line = String::new();
        for t in s {
            let attach = t.tag.pos().is_punctuation() && t.surface != "(" && t.surface != "\"";
            if !line.is_empty() && !attach {
                line.push(' ');
            }
            line.push_str(&t.surface);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data"));
    let mut gen = Gen {
        f: Forms::new(),
        rng: ChaCha8Rng::seed_from_u64(1996),
    };
    let train = generate(&mut gen, 3000);
    let test = generate(&mut gen, 1000);
    let mut text_gen = Gen {
        f: gen.f,
        rng: ChaCha8Rng::seed_from_u64(2024),
    };
    let text = generate(&mut text_gen, 110_000);
    let header = "# desk corpus, generated from the seed lexicon\n";
    std::fs::write(dir.join("desk_train.tsv"), format!("{header}{}", write_corpus(&train))).expect("write train");
    std::fs::write(dir.join("desk_test.tsv"), format!("{header}{}", write_corpus(&test))).expect("write test");
    std::fs::write(dir.join("desk_text.txt"), plain(&text)).expect("write text");
    eprintln!(
        "train {} tokens / {} sentences, test {} tokens, text {} tokens",
        train.token_count(),
        train.sentences.len(),
        test.token_count(),
        text.token_count()
    );
}
