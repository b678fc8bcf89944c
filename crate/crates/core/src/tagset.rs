//! The two tag sets and the tag string grammar.
//!
//! The small set has exactly 51 coarse parts of speech. The large set adds
//! grammatical features (case, number, gender, person, tense/mood, degree and
//! adjectival declension) to the same base categories, plus the
//! present-participle base `PA1`, which only exists in the large set and maps
//! onto `ADJ`.
//!
//! Tag strings are space separated upper-case tokens. The first tokens name
//! the category (`VER AUX INF`, `PRO DEM ATT`), the remaining ones are
//! features. Parsing is order-insensitive after the leading family token;
//! formatting is canonical:
//!
//! ```text
//! <category head> <person> <case> <declension> <gender> <number> <mood> <degree> <usage>
//! ```
//!
//! where `usage` is the trailing `ATT`/`PRO` of pronoun categories and the
//! `ADV` of `ADJ ADV`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TagError {
    #[error("empty tag string")]
    Empty,
    #[error("malformed tag string {0:?}")]
    Malformed(String),
    #[error("unknown token {token:?} in tag {tag:?}")]
    UnknownToken { token: String, tag: String },
    #[error("duplicate {dimension} in tag {tag:?}")]
    DuplicateDimension { dimension: &'static str, tag: String },
    #[error("feature {feature} is not allowed for {base} in tag {tag:?}")]
    IllegalFeature {
        feature: &'static str,
        base: String,
        tag: String,
    },
    #[error("incomplete category in tag {0:?}")]
    Incomplete(String),
    #[error("small tags carry no features: {0:?}")]
    FeaturesInSmallTag(String),
}

/// Which of the two tag sets a tag belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TagSetKind {
    Small,
    Large,
}

impl TagSetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TagSetKind::Small => "small",
            TagSetKind::Large => "large",
        }
    }
}

impl fmt::Display for TagSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TagSetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(TagSetKind::Small),
            "large" => Ok(TagSetKind::Large),
            other => Err(format!("unknown tag set {other:?} (expected small or large)")),
        }
    }
}

macro_rules! pos_categories {
    ($($variant:ident => $code:literal),* $(,)?) => {
        /// One of the 51 coarse parts of speech.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PosCategory {
            $($variant),*
        }

        impl PosCategory {
            /// All small categories in table order.
            pub const ALL: &'static [PosCategory] = &[$(PosCategory::$variant),*];

            pub fn code(self) -> &'static str {
                match self {
                    $(PosCategory::$variant => $code),*
                }
            }
        }
    };
}

pos_categories! {
    Sub => "SUB",
    Eig => "EIG",
    Ver => "VER",
    VerInf => "VER INF",
    VerPa2 => "VER PA2",
    VerEiz => "VER EIZ",
    VerImp => "VER IMP",
    VerAux => "VER AUX",
    VerAuxInf => "VER AUX INF",
    VerAuxPa2 => "VER AUX PA2",
    VerAuxImp => "VER AUX IMP",
    VerMod => "VER MOD",
    VerModInf => "VER MOD INF",
    VerModPa2 => "VER MOD PA2",
    VerModImp => "VER MOD IMP",
    ArtInd => "ART IND",
    ArtDef => "ART DEF",
    Adj => "ADJ",
    AdjAdv => "ADJ ADV",
    ProDemAtt => "PRO DEM ATT",
    ProDemPro => "PRO DEM PRO",
    ProRelAtt => "PRO REL ATT",
    ProRelPro => "PRO REL PRO",
    ProPosAtt => "PRO POS ATT",
    ProPosPro => "PRO POS PRO",
    ProIndAtt => "PRO IND ATT",
    ProIndPro => "PRO IND PRO",
    ProInrAtt => "PRO INR ATT",
    ProInrPro => "PRO INR PRO",
    ProPer => "PRO PER",
    ProRef => "PRO REF",
    Adv => "ADV",
    AdvPro => "ADV PRO",
    KonUnt => "KON UNT",
    KonNeb => "KON NEB",
    KonInf => "KON INF",
    KonVgl => "KON VGL",
    KonPri => "KON PRI",
    Prp => "PRP",
    Skz => "SKZ",
    Zus => "ZUS",
    Inj => "INJ",
    Zal => "ZAL",
    Zan => "ZAN",
    Abk => "ABK",
    Szd => "SZD",
    Sze => "SZE",
    Szg => "SZG",
    Szk => "SZK",
    Szs => "SZS",
    Szn => "SZN",
}

impl PosCategory {
    /// Parses a small-set code such as `"PRO POS ATT"`. Accepts the same
    /// token-order variants as [`parse_tag`].
    pub fn from_code(code: &str) -> Result<PosCategory, TagError> {
        match parse_tag(code, TagSetKind::Small)?.base {
            Base::Pos(p) => Ok(p),
            Base::Pa1 => Err(TagError::Incomplete(code.to_owned())),
        }
    }

    /// Open classes are the ones unknown words are guessed into.
    pub fn is_open_class(self) -> bool {
        use PosCategory::*;
        matches!(
            self,
            Sub | Eig | Ver | VerInf | VerPa2 | VerEiz | VerImp | Adj | AdjAdv | Adv
        )
    }

    pub fn is_punctuation(self) -> bool {
        use PosCategory::*;
        matches!(self, Szd | Sze | Szg | Szk | Szs | Szn)
    }

    pub fn is_verb(self) -> bool {
        self.code().starts_with("VER")
    }

    /// Splits the code into the tokens written before the features and the
    /// usage token written after them.
    fn head_and_usage(self) -> (&'static str, Option<&'static str>) {
        let code = self.code();
        if code.starts_with("PRO ") && (code.ends_with(" ATT") || code.ends_with(" PRO")) {
            (&code[..code.len() - 4], Some(&code[code.len() - 3..]))
        } else if self == PosCategory::AdjAdv {
            ("ADJ", Some("ADV"))
        } else {
            (code, None)
        }
    }
}

impl fmt::Display for PosCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Base of a tag: a small category, or the large-only present participle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Pos(PosCategory),
    Pa1,
}

impl Base {
    pub fn small(self) -> PosCategory {
        match self {
            Base::Pos(p) => p,
            Base::Pa1 => PosCategory::Adj,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Pos(p) => f.write_str(p.code()),
            Base::Pa1 => f.write_str("PA1"),
        }
    }
}

macro_rules! feature_values {
    ($name:ident { $($variant:ident => $token:literal),* $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn token(self) -> &'static str {
                match self {
                    $($name::$variant => $token),*
                }
            }

            #[allow(dead_code)]
            fn from_token(token: &str) -> Option<$name> {
                match token {
                    $($token => Some($name::$variant),)*
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.token())
            }
        }
    };
}

feature_values!(Person { First => "1PE", Second => "2PE", Third => "3PE" });
feature_values!(Case { Nom => "NOM", Gen => "GEN", Dat => "DAT", Akk => "AKK" });
feature_values!(Declension { Strong => "SOL", Weak => "DEF", Mixed => "IND" });
feature_values!(Gender { Mas => "MAS", Fem => "FEM", Neu => "NEU" });
feature_values!(Number { Sin => "SIN", Plu => "PLU" });
feature_values!(Mood { Present => "PRÄ", Preterite => "PRT", Subj1 => "KJ1", Subj2 => "KJ2" });
feature_values!(Degree { Positive => "POS", Comparative => "KOM", Superlative => "SUP" });

/// A grammatical feature dimension. Declaration order is the canonical
/// formatting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Person,
    Case,
    Declension,
    Gender,
    Number,
    Mood,
    Degree,
}

impl Dimension {
    pub fn name(self) -> &'static str {
        match self {
            Dimension::Person => "person",
            Dimension::Case => "case",
            Dimension::Declension => "declension",
            Dimension::Gender => "gender",
            Dimension::Number => "number",
            Dimension::Mood => "tense/mood",
            Dimension::Degree => "degree",
        }
    }
}

/// A single feature value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Person(Person),
    Case(Case),
    Declension(Declension),
    Gender(Gender),
    Number(Number),
    Mood(Mood),
    Degree(Degree),
}

impl Feature {
    pub fn dimension(self) -> Dimension {
        match self {
            Feature::Person(_) => Dimension::Person,
            Feature::Case(_) => Dimension::Case,
            Feature::Declension(_) => Dimension::Declension,
            Feature::Gender(_) => Dimension::Gender,
            Feature::Number(_) => Dimension::Number,
            Feature::Mood(_) => Dimension::Mood,
            Feature::Degree(_) => Dimension::Degree,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Feature::Person(v) => v.token(),
            Feature::Case(v) => v.token(),
            Feature::Declension(v) => v.token(),
            Feature::Gender(v) => v.token(),
            Feature::Number(v) => v.token(),
            Feature::Mood(v) => v.token(),
            Feature::Degree(v) => v.token(),
        }
    }

    /// Feature tokens that are unambiguous in every family. `POS`, `DEF` and
    /// `IND` double as category tokens and are resolved by the parser.
    fn from_plain_token(token: &str) -> Option<Feature> {
        Person::from_token(token)
            .map(Feature::Person)
            .or_else(|| Case::from_token(token).map(Feature::Case))
            .or_else(|| Gender::from_token(token).map(Feature::Gender))
            .or_else(|| Number::from_token(token).map(Feature::Number))
            .or_else(|| Mood::from_token(token).map(Feature::Mood))
            .or_else(|| match token {
                "KOM" => Some(Feature::Degree(Degree::Comparative)),
                "SUP" => Some(Feature::Degree(Degree::Superlative)),
                "SOL" => Some(Feature::Declension(Declension::Strong)),
                _ => None,
            })
    }
}

/// Feature bundle with at most one value per dimension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Features {
    pub person: Option<Person>,
    pub case: Option<Case>,
    pub declension: Option<Declension>,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
    pub mood: Option<Mood>,
    pub degree: Option<Degree>,
}

impl Features {
    pub fn is_empty(&self) -> bool {
        self.dimensions().is_empty()
    }

    pub fn get(&self, dim: Dimension) -> Option<Feature> {
        match dim {
            Dimension::Person => self.person.map(Feature::Person),
            Dimension::Case => self.case.map(Feature::Case),
            Dimension::Declension => self.declension.map(Feature::Declension),
            Dimension::Gender => self.gender.map(Feature::Gender),
            Dimension::Number => self.number.map(Feature::Number),
            Dimension::Mood => self.mood.map(Feature::Mood),
            Dimension::Degree => self.degree.map(Feature::Degree),
        }
    }

    /// Sets a feature, returning `false` if its dimension was already set.
    pub fn insert(&mut self, feature: Feature) -> bool {
        if self.get(feature.dimension()).is_some() {
            return false;
        }
        match feature {
            Feature::Person(v) => self.person = Some(v),
            Feature::Case(v) => self.case = Some(v),
            Feature::Declension(v) => self.declension = Some(v),
            Feature::Gender(v) => self.gender = Some(v),
            Feature::Number(v) => self.number = Some(v),
            Feature::Mood(v) => self.mood = Some(v),
            Feature::Degree(v) => self.degree = Some(v),
        }
        true
    }

    /// Features in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Feature> + '_ {
        ALL_DIMENSIONS.iter().filter_map(move |&d| self.get(d))
    }

    pub fn dimensions(&self) -> Vec<Dimension> {
        ALL_DIMENSIONS
            .iter()
            .copied()
            .filter(|&d| self.get(d).is_some())
            .collect()
    }
}

const ALL_DIMENSIONS: [Dimension; 7] = [
    Dimension::Person,
    Dimension::Case,
    Dimension::Declension,
    Dimension::Gender,
    Dimension::Number,
    Dimension::Mood,
    Dimension::Degree,
];

/// A tag of either set. Small tags never carry features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag {
    pub base: Base,
    pub features: Features,
    pub kind: TagSetKind,
}

impl Tag {
    pub fn small(pos: PosCategory) -> Tag {
        Tag {
            base: Base::Pos(pos),
            features: Features::default(),
            kind: TagSetKind::Small,
        }
    }

    pub fn large(base: Base, features: Features) -> Tag {
        Tag {
            base,
            features,
            kind: TagSetKind::Large,
        }
    }

    pub fn pos(&self) -> PosCategory {
        self.base.small()
    }

    /// Re-labels the tag for `kind`, mapping down when going large to small.
    /// Going small to large keeps the (featureless) category.
    pub fn to_kind(self, kind: TagSetKind) -> Tag {
        match kind {
            TagSetKind::Small => map_large_to_small(&self),
            TagSetKind::Large => Tag {
                kind: TagSetKind::Large,
                ..self
            },
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tag(self))
    }
}

impl PartialOrd for Tag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order is the byte order of the formatted strings.
impl Ord for Tag {
    fn cmp(&self, other: &Self) -> Ordering {
        format_tag(self)
            .cmp(&format_tag(other))
            .then(self.kind.cmp(&other.kind))
    }
}

/// Legal feature frames per base. A large tag is a member of the enumerated
/// set when its dimensions equal one of the frames exactly; parsing only
/// requires every dimension to occur in some frame.
fn frames(base: Base) -> &'static [&'static [Dimension]] {
    use Dimension::*;
    use PosCategory::*;
    const CGN: &[Dimension] = &[Case, Gender, Number];
    match base {
        Base::Pa1 => &[&[], &[Case, Declension, Gender, Number]],
        Base::Pos(p) => match p {
            Sub | Eig | ArtInd | ArtDef => &[CGN],
            Ver | VerAux | VerMod => &[&[Person, Number, Mood]],
            VerImp | VerAuxImp | VerModImp => &[&[Number]],
            Adj => &[CGN, &[Case, Gender, Number, Degree]],
            AdjAdv => &[&[], &[Degree]],
            ProDemAtt | ProDemPro | ProRelAtt | ProRelPro | ProPosAtt | ProPosPro | ProInrAtt
            | ProInrPro => &[CGN],
            ProIndAtt | ProIndPro => &[&[], CGN],
            ProPer => &[&[Person, Case, Number], &[Person, Case, Gender, Number]],
            ProRef => &[&[Person, Case, Number]],
            Prp => &[&[Case]],
            _ => &[&[]],
        },
    }
}

fn dimension_allowed(base: Base, dim: Dimension) -> bool {
    frames(base).iter().any(|frame| frame.contains(&dim))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Sub,
    Eig,
    Ver,
    Art,
    Adj,
    Pa1,
    Pro,
    Adv,
    Kon,
    Fixed(PosCategory),
}

/// Parses a tag string of the given set.
///
/// Besides the canonical order the parser accepts any permutation of the
/// tokens after the first one, and pronoun tags written without the leading
/// `PRO` (`PER NOM SIN 1PE`, `POS AKK SIN FEM ATT`).
pub fn parse_tag(s: &str, kind: TagSetKind) -> Result<Tag, TagError> {
    if s.is_empty() {
        return Err(TagError::Empty);
    }
    let tokens: Vec<&str> = s.split(' ').collect();
    if tokens.iter().any(|t| t.is_empty()) {
        return Err(TagError::Malformed(s.to_owned()));
    }
    let unknown = |token: &str| TagError::UnknownToken {
        token: token.to_owned(),
        tag: s.to_owned(),
    };

    let mut pro_subclass: Option<&str> = None;
    let family = match tokens[0] {
        "SUB" => Family::Sub,
        "EIG" => Family::Eig,
        "VER" => Family::Ver,
        "ART" => Family::Art,
        "ADJ" => Family::Adj,
        "PA1" => Family::Pa1,
        "PRO" => Family::Pro,
        "ADV" => Family::Adv,
        "KON" => Family::Kon,
        "DEM" | "REL" | "POS" | "IND" | "INR" | "PER" | "REF" => {
            pro_subclass = Some(tokens[0]);
            Family::Pro
        }
        other => match PosCategory::ALL.iter().find(|p| p.code() == other) {
            Some(&p) => Family::Fixed(p),
            None => return Err(unknown(other)),
        },
    };

    // Category slots filled from the tail.
    let mut verb_kind: Option<&str> = None;
    let mut verb_form: Option<&str> = None;
    let mut usage: Option<&str> = None;
    let mut subclass: Option<&str> = pro_subclass;
    let mut features = Features::default();

    let set_slot = |slot: &mut Option<&str>, value: &'static str, name: &'static str| {
        if slot.is_some() {
            Err(TagError::DuplicateDimension {
                dimension: name,
                tag: s.to_owned(),
            })
        } else {
            *slot = Some(value);
            Ok(())
        }
    };

    for &token in &tokens[1..] {
        let category_token: Option<(&'static str, u8)> = match (family, token) {
            (Family::Ver, "AUX") => Some(("AUX", 0)),
            (Family::Ver, "MOD") => Some(("MOD", 0)),
            (Family::Ver, "INF") => Some(("INF", 1)),
            (Family::Ver, "PA2") => Some(("PA2", 1)),
            (Family::Ver, "EIZ") => Some(("EIZ", 1)),
            (Family::Ver, "IMP") => Some(("IMP", 1)),
            (Family::Art, "DEF") => Some(("DEF", 2)),
            (Family::Art, "IND") => Some(("IND", 2)),
            (Family::Adj, "ADV") => Some(("ADV", 3)),
            (Family::Adv, "PRO") => Some(("PRO", 3)),
            (Family::Pro, "ATT") => Some(("ATT", 3)),
            (Family::Pro, "PRO") => Some(("PRO", 3)),
            (Family::Pro, "DEM") => Some(("DEM", 2)),
            (Family::Pro, "REL") => Some(("REL", 2)),
            (Family::Pro, "POS") => Some(("POS", 2)),
            (Family::Pro, "IND") => Some(("IND", 2)),
            (Family::Pro, "INR") => Some(("INR", 2)),
            (Family::Pro, "PER") => Some(("PER", 2)),
            (Family::Pro, "REF") => Some(("REF", 2)),
            (Family::Kon, "UNT") => Some(("UNT", 2)),
            (Family::Kon, "NEB") => Some(("NEB", 2)),
            (Family::Kon, "INF") => Some(("INF", 2)),
            (Family::Kon, "VGL") => Some(("VGL", 2)),
            (Family::Kon, "PRI") => Some(("PRI", 2)),
            _ => None,
        };
        if let Some((value, slot)) = category_token {
            match slot {
                0 => set_slot(&mut verb_kind, value, "verb kind")?,
                1 => set_slot(&mut verb_form, value, "verb form")?,
                2 => set_slot(&mut subclass, value, "subclass")?,
                _ => set_slot(&mut usage, value, "usage")?,
            }
            continue;
        }
        let feature = match (family, token) {
            (Family::Adj, "POS") => Some(Feature::Degree(Degree::Positive)),
            (Family::Pa1, "DEF") => Some(Feature::Declension(Declension::Weak)),
            (Family::Pa1, "IND") => Some(Feature::Declension(Declension::Mixed)),
            _ => Feature::from_plain_token(token),
        };
        let feature = feature.ok_or_else(|| unknown(token))?;
        if !features.insert(feature) {
            return Err(TagError::DuplicateDimension {
                dimension: feature.dimension().name(),
                tag: s.to_owned(),
            });
        }
    }

    // "PER PRO" is the personal pronoun written back to front.
    if pro_subclass.is_some() && matches!(subclass, Some("PER" | "REF")) && usage == Some("PRO") {
        usage = None;
    }

    let incomplete = || TagError::Incomplete(s.to_owned());
    use PosCategory::*;
    let base = match family {
        Family::Sub => Base::Pos(Sub),
        Family::Eig => Base::Pos(Eig),
        Family::Pa1 => Base::Pa1,
        Family::Fixed(p) => Base::Pos(p),
        Family::Ver => Base::Pos(match (verb_kind, verb_form) {
            (None, None) => Ver,
            (None, Some("INF")) => VerInf,
            (None, Some("PA2")) => VerPa2,
            (None, Some("EIZ")) => VerEiz,
            (None, Some("IMP")) => VerImp,
            (Some("AUX"), None) => VerAux,
            (Some("AUX"), Some("INF")) => VerAuxInf,
            (Some("AUX"), Some("PA2")) => VerAuxPa2,
            (Some("AUX"), Some("IMP")) => VerAuxImp,
            (Some("MOD"), None) => VerMod,
            (Some("MOD"), Some("INF")) => VerModInf,
            (Some("MOD"), Some("PA2")) => VerModPa2,
            (Some("MOD"), Some("IMP")) => VerModImp,
            _ => return Err(unknown("EIZ")),
        }),
        Family::Art => Base::Pos(match subclass {
            Some("DEF") => ArtDef,
            Some("IND") => ArtInd,
            _ => return Err(incomplete()),
        }),
        Family::Adj => Base::Pos(if usage.is_some() { AdjAdv } else { Adj }),
        Family::Adv => Base::Pos(if usage.is_some() { AdvPro } else { Adv }),
        Family::Kon => Base::Pos(match subclass {
            Some("UNT") => KonUnt,
            Some("NEB") => KonNeb,
            Some("INF") => KonInf,
            Some("VGL") => KonVgl,
            Some("PRI") => KonPri,
            _ => return Err(incomplete()),
        }),
        Family::Pro => Base::Pos(match (subclass, usage) {
            (Some("PER"), None) => ProPer,
            (Some("REF"), None) => ProRef,
            (Some("DEM"), Some("ATT")) => ProDemAtt,
            (Some("DEM"), Some("PRO")) => ProDemPro,
            (Some("REL"), Some("ATT")) => ProRelAtt,
            (Some("REL"), Some("PRO")) => ProRelPro,
            (Some("POS"), Some("ATT")) => ProPosAtt,
            (Some("POS"), Some("PRO")) => ProPosPro,
            (Some("IND"), Some("ATT")) => ProIndAtt,
            (Some("IND"), Some("PRO")) => ProIndPro,
            (Some("INR"), Some("ATT")) => ProInrAtt,
            (Some("INR"), Some("PRO")) => ProInrPro,
            (Some("PER" | "REF"), Some(u)) => return Err(unknown(u)),
            _ => return Err(incomplete()),
        }),
    };

    if kind == TagSetKind::Small {
        if !features.is_empty() {
            return Err(TagError::FeaturesInSmallTag(s.to_owned()));
        }
        if base == Base::Pa1 {
            return Err(unknown("PA1"));
        }
        return Ok(Tag::small(base.small()));
    }

    for feature in features.iter() {
        if !dimension_allowed(base, feature.dimension()) {
            return Err(TagError::IllegalFeature {
                feature: feature.token(),
                base: base.to_string(),
                tag: s.to_owned(),
            });
        }
    }
    Ok(Tag::large(base, features))
}

/// Canonical string form of a tag.
pub fn format_tag(tag: &Tag) -> String {
    let (head, usage) = match tag.base {
        Base::Pos(p) => p.head_and_usage(),
        Base::Pa1 => ("PA1", None),
    };
    let mut out = String::from(head);
    for feature in tag.features.iter() {
        out.push(' ');
        out.push_str(feature.token());
    }
    if let Some(usage) = usage {
        out.push(' ');
        out.push_str(usage);
    }
    out
}

/// Maps a large tag onto the small set by dropping all features.
pub fn map_large_to_small(tag: &Tag) -> Tag {
    Tag::small(tag.base.small())
}

/// An enumerated tag set.
#[derive(Debug, Clone)]
pub struct TagSet {
    kind: TagSetKind,
    members: Vec<Tag>,
    index: HashSet<Tag>,
}

impl TagSet {
    pub fn new(kind: TagSetKind) -> TagSet {
        let mut members = match kind {
            TagSetKind::Small => PosCategory::ALL.iter().map(|&p| Tag::small(p)).collect(),
            TagSetKind::Large => enumerate_large(),
        };
        members.sort();
        let index = members.iter().copied().collect();
        TagSet {
            kind,
            members,
            index,
        }
    }

    pub fn kind(&self) -> TagSetKind {
        self.kind
    }

    /// Members sorted canonically.
    pub fn members(&self) -> &[Tag] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, tag: &Tag) -> bool {
        self.index.contains(tag)
    }
}

fn values_of(dim: Dimension) -> Vec<Feature> {
    match dim {
        Dimension::Person => Person::ALL.iter().map(|&v| Feature::Person(v)).collect(),
        Dimension::Case => Case::ALL.iter().map(|&v| Feature::Case(v)).collect(),
        Dimension::Declension => Declension::ALL
            .iter()
            .map(|&v| Feature::Declension(v))
            .collect(),
        Dimension::Gender => Gender::ALL.iter().map(|&v| Feature::Gender(v)).collect(),
        Dimension::Number => Number::ALL.iter().map(|&v| Feature::Number(v)).collect(),
        Dimension::Mood => Mood::ALL.iter().map(|&v| Feature::Mood(v)).collect(),
        Dimension::Degree => Degree::ALL.iter().map(|&v| Feature::Degree(v)).collect(),
    }
}

fn enumerate_large() -> Vec<Tag> {
    let bases = PosCategory::ALL
        .iter()
        .map(|&p| Base::Pos(p))
        .chain(std::iter::once(Base::Pa1));
    let mut out = Vec::new();
    for base in bases {
        for frame in frames(base) {
            let mut partial = vec![Features::default()];
            for &dim in frame.iter() {
                let mut next = Vec::new();
                for f in &partial {
                    for v in values_of(dim) {
                        let mut g = *f;
                        g.insert(v);
                        next.push(g);
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|f| Tag::large(base, f)));
        }
    }
    out
}

/// Whether `tag` is a member of the enumerated large set, i.e. its
/// dimensions match one legal frame exactly.
pub fn is_complete_large(tag: &Tag) -> bool {
    let dims = tag.features.dimensions();
    frames(tag.base)
        .iter()
        .any(|frame| frame.len() == dims.len() && frame.iter().all(|d| dims.contains(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn large(s: &str) -> Tag {
        parse_tag(s, TagSetKind::Large).unwrap()
    }

    #[test]
    fn small_set_has_51_codes() {
        assert_eq!(PosCategory::ALL.len(), 51);
        let codes: HashSet<_> = PosCategory::ALL.iter().map(|p| p.code()).collect();
        assert_eq!(codes.len(), 51);
        assert_eq!(TagSet::new(TagSetKind::Small).len(), 51);
    }

    #[test]
    fn parses_small_sub() {
        assert_eq!(
            parse_tag("SUB", TagSetKind::Small).unwrap(),
            Tag::small(PosCategory::Sub)
        );
    }

    #[test]
    fn parses_finite_verb_tag() {
        let tag = large("VER 3PE SIN");
        assert_eq!(tag.base, Base::Pos(PosCategory::Ver));
        assert_eq!(tag.features.person, Some(Person::Third));
        assert_eq!(tag.features.number, Some(Number::Sin));
        assert_eq!(tag.features.mood, None);
    }

    #[test]
    fn rejects_unknown_token() {
        assert!(matches!(
            parse_tag("SUB XYZ", TagSetKind::Large),
            Err(TagError::UnknownToken { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_dimension() {
        assert!(matches!(
            parse_tag("SUB NOM AKK SIN", TagSetKind::Large),
            Err(TagError::DuplicateDimension { .. })
        ));
    }

    #[test]
    fn rejects_illegal_feature() {
        assert!(matches!(
            parse_tag("PRP SIN", TagSetKind::Large),
            Err(TagError::IllegalFeature { .. })
        ));
        assert!(matches!(
            parse_tag("SUB 1PE", TagSetKind::Large),
            Err(TagError::IllegalFeature { .. })
        ));
    }

    #[test]
    fn rejects_features_in_small_tags() {
        assert!(matches!(
            parse_tag("SUB NOM", TagSetKind::Small),
            Err(TagError::FeaturesInSmallTag(_))
        ));
        assert!(parse_tag("PA1", TagSetKind::Small).is_err());
    }

    #[test]
    fn rejects_malformed_spacing() {
        assert!(parse_tag("", TagSetKind::Small).is_err());
        assert!(parse_tag("SUB  NOM", TagSetKind::Large).is_err());
        assert!(parse_tag(" SUB", TagSetKind::Large).is_err());
        assert!(parse_tag("SUB ", TagSetKind::Large).is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(large("ART DEF").to_string(), "ART DEF");
        assert_eq!(large("SZE").to_string(), "SZE");
        assert_eq!(large("SUB AKK NEU PLU").to_string(), "SUB AKK NEU PLU");
        assert_eq!(large("SUB NOM SIN FEM").to_string(), "SUB NOM FEM SIN");
        assert_eq!(large("ART DEF NOM SIN FEM").to_string(), "ART DEF NOM FEM SIN");
    }

    #[test]
    fn accepts_figure_token_order_drift() {
        assert_eq!(large("PER NOM SIN 1PE").to_string(), "PRO PER 1PE NOM SIN");
        assert_eq!(
            large("POS AKK SIN FEM ATT").to_string(),
            "PRO POS AKK FEM SIN ATT"
        );
        assert_eq!(
            large("DEM NOM SIN NEU PRO").to_string(),
            "PRO DEM NOM NEU SIN PRO"
        );
        assert_eq!(
            parse_tag("PER PRO", TagSetKind::Small).unwrap(),
            Tag::small(PosCategory::ProPer)
        );
        assert_eq!(
            parse_tag("POS ATT", TagSetKind::Small).unwrap(),
            Tag::small(PosCategory::ProPosAtt)
        );
    }

    #[test]
    fn present_participle_maps_to_adj() {
        let tag = large("PA1 SOL NEU AKK PLU");
        assert_eq!(tag.base, Base::Pa1);
        assert_eq!(tag.features.declension, Some(Declension::Strong));
        assert_eq!(tag.to_string(), "PA1 AKK SOL NEU PLU");
        assert_eq!(map_large_to_small(&tag), Tag::small(PosCategory::Adj));
    }

    #[test]
    fn maps_figure_rows_down() {
        let cases = [
            ("SUB NOM FEM SIN", "SUB"),
            ("ART DEF AKK SIN NEU", "ART DEF"),
            ("VER 1PE SIN", "VER"),
            ("VER AUX INF", "VER AUX INF"),
            ("PRO POS AKK SIN FEM ATT", "PRO POS ATT"),
            ("ADJ KOM ADV", "ADJ ADV"),
            ("PRP DAT", "PRP"),
        ];
        for (l, s) in cases {
            assert_eq!(map_large_to_small(&large(l)).to_string(), s, "{l}");
        }
    }

    #[test]
    fn positive_degree_is_only_a_feature_for_adjectives() {
        assert_eq!(
            large("ADJ POS NOM SIN MAS").features.degree,
            Some(Degree::Positive)
        );
        assert_eq!(large("PRO POS ATT").base, Base::Pos(PosCategory::ProPosAtt));
    }

    #[test]
    fn large_set_round_trips_and_maps() {
        let set = TagSet::new(TagSetKind::Large);
        let small = TagSet::new(TagSetKind::Small);
        assert!(set.len() > 500, "{}", set.len());
        for tag in set.members() {
            let s = format_tag(tag);
            assert_eq!(parse_tag(&s, TagSetKind::Large).unwrap(), *tag, "{s}");
            assert!(is_complete_large(tag));
            assert!(small.contains(&map_large_to_small(tag)));
        }
    }

    #[test]
    fn every_small_category_is_reachable_from_large() {
        let reached: HashSet<_> = TagSet::new(TagSetKind::Large)
            .members()
            .iter()
            .map(map_large_to_small)
            .collect();
        assert_eq!(reached.len(), 51);
    }
}
