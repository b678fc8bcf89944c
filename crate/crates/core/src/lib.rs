pub mod analysis;
pub mod corpus;
pub mod eval;
pub mod inflection;
pub mod lexicon;
pub mod seed;
pub mod tagger;
pub mod tagset;
pub mod tokenize;
