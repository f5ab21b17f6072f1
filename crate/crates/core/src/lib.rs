//! Build a domain-specific text corpus from Wikipedia starting from one
//! requirements document.
//!
//! The pipeline mines noun-phrase keywords from the document ([`preprocess`],
//! [`keywords`]), drops phrases that are ordinary English according to WordNet
//! ([`lexicon`]), looks the keywords up on Wikipedia and widens the hit list
//! through the category graph ([`crawler`]), stores the articles ([`corpus`]) and
//! scores how close the corpus is to unseen documents of the same domain
//! ([`relatedness`]).
//!
//! Numeric code is generic over [`Real`]; the aliases below fix it to `f64`,
//! which is what the command-line tool uses.

pub mod corpus;
pub mod crawler;
pub mod keywords;
pub mod lexicon;
pub mod preprocess;
pub mod relatedness;
pub mod scalar;

pub use lexicon::{LexiconError, WordnetLexicon, WordnetPos};
pub use preprocess::{NounPhrase, Pipeline, Pos, PreprocessedDoc, Sentence, Token};
pub use scalar::Real;

pub type Keyword = keywords::Keyword<f64>;
pub type EmbeddingTable = relatedness::EmbeddingTable<f64>;
pub type EmbeddingTableF32 = relatedness::EmbeddingTable<f32>;
pub type RelatednessReport = relatedness::RelatednessReport<f64>;
