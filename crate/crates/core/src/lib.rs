//! Rule-based modality tagging.
//!
//! A modality lexicon drives two taggers: one over POS-tagged token strings
//! and one over constituency trees via compiled tree patterns. An evaluation
//! module measures how well the two agree and how precise either is against
//! gold annotations.
//!
//! ```
//! use modtag::{lexicon::Lexicon, tagger, token::parse_tagged_line};
//!
//! let lexicon = Lexicon::seed().expand();
//! let tokens = parse_tagged_line("We/PRP should/MD leave/VB ./.").unwrap();
//! let tagged = tagger::tag_string(&tokens, &lexicon);
//! assert_eq!(
//!     tagger::render_inline(&tagged.sentence),
//!     "We <TrigRequire should> <TargRequire leave>."
//! );
//! ```

pub mod eval;
pub mod lexicon;
pub mod modality;
pub mod pattern;
pub mod rules;
pub mod tagger;
pub mod token;
pub mod tree;

pub use lexicon::{Lexicon, LexiconEntry};
pub use modality::{MenuModality, ModalityLabel, ModalityTag, Role};
pub use pattern::{Rule, TreePattern};
pub use tagger::{tag_string, tag_tree, TaggedSentence};
pub use tree::ParseTree;
