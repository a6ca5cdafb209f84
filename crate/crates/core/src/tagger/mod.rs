//! The two modality taggers and their output formats.
//!
//! [`tag_string`] works on POS-tagged tokens: every lexicon match tags its
//! head as a trigger and the next non-auxiliary verb in the same clause as
//! the target. [`tag_tree`] applies compiled tree rules to a flattened parse.
//! Both leave the words untouched and only add tags.

mod format;
mod string;
mod structure;

pub use format::{
    parse_inline, read_standoff, render_inline, write_standoff, InlineError, InlineToken, StandoffError,
    StandoffSentence,
};
pub use string::{compose_negation, tag_string, target_for, AuxiliaryRegistry, StringTagging, TriggerRecord};
pub use structure::{tag_tree, tag_tree_traced, TracedTree};

use crate::modality::ModalityTag;
use crate::token::Token;

/// A token with the tags assigned to it, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub word: String,
    pub pos: String,
    pub tags: Vec<ModalityTag>,
}

/// A sentence of tagged tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaggedSentence {
    pub tokens: Vec<TaggedToken>,
}

impl TaggedSentence {
    pub fn untagged(tokens: &[Token]) -> TaggedSentence {
        TaggedSentence {
            tokens: tokens
                .iter()
                .map(|t| TaggedToken {
                    word: t.word.clone(),
                    pos: t.pos.clone(),
                    tags: Vec::new(),
                })
                .collect(),
        }
    }

    /// The input tokens, tags removed.
    pub fn strip(&self) -> Vec<Token> {
        self.tokens.iter().map(|t| Token::new(t.word.clone(), t.pos.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Words and tags only, the part of a sentence the inline format carries.
    pub fn inline_tokens(&self) -> Vec<InlineToken> {
        self.tokens
            .iter()
            .map(|t| InlineToken {
                word: t.word.clone(),
                tags: t.tags.clone(),
            })
            .collect()
    }

    /// `(token index, tag)` for every tag, in token order.
    pub fn tag_positions(&self) -> Vec<(usize, ModalityTag)> {
        self.tokens
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.tags.iter().map(move |&g| (i, g)))
            .collect()
    }
}
