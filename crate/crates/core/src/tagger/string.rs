use std::ops::Range;

use crate::lexicon::Lexicon;
use crate::modality::{ModalityLabel, ModalityTag, Role};
use crate::token::Token;

use super::TaggedSentence;

/// Tokens skipped when looking for a target verb.
///
/// Membership depends only on the token: every `MD`, every `TO`, and forms
/// of be, have and do when tagged as verbs.
#[derive(Debug, Clone, Copy, Default)]
pub struct AuxiliaryRegistry;

impl AuxiliaryRegistry {
    /// Lowercased auxiliary verb forms.
    pub const WORDS: &'static [&'static str] = &[
        "be", "am", "is", "are", "was", "were", "been", "being", "have", "has", "had", "having", "do", "does", "did",
        "to", "'s", "'re", "'m", "'ve", "'d",
    ];

    pub fn contains(word: &str, pos: &str) -> bool {
        match pos {
            "MD" | "TO" => true,
            p if is_verb_pos(p) => {
                let w = word.to_lowercase();
                Self::WORDS.contains(&w.as_str())
            }
            _ => false,
        }
    }
}

pub(crate) fn is_verb_pos(pos: &str) -> bool {
    matches!(pos, "VB" | "VBZ" | "VBD" | "VBG" | "VBN" | "VBP")
}

const SUBORDINATORS: &[&str] = &[
    "that", "because", "if", "whether", "although", "though", "while", "unless", "whereas",
];

/// Whether a token starts a new clause for target search.
fn is_clause_boundary(tok: &Token) -> bool {
    match tok.pos.as_str() {
        "CC" | "WDT" | "WP" | "WP$" | "WRB" | "," | ":" | ";" | "." => true,
        "IN" => SUBORDINATORS.contains(&tok.word.to_lowercase().as_str()),
        _ => false,
    }
}

/// Target of a trigger whose span ends before `from`.
///
/// The first non-auxiliary verb from `from` up to the end of the clause; if
/// there is none, the nearest verb of any kind in that range. Tokens in
/// `excluded` (negation triggers) are never targets.
pub fn target_for(tokens: &[Token], from: usize, excluded: &[usize]) -> Option<usize> {
    let end = (from..tokens.len())
        .find(|&i| is_clause_boundary(&tokens[i]))
        .unwrap_or(tokens.len());
    let verbs = (from..end).filter(|&i| is_verb_pos(&tokens[i].pos) && !excluded.contains(&i));
    let mut fallback = None;
    for i in verbs {
        if !AuxiliaryRegistry::contains(&tokens[i].word, &tokens[i].pos) {
            return Some(i);
        }
        fallback.get_or_insert(i);
    }
    fallback
}

/// One lexicon match and the target chosen for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerRecord {
    /// Index of the entry in the lexicon.
    pub entry: usize,
    pub entry_id: String,
    pub span: Range<usize>,
    pub head: usize,
    pub modality: ModalityLabel,
    pub target: Option<usize>,
}

/// Output of the string tagger: the tagged sentence, the trigger records
/// that justify its tags, and the source of every tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringTagging {
    pub sentence: TaggedSentence,
    pub triggers: Vec<TriggerRecord>,
    /// Per token, the entry id behind each tag (parallel to the tag list).
    pub sources: Vec<Vec<String>>,
}

impl StringTagging {
    /// Triggers for which no target was found.
    pub fn targetless(&self) -> impl Iterator<Item = &TriggerRecord> {
        self.triggers.iter().filter(|r| r.target.is_none())
    }

    /// `(token index, tag, source)` for every tag.
    pub fn tag_rows(&self) -> Vec<(usize, ModalityTag, String)> {
        let mut out = Vec::new();
        for (i, tok) in self.sentence.tokens.iter().enumerate() {
            for (tag, src) in tok.tags.iter().zip(&self.sources[i]) {
                out.push((i, *tag, src.clone()));
            }
        }
        out
    }

    fn add(&mut self, index: usize, tag: ModalityTag, source: &str) {
        let tags = &mut self.sentence.tokens[index].tags;
        if !tags.contains(&tag) {
            tags.push(tag);
            self.sources[index].push(source.to_string());
        }
    }

    fn remove(&mut self, index: usize, tag: ModalityTag) {
        let tags = &mut self.sentence.tokens[index].tags;
        if let Some(k) = tags.iter().position(|t| *t == tag) {
            tags.remove(k);
            self.sources[index].remove(k);
        }
    }

    fn replace(&mut self, index: usize, old: ModalityTag, new: ModalityTag) {
        let tags = &mut self.sentence.tokens[index].tags;
        let Some(k) = tags.iter().position(|t| *t == old) else {
            return;
        };
        if tags.contains(&new) {
            tags.remove(k);
            self.sources[index].remove(k);
        } else {
            tags[k] = new;
        }
    }
}

/// Tag a POS-tagged sentence from lexicon matches, then compose negation.
pub fn tag_string(tokens: &[Token], lexicon: &Lexicon) -> StringTagging {
    let matches = lexicon.lookup_triggers(tokens);
    let negation_heads: Vec<usize> = matches
        .iter()
        .filter(|m| lexicon.entries()[m.entry].modality == ModalityLabel::Negation)
        .map(|m| m.head(lexicon))
        .collect();
    let mut out = StringTagging {
        sentence: TaggedSentence::untagged(tokens),
        triggers: Vec::with_capacity(matches.len()),
        sources: vec![Vec::new(); tokens.len()],
    };
    for m in matches {
        let entry = &lexicon.entries()[m.entry];
        let head = m.head(lexicon);
        let target = target_for(tokens, m.span.end, &negation_heads);
        let id = entry.id();
        out.add(head, ModalityTag::trigger(entry.modality), &id);
        if let Some(t) = target {
            out.add(t, ModalityTag::target(entry.modality), &id);
        }
        out.triggers.push(TriggerRecord {
            entry: m.entry,
            entry_id: id,
            span: m.span,
            head,
            modality: entry.modality,
            target,
        });
    }
    compose_negation(out)
}

/// Fold each negation into the modality it scopes under.
///
/// A negation trigger pairs with the nearest modality trigger to its left
/// whose target lies to its right. When that modality has a Not- form the
/// target's tag is rewritten to it and the negation's own target tag on the
/// same token is dropped. Other negations are left as they are.
pub fn compose_negation(mut tagging: StringTagging) -> StringTagging {
    let records = tagging.triggers.clone();
    for neg in records.iter().filter(|r| r.modality == ModalityLabel::Negation) {
        let host = records
            .iter()
            .filter(|r| r.head < neg.head && r.target.is_some_and(|t| t > neg.head))
            .filter_map(|r| r.modality.menu().map(|m| (r, m)))
            .max_by_key(|(r, _)| r.head);
        let Some((host, m)) = host else { continue };
        let Some(not_form) = (!m.is_negated()).then(|| m.not_form()).flatten() else {
            continue;
        };
        let t = host.target.expect("filtered");
        tagging.replace(t, ModalityTag::target(m), ModalityTag::target(not_form));
        if neg.target == Some(t) {
            tagging.remove(t, ModalityTag::new(Role::Target, ModalityLabel::Negation));
        }
    }
    tagging
}
