//! The modality lexicon: entries, the `|`-separated file format, inflection
//! expansion and trigger lookup over POS-tagged tokens.
//!
//! A lexicon line has five fields and an optional sixth:
//!
//! ```text
//! # surface | pos | modality | head_index | subcats [| lemma]
//! need | VB | Require | 0 | V3-passive-basic;V3-I3-basic
//! hope for | VB IN | Want | 0 | I-FOR
//! ```
//!
//! Surface words and POS labels are space separated, subcategorization codes
//! `;` separated. The lemma field is only written for entries produced by
//! [`Lexicon::expand`] whose head word differs from its lemma.

mod inflect;

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::ops::Range;

use thiserror::Error;

pub use inflect::{inflect_lemma, tagged_forms};

use crate::modality::ModalityLabel;
use crate::rules::SubcatMap;
use crate::token::Token;

pub const SEED_LEXICON: &str = include_str!("../../data/seed_lexicon.txt");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: malformed {field}: {message}")]
    Malformed {
        line: usize,
        field: &'static str,
        message: String,
    },
    #[error("line {line}: unknown modality `{token}`")]
    UnknownModality { line: usize, token: String },
    #[error("line {line}: unknown subcategorization code `{token}`")]
    UnknownSubcat { line: usize, token: String },
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

/// A subcategorization code, validated against a [`SubcatMap`] on load.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubcatCode(pub String);

impl SubcatCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SubcatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub surface: Vec<String>,
    pub pos: Vec<String>,
    pub modality: ModalityLabel,
    pub head_index: usize,
    pub subcats: Vec<SubcatCode>,
    /// Lowercased lemma of the head word.
    pub lemma: String,
}

impl LexiconEntry {
    pub fn head_word(&self) -> &str {
        &self.surface[self.head_index]
    }

    pub fn head_pos(&self) -> &str {
        &self.pos[self.head_index]
    }

    pub fn len(&self) -> usize {
        self.surface.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surface.is_empty()
    }

    /// Identity used for collapsing duplicate rows.
    fn key(&self) -> (String, String, ModalityLabel) {
        (
            self.surface.join(" ").to_lowercase(),
            self.pos.join(" "),
            self.modality,
        )
    }

    /// Short identifier: `need/VB:Require`, `hope_for/VB_IN:Want`.
    pub fn id(&self) -> String {
        format!(
            "{}/{}:{}",
            self.surface.join("_").to_lowercase(),
            self.pos.join("_"),
            self.modality
        )
    }

    /// Whether the entry matches the tokens starting at `start`.
    pub fn matches_at(&self, tokens: &[Token], start: usize) -> bool {
        start + self.len() <= tokens.len()
            && self
                .surface
                .iter()
                .zip(&self.pos)
                .zip(&tokens[start..])
                .all(|((w, p), t)| t.pos == *p && t.word.eq_ignore_ascii_case(w))
    }
}

impl fmt::Display for LexiconEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subcats: Vec<&str> = self.subcats.iter().map(SubcatCode::as_str).collect();
        write!(
            f,
            "{} | {} | {} | {} | {}",
            self.surface.join(" "),
            self.pos.join(" "),
            self.modality,
            self.head_index,
            subcats.join(";")
        )?;
        if self.lemma != self.head_word().to_lowercase() {
            write!(f, " | {}", self.lemma)?;
        }
        Ok(())
    }
}

/// A trigger span found by [`Lexicon::lookup_triggers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerMatch {
    pub span: Range<usize>,
    pub entry: usize,
}

impl TriggerMatch {
    /// Token index of the entry's head word.
    pub fn head(&self, lexicon: &Lexicon) -> usize {
        self.span.start + lexicon.entries[self.entry].head_index
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    by_key: HashMap<(String, String, ModalityLabel), usize>,
    index: HashMap<(String, String), Vec<usize>>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// The bundled seed lexicon, validated against the bundled subcat map.
    pub fn seed() -> Lexicon {
        Lexicon::parse(SEED_LEXICON.as_bytes(), &SubcatMap::bundled())
            .expect("bundled seed lexicon is valid")
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add an entry, merging subcats into an existing duplicate.
    pub fn insert(&mut self, entry: LexiconEntry) {
        let key = entry.key();
        if let Some(&i) = self.by_key.get(&key) {
            let existing = &mut self.entries[i];
            for code in entry.subcats {
                if !existing.subcats.contains(&code) {
                    existing.subcats.push(code);
                }
            }
            return;
        }
        let i = self.entries.len();
        self.index
            .entry((entry.surface[0].to_lowercase(), entry.pos[0].clone()))
            .or_default()
            .push(i);
        self.by_key.insert(key, i);
        self.entries.push(entry);
    }

    /// Read a lexicon, checking every subcat code against `subcats`.
    pub fn parse<R: BufRead>(source: R, subcats: &SubcatMap) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        for (i, line) in source.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            lex.insert(parse_row(trimmed, i + 1, subcats)?);
        }
        Ok(lex)
    }

    /// Serialize in the same format [`Lexicon::parse`] reads.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Add every inflected form of each verb or noun head.
    ///
    /// Original entries are kept; each new entry follows the entry it was
    /// derived from. Expanding twice adds nothing.
    pub fn expand(&self) -> Lexicon {
        let mut out = Lexicon::new();
        for entry in &self.entries {
            out.insert(entry.clone());
            let head_pos = entry.head_pos();
            if head_pos != "VB" && head_pos != "NN" {
                continue;
            }
            for (form, tag) in tagged_forms(&entry.lemma, head_pos) {
                let mut inflected = entry.clone();
                inflected.surface[entry.head_index] = form;
                inflected.pos[entry.head_index] = tag;
                out.insert(inflected);
            }
        }
        out
    }

    /// Candidate entries whose first word and POS match.
    pub fn candidates(&self, word: &str, pos: &str) -> &[usize] {
        self.index
            .get(&(word.to_lowercase(), pos.to_string()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every span whose words (case-insensitively) and POS labels (exactly)
    /// match an entry. Overlapping matches are all returned, ordered by
    /// start position and then entry order.
    pub fn lookup_triggers(&self, tokens: &[Token]) -> Vec<TriggerMatch> {
        let mut out = Vec::new();
        for (start, tok) in tokens.iter().enumerate() {
            for &i in self.candidates(&tok.word, &tok.pos) {
                let e = &self.entries[i];
                if e.matches_at(tokens, start) {
                    out.push(TriggerMatch {
                        span: start..start + e.len(),
                        entry: i,
                    });
                }
            }
        }
        out
    }
}

fn parse_row(line: &str, lineno: usize, subcats: &SubcatMap) -> Result<LexiconEntry, LexiconError> {
    let malformed = |field: &'static str, message: String| LexiconError::Malformed {
        line: lineno,
        field,
        message,
    };
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() != 5 && fields.len() != 6 {
        return Err(malformed(
            "row",
            format!("expected 5 or 6 `|`-separated fields, found {}", fields.len()),
        ));
    }
    let surface: Vec<String> = fields[0].split_whitespace().map(String::from).collect();
    if surface.is_empty() {
        return Err(malformed("surface", "empty".into()));
    }
    let pos: Vec<String> = fields[1].split_whitespace().map(String::from).collect();
    if pos.len() != surface.len() {
        return Err(malformed(
            "pos",
            format!("{} labels for {} words", pos.len(), surface.len()),
        ));
    }
    let modality: ModalityLabel = fields[2].parse().map_err(|_| LexiconError::UnknownModality {
        line: lineno,
        token: fields[2].to_string(),
    })?;
    let head_index: usize = fields[3]
        .parse()
        .map_err(|_| malformed("head_index", format!("`{}` is not an index", fields[3])))?;
    if head_index >= surface.len() {
        return Err(malformed(
            "head_index",
            format!("{} out of range for {} words", head_index, surface.len()),
        ));
    }
    let mut codes = Vec::new();
    for code in fields[4].split(';').map(str::trim).filter(|c| !c.is_empty()) {
        if !subcats.contains(code) {
            return Err(LexiconError::UnknownSubcat {
                line: lineno,
                token: code.to_string(),
            });
        }
        let code = SubcatCode(code.to_string());
        if !codes.contains(&code) {
            codes.push(code);
        }
    }
    if codes.is_empty() {
        return Err(malformed("subcats", "at least one code is required".into()));
    }
    let lemma = match fields.get(5) {
        Some(l) if !l.is_empty() => l.to_lowercase(),
        Some(_) => return Err(malformed("lemma", "empty".into())),
        None => surface[head_index].to_lowercase(),
    };
    Ok(LexiconEntry {
        surface,
        pos,
        modality,
        head_index,
        subcats: codes,
        lemma,
    })
}
