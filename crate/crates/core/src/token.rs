use std::fmt;

use thiserror::Error;

/// A word with its part-of-speech tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub word: String,
    pub pos: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed token `{token}` at position {index}: expected word/POS")]
pub struct TokenError {
    pub index: usize,
    pub token: String,
}

impl Token {
    pub fn new(word: impl Into<String>, pos: impl Into<String>) -> Self {
        Token {
            word: word.into(),
            pos: pos.into(),
        }
    }

    /// Parse a `word/POS` token, splitting on the last slash.
    pub fn parse_slashed(s: &str) -> Option<Token> {
        let (word, pos) = s.rsplit_once('/')?;
        if word.is_empty() || pos.is_empty() {
            return None;
        }
        Some(Token::new(word, pos))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.word, self.pos)
    }
}

/// Parse a whitespace separated line of `word/POS` tokens.
pub fn parse_tagged_line(line: &str) -> Result<Vec<Token>, TokenError> {
    line.split_whitespace()
        .enumerate()
        .map(|(index, t)| {
            Token::parse_slashed(t).ok_or_else(|| TokenError {
                index,
                token: t.to_string(),
            })
        })
        .collect()
}
