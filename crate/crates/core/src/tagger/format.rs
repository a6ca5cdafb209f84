//! Inline rendering (`<TrigRequire should>`) and standoff TSV.

use std::collections::BTreeMap;
use std::io::BufRead;

use thiserror::Error;

use crate::modality::ModalityTag;

use super::TaggedSentence;

/// A word with its tags, as carried by the inline format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InlineToken {
    pub word: String,
    pub tags: Vec<ModalityTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inline text, byte {offset}: {message}")]
pub struct InlineError {
    pub offset: usize,
    pub message: String,
}

const FINAL_PUNCT: &[&str] = &[".", "?", "!"];

/// Whether token `i` is written directly after the previous one: untagged
/// commas, and untagged sentence-final punctuation.
fn attaches(s: &TaggedSentence, i: usize) -> bool {
    let t = &s.tokens[i];
    i > 0
        && t.tags.is_empty()
        && ((t.pos == "," && t.word == ",")
            || (i + 1 == s.tokens.len() && t.pos == "." && FINAL_PUNCT.contains(&t.word.as_str())))
}

/// Render a sentence: tagged tokens as `<Tag1 Tag2 word>`, others bare,
/// separated by single spaces. Commas and the final stop attach to the
/// preceding token.
pub fn render_inline(s: &TaggedSentence) -> String {
    let mut out = String::new();
    for (i, t) in s.tokens.iter().enumerate() {
        if i > 0 && !attaches(s, i) {
            out.push(' ');
        }
        if t.tags.is_empty() {
            out.push_str(&t.word);
        } else {
            out.push('<');
            for tag in &t.tags {
                out.push_str(&tag.to_string());
                out.push(' ');
            }
            out.push_str(&t.word);
            out.push('>');
        }
    }
    out
}

/// Inverse of [`render_inline`], up to POS labels, which the format does
/// not carry.
pub fn parse_inline(text: &str) -> Result<Vec<InlineToken>, InlineError> {
    let mut out = Vec::new();
    let mut pos = 0;
    let bytes = text.as_bytes();
    let err = |offset: usize, message: &str| InlineError {
        offset,
        message: message.to_string(),
    };
    while pos < text.len() {
        if bytes[pos] == b' ' {
            pos += 1;
            continue;
        }
        let start = pos;
        let end = text[pos..].find(' ').map_or(text.len(), |k| pos + k);
        if bytes[pos] == b'<' {
            let close = text[pos..]
                .find('>')
                .map(|k| pos + k)
                .ok_or_else(|| err(pos, "unclosed `<`"))?;
            let inner: Vec<&str> = text[pos + 1..close].split(' ').collect();
            if inner.len() < 2 || inner.iter().any(|p| p.is_empty()) {
                return Err(err(pos, "expected `<Tag ... word>`"));
            }
            let (word, names) = inner.split_last().expect("non-empty");
            let tags = names
                .iter()
                .map(|n| n.parse::<ModalityTag>().map_err(|_| err(pos, &format!("unknown tag `{n}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(InlineToken {
                word: word.to_string(),
                tags,
            });
            let suffix_end = text[close + 1..].find(' ').map_or(text.len(), |k| close + 1 + k);
            let suffix = &text[close + 1..suffix_end];
            push_attached(&mut out, suffix, suffix_end == text.len())
                .map_err(|m| err(close + 1, &m))?;
            pos = suffix_end;
        } else {
            let piece = &text[start..end];
            let last = end == text.len();
            let mut word = piece;
            let mut tail = 0;
            if last && word.len() > 1 && FINAL_PUNCT.iter().any(|p| word.ends_with(p)) {
                word = &word[..word.len() - 1];
                tail = 1;
            }
            let commas = word.len() - word.trim_end_matches(',').len();
            let commas = commas.min(word.len() - 1);
            word = &word[..word.len() - commas];
            out.push(InlineToken {
                word: word.to_string(),
                tags: Vec::new(),
            });
            push_attached(&mut out, &piece[word.len()..piece.len()], last && tail == 1)
                .map_err(|m| err(start + word.len(), &m))?;
            pos = end;
        }
    }
    Ok(out)
}

/// Split attached punctuation into tokens: commas, then an optional final stop.
fn push_attached(out: &mut Vec<InlineToken>, suffix: &str, at_end: bool) -> Result<(), String> {
    let mut chars = suffix.char_indices().peekable();
    while let Some((k, c)) = chars.next() {
        let is_last = chars.peek().is_none();
        let ok = c == ',' || (is_last && at_end && FINAL_PUNCT.contains(&&suffix[k..k + 1]));
        if !ok {
            return Err(format!("unexpected `{c}` after token"));
        }
        out.push(InlineToken {
            word: c.to_string(),
            tags: Vec::new(),
        });
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum StandoffError {
    #[error("standoff line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("reading standoff: {0}")]
    Io(#[from] std::io::Error),
}

/// Tags of one sentence read from a standoff file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandoffSentence {
    pub id: usize,
    /// `(token index, tag, source)` rows in file order.
    pub tags: Vec<(usize, ModalityTag, String)>,
}

/// Standoff rows for one sentence: `id \t token \t tag \t source`. A
/// sentence without tags is written as the marker row `id \t - \t - \t -`
/// so that it still counts in agreement.
pub fn write_standoff(sentence_id: usize, rows: &[(usize, ModalityTag, String)]) -> String {
    if rows.is_empty() {
        return format!("{sentence_id}\t-\t-\t-\n");
    }
    let mut out = String::new();
    for (token, tag, source) in rows {
        let source = if source.is_empty() { "-" } else { source };
        out.push_str(&format!("{sentence_id}\t{token}\t{tag}\t{source}\n"));
    }
    out
}

/// Read a standoff file, grouping rows by sentence id (ascending).
pub fn read_standoff<R: BufRead>(source: R) -> Result<Vec<StandoffSentence>, StandoffError> {
    let mut by_id: BTreeMap<usize, Vec<(usize, ModalityTag, String)>> = BTreeMap::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| StandoffError::Malformed { line: i + 1, message };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let id: usize = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad sentence id `{}`", fields[0])))?;
        let rows = by_id.entry(id).or_default();
        if fields[1] == "-" && fields[2] == "-" {
            continue;
        }
        let token: usize = fields[1]
            .parse()
            .map_err(|_| bad(format!("bad token index `{}`", fields[1])))?;
        let tag: ModalityTag = fields[2]
            .parse()
            .map_err(|_| bad(format!("unknown tag `{}`", fields[2])))?;
        rows.push((token, tag, fields[3].to_string()));
    }
    Ok(by_id
        .into_iter()
        .map(|(id, tags)| StandoffSentence { id, tags })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modality::MenuModality;
    use crate::tagger::TaggedToken;

    fn sentence(rows: &[(&str, &str, &[ModalityTag])]) -> TaggedSentence {
        TaggedSentence {
            tokens: rows
                .iter()
                .map(|(w, p, t)| TaggedToken {
                    word: w.to_string(),
                    pos: p.to_string(),
                    tags: t.to_vec(),
                })
                .collect(),
        }
    }

    #[test]
    fn untagged_renders_as_text() {
        let s = sentence(&[("He", "PRP", &[]), ("left", "VBD", &[]), (",", ",", &[]), ("then", "RB", &[]), (".", ".", &[])]);
        assert_eq!(render_inline(&s), "He left, then.");
        assert_eq!(parse_inline("He left, then.").unwrap(), s.inline_tokens());
    }

    #[test]
    fn tagged_round_trip() {
        let req = ModalityTag::trigger(MenuModality::Require);
        let na = ModalityTag::target(MenuModality::NotAble);
        let s = sentence(&[("we", "PRP", &[]), ("should", "MD", &[req]), ("go", "VB", &[na, req]), (",", ",", &[]), ("!", ".", &[])]);
        let text = render_inline(&s);
        assert_eq!(text, "we <TrigRequire should> <TargNOTAble TrigRequire go>,!");
        assert_eq!(parse_inline(&text).unwrap(), s.inline_tokens());
    }

    #[test]
    fn leading_and_repeated_commas() {
        let s = sentence(&[(",", ",", &[]), ("a", "DT", &[]), (",", ",", &[]), (",", ",", &[]), ("b", "NN", &[])]);
        let text = render_inline(&s);
        assert_eq!(text, ", a,, b");
        assert_eq!(parse_inline(&text).unwrap(), s.inline_tokens());
    }

    #[test]
    fn rejects_unknown_tags() {
        assert!(parse_inline("<TrigWhatever go>").is_err());
        assert!(parse_inline("<TrigRequire go").is_err());
    }

    #[test]
    fn standoff_round_trip_with_markers() {
        let tag = ModalityTag::trigger(MenuModality::Able);
        let mut text = write_standoff(1, &[(3, tag, "can/MD:Able".into())]);
        text.push_str(&write_standoff(2, &[]));
        assert_eq!(text, "1\t3\tTrigAble\tcan/MD:Able\n2\t-\t-\t-\n");
        let back = read_standoff(text.as_bytes()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].tags, vec![(3, tag, "can/MD:Able".to_string())]);
        assert!(back[1].tags.is_empty());
        assert!(read_standoff("1\t2\tTrigNope\tx\n".as_bytes()).is_err());
    }
}
