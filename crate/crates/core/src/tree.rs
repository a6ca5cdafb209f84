//! Constituency trees: S-expression reading and writing, token yield and
//! the VP/NP flattening transform.
//!
//! Preterminals carry a POS label, an ordered list of modality tags and a
//! word, serialized as `(VB TargAble TrigSucceed TargNegation reach)`. A
//! token inside a preterminal is a tag iff it is a registered tag name; the
//! last token is always the word.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::modality::ModalityTag;
use crate::token::Token;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct TreeError {
    pub offset: usize,
    pub message: String,
}

impl TreeError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        TreeError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    Internal {
        label: String,
        children: Vec<ParseTree>,
    },
    Preterminal {
        pos: String,
        tags: Vec<ModalityTag>,
        word: String,
    },
}

impl ParseTree {
    pub fn internal(label: impl Into<String>, children: Vec<ParseTree>) -> Self {
        ParseTree::Internal {
            label: label.into(),
            children,
        }
    }

    pub fn leaf(pos: impl Into<String>, word: impl Into<String>) -> Self {
        ParseTree::Preterminal {
            pos: pos.into(),
            tags: Vec::new(),
            word: word.into(),
        }
    }

    /// Node label; the POS for preterminals.
    pub fn label(&self) -> &str {
        match self {
            ParseTree::Internal { label, .. } => label,
            ParseTree::Preterminal { pos, .. } => pos,
        }
    }

    pub fn children(&self) -> &[ParseTree] {
        match self {
            ParseTree::Internal { children, .. } => children,
            ParseTree::Preterminal { .. } => &[],
        }
    }

    pub fn word(&self) -> Option<&str> {
        match self {
            ParseTree::Preterminal { word, .. } => Some(word),
            ParseTree::Internal { .. } => None,
        }
    }

    pub fn tags(&self) -> &[ModalityTag] {
        match self {
            ParseTree::Preterminal { tags, .. } => tags,
            ParseTree::Internal { .. } => &[],
        }
    }

    pub fn is_preterminal(&self) -> bool {
        matches!(self, ParseTree::Preterminal { .. })
    }

    /// Number of nodes, preterminals included.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(ParseTree::size).sum::<usize>()
    }

    /// Left-to-right preterminal tokens, tags excluded.
    pub fn yield_tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.visit_preterminals(&mut |t| {
            if let ParseTree::Preterminal { pos, word, .. } = t {
                out.push(Token::new(word.clone(), pos.clone()));
            }
        });
        out
    }

    /// Tags of each preterminal in yield order.
    pub fn yield_tags(&self) -> Vec<Vec<ModalityTag>> {
        let mut out = Vec::new();
        self.visit_preterminals(&mut |t| out.push(t.tags().to_vec()));
        out
    }

    fn visit_preterminals<'a>(&'a self, f: &mut impl FnMut(&'a ParseTree)) {
        match self {
            ParseTree::Preterminal { .. } => f(self),
            ParseTree::Internal { children, .. } => {
                for c in children {
                    c.visit_preterminals(f);
                }
            }
        }
    }

    /// Copy of the tree with every tag list emptied.
    pub fn strip_tags(&self) -> ParseTree {
        match self {
            ParseTree::Internal { label, children } => ParseTree::Internal {
                label: label.clone(),
                children: children.iter().map(ParseTree::strip_tags).collect(),
            },
            ParseTree::Preterminal { pos, word, .. } => ParseTree::leaf(pos.clone(), word.clone()),
        }
    }

    /// Visit every node mutably in preorder, passing its preorder index.
    pub fn for_each_preorder_mut(&mut self, f: &mut impl FnMut(usize, &mut ParseTree)) {
        fn go(t: &mut ParseTree, next: &mut usize, f: &mut impl FnMut(usize, &mut ParseTree)) {
            let id = *next;
            *next += 1;
            f(id, t);
            if let ParseTree::Internal { children, .. } = t {
                for c in children {
                    go(c, next, f);
                }
            }
        }
        let mut next = 0;
        go(self, &mut next, f);
    }

    /// Splice out VP nodes under VP or S and NP nodes under PP or NP.
    ///
    /// Children of a spliced node take its place in order. Work is bottom-up,
    /// so one pass reaches the fixpoint.
    pub fn flatten(&self) -> ParseTree {
        match self {
            ParseTree::Preterminal { .. } => self.clone(),
            ParseTree::Internal { label, children } => {
                let parent = category(label);
                let mut flat = Vec::with_capacity(children.len());
                for child in children.iter().map(ParseTree::flatten) {
                    match child {
                        ParseTree::Internal {
                            label: ref cl,
                            ref children,
                        } if spliced_under(parent, category(cl)) => {
                            flat.extend(children.iter().cloned())
                        }
                        other => flat.push(other),
                    }
                }
                ParseTree::Internal {
                    label: label.clone(),
                    children: flat,
                }
            }
        }
    }

    /// Number of VP-under-{VP,S} and NP-under-{PP,NP} configurations.
    pub fn unflattened_count(&self) -> usize {
        let here = self
            .children()
            .iter()
            .filter(|c| !c.is_preterminal() && spliced_under(category(self.label()), category(c.label())))
            .count();
        here + self.children().iter().map(ParseTree::unflattened_count).sum::<usize>()
    }
}

/// Syntactic category of a label, without function tags: `NP-SBJ` is `NP`.
pub fn category(label: &str) -> &str {
    if label.starts_with('-') {
        return label;
    }
    match label.find(['-', '=']) {
        Some(i) => &label[..i],
        None => label,
    }
}

fn spliced_under(parent: &str, child: &str) -> bool {
    matches!((parent, child), ("VP" | "S", "VP") | ("PP" | "NP", "NP"))
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseTree::Preterminal { pos, tags, word } => {
                write!(f, "({pos}")?;
                for t in tags {
                    write!(f, " {t}")?;
                }
                write!(f, " {word})")
            }
            ParseTree::Internal { label, children } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Lexeme<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn lex(text: &str) -> Vec<(usize, Lexeme<'_>)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, Lexeme::Atom(&text[s..i])));
            }
            if c == '(' {
                out.push((i, Lexeme::Open));
            } else if c == ')' {
                out.push((i, Lexeme::Close));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, Lexeme::Atom(&text[s..])));
    }
    out
}

struct Reader<'a> {
    lexemes: Vec<(usize, Lexeme<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<(usize, Lexeme<'a>)> {
        self.lexemes.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.peek().map(|(o, _)| o).unwrap_or(self.end)
    }

    fn node(&mut self) -> Result<ParseTree, TreeError> {
        let open_at = match self.peek() {
            Some((o, Lexeme::Open)) => o,
            Some((o, _)) => return Err(TreeError::new(o, "expected `(`")),
            None => return Err(TreeError::new(self.end, "unexpected end of input")),
        };
        self.pos += 1;
        let label = match self.peek() {
            Some((_, Lexeme::Atom(a))) => {
                self.pos += 1;
                a.to_string()
            }
            Some((_, Lexeme::Open)) => String::new(),
            Some((o, Lexeme::Close)) => return Err(TreeError::new(o, "empty node")),
            None => return Err(TreeError::new(self.end, "unbalanced parentheses")),
        };
        match self.peek() {
            Some((_, Lexeme::Open)) => {
                let mut children = Vec::new();
                loop {
                    match self.peek() {
                        Some((_, Lexeme::Open)) => children.push(self.node()?),
                        Some((_, Lexeme::Close)) => {
                            self.pos += 1;
                            return Ok(ParseTree::Internal { label, children });
                        }
                        Some((o, Lexeme::Atom(a))) => {
                            return Err(TreeError::new(
                                o,
                                format!("bare token `{a}` among constituents"),
                            ))
                        }
                        None => return Err(TreeError::new(self.end, "unbalanced parentheses")),
                    }
                }
            }
            Some((_, Lexeme::Atom(_))) => {
                let mut atoms: Vec<(usize, &str)> = Vec::new();
                loop {
                    match self.peek() {
                        Some((o, Lexeme::Atom(a))) => {
                            atoms.push((o, a));
                            self.pos += 1;
                        }
                        Some((_, Lexeme::Close)) => {
                            self.pos += 1;
                            break;
                        }
                        Some((o, Lexeme::Open)) => {
                            return Err(TreeError::new(o, "constituent inside a preterminal"))
                        }
                        None => return Err(TreeError::new(self.end, "unbalanced parentheses")),
                    }
                }
                let (_, word) = atoms.pop().expect("at least one atom");
                let mut tags = Vec::with_capacity(atoms.len());
                for (o, a) in atoms {
                    match a.parse::<ModalityTag>() {
                        Ok(t) => tags.push(t),
                        Err(_) => {
                            return Err(TreeError::new(
                                o,
                                format!("preterminal has more than one word (`{a}`)"),
                            ))
                        }
                    }
                }
                Ok(ParseTree::Preterminal {
                    pos: label,
                    tags,
                    word: word.to_string(),
                })
            }
            Some((_, Lexeme::Close)) => Err(TreeError::new(open_at, "preterminal with no word")),
            None => Err(TreeError::new(self.end, "unbalanced parentheses")),
        }
    }
}

/// Parse one S-expression tree.
pub fn parse_sexpr(text: &str) -> Result<ParseTree, TreeError> {
    let mut reader = Reader {
        lexemes: lex(text),
        pos: 0,
        end: text.len(),
    };
    let tree = reader.node()?;
    if reader.peek().is_some() {
        return Err(TreeError::new(reader.offset(), "trailing input after tree"));
    }
    Ok(tree)
}

/// Single-line canonical form.
pub fn print_sexpr(tree: &ParseTree) -> String {
    tree.to_string()
}

/// Preorder table of a tree with parent links and leaf spans.
#[derive(Debug)]
pub struct IndexedTree<'a> {
    nodes: Vec<IndexedNode<'a>>,
}

#[derive(Debug)]
pub struct IndexedNode<'a> {
    pub tree: &'a ParseTree,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Yield positions covered by this node.
    pub span: Range<usize>,
}

impl<'a> IndexedTree<'a> {
    pub fn new(tree: &'a ParseTree) -> Self {
        fn go<'a>(
            t: &'a ParseTree,
            parent: Option<usize>,
            leaf: &mut usize,
            nodes: &mut Vec<IndexedNode<'a>>,
        ) -> usize {
            let id = nodes.len();
            nodes.push(IndexedNode {
                tree: t,
                parent,
                children: Vec::new(),
                span: *leaf..*leaf,
            });
            if t.is_preterminal() {
                *leaf += 1;
            }
            for c in t.children() {
                let cid = go(c, Some(id), leaf, nodes);
                nodes[id].children.push(cid);
            }
            nodes[id].span.end = *leaf;
            id
        }
        let mut nodes = Vec::with_capacity(tree.size());
        let mut leaf = 0;
        go(tree, None, &mut leaf, &mut nodes);
        IndexedTree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &IndexedNode<'a> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[IndexedNode<'a>] {
        &self.nodes
    }

    /// Whether `b` is a proper descendant of `a`.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        let mut cur = self.nodes[b].parent;
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.nodes[p].parent;
        }
        false
    }

    /// Ids of the proper descendants of `a`, in preorder.
    pub fn descendants(&self, a: usize) -> Range<usize> {
        // preorder ids of a subtree are contiguous
        let size = self.nodes[a].tree.size();
        a + 1..a + size
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modality::{MenuModality, ModalityLabel};
    use proptest::prelude::*;

    #[test]
    fn parses_tagged_preterminal() {
        let t = parse_sexpr("(S (MD TrigAble could))").unwrap();
        let c = &t.children()[0];
        assert_eq!(c.label(), "MD");
        assert_eq!(c.word(), Some("could"));
        assert_eq!(c.tags(), &[ModalityTag::trigger(MenuModality::Able)]);
        let np = parse_sexpr("(NP (NNP Pakistan))").unwrap();
        assert!(np.children()[0].tags().is_empty());
    }

    #[test]
    fn prints_stacked_tags() {
        let t = ParseTree::Preterminal {
            pos: "VB".into(),
            tags: vec![
                ModalityTag::target(MenuModality::Able),
                ModalityTag::trigger(MenuModality::Succeed),
                ModalityTag::target(ModalityLabel::Negation),
            ],
            word: "reach".into(),
        };
        assert_eq!(print_sexpr(&t), "(VB TargAble TrigSucceed TargNegation reach)");
        assert_eq!(print_sexpr(&ParseTree::leaf("NN", "match")), "(NN match)");
        let pp = "(PP (IN by) (CD 41) (NNS runs))";
        assert_eq!(print_sexpr(&parse_sexpr(pp).unwrap()), pp);
    }

    #[test]
    fn multiline_input_normalizes() {
        let t = parse_sexpr("(TOP\n (S\n  (NP (NNP Pakistan))\n  (. .)))").unwrap();
        assert_eq!(t.to_string(), "(TOP (S (NP (NNP Pakistan)) (. .)))");
    }

    #[test]
    fn ptb_wrapper_with_empty_label() {
        let t = parse_sexpr("( (S (NN x)))").unwrap();
        assert_eq!(t.label(), "");
        assert_eq!(parse_sexpr(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_sexpr("(S (NN x)").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(e.message.contains("unbalanced"));
        let e = parse_sexpr("(S ())").unwrap_err();
        assert_eq!((e.offset, e.message.as_str()), (4, "empty node"));
        let e = parse_sexpr("(S (NN))").unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(e.message.contains("no word"));
        let e = parse_sexpr("(VB B TargAble reach)").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse_sexpr("(S (NN x)) (S (NN y))").is_err());
        assert!(parse_sexpr("(S (NN x) stray)").is_err());
        assert!(parse_sexpr("").is_err());
    }

    #[test]
    fn flatten_examples() {
        let t = parse_sexpr("(S (VP (VB go)))").unwrap();
        assert_eq!(t.flatten().to_string(), "(S (VB go))");
        let t = parse_sexpr("(PP (IN by) (NP (CD 41) (NNS runs)))").unwrap();
        assert_eq!(t.flatten().to_string(), "(PP (IN by) (CD 41) (NNS runs))");
        let t = parse_sexpr("(S (VP (MD will) (VP (VB need) (S (VP (TO to) (VP (VB work)))))))").unwrap();
        assert_eq!(
            t.flatten().to_string(),
            "(S (MD will) (VB need) (S (TO to) (VB work)))"
        );
        let t = parse_sexpr("(S (NP-SBJ (NP (NN a)) (PP (IN of) (NP (NN b)))) (VP (VBD c)))").unwrap();
        assert_eq!(
            t.flatten().to_string(),
            "(S (NP-SBJ (NN a) (PP (IN of) (NN b))) (VBD c))"
        );
    }

    #[test]
    fn yield_of_single_preterminal() {
        let t = ParseTree::leaf("NN", "x");
        assert_eq!(t.yield_tokens(), vec![Token::new("x", "NN")]);
    }

    #[test]
    fn indexed_tree_spans_and_dominance() {
        let t = parse_sexpr("(S (NP (DT the) (NN cat)) (VBD sat))").unwrap();
        let ix = IndexedTree::new(&t);
        assert_eq!(ix.len(), 5);
        assert_eq!(ix.node(0).span, 0..3);
        assert_eq!(ix.node(1).span, 0..2);
        assert_eq!(ix.node(4).span, 2..3);
        assert_eq!(ix.node(1).children, vec![2, 3]);
        assert!(ix.dominates(0, 3));
        assert!(!ix.dominates(1, 4));
        assert_eq!(ix.descendants(1), 2..4);
    }

    const LABELS: [&str; 5] = ["S", "VP", "NP", "PP", "ADJP"];

    fn arb_tree() -> impl Strategy<Value = ParseTree> {
        let leaf = (
            prop::sample::select(vec!["NN", "VB", "MD", "RB", "JJ"]),
            prop::sample::select(vec!["a", "b", "could", "reach"]),
            prop::collection::vec(prop::sample::select(ModalityTag::registry().collect::<Vec<_>>()), 0..3),
        )
            .prop_map(|(pos, word, tags)| ParseTree::Preterminal {
                pos: pos.to_string(),
                tags,
                word: word.to_string(),
            });
        leaf.prop_recursive(5, 30, 4, |inner| {
            (prop::sample::select(LABELS.to_vec()), prop::collection::vec(inner, 1..4))
                .prop_map(|(l, c)| ParseTree::internal(l, c))
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(t in arb_tree()) {
            prop_assert_eq!(parse_sexpr(&print_sexpr(&t)).unwrap(), t);
        }

        #[test]
        fn flatten_properties(t in arb_tree()) {
            let f = t.flatten();
            prop_assert_eq!(f.flatten(), f.clone());
            prop_assert_eq!(f.yield_tokens(), t.yield_tokens());
            prop_assert_eq!(f.yield_tags(), t.yield_tags());
            prop_assert_eq!(f.unflattened_count(), 0);
        }
    }
}
