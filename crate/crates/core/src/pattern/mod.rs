//! Tree patterns with named nodes, and rules that insert modality tags at
//! the nodes a pattern binds.
//!
//! # Pattern syntax
//!
//! ```text
//! pattern  := item relation*
//! item     := [name ':'] '(' label attr* relation* ')'  |  '=' name
//! relation := ['!'] op item
//! op       := '<'  child          '<<' descendant
//!             '.'  immediately precedes
//!             '..' precedes       '$'  sister
//! label    := LABEL | '__' | '/' regex '/'
//! attr     := 'word=' WORD | 'word=' '{' WORD, ... '}' | 'word!=' WORD-or-set
//! ```
//!
//! Relations attach to the node whose parentheses enclose them; relations
//! after the top-level item attach to the root. `=name` refers back to a node
//! bound earlier, so one node can take part in several relations. A negated
//! relation (`!. (/^NN/)`) holds when no node satisfies it. Word tests are
//! case-insensitive and only hold on preterminals.
//!
//! ```
//! use modtag::pattern::TreePattern;
//! let p: TreePattern = "trigger:(MD word=could) $ target:(/^VB/) .. =target".parse().unwrap();
//! assert_eq!(p.to_string(), "trigger:(MD word=could $ target:(/^VB/) .. =target)");
//! ```

mod parse;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use regex::Regex;
use thiserror::Error;

use crate::modality::{ModalityTag, Role};
use crate::tree::{IndexedTree, ParseTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern error at {position}: {message}")]
pub struct PatternError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub enum LabelSpec {
    Any,
    Exact(String),
    Regex(String, Regex),
}

impl PartialEq for LabelSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (LabelSpec::Any, LabelSpec::Any) => true,
            (LabelSpec::Exact(a), LabelSpec::Exact(b)) => a == b,
            (LabelSpec::Regex(a, _), LabelSpec::Regex(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Eq for LabelSpec {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSpec {
    Equals(String),
    In(BTreeSet<String>),
    NotIn(BTreeSet<String>),
}

/// Tests on a single tree node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeConstraint {
    pub label: LabelSpec,
    pub word: Option<WordSpec>,
}

impl NodeConstraint {
    pub fn matches(&self, node: &ParseTree) -> bool {
        let label = node.label();
        let label_ok = match &self.label {
            LabelSpec::Any => true,
            LabelSpec::Exact(l) => l == label,
            LabelSpec::Regex(_, r) => r.is_match(label),
        };
        if !label_ok {
            return false;
        }
        match &self.word {
            None => true,
            Some(spec) => match node.word() {
                None => false,
                Some(w) => {
                    let w = w.to_lowercase();
                    match spec {
                        WordSpec::Equals(e) => *e == w,
                        WordSpec::In(set) => set.contains(&w),
                        WordSpec::NotIn(set) => !set.contains(&w),
                    }
                }
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelOp {
    /// `<`: the second node is a child of the first.
    Parent,
    /// `<<`: the second node is a proper descendant of the first.
    Dominates,
    /// `.`: the first node's last word is right before the second's first word.
    ImmediatelyPrecedes,
    /// `..`: every word of the first node is before every word of the second.
    Precedes,
    /// `$`: distinct nodes sharing a parent.
    Sister,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Parent => "<",
            RelOp::Dominates => "<<",
            RelOp::ImmediatelyPrecedes => ".",
            RelOp::Precedes => "..",
            RelOp::Sister => "$",
        }
    }

    pub fn holds(self, ix: &IndexedTree<'_>, a: usize, b: usize) -> bool {
        let (na, nb) = (ix.node(a), ix.node(b));
        match self {
            RelOp::Parent => nb.parent == Some(a),
            RelOp::Dominates => ix.dominates(a, b),
            RelOp::ImmediatelyPrecedes => {
                !na.span.is_empty() && !nb.span.is_empty() && na.span.end == nb.span.start
            }
            RelOp::Precedes => {
                !na.span.is_empty() && !nb.span.is_empty() && na.span.end <= nb.span.start
            }
            RelOp::Sister => a != b && na.parent.is_some() && na.parent == nb.parent,
        }
    }

    /// Nodes that can stand in this relation to `a`, in preorder.
    fn candidates(self, ix: &IndexedTree<'_>, a: usize) -> Vec<usize> {
        match self {
            RelOp::Parent => ix.node(a).children.clone(),
            RelOp::Dominates => ix.descendants(a).collect(),
            RelOp::Sister => match ix.node(a).parent {
                Some(p) => ix.node(p).children.iter().copied().filter(|&c| c != a).collect(),
                None => Vec::new(),
            },
            RelOp::ImmediatelyPrecedes | RelOp::Precedes => {
                (0..ix.len()).filter(|&b| self.holds(ix, a, b)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternNode {
    pub name: Option<String>,
    pub constraint: NodeConstraint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelTarget {
    /// A node introduced by this relation.
    New(usize),
    /// A node introduced elsewhere, written `=name`.
    Ref(usize),
    /// No node satisfying the constraint may stand in the relation.
    Absent(NodeConstraint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub from: usize,
    pub op: RelOp,
    pub to: RelTarget,
}

/// A conjunction of node constraints and relations rooted at node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePattern {
    nodes: Vec<PatternNode>,
    relations: Vec<Relation>,
}

/// One way of binding every pattern node to a tree node (preorder ids).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binding(pub Vec<usize>);

impl TreePattern {
    pub fn nodes(&self) -> &[PatternNode] {
        &self.nodes
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name.as_deref() == Some(name))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().filter_map(|n| n.name.as_deref())
    }

    /// Replace the word test on a named node.
    pub fn set_word_spec(&mut self, name: &str, spec: Option<WordSpec>) -> bool {
        match self.index_of(name) {
            Some(i) => {
                self.nodes[i].constraint.word = spec;
                true
            }
            None => false,
        }
    }

    /// All bindings in lexicographic order of bound preorder ids, which puts
    /// them in document order of the match root.
    pub fn match_tree(&self, tree: &ParseTree) -> Vec<Binding> {
        let ix = IndexedTree::new(tree);
        self.match_indexed(&ix)
    }

    pub fn match_indexed(&self, ix: &IndexedTree<'_>) -> Vec<Binding> {
        // relation that introduces each node, and the checks due once it is bound
        let mut intro: Vec<Option<(usize, RelOp)>> = vec![None; self.nodes.len()];
        let mut due: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (ri, r) in self.relations.iter().enumerate() {
            match r.to {
                RelTarget::New(j) => {
                    intro[j] = Some((r.from, r.op));
                    due[j].push(ri);
                }
                RelTarget::Ref(j) => due[j.max(r.from)].push(ri),
                RelTarget::Absent(_) => due[r.from].push(ri),
            }
        }
        let mut out = Vec::new();
        let mut assigned = vec![usize::MAX; self.nodes.len()];
        self.search(ix, 0, &intro, &due, &mut assigned, &mut out);
        out
    }

    fn search(
        &self,
        ix: &IndexedTree<'_>,
        k: usize,
        intro: &[Option<(usize, RelOp)>],
        due: &[Vec<usize>],
        assigned: &mut Vec<usize>,
        out: &mut Vec<Binding>,
    ) {
        if k == self.nodes.len() {
            out.push(Binding(assigned.clone()));
            return;
        }
        let candidates: Vec<usize> = match intro[k] {
            Some((from, op)) => op.candidates(ix, assigned[from]),
            None => (0..ix.len()).collect(),
        };
        for c in candidates {
            if !self.nodes[k].constraint.matches(ix.node(c).tree) {
                continue;
            }
            assigned[k] = c;
            if due[k].iter().all(|&ri| self.relation_holds(ix, ri, assigned)) {
                self.search(ix, k + 1, intro, due, assigned, out);
            }
        }
        assigned[k] = usize::MAX;
    }

    fn relation_holds(&self, ix: &IndexedTree<'_>, ri: usize, assigned: &[usize]) -> bool {
        let r = &self.relations[ri];
        let a = assigned[r.from];
        match &r.to {
            RelTarget::New(j) | RelTarget::Ref(j) => r.op.holds(ix, a, assigned[*j]),
            RelTarget::Absent(c) => !(0..ix.len()).any(|b| c.matches(ix.node(b).tree) && r.op.holds(ix, a, b)),
        }
    }

    fn fmt_node(&self, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let node = &self.nodes[i];
        if let Some(n) = &node.name {
            write!(f, "{n}:")?;
        }
        write!(f, "(")?;
        fmt_constraint(&node.constraint, f)?;
        for r in self.relations.iter().filter(|r| r.from == i) {
            write!(f, " ")?;
            match &r.to {
                RelTarget::New(j) => {
                    write!(f, "{} ", r.op.symbol())?;
                    self.fmt_node(*j, f)?;
                }
                RelTarget::Ref(j) => {
                    let name = self.nodes[*j].name.as_deref().unwrap_or("?");
                    write!(f, "{} ={}", r.op.symbol(), name)?;
                }
                RelTarget::Absent(c) => {
                    write!(f, "!{} (", r.op.symbol())?;
                    fmt_constraint(c, f)?;
                    write!(f, ")")?;
                }
            }
        }
        write!(f, ")")
    }
}

fn fmt_words(set: &BTreeSet<String>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, w) in set.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{w}")?;
    }
    write!(f, "}}")
}

fn fmt_constraint(c: &NodeConstraint, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &c.label {
        LabelSpec::Any => write!(f, "__")?,
        LabelSpec::Exact(l) => write!(f, "{l}")?,
        LabelSpec::Regex(src, _) => write!(f, "/{}/", src.replace('/', "\\/"))?,
    }
    match &c.word {
        None => Ok(()),
        Some(WordSpec::Equals(w)) => write!(f, " word={w}"),
        Some(WordSpec::In(set)) => {
            write!(f, " word=")?;
            fmt_words(set, f)
        }
        Some(WordSpec::NotIn(set)) => {
            write!(f, " word!=")?;
            fmt_words(set, f)
        }
    }
}

impl fmt::Display for TreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(0, f)
    }
}

impl FromStr for TreePattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

pub fn parse_pattern(text: &str) -> Result<TreePattern, PatternError> {
    text.parse()
}

pub fn match_pattern(pattern: &TreePattern, tree: &ParseTree) -> Vec<Binding> {
    pattern.match_tree(tree)
}

/// Tag insertions at named nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagAction(pub Vec<(String, ModalityTag)>);

impl fmt::Display for TagAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, tag)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}={tag}")?;
        }
        Ok(())
    }
}

impl FromStr for TagAction {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(' ') {
            let err = |m: String| PatternError {
                position: offset,
                message: m,
            };
            if !part.is_empty() {
                let (name, tag) = part
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected name=Tag, found `{part}`")))?;
                let tag: ModalityTag = tag.parse().map_err(|e: crate::modality::ModalityError| err(e.to_string()))?;
                out.push((name.to_string(), tag));
            }
            offset += part.len() + 1;
        }
        Ok(TagAction(out))
    }
}

/// Where a compiled rule came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub entry: String,
    pub subcat: String,
    pub template: String,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.entry, self.subcat, self.template)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub pattern: TreePattern,
    pub action: TagAction,
    /// Absent for hand-written rules.
    pub provenance: Option<Provenance>,
}

impl Rule {
    /// Build a rule, checking that every action name is bound by the pattern.
    pub fn new(
        id: impl Into<String>,
        pattern: TreePattern,
        action: TagAction,
        provenance: Option<Provenance>,
    ) -> Result<Rule, PatternError> {
        for (name, _) in &action.0 {
            if pattern.index_of(name).is_none() {
                return Err(PatternError {
                    position: 0,
                    message: format!("action names unbound node `{name}`"),
                });
            }
        }
        Ok(Rule {
            id: id.into(),
            pattern,
            action,
            provenance,
        })
    }

    /// Node whose matches are deduplicated: the first node given a trigger tag.
    fn anchor(&self) -> Option<usize> {
        self.action
            .0
            .iter()
            .find(|(_, t)| t.role == Role::Trigger)
            .and_then(|(n, _)| self.pattern.index_of(n))
    }

    /// Matches that fire: the first in document order for each anchor node.
    pub fn firing_bindings(&self, tree: &ParseTree) -> Vec<Binding> {
        let anchor = self.anchor();
        let mut seen = HashSet::new();
        self.pattern
            .match_tree(tree)
            .into_iter()
            .filter(|b| match anchor {
                Some(a) => seen.insert(b.0[a]),
                None => true,
            })
            .collect()
    }

    /// Insert this rule's tags; shape and yield are untouched.
    ///
    /// Tags already present on a node are not repeated, and tags aimed at
    /// non-preterminal nodes are dropped.
    pub fn apply(&self, tree: &ParseTree) -> ParseTree {
        let mut inserts: Vec<(usize, ModalityTag)> = Vec::new();
        for b in self.firing_bindings(tree) {
            for (name, tag) in &self.action.0 {
                let i = self.pattern.index_of(name).expect("validated");
                inserts.push((b.0[i], *tag));
            }
        }
        let mut out = tree.clone();
        if inserts.is_empty() {
            return out;
        }
        out.for_each_preorder_mut(&mut |id, node| {
            if let ParseTree::Preterminal { tags, .. } = node {
                for (_, tag) in inserts.iter().filter(|(n, _)| *n == id) {
                    if !tags.contains(tag) {
                        tags.push(*tag);
                    }
                }
            }
        });
        out
    }

    /// One line of a rules file: `id | pattern | action | provenance`.
    pub fn to_line(&self) -> String {
        let prov = self
            .provenance
            .as_ref()
            .map(|p| p.to_string())
            .unwrap_or_else(|| "-".into());
        format!("{} | {} | {} | {}", self.id, self.pattern, self.action, prov)
    }

    /// Inverse of [`Rule::to_line`]. The pattern may itself contain `|`.
    pub fn from_line(line: &str) -> Result<Rule, PatternError> {
        let bad = |m: &str| PatternError {
            position: 0,
            message: m.to_string(),
        };
        let (id, rest) = line.split_once('|').ok_or_else(|| bad("missing fields"))?;
        let (rest, prov) = rest.rsplit_once('|').ok_or_else(|| bad("missing provenance"))?;
        let (pattern, action) = rest.rsplit_once('|').ok_or_else(|| bad("missing action"))?;
        let provenance = match prov.trim() {
            "-" => None,
            p => {
                let parts: Vec<&str> = p.split_whitespace().collect();
                match parts.as_slice() {
                    [entry, subcat, template] => Some(Provenance {
                        entry: entry.to_string(),
                        subcat: subcat.to_string(),
                        template: template.to_string(),
                    }),
                    _ => return Err(bad("provenance must be `entry subcat template` or `-`")),
                }
            }
        };
        Rule::new(
            id.trim(),
            pattern.trim().parse()?,
            action.trim().parse()?,
            provenance,
        )
    }
}

pub fn apply_rule(rule: &Rule, tree: &ParseTree) -> ParseTree {
    rule.apply(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modality::{MenuModality, ModalityLabel};
    use crate::tree::parse_sexpr;

    fn pat(s: &str) -> TreePattern {
        s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn parses_named_sisters() {
        let p = pat("trigger:(MD word=could) $ target:(VB)");
        assert_eq!(p.nodes().len(), 2);
        assert_eq!(p.index_of("trigger"), Some(0));
        assert_eq!(p.index_of("target"), Some(1));
        assert_eq!(p.relations()[0].op, RelOp::Sister);
        assert_eq!(pat(&p.to_string()), p);
    }

    #[test]
    fn parses_dominance() {
        let p = pat("(S < trigger:(MD))");
        assert_eq!(p.relations()[0].op, RelOp::Parent);
        assert_eq!(p.relations()[0].from, 0);
        assert_eq!(p.relations()[0].to, RelTarget::New(1));
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_pattern("((").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_pattern("a:(S < =b)").unwrap_err();
        assert!(e.message.contains("unbound"));
        assert_eq!(e.position, 8);
        let e = parse_pattern("(S <)").unwrap_err();
        assert!(e.message.contains("dangling"));
        let e = parse_pattern("(/[/)").unwrap_err();
        assert!(e.message.contains("regex"));
        assert!(parse_pattern("a:(S) $ a:(NP)").unwrap_err().message.contains("duplicate"));
        assert!(parse_pattern("(S ! (NP))").is_err());
        assert!(parse_pattern("(S !< x:(NP))").is_err());
        assert!(parse_pattern("(S) extra").is_err());
    }

    #[test]
    fn round_trips_every_construct() {
        for s in [
            "(__)",
            "t:(/^VB/ word!={be,is} .. =t)",
            "a:(S < b:(NP << (NN word=x)) $ c:(VP) .. =b)",
            "a:(/^(MD|VB)$/ word={can,could} !. (/^NN/))",
            "(. word=.)",
        ] {
            let p = pat(s);
            assert_eq!(pat(&p.to_string()), p, "{s}");
        }
    }

    const COULD_NOT_REACH: &str = "(S (MD could) (RB not) (VB reach) (ADJP (JJ semi-final)) (, ,) (VBD defeated))";

    #[test]
    fn modal_pattern_binds_could_and_reach() {
        let t = parse_sexpr(COULD_NOT_REACH).unwrap();
        let p = pat("trigger:(MD word=could) $ target:(/^VB/) .. =target");
        let ix = IndexedTree::new(&t);
        let m = p.match_indexed(&ix);
        let words: Vec<(&str, &str)> = m
            .iter()
            .map(|b| (ix.node(b.0[0]).tree.word().unwrap(), ix.node(b.0[1]).tree.word().unwrap()))
            .collect();
        assert_eq!(words, vec![("could", "reach"), ("could", "defeated")]);
        assert!(pat("(NP < (NN))").match_tree(&t).is_empty());
    }

    #[test]
    fn two_occurrences_in_document_order() {
        let t = parse_sexpr("(S (NP (NN a)) (VP (VB b) (NP (NN c))))").unwrap();
        let m = pat("np:(NP < (NN))").match_tree(&t);
        assert_eq!(m, vec![Binding(vec![1, 2]), Binding(vec![5, 6])]);
    }

    #[test]
    fn negated_relation_selects_rightmost_noun() {
        let t = parse_sexpr("(NP (DT a) (NNP Sir) (NNP Sayyed) (RB again))").unwrap();
        let m = pat("(NP < t:(/^NN/ !. (/^NN/)))").match_tree(&t);
        assert_eq!(m, vec![Binding(vec![0, 3])]);
    }

    fn able_rule() -> Rule {
        Rule::new(
            "able",
            pat("trigger:(MD word={can,could}) $ target:(/^VB/ word!={be,do}) .. =target"),
            TagAction(vec![
                ("trigger".into(), ModalityTag::trigger(MenuModality::Able)),
                ("target".into(), ModalityTag::target(MenuModality::Able)),
            ]),
            None,
        )
        .unwrap()
    }

    #[test]
    fn apply_tags_first_target_only() {
        let t = parse_sexpr(COULD_NOT_REACH).unwrap();
        let out = able_rule().apply(&t);
        assert_eq!(
            out.to_string(),
            "(S (MD TrigAble could) (RB not) (VB TargAble reach) (ADJP (JJ semi-final)) (, ,) (VBD defeated))"
        );
        assert_eq!(out.yield_tokens(), t.yield_tokens());
        assert_eq!(able_rule().apply(&out), out);
        let none = parse_sexpr("(S (NN x))").unwrap();
        assert_eq!(able_rule().apply(&none), none);
    }

    #[test]
    fn action_names_must_be_bound() {
        let e = Rule::new(
            "x",
            pat("trigger:(MD)"),
            TagAction(vec![("target".into(), ModalityTag::target(ModalityLabel::Negation))]),
            None,
        )
        .unwrap_err();
        assert!(e.message.contains("target"));
    }

    #[test]
    fn rule_lines_round_trip() {
        let mut r = able_rule();
        assert_eq!(Rule::from_line(&r.to_line()).unwrap(), r);
        r.pattern = pat("trigger:(/^(MD|VB)$/ word=need) $ target:(VB)");
        r.provenance = Some(Provenance {
            entry: "need/VB:Require".into(),
            subcat: "Modal-auxiliary-basic".into(),
            template: "modal-auxiliary-next-verb".into(),
        });
        assert_eq!(Rule::from_line(&r.to_line()).unwrap(), r);
    }
}
