use crate::modality::ModalityTag;
use crate::pattern::Rule;
use crate::tree::ParseTree;

/// Apply rules in order. Tags accumulate on preterminals in stacked form.
pub fn tag_tree(tree: &ParseTree, rules: &[Rule]) -> ParseTree {
    rules.iter().fold(tree.clone(), |t, r| r.apply(&t))
}

/// A tagged tree with the rule behind every tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedTree {
    pub tree: ParseTree,
    /// Per yield position, the rule id behind each tag (parallel to the tags).
    pub sources: Vec<Vec<String>>,
}

impl TracedTree {
    /// `(token index, tag, rule id)` for every tag.
    pub fn tag_rows(&self) -> Vec<(usize, ModalityTag, String)> {
        let mut out = Vec::new();
        for (i, tags) in self.tree.yield_tags().into_iter().enumerate() {
            for (tag, src) in tags.into_iter().zip(&self.sources[i]) {
                out.push((i, tag, src.clone()));
            }
        }
        out
    }
}

/// Like [`tag_tree`], also recording which rule inserted each tag.
pub fn tag_tree_traced(tree: &ParseTree, rules: &[Rule]) -> TracedTree {
    let mut current = tree.clone();
    let mut before = current.yield_tags();
    let mut sources: Vec<Vec<String>> = before.iter().map(|t| vec![String::new(); t.len()]).collect();
    for rule in rules {
        let next = rule.apply(&current);
        let after = next.yield_tags();
        for (i, (old, new)) in before.iter().zip(&after).enumerate() {
            for _ in old.len()..new.len() {
                sources[i].push(rule.id.clone());
            }
        }
        current = next;
        before = after;
    }
    TracedTree { tree: current, sources }
}
