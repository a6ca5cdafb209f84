use std::collections::{BTreeSet, HashMap};

use regex::Regex;

use super::{LabelSpec, NodeConstraint, PatternError, PatternNode, RelOp, RelTarget, Relation, TreePattern, WordSpec};

pub(super) fn parse(text: &str) -> Result<TreePattern, PatternError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        nodes: Vec::new(),
        relations: Vec::new(),
        names: HashMap::new(),
    };
    p.skip_ws();
    let root = p.item()?;
    let root = match root {
        Item::New(i) => i,
        Item::Ref(_) => return Err(p.error("pattern must start with a node, not a back-reference")),
    };
    p.relations_for(root)?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(TreePattern {
        nodes: p.nodes,
        relations: p.relations,
    })
}

enum Item {
    New(usize),
    Ref(usize),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<PatternNode>,
    relations: Vec<Relation>,
    names: HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> PatternError {
        PatternError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), PatternError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphanumeric()) || (i == 0 && c.is_ascii_digit()))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    /// A bare token: everything up to whitespace or one of `stops`.
    fn bare(&mut self, stops: &[char]) -> &'a str {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(_, c)| c.is_whitespace() || stops.contains(&c))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn item(&mut self) -> Result<Item, PatternError> {
        if self.eat("=") {
            let at = self.pos;
            let name = self.ident().ok_or_else(|| self.error("expected a name after `=`"))?;
            return match self.names.get(name) {
                Some(&i) => Ok(Item::Ref(i)),
                None => Err(PatternError {
                    position: at,
                    message: format!("unbound name `{name}`"),
                }),
            };
        }
        let mut name = None;
        if self.peek() != Some('(') {
            let at = self.pos;
            let id = self
                .ident()
                .ok_or_else(|| self.error("expected `(`, a node name or `=name`"))?;
            if !self.eat(":") {
                self.pos = at;
                return Err(self.error("expected `:` after node name"));
            }
            if self.names.contains_key(id) {
                return Err(PatternError {
                    position: at,
                    message: format!("duplicate node name `{id}`"),
                });
            }
            name = Some(id.to_string());
        }
        self.expect("(")?;
        self.skip_ws();
        let constraint = self.constraint()?;
        let idx = self.nodes.len();
        if let Some(n) = &name {
            self.names.insert(n.clone(), idx);
        }
        self.nodes.push(PatternNode { name, constraint });
        self.relations_for(idx)?;
        self.skip_ws();
        self.expect(")")?;
        Ok(Item::New(idx))
    }

    fn constraint(&mut self) -> Result<NodeConstraint, PatternError> {
        let label = if self.peek() == Some('/') {
            self.pos += 1;
            LabelSpec::regex(&self.regex_body()?).map_err(|e| self.error(e))?
        } else {
            let tok = self.bare(&[')', '(']);
            match tok {
                "" => return Err(self.error("expected a label, `__` or `/regex/`")),
                "__" => LabelSpec::Any,
                t => LabelSpec::Exact(t.to_string()),
            }
        };
        let mut word = None;
        loop {
            self.skip_ws();
            if self.eat("word!=") {
                let words = self.word_set()?;
                word = Some(WordSpec::NotIn(words));
            } else if self.eat("word=") {
                if self.peek() == Some('{') {
                    word = Some(WordSpec::In(self.word_set()?));
                } else {
                    let w = self.bare(&[')', '(']);
                    if w.is_empty() {
                        return Err(self.error("expected a word"));
                    }
                    word = Some(WordSpec::Equals(w.to_lowercase()));
                }
            } else {
                break;
            }
        }
        Ok(NodeConstraint { label, word })
    }

    fn regex_body(&mut self) -> Result<String, PatternError> {
        let mut out = String::new();
        let mut chars = self.rest().char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => match chars.next() {
                    Some((_, '/')) => out.push('/'),
                    Some((_, other)) => {
                        out.push('\\');
                        out.push(other);
                    }
                    None => break,
                },
                '/' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                c => out.push(c),
            }
        }
        Err(self.error("unterminated regex"))
    }

    fn word_set(&mut self) -> Result<BTreeSet<String>, PatternError> {
        if !self.eat("{") {
            let w = self.bare(&[')', '(']);
            if w.is_empty() {
                return Err(self.error("expected a word or `{`"));
            }
            return Ok(BTreeSet::from([w.to_lowercase()]));
        }
        let mut words = BTreeSet::new();
        loop {
            self.skip_ws();
            if self.eat("}") {
                break;
            }
            let w = self.bare(&[',', '}', ')', '(']);
            if w.is_empty() {
                return Err(self.error("expected a word in set"));
            }
            words.insert(w.to_lowercase());
            self.skip_ws();
            if !self.eat(",") {
                self.expect("}")?;
                break;
            }
        }
        if words.is_empty() {
            return Err(self.error("empty word set"));
        }
        Ok(words)
    }

    fn op(&mut self) -> Option<RelOp> {
        for (s, op) in [
            ("<<", RelOp::Dominates),
            ("<", RelOp::Parent),
            ("..", RelOp::Precedes),
            (".", RelOp::ImmediatelyPrecedes),
            ("$", RelOp::Sister),
        ] {
            if self.eat(s) {
                return Some(op);
            }
        }
        None
    }

    fn relations_for(&mut self, from: usize) -> Result<(), PatternError> {
        loop {
            self.skip_ws();
            let start = self.pos;
            let negated = self.eat("!");
            let Some(op) = self.op() else {
                if negated {
                    return Err(self.error("expected a relation operator after `!`"));
                }
                self.pos = start;
                return Ok(());
            };
            self.skip_ws();
            if self.pos >= self.src.len() || self.peek() == Some(')') {
                return Err(self.error("dangling relation"));
            }
            if negated {
                let at = self.pos;
                let before = (self.nodes.len(), self.relations.len());
                let item = self.item()?;
                let simple = match item {
                    Item::New(i) => {
                        i == before.0
                            && self.nodes.len() == before.0 + 1
                            && self.relations.len() == before.1
                            && self.nodes[i].name.is_none()
                    }
                    Item::Ref(_) => false,
                };
                if !simple {
                    return Err(PatternError {
                        position: at,
                        message: "negated relations take a single unnamed node".into(),
                    });
                }
                let node = self.nodes.pop().expect("just parsed");
                self.relations.push(Relation {
                    from,
                    op,
                    to: RelTarget::Absent(node.constraint),
                });
            } else {
                let slot = self.relations.len();
                // reserve the slot so the introducing relation precedes the
                // new node's own relations
                self.relations.push(Relation {
                    from,
                    op,
                    to: RelTarget::Ref(from),
                });
                let to = match self.item()? {
                    Item::New(i) => RelTarget::New(i),
                    Item::Ref(i) => RelTarget::Ref(i),
                };
                self.relations[slot].to = to;
            }
        }
    }
}

impl LabelSpec {
    pub(super) fn regex(source: &str) -> Result<LabelSpec, String> {
        Regex::new(source)
            .map(|r| LabelSpec::Regex(source.to_string(), r))
            .map_err(|e| format!("bad regex: {e}"))
    }
}
