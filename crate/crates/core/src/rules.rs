//! Template catalog, subcategorization map and the compiler from lexicon
//! entries to tree rules.
//!
//! Each subcategorization code names one or more templates. A template is a
//! pattern skeleton with placeholders for the trigger's word forms; the
//! compiler fills it in for every entry and code, and attaches a tag action
//! for the entry's modality.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

use crate::lexicon::{inflect_lemma, Lexicon, LexiconEntry};
use crate::modality::ModalityTag;
use crate::pattern::{PatternError, Provenance, Rule, TagAction, TreePattern, WordSpec};
use crate::tagger::AuxiliaryRegistry;

pub const BUNDLED_TEMPLATES: &str = include_str!("../data/templates.txt");
pub const BUNDLED_SUBCAT_MAP: &str = include_str!("../data/subcat_map.txt");

/// Pattern node names every template binds.
pub const TRIGGER: &str = "trigger";
pub const TARGET: &str = "target";

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
    #[error("template {template} does not apply to {entry}: head POS {pos} is not one of {classes}")]
    Inapplicable {
        template: String,
        entry: String,
        pos: String,
        classes: String,
    },
    #[error("template {template}: {source}")]
    Pattern {
        template: String,
        #[source]
        source: PatternError,
    },
    #[error("template {0} needs a parameter")]
    MissingParameter(String),
    #[error("reading data file: {0}")]
    Io(#[from] std::io::Error),
}

/// Coarse POS class of a trigger head, used to check template applicability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosClass {
    Modal,
    Verb,
    Noun,
    Adjective,
    Adverb,
}

impl PosClass {
    pub fn of(pos: &str) -> Option<PosClass> {
        match pos {
            "MD" => Some(PosClass::Modal),
            p if p.starts_with("VB") => Some(PosClass::Verb),
            p if p.starts_with("NN") => Some(PosClass::Noun),
            p if p.starts_with("JJ") => Some(PosClass::Adjective),
            p if p.starts_with("RB") => Some(PosClass::Adverb),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            PosClass::Modal => "modal",
            PosClass::Verb => "verb",
            PosClass::Noun => "noun",
            PosClass::Adjective => "adjective",
            PosClass::Adverb => "adverb",
        }
    }

    fn parse(s: &str) -> Option<PosClass> {
        [
            PosClass::Modal,
            PosClass::Verb,
            PosClass::Noun,
            PosClass::Adjective,
            PosClass::Adverb,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemplateId(pub String);

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Template {
    pub id: TemplateId,
    pub classes: Vec<PosClass>,
    pub skeleton: String,
    pub description: String,
}

impl Template {
    fn class_names(&self) -> String {
        self.classes.iter().map(|c| c.name()).collect::<Vec<_>>().join("/")
    }

    /// The skeleton with fixed placeholders filled and the trigger word set
    /// left as a single `@` sentinel.
    pub fn skeleton_pattern(&self, param: Option<&str>) -> Result<TreePattern, CompileError> {
        self.fill(&BTreeSet::from(["@".to_string()]), param)
    }

    fn fill(&self, words: &BTreeSet<String>, param: Option<&str>) -> Result<TreePattern, CompileError> {
        let mut text = self
            .skeleton
            .replace("@WORDS", &word_set(words.iter().map(String::as_str)))
            .replace("@AUX", &word_set(AuxiliaryRegistry::WORDS.iter().copied()))
            .replace("@BE", &word_set(BE_FORMS.iter().copied()));
        if text.contains("@PREP") {
            let p = param.ok_or_else(|| CompileError::MissingParameter(self.id.0.clone()))?;
            text = text.replace("@PREP", p);
        }
        text.parse().map_err(|source| CompileError::Pattern {
            template: self.id.0.clone(),
            source,
        })
    }
}

const BE_FORMS: &[&str] = &["be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m"];

fn word_set<'a>(words: impl Iterator<Item = &'a str>) -> String {
    format!("{{{}}}", words.collect::<Vec<_>>().join(","))
}

/// The closed template inventory.
#[derive(Debug, Clone)]
pub struct TemplateCatalog {
    templates: Vec<Template>,
}

impl TemplateCatalog {
    pub fn bundled() -> TemplateCatalog {
        TemplateCatalog::parse(BUNDLED_TEMPLATES.as_bytes()).expect("bundled templates are valid")
    }

    /// Read `id | classes | skeleton | description` lines. Skeletons are
    /// checked by filling them with sentinel values and parsing.
    pub fn parse<R: BufRead>(source: R) -> Result<TemplateCatalog, CompileError> {
        let mut templates: Vec<Template> = Vec::new();
        for (i, line) in source.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| CompileError::Malformed {
                line: i + 1,
                message: m.to_string(),
            };
            let (id, rest) = line.split_once('|').ok_or_else(|| bad("expected 4 fields"))?;
            let (classes, rest) = rest.split_once('|').ok_or_else(|| bad("expected 4 fields"))?;
            let (skeleton, description) = rest.rsplit_once('|').ok_or_else(|| bad("expected 4 fields"))?;
            let classes = classes
                .split_whitespace()
                .map(|c| PosClass::parse(c).ok_or_else(|| bad(&format!("unknown POS class `{c}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if classes.is_empty() {
                return Err(bad("no POS classes"));
            }
            let id = TemplateId(id.trim().to_string());
            if templates.iter().any(|t| t.id == id) {
                return Err(bad(&format!("duplicate template `{id}`")));
            }
            let t = Template {
                id,
                classes,
                skeleton: skeleton.trim().to_string(),
                description: description.trim().to_string(),
            };
            let p = t.skeleton_pattern(Some("@"))?;
            for name in [TRIGGER, TARGET] {
                if p.index_of(name).is_none() {
                    return Err(bad(&format!("skeleton does not bind `{name}`")));
                }
            }
            templates.push(t);
        }
        Ok(TemplateCatalog { templates })
    }

    pub fn get(&self, id: &str) -> Option<&Template> {
        self.templates.iter().find(|t| t.id.0 == id)
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

/// A template named by a subcat code, with its optional parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateRef {
    pub id: TemplateId,
    pub param: Option<String>,
}

impl fmt::Display for TemplateRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.param {
            Some(p) => write!(f, "{}({})", self.id, p),
            None => write!(f, "{}", self.id),
        }
    }
}

/// Subcategorization code to template mapping.
#[derive(Debug, Clone, Default)]
pub struct SubcatMap {
    entries: Vec<(String, Vec<TemplateRef>)>,
}

impl SubcatMap {
    pub fn bundled() -> SubcatMap {
        SubcatMap::parse(BUNDLED_SUBCAT_MAP.as_bytes()).expect("bundled subcat map is valid")
    }

    pub fn parse<R: BufRead>(source: R) -> Result<SubcatMap, CompileError> {
        let mut map = SubcatMap::default();
        for (i, line) in source.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: String| CompileError::Malformed { line: i + 1, message: m };
            let (code, refs) = line
                .split_once('|')
                .ok_or_else(|| bad("expected `code | templates`".into()))?;
            let code = code.trim();
            if code.is_empty() {
                return Err(bad("empty code".into()));
            }
            let mut templates = Vec::new();
            for r in refs.split(';').map(str::trim).filter(|r| !r.is_empty()) {
                let tref = match r.split_once('(') {
                    Some((id, rest)) => {
                        let param = rest
                            .strip_suffix(')')
                            .ok_or_else(|| bad(format!("unclosed parameter in `{r}`")))?;
                        TemplateRef {
                            id: TemplateId(id.trim().to_string()),
                            param: Some(param.trim().to_string()),
                        }
                    }
                    None => TemplateRef {
                        id: TemplateId(r.to_string()),
                        param: None,
                    },
                };
                templates.push(tref);
            }
            if templates.is_empty() {
                return Err(bad(format!("code `{code}` maps to no template")));
            }
            if map.contains(code) {
                return Err(bad(format!("duplicate code `{code}`")));
            }
            map.entries.push((code.to_string(), templates));
        }
        Ok(map)
    }

    pub fn contains(&self, code: &str) -> bool {
        self.get(code).is_some()
    }

    pub fn get(&self, code: &str) -> Option<&[TemplateRef]> {
        self.entries
            .iter()
            .find(|(c, _)| c == code)
            .map(|(_, t)| t.as_slice())
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(c, _)| c.as_str())
    }

    /// Check that every referenced template exists in `catalog`.
    pub fn validate(&self, catalog: &TemplateCatalog) -> Result<(), CompileError> {
        for (_, refs) in &self.entries {
            for r in refs {
                if catalog.get(&r.id.0).is_none() {
                    return Err(CompileError::UnknownTemplate(r.id.0.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Lowercased surface forms a rule anchors on for an entry's head word.
pub fn trigger_forms(entry: &LexiconEntry) -> BTreeSet<String> {
    let pos = entry.head_pos();
    let head = entry.head_word().to_lowercase();
    let base = if pos.starts_with("VB") {
        "VB"
    } else if pos.starts_with("NN") && !pos.starts_with("NNP") {
        "NN"
    } else {
        return BTreeSet::from([head]);
    };
    // a VBP head is spelled like its lemma, so it belongs to the family too
    if pos == base || pos == "VBP" || entry.lemma != head {
        inflect_lemma(&entry.lemma, base)
    } else {
        BTreeSet::from([head])
    }
}

/// Lemma-level identifier shared by an entry and its inflections.
pub fn lemma_id(entry: &LexiconEntry) -> String {
    let mut words: Vec<String> = entry.surface.iter().map(|w| w.to_lowercase()).collect();
    words[entry.head_index] = entry.lemma.clone();
    let mut pos = entry.pos.clone();
    let head_pos = &pos[entry.head_index];
    if head_pos.starts_with("VB") {
        pos[entry.head_index] = "VB".into();
    } else if head_pos.starts_with("NN") && !head_pos.starts_with("NNP") {
        pos[entry.head_index] = "NN".into();
    }
    format!("{}/{}:{}", words.join("_"), pos.join("_"), entry.modality)
}

/// Build the rule for one template applied to one entry.
pub fn instantiate_template(
    template: &Template,
    param: Option<&str>,
    entry: &LexiconEntry,
    subcat: &str,
) -> Result<Rule, CompileError> {
    let pos = entry.head_pos();
    match PosClass::of(pos) {
        Some(c) if template.classes.contains(&c) => {}
        _ => {
            return Err(CompileError::Inapplicable {
                template: template.id.0.clone(),
                entry: entry.id(),
                pos: pos.to_string(),
                classes: template.class_names(),
            })
        }
    }
    let pattern = template.fill(&trigger_forms(entry), param)?;
    let tref = TemplateRef {
        id: template.id.clone(),
        param: param.map(String::from),
    };
    let lemma = lemma_id(entry);
    let action = TagAction(vec![
        (TRIGGER.to_string(), ModalityTag::trigger(entry.modality)),
        (TARGET.to_string(), ModalityTag::target(entry.modality)),
    ]);
    Rule::new(
        format!("{lemma}@{tref}"),
        pattern,
        action,
        Some(Provenance {
            entry: lemma,
            subcat: subcat.to_string(),
            template: tref.to_string(),
        }),
    )
    .map_err(|source| CompileError::Pattern {
        template: template.id.0.clone(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPair {
    pub entry: String,
    pub subcat: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct CompileSummary {
    pub entries: usize,
    pub pairs: usize,
    pub rules: usize,
    pub duplicates: usize,
    pub skipped_pairs: Vec<SkippedPair>,
    /// Entries none of whose codes produced a rule.
    pub skipped_entries: Vec<String>,
}

impl fmt::Display for CompileSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "entries: {}", self.entries)?;
        writeln!(f, "entry/subcat pairs: {}", self.pairs)?;
        writeln!(f, "rules: {}", self.rules)?;
        writeln!(f, "duplicate rules dropped: {}", self.duplicates)?;
        writeln!(f, "skipped pairs: {}", self.skipped_pairs.len())?;
        for s in &self.skipped_pairs {
            writeln!(f, "  skipped {} {}: {}", s.entry, s.subcat, s.reason)?;
        }
        writeln!(f, "skipped entries: {}", self.skipped_entries.len())?;
        for e in &self.skipped_entries {
            writeln!(f, "  warning: no applicable template for {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub rules: Vec<Rule>,
    pub summary: CompileSummary,
}

/// Compile every (entry, subcat, template) triple, in entry, subcat and
/// template order. Rules with identical pattern and action are kept once.
pub fn compile_ruleset(
    lexicon: &Lexicon,
    catalog: &TemplateCatalog,
    map: &SubcatMap,
) -> Result<Compiled, CompileError> {
    map.validate(catalog)?;
    let mut summary = CompileSummary {
        entries: lexicon.len(),
        ..Default::default()
    };
    let mut rules = Vec::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    for entry in lexicon.entries() {
        let mut produced = false;
        for code in &entry.subcats {
            summary.pairs += 1;
            let refs = map
                .get(code.as_str())
                .ok_or_else(|| CompileError::UnknownTemplate(format!("(subcat {code})")))?;
            let mut reasons = Vec::new();
            let mut pair_ok = false;
            for r in refs {
                let template = catalog.get(&r.id.0).expect("validated");
                match instantiate_template(template, r.param.as_deref(), entry, code.as_str()) {
                    Ok(rule) => {
                        pair_ok = true;
                        let key = (rule.pattern.to_string(), rule.action.to_string());
                        if seen.insert(key) {
                            rules.push(rule);
                        } else {
                            summary.duplicates += 1;
                        }
                    }
                    Err(e @ CompileError::Inapplicable { .. }) => reasons.push(e.to_string()),
                    Err(e) => return Err(e),
                }
            }
            if pair_ok {
                produced = true;
            } else {
                summary.skipped_pairs.push(SkippedPair {
                    entry: entry.id(),
                    subcat: code.to_string(),
                    reason: reasons.join("; "),
                });
            }
        }
        if !produced {
            summary.skipped_entries.push(entry.id());
        }
    }
    summary.rules = rules.len();
    Ok(Compiled { rules, summary })
}

/// Serialize rules, one per line.
pub fn write_rules(rules: &[Rule]) -> String {
    let mut out = String::new();
    for r in rules {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

/// Read a rules file written by [`write_rules`]; `#` lines are comments.
pub fn read_rules<R: BufRead>(source: R) -> Result<Vec<Rule>, CompileError> {
    let mut rules = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rules.push(Rule::from_line(line).map_err(|e| CompileError::Malformed {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(rules)
}

/// Replace the trigger's word set with the `@` sentinel.
pub fn erase_trigger_words(pattern: &TreePattern) -> TreePattern {
    let mut p = pattern.clone();
    p.set_word_spec(TRIGGER, Some(WordSpec::In(BTreeSet::from(["@".to_string()]))));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modality::{MenuModality, ModalityLabel};
    use crate::tree::parse_sexpr;

    fn lex(text: &str) -> Lexicon {
        Lexicon::parse(text.as_bytes(), &SubcatMap::bundled()).unwrap()
    }

    const NEED: &str = "need | VB | Require | 0 | V3-passive-basic;V3-I3-basic;T1-monotransitive-for-V3-verbs;T1-passive-for-V3-verb;Modal-auxiliary-basic";

    #[test]
    fn catalog_has_fifteen_templates_and_total_map() {
        let cat = TemplateCatalog::bundled();
        assert_eq!(cat.len(), 15);
        let map = SubcatMap::bundled();
        map.validate(&cat).unwrap();
        for code in map.codes() {
            assert!(!map.get(code).unwrap().is_empty());
        }
        assert!(!map.contains("I"));
    }

    #[test]
    fn instantiate_modal_for_should() {
        let l = lex("should | MD | Require | 0 | Modal-auxiliary-basic");
        let cat = TemplateCatalog::bundled();
        let rule = instantiate_template(
            cat.get("modal-auxiliary-next-verb").unwrap(),
            None,
            &l.entries()[0],
            "Modal-auxiliary-basic",
        )
        .unwrap();
        let t = parse_sexpr("(S (NNPS Americans) (MD should) (VB know) (SBAR (IN that) (S (PRP we))))").unwrap();
        let out = rule.apply(&t);
        assert_eq!(
            out.to_string(),
            "(S (NNPS Americans) (MD TrigRequire should) (VB TargRequire know) (SBAR (IN that) (S (PRP we))))"
        );
    }

    #[test]
    fn passive_subject_and_direct_object() {
        let l = lex(NEED).expand();
        let cat = TemplateCatalog::bundled();
        let entry = &l.entries()[0];
        let passive = instantiate_template(
            cat.get("trigger-passive-target-is-subject").unwrap(),
            None,
            entry,
            "T1-passive-for-V3-verb",
        )
        .unwrap();
        let t = parse_sexpr("(S (NP (NNS Tents)) (VBP are) (VBN needed) (. .))").unwrap();
        assert_eq!(
            passive.apply(&t).to_string(),
            "(S (NP (NNS TargRequire Tents)) (VBP are) (VBN TrigRequire needed) (. .))"
        );
        let object = instantiate_template(
            cat.get("target-is-direct-object").unwrap(),
            None,
            entry,
            "T1-monotransitive-for-V3-verbs",
        )
        .unwrap();
        let t = parse_sexpr(
            "(S (NP (PRP We)) (VBP need) (NP (DT a) (NNP Sir) (NNP Sayyed)) (ADVP (RB again)) (S (TO to) (VB maintain) (NP (DT this) (NN sentiment))) (. .))",
        )
        .unwrap();
        let out = object.apply(&t);
        assert_eq!(out.yield_tags()[1], vec![ModalityTag::trigger(MenuModality::Require)]);
        assert_eq!(out.yield_tags()[4], vec![ModalityTag::target(MenuModality::Require)]);
        assert!(out.yield_tags()[3].is_empty());
    }

    #[test]
    fn inapplicable_template_names_both() {
        let l = lex("able | JJ | Able | 0 | Adj-infinitival");
        let cat = TemplateCatalog::bundled();
        let err = instantiate_template(
            cat.get("modal-auxiliary-next-verb").unwrap(),
            None,
            &l.entries()[0],
            "Modal-auxiliary-basic",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("modal-auxiliary-next-verb") && msg.contains("able/JJ:Able"), "{msg}");
    }

    #[test]
    fn need_compiles_to_one_rule_per_code() {
        let l = lex(NEED).expand();
        let c = compile_ruleset(&l, &TemplateCatalog::bundled(), &SubcatMap::bundled()).unwrap();
        assert_eq!(c.rules.len(), 5);
        let codes: Vec<&str> = c
            .rules
            .iter()
            .map(|r| r.provenance.as_ref().unwrap().subcat.as_str())
            .collect();
        assert_eq!(
            codes,
            vec![
                "V3-passive-basic",
                "V3-I3-basic",
                "T1-monotransitive-for-V3-verbs",
                "T1-passive-for-V3-verb",
                "Modal-auxiliary-basic"
            ]
        );
        assert!(c.summary.skipped_entries.is_empty());
        assert!(c.summary.duplicates > 0);
    }

    #[test]
    fn empty_lexicon_compiles_to_nothing() {
        let c = compile_ruleset(&Lexicon::new(), &TemplateCatalog::bundled(), &SubcatMap::bundled()).unwrap();
        assert!(c.rules.is_empty());
        assert_eq!(c.summary.pairs, 0);
    }

    #[test]
    fn inapplicable_entries_are_reported() {
        let l = lex("able | JJ | Able | 0 | T1\nwant | VB | Want | 0 | T3");
        let c = compile_ruleset(&l, &TemplateCatalog::bundled(), &SubcatMap::bundled()).unwrap();
        assert_eq!(c.summary.skipped_entries, vec!["able/JJ:Able".to_string()]);
        assert_eq!(c.summary.skipped_pairs.len(), 1);
        assert_eq!(c.rules.len(), 1);
        assert!(c.summary.to_string().contains("warning: no applicable template for able/JJ:Able"));
    }

    #[test]
    fn shared_codes_give_parallel_patterns() {
        let l = lex("manage | VB | Succeed | 0 | T3\nintend | VB | Intend | 0 | T3");
        let c = compile_ruleset(&l, &TemplateCatalog::bundled(), &SubcatMap::bundled()).unwrap();
        assert_eq!(c.rules.len(), 2);
        let a = erase_trigger_words(&c.rules[0].pattern);
        let b = erase_trigger_words(&c.rules[1].pattern);
        assert_eq!(a, b);
        assert_ne!(c.rules[0].action, c.rules[1].action);
    }

    #[test]
    fn compiled_patterns_erase_to_their_skeletons() {
        let lexicon = Lexicon::seed().expand();
        let cat = TemplateCatalog::bundled();
        let map = SubcatMap::bundled();
        let c = compile_ruleset(&lexicon, &cat, &map).unwrap();
        for rule in &c.rules {
            let prov = rule.provenance.as_ref().unwrap();
            let (id, param) = match prov.template.split_once('(') {
                Some((id, p)) => (id, Some(p.trim_end_matches(')'))),
                None => (prov.template.as_str(), None),
            };
            let skeleton = cat.get(id).unwrap().skeleton_pattern(param).unwrap();
            assert_eq!(erase_trigger_words(&rule.pattern), skeleton, "{}", rule.id);
        }
    }

    #[test]
    fn compilation_is_deterministic_and_covers_pairs() {
        let lexicon = Lexicon::seed().expand();
        let cat = TemplateCatalog::bundled();
        let map = SubcatMap::bundled();
        let a = compile_ruleset(&lexicon, &cat, &map).unwrap();
        let b = compile_ruleset(&lexicon, &cat, &map).unwrap();
        assert_eq!(write_rules(&a.rules), write_rules(&b.rules));
        // every (lemma, code, template) triple is represented by some rule
        for entry in lexicon.entries() {
            for code in &entry.subcats {
                for r in map.get(code.as_str()).unwrap() {
                    let t = cat.get(&r.id.0).unwrap();
                    if !t.classes.contains(&PosClass::of(entry.head_pos()).unwrap()) {
                        continue;
                    }
                    let want = (lemma_id(entry), r.to_string());
                    assert!(
                        a.rules.iter().any(|rule| {
                            let p = rule.provenance.as_ref().unwrap();
                            (p.entry.clone(), p.template.clone()) == want
                        }),
                        "{want:?}"
                    );
                }
            }
        }
        let back = read_rules(write_rules(&a.rules).as_bytes()).unwrap();
        assert_eq!(back, a.rules);
    }

    #[test]
    fn trigger_forms_cover_the_inflection_family() {
        let l = lex(NEED).expand();
        for e in l.entries() {
            assert!(trigger_forms(e).contains("needed"));
            assert_eq!(lemma_id(e), "need/VB:Require");
        }
        let md = lex("could | MD | Able | 0 | Modal-auxiliary-basic");
        assert_eq!(trigger_forms(&md.entries()[0]), BTreeSet::from(["could".to_string()]));
        let neg = lex("n't | RB | Negation | 0 | Negation-adverb");
        assert_eq!(neg.entries()[0].modality, ModalityLabel::Negation);
    }
}
