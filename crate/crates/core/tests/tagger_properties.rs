//! Properties of both taggers checked against brute-force oracles.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use modtag::lexicon::Lexicon;
use modtag::modality::{ModalityLabel, ModalityTag, Role};
use modtag::rules::{compile_ruleset, SubcatMap, TemplateCatalog};
use modtag::tagger::{parse_inline, render_inline, tag_string, tag_tree, AuxiliaryRegistry};
use modtag::token::Token;
use modtag::tree::ParseTree;
use modtag::Rule;
use proptest::prelude::*;

const VOCAB: &[(&str, &str)] = &[
    ("should", "MD"),
    ("can", "MD"),
    ("might", "MD"),
    ("not", "RB"),
    ("never", "RB"),
    ("n't", "RB"),
    ("need", "VB"),
    ("needs", "VBZ"),
    ("needed", "VBN"),
    ("managed", "VBD"),
    ("try", "VBP"),
    ("hoped", "VBD"),
    ("for", "IN"),
    ("hope", "VB"),
    ("able", "JJ"),
    ("ability", "NN"),
    ("be", "VB"),
    ("is", "VBZ"),
    ("been", "VBN"),
    ("have", "VBP"),
    ("did", "VBD"),
    ("to", "TO"),
    ("go", "VB"),
    ("eat", "VBP"),
    ("left", "VBD"),
    ("running", "VBG"),
    ("taken", "VBN"),
    ("that", "IN"),
    ("and", "CC"),
    ("which", "WDT"),
    (",", ","),
    ("of", "IN"),
    ("the", "DT"),
    ("house", "NN"),
    ("they", "PRP"),
    ("quickly", "RB"),
    ("Should", "MD"),
    ("NEED", "VB"),
];

fn sentences() -> impl Strategy<Value = Vec<Token>> {
    prop::collection::vec(0..VOCAB.len(), 0..18)
        .prop_map(|ix| ix.into_iter().map(|i| Token::new(VOCAB[i].0, VOCAB[i].1)).collect())
}

fn is_verb(pos: &str) -> bool {
    ["VB", "VBZ", "VBD", "VBG", "VBN", "VBP"].contains(&pos)
}

fn ends_clause(t: &Token) -> bool {
    ["CC", "WDT", "WP", "WP$", "WRB", ",", ":", ";", "."].contains(&t.pos.as_str())
        || (t.pos == "IN"
            && ["that", "because", "if", "whether", "although", "though", "while", "unless", "whereas"]
                .contains(&t.word.to_lowercase().as_str()))
}

/// Every (start, entry) whose words and POS line up, found without the
/// lexicon's index.
fn brute_matches(lex: &Lexicon, tokens: &[Token]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for start in 0..tokens.len() {
        for (e, entry) in lex.entries().iter().enumerate() {
            let n = entry.surface.len();
            if start + n > tokens.len() {
                continue;
            }
            let ok = (0..n).all(|k| {
                tokens[start + k].pos == entry.pos[k]
                    && tokens[start + k].word.to_lowercase() == entry.surface[k].to_lowercase()
            });
            if ok {
                out.push((start, e));
            }
        }
    }
    out
}

/// Leftmost non-auxiliary verb after `from` in the clause, else leftmost verb.
fn brute_target(tokens: &[Token], from: usize, negations: &BTreeSet<usize>) -> Option<usize> {
    let mut first_verb = None;
    for (i, t) in tokens.iter().enumerate().skip(from) {
        if ends_clause(t) {
            break;
        }
        if !is_verb(&t.pos) || negations.contains(&i) {
            continue;
        }
        let aux = t.pos == "MD"
            || t.pos == "TO"
            || AuxiliaryRegistry::WORDS.contains(&t.word.to_lowercase().as_str());
        if !aux {
            return Some(i);
        }
        if first_verb.is_none() {
            first_verb = Some(i);
        }
    }
    first_verb
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn string_tagger_preserves_tokens(tokens in sentences()) {
        let lex = lexicon();
        let t = tag_string(&tokens, lex);
        prop_assert_eq!(t.sentence.strip(), tokens);
    }

    #[test]
    fn every_trigger_tag_has_a_lexicon_witness(tokens in sentences()) {
        let lex = lexicon();
        let t = tag_string(&tokens, lex);
        let witnesses = brute_matches(lex, &tokens);
        for (i, tok) in t.sentence.tokens.iter().enumerate() {
            for tag in tok.tags.iter().filter(|g| g.role == Role::Trigger) {
                let found = witnesses.iter().any(|&(s, e)| {
                    let entry = &lex.entries()[e];
                    s + entry.head_index == i && entry.modality == tag.label
                });
                prop_assert!(found, "no witness for {} on token {}", tag, i);
            }
        }
        // and every match produced a record
        prop_assert_eq!(t.triggers.len(), witnesses.len());
    }

    #[test]
    fn targets_are_the_leftmost_eligible_verb(tokens in sentences()) {
        let lex = lexicon();
        let t = tag_string(&tokens, lex);
        let negations: BTreeSet<usize> = t
            .triggers
            .iter()
            .filter(|r| r.modality == ModalityLabel::Negation)
            .map(|r| r.head)
            .collect();
        for r in &t.triggers {
            prop_assert_eq!(r.target, brute_target(&tokens, r.span.end, &negations));
            if let Some(target) = r.target {
                // the target token still carries a tag for this trigger
                let tags = &t.sentence.tokens[target].tags;
                let present = tags.iter().any(|g| {
                    g.role == Role::Target
                        && (g.label == r.modality
                            || g.decompose().iter().any(|d| d.label == r.modality))
                }) || r.modality == ModalityLabel::Negation;
                prop_assert!(present);
            }
        }
    }

    #[test]
    fn inline_rendering_inverts(tokens in sentences()) {
        let lex = lexicon();
        let t = tag_string(&tokens, lex);
        let text = render_inline(&t.sentence);
        prop_assert!(!text.contains("  "));
        prop_assert_eq!(parse_inline(&text).unwrap(), t.sentence.inline_tokens());
    }
}

fn lexicon() -> &'static Lexicon {
    static LEX: OnceLock<Lexicon> = OnceLock::new();
    LEX.get_or_init(|| Lexicon::seed().expand())
}

fn compiled() -> &'static [Rule] {
    static RULES: OnceLock<Vec<Rule>> = OnceLock::new();
    RULES.get_or_init(|| {
        compile_ruleset(lexicon(), &TemplateCatalog::bundled(), &SubcatMap::bundled())
            .unwrap()
            .rules
    })
}

/// Small clause-shaped trees built from the test vocabulary.
fn trees() -> impl Strategy<Value = ParseTree> {
    let leaf = (0..VOCAB.len()).prop_map(|i| ParseTree::leaf(VOCAB[i].1, VOCAB[i].0));
    leaf.prop_recursive(3, 24, 4, |inner| {
        (
            prop::sample::select(vec!["S", "VP", "NP", "PP", "ADJP", "SBAR"]),
            prop::collection::vec(inner, 1..4),
        )
            .prop_map(|(label, kids)| ParseTree::internal(label, kids))
    })
}

fn tag_sets(tree: &ParseTree) -> Vec<BTreeSet<ModalityTag>> {
    tree.yield_tags().into_iter().map(|t| t.into_iter().collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tree_tagger_preserves_shape_and_yield(tree in trees()) {
        let rules = compiled();
        let flat = tree.flatten();
        let tagged = tag_tree(&flat, rules);
        prop_assert_eq!(tagged.strip_tags(), flat.strip_tags());
        prop_assert_eq!(tagged.yield_tokens(), tree.yield_tokens());
    }

    #[test]
    fn rule_order_changes_only_tag_order(tree in trees(), seed in any::<u64>()) {
        let rules = compiled();
        let mut shuffled = rules.to_vec();
        // deterministic Fisher-Yates driven by the generated seed
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let flat = tree.flatten();
        prop_assert_eq!(tag_sets(&tag_tree(&flat, rules)), tag_sets(&tag_tree(&flat, &shuffled)));
    }

    #[test]
    fn no_flatten_on_flat_input_is_identical(tree in trees()) {
        let rules = compiled();
        let flat = tree.flatten();
        prop_assert_eq!(tag_tree(&flat, rules), tag_tree(&flat.flatten(), rules));
    }
}
