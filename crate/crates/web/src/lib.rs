//! Browser bindings for the demo page in `www/`.
//!
//! Three operations, each taking and returning plain strings so the page
//! needs no glue beyond the generated module: tag a `word/POS` sentence, tag
//! a bracketed parse tree, and compute Cohen's kappa for two 0/1 rows. The
//! bundled seed lexicon and its compiled rules are built once on first use.
//!
//! The `*_text` functions hold the logic and are usable from native code;
//! the exported wrappers only convert errors into JavaScript exceptions.

use std::sync::OnceLock;

use wasm_bindgen::prelude::*;

use modtag::eval::cohen_kappa;
use modtag::lexicon::Lexicon;
use modtag::rules::{compile_ruleset, SubcatMap, TemplateCatalog};
use modtag::tagger::{render_inline, tag_string, tag_tree};
use modtag::token::parse_tagged_line;
use modtag::tree::parse_sexpr;
use modtag::Rule;

fn lexicon() -> &'static Lexicon {
    static LEX: OnceLock<Lexicon> = OnceLock::new();
    LEX.get_or_init(|| Lexicon::seed().expand())
}

fn rules() -> &'static [Rule] {
    static RULES: OnceLock<Vec<Rule>> = OnceLock::new();
    RULES.get_or_init(|| {
        compile_ruleset(lexicon(), &TemplateCatalog::bundled(), &SubcatMap::bundled())
            .map(|c| c.rules)
            .unwrap_or_default()
    })
}

/// Inline rendering of one `word/POS` sentence.
pub fn tag_sentence_text(line: &str) -> Result<String, String> {
    let tokens = parse_tagged_line(line.trim()).map_err(|e| e.to_string())?;
    Ok(render_inline(&tag_string(&tokens, lexicon()).sentence))
}

/// The flattened, tagged form of one bracketed tree.
pub fn tag_tree_text(tree: &str) -> Result<String, String> {
    let tree = parse_sexpr(tree.trim()).map_err(|e| e.to_string())?;
    Ok(tag_tree(&tree.flatten(), rules()).to_string())
}

fn bits(row: &str) -> Result<Vec<bool>, String> {
    row.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '1' => Ok(true),
            '0' => Ok(false),
            other => Err(format!("expected 0 or 1, found `{other}`")),
        })
        .collect()
}

/// Kappa with its observed and chance agreement, one per line.
pub fn kappa_text(a: &str, b: &str) -> Result<String, String> {
    let k = cohen_kappa(&bits(a)?, &bits(b)?).map_err(|e| e.to_string())?;
    let value = match k.value {
        Some(v) => format!("{v:.4}"),
        None => "undefined (chance agreement is 1)".to_string(),
    };
    Ok(format!("kappa = {value}\np_o = {:.4}\np_e = {:.4}", k.p_o, k.p_e))
}

#[wasm_bindgen(js_name = tagSentence)]
pub fn tag_sentence_js(line: &str) -> Result<String, JsValue> {
    tag_sentence_text(line).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = tagTree)]
pub fn tag_tree_js(tree: &str) -> Result<String, JsValue> {
    tag_tree_text(tree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn kappa(a: &str, b: &str) -> Result<String, JsValue> {
    kappa_text(a, b).map_err(|e| JsValue::from_str(&e))
}
