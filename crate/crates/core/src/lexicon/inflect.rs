//! English inflection for lexicon expansion.
//!
//! Regular suffix rules plus an irregular override table for verbs and a
//! short list of irregular noun plurals.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

const IRREGULAR_VERBS: &str = include_str!("../../data/irregular_verbs.txt");

/// Polysyllabic verbs with final stress that double their last consonant.
const DOUBLING: &[&str] = &[
    "admit", "commit", "compel", "control", "equip", "expel", "occur", "omit", "patrol", "permit",
    "prefer", "propel", "rebel", "refer", "regret", "submit", "transfer", "transmit", "deter",
    "incur", "confer", "defer", "infer", "excel", "acquit", "abhor", "allot", "annul",
];

const IRREGULAR_NOUNS: &[(&str, &str)] = &[
    ("child", "children"),
    ("foot", "feet"),
    ("man", "men"),
    ("mouse", "mice"),
    ("person", "people"),
    ("tooth", "teeth"),
    ("woman", "women"),
    ("criterion", "criteria"),
    ("analysis", "analyses"),
    ("crisis", "crises"),
    ("hypothesis", "hypotheses"),
    ("thesis", "theses"),
];

struct Irregular {
    past: String,
    participle: String,
}

fn irregular_table() -> &'static HashMap<String, Irregular> {
    static TABLE: OnceLock<HashMap<String, Irregular>> = OnceLock::new();
    TABLE.get_or_init(|| {
        IRREGULAR_VERBS
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .filter_map(|l| {
                let mut parts = l.split('|').map(str::trim);
                let base = parts.next()?;
                let past = parts.next()?;
                let participle = parts.next()?;
                Some((
                    base.to_string(),
                    Irregular {
                        past: past.to_string(),
                        participle: participle.to_string(),
                    },
                ))
            })
            .collect()
    })
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn syllables(w: &str) -> usize {
    let mut count = 0;
    let mut prev_vowel = false;
    for c in w.chars() {
        let v = is_vowel(c) || c == 'y';
        if v && !prev_vowel {
            count += 1;
        }
        prev_vowel = v;
    }
    count
}

fn doubles_final_consonant(w: &str) -> bool {
    if DOUBLING.contains(&w) {
        return true;
    }
    let chars: Vec<char> = w.chars().collect();
    let n = chars.len();
    if n < 3 || syllables(w) != 1 {
        return false;
    }
    let (a, b, c) = (chars[n - 3], chars[n - 2], chars[n - 1]);
    !is_vowel(a) && is_vowel(b) && !is_vowel(c) && !matches!(c, 'w' | 'x' | 'y')
}

fn ends_consonant_y(w: &str) -> bool {
    let mut rev = w.chars().rev();
    matches!((rev.next(), rev.next()), (Some('y'), Some(p)) if !is_vowel(p))
}

fn sibilant_plural(w: &str) -> bool {
    ["s", "x", "z", "ch", "sh"].iter().any(|s| w.ends_with(s))
}

fn third_singular(w: &str) -> String {
    match w {
        "be" => "is".into(),
        "have" => "has".into(),
        _ if ends_consonant_y(w) => format!("{}ies", &w[..w.len() - 1]),
        _ if sibilant_plural(w) || w.ends_with('o') => format!("{w}es"),
        _ => format!("{w}s"),
    }
}

fn regular_past(w: &str) -> String {
    if w.ends_with('e') {
        format!("{w}d")
    } else if ends_consonant_y(w) {
        format!("{}ied", &w[..w.len() - 1])
    } else if doubles_final_consonant(w) {
        format!("{w}{}ed", w.chars().last().unwrap())
    } else {
        format!("{w}ed")
    }
}

fn gerund(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("ie") {
        format!("{stem}ying")
    } else if w.ends_with('e') && w != "be" && !["ee", "ye", "oe"].iter().any(|s| w.ends_with(s)) {
        format!("{}ing", &w[..w.len() - 1])
    } else if doubles_final_consonant(w) {
        format!("{w}{}ing", w.chars().last().unwrap())
    } else {
        format!("{w}ing")
    }
}

fn plural(w: &str) -> String {
    if let Some((_, p)) = IRREGULAR_NOUNS.iter().find(|(s, _)| *s == w) {
        return (*p).to_string();
    }
    if ends_consonant_y(w) {
        format!("{}ies", &w[..w.len() - 1])
    } else if sibilant_plural(w) {
        format!("{w}es")
    } else {
        format!("{w}s")
    }
}

/// Every inflected form of a base verb or noun paired with its Penn tag.
///
/// Verbs give `VB`, `VBP`, `VBZ`, `VBD`, `VBG` and `VBN` forms; nouns give
/// `NN` and `NNS`. Any other tag yields only the lemma under that tag.
pub fn tagged_forms(lemma: &str, pos: &str) -> Vec<(String, String)> {
    let w = lemma.to_lowercase();
    let pair = |f: String, t: &str| (f, t.to_string());
    match pos {
        "VB" if w == "be" => vec![
            pair("be".into(), "VB"),
            pair("am".into(), "VBP"),
            pair("are".into(), "VBP"),
            pair("is".into(), "VBZ"),
            pair("was".into(), "VBD"),
            pair("were".into(), "VBD"),
            pair("being".into(), "VBG"),
            pair("been".into(), "VBN"),
        ],
        "VB" => {
            let (past, participle) = match irregular_table().get(&w) {
                Some(irr) => (irr.past.clone(), irr.participle.clone()),
                None => {
                    let p = regular_past(&w);
                    (p.clone(), p)
                }
            };
            vec![
                pair(w.clone(), "VB"),
                pair(w.clone(), "VBP"),
                pair(third_singular(&w), "VBZ"),
                pair(past, "VBD"),
                pair(gerund(&w), "VBG"),
                pair(participle, "VBN"),
            ]
        }
        "NN" => vec![pair(w.clone(), "NN"), pair(plural(&w), "NNS")],
        _ => vec![(lemma.to_string(), pos.to_string())],
    }
}

/// The set of surface forms of a lemma.
pub fn inflect_lemma(lemma: &str, pos: &str) -> BTreeSet<String> {
    tagged_forms(lemma, pos).into_iter().map(|(f, _)| f).collect()
}
