//! Sentence-level agreement between two taggers and precision against gold.
//!
//! Both reduce tags to `(label, role)` pairs. Composed Not- tags are split
//! into their positive form plus a negation target first, so a token tagged
//! `TargNOTAble` and one tagged `TargAble TargNegation` reduce identically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::modality::{ModalityLabel, ModalityTag, Role};
use crate::tagger::{StandoffSentence, TaggedSentence};
use crate::tree::ParseTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("vectors differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("kappa needs at least one observation")]
    Empty,
    #[error("sentence ids differ; only in first: {only_a:?}; only in second: {only_b:?}")]
    IdMismatch { only_a: Vec<usize>, only_b: Vec<usize> },
}

/// The `(label, role)` pairs present in one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SentenceAnnotation {
    pub sentence_id: usize,
    pub labels: BTreeSet<(ModalityLabel, Role)>,
}

fn normalized(tags: impl IntoIterator<Item = ModalityTag>) -> impl Iterator<Item = ModalityTag> {
    tags.into_iter().flat_map(ModalityTag::decompose)
}

impl SentenceAnnotation {
    pub fn from_tags(sentence_id: usize, tags: impl IntoIterator<Item = ModalityTag>) -> Self {
        SentenceAnnotation {
            sentence_id,
            labels: normalized(tags).map(|t| (t.label, t.role)).collect(),
        }
    }

    pub fn from_standoff(s: &StandoffSentence) -> Self {
        Self::from_tags(s.id, s.tags.iter().map(|(_, t, _)| *t))
    }
}

/// Anything carrying tags that can be reduced to an annotation.
pub trait Annotated {
    fn all_tags(&self) -> Vec<ModalityTag>;
}

impl Annotated for TaggedSentence {
    fn all_tags(&self) -> Vec<ModalityTag> {
        self.tokens.iter().flat_map(|t| t.tags.iter().copied()).collect()
    }
}

impl Annotated for ParseTree {
    fn all_tags(&self) -> Vec<ModalityTag> {
        self.yield_tags().into_iter().flatten().collect()
    }
}

pub fn extract_annotation(sentence_id: usize, tagged: &impl Annotated) -> SentenceAnnotation {
    SentenceAnnotation::from_tags(sentence_id, tagged.all_tags())
}

/// Cohen's kappa with its ingredients. `value` is `None` when chance
/// agreement is 1 and the statistic is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa {
    pub value: Option<f64>,
    pub p_o: f64,
    pub p_e: f64,
}

/// Two-by-two contingency counts for a pair of boolean raters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Contingency {
    pub both_yes: usize,
    pub both_no: usize,
    pub only_a: usize,
    pub only_b: usize,
}

impl Contingency {
    pub fn count(a: &[bool], b: &[bool]) -> Result<Contingency, EvalError> {
        if a.len() != b.len() {
            return Err(EvalError::LengthMismatch(a.len(), b.len()));
        }
        let mut c = Contingency::default();
        for (&x, &y) in a.iter().zip(b) {
            match (x, y) {
                (true, true) => c.both_yes += 1,
                (false, false) => c.both_no += 1,
                (true, false) => c.only_a += 1,
                (false, true) => c.only_b += 1,
            }
        }
        Ok(c)
    }

    pub fn total(&self) -> usize {
        self.both_yes + self.both_no + self.only_a + self.only_b
    }

    pub fn kappa(&self) -> Result<Kappa, EvalError> {
        let n = self.total();
        if n == 0 {
            return Err(EvalError::Empty);
        }
        let n = n as f64;
        let p_o = (self.both_yes + self.both_no) as f64 / n;
        let a_yes = (self.both_yes + self.only_a) as f64 / n;
        let b_yes = (self.both_yes + self.only_b) as f64 / n;
        let p_e = a_yes * b_yes + (1.0 - a_yes) * (1.0 - b_yes);
        // p_e is exactly 1 only when both raters are constant and agree
        let degenerate = (self.both_yes == 0 || self.both_no == 0) && self.only_a == 0 && self.only_b == 0;
        let value = (!degenerate).then(|| (p_o - p_e) / (1.0 - p_e));
        Ok(Kappa { value, p_o, p_e })
    }
}

pub fn cohen_kappa(a: &[bool], b: &[bool]) -> Result<Kappa, EvalError> {
    Contingency::count(a, b)?.kappa()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelAgreement {
    pub label: ModalityLabel,
    pub role: Role,
    pub counts: Contingency,
    pub kappa: Kappa,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub sentences: usize,
    pub labels: Vec<LabelAgreement>,
    /// Mean of the defined trigger kappas; `None` if there are none.
    pub trigger_kappa: Option<f64>,
    pub target_kappa: Option<f64>,
}

fn check_ids(a: &[usize], b: &[usize]) -> Result<(), EvalError> {
    let sa: BTreeSet<usize> = a.iter().copied().collect();
    let sb: BTreeSet<usize> = b.iter().copied().collect();
    if sa == sb && sa.len() == a.len() && sb.len() == b.len() {
        return Ok(());
    }
    Err(EvalError::IdMismatch {
        only_a: sa.difference(&sb).copied().collect(),
        only_b: sb.difference(&sa).copied().collect(),
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per-label kappa over sentences, for every `(label, role)` either side
/// uses, and the macro average per role.
pub fn agreement_report(a: &[SentenceAnnotation], b: &[SentenceAnnotation]) -> Result<AgreementReport, EvalError> {
    let ids_a: Vec<usize> = a.iter().map(|s| s.sentence_id).collect();
    let ids_b: Vec<usize> = b.iter().map(|s| s.sentence_id).collect();
    check_ids(&ids_a, &ids_b)?;
    let b_by_id: BTreeMap<usize, &SentenceAnnotation> = b.iter().map(|s| (s.sentence_id, s)).collect();
    let mut a_sorted: Vec<&SentenceAnnotation> = a.iter().collect();
    a_sorted.sort_by_key(|s| s.sentence_id);
    let pairs: Vec<(&SentenceAnnotation, &SentenceAnnotation)> =
        a_sorted.iter().map(|s| (*s, b_by_id[&s.sentence_id])).collect();

    let observed: BTreeSet<(ModalityLabel, Role)> = a.iter().chain(b).flat_map(|s| s.labels.iter().copied()).collect();
    let mut order: Vec<(ModalityLabel, Role)> = observed.into_iter().collect();
    order.sort_by_key(|&(l, r)| (r, ModalityLabel::ALL.iter().position(|x| *x == l)));

    let mut labels = Vec::new();
    for (label, role) in order {
        let va: Vec<bool> = pairs.iter().map(|(x, _)| x.labels.contains(&(label, role))).collect();
        let vb: Vec<bool> = pairs.iter().map(|(_, y)| y.labels.contains(&(label, role))).collect();
        let counts = Contingency::count(&va, &vb)?;
        labels.push(LabelAgreement {
            label,
            role,
            counts,
            kappa: counts.kappa()?,
        });
    }
    let avg = |role: Role| mean(labels.iter().filter(|l| l.role == role).filter_map(|l| l.kappa.value));
    Ok(AgreementReport {
        sentences: pairs.len(),
        trigger_kappa: avg(Role::Trigger),
        target_kappa: avg(Role::Target),
        labels,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |v| format!("{v:.4}"))
}

impl AgreementReport {
    /// Machine-readable `key=value` lines.
    pub fn key_values(&self) -> String {
        let mut out = format!("sentences={}\n", self.sentences);
        for l in &self.labels {
            let key = ModalityTag::new(l.role, l.label);
            out.push_str(&format!(
                "{key}.kappa={}\n{key}.both_yes={}\n{key}.both_no={}\n{key}.only_a={}\n{key}.only_b={}\n",
                fmt_opt(l.kappa.value),
                l.counts.both_yes,
                l.counts.both_no,
                l.counts.only_a,
                l.counts.only_b
            ));
        }
        out.push_str(&format!("trigger_kappa={}\n", fmt_opt(self.trigger_kappa)));
        out.push_str(&format!("target_kappa={}\n", fmt_opt(self.target_kappa)));
        out
    }
}

impl fmt::Display for AgreementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sentences: {}", self.sentences)?;
        writeln!(
            f,
            "{:<20} {:>10} {:>8} {:>8} {:>8} {:>8}",
            "tag", "kappa", "yes/yes", "no/no", "only A", "only B"
        )?;
        for l in &self.labels {
            writeln!(
                f,
                "{:<20} {:>10} {:>8} {:>8} {:>8} {:>8}",
                ModalityTag::new(l.role, l.label).to_string(),
                fmt_opt(l.kappa.value),
                l.counts.both_yes,
                l.counts.both_no,
                l.counts.only_a,
                l.counts.only_b
            )?;
        }
        writeln!(f, "trigger kappa (macro): {}", fmt_opt(self.trigger_kappa))?;
        write!(f, "target kappa (macro): {}", fmt_opt(self.target_kappa))
    }
}

/// Tags of one sentence with their token positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenAnnotation {
    pub sentence_id: usize,
    pub tags: Vec<(usize, ModalityTag)>,
}

impl TokenAnnotation {
    pub fn from_standoff(s: &StandoffSentence) -> Self {
        TokenAnnotation {
            sentence_id: s.id,
            tags: s.tags.iter().map(|(i, t, _)| (*i, *t)).collect(),
        }
    }

    /// Normalized `(token, label, role)` triples, duplicates removed.
    fn normalized(&self) -> BTreeSet<(usize, ModalityLabel, Role)> {
        self.tags
            .iter()
            .flat_map(|&(i, t)| t.decompose().into_iter().map(move |d| (i, d.label, d.role)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Correct,
    Spurious,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagVerdict {
    pub sentence_id: usize,
    pub token: usize,
    pub label: ModalityLabel,
    pub role: Role,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelPrecision {
    pub label: ModalityLabel,
    pub correct: usize,
    pub emitted: usize,
    pub precision: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldComparison {
    pub verdicts: Vec<TagVerdict>,
    pub correct: usize,
    pub emitted: usize,
    /// `None` when nothing was emitted.
    pub precision: Option<f64>,
    pub per_label: Vec<LabelPrecision>,
}

/// Precision of emitted tags: a tag is correct when gold has the same
/// label and role on the same token.
pub fn precision_report(emitted: &[TokenAnnotation], gold: &[TokenAnnotation]) -> Result<GoldComparison, EvalError> {
    let ids_e: Vec<usize> = emitted.iter().map(|s| s.sentence_id).collect();
    let ids_g: Vec<usize> = gold.iter().map(|s| s.sentence_id).collect();
    check_ids(&ids_e, &ids_g)?;
    let gold_by_id: BTreeMap<usize, BTreeSet<(usize, ModalityLabel, Role)>> =
        gold.iter().map(|s| (s.sentence_id, s.normalized())).collect();
    let mut sorted: Vec<&TokenAnnotation> = emitted.iter().collect();
    sorted.sort_by_key(|s| s.sentence_id);
    let mut verdicts = Vec::new();
    for s in sorted {
        let g = &gold_by_id[&s.sentence_id];
        for (token, label, role) in s.normalized() {
            let verdict = if g.contains(&(token, label, role)) {
                Verdict::Correct
            } else {
                Verdict::Spurious
            };
            verdicts.push(TagVerdict {
                sentence_id: s.sentence_id,
                token,
                label,
                role,
                verdict,
            });
        }
    }
    let ratio = |c: usize, n: usize| (n > 0).then(|| c as f64 / n as f64);
    let correct = verdicts.iter().filter(|v| v.verdict == Verdict::Correct).count();
    let per_label = ModalityLabel::ALL
        .iter()
        .filter_map(|&label| {
            let of: Vec<&TagVerdict> = verdicts.iter().filter(|v| v.label == label).collect();
            if of.is_empty() {
                return None;
            }
            let c = of.iter().filter(|v| v.verdict == Verdict::Correct).count();
            Some(LabelPrecision {
                label,
                correct: c,
                emitted: of.len(),
                precision: ratio(c, of.len()),
            })
        })
        .collect();
    Ok(GoldComparison {
        correct,
        emitted: verdicts.len(),
        precision: ratio(correct, verdicts.len()),
        per_label,
        verdicts,
    })
}

impl GoldComparison {
    pub fn key_values(&self) -> String {
        let mut out = format!(
            "emitted={}\ncorrect={}\nprecision={}\n",
            self.emitted,
            self.correct,
            fmt_opt(self.precision)
        );
        for l in &self.per_label {
            out.push_str(&format!(
                "{}.emitted={}\n{}.correct={}\n{}.precision={}\n",
                l.label,
                l.emitted,
                l.label,
                l.correct,
                l.label,
                fmt_opt(l.precision)
            ));
        }
        out
    }
}

impl fmt::Display for GoldComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<12} {:>8} {:>8} {:>10}", "label", "correct", "emitted", "precision")?;
        for l in &self.per_label {
            writeln!(
                f,
                "{:<12} {:>8} {:>8} {:>10}",
                l.label.to_string(),
                l.correct,
                l.emitted,
                fmt_opt(l.precision)
            )?;
        }
        write!(
            f,
            "{:<12} {:>8} {:>8} {:>10}",
            "overall",
            self.correct,
            self.emitted,
            fmt_opt(self.precision)
        )
    }
}
