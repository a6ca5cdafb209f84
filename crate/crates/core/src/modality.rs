//! Modality taxonomy, annotation menu, negation algebra and specificity
//! ordering.
//!
//! Tags attached to tokens and tree nodes are [`ModalityTag`] values. Their
//! rendered names (`TrigRequire`, `TargNOTAble`, `TrigNegation`, ...) are the
//! wire format shared by every input and output format in the crate.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalityError {
    #[error("modality {0} is already negated; double outer negation is undefined")]
    AlreadyNegated(MenuModality),
    #[error("cannot pick the most specific modality of an empty set")]
    EmptySet,
    #[error("unknown modality name `{0}`")]
    UnknownModality(String),
    #[error("unknown tag name `{0}`")]
    UnknownTag(String),
}

/// The eight modalities of the taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoreModality {
    Requirement,
    Permissive,
    Success,
    Effort,
    Intention,
    Ability,
    Want,
    Belief,
}

impl CoreModality {
    pub const ALL: [CoreModality; 8] = [
        CoreModality::Requirement,
        CoreModality::Permissive,
        CoreModality::Success,
        CoreModality::Effort,
        CoreModality::Intention,
        CoreModality::Ability,
        CoreModality::Want,
        CoreModality::Belief,
    ];
}

/// The thirteen annotation menu choices, in menu order.
///
/// The derived `Ord` follows menu order, which is also the specificity order
/// used by [`most_specific`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MenuModality {
    Require,
    Permit,
    Succeed,
    NotSucceed,
    Try,
    NotTry,
    Intend,
    NotIntend,
    Able,
    NotAble,
    Want,
    FirmBelief,
    Belief,
}

impl MenuModality {
    pub const ALL: [MenuModality; 13] = [
        MenuModality::Require,
        MenuModality::Permit,
        MenuModality::Succeed,
        MenuModality::NotSucceed,
        MenuModality::Try,
        MenuModality::NotTry,
        MenuModality::Intend,
        MenuModality::NotIntend,
        MenuModality::Able,
        MenuModality::NotAble,
        MenuModality::Want,
        MenuModality::FirmBelief,
        MenuModality::Belief,
    ];

    /// Name used inside tag names and lexicon files.
    pub fn name(self) -> &'static str {
        match self {
            MenuModality::Require => "Require",
            MenuModality::Permit => "Permit",
            MenuModality::Succeed => "Succeed",
            MenuModality::NotSucceed => "NOTSucceed",
            MenuModality::Try => "Try",
            MenuModality::NotTry => "NOTTry",
            MenuModality::Intend => "Intend",
            MenuModality::NotIntend => "NOTIntend",
            MenuModality::Able => "Able",
            MenuModality::NotAble => "NOTAble",
            MenuModality::Want => "Want",
            MenuModality::FirmBelief => "FirmBelief",
            MenuModality::Belief => "Belief",
        }
    }

    /// Position in the menu, 0 for `Require` through 12 for `Belief`.
    pub fn menu_index(self) -> usize {
        self as usize
    }

    pub fn is_negated(self) -> bool {
        matches!(
            self,
            MenuModality::NotSucceed
                | MenuModality::NotTry
                | MenuModality::NotIntend
                | MenuModality::NotAble
        )
    }

    /// The positive form of a Not- modality; positive forms map to themselves.
    pub fn positive(self) -> MenuModality {
        match self {
            MenuModality::NotSucceed => MenuModality::Succeed,
            MenuModality::NotTry => MenuModality::Try,
            MenuModality::NotIntend => MenuModality::Intend,
            MenuModality::NotAble => MenuModality::Able,
            m => m,
        }
    }

    /// The Not- counterpart, if the menu has one.
    pub fn not_form(self) -> Option<MenuModality> {
        match self {
            MenuModality::Succeed => Some(MenuModality::NotSucceed),
            MenuModality::Try => Some(MenuModality::NotTry),
            MenuModality::Intend => Some(MenuModality::NotIntend),
            MenuModality::Able => Some(MenuModality::NotAble),
            _ => None,
        }
    }

    pub fn core(self) -> CoreModality {
        match self.positive() {
            MenuModality::Require => CoreModality::Requirement,
            MenuModality::Permit => CoreModality::Permissive,
            MenuModality::Succeed => CoreModality::Success,
            MenuModality::Try => CoreModality::Effort,
            MenuModality::Intend => CoreModality::Intention,
            MenuModality::Able => CoreModality::Ability,
            MenuModality::Want => CoreModality::Want,
            _ => CoreModality::Belief,
        }
    }
}

impl fmt::Display for MenuModality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MenuModality {
    type Err = ModalityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MenuModality::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| ModalityError::UnknownModality(s.to_string()))
    }
}

/// Polarity of the proposition inside the modality's scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TargetPolarity {
    #[default]
    True,
    False,
}

impl TargetPolarity {
    pub fn flipped(self) -> TargetPolarity {
        match self {
            TargetPolarity::True => TargetPolarity::False,
            TargetPolarity::False => TargetPolarity::True,
        }
    }
}

/// A full menu selection: the modality plus the polarity of its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MenuChoice {
    pub modality: MenuModality,
    pub polarity: TargetPolarity,
}

impl MenuChoice {
    pub fn new(modality: MenuModality) -> Self {
        MenuChoice {
            modality,
            polarity: TargetPolarity::True,
        }
    }

    /// Apply outer negation, folding any duality flip into the polarity.
    pub fn negate(self) -> Result<MenuChoice, ModalityError> {
        let (modality, flip) = negate_modality(self.modality)?;
        let polarity = if flip {
            self.polarity.flipped()
        } else {
            self.polarity
        };
        Ok(MenuChoice { modality, polarity })
    }
}

/// Outer negation of a positive menu modality.
///
/// Returns the resulting modality and whether the target polarity flips.
/// Require and Permit are duals; Want and both beliefs are transparent.
pub fn negate_modality(m: MenuModality) -> Result<(MenuModality, bool), ModalityError> {
    if m.is_negated() {
        return Err(ModalityError::AlreadyNegated(m));
    }
    Ok(match m {
        MenuModality::Require => (MenuModality::Permit, true),
        MenuModality::Permit => (MenuModality::Require, true),
        MenuModality::Want | MenuModality::FirmBelief | MenuModality::Belief => (m, false),
        other => (other.not_form().expect("negatable modality"), false),
    })
}

/// The first applicable modality in menu order.
pub fn most_specific<I>(modalities: I) -> Result<MenuModality, ModalityError>
where
    I: IntoIterator<Item = MenuModality>,
{
    let mut best: Option<MenuModality> = None;
    for m in modalities {
        if m.is_negated() {
            return Err(ModalityError::AlreadyNegated(m));
        }
        best = Some(match best {
            Some(b) if b <= m => b,
            _ => m,
        });
    }
    best.ok_or(ModalityError::EmptySet)
}

/// The two entailment chains, most specific first. Belief stands alone.
pub const ENTAILMENT_GROUPS: [&[MenuModality]; 2] = [
    &[MenuModality::Require, MenuModality::Permit],
    &[
        MenuModality::Succeed,
        MenuModality::Try,
        MenuModality::Intend,
        MenuModality::Able,
        MenuModality::Want,
    ],
];

/// Whether `a` entails `b`: both sit in the same chain and `a` comes first.
pub fn entails(a: MenuModality, b: MenuModality) -> bool {
    ENTAILMENT_GROUPS.iter().any(|group| {
        match (
            group.iter().position(|&m| m == a),
            group.iter().position(|&m| m == b),
        ) {
            (Some(i), Some(j)) => i < j,
            _ => false,
        }
    })
}

/// Index of the entailment chain containing `m`, if any.
pub fn entailment_group(m: MenuModality) -> Option<usize> {
    ENTAILMENT_GROUPS.iter().position(|g| g.contains(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Trigger,
    Target,
}

impl Role {
    pub fn prefix(self) -> &'static str {
        match self {
            Role::Trigger => "Trig",
            Role::Target => "Targ",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Trigger => "Trigger",
            Role::Target => "Target",
        })
    }
}

/// A menu modality or the negation pseudo-modality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalityLabel {
    Menu(MenuModality),
    Negation,
}

impl ModalityLabel {
    pub const ALL: [ModalityLabel; 14] = [
        ModalityLabel::Menu(MenuModality::Require),
        ModalityLabel::Menu(MenuModality::Permit),
        ModalityLabel::Menu(MenuModality::Succeed),
        ModalityLabel::Menu(MenuModality::NotSucceed),
        ModalityLabel::Menu(MenuModality::Try),
        ModalityLabel::Menu(MenuModality::NotTry),
        ModalityLabel::Menu(MenuModality::Intend),
        ModalityLabel::Menu(MenuModality::NotIntend),
        ModalityLabel::Menu(MenuModality::Able),
        ModalityLabel::Menu(MenuModality::NotAble),
        ModalityLabel::Menu(MenuModality::Want),
        ModalityLabel::Menu(MenuModality::FirmBelief),
        ModalityLabel::Menu(MenuModality::Belief),
        ModalityLabel::Negation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModalityLabel::Menu(m) => m.name(),
            ModalityLabel::Negation => "Negation",
        }
    }

    pub fn menu(self) -> Option<MenuModality> {
        match self {
            ModalityLabel::Menu(m) => Some(m),
            ModalityLabel::Negation => None,
        }
    }
}

impl From<MenuModality> for ModalityLabel {
    fn from(m: MenuModality) -> Self {
        ModalityLabel::Menu(m)
    }
}

impl fmt::Display for ModalityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModalityLabel {
    type Err = ModalityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Negation" {
            Ok(ModalityLabel::Negation)
        } else {
            s.parse().map(ModalityLabel::Menu)
        }
    }
}

/// A role/modality pair attached to a token or preterminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalityTag {
    pub role: Role,
    pub label: ModalityLabel,
}

impl ModalityTag {
    pub fn new(role: Role, label: impl Into<ModalityLabel>) -> Self {
        ModalityTag {
            role,
            label: label.into(),
        }
    }

    pub fn trigger(label: impl Into<ModalityLabel>) -> Self {
        Self::new(Role::Trigger, label)
    }

    pub fn target(label: impl Into<ModalityLabel>) -> Self {
        Self::new(Role::Target, label)
    }

    /// Whether `s` is a registered tag name.
    pub fn is_tag_name(s: &str) -> bool {
        s.parse::<ModalityTag>().is_ok()
    }

    /// Every registered tag: both roles crossed with every label.
    pub fn registry() -> impl Iterator<Item = ModalityTag> {
        [Role::Trigger, Role::Target]
            .into_iter()
            .flat_map(|r| ModalityLabel::ALL.into_iter().map(move |l| ModalityTag::new(r, l)))
    }

    /// Split a composed Not- tag into its positive tag and a negation target.
    ///
    /// `TargNOTAble` becomes `[TargAble, TargNegation]`; anything else is
    /// returned unchanged.
    pub fn decompose(self) -> Vec<ModalityTag> {
        match self.label {
            ModalityLabel::Menu(m) if m.is_negated() => vec![
                ModalityTag::new(self.role, m.positive()),
                ModalityTag::target(ModalityLabel::Negation),
            ],
            _ => vec![self],
        }
    }
}

impl fmt::Display for ModalityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role.prefix(), self.label.name())
    }
}

impl FromStr for ModalityTag {
    type Err = ModalityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ModalityError::UnknownTag(s.to_string());
        let (role, rest) = if let Some(rest) = s.strip_prefix("Trig") {
            (Role::Trigger, rest)
        } else if let Some(rest) = s.strip_prefix("Targ") {
            (Role::Target, rest)
        } else {
            return Err(unknown());
        };
        let label = rest.parse().map_err(|_| unknown())?;
        Ok(ModalityTag { role, label })
    }
}

/// How negation on a tagged token is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// Fold the negation into one name, `TargNOTAble`.
    Inline,
    /// Keep separate stacked names, `TargAble TargNegation`.
    Tree,
}

/// Render a tag, optionally under negation.
///
/// Stacked names are space separated, the way they appear in a preterminal.
pub fn render_tag(tag: ModalityTag, negated: bool, style: RenderStyle) -> String {
    if !negated {
        return tag.to_string();
    }
    match (style, tag.label) {
        (RenderStyle::Inline, ModalityLabel::Menu(m)) if !m.is_negated() => {
            let (composed, _) = negate_modality(m).expect("positive modality");
            ModalityTag::new(tag.role, composed).to_string()
        }
        (_, ModalityLabel::Negation) => tag.to_string(),
        _ => format!("{} {}", tag, ModalityTag::new(tag.role, ModalityLabel::Negation)),
    }
}
