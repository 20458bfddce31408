use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The eleven inference rules of the calculus.
///
/// The declaration order is the tie-break order used when several minimal
/// derivations exist.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleName {
    Ax,
    LNeg,
    RNeg,
    LAnd,
    RAnd,
    LOr,
    ROr1,
    ROr2,
    LImp,
    RImpA,
    RImpB,
}

impl RuleName {
    pub const ALL: [RuleName; 11] = [
        RuleName::Ax,
        RuleName::LNeg,
        RuleName::RNeg,
        RuleName::LAnd,
        RuleName::RAnd,
        RuleName::LOr,
        RuleName::ROr1,
        RuleName::ROr2,
        RuleName::LImp,
        RuleName::RImpA,
        RuleName::RImpB,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleName::Ax => 0,
            RuleName::RAnd | RuleName::LOr | RuleName::LImp => 2,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Ax => "Ax",
            RuleName::LNeg => "LNeg",
            RuleName::RNeg => "RNeg",
            RuleName::LAnd => "LAnd",
            RuleName::RAnd => "RAnd",
            RuleName::LOr => "LOr",
            RuleName::ROr1 => "ROr1",
            RuleName::ROr2 => "ROr2",
            RuleName::LImp => "LImp",
            RuleName::RImpA => "RImpA",
            RuleName::RImpB => "RImpB",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule {0}")]
pub struct UnknownRule(pub String);

impl FromStr for RuleName {
    type Err = UnknownRule;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// A rule label as written in a derivation. Labels outside the calculus
/// (`LTop`, `Wk`, ...) are representable so the checker can reject them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RuleLabel {
    Known(RuleName),
    Unknown(String),
}

impl RuleLabel {
    pub fn parse(s: &str) -> RuleLabel {
        match s.parse() {
            Ok(r) => RuleLabel::Known(r),
            Err(UnknownRule(name)) => RuleLabel::Unknown(name),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            RuleLabel::Known(r) => r.as_str(),
            RuleLabel::Unknown(s) => s,
        }
    }
}

impl From<RuleName> for RuleLabel {
    fn from(r: RuleName) -> Self {
        RuleLabel::Known(r)
    }
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which succedents `LAnd` and `LImp` may carry.
///
/// `Tennant` lets them pass an empty succedent through; `StrictTable` only
/// allows a formula there, as the rule table prints it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Tennant,
    StrictTable,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Tennant, Mode::StrictTable];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Tennant => "tennant",
            Mode::StrictTable => "strict-table",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tennant" => Ok(Mode::Tennant),
            "strict-table" => Ok(Mode::StrictTable),
            other => Err(format!("unknown mode `{other}` (expected tennant or strict-table)")),
        }
    }
}
