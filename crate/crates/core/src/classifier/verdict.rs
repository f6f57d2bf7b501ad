use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::language::ConstraintLanguage;
use crate::num::Int;

/// Complexity class assigned to a constraint language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum VerdictClass {
    HornTractable,
    MaxClosed,
    MinClosed,
    ModMaxClosed(u32),
    ModMinClosed(u32),
    NpHard,
    DegenerateOrUnknown,
}

impl VerdictClass {
    pub fn is_tractable(self) -> bool {
        !matches!(
            self,
            VerdictClass::NpHard | VerdictClass::DegenerateOrUnknown
        )
    }
}

impl fmt::Display for VerdictClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictClass::HornTractable => write!(f, "HORN_TRACTABLE"),
            VerdictClass::MaxClosed => write!(f, "MAX_CLOSED"),
            VerdictClass::MinClosed => write!(f, "MIN_CLOSED"),
            VerdictClass::ModMaxClosed(d) => write!(f, "MODMAX_CLOSED({d})"),
            VerdictClass::ModMinClosed(d) => write!(f, "MODMIN_CLOSED({d})"),
            VerdictClass::NpHard => write!(f, "NP_HARD"),
            VerdictClass::DegenerateOrUnknown => write!(f, "DEGENERATE_OR_UNKNOWN"),
        }
    }
}

impl FromStr for VerdictClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let modular = |prefix: &str| -> Option<u32> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        Ok(match s {
            "HORN_TRACTABLE" => VerdictClass::HornTractable,
            "MAX_CLOSED" => VerdictClass::MaxClosed,
            "MIN_CLOSED" => VerdictClass::MinClosed,
            "NP_HARD" => VerdictClass::NpHard,
            "DEGENERATE_OR_UNKNOWN" => VerdictClass::DegenerateOrUnknown,
            _ => {
                if let Some(d) = modular("MODMAX_CLOSED(") {
                    VerdictClass::ModMaxClosed(d)
                } else if let Some(d) = modular("MODMIN_CLOSED(") {
                    VerdictClass::ModMinClosed(d)
                } else {
                    return Err(format!("unknown verdict class `{s}`"));
                }
            }
        })
    }
}

impl From<VerdictClass> for String {
    fn from(c: VerdictClass) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for VerdictClass {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

/// Two tuples of a relation whose combination under `operation` leaves it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness<T> {
    pub relation: String,
    pub operation: String,
    pub first: Vec<T>,
    pub second: Vec<T>,
    pub image: Vec<T>,
}

impl<T: Int> Witness<T> {
    /// Both tuples lie in the relation and the image does not.
    pub fn revalidate(&self, lang: &ConstraintLanguage<T>) -> bool {
        let Some(r) = lang.get(&self.relation) else {
            return false;
        };
        let fits = |t: &[T]| t.len() == r.arity();
        fits(&self.first)
            && fits(&self.second)
            && fits(&self.image)
            && r.contains(&self.first)
            && r.contains(&self.second)
            && !r.contains(&self.image)
    }
}

/// Result of classifying a language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityVerdict<T> {
    pub class: VerdictClass,
    /// Name of the shortcut rule that decided the class, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default)]
    pub certificate: Vec<Witness<T>>,
    /// Checks that passed on the way to a tractable class.
    #[serde(default)]
    pub checks: Vec<String>,
    /// Decision trail.
    #[serde(default)]
    pub notes: Vec<String>,
}

impl<T> ComplexityVerdict<T> {
    pub(crate) fn new(class: VerdictClass) -> Self {
        ComplexityVerdict {
            class,
            rule: None,
            certificate: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }
}

impl<T> fmt::Display for ComplexityVerdict<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(rule) = &self.rule {
            write!(f, " ({rule} rule)")?;
        }
        Ok(())
    }
}
