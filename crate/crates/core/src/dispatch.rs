//! Routing an instance to the procedure its language's class calls for.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::{ComplexityVerdict, VerdictClass};
use crate::error::{Limits, Result};
use crate::finite::{
    backtracking_solve, bounded_window, decide_semilattice_in, solve_modular, Direction,
    DomainStore,
};
use crate::horn::solve_horn_instance;
use crate::instance::Instance;
use crate::language::ConstraintLanguage;
use crate::num::Int;
use crate::oracle::brute_solve;
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Horn,
    Ac,
    Modmax,
    Backtracking,
    Brute,
}

impl Method {
    /// The procedure matching a verdict class.
    pub fn for_class(class: VerdictClass) -> Method {
        match class {
            VerdictClass::HornTractable => Method::Horn,
            VerdictClass::MaxClosed | VerdictClass::MinClosed => Method::Ac,
            VerdictClass::ModMaxClosed(_) | VerdictClass::ModMinClosed(_) => Method::Modmax,
            VerdictClass::NpHard | VerdictClass::DegenerateOrUnknown => Method::Backtracking,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Horn => "horn",
            Method::Ac => "ac",
            Method::Modmax => "modmax",
            Method::Backtracking => "backtracking",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "horn" => Method::Horn,
            "ac" => Method::Ac,
            "modmax" => Method::Modmax,
            "bt" | "backtracking" => Method::Backtracking,
            "brute" => Method::Brute,
            _ => return Err(format!("unknown method `{s}`")),
        })
    }
}

/// Runs `method`. Closure direction and modulus are read off `verdict`;
/// `window` replaces the bounded window `[0, (q+1)n - 1]` by `[0, window - 1]`
/// for the window-based methods (`ac`, `backtracking`, `brute`).
pub fn solve_with<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    method: Method,
    verdict: &ComplexityVerdict<T>,
    window: Option<T>,
    limits: &Limits,
) -> Result<Solution<T>> {
    inst.validate(lang)?;
    let (lo, hi) = match window {
        Some(w) => (T::zero(), w - T::one()),
        None => bounded_window(lang, inst),
    };
    let direction = match verdict.class {
        VerdictClass::MinClosed | VerdictClass::ModMinClosed(_) => Direction::Min,
        _ => Direction::Max,
    };
    match method {
        Method::Horn => solve_horn_instance(lang, inst, limits),
        Method::Ac => decide_semilattice_in(lang, inst, direction, lo, hi, limits),
        Method::Modmax => {
            let d = match verdict.class {
                VerdictClass::ModMaxClosed(d) | VerdictClass::ModMinClosed(d) => d,
                _ => 1,
            };
            solve_modular(lang, inst, d, direction, limits)
        }
        Method::Backtracking => backtracking_solve(
            lang,
            inst,
            &DomainStore::window(inst.num_vars(), lo, hi),
            limits,
        ),
        Method::Brute => brute_solve(lang, inst, lo, hi, limits),
    }
}
