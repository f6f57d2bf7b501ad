use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpKind {
    Max,
    Min,
    #[serde(rename = "MODMAX")]
    ModMax,
    #[serde(rename = "MODMIN")]
    ModMin,
}

/// A binary operation on the integers, applied componentwise to tuples.
///
/// `ModMax` with modulus `d` returns `max(a, b)` when `a ≡ b (mod d)` and `a`
/// otherwise; `ModMin` is the dual. Neither is commutative for `d > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    pub kind: OpKind,
    pub modulus: u32,
}

impl Operation {
    pub const MAX: Operation = Operation {
        kind: OpKind::Max,
        modulus: 1,
    };
    pub const MIN: Operation = Operation {
        kind: OpKind::Min,
        modulus: 1,
    };

    pub fn mod_max(d: u32) -> Self {
        assert!(d >= 1, "modulus must be positive");
        Operation {
            kind: OpKind::ModMax,
            modulus: d,
        }
    }

    pub fn mod_min(d: u32) -> Self {
        assert!(d >= 1, "modulus must be positive");
        Operation {
            kind: OpKind::ModMin,
            modulus: d,
        }
    }

    /// The modulus that residues must be preserved under (1 for plain max/min).
    pub fn effective_modulus(&self) -> u32 {
        match self.kind {
            OpKind::Max | OpKind::Min => 1,
            OpKind::ModMax | OpKind::ModMin => self.modulus,
        }
    }

    /// True for the max-like operations.
    pub fn is_max_like(&self) -> bool {
        matches!(self.kind, OpKind::Max | OpKind::ModMax)
    }

    pub fn apply<T: Int>(&self, a: T, b: T) -> T {
        match self.kind {
            OpKind::Max => a.max(b),
            OpKind::Min => a.min(b),
            OpKind::ModMax | OpKind::ModMin => {
                let d = T::from_usize(self.modulus as usize);
                if (a - b).residue(d).is_zero() {
                    if self.kind == OpKind::ModMax {
                        a.max(b)
                    } else {
                        a.min(b)
                    }
                } else {
                    a
                }
            }
        }
    }

    pub fn apply_tuple<T: Int>(&self, a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(&x, &y)| self.apply(x, y)).collect()
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OpKind::Max => write!(f, "MAX"),
            OpKind::Min => write!(f, "MIN"),
            OpKind::ModMax => write!(f, "MODMAX({})", self.modulus),
            OpKind::ModMin => write!(f, "MODMIN({})", self.modulus),
        }
    }
}
