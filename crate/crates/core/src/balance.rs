//! Color class sizes and the predicates built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring, Topology};

/// Strongest balance condition a coloring satisfies.
///
/// Ordered from strongest to weakest; each level implies the ones after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceClass {
    /// All class sizes equal.
    Equinumerous,
    /// Largest and smallest class differ by at most one.
    NearEquinumerous,
    /// Every class has at least `floor(n / k)` members.
    Balanced,
    Unbalanced,
}

impl BalanceClass {
    /// `self` is at least as strong as `other`.
    pub fn at_least(self, other: BalanceClass) -> bool {
        self <= other
    }
}

impl fmt::Display for BalanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BalanceClass::Equinumerous => "equinumerous",
            BalanceClass::NearEquinumerous => "near_equinumerous",
            BalanceClass::Balanced => "balanced",
            BalanceClass::Unbalanced => "unbalanced",
        };
        f.write_str(s)
    }
}

/// Class size of every color `0..k`; unused colors report 0.
pub fn color_counts(c: &Coloring) -> Vec<usize> {
    let mut counts = vec![0; c.k()];
    for col in c.colors() {
        counts[col.index()] += 1;
    }
    counts
}

pub fn classify_balance(c: &Coloring) -> BalanceClass {
    let counts = color_counts(c);
    let min = counts.iter().copied().min().unwrap_or(0);
    let max = counts.iter().copied().max().unwrap_or(0);
    if min == max {
        BalanceClass::Equinumerous
    } else if max - min <= 1 {
        BalanceClass::NearEquinumerous
    } else if min >= c.n() / c.k() {
        BalanceClass::Balanced
    } else {
        BalanceClass::Unbalanced
    }
}

/// True when `color` never sits on two adjacent positions. On `Z_n` the
/// pair `(n - 1, 0)` counts as adjacent.
pub fn is_recessive(c: &Coloring, color: Color) -> bool {
    let cols = c.colors();
    let linear_ok = cols.windows(2).all(|w| !(w[0] == color && w[1] == color));
    match c.topology() {
        Topology::Interval => linear_ok,
        Topology::Cyclic => {
            let n = cols.len();
            linear_ok && !(n >= 2 && cols[0] == color && cols[n - 1] == color)
        }
    }
}

/// Every color is recessive (no two adjacent positions share a color).
pub fn is_proper(c: &Coloring) -> bool {
    (0..c.k()).all(|i| is_recessive(c, Color(i as u8)))
}
