//! Presentations of the Kostant form `U_K(sl_n^+)` over `F_p`.
//!
//! * [`big_system`]: divided powers `e_ij^(k)` with the four families of
//!   straightening rules, truncated at an exponent bound.
//! * [`small_system`]: for `p = 2`, `n = 3`, the generators
//!   `a_k = e_12^(2^k)`, `b_k = e_23^(2^k)` and the relations `S_l`.
//! * [`conjectural_system`]: literal relation sets of the conjectural
//!   presentations; experimental.

mod big;
mod conjecture;
mod small;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;
use crate::rewriting::RewritingSystem;

pub use big::{big_system, big_system_with_order, divided_power_name};
pub use conjecture::{
    conjectural_system, conjecture_scan, permutation_set, ConjectureReport, ConjectureVariant,
};
pub use small::{
    frobenius_shift_check, small_relations, small_system, verify_small_against_big,
    RelationCheck, ShiftReport, SmallBigReport,
};

/// A root position `(i, j)`, `1 <= i < j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub i: u32,
    pub j: u32,
}

impl Position {
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i < j, "position needs i < j");
        Position { i, j }
    }

    pub fn span(self) -> u32 {
        self.j - self.i
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// All positions for `n`, smallest first: longer spans are smaller, and
/// among equal spans a larger `i` is smaller.
///
/// ```
/// # use ncgb::kostant::{default_position_order, Position};
/// let order = default_position_order(3);
/// assert_eq!(order, vec![Position::new(1, 3), Position::new(2, 3), Position::new(1, 2)]);
/// ```
pub fn default_position_order(n: u32) -> Vec<Position> {
    let mut v: Vec<Position> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Position::new(i, j)))
        .collect();
    v.sort_by(|a, b| b.span().cmp(&a.span()).then(b.i.cmp(&a.i)));
    v
}

/// Which presentation was built, with its truncation parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Big { exponent_bound: u32 },
    Small { index_bound: u32 },
    Conjectural { variant: ConjectureVariant, index_bound: u32 },
}

/// A rewriting system for (a truncation of) `U_K(sl_n^+)` with metadata.
#[derive(Debug, Clone)]
pub struct KostantPresentation {
    n: u32,
    field: PrimeField,
    flavor: Flavor,
    position_order: Vec<Position>,
    system: RewritingSystem,
}

impl KostantPresentation {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    /// Positions smallest first; empty for presentations not built from
    /// divided powers.
    pub fn position_order(&self) -> &[Position] {
        &self.position_order
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    pub fn into_system(self) -> RewritingSystem {
        self.system
    }

    /// Largest degree in which the truncated alphabet still agrees with
    /// the full algebra: the smallest omitted generator sits just above.
    pub fn safe_degree(&self) -> u32 {
        match &self.flavor {
            Flavor::Big { exponent_bound } => *exponent_bound,
            Flavor::Small { index_bound } | Flavor::Conjectural { index_bound, .. } => {
                self.p().checked_pow(index_bound + 1).map_or(u32::MAX, |g| g - 1)
            }
        }
    }

    /// Conjectural presentations are experimental: no claim is attached.
    pub fn is_experimental(&self) -> bool {
        matches!(self.flavor, Flavor::Conjectural { .. })
    }
}

/// `(p^l)^(n(n-1)/2)`: the dimension of the subalgebra spanned by ordered
/// products with every exponent below `p^l`.
pub fn pbw_dimension(n: u32, p: u32, l: u32) -> u128 {
    let positions = n * (n - 1) / 2;
    (p as u128).pow(l).pow(positions)
}

/// Number of exponent tuples `(k_ij)`, `0 <= k_ij < p^l`, with
/// `sum k_ij (j - i) = d`.
///
/// ```
/// # use ncgb::kostant::graded_pbw_dimension;
/// assert_eq!(graded_pbw_dimension(3, 2, 1, 0), 1);
/// // e_12, e_23 in degree 1; e_13, e_12 e_23 in degree 2.
/// assert_eq!(graded_pbw_dimension(3, 2, 1, 1), 2);
/// assert_eq!(graded_pbw_dimension(3, 2, 1, 2), 2);
/// ```
pub fn graded_pbw_dimension(n: u32, p: u32, l: u32, d: u32) -> u64 {
    let max_exp = (p as u64).pow(l) - 1;
    let d = d as usize;
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for pos in default_position_order(n) {
        let span = pos.span() as usize;
        let mut next = vec![0u64; d + 1];
        for (deg, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let mut k = 0u64;
            while k <= max_exp && deg + span * k as usize <= d {
                next[deg + span * k as usize] += w;
                k += 1;
            }
        }
        ways = next;
    }
    ways[d]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(pbw_dimension(3, 2, 1), 8);
        assert_eq!(pbw_dimension(3, 2, 2), 64);
        assert_eq!(pbw_dimension(4, 2, 1), 64);
        for (n, p, l) in [(3, 2, 1), (3, 2, 2), (3, 3, 1), (4, 2, 1)] {
            let total: u64 = (0..=60).map(|d| graded_pbw_dimension(n, p, l, d)).sum();
            assert_eq!(total as u128, pbw_dimension(n, p, l));
            assert_eq!(graded_pbw_dimension(n, p, l, 0), 1);
        }
    }

    #[test]
    fn order_for_small_n() {
        assert_eq!(default_position_order(2), vec![Position::new(1, 2)]);
        let o4 = default_position_order(4);
        assert_eq!(o4[0], Position::new(1, 4));
        assert_eq!(o4[5], Position::new(1, 2));
    }
}
