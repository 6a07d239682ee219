//! The first levels of the Anick resolution of the trivial module.
//!
//! For a reduced complete homogeneous system over `X`, with `A` the
//! quotient algebra and `M` its irreducible words:
//!
//! * `T_-1 = {e}`, `T_0 = X`, `T_1` the left-hand sides, `T_2` the tips of
//!   minimal overlaps;
//! * `P_n` is free over `A` on `T_n`, with `F_p`-basis `m.t`, `m` in `M`;
//! * `d_n : P_n -> P_(n-1)` is built from the maps `delta_n` and the
//!   lifts `i_n`.
//!
//! A basis element `m.t` is stored through its full word `mt`, which
//! determines `t` at each level and induces the order used by the lifts.

mod chains;
mod prefix;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::field::{Coeff, PrimeField};
use crate::word::Word;

pub use chains::{chains_t2, ChainSet, Overlap};
pub use prefix::{Cancellation, ComplexReport, ResolutionPrefix};

/// `m.t`, held as the full word `mt` and the index of `t` in its chain set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Basis {
    pub word: Word,
    pub chain: usize,
}

/// A finite `F_p`-combination of basis elements of one `P_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    level: i32,
    terms: BTreeMap<Basis, Coeff>,
}

impl ModuleElement {
    pub fn zero(level: i32) -> Self {
        ModuleElement {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(level: i32, b: Basis) -> Self {
        let mut e = ModuleElement::zero(level);
        e.terms.insert(b, 1);
        e
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Basis, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &Basis) -> Coeff {
        self.terms.get(b).copied().unwrap_or(0)
    }

    /// Largest basis element under `m.t -> mt`, with its coefficient.
    pub fn leading(&self) -> Option<(&Basis, Coeff)> {
        self.terms.iter().next_back().map(|(b, &c)| (b, c))
    }

    pub fn add_term(&mut self, field: &PrimeField, b: Basis, c: Coeff) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, field: &PrimeField, c: Coeff, other: &ModuleElement) {
        debug_assert_eq!(self.level, other.level);
        for (b, &x) in &other.terms {
            self.add_term(field, b.clone(), field.mul(c, x));
        }
    }

    pub(crate) fn retain(&mut self, keep: impl FnMut(&Basis, &mut Coeff) -> bool) {
        self.terms.retain(keep);
    }
}
