//! Rewriting rules over the free algebra and the machinery around them:
//! reduction to normal form, critical pairs, completeness checks,
//! degree-bounded completion, interreduction, restriction to a
//! subalphabet and enumeration of irreducible words.

mod completion;
mod critical;
mod enumerate;
mod reduce;
mod restrict;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{format_terms, Polynomial, Terms};
use crate::word::{Alphabet, Word};

pub use completion::{complete, interreduce, CompletionError};
pub use critical::{
    find_critical_pairs, is_complete, pair_obstruction, CompletenessReport, CriticalPair,
    PairKind, Witness,
};
pub use enumerate::{count_irreducible_by_degree, irreducible_words, total_irreducible};
pub use reduce::{normal_form, reduce_once, NormalForm};
pub use restrict::restrict_to_subalphabet;

/// A rule `lhs -> rhs` with `lhs` deglex-above every word of `rhs`.
#[derive(Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: Polynomial,
}

impl fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            self.rhs.alphabet().display(&self.lhs),
            self.rhs
        )
    }
}

impl RewriteRule {
    /// Checks orderedness: every word of `rhs` must be strictly below `lhs`.
    pub fn new(lhs: Word, rhs: Polynomial) -> Result<Self> {
        let alphabet = rhs.alphabet().clone();
        if !alphabet.owns(&lhs) {
            return Err(Error::AlphabetMismatch);
        }
        if lhs.is_empty() {
            return Err(Error::ConstantRelation);
        }
        if let Some(w) = rhs.support().find(|w| **w >= lhs) {
            return Err(Error::Unorderable {
                lhs: alphabet.display(&lhs),
                word: alphabet.display(w),
            });
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    /// The relation `lhs - rhs` this rule encodes.
    pub fn relation(&self) -> Polynomial {
        let a = self.rhs.alphabet();
        let field = self.rhs.field();
        Polynomial::monomial(a, field, self.lhs.clone(), 1)
            .sub(&self.rhs)
            .expect("rule parts share an alphabet")
    }

    /// Whether the rule preserves the grading.
    pub fn is_homogeneous(&self) -> bool {
        self.rhs.support().all(|w| w.degree() == self.lhs.degree())
    }
}

/// The rule `lm(f) -> -(f - lt(f)) / lc(f)` given by a relation `f`.
///
/// ```
/// # use ncgb::{Alphabet, GeneratorSpec, Polynomial, PrimeField};
/// # use ncgb::rewriting::make_rule;
/// let x = Alphabet::new(vec![
///     GeneratorSpec::new("a0", 1, 0),
///     GeneratorSpec::new("b0", 1, 1),
///     GeneratorSpec::new("a1", 2, 2),
/// ]).unwrap();
/// let f2 = PrimeField::new(2).unwrap();
/// let f = Polynomial::parse(&x, f2, "a1 b0 + b0 a1 + a0 b0 a0").unwrap();
/// assert_eq!(make_rule(&f).unwrap().to_string(), "a1 b0 -> b0 a1 + a0 b0 a0");
/// ```
pub fn make_rule(f: &Polynomial) -> Result<RewriteRule> {
    let (lead, c) = f.leading_term()?;
    if lead.is_empty() {
        return Err(Error::ConstantRelation);
    }
    let field = f.field();
    let scale = field.neg(field.inv(c));
    let lead = lead.clone();
    let rhs_terms: Terms = f
        .terms()
        .iter()
        .filter(|(w, _)| **w != lead)
        .map(|(w, &k)| (w.clone(), field.mul(k, scale)))
        .collect();
    let rhs = Polynomial::from_raw(f.alphabet(), field, rhs_terms);
    RewriteRule::new(lead, rhs)
}

/// How much of the completeness property a system is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Completeness {
    Unknown,
    /// Every critical pair with tip degree at most the bound resolves.
    UpToDegree(u32),
    Complete,
}

/// An ordered collection of rewriting rules over one alphabet and field.
#[derive(Clone)]
pub struct RewritingSystem {
    alphabet: Arc<Alphabet>,
    field: PrimeField,
    rules: Vec<RewriteRule>,
    /// Rule indices keyed by the first letter of their left-hand side,
    /// in system order.
    by_first: Vec<Vec<usize>>,
    completeness: Completeness,
    reduced: bool,
}

impl fmt::Debug for RewritingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewritingSystem")
            .field("p", &self.field.characteristic())
            .field("rules", &self.rules)
            .field("completeness", &self.completeness)
            .field("reduced", &self.reduced)
            .finish()
    }
}

impl PartialEq for RewritingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.id() == other.alphabet.id()
            && self.field == other.field
            && self.rules == other.rules
    }
}

impl RewritingSystem {
    pub fn new(alphabet: &Arc<Alphabet>, field: PrimeField, rules: Vec<RewriteRule>) -> Result<Self> {
        for r in &rules {
            if r.rhs.alphabet().id() != alphabet.id() || !alphabet.owns(&r.lhs) {
                return Err(Error::AlphabetMismatch);
            }
            if r.rhs.field() != field {
                return Err(Error::FieldMismatch(
                    field.characteristic(),
                    r.rhs.field().characteristic(),
                ));
            }
        }
        let mut by_first = vec![Vec::new(); alphabet.len()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.letters()[0].index()].push(i);
        }
        Ok(RewritingSystem {
            alphabet: alphabet.clone(),
            field,
            rules,
            by_first,
            completeness: Completeness::Unknown,
            reduced: false,
        })
    }

    /// One rule per relation via [`make_rule`].
    pub fn from_relations(
        alphabet: &Arc<Alphabet>,
        field: PrimeField,
        relations: &[Polynomial],
    ) -> Result<Self> {
        let rules = relations
            .iter()
            .filter(|f| !f.is_zero())
            .map(make_rule)
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, field, rules)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn known_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn known_reduced(&self) -> bool {
        self.reduced
    }

    pub fn with_completeness(mut self, c: Completeness) -> Self {
        self.completeness = c;
        self
    }

    pub fn with_reduced(mut self, reduced: bool) -> Self {
        self.reduced = reduced;
        self
    }

    /// Left-hand sides in system order.
    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.rules.iter().map(|r| &r.lhs)
    }

    pub fn max_lhs_degree(&self) -> u32 {
        self.rules.iter().map(|r| r.lhs.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(RewriteRule::is_homogeneous)
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.alphabet, self.field, text)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn display_word(&self, w: &Word) -> String {
        self.alphabet.display(w)
    }

    pub fn display_terms(&self, t: &Terms) -> String {
        format_terms(&self.alphabet, &self.field, t)
    }

    /// Leftmost occurrence of any left-hand side inside `w`; among rules
    /// matching there, the first in system order. Optionally skips a rule.
    pub(crate) fn find_reducer(&self, w: &Word, skip: Option<usize>) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for &ri in &self.by_first[letters[pos].index()] {
                if Some(ri) == skip {
                    continue;
                }
                let lhs = self.rules[ri].lhs.letters();
                if letters.len() - pos >= lhs.len() && &letters[pos..pos + lhs.len()] == lhs {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub(crate) fn push_rule(&mut self, r: RewriteRule) {
        self.by_first[r.lhs.letters()[0].index()].push(self.rules.len());
        self.rules.push(r);
    }

    /// Every `(position, rule)` at which `w` can be rewritten.
    pub fn redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            for &ri in &self.by_first[letters[pos].index()] {
                let lhs = self.rules[ri].lhs.letters();
                if letters.len() - pos >= lhs.len() && &letters[pos..pos + lhs.len()] == lhs {
                    out.push((pos, ri));
                }
            }
        }
        out
    }

    pub fn is_irreducible_word(&self, w: &Word) -> bool {
        self.find_reducer(w, None).is_none()
    }

    /// Checks the reduced property directly: no rule's lhs or rhs words
    /// are reducible by the remaining rules.
    pub fn check_reduced(&self) -> bool {
        (0..self.rules.len()).all(|i| {
            let r = &self.rules[i];
            self.find_reducer(&r.lhs, Some(i)).is_none()
                && r.rhs.support().all(|w| self.find_reducer(w, Some(i)).is_none())
        })
    }

    /// Rules sorted by left-hand side; handy for order-insensitive
    /// comparisons.
    pub fn sorted_rules(&self) -> Vec<RewriteRule> {
        let mut v = self.rules.clone();
        v.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        v
    }

    /// Same rules, same alphabet, ignoring order.
    pub fn same_rules(&self, other: &RewritingSystem) -> bool {
        self.alphabet.id() == other.alphabet.id() && self.sorted_rules() == other.sorted_rules()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GeneratorSpec;

    fn setup() -> (Arc<Alphabet>, PrimeField) {
        let x = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
        ])
        .unwrap();
        (x, PrimeField::new(2).unwrap())
    }

    #[test]
    fn make_rule_examples() {
        let (x, f2) = setup();
        let r = make_rule(&Polynomial::parse(&x, f2, "a0 a0").unwrap()).unwrap();
        assert_eq!(r.to_string(), "a0 a0 -> 0");

        let f3 = PrimeField::new(3).unwrap();
        let r = make_rule(&Polynomial::parse(&x, f3, "2 a0").unwrap()).unwrap();
        assert_eq!(r.to_string(), "a0 -> 0");

        let r = make_rule(&Polynomial::parse(&x, f3, "2 a1 + a0 b0").unwrap()).unwrap();
        // a1 = -2^{-1} a0 b0 = -2 a0 b0 = a0 b0 over F_3
        assert_eq!(r.to_string(), "a1 -> a0 b0");
    }

    #[test]
    fn make_rule_errors() {
        let (x, f2) = setup();
        assert_eq!(
            make_rule(&Polynomial::zero(&x, f2)).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert_eq!(
            make_rule(&Polynomial::constant(&x, f2, 1)).unwrap_err(),
            Error::ConstantRelation
        );
        let lhs = x.parse_word("a0").unwrap();
        let rhs = Polynomial::parse(&x, f2, "b0").unwrap();
        assert!(matches!(
            RewriteRule::new(lhs, rhs).unwrap_err(),
            Error::Unorderable { .. }
        ));
    }

    #[test]
    fn relation_roundtrip() {
        let (x, f2) = setup();
        let f = Polynomial::parse(&x, f2, "a1 + a0 b0 + b0 a0").unwrap();
        let r = make_rule(&f).unwrap();
        assert_eq!(r.relation(), f);
        assert!(r.is_homogeneous());
    }
}
