use std::fmt;

use rayon::prelude::*;

use crate::poly::{add_term, Polynomial, Terms};
use crate::word::Word;

use super::RewritingSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    /// `tip = u · lhs1 = lhs2 · v` with `u`, `v` nonempty and a nonempty
    /// shared middle.
    Overlap,
    /// `tip = u · lhs1 · v = lhs2`.
    Inclusion,
}

/// A critical pair `(tip, rule1, rule2)` with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CriticalPair {
    pub tip: Word,
    pub rule1: usize,
    pub rule2: usize,
    pub kind: PairKind,
    pub u: Word,
    pub v: Word,
}

impl CriticalPair {
    /// Verifies the stated factorization of the tip.
    pub fn is_well_formed(&self, s: &RewritingSystem) -> bool {
        let l1 = s.rules[self.rule1].lhs();
        let l2 = s.rules[self.rule2].lhs();
        match self.kind {
            PairKind::Overlap => {
                self.u.concat(l1) == self.tip
                    && l2.concat(&self.v) == self.tip
                    && !self.u.is_empty()
                    && !self.v.is_empty()
                    && self.u.len() < l2.len()
            }
            PairKind::Inclusion => l1.sandwich(&self.u, &self.v) == self.tip && *l2 == self.tip,
        }
    }

    pub fn describe(&self, s: &RewritingSystem) -> String {
        format!(
            "{} ({:?} of rule {} [{}] and rule {} [{}])",
            s.display_word(&self.tip),
            self.kind,
            self.rule1,
            s.display_word(s.rules[self.rule1].lhs()),
            self.rule2,
            s.display_word(s.rules[self.rule2].lhs()),
        )
    }
}

/// Critical pairs of `rule1` (right/inner) against `rule2` (left/outer).
pub(crate) fn pairs_between(s: &RewritingSystem, rule1: usize, rule2: usize) -> Vec<CriticalPair> {
    let a = &s.alphabet;
    let l1 = s.rules[rule1].lhs();
    let l2 = s.rules[rule2].lhs();
    let (n1, n2) = (l1.len(), l2.len());
    let mut out = Vec::new();
    // Overlaps: a proper suffix of lhs2 equals a proper prefix of lhs1.
    for k in 1..n1.min(n2) {
        if l2.letters()[n2 - k..] == l1.letters()[..k] {
            let u = l2.slice(a, 0, n2 - k);
            let v = l1.slice(a, k, n1);
            out.push(CriticalPair {
                tip: u.concat(l1),
                rule1,
                rule2,
                kind: PairKind::Overlap,
                u,
                v,
            });
        }
    }
    // Inclusions: lhs1 sits inside lhs2 (the trivial self-inclusion excluded).
    if n1 <= n2 {
        let mut start = 0;
        while let Some(pos) = l2.find_from(l1, start) {
            if !(rule1 == rule2 && pos == 0) {
                out.push(CriticalPair {
                    tip: l2.clone(),
                    rule1,
                    rule2,
                    kind: PairKind::Inclusion,
                    u: l2.slice(a, 0, pos),
                    v: l2.slice(a, pos + n1, n2),
                });
            }
            start = pos + 1;
        }
    }
    out
}

/// All overlaps and inclusions over ordered pairs of rules, self-pairs
/// included, sorted by tip and deduplicated.
pub fn find_critical_pairs(s: &RewritingSystem) -> Vec<CriticalPair> {
    let n = s.rules.len();
    let mut out: Vec<CriticalPair> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (0..n).flat_map(move |j| pairs_between(s, i, j)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `u·rhs1 - rhs2·v` for an overlap, `u·rhs1·v - rhs2` for an inclusion.
pub fn pair_obstruction(s: &RewritingSystem, cp: &CriticalPair) -> Polynomial {
    Polynomial::from_raw(&s.alphabet, s.field, obstruction_terms(s, cp))
}

pub(crate) fn obstruction_terms(s: &RewritingSystem, cp: &CriticalPair) -> Terms {
    let f = s.field;
    let r1 = s.rules[cp.rule1].rhs();
    let r2 = s.rules[cp.rule2].rhs();
    let e = Word::empty();
    let mut t = Terms::new();
    match cp.kind {
        PairKind::Overlap => {
            for (w, &c) in r1.terms() {
                add_term(&mut t, &f, w.sandwich(&cp.u, &e), c);
            }
            for (w, &c) in r2.terms() {
                add_term(&mut t, &f, w.sandwich(&e, &cp.v), f.neg(c));
            }
        }
        PairKind::Inclusion => {
            for (w, &c) in r1.terms() {
                add_term(&mut t, &f, w.sandwich(&cp.u, &cp.v), c);
            }
            for (w, &c) in r2.terms() {
                add_term(&mut t, &f, w.clone(), f.neg(c));
            }
        }
    }
    t
}

/// A critical pair whose obstruction does not rewrite to zero.
#[derive(Debug, Clone)]
pub struct Witness {
    pub pair: CriticalPair,
    pub residue: Polynomial,
}

/// Outcome of a completeness check.
#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub degree_bound: Option<u32>,
    pub pairs_checked: usize,
    pub witnesses: Vec<Witness>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl fmt::Display for CompletenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} critical pairs checked, {} unresolved",
            self.pairs_checked,
            self.witnesses.len()
        )
    }
}

/// Reduces every critical pair obstruction (tip degree at most `bound`,
/// when given) and collects the ones with nonzero normal form.
pub fn is_complete(s: &RewritingSystem, degree_bound: Option<u32>) -> CompletenessReport {
    let pairs: Vec<CriticalPair> = find_critical_pairs(s)
        .into_iter()
        .filter(|cp| degree_bound.map_or(true, |b| cp.tip.degree() <= b))
        .collect();
    let witnesses: Vec<Witness> = pairs
        .par_iter()
        .filter_map(|cp| {
            let (nf, _) = s.reduce_terms(obstruction_terms(s, cp), None);
            (!nf.is_empty()).then(|| Witness {
                pair: cp.clone(),
                residue: Polynomial::from_raw(&s.alphabet, s.field, nf),
            })
        })
        .collect();
    CompletenessReport {
        degree_bound,
        pairs_checked: pairs.len(),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::word::{Alphabet, GeneratorSpec};
    use std::sync::Arc;

    fn alphabet() -> Arc<Alphabet> {
        Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
            GeneratorSpec::new("b1", 2, 3),
        ])
        .unwrap()
    }

    fn sys(rels: &[&str]) -> RewritingSystem {
        let x = alphabet();
        let f2 = PrimeField::new(2).unwrap();
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| Polynomial::parse(&x, f2, s).unwrap())
            .collect();
        RewritingSystem::from_relations(&x, f2, &rels).unwrap()
    }

    #[test]
    fn self_overlap_of_square() {
        let s = sys(&["a0 a0"]);
        let pairs = find_critical_pairs(&s);
        assert_eq!(pairs.len(), 1);
        assert_eq!(s.display_word(&pairs[0].tip), "a0 a0 a0");
        assert!(pairs[0].is_well_formed(&s));
        assert!(pair_obstruction(&s, &pairs[0]).is_zero());
        assert!(is_complete(&s, None).passed());
    }

    #[test]
    fn overlap_tip_and_obstruction() {
        let s = sys(&["a1 b0 + b0 a1 + a0 b0 a0", "b0 b0"]);
        let pairs = find_critical_pairs(&s);
        let cp = pairs
            .iter()
            .find(|cp| s.display_word(&cp.tip) == "a1 b0 b0")
            .expect("tip a1 b0 b0");
        assert_eq!((cp.rule1, cp.rule2), (1, 0));
        let ob = pair_obstruction(&s, cp);
        assert_eq!(ob, s.poly("b0 a1 b0 + a0 b0 a0 b0").unwrap());
    }

    #[test]
    fn braid_overlap_tip() {
        let s = sys(&["a1 b0 + b0 a1 + a0 b0 a0", "b0 a0 b0 a0 + a0 b0 a0 b0"]);
        let tips: Vec<String> = find_critical_pairs(&s)
            .iter()
            .map(|cp| s.display_word(&cp.tip))
            .collect();
        assert!(tips.contains(&"a1 b0 a0 b0 a0".to_string()));
    }

    #[test]
    fn inclusions_found() {
        let s = sys(&["a0 a0", "a0 a0 a0"]);
        let pairs = find_critical_pairs(&s);
        assert!(pairs.iter().any(|cp| cp.kind == PairKind::Inclusion));
        assert!(pairs.iter().all(|cp| cp.is_well_formed(&s)));
    }

    #[test]
    fn no_pairs_without_overlaps() {
        let x = alphabet();
        let f2 = PrimeField::new(2).unwrap();
        let s = RewritingSystem::from_relations(
            &x,
            f2,
            &[Polynomial::parse(&x, f2, "a0 b0 + 1").unwrap()],
        )
        .unwrap();
        let report = is_complete(&s, None);
        assert_eq!(report.pairs_checked, 0);
        assert!(report.passed());
    }
}
