use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::RewritingSystem;
use crate::word::Word;

/// A minimal overlap `w = m1 v = u m2`: indices of `m1`, `m2` in `T_1`
/// and the length of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub first: usize,
    pub last: usize,
    pub split: usize,
}

/// The chains of one level, in deglex order.
#[derive(Debug, Clone)]
pub struct ChainSet {
    level: i32,
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    overlaps: Vec<Overlap>,
}

impl ChainSet {
    fn new(level: i32, elements: Vec<Word>, overlaps: Vec<Overlap>) -> Self {
        let index = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        ChainSet {
            level,
            elements,
            index,
            overlaps,
        }
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Factorization data of a level-2 chain.
    pub fn overlap(&self, i: usize) -> Option<Overlap> {
        self.overlaps.get(i).copied()
    }

    pub(crate) fn unit() -> Self {
        ChainSet::new(-1, vec![Word::empty()], Vec::new())
    }

    pub(crate) fn letters(s: &RewritingSystem) -> Self {
        let a = s.alphabet();
        ChainSet::new(0, a.letters().map(|l| a.letter_word(l)).collect(), Vec::new())
    }

    pub(crate) fn tips(s: &RewritingSystem) -> Result<Self> {
        let lhs: BTreeSet<Word> = s.leading_words().cloned().collect();
        if lhs.len() != s.len() {
            return Err(Error::NotReduced("two rules share a left-hand side".into()));
        }
        let elements: Vec<Word> = lhs.into_iter().collect();
        for (i, u) in elements.iter().enumerate() {
            for v in &elements[i + 1..] {
                if u.contains(v) || v.contains(u) {
                    return Err(Error::NotReduced(format!(
                        "{} and {} are comparable",
                        s.display_word(u),
                        s.display_word(v)
                    )));
                }
            }
        }
        Ok(ChainSet::new(1, elements, Vec::new()))
    }
}

/// Minimal overlap tips of the left-hand sides of `s`.
///
/// Every proper overlap `m1 v = u m2` is enumerated; a tip is kept when no
/// other tip is a proper factor of it. Each kept tip must have a unique
/// factorization.
///
/// ```
/// # use ncgb::{PrimeField, Alphabet, GeneratorSpec, Polynomial, RewritingSystem};
/// # use ncgb::anick::chains_t2;
/// let x = Alphabet::new(vec![GeneratorSpec::new("a", 1, 0)]).unwrap();
/// let f2 = PrimeField::new(2).unwrap();
/// let s = RewritingSystem::from_relations(&x, f2, &[Polynomial::parse(&x, f2, "a a").unwrap()]).unwrap();
/// let t2 = chains_t2(&s).unwrap();
/// assert_eq!(t2.len(), 1);
/// assert_eq!(s.display_word(t2.get(0)), "a a a");
/// ```
pub fn chains_t2(s: &RewritingSystem) -> Result<ChainSet> {
    let t1 = ChainSet::tips(s)?;
    let a = s.alphabet();
    let mut found: HashMap<Word, Vec<Overlap>> = HashMap::new();
    for (i, m1) in t1.elements().iter().enumerate() {
        for (j, m2) in t1.elements().iter().enumerate() {
            let (l1, l2) = (m1.letters(), m2.letters());
            for o in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - o..] != l2[..o] {
                    continue;
                }
                let tail = m2.slice(a, o, m2.len());
                let w = m1.concat(&tail);
                let ov = Overlap {
                    first: i,
                    last: j,
                    split: l1.len() - o,
                };
                let entry = found.entry(w).or_default();
                if !entry.contains(&ov) {
                    entry.push(ov);
                }
            }
        }
    }
    let tips: HashSet<&Word> = found.keys().collect();
    let mut kept: Vec<(Word, Overlap)> = Vec::new();
    for (w, ovs) in &found {
        let letters = w.letters();
        let mut minimal = true;
        'scan: for start in 0..letters.len() {
            for end in start + 1..=letters.len() {
                if end - start == letters.len() {
                    continue;
                }
                let f = w.slice(a, start, end);
                if tips.contains(&f) {
                    minimal = false;
                    break 'scan;
                }
            }
        }
        if !minimal {
            continue;
        }
        if ovs.len() != 1 {
            return Err(Error::NotReduced(format!(
                "minimal overlap {} has {} factorizations",
                s.display_word(w),
                ovs.len()
            )));
        }
        kept.push((w.clone(), ovs[0]));
    }
    kept.sort_by(|x, y| x.0.cmp(&y.0));
    let (elements, overlaps) = kept.into_iter().unzip();
    Ok(ChainSet::new(2, elements, overlaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::small_system;

    fn names(s: &RewritingSystem, c: &ChainSet) -> Vec<String> {
        c.elements().iter().map(|w| s.display_word(w)).collect()
    }

    #[test]
    fn s0_chains() {
        let s0 = small_system(0).unwrap();
        let s = s0.system();
        let t2 = chains_t2(s).unwrap();
        assert_eq!(
            names(s, &t2),
            ["a0 a0 a0", "b0 b0 b0", "b0 a0 b0 a0 a0", "b0 b0 a0 b0 a0", "b0 a0 b0 a0 b0 a0"]
        );
        let braid = t2.position(&s.word("b0 a0 b0 a0 b0 a0").unwrap()).unwrap();
        let ov = t2.overlap(braid).unwrap();
        assert_eq!((ov.first, ov.last, ov.split), (ov.first, ov.first, 2));
    }

    #[test]
    fn unreduced_rejected() {
        let s0 = small_system(0).unwrap();
        let s = s0.system();
        let mut rules = s.rules().to_vec();
        rules.push(crate::rewriting::make_rule(&s.poly("a0 a0 b0").unwrap()).unwrap());
        let bad = RewritingSystem::new(s.alphabet(), s.field(), rules).unwrap();
        assert!(matches!(chains_t2(&bad), Err(Error::NotReduced(_))));
    }
}
