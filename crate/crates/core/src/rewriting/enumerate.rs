use crate::error::{Error, Result};
use crate::word::{Letter, Word};

use super::RewritingSystem;

/// Irreducible words grouped by degree `0..=max_degree`, each group in
/// deglex order. A word extends an irreducible prefix by one letter, so
/// only left-hand sides ending the new word need checking.
fn by_degree(s: &RewritingSystem, max_degree: u32, cap: Option<usize>) -> Result<Vec<Vec<Word>>> {
    let a = s.alphabet();
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); a.len()];
    for lhs in s.leading_words() {
        by_last[lhs.letters()[lhs.len() - 1].index()].push(lhs);
    }
    let letters: Vec<(Letter, Word)> = a.letters().map(|l| (l, a.letter_word(l))).collect();
    let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let mut total = 1usize;
    for d in 1..=max_degree {
        let mut level = Vec::new();
        for (l, lw) in &letters {
            let ld = lw.degree();
            if ld > d {
                continue;
            }
            for w in &levels[(d - ld) as usize] {
                let cand = w.concat(lw);
                if by_last[l.index()].iter().all(|lhs| !cand.ends_with(lhs)) {
                    level.push(cand);
                }
            }
        }
        level.sort();
        total += level.len();
        if let Some(cap) = cap {
            if total > cap {
                return Err(Error::CapExceeded {
                    cap,
                    reached: total,
                });
            }
        }
        levels.push(level);
    }
    Ok(levels)
}

/// All words of degree at most `max_degree` avoiding every left-hand side,
/// in deglex order.
pub fn irreducible_words(s: &RewritingSystem, max_degree: u32) -> Vec<Word> {
    by_degree(s, max_degree, None)
        .expect("no cap")
        .into_iter()
        .flatten()
        .collect()
}

/// Number of irreducible words in each degree `0..=max_degree`.
pub fn count_irreducible_by_degree(s: &RewritingSystem, max_degree: u32) -> Vec<u64> {
    by_degree(s, max_degree, None)
        .expect("no cap")
        .iter()
        .map(|l| l.len() as u64)
        .collect()
}

/// Total number of irreducible words, for systems with finitely many.
///
/// Stops once a window of empty degrees as wide as the largest letter
/// degree appears: every longer irreducible word would have an
/// irreducible prefix ending inside that window. Errors when more than
/// `cap` words are found.
pub fn total_irreducible(s: &RewritingSystem, cap: usize) -> Result<u64> {
    let a = s.alphabet();
    let window = a.letters().map(|l| a.degree(l)).max().unwrap_or(1);
    let mut max_degree = 4 * window.max(1);
    loop {
        let levels = by_degree(s, max_degree, Some(cap))?;
        let tail_empty = levels
            .iter()
            .rev()
            .take(window as usize)
            .all(|l| l.is_empty());
        if tail_empty {
            return Ok(levels.iter().map(|l| l.len() as u64).sum());
        }
        max_degree *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Polynomial;
    use crate::word::{Alphabet, GeneratorSpec};

    fn s1() -> RewritingSystem {
        let x = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
            GeneratorSpec::new("b1", 2, 3),
        ])
        .unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let rels: Vec<Polynomial> = [
            "a0 a0",
            "b0 b0",
            "b0 a0 b0 a0 + a0 b0 a0 b0",
            "a1 a1",
            "b1 b1",
            "b1 b0 + b0 b1",
            "a1 a0 + a0 a1",
            "a1 b0 + b0 a1 + a0 b0 a0",
            "b1 a0 + a0 b1 + b0 a0 b0",
            "b1 a1 b1 a1 + a1 b1 a1 b1",
        ]
        .iter()
        .map(|r| Polynomial::parse(&x, f2, r).unwrap())
        .collect();
        RewritingSystem::from_relations(&x, f2, &rels).unwrap()
    }

    #[test]
    fn low_degrees() {
        let s = s1();
        let words: Vec<String> = irreducible_words(&s, 2)
            .iter()
            .map(|w| s.display_word(w))
            .collect();
        assert_eq!(words, ["1", "a0", "b0", "a0 b0", "b0 a0", "a1", "b1"]);
        assert_eq!(irreducible_words(&s, 0).len(), 1);
    }

    #[test]
    fn total_is_sixty_four() {
        let s = s1();
        assert_eq!(total_irreducible(&s, 10_000).unwrap(), 64);
        let counts = count_irreducible_by_degree(&s, 12);
        assert_eq!(counts.iter().sum::<u64>(), 64);
    }

    #[test]
    fn cap_is_enforced() {
        let x = Alphabet::new(vec![GeneratorSpec::new("a", 1, 0)]).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let s = RewritingSystem::new(&x, f2, vec![]).unwrap();
        assert!(matches!(
            total_irreducible(&s, 50),
            Err(Error::CapExceeded { cap: 50, .. })
        ));
    }
}
