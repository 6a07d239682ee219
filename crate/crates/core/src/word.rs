//! Weighted alphabets and words of the free monoid, ordered deglex.
//!
//! Letters are stored as indices into the alphabet *sorted by rank*, so the
//! derived lexicographic order on letter sequences is the alphabet order.
//! [`Word`] keeps its total degree in front of the letters; the derived
//! `Ord` therefore compares degree first, then letters left to right, with
//! a strict prefix below its extensions. That is exactly deglex.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

static NEXT_ALPHABET_ID: AtomicU64 = AtomicU64::new(1);

/// Position of a generator in its alphabet's rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One entry of an alphabet as supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub rank: i64,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32, rank: i64) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            rank,
        }
    }
}

/// A generator handle: its alphabet identity, position, degree and rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    alphabet: u64,
    pub letter: Letter,
    pub degree: u32,
    pub rank: i64,
}

/// A finite totally ordered alphabet with positive degrees.
#[derive(Debug)]
pub struct Alphabet {
    id: u64,
    names: Vec<String>,
    degrees: Vec<u32>,
    ranks: Vec<i64>,
    by_name: HashMap<String, Letter>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.degrees == other.degrees && self.ranks == other.ranks
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Builds an alphabet, sorting entries by rank.
    pub fn new(specs: Vec<GeneratorSpec>) -> Result<Arc<Alphabet>> {
        let mut specs = specs;
        specs.sort_by_key(|s| s.rank);
        for pair in specs.windows(2) {
            if pair[0].rank == pair[1].rank {
                return Err(Error::DuplicateRank(pair[0].rank));
            }
        }
        assert!(specs.len() <= u16::MAX as usize, "alphabet too large");
        let mut by_name = HashMap::new();
        for (i, s) in specs.iter().enumerate() {
            if s.degree == 0 {
                return Err(Error::ZeroDegree {
                    name: s.name.clone(),
                });
            }
            if by_name.insert(s.name.clone(), Letter(i as u16)).is_some() {
                return Err(Error::DuplicateName(s.name.clone()));
            }
        }
        Ok(Arc::new(Alphabet {
            id: NEXT_ALPHABET_ID.fetch_add(1, AtomicOrdering::Relaxed),
            names: specs.iter().map(|s| s.name.clone()).collect(),
            degrees: specs.iter().map(|s| s.degree).collect(),
            ranks: specs.iter().map(|s| s.rank).collect(),
            by_name,
        }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| Letter(i as u16))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }

    pub fn degree(&self, l: Letter) -> u32 {
        self.degrees[l.index()]
    }

    pub fn rank(&self, l: Letter) -> i64 {
        self.ranks[l.index()]
    }

    pub fn specs(&self) -> Vec<GeneratorSpec> {
        self.letters()
            .map(|l| GeneratorSpec::new(self.name(l), self.degree(l), self.rank(l)))
            .collect()
    }

    pub fn lookup(&self, name: &str) -> Result<Letter> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, name: &str) -> Result<Generator> {
        let letter = self.lookup(name)?;
        Ok(Generator {
            alphabet: self.id,
            letter,
            degree: self.degree(letter),
            rank: self.rank(letter),
        })
    }

    /// Word from a list of generator names.
    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        let letters = names
            .iter()
            .map(|n| self.lookup(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.word_from_letters(&letters))
    }

    /// Word from a whitespace-separated list of names; `""` or `"1"` is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let names: Vec<&str> = t.split_whitespace().collect();
        self.word(&names)
    }

    pub fn word_from_letters(&self, letters: &[Letter]) -> Word {
        let degree = letters.iter().map(|&l| self.degree(l)).sum();
        Word {
            degree,
            letters: letters.iter().copied().collect(),
        }
    }

    pub fn letter_word(&self, l: Letter) -> Word {
        self.word_from_letters(&[l])
    }

    /// Whether every letter of `w` is in range and its cached degree agrees.
    pub fn owns(&self, w: &Word) -> bool {
        w.letters.iter().all(|l| l.index() < self.len())
            && w.letters.iter().map(|&l| self.degree(l)).sum::<u32>() == w.degree
    }

    pub fn compare_generators(&self, a: &Generator, b: &Generator) -> Result<Ordering> {
        generator_compare(a, b)
    }

    /// Deglex comparison, validating that both words belong here.
    pub fn compare_words(&self, u: &Word, v: &Word) -> Result<Ordering> {
        if !self.owns(u) || !self.owns(v) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(u.cmp(v))
    }

    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// All words of degree exactly `d`, in deglex order.
    pub fn words_of_degree(&self, d: u32) -> Vec<Word> {
        let mut by_degree: Vec<Vec<Word>> = vec![Vec::new(); d as usize + 1];
        by_degree[0].push(Word::empty());
        for e in 1..=d as usize {
            let mut out = Vec::new();
            for l in self.letters() {
                let dl = self.degree(l) as usize;
                if dl > e {
                    continue;
                }
                for w in &by_degree[e - dl] {
                    out.push(w.concat(&self.letter_word(l)));
                }
            }
            out.sort();
            by_degree[e] = out;
        }
        std::mem::take(&mut by_degree[d as usize])
    }
}

/// Total order on generators of one alphabet, by rank.
pub fn generator_compare(a: &Generator, b: &Generator) -> Result<Ordering> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(a.rank.cmp(&b.rank))
}

/// An element of the free monoid. The empty word is the unit `e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word {
    degree: u32,
    letters: SmallVec<[Letter; 8]>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    /// `u · self · v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> Word {
        let mut letters = SmallVec::with_capacity(u.len() + self.len() + v.len());
        letters.extend_from_slice(&u.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&v.letters);
        Word {
            degree: u.degree + self.degree + v.degree,
            letters,
        }
    }

    /// Letters `range`, with the degree recomputed from `alphabet`.
    pub fn slice(&self, alphabet: &Alphabet, start: usize, end: usize) -> Word {
        alphabet.word_from_letters(&self.letters[start..end])
    }

    /// Splits at `at`, given the degree of the prefix is derivable from the
    /// alphabet.
    pub fn split_at(&self, alphabet: &Alphabet, at: usize) -> (Word, Word) {
        (self.slice(alphabet, 0, at), self.slice(alphabet, at, self.len()))
    }

    /// Replaces `len` letters starting at `pos` by `middle`.
    pub fn replace(&self, pos: usize, len: usize, removed_degree: u32, middle: &Word) -> Word {
        let mut letters = SmallVec::with_capacity(self.len() - len + middle.len());
        letters.extend_from_slice(&self.letters[..pos]);
        letters.extend_from_slice(&middle.letters);
        letters.extend_from_slice(&self.letters[pos + len..]);
        Word {
            degree: self.degree - removed_degree + middle.degree,
            letters,
        }
    }

    /// Leftmost occurrence of `pattern` as a factor.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        self.find_from(pattern, 0)
    }

    pub fn find_from(&self, pattern: &Word, start: usize) -> Option<usize> {
        let (h, n) = (self.letters(), pattern.letters());
        if n.len() > h.len() {
            return None;
        }
        (start..=h.len() - n.len()).find(|&i| &h[i..i + n.len()] == n)
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.letters.ends_with(&suffix.letters)
    }

    /// Proper factor: a subword different from the whole word.
    pub fn is_proper_factor_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.contains(self)
    }

    /// Letters with no degree attached, for cheap hashing keys.
    pub fn into_letters(self) -> SmallVec<[Letter; 8]> {
        self.letters
    }

    /// Rebuilds a word whose degree the caller already knows.
    pub(crate) fn from_parts(degree: u32, letters: &[Letter]) -> Word {
        Word {
            degree,
            letters: letters.iter().copied().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("x{}", l.0)).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Deglex comparison of two words.
pub fn word_compare_deglex(alphabet: &Alphabet, u: &Word, v: &Word) -> Result<Ordering> {
    alphabet.compare_words(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_alphabet() -> Arc<Alphabet> {
        Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
            GeneratorSpec::new("b1", 2, 3),
            GeneratorSpec::new("a2", 4, 4),
        ])
        .unwrap()
    }

    #[test]
    fn generator_order() {
        let x = small_alphabet();
        let a0 = x.generator("a0").unwrap();
        let b0 = x.generator("b0").unwrap();
        let b1 = x.generator("b1").unwrap();
        let a2 = x.generator("a2").unwrap();
        assert_eq!(generator_compare(&a0, &b0).unwrap(), Ordering::Less);
        assert_eq!(generator_compare(&a0, &a0).unwrap(), Ordering::Equal);
        assert_eq!(generator_compare(&b1, &a2).unwrap(), Ordering::Less);
        let y = small_alphabet();
        let other = y.generator("a0").unwrap();
        assert_eq!(generator_compare(&a0, &other), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn deglex_examples() {
        let x = small_alphabet();
        let e = Word::empty();
        let a0 = x.parse_word("a0").unwrap();
        assert!(e < a0);
        let a0b0 = x.parse_word("a0 b0").unwrap();
        let b0a0 = x.parse_word("b0 a0").unwrap();
        let a1 = x.parse_word("a1").unwrap();
        assert_eq!(a0b0.degree(), 2);
        assert!(a0b0 < a1);
        assert!(b0a0 > a0b0);
        assert_eq!(x.compare_words(&b0a0, &a0b0).unwrap(), Ordering::Greater);
    }

    #[test]
    fn rejects_zero_degree_and_duplicates() {
        assert!(matches!(
            Alphabet::new(vec![GeneratorSpec::new("x", 0, 0)]),
            Err(Error::ZeroDegree { .. })
        ));
        assert!(matches!(
            Alphabet::new(vec![GeneratorSpec::new("x", 1, 0), GeneratorSpec::new("y", 1, 0)]),
            Err(Error::DuplicateRank(0))
        ));
        assert!(matches!(
            Alphabet::new(vec![GeneratorSpec::new("x", 1, 0), GeneratorSpec::new("x", 1, 1)]),
            Err(Error::DuplicateName(_))
        ));
    }

    #[test]
    fn words_of_degree_are_sorted_and_complete() {
        let x = small_alphabet();
        let words = x.words_of_degree(2);
        // a0a0 a0b0 b0a0 b0b0 a1 b1
        assert_eq!(words.len(), 6);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(x.display(&words[4]), "a1");
    }

    #[test]
    fn factor_search() {
        let x = small_alphabet();
        let w = x.parse_word("a0 b0 a0 b0").unwrap();
        let p = x.parse_word("b0 a0").unwrap();
        assert_eq!(w.find(&p), Some(1));
        assert!(p.is_proper_factor_of(&w));
        assert!(!w.is_proper_factor_of(&w));
        let r = w.replace(1, 2, 2, &x.parse_word("a1").unwrap());
        assert_eq!(x.display(&r), "a0 a1 b0");
        assert_eq!(r.degree(), 4);
    }
}
