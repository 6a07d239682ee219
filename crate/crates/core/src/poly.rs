//! Polynomials of the free associative algebra `F_p<X>`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::word::{Alphabet, Word};

/// Raw term map; every stored coefficient is nonzero.
pub type Terms = BTreeMap<Word, Coeff>;

/// Adds `c * w` into `terms`, dropping the entry if it cancels.
pub fn add_term(terms: &mut Terms, field: &PrimeField, w: Word, c: Coeff) {
    if c == 0 {
        return;
    }
    match terms.entry(w) {
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

/// A polynomial in canonical form: a finite map from words to nonzero
/// coefficients, tied to one alphabet and one field.
#[derive(Clone)]
pub struct Polynomial {
    alphabet: Arc<Alphabet>,
    field: PrimeField,
    terms: Terms,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.id() == other.alphabet.id()
            && self.field == other.field
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.alphabet, &self.field, &self.terms))
    }
}

/// Renders terms largest first, e.g. `b0 a1 + a0 b0 a0`.
pub fn format_terms(alphabet: &Alphabet, field: &PrimeField, terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, &c)) in terms.iter().rev().enumerate() {
        let s = field.signed(c);
        let (neg, mag) = (s < 0, s.unsigned_abs());
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&alphabet.display(w));
        }
    }
    out
}

impl Polynomial {
    pub fn zero(alphabet: &Arc<Alphabet>, field: PrimeField) -> Self {
        Polynomial {
            alphabet: alphabet.clone(),
            field,
            terms: Terms::new(),
        }
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, field: PrimeField, w: Word, c: i64) -> Self {
        let mut p = Self::zero(alphabet, field);
        add_term(&mut p.terms, &field, w, field.from_i64(c));
        p
    }

    pub fn constant(alphabet: &Arc<Alphabet>, field: PrimeField, c: i64) -> Self {
        Self::monomial(alphabet, field, Word::empty(), c)
    }

    /// Builds from `(coefficient, word)` pairs; coefficients are reduced mod p
    /// and like terms merged.
    pub fn from_terms<I>(alphabet: &Arc<Alphabet>, field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Word)>,
    {
        let mut p = Self::zero(alphabet, field);
        for (c, w) in terms {
            debug_assert!(alphabet.owns(&w));
            add_term(&mut p.terms, &field, w, field.from_i64(c));
        }
        p
    }

    /// Wraps an already-canonical term map.
    pub fn from_raw(alphabet: &Arc<Alphabet>, field: PrimeField, terms: Terms) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0));
        Polynomial {
            alphabet: alphabet.clone(),
            field,
            terms,
        }
    }

    /// Parses `"3 a0 b0 + b1 - 1"`-style expressions.
    pub fn parse(alphabet: &Arc<Alphabet>, field: PrimeField, text: &str) -> Result<Self> {
        Ok(crate::parse::parse_polynomial(alphabet, field, text)?)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
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

    pub fn coefficient(&self, w: &Word) -> Coeff {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    /// The deglex-largest word of the support with its coefficient.
    pub fn leading_term(&self) -> Result<(&Word, Coeff)> {
        self.terms
            .iter()
            .next_back()
            .map(|(w, &c)| (w, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_word(&self) -> Result<&Word> {
        self.leading_term().map(|(w, _)| w)
    }

    /// Largest degree in the support; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|w| w.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.alphabet.id() != other.alphabet.id() {
            return Err(Error::AlphabetMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        Ok(())
    }

    /// `self + c * g` in canonical form.
    pub fn combine(&self, c: i64, g: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(g)?;
        let c = self.field.from_i64(c);
        let mut out = self.terms.clone();
        for (w, &k) in &g.terms {
            add_term(&mut out, &self.field, w.clone(), self.field.mul(c, k));
        }
        Ok(Polynomial {
            alphabet: self.alphabet.clone(),
            field: self.field,
            terms: out,
        })
    }

    pub fn add(&self, g: &Polynomial) -> Result<Polynomial> {
        self.combine(1, g)
    }

    pub fn sub(&self, g: &Polynomial) -> Result<Polynomial> {
        self.combine(-1, g)
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        let c = self.field.from_i64(c);
        let terms = if c == 0 {
            Terms::new()
        } else {
            self.terms
                .iter()
                .map(|(w, &k)| (w.clone(), self.field.mul(c, k)))
                .collect()
        };
        Polynomial {
            alphabet: self.alphabet.clone(),
            field: self.field,
            terms,
        }
    }

    /// `u · f · v`; concatenation with fixed `u`, `v` is injective, so no
    /// coefficients merge.
    pub fn monomial_multiply(&self, u: &Word, v: &Word) -> Result<Polynomial> {
        if !self.alphabet.owns(u) || !self.alphabet.owns(v) {
            return Err(Error::AlphabetMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, &c)| (w.sandwich(u, v), c))
            .collect();
        Ok(Polynomial {
            alphabet: self.alphabet.clone(),
            field: self.field,
            terms,
        })
    }

    /// Product in the free algebra.
    pub fn mul(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(g)?;
        let mut out = Terms::new();
        for (u, &a) in &self.terms {
            for (v, &b) in &g.terms {
                add_term(&mut out, &self.field, u.concat(v), self.field.mul(a, b));
            }
        }
        Ok(Polynomial {
            alphabet: self.alphabet.clone(),
            field: self.field,
            terms: out,
        })
    }

    /// Applies a letter substitution `x -> images[x]` (an algebra map into
    /// another free algebra over the same field).
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        let target = images
            .first()
            .map(|p| p.alphabet.clone())
            .ok_or_else(|| Error::InvalidParameters("empty substitution".into()))?;
        let mut out = Polynomial::zero(&target, self.field);
        for (w, &c) in &self.terms {
            let mut prod = Polynomial::constant(&target, self.field, c as i64);
            for l in w.letters() {
                prod = prod.mul(&images[l.index()])?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }
}

/// `f + c * g`.
pub fn poly_combine(f: &Polynomial, c: i64, g: &Polynomial) -> Result<Polynomial> {
    f.combine(c, g)
}

/// `u · f · v`.
pub fn monomial_multiply(u: &Word, f: &Polynomial, v: &Word) -> Result<Polynomial> {
    f.monomial_multiply(u, v)
}

/// Leading word and coefficient.
pub fn leading_term(f: &Polynomial) -> Result<(Word, Coeff)> {
    f.leading_term().map(|(w, c)| (w.clone(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GeneratorSpec;

    fn setup(p: u32) -> (Arc<Alphabet>, PrimeField) {
        let x = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
            GeneratorSpec::new("b1", 2, 3),
        ])
        .unwrap();
        (x, PrimeField::new(p).unwrap())
    }

    #[test]
    fn leading_terms() {
        let (x, f2) = setup(2);
        let g = Polynomial::parse(&x, f2, "a1 b0 + b0 a1 + a0 b0 a0").unwrap();
        let (w, c) = leading_term(&g).unwrap();
        assert_eq!(x.display(&w), "a1 b0");
        assert_eq!(c, 1);

        let (_, f5) = setup(5);
        let g = Polynomial::constant(&x, f5, 3);
        let (w, c) = leading_term(&g).unwrap();
        assert!(w.is_empty());
        assert_eq!(c, 3);

        let g = Polynomial::parse(&x, f2, "b0 a0 b0 a0 + a0 b0 a0 b0").unwrap();
        assert_eq!(x.display(g.leading_word().unwrap()), "b0 a0 b0 a0");

        assert_eq!(
            Polynomial::zero(&x, f2).leading_term().unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn combine_cancels() {
        let (x, f3) = setup(3);
        let f = Polynomial::parse(&x, f3, "2 a0 b0 + b1").unwrap();
        assert!(poly_combine(&f, -1, &f).unwrap().is_zero());
        let back = f.combine(1, &f.combine(-1, &f).unwrap()).unwrap();
        assert_eq!(back, f);

        let (x, f2) = setup(2);
        let sq = Polynomial::parse(&x, f2, "a0 a0").unwrap();
        assert!(sq.combine(1, &sq).unwrap().is_zero());

        let lead = Polynomial::parse(&x, f2, "a1 b0").unwrap();
        let tail = Polynomial::parse(&x, f2, "b0 a1 + a0 b0 a0").unwrap();
        let full = Polynomial::parse(&x, f2, "a1 b0 + b0 a1 + a0 b0 a0").unwrap();
        assert_eq!(lead.combine(1, &tail).unwrap(), full);
    }

    #[test]
    fn sandwich() {
        let (x, f2) = setup(2);
        let b0 = Polynomial::parse(&x, f2, "b0").unwrap();
        let a0 = x.parse_word("a0").unwrap();
        let e = Word::empty();
        assert_eq!(monomial_multiply(&e, &b0, &e).unwrap(), b0);
        let m = monomial_multiply(&a0, &b0, &a0).unwrap();
        assert_eq!(m.to_string(), "a0 b0 a0");
        assert_eq!(m.leading_word().unwrap().degree(), 3);
    }

    #[test]
    fn mismatched_alphabets_rejected() {
        let (x, f2) = setup(2);
        let (y, _) = setup(2);
        let f = Polynomial::parse(&x, f2, "a0").unwrap();
        let g = Polynomial::parse(&y, f2, "a0").unwrap();
        assert_eq!(f.add(&g).unwrap_err(), Error::AlphabetMismatch);
    }

    #[test]
    fn display_signs() {
        let (x, f5) = setup(5);
        let f = Polynomial::parse(&x, f5, "a1 - 2 a0 b0 + 3").unwrap();
        assert_eq!(f.to_string(), "a1 - 2 a0 b0 - 2");
    }
}
