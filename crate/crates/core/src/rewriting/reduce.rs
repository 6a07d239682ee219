use crate::field::PrimeField;
use crate::poly::{add_term, Polynomial, Terms};
use crate::word::Word;

use super::RewritingSystem;

/// A normal form together with the number of single rewrite steps taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub value: Polynomial,
    pub steps: usize,
}

/// Replaces `c * w` by `c * u rhs v`, where the rule's lhs sits at `pos`.
fn rewrite_into(
    system: &RewritingSystem,
    terms: &mut Terms,
    field: &PrimeField,
    w: &Word,
    c: u32,
    pos: usize,
    rule: usize,
) {
    let r = &system.rules[rule];
    let lhs = &r.lhs;
    for (mid, &k) in r.rhs.terms() {
        let nw = w.replace(pos, lhs.len(), lhs.degree(), mid);
        add_term(terms, field, nw, field.mul(c, k));
    }
}

impl RewritingSystem {
    /// Applies the rule `rule` at letter position `pos` of the word `w`
    /// occurring in `g`. Any redex may be chosen; used for strategy tests.
    pub fn rewrite_at(&self, g: &Polynomial, w: &Word, pos: usize, rule: usize) -> Polynomial {
        let c = g.coefficient(w);
        assert!(c != 0, "word not in support");
        let lhs = &self.rules[rule].lhs;
        assert_eq!(&w.letters()[pos..pos + lhs.len()], lhs.letters());
        let mut terms = g.terms().clone();
        terms.remove(w);
        rewrite_into(self, &mut terms, &self.field, w, c, pos, rule);
        Polynomial::from_raw(&self.alphabet, self.field, terms)
    }

    /// Full reduction of a raw term map, skipping one rule if asked.
    /// Returns the normal form and the step count.
    pub(crate) fn reduce_terms(&self, input: Terms, skip: Option<usize>) -> (Terms, usize) {
        let field = self.field;
        let mut work = input;
        let mut done = Terms::new();
        let mut steps = 0;
        // Largest word first. Rewriting only produces smaller words, so
        // anything moved to `done` stays irreducible and untouched.
        while let Some((w, c)) = work.pop_last() {
            match self.find_reducer(&w, skip) {
                Some((pos, rule)) => {
                    steps += 1;
                    rewrite_into(self, &mut work, &field, &w, c, pos, rule);
                }
                None => {
                    done.insert(w, c);
                }
            }
        }
        (done, steps)
    }

    pub fn normal_form_of_word(&self, w: &Word) -> Terms {
        let mut t = Terms::new();
        t.insert(w.clone(), 1);
        self.reduce_terms(t, None).0
    }

    pub fn normal_form(&self, g: &Polynomial) -> Polynomial {
        normal_form(g, self).value
    }
}

/// One deterministic rewrite step: the deglex-largest reducible word,
/// at its leftmost redex, by the first matching rule. `None` when `g` is
/// irreducible.
pub fn reduce_once(g: &Polynomial, system: &RewritingSystem) -> Option<Polynomial> {
    for w in g.support().rev() {
        if let Some((pos, rule)) = system.find_reducer(w, None) {
            return Some(system.rewrite_at(g, w, pos, rule));
        }
    }
    None
}

/// Rewrites to a fixed point. Terminates since every step strictly lowers
/// the polynomial in the well-founded order induced by deglex.
pub fn normal_form(g: &Polynomial, system: &RewritingSystem) -> NormalForm {
    assert_eq!(g.alphabet().id(), system.alphabet.id(), "alphabet mismatch");
    let (terms, steps) = system.reduce_terms(g.terms().clone(), None);
    NormalForm {
        value: Polynomial::from_raw(&system.alphabet, system.field, terms),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::make_rule;
    use crate::word::{Alphabet, GeneratorSpec};
    use std::sync::Arc;

    fn system() -> RewritingSystem {
        let x: Arc<Alphabet> = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
            GeneratorSpec::new("b1", 2, 3),
        ])
        .unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let rels: Vec<Polynomial> = ["a0 a0", "a1 b0 + b0 a1 + a0 b0 a0"]
            .iter()
            .map(|s| Polynomial::parse(&x, f2, s).unwrap())
            .collect();
        RewritingSystem::from_relations(&x, f2, &rels).unwrap()
    }

    #[test]
    fn single_steps() {
        let s = system();
        let sq = s.poly("a0 a0").unwrap();
        assert!(reduce_once(&sq, &s).unwrap().is_zero());
        let irr = s.poly("b0 a0 + a1").unwrap();
        assert!(reduce_once(&irr, &s).is_none());
        let g = s.poly("a0 a1 b0 b1").unwrap();
        let h = reduce_once(&g, &s).unwrap();
        // a0 (b0 a1 + a0 b0 a0) b1; a0 a0 b0 a0 b1 stays, one step only.
        assert_eq!(h, s.poly("a0 b0 a1 b1 + a0 a0 b0 a0 b1").unwrap());
    }

    #[test]
    fn normal_forms() {
        let s = system();
        let nf = normal_form(&s.poly("a0 a1 b0 b1").unwrap(), &s);
        assert_eq!(nf.value, s.poly("a0 b0 a1 b1").unwrap());
        assert_eq!(nf.steps, 2);
        let one = s.poly("1").unwrap();
        assert_eq!(normal_form(&one, &s).value, one);
        assert_eq!(normal_form(&one, &s).steps, 0);
    }

    #[test]
    fn rule_orientation() {
        let s = system();
        let r = make_rule(&s.poly("a1 b0 + b0 a1 + a0 b0 a0").unwrap()).unwrap();
        assert_eq!(s.display_word(r.lhs()), "a1 b0");
    }
}
