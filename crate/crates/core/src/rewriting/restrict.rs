use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Terms};
use crate::word::{Alphabet, GeneratorSpec, Letter, Word};

use super::{RewriteRule, RewritingSystem};

/// The subsystem of rules whose left-hand side lies in `Y*`, over a fresh
/// alphabet made of the named generators (ranks and degrees kept).
///
/// Every kept rule must have its right-hand side inside `Y*` as well;
/// otherwise the restriction is refused. Completeness and reducedness
/// carry over.
pub fn restrict_to_subalphabet<S: AsRef<str>>(s: &RewritingSystem, names: &[S]) -> Result<RewritingSystem> {
    let a = s.alphabet();
    let mut keep: Vec<Letter> = names
        .iter()
        .map(|n| a.lookup(n.as_ref()))
        .collect::<Result<_>>()?;
    keep.sort();
    keep.dedup();
    let specs: Vec<GeneratorSpec> = keep
        .iter()
        .map(|&l| GeneratorSpec::new(a.name(l), a.degree(l), a.rank(l)))
        .collect();
    let sub = Alphabet::new(specs)?;
    let map: HashMap<Letter, Letter> = keep
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, Letter(i as u16)))
        .collect();
    let translate = |w: &Word| -> Option<Word> {
        let letters: Option<Vec<Letter>> = w.letters().iter().map(|l| map.get(l).copied()).collect();
        letters.map(|ls| Word::from_parts(w.degree(), &ls))
    };
    let mut rules = Vec::new();
    for r in s.rules() {
        let Some(lhs) = translate(r.lhs()) else {
            continue;
        };
        let mut terms = Terms::new();
        for (w, &c) in r.rhs().terms() {
            match translate(w) {
                Some(nw) => {
                    terms.insert(nw, c);
                }
                None => {
                    return Err(Error::HypothesisViolated {
                        rule: r.to_string(),
                    })
                }
            }
        }
        rules.push(RewriteRule::new(lhs, Polynomial::from_raw(&sub, s.field(), terms))?);
    }
    Ok(RewritingSystem::new(&sub, s.field(), rules)?
        .with_completeness(s.completeness())
        .with_reduced(s.known_reduced()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn system() -> RewritingSystem {
        let x = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
            GeneratorSpec::new("a1", 2, 2),
        ])
        .unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let rels: Vec<Polynomial> = ["a0 a0", "b0 b0", "a1 b0 + b0 a1 + a0 b0 a0", "a1 a0 + a0 a1"]
            .iter()
            .map(|r| Polynomial::parse(&x, f2, r).unwrap())
            .collect();
        RewritingSystem::from_relations(&x, f2, &rels).unwrap()
    }

    #[test]
    fn keeps_rules_inside() {
        let s = system();
        let r = restrict_to_subalphabet(&s, &["a0", "b0"]).unwrap();
        assert_eq!(r.alphabet().len(), 2);
        assert_eq!(r.len(), 2);
        let full = restrict_to_subalphabet(&s, &["a0", "b0", "a1"]).unwrap();
        assert_eq!(full.len(), s.len());
    }

    #[test]
    fn refuses_escaping_rhs() {
        let s = system();
        assert!(matches!(
            restrict_to_subalphabet(&s, &["a1", "b0"]),
            Err(Error::HypothesisViolated { .. })
        ));
    }
}
