use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::Error;
use crate::poly::Polynomial;

use super::critical::{obstruction_terms, pairs_between, CriticalPair};
use super::{make_rule, Completeness, RewritingSystem};

#[derive(Debug, Clone, Error)]
pub enum CompletionError {
    #[error("degree bound {bound} is below the largest left-hand degree {needed}")]
    BoundTooSmall { bound: u32, needed: u32 },
    #[error("completion exceeded the cap of {cap} rules")]
    CapExceeded {
        cap: usize,
        partial: Box<RewritingSystem>,
    },
    #[error(transparent)]
    Algebra(#[from] Error),
}

/// Critical-pair completion up to a tip degree.
///
/// Pairs are processed smallest tip first (ties by rule index); each
/// obstruction with nonzero normal form is adjoined as a new rule. The
/// result is flagged complete up to `degree_bound`.
pub fn complete(
    s: &RewritingSystem,
    degree_bound: u32,
    cap: usize,
) -> Result<RewritingSystem, CompletionError> {
    let needed = s.max_lhs_degree();
    if degree_bound < needed {
        return Err(CompletionError::BoundTooSmall {
            bound: degree_bound,
            needed,
        });
    }
    let mut sys = s.clone();
    let mut queue: BTreeSet<CriticalPair> = BTreeSet::new();
    let enqueue = |queue: &mut BTreeSet<CriticalPair>, sys: &RewritingSystem, i: usize, j: usize| {
        for cp in pairs_between(sys, i, j) {
            if cp.tip.degree() <= degree_bound {
                queue.insert(cp);
            }
        }
    };
    for i in 0..sys.len() {
        for j in 0..sys.len() {
            enqueue(&mut queue, &sys, i, j);
        }
    }
    while let Some(cp) = queue.pop_first() {
        let (nf, _) = sys.reduce_terms(obstruction_terms(&sys, &cp), None);
        if nf.is_empty() {
            continue;
        }
        let f = Polynomial::from_raw(&sys.alphabet, sys.field, nf);
        let rule = make_rule(&f)?;
        if sys.len() >= cap {
            return Err(CompletionError::CapExceeded {
                cap,
                partial: Box::new(sys),
            });
        }
        sys.push_rule(rule);
        let new = sys.len() - 1;
        for j in 0..=new {
            enqueue(&mut queue, &sys, new, j);
            if j != new {
                enqueue(&mut queue, &sys, j, new);
            }
        }
    }
    let completeness = match s.completeness {
        Completeness::Complete if sys.len() == s.len() => Completeness::Complete,
        _ => Completeness::UpToDegree(degree_bound),
    };
    sys.reduced = sys.len() == s.len() && s.reduced;
    Ok(sys.with_completeness(completeness))
}

/// Replaces each rule by the normal form of its relation modulo the other
/// rules until nothing changes; rules reducing to zero are dropped.
/// Positions of surviving rules are kept.
pub fn interreduce(s: &RewritingSystem) -> Result<RewritingSystem, Error> {
    let mut sys = s.clone();
    'outer: loop {
        for i in 0..sys.len() {
            let rel = sys.rules[i].relation();
            let (nf, _) = sys.reduce_terms(rel.terms().clone(), Some(i));
            if nf == *rel.terms() {
                continue;
            }
            let mut rules = sys.rules.clone();
            if nf.is_empty() {
                rules.remove(i);
            } else {
                rules[i] = make_rule(&Polynomial::from_raw(&sys.alphabet, sys.field, nf))?;
            }
            let completeness = sys.completeness;
            sys = RewritingSystem::new(&sys.alphabet, sys.field, rules)?
                .with_completeness(completeness);
            continue 'outer;
        }
        break;
    }
    Ok(sys.with_reduced(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rewriting::is_complete;
    use crate::word::{Alphabet, GeneratorSpec};

    fn sys(rels: &[&str]) -> RewritingSystem {
        let x = Alphabet::new(vec![
            GeneratorSpec::new("a0", 1, 0),
            GeneratorSpec::new("b0", 1, 1),
        ])
        .unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| Polynomial::parse(&x, f2, s).unwrap())
            .collect();
        RewritingSystem::from_relations(&x, f2, &rels).unwrap()
    }

    #[test]
    fn complete_input_unchanged() {
        let s = sys(&["a0 a0", "b0 b0"]);
        let c = complete(&s, 6, 100).unwrap();
        assert!(c.same_rules(&s));
        assert_eq!(c.completeness(), Completeness::UpToDegree(6));
    }

    #[test]
    fn adjoins_missing_rule() {
        let s = sys(&["b0 a0 b0 + a0 b0 a0"]);
        assert!(!is_complete(&s, None).passed());
        let c = complete(&s, 6, 100).unwrap();
        assert!(c.len() > s.len());
        assert!(is_complete(&c, Some(6)).passed());
    }

    #[test]
    fn bound_and_cap_errors() {
        let s = sys(&["b0 a0 b0 a0 + a0 b0 a0 b0"]);
        assert!(matches!(
            complete(&s, 3, 10),
            Err(CompletionError::BoundTooSmall { bound: 3, needed: 4 })
        ));
        let s = sys(&["b0 a0 b0 + a0 b0 a0"]);
        match complete(&s, 12, 2) {
            Err(CompletionError::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 2);
                assert_eq!(partial.len(), 2);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn interreduce_drops_redundant() {
        let s = sys(&["a0 a0", "a0 a0 a0"]);
        let r = interreduce(&s).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.known_reduced());
        assert!(r.check_reduced());
    }

    #[test]
    fn interreduce_rewrites_tails() {
        let s = sys(&["b0 b0 + a0 b0", "a0 b0 + a0 a0"]);
        let r = interreduce(&s).unwrap();
        assert!(r.check_reduced());
        let g = s.poly("b0 b0 b0 a0").unwrap();
        let h = Polynomial::parse(r.alphabet(), r.field(), "b0 b0 b0 a0").unwrap();
        assert_eq!(s.normal_form(&g), r.normal_form(&h));
    }
}
