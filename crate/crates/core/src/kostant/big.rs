use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{binomial_mod_p, PrimeField};
use crate::poly::{add_term, Polynomial, Terms};
use crate::rewriting::{Completeness, RewriteRule, RewritingSystem};
use crate::word::{Alphabet, GeneratorSpec, Letter, Word};

use super::{default_position_order, Flavor, KostantPresentation, Position};

/// `e{i}{j}_{k}`, e.g. `e12_1` for `e_12^(1)`.
pub fn divided_power_name(pos: Position, k: u32) -> String {
    format!("e{}{}_{}", pos.i, pos.j, k)
}

/// The divided-power presentation with exponents `1..=exponent_bound` and
/// the default position order.
///
/// ```
/// # use ncgb::kostant::big_system;
/// let big = big_system(3, 2, 3).unwrap();
/// let s = big.system();
/// let nf = s.normal_form(&s.poly("e12_1 e23_1").unwrap());
/// assert_eq!(nf.to_string(), "e23_1 e12_1 + e13_1");
/// ```
pub fn big_system(n: u32, p: u32, exponent_bound: u32) -> Result<KostantPresentation> {
    big_system_with_order(n, p, exponent_bound, &default_position_order(n))
}

/// Same, with a caller-supplied position order (smallest first). Every
/// rule must come out ordered; otherwise the offending rule is reported.
pub fn big_system_with_order(
    n: u32,
    p: u32,
    exponent_bound: u32,
    order: &[Position],
) -> Result<KostantPresentation> {
    if !(2..=9).contains(&n) {
        return Err(Error::InvalidParameters(format!("n = {n} must lie in 2..=9")));
    }
    if exponent_bound == 0 {
        return Err(Error::InvalidParameters("exponent bound must be at least 1".into()));
    }
    let field = PrimeField::new(p)?;
    let mut expected = default_position_order(n);
    let mut given = order.to_vec();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(Error::InvalidParameters(format!(
            "position order must list each of the {} positions once",
            expected.len()
        )));
    }
    let b = exponent_bound as i64;
    let mut specs = Vec::new();
    for (r, &pos) in order.iter().enumerate() {
        for k in 1..=exponent_bound {
            let rank = r as i64 * (b + 1) + (b - k as i64);
            specs.push(GeneratorSpec::new(divided_power_name(pos, k), k * pos.span(), rank));
        }
    }
    let alphabet = Alphabet::new(specs)?;
    let builder = Builder::new(&alphabet, field, order, exponent_bound);
    let rules = builder.rules()?;
    let truncation = (p as u64).pow(ilog(p, exponent_bound as u64 + 1)) == exponent_bound as u64 + 1;
    let system = RewritingSystem::new(&alphabet, field, rules)?.with_completeness(if truncation {
        Completeness::Complete
    } else {
        Completeness::Unknown
    });
    Ok(KostantPresentation {
        n,
        field,
        flavor: Flavor::Big { exponent_bound },
        position_order: order.to_vec(),
        system,
    })
}

/// Largest `l` with `p^l <= x`.
fn ilog(p: u32, x: u64) -> u32 {
    let mut l = 0;
    let mut acc = 1u64;
    while acc * p as u64 <= x {
        acc *= p as u64;
        l += 1;
    }
    l
}

struct Builder<'a> {
    alphabet: &'a Arc<Alphabet>,
    field: PrimeField,
    rank: HashMap<Position, usize>,
    bound: u32,
}

impl<'a> Builder<'a> {
    fn new(alphabet: &'a Arc<Alphabet>, field: PrimeField, order: &[Position], bound: u32) -> Self {
        let rank = order.iter().enumerate().map(|(r, &p)| (p, r)).collect();
        Builder {
            alphabet,
            field,
            rank,
            bound,
        }
    }

    fn letter(&self, pos: Position, k: u32) -> Letter {
        self.alphabet
            .lookup(&divided_power_name(pos, k))
            .expect("exponent within bound")
    }

    /// Word of divided powers, zero exponents omitted.
    fn word(&self, factors: &[(Position, u32)]) -> Word {
        let letters: Vec<Letter> = factors
            .iter()
            .filter(|(_, k)| *k > 0)
            .map(|&(pos, k)| self.letter(pos, k))
            .collect();
        self.alphabet.word_from_letters(&letters)
    }

    fn rules(&self) -> Result<Vec<RewriteRule>> {
        let mut positions: Vec<Position> = self.rank.keys().copied().collect();
        positions.sort_by_key(|p| std::cmp::Reverse(self.rank[p]));
        let mut rules = Vec::new();
        for &p1 in &positions {
            for &p2 in &positions {
                if self.rank[&p1] < self.rank[&p2] {
                    continue;
                }
                for k in (1..=self.bound).rev() {
                    for r in (1..=self.bound).rev() {
                        rules.push(self.rule(p1, k, p2, r)?);
                    }
                }
            }
        }
        Ok(rules)
    }

    /// The rule with left-hand side `e_p1^(k) e_p2^(r)`, `p1` not below `p2`.
    fn rule(&self, p1: Position, k: u32, p2: Position, r: u32) -> Result<RewriteRule> {
        let f = self.field;
        let lhs = self.word(&[(p1, k), (p2, r)]);
        let mut rhs = Terms::new();
        let (i, j) = (p1.i, p1.j);
        if p1 == p2 {
            let c = binomial_mod_p((k + r) as u64, k as u64, f.characteristic());
            if c != 0 {
                if k + r > self.bound {
                    return Err(Error::AlphabetTooSmall {
                        lhs: self.alphabet.display(&lhs),
                        coeff: c,
                        target: format!("e{}{}", i, j),
                        exponent: k + r,
                        bound: self.bound,
                    });
                }
                add_term(&mut rhs, &f, self.word(&[(p1, k + r)]), c);
            }
        } else if j == p2.i {
            let t = p2.j;
            let (pit, pjt) = (Position::new(i, t), p2);
            for s in 0..=k.min(r) {
                add_term(&mut rhs, &f, self.word(&[(pjt, r - s), (pit, s), (p1, k - s)]), 1);
            }
        } else if i == p2.j {
            let s = p2.i;
            let (psi, psj) = (p2, Position::new(s, j));
            for t in 0..=k.min(r) {
                add_term(&mut rhs, &f, self.word(&[(psi, r - t), (psj, t), (p1, k - t)]), f.sign(t));
            }
        } else {
            add_term(&mut rhs, &f, self.word(&[(p2, r), (p1, k)]), 1);
        }
        RewriteRule::new(lhs, Polynomial::from_raw(self.alphabet, f, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::is_complete;

    #[test]
    fn base_case_rule() {
        let big = big_system(3, 2, 1).unwrap();
        let s = big.system();
        let nf = s.normal_form(&s.poly("e12_1 e23_1").unwrap());
        assert_eq!(nf, s.poly("e23_1 e12_1 + e13_1").unwrap());
        assert!(s.normal_form(&s.poly("e12_1 e12_1").unwrap()).is_zero());
        assert_eq!(s.len(), 6);
        assert!(is_complete(s, None).passed());
    }

    #[test]
    fn rule_four_has_signs() {
        let big = big_system(4, 3, 2).unwrap();
        let s = big.system();
        // (1,3) sits below (3,4), so e34 e13 is straightened by rule (4).
        let nf = s.normal_form(&s.poly("e34_1 e13_1").unwrap());
        assert_eq!(nf, s.poly("e13_1 e34_1 - e14_1").unwrap());
        let nf = s.normal_form(&s.poly("e12_1 e13_1").unwrap());
        assert_eq!(nf, s.poly("e13_1 e12_1").unwrap());
    }

    #[test]
    fn alphabet_too_small() {
        assert!(matches!(
            big_system(3, 3, 3),
            Err(Error::AlphabetTooSmall { .. })
        ));
        assert!(big_system(3, 2, 2).is_err());
        assert!(big_system(3, 2, 3).is_ok());
    }

    #[test]
    fn user_orders() {
        let order = [Position::new(2, 3), Position::new(1, 2), Position::new(1, 3)];
        assert!(matches!(
            big_system_with_order(3, 2, 1, &order),
            Err(Error::Unorderable { .. })
        ));
        let bad = [Position::new(1, 2), Position::new(1, 3)];
        assert!(big_system_with_order(3, 2, 1, &bad).is_err());
    }
}
