use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{binomial_mod_p, multinomial_p_power_coefficient, PrimeField};
use crate::poly::{add_term, Polynomial, Terms};
use crate::rewriting::{Completeness, RewritingSystem};
use crate::word::{Alphabet, GeneratorSpec, Letter, Word};

use super::{big_system, divided_power_name, Flavor, KostantPresentation, Position};

fn small_alphabet(l: u32) -> Result<Arc<Alphabet>> {
    let mut specs = Vec::new();
    for k in 0..=l {
        specs.push(GeneratorSpec::new(format!("a{k}"), 1 << k, 2 * k as i64));
        specs.push(GeneratorSpec::new(format!("b{k}"), 1 << k, 2 * k as i64 + 1));
    }
    Alphabet::new(specs)
}

/// The relations `S_l` over `X_l = {a_0 < b_0 < ... < a_l < b_l}`, row by
/// row: both skew families, both commuting families, braid, squares.
pub fn small_relations(l: u32) -> Result<(Arc<Alphabet>, Vec<Polynomial>)> {
    if l > 12 {
        return Err(Error::InvalidParameters(format!("index bound {l} is too large")));
    }
    let x = small_alphabet(l)?;
    let f2 = PrimeField::new(2)?;
    let w = |names: Vec<String>| x.word(&names).expect("names in X_l");
    let rel = |words: Vec<Word>| Polynomial::from_terms(&x, f2, words.into_iter().map(|w| (1, w)));
    let a: fn(u32) -> String = |k| format!("a{k}");
    let b: fn(u32) -> String = |k| format!("b{k}");
    let mut rels = Vec::new();
    for (x1, x2) in [(a, b), (b, a)] {
        for hi in 0..=l {
            for k in 0..hi {
                let mut tail = vec![x1(k), x2(k), x1(k)];
                tail.extend((k + 1..hi).map(x1));
                rels.push(rel(vec![w(vec![x1(hi), x2(k)]), w(vec![x2(k), x1(hi)]), w(tail)]));
            }
        }
    }
    for x1 in [a, b] {
        for hi in 0..=l {
            for k in 0..hi {
                rels.push(rel(vec![w(vec![x1(hi), x1(k)]), w(vec![x1(k), x1(hi)])]));
            }
        }
    }
    for k in 0..=l {
        rels.push(rel(vec![
            w(vec![b(k), a(k), b(k), a(k)]),
            w(vec![a(k), b(k), a(k), b(k)]),
        ]));
    }
    for k in 0..=l {
        rels.push(rel(vec![w(vec![a(k), a(k)])]));
        rels.push(rel(vec![w(vec![b(k), b(k)])]));
    }
    Ok((x, rels))
}

/// The presentation `S_l` for `p = 2`, `n = 3`.
///
/// ```
/// # use ncgb::kostant::small_system;
/// let s0 = small_system(0).unwrap();
/// assert_eq!(s0.system().len(), 3);
/// let s1 = small_system(1).unwrap();
/// let skew = s1.system().rules().iter().find(|r| s1.system().display_word(r.lhs()) == "a1 b0").unwrap();
/// assert_eq!(skew.to_string(), "a1 b0 -> b0 a1 + a0 b0 a0");
/// ```
pub fn small_system(l: u32) -> Result<KostantPresentation> {
    let (x, rels) = small_relations(l)?;
    let field = PrimeField::new(2)?;
    let system = RewritingSystem::from_relations(&x, field, &rels)?
        .with_completeness(Completeness::Complete)
        .with_reduced(true);
    Ok(KostantPresentation {
        n: 3,
        field,
        flavor: Flavor::Small { index_bound: l },
        position_order: Vec::new(),
        system,
    })
}

/// Outcome for one relation of `S_l` mapped into the divided powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    /// Letter-by-letter substitution, then normal form: zero?
    pub substituted: bool,
    /// Runs of one position merged first by the multinomial rule: zero?
    pub grouped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallBigReport {
    pub index_bound: u32,
    pub exponent_bound: u32,
    pub checks: Vec<RelationCheck>,
}

impl SmallBigReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.substituted && c.grouped)
    }
}

/// Maps `a_k -> e_12^(2^k)`, `b_k -> e_23^(2^k)` and reduces every
/// relation of `S_l` by the divided-power system with exponents up to
/// `2^(l+1) - 1`, by two independent routes.
pub fn verify_small_against_big(l: u32) -> Result<SmallBigReport> {
    let (x, rels) = small_relations(l)?;
    let bound = (1u32 << (l + 1)) - 1;
    let big = big_system(3, 2, bound)?;
    let s = big.system();
    let y = s.alphabet();
    let field = s.field();
    let (p12, p23) = (Position::new(1, 2), Position::new(2, 3));
    let image = |letter: Letter| -> (Position, u32) {
        let name = x.name(letter);
        let k: u32 = name[1..].parse().expect("index");
        (if name.starts_with('a') { p12 } else { p23 }, 1 << k)
    };
    let images: Vec<Polynomial> = x
        .letters()
        .map(|letter| {
            let (pos, e) = image(letter);
            let w = y.parse_word(&divided_power_name(pos, e)).expect("in alphabet");
            Polynomial::monomial(y, field, w, 1)
        })
        .collect();
    let mut checks = Vec::new();
    for rel in &rels {
        let substituted = s.normal_form(&rel.substitute(&images)?).is_zero();
        let mut grouped_terms = Terms::new();
        for (w, &c) in rel.terms() {
            let factors: Vec<(Position, u32)> = w.letters().iter().map(|&l| image(l)).collect();
            if let Some((gw, gc)) = group_runs(y, &factors, bound)? {
                add_term(&mut grouped_terms, &field, gw, field.mul(c, gc));
            }
        }
        let grouped = s
            .normal_form(&Polynomial::from_raw(y, field, grouped_terms))
            .is_zero();
        checks.push(RelationCheck {
            relation: rel.to_string(),
            substituted,
            grouped,
        });
    }
    Ok(SmallBigReport {
        index_bound: l,
        exponent_bound: bound,
        checks,
    })
}

/// Merges maximal runs of one position: `prod e^(a_i) = c * e^(sum a_i)`
/// with `c` the multinomial coefficient. `None` when some run vanishes.
fn group_runs(y: &Alphabet, factors: &[(Position, u32)], bound: u32) -> Result<Option<(Word, u32)>> {
    let mut coeff = 1;
    let mut letters = Vec::new();
    let mut idx = 0;
    while idx < factors.len() {
        let pos = factors[idx].0;
        let mut parts = Vec::new();
        while idx < factors.len() && factors[idx].0 == pos {
            parts.push(factors[idx].1 as u64);
            idx += 1;
        }
        let c = run_coefficient(&parts);
        if c == 0 {
            return Ok(None);
        }
        let total: u64 = parts.iter().sum();
        if total > bound as u64 {
            return Err(Error::InvalidParameters(format!(
                "run of exponent {total} exceeds the bound {bound}"
            )));
        }
        coeff = (coeff * c) % 2;
        letters.push(y.lookup(&divided_power_name(pos, total as u32))?);
    }
    Ok(Some((y.word_from_letters(&letters), coeff)))
}

/// Coefficient of `e^(sum)` in `prod e^(a_i)` over `F_2`. Distinct powers
/// of two form the binary digits of the sum, which is the multinomial of
/// the powers lemma; anything else is accumulated binomial by binomial.
fn run_coefficient(parts: &[u64]) -> u32 {
    let total: u64 = parts.iter().sum();
    let mut sorted = parts.to_vec();
    sorted.sort();
    let digits: Vec<u64> = (0..64).map(|s| 1u64 << s).filter(|b| total & b != 0).collect();
    if sorted == digits {
        return multinomial_p_power_coefficient(total, 2);
    }
    let mut acc = 1;
    let mut partial = 0;
    for &a in parts {
        acc *= binomial_mod_p(partial + a, a, 2);
        partial += a;
    }
    acc
}

/// Result of shifting every index of `S_l` by `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub l: u32,
    pub j: u32,
    pub relations_checked: usize,
    /// Every shifted relation reduces to zero modulo `S_(l+j)`.
    pub reduce_to_zero: bool,
    /// Every shifted relation is literally a relation of `S_(l+j)`.
    pub syntactic: bool,
    pub failures: Vec<String>,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.reduce_to_zero
    }
}

/// Applies `a_k -> a_(k+j)`, `b_k -> b_(k+j)` to the relations of `S_l`
/// (those of degree at most `degree_bound`, when given) and reduces the
/// images modulo `S_(l+j)`.
pub fn frobenius_shift_check(l: u32, j: u32, degree_bound: Option<u32>) -> Result<ShiftReport> {
    if j == 0 {
        return Err(Error::InvalidParameters("shift must be at least 1".into()));
    }
    let (x, rels) = small_relations(l)?;
    let target = small_system(l + j)?;
    let s = target.system();
    let (_, target_rels) = small_relations(l + j)?;
    let target_rels: Vec<Polynomial> = target_rels
        .iter()
        .map(|r| Polynomial::parse(s.alphabet(), s.field(), &r.to_string()))
        .collect::<Result<_>>()?;
    let images: Vec<Polynomial> = x
        .letters()
        .map(|letter| {
            let name = x.name(letter);
            let k: u32 = name[1..].parse().expect("index");
            s.poly(&format!("{}{}", &name[..1], k + j)).expect("in X_(l+j)")
        })
        .collect();
    let mut failures = Vec::new();
    let mut syntactic = true;
    let mut checked = 0;
    for rel in &rels {
        if degree_bound.is_some_and(|d| rel.max_degree().unwrap_or(0) > d) {
            continue;
        }
        checked += 1;
        let img = rel.substitute(&images)?;
        if !target_rels.contains(&img) {
            syntactic = false;
        }
        let nf = s.normal_form(&img);
        if !nf.is_zero() {
            failures.push(format!("{rel} maps to {img}, normal form {nf}"));
        }
    }
    Ok(ShiftReport {
        l,
        j,
        relations_checked: checked,
        reduce_to_zero: failures.is_empty(),
        syntactic,
        failures,
    })
}
