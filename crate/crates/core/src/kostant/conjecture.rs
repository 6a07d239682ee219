use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::rewriting::{count_irreducible_by_degree, is_complete, RewritingSystem};
use crate::word::{Alphabet, GeneratorSpec, Word};

use super::{graded_pbw_dimension, Flavor, KostantPresentation};

/// The two conjectural families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureVariant {
    /// `n = 3`, odd `p`: generators `a{k}`, `b{k}` of degree `p^k`.
    OddPN3,
    /// `p = 2`, `n >= 4`: generators `a{i}_{k}` of degree `2^k`.
    P2GeneralN,
}

impl std::str::FromStr for ConjectureVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd_p_n3" => Ok(ConjectureVariant::OddPN3),
            "p2_general_n" => Ok(ConjectureVariant::P2GeneralN),
            other => Err(Error::InvalidParameters(format!("unknown variant `{other}`"))),
        }
    }
}

impl std::fmt::Display for ConjectureVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConjectureVariant::OddPN3 => "odd_p_n3",
            ConjectureVariant::P2GeneralN => "p2_general_n",
        })
    }
}

/// Permutations `(i_1, ..., i_l)` of `1..=l` in which every step either
/// descends or climbs by exactly one, in lexicographic order.
///
/// ```
/// # use ncgb::kostant::permutation_set;
/// assert_eq!(permutation_set(2), vec![vec![1, 2], vec![2, 1]]);
/// assert_eq!(permutation_set(3).len(), 4);
/// ```
pub fn permutation_set(l: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, used: &mut Vec<bool>, l: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == l as usize {
            out.push(prefix.clone());
            return;
        }
        for x in 1..=l {
            if used[x as usize] {
                continue;
            }
            if let Some(&last) = prefix.last() {
                if !(x < last || x == last + 1) {
                    continue;
                }
            }
            used[x as usize] = true;
            prefix.push(x);
            extend(prefix, used, l, out);
            prefix.pop();
            used[x as usize] = false;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; l as usize + 1], l, &mut out);
    out
}

/// Builds the literal relation set of a conjectural presentation, with
/// generator indices `k <= index_bound`.
///
/// For `p2_general_n` the generator indices `i` run over `1..n`, so the
/// permutation families use `l + m <= n - 1`; the closing row written in
/// the `n = 3` letters `a_l`, `b_k` has no meaning here and is left out.
pub fn conjectural_system(
    variant: ConjectureVariant,
    n: u32,
    p: u32,
    index_bound: u32,
) -> Result<KostantPresentation> {
    let field = PrimeField::new(p)?;
    let (alphabet, rels) = match variant {
        ConjectureVariant::OddPN3 => {
            if n != 3 || p == 2 {
                return Err(Error::InvalidParameters(
                    "odd_p_n3 needs n = 3 and an odd prime p".into(),
                ));
            }
            odd_p_relations(field, index_bound)?
        }
        ConjectureVariant::P2GeneralN => {
            if p != 2 || !(4..=9).contains(&n) {
                return Err(Error::InvalidParameters(
                    "p2_general_n needs p = 2 and 4 <= n <= 9".into(),
                ));
            }
            p2_relations(field, n, index_bound)?
        }
    };
    let mut unique: Vec<Polynomial> = Vec::new();
    for r in rels {
        if !r.is_zero() && !unique.contains(&r) {
            unique.push(r);
        }
    }
    let system = RewritingSystem::from_relations(&alphabet, field, &unique)?;
    Ok(KostantPresentation {
        n,
        field,
        flavor: Flavor::Conjectural {
            variant,
            index_bound,
        },
        position_order: Vec::new(),
        system,
    })
}

fn power_degree(p: u32, k: u32) -> Result<u32> {
    p.checked_pow(k)
        .ok_or_else(|| Error::InvalidParameters(format!("degree {p}^{k} overflows")))
}

struct Words<'a> {
    x: &'a Arc<Alphabet>,
    field: PrimeField,
}

impl Words<'_> {
    fn w(&self, names: &[String]) -> Word {
        self.x.word(names).expect("declared names")
    }

    fn rel(&self, terms: Vec<(i64, Vec<String>)>) -> Polynomial {
        Polynomial::from_terms(self.x, self.field, terms.into_iter().map(|(c, n)| (c, self.w(&n))))
    }
}

fn repeat(names: &[String], times: u32) -> Vec<String> {
    (0..times).flat_map(|_| names.iter().cloned()).collect()
}

fn odd_p_relations(field: PrimeField, kmax: u32) -> Result<(Arc<Alphabet>, Vec<Polynomial>)> {
    let p = field.characteristic();
    let mut specs = Vec::new();
    for k in 0..=kmax {
        let d = power_degree(p, k)?;
        specs.push(GeneratorSpec::new(format!("a{k}"), d, 2 * k as i64));
        specs.push(GeneratorSpec::new(format!("b{k}"), d, 2 * k as i64 + 1));
    }
    let x = Alphabet::new(specs)?;
    let ws = Words { x: &x, field };
    let a: fn(u32) -> String = |k| format!("a{k}");
    let b: fn(u32) -> String = |k| format!("b{k}");
    let mut rels = Vec::new();
    for k in 0..=kmax {
        let (ak, bk) = (a(k), b(k));
        rels.push(ws.rel(vec![(1, repeat(std::slice::from_ref(&ak), p))]));
        rels.push(ws.rel(vec![(1, repeat(std::slice::from_ref(&bk), p))]));
        rels.push(ws.rel(vec![
            (1, vec![bk.clone(), bk.clone(), ak.clone()]),
            (-2, vec![bk.clone(), ak.clone(), bk.clone()]),
            (1, vec![ak.clone(), bk.clone(), bk.clone()]),
        ]));
        rels.push(ws.rel(vec![
            (1, vec![bk.clone(), ak.clone(), ak.clone()]),
            (-2, vec![ak.clone(), bk.clone(), ak.clone()]),
            (1, vec![ak.clone(), ak.clone(), bk.clone()]),
        ]));
        rels.push(ws.rel(vec![
            (1, repeat(&[bk.clone(), ak.clone()], p)),
            (-1, repeat(&[ak.clone(), bk.clone()], p)),
        ]));
    }
    for (x1, x2) in [(a, b), (b, a)] {
        for hi in 0..=kmax {
            for k in 0..hi {
                let mut tail = vec![x1(k), x2(k)];
                tail.extend(repeat(&[x1(k)], p - 1));
                for m in k + 1..hi {
                    tail.extend(repeat(&[x1(m)], p - 1));
                }
                rels.push(ws.rel(vec![
                    (1, vec![x1(hi), x2(k)]),
                    (-1, vec![x2(k), x1(hi)]),
                    (-1, tail),
                ]));
            }
        }
    }
    Ok((x, rels))
}

fn p2_relations(field: PrimeField, n: u32, kmax: u32) -> Result<(Arc<Alphabet>, Vec<Polynomial>)> {
    let mut specs = Vec::new();
    for k in 0..=kmax {
        for i in 1..n {
            let rank = k as i64 * (n as i64 - 1) + (i as i64 - 1);
            specs.push(GeneratorSpec::new(format!("a{i}_{k}"), power_degree(2, k)?, rank));
        }
    }
    let x = Alphabet::new(specs)?;
    let ws = Words { x: &x, field };
    let seq = |s: &[u32], k: u32| -> Vec<String> { s.iter().map(|i| format!("a{i}_{k}")).collect() };
    let range = |from: u32, to: u32| -> Vec<u32> {
        if from <= to {
            (from..=to).collect()
        } else {
            (to..=from).rev().collect()
        }
    };
    let mut rels = Vec::new();
    for k in 0..=kmax {
        for i in 1..n {
            rels.push(ws.rel(vec![(1, seq(&[i, i], k))]));
        }
        for l in 1..n {
            for m in 0..=(n - 1 - l) {
                let terms = permutation_set(l)
                    .into_iter()
                    .map(|perm| {
                        let shifted: Vec<u32> = perm.iter().map(|i| i + m).collect();
                        (1, repeat(&seq(&shifted, k), 2))
                    })
                    .collect();
                rels.push(ws.rel(terms));
            }
        }
        for m in 1..n {
            for i in 1..n.saturating_sub(m) {
                let left = seq(&[i + m - 1], k);
                let mut terms = Vec::new();
                for inner in [range(i, i + m), range(i + m, i)] {
                    let inner = seq(&inner, k);
                    terms.push((1, [left.clone(), inner.clone()].concat()));
                    terms.push((-1, [inner, left.clone()].concat()));
                }
                rels.push(ws.rel(terms));
            }
        }
    }
    Ok((x, rels))
}

/// Bounded check of a conjectural presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub variant: ConjectureVariant,
    pub n: u32,
    pub p: u32,
    pub index_bound: u32,
    pub degree_bound: u32,
    pub relations: usize,
    pub pairs_checked: usize,
    /// Tips of critical pairs whose obstruction does not reduce to zero.
    pub witnesses: Vec<String>,
    /// `(degree, irreducible words, graded dimension)` where they differ.
    pub dimension_mismatches: Vec<(u32, u64, u64)>,
}

impl ConjectureReport {
    /// Consistent up to the degree bound: all critical pairs resolve and
    /// the irreducible words match the expected graded dimensions.
    pub fn consistent(&self) -> bool {
        self.witnesses.is_empty() && self.dimension_mismatches.is_empty()
    }
}

/// Resolves every critical pair with tip degree at most `degree_bound` and
/// compares irreducible-word counts with the dimensions of the subalgebra
/// generated by the truncated alphabet (exponents below `p^(index_bound+1)`).
pub fn conjecture_scan(
    variant: ConjectureVariant,
    n: u32,
    p: u32,
    index_bound: u32,
    degree_bound: u32,
) -> Result<ConjectureReport> {
    let pres = conjectural_system(variant, n, p, index_bound)?;
    let s = pres.system();
    let report = is_complete(s, Some(degree_bound));
    let witnesses = report
        .witnesses
        .iter()
        .map(|w| format!("{} -> {}", w.pair.describe(s), w.residue))
        .collect();
    let counts = count_irreducible_by_degree(s, degree_bound);
    let dimension_mismatches = counts
        .iter()
        .enumerate()
        .filter_map(|(d, &c)| {
            let expected = graded_pbw_dimension(n, p, index_bound + 1, d as u32);
            (c != expected).then_some((d as u32, c, expected))
        })
        .collect();
    Ok(ConjectureReport {
        variant,
        n,
        p,
        index_bound,
        degree_bound,
        relations: s.len(),
        pairs_checked: report.pairs_checked,
        witnesses,
        dimension_mismatches,
    })
}
