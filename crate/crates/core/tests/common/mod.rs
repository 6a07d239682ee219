#![allow(dead_code)]

use std::collections::BTreeMap;

use ncgb::kostant::{big_system, small_system};
use ncgb::resolution::{rank_dense, rank_sparse};
use ncgb::suite::random_reduction;
use ncgb::{Alphabet, GeneratorSpec, Letter, PrimeField, Polynomial, RewritingSystem, Word};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_mod(n: u64, k: u64, p: u32) -> u32 {
    (binomial(n, k) % BigUint::from(p)).to_u32().unwrap()
}

/// Number of PBW monomials with exponents below `p^l`, exactly.
pub fn pbw_total(n: u32, p: u32, l: u32) -> BigUint {
    BigUint::from(p).pow(l * n * (n - 1) / 2)
}

/// Graded PBW counts by brute force over all exponent tuples.
pub fn pbw_graded_brute(n: u32, p: u32, l: u32, max_degree: u32) -> Vec<u64> {
    let spans: Vec<u32> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| j - i)).collect();
    let bound = p.pow(l);
    let mut counts = vec![0u64; max_degree as usize + 1];
    let mut exps = vec![0u32; spans.len()];
    loop {
        let d: u32 = exps.iter().zip(&spans).map(|(e, s)| e * s).sum();
        if d <= max_degree {
            counts[d as usize] += 1;
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return counts;
            }
            exps[i] += 1;
            if exps[i] < bound {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// The minimal-resolution table read off the binary expansion of the
/// degree: `(level, degree) -> count`.
pub fn minimal_table_oracle(max_degree: u32) -> BTreeMap<(u32, u32), u64> {
    let mut t = BTreeMap::new();
    t.insert((0, 0), 1);
    for d in 1..=max_degree {
        match d.count_ones() {
            1 => {
                t.insert((1, d), 2);
                if d >= 2 {
                    t.insert((2, d), 2);
                }
            }
            2 => {
                t.insert((2, d), 4);
            }
            _ => {}
        }
    }
    t
}

pub fn table_map(t: &ncgb::resolution::BettiTable) -> BTreeMap<(u32, u32), u64> {
    t.entries().into_iter().map(|(l, d, c)| ((l, d), c)).collect()
}

/// Printed differentials of the small resolution, written out for the
/// indices 0 to 3.
pub const GOLDEN: &[(i32, &str, &str)] = &[
    (1, "a0 a0", "a0.a0"),
    (1, "b2 b2", "b2.b2"),
    (1, "a1 a0", "a1.a0 + a0.a1"),
    (1, "b3 b1", "b3.b1 + b1.b3"),
    (1, "b0 a0 b0 a0", "b0 a0 b0.a0 + a0 b0 a0.b0"),
    (1, "b2 a2 b2 a2", "b2 a2 b2.a2 + a2 b2 a2.b2"),
    (2, "a2 a1 a1", "a2.a1 a1 + a1.a2 a1"),
    (2, "b3 b0 b0", "b3.b0 b0 + b0.b3 b0"),
    (2, "a1 b0 b0", "a1.b0 b0 + b0.a1 b0 + .b0 a0 b0 a0"),
    (2, "b3 a2 a2", "b3.a2 a2 + .b2 a2 b2 a2 + a2.b3 a2"),
    (2, "a2 b1 a1 b1 a1", "a2.b1 a1 b1 a1 + b1 a1 b1.a2 a1 + a1 b1 a1.a2 b1"),
    (2, "a3 b0 a0 b0 a0", "a3.b0 a0 b0 a0 + b0 a0 b0.a3 a0 + a0 b0 a0.a3 b0"),
];

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

fn word_from(a: &Alphabet, idx: &[usize]) -> Word {
    let letters: Vec<Letter> = idx.iter().map(|&i| Letter((i % a.len()) as u16)).collect();
    a.word_from_letters(&letters)
}

fn poly_from(s: &RewritingSystem, raw: &[(u32, Vec<usize>)]) -> Polynomial {
    let p = s.field().characteristic() as i64;
    Polynomial::from_terms(
        s.alphabet(),
        s.field(),
        raw.iter().map(|(c, w)| (1 + (*c as i64) % (p - 1).max(1), word_from(s.alphabet(), w))),
    )
}

fn systems() -> Vec<RewritingSystem> {
    vec![
        small_system(2).unwrap().into_system(),
        big_system(3, 2, 3).unwrap().into_system(),
        big_system(3, 3, 2).unwrap().into_system(),
    ]
}

fn raw_poly() -> impl Strategy<Value = Vec<(u32, Vec<usize>)>> {
    prop::collection::vec((any::<u32>(), prop::collection::vec(0usize..16, 0..7)), 1..5)
}

/// Deglex is a monoidal total well-order on words.
pub fn prop_monoidal_order(cases: u32) -> Result<(), String> {
    let a = Alphabet::new(vec![
        GeneratorSpec::new("x", 1, 0),
        GeneratorSpec::new("y", 2, 1),
        GeneratorSpec::new("z", 1, 2),
    ])
    .unwrap();
    let w = || prop::collection::vec(0usize..3, 0..7);
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&(w(), w(), w()), |(u, v, x)| {
            let (u, v, x) = (word_from(&a, &u), word_from(&a, &v), word_from(&a, &x));
            prop_assert_eq!(u.cmp(&v), v.cmp(&u).reverse());
            prop_assert!(Word::empty() <= u);
            if u < v {
                prop_assert!(u.concat(&x) < v.concat(&x));
                prop_assert!(x.concat(&u) < x.concat(&v));
            }
            prop_assert!(u <= u.concat(&x) && u <= x.concat(&u));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Normal forms of a complete system do not depend on the strategy.
pub fn prop_strategy_independence(cases: u32) -> Result<(), String> {
    let systems = systems();
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&(0usize..3, raw_poly(), any::<u64>()), |(i, raw, seed)| {
            let s = &systems[i];
            let g = poly_from(s, &raw);
            let mut rng = StdRng::seed_from_u64(seed);
            let (r, _) = random_reduction(&mut rng, s, &g);
            prop_assert_eq!(r, s.normal_form(&g));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `g - NF(g)` is exactly the recorded combination of relations and the
/// normal form is irreducible.
pub fn prop_soundness(cases: u32) -> Result<(), String> {
    let systems = systems();
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&(0usize..3, raw_poly(), any::<u64>()), |(i, raw, seed)| {
            let s = &systems[i];
            let g = poly_from(s, &raw);
            let mut rng = StdRng::seed_from_u64(seed);
            let (r, trace) = random_reduction(&mut rng, s, &g);
            prop_assert_eq!(g.sub(&r).unwrap(), trace);
            prop_assert!(r.support().all(|w| s.is_irreducible_word(w)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Sparse and dense ranks agree on matrices up to 50 x 50.
pub fn prop_rank_agreement(cases: u32) -> Result<(), String> {
    let matrix = (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=50, 1usize..=50)
        .prop_flat_map(|(p, r, c)| {
            (
                Just(p),
                prop::collection::vec(prop::collection::vec((0u32..p, any::<bool>()), c), r),
            )
        });
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&matrix, |(p, raw)| {
            let f = PrimeField::new(p).unwrap();
            let dense: Vec<Vec<u32>> = raw
                .iter()
                .map(|row| row.iter().map(|&(x, keep)| if keep { x } else { 0 }).collect())
                .collect();
            let ncols = dense[0].len();
            let columns: Vec<Vec<(usize, u32)>> = (0..ncols)
                .map(|c| {
                    (0..dense.len())
                        .filter(|&r| dense[r][c] != 0)
                        .map(|r| (r, dense[r][c]))
                        .collect()
                })
                .collect();
            let r = rank_dense(f, &dense);
            prop_assert_eq!(r, rank_sparse(f, &columns));
            prop_assert!(r <= dense.len().min(ncols));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
