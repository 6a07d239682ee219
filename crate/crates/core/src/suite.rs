//! The verification suite: one runner per criterion, each returning a
//! verdict with details and timing. Shared by the command-line front end.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::anick::ResolutionPrefix;
use crate::error::Result;
use crate::field::PrimeField;
use crate::kostant::{
    big_system, conjecture_scan, frobenius_shift_check, graded_pbw_dimension, pbw_dimension,
    small_system, verify_small_against_big, ConjectureVariant,
};
use crate::poly::Polynomial;
use crate::resolution::{
    betti_table, exactness_defects, minimalize, minimalize_generic, radical_image_check, rank_dense,
    rank_sparse, BettiTable,
};
use crate::rewriting::{
    count_irreducible_by_degree, interreduce, is_complete, total_irreducible, RewritingSystem,
};
use crate::word::{Alphabet, GeneratorSpec, Word};

/// Verdict of one criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub title: String,
    /// Non-gating criteria are informational.
    pub gating: bool,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
}

impl Criterion {
    /// `PASS`/`FAIL` line, with timing.
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let tag = if self.gating { "" } else { " [non-gating]" };
        let limit = self
            .limit_seconds
            .map_or(String::new(), |l| format!(", limit {l} s"));
        format!(
            "criterion {:<3} {verdict}{tag}: {} ({:.3} s{limit})",
            self.id, self.title, self.seconds
        )
    }
}

fn timed(
    id: &str,
    title: &str,
    gating: bool,
    limit: Option<f64>,
    body: impl FnOnce(&mut Vec<String>) -> Result<bool>,
) -> Criterion {
    let start = Instant::now();
    let mut details = Vec::new();
    let ok = match body(&mut details) {
        Ok(ok) => ok,
        Err(e) => {
            details.push(format!("error: {e}"));
            false
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    let in_time = limit.map_or(true, |l| seconds < l);
    if !in_time {
        details.push(format!("took {seconds:.3} s"));
    }
    Criterion {
        id: id.into(),
        title: title.into(),
        gating,
        passed: ok && in_time,
        details,
        seconds,
        limit_seconds: limit,
    }
}

/// Index bound and degree cap for the resolution criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub k: u32,
    pub max_degree: u32,
    pub seed: u64,
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k: 4,
            max_degree: 16,
            seed: 0x5eed,
            cases: 1000,
        }
    }
}

pub fn criterion_1() -> Criterion {
    timed("1", "small basis S_l is a reduced complete system, l <= 3", true, Some(5.0), |det| {
        let mut ok = true;
        for l in 0..=3 {
            let s = small_system(l)?;
            let report = is_complete(s.system(), None);
            let reduced = interreduce(s.system())?;
            let fixed = reduced.same_rules(s.system()) && s.system().check_reduced();
            det.push(format!(
                "S_{l}: {} rules, {} pairs, {} witnesses, interreduce fixed: {fixed}",
                s.system().len(),
                report.pairs_checked,
                report.witnesses.len()
            ));
            ok &= report.passed() && fixed;
        }
        Ok(ok)
    })
}

pub fn criterion_2() -> Criterion {
    timed("2", "irreducible words of the small bases match PBW counts", true, Some(5.0), |det| {
        let mut ok = true;
        for l in 1..=3u32 {
            let s = small_system(l - 1)?;
            let total = total_irreducible(s.system(), 1 << 20)?;
            let per_degree = count_irreducible_by_degree(s.system(), 16);
            let graded_ok = (0..=16).all(|d| per_degree[d as usize] == graded_pbw_dimension(3, 2, l, d));
            let expected = 8u64.pow(l);
            det.push(format!(
                "indices below {l}: {total} words (8^{l} = {expected}), graded counts d <= 16 agree: {graded_ok}"
            ));
            ok &= total == expected && graded_ok;
        }
        for l in 1..=3u32 {
            let s = small_system(l)?;
            let total = total_irreducible(s.system(), 1 << 20)?;
            det.push(format!("S_{l}: {total} words (8^{} = {})", l + 1, 8u64.pow(l + 1)));
            ok &= total == 8u64.pow(l + 1);
        }
        Ok(ok)
    })
}

pub fn criterion_3() -> Criterion {
    timed("3", "divided-power systems are complete with PBW-many words", true, Some(60.0), |det| {
        let mut ok = true;
        for (n, p, l) in [(3, 2, 1), (3, 2, 2), (3, 3, 1), (4, 2, 1)] {
            let big = big_system(n, p, p.pow(l) - 1)?;
            let report = is_complete(big.system(), None);
            let total = total_irreducible(big.system(), 1 << 20)? as u128;
            let expected = pbw_dimension(n, p, l);
            det.push(format!(
                "n={n} p={p} l={l}: {} rules, complete {}, {total} words (expected {expected})",
                big.system().len(),
                report.passed()
            ));
            ok &= report.passed() && total == expected;
        }
        Ok(ok)
    })
}

pub fn criterion_4() -> Criterion {
    timed("4", "small relations vanish in the divided powers, indices <= 2", true, Some(10.0), |det| {
        let report = verify_small_against_big(2)?;
        for c in &report.checks {
            if !(c.substituted && c.grouped) {
                det.push(format!("fails: {}", c.relation));
            }
        }
        det.push(format!(
            "{} relations checked against exponents up to {}",
            report.checks.len(),
            report.exponent_bound
        ));
        Ok(report.passed())
    })
}

/// The differential values printed for the small resolution, for indices
/// up to `k_max`: `(level, chain, value)`.
pub fn golden_differentials(k_max: u32) -> Vec<(i32, String, String)> {
    let mut out = Vec::new();
    let braid = |k: u32| format!("b{k} a{k} b{k} a{k}");
    for l in 0..=k_max {
        for k in 0..l {
            for x in ["a", "b"] {
                out.push((1, format!("{x}{l} {x}{k}"), format!("{x}{l}.{x}{k} + {x}{k}.{x}{l}")));
                out.push((
                    2,
                    format!("{x}{l} {x}{k} {x}{k}"),
                    format!("{x}{l}.{x}{k} {x}{k} + {x}{k}.{x}{l} {x}{k}"),
                ));
            }
            out.push((
                2,
                format!("a{l} {}", braid(k)),
                format!("a{l}.{} + b{k} a{k} b{k}.a{l} a{k} + a{k} b{k} a{k}.a{l} b{k}", braid(k)),
            ));
        }
    }
    for k in 0..=k_max {
        for x in ["a", "b"] {
            out.push((1, format!("{x}{k} {x}{k}"), format!("{x}{k}.{x}{k}")));
        }
        out.push((1, braid(k), format!("b{k} a{k} b{k}.a{k} + a{k} b{k} a{k}.b{k}")));
    }
    for k in 0..k_max {
        let m = k + 1;
        out.push((
            2,
            format!("a{m} b{k} b{k}"),
            format!("a{m}.b{k} b{k} + b{k}.a{m} b{k} + .{}", braid(k)),
        ));
        out.push((
            2,
            format!("b{m} a{k} a{k}"),
            format!("b{m}.a{k} a{k} + a{k}.b{m} a{k} + .{}", braid(k)),
        ));
    }
    out
}

pub fn criterion_5() -> Criterion {
    timed("5", "d_1 and d_2 reproduce the closed formulas, indices <= 3", true, Some(10.0), |det| {
        let s = small_system(3)?;
        let p = ResolutionPrefix::build(s.system(), u32::MAX, None)?;
        let mut ok = true;
        let golden = golden_differentials(3);
        for (level, chain, value) in &golden {
            let got = p.d_of(*level, chain)?;
            let want = p.parse_element(level - 1, value)?;
            if *got != want {
                ok = false;
                det.push(format!("d_{level}(.{chain}) = {}, expected {value}", p.display(got)));
            }
        }
        det.push(format!("{} formulas compared", golden.len()));
        Ok(ok)
    })
}

fn small_prefix(k: u32, max_degree: u32) -> Result<ResolutionPrefix> {
    ResolutionPrefix::for_presentation(&small_system(k)?, max_degree)
}

pub fn criterion_6(cfg: &SuiteConfig) -> Criterion {
    timed("6", "the prefix is an exact complex in degrees <= D", true, Some(60.0), |det| {
        let p = small_prefix(cfg.k, cfg.max_degree)?;
        let complex = p.verify_complex();
        det.push(format!("checked generators per level {:?}", complex.checked));
        det.extend(complex.failures.iter().cloned());
        let mut ok = complex.passed();
        for level in 0..=1 {
            let defects = exactness_defects(&p, level, cfg.max_degree)?;
            let bad: Vec<usize> = (0..defects.len()).filter(|&d| defects[d] != 0).collect();
            det.push(format!("level {level}: nonzero defects in degrees {bad:?}"));
            ok &= bad.is_empty();
        }
        Ok(ok)
    })
}

/// The table of the minimal resolution: `A`, then `2` generators in each
/// degree `2^k`, then `2` relations in each degree `2^(k+1)` and `4` in
/// each degree `2^l + 2^k`, `l > k`.
pub fn expected_minimal_table(max_degree: u32) -> BettiTable {
    let mut t = BettiTable::new(max_degree);
    t.add(0, 0, 1);
    for k in 0..32 {
        let d = 1u64 << k;
        if d <= max_degree as u64 {
            t.add(1, d as u32, 2);
        }
        if 2 * d <= max_degree as u64 {
            t.add(2, 2 * d as u32, 2);
        }
        for l in k + 1..32 {
            let e = (1u64 << l) + d;
            if e <= max_degree as u64 {
                t.add(2, e as u32, 4);
            }
        }
    }
    t
}

/// The row set read literally off the acceptance statement: levels 1 and
/// 2 both carry `2^(k+1)` (k = 0..2) twice and `2^l + 2^k` four times.
pub fn literal_statement_table(max_degree: u32) -> BettiTable {
    let mut t = BettiTable::new(max_degree);
    t.add(0, 0, 1);
    for level in 1..=2 {
        for k in 0..=2 {
            t.add(level, 2 << k, 2);
        }
        for l in 0..32u32 {
            for k in 0..l {
                let e = (1u64 << l) + (1u64 << k);
                if e <= max_degree as u64 {
                    t.add(level, e as u32, 4);
                }
            }
        }
    }
    t
}

fn format_rows(t: &BettiTable) -> String {
    t.rows
        .iter()
        .map(|(l, r)| format!("{l}: {r:?}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Criterion 7 as four lines: radical checks, exactness after the
/// modification, the table against the minimal resolution, and the
/// literal row statement.
pub fn criterion_7(cfg: &SuiteConfig) -> Vec<Criterion> {
    let start = Instant::now();
    let prepared = small_prefix(cfg.k, cfg.max_degree).and_then(|p| Ok((minimalize(&p)?, p)));
    let (m, p) = match prepared {
        Ok(x) => x,
        Err(e) => {
            return vec![timed("7", "minimal resolution", true, Some(120.0), |_| Err(e))];
        }
    };
    let setup = start.elapsed().as_secs_f64();
    let mut out = Vec::new();
    out.push(timed("7a", "after minimalize, images of d_0, d_1, d_2 lie in the radical", true, Some(120.0), |det| {
        let mut ok = true;
        for level in 0..=2 {
            let r = radical_image_check(&m, level)?;
            det.push(format!("level {level}: {} generators, {} offenders", r.checked, r.offenders.len()));
            ok &= r.passed();
        }
        det.push(format!("cancelled pairs: {}", m.cancellations().len()));
        Ok(ok)
    }));
    out.push(timed("7b", "after minimalize, exactness defects vanish in degrees <= D", true, Some(120.0), |det| {
        let mut ok = m.verify_complex().passed();
        for level in -1..=1 {
            let defects = exactness_defects(&m, level, cfg.max_degree)?;
            let bad: Vec<usize> = (0..defects.len()).filter(|&d| defects[d] != 0).collect();
            det.push(format!("level {level}: nonzero defects in degrees {bad:?}"));
            ok &= bad.is_empty();
        }
        Ok(ok)
    }));
    out.push(timed("7c", "Betti table equals the expected minimal resolution", true, Some(120.0), |det| {
        let table = betti_table(&m, cfg.max_degree)?;
        let expected = expected_minimal_table(cfg.max_degree);
        det.push(format!("computed {}", format_rows(&table)));
        let generic = betti_table(&minimalize_generic(&p)?, cfg.max_degree)?;
        let agree = generic == table;
        det.push(format!("generic minimalization agrees: {agree}"));
        let lower = cfg.k.saturating_sub(1).max(1);
        let safe_lower = (1u32 << (lower + 1)) - 1;
        let d = safe_lower.min(cfg.max_degree);
        let other = minimalize(&small_prefix(lower, d)?)?;
        let stable = betti_table(&other, d)? == betti_table(&m, d)?;
        det.push(format!("index bounds {lower} and {} agree in degrees <= {d}: {stable}", cfg.k));
        Ok(table == expected && agree && stable)
    }));
    out.push(timed("7d", "Betti rows as literally stated (levels 1 and 2 identical)", false, Some(120.0), |det| {
        let table = betti_table(&m, cfg.max_degree)?;
        let literal = literal_statement_table(cfg.max_degree);
        det.push(format!("stated   {}", format_rows(&literal)));
        det.push(format!("computed {}", format_rows(&table)));
        Ok(table == literal)
    }));
    for c in &mut out {
        c.seconds += setup;
    }
    out
}

/// Random words over a weighted alphabet.
fn random_word(rng: &mut StdRng, a: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<_> = (0..len)
        .map(|_| crate::word::Letter(rng.gen_range(0..a.len()) as u16))
        .collect();
    a.word_from_letters(&letters)
}

fn random_poly(rng: &mut StdRng, s: &RewritingSystem, terms: usize, max_len: usize) -> Polynomial {
    let f = s.field();
    let ts: Vec<(i64, Word)> = (0..terms)
        .map(|_| {
            (
                rng.gen_range(1..f.characteristic() as i64),
                random_word(rng, s.alphabet(), max_len),
            )
        })
        .collect();
    Polynomial::from_terms(s.alphabet(), f, ts)
}

/// Rewrites at randomly chosen redexes until irreducible, returning the
/// result and the accumulated `sum c u (lhs - rhs) v`.
pub fn random_reduction(rng: &mut StdRng, s: &RewritingSystem, g: &Polynomial) -> (Polynomial, Polynomial) {
    let mut g = g.clone();
    let mut trace = Polynomial::zero(s.alphabet(), s.field());
    loop {
        let reducible: Vec<&Word> = g.support().filter(|w| !s.redexes(w).is_empty()).collect();
        if reducible.is_empty() {
            return (g, trace);
        }
        let w = reducible[rng.gen_range(0..reducible.len())].clone();
        let redexes = s.redexes(&w);
        let (pos, rule) = redexes[rng.gen_range(0..redexes.len())];
        let c = g.coefficient(&w);
        let lhs_len = s.rules()[rule].lhs().len();
        let (u, rest) = w.split_at(s.alphabet(), pos);
        let (_, v) = rest.split_at(s.alphabet(), lhs_len);
        let step = s.rules()[rule]
            .relation()
            .monomial_multiply(&u, &v)
            .expect("same alphabet")
            .scale(c as i64);
        trace = trace.add(&step).expect("same alphabet");
        g = s.rewrite_at(&g, &w, pos, rule);
    }
}

pub fn criterion_8(cfg: &SuiteConfig) -> Criterion {
    timed("8", "randomized order, normal-form, soundness and rank checks", true, Some(120.0), |det| {
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let mut failures = [0usize; 4];
        let x = Alphabet::new(vec![
            GeneratorSpec::new("x", 1, 0),
            GeneratorSpec::new("y", 2, 1),
            GeneratorSpec::new("z", 1, 2),
        ])?;
        for _ in 0..cfg.cases {
            let (u, v, w) = (
                random_word(&mut rng, &x, 6),
                random_word(&mut rng, &x, 6),
                random_word(&mut rng, &x, 6),
            );
            let lt = u < v;
            let laws = (!lt || (u.concat(&w) < v.concat(&w) && w.concat(&u) < w.concat(&v)))
                && Word::empty() <= u
                && (!u.contains(&w) || w <= u)
                && (u.cmp(&v) == v.cmp(&u).reverse());
            failures[0] += usize::from(!laws);
        }
        let systems = [small_system(2)?.into_system(), big_system(3, 2, 3)?.into_system()];
        for i in 0..cfg.cases {
            let s = &systems[i % 2];
            let g = random_poly(&mut rng, s, 4, 6);
            let nf = s.normal_form(&g);
            let (r, trace) = random_reduction(&mut rng, s, &g);
            failures[1] += usize::from(r != nf);
            let sound = g.sub(&r)? == trace && r.support().all(|w| s.is_irreducible_word(w));
            failures[2] += usize::from(!sound);
        }
        for _ in 0..cfg.cases {
            let p = [2, 3, 5, 7][rng.gen_range(0..4)];
            let f = PrimeField::new(p)?;
            let (nr, nc) = (rng.gen_range(1..=50), rng.gen_range(1..=50));
            let density = rng.gen_range(0.02..0.6);
            let dense: Vec<Vec<u32>> = (0..nr)
                .map(|_| {
                    (0..nc)
                        .map(|_| if rng.gen_bool(density) { rng.gen_range(1..p) } else { 0 })
                        .collect()
                })
                .collect();
            let columns: Vec<Vec<(usize, u32)>> = (0..nc)
                .map(|c| (0..nr).filter(|&r| dense[r][c] != 0).map(|r| (r, dense[r][c])).collect())
                .collect();
            failures[3] += usize::from(rank_dense(f, &dense) != rank_sparse(f, &columns));
        }
        let names = ["monoidal order", "strategy independence", "soundness", "rank agreement"];
        for (n, f) in names.iter().zip(failures) {
            det.push(format!("{n}: {} cases, {f} failures", cfg.cases));
        }
        Ok(failures.iter().all(|&f| f == 0))
    })
}

pub fn criterion_9() -> Criterion {
    timed("9", "conjecture scans (experimental)", false, None, |det| {
        let mut shift_ok = true;
        for l in 0..=3 {
            for j in 1..=2 {
                let r = frobenius_shift_check(l, j, None)?;
                shift_ok &= r.passed();
            }
        }
        det.push(format!(
            "index shift (l <= 3, j <= 2): {}",
            if shift_ok { "consistent up to bound" } else { "witness found" }
        ));
        let scans = [
            ("odd p presentation (p = 3, degree <= 9)", ConjectureVariant::OddPN3, 3, 3, 2, 9),
            ("p = 2 presentation (n = 4, degree <= 8)", ConjectureVariant::P2GeneralN, 4, 2, 3, 8),
        ];
        for (name, variant, n, p, index_bound, degree) in scans {
            let r = conjecture_scan(variant, n, p, index_bound, degree)?;
            det.push(if r.consistent() {
                format!("{name}: consistent up to bound")
            } else {
                format!(
                    "{name}: {} critical-pair witnesses, {} degrees with dimension mismatch",
                    r.witnesses.len(),
                    r.dimension_mismatches.len()
                )
            });
        }
        Ok(shift_ok)
    })
}

/// Every criterion in order. Criterion 9 is non-gating.
pub fn run_all(cfg: &SuiteConfig) -> Vec<Criterion> {
    let mut out = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(cfg),
    ];
    out.extend(criterion_7(cfg));
    out.push(criterion_8(cfg));
    out.push(criterion_9());
    out
}

/// Summary counts by verdict.
pub fn summary(results: &[Criterion]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for r in results {
        let key = match (r.gating, r.passed) {
            (true, true) => "passed",
            (true, false) => "failed",
            (false, _) => "informational",
        };
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_tables() {
        let t = expected_minimal_table(6);
        assert_eq!(
            t.entries(),
            vec![(0, 0, 1), (1, 1, 2), (1, 2, 2), (1, 4, 2), (2, 2, 2), (2, 3, 4), (2, 4, 2), (2, 5, 4), (2, 6, 4)]
        );
        assert_ne!(literal_statement_table(16), expected_minimal_table(16));
    }

    #[test]
    fn golden_list_size() {
        // Per pair l > k: 4 of a/b type plus 1; per k: 3; per k < k_max: 2.
        assert_eq!(golden_differentials(1).len(), 5 + 6 + 2);
    }
}
