//! Graded linear algebra on a resolution prefix: per-degree matrices of
//! the differentials, exactness defects, the radical criterion for
//! minimality, minimalization and Betti tables.

mod betti;
mod linalg;
mod minimal;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anick::{Basis, ResolutionPrefix};
use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::rewriting::irreducible_words;
use crate::word::Word;

pub use betti::{betti_table, generator_counts, BettiTable};
pub use linalg::{rank_dense, rank_sparse};
pub use minimal::{minimalize, minimalize_generic};

/// `d_level` restricted to internal degree `degree`.
#[derive(Debug, Clone)]
pub struct GradedMatrix {
    pub level: i32,
    pub degree: u32,
    /// Basis of `P_(level-1)` in this degree.
    pub rows: Vec<Basis>,
    /// Basis of `P_level` in this degree.
    pub cols: Vec<Basis>,
    /// Column `c` lists `(row, value)` with the coefficients of `d(cols[c])`.
    pub columns: Vec<Vec<(usize, Coeff)>>,
    pub field: PrimeField,
}

impl GradedMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> Coeff {
        self.columns[c]
            .iter()
            .find(|(row, _)| *row == r)
            .map_or(0, |&(_, v)| v)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<Coeff>> {
        let mut m = vec![vec![0; self.ncols()]; self.nrows()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v;
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_sparse(self.field, &self.columns)
    }
}

/// Irreducible words of each degree `0..=max_degree`.
pub(crate) fn words_by_degree(prefix: &ResolutionPrefix, max_degree: u32) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new(); max_degree as usize + 1];
    for w in irreducible_words(prefix.system(), max_degree) {
        out[w.degree() as usize].push(w);
    }
    out
}

fn check_degree(prefix: &ResolutionPrefix, d: u32) -> Result<()> {
    let bound = prefix.usable_degree();
    if d > bound {
        return Err(Error::DegreeBeyondSafe { degree: d, bound });
    }
    Ok(())
}

/// Basis elements `m.t` of `P_level` with `deg(mt) = d`, `t` active.
pub fn graded_basis(prefix: &ResolutionPrefix, level: i32, d: u32) -> Result<Vec<Basis>> {
    check_degree(prefix, d)?;
    let words = words_by_degree(prefix, d);
    basis_from(prefix, level, d, &words)
}

fn basis_from(prefix: &ResolutionPrefix, level: i32, d: u32, words: &[Vec<Word>]) -> Result<Vec<Basis>> {
    let chains = prefix.chains(level)?;
    let mut out = Vec::new();
    for idx in prefix.active_chains(level)? {
        let t = chains.get(idx);
        if t.degree() > d {
            continue;
        }
        for m in &words[(d - t.degree()) as usize] {
            out.push(Basis {
                word: m.concat(t),
                chain: idx,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// The matrix of `d_level : P_level -> P_(level-1)` in degree `d`, for
/// `level` in `0..=2`.
pub fn differential_matrix(prefix: &ResolutionPrefix, level: i32, d: u32) -> Result<GradedMatrix> {
    check_degree(prefix, d)?;
    let words = words_by_degree(prefix, d);
    matrix_from(prefix, level, d, &words)
}

fn matrix_from(prefix: &ResolutionPrefix, level: i32, d: u32, words: &[Vec<Word>]) -> Result<GradedMatrix> {
    if !(0..=2).contains(&level) {
        return Err(Error::BadLevel(level));
    }
    let rows = basis_from(prefix, level - 1, d, words)?;
    let cols = basis_from(prefix, level, d, words)?;
    let row_index: HashMap<&Basis, usize> = rows.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut columns = Vec::with_capacity(cols.len());
    for b in &cols {
        let m = prefix.coefficient_word(level, b);
        let dt = prefix.differential(level, b.chain)?;
        let image = prefix.left_multiply(&m, dt);
        let mut col = Vec::with_capacity(image.len());
        for (r, &c) in image.terms() {
            let i = row_index.get(r).ok_or_else(|| {
                Error::NotAComplex(format!(
                    "d_{level}({}) has a term {} outside the generators",
                    prefix.display_basis(level, b),
                    prefix.display_basis(level - 1, r)
                ))
            })?;
            col.push((*i, c));
        }
        columns.push(col);
    }
    Ok(GradedMatrix {
        level,
        degree: d,
        rows,
        cols,
        columns,
        field: prefix.field(),
    })
}

/// `dim ker(d_level) - rank(d_(level+1))` in degree `d`; at level `-1` the
/// kernel is that of the augmentation.
pub fn exactness_defect(prefix: &ResolutionPrefix, level: i32, d: u32) -> Result<u64> {
    check_degree(prefix, d)?;
    let words = words_by_degree(prefix, d);
    defect_from(prefix, level, d, &words)
}

fn defect_from(prefix: &ResolutionPrefix, level: i32, d: u32, words: &[Vec<Word>]) -> Result<u64> {
    let kernel = match level {
        -1 => words[d as usize].len() - usize::from(d == 0),
        0 | 1 => {
            let m = matrix_from(prefix, level, d, words)?;
            m.ncols() - m.rank()
        }
        _ => return Err(Error::BadLevel(level)),
    };
    let image = matrix_from(prefix, level + 1, d, words)?.rank();
    if image > kernel {
        return Err(Error::NotAComplex(format!(
            "rank of d_{} exceeds the kernel of d_{level} in degree {d}",
            level + 1
        )));
    }
    Ok((kernel - image) as u64)
}

/// Defects at `level` for every degree `0..=max_degree`, in parallel.
pub fn exactness_defects(prefix: &ResolutionPrefix, level: i32, max_degree: u32) -> Result<Vec<u64>> {
    check_degree(prefix, max_degree)?;
    let words = words_by_degree(prefix, max_degree);
    (0..=max_degree)
        .into_par_iter()
        .map(|d| defect_from(prefix, level, d, &words))
        .collect()
}

/// Generators whose differential has a term `e.t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalReport {
    pub level: i32,
    pub checked: usize,
    pub offenders: Vec<String>,
}

impl RadicalReport {
    pub fn passed(&self) -> bool {
        self.offenders.is_empty()
    }
}

/// `im(d_level) ⊂ Rad(P_(level-1))` on every tabulated generator.
pub fn radical_image_check(prefix: &ResolutionPrefix, level: i32) -> Result<RadicalReport> {
    if !(0..=2).contains(&level) {
        return Err(Error::BadLevel(level));
    }
    let chains = prefix.chains(level)?;
    let lower = prefix.chains(level - 1)?;
    let mut checked = 0;
    let mut offenders = Vec::new();
    for idx in prefix.active_chains(level)? {
        let Ok(dt) = prefix.differential(level, idx) else {
            continue;
        };
        checked += 1;
        let constants: Vec<String> = dt
            .terms()
            .keys()
            .filter(|b| b.word.len() == lower.get(b.chain).len())
            .map(|b| prefix.display_basis(level - 1, b))
            .collect();
        if !constants.is_empty() {
            offenders.push(format!(
                ".{} hits {}",
                prefix.system().display_word(chains.get(idx)),
                constants.join(", ")
            ));
        }
    }
    Ok(RadicalReport {
        level,
        checked,
        offenders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::small_system;

    #[test]
    fn degree_one_matrix() {
        let s = small_system(1).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 3).unwrap();
        let m = differential_matrix(&p, 0, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 2));
        assert_eq!(m.to_dense(), vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(
            differential_matrix(&p, 0, 4),
            Err(Error::DegreeBeyondSafe { degree: 4, bound: 3 })
        ));
    }

    #[test]
    fn small_defects_vanish() {
        let s = small_system(1).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 3).unwrap();
        for level in -1..=1 {
            assert_eq!(exactness_defects(&p, level, 3).unwrap(), vec![0; 4], "level {level}");
        }
    }

    #[test]
    fn radical_fails_before_minimalizing() {
        let s = small_system(2).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 7).unwrap();
        assert!(radical_image_check(&p, 1).unwrap().passed());
        let r = radical_image_check(&p, 2).unwrap();
        assert_eq!(r.offenders.len(), 2);
        assert!(r.offenders[0].contains(".b0 a0 b0 a0"), "{r:?}");
    }
}
