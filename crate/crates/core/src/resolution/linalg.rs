use std::collections::{BTreeMap, HashMap};

use crate::field::{Coeff, PrimeField};

/// Rank of a row-major matrix by Gaussian elimination.
pub fn rank_dense(field: PrimeField, rows: &[Vec<Coeff>]) -> usize {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let c = m[r][col];
            let pivot = m[rank].clone();
            for (x, &y) in m[r].iter_mut().zip(&pivot).skip(col) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a matrix given by sparse columns `(row, value)`. Each column is
/// reduced against the pivots found so far, keyed by largest row.
pub fn rank_sparse(field: PrimeField, columns: &[Vec<(usize, Coeff)>]) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, Coeff>> = HashMap::new();
    for col in columns {
        let mut v: BTreeMap<usize, Coeff> = BTreeMap::new();
        for &(r, c) in col {
            let c = field.add(v.get(&r).copied().unwrap_or(0), c);
            if c == 0 {
                v.remove(&r);
            } else {
                v.insert(r, c);
            }
        }
        while let Some((&r, &c)) = v.iter().next_back() {
            match pivots.get(&r) {
                Some(p) => {
                    for (&pr, &pc) in p {
                        let x = field.sub(v.get(&pr).copied().unwrap_or(0), field.mul(c, pc));
                        if x == 0 {
                            v.remove(&pr);
                        } else {
                            v.insert(pr, x);
                        }
                    }
                }
                None => {
                    let inv = field.inv(c);
                    for x in v.values_mut() {
                        *x = field.mul(*x, inv);
                    }
                    pivots.insert(r, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let f2 = PrimeField::new(2).unwrap();
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank_dense(f2, &m), 2);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(rank_dense(f3, &m), 3);
        let cols = vec![vec![(0, 1), (2, 1)], vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)]];
        assert_eq!(rank_sparse(f2, &cols), 2);
        assert_eq!(rank_sparse(f3, &cols), 3);
        assert_eq!(rank_sparse(f3, &[vec![], vec![(4, 0)]]), 0);
    }
}
