use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::anick::ResolutionPrefix;
use crate::error::{Error, Result};

use super::radical_image_check;

/// Counts of generators by homological level and internal degree. The
/// module `A` itself is level 0, the generators of `A` level 1 and so on,
/// so Anick level `n` is homological level `n + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub max_degree: u32,
    pub rows: BTreeMap<u32, BTreeMap<u32, u64>>,
}

impl BettiTable {
    pub fn new(max_degree: u32) -> Self {
        BettiTable {
            max_degree,
            rows: BTreeMap::new(),
        }
    }

    pub fn get(&self, level: u32, degree: u32) -> u64 {
        self.rows
            .get(&level)
            .and_then(|r| r.get(&degree))
            .copied()
            .unwrap_or(0)
    }

    /// Adds to the count; zero counts are not stored.
    pub fn add(&mut self, level: u32, degree: u32, count: u64) {
        if count == 0 || degree > self.max_degree {
            return;
        }
        *self.rows.entry(level).or_default().entry(degree).or_default() += count;
    }

    pub fn row(&self, level: u32) -> BTreeMap<u32, u64> {
        self.rows.get(&level).cloned().unwrap_or_default()
    }

    /// `(level, degree, count)` rows, sorted.
    pub fn entries(&self) -> Vec<(u32, u32, u64)> {
        self.rows
            .iter()
            .flat_map(|(&l, r)| r.iter().map(move |(&d, &c)| (l, d, c)))
            .collect()
    }

    /// The table restricted to the given levels.
    pub fn levels(&self, levels: std::ops::RangeInclusive<u32>) -> BettiTable {
        BettiTable {
            max_degree: self.max_degree,
            rows: self
                .rows
                .iter()
                .filter(|(l, _)| levels.contains(l))
                .map(|(&l, r)| (l, r.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level degree count")?;
        for (l, d, c) in self.entries() {
            writeln!(f, "{l:>5} {d:>6} {c:>5}")?;
        }
        Ok(())
    }
}

/// Active generators of every level `-1..=2` with degree at most
/// `max_degree`, indexed homologically.
pub fn generator_counts(prefix: &ResolutionPrefix, max_degree: u32) -> Result<BettiTable> {
    let bound = prefix.usable_degree();
    if max_degree > bound {
        return Err(Error::DegreeBeyondSafe {
            degree: max_degree,
            bound,
        });
    }
    let mut table = BettiTable::new(max_degree);
    for level in -1..=2 {
        let chains = prefix.chains(level)?;
        for idx in prefix.active_chains(level)? {
            table.add((level + 1) as u32, chains.get(idx).degree(), 1);
        }
    }
    Ok(table)
}

/// Graded Betti numbers at homological levels `0..=2`.
///
/// These are generator counts of `P_-1, P_0, P_1`, which are minimal once
/// the images of `d_0, d_1, d_2` lie in the radical; otherwise the prefix
/// is rejected.
pub fn betti_table(prefix: &ResolutionPrefix, max_degree: u32) -> Result<BettiTable> {
    for level in 0..=2 {
        let r = radical_image_check(prefix, level)?;
        if !r.passed() {
            return Err(Error::NotAComplex(format!(
                "d_{level} is not minimal: {}",
                r.offenders.join("; ")
            )));
        }
    }
    Ok(generator_counts(prefix, max_degree)?.levels(0..=2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::small_system;
    use crate::resolution::minimalize;

    #[test]
    fn s1_table() {
        let s = small_system(1).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 3).unwrap();
        assert!(betti_table(&p, 3).is_ok());
        let m = minimalize(&p).unwrap();
        let t = betti_table(&m, 3).unwrap();
        assert_eq!(t.entries(), vec![(0, 0, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (2, 3, 4)]);
        let counts = generator_counts(&m, 3).unwrap();
        assert_eq!(counts.row(3), BTreeMap::from([(3, 2)]));
    }
}
