use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::kostant::KostantPresentation;
use crate::rewriting::{is_complete, RewritingSystem};
use crate::word::Word;

use super::chains::{chains_t2, ChainSet};
use super::{Basis, ModuleElement};

/// Chain sets for levels `-1..=2` and the differentials `d_0, d_1, d_2`
/// on every generator of degree at most the cap.
#[derive(Debug, Clone)]
pub struct ResolutionPrefix {
    pub(crate) system: RewritingSystem,
    pub(crate) chains: [ChainSet; 4],
    pub(crate) active: [Vec<bool>; 4],
    pub(crate) d: [BTreeMap<usize, ModuleElement>; 3],
    pub(crate) degree_cap: u32,
    pub(crate) safe_degree: Option<u32>,
    pub(crate) modified: bool,
    pub(crate) cancelled: Vec<Cancellation>,
}

/// A generator of `P_level` cancelled against `partner` of `P_(level-1)`
/// through a unit constant entry of `d_level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cancellation {
    pub level: i32,
    pub generator: String,
    pub partner: String,
}

/// Outcome of checking `eps d_0 = 0`, `d_0 d_1 = 0`, `d_1 d_2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    /// Generators checked at levels 0, 1, 2.
    pub checked: [usize; 3],
    pub failures: Vec<String>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn slot(level: i32) -> Result<usize> {
    if (-1..=2).contains(&level) {
        Ok((level + 1) as usize)
    } else {
        Err(Error::BadLevel(level))
    }
}

impl ResolutionPrefix {
    /// Builds the prefix for a reduced, complete, homogeneous system,
    /// tabulating `d_n(.t)` for every chain of degree at most `degree_cap`.
    /// `safe_degree` caps the degrees later used for linear algebra.
    pub fn build(s: &RewritingSystem, degree_cap: u32, safe_degree: Option<u32>) -> Result<Self> {
        if !s.is_homogeneous() {
            return Err(Error::InvalidParameters(
                "the resolution prefix needs a homogeneous system".into(),
            ));
        }
        if !s.check_reduced() {
            return Err(Error::NotReduced("run interreduce first".into()));
        }
        if !s.known_complete() {
            let report = is_complete(s, None);
            if !report.passed() {
                return Err(Error::NotComplete(format!(
                    "{} of {} critical pairs fail",
                    report.witnesses.len(),
                    report.pairs_checked
                )));
            }
        }
        let chains = [
            ChainSet::unit(),
            ChainSet::letters(s),
            ChainSet::tips(s)?,
            chains_t2(s)?,
        ];
        let active = [
            vec![true; chains[0].len()],
            vec![true; chains[1].len()],
            vec![true; chains[2].len()],
            vec![true; chains[3].len()],
        ];
        let mut prefix = ResolutionPrefix {
            system: s.clone(),
            chains,
            active,
            d: Default::default(),
            degree_cap,
            safe_degree,
            modified: false,
            cancelled: Vec::new(),
        };
        for level in 0..=2 {
            for idx in 0..prefix.chains[slot(level)?].len() {
                let t = prefix.chains[slot(level)?].get(idx).clone();
                if t.degree() > degree_cap {
                    continue;
                }
                let b = Basis { word: t, chain: idx };
                let delta = prefix.delta(level, &b)?;
                let value = if level == 0 {
                    delta
                } else {
                    let image = prefix.apply_d(level - 1, &delta)?;
                    let mut v = delta;
                    let lifted = prefix.lift(level - 1, &image)?;
                    v.add_scaled(&prefix.field(), prefix.field().neg(1), &lifted);
                    v
                };
                prefix.d[level as usize].insert(idx, value);
            }
        }
        Ok(prefix)
    }

    /// The prefix for a Kostant presentation, with its safe degree.
    pub fn for_presentation(p: &KostantPresentation, degree_cap: u32) -> Result<Self> {
        ResolutionPrefix::build(p.system(), degree_cap, Some(p.safe_degree()))
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    pub fn field(&self) -> PrimeField {
        self.system.field()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn safe_degree(&self) -> Option<u32> {
        self.safe_degree
    }

    /// Largest degree usable for linear algebra.
    pub fn usable_degree(&self) -> u32 {
        self.safe_degree.map_or(self.degree_cap, |s| s.min(self.degree_cap))
    }

    /// Whether generators were cancelled after construction.
    pub fn is_modified(&self) -> bool {
        self.modified
    }

    pub fn cancellations(&self) -> &[Cancellation] {
        &self.cancelled
    }

    pub fn chains(&self, level: i32) -> Result<&ChainSet> {
        Ok(&self.chains[slot(level)?])
    }

    pub fn is_active(&self, level: i32, idx: usize) -> bool {
        slot(level).is_ok_and(|s| self.active[s].get(idx).copied().unwrap_or(false))
    }

    /// Indices of the active chains of a level.
    pub fn active_chains(&self, level: i32) -> Result<Vec<usize>> {
        let s = slot(level)?;
        Ok((0..self.chains[s].len()).filter(|&i| self.active[s][i]).collect())
    }

    /// Index of the chain `t` (names separated by spaces) at `level`.
    pub fn chain_index(&self, level: i32, t: &str) -> Result<usize> {
        let w = self.system.word(t)?;
        self.chains(level)?.position(&w).ok_or_else(|| {
            Error::InvalidParameters(format!("{t} is not a chain of level {level}"))
        })
    }

    /// Tabulated `d_level(.t)`.
    pub fn differential(&self, level: i32, chain: usize) -> Result<&ModuleElement> {
        if !(0..=2).contains(&level) {
            return Err(Error::BadLevel(level));
        }
        if !self.is_active(level, chain) {
            return Err(Error::InvalidParameters(format!(
                "chain {chain} of level {level} is not a generator"
            )));
        }
        self.d[level as usize].get(&chain).ok_or_else(|| Error::DegreeBeyondSafe {
            degree: self.chains[slot(level).expect("checked")].get(chain).degree(),
            bound: self.degree_cap,
        })
    }

    /// `d_level(.t)` for the chain written `t`.
    pub fn d_of(&self, level: i32, t: &str) -> Result<&ModuleElement> {
        self.differential(level, self.chain_index(level, t)?)
    }

    fn chain_len(&self, level: i32, b: &Basis) -> usize {
        self.chains[(level + 1) as usize].get(b.chain).len()
    }

    /// `m` in `m.t`.
    pub fn coefficient_word(&self, level: i32, b: &Basis) -> Word {
        let n = b.word.len() - self.chain_len(level, b);
        b.word.slice(self.system.alphabet(), 0, n)
    }

    /// `m * x`, re-expanded in the basis through normal forms.
    pub fn left_multiply(&self, m: &Word, x: &ModuleElement) -> ModuleElement {
        let f = self.field();
        let a = self.system.alphabet();
        let mut out = ModuleElement::zero(x.level());
        for (b, &c) in x.terms() {
            let split = b.word.len() - self.chain_len(x.level(), b);
            let (w, t) = b.word.split_at(a, split);
            for (v, c2) in self.system.normal_form_of_word(&m.concat(&w)) {
                let basis = Basis {
                    word: v.concat(&t),
                    chain: b.chain,
                };
                out.add_term(&f, basis, f.mul(c, c2));
            }
        }
        out
    }

    /// `delta_n(m.t)` for `n` in `0..=2`.
    pub fn delta(&self, level: i32, b: &Basis) -> Result<ModuleElement> {
        let t = self.chains(level)?.get(b.chain).clone();
        let tail = match level {
            0 => 0,
            1 => {
                let x = t.slice(self.system.alphabet(), t.len() - 1, t.len());
                self.chains[1].position(&x).expect("letters are chains")
            }
            2 => self.chains[3].overlap(b.chain).expect("level-2 chain").last,
            _ => return Err(Error::BadLevel(level)),
        };
        let m = self.coefficient_word(level, b);
        let head = ModuleElement::basis(level - 1, Basis { word: t, chain: tail });
        Ok(self.left_multiply(&m, &head))
    }

    /// `j_n(m.t)` for a basis element of level `n - 1`: the chain of level
    /// `n` ending the full word, if any.
    pub fn j(&self, level: i32, b: &Basis) -> Result<Option<Basis>> {
        if !(0..=2).contains(&level) {
            return Err(Error::BadLevel(level));
        }
        let target = &self.chains[slot(level)?];
        let a = self.system.alphabet();
        let shortest = self.chain_len(level - 1, b).max(1);
        let n = b.word.len();
        for len in shortest..=n {
            let suffix = b.word.slice(a, n - len, n);
            if let Some(idx) = target.position(&suffix) {
                return Ok(Some(Basis {
                    word: b.word.clone(),
                    chain: idx,
                }));
            }
        }
        Ok(None)
    }

    /// `eps` on `P_-1`: the coefficient of `e.e`.
    pub fn augmentation(&self, x: &ModuleElement) -> Coeff {
        x.terms()
            .iter()
            .find(|(b, _)| b.word.is_empty())
            .map_or(0, |(_, &c)| c)
    }

    /// `d_level` extended `A`-linearly.
    pub fn apply_d(&self, level: i32, x: &ModuleElement) -> Result<ModuleElement> {
        if !(0..=2).contains(&level) || x.level() != level {
            return Err(Error::BadLevel(level));
        }
        let f = self.field();
        let mut out = ModuleElement::zero(level - 1);
        for (b, &c) in x.terms() {
            let m = self.coefficient_word(level, b);
            let dt = self.d[level as usize].get(&b.chain).ok_or_else(|| {
                Error::DegreeBeyondSafe {
                    degree: b.word.degree(),
                    bound: self.degree_cap,
                }
            })?;
            out.add_scaled(&f, c, &self.left_multiply(&m, dt));
        }
        Ok(out)
    }

    /// `i_n(f)` for `f` in the kernel of `d_(n-1)` (of `eps` when `n = 0`):
    /// repeatedly lift the leading term through `j_n`.
    pub fn lift(&self, level: i32, f: &ModuleElement) -> Result<ModuleElement> {
        if !(0..=2).contains(&level) || f.level() != level - 1 {
            return Err(Error::BadLevel(level));
        }
        let residue = if level == 0 {
            let e = self.augmentation(f);
            (e != 0).then(|| e.to_string())
        } else {
            let r = self.apply_d(level - 1, f)?;
            (!r.is_zero()).then(|| self.display(&r))
        };
        if let Some(residue) = residue {
            return Err(Error::NotACycle {
                level: level - 1,
                residue,
            });
        }
        let field = self.field();
        let mut rest = f.clone();
        let mut out = ModuleElement::zero(level);
        while let Some((b, c)) = rest.leading() {
            let b = b.clone();
            let jb = self.j(level, &b)?.ok_or_else(|| Error::LiftFailed {
                level,
                reason: format!("no chain of level {level} ends {}", self.display_basis(level - 1, &b)),
            })?;
            let image = self.apply_d(level, &ModuleElement::basis(level, jb.clone()))?;
            if image.leading() != Some((&b, 1)) {
                return Err(Error::LiftFailed {
                    level,
                    reason: format!(
                        "d_{level}({}) does not lead with {}",
                        self.display_basis(level, &jb),
                        self.display_basis(level - 1, &b)
                    ),
                });
            }
            out.add_term(&field, jb, c);
            rest.add_scaled(&field, field.neg(c), &image);
        }
        if self.apply_d(level, &out)? != *f {
            return Err(Error::LiftFailed {
                level,
                reason: "lift does not map back".into(),
            });
        }
        Ok(out)
    }

    /// Checks `eps d_0`, `d_0 d_1` and `d_1 d_2` on every tabulated active
    /// generator.
    pub fn verify_complex(&self) -> ComplexReport {
        let mut checked = [0; 3];
        let mut failures = Vec::new();
        for level in 0..=2i32 {
            for (&idx, dt) in &self.d[level as usize] {
                if !self.is_active(level, idx) {
                    continue;
                }
                checked[level as usize] += 1;
                let t = self.system.display_word(self.chains[slot(level).expect("level")].get(idx));
                if level == 0 {
                    if self.augmentation(dt) != 0 {
                        failures.push(format!("eps d_0(.{t}) != 0"));
                    }
                    continue;
                }
                match self.apply_d(level - 1, dt) {
                    Ok(r) if r.is_zero() => {}
                    Ok(r) => failures.push(format!(
                        "d_{} d_{level}(.{t}) = {}",
                        level - 1,
                        self.display(&r)
                    )),
                    Err(e) => failures.push(format!("d_{} d_{level}(.{t}): {e}", level - 1)),
                }
            }
        }
        ComplexReport { checked, failures }
    }

    pub fn display_basis(&self, level: i32, b: &Basis) -> String {
        let m = self.coefficient_word(level, b);
        let t = self.chains[(level + 1) as usize].get(b.chain);
        let m = if m.is_empty() {
            String::new()
        } else {
            self.system.display_word(&m)
        };
        let t = if t.is_empty() {
            "e".to_string()
        } else {
            self.system.display_word(t)
        };
        format!("{m}.{t}")
    }

    /// Terms `m.t`, largest first; `e.t` prints as `.t`.
    pub fn display(&self, x: &ModuleElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let f = self.field();
        let mut s = String::new();
        for (i, (b, &c)) in x.terms().iter().rev().enumerate() {
            let signed = f.signed(c);
            if i > 0 {
                s.push_str(if signed < 0 { " - " } else { " + " });
            } else if signed < 0 {
                s.push('-');
            }
            if signed.abs() != 1 {
                let _ = write!(s, "{}*", signed.abs());
            }
            s.push_str(&self.display_basis(x.level(), b));
        }
        s
    }

    /// Parses `"a1.b0 b0 + b0.a1 b0 + .b0 a0 b0 a0"` at `level`.
    pub fn parse_element(&self, level: i32, text: &str) -> Result<ModuleElement> {
        let chains = self.chains(level)?;
        let f = self.field();
        let a = self.system.alphabet();
        let mut out = ModuleElement::zero(level);
        if text.trim() == "0" {
            return Ok(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (c, body) = match term.split_once('*') {
                Some((c, body)) => (
                    c.trim().parse::<i64>().map_err(|_| {
                        Error::InvalidParameters(format!("bad coefficient in `{term}`"))
                    })?,
                    body,
                ),
                None => (1, term),
            };
            let (m, t) = body.split_once('.').ok_or_else(|| {
                Error::InvalidParameters(format!("`{term}` lacks the `.` separator"))
            })?;
            let m = a.parse_word(m)?;
            let t = if t.trim() == "e" {
                Word::empty()
            } else {
                a.parse_word(t)?
            };
            let chain = chains.position(&t).ok_or_else(|| {
                Error::InvalidParameters(format!("`{}` is not a chain of level {level}", t))
            })?;
            if !self.system.is_irreducible_word(&m) {
                return Err(Error::InvalidParameters(format!("coefficient word of `{term}` is reducible")));
            }
            out.add_term(&f, Basis { word: m.concat(&t), chain }, f.from_i64(c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::kostant::small_system;
    use crate::poly::Polynomial;
    use crate::word::{Alphabet, GeneratorSpec};

    #[test]
    fn single_square() {
        let x = Alphabet::new(vec![GeneratorSpec::new("a", 1, 0)]).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let s = RewritingSystem::from_relations(&x, f3, &[Polynomial::parse(&x, f3, "a a").unwrap()]).unwrap();
        let p = ResolutionPrefix::build(&s, 10, None).unwrap();
        assert_eq!(p.display(p.d_of(0, "a").unwrap()), "a.e");
        assert_eq!(p.display(p.d_of(1, "a a").unwrap()), "a.a");
        assert_eq!(p.display(p.d_of(2, "a a a").unwrap()), "a.a a");
        assert!(p.verify_complex().passed());
    }

    #[test]
    fn small_maps() {
        let s1 = small_system(1).unwrap();
        let p = ResolutionPrefix::for_presentation(&s1, 12).unwrap();
        let delta = p.delta(0, &Basis { word: p.system().word("a0").unwrap(), chain: 0 }).unwrap();
        assert_eq!(p.display(&delta), "a0.e");
        let b = p.parse_element(0, "b0 a0 b0.a0").unwrap();
        let (b, _) = b.leading().unwrap();
        let jb = p.j(1, b).unwrap().unwrap();
        assert_eq!(p.display_basis(1, &jb), ".b0 a0 b0 a0");
        let t = p.parse_element(2, ".a1 b0 b0").unwrap();
        let (t, _) = t.leading().unwrap();
        assert_eq!(p.display(&p.delta(2, t).unwrap()), "a1.b0 b0");
        assert!(p.verify_complex().passed());
    }

    #[test]
    fn lift_rejects_non_cycles() {
        let s0 = small_system(0).unwrap();
        let p = ResolutionPrefix::for_presentation(&s0, 6).unwrap();
        let f = p.parse_element(0, "a0.b0").unwrap();
        assert!(matches!(p.lift(1, &f), Err(Error::NotACycle { level: 0, .. })));
        let e = p.parse_element(-1, ".e").unwrap();
        assert!(matches!(p.lift(0, &e), Err(Error::NotACycle { level: -1, .. })));
    }

    #[test]
    fn bad_levels() {
        let s0 = small_system(0).unwrap();
        let p = ResolutionPrefix::for_presentation(&s0, 4).unwrap();
        assert!(matches!(p.chains(3), Err(Error::BadLevel(3))));
        assert!(p.j(3, &Basis { word: Word::empty(), chain: 0 }).is_err());
    }
}
