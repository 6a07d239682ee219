use crate::anick::{Basis, Cancellation, ModuleElement, ResolutionPrefix};
use crate::error::{Error, Result};
use crate::kostant::small_system;

/// Cancels generator `t` of `P_level` against `s` of `P_(level-1)`, where
/// `d(.t)` has the unit constant entry `lambda e.s`.
///
/// Every other `d(.t')` has its `m.s` terms replaced through
/// `e.s = (d(.t) - lambda e.s) / (-lambda)`, repeated until no `s` remains;
/// the `t` components of `d_(level+1)` are dropped.
fn cancel(prefix: &mut ResolutionPrefix, level: i32, t: usize, s: usize) -> Result<()> {
    let field = prefix.field();
    let lu = level as usize;
    let slot = lu + 1;
    let lambda = prefix.d[lu].get(&t).map(|dt| {
        let sw = prefix.chains[slot - 1].get(s).clone();
        dt.coefficient(&Basis { word: sw, chain: s })
    });
    if let Some(lambda) = lambda {
        if lambda == 0 {
            return Err(Error::InvalidParameters(format!(
                "d_{level} of chain {t} has no constant entry on chain {s}"
            )));
        }
        let dt = prefix.d[lu][&t].clone();
        let factor = field.neg(field.inv(lambda));
        let others: Vec<usize> = prefix.d[lu]
            .keys()
            .copied()
            .filter(|&o| o != t && prefix.active[slot][o])
            .collect();
        for o in others {
            let mut v = prefix.d[lu][&o].clone();
            while let Some((b, mu)) = v.terms().iter().find(|(b, _)| b.chain == s).map(|(b, &c)| (b.clone(), c)) {
                let m = prefix.coefficient_word(level - 1, &b);
                let shifted = prefix.left_multiply(&m, &dt);
                v.add_scaled(&field, field.mul(mu, factor), &shifted);
            }
            prefix.d[lu].insert(o, v);
        }
    }
    if level < 2 {
        for v in prefix.d[lu + 1].values_mut() {
            v.retain(|b, _| b.chain != t);
        }
    }
    let name = |lvl: usize, i: usize| prefix.system.display_word(prefix.chains[lvl].get(i));
    let record = Cancellation {
        level,
        generator: name(slot, t),
        partner: name(slot - 1, s),
    };
    prefix.active[slot][t] = false;
    prefix.active[slot - 1][s] = false;
    prefix.cancelled.push(record);
    prefix.modified = true;
    Ok(())
}

/// The explicit modification for the small presentation: drop
/// `b_k a_k b_k a_k` from level 1 and `b_(k+1) a_k a_k` from level 2 for
/// every `k` below the index bound, substituting in `d_2`.
pub fn minimalize(prefix: &ResolutionPrefix) -> Result<ResolutionPrefix> {
    let s = prefix.system();
    let letters = s.alphabet().len();
    if letters < 2 || letters % 2 != 0 {
        return Err(Error::PresentationMismatch("not a small presentation".into()));
    }
    let k_max = (letters / 2 - 1) as u32;
    let expected = small_system(k_max)?;
    let names_match = expected
        .system()
        .alphabet()
        .specs()
        .iter()
        .zip(s.alphabet().specs())
        .all(|(x, y)| x.name == y.name && x.degree == y.degree);
    let rules_match = names_match && {
        let ours: Vec<String> = s.sorted_rules().iter().map(|r| r.to_string()).collect();
        let theirs: Vec<String> = expected.system().sorted_rules().iter().map(|r| r.to_string()).collect();
        ours == theirs
    };
    if !rules_match {
        return Err(Error::PresentationMismatch(
            "the explicit modification applies to the small presentation only".into(),
        ));
    }
    let mut out = prefix.clone();
    for k in 0..k_max {
        let c = out.chain_index(1, &format!("b{k} a{k} b{k} a{k}"))?;
        let r = out.chain_index(2, &format!("b{} a{k} a{k}", k + 1))?;
        if !out.is_active(1, c) || !out.is_active(2, r) {
            return Err(Error::PresentationMismatch("prefix was already modified".into()));
        }
        cancel(&mut out, 2, r, c)?;
    }
    Ok(out)
}

/// Cancels unit constant entries of `d_1` and `d_2` one at a time, in
/// level then chain order, until none is left.
pub fn minimalize_generic(prefix: &ResolutionPrefix) -> Result<ResolutionPrefix> {
    let mut out = prefix.clone();
    loop {
        let mut found = None;
        'search: for level in 1..=2i32 {
            let lower = &out.chains[level as usize];
            for (&t, dt) in &out.d[level as usize] {
                if !out.is_active(level, t) {
                    continue;
                }
                if let Some(b) = constant_term(dt, |b| lower.get(b.chain).len() == b.word.len()) {
                    if out.is_active(level - 1, b.chain) {
                        found = Some((level, t, b.chain));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((level, t, s)) => cancel(&mut out, level, t, s)?,
            None => return Ok(out),
        }
    }
}

fn constant_term(dt: &ModuleElement, is_constant: impl Fn(&Basis) -> bool) -> Option<&Basis> {
    dt.terms().keys().find(|b| is_constant(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::radical_image_check;

    #[test]
    fn explicit_substitution() {
        let s = small_system(2).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 7).unwrap();
        let m = minimalize(&p).unwrap();
        assert_eq!(m.cancellations().len(), 2);
        let d = m.d_of(2, "a1 b0 b0").unwrap();
        assert_eq!(
            m.display(d),
            "b1.a0 a0 + a1.b0 b0 + b0.a1 b0 + a0.b1 a0"
        );
        assert!(m.d_of(2, "b1 a0 a0").is_err());
        for level in 0..=2 {
            assert!(radical_image_check(&m, level).unwrap().passed());
        }
        assert!(m.verify_complex().passed());
    }

    #[test]
    fn generic_agrees_on_counts() {
        let s = small_system(2).unwrap();
        let p = ResolutionPrefix::for_presentation(&s, 7).unwrap();
        let a = minimalize(&p).unwrap();
        let b = minimalize_generic(&p).unwrap();
        assert_eq!(b.cancellations().len(), 1);
        assert_eq!(
            crate::resolution::generator_counts(&a, 7).unwrap(),
            crate::resolution::generator_counts(&b, 7).unwrap()
        );
    }

    #[test]
    fn rejects_other_presentations() {
        let big = crate::kostant::big_system(3, 2, 1).unwrap();
        let p = ResolutionPrefix::for_presentation(&big, 3).unwrap();
        assert!(matches!(minimalize(&p), Err(Error::PresentationMismatch(_))));
    }
}
