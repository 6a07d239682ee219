//! Prime fields and the two integer-combinatorial coefficients the Kostant
//! form needs: binomials mod p (Lucas) and the divided-power product
//! coefficient `k! / prod (p^s!)^{k_s}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, stored as its least nonnegative residue.
pub type Coeff = u32;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// ```
    /// # use ncgb::PrimeField;
    /// assert!(PrimeField::new(7).is_ok());
    /// assert!(PrimeField::new(9).is_err());
    /// ```
    pub fn new(p: u32) -> Result<Self> {
        // Products are formed in u64, so p must fit comfortably in u32.
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer to its residue.
    pub fn from_i64(&self, x: i64) -> Coeff {
        x.rem_euclid(self.p as i64) as Coeff
    }

    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as Coeff
    }

    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, a: Coeff, mut e: u32) -> Coeff {
        let mut base = a as u64 % self.p as u64;
        let m = self.p as u64;
        let mut acc = 1u64 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as Coeff
    }

    /// `(-1)^t` as a field element.
    pub fn sign(&self, t: u32) -> Coeff {
        if t % 2 == 0 {
            1 % self.p
        } else {
            self.neg(1)
        }
    }

    /// Signed representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: Coeff) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

/// Base-p digits of `n`, least significant first.
pub fn base_p_digits(mut n: u64, p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % p) as u32);
        n /= p;
    }
    digits
}

/// `C(n, k) mod p` for a single base-p digit pair; both arguments are `< p`.
fn small_binomial(n: u32, k: u32, field: &PrimeField) -> Coeff {
    if k > n {
        return 0;
    }
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = field.mul(num, n - i);
        den = field.mul(den, i + 1);
    }
    field.mul(num, field.inv(den))
}

/// `C(n, k) mod p` by Lucas' theorem; `k > n` gives 0.
///
/// ```
/// # use ncgb::field::binomial_mod_p;
/// assert_eq!(binomial_mod_p(5, 3, 2), 0);
/// assert_eq!(binomial_mod_p(3, 1, 2), 1);
/// ```
pub fn binomial_mod_p(n: u64, k: u64, p: u32) -> Coeff {
    let field = PrimeField::new(p).expect("binomial_mod_p needs a prime");
    if k > n {
        return 0;
    }
    let nd = base_p_digits(n, p);
    let kd = base_p_digits(k, p);
    let mut acc = 1 % p;
    for (i, &ni) in nd.iter().enumerate() {
        let ki = kd.get(i).copied().unwrap_or(0);
        acc = field.mul(acc, small_binomial(ni, ki, &field));
        if acc == 0 {
            break;
        }
    }
    acc
}

/// The coefficient `k! / prod_s (p^s!)^{k_s}` mod p, where `k_s` are the
/// base-p digits of `k`. It is the scalar relating the ordered product of
/// divided powers `e^(p^s)` (digit multiplicities) to `e^(k)`, and it never
/// vanishes.
///
/// Computed by accumulating the factors one at a time: multiplying
/// `e^(a)` by `e^(p^s)` contributes `C(a + p^s, p^s)`.
pub fn multinomial_p_power_coefficient(k: u64, p: u32) -> Coeff {
    let field = PrimeField::new(p).expect("multinomial coefficient needs a prime");
    let mut acc: Coeff = 1 % p;
    let mut partial = 0u64;
    let mut power = 1u64;
    for digit in base_p_digits(k, p) {
        for _ in 0..digit {
            acc = field.mul(acc, binomial_mod_p(partial + power, power, p));
            partial += power;
        }
        power *= p as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        for n in [0, 1, 4, 6, 9, 15, 21] {
            assert!(PrimeField::new(n).is_err(), "{n}");
        }
        for p in [2, 3, 5, 7, 11, 13, 65521] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let f = PrimeField::new(7).unwrap();
        for a in 0..7 {
            assert_eq!(f.from_i64(a as i64 + 7 * 13), a);
            assert_eq!(f.from_i64(a as i64 - 7 * 5), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
        assert_eq!(f.sign(3), 6);
        assert_eq!(f.signed(6), -1);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_mod_p(2, 1, 2), 0);
        assert_eq!(binomial_mod_p(5, 3, 2), 0);
        assert_eq!(binomial_mod_p(3, 1, 2), 1);
        assert_eq!(binomial_mod_p(1, 3, 2), 0);
        assert_eq!(binomial_mod_p(0, 0, 5), 1);
    }

    #[test]
    fn truncation_closure() {
        // k, r < p^l with k + r >= p^l forces a carry, so C(k+r, k) = 0.
        for p in [2u32, 3, 5] {
            for l in 1..=3u32 {
                let bound = (p as u64).pow(l);
                for k in 1..bound {
                    for r in 1..bound {
                        if k + r >= bound {
                            assert_eq!(binomial_mod_p(k + r, k, p), 0, "p={p} k={k} r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_p_power_coefficient(1, 2), 1);
        assert_eq!(multinomial_p_power_coefficient(8, 2), 1);
        assert_eq!(multinomial_p_power_coefficient(9, 3), 1);
        assert_eq!(multinomial_p_power_coefficient(3, 2), 1);
        assert_eq!(multinomial_p_power_coefficient(0, 3), 1);
    }
}
