//! Exact arithmetic on integer combinations of `L`-th roots of unity.
//!
//! A sum `sum_t c_t * zeta_L^t` vanishes iff the polynomial `sum_t c_t x^t`
//! is divisible by the cyclotomic polynomial `Phi_L`, the minimal polynomial
//! of `zeta_L` over the rationals. `Phi_L` is monic with integer
//! coefficients, so the remainder can be computed exactly in `i64`.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `zeta_L^exponent`, exponent kept reduced modulo `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootExponent {
    exponent: usize,
    modulus: usize,
}

impl RootExponent {
    pub fn new(exponent: i64, modulus: usize) -> Self {
        Self {
            exponent: exponent.rem_euclid(modulus as i64) as usize,
            modulus,
        }
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn inverse(self) -> Self {
        Self::new(-(self.exponent as i64), self.modulus)
    }

    pub fn to_complex(self) -> Complex64 {
        root_of_unity(self.exponent, self.modulus)
    }
}

/// Product of roots; both must share the modulus.
impl std::ops::Mul for RootExponent {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new((self.exponent + other.exponent) as i64, self.modulus)
    }
}

pub(crate) fn root_of_unity(exponent: usize, modulus: usize) -> Complex64 {
    let e = exponent % modulus;
    // Exact values on the axes keep the float paths free of 1e-16 noise.
    if (4 * e).is_multiple_of(modulus) {
        return match 4 * e / modulus {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * e as f64 / modulus as f64)
}

/// Integer combination `sum_t counts[t] * zeta_L^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloSum {
    counts: Vec<i64>,
}

impl CycloSum {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            counts: vec![0; modulus],
        }
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        assert!(!counts.is_empty(), "modulus must be positive");
        Self { counts }
    }

    pub fn modulus(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn add_root(&mut self, root: RootExponent, coeff: i64) {
        debug_assert_eq!(root.modulus(), self.modulus());
        self.counts[root.exponent()] += coeff;
    }

    pub fn add_exponent(&mut self, exponent: usize, coeff: i64) {
        let l = self.modulus();
        self.counts[exponent % l] += coeff;
    }

    /// Exact test for `sum = 0`.
    pub fn is_zero(&self) -> bool {
        is_zero_sum(self)
    }

    /// Exact test for `sum = n` with `n` an integer.
    pub fn equals_integer(&self, n: i64) -> bool {
        let mut shifted = self.clone();
        shifted.counts[0] -= n;
        shifted.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let l = self.modulus();
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| root_of_unity(t, l) * c as f64)
            .sum()
    }
}

/// True iff the sum of roots of unity is exactly zero.
pub fn is_zero_sum(s: &CycloSum) -> bool {
    if s.counts.iter().all(|&c| c == 0) {
        return true;
    }
    let phi = cyclotomic_polynomial(s.modulus());
    remainder_monic(&s.counts, &phi).iter().all(|&c| c == 0)
}

/// Coefficients of `Phi_n`, constant term first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1, "Phi_0 is undefined");
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d(x)
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = divide_exact_monic(&p, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divide_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

fn remainder_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return rem;
    }
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i - dd + j] -= c * d;
            }
        }
    }
    rem.truncate(dd);
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // First cyclotomic polynomial with a coefficient outside {-1, 0, 1}.
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn antipodal_pair_vanishes() {
        for l in (2..=24).step_by(2) {
            let mut s = CycloSum::zero(l);
            s.add_exponent(0, 1);
            s.add_exponent(l / 2, 1);
            assert!(s.is_zero(), "L = {l}");
        }
    }

    #[test]
    fn balanced_set_in_z16_vanishes() {
        // chi(x) = i^x on {0,1,2,3,5,7,13,15}: exponent 4x of zeta_16.
        let mut s = CycloSum::zero(16);
        for x in [0, 1, 2, 3, 5, 7, 13, 15] {
            s.add_exponent(4 * x, 1);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn single_root_is_nonzero() {
        let mut s = CycloSum::zero(12);
        s.add_exponent(5, 1);
        assert!(!s.is_zero());
    }

    #[test]
    fn full_root_sets_vanish() {
        // mu_3 inside zeta_12 exponents {0, 4, 8} sums to zero.
        let s = CycloSum::from_counts(vec![1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert!(s.is_zero());
        assert!(!CycloSum::from_counts(vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]).is_zero());
    }

    #[test]
    fn integer_comparison() {
        let mut s = CycloSum::zero(6);
        s.add_exponent(0, 3);
        assert!(s.equals_integer(3));
        assert!(!s.equals_integer(0));
    }

    #[test]
    fn root_exponent_arithmetic() {
        let a = RootExponent::new(-3, 12);
        assert_eq!(a.exponent(), 9);
        assert!((a * RootExponent::new(3, 12)).is_one());
        assert_eq!(a.inverse().exponent(), 3);
        let i = RootExponent::new(3, 12).to_complex();
        assert_eq!(i, Complex64::new(0.0, 1.0));
    }
}
