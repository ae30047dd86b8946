//! Exact scalar arithmetic: arbitrary-precision rationals, binomial
//! coefficients, q-numbers and q-binomial coefficients.
//!
//! Out-of-range binomials and q-binomials evaluate to zero rather than
//! erroring; the summations elsewhere in the crate rely on vanishing terms.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational scalar, always reduced to lowest terms with a positive
/// denominator. Equality is structural on the reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an integer, when the denominator is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Self {
        let a = e.unsigned_abs() as u32;
        let n = self.0.numer().pow(a);
        let d = self.0.denom().pow(a);
        if e >= 0 {
            Rational(BigRational::new(n, d))
        } else {
            assert!(!self.is_zero(), "negative power of zero");
            Rational(BigRational::new(d, n))
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_bigint(v)
    }
}

impl From<&BigInt> for Rational {
    fn from(v: &BigInt) -> Self {
        Rational::from_bigint(v.clone())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        match s.split_once('/') {
            None => Ok(Rational::from_bigint(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let numer: BigInt = n.parse().map_err(|_| bad())?;
                let denom: BigInt = d.parse().map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(numer, denom))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient C(n, k); zero when k < 0, k > n, or n < 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// The q-number [k] = (q^k - 1)/(q - 1) for k >= 0.
///
/// Negative k is rejected; use [`q_number_signed`] for the rational value.
pub fn q_number(k: i64, q: i64) -> BigInt {
    assert!(k >= 0, "q_number needs k >= 0, got {k}");
    assert!(q >= 2, "q_number needs q >= 2, got {q}");
    (BigInt::from(q).pow(k as u32) - 1) / (q - 1)
}

/// The q-number (q^k - 1)/(q - 1) as an exact rational, valid for any k.
pub fn q_number_signed(k: i64, q: i64) -> Rational {
    assert!(q >= 2, "q_number_signed needs q >= 2, got {q}");
    (q_pow(q, k) - Rational::one()) / Rational::from_int(q - 1)
}

/// q^e as an exact rational; e may be negative.
pub fn q_pow(q: i64, e: i64) -> Rational {
    assert!(q >= 1, "q_pow needs q >= 1, got {q}");
    let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_bigint(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// q-binomial coefficient, the product of (q^n - q^i)/(q^m - q^i) over
/// i < m; zero when m < 0, m > n, or n < 0.
pub fn q_binomial(n: i64, m: i64, q: i64) -> BigInt {
    assert!(q >= 2, "q_binomial needs q >= 2, got {q}");
    if n < 0 || m < 0 || m > n {
        return BigInt::zero();
    }
    let m = m.min(n - m);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..m {
        num *= q_number(n - t, q);
        den *= q_number(m - t, q);
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "q_binomial({n},{m};{q}) not integral");
    quot
}

/// Order of GL_i(F_q): the number of ordered bases of an i-dimensional
/// space, the product of (q^i - q^u) over u < i.
pub fn gl_order(i: i64, q: i64) -> BigInt {
    assert!(i >= 0 && q >= 2);
    let qi = BigInt::from(q).pow(i as u32);
    let mut acc = BigInt::one();
    for u in 0..i {
        acc *= &qi - BigInt::from(q).pow(u as u32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent binomial oracle: the Pascal recurrence from base cases.
    fn pascal(n: i64, k: i64) -> BigInt {
        if k < 0 || n < 0 || k > n {
            return BigInt::zero();
        }
        if k == 0 {
            return BigInt::one();
        }
        pascal(n - 1, k - 1) + pascal(n - 1, k)
    }

    #[test]
    fn binomial_base_and_range_conventions() {
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(7, 8), BigInt::from(0));
        assert_eq!(binomial(-1, 0), BigInt::from(0));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(5, 2), pascal(5, 2));
        assert_eq!(binomial(5, 2), BigInt::from(10));
    }

    #[test]
    fn binomial_matches_pascal_oracle() {
        for n in 0..=12 {
            for k in -1..=n + 1 {
                assert_eq!(binomial(n, k), pascal(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn q_number_values() {
        assert_eq!(q_number(0, 2), BigInt::from(0));
        assert_eq!(q_number(1, 5), BigInt::from(1));
        assert_eq!(q_number(3, 2), BigInt::from(7));
    }

    #[test]
    fn q_number_signed_values() {
        assert_eq!(q_number_signed(-1, 2), Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(q_number_signed(0, 3), Rational::zero());
        assert_eq!(q_number_signed(2, 3), Rational::from_int(4));
        for k in 0..=8 {
            for q in [2, 3, 4] {
                assert_eq!(q_number_signed(k, q), Rational::from_bigint(q_number(k, q)));
            }
        }
    }

    #[test]
    fn q_binomial_values() {
        for q in [2, 3, 5] {
            assert_eq!(q_binomial(6, 0, q), BigInt::one());
        }
        assert_eq!(q_binomial(2, 1, 2), BigInt::from(3));
        assert_eq!(q_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(q_binomial(3, 5, 2), BigInt::zero());
        assert_eq!(q_binomial(4, -1, 2), BigInt::zero());
    }

    /// Direct evaluation of the defining product, as an independent route.
    fn q_binomial_product(n: i64, m: i64, q: i64) -> Rational {
        let mut acc = Rational::one();
        for i in 0..m {
            let num = q_pow(q, n) - q_pow(q, i);
            let den = q_pow(q, m) - q_pow(q, i);
            acc = acc * num / den;
        }
        acc
    }

    #[test]
    fn q_binomial_matches_product_formula() {
        for q in [2, 3, 4] {
            for n in 0..=10 {
                for m in 0..=n {
                    assert_eq!(
                        Rational::from_bigint(q_binomial(n, m, q)),
                        q_binomial_product(n, m, q),
                        "[{n} choose {m}]_{q}"
                    );
                }
            }
        }
    }

    #[test]
    fn q_binomial_symmetry() {
        for q in [2, 3, 4] {
            for n in 0..=12 {
                for m in 0..=n {
                    assert_eq!(q_binomial(n, m, q), q_binomial(n, n - m, q));
                }
            }
        }
    }

    // The five q-identities used by the q-Hahn splitting proof, checked as
    // exact rational equalities on the full desk grid.

    #[test]
    fn q_identity_shift() {
        // [a] - [b] = q^b [a-b] for a > b
        for q in [2i64, 3, 4] {
            for a in 1..=12 {
                for b in 1..a {
                    let lhs = q_number_signed(a, q) - q_number_signed(b, q);
                    let rhs = q_pow(q, b) * q_number_signed(a - b, q);
                    assert_eq!(lhs, rhs, "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn q_identity_column_ratios() {
        for q in [2i64, 3, 4] {
            for n in 1..=12 {
                for r in 1..=n {
                    let c = Rational::from_bigint(q_binomial(n, r, q));
                    let c_prev = Rational::from_bigint(q_binomial(n, r - 1, q));
                    let c_diag = Rational::from_bigint(q_binomial(n - 1, r - 1, q));
                    let c_up = Rational::from_bigint(q_binomial(n - 1, r, q));
                    let qr = Rational::from_bigint(q_number(r, q));
                    // [N choose r] = [N-r+1]/[r] [N choose r-1]
                    assert_eq!(c.clone(), Rational::from_bigint(q_number(n - r + 1, q)) / &qr * &c_prev);
                    // [N choose r] = [N]/[r] [N-1 choose r-1]
                    assert_eq!(c.clone(), Rational::from_bigint(q_number(n, q)) / &qr * &c_diag);
                    // [N choose r] = [N]/[N-r] [N-1 choose r], r < N
                    if r < n {
                        assert_eq!(
                            c.clone(),
                            Rational::from_bigint(q_number(n, q))
                                / Rational::from_bigint(q_number(n - r, q))
                                * &c_up
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn q_identity_difference() {
        // [N choose r] - [N choose r-1]
        //   = (1 - [r]/[N-r+1]) [N choose r] = q^r [N-2r+1]/[N-r+1] [N choose r]
        for q in [2i64, 3, 4] {
            for n in 1..=12 {
                for r in 1..=n {
                    let c = Rational::from_bigint(q_binomial(n, r, q));
                    let diff = c.clone() - Rational::from_bigint(q_binomial(n, r - 1, q));
                    let ratio = Rational::from_bigint(q_number(r, q))
                        / Rational::from_bigint(q_number(n - r + 1, q));
                    assert_eq!(diff, (Rational::one() - ratio) * &c);
                    let rhs = q_pow(q, r) * q_number_signed(n - 2 * r + 1, q)
                        / q_number_signed(n - r + 1, q)
                        * &c;
                    assert_eq!(diff, rhs, "q={q} N={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn rational_display_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            let v: Rational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        let unreduced = Rational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(unreduced.to_string(), "-2/3");
    }

    #[test]
    fn rational_pow() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(half.pow(2), Rational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(half.pow(-1), Rational::from_int(2));
        assert_eq!(q_pow(2, -3), Rational::new(BigInt::from(1), BigInt::from(8)));
    }

    #[test]
    fn gl_order_values() {
        assert_eq!(gl_order(0, 2), BigInt::one());
        assert_eq!(gl_order(1, 2), BigInt::from(1));
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(2, 3), BigInt::from(48));
    }
}
