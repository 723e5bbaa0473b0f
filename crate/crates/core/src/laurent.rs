//! Exact Laurent polynomials in `v` with integer coefficients.
//!
//! Hecke-algebra scalars live in `Z[v, v^-1]` with `q = v^2`. Tate twists
//! `K(i)` act as multiplication by `v^{-2i}`, so a polynomial in
//! `Z[t, t^-1]` is stored here with even exponents only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Σ c_e v^e`, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exponent: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// `v^e`.
    pub fn v_pow(exponent: i32) -> Self {
        Self::monomial(exponent, 1)
    }

    /// `q^e = v^{2e}`.
    pub fn q_pow(exponent: i32) -> Self {
        Self::monomial(2 * exponent, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&1)
    }

    pub fn coeff(&self, exponent: i32) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Multiply by `v^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * factor)))
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Keep only terms with `lo <= exponent <= hi`.
    pub fn truncate(&self, lo: i32, hi: i32) -> Self {
        Self {
            coeffs: self.coeffs.range(lo..=hi).map(|(&e, &c)| (e, c)).collect(),
        }
    }

    pub fn has_only_even_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    /// Reinterpret as a polynomial in the Tate-twist variable `t`, where
    /// `t^i` stands for `K(i)` and acts as `v^{-2i}`. Returns `None` if an
    /// odd power of `v` is present.
    pub fn tate_twist_form(&self) -> Option<BTreeMap<i32, i64>> {
        if !self.has_only_even_exponents() {
            return None;
        }
        Some(self.coeffs.iter().map(|(&e, &c)| (-e / 2, c)).collect())
    }

    /// Evaluate at `v = sqrt(q)` exactly, returning `a + b sqrt(q)`.
    pub fn evaluate_sqrt(&self, q: &BigRational) -> SurdValue {
        let mut rational = BigRational::zero();
        let mut sqrt_part = BigRational::zero();
        for (e, c) in self.terms() {
            let c = BigRational::from_integer(BigInt::from(c));
            // v^e = q^{floor(e/2)} * v^{e mod 2}
            let half = e.div_euclid(2);
            let term = c * rational_pow(q, half);
            if e.rem_euclid(2) == 0 {
                rational += term;
            } else {
                sqrt_part += term;
            }
        }
        SurdValue {
            rational,
            sqrt_part,
            radicand: q.clone(),
        }
    }
}

pub(crate) fn rational_pow(base: &BigRational, exponent: i32) -> BigRational {
    if exponent >= 0 {
        num_traits::pow(base.clone(), exponent as usize)
    } else {
        num_traits::pow(base.recip(), exponent.unsigned_abs() as usize)
    }
}

/// An exact value `rational + sqrt_part * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdValue {
    pub rational: BigRational,
    pub sqrt_part: BigRational,
    pub radicand: BigRational,
}

impl SurdValue {
    pub fn from_rational(value: BigRational, radicand: BigRational) -> Self {
        Self {
            rational: value,
            sqrt_part: BigRational::zero(),
            radicand,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt_part.is_zero()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            rational: &self.rational * factor,
            sqrt_part: &self.sqrt_part * factor,
            radicand: self.radicand.clone(),
        }
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_part.is_zero() {
            return write!(f, "{}", self.rational);
        }
        if !self.rational.is_zero() {
            write!(f, "{} + ", self.rational)?;
        }
        if self.sqrt_part.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.sqrt_part, self.radicand)
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, a) => write!(f, "{a}v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, a) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LaurentPolynomial> {
        proptest::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = LaurentPolynomial::monomial(3, 2);
        p.add_term(3, -2);
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn q_is_v_squared() {
        let v = LaurentPolynomial::v_pow(1);
        assert_eq!(&v * &v, LaurentPolynomial::q_pow(1));
    }

    #[test]
    fn display() {
        let p = LaurentPolynomial::from_terms([(-1, 1), (1, -1)]);
        assert_eq!(p.to_string(), "-v + v^-1");
    }

    #[test]
    fn tate_twist_reinterpretation() {
        // 1 + q corresponds to 1 + t^-1
        let p = LaurentPolynomial::from_terms([(0, 1), (2, 1)]);
        let t = p.tate_twist_form().unwrap();
        assert_eq!(t.get(&0), Some(&1));
        assert_eq!(t.get(&-1), Some(&1));
        assert!(LaurentPolynomial::v_pow(1).tate_twist_form().is_none());
    }

    #[test]
    fn evaluate_splits_even_and_odd_powers() {
        let q = BigRational::from_integer(BigInt::from(5));
        // v^-1 - v at q = 5 is (1/5 - 1) sqrt(5)
        let p = LaurentPolynomial::from_terms([(-1, 1), (1, -1)]);
        let val = p.evaluate_sqrt(&q);
        assert!(val.rational.is_zero());
        assert_eq!(
            val.sqrt_part,
            BigRational::new(BigInt::from(-4), BigInt::from(5))
        );
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
