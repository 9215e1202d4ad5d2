//! Exact integer, rational and Laurent-polynomial arithmetic.
//!
//! [`LaurentPoly`] is the value type for everything in q: a dense run of
//! `BigInt` coefficients starting at `min_exp`. The representation is
//! canonical (no zero coefficient at either end, zero stored as
//! `min_exp = 0` with no coefficients), so derived equality is structural.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Failure of an exact polynomial division.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial division is not exact (remainder {remainder})")]
pub struct NotDivisible {
    /// Remainder left by long division, re-expressed in the dividend's exponent frame.
    pub remainder: LaurentPoly,
}

/// Evaluation at `q = 0` of a polynomial with negative exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Laurent polynomial has a pole at q = 0")]
pub struct PoleAtZero;

/// Integer-coefficient Laurent polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { min_exp: e, coeffs: vec![c] }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// `1 - q^s`, which is the zero polynomial when `s = 0`.
    pub fn one_minus_q_pow(s: i64) -> Self {
        match s.cmp(&0) {
            std::cmp::Ordering::Equal => Self::zero(),
            std::cmp::Ordering::Greater => {
                let mut coeffs = vec![BigInt::zero(); s as usize + 1];
                coeffs[0] = BigInt::one();
                coeffs[s as usize] = -BigInt::one();
                Self { min_exp: 0, coeffs }
            }
            std::cmp::Ordering::Less => {
                let width = (-s) as usize;
                let mut coeffs = vec![BigInt::zero(); width + 1];
                coeffs[0] = -BigInt::one();
                coeffs[width] = BigInt::one();
                Self { min_exp: s, coeffs }
            }
        }
    }

    /// Builds a polynomial from coefficients of `q^min_exp, q^(min_exp+1), ...`.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { min_exp, coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent present, `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Dense coefficients starting at [`min_exp`](Self::min_exp).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let idx = e - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Multiplies by `q^e`.
    pub fn shift(mut self, e: i64) -> Self {
        if !self.is_zero() {
            self.min_exp += e;
        }
        self
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True iff every coefficient is `>= 0`.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `q^n * p(1/q)`: the exponent `e` moves to `n - e`.
    pub fn reciprocal(&self, n: i64) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self { min_exp: n - hi, coeffs }
            }
        }
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Result<Rational, PoleAtZero> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if x.is_zero() {
            return match self.min_exp.cmp(&0) {
                std::cmp::Ordering::Less => Err(PoleAtZero),
                std::cmp::Ordering::Equal => Ok(Rational::from_integer(self.coeffs[0].clone())),
                std::cmp::Ordering::Greater => Ok(Rational::zero()),
            };
        }
        // Horner over integer numerator/denominator, one normalisation at the end.
        let (u, v) = (x.numer(), x.denom());
        let d = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c * &vpow;
            vpow *= v;
        }
        // acc / v^d == sum c_i x^i
        let mut value = Rational::new(acc, num_traits::pow(v.clone(), d));
        value *= rational_pow(x, self.min_exp);
        Ok(value)
    }

    fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Long division runs from the top degree; any nonzero remainder, or a
    /// leading coefficient that does not divide, is reported as [`NotDivisible`].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, NotDivisible> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.coeffs.len() == 1 {
            let d = &divisor.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for (i, c) in self.coeffs.iter().enumerate() {
                let (quo, rem) = c.div_rem(d);
                if !rem.is_zero() {
                    let mut remainder = self.clone();
                    remainder.coeffs.drain(..i);
                    remainder.min_exp += i as i64;
                    remainder.coeffs[0] = rem;
                    remainder.normalize();
                    return Err(NotDivisible { remainder });
                }
                out.push(quo);
            }
            return Ok(Self::from_coeffs(self.min_exp - divisor.min_exp, out));
        }
        let db = divisor.coeffs.len() - 1;
        let da = self.coeffs.len() - 1;
        if da < db {
            return Err(NotDivisible { remainder: self.clone() });
        }
        let lead = &divisor.coeffs[db];
        let lead_sign = if lead.is_one() {
            Some(1)
        } else if (-lead).is_one() {
            Some(-1)
        } else {
            None
        };
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = &rem[i + db];
            if top.is_zero() {
                continue;
            }
            let factor = match lead_sign {
                Some(1) => top.clone(),
                Some(_) => -top,
                None => {
                    let (f, r) = top.div_rem(lead);
                    if !r.is_zero() {
                        return Err(NotDivisible {
                            remainder: Self::from_coeffs(self.min_exp, rem),
                        });
                    }
                    f
                }
            };
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[i + j] -= &factor * b;
                }
            }
            quo[i] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(NotDivisible {
                remainder: Self::from_coeffs(self.min_exp, rem),
            });
        }
        Ok(Self::from_coeffs(self.min_exp - divisor.min_exp, quo))
    }

    fn mul_impl(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let min_exp = self.min_exp + rhs.min_exp;
        let len = a.len() + b.len() - 1;
        let overlap = min(a.len(), b.len()) as u64;
        let headroom = 64 - overlap.leading_zeros() as u64;
        if overlap >= KRONECKER_MIN_LEN {
            let bits = self.max_bits() + rhs.max_bits() + headroom + 2;
            return Self::from_coeffs(min_exp, kronecker::mul(a, b, bits));
        }
        if self.max_bits() + rhs.max_bits() + headroom < 126 {
            let a: Vec<i128> = a.iter().map(|c| c.to_i128().unwrap()).collect();
            let b: Vec<i128> = b.iter().map(|c| c.to_i128().unwrap()).collect();
            let mut acc = vec![0i128; len];
            for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    acc[i + j] += x * y;
                }
            }
            return Self::from_coeffs(min_exp, acc.into_iter().map(BigInt::from).collect());
        }
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        Self::from_coeffs(min_exp, acc)
    }

    /// `self * (1 - q^s)` in linear time.
    pub fn mul_one_minus_q_pow(&self, s: i64) -> LaurentPoly {
        if s == 0 || self.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out -= &self.clone().shift(s);
        out
    }

    /// Exact quotient by `1 - q^s` in linear time.
    pub fn div_one_minus_q_pow(&self, s: i64) -> Result<LaurentPoly, NotDivisible> {
        assert!(s != 0, "division by 1 - q^0 = 0");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if s < 0 {
            // 1 - q^s = -q^s (1 - q^-s)
            return Ok(-(self.div_one_minus_q_pow(-s)?.shift(-s)));
        }
        let s = s as usize;
        let len = self.coeffs.len();
        if len <= s {
            return Err(NotDivisible { remainder: self.clone() });
        }
        let qlen = len - s;
        let mut quo: Vec<BigInt> = Vec::with_capacity(qlen);
        for j in 0..qlen {
            let mut c = self.coeffs[j].clone();
            if j >= s {
                c += &quo[j - s];
            }
            quo.push(c);
        }
        // the top s coefficients of the dividend must be reproduced exactly
        for j in qlen..len {
            let mut check = self.coeffs[j].clone();
            if j >= s {
                check += &quo[j - s];
            }
            if !check.is_zero() {
                let quotient = Self::from_coeffs(self.min_exp, quo);
                let remainder = self - &quotient.mul_one_minus_q_pow(s as i64);
                return Err(NotDivisible { remainder });
            }
        }
        Ok(Self::from_coeffs(self.min_exp, quo))
    }

    fn add_signed(&mut self, rhs: &LaurentPoly, negate: bool) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -rhs.clone() } else { rhs.clone() };
            return;
        }
        let lo = min(self.min_exp, rhs.min_exp);
        let hi = max(self.max_exp().unwrap(), rhs.max_exp().unwrap());
        if lo < self.min_exp {
            let pad = (self.min_exp - lo) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.min_exp = lo;
        }
        self.coeffs.resize((hi - lo) as usize + 1, BigInt::zero());
        let off = (rhs.min_exp - lo) as usize;
        for (i, c) in rhs.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[off + i] -= c;
            } else {
                self.coeffs[off + i] += c;
            }
        }
        self.normalize();
    }
}

const KRONECKER_MIN_LEN: u64 = 24;

/// Polynomial multiplication through a single big-integer product.
///
/// Coefficients are packed into `bits`-wide slots; `bits` must exceed the
/// magnitude of every product coefficient by at least one sign bit.
mod kronecker {
    use num_bigint::{BigInt, BigUint, Sign};
    use num_traits::{One, Zero};

    fn pack(coeffs: &[BigInt], bits: u64) -> BigInt {
        let total = (coeffs.len() as u64 * bits).div_ceil(32) as usize + 1;
        let mut pos = vec![0u32; total];
        let mut neg = vec![0u32; total];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = if c.sign() == Sign::Minus { &mut neg } else { &mut pos };
            let offset = i as u64 * bits;
            let (word, shift) = ((offset / 32) as usize, (offset % 32) as u32);
            for (k, limb) in c.magnitude().to_u32_digits().into_iter().enumerate() {
                let wide = (limb as u64) << shift;
                target[word + k] |= wide as u32;
                if shift > 0 {
                    target[word + k + 1] |= (wide >> 32) as u32;
                }
            }
        }
        BigInt::from_biguint(Sign::Plus, BigUint::new(pos))
            - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    }

    fn extract(limbs: &[u32], start: u64, width: u64) -> BigUint {
        let nwords = width.div_ceil(32) as usize;
        let (word, shift) = ((start / 32) as usize, (start % 32) as u32);
        let mut out = Vec::with_capacity(nwords);
        for k in 0..nwords {
            let lo = limbs.get(word + k).copied().unwrap_or(0) as u64;
            let hi = limbs.get(word + k + 1).copied().unwrap_or(0) as u64;
            out.push((((hi << 32) | lo) >> shift) as u32);
        }
        let rem = (width % 32) as u32;
        if rem != 0 {
            if let Some(last) = out.last_mut() {
                *last &= (1u32 << rem) - 1;
            }
        }
        BigUint::new(out)
    }

    pub(super) fn mul(a: &[BigInt], b: &[BigInt], bits: u64) -> Vec<BigInt> {
        let product = pack(a, bits) * pack(b, bits);
        let len = a.len() + b.len() - 1;
        let negative = product.sign() == Sign::Minus;
        let limbs = product.magnitude().to_u32_digits();
        let full = BigInt::one() << bits;
        let half = BigInt::one() << (bits - 1);
        let mut carry = BigInt::zero();
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let mut digit = BigInt::from_biguint(Sign::Plus, extract(&limbs, i as u64 * bits, bits));
            digit += &carry;
            if digit >= half {
                digit -= &full;
                carry = BigInt::one();
            } else {
                carry = BigInt::zero();
            }
            out.push(if negative { -digit } else { digit });
        }
        debug_assert!(carry.is_zero());
        out
    }
}

/// `x^e` for a nonzero rational and any integer exponent.
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let e = e.unsigned_abs();
    let numer = num_traits::pow(base.numer().clone(), e as usize);
    let denom = num_traits::pow(base.denom().clone(), e as usize);
    Rational::new(numer, denom)
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_signed(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_signed(rhs, true);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_impl(&rhs)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

/// Ascending exponents, `q^k` spelled out, unit coefficients suppressed.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.sign() == Sign::Minus;
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// JSON form: `[[exponent, "coefficient"], ...]` over nonzero terms.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of [exponent, \"coefficient\"] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((e, c)) = seq.next_element::<(i64, String)>()? {
                    let c: BigInt = c.parse().map_err(de::Error::custom)?;
                    terms.push((e, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_seq(PolyVisitor)
    }
}

/// Serde adapter storing a `BigInt` as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a `Rational` as `"p/q"` (or `"p"` when integral).
pub mod rational_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
