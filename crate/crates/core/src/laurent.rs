//! The coefficient ring Z[q, q⁻¹]: sparse Laurent polynomials in one variable
//! with arbitrary-precision integer coefficients.
//!
//! Everything downstream (straightening coefficients, transition matrices,
//! Kazhdan-Lusztig polynomials) lives in this ring, so equality here is exact
//! structural equality of canonicalized terms: no zero coefficients are ever
//! stored, and the exponent map is ordered.
//!
//! Besides ring arithmetic the module provides the three specialized operations
//! the rest of the crate leans on:
//!
//! - [`LaurentPoly::bar`], the involution q ↦ q⁻¹;
//! - [`exchange_coefficient`], the coefficient family
//!   (q^{2m+1} + q^{-2m-1})/(q + q⁻¹) and (q^{2m} - q^{-2m})/(q + q⁻¹)
//!   used by the mixed-residue exchange rule of the straightening engine
//!   (the division is performed and checked, not assumed);
//! - [`gauss_split`], which writes a bar-antisymmetric element r as γ - bar(γ)
//!   with γ supported on strictly positive (or strictly negative) exponents.
//!   This is the elementary step of every canonical-basis recursion in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial over Z.  Invariant: no entry of `terms` is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The generator q.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// c * q^e.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// q^e.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of q^e (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate (exponent, coefficient) in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by c * q^e in place.
    pub fn shift_scale(&self, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (e + exp, k * &c)).collect(),
        }
    }

    pub fn scale(&self, coeff: impl Into<BigInt>) -> Self {
        self.shift_scale(0, coeff)
    }

    /// The involution q ↦ q⁻¹ (exponent negation).
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The substitution q ↦ -q⁻¹: exponents negate, coefficients at odd
    /// exponents change sign.
    pub fn subst_minus_q_inv(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (-e, if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Value at q = 0 of a polynomial with no negative exponents; the constant
    /// term in general.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Sum of coefficients, i.e. the value at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True iff every exponent e satisfies `pred(e)`.
    pub fn supported_on(&self, pred: impl Fn(i64) -> bool) -> bool {
        self.terms.keys().all(|&e| pred(e))
    }

    /// Exact division.  Fails unless `self = quot * divisor` exactly over Z[q, q⁻¹].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Any exact quotient is supported on [min_exp diff, max_exp diff]; once
        // cancellation from the top would need exponents below that window the
        // division cannot be exact.
        let e_min = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let d_max = divisor.max_exp().unwrap();
        let d_lead = divisor.coeff(d_max);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let r_max = rem.max_exp().unwrap();
            let r_lead = rem.coeff(r_max);
            let (q, r) = num_integer_div_rem(&r_lead, &d_lead);
            let e = r_max - d_max;
            if !r.is_zero() || e < e_min {
                return Err(Error::Domain(format!(
                    "inexact division: {self} by {divisor}"
                )));
            }
            quot.add_term(e, q.clone());
            rem = &rem - &divisor.shift_scale(e, q);
        }
        Ok(quot)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, c.clone());
        }
    }
}

// JSON form: an object mapping decimal exponent strings to integer
// coefficients, e.g. {"-1": 2, "3": 1} for 2q⁻¹ + q³.  Coefficients beyond the
// i64 range are rejected at the boundary; internal arithmetic is unbounded.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.iter() {
            let c64 = i64::try_from(c.clone()).map_err(|_| {
                serde::ser::Error::custom("coefficient exceeds i64 in JSON encoding")
            })?;
            map.serialize_entry(&e.to_string(), &c64)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, i64> = BTreeMap::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (k, v) in raw {
            let e: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent key {k:?}")))?;
            p.add_term(e, BigInt::from(v));
        }
        Ok(p)
    }
}

/// Which of the two coefficient families of the mixed-residue exchange rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExchangeParity {
    /// (q^{2m+1} + q^{-2m-1}) / (q + q⁻¹)
    Odd,
    /// (q^{2m} - q^{-2m}) / (q + q⁻¹)
    Even,
}

/// The m-th coefficient of the mixed-residue exchange rule.  The quotient is
/// computed by exact division, so any drift in the numerator family would fail
/// loudly rather than silently truncate.
pub fn exchange_coefficient(parity: ExchangeParity, m: u32) -> LaurentPoly {
    let m = i64::from(m);
    let numerator = match parity {
        ExchangeParity::Odd => &LaurentPoly::q_pow(2 * m + 1) + &LaurentPoly::q_pow(-2 * m - 1),
        ExchangeParity::Even => &LaurentPoly::q_pow(2 * m) - &LaurentPoly::q_pow(-2 * m),
    };
    let denominator = &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1);
    numerator
        .div_exact(&denominator)
        .expect("exchange-rule numerators are divisible by q + q^-1")
}

/// Sign selecting which half of the exponent axis carries the split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitSign {
    Plus,
    Minus,
}

/// Write a bar-antisymmetric r (bar(r) = -r) as γ - bar(γ) with γ supported on
/// strictly positive exponents (`Plus`) or strictly negative ones (`Minus`).
/// The constant term of such an r is forced to vanish, so γ is unique.
pub fn gauss_split(r: &LaurentPoly, sign: SplitSign) -> Result<LaurentPoly> {
    if r.bar() != -r {
        return Err(Error::Internal(format!(
            "gauss_split: argument is not bar-antisymmetric: {r}"
        )));
    }
    let keep = |e: i64| match sign {
        SplitSign::Plus => e > 0,
        SplitSign::Minus => e < 0,
    };
    let mut gamma = LaurentPoly::zero();
    for (e, c) in r.iter() {
        if keep(e) {
            gamma.add_term(e, c.clone());
        }
    }
    debug_assert_eq!(&gamma - &gamma.bar(), *r);
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs)
    }

    #[test]
    fn canonical_zero_stripping() {
        let a = p(&[(0, 1), (2, 3)]);
        let b = p(&[(2, -3)]);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::one());
        assert_eq!(s.num_terms(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(-2, 1), (0, -1), (2, 1)]).to_string(), "q^-2 - 1 + q^2");
        assert_eq!(p(&[(1, 2), (3, 1)]).to_string(), "2*q + q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(1, -1)]).to_string(), "-q");
    }

    #[test]
    fn bar_is_a_ring_involution() {
        let a = p(&[(-1, 2), (3, 1)]);
        let b = p(&[(0, 5), (2, -3)]);
        assert_eq!(a.bar().bar(), a);
        assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn subst_minus_q_inv_squares_to_identity() {
        let a = p(&[(-3, 4), (-1, 1), (0, 7), (2, -2)]);
        assert_eq!(a.subst_minus_q_inv().subst_minus_q_inv(), a);
        // (q)  ->  -q^-1
        assert_eq!(LaurentPoly::q().subst_minus_q_inv(), p(&[(-1, -1)]));
        // q - q^-1 is fixed: -q^-1 - (-q) = q - q^-1.
        let f = p(&[(1, 1), (-1, -1)]);
        assert_eq!(f.subst_minus_q_inv(), f);
    }

    #[test]
    fn exchange_coefficient_small_values() {
        assert_eq!(exchange_coefficient(ExchangeParity::Odd, 0), LaurentPoly::one());
        assert_eq!(
            exchange_coefficient(ExchangeParity::Odd, 1),
            p(&[(2, 1), (0, -1), (-2, 1)])
        );
        assert_eq!(exchange_coefficient(ExchangeParity::Even, 0), LaurentPoly::zero());
        assert_eq!(exchange_coefficient(ExchangeParity::Even, 1), p(&[(1, 1), (-1, -1)]));
    }

    #[test]
    fn exchange_coefficient_multiplies_back() {
        let denom = p(&[(1, 1), (-1, 1)]);
        for m in 0..=50u32 {
            let m64 = i64::from(m);
            let odd = exchange_coefficient(ExchangeParity::Odd, m);
            assert_eq!(
                &odd * &denom,
                p(&[(2 * m64 + 1, 1), (-2 * m64 - 1, 1)]),
                "odd family at m={m}"
            );
            let even = exchange_coefficient(ExchangeParity::Even, m);
            assert_eq!(
                &even * &denom,
                if m == 0 { LaurentPoly::zero() } else { p(&[(2 * m64, 1), (-2 * m64, -1)]) },
                "even family at m={m}"
            );
        }
    }

    #[test]
    fn gauss_split_frozen_examples() {
        let r = p(&[(1, 1), (-1, -1)]);
        assert_eq!(gauss_split(&r, SplitSign::Plus).unwrap(), LaurentPoly::q());
        assert_eq!(gauss_split(&r, SplitSign::Minus).unwrap(), p(&[(-1, -1)]));

        let r2 = p(&[(3, 1), (-3, -1), (1, 2), (-1, -2)]);
        assert_eq!(
            gauss_split(&r2, SplitSign::Plus).unwrap(),
            p(&[(3, 1), (1, 2)])
        );
    }

    #[test]
    fn gauss_split_rejects_non_antisymmetric() {
        assert!(gauss_split(&LaurentPoly::one(), SplitSign::Plus).is_err());
        assert!(gauss_split(&p(&[(2, 1), (-2, 1)]), SplitSign::Plus).is_err());
    }

    #[test]
    fn json_round_trip_matches_documented_shape() {
        let a = p(&[(-1, 2), (3, 1)]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"-1":2,"3":1}"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn div_exact_reports_inexact() {
        let denom = p(&[(1, 1), (-1, 1)]);
        assert!(LaurentPoly::q().div_exact(&denom).is_err());
        assert!(p(&[(0, 3)]).div_exact(&p(&[(0, 2)])).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..=6, -9i64..=9), 0..6)
            .prop_map(|v| LaurentPoly::from_pairs(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            let q = prod.div_exact(&b).unwrap();
            prop_assert_eq!(q, a);
        }

        #[test]
        fn gauss_split_round_trip(g in arb_poly()) {
            // Force strictly positive support, then split γ - bar(γ).
            let gamma = LaurentPoly {
                terms: g.iter().filter(|(e, _)| *e > 0).map(|(e, c)| (e, c.clone())).collect(),
            };
            let r = &gamma - &gamma.bar();
            prop_assert_eq!(gauss_split(&r, SplitSign::Plus).unwrap(), gamma.clone());
            let m = gauss_split(&r, SplitSign::Minus).unwrap();
            prop_assert_eq!(&m - &m.bar(), r);
            prop_assert!(m.supported_on(|e| e < 0));
        }
    }
}
