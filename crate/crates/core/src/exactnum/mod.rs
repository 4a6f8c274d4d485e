//! Exact arithmetic in ℚ and quadratic fields ℚ(√m), plus univariate
//! polynomials over them.
//!
//! Elements are stored as `(a + b·√m) / den` with integer `a`, `b` and a single
//! positive denominator, kept in lowest terms so that structural equality is
//! mathematical equality.

mod parse;
mod poly;

pub use parse::{parse_element, parse_poly};
pub use poly::Poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a squarefree integer different from 0 and 1")]
    NotSquarefree(i64),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub type NumResult<T> = Result<T, NumError>;

/// The ambient field K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    /// ℚ(√m) with m squarefree, m ∉ {0, 1}.
    Quadratic(i64),
}

impl Field {
    pub fn quadratic(m: i64) -> NumResult<Field> {
        if m == 0 || m == 1 || !is_squarefree(m) {
            return Err(NumError::NotSquarefree(m));
        }
        Ok(Field::Quadratic(m))
    }

    /// Dimension of K over ℚ.
    pub fn degree(self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }

    pub fn m(self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(m) => Some(m),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(m) => write!(f, "Q(sqrt({m}))"),
        }
    }
}

pub fn is_squarefree(m: i64) -> bool {
    let n = m.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of K.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    a: BigInt,
    b: BigInt,
    den: BigInt,
}

impl FieldElement {
    fn normalized(field: Field, mut a: BigInt, mut b: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            a = -a;
            b = -b;
            den = -den;
        }
        if a.is_zero() && b.is_zero() {
            return FieldElement { field, a, b, den: BigInt::one() };
        }
        let g = a.gcd(&b).gcd(&den);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            den /= &g;
        }
        FieldElement { field, a, b, den }
    }

    /// `a + b·√m`; `b` must vanish in the rational field.
    pub fn new(field: Field, a: BigRational, b: BigRational) -> NumResult<Self> {
        if field == Field::Rational && !b.is_zero() {
            return Err(NumError::FieldMismatch(field, Field::Quadratic(0)));
        }
        let den = a.denom().lcm(b.denom());
        let an = a.numer() * (&den / a.denom());
        let bn = b.numer() * (&den / b.denom());
        Ok(Self::normalized(field, an, bn, den))
    }

    pub fn from_rational(field: Field, q: BigRational) -> Self {
        Self::normalized(field, q.numer().clone(), BigInt::zero(), q.denom().clone())
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        Self::normalized(field, BigInt::from(n), BigInt::zero(), BigInt::one())
    }

    pub fn from_ratio(field: Field, n: i64, d: i64) -> NumResult<Self> {
        if d == 0 {
            return Err(NumError::DivisionByZero);
        }
        Ok(Self::normalized(field, BigInt::from(n), BigInt::zero(), BigInt::from(d)))
    }

    pub fn zero(field: Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator √m of a quadratic field.
    pub fn sqrt_m(field: Field) -> NumResult<Self> {
        match field {
            Field::Rational => Err(NumError::FieldMismatch(field, Field::Quadratic(0))),
            Field::Quadratic(_) => {
                Ok(Self::normalized(field, BigInt::zero(), BigInt::one(), BigInt::one()))
            }
        }
    }

    /// Builds an element from its ℚ-coordinates in the basis {1, √m}.
    pub fn from_coords(field: Field, coords: &[BigRational]) -> Self {
        debug_assert_eq!(coords.len(), field.degree());
        let b = coords.get(1).cloned().unwrap_or_else(BigRational::zero);
        Self::new(field, coords[0].clone(), b).expect("coordinate count matches field")
    }

    pub fn coords(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::new(self.a.clone(), self.den.clone())];
        if self.field.degree() == 2 {
            out.push(BigRational::new(self.b.clone(), self.den.clone()));
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn a(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.den.clone())
    }

    pub fn b(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == self.den
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn m_big(&self) -> BigInt {
        BigInt::from(self.field.m().unwrap_or(0))
    }

    pub fn conj(&self) -> Self {
        Self::normalized(self.field, self.a.clone(), -self.b.clone(), self.den.clone())
    }

    /// a² − m·b²; vanishes only at zero.
    pub fn norm(&self) -> BigRational {
        let n = &self.a * &self.a - self.m_big() * &self.b * &self.b;
        BigRational::new(n, &self.den * &self.den)
    }

    pub fn trace(&self) -> BigRational {
        let t = BigRational::new(self.a.clone(), self.den.clone());
        if self.field.degree() == 2 {
            t * BigInt::from(2)
        } else {
            t
        }
    }

    fn check_field(&self, other: &Self) -> NumResult<()> {
        if self.field != other.field {
            Err(NumError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> NumResult<Self> {
        self.check_field(other)?;
        Ok(Self::normalized(
            self.field,
            &self.a * &other.den + &other.a * &self.den,
            &self.b * &other.den + &other.b * &self.den,
            &self.den * &other.den,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> NumResult<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> NumResult<Self> {
        self.check_field(other)?;
        let m = self.m_big();
        Ok(Self::normalized(
            self.field,
            &self.a * &other.a + m * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            &self.den * &other.den,
        ))
    }

    pub fn inv(&self) -> NumResult<Self> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        // x⁻¹ = conj(x) / N(x)
        let n = self.norm();
        let c = self.conj();
        Ok(c.scale_rational(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> NumResult<Self> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::normalized(
            self.field,
            &self.a * q.numer(),
            &self.b * q.numer(),
            &self.den * q.denom(),
        )
    }

    fn neg_ref(&self) -> Self {
        FieldElement {
            field: self.field,
            a: -self.a.clone(),
            b: -self.b.clone(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.a();
        let b = self.b();
        if b.is_zero() {
            return write!(f, "{}", fmt_rational(&a));
        }
        let b_abs = b.abs();
        let b_part = if b_abs.is_one() {
            "w".to_string()
        } else {
            format!("{}*w", fmt_rational(&b_abs))
        };
        if a.is_zero() {
            if b.is_negative() {
                write!(f, "-{b_part}")
            } else {
                write!(f, "{b_part}")
            }
        } else {
            let sign = if b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {b_part}", fmt_rational(&a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn norm_identity() {
        let k = Field::quadratic(-3).unwrap();
        let x = FieldElement::new(k, q(1, 1), q(1, 1)).unwrap();
        assert_eq!(&x * &x.conj(), FieldElement::from_int(k, 4));
    }

    #[test]
    fn self_division_is_one() {
        let k = Field::quadratic(5).unwrap();
        let x = FieldElement::new(k, q(3, 2), q(1, 1)).unwrap();
        assert!(x.checked_div(&x).unwrap().is_one());
    }

    #[test]
    fn norm_by_expansion() {
        let k = Field::quadratic(-3).unwrap();
        let x = FieldElement::new(k, q(2, 1), q(1, 1)).unwrap();
        // 2² − (−3)·1² = 7
        assert_eq!(x.norm(), q(7, 1));
    }

    #[test]
    fn errors() {
        let k = Field::quadratic(-3).unwrap();
        let x = FieldElement::one(k);
        assert_eq!(x.checked_div(&FieldElement::zero(k)), Err(NumError::DivisionByZero));
        let y = FieldElement::one(Field::Rational);
        assert!(matches!(x.checked_add(&y), Err(NumError::FieldMismatch(..))));
        assert_eq!(Field::quadratic(12), Err(NumError::NotSquarefree(12)));
        assert_eq!(Field::quadratic(1), Err(NumError::NotSquarefree(1)));
    }

    #[test]
    fn display_forms() {
        let k = Field::quadratic(-3).unwrap();
        let cases = [
            (q(0, 1), q(0, 1), "0"),
            (q(3, 2), q(0, 1), "3/2"),
            (q(0, 1), q(1, 1), "w"),
            (q(0, 1), q(-1, 1), "-w"),
            (q(1, 1), q(-5, 2), "1 - 5/2*w"),
        ];
        for (a, b, s) in cases {
            assert_eq!(FieldElement::new(k, a, b).unwrap().to_string(), s);
        }
    }
}
