use std::fmt;

use super::{Field, FieldElement, NumError, NumResult};

/// Univariate polynomial over K, coefficients in increasing degree with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(FieldElement::one(field))
    }

    /// c·X^k
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![FieldElement::zero(field); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn x(field: Field) -> Self {
        Poly::monomial(FieldElement::one(field), 1)
    }

    pub fn from_ints(field: Field, cs: &[i64]) -> Self {
        Poly::new(field, cs.iter().map(|&c| FieldElement::from_int(field, c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Poly) -> NumResult<()> {
        if self.field != other.field {
            Err(NumError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Poly) -> NumResult<Poly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Poly::new(self.field, c))
    }

    pub fn sub(&self, other: &Poly) -> NumResult<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Poly) -> NumResult<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut out = vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Poly::new(self.field, out))
    }

    pub fn scale(&self, c: &FieldElement) -> NumResult<Poly> {
        if c.field() != self.field {
            return Err(NumError::FieldMismatch(self.field, c.field()));
        }
        Ok(Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect()))
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with deg r < deg d.
    pub fn div_rem(&self, d: &Poly) -> NumResult<(Poly, Poly)> {
        self.check(d)?;
        let lead = d.leading().ok_or(NumError::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut q = vec![FieldElement::zero(self.field); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(self.field, q), Poly::new(self.field, r)))
    }

    pub fn monic(&self) -> NumResult<Poly> {
        let lead = self.leading().ok_or(NumError::DivisionByZero)?.inv()?;
        self.scale(&lead)
    }

    /// Monic gcd via the Euclidean remainder sequence over K.
    pub fn gcd(&self, other: &Poly) -> NumResult<Poly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(NumError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = if r.is_zero() { r } else { r.monic()? };
        }
        a.monic()
    }

    pub fn gcd_all<'a>(field: Field, polys: impl IntoIterator<Item = &'a Poly>) -> NumResult<Poly> {
        let mut g: Option<Poly> = None;
        for p in polys {
            if p.is_zero() {
                continue;
            }
            g = Some(match g {
                None => p.monic()?,
                Some(g) => g.gcd(p)?,
            });
        }
        g.ok_or(NumError::BothZero).inspect(|g| {
            debug_assert_eq!(g.field, field);
        })
    }

    pub fn divides(&self, other: &Poly) -> NumResult<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> NumResult<Option<Poly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FieldElement::from_int(self.field, i as i64))
            .collect();
        Poly::new(self.field, c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = !cs.contains(' ');
            match i {
                0 if simple => write!(f, "{cs}")?,
                0 => write!(f, "({cs})")?,
                _ => {
                    if c.is_one() {
                    } else if cs == "-1" {
                        write!(f, "-")?;
                    } else if simple {
                        write!(f, "{cs}*")?;
                    } else {
                        write!(f, "({cs})*")?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let k = Field::Rational;
        let a = Poly::from_ints(k, &[-1, 0, 1]);
        let b = Poly::from_ints(k, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let f = Poly::from_ints(k, &[4, 0, 2]);
        assert_eq!(f.gcd(&Poly::zero(k)).unwrap(), Poly::from_ints(k, &[2, 0, 1]));
        let g = Poly::from_ints(k, &[2, 2]);
        assert_eq!(g.gcd(&Poly::from_ints(k, &[4])).unwrap(), Poly::one(k));
        assert_eq!(Poly::zero(k).gcd(&Poly::zero(k)), Err(NumError::BothZero));
    }

    #[test]
    fn division_recombines() {
        let k = Field::quadratic(-3).unwrap();
        let w = FieldElement::sqrt_m(k).unwrap();
        let a = Poly::new(k, vec![w.clone(), FieldElement::from_int(k, 3), w.clone(), FieldElement::one(k)]);
        let d = Poly::new(k, vec![FieldElement::one(k), w]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).unwrap().add(&r).unwrap(), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn display() {
        let k = Field::quadratic(-3).unwrap();
        let w = FieldElement::sqrt_m(k).unwrap();
        let c = &FieldElement::one(k) + &w;
        let p = Poly::new(k, vec![FieldElement::from_int(k, 2), FieldElement::from_int(k, -1), c]);
        assert_eq!(p.to_string(), "2 + -X + (1 + w)*X^2");
    }
}
