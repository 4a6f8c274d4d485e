use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use super::{Ambient, ZLattice};
use crate::exactnum::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ambient mismatch")]
    AmbientMismatch,
    #[error("colon by the zero ideal")]
    ZeroDivisor,
    #[error("zero ideal where a nonzero one is required")]
    ZeroIdeal,
}

/// A finitely generated ℤ-submodule of K. Closure under an order D is the
/// responsibility of the constructor in the domain layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdeal {
    field: Field,
    lat: ZLattice,
}

impl FractionalIdeal {
    pub fn from_lattice(field: Field, lat: ZLattice) -> Self {
        assert_eq!(lat.dim(), field.degree());
        FractionalIdeal { field, lat }
    }

    /// ℤ-span of the given elements.
    pub fn z_span(field: Field, gens: &[FieldElement]) -> Self {
        let amb = Ambient::new(field, 1);
        let vs: Vec<_> = gens.iter().map(|g| amb.to_vec(std::slice::from_ref(g))).collect();
        FractionalIdeal { field, lat: ZLattice::from_gens(field.degree(), &vs) }
    }

    pub fn zero(field: Field) -> Self {
        FractionalIdeal { field, lat: ZLattice::zero(field.degree()) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lat
    }

    pub fn is_zero(&self) -> bool {
        self.lat.is_zero()
    }

    /// The HNF basis as field elements.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.lat.basis().iter().map(|v| FieldElement::from_coords(self.field, v)).collect()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.field() == self.field && self.lat.contains(&x.coords())
    }

    pub fn is_subset(&self, other: &FractionalIdeal) -> bool {
        self.lat.is_subset(&other.lat)
    }

    fn check(&self, other: &FractionalIdeal) -> Result<(), IdealError> {
        if self.field != other.field {
            Err(IdealError::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check(other)?;
        Ok(FractionalIdeal { field: self.field, lat: self.lat.sum(&other.lat) })
    }

    pub fn intersect(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check(other)?;
        Ok(FractionalIdeal { field: self.field, lat: self.lat.intersect(&other.lat) })
    }

    /// ℤ-span of pairwise products.
    pub fn mul(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check(other)?;
        let mut gens = Vec::new();
        for a in self.basis() {
            for b in other.basis() {
                gens.push(&a * &b);
            }
        }
        Ok(FractionalIdeal::z_span(self.field, &gens))
    }

    pub fn pow(&self, e: u32, one: &FractionalIdeal) -> FractionalIdeal {
        let mut acc = one.clone();
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn scale(&self, x: &FieldElement) -> FractionalIdeal {
        let amb = Ambient::new(self.field, 1);
        FractionalIdeal { field: self.field, lat: self.lat.image(&amb.mult_matrix(x), self.field.degree()) }
    }

    pub fn scale_rational(&self, q: &BigRational) -> FractionalIdeal {
        FractionalIdeal { field: self.field, lat: self.lat.scale(q) }
    }

    /// `(self : f) = f⁻¹·self` for a nonzero element.
    pub fn div_elem(&self, f: &FieldElement) -> Result<FractionalIdeal, IdealError> {
        let inv = f.inv().map_err(|_| IdealError::ZeroDivisor)?;
        Ok(self.scale(&inv))
    }

    /// `(self : other) = {x ∈ K : x·other ⊆ self}`, intersecting f⁻¹·self over
    /// the basis of `other`.
    pub fn colon(&self, other: &FractionalIdeal) -> Result<FractionalIdeal, IdealError> {
        self.check(other)?;
        let basis = other.basis();
        let mut acc: Option<FractionalIdeal> = None;
        for f in &basis {
            let t = self.div_elem(f)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.intersect(&t)?,
            });
        }
        acc.ok_or(IdealError::ZeroDivisor)
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "idl(")?;
        for (i, b) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_element;

    fn idl(k: Field, gens: &[&str]) -> FractionalIdeal {
        let g: Vec<_> = gens.iter().map(|s| parse_element(k, s).unwrap()).collect();
        FractionalIdeal::z_span(k, &g)
    }

    #[test]
    fn integer_sum_is_gcd() {
        let k = Field::Rational;
        assert_eq!(idl(k, &["4"]).sum(&idl(k, &["6"])).unwrap(), idl(k, &["2"]));
    }

    #[test]
    fn colon_of_two() {
        let k = Field::Rational;
        let z = idl(k, &["1"]);
        assert_eq!(z.colon(&idl(k, &["2"])).unwrap(), idl(k, &["1/2"]));
        assert_eq!(z.colon(&FractionalIdeal::zero(k)), Err(IdealError::ZeroDivisor));
    }

    #[test]
    fn square_of_conductor() {
        let k = Field::quadratic(-3).unwrap();
        // P = ⟨2, 1+w⟩ as a ℤ-module is already closed under ℤ[w]
        let p = idl(k, &["2", "1 + w", "2*w", "w - 3"]);
        let two = parse_element(k, "2").unwrap();
        assert_eq!(p.mul(&p).unwrap(), p.scale(&two));
    }
}
