use num_rational::BigRational;
use num_traits::Zero;

use super::QVec;
use crate::exactnum::{Field, FieldElement, Poly};

/// K^slots viewed as ℚ^(degree·slots); slot i occupies coordinates
/// `degree·i .. degree·(i+1)`. For polynomial slices slot i holds the
/// coefficient of X^i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub field: Field,
    pub slots: usize,
}

impl Ambient {
    pub fn new(field: Field, slots: usize) -> Self {
        Ambient { field, slots }
    }

    pub fn dim(&self) -> usize {
        self.field.degree() * self.slots
    }

    pub fn to_vec(&self, xs: &[FieldElement]) -> QVec {
        debug_assert_eq!(xs.len(), self.slots);
        xs.iter().flat_map(|x| x.coords()).collect()
    }

    pub fn from_vec(&self, v: &[BigRational]) -> Vec<FieldElement> {
        let d = self.field.degree();
        v.chunks(d).map(|c| FieldElement::from_coords(self.field, c)).collect()
    }

    /// Coefficient vector of `p`; `None` if `deg p ≥ slots`.
    pub fn poly_vec(&self, p: &Poly) -> Option<QVec> {
        if p.degree().is_some_and(|d| d >= self.slots) {
            return None;
        }
        let xs: Vec<FieldElement> = (0..self.slots).map(|i| p.coeff(i)).collect();
        Some(self.to_vec(&xs))
    }

    pub fn vec_poly(&self, v: &[BigRational]) -> Poly {
        Poly::new(self.field, self.from_vec(v))
    }

    /// Matrix of `y ↦ x·y` acting on a single copy of K.
    fn elem_block(&self, x: &FieldElement) -> Vec<QVec> {
        match self.field {
            Field::Rational => vec![x.coords()],
            Field::Quadratic(m) => {
                let (a, b) = (x.a(), x.b());
                let mb = &b * BigRational::from_integer(m.into());
                vec![vec![a.clone(), b], vec![mb, a]]
            }
        }
    }

    /// Multiplication of every slot by `x`.
    pub fn mult_matrix(&self, x: &FieldElement) -> Vec<QVec> {
        self.poly_mult_matrix(&Poly::constant(x.clone()), self.slots)
    }

    /// Multiplication by the polynomial `h`, from this ambient into one with
    /// `out_slots` slots; coefficients beyond `out_slots` are dropped.
    pub fn poly_mult_matrix(&self, h: &Poly, out_slots: usize) -> Vec<QVec> {
        let d = self.field.degree();
        let mut m = vec![vec![BigRational::zero(); d * out_slots]; d * self.slots];
        for (k, c) in h.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let blk = self.elem_block(c);
            for i in 0..self.slots {
                let j = i + k;
                if j >= out_slots {
                    continue;
                }
                for r in 0..d {
                    for s in 0..d {
                        m[d * i + r][d * j + s] += &blk[r][s];
                    }
                }
            }
        }
        m
    }

    /// Coordinates of slots `0..k`.
    pub fn prefix_coords(&self, k: usize) -> Vec<usize> {
        (0..self.field.degree() * k.min(self.slots)).collect()
    }
}
