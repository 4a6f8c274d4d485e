//! Content ideals and the identities relating them.

use crate::domain::Domain;
use crate::exactnum::Poly;
use crate::lattice::FractionalIdeal;
use crate::starops::OpError;

use super::polyideal::{content_of, PolyIdeal};

/// `c(f)`: the D-module generated by the coefficients of `f`.
pub fn content(d: &Domain, f: &Poly) -> Result<FractionalIdeal, OpError> {
    if f.is_zero() {
        return Err(OpError::ZeroIdeal);
    }
    Ok(content_of(d, std::slice::from_ref(f)))
}

fn pow(d: &Domain, e: &FractionalIdeal, k: u32) -> FractionalIdeal {
    e.pow(k, d.ring())
}

/// `c(f)·c(g)^(m+1) = c(fg)·c(g)^m` with `m = deg f`.
pub fn dedekind_mertens_check(d: &Domain, f: &Poly, g: &Poly) -> Result<bool, OpError> {
    let m = f.degree().ok_or(OpError::ZeroIdeal)? as u32;
    let cf = content(d, f)?;
    let cg = content(d, g)?;
    let fg = f.mul(g).map_err(|_| OpError::DomainMismatch)?;
    let cfg = content(d, &fg)?;
    let left = cf.mul(&pow(d, &cg, m + 1)).expect("same field");
    let right = cfg.mul(&pow(d, &cg, m)).expect("same field");
    Ok(left == right)
}

/// `g₁ + X^(deg g₁ + 1)·g₂ + …`, an element of H whose content is the sum
/// of the generator contents.
pub fn interleave(gens: &[Poly]) -> Poly {
    let mut acc = gens[0].clone();
    let mut shift = acc.degree().map_or(0, |e| e + 1);
    for g in &gens[1..] {
        acc = acc.add(&g.shift(shift)).expect("same field");
        shift = acc.degree().map_or(0, |e| e + 1);
    }
    acc
}

/// `Σ_{g∈H} c(g)^r = (Σ_{g∈H} c(g))^r`, the left side taken over the
/// generators together with their interleaving.
pub fn content_power_sum_check(h: &PolyIdeal, r: u32) -> Result<bool, OpError> {
    if r == 0 {
        return Err(OpError::Invalid("exponent must be positive".into()));
    }
    let d = h.domain();
    if !h.content().is_subset(d.ring()) {
        return Err(OpError::Invalid(format!("{h} is not integral")));
    }
    let mut pool: Vec<Poly> = h.gens().to_vec();
    pool.push(interleave(h.gens()));
    let mut left = FractionalIdeal::zero(d.field());
    for g in &pool {
        left = left.sum(&pow(d, &content(d, g)?, r)).expect("same field");
    }
    let right = pow(d, &h.content(), r);
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;

    #[test]
    fn conductor_as_content() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let f = parse_poly(d.field(), "2 + (1 + w)*X").unwrap();
        assert_eq!(&content(&d, &f).unwrap(), d.conductor());
        assert_eq!(&content(&d, &parse_poly(d.field(), "X^2 - 1").unwrap()).unwrap(), d.ring());
    }

    #[test]
    fn power_sum_on_two_x() {
        let z = OrderDomain::integers();
        let k = z.field();
        let h = PolyIdeal::new(&z, vec![parse_poly(k, "2").unwrap(), parse_poly(k, "X").unwrap()]).unwrap();
        for r in 1..=3 {
            assert!(content_power_sum_check(&h, r).unwrap());
        }
        assert_eq!(interleave(h.gens()), parse_poly(k, "2 + X^2").unwrap());
    }

    #[test]
    fn mertens_with_nonmaximal_contents() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let k = d.field();
        let f = parse_poly(k, "2 + (1 + w)*X").unwrap();
        let g = parse_poly(k, "(1 - w) + 2*X").unwrap();
        assert!(dedekind_mertens_check(&d, &f, &g).unwrap());
    }
}
