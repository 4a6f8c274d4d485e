//! Direct checks of the closure axioms on concrete ideals.

use serde::Serialize;

use crate::domain::ModuleValue;
use crate::exactnum::FieldElement;
use crate::lattice::FractionalIdeal;

use super::certified::CertifiedValue;
use super::op::{OpError, SemistarOp};
use super::quasi::{value_subset, Tri};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `(xE)^⋆ = x·E^⋆`.
    pub scaling: Tri,
    /// `E ⊆ E + G ⇒ E^⋆ ⊆ (E + G)^⋆`.
    pub monotone: Tri,
    pub extensive: Tri,
    pub idempotent: Tri,
}

impl AxiomReport {
    pub fn all(&self) -> Tri {
        self.scaling.and(self.monotone).and(self.extensive).and(self.idempotent)
    }
}

fn scaled(sp: &crate::domain::Space, c: &CertifiedValue, x: &FieldElement) -> CertifiedValue {
    CertifiedValue::from_bounds(sp, c.lower().map(|v| v.scale(sp, x)), c.upper().map(|v| v.scale(sp, x)))
}

/// Checks the axioms for `star` at `E`, using `G` for monotonicity and
/// `x ≠ 0` for scaling. Inexact values make the affected axiom `Unknown`.
pub fn check_axioms(
    star: &SemistarOp,
    e: &FractionalIdeal,
    g: &FractionalIdeal,
    x: &FieldElement,
) -> Result<AxiomReport, OpError> {
    let sp = star.space();
    let es = star.apply(e)?;
    let xes = star.apply(&e.scale(x))?;
    let want = scaled(&sp, &es, x);
    let scaling = value_subset(&sp, &xes, &want).and(value_subset(&sp, &want, &xes));
    let f = e.sum(g).map_err(|x| OpError::Invalid(x.to_string()))?;
    let monotone = value_subset(&sp, &es, &star.apply(&f)?);
    let extensive = value_subset(&sp, &CertifiedValue::exact(ModuleValue::Lattice(e.lattice().clone())), &es);
    let idempotent = match es.exact_value() {
        Some(v) => match star.apply_module(v) {
            Ok(again) => value_subset(&sp, &again, &es).and(value_subset(&sp, &es, &again)),
            Err(OpError::Unsupported(_)) => Tri::Unknown,
            Err(e) => return Err(e),
        },
        None => Tri::Unknown,
    };
    Ok(AxiomReport { scaling, monotone, extensive, idempotent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;

    #[test]
    fn divisorial_on_conductor() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let v = SemistarOp::divisorial(&d);
        let r = check_axioms(&v, d.conductor(), &d.ideal(&[d.int(3)]), &d.basis()[1]).unwrap();
        assert_eq!(r.all(), Tri::True, "{r:?}");
    }
}
