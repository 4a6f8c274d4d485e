use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;

use crate::domain::{Domain, ModuleValue, Space};
use crate::exactnum::{FieldElement, Poly};
use crate::lattice::{FractionalIdeal, QSubspace, QVec, ZLattice};
use crate::starops::OpError;

/// A nonzero finitely generated D[X]-submodule of K[X].
#[derive(Clone)]
pub struct PolyIdeal {
    inner: Arc<Inner>,
}

struct Inner {
    domain: Domain,
    gens: Vec<Poly>,
    gcd: Poly,
    reduced: Vec<Poly>,
    cache: Mutex<HashMap<(usize, usize), ZLattice>>,
}

/// The degree-≤n part of a polynomial ideal as computed with a multiplier cap.
#[derive(Debug, Clone)]
pub struct Slice {
    pub n: usize,
    pub lattice: ZLattice,
    pub cap_used: usize,
    /// Exact by construction (principal ideals, `g·E[X]`).
    pub exact: bool,
    /// The last two caps gave the same lattice.
    pub stabilized: bool,
}

/// D-module of all coefficients of `polys`.
pub fn content_of(d: &Domain, polys: &[Poly]) -> FractionalIdeal {
    let cs: Vec<FieldElement> = polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    d.ideal(&cs)
}

/// `C[X]` restricted to degree `< sp.amb.slots`, for a value `C` in K.
pub fn poly_module(sp: &Space, c: &ModuleValue) -> ModuleValue {
    let deg = sp.domain.degree();
    let slots = sp.amb.slots;
    let spread = |l: &ZLattice| {
        let mut gens: Vec<QVec> = Vec::new();
        for b in l.basis() {
            for i in 0..slots {
                let mut v = vec![BigRational::zero(); sp.dim()];
                for (k, x) in b.iter().enumerate() {
                    v[deg * i + k] = x.clone();
                }
                gens.push(v);
            }
        }
        ZLattice::from_gens(sp.dim(), &gens)
    };
    match c {
        ModuleValue::Lattice(l) => ModuleValue::Lattice(spread(l)),
        ModuleValue::Semilocal(cs) => {
            ModuleValue::semilocal(sp, cs.iter().map(|(p, l)| (p.clone(), spread(l))).collect())
        }
        ModuleValue::Span(s) if s.is_whole() => ModuleValue::whole(sp),
        ModuleValue::Span(s) => {
            let vs = s.basis().iter().flat_map(|b| {
                (0..slots).map(move |i| {
                    let mut v = vec![BigRational::zero(); slots * deg];
                    for (k, x) in b.iter().enumerate() {
                        v[deg * i + k] = x.clone();
                    }
                    v
                })
            });
            ModuleValue::Span(QSubspace::from_vecs(sp.dim(), vs.collect::<Vec<_>>()))
        }
    }
}

/// `h·K[X]` restricted to degree `< slots`.
pub fn multiples_span(sp: &Space, h: &Poly) -> QSubspace {
    let e = h.degree().expect("nonzero divisor");
    let slots = sp.amb.slots;
    if e >= slots {
        return QSubspace::zero(sp.dim());
    }
    let src = crate::lattice::Ambient::new(sp.amb.field, slots - e);
    let m = src.poly_mult_matrix(h, slots);
    QSubspace::from_vecs(sp.dim(), m)
}

impl PolyIdeal {
    pub fn new(d: &Domain, gens: Vec<Poly>) -> Result<Self, OpError> {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(OpError::ZeroIdeal);
        }
        if gens.iter().any(|g| g.field() != d.field()) {
            return Err(OpError::DomainMismatch);
        }
        let gcd = Poly::gcd_all(d.field(), gens.iter()).map_err(|e| OpError::Invalid(e.to_string()))?;
        let reduced = gens
            .iter()
            .map(|g| g.exact_div(&gcd).ok().flatten().expect("gcd divides every generator"))
            .collect();
        Ok(PolyIdeal {
            inner: Arc::new(Inner { domain: d.clone(), gens, gcd, reduced, cache: Mutex::new(HashMap::new()) }),
        })
    }

    /// `E[X]`.
    pub fn extended(d: &Domain, e: &FractionalIdeal) -> Result<Self, OpError> {
        Self::new(d, e.basis().into_iter().map(Poly::constant).collect())
    }

    pub fn domain(&self) -> &Domain {
        &self.inner.domain
    }

    pub fn gens(&self) -> &[Poly] {
        &self.inner.gens
    }

    /// Monic gcd g of the generators; `(K[X] : A) = (1/g)·K[X]`.
    pub fn gcd(&self) -> &Poly {
        &self.inner.gcd
    }

    /// Generators divided by g.
    pub fn reduced(&self) -> &[Poly] {
        &self.inner.reduced
    }

    pub fn max_degree(&self) -> usize {
        self.gens().iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn space(&self, n: usize) -> Space {
        Space::new(self.domain(), n + 1)
    }

    pub fn content(&self) -> FractionalIdeal {
        content_of(self.domain(), self.gens())
    }

    pub fn scale(&self, x: &FieldElement) -> Result<Self, OpError> {
        let gens = self.gens().iter().map(|g| g.scale(x).expect("same field")).collect();
        Self::new(self.domain(), gens)
    }

    pub fn mul(&self, other: &PolyIdeal) -> Result<Self, OpError> {
        let mut gens = Vec::new();
        for a in self.gens() {
            for b in other.gens() {
                gens.push(a.mul(b).map_err(|_| OpError::DomainMismatch)?);
            }
        }
        Self::new(self.domain(), gens)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.clone();
        for _ in 1..k.max(1) {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    /// The same ideal over another domain with the same field, e.g. `A·O[X]`.
    pub fn base_change(&self, d: &Domain) -> Result<Self, OpError> {
        Self::new(d, self.gens().to_vec())
    }

    fn exact_by_shape(&self) -> bool {
        self.gens().len() == 1 || self.reduced().iter().all(|r| r.degree() == Some(0))
    }

    /// ℤ-span of `β·X^i·h` with `i + deg h ≤ n + b`, cut down to degree ≤ n.
    pub fn slice_lower(&self, n: usize, b: usize) -> ZLattice {
        if let Some(l) = self.inner.cache.lock().expect("cache lock").get(&(n, b)) {
            return l.clone();
        }
        let d = self.domain();
        let top = n + b;
        let big = Space::new(d, top + 1);
        let mut gens: Vec<QVec> = Vec::new();
        for h in self.gens() {
            let e = h.degree().expect("nonzero generator");
            if e > top {
                continue;
            }
            for i in 0..=(top - e) {
                let xh = h.shift(i);
                for beta in d.basis() {
                    let v = big.amb.poly_vec(&xh.scale(beta).expect("same field")).expect("degree fits");
                    gens.push(v);
                }
            }
        }
        let l = ZLattice::from_gens(big.dim(), &gens);
        let keep = big.amb.prefix_coords(n + 1);
        let out = l.restrict_coords(&keep).project(&keep);
        self.inner.cache.lock().expect("cache lock").insert((n, b), out.clone());
        out
    }

    /// Degree-≤n part, raising the degree bound `n + b` one step at a time
    /// for up to `cap` steps past the largest generator degree.
    pub fn slice(&self, n: usize, cap: usize) -> Slice {
        let exact = self.exact_by_shape();
        if exact {
            return Slice { n, lattice: self.slice_lower(n, 0), cap_used: 0, exact, stabilized: false };
        }
        // comparisons only count once every generator fits under the degree bound
        let start = self.max_degree().saturating_sub(n);
        let mut prev = self.slice_lower(n, start);
        for b in start + 1..=start + cap {
            let cur = self.slice_lower(n, b);
            if cur == prev {
                return Slice { n, lattice: cur, cap_used: b, exact, stabilized: true };
            }
            prev = cur;
        }
        Slice { n, lattice: prev, cap_used: start + cap, exact, stabilized: false }
    }

    /// Membership of `f` in the computed slice of degree `deg f`.
    pub fn contains(&self, f: &Poly, cap: usize) -> bool {
        if f.is_zero() {
            return true;
        }
        let n = f.degree().unwrap();
        let sp = self.space(n);
        self.slice(n, cap).lattice.contains(&sp.amb.poly_vec(f).expect("degree fits"))
    }
}

impl fmt::Debug for PolyIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pidl(")?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;

    #[test]
    fn slices_of_two_x_over_z() {
        let z = OrderDomain::integers();
        let k = z.field();
        let a = PolyIdeal::new(&z, vec![parse_poly(k, "2").unwrap(), parse_poly(k, "X").unwrap()]).unwrap();
        assert_eq!(a.gcd(), &Poly::one(k));
        assert!(!a.contains(&parse_poly(k, "1").unwrap(), 3));
        assert!(a.contains(&parse_poly(k, "2 + 3*X^2").unwrap(), 3));
        let s = a.slice(2, 3);
        assert!(s.stabilized);
        assert_eq!(s.lattice.rank(), 3);
    }

    #[test]
    fn cancellation_needs_multipliers() {
        let z = OrderDomain::integers();
        let k = z.field();
        // X·(X+1) − (X^2) = X lies in the degree-1 slice only with multipliers
        let a = PolyIdeal::new(&z, vec![parse_poly(k, "X^2 + X").unwrap(), parse_poly(k, "X^2").unwrap()]).unwrap();
        let x = parse_poly(k, "X").unwrap();
        assert_eq!(a.gcd(), &x);
        assert!(!a.slice_lower(1, 0).contains(&a.space(1).amb.poly_vec(&x).unwrap()));
        assert!(a.contains(&x, 2));
    }
}
