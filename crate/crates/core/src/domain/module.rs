//! D-submodules of K^s that arise as closure values: finitely generated
//! lattices, finite intersections of localizations `∩ L_P·D_P`, and
//! K-subspaces (the "all of K" marker and its relatives).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::order::Domain;
use super::primes::PrimeIdeal;
use crate::exactnum::FieldElement;
use crate::lattice::{left_inverse, Ambient, QSubspace, QVec, ZLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("operation not representable: {0}")]
    Unsupported(String),
    #[error("division by the zero module")]
    ZeroDivisor,
}

/// Domain and ambient space that a module value lives in.
#[derive(Debug, Clone)]
pub struct Space {
    pub domain: Domain,
    pub amb: Ambient,
}

impl Space {
    pub fn new(domain: &Domain, slots: usize) -> Self {
        Space { domain: domain.clone(), amb: Ambient::new(domain.field(), slots) }
    }

    pub fn dim(&self) -> usize {
        self.amb.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleValue {
    Lattice(ZLattice),
    /// `∩ L_P·D_P` over a nonempty sorted prime list; all `L_P` share one
    /// ℚ-span.
    Semilocal(Vec<(PrimeIdeal, ZLattice)>),
    /// A D-stable ℚ-subspace, e.g. all of K.
    Span(QSubspace),
}

/// `{x ∈ l : x ∈ n·D_P}` for D-modules `n ⊆ l` of equal rank.
pub fn saturate(sp: &Space, l: &ZLattice, n: &ZLattice, p: &PrimeIdeal) -> ZLattice {
    let Some(t) = l.index_of(n) else {
        panic!("saturation needs a full-rank sublattice");
    };
    if t.is_one() {
        return l.clone();
    }
    let pb = BigInt::from(p.p());
    let mut t_free = t;
    while t_free.is_multiple_of(&pb) {
        t_free /= &pb;
    }
    // s ∉ P but s lies in every other prime dividing the index
    let s = sp.domain.separator(p, &t_free);
    let m = sp.amb.mult_matrix(&s);
    let mut x = n.clone();
    loop {
        let y = l.preimage_in(&m, &x);
        if y == x {
            return x;
        }
        x = y;
    }
}

fn vec_elems(sp: &Space, v: &[num_rational::BigRational]) -> Vec<FieldElement> {
    sp.amb.from_vec(v)
}

impl ModuleValue {
    pub fn zero(sp: &Space) -> Self {
        ModuleValue::Lattice(ZLattice::zero(sp.dim()))
    }

    pub fn whole(sp: &Space) -> Self {
        ModuleValue::Span(QSubspace::whole(sp.dim()))
    }

    /// Normalizes `∩ L_P·D_P`; an empty list yields all of the ambient.
    pub fn semilocal(sp: &Space, mut comps: Vec<(PrimeIdeal, ZLattice)>) -> Self {
        if comps.is_empty() {
            return Self::whole(sp);
        }
        comps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(PrimeIdeal, ZLattice)> = Vec::new();
        for (p, l) in comps {
            match merged.last_mut() {
                Some((q, m)) if *q == p => *m = m.intersect(&l),
                _ => merged.push((p, l)),
            }
        }
        let mut span = merged[0].1.span();
        for (_, l) in &merged[1..] {
            span = span.intersect(&l.span());
        }
        if span.rank() == 0 {
            return Self::zero(sp);
        }
        for (_, l) in merged.iter_mut() {
            *l = l.intersect_subspace(&span);
        }
        ModuleValue::Semilocal(merged)
    }

    pub fn span(&self, sp: &Space) -> QSubspace {
        match self {
            ModuleValue::Lattice(l) => l.span(),
            ModuleValue::Semilocal(c) => c[0].1.span(),
            ModuleValue::Span(s) => {
                debug_assert_eq!(s.dim(), sp.dim());
                s.clone()
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ModuleValue::Lattice(l) => l.is_zero(),
            ModuleValue::Semilocal(_) => false,
            ModuleValue::Span(s) => s.rank() == 0,
        }
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, ModuleValue::Span(s) if s.is_whole())
    }

    pub fn as_lattice(&self) -> Option<&ZLattice> {
        match self {
            ModuleValue::Lattice(l) => Some(l),
            _ => None,
        }
    }

    pub fn contains(&self, sp: &Space, v: &[num_rational::BigRational]) -> bool {
        match self {
            ModuleValue::Lattice(l) => l.contains(v),
            ModuleValue::Span(s) => s.contains(v),
            ModuleValue::Semilocal(c) => {
                if !c[0].1.span().contains(v) {
                    return false;
                }
                let x = vec_elems(sp, v);
                c.iter().all(|(p, l)| sp.domain.local_member(&sp.amb, &x, l, p))
            }
        }
    }

    pub fn is_subset(&self, sp: &Space, other: &ModuleValue) -> bool {
        use ModuleValue::*;
        if self.is_zero() {
            return true;
        }
        match (self, other) {
            (Lattice(a), _) => a.basis().iter().all(|v| other.contains(sp, v)),
            (Semilocal(_), Lattice(_)) => false,
            (Semilocal(ca), Semilocal(cb)) => cb.iter().all(|(q, lb)| {
                let Some((_, la)) = ca.iter().find(|(p, _)| p == q) else {
                    return false;
                };
                la.basis().iter().all(|v| sp.domain.local_member(&sp.amb, &vec_elems(sp, v), lb, q))
            }),
            (Semilocal(_), Span(s)) => self.span(sp).is_subspace_of(s),
            (Span(_), Lattice(_) | Semilocal(_)) => false,
            (Span(a), Span(b)) => a.is_subspace_of(b),
        }
    }

    pub fn same(&self, sp: &Space, other: &ModuleValue) -> bool {
        self.is_subset(sp, other) && other.is_subset(sp, self)
    }

    /// `self ∩ l` for a finitely generated D-module `l`.
    pub fn intersect_lattice(&self, sp: &Space, l: &ZLattice) -> ZLattice {
        match self {
            ModuleValue::Lattice(a) => a.intersect(l),
            ModuleValue::Span(s) => l.intersect_subspace(s),
            ModuleValue::Semilocal(c) => {
                let mut acc = l.intersect_subspace(&c[0].1.span());
                for (p, lp) in c {
                    if acc.is_zero() {
                        break;
                    }
                    let n = acc.intersect(lp);
                    acc = saturate(sp, &acc, &n, p);
                }
                acc
            }
        }
    }

    fn restrict_span(&self, sp: &Space, s: &QSubspace) -> ModuleValue {
        match self {
            ModuleValue::Lattice(l) => ModuleValue::Lattice(l.intersect_subspace(s)),
            ModuleValue::Span(t) => ModuleValue::Span(t.intersect(s)),
            ModuleValue::Semilocal(c) => {
                Self::semilocal(sp, c.iter().map(|(p, l)| (p.clone(), l.intersect_subspace(s))).collect())
            }
        }
    }

    pub fn intersect(&self, sp: &Space, other: &ModuleValue) -> ModuleValue {
        use ModuleValue::*;
        match (self, other) {
            (Lattice(a), _) => Lattice(other.intersect_lattice(sp, a)),
            (_, Lattice(b)) => Lattice(self.intersect_lattice(sp, b)),
            (Span(s), x) | (x, Span(s)) => x.restrict_span(sp, s),
            (Semilocal(ca), Semilocal(cb)) => {
                let sa = self.span(sp);
                let sb = other.span(sp);
                let mut comps = Vec::new();
                for (p, l) in ca {
                    match cb.iter().find(|(q, _)| q == p) {
                        Some((_, m)) => comps.push((p.clone(), l.intersect(m))),
                        None => comps.push((p.clone(), l.intersect_subspace(&sb))),
                    }
                }
                for (q, m) in cb {
                    if !ca.iter().any(|(p, _)| p == q) {
                        comps.push((q.clone(), m.intersect_subspace(&sa)));
                    }
                }
                Self::semilocal(sp, comps)
            }
        }
    }

    pub fn sum(&self, sp: &Space, other: &ModuleValue) -> Result<ModuleValue, ModuleError> {
        use ModuleValue::*;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if other.is_subset(sp, self) {
            return Ok(self.clone());
        }
        if self.is_subset(sp, other) {
            return Ok(other.clone());
        }
        match (self, other) {
            (Lattice(a), Lattice(b)) => Ok(Lattice(a.sum(b))),
            (Semilocal(ca), Semilocal(cb))
                if ca.len() == cb.len() && ca.iter().zip(cb).all(|(x, y)| x.0 == y.0) =>
            {
                let comps = ca.iter().zip(cb).map(|((p, a), (_, b))| (p.clone(), a.sum(b))).collect();
                Ok(Self::semilocal(sp, comps))
            }
            (Span(a), Span(b)) => Ok(Span(a.sum(b))),
            _ => Err(ModuleError::Unsupported(format!("sum of {self} and {other}"))),
        }
    }

    /// Image under an injective D-linear map given by its matrix.
    pub fn image(&self, sp_out: &Space, m: &[QVec]) -> ModuleValue {
        let d = sp_out.dim();
        match self {
            ModuleValue::Lattice(l) => ModuleValue::Lattice(l.image(m, d)),
            ModuleValue::Span(s) => ModuleValue::Span(s.image(m, d)),
            ModuleValue::Semilocal(c) => {
                Self::semilocal(sp_out, c.iter().map(|(p, l)| (p.clone(), l.image(m, d))).collect())
            }
        }
    }

    /// Preimage under an injective D-linear map `x ↦ x·m` from `sp_in`.
    pub fn preimage(&self, sp_in: &Space, m: &[QVec]) -> ModuleValue {
        let out_dim = m.first().map_or(0, |r| r.len());
        let r = left_inverse(m, out_dim).expect("map must be injective");
        let row_space = QSubspace::from_vecs(out_dim, m.iter().cloned());
        let back = |l: &ZLattice| l.intersect_subspace(&row_space).image(&r, sp_in.dim());
        match self {
            ModuleValue::Lattice(l) => ModuleValue::Lattice(back(l)),
            ModuleValue::Span(s) => ModuleValue::Span(s.intersect(&row_space).image(&r, sp_in.dim())),
            ModuleValue::Semilocal(c) => {
                Self::semilocal(sp_in, c.iter().map(|(p, l)| (p.clone(), back(l))).collect())
            }
        }
    }

    pub fn scale(&self, sp: &Space, x: &FieldElement) -> ModuleValue {
        if x.is_zero() {
            return Self::zero(sp);
        }
        self.image(sp, &sp.amb.mult_matrix(x))
    }

    /// Members supported on the first `slots` slots, viewed in that smaller
    /// ambient.
    pub fn truncate(&self, sp: &Space, slots: usize) -> ModuleValue {
        let keep = sp.amb.prefix_coords(slots);
        let proj = |l: &ZLattice| l.restrict_coords(&keep).project(&keep);
        let out = Space { domain: sp.domain.clone(), amb: Ambient::new(sp.amb.field, slots) };
        match self {
            ModuleValue::Lattice(l) => ModuleValue::Lattice(proj(l)),
            ModuleValue::Span(s) => {
                let keep_sp = QSubspace::from_vecs(
                    sp.dim(),
                    keep.iter().map(|&i| {
                        let mut v = vec![num_rational::BigRational::zero(); sp.dim()];
                        v[i] = num_rational::BigRational::one();
                        v
                    }),
                );
                let r = s.intersect(&keep_sp);
                let basis: Vec<QVec> = r.basis().iter().map(|v| keep.iter().map(|&i| v[i].clone()).collect()).collect();
                ModuleValue::Span(QSubspace::from_vecs(out.dim(), basis))
            }
            ModuleValue::Semilocal(c) => Self::semilocal(&out, c.iter().map(|(p, l)| (p.clone(), proj(l))).collect()),
        }
    }

    /// `self·T` for a ring lattice T in K (slots multiply independently).
    pub fn extend_ring(&self, sp: &Space, t_basis: &[FieldElement]) -> ModuleValue {
        let ext = |l: &ZLattice| {
            let gens: Vec<QVec> =
                t_basis.iter().flat_map(|b| l.image(&sp.amb.mult_matrix(b), sp.dim()).basis()).collect();
            ZLattice::from_gens(sp.dim(), &gens)
        };
        match self {
            ModuleValue::Lattice(l) => ModuleValue::Lattice(ext(l)),
            ModuleValue::Span(s) => ModuleValue::Span(s.clone()),
            ModuleValue::Semilocal(c) => Self::semilocal(sp, c.iter().map(|(p, l)| (p.clone(), ext(l))).collect()),
        }
    }

    /// `(self : f) = {x ∈ K : x·f ⊆ self}`, for values in K itself.
    pub fn colon(&self, sp: &Space, f: &ModuleValue) -> Result<ModuleValue, ModuleError> {
        use ModuleValue::*;
        debug_assert_eq!(sp.amb.slots, 1);
        if f.is_zero() {
            return Err(ModuleError::ZeroDivisor);
        }
        match f {
            Lattice(fl) => {
                let mut acc: Option<ModuleValue> = None;
                for v in fl.basis() {
                    let b = FieldElement::from_coords(sp.amb.field, &v);
                    let t = self.scale(sp, &b.inv().expect("basis vectors are nonzero"));
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.intersect(sp, &t),
                    });
                }
                Ok(acc.expect("nonzero lattice has a basis"))
            }
            Span(_) => Ok(if self.is_whole() { self.clone() } else { Self::zero(sp) }),
            Semilocal(cf) => match self {
                Span(_) => Ok(self.clone()),
                Lattice(_) => Ok(Self::zero(sp)),
                Semilocal(cs) => {
                    let mut comps = Vec::new();
                    for (q, l) in cs {
                        let Some((_, n)) = cf.iter().find(|(p, _)| p == q) else {
                            return Ok(Self::zero(sp));
                        };
                        let a = crate::lattice::FractionalIdeal::from_lattice(sp.amb.field, l.clone());
                        let b = crate::lattice::FractionalIdeal::from_lattice(sp.amb.field, n.clone());
                        let c = a.colon(&b).map_err(|_| ModuleError::ZeroDivisor)?;
                        comps.push((q.clone(), c.lattice().clone()));
                    }
                    Ok(Self::semilocal(sp, comps))
                }
            },
        }
    }
}

impl fmt::Display for ModuleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleValue::Lattice(l) => write!(f, "{l}"),
            ModuleValue::Span(s) if s.is_whole() => write!(f, "K"),
            ModuleValue::Span(s) => write!(f, "span(rank {})", s.rank()),
            ModuleValue::Semilocal(c) => {
                write!(f, "meet[")?;
                for (i, (p, l)) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} at norm-{} prime {}", l, p.norm(), p.ideal())?;
                }
                write!(f, "]")
            }
        }
    }
}
