use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hnf::{hnf, left_kernel};
use super::subspace::QSubspace;
use super::{vec_mat, QVec};

/// A finitely generated ℤ-submodule of ℚ^dim: `(1/den)·rowspan(rows)` with
/// `rows` in HNF and `gcd(den, entries) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZLattice {
    dim: usize,
    den: BigInt,
    rows: Vec<Vec<BigInt>>,
}

fn common_den<'a>(vs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    vs.into_iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()))
}

fn scale_to_int(v: &[BigRational], den: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x.numer() * (den / x.denom())).collect()
}

impl ZLattice {
    pub fn zero(dim: usize) -> Self {
        ZLattice { dim, den: BigInt::one(), rows: Vec::new() }
    }

    /// `(1/den)·span(rows)` for integer rows.
    pub fn from_int_rows(dim: usize, den: BigInt, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        assert!(den.is_positive());
        let rows = hnf(rows, dim);
        Self::normalize(dim, den, rows)
    }

    fn normalize(dim: usize, mut den: BigInt, mut rows: Vec<Vec<BigInt>>) -> Self {
        if rows.is_empty() {
            return Self::zero(dim);
        }
        let mut g = den.clone();
        for r in &rows {
            for x in r {
                g = g.gcd(x);
                if g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() {
            den /= &g;
            for r in rows.iter_mut() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
        ZLattice { dim, den, rows }
    }

    pub fn from_gens(dim: usize, gens: &[QVec]) -> Self {
        let den = common_den(gens.iter().flatten());
        Self::from_int_rows(dim, den.clone(), gens.iter().map(|g| scale_to_int(g, &den)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn int_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> Vec<QVec> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect())
            .collect()
    }

    pub fn span(&self) -> QSubspace {
        QSubspace::from_vecs(self.dim, self.basis())
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` is a member.
    pub fn coords_of(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let mut w: Vec<BigInt> = Vec::with_capacity(v.len());
        for x in v {
            let y = x * BigRational::from_integer(self.den.clone());
            if !y.is_integer() {
                return None;
            }
            w.push(y.to_integer());
        }
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let p = r.iter().position(|x| !x.is_zero()).unwrap();
            let (q, rem) = w[p].div_rem(&r[p]);
            if !rem.is_zero() {
                return None;
            }
            for (x, y) in w.iter_mut().zip(r) {
                *x -= &q * y;
            }
            out.push(q);
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.coords_of(v).is_some()
    }

    pub fn is_subset(&self, other: &ZLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &ZLattice) -> ZLattice {
        assert_eq!(self.dim, other.dim, "ambient mismatch");
        let den = self.den.lcm(&other.den);
        let a = &den / &self.den;
        let b = &den / &other.den;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * &a).collect())
            .chain(other.rows.iter().map(|r| r.iter().map(|x| x * &b).collect()));
        Self::from_int_rows(self.dim, den, rows)
    }

    pub fn sum_all<'a>(dim: usize, ls: impl IntoIterator<Item = &'a ZLattice>) -> ZLattice {
        let mut gens = Vec::new();
        for l in ls {
            gens.extend(l.basis());
        }
        Self::from_gens(dim, &gens)
    }

    pub fn scale(&self, q: &BigRational) -> ZLattice {
        if q.is_zero() {
            return Self::zero(self.dim);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * q.numer()).collect());
        Self::from_int_rows(self.dim, &self.den * q.denom().abs(), rows)
    }

    /// Image under `x ↦ x·M` with `M` given by rows.
    pub fn image(&self, m: &[QVec], out_dim: usize) -> ZLattice {
        let gens: Vec<QVec> = self.basis().iter().map(|b| vec_mat(b, m, out_dim)).collect();
        Self::from_gens(out_dim, &gens)
    }

    /// `{x ∈ self : x·M ∈ target}`.
    pub fn preimage_in(&self, m: &[QVec], target: &ZLattice) -> ZLattice {
        let out_dim = target.dim;
        let basis = self.basis();
        if basis.is_empty() {
            return self.clone();
        }
        let imgs: Vec<QVec> = basis.iter().map(|b| vec_mat(b, m, out_dim)).collect();
        let tb = target.basis();
        let den = common_den(imgs.iter().flatten().chain(tb.iter().flatten()));
        let mut stacked: Vec<Vec<BigInt>> = imgs.iter().map(|v| scale_to_int(v, &den)).collect();
        stacked.extend(tb.iter().map(|v| scale_to_int(v, &den).into_iter().map(|x| -x).collect()));
        let k = basis.len();
        let ker = left_kernel(&stacked, out_dim);
        let gens = ker.iter().map(|y| y[..k].to_vec());
        Self::from_int_rows(self.dim, self.den.clone(), hnf_combine(&self.rows, gens))
    }

    pub fn intersect(&self, other: &ZLattice) -> ZLattice {
        assert_eq!(self.dim, other.dim, "ambient mismatch");
        let id: Vec<QVec> = (0..self.dim).map(|i| unit(self.dim, i)).collect();
        self.preimage_in(&id, other)
    }

    /// `{x ∈ self : x·N = 0}` with `N` a dim × c matrix in row form.
    pub fn kernel_of(&self, n: &[QVec]) -> ZLattice {
        let c = n.first().map_or(0, |r| r.len());
        if c == 0 || self.is_zero() {
            return self.clone();
        }
        let imgs: Vec<QVec> = self.basis().iter().map(|b| vec_mat(b, n, c)).collect();
        let den = common_den(imgs.iter().flatten());
        let m: Vec<Vec<BigInt>> = imgs.iter().map(|v| scale_to_int(v, &den)).collect();
        let ker = left_kernel(&m, c);
        Self::from_int_rows(self.dim, self.den.clone(), hnf_combine(&self.rows, ker.into_iter()))
    }

    pub fn intersect_subspace(&self, s: &QSubspace) -> ZLattice {
        if s.is_whole() {
            return self.clone();
        }
        self.kernel_of(&s.equations())
    }

    /// Members whose coordinates outside `keep` vanish.
    pub fn restrict_coords(&self, keep: &[usize]) -> ZLattice {
        let drop: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        if drop.is_empty() {
            return self.clone();
        }
        let n: Vec<QVec> = (0..self.dim)
            .map(|i| drop.iter().map(|&j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        self.kernel_of(&n)
    }

    /// Coordinate projection onto `cols` (in that order).
    pub fn project(&self, cols: &[usize]) -> ZLattice {
        let gens: Vec<QVec> = self.basis().iter().map(|b| cols.iter().map(|&c| b[c].clone()).collect()).collect();
        Self::from_gens(cols.len(), &gens)
    }

    /// Embeds into a larger ambient by placing coordinate i at `cols[i]`.
    pub fn embed(&self, cols: &[usize], out_dim: usize) -> ZLattice {
        let gens: Vec<QVec> = self
            .basis()
            .iter()
            .map(|b| {
                let mut v = vec![BigRational::zero(); out_dim];
                for (i, &c) in cols.iter().enumerate() {
                    v[c] = b[i].clone();
                }
                v
            })
            .collect();
        Self::from_gens(out_dim, &gens)
    }

    /// `[self : sub]` when `sub ⊆ self` has the same rank.
    pub fn index_of(&self, sub: &ZLattice) -> Option<BigInt> {
        let diag = self.quotient_diag(sub)?;
        Some(diag.iter().product())
    }

    fn quotient_diag(&self, sub: &ZLattice) -> Option<Vec<BigInt>> {
        if sub.rank() != self.rank() {
            return None;
        }
        let coords: Option<Vec<Vec<BigInt>>> = sub.basis().iter().map(|b| self.coords_of(b)).collect();
        let h = hnf(coords?, self.rank());
        if h.len() != self.rank() {
            return None;
        }
        Some(h.iter().enumerate().map(|(i, r)| r[i].clone()).collect())
    }

    /// Coset representatives of `self / sub`, or `None` if `sub` is not a
    /// full-rank sublattice or the index exceeds `cap`.
    pub fn coset_reps(&self, sub: &ZLattice, cap: u64) -> Option<Vec<QVec>> {
        let coords: Option<Vec<Vec<BigInt>>> = sub.basis().iter().map(|b| self.coords_of(b)).collect();
        let h = hnf(coords?, self.rank());
        if h.len() != self.rank() {
            return None;
        }
        let diag: Vec<u64> = h
            .iter()
            .enumerate()
            .map(|(i, r)| u64::try_from(&r[i]).ok())
            .collect::<Option<Vec<u64>>>()?;
        let total = diag.iter().try_fold(1u64, |a, &d| a.checked_mul(d))?;
        if total > cap {
            return None;
        }
        let basis = self.basis();
        let mut reps = vec![vec![BigRational::zero(); self.dim]];
        for (i, &d) in diag.iter().enumerate() {
            let mut next = Vec::with_capacity(reps.len() * d as usize);
            for r in &reps {
                for c in 0..d {
                    let c = BigRational::from_integer(c.into());
                    next.push(r.iter().zip(&basis[i]).map(|(x, b)| x + &c * b).collect());
                }
            }
            reps = next;
        }
        Some(reps)
    }
}

fn unit(dim: usize, i: usize) -> QVec {
    (0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
}

/// Integer rows `y·rows` for each coefficient vector `y`.
fn hnf_combine<'a>(rows: &'a [Vec<BigInt>], ys: impl Iterator<Item = Vec<BigInt>> + 'a) -> impl Iterator<Item = Vec<BigInt>> + 'a {
    ys.map(move |y| {
        let n = rows.first().map_or(0, |r| r.len());
        let mut out = vec![BigInt::zero(); n];
        for (c, r) in y.iter().zip(rows) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(r) {
                *o += c * x;
            }
        }
        out
    })
}

impl fmt::Display for ZLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{})<", self.den)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ">")
    }
}
