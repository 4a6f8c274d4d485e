//! ℚ-subspaces of ℚ^dim in reduced row echelon form.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QVec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSubspace {
    dim: usize,
    rows: Vec<QVec>,
}

fn pivot(v: &[BigRational]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl QSubspace {
    pub fn zero(dim: usize) -> Self {
        QSubspace { dim, rows: Vec::new() }
    }

    pub fn whole(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        QSubspace { dim, rows }
    }

    pub fn from_vecs(dim: usize, vecs: impl IntoIterator<Item = QVec>) -> Self {
        let mut s = QSubspace::zero(dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    fn residue(&self, v: &[BigRational]) -> QVec {
        let mut v = v.to_vec();
        for r in &self.rows {
            let p = pivot(r).expect("rref rows are nonzero");
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: QVec) {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = self.residue(&v);
        let Some(p) = pivot(&v) else { return };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    *x -= &c * y;
                }
            }
        }
        let pos = self.rows.iter().position(|r| pivot(r).unwrap() > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, v);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn basis(&self) -> &[QVec] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.residue(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &QSubspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &QSubspace) -> QSubspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Columns n with `x·n = 0` for all x in the subspace, returned as a
    /// dim × c matrix in row form.
    pub fn equations(&self) -> Vec<QVec> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| pivot(r).unwrap()).collect();
        let free: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();
        let mut cols: Vec<QVec> = Vec::new();
        for &f in &free {
            let mut n = vec![BigRational::zero(); self.dim];
            n[f] = BigRational::one();
            for (r, &p) in self.rows.iter().zip(&pivots) {
                n[p] = -r[f].clone();
            }
            cols.push(n);
        }
        // transpose to dim × c
        (0..self.dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn intersect(&self, other: &QSubspace) -> QSubspace {
        let eq = other.equations();
        if eq.first().is_none_or(|r| r.is_empty()) {
            return self.clone();
        }
        // solve y·(rows·eq) = 0
        let imgs: Vec<QVec> = self
            .rows
            .iter()
            .map(|r| (0..eq[0].len()).map(|c| (0..self.dim).map(|i| &r[i] * &eq[i][c]).sum()).collect())
            .collect();
        let ker = rational_left_kernel(&imgs, eq[0].len());
        QSubspace::from_vecs(
            self.dim,
            ker.into_iter().map(|y| {
                (0..self.dim).map(|j| y.iter().zip(&self.rows).map(|(c, r)| c * &r[j]).sum()).collect()
            }),
        )
    }

    pub fn image(&self, m: &[QVec], out_dim: usize) -> QSubspace {
        QSubspace::from_vecs(out_dim, self.rows.iter().map(|r| super::vec_mat(r, m, out_dim)))
    }
}

/// ℚ-basis of `{y : y·M = 0}`.
pub fn rational_left_kernel(m: &[QVec], ncols: usize) -> Vec<QVec> {
    let k = m.len();
    let aug = m.iter().enumerate().map(|(i, r)| {
        let mut a = r.clone();
        a.extend((0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
        a
    });
    let s = QSubspace::from_vecs(ncols + k, aug);
    s.rows.into_iter().filter(|r| pivot(r).unwrap() >= ncols).map(|r| r[ncols..].to_vec()).collect()
}
