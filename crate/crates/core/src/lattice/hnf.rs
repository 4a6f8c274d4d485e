//! Integer row Hermite normal form and left kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Echelon basis kept sorted by pivot column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    (g, s, t)
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        debug_assert_eq!(v.len(), self.ncols);
        loop {
            let Some(p) = leading(&v) else { return };
            match self.rows.binary_search_by_key(&p, |(c, _)| *c) {
                Err(pos) => {
                    if v[p].is_negative() {
                        for x in v.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.rows.insert(pos, (p, v));
                    self.reduce_from(pos);
                    return;
                }
                Ok(pos) => {
                    let row = &mut self.rows[pos].1;
                    let a = row[p].clone();
                    let b = v[p].clone();
                    if b.is_multiple_of(&a) {
                        let q = &b / &a;
                        for (x, r) in v.iter_mut().zip(row.iter()) {
                            *x -= &q * r;
                        }
                        continue;
                    }
                    let (g, s, t) = ext_gcd(&a, &b);
                    let ag = &a / &g;
                    let bg = &b / &g;
                    for (x, r) in v.iter_mut().zip(row.iter_mut()) {
                        let nr = &s * &*r + &t * &*x;
                        let nv = &ag * &*x - &bg * &*r;
                        *r = nr;
                        *x = nv;
                    }
                    self.reduce_from(pos);
                }
            }
        }
    }

    /// Reduces entries above pivots of rows `pos..` into `[0, pivot)`.
    fn reduce_from(&mut self, pos: usize) {
        for i in pos..self.rows.len() {
            let (p, piv) = {
                let (p, r) = &self.rows[i];
                (*p, r.clone())
            };
            for j in 0..i {
                let r = &mut self.rows[j].1;
                let q = r[p].div_floor(&piv[p]);
                if !q.is_zero() {
                    for (x, y) in r.iter_mut().zip(piv.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let q = v[*p].div_floor(&r[*p]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(r.iter()) {
                    *x -= &q * y;
                }
            }
        }
        v
    }
}

pub fn hnf(rows: impl IntoIterator<Item = Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_rows()
}

/// ℤ-basis of `{y ∈ ℤ^k : y·M = 0}` for the k×ncols matrix `m`.
pub fn left_kernel(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let k = m.len();
    let mut e = Echelon::new(ncols + k);
    for (i, r) in m.iter().enumerate() {
        let mut aug = r.clone();
        aug.extend((0..k).map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() }));
        e.insert(aug);
    }
    e.rows
        .into_iter()
        .filter(|(p, _)| *p >= ncols)
        .map(|(_, r)| r[ncols..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_scalars() {
        assert_eq!(hnf([v(&[4]), v(&[6])], 1), vec![v(&[2])]);
    }

    #[test]
    fn canonical_under_presentation() {
        let a = hnf([v(&[2, 0]), v(&[1, 1])], 2);
        let b = hnf([v(&[1, 1]), v(&[3, 1]), v(&[-1, 1]), v(&[0, 2])], 2);
        assert_eq!(a, b);
        assert_eq!(a, vec![v(&[1, 1]), v(&[0, 2])]);
    }

    #[test]
    fn kernel() {
        let m = vec![v(&[1, 2]), v(&[2, 4]), v(&[0, 1])];
        let k = left_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let y = &k[0];
        let combo = y.iter().zip(&m).fold(vec![BigInt::zero(); 2], |acc, (yi, row)| {
            acc.iter().zip(row).map(|(a, r)| a + yi * r).collect()
        });
        assert!(combo.iter().all(|s| s.is_zero()));
    }
}
