//! ℤ-lattices in ℚ-coordinate spaces and fractional-ideal arithmetic in K.

mod ambient;
pub mod hnf;
mod ideal;
mod subspace;
mod zlattice;

pub use ambient::Ambient;
pub use ideal::{FractionalIdeal, IdealError};
pub use subspace::{rational_left_kernel, QSubspace};
pub use zlattice::ZLattice;

use num_rational::BigRational;
use num_traits::Zero;

pub type QVec = Vec<BigRational>;

/// Row vector times matrix (`m` has one row per coordinate of `v`).
pub fn vec_mat(v: &[BigRational], m: &[QVec], out_dim: usize) -> QVec {
    let mut out = vec![BigRational::zero(); out_dim];
    for (c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// For `m` (r×c, rank r) returns `R` (c×r) with `m·R = I`, so that
/// `y ↦ y·R` inverts `x ↦ x·m` on the row space.
pub fn left_inverse(m: &[QVec], c: usize) -> Option<Vec<QVec>> {
    use num_traits::One;
    let r = m.len();
    // choose r independent columns
    let mut chosen: Vec<usize> = Vec::new();
    let mut sp = QSubspace::zero(r);
    for j in 0..c {
        let col: QVec = m.iter().map(|row| row[j].clone()).collect();
        if !sp.contains(&col) {
            sp = sp.sum(&QSubspace::from_vecs(r, [col]));
            chosen.push(j);
            if chosen.len() == r {
                break;
            }
        }
    }
    if chosen.len() < r {
        return None;
    }
    // invert the square submatrix m[:, chosen] by Gauss-Jordan on [A | I]
    let mut a: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: QVec = chosen.iter().map(|&j| row[j].clone()).collect();
            v.extend((0..r).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            v
        })
        .collect();
    for col in 0..r {
        let piv = (col..r).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pr = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    // row chosen[k] of R is row k of the inverse
    let mut out = vec![vec![BigRational::zero(); r]; c];
    for (k, &j) in chosen.iter().enumerate() {
        out[j] = a[k][r..].to_vec();
    }
    Some(out)
}
