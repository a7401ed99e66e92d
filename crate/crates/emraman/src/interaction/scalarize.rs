use super::InteractionError;
use crate::{c, C64};
use nalgebra::{DMatrix, DVector};

const RANK_TOL: f64 = 1e-8;

/// Scalar form of a pair of rank-one blocks.
#[derive(Debug, Clone)]
pub struct Scalarized {
    pub c12: C64,
    pub c21: C64,
    /// Block-diagonal change of basis `diag(P11, P22)`.
    pub p: DMatrix<C64>,
    /// `|c12 c21 - tr(C12 C21)|`.
    pub residual: f64,
}

/// Unit generator of the range of a rank-one matrix, with its
/// largest-modulus entry real and positive.
fn range_generator(m: &DMatrix<C64>) -> Result<DVector<C64>, InteractionError> {
    let svd = m.clone().svd(true, false);
    let s = &svd.singular_values;
    let (mut i1, mut s1) = (0, -1.0);
    for (i, &v) in s.iter().enumerate() {
        if v > s1 {
            i1 = i;
            s1 = v;
        }
    }
    let s2 = s.iter().enumerate().filter(|&(i, _)| i != i1).map(|(_, &v)| v).fold(0.0, f64::max);
    if s1 <= 0.0 || s2 > RANK_TOL * s1 {
        return Err(InteractionError::NotRankOne { ratio: if s1 > 0.0 { s2 / s1 } else { f64::INFINITY } });
    }
    let u = svd.u.as_ref().expect("left vectors requested").column(i1).into_owned();
    let big = u.iter().cloned().fold(c(0.0), |a, b| if b.norm() > a.norm() { b } else { a });
    Ok(u * (big.conj() / big.norm()))
}

/// Orthonormal basis of `{x : w^* x = 0}`, by Gram-Schmidt on the standard basis.
fn orthogonal_complement(w: &DVector<C64>) -> Vec<DVector<C64>> {
    let n = w.len();
    let wn = w / c(w.norm());
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(n - 1);
    for i in 0..n {
        let mut v = DVector::from_element(n, c(0.0));
        v[i] = c(1.0);
        let a = wn.dotc(&v);
        v -= &wn * a;
        for b in &basis {
            let a = b.dotc(&v);
            v -= b * a;
        }
        let nv = v.norm();
        if nv > 1e-8 {
            basis.push(v / c(nv));
        }
        if basis.len() == n - 1 {
            break;
        }
    }
    basis
}

/// Reduces rank-one `C12` (n1 x n2) and `C21` (n2 x n1) to scalars with
/// `c12 c21 = tr(C12 C21)`. The sign convention is `s12 = +1`.
pub fn scalarize(c12: &DMatrix<C64>, c21: &DMatrix<C64>) -> Result<Scalarized, InteractionError> {
    let (n1, n2) = (c12.nrows(), c12.ncols());
    if c21.nrows() != n2 || c21.ncols() != n1 {
        return Err(InteractionError::Shape);
    }
    let tr = (c12 * c21).trace();
    if tr.norm() <= 1e-14 * (c12.norm() * c21.norm()).max(f64::MIN_POSITIVE) {
        return Err(InteractionError::ZeroTrace);
    }
    let e = range_generator(c12)?;
    let f = range_generator(c21)?;
    let ell = c12.adjoint() * &e; // C12 = e ell^*
    let m = c21.adjoint() * &f; // C21 = f m^*
    let s12 = ell.dotc(&f);
    let s21 = m.dotc(&e);
    let mut p = DMatrix::from_element(n1 + n2, n1 + n2, c(0.0));
    p.view_mut((0, 0), (n1, 1)).copy_from(&e);
    for (col, v) in orthogonal_complement(&m).iter().enumerate() {
        p.view_mut((0, col + 1), (n1, 1)).copy_from(v);
    }
    p.view_mut((n1, n1), (n2, 1)).copy_from(&f);
    for (col, v) in orthogonal_complement(&ell).iter().enumerate() {
        p.view_mut((n1, n1 + col + 1), (n2, 1)).copy_from(v);
    }
    Ok(Scalarized { c12: s12, c21: s21, p, residual: (s12 * s21 - tr).norm() })
}
