//! Companion matrices, characteristic polynomials and alternate ranks.

use super::{Matrix, MatrixError};
use crate::galois::{Elem, Poly};

/// `L_j(h)`: ones on the superdiagonal, last row `(-a_0, ..., -a_{j-1})`.
pub fn companion(h: &Poly) -> Result<Matrix, MatrixError> {
    let f = h.field();
    let j = h.degree().unwrap_or(0);
    if !h.is_monic() {
        return Err(MatrixError::NotMonic);
    }
    if j < 2 {
        return Err(MatrixError::DegreeTooSmall(j));
    }
    let mut m = Matrix::zeros(f, j, j);
    for i in 0..j - 1 {
        m.set(i, i + 1, Elem::ONE);
    }
    for c in 0..j {
        m.set(j - 1, c, f.neg(h.coeff(c)));
    }
    Ok(m)
}

/// Characteristic polynomial `det(X I - M)` via reduction to upper
/// Hessenberg form and the usual three-term style recurrence.
pub fn charpoly(m: &Matrix) -> Poly {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let f = m.field().clone();
    let n = m.rows();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h.get(r, c).is_zero()) else {
            continue;
        };
        if p != c + 1 {
            h.swap_rows(p, c + 1);
            for r in 0..n {
                let (a, b) = (h.get(r, p), h.get(r, c + 1));
                h.set(r, p, b);
                h.set(r, c + 1, a);
            }
        }
        let pinv = f.inv(h.get(c + 1, c)).expect("nonzero pivot");
        for i in c + 2..n {
            let u = f.mul(h.get(i, c), pinv);
            if u.is_zero() {
                continue;
            }
            // row_i -= u row_{c+1}; then col_{c+1} += u col_i keeps similarity
            let src: Vec<Elem> = h.row(c + 1).to_vec();
            f.axpy(h.row_mut(i), &src, f.neg(u));
            for r in 0..n {
                let v = f.add(h.get(r, c + 1), f.mul(u, h.get(r, i)));
                h.set(r, c + 1, v);
            }
        }
    }
    // p[k] = charpoly of the leading k x k block.
    let x = Poly::monomial(&f, Elem::ONE, 1);
    let mut p: Vec<Poly> = vec![Poly::one(&f)];
    for k in 0..n {
        let lin = x.sub(&Poly::new(&f, vec![h.get(k, k)]));
        let mut next = lin.mul(&p[k]);
        let mut prod = Elem::ONE;
        for i in (0..k).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            let coef = f.mul(prod, h.get(i, k));
            if !coef.is_zero() {
                next = next.sub(&p[i].scale(coef));
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

/// `det(X I - M)` by cofactor expansion along the first row. Exponential,
/// meant for cross-checking small matrices.
#[cfg(test)]
pub(crate) fn charpoly_by_minors(m: &Matrix) -> Poly {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let f = m.field();
    let n = m.rows();
    let x = Poly::monomial(f, Elem::ONE, 1);
    let entry = |r: usize, c: usize| {
        let e = Poly::new(f, vec![f.neg(m.get(r, c))]);
        if r == c {
            x.add(&e)
        } else {
            e
        }
    };
    fn det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Poly, one: &Poly) -> Poly {
        if rows.is_empty() {
            return one.clone();
        }
        let r = rows[0];
        let mut acc = one.sub(one);
        for (k, &c) in cols.iter().enumerate() {
            let e = entry(r, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
            let term = e.mul(&det(&rows[1..], &sub_cols, entry, one));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det(&idx, &idx, &entry, &Poly::one(f))
}

/// Rank of an alternate matrix (zero diagonal, `M = -M^T`); always even.
pub fn skew_rank(m: &Matrix) -> Result<usize, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let f = m.field();
    for i in 0..m.rows() {
        if !m.get(i, i).is_zero() {
            return Err(MatrixError::NotAlternate);
        }
        for j in 0..i {
            if m.get(i, j) != f.neg(m.get(j, i)) {
                return Err(MatrixError::NotAlternate);
            }
        }
    }
    Ok(m.rank())
}
