//! Dense exact linear algebra over a finite field.

mod bits;
mod companion;
mod gram;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::galois::{Elem, Field};

pub use companion::{charpoly, companion, skew_rank};
pub use gram::{gram_normal_form, GramBlock, GramNormalForm};

/// Row operations are spread over threads once a matrix has this many entries.
const PAR_THRESHOLD: usize = 1 << 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("companion matrix needs degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("matrix is not alternate")]
    NotAlternate,
    #[error("matrix is singular")]
    Singular,
    #[error("field mismatch")]
    FieldMismatch,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`]: `transform * input = reduced`.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Rows of canonical element indices; convenient for literals in tests.
    pub fn from_indices(field: &Field, rows: &[&[u32]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| {
                assert!(v < field.order(), "element index out of range");
                Elem(v)
            }));
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        // chunks_exact panics on a zero chunk size
        let cols = self.cols.max(1);
        self.data.chunks_exact(cols).take(if self.cols == 0 { 0 } else { self.rows })
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    fn check_field(&self, other: &Matrix) {
        assert!(self.field == other.field, "matrices over different fields");
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "add: shape mismatch");
        let mut out = self.clone();
        out.field.clone().axpy(&mut out.data, &other.data, Elem::ONE);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "sub: shape mismatch");
        let mut out = self.clone();
        let minus_one = self.field.neg(Elem::ONE);
        out.field.clone().axpy(&mut out.data, &other.data, minus_one);
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "mul: inner dimensions differ");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        let kernel = |(r, dst): (usize, &mut [Elem])| {
            for (k, &a) in self.row(r).iter().enumerate() {
                if !a.is_zero() {
                    f.axpy(dst, other.row(k), a);
                }
            }
        };
        if self.rows * self.cols * other.cols >= PAR_THRESHOLD * 8 {
            out.data.par_chunks_mut(other.cols).enumerate().for_each(kernel);
        } else {
            out.data.chunks_mut(other.cols).enumerate().for_each(kernel);
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            self.field.axpy(&mut out, self.row(r), a);
        }
        out
    }

    /// `self * v^T` as a vector.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Stacks `parts` vertically; all parts must have the same column count.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            first.check_field(p);
            assert_eq!(p.cols, cols, "vstack: column counts differ");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix { field: first.field.clone(), rows, cols, data }
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                first.check_field(p);
                assert_eq!(p.rows, rows, "hstack: row counts differ");
                data.extend_from_slice(p.row(r));
            }
        }
        Matrix { field: first.field.clone(), rows, cols, data }
    }

    /// Assembles a block matrix from rows of blocks.
    pub fn block(rows: &[&[&Matrix]]) -> Matrix {
        let strips: Vec<Matrix> = rows.iter().map(|r| Matrix::hstack(r)).collect();
        let refs: Vec<&Matrix> = strips.iter().collect();
        Matrix::vstack(&refs)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Gaussian elimination in place. With `reduce` the result is in reduced
    /// row echelon form, otherwise only echelon form. Row operations are
    /// mirrored on `aux` when given. Returns the pivot columns.
    fn eliminate(&mut self, reduce: bool, mut aux: Option<&mut Matrix>) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for pc in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self.get(r, pc).is_zero()) else {
                continue;
            };
            self.swap_rows(prow, found);
            if let Some(a) = aux.as_deref_mut() {
                a.swap_rows(prow, found);
            }
            let inv = f.inv(self.get(prow, pc)).expect("pivot is nonzero");
            f.scale_slice(&mut self.row_mut(prow)[pc..], inv);
            if let Some(a) = aux.as_deref_mut() {
                f.scale_slice(a.row_mut(prow), inv);
            }
            let pivot_row: Vec<Elem> = self.row(prow)[pc..].to_vec();
            let pivot_aux: Option<Vec<Elem>> = aux.as_deref().map(|a| a.row(prow).to_vec());
            let start = if reduce { 0 } else { prow + 1 };
            let acols = aux.as_deref().map_or(0, |a| a.cols);

            let op = |r: usize, row: &mut [Elem], arow: Option<&mut [Elem]>| {
                if r == prow {
                    return;
                }
                let c = row[pc];
                if c.is_zero() {
                    return;
                }
                let neg = f.neg(c);
                f.axpy(&mut row[pc..], &pivot_row, neg);
                if let (Some(arow), Some(pa)) = (arow, pivot_aux.as_ref()) {
                    f.axpy(arow, pa, neg);
                }
            };

            let body = &mut self.data[start * cols..];
            let parallel = body.len() >= PAR_THRESHOLD;
            match aux.as_deref_mut() {
                Some(a) if acols > 0 => {
                    let abody = &mut a.data[start * acols..];
                    if parallel {
                        body.par_chunks_mut(cols)
                            .zip(abody.par_chunks_mut(acols))
                            .enumerate()
                            .for_each(|(i, (row, arow))| op(start + i, row, Some(arow)));
                    } else {
                        body.chunks_mut(cols)
                            .zip(abody.chunks_mut(acols))
                            .enumerate()
                            .for_each(|(i, (row, arow))| op(start + i, row, Some(arow)));
                    }
                }
                _ => {
                    if parallel {
                        body.par_chunks_mut(cols).enumerate().for_each(|(i, row)| op(start + i, row, None));
                    } else {
                        body.chunks_mut(cols).enumerate().for_each(|(i, row)| op(start + i, row, None));
                    }
                }
            }
            pivots.push(pc);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.field.order() == 2 {
            return bits::rank_gf2(self);
        }
        self.rank_generic()
    }

    /// Rank without the packed GF(2) path.
    pub fn rank_generic(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = self.clone();
        m.eliminate(false, None).len()
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(&self.field, self.rows);
        let pivots = reduced.eliminate(true, Some(&mut transform));
        Rref { reduced, pivots, transform }
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn row_basis(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.eliminate(true, None);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        m
    }

    /// Rows spanning `{x : self * x^T = 0}`, one per free column.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.eliminate(true, None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(m.get(i, fc)));
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let r = self.rref();
        (r.pivots.len() == self.rows).then_some(r.transform)
    }

    pub fn determinant(&self) -> Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Elem::ZERO;
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            let prow: Vec<Elem> = m.row(c).to_vec();
            for r in c + 1..n {
                let x = m.get(r, c);
                if !x.is_zero() {
                    let k = f.neg(f.mul(x, inv));
                    f.axpy(m.row_mut(r), &prow, k);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(rng: &mut impl Rng, f: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(f, rows, cols, |_, _| Elem(rng.gen_range(0..f.order())))
    }

    fn gf(p: u64, m: u32) -> Field {
        Field::gf(p, m).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(&gf(2, 1), 3, 5).rank(), 0);
        assert_eq!(Matrix::identity(&gf(3, 1), 4).rank(), 4);
        let f2 = gf(2, 1);
        let m = Matrix::from_indices(&f2, &[&[0, 1], &[1, 1]]);
        assert_eq!(m.sub(&m.transpose()).rank(), 0);
    }

    #[test]
    fn rref_examples() {
        let f3 = gf(3, 1);
        let id = Matrix::identity(&f3, 4);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        assert_eq!(r.transform, id);

        let f2 = gf(2, 1);
        let ones = Matrix::from_indices(&f2, &[&[1, 1], &[1, 1]]);
        let r = ones.rref();
        assert_eq!(r.pivots.len(), 1);
        assert!(!r.reduced.row(0).iter().all(|e| e.is_zero()));
        assert!(r.reduced.row(1).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn rref_properties_gf4() {
        let f = gf(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, &f, 6, 10);
            let r = m.rref();
            assert_eq!(r.transform.mul(&m), r.reduced);
            assert!(r.transform.inverse().is_some());
            assert_eq!(r.pivots.len(), m.rank());
            for (i, &pc) in r.pivots.iter().enumerate() {
                assert_eq!(r.reduced.get(i, pc), Elem::ONE);
                for k in 0..6 {
                    if k != i {
                        assert!(r.reduced.get(k, pc).is_zero());
                    }
                }
                assert!(r.reduced.row(i)[..pc].iter().all(|e| e.is_zero()));
            }
            // idempotent
            assert_eq!(r.reduced.rref().reduced, r.reduced);
        }
    }

    #[test]
    fn kernel_examples() {
        let f2 = gf(2, 1);
        assert_eq!(Matrix::identity(&f2, 5).kernel().rows(), 0);
        let k = Matrix::zeros(&f2, 2, 5).kernel();
        assert_eq!(k.rows(), 5);
        assert_eq!(k.rank(), 5);
        let ones = Matrix::from_indices(&f2, &[&[1, 1, 1, 1]]);
        let k = ones.kernel();
        assert_eq!(k.rows(), 3);
        for row in k.row_iter() {
            assert_eq!(row.iter().filter(|e| !e.is_zero()).count() % 2, 0);
        }
    }

    #[test]
    fn rank_nullity_and_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [gf(2, 1), gf(3, 1), gf(2, 2), gf(3, 2), gf(5, 1), gf(2, 3)] {
            for _ in 0..10 {
                let rows = rng.gen_range(1..8);
                let cols = rng.gen_range(1..12);
                let m = random_matrix(&mut rng, &f, rows, cols);
                let rank = m.rank();
                assert_eq!(rank, m.rank_generic());
                assert_eq!(rank, m.transpose().rank());
                let k = m.kernel();
                assert_eq!(rank + k.rows(), cols);
                assert!(m.mul(&k.transpose()).is_zero());
                assert_eq!(k.rank(), k.rows());
            }
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = gf(3, 2);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, &f, 5, 5);
            match m.inverse() {
                Some(inv) => {
                    assert_eq!(inv.mul(&m), Matrix::identity(&f, 5));
                    assert!(!m.determinant().is_zero());
                }
                None => assert!(m.determinant().is_zero()),
            }
        }
    }

    #[test]
    fn large_parallel_elimination_matches_serial_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = gf(3, 2);
        let a = random_matrix(&mut rng, &f, 120, 40);
        let b = random_matrix(&mut rng, &f, 40, 300);
        let prod = a.mul(&b);
        assert_eq!(prod.rank(), 40.min(a.rank()).min(b.rank()));
        let r = prod.rref();
        assert_eq!(r.transform.mul(&prod), r.reduced);
    }
}
