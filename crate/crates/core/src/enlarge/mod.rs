//! Symplectic codes, CSS entanglement-assisted parameters and the enlarged
//! code `D_A`.

mod amatrix;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{min_outside, relative_min, CodeError, Distance, LinearCode, WeightError, WeightKind};
use crate::galois::{Elem, Field};
use crate::matgf::{gram_normal_form, Matrix, MatrixError};

pub use amatrix::{
    a0_polynomial, has_eigenvalue_in_field, make_a_case1, make_a_case2, target_skew_rank, A0Style, CaseTwoMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnlargeError {
    #[error("vector length {0} is odd")]
    OddLength(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix has an eigenvalue in the base field")]
    EigenvalueInField,
    #[error("orthogonality hypothesis fails: {0}")]
    OrthogonalityViolated(String),
    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("eta-style A_0 unavailable: {0}")]
    EtaUnavailable(String),
    #[error("style unavailable: {0}")]
    StyleUnavailable(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `[[n, k, d; c]]_q`. `d_lower` is a proven bound; `d_exact` is filled in
/// when the distance was enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d_lower: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_exact: Option<u64>,
    pub c: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaSource {
    /// exact minimum distance by enumeration
    Oracle,
    /// a proven lower bound supplied by the caller
    Bound,
    /// the dual is the whole space
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub value: u64,
    pub source: DeltaSource,
}

impl Delta {
    pub fn bound(value: u64) -> Delta {
        Delta { value, source: DeltaSource::Bound }
    }
}

/// `min{delta_1, ceil((q + 1) delta_2 / q)}`.
pub fn enlarged_distance_bound(q: u64, delta1: u64, delta2: u64) -> u64 {
    delta1.min(((q + 1) * delta2).div_ceil(q))
}

pub fn symplectic_weight(v: &[Elem]) -> Result<usize, EnlargeError> {
    if v.len() % 2 == 1 {
        return Err(EnlargeError::OddLength(v.len()));
    }
    let n = v.len() / 2;
    Ok((0..n).filter(|&j| !v[j].is_zero() || !v[n + j].is_zero()).count())
}

/// `(x|y) . (z|t) = x.t - z.y`.
pub fn symplectic_product(field: &Field, u: &[Elem], v: &[Elem]) -> Result<Elem, EnlargeError> {
    if u.len() != v.len() {
        return Err(EnlargeError::LengthMismatch(u.len(), v.len()));
    }
    if u.len() % 2 == 1 {
        return Err(EnlargeError::OddLength(u.len()));
    }
    let n = u.len() / 2;
    Ok(field.sub(field.dot(&u[..n], &v[n..]), field.dot(&v[..n], &u[n..])))
}

fn halves(d: &Matrix) -> Result<(Matrix, Matrix), EnlargeError> {
    if d.cols() % 2 == 1 {
        return Err(EnlargeError::OddLength(d.cols()));
    }
    let n = d.cols() / 2;
    Ok((d.submatrix(0..d.rows(), 0..n), d.submatrix(0..d.rows(), n..2 * n)))
}

/// `H_X H_Z^T - H_Z H_X^T` for `D = (H_X | H_Z)`.
pub fn symplectic_gram(d: &Matrix) -> Result<Matrix, EnlargeError> {
    let (x, z) = halves(d)?;
    Ok(x.mul(&z.transpose()).sub(&z.mul(&x.transpose())))
}

/// Rows spanning `{v : v . d = 0 for every row d}`.
pub fn symplectic_dual(d: &Matrix) -> Result<Matrix, EnlargeError> {
    if d.rank() != d.rows() {
        return Err(EnlargeError::DependentRows);
    }
    let (x, z) = halves(d)?;
    // (u|w) . (x|z) = u.z - x.w, so the checks are the rows of (Z | -X)
    Ok(Matrix::hstack(&[&z, &x.neg()]).kernel())
}

fn same_space(a: &LinearCode, b: &LinearCode) -> Result<(), EnlargeError> {
    if a.field() != b.field() {
        return Err(EnlargeError::FieldMismatch);
    }
    if a.len() != b.len() {
        return Err(EnlargeError::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Parameters of the CSS code built from `C1 x C2`. `bound` is the caller's
/// proven distance bound; the exact distance is added when both duals fit
/// the enumeration budget.
pub fn css_params(c1: &LinearCode, c2: &LinearCode, bound: u64, budget: u64) -> Result<EaqeccParams, EnlargeError> {
    same_space(c1, c2)?;
    let n = c1.len();
    let (h1, h2) = (c1.generator(), c2.generator());
    let c = if c1.dim() == 0 || c2.dim() == 0 { 0 } else { h1.mul(&h2.transpose()).rank() };
    let d2 = c2.dual();
    let by_dim = c1.dim() - c1.intersect(&d2).dim();
    if c != by_dim {
        return Err(EnlargeError::Inconsistent(format!("rank(H1 H2^T) = {c} but dim formula gives {by_dim}")));
    }
    let k = n + c - c1.dim() - c2.dim();
    let d1 = c1.dual();
    let d_exact = match (
        relative_min(&d1, &c2.intersect(&d1), WeightKind::Hamming, budget),
        relative_min(&d2, &c1.intersect(&d2), WeightKind::Hamming, budget),
    ) {
        (Ok(a), Ok(b)) => match (a, b) {
            (Distance::Exact(x), Distance::Exact(y)) => Some(x.min(y) as u64),
            (Distance::Exact(x), Distance::Infinite) | (Distance::Infinite, Distance::Exact(x)) => Some(x as u64),
            (Distance::Infinite, Distance::Infinite) => None,
        },
        _ => None,
    };
    Ok(EaqeccParams { q: c1.field().order() as u64, n, k, d_lower: bound.max(1), d_exact, c })
}

/// Parameters of the code with generator `(H_X | H_Z)`.
pub fn symplectic_params(hx: &Matrix, hz: &Matrix, budget: u64) -> Result<EaqeccParams, EnlargeError> {
    if hx.shape() != hz.shape() {
        return Err(EnlargeError::ShapeMismatch(format!("{:?} vs {:?}", hx.shape(), hz.shape())));
    }
    let d = Matrix::hstack(&[hx, hz]);
    if d.rank() != d.rows() {
        return Err(EnlargeError::DependentRows);
    }
    let n = hx.cols();
    let two_c = symplectic_gram(&d)?.rank();
    let (c, inter) = symplectic_entanglement_by_dimension(&d)?;
    if 2 * c != two_c {
        return Err(EnlargeError::Inconsistent(format!("2c = {two_c} by rank, {} by dimensions", 2 * c)));
    }
    let dual = LinearCode::from_span(&symplectic_dual(&d)?);
    let d_exact = match relative_min(&dual, &inter, WeightKind::Symplectic, budget) {
        Ok(Distance::Exact(x)) => Some(x as u64),
        _ => None,
    };
    Ok(EaqeccParams { q: hx.field().order() as u64, n, k: n - d.rows() + c, d_lower: d_exact.unwrap_or(1), d_exact, c })
}

/// `c = dim D - dim(D ∩ D^perp_s)` (halved rank of the symplectic Gram
/// matrix, computed from subspaces instead), together with the intersection.
pub fn symplectic_entanglement_by_dimension(d: &Matrix) -> Result<(usize, LinearCode), EnlargeError> {
    let code = LinearCode::from_span(d);
    let dual = LinearCode::from_span(&symplectic_dual(d)?);
    let inter = code.intersect(&dual);
    let diff = code.dim() - inter.dim();
    if diff % 2 == 1 {
        return Err(EnlargeError::Inconsistent(format!("dim D - dim(D ∩ D^perp) = {diff} is odd")));
    }
    Ok((diff / 2, inter))
}

/// Exact `d_s(D^perp_s \ (D ∩ D^perp_s))` by enumeration.
pub fn symplectic_distance(d: &Matrix, budget: u64) -> Result<Distance, EnlargeError> {
    let (_, inter) = symplectic_entanglement_by_dimension(d)?;
    let dual = LinearCode::from_span(&symplectic_dual(d)?);
    Ok(relative_min(&dual, &inter, WeightKind::Symplectic, budget)?)
}

/// `C = <B_r> ⊕ <B_t>` with `t >= 2`.
#[derive(Debug, Clone)]
pub struct SplitCode {
    br: Matrix,
    bt: Matrix,
}

impl SplitCode {
    pub fn new(br: Matrix, bt: Matrix) -> Result<SplitCode, EnlargeError> {
        if br.field() != bt.field() {
            return Err(EnlargeError::FieldMismatch);
        }
        if br.cols() != bt.cols() {
            return Err(EnlargeError::LengthMismatch(br.cols(), bt.cols()));
        }
        if bt.rows() < 2 {
            return Err(EnlargeError::BadDims(format!("t = {} must be at least 2", bt.rows())));
        }
        if Matrix::vstack(&[&br, &bt]).rank() != br.rows() + bt.rows() {
            return Err(EnlargeError::DependentRows);
        }
        Ok(SplitCode { br, bt })
    }

    pub fn field(&self) -> &Field {
        self.bt.field()
    }

    pub fn n(&self) -> usize {
        self.bt.cols()
    }

    pub fn r(&self) -> usize {
        self.br.rows()
    }

    pub fn t(&self) -> usize {
        self.bt.rows()
    }

    pub fn br(&self) -> &Matrix {
        &self.br
    }

    pub fn bt(&self) -> &Matrix {
        &self.bt
    }

    pub fn generator(&self) -> Matrix {
        Matrix::vstack(&[&self.br, &self.bt])
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_span(&self.generator())
    }

    /// Entanglement of the unenlarged CSS code from `C x C`.
    pub fn c(&self) -> usize {
        let g = self.generator();
        g.mul(&g.transpose()).rank()
    }

    /// `(delta_1, delta_2)` = distances of `C^perp` and `<B_r>^perp`, by
    /// enumeration within `budget`.
    pub fn oracle_deltas(&self, budget: u64) -> Result<(Delta, Delta), EnlargeError> {
        let d1 = hamming_distance_of_dual(&self.code(), budget)?;
        let d2 = if self.r() == 0 {
            Delta { value: 1, source: DeltaSource::Trivial }
        } else {
            hamming_distance_of_dual(&LinearCode::from_span(&self.br), budget)?
        };
        Ok((d1, d2))
    }
}

fn hamming_distance_of_dual(c: &LinearCode, budget: u64) -> Result<Delta, EnlargeError> {
    let dual = c.dual();
    if dual.dim() == 0 {
        return Err(EnlargeError::BadDims("dual code is zero".into()));
    }
    let rows: Vec<Vec<Elem>> = dual.generator().row_iter().map(|r| r.to_vec()).collect();
    let d = min_outside(dual.field(), &rows, 0, WeightKind::Hamming, budget)?.expect("nonzero dual");
    Ok(Delta { value: d as u64, source: DeltaSource::Oracle })
}

/// `D_A` together with its parameters.
#[derive(Debug, Clone)]
pub struct EnlargedCode {
    pub source: SplitCode,
    pub a: Matrix,
    pub da: Matrix,
    /// rank of the entanglement Gram matrix, which is `2 c'`
    pub gram_rank: usize,
    pub delta1: Delta,
    pub delta2: Delta,
    pub params: EaqeccParams,
}

/// The `(t + 2r)`-square alternate matrix whose rank is `2c'`.
pub fn entanglement_gram(src: &SplitCode, a: &Matrix) -> Matrix {
    let (br, bt) = (&src.br, &src.bt);
    let f = src.field();
    let (r, t) = (src.r(), src.t());
    let btbt = bt.mul(&bt.transpose());
    let btbr = bt.mul(&br.transpose());
    let brbt = br.mul(&bt.transpose());
    let brbr = br.mul(&br.transpose());
    let at = a.transpose();
    let b11 = btbt.mul(&at).sub(&a.mul(&btbt));
    let b12 = a.mul(&btbr).neg();
    let b21 = brbt.mul(&at);
    let b31 = brbt.neg();
    let b32 = brbr.neg();
    let zero = Matrix::zeros(f, r, r);
    Matrix::block(&[&[&b11, &b12, &btbr], &[&b21, &zero, &brbr], &[&b31, &b32, &zero]]).tap_shape(t + 2 * r)
}

trait TapShape {
    fn tap_shape(self, n: usize) -> Self;
}

impl TapShape for Matrix {
    fn tap_shape(self, n: usize) -> Matrix {
        debug_assert_eq!(self.shape(), (n, n));
        self
    }
}

/// Generator `[[B_t, A B_t], [B_r, 0], [0, B_r]]`.
pub fn da_matrix(src: &SplitCode, a: &Matrix) -> Matrix {
    let f = src.field();
    let n = src.n();
    let zero = Matrix::zeros(f, src.r(), n);
    let abt = a.mul(&src.bt);
    Matrix::block(&[&[&src.bt, &abt], &[&src.br, &zero], &[&zero, &src.br]])
}

pub fn build_da(src: &SplitCode, a: &Matrix, delta1: Delta, delta2: Delta) -> Result<EnlargedCode, EnlargeError> {
    let t = src.t();
    if a.shape() != (t, t) {
        return Err(EnlargeError::ShapeMismatch(format!("A is {:?}, t = {t}", a.shape())));
    }
    if a.field() != src.field() {
        return Err(EnlargeError::FieldMismatch);
    }
    if a.inverse().is_none() {
        return Err(EnlargeError::NotInvertible);
    }
    if has_eigenvalue_in_field(a) {
        return Err(EnlargeError::EigenvalueInField);
    }
    let da = da_matrix(src, a);
    let rank = da.rank();
    if rank != t + 2 * src.r() {
        return Err(EnlargeError::Inconsistent(format!("rank(D_A) = {rank}, expected {}", t + 2 * src.r())));
    }
    let gram = entanglement_gram(src, a);
    let gram_rank = gram.rank();
    if gram_rank % 2 == 1 {
        return Err(EnlargeError::Inconsistent(format!("entanglement Gram rank {gram_rank} is odd")));
    }
    let c_prime = gram_rank / 2;
    let q = src.field().order() as u64;
    let n = src.n();
    let params = EaqeccParams {
        q,
        n,
        k: n + c_prime - 2 * src.r() - t,
        d_lower: enlarged_distance_bound(q, delta1.value, delta2.value),
        d_exact: None,
        c: c_prime,
    };
    Ok(EnlargedCode { source: src.clone(), a: a.clone(), da, gram_rank, delta1, delta2, params })
}

impl EnlargedCode {
    pub fn c_prime(&self) -> usize {
        self.gram_rank / 2
    }

    /// `c'` from `dim D_A - dim(D_A ∩ D_A^perp_s)`.
    pub fn c_prime_by_dimension(&self) -> Result<usize, EnlargeError> {
        let code = LinearCode::from_span(&self.da);
        let dual = LinearCode::from_span(&symplectic_dual(&self.da)?);
        let diff = code.dim() - code.intersection_dim(&dual);
        if diff % 2 == 1 {
            return Err(EnlargeError::Inconsistent(format!("dim D - dim(D ∩ D^perp) = {diff} is odd")));
        }
        Ok(diff / 2)
    }

    /// Enumerates the symplectic distance and records it in `params`.
    pub fn with_exact_distance(mut self, budget: u64) -> Result<EnlargedCode, EnlargeError> {
        if let Distance::Exact(d) = symplectic_distance(&self.da, budget)? {
            self.params.d_exact = Some(d as u64);
        }
        Ok(self)
    }
}

/// Enlargement when `<B_t> ⊆ C^perp`; keeps `c' = c`.
pub fn enlarge_case1(src: &SplitCode, delta1: Delta, delta2: Delta) -> Result<EnlargedCode, EnlargeError> {
    if !src.bt.mul(&src.generator().transpose()).is_zero() {
        return Err(EnlargeError::OrthogonalityViolated("B_t (B_r; B_t)^T != 0".into()));
    }
    let a = make_a_case1(src.t(), src.field())?;
    let e = build_da(src, &a, delta1, delta2)?;
    let c = src.br.mul(&src.br.transpose()).rank();
    if c != src.c() || e.c_prime() != c {
        return Err(EnlargeError::Inconsistent(format!(
            "c' = {} but rank(B_r B_r^T) = {c}, c = {}",
            e.c_prime(),
            src.c()
        )));
    }
    Ok(e)
}

/// Result of [`enlarge_case2`], with the data the entanglement formulas use.
#[derive(Debug, Clone)]
pub struct CaseTwoCode {
    pub code: EnlargedCode,
    pub tl: usize,
    pub a0: Matrix,
    pub a0_fallback: bool,
    pub c: usize,
    pub a0_skew_rank: usize,
}

/// Enlargement when `<B_r> ⊥ <B_t>`. The first `tl` rows of `B_t` span
/// `<B_{t_l}>` with invertible Gram matrix; the remaining rows are orthogonal
/// to all of `<B_t>`.
pub fn enlarge_case2(
    src: &SplitCode,
    tl: usize,
    style: A0Style,
    delta1: Delta,
    delta2: Delta,
) -> Result<CaseTwoCode, EnlargeError> {
    let f = src.field().clone();
    let t = src.t();
    if tl < 2 || tl > t {
        return Err(EnlargeError::BadDims(format!("t_l = {tl}, t = {t}")));
    }
    if !src.br.mul(&src.bt.transpose()).is_zero() {
        return Err(EnlargeError::OrthogonalityViolated("B_r B_t^T != 0".into()));
    }
    let btl = src.bt.submatrix(0..tl, 0..src.n());
    let btq = src.bt.submatrix(tl..t, 0..src.n());
    if !btq.mul(&src.bt.transpose()).is_zero() {
        return Err(EnlargeError::OrthogonalityViolated("B_tQ B_t^T != 0".into()));
    }
    let nf = gram_normal_form(&btl.mul(&btl.transpose()))?;
    let btl = nf.transform.mul(&btl);
    let bt = Matrix::vstack(&[&btl, &btq]);
    let src = SplitCode::new(src.br.clone(), bt)?;
    let m = make_a_case2(&nf, tl, t, &f, style)?;
    let code = build_da(&src, &m.a, delta1, delta2)?;

    let c = src.c();
    let skew = m.a0.sub(&m.a0.transpose()).rank();
    let btbt = src.bt.mul(&src.bt.transpose()).rank();
    let first = (c + skew / 2).checked_sub(tl);
    let second = (c + skew / 2).checked_sub(btbt);
    if first != Some(code.c_prime()) || second != Some(code.c_prime()) {
        return Err(EnlargeError::Inconsistent(format!(
            "c' = {} from the Gram rank, {first:?} and {second:?} from c = {c}",
            code.c_prime()
        )));
    }
    Ok(CaseTwoCode { code, tl, a0: m.a0, a0_fallback: m.fallback, c, a0_skew_rank: skew })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Field {
        Field::gf(p, m).unwrap()
    }

    fn v(xs: &[u32]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn weights_and_products() {
        assert_eq!(symplectic_weight(&v(&[1, 0, 0, 0, 1, 0])), Ok(2));
        assert_eq!(symplectic_weight(&v(&[0; 6])), Ok(0));
        assert_eq!(symplectic_weight(&v(&[1, 1, 0, 1, 0, 0])), Ok(2));
        assert_eq!(symplectic_weight(&v(&[1, 0, 0])), Err(EnlargeError::OddLength(3)));

        let f2 = gf(2, 1);
        assert_eq!(symplectic_product(&f2, &v(&[1, 0, 0, 0]), &v(&[0, 0, 1, 0])), Ok(Elem::ONE));
        let f3 = gf(3, 1);
        assert_eq!(symplectic_product(&f3, &v(&[2, 0, 0, 0]), &v(&[0, 0, 2, 0])), Ok(Elem::ONE));
        let u = v(&[1, 2, 0, 1]);
        let w = v(&[2, 2, 1, 0]);
        assert_eq!(symplectic_product(&f3, &u, &u), Ok(Elem::ZERO));
        assert_eq!(symplectic_product(&f3, &u, &w).unwrap(), f3.neg(symplectic_product(&f3, &w, &u).unwrap()));
        assert!(symplectic_product(&f3, &u, &v(&[1, 2])).is_err());
    }

    #[test]
    fn symplectic_dual_examples() {
        let f2 = gf(2, 1);
        let d = Matrix::from_indices(&f2, &[&[1, 0]]);
        let dual = symplectic_dual(&d).unwrap();
        assert_eq!(dual, Matrix::from_indices(&f2, &[&[1, 0]]));
        assert_eq!(symplectic_dual(&Matrix::identity(&f2, 4)).unwrap().rows(), 0);
        let dep = Matrix::from_indices(&f2, &[&[1, 0], &[1, 0]]);
        assert_eq!(symplectic_dual(&dep).unwrap_err(), EnlargeError::DependentRows);
    }

    #[test]
    fn symplectic_params_examples() {
        let f2 = gf(2, 1);
        let p = symplectic_params(&Matrix::identity(&f2, 3), &Matrix::zeros(&f2, 3, 3), 1 << 10).unwrap();
        assert_eq!((p.c, p.k), (0, 0));
        let p =
            symplectic_params(&Matrix::from_indices(&f2, &[&[1, 0]]), &Matrix::from_indices(&f2, &[&[0, 0]]), 1 << 10)
                .unwrap();
        assert_eq!(p.c, 0);
        let hx = Matrix::from_indices(&f2, &[&[1, 0], &[0, 0]]);
        let hz = Matrix::from_indices(&f2, &[&[0, 0], &[1, 0]]);
        let p = symplectic_params(&hx, &hz, 1 << 10).unwrap();
        assert_eq!(p.c, 1);
        assert_eq!(p.k, 1);
    }

    #[test]
    fn css_params_examples() {
        let f3 = gf(3, 1);
        let full = LinearCode::full(&f3, 4);
        let p = css_params(&full, &full, 1, 1 << 10).unwrap();
        assert_eq!((p.c, p.k), (4, 0));

        // self-orthogonal: (1,1,1) over GF(3)
        let c1 = LinearCode::from_span(&Matrix::from_indices(&f3, &[&[1, 1, 1]]));
        let p = css_params(&c1, &c1, 1, 1 << 10).unwrap();
        assert_eq!(p.c, 0);
        assert_eq!(p.k, 1);
    }

    #[test]
    fn build_da_rejects_eigenvalues() {
        let f2 = gf(2, 1);
        let bt = Matrix::from_indices(&f2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let src = SplitCode::new(Matrix::zeros(&f2, 0, 4), bt).unwrap();
        let err = build_da(&src, &Matrix::identity(&f2, 2), Delta::bound(1), Delta::bound(1)).unwrap_err();
        assert_eq!(err, EnlargeError::EigenvalueInField);
        let e = enlarge_case1(&src, Delta::bound(2), Delta::bound(1)).unwrap();
        assert_eq!(e.c_prime(), 0);
        assert_eq!(e.params.k, 4 - 2);
        assert_eq!(e.c_prime_by_dimension(), Ok(0));
    }

    #[test]
    fn entanglement_gram_is_alternate() {
        let f3 = gf(3, 1);
        let br = Matrix::from_indices(&f3, &[&[1, 0, 2, 1, 0]]);
        let bt = Matrix::from_indices(&f3, &[&[0, 1, 1, 0, 0], &[1, 1, 0, 0, 2], &[0, 0, 1, 1, 1]]);
        let src = SplitCode::new(br, bt).unwrap();
        let a = make_a_case1(3, &f3).unwrap();
        let m = entanglement_gram(&src, &a);
        assert_eq!(m, m.transpose().neg());
        let e = build_da(&src, &a, Delta::bound(1), Delta::bound(1)).unwrap();
        assert_eq!(e.c_prime_by_dimension().unwrap(), e.c_prime());
    }
}
