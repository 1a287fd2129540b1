//! Classical linear codes: evaluation codes, subfield-subcodes, duals and
//! exact minimum distances.

mod weight;

use std::sync::OnceLock;

use thiserror::Error;

use crate::cosets::{CosetTable, DefiningSet};
use crate::galois::{Elem, Field, SubfieldEmbedding};
use crate::matgf::Matrix;

pub(crate) use weight::min_outside;
pub use weight::{WeightKind, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("empty defining set")]
    EmptyDelta,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("exponent {0} is outside 0..n")]
    BadExponent(u64),
    #[error("index {index} out of range (largest index is {max})")]
    IndexOutOfRange { index: usize, max: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("enumeration of {0} words exceeds the budget")]
    Exceeded(u128),
    #[error("not a subspace of the code")]
    NotSubspace,
    #[error("the zero code has no minimum weight")]
    ZeroCode,
}

/// Minimum weight of `C \ S`, which is empty when `S = C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    Infinite,
}

/// A linear code stored by its RREF generator, so equal codes compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
}

impl LinearCode {
    /// Span of the rows of `m` (dependent rows are fine).
    pub fn from_span(m: &Matrix) -> LinearCode {
        LinearCode { gen: m.row_basis() }
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode { gen: Matrix::zeros(field, 0, n) }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        LinearCode { gen: Matrix::identity(field, n) }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    /// Block length `n`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_span(&self.gen.kernel())
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let stacked = Matrix::vstack(&[&self.gen, &Matrix::from_vec(self.field(), 1, v.len(), v.to_vec())]);
        stacked.rank() == self.dim()
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.len() == other.len()
            && Matrix::vstack(&[&other.gen, &self.gen]).rank() == other.dim()
    }

    pub fn sum(&self, other: &LinearCode) -> LinearCode {
        LinearCode::from_span(&Matrix::vstack(&[&self.gen, &other.gen]))
    }

    /// Intersection via the kernel of the stacked generators.
    /// `dim U + dim W - dim(U + W)`, without building the intersection.
    pub fn intersection_dim(&self, other: &LinearCode) -> usize {
        if self.dim() == 0 || other.dim() == 0 {
            return 0;
        }
        self.dim() + other.dim() - Matrix::vstack(&[&self.gen, &other.gen]).rank()
    }

    pub fn intersect(&self, other: &LinearCode) -> LinearCode {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return LinearCode::zero(self.field(), self.len());
        }
        let stacked = Matrix::vstack(&[&self.gen, &other.gen]).transpose();
        let ker = stacked.kernel();
        let coeffs = ker.submatrix(0..ker.rows(), 0..a);
        LinearCode::from_span(&coeffs.mul(&self.gen))
    }
}

pub fn euclidean_dual(c: &LinearCode) -> LinearCode {
    c.dual()
}

/// Minimum Hamming weight by exhaustive enumeration of `q^k` words.
pub fn min_weight(c: &LinearCode, budget: u64) -> Result<usize, WeightError> {
    if c.dim() == 0 {
        return Err(WeightError::ZeroCode);
    }
    let rows: Vec<Vec<Elem>> = c.gen.row_iter().map(|r| r.to_vec()).collect();
    Ok(min_outside(c.field(), &rows, 0, WeightKind::Hamming, budget)?.expect("nonzero code"))
}

/// Minimum Hamming weight of `C \ S`.
pub fn relative_min_weight(c: &LinearCode, s: &LinearCode, budget: u64) -> Result<Distance, WeightError> {
    relative_min(c, s, WeightKind::Hamming, budget)
}

pub(crate) fn relative_min(
    c: &LinearCode,
    s: &LinearCode,
    kind: WeightKind,
    budget: u64,
) -> Result<Distance, WeightError> {
    if !s.is_subcode_of(c) {
        return Err(WeightError::NotSubspace);
    }
    let rows = extend_basis(s, c);
    Ok(match min_outside(c.field(), &rows, s.dim(), kind, budget)? {
        Some(d) => Distance::Exact(d),
        None => Distance::Infinite,
    })
}

/// Basis of `c` that starts with a basis of its subcode `s`.
fn extend_basis(s: &LinearCode, c: &LinearCode) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = s.gen.row_iter().map(|r| r.to_vec()).collect();
    let mut rank = rows.len();
    for r in c.gen.row_iter() {
        if rank == c.dim() {
            break;
        }
        rows.push(r.to_vec());
        let m = Matrix::from_rows(c.field(), c.len(), &rows);
        if m.rank() > rank {
            rank += 1;
        } else {
            rows.pop();
        }
    }
    rows
}

/// `C_Delta`: the span of `ev(X^i)` for `i` in `exponents`, where
/// `ev(h) = (h(R_0), ..., h(R_{n-1}))` and `R_j = g^j`.
#[derive(Debug, Clone)]
pub struct EvaluationCode {
    field: Field,
    exponents: Vec<u64>,
    gen: Matrix,
}

impl EvaluationCode {
    pub fn new(field: &Field, exponents: &[u64]) -> Result<EvaluationCode, CodeError> {
        if exponents.is_empty() {
            return Err(CodeError::EmptyDelta);
        }
        let n = (field.order() - 1) as u64;
        if let Some(&bad) = exponents.iter().find(|&&e| e >= n) {
            return Err(CodeError::BadExponent(bad));
        }
        let gen = Matrix::from_fn(field, exponents.len(), n as usize, |r, j| field.exp(exponents[r] * j as u64 % n));
        Ok(EvaluationCode { field: field.clone(), exponents: exponents.to_vec(), gen })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// One row per exponent, in the given order.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_span(&self.gen)
    }
}

pub fn evaluation_code(field: &Field, exponents: &[u64]) -> Result<EvaluationCode, CodeError> {
    EvaluationCode::new(field, exponents)
}

/// `GF(p^s)^n ∩ C_Delta`, as the kernel of the parity checks of `C_Delta`
/// written out in subfield coordinates.
pub fn subfield_subcode(c: &EvaluationCode, emb: &SubfieldEmbedding) -> Result<LinearCode, CodeError> {
    if emb.big() != &c.field {
        return Err(CodeError::FieldMismatch);
    }
    let big = &c.field;
    let small = emb.small();
    let n = (big.order() - 1) as u64;
    let mut in_delta = vec![false; n as usize];
    for &e in &c.exponents {
        in_delta[e as usize] = true;
    }
    // C_Delta^perp = C_{H \ -Delta}. For subfield vectors the check for e*p^s
    // is the Frobenius image of the check for e, so one per orbit suffices.
    let mult = (big.characteristic() as u64).pow(emb.small_degree()) % n.max(1);
    let mut used = vec![false; n as usize];
    let mut checks = Vec::new();
    for e in 0..n {
        if in_delta[((n - e) % n) as usize] || used[e as usize] {
            continue;
        }
        checks.push(e);
        let mut x = e;
        loop {
            used[x as usize] = true;
            x = x * mult % n;
            if x == e {
                break;
            }
        }
    }
    let rel = emb.relative_degree();
    let mut rows = vec![vec![Elem::ZERO; n as usize]; checks.len() * rel];
    for (ci, &e) in checks.iter().enumerate() {
        let block = &mut rows[ci * rel..(ci + 1) * rel];
        for j in 0..n as usize {
            for (row, v) in block.iter_mut().zip(emb.expand(big.exp(e * j as u64 % n))) {
                row[j] = v;
            }
        }
    }
    let h = Matrix::from_rows(small, n as usize, &rows);
    Ok(LinearCode::from_span(&h.kernel()))
}

/// `a_{l+1} + 1`, the designed lower bound on the distance of the dual of
/// the subfield-subcode of `Delta(l)`.
pub fn bch_dual_bound(table: &CosetTable, l: usize) -> Result<u64, CodeError> {
    if l >= table.z() {
        return Err(CodeError::IndexOutOfRange { index: l, max: table.z().saturating_sub(1) });
    }
    Ok(table.rep(l + 1) + 1)
}

/// Subfield-subcodes of coset-defined evaluation codes for one `(p, m, s)`.
///
/// Each coset `I_a` contributes the trace code spanned by
/// `(Tr(X^k R_j^a))_j` for `k < m/s`, which has dimension `#I_a`.
#[derive(Debug)]
pub struct CosetCodes {
    table: CosetTable,
    emb: SubfieldEmbedding,
    trace: Vec<Elem>,
    blocks: Vec<OnceLock<Matrix>>,
}

impl CosetCodes {
    pub fn new(p: u64, m: u32, s: u32) -> Result<CosetCodes, crate::Error> {
        let table = CosetTable::new(p, m, s)?;
        let big = Field::gf(p, m)?;
        let emb = SubfieldEmbedding::new(&big, s)?;
        let trace = big.elements().map(|x| emb.to_small(emb.trace(x)).expect("trace lies in the subfield")).collect();
        let blocks = (0..table.cosets().len()).map(|_| OnceLock::new()).collect();
        Ok(CosetCodes { table, emb, trace, blocks })
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.emb
    }

    pub fn big(&self) -> &Field {
        self.emb.big()
    }

    pub fn small(&self) -> &Field {
        self.emb.small()
    }

    pub fn n(&self) -> usize {
        self.table.n() as usize
    }

    /// Generator of the subfield-subcode of `C_{I_a}` for coset `index`.
    pub fn block(&self, index: usize) -> &Matrix {
        self.blocks[index].get_or_init(|| {
            let big = self.big();
            let n = self.table.n();
            let a = self.table.rep(index);
            let rows: Vec<Vec<Elem>> = self
                .emb
                .basis()
                .iter()
                .map(|&theta| (0..n).map(|j| self.trace[big.mul(theta, big.exp(a * j % n)).index()]).collect())
                .collect();
            let m = Matrix::from_rows(self.small(), n as usize, &rows).row_basis();
            assert_eq!(m.rows(), self.table.coset(index).size(), "trace code has the coset's dimension");
            m
        })
    }

    /// Stacked coset blocks, in the given order.
    pub fn generator(&self, cosets: &[usize]) -> Matrix {
        if cosets.is_empty() {
            return Matrix::zeros(self.small(), 0, self.n());
        }
        let parts: Vec<&Matrix> = cosets.iter().map(|&i| self.block(i)).collect();
        Matrix::vstack(&parts)
    }

    pub fn subfield_subcode(&self, ds: &DefiningSet) -> LinearCode {
        LinearCode::from_span(&self.generator(&ds.cosets))
    }
}
