//! Invertible matrices without eigenvalues in the base field.

use super::EnlargeError;
use crate::galois::{Elem, Field, Poly};
use crate::matgf::{charpoly, companion, GramNormalForm, Matrix};

/// How the `t_l x t_l` block `A_0` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum A0Style {
    /// `rank(A_0 - A_0^T)` as large as possible
    #[default]
    Standard,
    /// `rank(A_0 - A_0^T) = t_l - 2`
    Eta,
}

pub fn has_eigenvalue_in_field(a: &Matrix) -> bool {
    charpoly(a).has_root()
}

/// First nonzero element, in canonical order, outside the image of `f`.
fn first_outside_image(field: &Field, f: impl Fn(Elem) -> Elem, skip: &[Elem]) -> Option<Elem> {
    let mut hit = vec![false; field.order() as usize];
    for x in field.elements() {
        hit[f(x).index()] = true;
    }
    field.nonzero_elements().find(|v| !hit[v.index()] && !skip.contains(v))
}

fn x_pow_minus(field: &Field, terms: &[(usize, Elem)], deg: usize) -> Poly {
    let mut coeffs = vec![Elem::ZERO; deg + 1];
    coeffs[deg] = Elem::ONE;
    for &(d, c) in terms {
        coeffs[d] = field.add(coeffs[d], c);
    }
    Poly::new(field, coeffs)
}

/// Companion matrix of `X^t + X^(t-1) - xi` with `xi` the first nonzero value
/// missed by `x -> x^t + x^(t-1)`.
pub fn make_a_case1(t: usize, field: &Field) -> Result<Matrix, EnlargeError> {
    if t < 2 {
        return Err(EnlargeError::BadDims(format!("t = {t} must be at least 2")));
    }
    let xi = first_outside_image(field, |x| field.add(field.pow(x, t as u64), field.pow(x, t as u64 - 1)), &[])
        .expect("x^t + x^(t-1) vanishes at 0 and -1, so it is not onto");
    let h = x_pow_minus(field, &[(t - 1, Elem::ONE), (0, field.neg(xi))], t);
    Ok(companion(&h)?)
}

/// The polynomial defining `A_0` under the given style, before any fallback.
pub fn a0_polynomial(tl: usize, field: &Field, style: A0Style) -> Result<Poly, EnlargeError> {
    if tl < 2 {
        return Err(EnlargeError::BadDims(format!("t_l = {tl} must be at least 2")));
    }
    let q = field.order() as usize;
    let char2 = field.characteristic() == 2;
    let neg = |e: Elem| field.neg(e);
    match style {
        A0Style::Standard => {
            if char2 && tl == 2 {
                if q == 2 {
                    return Err(EnlargeError::StyleUnavailable(
                        "no rootless X^2 + a X + b over GF(2) gives rank(A_0 - A_0^T) = 2".into(),
                    ));
                }
                // X^2 + X - xi, xi not in {0, 1}
                let xi = first_outside_image(field, |x| field.add(field.mul(x, x), x), &[Elem::ONE])
                    .ok_or_else(|| EnlargeError::StyleUnavailable("no admissible xi".into()))?;
                return Ok(x_pow_minus(field, &[(1, Elem::ONE), (0, neg(xi))], 2));
            }
            let xi1 =
                first_outside_image(field, |x| field.sub(field.pow(x, tl as u64), field.pow(x, tl as u64 - 2)), &[])
                    .expect("x^t - x^(t-2) is not onto");
            Ok(x_pow_minus(field, &[(tl - 2, neg(Elem::ONE)), (0, neg(xi1))], tl))
        }
        A0Style::Eta => {
            if tl % 2 == 1 {
                return Err(EnlargeError::EtaUnavailable(format!("t_l = {tl} is odd")));
            }
            if char2 {
                if tl < q {
                    return Err(EnlargeError::EtaUnavailable(format!("t_l = {tl} < q = {q}")));
                }
                return Ok(x_pow_minus(field, &[(tl - q + 1, neg(Elem::ONE)), (0, neg(Elem::ONE))], tl));
            }
            let w = tl / 2;
            if w.is_multiple_of(2) {
                return Err(EnlargeError::EtaUnavailable(format!("t_l / 2 = {w} is even")));
            }
            let a = field
                .nonzero_elements()
                .find(|&a| {
                    !field
                        .elements()
                        .any(|x| field.sub(field.add(field.mul(x, x), field.mul(a, x)), Elem::ONE).is_zero())
                })
                .expect("some X^2 + aX - 1 is irreducible");
            Ok(x_pow_minus(field, &[(w, a), (0, neg(Elem::ONE))], tl))
        }
    }
}

/// Output of [`make_a_case2`].
#[derive(Debug, Clone)]
pub struct CaseTwoMatrix {
    pub a: Matrix,
    pub a0: Matrix,
    /// `A_0 = L(poly)` normally; with `fallback` set, `A_0 Z^-1` is built
    /// from rootless companions, the first of which is `L(poly)`
    pub poly: Poly,
    /// The style's own `A_0` left `A_0 Z^-1` with an eigenvalue, so the block
    /// `A_0 Z^-1` was replaced by an eigenvalue-free matrix giving
    /// `A_0 - A_0^T` the same rank.
    pub fallback: bool,
}

/// Alternate rank of `A_0 - A_0^T` that the style aims for.
pub fn target_skew_rank(tl: usize, style: A0Style) -> usize {
    match (style, tl % 2) {
        (A0Style::Standard, 0) => tl,
        (A0Style::Standard, _) => tl - 1,
        (A0Style::Eta, _) => tl - 2,
    }
}

/// Largest number of candidates tried by the fallback search.
const FALLBACK_LIMIT: u64 = 1 << 22;

/// `A = diag(A_0 Z^-1, A_1)` with `A_1 = make_a_case1(t - t_l)` when `t > t_l`.
pub fn make_a_case2(
    nf: &GramNormalForm,
    tl: usize,
    t: usize,
    field: &Field,
    style: A0Style,
) -> Result<CaseTwoMatrix, EnlargeError> {
    if tl < 2 || tl > t || nf.z.rows() != tl {
        return Err(EnlargeError::BadDims(format!("t_l = {tl}, t = {t}, Z is {}x{}", nf.z.rows(), nf.z.cols())));
    }
    if t - tl == 1 {
        return Err(EnlargeError::BadDims("t - t_l = 1 leaves a 1x1 block, which always has an eigenvalue".into()));
    }
    let z = &nf.z;
    let zinv = z.inverse().ok_or(EnlargeError::Matrix(crate::matgf::MatrixError::SingularGram))?;
    let target = target_skew_rank(tl, style);
    let first = a0_polynomial(tl, field, style)?;
    let a0 = companion(&first)?;
    let (top, a0, poly, fallback) = if !has_eigenvalue_in_field(&a0.mul(&zinv)) {
        (a0.mul(&zinv), a0, first, false)
    } else if let Some((top, h)) = hyperbolic_split(z, tl, field, target) {
        let a0 = top.mul(z);
        (top, a0, h, true)
    } else {
        let (top, h) = permuted_companion(z, tl, field, target).ok_or(EnlargeError::EigenvalueInField)?;
        let a0 = top.mul(z);
        (top, a0, h, true)
    };
    let a = if t > tl {
        let a1 = make_a_case1(t - tl, field)?;
        let z01 = Matrix::zeros(field, tl, t - tl);
        let z10 = Matrix::zeros(field, t - tl, tl);
        Matrix::block(&[&[&top, &z01], &[&z10, &a1]])
    } else {
        top
    };
    Ok(CaseTwoMatrix { a, a0, poly, fallback })
}

/// Companion matrices of the rootless monic polynomials of degree `deg`, in
/// canonical order, at most `limit` polynomials examined.
fn rootless_companions(field: &Field, deg: usize, limit: u64) -> Vec<(Poly, Matrix)> {
    let q = field.order() as u64;
    let total = crate::galois::checked_pow(q, deg as u32).unwrap_or(u64::MAX).min(limit);
    (0..total)
        .filter_map(|idx| {
            let mut low = Vec::with_capacity(deg);
            let mut v = idx;
            for _ in 0..deg {
                low.push(Elem((v % q) as u32));
                v /= q;
            }
            let h = Poly::monic(field, &low);
            if h.has_root() {
                return None;
            }
            companion(&h).ok().map(|l| (h, l))
        })
        .collect()
}

/// `Z` made of `k >= 2` hyperbolic pairs: in the basis `(u_1..u_k, v_1..v_k)`
/// `Z = [[0, I], [I, 0]]`, and `top = diag(P, S)` gives
/// `A_0 - A_0^T = [[0, P - S^T], [S - P^T, 0]]`. `P`, `S` are rootless
/// companions, so `top` has no eigenvalue.
fn hyperbolic_split(z: &Matrix, tl: usize, field: &Field, target: usize) -> Option<(Matrix, Poly)> {
    if tl % 2 == 1 || tl < 4 || target % 2 == 1 {
        return None;
    }
    let k = tl / 2;
    let pairs = Matrix::from_fn(field, tl, tl, |i, j| if i / 2 == j / 2 && i != j { Elem::ONE } else { Elem::ZERO });
    if *z != pairs {
        return None;
    }
    let comps = rootless_companions(field, k, 1 << 16);
    let (h, p, s) = comps.iter().find_map(|(h, p)| {
        comps
            .iter()
            .find(|(_, s)| p.sub(&s.transpose()).rank() == target / 2)
            .map(|(_, s)| (h.clone(), p.clone(), s.clone()))
    })?;
    // position of the a-th new basis vector among the pairs
    let orig = |a: usize| if a < k { 2 * a } else { 2 * (a - k) + 1 };
    let mut top = Matrix::zeros(field, tl, tl);
    for a in 0..k {
        for b in 0..k {
            top.set(orig(a), orig(b), p.get(a, b));
            top.set(orig(k + a), orig(k + b), s.get(a, b));
        }
    }
    Some((top, h))
}

/// Permutation conjugates of rootless companions. Conjugation keeps the
/// characteristic polynomial, so only the alternate rank of `top Z` varies.
fn permuted_companion(z: &Matrix, tl: usize, field: &Field, target: usize) -> Option<(Matrix, Poly)> {
    let rootless = rootless_companions(field, tl, FALLBACK_LIMIT);
    let mut perm: Vec<usize> = (0..tl).collect();
    let mut tried = 0u64;
    loop {
        for (h, l) in &rootless {
            tried += 1;
            if tried > FALLBACK_LIMIT {
                return None;
            }
            let top = Matrix::from_fn(field, tl, tl, |i, j| l.get(perm[i], perm[j]));
            let a0 = top.mul(z);
            if a0.sub(&a0.transpose()).rank() == target {
                return Some((top, h.clone()));
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
