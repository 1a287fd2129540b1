//! Congruence normal form of an invertible symmetric matrix.

use super::{Matrix, MatrixError};
use crate::galois::{Elem, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramBlock {
    /// `[[0,1],[1,0]]`
    HyperbolicPair,
    /// `[z]` with `z != 0`
    Diagonal(Elem),
    /// `[[0,1],[1,1]]`, characteristic 2 only
    Char2Special,
}

impl GramBlock {
    pub fn size(self) -> usize {
        match self {
            GramBlock::Diagonal(_) => 1,
            _ => 2,
        }
    }
}

/// `transform * G * transform^T = z`, with `z` block diagonal as listed in `blocks`.
#[derive(Debug, Clone)]
pub struct GramNormalForm {
    pub transform: Matrix,
    pub z: Matrix,
    pub blocks: Vec<GramBlock>,
}

struct Form<'a> {
    f: &'a Field,
    g: &'a Matrix,
}

impl Form<'_> {
    fn b(&self, u: &[Elem], v: &[Elem]) -> Elem {
        self.f.dot(u, &self.g.mul_vec(v))
    }
}

fn scaled(f: &Field, v: &[Elem], c: Elem) -> Vec<Elem> {
    let mut out = v.to_vec();
    f.scale_slice(&mut out, c);
    out
}

pub fn gram_normal_form(g: &Matrix) -> Result<GramNormalForm, MatrixError> {
    if !g.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let f = g.field().clone();
    let n = g.rows();
    let form = Form { f: &f, g };
    let char2 = f.characteristic() == 2;

    let mut remaining: Vec<Vec<Elem>> = Matrix::identity(&f, n).row_iter().map(|r| r.to_vec()).collect();
    let mut pieces: Vec<(GramBlock, Vec<Vec<Elem>>)> = Vec::new();

    while !remaining.is_empty() {
        let vi = remaining.remove(0);
        let bii = form.b(&vi, &vi);
        if !bii.is_zero() {
            let inv = f.inv(bii).expect("nonzero");
            for w in remaining.iter_mut() {
                let c = f.mul(form.b(w, &vi), inv);
                f.axpy(w, &vi, f.neg(c));
            }
            pieces.push((GramBlock::Diagonal(bii), vec![vi]));
            continue;
        }
        let Some(jpos) = remaining.iter().position(|w| !form.b(&vi, w).is_zero()) else {
            return Err(MatrixError::SingularGram);
        };
        let vj = remaining.remove(jpos);
        let bij = form.b(&vi, &vj);
        let mut vi = vi;
        let mut vj = scaled(&f, &vj, f.inv(bij).expect("nonzero"));
        let bjj = form.b(&vj, &vj);
        let block = if char2 && !bjj.is_zero() {
            // sqrt in characteristic 2 is the inverse Frobenius: a^(q/2)
            let lambda = f.pow(bjj, (f.order() / 2) as u64);
            vj = scaled(&f, &vj, f.inv(lambda).expect("nonzero"));
            vi = scaled(&f, &vi, lambda);
            GramBlock::Char2Special
        } else {
            if !bjj.is_zero() {
                let half = f.inv(f.from_int(2)).expect("odd characteristic");
                f.axpy(&mut vj, &vi, f.neg(f.mul(bjj, half)));
            }
            GramBlock::HyperbolicPair
        };
        for w in remaining.iter_mut() {
            let (wi, wj) = (form.b(w, &vi), form.b(w, &vj));
            // coefficients of the projection onto span{vi, vj}
            let (ci, cj) = match block {
                GramBlock::HyperbolicPair => (wj, wi),
                _ => (f.add(wi, wj), wi),
            };
            f.axpy(w, &vi, f.neg(ci));
            f.axpy(w, &vj, f.neg(cj));
        }
        pieces.push((block, vec![vi, vj]));
    }

    // Keep at most one special block; the others become two unit diagonals.
    let specials = pieces.iter().filter(|(b, _)| *b == GramBlock::Char2Special).count();
    let mut converted = 0;
    let mut out: Vec<(GramBlock, Vec<Vec<Elem>>)> = Vec::new();
    for (block, vecs) in pieces {
        if block == GramBlock::Char2Special && converted + 1 < specials {
            converted += 1;
            let (e, fv) = (&vecs[0], &vecs[1]);
            let mut ef = e.clone();
            f.axpy(&mut ef, fv, Elem::ONE);
            out.push((GramBlock::Diagonal(Elem::ONE), vec![fv.clone()]));
            out.push((GramBlock::Diagonal(Elem::ONE), vec![ef]));
        } else {
            out.push((block, vecs));
        }
    }
    let rank_of = |b: &GramBlock| match b {
        GramBlock::HyperbolicPair => 0,
        GramBlock::Diagonal(_) => 1,
        GramBlock::Char2Special => 2,
    };
    out.sort_by_key(|(b, _)| rank_of(b));

    let rows: Vec<Vec<Elem>> = out.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
    let transform = Matrix::from_rows(&f, n, &rows);
    let blocks: Vec<GramBlock> = out.into_iter().map(|(b, _)| b).collect();
    let z = block_matrix(&f, &blocks);
    debug_assert_eq!(transform.mul(g).mul(&transform.transpose()), z);
    Ok(GramNormalForm { transform, z, blocks })
}

/// The block-diagonal matrix described by `blocks`.
pub fn block_matrix(f: &Field, blocks: &[GramBlock]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.size()).sum();
    let mut z = Matrix::zeros(f, n, n);
    let mut at = 0;
    for b in blocks {
        match *b {
            GramBlock::Diagonal(v) => z.set(at, at, v),
            GramBlock::HyperbolicPair => {
                z.set(at, at + 1, Elem::ONE);
                z.set(at + 1, at, Elem::ONE);
            }
            GramBlock::Char2Special => {
                z.set(at, at + 1, Elem::ONE);
                z.set(at + 1, at, Elem::ONE);
                z.set(at + 1, at + 1, Elem::ONE);
            }
        }
        at += b.size();
    }
    z
}
