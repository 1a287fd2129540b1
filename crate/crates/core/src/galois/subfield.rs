//! GF(p^s) inside GF(p^m).

use std::collections::HashMap;

use super::{Elem, Field, FieldError, Poly};
use crate::matgf::Matrix;

/// A fixed embedding of `small = GF(p^s)` into `big = GF(p^m)` together with
/// the polynomial basis `1, X, ..., X^(m/s - 1)` of `big` over `small`.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    big: Field,
    small: Field,
    s: u32,
    /// image of each small element, indexed by small index
    image: Vec<Elem>,
    preimage: HashMap<u32, u32>,
    basis: Vec<Elem>,
    /// inverse of the GF(p)-basis matrix with rows `rho^i X^k`
    coords: Vec<Vec<u32>>,
}

impl SubfieldEmbedding {
    pub fn new(big: &Field, s: u32) -> Result<SubfieldEmbedding, FieldError> {
        let (p, m) = (big.characteristic(), big.degree());
        if s == 0 || s == m || m % s != 0 {
            return Err(FieldError::BadDegree { m, s });
        }
        let small = Field::gf(p as u64, s)?;
        // rho: smallest root of the small modulus in the big field
        let small_mod = Poly::new(big, small.modulus().iter().map(|&c| Elem(c)).collect());
        let rho = big
            .elements()
            .find(|&x| small_mod.eval(x).is_zero())
            .expect("an irreducible of degree s | m splits in GF(p^m)");
        let rho_pows: Vec<Elem> = (0..s).map(|i| big.pow(rho, i as u64)).collect();
        let image: Vec<Elem> = small
            .elements()
            .map(|a| {
                let c = small.coeffs(a);
                big.sum(c.iter().zip(&rho_pows).map(|(&ci, &r)| big.mul(Elem(ci), r)))
            })
            .collect();
        let preimage = image.iter().enumerate().map(|(i, e)| (e.0, i as u32)).collect();

        let big_m = (m / s) as usize;
        let x = big.x();
        let basis: Vec<Elem> = (0..big_m).map(|k| big.pow(x, k as u64)).collect();

        let prime = Field::gf(p as u64, 1)?;
        let mut rows = Vec::with_capacity(m as usize);
        for theta in &basis {
            for r in &rho_pows {
                rows.push(big.coeffs(big.mul(*r, *theta)).into_iter().map(Elem).collect());
            }
        }
        let b = Matrix::from_rows(&prime, m as usize, &rows);
        let inv = b.inverse().expect("rho^i X^k is a GF(p)-basis");
        let coords = inv.row_iter().map(|r| r.iter().map(|e| e.0).collect()).collect();

        Ok(SubfieldEmbedding { big: big.clone(), small, s, image, preimage, basis, coords })
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn small_degree(&self) -> u32 {
        self.s
    }

    /// `m / s`.
    pub fn relative_degree(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn contains(&self, x: Elem) -> bool {
        let ps = (self.big.characteristic() as u64).pow(self.s);
        self.big.pow(x, ps) == x
    }

    pub fn to_big(&self, a: Elem) -> Elem {
        self.image[a.index()]
    }

    pub fn to_small(&self, x: Elem) -> Option<Elem> {
        self.preimage.get(&x.0).map(|&i| Elem(i))
    }

    /// Coordinates of `x` in the basis, as small-field elements.
    pub fn expand(&self, x: Elem) -> Vec<Elem> {
        let p = self.big.characteristic();
        let s = self.s as usize;
        let c = self.big.coeffs(x);
        let mut d = vec![0u32; c.len()];
        for (ci, row) in c.iter().zip(&self.coords) {
            if *ci == 0 {
                continue;
            }
            for (dj, rj) in d.iter_mut().zip(row) {
                *dj = ((*dj as u64 + *ci as u64 * *rj as u64) % p as u64) as u32;
            }
        }
        d.chunks(s).map(|chunk| self.small.from_coeffs(chunk)).collect()
    }

    pub fn contract(&self, coords: &[Elem]) -> Elem {
        assert_eq!(coords.len(), self.basis.len(), "wrong number of coordinates");
        let f = &self.big;
        f.sum(coords.iter().zip(&self.basis).map(|(&c, &t)| f.mul(self.to_big(c), t)))
    }

    /// Relative trace down to the subfield, returned as a big-field element.
    pub fn trace(&self, x: Elem) -> Elem {
        let ps = (self.big.characteristic() as u64).pow(self.s);
        let f = &self.big;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.basis.len() {
            acc = f.add(acc, y);
            y = f.pow(y, ps);
        }
        acc
    }
}
