//! Test-side oracles written without the library's field tables or
//! elimination routines.
#![allow(dead_code)]

use eaqecc::galois::Field;
use eaqecc::matgf::Matrix;

/// GF(p^m) by schoolbook polynomial arithmetic. Elements use the same
/// little-endian base-p digit encoding as `Elem`, and the modulus is read
/// from the library field so that encodings agree.
#[derive(Debug, Clone)]
pub struct Gf {
    pub p: u32,
    pub m: usize,
    pub q: u32,
    modulus: Vec<u32>,
}

impl Gf {
    pub fn of(field: &Field) -> Gf {
        let modulus = field.modulus().to_vec();
        let m = field.degree() as usize;
        assert_eq!(modulus.len(), m + 1);
        assert_eq!(modulus[m], 1);
        Gf { p: field.characteristic(), m, q: field.order(), modulus }
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.pack(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.pack(&self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.m];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for top in (self.m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for k in 0..=self.m {
                let idx = top - self.m + k;
                prod[idx] = (prod[idx] + self.p * self.p - c * self.modulus[k] % self.p) % self.p;
            }
        }
        self.pack(&prod[..self.m])
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        (1..self.q).find(|&b| self.mul(a, b) == 1).expect("nonzero elements are invertible")
    }

    pub fn dot(&self, u: &[u32], v: &[u32]) -> u32 {
        u.iter().zip(v).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut rows = rows.to_vec();
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            let pivot: Vec<u32> = rows[rank].iter().map(|&x| self.mul(x, inv)).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }

    /// `A B^T`.
    pub fn gram(&self, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
        a.iter().map(|u| b.iter().map(|v| self.dot(u, v)).collect()).collect()
    }

    /// Gram matrix of the symplectic form on rows `(x | z)` of length `2n`.
    pub fn symplectic_gram(&self, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let n = rows.first().map_or(0, |r| r.len() / 2);
        rows.iter()
            .map(|u| rows.iter().map(|v| self.sub(self.dot(&u[..n], &v[n..]), self.dot(&v[..n], &u[n..]))).collect())
            .collect()
    }
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<u32>> {
    m.row_iter().map(|r| r.iter().map(|e| e.0).collect()).collect()
}

/// Binary vectors of length at most 64 as bit masks.
pub mod bits {
    use eaqecc::matgf::Matrix;

    pub fn rows(m: &Matrix) -> Vec<u64> {
        assert!(m.cols() <= 64);
        m.row_iter()
            .map(|r| r.iter().enumerate().filter(|(_, e)| !e.is_zero()).fold(0u64, |acc, (j, _)| acc | 1 << j))
            .collect()
    }

    /// Reduced echelon basis, pivots at each row's lowest set bit.
    pub fn echelon(rows: &[u64]) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::new();
        for &r in rows {
            let v = reduce(&basis, r);
            if v != 0 {
                let low = v & v.wrapping_neg();
                for b in basis.iter_mut() {
                    if *b & low != 0 {
                        *b ^= v;
                    }
                }
                basis.push(v);
            }
        }
        basis
    }

    pub fn reduce(basis: &[u64], mut v: u64) -> u64 {
        for &b in basis {
            let low = b & b.wrapping_neg();
            if v & low != 0 {
                v ^= b;
            }
        }
        v
    }

    /// `{v : <v, r> = 0 for all rows r}` over `cols` coordinates.
    pub fn kernel(rows: &[u64], cols: usize) -> Vec<u64> {
        let basis = echelon(rows);
        let pivots: u64 = basis.iter().fold(0, |acc, &b| acc | (b & b.wrapping_neg()));
        (0..cols)
            .filter(|&j| pivots & (1 << j) == 0)
            .map(|free| {
                let mut v = 1u64 << free;
                for &b in &basis {
                    if b & (1 << free) != 0 {
                        v |= b & b.wrapping_neg();
                    }
                }
                v
            })
            .collect()
    }

    /// Swaps the halves `(x | z) -> (z | x)` of a length-`2n` vector.
    pub fn swap(v: u64, n: usize) -> u64 {
        let mask = (1u64 << n) - 1;
        (v >> n) | ((v & mask) << n)
    }

    pub fn symplectic_weight(v: u64, n: usize) -> u32 {
        let mask = (1u64 << n) - 1;
        ((v & mask) | (v >> n)).count_ones()
    }

    /// Minimum of `weight` over `span(gens) \ span(sub)` by Gray-code
    /// enumeration of `span(gens)`; `None` if the difference is empty.
    pub fn min_outside(gens: &[u64], sub: &[u64], weight: impl Fn(u64) -> u32) -> Option<u32> {
        let sub = echelon(sub);
        let mut best: Option<u32> = None;
        let mut word = 0u64;
        for i in 1u64..(1 << gens.len()) {
            word ^= gens[i.trailing_zeros() as usize];
            if reduce(&sub, word) != 0 {
                let w = weight(word);
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        best
    }
}
