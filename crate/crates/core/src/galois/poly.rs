//! Univariate polynomials over a [`Field`], coefficients low to high.

use std::fmt;

use super::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.0)?,
                1 => write!(f, "{}X", c.0)?,
                _ => write!(f, "{}X^{}", c.0, i)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![Elem::ONE])
    }

    /// `c X^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    /// Monic polynomial `X^j + low[j-1] X^(j-1) + ... + low[0]`.
    pub fn monic(field: &Field, low: &[Elem]) -> Poly {
        let mut coeffs = low.to_vec();
        coeffs.push(Elem::ONE);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..i + other.coeffs.len()], &other.coeffs, a);
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            let neg = f.neg(c);
            f.axpy(&mut rem[top - dd..=top], &divisor.coeffs, neg);
        }
        rem.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = self.field.inv(a.leading()).expect("nonzero");
        a.scale(inv)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Roots in the coefficient field, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<Elem> {
        self.field.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }

    pub fn has_root(&self) -> bool {
        self.field.elements().any(|x| self.eval(x).is_zero())
    }

    /// Ben-Or test: irreducible iff `gcd(self, X^(q^i) - X) = 1` for `1 <= i <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        let f = &self.field;
        let x = Poly::monomial(f, Elem::ONE, 1);
        let mut frob = x.clone();
        for _ in 0..deg / 2 {
            frob = frob.pow_mod(f.order() as u64, self);
            if frob.sub(&x).gcd(self).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Irreducibility of a polynomial over GF(p) given as raw coefficients.
pub(crate) fn is_irreducible_over_prime(p: u32, coeffs: &[u32]) -> bool {
    let prime = Field::new(p as u64, 1, Some(&[0, 1])).expect("prime field");
    let poly = Poly::new(&prime, coeffs.iter().map(|&c| Elem(c % p)).collect());
    poly.is_irreducible()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Field {
        Field::gf(p, m).unwrap()
    }

    fn exhaustive_irreducible(f: &Field, poly: &Poly) -> bool {
        // No monic factor of degree 1..=deg/2 divides it.
        let deg = poly.degree().unwrap();
        let q = f.order() as u64;
        for d in 1..=deg / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut low = Vec::new();
                let mut v = idx;
                for _ in 0..d {
                    low.push(Elem((v % q) as u32));
                    v /= q;
                }
                let cand = Poly::monic(f, &low);
                if poly.rem(&cand).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for f in [gf(2, 1), gf(3, 1), gf(2, 2)] {
            let q = f.order() as u64;
            for deg in 1..=4u32 {
                for idx in 0..q.pow(deg) {
                    let mut low = Vec::new();
                    let mut v = idx;
                    for _ in 0..deg {
                        low.push(Elem((v % q) as u32));
                        v /= q;
                    }
                    let poly = Poly::monic(&f, &low);
                    assert_eq!(poly.is_irreducible(), exhaustive_irreducible(&f, &poly), "{poly:?}");
                }
            }
        }
    }

    #[test]
    fn x4_plus_1_factors_in_char_2() {
        let f = gf(2, 1);
        let x1 = Poly::new(&f, vec![Elem::ONE, Elem::ONE]);
        let fourth = x1.mul(&x1).mul(&x1).mul(&x1);
        assert_eq!(fourth, Poly::new(&f, vec![Elem(1), Elem(0), Elem(0), Elem(0), Elem(1)]));
        assert!(!fourth.is_irreducible());
        assert!(is_irreducible_over_prime(2, &[1, 1, 0, 0, 1]));
        assert!(!is_irreducible_over_prime(2, &[1, 0, 0, 0, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = gf(3, 2);
        let a = Poly::new(&f, (0..7).map(|i| Elem((i * 5 + 1) % 9)).collect());
        let b = Poly::new(&f, vec![Elem(2), Elem(7), Elem(1)]);
        let (qt, r) = a.divrem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().is_none_or(|d| d < 2));
    }
}
