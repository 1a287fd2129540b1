//! Exact arithmetic in GF(p^m).
//!
//! Elements are encoded by the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of their coefficient vector in the polynomial basis `1, X, ..., X^{m-1}`.
//! That integer order is the canonical element order used for every
//! "first admissible element" search in the crate.

mod cache;
mod moduli;
pub mod poly;
mod subfield;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use cache::set_table_cache_dir;
pub use poly::Poly;
pub use subfield::SubfieldEmbedding;

/// Fields up to this order get lazily built discrete-log tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest order covered by the built-in modulus table (3^12).
pub const DEFAULT_MODULUS_LIMIT: u64 = 531_441;

/// Odd-characteristic fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 729;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} is too large")]
    TooLarge { p: u64, m: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients below {p}")]
    MalformedModulus { p: u32, degree: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("no built-in modulus for GF({p}^{m})")]
    NoTableEntry { p: u32, m: u32 },
    #[error("subfield degree {s} must properly divide {m}")]
    BadDegree { m: u32, s: u32 },
}

/// A field element, stored as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AddKind {
    Xor,
    Table,
    Digits,
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2n`, doubled so products need no reduction.
    exp: Vec<u32>,
    /// `log[g^i] = i`; `log[0]` is unused.
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients low to high, length `m + 1`.
    modulus: Vec<u32>,
    primitive: Elem,
    add_kind: AddKind,
    tables: OnceLock<Tables>,
}

/// The finite field GF(p^m) with a fixed irreducible modulus.
///
/// Cheap to clone; all clones share the lazily built log tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the built-in one is used.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = match checked_pow(p, m) {
            Some(q) if q <= u32::MAX as u64 / 2 => q,
            _ => return Err(FieldError::TooLarge { p, m }),
        };
        let p = p as u32;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 || coeffs.iter().any(|&c| c >= p) {
                    return Err(FieldError::MalformedModulus { p, degree: m });
                }
                if m > 1 && !poly::is_irreducible_over_prime(p, coeffs) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                coeffs.to_vec()
            }
            None => {
                if q > DEFAULT_MODULUS_LIMIT {
                    return Err(FieldError::NoTableEntry { p, m });
                }
                moduli::default_modulus(p, m)
            }
        };
        let add_kind = if p == 2 {
            AddKind::Xor
        } else if q as u32 <= ADD_TABLE_LIMIT {
            AddKind::Table
        } else {
            AddKind::Digits
        };
        let mut data =
            FieldData { p, m, q: q as u32, modulus, primitive: Elem::ONE, add_kind, tables: OnceLock::new() };
        data.primitive = find_primitive(&data);
        Ok(Field(Arc::new(data)))
    }

    /// GF(p^m) with the built-in modulus.
    pub fn gf(p: u64, m: u32) -> Result<Field, FieldError> {
        Field::new(p, m, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator of the multiplicative group: the smallest element in
    /// canonical order whose order is `q - 1`.
    pub fn primitive(&self) -> Elem {
        self.0.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.0.q).map(Elem)
    }

    /// The class of `X`, a generator of the field over GF(p) when `m > 1`.
    pub fn x(&self) -> Elem {
        if self.0.m == 1 {
            // X reduces to the constant -modulus[0].
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            Elem(self.0.p)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.m)
            .map(|_| {
                let c = v % self.0.p;
                v /= self.0.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        debug_assert!(coeffs.len() <= self.0.m as usize);
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            acc = acc * self.0.p + c % self.0.p;
        }
        Elem(acc)
    }

    pub fn is_prime_subfield_element(&self, a: Elem) -> bool {
        a.0 < self.0.p
    }

    fn tables(&self) -> Option<&Tables> {
        if self.0.q as u64 > TABLE_LIMIT || self.0.m == 1 && self.0.p > ADD_TABLE_LIMIT {
            return None;
        }
        Some(self.0.tables.get_or_init(|| cache::load_or_build(&self.0)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.0.add_kind {
            AddKind::Xor => Elem(a.0 ^ b.0),
            AddKind::Table => {
                let t = self.tables().expect("table field");
                Elem(t.add[(a.0 * self.0.q + b.0) as usize])
            }
            AddKind::Digits => add_digits(&self.0, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.0.add_kind {
            AddKind::Xor => a,
            AddKind::Table => Elem(self.tables().expect("table field").neg[a.index()]),
            AddKind::Digits => neg_digits(&self.0, a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        if self.0.m == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        match self.tables() {
            Some(t) => Elem(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => mul_slow(&self.0, a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let n = self.0.q - 1;
        if self.0.m > 1 {
            if let Some(t) = self.tables() {
                let l = t.log[a.index()];
                return Some(Elem(t.exp[((n - l) % n) as usize]));
            }
        }
        Some(self.pow(a, n as u64 - 1))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        if self.0.m > 1 {
            if let Some(t) = self.tables() {
                let l = t.log[a.index()] as u64;
                return Elem(t.exp[((l * (e % n)) % n) as usize]);
            }
        }
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^i` for the primitive element `g`.
    pub fn exp(&self, i: u64) -> Elem {
        let n = (self.0.q - 1) as u64;
        match self.tables() {
            Some(t) if self.0.m > 1 => Elem(t.exp[(i % n) as usize]),
            _ => self.pow(self.0.primitive, i % n),
        }
    }

    /// Discrete logarithm to base `g`; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match self.tables() {
            Some(t) => Some(t.log[a.index()]),
            None => {
                let mut x = Elem::ONE;
                for i in 0..self.0.q - 1 {
                    if x == a {
                        return Some(i);
                    }
                    x = self.mul(x, self.0.primitive);
                }
                None
            }
        }
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// The ordered list `[g^0, g^1, ..., g^(n-1)]` of all `n = q - 1` roots of `X^n - 1`.
    pub fn nth_roots_of_unity(&self) -> Vec<Elem> {
        (0..(self.0.q - 1) as u64).map(|i| self.exp(i)).collect()
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// `dst[i] += c * src[i]`.
    pub fn axpy(&self, dst: &mut [Elem], src: &[Elem], c: Elem) {
        debug_assert_eq!(dst.len(), src.len());
        if c.is_zero() {
            return;
        }
        if self.0.p == 2 && c == Elem::ONE {
            for (d, s) in dst.iter_mut().zip(src) {
                d.0 ^= s.0;
            }
            return;
        }
        match (self.tables(), self.0.m) {
            (Some(t), m) if m > 1 || self.0.add_kind == AddKind::Table => {
                let lc = t.log[c.index()] as usize;
                let exp = &t.exp[lc..];
                match self.0.add_kind {
                    AddKind::Xor => {
                        for (d, s) in dst.iter_mut().zip(src) {
                            if s.0 != 0 {
                                d.0 ^= exp[t.log[s.index()] as usize];
                            }
                        }
                    }
                    AddKind::Table => {
                        let q = self.0.q as usize;
                        for (d, s) in dst.iter_mut().zip(src) {
                            if s.0 != 0 {
                                let prod = exp[t.log[s.index()] as usize];
                                d.0 = t.add[d.index() * q + prod as usize];
                            }
                        }
                    }
                    AddKind::Digits => {
                        for (d, s) in dst.iter_mut().zip(src) {
                            if s.0 != 0 {
                                *d = add_digits(&self.0, *d, Elem(exp[t.log[s.index()] as usize]));
                            }
                        }
                    }
                }
            }
            _ => {
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        *d = self.add(*d, self.mul(c, *s));
                    }
                }
            }
        }
    }

    pub fn scale_slice(&self, v: &mut [Elem], c: Elem) {
        if c == Elem::ONE {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Euclidean inner product.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Schoolbook product, independent of the log tables.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        mul_slow(&self.0, a, b)
    }
}

fn add_digits(f: &FieldData, a: Elem, b: Elem) -> Elem {
    let (mut x, mut y) = (a.0, b.0);
    let mut acc = 0u32;
    let mut place = 1u32;
    for _ in 0..f.m {
        let d = (x % f.p + y % f.p) % f.p;
        acc += d * place;
        place = place.wrapping_mul(f.p);
        x /= f.p;
        y /= f.p;
    }
    Elem(acc)
}

fn neg_digits(f: &FieldData, a: Elem) -> Elem {
    let mut x = a.0;
    let mut acc = 0u32;
    let mut place = 1u32;
    for _ in 0..f.m {
        let d = (f.p - x % f.p) % f.p;
        acc += d * place;
        place = place.wrapping_mul(f.p);
        x /= f.p;
    }
    Elem(acc)
}

fn digits(f: &FieldData, a: Elem) -> Vec<u32> {
    let mut v = a.0;
    (0..f.m)
        .map(|_| {
            let c = v % f.p;
            v /= f.p;
            c
        })
        .collect()
}

fn undigits(f: &FieldData, d: &[u32]) -> Elem {
    Elem(d.iter().rev().fold(0u32, |acc, &c| acc * f.p + c))
}

/// Polynomial product reduced modulo the field modulus.
fn mul_slow(f: &FieldData, a: Elem, b: Elem) -> Elem {
    let p = f.p as u64;
    let m = f.m as usize;
    let da = digits(f, a);
    let db = digits(f, b);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        // X^top = X^(top-m) * X^m and X^m = -(modulus lower terms).
        for (k, &mk) in f.modulus[..m].iter().enumerate() {
            let idx = top - m + k;
            prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
        }
    }
    let out: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
    undigits(f, &out)
}

fn pow_slow(f: &FieldData, a: Elem, mut e: u64) -> Elem {
    let mut base = a;
    let mut acc = Elem::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(f, acc, base);
        }
        base = mul_slow(f, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(f: &FieldData) -> Elem {
    let n = (f.q - 1) as u64;
    let factors = prime_factors(n);
    (1..f.q)
        .map(Elem)
        .find(|&g| factors.iter().all(|&l| pow_slow(f, g, n / l) != Elem::ONE))
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &FieldData) -> Tables {
    let n = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut x = Elem::ONE;
    for slot in exp.iter_mut().take(n) {
        *slot = x.0;
        x = mul_slow(f, x, f.primitive);
    }
    tables_from_exp(f, exp)
}

fn tables_from_exp(f: &FieldData, mut exp: Vec<u32>) -> Tables {
    let n = (f.q - 1) as usize;
    let mut log = vec![0u32; f.q as usize];
    for i in 0..n {
        log[exp[i] as usize] = i as u32;
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    let (add, neg) = match f.add_kind {
        AddKind::Table => {
            let q = f.q as usize;
            let mut add = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = add_digits(f, Elem(a as u32), Elem(b as u32)).0;
                }
            }
            let neg = (0..q as u32).map(|a| neg_digits(f, Elem(a)).0).collect();
            (add, neg)
        }
        _ => (Vec::new(), Vec::new()),
    };
    Tables { exp, log, add, neg }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn test_fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (3, 6)]
            .iter()
            .map(|&(p, m)| Field::gf(p, m).unwrap())
            .collect()
    }

    #[test]
    fn gf2_has_primitive_one() {
        let f = Field::gf(2, 1).unwrap();
        assert_eq!(f.primitive(), Elem::ONE);
        assert_eq!(f.nth_roots_of_unity(), vec![Elem::ONE]);
    }

    #[test]
    fn explicit_moduli() {
        assert!(Field::new(2, 4, Some(&[1, 1, 0, 0, 1])).is_ok());
        assert_eq!(Field::new(2, 4, Some(&[1, 0, 0, 0, 1])).unwrap_err(), FieldError::ReducibleModulus { p: 2 });
        assert_eq!(Field::gf(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(Field::gf(2, 20), Err(FieldError::NoTableEntry { .. })));
    }

    #[test]
    fn axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in test_fields() {
            let q = f.order();
            for _ in 0..200 {
                let a = Elem(rng.gen_range(0..q));
                let b = Elem(rng.gen_range(0..q));
                let c = Elem(rng.gen_range(0..q));
                assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                let p = f.characteristic() as u64;
                assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
            }
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, q as u64 - 1), Elem::ONE);
                assert_eq!(f.mul(a, f.pow(a, q as u64 - 2)), Elem::ONE);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }
    }

    #[test]
    fn big_odd_field_uses_digit_addition() {
        let f = Field::gf(3, 7).unwrap();
        let a = Elem(1000);
        let b = Elem(2000);
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
    }

    #[test]
    fn roots_of_unity() {
        let f4 = Field::gf(2, 2).unwrap();
        let r = f4.nth_roots_of_unity();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|&x| f4.pow(x, 3) == Elem::ONE));
        let prod = r.iter().fold(Elem::ONE, |acc, &x| f4.mul(acc, x));
        assert_eq!(prod, Elem::ONE);

        for f in test_fields() {
            let roots = f.nth_roots_of_unity();
            let n = roots.len() as u64;
            let mut sorted = roots.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len() as u64, n);
            // sum_R R^e = n if e = 0 mod n, else 0
            for e in 0..2 * n {
                let s = f.sum(roots.iter().map(|&r| f.pow(r, e)));
                let expect = if e % n == 0 { f.from_int(n as i64) } else { Elem::ZERO };
                assert_eq!(s, expect, "{f:?} e={e}");
            }
        }
    }

    #[test]
    fn primitive_element_generates_group() {
        for f in test_fields() {
            let n = f.order() as u64 - 1;
            let g = f.primitive();
            assert_eq!(f.pow(g, n), Elem::ONE);
            for l in prime_factors(n) {
                assert_ne!(f.pow(g, n / l), Elem::ONE);
            }
            // and it is the smallest one in canonical order
            for cand in 1..g.0 {
                let c = Elem(cand);
                assert!(prime_factors(n).iter().any(|&l| f.pow(c, n / l) == Elem::ONE));
            }
        }
    }
}
