//! Cyclotomic cosets modulo `n = p^m - 1` under multiplication by `p^s`.

use thiserror::Error;

use crate::galois::{checked_pow, is_prime};

/// Largest `n` a coset table is built for.
pub const MAX_LENGTH: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("s = {s} must be a proper divisor of m = {m}")]
    BadDegree { m: u32, s: u32 },
    #[error("n = p^m - 1 is too large for a coset table")]
    TooLarge,
    #[error("index {index} out of range (largest index is {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("b = {b} outside 0 < b <= B = {bound}")]
    OutOfRange { b: u64, bound: u64 },
    #[error("{0} is not a minimal coset representative")]
    NotARepresentative(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub min_rep: u64,
    pub elements: Vec<u64>,
    pub reciprocal_min: u64,
    pub symmetric: bool,
}

impl Coset {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone)]
pub struct CosetTable {
    p: u64,
    m: u32,
    s: u32,
    n: u64,
    cosets: Vec<Coset>,
    /// coset index of every element of `0..n`
    owner: Vec<u32>,
}

impl CosetTable {
    pub fn new(p: u64, m: u32, s: u32) -> Result<CosetTable, CosetError> {
        if !is_prime(p) {
            return Err(CosetError::NotPrime(p));
        }
        if s == 0 || s >= m || !m.is_multiple_of(s) {
            return Err(CosetError::BadDegree { m, s });
        }
        let n = checked_pow(p, m).map(|q| q - 1).filter(|&n| n <= MAX_LENGTH).ok_or(CosetError::TooLarge)?;
        let mult = p.pow(s) % n;
        let mut owner = vec![u32::MAX; n as usize];
        let mut cosets = Vec::new();
        for a in 0..n {
            if owner[a as usize] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            let mut elements = Vec::new();
            let mut x = a;
            loop {
                owner[x as usize] = idx;
                elements.push(x);
                x = x * mult % n;
                if x == a {
                    break;
                }
            }
            elements.sort_unstable();
            cosets.push(Coset { min_rep: a, elements, reciprocal_min: 0, symmetric: false });
        }
        for i in 0..cosets.len() {
            let a = cosets[i].min_rep;
            let r = cosets[owner[((n - a) % n) as usize] as usize].min_rep;
            cosets[i].reciprocal_min = r;
            cosets[i].symmetric = r == a;
        }
        Ok(CosetTable { p, m, s, n, cosets, owner })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `m / s`.
    pub fn relative_degree(&self) -> usize {
        (self.m / self.s) as usize
    }

    /// `p^s`, the size of the code alphabet.
    pub fn alphabet(&self) -> u64 {
        self.p.pow(self.s)
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn coset(&self, index: usize) -> &Coset {
        &self.cosets[index]
    }

    /// The sorted minimal representatives `a_0 = 0 < a_1 < ... < a_z`.
    pub fn representatives(&self) -> Vec<u64> {
        self.cosets.iter().map(|c| c.min_rep).collect()
    }

    pub fn rep(&self, index: usize) -> u64 {
        self.cosets[index].min_rep
    }

    /// Largest index `z`.
    pub fn z(&self) -> usize {
        self.cosets.len() - 1
    }

    pub fn index_of(&self, a: u64) -> Option<usize> {
        self.cosets.binary_search_by_key(&a, |c| c.min_rep).ok()
    }

    pub fn index_containing(&self, h: u64) -> usize {
        self.owner[(h % self.n) as usize] as usize
    }

    pub fn reciprocal_index(&self, index: usize) -> usize {
        self.index_containing(self.n - self.cosets[index].min_rep)
    }

    pub fn bound_b(&self) -> u64 {
        bound_b_unchecked(self.p, self.m, self.s)
    }

    fn check_index(&self, index: usize) -> Result<(), CosetError> {
        if index > self.z() {
            return Err(CosetError::IndexOutOfRange { index, max: self.z() });
        }
        Ok(())
    }

    /// `Delta(l)`: the first `l + 1` cosets.
    pub fn delta(&self, l: usize) -> Result<DefiningSet, CosetError> {
        self.check_index(l)?;
        Ok(DefiningSet::from_cosets(self, (0..=l).collect()))
    }

    /// `Delta(l, R)`: `Delta(l)` together with the reciprocals of cosets `1..=l`.
    pub fn delta_r(&self, l: usize) -> Result<DefiningSet, CosetError> {
        self.check_index(l)?;
        let mut idx: Vec<usize> = (0..=l).collect();
        idx.extend((1..=l).map(|i| self.reciprocal_index(i)));
        Ok(DefiningSet::from_cosets(self, idx))
    }

    /// Disjointness of `I_b` from its reciprocal and the size of `I_b`.
    pub fn check_prop_bound(&self, b: u64) -> Result<PropBoundCheck, CosetError> {
        let bound = self.bound_b();
        if b == 0 || b > bound {
            return Err(CosetError::OutOfRange { b, bound });
        }
        let i = self.index_containing(b);
        let r = self.reciprocal_index(i);
        Ok(PropBoundCheck { subset_ok: i != r, size: self.cosets[i].size() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropBoundCheck {
    pub subset_ok: bool,
    pub size: usize,
}

/// `B(p, m, s)`.
pub fn bound_b(p: u64, m: u32, s: u32) -> Result<u64, CosetError> {
    if !is_prime(p) {
        return Err(CosetError::NotPrime(p));
    }
    if s == 0 || s >= m || !m.is_multiple_of(s) {
        return Err(CosetError::BadDegree { m, s });
    }
    checked_pow(p, m).ok_or(CosetError::TooLarge)?;
    Ok(bound_b_unchecked(p, m, s))
}

fn bound_b_unchecked(p: u64, m: u32, s: u32) -> u64 {
    let ps = p.pow(s);
    let big_m = m / s;
    if big_m.is_multiple_of(2) {
        ps.pow(big_m / 2) - 1
    } else {
        ps.pow(big_m.div_ceil(2)) - ps + 1
    }
}

/// A union of whole cosets, split into `Delta_r` and `Delta_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    /// coset indices, sorted and distinct
    pub cosets: Vec<usize>,
    /// sorted exponents
    pub exponents: Vec<u64>,
    /// cosets whose reciprocal is also in the set
    pub delta_l: Vec<usize>,
    pub delta_r: Vec<usize>,
}

impl DefiningSet {
    pub fn from_cosets(table: &CosetTable, mut cosets: Vec<usize>) -> DefiningSet {
        cosets.sort_unstable();
        cosets.dedup();
        let mut exponents: Vec<u64> = cosets.iter().flat_map(|&i| table.cosets[i].elements.iter().copied()).collect();
        exponents.sort_unstable();
        let (delta_l, delta_r) =
            cosets.iter().partition(|&&i| cosets.binary_search(&table.reciprocal_index(i)).is_ok());
        DefiningSet { cosets, exponents, delta_l, delta_r }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, h: u64) -> bool {
        self.exponents.binary_search(&h).is_ok()
    }

    /// `#Delta_L`.
    pub fn delta_l_size(&self, table: &CosetTable) -> usize {
        self.delta_l.iter().map(|&i| table.cosets[i].size()).sum()
    }

    /// Defining set of the Euclidean dual: everything outside the reciprocals.
    pub fn dual(&self, table: &CosetTable) -> DefiningSet {
        let recips: Vec<usize> = self.cosets.iter().map(|&i| table.reciprocal_index(i)).collect();
        let rest = (0..table.cosets.len()).filter(|i| !recips.contains(i)).collect();
        DefiningSet::from_cosets(table, rest)
    }
}
