//! Built-in default moduli.
//!
//! Binary and ternary entries are the usual tabulated primitive polynomials.
//! Every other (p, m) with p^m <= 3^12 falls back to the smallest monic
//! irreducible polynomial in canonical order, which is just as reproducible.

use super::poly::is_irreducible_over_prime;

/// Nonzero exponents below the leading term, constant term 1.
const BINARY: &[(u32, &[u32])] = &[
    (1, &[0]),
    (2, &[1, 0]),
    (3, &[1, 0]),
    (4, &[1, 0]),
    (5, &[2, 0]),
    (6, &[1, 0]),
    (7, &[1, 0]),
    (8, &[4, 3, 2, 0]),
    (9, &[4, 0]),
    (10, &[3, 0]),
    (11, &[2, 0]),
    (12, &[6, 4, 1, 0]),
    (13, &[4, 3, 1, 0]),
    (14, &[10, 6, 1, 0]),
    (15, &[1, 0]),
    (16, &[12, 3, 1, 0]),
    (17, &[3, 0]),
    (18, &[7, 0]),
    (19, &[5, 2, 1, 0]),
];

/// Conway polynomials over GF(3), coefficients low to high without the leading 1.
const TERNARY: &[(u32, &[u32])] = &[
    (1, &[1]),
    (2, &[2, 2]),
    (3, &[1, 2, 0]),
    (4, &[2, 0, 0, 2]),
    (5, &[1, 2, 0, 0, 0]),
    (6, &[2, 2, 1, 0, 2, 0]),
    (7, &[1, 0, 2, 0, 0, 0, 0]),
    (8, &[2, 2, 2, 0, 1, 2, 0, 0]),
];

pub(super) fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if p == 2 {
        if let Some((_, exps)) = BINARY.iter().find(|(d, _)| *d == m) {
            let mut coeffs = vec![0u32; m as usize + 1];
            coeffs[m as usize] = 1;
            for &e in exps.iter() {
                coeffs[e as usize] = 1;
            }
            return coeffs;
        }
    }
    if p == 3 {
        if let Some((_, low)) = TERNARY.iter().find(|(d, _)| *d == m) {
            let mut coeffs = low.to_vec();
            coeffs.push(1);
            return coeffs;
        }
    }
    smallest_irreducible(p, m)
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut v = idx;
        for _ in 0..m {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible_over_prime(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
