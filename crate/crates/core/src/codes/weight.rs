//! Exhaustive minimum-weight search over a code, q-ary Gray code order.
//!
//! The basis is `[excluded rows; free rows]`. Words whose free coefficients
//! are all zero lie in the excluded subspace and are skipped. Each step
//! changes a single coefficient, so a codeword update is one axpy.

use rayon::prelude::*;

use super::WeightError;
use crate::galois::{Elem, Field};

pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Hamming,
    /// Vectors `(x | y)` of length `2n`; counts positions with `(x_j, y_j) != (0, 0)`.
    Symplectic,
}

fn weight(kind: WeightKind, v: &[Elem]) -> usize {
    match kind {
        WeightKind::Hamming => v.iter().filter(|e| !e.is_zero()).count(),
        WeightKind::Symplectic => {
            let n = v.len() / 2;
            (0..n).filter(|&j| !v[j].is_zero() || !v[n + j].is_zero()).count()
        }
    }
}

pub(crate) fn words(q: u64, k: usize) -> u128 {
    (q as u128).saturating_pow(k as u32)
}

/// Minimum weight over the span of `rows` minus the span of the first
/// `excluded` rows. `None` when there is nothing outside that subspace.
pub(crate) fn min_outside(
    field: &Field,
    rows: &[Vec<Elem>],
    excluded: usize,
    kind: WeightKind,
    budget: u64,
) -> Result<Option<usize>, WeightError> {
    min_outside_sharded(field, rows, excluded, kind, budget, None)
}

pub(crate) fn min_outside_sharded(
    field: &Field,
    rows: &[Vec<Elem>],
    excluded: usize,
    kind: WeightKind,
    budget: u64,
    top_digits: Option<usize>,
) -> Result<Option<usize>, WeightError> {
    let k = rows.len();
    let q = field.order() as u64;
    let total = words(q, k);
    if total > budget as u128 {
        return Err(WeightError::Exceeded(total));
    }
    if excluded == k {
        return Ok(None);
    }
    let len = rows.first().map_or(0, |r| r.len());
    if q == 2 && len <= 128 {
        return Ok(Some(binary(rows, excluded, kind, top_digits)));
    }
    // Free rows first so the top digits (shard selectors) are excluded rows
    // when there are any; then shards never need the free-count bookkeeping.
    let mut order: Vec<&Vec<Elem>> = rows[excluded..].iter().collect();
    order.extend(rows[..excluded].iter());
    let free = k - excluded;
    let top = top_digits.unwrap_or_else(|| default_top(q, k)).min(k);
    let low = k - top;
    let shards = words(q, top) as u64;

    // sigma: cyclic order on field elements by index; step v -> v+1 adds delta[v]
    let elems: Vec<Elem> = field.elements().collect();
    let delta: Vec<Elem> = (0..q as usize).map(|v| field.sub(elems[(v + 1) % q as usize], elems[v])).collect();

    let best = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut word = vec![Elem::ZERO; len];
            let mut nonzero_free = 0usize;
            let mut rest = shard;
            for (i, row) in order.iter().enumerate().skip(low) {
                let v = (rest % q) as usize;
                rest /= q;
                if v != 0 {
                    field.axpy(&mut word, row, elems[v]);
                    if i < free {
                        nonzero_free += 1;
                    }
                }
            }
            let mut best = usize::MAX;
            if nonzero_free > 0 {
                best = weight(kind, &word);
            }
            let mut gray = vec![0usize; low];
            let steps = words(q, low) as u64;
            for t in 1..steps {
                // digit that changes: number of trailing (q-1) digits of t-1
                let mut i = 0;
                let mut x = t - 1;
                while x % q == q - 1 {
                    x /= q;
                    i += 1;
                }
                let old = gray[i];
                let new = (old + 1) % q as usize;
                gray[i] = new;
                field.axpy(&mut word, order[i], delta[old]);
                if i < free {
                    match (old == 0, new == 0) {
                        (true, false) => nonzero_free += 1,
                        (false, true) => nonzero_free -= 1,
                        _ => {}
                    }
                }
                if nonzero_free > 0 {
                    best = best.min(weight(kind, &word));
                }
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    Ok((best != usize::MAX).then_some(best))
}

fn default_top(q: u64, k: usize) -> usize {
    // about 256 shards, but keep at least a few low digits
    let mut top = 0;
    while top + 2 < k && words(q, top) < 256 {
        top += 1;
    }
    top
}

fn binary(rows: &[Vec<Elem>], excluded: usize, kind: WeightKind, top_digits: Option<usize>) -> usize {
    let len = rows[0].len();
    let pack = |r: &Vec<Elem>| -> u128 {
        let mut bits = 0u128;
        for (j, e) in r.iter().enumerate() {
            if !e.is_zero() {
                bits |= 1 << j;
            }
        }
        bits
    };
    let half = len / 2;
    let mask_lo: u128 = if half == 0 { 0 } else { (1u128 << half) - 1 };
    let wt = |w: u128| -> u32 {
        match kind {
            WeightKind::Hamming => w.count_ones(),
            WeightKind::Symplectic => ((w & mask_lo) | (w >> half)).count_ones(),
        }
    };
    let k = rows.len();
    let free = k - excluded;
    let mut order: Vec<u128> = rows[excluded..].iter().map(pack).collect();
    order.extend(rows[..excluded].iter().map(pack));
    let top = top_digits.unwrap_or_else(|| default_top(2, k)).min(k);
    let low = k - top;
    (0..1u64 << top)
        .into_par_iter()
        .map(|shard| {
            let mut word = 0u128;
            let mut free_mask = 0u64;
            for i in 0..top {
                if shard >> i & 1 == 1 {
                    word ^= order[low + i];
                    if low + i < free {
                        free_mask ^= 1 << (low + i);
                    }
                }
            }
            let mut best = u32::MAX;
            if free_mask != 0 {
                best = wt(word);
            }
            let mut gray_free = free_mask;
            for t in 1u64..1 << low {
                let i = (t - 1).trailing_ones() as usize;
                word ^= order[i];
                if i < free {
                    gray_free ^= 1 << i;
                }
                if gray_free != 0 {
                    best = best.min(wt(word));
                }
            }
            best
        })
        .min()
        .map_or(usize::MAX, |b| b as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(field: &Field, rows: &[Vec<Elem>], excluded: usize, kind: WeightKind) -> Option<usize> {
        let q = field.order() as u64;
        let k = rows.len();
        let len = rows[0].len();
        let mut best = None;
        for idx in 0..q.pow(k as u32) {
            let mut word = vec![Elem::ZERO; len];
            let mut v = idx;
            let mut outside = false;
            for (i, row) in rows.iter().enumerate() {
                let c = Elem((v % q) as u32);
                v /= q;
                if !c.is_zero() && i >= excluded {
                    outside = true;
                }
                field.axpy(&mut word, row, c);
            }
            if outside {
                let w = weight(kind, &word);
                best = Some(best.map_or(w, |b: usize| b.min(w)));
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_for_any_shard_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = Field::gf(q.0, q.1).unwrap();
            for _ in 0..15 {
                let k = rng.gen_range(1..6);
                let len = 2 * rng.gen_range(1..6);
                let excluded = rng.gen_range(0..=k);
                let rows: Vec<Vec<Elem>> =
                    (0..k).map(|_| (0..len).map(|_| Elem(rng.gen_range(0..f.order()))).collect()).collect();
                for kind in [WeightKind::Hamming, WeightKind::Symplectic] {
                    let expect = brute(&f, &rows, excluded, kind);
                    for top in [Some(0), Some(1), Some(k), None] {
                        let got = min_outside_sharded(&f, &rows, excluded, kind, DEFAULT_BUDGET, top).unwrap();
                        assert_eq!(got, expect, "q={q:?} k={k} excluded={excluded} top={top:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::gf(3, 1).unwrap();
        let rows = vec![vec![Elem::ONE; 4]; 5];
        assert_eq!(min_outside(&f, &rows, 0, WeightKind::Hamming, 100), Err(WeightError::Exceeded(243)));
    }
}
