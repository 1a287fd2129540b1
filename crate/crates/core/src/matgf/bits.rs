//! Bit-packed elimination over GF(2).

use super::Matrix;

fn pack(m: &Matrix) -> (Vec<u64>, usize) {
    let words = m.cols().div_ceil(64);
    let mut out = vec![0u64; m.rows() * words];
    for (r, row) in m.row_iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !e.is_zero() {
                out[r * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    (out, words)
}

pub(super) fn rank_gf2(m: &Matrix) -> usize {
    let (mut data, words) = pack(m);
    let rows = m.rows();
    let mut rank = 0;
    for c in 0..m.cols() {
        if rank == rows {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows).find(|&r| data[r * words + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..words {
                data.swap(p * words + k, rank * words + k);
            }
        }
        let (head, tail) = data.split_at_mut((rank + 1) * words);
        let pivot = &head[rank * words..];
        for row in tail.chunks_exact_mut(words) {
            if row[w] & bit != 0 {
                for k in w..words {
                    row[k] ^= pivot[k];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{Elem, Field};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_rank_matches_generic() {
        let f = Field::gf(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let rows = rng.gen_range(1..90);
            let cols = rng.gen_range(1..150);
            let density = rng.gen_range(0.05..0.6);
            let m = Matrix::from_fn(&f, rows, cols, |_, _| Elem(rng.gen_bool(density) as u32));
            assert_eq!(rank_gf2(&m), m.rank_generic());
        }
    }
}
