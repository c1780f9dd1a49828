/// Dense matrix over `F_p`, row-major, entries kept in `[0, p)`.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank over `F_p` by Gaussian elimination; consumes the matrix.
    pub fn rank_mod(mut self, p: u32) -> usize {
        let p64 = p as u64;
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(rank, piv);
            let inv = inverse_mod(self.get(rank, c) as u64, p64);
            let cols = self.cols;
            let (head, tail) = self.data.split_at_mut((rank + 1) * cols);
            let pivot_row = &mut head[rank * cols..];
            for v in pivot_row[c..].iter_mut() {
                *v = ((*v as u64 * inv) % p64) as u32;
            }
            for row in tail.chunks_mut(cols) {
                let f = row[c] as u64;
                if f == 0 {
                    continue;
                }
                let neg = p64 - f;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = ((*x as u64 + neg * y as u64) % p64) as u32;
                }
            }
            rank += 1;
        }
        rank
    }
}

pub fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `C(m, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut m: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || m > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..ki {
            num = num * ((mi - j) % p) % p;
            den = den * ((j + 1) % p) % p;
        }
        acc = acc * num % p * inverse_mod(den, p) % p;
        m /= p;
        k /= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn from_rows(rows: &[Vec<u32>]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        let m = from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank_mod(7), 2);
        // Over F_3 the second row is a multiple of the first after reduction.
        let m = from_rows(&[vec![1, 1], vec![1, 4]]);
        assert_eq!(m.clone().rank_mod(3), 1);
        assert_eq!(m.rank_mod(5), 2);
    }

    #[test]
    fn lucas_matches_direct() {
        for p in [3u64, 5, 7] {
            for m in 0..60u64 {
                for k in 0..=m {
                    let direct = crate::arith::binomial(m as i64, k as u32) % num_bigint::BigInt::from(p);
                    assert_eq!(num_bigint::BigInt::from(binomial_mod(m, k, p)), direct);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rank_is_invariant_under_row_order(seed in 0u64..1000, rows in 1usize..12, cols in 1usize..12) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let p = 5u32;
            let mut data: Vec<Vec<u32>> = (0..rows)
                .map(|_| (0..cols).map(|_| rand::Rng::gen_range(&mut rng, 0..p)).collect())
                .collect();
            let r1 = from_rows(&data).rank_mod(p);
            data.shuffle(&mut rng);
            let r2 = from_rows(&data).rank_mod(p);
            prop_assert_eq!(r1, r2);
            prop_assert!(r1 <= rows.min(cols));
        }
    }
}
