//! Row reduction over the two ground fields. Everything above this module
//! talks to it through [`RingMatrix`](super::RingMatrix); the element types
//! here never leak out.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait Field {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp(pub u64);

impl Fp {
    pub(crate) fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.0;
            }
            a = a * a % self.0;
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.0 - 2)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Qf;

impl Field for Qf {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Reduce a row-major `rows x cols` buffer to reduced row echelon form in
/// place. Returns the pivot columns in increasing order.
pub(crate) fn rref<F: Field>(f: &F, rows: usize, cols: usize, data: &mut [F::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(&data[r * cols + c]);
        for k in c..cols {
            let v = f.mul(&data[r * cols + k], &inv);
            data[r * cols + k] = v;
        }
        for i in 0..rows {
            if i == r || f.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for k in c..cols {
                if f.is_zero(&data[r * cols + k]) {
                    continue;
                }
                let v = f.sub(&data[i * cols + k], &f.mul(&factor, &data[r * cols + k]));
                data[i * cols + k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank without keeping the reduced form around. Eliminates along the
/// shorter side.
pub(crate) fn rank<F: Field>(f: &F, rows: usize, cols: usize, data: &[F::E]) -> usize {
    if rows <= cols {
        let mut buf = data.to_vec();
        forward_eliminate(f, rows, cols, &mut buf)
    } else {
        let mut buf = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                buf.push(data[r * cols + c].clone());
            }
        }
        forward_eliminate(f, cols, rows, &mut buf)
    }
}

fn forward_eliminate<F: Field>(f: &F, rows: usize, cols: usize, data: &mut [F::E]) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(&data[r * cols + c]);
        for i in r + 1..rows {
            if f.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = f.mul(&data[i * cols + c], &inv);
            for k in c..cols {
                if f.is_zero(&data[r * cols + k]) {
                    continue;
                }
                let v = f.sub(&data[i * cols + k], &f.mul(&factor, &data[r * cols + k]));
                data[i * cols + k] = v;
            }
        }
        r += 1;
    }
    r
}

/// Column basis (row-major, `cols x k`) of the null space.
pub(crate) fn kernel<F: Field>(f: &F, rows: usize, cols: usize, data: &[F::E]) -> (usize, Vec<F::E>) {
    let mut buf = data.to_vec();
    let pivots = rref(f, rows, cols, &mut buf);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    let mut out = vec![f.zero(); cols * k];
    for (j, &fc) in free.iter().enumerate() {
        out[fc * k + j] = f.one();
        for (pr, &pc) in pivots.iter().enumerate() {
            let v = &buf[pr * cols + fc];
            if !f.is_zero(v) {
                out[pc * k + j] = f.sub(&f.zero(), v);
            }
        }
    }
    (k, out)
}

/// Indices of a maximal independent set of columns (the pivot columns).
pub(crate) fn pivot_columns<F: Field>(f: &F, rows: usize, cols: usize, data: &[F::E]) -> Vec<usize> {
    let mut buf = data.to_vec();
    rref(f, rows, cols, &mut buf)
}

/// One solution `x` (row-major `cols x nrhs`) of `a x = b`, if any exists.
pub(crate) fn solve<F: Field>(
    f: &F,
    rows: usize,
    cols: usize,
    a: &[F::E],
    nrhs: usize,
    b: &[F::E],
) -> Option<Vec<F::E>> {
    let w = cols + nrhs;
    let mut aug = Vec::with_capacity(rows * w);
    for r in 0..rows {
        aug.extend_from_slice(&a[r * cols..(r + 1) * cols]);
        aug.extend_from_slice(&b[r * nrhs..(r + 1) * nrhs]);
    }
    let pivots = rref(f, rows, w, &mut aug);
    if pivots.last().is_some_and(|&c| c >= cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols * nrhs];
    for (pr, &pc) in pivots.iter().enumerate() {
        for j in 0..nrhs {
            x[pc * nrhs + j] = aug[pr * w + cols + j].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_gf2() {
        // [[1,1],[1,1]] has rank 1 mod 2.
        assert_eq!(rank(&Fp(2), 2, 2, &[1, 1, 1, 1]), 1);
        assert_eq!(rank(&Fp(2), 2, 2, &[1, 1, 0, 1]), 2);
    }

    #[test]
    fn kernel_columns_are_annihilated() {
        let f = Fp(3);
        let a = [1, 2, 0, 1, 0, 1, 1, 2];
        let (k, basis) = kernel(&f, 2, 4, &a);
        assert_eq!(k, 2);
        for j in 0..k {
            for r in 0..2 {
                let mut acc = 0;
                for c in 0..4 {
                    acc = (acc + f.mul(&a[r * 4 + c], &basis[c * k + j])) % 3;
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        assert!(solve(&Fp(5), 1, 1, &[0], 1, &[1]).is_none());
        assert_eq!(solve(&Fp(5), 1, 1, &[2], 1, &[1]), Some(vec![3]));
    }
}
