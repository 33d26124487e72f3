use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::field::{self, Fp, Qf};
use super::ring::{CoeffRing, Elem, GroundField};
use crate::error::{Error, Result};

/// Dense matrix over a [`CoeffRing`], acting on column vectors.
///
/// A map between free modules of ranks `c` and `r` is an `r x c` matrix, so
/// `g ∘ f` is `&g * &f`. Truncated-polynomial entries are stored as their
/// `m` coefficients, contiguously.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    data: Data,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Data {
    /// Residues mod p; stride `m` per entry.
    Mod(Vec<u64>),
    Rat(Vec<BigRational>),
}

macro_rules! ground_dispatch {
    ($mat:expr, |$f:ident, $v:ident| $body:expr) => {
        match (&$mat.data, $mat.ring.ground()) {
            (Data::Mod($v), GroundField::Prime(p)) => {
                let $f = Fp(p);
                $body
            }
            (Data::Rat($v), GroundField::Rationals) => {
                let $f = Qf;
                $body
            }
            _ => unreachable!("storage does not match ring"),
        }
    };
}

impl RingMatrix {
    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> Self {
        let data = match ring {
            CoeffRing::Rationals => Data::Rat(vec![BigRational::zero(); rows * cols]),
            _ => Data::Mod(vec![0; rows * cols * ring.degree()]),
        };
        RingMatrix { ring, rows, cols, data }
    }

    pub fn identity(ring: CoeffRing, n: usize) -> Self {
        Self::scalar(ring, n, 1)
    }

    /// `c` times the identity.
    pub fn scalar(ring: CoeffRing, n: usize, c: i64) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set_int(i, i, c);
        }
        m
    }

    /// Row-major integer entries, reduced into the ring (constant terms for
    /// truncated polynomials).
    pub fn from_ints(ring: CoeffRing, rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols, "entry count does not match shape");
        let mut m = Self::zeros(ring, rows, cols);
        for (k, &v) in vals.iter().enumerate() {
            m.set_int(k / cols, k % cols, v);
        }
        m
    }

    pub fn from_elems(ring: CoeffRing, rows: usize, cols: usize, vals: Vec<Elem>) -> Result<Self> {
        if vals.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                vals.len()
            )));
        }
        let mut m = Self::zeros(ring, rows, cols);
        for (k, v) in vals.into_iter().enumerate() {
            m.set(k / cols, k % cols, v)?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn stride(&self) -> usize {
        self.ring.degree()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Mod(v) => v.iter().all(|&x| x == 0),
            Data::Rat(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Elem {
        let k = r * self.cols + c;
        match (&self.data, self.ring) {
            (Data::Mod(v), CoeffRing::TruncatedPoly { m, .. }) => Elem::Poly(v[k * m..(k + 1) * m].to_vec()),
            (Data::Mod(v), _) => Elem::Prime(v[k]),
            (Data::Rat(v), _) => Elem::Rational(v[k].clone()),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, e: Elem) -> Result<()> {
        let k = r * self.cols + c;
        let ring = self.ring;
        match (&mut self.data, e) {
            (Data::Mod(v), Elem::Prime(x)) if ring.is_field() => {
                v[k] = x % ring.characteristic().unwrap();
            }
            (Data::Mod(v), Elem::Poly(coeffs)) if !ring.is_field() => {
                let m = ring.degree();
                if coeffs.len() != m {
                    return Err(Error::Shape(format!(
                        "polynomial entry has {} coefficients, ring needs {m}",
                        coeffs.len()
                    )));
                }
                let p = ring.characteristic().unwrap();
                for (i, c) in coeffs.into_iter().enumerate() {
                    v[k * m + i] = c % p;
                }
            }
            (Data::Rat(v), Elem::Rational(q)) => v[k] = q,
            (_, e) => return Err(Error::RingMismatch(format!("element {e:?} does not belong to {ring}"))),
        }
        Ok(())
    }

    /// Set an entry to the image of an integer.
    pub fn set_int(&mut self, r: usize, c: usize, val: i64) {
        let k = r * self.cols + c;
        let s = self.stride();
        match (&mut self.data, self.ring.characteristic()) {
            (Data::Mod(v), Some(p)) => {
                v[k * s..(k + 1) * s].iter_mut().for_each(|x| *x = 0);
                v[k * s] = val.rem_euclid(p as i64) as u64;
            }
            (Data::Rat(v), _) => v[k] = BigRational::from_integer(BigInt::from(val)),
            _ => unreachable!(),
        }
    }

    /// Multiply by the integer `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        let mut out = self.clone();
        match (&mut out.data, self.ring.characteristic()) {
            (Data::Mod(v), Some(p)) => {
                let c = c.rem_euclid(p as i64) as u64;
                v.iter_mut().for_each(|x| *x = *x * c % p);
            }
            (Data::Rat(v), _) => {
                let c = BigRational::from_integer(BigInt::from(c));
                v.iter_mut().for_each(|x| *x = &*x * &c);
            }
            _ => unreachable!(),
        }
        out
    }

    fn check_same(&self, other: &Self, what: &str) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{what}: {} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "matrix product")?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, k, w) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(self.ring, n, w);
        match (&self.data, &other.data, &mut out.data) {
            (Data::Mod(a), Data::Mod(b), Data::Mod(c)) => {
                let p = self.ring.characteristic().unwrap();
                let m = self.stride();
                if m == 1 {
                    for i in 0..n {
                        for l in 0..k {
                            let x = a[i * k + l];
                            if x == 0 {
                                continue;
                            }
                            let brow = &b[l * w..(l + 1) * w];
                            let crow = &mut c[i * w..(i + 1) * w];
                            for (cj, &bj) in crow.iter_mut().zip(brow) {
                                if bj != 0 {
                                    *cj = (*cj + x * bj) % p;
                                }
                            }
                        }
                    }
                } else {
                    for i in 0..n {
                        for l in 0..k {
                            let ae = &a[(i * k + l) * m..(i * k + l + 1) * m];
                            if ae.iter().all(|&x| x == 0) {
                                continue;
                            }
                            for j in 0..w {
                                let be = &b[(l * w + j) * m..(l * w + j + 1) * m];
                                let ce = &mut c[(i * w + j) * m..(i * w + j + 1) * m];
                                for (s, &x) in ae.iter().enumerate() {
                                    if x == 0 {
                                        continue;
                                    }
                                    for (t, &y) in be[..m - s].iter().enumerate() {
                                        ce[s + t] = (ce[s + t] + x * y) % p;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            (Data::Rat(a), Data::Rat(b), Data::Rat(c)) => {
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..w {
                            let y = &b[l * w + j];
                            if !y.is_zero() {
                                c[i * w + j] += x * y;
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    fn zip_with(&self, other: &Self, sub: bool) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let mut out = self.clone();
        match (&mut out.data, &other.data) {
            (Data::Mod(a), Data::Mod(b)) => {
                let p = self.ring.characteristic().unwrap();
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = if sub { (*x + p - y) % p } else { (*x + y) % p };
                }
            }
            (Data::Rat(a), Data::Rat(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    if sub {
                        *x -= y;
                    } else {
                        *x += y;
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ring, self.cols, self.rows);
        let s = self.stride();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (src, dst) = (r * self.cols + c, c * self.rows + r);
                match (&self.data, &mut out.data) {
                    (Data::Mod(a), Data::Mod(b)) => b[dst * s..(dst + 1) * s].copy_from_slice(&a[src * s..(src + 1) * s]),
                    (Data::Rat(a), Data::Rat(b)) => b[dst] = a[src].clone(),
                    _ => unreachable!(),
                }
            }
        }
        out
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        let mut out = Self::zeros(self.ring, nr, nc);
        for r in 0..nr {
            out.copy_row_segment(r, 0, self, r0 + r, c0, nc);
        }
        out
    }

    /// Overwrite the block at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert_eq!(self.ring, b.ring, "ring mismatch");
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            self.copy_row_segment(r0 + r, c0, b, r, 0, b.cols);
        }
    }

    fn copy_row_segment(&mut self, dr: usize, dc: usize, src: &Self, sr: usize, sc: usize, len: usize) {
        let s = self.stride();
        let d0 = (dr * self.cols + dc) * s;
        let s0 = (sr * src.cols + sc) * s;
        match (&mut self.data, &src.data) {
            (Data::Mod(a), Data::Mod(b)) => a[d0..d0 + len * s].copy_from_slice(&b[s0..s0 + len * s]),
            (Data::Rat(a), Data::Rat(b)) => a[d0..d0 + len].clone_from_slice(&b[s0..s0 + len]),
            _ => unreachable!(),
        }
    }

    /// Assemble a block matrix. `f(i, j)` returns the block for row group
    /// `i` and column group `j`, or `None` for zero.
    pub fn from_blocks(
        ring: CoeffRing,
        row_sizes: &[usize],
        col_sizes: &[usize],
        mut f: impl FnMut(usize, usize) -> Option<RingMatrix>,
    ) -> Self {
        let mut out = Self::zeros(ring, row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (i, &nr) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (j, &nc) in col_sizes.iter().enumerate() {
                if nr > 0 && nc > 0 {
                    if let Some(b) = f(i, j) {
                        assert_eq!(b.shape(), (nr, nc), "block ({i},{j}) has the wrong shape");
                        out.set_block(r0, c0, &b);
                    }
                }
                c0 += nc;
            }
            r0 += nr;
        }
        out
    }

    pub fn hstack(ring: CoeffRing, rows: usize, parts: &[RingMatrix]) -> Self {
        let sizes: Vec<usize> = parts.iter().map(|p| p.cols).collect();
        Self::from_blocks(ring, &[rows], &sizes, |_, j| Some(parts[j].clone()))
    }

    pub fn vstack(ring: CoeffRing, cols: usize, parts: &[RingMatrix]) -> Self {
        let sizes: Vec<usize> = parts.iter().map(|p| p.rows).collect();
        Self::from_blocks(ring, &sizes, &[cols], |i, _| Some(parts[i].clone()))
    }

    /// Block-diagonal matrix.
    pub fn block_diag(ring: CoeffRing, parts: &[RingMatrix]) -> Self {
        let rs: Vec<usize> = parts.iter().map(|p| p.rows).collect();
        let cs: Vec<usize> = parts.iter().map(|p| p.cols).collect();
        Self::from_blocks(ring, &rs, &cs, |i, j| (i == j).then(|| parts[i].clone()))
    }

    /// Kronecker product. With row-major vectorisation,
    /// `vec(A X B) = kron(A, B^T) vec(X)`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        assert_eq!(a.ring, b.ring, "ring mismatch");
        let mut out = Self::zeros(a.ring, a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let aij = a.block(i, j, 1, 1);
                if aij.is_zero() {
                    continue;
                }
                let scaled = Self::scalar_times(&aij, b);
                out.set_block(i * b.rows, j * b.cols, &scaled);
            }
        }
        out
    }

    /// `a` is 1x1; multiply every entry of `b` by it.
    fn scalar_times(a: &Self, b: &Self) -> Self {
        let mut out = b.clone();
        for r in 0..b.rows {
            for c in 0..b.cols {
                let e = a.mul_unchecked(&b.block(r, c, 1, 1));
                out.set_block(r, c, &e);
            }
        }
        out
    }

    /// Uniformly random matrix. Rational entries are small fractions.
    pub fn random<R: Rng + ?Sized>(ring: CoeffRing, rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut out = Self::zeros(ring, rows, cols);
        match (&mut out.data, ring.characteristic()) {
            (Data::Mod(v), Some(p)) => v.iter_mut().for_each(|x| *x = rng.gen_range(0..p)),
            (Data::Rat(v), _) => v.iter_mut().for_each(|x| {
                let num = rng.gen_range(-3i64..=3);
                let den = rng.gen_range(1i64..=2);
                *x = BigRational::new(num.into(), den.into());
            }),
            _ => unreachable!(),
        }
        out
    }

    /// A random matrix that is invertible over the ring.
    pub fn random_invertible<R: Rng + ?Sized>(ring: CoeffRing, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(ring, n, n, rng);
            if m.mod_x().rank() == n {
                return m;
            }
        }
    }

    // --- linearisation -------------------------------------------------

    /// The same map written over the ground field, using the coordinates
    /// `1, x, ..., x^{m-1}` for every free generator. Only meaningful for
    /// truncated polynomial coefficients.
    pub fn linearize(&self) -> Result<Self> {
        if self.ring.is_field() {
            return Err(Error::NotTruncated(self.ring));
        }
        Ok(self.ground_matrix())
    }

    /// [`linearize`](Self::linearize) for truncated rings, the matrix itself
    /// for fields.
    pub fn ground_matrix(&self) -> Self {
        let CoeffRing::TruncatedPoly { p, m } = self.ring else {
            return self.clone();
        };
        let Data::Mod(v) = &self.data else { unreachable!() };
        let ground = CoeffRing::PrimeField { p };
        let mut out = Self::zeros(ground, self.rows * m, self.cols * m);
        let Data::Mod(o) = &mut out.data else { unreachable!() };
        let oc = self.cols * m;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = &v[(r * self.cols + c) * m..(r * self.cols + c + 1) * m];
                for (k, &a) in e.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    // a x^k sends x^l to x^{k+l}
                    for l in 0..m - k {
                        o[(r * m + k + l) * oc + c * m + l] = a;
                    }
                }
            }
        }
        out
    }

    /// Ground-field coordinates of all entries as one column, in row-major
    /// entry order with the `m` coefficients of each entry adjacent.
    pub fn to_ground_vector(&self) -> Self {
        let n = self.rows * self.cols * self.stride();
        RingMatrix { ring: self.ring.ground_ring(), rows: n, cols: 1, data: self.data.clone() }
    }

    /// Inverse of [`to_ground_vector`](Self::to_ground_vector).
    pub fn from_ground_vector(ring: CoeffRing, rows: usize, cols: usize, v: &Self) -> Self {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols * ring.degree(), "coordinate count does not match shape");
        assert_eq!(v.ring, ring.ground_ring());
        RingMatrix { ring, rows, cols, data: v.data.clone() }
    }

    /// Reduction modulo `x` (the constant terms), over the ground field.
    pub fn mod_x(&self) -> Self {
        let CoeffRing::TruncatedPoly { p, m } = self.ring else {
            return self.clone();
        };
        let Data::Mod(v) = &self.data else { unreachable!() };
        RingMatrix {
            ring: CoeffRing::PrimeField { p },
            rows: self.rows,
            cols: self.cols,
            data: Data::Mod(v.iter().step_by(m).copied().collect()),
        }
    }

    /// Ground-field matrix of multiplication by `x^k` on `R^n`.
    pub fn x_power_operator(ring: CoeffRing, n: usize, k: usize) -> Self {
        match ring {
            CoeffRing::TruncatedPoly { m, .. } => {
                let mut e = vec![0u64; m];
                if k < m {
                    e[k] = 1;
                }
                let mut xk = Self::zeros(ring, n, n);
                for i in 0..n {
                    xk.set(i, i, Elem::Poly(e.clone())).unwrap();
                }
                xk.ground_matrix()
            }
            _ => Self::scalar(ring, n, if k == 0 { 1 } else { 0 }),
        }
    }

    // --- row reduction (always over the ground field) -------------------

    /// Ground-field rank of the map (the GF(p)-dimension of its image for
    /// truncated rings).
    pub fn rank(&self) -> usize {
        let g = self.ground_matrix();
        ground_dispatch!(g, |f, v| field::rank(&f, g.rows, g.cols, v))
    }

    /// Column basis of the kernel, over the ground field.
    pub fn kernel_basis(&self) -> Self {
        let g = self.ground_matrix();
        let (k, data) = match (&g.data, g.ring.ground()) {
            (Data::Mod(v), GroundField::Prime(p)) => {
                let (k, d) = field::kernel(&Fp(p), g.rows, g.cols, v);
                (k, Data::Mod(d))
            }
            (Data::Rat(v), GroundField::Rationals) => {
                let (k, d) = field::kernel(&Qf, g.rows, g.cols, v);
                (k, Data::Rat(d))
            }
            _ => unreachable!(),
        };
        RingMatrix { ring: g.ring, rows: g.cols, cols: k, data }
    }

    /// Column basis of the image (a subset of the ground-field columns).
    pub fn image_basis(&self) -> Self {
        let g = self.ground_matrix();
        let piv = g.pivot_columns();
        g.select_columns(&piv)
    }

    pub(crate) fn pivot_columns(&self) -> Vec<usize> {
        let g = self.ground_matrix();
        ground_dispatch!(g, |f, v| field::pivot_columns(&f, g.rows, g.cols, v))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let parts: Vec<RingMatrix> = cols.iter().map(|&c| self.block(0, c, self.rows, 1)).collect();
        Self::hstack(self.ring, self.rows, &parts)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let parts: Vec<RingMatrix> = rows.iter().map(|&r| self.block(r, 0, 1, self.cols)).collect();
        Self::vstack(self.ring, self.cols, &parts)
    }

    /// One exact solution `X` of `self * X = rhs`, or `None` if the system
    /// is inconsistent. Truncated rings are solved column by column on the
    /// linearised system; every ground-field solution is a module solution.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>> {
        self.check_same(rhs, "solve")?;
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "system has {} rows, right-hand side {}",
                self.rows, rhs.rows
            )));
        }
        let g = self.ground_matrix();
        let m = self.stride();
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            let b = rhs.block(0, j, rhs.rows, 1).to_ground_vector();
            let Some(x) = g.solve_ground(&b) else {
                return Ok(None);
            };
            cols.push(RingMatrix::from_ground_vector(self.ring, self.cols, 1, &x));
        }
        let _ = m;
        Ok(Some(Self::hstack(self.ring, self.cols, &cols)))
    }

    /// Solve over the ground field; `self` and `b` must be ground matrices.
    pub(crate) fn solve_ground(&self, b: &Self) -> Option<Self> {
        debug_assert!(self.ring.is_field());
        let (rows, cols, nrhs) = (self.rows, self.cols, b.cols);
        let data = match (&self.data, &b.data, self.ring.ground()) {
            (Data::Mod(a), Data::Mod(bv), GroundField::Prime(p)) => {
                Data::Mod(field::solve(&Fp(p), rows, cols, a, nrhs, bv)?)
            }
            (Data::Rat(a), Data::Rat(bv), GroundField::Rationals) => {
                Data::Rat(field::solve(&Qf, rows, cols, a, nrhs, bv)?)
            }
            _ => unreachable!(),
        };
        Some(RingMatrix { ring: self.ring, rows: cols, cols: nrhs, data })
    }

    /// Inverse over the ring, if the matrix is invertible.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols || self.mod_x().rank() != self.rows {
            return None;
        }
        self.solve(&Self::identity(self.ring, self.rows)).ok().flatten()
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMatrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                match self.entry(r, c) {
                    Elem::Prime(x) => write!(f, "{x}")?,
                    Elem::Rational(q) => write!(f, "{q}")?,
                    Elem::Poly(cs) => write!(f, "{cs:?}")?,
                }
            }
        }
        write!(f, "]")
    }
}

impl Mul for &RingMatrix {
    type Output = RingMatrix;
    fn mul(self, rhs: &RingMatrix) -> RingMatrix {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        self.mul_unchecked(rhs)
    }
}

impl Add for &RingMatrix {
    type Output = RingMatrix;
    fn add(self, rhs: &RingMatrix) -> RingMatrix {
        self.zip_with(rhs, false)
    }
}

impl Sub for &RingMatrix {
    type Output = RingMatrix;
    fn sub(self, rhs: &RingMatrix) -> RingMatrix {
        self.zip_with(rhs, true)
    }
}

impl Neg for &RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        self.scale_int(-1)
    }
}
