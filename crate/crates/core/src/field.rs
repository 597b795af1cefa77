//! Arithmetic and dense linear algebra over a prime field F_p.
//!
//! Residues are stored as `u32` and the modulus is capped at 2^31 so that a
//! product of two residues always fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Range, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of points an exhaustive evaluation may visit.
pub const DEFAULT_EVAL_BUDGET: u64 = 1 << 28;

/// A validated prime modulus `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const LIMIT: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::LIMIT).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn reduce_signed(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.0 as u64 {
            (s - self.0 as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_signed(t0))
    }

    pub fn element(self, value: u64) -> Fp {
        Fp {
            residue: self.reduce(value),
            prime: self,
        }
    }

    pub fn element_signed(self, value: i64) -> Fp {
        Fp {
            residue: self.reduce_signed(value),
            prime: self,
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u32,
    prime: Prime,
}

impl Fp {
    pub fn zero(prime: Prime) -> Self {
        Fp { residue: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        Fp {
            residue: 1 % prime.get(),
            prime,
        }
    }

    #[inline]
    pub fn residue(self) -> u32 {
        self.residue
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inverse(self) -> Option<Fp> {
        self.prime.inv(self.residue).map(|residue| Fp {
            residue,
            prime: self.prime,
        })
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp {
            residue: self.prime.pow(self.residue, exp),
            prime: self.prime,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

macro_rules! fp_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Fp {
            type Output = Fp;
            fn $method(self, rhs: Fp) -> Fp {
                assert_eq!(self.prime, rhs.prime, "mixed moduli");
                Fp {
                    residue: self.prime.$method(self.residue, rhs.residue),
                    prime: self.prime,
                }
            }
        }
    };
}

fp_binop!(Add, add);
fp_binop!(Sub, sub);
fp_binop!(Mul, mul);

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            residue: self.prime.neg(self.residue),
            prime: self.prime,
        }
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    prime: Prime,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, prime: Prime) -> Self {
        FpMatrix {
            rows,
            cols,
            prime,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, prime: Prime) -> Self {
        let mut m = Self::zeros(n, n, prime);
        for i in 0..n {
            m.entries[i * n + i] = 1 % prime.get();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_rows(rows: &[Vec<i64>], prime: Prime) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| prime.reduce_signed(x)))
            .collect();
        FpMatrix {
            rows: r,
            cols: c,
            prime,
            entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        prime: Prime,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, prime);
        for i in 0..rows {
            for j in 0..cols {
                m.entries[i * cols + j] = prime.reduce_signed(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn get(&self, r: usize, c: usize) -> Fp {
        Fp {
            residue: self.entries[r * self.cols + c],
            prime: self.prime,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: Fp) {
        assert_eq!(value.prime, self.prime, "mixed moduli");
        self.entries[r * self.cols + c] = value.residue;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        let p = self.prime;
        let mut out = FpMatrix::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] =
                        p.add(out.entries[idx], p.mul(a, rhs.entries[k * rhs.cols + j]));
                }
            }
        }
        out
    }
}

/// Determinant over F_p by Gaussian elimination. The 0x0 determinant is 1.
pub fn det_mod_p(m: &FpMatrix) -> Result<Fp> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let mut work = m.entries.clone();
    let mut scratch = Vec::with_capacity(m.rows);
    Ok(Fp {
        residue: det_in_place(&mut work, m.rows, m.prime, &mut scratch),
        prime: m.prime,
    })
}

/// Destructive determinant of the `n x n` row-major matrix in `a`.
///
/// Pivots on the first nonzero entry of each column and only touches the
/// nonzero columns of the pivot row, which matters for the sparse expanded
/// Laplacians evaluated in the point-counting hot loop.
pub(crate) fn det_in_place(a: &mut [u32], n: usize, prime: Prime, nonzero: &mut Vec<usize>) -> u32 {
    debug_assert_eq!(a.len(), n * n);
    let p = prime.get() as u64;
    let mut det: u32 = 1 % prime.get();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pivot_row != col {
            for j in col..n {
                a.swap(pivot_row * n + j, col * n + j);
            }
            det = prime.neg(det);
        }
        let pivot = a[col * n + col];
        det = prime.mul(det, pivot);
        let inv = prime.inv(pivot).expect("pivot is nonzero") as u64;
        nonzero.clear();
        nonzero.extend((col + 1..n).filter(|&j| a[col * n + j] != 0));
        for r in col + 1..n {
            let lead = a[r * n + col];
            if lead == 0 {
                continue;
            }
            let factor = p - (lead as u64 * inv) % p;
            for &j in nonzero.iter() {
                let idx = r * n + j;
                a[idx] = ((a[idx] as u64 + factor * a[col * n + j] as u64) % p) as u32;
            }
        }
    }
    det
}

/// The lexicographically ordered space F_p^n of assignments.
#[derive(Clone, Copy, Debug)]
pub struct AssignmentSpace {
    num_vars: usize,
    prime: Prime,
    total: u64,
}

/// Refuses spaces with more than `budget` points.
pub fn all_assignments(num_vars: usize, prime: Prime, budget: u64) -> Result<AssignmentSpace> {
    let required = (prime.get() as u128)
        .checked_pow(num_vars as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "exhaustive point enumeration",
            required,
            budget,
        });
    }
    Ok(AssignmentSpace {
        num_vars,
        prime,
        total: required as u64,
    })
}

impl AssignmentSpace {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The assignment at lexicographic position `index`; the first variable
    /// is the most significant digit.
    pub fn tuple_at(&self, mut index: u64) -> Vec<u32> {
        assert!(index < self.total, "index out of range");
        let p = self.prime.get() as u64;
        let mut out = vec![0u32; self.num_vars];
        for slot in out.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        out
    }

    pub fn iter(&self) -> AssignmentIter {
        self.iter_range(0..self.total)
    }

    pub fn iter_range(&self, range: Range<u64>) -> AssignmentIter {
        assert!(range.end <= self.total, "range out of bounds");
        let current = if range.start < range.end {
            self.tuple_at(range.start)
        } else {
            vec![0; self.num_vars]
        };
        AssignmentIter {
            current,
            remaining: range.end.saturating_sub(range.start),
            started: false,
            p: self.prime.get(),
        }
    }

    /// Disjoint contiguous index ranges of at most `chunk_len` points that
    /// together cover the space in order.
    pub fn chunks(&self, chunk_len: u64) -> Vec<Range<u64>> {
        let chunk_len = chunk_len.max(1);
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.total {
            let end = (start + chunk_len).min(self.total);
            out.push(start..end);
            start = end;
        }
        out
    }
}

/// Odometer over a contiguous range of an [`AssignmentSpace`].
pub struct AssignmentIter {
    current: Vec<u32>,
    remaining: u64,
    started: bool,
    p: u32,
}

impl AssignmentIter {
    /// Advances and borrows the next tuple without allocating.
    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.started {
            for slot in self.current.iter_mut().rev() {
                *slot += 1;
                if *slot < self.p {
                    break;
                }
                *slot = 0;
            }
        }
        self.started = true;
        Some(&self.current)
    }
}

impl Iterator for AssignmentIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_ref().map(<[u32]>::to_vec)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}
