//! Dense square matrices over a single cyclotomic field.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Mul, Sub};

use num_integer::Integer;

use super::{int, Cyclotomic, UniPoly};

/// `n × n` matrix, row-major, every entry stored at the same cyclotomic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    order: u32,
    entries: Vec<Cyclotomic>,
}

impl CMatrix {
    /// Builds a matrix from rows, embedding every entry into the least common order.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let entries: Vec<Cyclotomic> = rows.into_iter().flatten().collect();
        let order = entries.iter().fold(1u32, |m, e| m.lcm(&e.order()));
        Self::with_order(n, order, entries)
    }

    /// Same as [`from_rows`](Self::from_rows) but forces a common order, which
    /// must be a multiple of every entry's order.
    pub fn from_rows_in(order: u32, rows: Vec<Vec<Cyclotomic>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::with_order(n, order, rows.into_iter().flatten().collect())
    }

    fn with_order(n: usize, order: u32, entries: Vec<Cyclotomic>) -> Self {
        let entries = entries.into_iter().map(|e| e.embed(order)).collect();
        CMatrix { n, order, entries }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                let v = if k / n == k % n { 1 } else { 0 };
                Cyclotomic::from_int(v).embed(order)
            })
            .collect();
        CMatrix { n, order, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Hash of the canonical coefficient vectors of all entries.
    pub fn key_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.order.hash(&mut h);
        for e in &self.entries {
            e.coeffs().hash(&mut h);
        }
        h.finish()
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).map(|i| self.get(i, i).clone()).sum::<Cyclotomic>().embed(self.order)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.n, self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact Gaussian elimination; returns the rank and the determinant.
    fn eliminate(&self) -> (usize, Cyclotomic) {
        let n = self.n;
        let mut a: Vec<Vec<Cyclotomic>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        let mut det = Cyclotomic::one();
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                det = Cyclotomic::zero();
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                det = -det;
            }
            let pivot_inv = a[rank][col].inverse().expect("nonzero pivot");
            det = &det * &a[rank][col];
            for r in rank + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &pivot_inv;
                for c in col..n {
                    let delta = &factor * &a[rank][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn det(&self) -> Cyclotomic {
        self.eliminate().1.embed(self.order)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Characteristic polynomial `det(x·Id − M)`, monic of degree `n`
    /// (Faddeev–LeVerrier, exact over characteristic zero).
    pub fn charpoly(&self) -> UniPoly {
        let n = self.n;
        let mut coeffs = vec![Cyclotomic::zero(); n + 1];
        coeffs[n] = Cyclotomic::one();
        let mut m = CMatrix {
            n,
            order: self.order,
            entries: vec![Cyclotomic::zero().embed(self.order); n * n],
        };
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                let idx = i * n + i;
                next.entries[idx] = &next.entries[idx] + &coeffs[n - k + 1];
            }
            m = next;
            let t = (self * &m).trace();
            coeffs[n - k] = -t.scale(&int(k as i64).recip());
        }
        UniPoly::new(coeffs)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        if self.order != rhs.order {
            let order = self.order.lcm(&rhs.order);
            let a = CMatrix::with_order(self.n, order, self.entries.clone());
            let b = CMatrix::with_order(rhs.n, order, rhs.entries.clone());
            return &a * &b;
        }
        let n = self.n;
        let zero = Cyclotomic::zero().embed(self.order);
        let mut entries = vec![zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] = &entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        CMatrix {
            n,
            order: self.order,
            entries,
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let order = self.order.lcm(&rhs.order);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).embed(order))
            .collect();
        CMatrix {
            n: self.n,
            order,
            entries,
        }
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
