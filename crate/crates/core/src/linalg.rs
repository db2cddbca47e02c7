//! Matrices over `F_p` and the hom-sets of the category of `F_p`-vector
//! spaces of dimension at most `d`.
//!
//! A `rows x cols` matrix is a linear map `F_p^cols -> F_p^rows`. Matrices of
//! a fixed shape are indexed by reading the row-major entries as a base-`p`
//! number, first entry most significant, so index order is lexicographic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::{pow_u128, Caps};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::invalid(format!("entry {} not reduced mod {}", e, p)));
        }
        Ok(FpMatrix { p, rows, cols, entries })
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// `[I_small; 0]`: the standard inclusion `F_p^small -> F_p^big`.
    pub fn inclusion(p: u32, small: usize, big: usize) -> Self {
        let mut m = Self::zero(p, big, small);
        for i in 0..small.min(big) {
            m.entries[i * small + i] = 1;
        }
        m
    }

    /// `[I_small 0]`: the standard projection `F_p^big -> F_p^small`.
    pub fn projection(p: u32, big: usize, small: usize) -> Self {
        let mut m = Self::zero(p, small, big);
        for i in 0..small.min(big) {
            m.entries[i * big + i] = 1;
        }
        m
    }

    pub fn from_index(p: u32, rows: usize, cols: usize, mut index: usize) -> Self {
        let mut entries = vec![0u32; rows * cols];
        for e in entries.iter_mut().rev() {
            *e = (index % p as usize) as u32;
            index /= p as usize;
        }
        FpMatrix { p, rows, cols, entries }
    }

    pub fn index(&self) -> usize {
        self.entries.iter().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut entries = vec![0u32; self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u64 * other.get(k, c) as u64;
                }
                entries[r * other.cols + c] = (acc % p) as u32;
            }
        }
        FpMatrix { p: self.p, rows: self.rows, cols: other.cols, entries }
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| ((0..self.cols).map(|c| self.get(r, c) as u64 * v[c] as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    pub fn rank(&self) -> usize {
        let p = self.p as u64;
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u64).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = mod_inverse(m[rank][col], p);
            for c in 0..self.cols {
                m[rank][c] = m[rank][c] * inv % p;
            }
            for r in 0..self.rows {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..self.cols {
                        m[r][c] = (m[r][c] + p * p - f * m[rank][c]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Compact `rows x cols:e,e,...` form used in presheaf files.
    pub fn key(&self) -> String {
        let entries: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        format!("{}x{}:{}", self.rows, self.cols, entries.join(","))
    }

    pub fn parse_key(p: u32, key: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed matrix key {:?}", key));
        let (shape, body) = key.split_once(':').ok_or_else(bad)?;
        let (r, c) = shape.split_once('x').ok_or_else(bad)?;
        let rows: usize = r.trim().parse().map_err(|_| bad())?;
        let cols: usize = c.trim().parse().map_err(|_| bad())?;
        let entries = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|e| e.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        FpMatrix::new(p, rows, cols, entries)
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Number of `rows x cols` matrices over `F_p`.
pub fn count_matrices(p: u32, rows: usize, cols: usize) -> u128 {
    pow_u128(p as u128, (rows * cols) as u32)
}

/// All linear maps `F_p^j -> F_p^k` (`k x j` matrices), lexicographic.
pub fn enumerate_linear_maps(p: u32, j: usize, k: usize, caps: &Caps) -> Result<Vec<FpMatrix>> {
    crate::group::require_prime(p)?;
    let count = count_matrices(p, k, j);
    caps.check_enum(&format!("linear maps F_{}^{} -> F_{}^{}", p, j, p, k), count)?;
    Ok((0..count as usize).map(|i| FpMatrix::from_index(p, k, j, i)).collect())
}

/// Materialized hom-sets of `F_p`-vector spaces of dimension `0..=d`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    p: u32,
    d: usize,
    /// `maps[k][j]`: all `k x j` matrices in index order.
    maps: Vec<Vec<Vec<FpMatrix>>>,
}

impl HomSpace {
    pub fn new(p: u32, d: usize, caps: &Caps) -> Result<Self> {
        let mut maps = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut row = Vec::with_capacity(d + 1);
            for j in 0..=d {
                row.push(enumerate_linear_maps(p, j, k, caps)?);
            }
            maps.push(row);
        }
        Ok(HomSpace { p, d, maps })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn top(&self) -> usize {
        self.d
    }

    /// Linear maps `F_p^j -> F_p^k`.
    pub fn maps(&self, j: usize, k: usize) -> &[FpMatrix] {
        &self.maps[k][j]
    }

    pub fn endomorphisms(&self, k: usize) -> &[FpMatrix] {
        &self.maps[k][k]
    }
}
