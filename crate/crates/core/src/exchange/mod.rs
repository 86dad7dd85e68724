//! Seeds, the doubled cluster exchange graph (three-dimensional
//! Calabi–Yau case) with its faces, the point group presentation and twist
//! loops.
//!
//! Directions are 0-based indices into the seed matrices.

mod chain;
mod graph;
mod point_group;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use chain::{conjugate_twists, dynkin_iso_chain, invert_conjugation, ChainResult};
pub use graph::{build_ceg, build_ceg_with, enumerate_faces, explore_ball, Ball, Edge, ExchangeGraph, Face, FaceKind, HexagonPolicy};
pub use point_group::{fundamental_presentation, PointGroup, SpanningTree, TwistLoop};

use crate::qp::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExchangeError {
    #[error("direction {direction} out of range for rank {n}")]
    InvalidDirection { direction: usize, n: usize },
    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix shapes do not match rank {0}")]
    Shape(usize),
    #[error("vertex cap {cap} exceeded ({explored} seeds found so far)")]
    CapExceeded { cap: usize, explored: usize },
    #[error("c-vector {column} of seed {vertex} is not sign-coherent")]
    SignIncoherent { vertex: usize, column: usize },
    #[error("graph inconsistent: {0}")]
    Inconsistent(alloc::string::String),
    #[error("mutation sequence does not reach a Dynkin quiver of the requested type")]
    NotDynkin,
    #[error("vertex {0} not in graph")]
    UnknownVertex(usize),
}

/// Fomin–Zelevinsky matrix mutation at `k` (0-based).
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
            };
        }
    }
    out
}

/// Exchange matrix `b` with the principal-coefficient matrix `c`, whose
/// columns are the c-vectors of the current seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    pub b: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
}

/// Canonical form of a seed under simultaneous relabelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(Vec<i64>);

impl SeedKey {
    /// Short hexadecimal digest used as a display label.
    pub fn digest(&self) -> alloc::string::String {
        // FNV-1a
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &x in &self.0 {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        alloc::format!("{:08x}", h >> 32)
    }
}

impl Seed {
    /// Seed with coefficient matrix `I`.
    pub fn initial(b: Vec<Vec<i64>>) -> Result<Self, ExchangeError> {
        let n = b.len();
        let c = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Seed::new(b, c)
    }

    pub fn new(b: Vec<Vec<i64>>, c: Vec<Vec<i64>>) -> Result<Self, ExchangeError> {
        let n = b.len();
        if b.iter().chain(&c).any(|r| r.len() != n) || c.len() != n {
            return Err(ExchangeError::Shape(n));
        }
        if (0..n).any(|i| (0..n).any(|j| b[i][j] != -b[j][i])) {
            return Err(ExchangeError::NotSkewSymmetric);
        }
        Ok(Seed { b, c })
    }

    /// Initial seed of the quiver with potential on `q`. The Ext quiver of
    /// the simples is the opposite quiver, so the exchange matrix is `-B(q)`.
    pub fn from_quiver(q: &Quiver) -> Self {
        Seed::initial(negated(&q.exchange_matrix())).expect("quiver matrices are skew-symmetric")
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// Quiver read off the exchange matrix (degree-1 arrows only).
    pub fn quiver(&self) -> Quiver {
        Quiver::from_exchange_matrix(&self.b)
    }

    /// Matrix mutation of `(B, C)` at `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed, ExchangeError> {
        let n = self.rank();
        if k >= n {
            return Err(ExchangeError::InvalidDirection { direction: k, n });
        }
        let b = &self.b;
        let mut c = self.c.clone();
        for (i, row) in c.iter_mut().enumerate() {
            let cik = self.c[i][k];
            for (j, x) in row.iter_mut().enumerate() {
                *x = if j == k {
                    -cik
                } else {
                    self.c[i][j] + cik.max(0) * b[k][j].max(0) - (-cik).max(0) * (-b[k][j]).max(0)
                };
            }
        }
        Ok(Seed { b: mutate_matrix(b, k), c })
    }

    /// First column whose entries do not share a sign.
    pub fn sign_incoherent_column(&self) -> Option<usize> {
        (0..self.rank()).find(|&j| {
            let pos = self.c.iter().any(|r| r[j] > 0);
            let neg = self.c.iter().any(|r| r[j] < 0);
            pos && neg
        })
    }

    /// The seed relabelled so that new index `p` is old index `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> Seed {
        let n = self.rank();
        Seed {
            b: (0..n).map(|i| (0..n).map(|j| self.b[order[i]][order[j]]).collect()).collect(),
            c: (0..n).map(|i| (0..n).map(|j| self.c[i][order[j]]).collect()).collect(),
        }
    }

    fn encode(&self) -> Vec<i64> {
        let n = self.rank();
        let mut out = Vec::with_capacity(2 * n * n + 1);
        out.push(n as i64);
        for j in 0..n {
            out.extend(self.c.iter().map(|r| r[j]));
        }
        for row in &self.b {
            out.extend_from_slice(row);
        }
        out
    }

    /// Canonical relabelling: the representative seed and the order with
    /// `representative = self.permuted(order)`. Indices are sorted by
    /// c-vector, then by their row of `B`; ties are broken by trying every
    /// arrangement of the tied indices.
    pub fn canonical(&self) -> (Seed, Vec<usize>) {
        let n = self.rank();
        let signature = |j: usize| -> (Vec<i64>, Vec<i64>) {
            let mut row = self.b[j].clone();
            row.sort_unstable();
            (self.c.iter().map(|r| r[j]).collect(), row)
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| signature(j));
        let mut classes: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for p in 1..=n {
            if p == n || signature(order[p]) != signature(order[start]) {
                if p - start > 1 {
                    classes.push((start, p));
                }
                start = p;
            }
        }
        if classes.is_empty() {
            return (self.permuted(&order), order);
        }
        let mut best = (self.permuted(&order).encode(), order.clone());
        search_ties(self, &mut order, &classes, 0, &mut best);
        let order = best.1;
        (self.permuted(&order), order)
    }

    pub fn key(&self) -> SeedKey {
        SeedKey(self.canonical().0.encode())
    }
}

fn search_ties(s: &Seed, order: &mut Vec<usize>, classes: &[(usize, usize)], at: usize, best: &mut (Vec<i64>, Vec<usize>)) {
    if at == classes.len() {
        let code = s.permuted(order).encode();
        if code < best.0 {
            *best = (code, order.clone());
        }
        return;
    }
    let (lo, hi) = classes[at];
    // every arrangement of order[lo..hi], by swapping into place
    fn rec(s: &Seed, order: &mut Vec<usize>, classes: &[(usize, usize)], at: usize, pos: usize, hi: usize, best: &mut (Vec<i64>, Vec<usize>)) {
        if pos == hi {
            search_ties(s, order, classes, at + 1, best);
            return;
        }
        for q in pos..hi {
            order.swap(pos, q);
            rec(s, order, classes, at, pos + 1, hi, best);
            order.swap(pos, q);
        }
    }
    rec(s, order, classes, at, lo, hi, best);
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B={:?} C={:?}", self.b, self.c)
    }
}

pub fn negated(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    b.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// Exchange matrix of an `n x n` zero matrix (all vertices isolated).
pub fn zero_matrix(n: usize) -> Vec<Vec<i64>> {
    vec![vec![0; n]; n]
}
