//! Matrix exponentials for the truncated mode.
//!
//! Full operators use scaling-and-squaring with the degree-13 Padé
//! approximant (Higham 2005). The path-ordering kernel only needs `U|0⟩` and
//! `U|1⟩`, which it gets from a truncated Taylor action on banded generators;
//! the two routes are cross-checked in tests.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371_920_351_148_152;

fn norm1(m: &CMatrix) -> f64 {
    m.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn scaled(m: &CMatrix, k: f64) -> CMatrix {
    m * Complex64::new(k, 0.0)
}

/// `exp(m)` for a square complex matrix.
pub fn expm(m: &CMatrix) -> CMatrix {
    assert!(m.is_square(), "expm needs a square matrix");
    let n = m.nrows();
    if n == 0 {
        return m.clone();
    }
    let norm = norm1(m);
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = scaled(m, 0.5f64.powi(squarings));

    let id = CMatrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| PADE13[k];

    let u_inner = scaled(&a6, b(13)) + scaled(&a4, b(11)) + scaled(&a2, b(9));
    let u_inner = &a6 * u_inner + scaled(&a6, b(7)) + scaled(&a4, b(5)) + scaled(&a2, b(3)) + scaled(&id, b(1));
    let u = &a * u_inner;

    let v_inner = scaled(&a6, b(12)) + scaled(&a4, b(10)) + scaled(&a2, b(8));
    let v = &a6 * v_inner + scaled(&a6, b(6)) + scaled(&a4, b(4)) + scaled(&a2, b(2)) + scaled(&id, b(0));

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is nonsingular inside θ13");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// Sparse generator stored by diagonals: `entries[i]` of the diagonal with
/// offset `k` is the matrix element `(i, i + k)`.
#[derive(Debug, Clone)]
pub struct BandedGenerator {
    dim: usize,
    diagonals: Vec<(isize, Vec<Complex64>)>,
}

impl BandedGenerator {
    pub fn new(dim: usize) -> Self {
        Self { dim, diagonals: Vec::new() }
    }

    /// Adds `coeff · f(i)` at `(i, i + offset)` for every in-range row `i`.
    pub fn with_diagonal(mut self, offset: isize, coeff: Complex64, f: impl Fn(usize) -> f64) -> Self {
        let values = (0..self.dim)
            .map(|i| {
                let j = i as isize + offset;
                if j < 0 || j >= self.dim as isize {
                    Complex64::new(0.0, 0.0)
                } else {
                    coeff * f(i)
                }
            })
            .collect();
        self.diagonals.push((offset, values));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        let mut out = CVector::zeros(self.dim);
        for (offset, values) in &self.diagonals {
            for (i, c) in values.iter().enumerate() {
                let j = i as isize + offset;
                if j >= 0 && (j as usize) < self.dim {
                    out[i] += c * v[j as usize];
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (offset, values) in &self.diagonals {
            for (i, c) in values.iter().enumerate() {
                let j = i as isize + offset;
                if j >= 0 && (j as usize) < self.dim {
                    m[(i, j as usize)] += c;
                }
            }
        }
        m
    }

    fn norm1(&self) -> f64 {
        let mut cols = vec![0.0; self.dim];
        for (offset, values) in &self.diagonals {
            for (i, c) in values.iter().enumerate() {
                let j = i as isize + offset;
                if j >= 0 && (j as usize) < self.dim {
                    cols[j as usize] += c.norm();
                }
            }
        }
        cols.into_iter().fold(0.0, f64::max)
    }
}

/// `exp(g)·v` by substepped Taylor series.
pub fn expm_apply(g: &BandedGenerator, v: &CVector) -> CVector {
    const THETA: f64 = 2.0;
    let substeps = (g.norm1() / THETA).ceil().max(1.0) as usize;
    let inv = 1.0 / substeps as f64;
    let mut acc = v.clone();
    for _ in 0..substeps {
        let mut term = acc.clone();
        let mut sum = acc.clone();
        for k in 1..=80 {
            term = g.apply(&term) * Complex64::new(inv / k as f64, 0.0);
            sum += &term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
        }
        acc = sum;
    }
    acc
}
