//! Dense matrix arithmetic over exact rationals, sized for the oracle's
//! desk-scale instances.

use crate::exact::Rational;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn all_ones(n: usize) -> Self {
        RatMatrix { rows: n, cols: n, data: vec![Rational::one(); n * n] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * &other[(k, c)];
                    out[(r, c)] += &term;
                }
            }
        }
        out
    }

    pub fn hadamard(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, c: &Rational) -> RatMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// self += c * other
    pub fn scaled_add_assign(&mut self, c: &Rational, other: &RatMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += &(c * b);
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Rank of a rational matrix given as rows, by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for c in col..ncols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
