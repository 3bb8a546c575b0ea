//! Dense square matrices over any [`Ring`], sized for representation
//! matrices (dimensions up to a few hundred).

use super::Ring;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T: Ring> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, rows }
    }

    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            rows: vec![vec![T::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &T) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let b = &other.rows[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[i][j] = out.rows[i][j].add(&other.rows[i][j]);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[i][j] = out.rows[i][j].sub(&other.rows[i][j]);
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[i][j] = out.rows[i][j].mul(c);
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.n {
            t = t.add(&self.rows[i][i]);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }
}
