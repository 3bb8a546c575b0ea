//! Tiny dense linear algebra over a prime field F_p, sized for 2×2 and
//! 3×3 matrices.

/// The prime field F_p.
#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub p: u64,
}

impl Gf {
    pub fn new(p: u64) -> Self {
        Gf { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of 0 in F_p");
        self.pow(a, self.p - 2)
    }
}

/// An n×n matrix over F_p with n ≤ 3, stored row-major in a fixed array.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub a: [u64; 9],
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= 3);
        Mat { n, a: [0; 9] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Mat, gf: &Gf) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = gf.add(acc, gf.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Column vector action: returns `self · v`.
    pub fn mul_vec(&self, v: &[u64; 3], gf: &Gf) -> [u64; 3] {
        let n = self.n;
        let mut out = [0; 3];
        for i in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc = gf.add(acc, gf.mul(self.get(i, k), v[k]));
            }
            out[i] = acc;
        }
        out
    }

    /// Row covector action: returns `f · self`.
    pub fn vec_mul(&self, f: &[u64; 3], gf: &Gf) -> [u64; 3] {
        let n = self.n;
        let mut out = [0; 3];
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc = gf.add(acc, gf.mul(f[k], self.get(k, j)));
            }
            out[j] = acc;
        }
        out
    }

    /// Rank over F_p by Gaussian elimination.
    pub fn rank(&self, gf: &Gf) -> usize {
        let n = self.n;
        let mut m = *self;
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m.get(r, col) % gf.p != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..n {
                let tmp = m.get(rank, j);
                m.set(rank, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = gf.inv(m.get(rank, col));
            for j in 0..n {
                m.set(rank, j, gf.mul(m.get(rank, j), inv));
            }
            for r in 0..n {
                if r != rank && m.get(r, col) % gf.p != 0 {
                    let f = m.get(r, col);
                    for j in 0..n {
                        let v = gf.sub(m.get(r, j), gf.mul(f, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss–Jordan; panics if singular.
    pub fn inverse(&self, gf: &Gf) -> Mat {
        let n = self.n;
        let mut m = *self;
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pr = (col..n)
                .find(|&r| m.get(r, col) % gf.p != 0)
                .expect("singular matrix");
            for j in 0..n {
                let tmp = m.get(col, j);
                m.set(col, j, m.get(pr, j));
                m.set(pr, j, tmp);
                let tmp = inv.get(col, j);
                inv.set(col, j, inv.get(pr, j));
                inv.set(pr, j, tmp);
            }
            let s = gf.inv(m.get(col, col));
            for j in 0..n {
                m.set(col, j, gf.mul(m.get(col, j), s));
                inv.set(col, j, gf.mul(inv.get(col, j), s));
            }
            for r in 0..n {
                if r != col && m.get(r, col) % gf.p != 0 {
                    let f = m.get(r, col);
                    for j in 0..n {
                        let v = gf.sub(m.get(r, j), gf.mul(f, m.get(col, j)));
                        m.set(r, j, v);
                        let v = gf.sub(inv.get(r, j), gf.mul(f, inv.get(col, j)));
                        inv.set(r, j, v);
                    }
                }
            }
        }
        inv
    }

    pub fn det(&self, gf: &Gf) -> u64 {
        match self.n {
            1 => self.get(0, 0) % gf.p,
            2 => gf.sub(
                gf.mul(self.get(0, 0), self.get(1, 1)),
                gf.mul(self.get(0, 1), self.get(1, 0)),
            ),
            3 => {
                let mut acc = 0;
                for (s, (i, j, k)) in [
                    (false, (0, 1, 2)),
                    (false, (1, 2, 0)),
                    (false, (2, 0, 1)),
                    (true, (0, 2, 1)),
                    (true, (2, 1, 0)),
                    (true, (1, 0, 2)),
                ] {
                    let t = gf.mul(
                        gf.mul(self.get(0, i), self.get(1, j)),
                        self.get(2, k),
                    );
                    acc = if s { gf.sub(acc, t) } else { gf.add(acc, t) };
                }
                acc
            }
            _ => unreachable!(),
        }
    }
}

/// Normalize a nonzero projective vector so its first nonzero entry is 1.
pub fn normalize_proj(v: &[u64; 3], n: usize, gf: &Gf) -> [u64; 3] {
    let mut out = [0; 3];
    let lead = (0..n).find(|&i| v[i] % gf.p != 0).expect("zero vector");
    let s = gf.inv(v[lead]);
    for i in 0..n {
        out[i] = gf.mul(v[i], s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let gf = Gf::new(7);
        let mut m = Mat::identity(3);
        m.set(0, 1, 3);
        m.set(1, 2, 5);
        m.set(0, 2, 6);
        let inv = m.inverse(&gf);
        assert_eq!(m.mul(&inv, &gf), Mat::identity(3));
        assert_eq!(m.rank(&gf), 3);
        let mut s = Mat::zero(3);
        s.set(0, 0, 1);
        s.set(0, 1, 2);
        s.set(1, 0, 3);
        s.set(1, 1, 6);
        assert_eq!(s.rank(&gf), 1);
        assert_eq!(s.det(&gf), 0);
    }

    #[test]
    fn determinant_matches_product() {
        let gf = Gf::new(5);
        let mut a = Mat::identity(3);
        a.set(0, 1, 2);
        a.set(2, 0, 3);
        let mut b = Mat::identity(3);
        b.set(1, 2, 4);
        b.set(0, 0, 2);
        let ab = a.mul(&b, &gf);
        assert_eq!(ab.det(&gf), gf.mul(a.det(&gf), b.det(&gf)));
    }
}
