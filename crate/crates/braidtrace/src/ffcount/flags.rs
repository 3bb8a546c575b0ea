//! Flag varieties of GL₂ and GL₃ over F_q as finite incidence structures:
//! flag enumeration, the adjacency relation O_s for each simple reflection,
//! the group action on flags, and unipotent-element enumeration by Jordan
//! type.

use std::collections::{HashMap, HashSet};

use super::linalg::{normalize_proj, Gf, Mat};

/// A full flag: for n = 2, a line in F_q² (the plane part is unused);
/// for n = 3, a line contained in a plane in F_q³. Lines are normalized
/// projective column vectors; planes are normalized projective covectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Flag {
    pub line: [u64; 3],
    pub coplane: [u64; 3],
}

/// The flag variety of GL_n(F_q) (n = 2 or 3) with fast index lookup.
pub struct FlagGeom {
    pub n: usize,
    pub gf: Gf,
    pub flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl FlagGeom {
    pub fn new(n: usize, q: u64) -> Self {
        assert!(n == 2 || n == 3);
        let gf = Gf::new(q);
        let mut flags = Vec::new();
        let lines = proj_points(n, &gf);
        if n == 2 {
            for l in &lines {
                flags.push(Flag {
                    line: *l,
                    coplane: [0; 3],
                });
            }
        } else {
            let coplanes = proj_points(n, &gf);
            for l in &lines {
                for f in &coplanes {
                    // incidence: the line lies in the plane ker(f)
                    let dot = (0..n).fold(0, |acc, i| gf.add(acc, gf.mul(f[i], l[i])));
                    if dot == 0 {
                        flags.push(Flag {
                            line: *l,
                            coplane: *f,
                        });
                    }
                }
            }
        }
        let index = flags.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        FlagGeom { n, gf, flags, index }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn index_of(&self, f: &Flag) -> usize {
        self.index[f]
    }

    /// Adjacency matrix of the relation O_s: generator 1 moves the line
    /// (within the plane, for n = 3); generator 2 moves the plane around
    /// the line.
    pub fn adjacency(&self, s: usize) -> Vec<Vec<u128>> {
        let m = self.len();
        let mut out = vec![vec![0u128; m]; m];
        for (i, a) in self.flags.iter().enumerate() {
            for (j, b) in self.flags.iter().enumerate() {
                let adj = if self.n == 2 {
                    a.line != b.line
                } else {
                    match s {
                        1 => a.coplane == b.coplane && a.line != b.line,
                        2 => a.line == b.line && a.coplane != b.coplane,
                        _ => unreachable!(),
                    }
                };
                if adj {
                    out[i][j] = 1;
                }
            }
        }
        out
    }

    /// Image flag index under g, given g and its inverse.
    pub fn act(&self, g: &Mat, g_inv: &Mat, f: usize) -> usize {
        let fl = &self.flags[f];
        let line = normalize_proj(&g.mul_vec(&fl.line, &self.gf), self.n, &self.gf);
        let coplane = if self.n == 3 {
            normalize_proj(&g_inv.vec_mul(&fl.coplane, &self.gf), self.n, &self.gf)
        } else {
            [0; 3]
        };
        self.index_of(&Flag { line, coplane })
    }

    /// A basis matrix adapted to the flag: its columns span the flag steps.
    fn adapted_basis(&self, f: &Flag) -> Mat {
        let n = self.n;
        let gf = &self.gf;
        let mut cols: Vec<[u64; 3]> = vec![f.line];
        if n == 3 {
            // second column: a point of the plane independent of the line
            let plane_pt = proj_points(n, gf)
                .into_iter()
                .find(|v| {
                    let dot = (0..n).fold(0, |acc, i| gf.add(acc, gf.mul(f.coplane[i], v[i])));
                    dot == 0 && *v != f.line
                })
                .expect("plane has ≥ 2 projective points");
            cols.push(plane_pt);
        }
        // complete to a basis with standard vectors
        for k in 0..n {
            if cols.len() == n {
                break;
            }
            let mut e = [0u64; 3];
            e[k] = 1;
            let mut m = Mat::zero(n);
            for (j, c) in cols.iter().chain(std::iter::once(&e)).enumerate() {
                for i in 0..n {
                    m.set(i, j, c[i]);
                }
            }
            // fill any leftover columns with zero; rank check only on used ones
            if m.rank(gf) == cols.len() + 1 {
                cols.push(e);
            }
        }
        assert_eq!(cols.len(), n);
        let mut m = Mat::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    /// All unipotent elements of GL_n(F_q), paired with their Jordan type
    /// (a partition of n). Every unipotent fixes a flag, so conjugating the
    /// unitriangular group by adapted bases of all flags covers the lot.
    pub fn unipotents(&self) -> Vec<(Mat, Vec<usize>)> {
        let n = self.n;
        let gf = &self.gf;
        let q = gf.p;
        let mut seen: HashSet<Mat> = HashSet::new();
        let mut out = Vec::new();
        for f in &self.flags {
            let b = self.adapted_basis(f);
            let b_inv = b.inverse(gf);
            let entries = if n == 2 { 1 } else { 3 };
            for code in 0..q.pow(entries) {
                let mut u = Mat::identity(n);
                let mut c = code;
                if n == 2 {
                    u.set(0, 1, c % q);
                } else {
                    u.set(0, 1, c % q);
                    c /= q;
                    u.set(0, 2, c % q);
                    c /= q;
                    u.set(1, 2, c % q);
                }
                let g = b.mul(&u, gf).mul(&b_inv, gf);
                if seen.insert(g) {
                    let ty = self.jordan_type(&g);
                    out.push((g, ty));
                }
            }
        }
        out
    }

    /// Jordan type of a unipotent element, from the rank of g − 1.
    pub fn jordan_type(&self, g: &Mat) -> Vec<usize> {
        let n = self.n;
        let gf = &self.gf;
        let mut d = *g;
        for i in 0..n {
            d.set(i, i, gf.sub(d.get(i, i), 1));
        }
        match (n, d.rank(gf)) {
            (2, 0) => vec![1, 1],
            (2, 1) => vec![2],
            (3, 0) => vec![1, 1, 1],
            (3, 1) => vec![2, 1],
            (3, 2) => vec![3],
            _ => panic!("not unipotent"),
        }
    }
}

/// Normalized representatives of the projective space P^{n−1}(F_q).
fn proj_points(n: usize, gf: &Gf) -> Vec<[u64; 3]> {
    let q = gf.p;
    let mut out = Vec::new();
    // leading-1 position k, free entries after it
    for k in 0..n {
        let free = (n - 1 - k) as u32;
        for code in 0..q.pow(free) {
            let mut v = [0u64; 3];
            v[k] = 1;
            let mut c = code;
            for i in (k + 1)..n {
                v[i] = c % q;
                c /= q;
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_counts() {
        for q in [2u64, 3, 5] {
            let g2 = FlagGeom::new(2, q);
            assert_eq!(g2.len() as u64, q + 1);
            let g3 = FlagGeom::new(3, q);
            assert_eq!(g3.len() as u64, (q * q + q + 1) * (q + 1));
        }
    }

    #[test]
    fn adjacency_is_symmetric_irreflexive_regular() {
        let geom = FlagGeom::new(3, 3);
        let q = 3u128;
        for s in [1, 2] {
            let m = geom.adjacency(s);
            for i in 0..geom.len() {
                assert_eq!(m[i][i], 0);
                let deg: u128 = m[i].iter().sum();
                assert_eq!(deg, q, "each flag has q neighbors in O_s");
                for j in 0..geom.len() {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
        }
    }

    #[test]
    fn unipotent_census() {
        // |U(F_q)| = q^{n(n−1)} for GL_n
        for q in [2u64, 3] {
            let g2 = FlagGeom::new(2, q);
            let u2 = g2.unipotents();
            assert_eq!(u2.len() as u64, q * q);
            assert_eq!(u2.iter().filter(|(_, t)| t == &vec![1, 1]).count(), 1);
            assert_eq!(
                u2.iter().filter(|(_, t)| t == &vec![2]).count() as u64,
                q * q - 1
            );
            let g3 = FlagGeom::new(3, q);
            let u3 = g3.unipotents();
            assert_eq!(u3.len() as u64, q.pow(6));
            // class sizes |GL₃|/|Z(u)| with |Z(u_{(3)})| = q²(q−1),
            // |Z(u_{(2,1)})| = q³(q−1)²
            let reg = u3.iter().filter(|(_, t)| t == &vec![3]).count() as u64;
            let sub = u3.iter().filter(|(_, t)| t == &vec![2, 1]).count() as u64;
            let gl3 = (q.pow(3) - 1) * (q.pow(3) - q) * (q.pow(3) - q * q);
            assert_eq!(reg, gl3 / (q * q * (q - 1)));
            assert_eq!(sub, gl3 / (q.pow(3) * (q - 1).pow(2)));
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let geom = FlagGeom::new(3, 3);
        let gf = geom.gf;
        let mut g = Mat::identity(3);
        g.set(0, 1, 2);
        g.set(1, 2, 1);
        g.set(2, 0, 1);
        g.set(0, 0, 2);
        assert!(g.det(&gf) != 0);
        let gi = g.inverse(&gf);
        // bijectivity and inverse compatibility
        let mut seen = vec![false; geom.len()];
        for f in 0..geom.len() {
            let img = geom.act(&g, &gi, f);
            assert!(!seen[img]);
            seen[img] = true;
            assert_eq!(geom.act(&gi, &g, img), f);
        }
    }
}
