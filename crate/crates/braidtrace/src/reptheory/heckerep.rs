//! Matrix models of the irreducible H_W-representations in the
//! σ-normalization (σ_s has eigenvalues t and −t^{-1}), and Hecke
//! character values of braids.
//!
//! Type A uses Hoefsmit's seminormal form on standard Young tableaux with
//! rational-function entries; dihedral types use the two-dimensional model
//! with entries in Q(ζ_{2m})[t^{±1}].

use crate::coxeter::{BraidWord, CoxeterSystem, CoxeterType, Elem};
use crate::exactmath::{rat, Cyclo, CycloLaurent, HalfLaurent, Matrix, RFunc, Rat, Ring};
use crate::reptheory::chartable::CharLabel;
use crate::{validation, Result};

/// Coefficient rings that contain the Laurent polynomials in t.
pub trait CoeffRing: Ring {
    fn from_half_laurent(p: &HalfLaurent) -> Self;
}

impl CoeffRing for RFunc {
    fn from_half_laurent(p: &HalfLaurent) -> Self {
        RFunc::from_laurent(p.clone())
    }
}

impl CoeffRing for CycloLaurent {
    fn from_half_laurent(p: &HalfLaurent) -> Self {
        CycloLaurent::from_half_laurent(p)
    }
}

/// A representation given by its σ-normalized generator matrices.
pub struct MatrixRep<K: CoeffRing> {
    gens: Vec<Matrix<K>>,
    invs: Vec<Matrix<K>>,
}

impl<K: CoeffRing> MatrixRep<K> {
    pub fn new(gens: Vec<Matrix<K>>) -> Self {
        // σ_s^{-1} = σ_s − (t − t^{-1})·1
        let tmt = K::from_half_laurent(&HalfLaurent::t_pow(1).sub(&HalfLaurent::t_pow(-1)));
        let invs = gens
            .iter()
            .map(|g| g.sub(&Matrix::scalar(g.dim(), &tmt)))
            .collect();
        MatrixRep { gens, invs }
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn generator(&self, s: usize) -> &Matrix<K> {
        &self.gens[s]
    }

    pub fn braid_matrix(&self, beta: &BraidWord) -> Matrix<K> {
        let mut m = Matrix::identity(self.dim());
        for &l in &beta.letters {
            let s = l.unsigned_abs() as usize - 1;
            let g = if l > 0 { &self.gens[s] } else { &self.invs[s] };
            m = m.mul(g);
        }
        m
    }

    pub fn braid_char(&self, beta: &BraidWord) -> K {
        self.braid_matrix(beta).trace()
    }
}

/// A representation over whichever coefficient ring the type needs.
pub enum Irrep {
    RatRep(MatrixRep<RFunc>),
    CycRep(MatrixRep<CycloLaurent>),
}

impl Irrep {
    pub fn dim(&self) -> usize {
        match self {
            Irrep::RatRep(r) => r.dim(),
            Irrep::CycRep(r) => r.dim(),
        }
    }

    /// φ_q(β) as a cyclotomic Laurent polynomial in t (always Laurent:
    /// braid characters have no denominator).
    pub fn braid_char(&self, beta: &BraidWord) -> CycloLaurent {
        match self {
            Irrep::RatRep(r) => {
                let v = r.braid_char(beta);
                let p = v
                    .as_laurent()
                    .expect("braid character must be a Laurent polynomial");
                CycloLaurent::from_half_laurent(&p)
            }
            Irrep::CycRep(r) => r.braid_char(beta),
        }
    }

    /// φ_q(σ_w) through the lex-least reduced word.
    pub fn elem_char(&self, sys: &CoxeterSystem, w: Elem) -> CycloLaurent {
        self.braid_char(&sys.lift_sigma(w))
    }
}

/// Build the irreducible representation with the given label.
pub fn irrep(sys: &CoxeterSystem, label: &CharLabel) -> Result<Irrep> {
    match (sys.coxeter_type(), label) {
        (CoxeterType::A(n), CharLabel::Partition(lam)) => {
            if lam.iter().sum::<usize>() != n + 1 {
                return validation(format!("partition {lam:?} does not match A{n}"));
            }
            Ok(Irrep::RatRep(hoefsmit_rep(n, lam)))
        }
        (CoxeterType::I2(m), lab) => Ok(Irrep::CycRep(dihedral_rep(m, lab)?)),
        _ => validation("character label does not match Coxeter type"),
    }
}

// ----- type A: Hoefsmit seminormal form -----

/// A standard tableau stored as the content vector: entry k (1-based) has
/// content col − row.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Tableau {
    /// row index (0-based) of each entry 1..=n
    rows: Vec<usize>,
    /// col index (0-based) of each entry
    cols: Vec<usize>,
}

impl Tableau {
    fn content(&self, k: usize) -> i64 {
        self.cols[k - 1] as i64 - self.rows[k - 1] as i64
    }

    /// Swap entries k and k+1, when the result is still standard.
    fn swapped(&self, k: usize) -> Tableau {
        let mut t = self.clone();
        t.rows.swap(k - 1, k);
        t.cols.swap(k - 1, k);
        t
    }
}

/// All standard Young tableaux of shape λ, in a fixed enumeration order.
fn standard_tableaux(lam: &[usize]) -> Vec<Tableau> {
    let n: usize = lam.iter().sum();
    let mut out = Vec::new();
    let mut fill = vec![0usize; lam.len()]; // cells filled per row
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    fn go(
        lam: &[usize],
        n: usize,
        k: usize,
        fill: &mut Vec<usize>,
        rows: &mut Vec<usize>,
        cols: &mut Vec<usize>,
        out: &mut Vec<Tableau>,
    ) {
        if k > n {
            out.push(Tableau { rows: rows.clone(), cols: cols.clone() });
            return;
        }
        for r in 0..lam.len() {
            let c = fill[r];
            if c >= lam[r] {
                continue;
            }
            if r > 0 && fill[r - 1] <= c {
                continue; // cell above must already be filled
            }
            fill[r] += 1;
            rows.push(r);
            cols.push(c);
            go(lam, n, k + 1, fill, rows, cols, out);
            rows.pop();
            cols.pop();
            fill[r] -= 1;
        }
    }
    go(lam, n, 1, &mut fill, &mut rows, &mut cols, &mut out);
    out
}

fn q_pow(k: i64) -> HalfLaurent {
    HalfLaurent::t_pow(2 * k)
}

/// Hoefsmit's matrices for S_{n+1} on shape λ, σ-normalized (entries are
/// the T-normalized ones divided by t).
fn hoefsmit_rep(n: usize, lam: &[usize]) -> MatrixRep<RFunc> {
    let tabs = standard_tableaux(lam);
    let dim = tabs.len();
    let one = HalfLaurent::one();
    let q = q_pow(1);
    let q_minus_1 = q.sub(&one);
    let mut gens = Vec::with_capacity(n);
    for s in 1..=n {
        // generator swaps entries s, s+1
        let mut m: Matrix<RFunc> = Matrix::zero(dim);
        for (ti, tab) in tabs.iter().enumerate() {
            let d = tab.content(s + 1) - tab.content(s);
            if d == 1 {
                // same row: eigenvalue q
                m.set(ti, ti, RFunc::from_laurent(q.clone()));
            } else if d == -1 {
                // same column: eigenvalue −1
                m.set(ti, ti, RFunc::from_int(-1));
            } else {
                // 2×2 block with the swapped tableau
                let other = tab.swapped(s);
                let tj = tabs.iter().position(|t| *t == other).expect("standard swap");
                // a_d = (q−1)/(1−q^{−d})
                let a_d = RFunc::new(q_minus_1.clone(), one.sub(&q_pow(-d)));
                m.set(ti, ti, a_d);
                if ti < tj {
                    // upper entry b with det = −q: b = a_d·a_{−d} + q
                    let a1 = RFunc::new(q_minus_1.clone(), one.sub(&q_pow(-d)));
                    let a2 = RFunc::new(q_minus_1.clone(), one.sub(&q_pow(d)));
                    let b = a1.mul(&a2).add(&RFunc::from_laurent(q.clone()));
                    m.set(ti, tj, b);
                    m.set(tj, ti, RFunc::from_int(1));
                }
            }
        }
        // σ-normalize: divide by t
        gens.push(m.scale(&RFunc::from_laurent(HalfLaurent::t_pow(-1))));
    }
    MatrixRep::new(gens)
}

// ----- dihedral types -----

fn dihedral_rep(m: usize, label: &CharLabel) -> Result<MatrixRep<CycloLaurent>> {
    let t = CycloLaurent::t_pow(1);
    let neg_tinv = CycloLaurent::t_pow(-1).neg();
    let one_dim = |a: &CycloLaurent, b: &CycloLaurent| {
        MatrixRep::new(vec![
            Matrix::from_rows(vec![vec![a.clone()]]),
            Matrix::from_rows(vec![vec![b.clone()]]),
        ])
    };
    match label {
        CharLabel::Triv => Ok(one_dim(&t, &t)),
        CharLabel::Sign => Ok(one_dim(&neg_tinv, &neg_tinv)),
        CharLabel::Delta if m % 2 == 0 => Ok(one_dim(&t, &neg_tinv)),
        CharLabel::EpsDelta if m % 2 == 0 => Ok(one_dim(&neg_tinv, &t)),
        CharLabel::Phi(j) if *j >= 1 && 2 * j < m => {
            // c = ζ_{2m}^j + ζ_{2m}^{−j} = 2cos(πj/m)
            let z = Cyclo::root_of_unity(2 * m as u32, *j as i64);
            let c = CycloLaurent::term(0, z.add(&z.inv()));
            let zero = CycloLaurent::zero();
            let s_mat = Matrix::from_rows(vec![
                vec![neg_tinv.clone(), c.clone()],
                vec![zero.clone(), t.clone()],
            ]);
            let t_mat = Matrix::from_rows(vec![
                vec![t.clone(), zero],
                vec![c, neg_tinv],
            ]);
            Ok(MatrixRep::new(vec![s_mat, t_mat]))
        }
        _ => validation(format!("invalid dihedral label {label} for I2({m})")),
    }
}

/// Eigenvalue-content of φ: c(φ) = (1/φ(1)) Σ_{reflections r} φ(r), so
/// that the full twist acts on φ_q by q^{c(φ)}.
pub fn content(sys: &CoxeterSystem, table: &crate::reptheory::CharTable, i: usize) -> Rat {
    let mut acc = Cyclo::from_int(0);
    for r in sys.reflections() {
        acc = acc.add(&table.value_at(sys, i, r));
    }
    let total = acc.to_rational().expect("rational reflection sum");
    total / rat(table.dim(i) as i64)
}
