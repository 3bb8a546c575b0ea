//! The decategorified braid invariants: the character-valued trace Tr⟨β⟩,
//! its normalization Tr⟨β⟩⁰, Gomi's Markov trace, and the HOMFLY series.
//!
//! Conventions: Tr⟨β⟩ = Σ_{φ,ψ} {φ,ψ} φ_q(β) ψ has Laurent coefficients;
//! Tr⟨β⟩⁰ = (−t)^{|β|} Tr⟨β⟩ · ε[Sym V]_q has rational-function
//! coefficients whose denominators divide Π_i (1 − q^{d_i}).

use std::path::Path;

use once_cell::unsync::OnceCell;

use crate::coxeter::{BraidWord, CoxeterSystem};
use crate::exactmath::{rat, ATLaurent, ATRat, HalfLaurent, RFunc, Rat, Ring};
use crate::reptheory::chartable::{sign_value, CharTable};
use crate::reptheory::degrees::{degrees_bundle, DegreeData};
use crate::reptheory::fourier::FourierTable;
use crate::reptheory::heckerep::{irrep, Irrep};
use crate::reptheory::molien::{exterior_char, molien_virtual};
use crate::Result;

/// Shared state for trace computations on one Coxeter system.
pub struct TraceEngine<'a> {
    pub sys: &'a CoxeterSystem,
    pub table: CharTable,
    pub bundle: Vec<DegreeData>,
    fourier: OnceCell<FourierTable>,
    reps: OnceCell<Vec<Irrep>>,
    molien: OnceCell<Vec<Vec<RFunc>>>,
    data_dir: Option<std::path::PathBuf>,
}

impl<'a> TraceEngine<'a> {
    pub fn new(sys: &'a CoxeterSystem, data_dir: Option<&Path>) -> Result<Self> {
        let table = CharTable::new(sys);
        let bundle = degrees_bundle(sys, &table)?;
        Ok(TraceEngine {
            sys,
            table,
            bundle,
            fourier: OnceCell::new(),
            reps: OnceCell::new(),
            molien: OnceCell::new(),
            data_dir: data_dir.map(|p| p.to_path_buf()),
        })
    }

    pub fn fourier(&self) -> Result<&FourierTable> {
        if let Some(f) = self.fourier.get() {
            return Ok(f);
        }
        let f = FourierTable::load(
            self.sys,
            &self.table,
            &self.bundle,
            self.data_dir.as_deref(),
        )?;
        Ok(self.fourier.get_or_init(|| f))
    }

    pub fn reps(&self) -> Result<&Vec<Irrep>> {
        if let Some(r) = self.reps.get() {
            return Ok(r);
        }
        let mut reps = Vec::new();
        for lab in self.table.labels() {
            reps.push(irrep(self.sys, lab)?);
        }
        Ok(self.reps.get_or_init(|| reps))
    }

    /// All Hecke character values φ_q(β), in table order. For the types
    /// with Fourier data these are rational Laurent polynomials in t.
    pub fn hecke_chars(&self, beta: &BraidWord) -> Result<Vec<HalfLaurent>> {
        let mut out = Vec::new();
        for (i, rep) in self.reps()?.iter().enumerate() {
            let v = rep.braid_char(beta);
            let p = v.to_half_laurent().ok_or_else(|| {
                crate::Error::Internal(format!(
                    "irrational Hecke character value for {}",
                    self.table.labels()[i]
                ))
            })?;
            out.push(p);
        }
        Ok(out)
    }

    /// Tr⟨β⟩ = Σ_{φ,ψ} {φ, ψ} φ_q(β) · ψ, as coefficients per character in
    /// table order.
    pub fn rw_trace(&self, beta: &BraidWord) -> Result<Vec<HalfLaurent>> {
        let chars = self.hecke_chars(beta)?;
        let f = self.fourier()?;
        let n = self.table.num_chars();
        let mut out = vec![HalfLaurent::new(); n];
        for (psi, o) in out.iter_mut().enumerate() {
            for (phi, c) in chars.iter().enumerate() {
                let s = f.entry(phi, psi);
                if !num_traits::Zero::is_zero(s) {
                    *o = o.add(&c.scale(s));
                }
            }
        }
        Ok(out)
    }

    /// The pairing matrix M_{φψ} = (1/|W|) Σ_w φ(w)ψ(w)ε(w)/det(1 − q·w|V),
    /// i.e. the coefficient of ψ in φ · ε[Sym V]_q.
    fn molien_matrix(&self) -> Result<&Vec<Vec<RFunc>>> {
        if let Some(m) = self.molien.get() {
            return Ok(m);
        }
        let n = self.table.num_chars();
        let classes = self.table.classes();
        let mut m = vec![vec![RFunc::zero(); n]; n];
        for phi in 0..n {
            for psi in phi..n {
                let f: Vec<_> = classes
                    .iter()
                    .enumerate()
                    .map(|(c, cd)| {
                        self.table
                            .value(phi, c)
                            .mul(self.table.value(psi, c))
                            .scale(&sign_value(self.sys, cd.rep))
                    })
                    .collect();
                let v = molien_virtual(self.sys, &self.table, &f)?;
                m[phi][psi] = v.clone();
                m[psi][phi] = v;
            }
        }
        Ok(self.molien.get_or_init(|| m))
    }

    /// Tr⟨β⟩⁰ = (−t)^{|β|} Tr⟨β⟩ · ε[Sym V]_q, as rational functions of q
    /// per character in table order.
    pub fn rw_trace0(&self, beta: &BraidWord) -> Result<Vec<RFunc>> {
        let tr = self.rw_trace(beta)?;
        let m = self.molien_matrix()?;
        let e = beta.writhe();
        let sign = if e.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        let pref = RFunc::from_laurent(HalfLaurent::t_pow(e).scale(&sign));
        let n = self.table.num_chars();
        let mut out = Vec::with_capacity(n);
        for psi in 0..n {
            let mut acc = RFunc::zero();
            for (phi, c) in tr.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&RFunc::from_laurent(c.clone()).mul(&m[phi][psi]));
                }
            }
            out.push(acc.mul(&pref));
        }
        Ok(out)
    }

    /// Inner products (Alt^i V, Tr⁰)_W for i = 0..=rank.
    pub fn exterior_pairings(&self, trace0: &[RFunc]) -> Vec<RFunc> {
        let r = self.sys.rank();
        let mut out = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let alt = exterior_char(self.sys, &self.table, i);
            let mut acc = RFunc::zero();
            for (psi, c) in trace0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mult = self
                    .table
                    .inner_with(self.sys, &alt, psi)
                    .to_rational()
                    .expect("rational multiplicity");
                if !num_traits::Zero::is_zero(&mult) {
                    acc = acc.add(&c.scale(&mult));
                }
            }
            out.push(acc);
        }
        out
    }

    /// Σ_i (−a²)^i · p_i for rational functions p_i of t, as an (a, t)
    /// rational function.
    fn alternating_a_sum(&self, pair: &[RFunc]) -> ATRat {
        let mut acc = ATRat::from_poly(ATLaurent::new());
        for (i, p) in pair.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            let num = ATLaurent::from_half_laurent(&p.numerator().scale(&sign))
                .shift(2 * i as i64, 0);
            let den = ATLaurent::from_half_laurent(p.denominator());
            acc = acc.add(&ATRat::new(num, den));
        }
        acc
    }

    /// Gomi's Markov trace:
    /// tr(β) = (−t^{-1})^{|β|} ((1−q)/(1−a²))^r Σ_i (−a²)^i (Alt^i V, Tr⁰).
    pub fn markov_trace(&self, beta: &BraidWord) -> Result<ATRat> {
        let trace0 = self.rw_trace0(beta)?;
        let pair = self.exterior_pairings(&trace0);
        let sum = self.alternating_a_sum(&pair);
        let e = beta.writhe();
        let sign = if e.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        let mut num = ATLaurent::term(0, -e, sign);
        let mut den = ATLaurent::one();
        let one_minus_q = ATLaurent::one().add(&ATLaurent::term(0, 2, rat(-1)));
        let one_minus_a2 = ATLaurent::one().add(&ATLaurent::term(2, 0, rat(-1)));
        for _ in 0..self.sys.rank() {
            num = num.mul(&one_minus_q);
            den = den.mul(&one_minus_a2);
        }
        Ok(ATRat::new(num, den).mul(&sum))
    }

    /// HOMFLY series of the closure (type A, n = rank + 1 strands):
    /// [β̂] = (a t^{-1})^{|β| − n + 1} Σ_{i=0}^{n−1} (−a²)^i (Alt^i V, Tr⁰).
    pub fn homfly(&self, beta: &BraidWord) -> Result<ATRat> {
        let crate::coxeter::CoxeterType::A(rank) = self.sys.coxeter_type() else {
            return crate::validation("HOMFLY series requires a type A system");
        };
        let strands = rank as i64 + 1;
        let trace0 = self.rw_trace0(beta)?;
        let pair = self.exterior_pairings(&trace0);
        let sum = self.alternating_a_sum(&pair);
        let shift = beta.writhe() - strands + 1;
        let pref = ATRat::from_poly(ATLaurent::term(shift, -shift, rat(1)));
        Ok(pref.mul(&sum))
    }

    /// The canonical symmetrizing trace τ_q(β), read off from the σ-basis
    /// expansion of the braid image.
    pub fn tau(&self, beta: &BraidWord) -> HalfLaurent {
        crate::hecke::braid_image(self.sys, beta).tau()
    }

    /// τ_q recovered from Tr⁰ through
    /// τ_q = (−t^{-1})^{|β|} (1 − q)^r (ε, Tr⁰)_W; used as a consistency
    /// oracle.
    pub fn tau_from_trace0(&self, beta: &BraidWord) -> Result<HalfLaurent> {
        let trace0 = self.rw_trace0(beta)?;
        let eps = self.table.sign_index();
        let e = beta.writhe();
        let sign = if e.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        let mut acc = trace0[eps]
            .mul(&RFunc::from_laurent(HalfLaurent::t_pow(-e).scale(&sign)));
        let one_minus_q =
            RFunc::from_laurent(HalfLaurent::one().add(&HalfLaurent::q_pow(1).neg()));
        for _ in 0..self.sys.rank() {
            acc = acc.mul(&one_minus_q);
        }
        acc.as_laurent()
            .ok_or_else(|| crate::Error::Internal("τ_q from Tr⁰ is not Laurent".into()))
    }
}

/// Multiplicity of the eigenvalue 1 of the image of β in W, i.e.
/// dim V^w: the exponent governing the pole of Tr⟨β⟩⁰ at q = 1.
pub fn pole_bound(sys: &CoxeterSystem, beta: &BraidWord) -> usize {
    sys.fixed_space_dim(sys.project(beta))
}

/// Check that (1 − q)^k · f is a Laurent polynomial.
pub fn pole_at_most(f: &RFunc, k: usize) -> bool {
    let one_minus_q = RFunc::from_laurent(HalfLaurent::one().add(&HalfLaurent::q_pow(1).neg()));
    let mut g = f.clone();
    for _ in 0..k {
        g = g.mul(&one_minus_q);
    }
    g.as_laurent().is_some()
}

/// Scale an RFunc by a rational constant (convenience for downstream
/// modules pairing traces with multiplicities).
pub fn scale_rfunc(f: &RFunc, c: &Rat) -> RFunc {
    f.scale(c)
}
