//! Graded characters for category O of the rational Cherednik algebra at a
//! rational slope ν: Verma characters, the virtual module Ω_ν, block
//! defects, cuspidal simple characters, and the periodic-braid bridge.
//!
//! Gradings use half-integer powers of q shifted by ν·c(φ), so exponents
//! live in (1/2L)·Z for a slope-dependent stretch factor L. A
//! [`GradedChar`] stores rational functions in the variable u = q^{1/2L}.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::coxeter::{BraidWord, CoxeterSystem};
use crate::exactmath::{rat, ATLaurent, ATRat, HalfLaurent, RFunc, Rat, Ring};
use crate::reptheory::molien::molien_virtual;
use crate::traces::TraceEngine;
use crate::{internal, validation, Result};

/// A virtual W-character graded by powers of u = t^{1/scale} = q^{1/2·scale}.
#[derive(Clone)]
pub struct GradedChar {
    pub nu: Rat,
    /// u^scale = t = q^{1/2}.
    pub scale: i64,
    /// Coefficient of each character, in CharTable order, as a rational
    /// function of u.
    pub coeffs: Vec<RFunc>,
}

impl GradedChar {
    fn zero(nu: Rat, scale: i64, n: usize) -> Self {
        GradedChar {
            nu,
            scale,
            coeffs: vec![RFunc::zero(); n],
        }
    }

    pub fn add(&self, other: &GradedChar) -> GradedChar {
        assert_eq!(self.scale, other.scale, "mismatched grading scales");
        GradedChar {
            nu: self.nu.clone(),
            scale: self.scale,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale_by(&self, c: &Rat) -> GradedChar {
        GradedChar {
            nu: self.nu.clone(),
            scale: self.scale,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// True iff every coefficient is a (Laurent) polynomial, i.e. the
    /// character is finite-dimensional in each weight and bounded.
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// The coefficient of character `i` as a Laurent polynomial in t,
    /// requiring all u-exponents to be multiples of the scale.
    pub fn coeff_t_laurent(&self, i: usize) -> Result<HalfLaurent> {
        let p = self
            .coeffs[i]
            .as_laurent()
            .ok_or_else(|| crate::Error::Internal("coefficient is not polynomial".into()))?;
        let mut out = HalfLaurent::new();
        for (e, c) in p.terms() {
            if e % self.scale != 0 {
                return internal(format!(
                    "fractional t-exponent {e}/{} in graded character",
                    self.scale
                ));
            }
            out.add_term(e / self.scale, c.clone());
        }
        Ok(out)
    }

    /// Total dimension Σ_ψ dim(ψ)·coeff_ψ(1); defined for finite characters.
    pub fn dimension(&self, eng: &TraceEngine) -> Result<Rat> {
        let mut total = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = c.as_laurent().ok_or_else(|| {
                crate::Error::Validation("dimension of an infinite-dimensional character".into())
            })?;
            total += p.eval_one() * rat(self.eng_dim(eng, i));
        }
        Ok(total)
    }

    fn eng_dim(&self, eng: &TraceEngine, i: usize) -> i64 {
        eng.table.dim(i) as i64
    }
}

/// Smallest L ≥ 1 such that L·(r − 2ν·c(φ)) ∈ Z for every φ.
fn grading_scale(eng: &TraceEngine, nu: &Rat) -> i64 {
    let mut l: i64 = 1;
    for d in &eng.bundle {
        let e = nu * &d.content * rat(2);
        let den = e.denom().to_i64().expect("small denominator");
        l = l.lcm(&den);
    }
    l
}

/// The t-exponent shift of Δ_ν(φ), scaled by L: L·(r − 2ν·c(φ)).
fn verma_shift(eng: &TraceEngine, nu: &Rat, phi: usize, l: i64) -> i64 {
    let e = (rat(eng.sys.rank() as i64) - nu * &eng.bundle[phi].content * rat(2)) * rat(l);
    assert!(e.is_integer(), "scale does not clear the Verma shift");
    e.to_integer().to_i64().expect("shift overflow")
}

/// Coefficients of φ·[Sym V]_q: the ψ-indexed Molien pairings without the
/// sign twist.
fn sym_row(eng: &TraceEngine, phi: usize) -> Result<Vec<RFunc>> {
    let n = eng.table.num_chars();
    let classes = eng.table.classes();
    let mut out = Vec::with_capacity(n);
    for psi in 0..n {
        let f: Vec<_> = classes
            .iter()
            .enumerate()
            .map(|(c, _)| eng.table.value(phi, c).mul(eng.table.value(psi, c)))
            .collect();
        out.push(molien_virtual(eng.sys, &eng.table, &f)?);
    }
    Ok(out)
}

/// [Δ_ν(φ)]_q = q^{r/2 − ν·c(φ)} · φ · [Sym V]_q.
pub fn verma_char(eng: &TraceEngine, nu: &Rat, phi: usize) -> Result<GradedChar> {
    let l = grading_scale(eng, nu);
    let shift = verma_shift(eng, nu, phi, l);
    let row = sym_row(eng, phi)?;
    Ok(GradedChar {
        nu: nu.clone(),
        scale: l,
        coeffs: row.iter().map(|f| f.stretch(l).shift(shift)).collect(),
    })
}

/// The generic degrees evaluated at ζ = e^{2πiν}; each value is asserted to
/// be a rational integer.
pub fn omega_integrality(eng: &TraceEngine, nu: &Rat) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for d in &eng.bundle {
        let v = d.deg.eval_root(nu);
        let r = v.to_rational().ok_or_else(|| {
            crate::Error::Internal(format!("irrational Deg_{}(ζ) at ν = {nu}", d.label))
        })?;
        if !r.is_integer() {
            return internal(format!("non-integral Deg_{}(ζ) = {r} at ν = {nu}", d.label));
        }
        out.push(r);
    }
    Ok(out)
}

/// Ω_ν = Σ_φ Deg_φ(e^{2πiν}) · Δ_ν(φ).
pub fn omega_char(eng: &TraceEngine, nu: &Rat) -> Result<GradedChar> {
    let degs = omega_integrality(eng, nu)?;
    let l = grading_scale(eng, nu);
    let mut acc = GradedChar::zero(nu.clone(), l, eng.table.num_chars());
    for (phi, d) in degs.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        acc = acc.add(&verma_char(eng, nu, phi)?.scale_by(d));
    }
    Ok(acc)
}

/// The trace of any periodic braid of regular slope ν in closed form:
/// Tr⟨β⟩ = Σ_φ q^{ν·c(φ)} Deg_φ(e^{2πiν}) · φ.
pub fn periodic_trace(eng: &TraceEngine, nu: &Rat) -> Result<Vec<HalfLaurent>> {
    if !eng.sys.slope_class(nu).regular {
        return validation(format!("ν = {nu} is not a regular slope"));
    }
    let degs = omega_integrality(eng, nu)?;
    let mut out = Vec::with_capacity(degs.len());
    for (phi, d) in degs.iter().enumerate() {
        if d.is_zero() {
            out.push(HalfLaurent::new());
            continue;
        }
        let e = nu * &eng.bundle[phi].content * rat(2);
        if !e.is_integer() {
            return internal(format!(
                "fractional exponent 2ν·c({}) with nonzero degree",
                eng.bundle[phi].label
            ));
        }
        let e = e.to_integer().to_i64().expect("exponent overflow");
        out.push(HalfLaurent::term(e, d.clone()));
    }
    Ok(out)
}

/// Verify [Ω_ν]_q = (q^{1/2})^{r − |β|} · Tr⟨β⟩⁰ on a periodic witness β
/// with β^n = π^m and ν = m/n.
pub fn omega_bridge_check(
    eng: &TraceEngine,
    beta: &BraidWord,
    n: usize,
    m: usize,
) -> Result<bool> {
    if !eng.sys.is_periodic_witness(beta, n, m)? {
        return validation(format!(
            "braid is not a periodic witness for slope {m}/{n}"
        ));
    }
    let nu = rat(m as i64) / rat(n as i64);
    let omega = omega_char(eng, &nu)?;
    let trace0 = eng.rw_trace0(beta)?;
    let shift = (eng.sys.rank() as i64 - beta.writhe()) * omega.scale;
    for (i, c) in trace0.iter().enumerate() {
        let rhs = c.stretch(omega.scale).shift(shift);
        if rhs != omega.coeffs[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-character block data at slope ν.
pub struct BlockDefect {
    pub index: usize,
    pub defect: usize,
    pub deg_at_zeta: Rat,
}

/// Defects and degree values of every character at slope ν, with the
/// structural assertions of the defect theory checked.
pub fn block_defect_report(eng: &TraceEngine, nu: &Rat) -> Result<Vec<BlockDefect>> {
    let degs = omega_integrality(eng, nu)?;
    let i_nu = eng.sys.slope_class(nu).i_nu.len();
    let mut out = Vec::new();
    for (i, d) in eng.bundle.iter().enumerate() {
        let defect = crate::reptheory::degrees::defect(d, nu);
        out.push(BlockDefect {
            index: i,
            defect,
            deg_at_zeta: degs[i].clone(),
        });
    }
    // principal block: defect of the trivial character equals |I_ν(W)|.
    // At integer slopes ζ = 1 and the Schur element of the trivial
    // character does not vanish at all, so the principal defect is 0 there.
    let triv = eng.table.triv_index();
    let expected = if nu.is_integer() { 0 } else { i_nu };
    if out[triv].defect != expected {
        return internal(format!(
            "principal-block defect {} differs from expected {expected}",
            out[triv].defect
        ));
    }
    // maximal defect exactly on the characters with Deg_φ(ζ) ≠ 0
    let max = out[triv].defect;
    for b in &out {
        if (b.defect == max) != !b.deg_at_zeta.is_zero() {
            return internal(format!(
                "defect/degree mismatch for character {}",
                eng.bundle[b.index].label
            ));
        }
    }
    Ok(out)
}

/// [L_ν(1)]_q at a cuspidal slope ν, computed as Ω_ν and checked to be a
/// finite character with nonnegative integral coefficients.
pub fn cuspidal_l_char(eng: &TraceEngine, nu: &Rat) -> Result<GradedChar> {
    if !eng.sys.slope_class(nu).cuspidal || !nu.is_positive() {
        return validation(format!("ν = {nu} is not a positive cuspidal slope"));
    }
    let omega = omega_char(eng, nu)?;
    for (i, c) in omega.coeffs.iter().enumerate() {
        let p = c.as_laurent().ok_or_else(|| {
            crate::Error::Internal(format!(
                "[L_ν(1)] coefficient of {} is not polynomial",
                eng.table.labels()[i]
            ))
        })?;
        if !p.is_integral() || !p.is_nonnegative() {
            return internal(format!(
                "[L_ν(1)] coefficient of {} is not a nonnegative integer polynomial",
                eng.table.labels()[i]
            ));
        }
    }
    Ok(omega)
}

/// Verify the torus-knot formula: for coprime n, m ≥ 2, the HOMFLY series
/// of the (n, m) torus knot equals
/// a^{(m−1)(n−1)} Σ_i (−a²)^i (Alt^i V, [L_{m/n}(1)])_W.
pub fn gors_check(n: usize, m: usize) -> Result<bool> {
    if n < 2 || m < 2 || n.gcd(&m) != 1 {
        return validation("gors_check needs coprime strand/power parameters ≥ 2");
    }
    let sys = CoxeterSystem::new(crate::coxeter::CoxeterType::A(n - 1))?;
    let eng = TraceEngine::new(&sys, None)?;
    let beta = sys.torus_braid(m)?;
    let lhs = eng.homfly(&beta)?;

    let nu = rat(m as i64) / rat(n as i64);
    let lchar = cuspidal_l_char(&eng, &nu)?;
    let mut rhs = ATLaurent::new();
    for i in 0..n {
        let alt = crate::reptheory::molien::exterior_char(&sys, &eng.table, i);
        let mut pairing = HalfLaurent::new();
        for psi in 0..eng.table.num_chars() {
            let mult = eng
                .table
                .inner_with(&sys, &alt, psi)
                .to_rational()
                .expect("rational multiplicity");
            if !mult.is_zero() {
                pairing = pairing.add(&lchar.coeff_t_laurent(psi)?.scale(&mult));
            }
        }
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        for (e, c) in pairing.terms() {
            rhs.add_term(2 * i as i64, e, c * &sign);
        }
    }
    let a_shift = ((m - 1) * (n - 1)) as i64;
    let rhs = ATRat::from_poly(rhs.shift(a_shift, 0));
    Ok(lhs == rhs)
}
