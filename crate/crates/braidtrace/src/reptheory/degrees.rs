//! Schur elements, generic degrees, and the (a, A, c) invariants.

use crate::coxeter::{CoxeterSystem, CoxeterType};
use crate::exactmath::{rat, CycloLaurent, HalfLaurent, Rat, Ring};
use crate::reptheory::chartable::{CharLabel, CharTable};
use crate::reptheory::heckerep::{content, irrep, Irrep};
use crate::reptheory::molien::fake_degree;
use crate::{internal, Result};

/// Poincaré polynomial Π (q^{d_i} − 1)/(q − 1) = Σ_w q^{l(w)}.
pub fn poincare(sys: &CoxeterSystem) -> HalfLaurent {
    let mut p = HalfLaurent::one();
    let q_minus_1 = HalfLaurent::t_pow(2).sub(&HalfLaurent::one());
    for d in sys.degrees() {
        let f = HalfLaurent::t_pow(2 * d as i64).sub(&HalfLaurent::one());
        let (quot, rem) = f.divrem(&q_minus_1);
        assert!(rem.is_zero());
        p = p.mul(&quot);
    }
    p
}

/// Schur element from the defining sum:
/// s(φ) = (1/φ(1)) Σ_w φ_q(σ_w) φ_q(σ_{w^{-1}}).
///
/// Exhaustive over W — use only when |W| is small (dihedral, A_n for
/// n ≤ 3).
pub fn schur_direct(sys: &CoxeterSystem, rep: &Irrep) -> CycloLaurent {
    let mut acc = CycloLaurent::new();
    for w in sys.elements() {
        let a = rep.elem_char(sys, w);
        let b = rep.elem_char(sys, sys.inverse(w));
        acc = acc.add(&a.mul(&b));
    }
    acc.scale(&crate::exactmath::Cyclo::from_rat(rat(1) / rat(rep.dim() as i64)))
}

/// Everything the degree machinery knows about one irreducible.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub label: CharLabel,
    pub dim: usize,
    /// Fake degree (polynomial in q, rational coefficients).
    pub feg: HalfLaurent,
    /// Generic degree (polynomial in q, cyclotomic coefficients).
    pub deg: CycloLaurent,
    /// Schur element (Laurent polynomial in t).
    pub schur: CycloLaurent,
    /// a(φ): q-valuation of the generic degree.
    pub a_inv: i64,
    /// A(φ): q-degree of the generic degree.
    pub cap_a: i64,
    /// c(φ): full-twist content.
    pub content: Rat,
}

/// Compute the degree bundle for every irreducible character.
///
/// Type A exploits that generic and fake degrees coincide, so Schur
/// elements come from exact division of the Poincaré polynomial; dihedral
/// types compute Schur elements by the defining sum and divide the other
/// way.
pub fn degrees_bundle(sys: &CoxeterSystem, table: &CharTable) -> Result<Vec<DegreeData>> {
    let p = poincare(sys);
    let p_cyc = CycloLaurent::from_half_laurent(&p);
    let n_refl = sys.num_reflections() as i64;
    let mut out = Vec::new();
    for (i, label) in table.labels().iter().enumerate() {
        let feg = fake_degree(sys, table, i)?;
        let (deg, schur) = match sys.coxeter_type() {
            CoxeterType::A(_) => {
                let (schur, rem) = p.divrem(&feg);
                if !rem.is_zero() {
                    return internal(format!("Poincaré not divisible by fake degree of {label}"));
                }
                (CycloLaurent::from_half_laurent(&feg), CycloLaurent::from_half_laurent(&schur))
            }
            CoxeterType::I2(_) => {
                let rep = irrep(sys, label)?;
                let schur = schur_direct(sys, &rep);
                let (deg, rem) = p_cyc.divrem(&schur);
                if !rem.is_zero() {
                    return internal(format!("Poincaré not divisible by Schur element of {label}"));
                }
                (deg, schur)
            }
        };
        // sanity: Deg(1) = φ(1)
        let dim = table.dim(i);
        if deg.eval_one().to_rational() != Some(rat(dim as i64)) {
            return internal(format!("generic degree of {label} wrong at q = 1"));
        }
        let a_inv = deg.valuation().unwrap_or(0) / 2;
        let cap_a = deg.degree().unwrap_or(0) / 2;
        let c = content(sys, table, i);
        if c != rat(n_refl - a_inv - cap_a) {
            return internal(format!(
                "content mismatch for {label}: c = {c}, N − a − A = {}",
                n_refl - a_inv - cap_a
            ));
        }
        out.push(DegreeData {
            label: label.clone(),
            dim,
            feg,
            deg,
            schur,
            a_inv,
            cap_a,
            content: c,
        });
    }
    Ok(out)
}

/// Defect of φ at slope ν: the vanishing order of the Schur element at
/// t = e^{iπν}.
pub fn defect(data: &DegreeData, nu: &Rat) -> usize {
    data.schur.root_multiplicity(nu)
}
