//! Molien series: graded multiplicities of W-characters in Sym V, and the
//! fake degrees they produce.

use crate::coxeter::CoxeterSystem;
use crate::exactmath::{rat, Cyclo, CycloLaurent, HalfLaurent, RFunc, Ring};
use crate::reptheory::chartable::CharTable;
use crate::Result;

/// det(1 − q·w|V) as a Laurent polynomial in t (t² = q), with cyclotomic
/// coefficients for dihedral rotations.
pub fn det_one_minus_qw(sys: &CoxeterSystem, w: crate::coxeter::Elem) -> CycloLaurent {
    let e = sys.exterior_data(w);
    let mut p = CycloLaurent::new();
    for (i, ei) in e.iter().enumerate() {
        // det(1 + x·w) = Σ e_i x^i at x = −q
        let sign = if i % 2 == 0 { 1 } else { -1 };
        p.add_term(2 * i as i64, ei.scale(&rat(sign)));
    }
    p
}

/// Molien sum (1/|W|) Σ_w f(w)/det(1 − q·w|V) for a class function given
/// per class; the result must be rational (guaranteed for virtual
/// characters of W, by Galois stability of the sum).
pub fn molien_virtual(sys: &CoxeterSystem, table: &CharTable, f: &[Cyclo]) -> Result<RFunc> {
    let classes = table.classes();
    assert_eq!(f.len(), classes.len());
    let dens: Vec<CycloLaurent> = classes
        .iter()
        .map(|cd| det_one_minus_qw(sys, cd.rep))
        .collect();
    // total = Σ_c f_c·size_c·Π_{c'≠c} den_{c'} over Π_c den_c
    let mut total_den = CycloLaurent::term(0, Cyclo::from_int(1));
    for d in &dens {
        total_den = total_den.mul(d);
    }
    let mut total_num = CycloLaurent::new();
    for (c, cd) in classes.iter().enumerate() {
        let mut part = CycloLaurent::term(0, f[c].scale(&rat(cd.size as i64)));
        for (c2, d) in dens.iter().enumerate() {
            if c2 != c {
                part = part.mul(d);
            }
        }
        total_num = total_num.add(&part);
    }
    let num = total_num
        .to_half_laurent()
        .ok_or_else(|| crate::Error::Internal("Molien numerator not rational".into()))?;
    let den = total_den
        .to_half_laurent()
        .ok_or_else(|| crate::Error::Internal("Molien denominator not rational".into()))?;
    Ok(RFunc::new(num, den).scale(&(rat(1) / rat(sys.order() as i64))))
}

/// Molien series of the irreducible χ_i.
pub fn molien_char(sys: &CoxeterSystem, table: &CharTable, i: usize) -> Result<RFunc> {
    let f: Vec<Cyclo> = (0..table.classes().len())
        .map(|c| table.value(i, c).clone())
        .collect();
    molien_virtual(sys, table, &f)
}

/// Π_i (1 − q^{d_i}).
pub fn degree_product(sys: &CoxeterSystem) -> HalfLaurent {
    let mut p = HalfLaurent::one();
    for d in sys.degrees() {
        let f = HalfLaurent::one().sub(&HalfLaurent::t_pow(2 * d as i64));
        p = p.mul(&f);
    }
    p
}

/// Fake degree: graded multiplicity of χ_i in the coinvariant algebra,
/// Feg_i = Molien_i · Π(1 − q^{d_i}); always a polynomial in q.
pub fn fake_degree(sys: &CoxeterSystem, table: &CharTable, i: usize) -> Result<HalfLaurent> {
    let m = molien_char(sys, table, i)?;
    let f = m.mul(&RFunc::from_laurent(degree_product(sys)));
    f.as_laurent()
        .ok_or_else(|| crate::Error::Internal("fake degree is not a polynomial".into()))
}

/// Per-class values of the character of Alt^k V.
pub fn exterior_char(sys: &CoxeterSystem, table: &CharTable, k: usize) -> Vec<Cyclo> {
    table
        .classes()
        .iter()
        .map(|cd| {
            let e = sys.exterior_data(cd.rep);
            e.get(k).cloned().unwrap_or_else(|| Cyclo::from_int(0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::exactmath::ratio;
    use crate::reptheory::chartable::CharLabel;

    fn setup(ty: &str) -> (CoxeterSystem, CharTable) {
        let sys = CoxeterSystem::new(CoxeterType::parse(ty).unwrap()).unwrap();
        let t = CharTable::new(&sys);
        (sys, t)
    }

    #[test]
    fn trivial_molien_is_invariant_ring() {
        // Molien of the trivial character = Π 1/(1 − q^{d_i})
        for ty in ["A2", "A3", "I2(5)", "G2"] {
            let (sys, t) = setup(ty);
            let m = molien_char(&sys, &t, t.triv_index()).unwrap();
            let expect = RFunc::from_laurent(degree_product(&sys)).recip();
            assert_eq!(m, expect, "{ty}");
        }
    }

    #[test]
    fn fake_degrees_basic() {
        let (sys, t) = setup("A2");
        let idx = |lab: &CharLabel| t.char_index(lab).unwrap();
        let feg = |i| fake_degree(&sys, &t, i).unwrap();
        assert_eq!(feg(idx(&CharLabel::Partition(vec![3]))), HalfLaurent::one());
        // sign: q^N = q^3
        assert_eq!(feg(idx(&CharLabel::Partition(vec![1, 1, 1]))), HalfLaurent::t_pow(6));
        // standard: q + q²
        assert_eq!(
            feg(idx(&CharLabel::Partition(vec![2, 1]))),
            HalfLaurent::t_pow(2).add(&HalfLaurent::t_pow(4))
        );
    }

    #[test]
    fn fake_degrees_dihedral() {
        // I2(m): Feg(1) = 1, Feg(eps) = q^m, Feg(phi_j) = q^j + q^{m-j};
        // for even m, Feg(delta) and Feg(epsdelta) are q^{m/2}.
        for m in [5usize, 6, 8] {
            let (sys, t) = setup(&format!("I2({m})"));
            let feg = |lab: &CharLabel| {
                fake_degree(&sys, &t, t.char_index(lab).unwrap()).unwrap()
            };
            assert_eq!(feg(&CharLabel::Triv), HalfLaurent::one());
            assert_eq!(feg(&CharLabel::Sign), HalfLaurent::t_pow(2 * m as i64));
            for j in 1..=(m - 1) / 2 {
                assert_eq!(
                    feg(&CharLabel::Phi(j)),
                    HalfLaurent::t_pow(2 * j as i64).add(&HalfLaurent::t_pow(2 * (m - j) as i64)),
                    "I2({m}) phi_{j}"
                );
            }
            if m % 2 == 0 {
                assert_eq!(feg(&CharLabel::Delta), HalfLaurent::t_pow(m as i64));
                assert_eq!(feg(&CharLabel::EpsDelta), HalfLaurent::t_pow(m as i64));
            }
        }
    }

    #[test]
    fn fake_degrees_sum_rule() {
        // Σ_φ φ(1)·Feg_φ = Poincaré polynomial.
        for ty in ["A3", "A4", "BC2", "I2(7)"] {
            let (sys, t) = setup(ty);
            let mut total = HalfLaurent::new();
            for i in 0..t.num_chars() {
                let f = fake_degree(&sys, &t, i).unwrap();
                total = total.add(&f.scale(&rat(t.dim(i) as i64)));
            }
            assert_eq!(total, sys.poincare_polynomial(), "{ty}");
        }
    }

    #[test]
    fn fake_degree_at_one_is_dimension() {
        let (sys, t) = setup("A4");
        for i in 0..t.num_chars() {
            let f = fake_degree(&sys, &t, i).unwrap();
            assert_eq!(f.eval_one(), rat(t.dim(i) as i64));
        }
    }

    #[test]
    fn exterior_chars_decompose() {
        // Σ_k (−1)^k e_k(w) = det(1 − w|V): vanishes unless w has no
        // eigenvalue 1, e.g. Coxeter elements.
        let (sys, t) = setup("A3");
        for cd in t.classes() {
            let mut alt_sum = Cyclo::from_int(0);
            for k in 0..=sys.rank() {
                let v = exterior_char(&sys, &t, k)[t.class_index(&sys, cd.rep)].clone();
                alt_sum = alt_sum.add(&v.scale(&rat(if k % 2 == 0 { 1 } else { -1 })));
            }
            let fixed = sys.fixed_space_dim(cd.rep);
            if fixed > 0 {
                assert!(alt_sum.is_zero());
            } else {
                assert!(!alt_sum.is_zero());
            }
        }
        let _ = ratio(1, 2);
    }
}
