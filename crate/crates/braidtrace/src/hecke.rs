//! The Hecke algebra H_W in the σ-basis {σ_w}, with relations
//! σ_w σ_s = σ_{ws} when l(ws) > l(w) and σ_{ws} + (t − t^{-1}) σ_w
//! otherwise, so every generator satisfies (σ_s − t)(σ_s + t^{-1}) = 0.

use std::collections::BTreeMap;

use crate::coxeter::{BraidWord, CoxeterSystem, Elem};
use crate::exactmath::{HalfLaurent, Ring};

/// An element Σ_w c_w(t) σ_w with Laurent coefficients in t = q^{1/2}.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct HeckeElement {
    terms: BTreeMap<Elem, HalfLaurent>,
}

impl HeckeElement {
    pub fn new() -> Self {
        HeckeElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut h = Self::new();
        h.add_term(Elem(0), HalfLaurent::one());
        h
    }

    pub fn sigma(w: Elem) -> Self {
        let mut h = Self::new();
        h.add_term(w, HalfLaurent::one());
        h
    }

    pub fn add_term(&mut self, w: Elem, c: HalfLaurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(HalfLaurent::new);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: Elem) -> HalfLaurent {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Elem, &HalfLaurent)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &HalfLaurent) -> Self {
        let mut out = Self::new();
        for (w, cw) in self.terms() {
            out.add_term(w, cw.mul(c));
        }
        out
    }

    /// Right multiplication by σ_s^{±1} (`s` is 0-based; `inverse` picks
    /// σ_s^{-1} = σ_s − (t − t^{-1})).
    pub fn mul_gen(&self, sys: &CoxeterSystem, s: usize, inverse: bool) -> Self {
        let tmt = HalfLaurent::t_pow(1).sub(&HalfLaurent::t_pow(-1));
        let mut out = Self::new();
        for (w, c) in self.terms() {
            let ws = sys.mul_gen_right(w, s);
            let ascending = sys.length(ws) > sys.length(w);
            match (inverse, ascending) {
                (false, true) => out.add_term(ws, c.clone()),
                (false, false) => {
                    out.add_term(ws, c.clone());
                    out.add_term(w, c.mul(&tmt));
                }
                (true, false) => out.add_term(ws, c.clone()),
                (true, true) => {
                    out.add_term(ws, c.clone());
                    out.add_term(w, c.mul(&tmt).neg());
                }
            }
        }
        out
    }

    /// Right multiplication by σ_x, expanding x into its reduced word.
    pub fn mul_sigma(&self, sys: &CoxeterSystem, x: Elem) -> Self {
        let mut out = self.clone();
        for &l in &sys.lift_sigma(x).letters {
            out = out.mul_gen(sys, l as usize - 1, false);
        }
        out
    }

    pub fn mul(&self, sys: &CoxeterSystem, other: &Self) -> Self {
        let mut out = Self::new();
        for (x, c) in other.terms() {
            let part = self.mul_sigma(sys, x).scale(c);
            out = out.add(&part);
        }
        out
    }

    /// The canonical trace τ_q: the coefficient of σ_1.
    pub fn tau(&self) -> HalfLaurent {
        self.coeff(Elem(0))
    }
}

/// Image of a braid word in H_W, as a σ-basis expansion.
pub fn braid_image(sys: &CoxeterSystem, beta: &BraidWord) -> HeckeElement {
    let mut h = HeckeElement::one();
    for &l in &beta.letters {
        h = h.mul_gen(sys, l.unsigned_abs() as usize - 1, l < 0);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::exactmath::ratio;

    fn sys_a(n: usize) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterType::A(n)).unwrap()
    }

    #[test]
    fn quadratic_relation_and_inverse() {
        let sys = sys_a(1);
        let s = BraidWord::new(vec![1]);
        // σ² = 1 + (t − t^{-1})σ
        let sq = braid_image(&sys, &s.repeat(2));
        assert_eq!(sq.coeff(Elem(0)), HalfLaurent::one());
        assert_eq!(
            sq.coeff(sys.project(&s)),
            HalfLaurent::t_pow(1).sub(&HalfLaurent::t_pow(-1))
        );
        // σ·σ^{-1} = 1
        let id = braid_image(&sys, &BraidWord::new(vec![1, -1]));
        assert_eq!(id, HeckeElement::one());
        let id2 = braid_image(&sys, &BraidWord::new(vec![-1, 1]));
        assert_eq!(id2, HeckeElement::one());
    }

    #[test]
    fn braid_relation() {
        let sys = sys_a(2);
        let lhs = braid_image(&sys, &BraidWord::new(vec![1, 2, 1]));
        let rhs = braid_image(&sys, &BraidWord::new(vec![2, 1, 2]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dihedral_braid_relation() {
        for m in [3usize, 4, 5, 6, 7] {
            let sys = CoxeterSystem::new(CoxeterType::I2(m)).unwrap();
            let mut a = Vec::new();
            let mut b = Vec::new();
            for i in 0..m {
                a.push(if i % 2 == 0 { 1 } else { 2 });
                b.push(if i % 2 == 0 { 2 } else { 1 });
            }
            assert_eq!(
                braid_image(&sys, &BraidWord::new(a)),
                braid_image(&sys, &BraidWord::new(b)),
                "braid relation fails for I2({m})"
            );
        }
    }

    #[test]
    fn tau_of_small_words() {
        let sys = sys_a(1);
        // τ(σ^2) = 1, τ(σ^3) = t − t^{-1} = q^{1/2} − q^{-1/2}
        assert_eq!(braid_image(&sys, &BraidWord::new(vec![1, 1])).tau(), HalfLaurent::one());
        let t3 = braid_image(&sys, &BraidWord::new(vec![1, 1, 1])).tau();
        assert_eq!(t3.coeff(1), ratio(1, 1));
        assert_eq!(t3.coeff(-1), ratio(-1, 1));
    }

    #[test]
    fn full_twist_is_central() {
        let sys = sys_a(2);
        let pi = braid_image(&sys, &sys.full_twist());
        for w in sys.elements() {
            let l = HeckeElement::sigma(w).mul(&sys, &pi);
            let r = pi.mul(&sys, &HeckeElement::sigma(w));
            assert_eq!(l, r);
        }
    }
}
