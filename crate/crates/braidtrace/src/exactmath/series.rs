//! Truncated power series in `t = q^{1/2}` with an explicit truncation
//! order carried by every value.

use std::collections::BTreeMap;
use std::fmt;

use super::laurent::{HalfLaurent, Rat};
use super::Ring;
use num_traits::Zero;

/// A series Σ c_e t^e truncated at `t`-exponent `2K` inclusive, where `K`
/// is the order in whole powers of `q`. Terms with `e > 2K` are dropped;
/// negative exponents (Laurent tails) are allowed and kept exactly.
#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    /// Truncation order `K` in whole powers of `q`.
    order: i64,
    terms: BTreeMap<i64, Rat>,
}

impl TruncSeries {
    pub const DEFAULT_ORDER: i64 = 20;

    pub fn zero(order: i64) -> Self {
        TruncSeries { order, terms: BTreeMap::new() }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if e > 2 * self.order || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn from_laurent(p: &HalfLaurent, order: i64) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in p.terms() {
            s.add_term(e, c.clone());
        }
        s
    }

    /// Expand `num/den` to order `K`; `den` must have nonzero constant
    /// term after its `t`-valuation is cleared into the numerator.
    pub fn from_rfunc_parts(num: &HalfLaurent, den: &HalfLaurent, order: i64) -> Self {
        assert!(!den.is_zero());
        let dval = den.valuation().unwrap();
        let num = num.shift(-dval);
        let den = den.shift(-dval);
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "series expansion at a pole of positive t-valuation");
        // Solve num = den · s term by term from the numerator's valuation.
        let mut s = Self::zero(order);
        let Some(nval) = num.valuation() else {
            return s;
        };
        let mut rem = num;
        let mut e = nval;
        while e <= 2 * order {
            let c = rem.coeff(e);
            if !c.is_zero() {
                let c = c / &d0;
                s.add_term(e, c.clone());
                rem = rem.sub(&den.shift(e).scale(&c));
            }
            e += 1;
            if rem.is_zero() {
                break;
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut s = Self::zero(order);
        for (e, c) in self.terms().chain(other.terms()) {
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut s = Self::zero(order);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                s.add_term(e1 + e2, c1 * c2);
            }
        }
        s
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut s = Self::zero(self.order.min(order));
        for (e, c) in self.terms() {
            s.add_term(e, c.clone());
        }
        s
    }

    /// Render as a `q`-notation string with an explicit order marker.
    pub fn to_string_q(&self) -> String {
        let p = HalfLaurent::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())));
        format!("{} + O(q^{})", p.to_string_q(), self.order + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_q())
    }
}
