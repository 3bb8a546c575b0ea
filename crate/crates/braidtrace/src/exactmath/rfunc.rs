//! Normalized rational functions in `t = q^{1/2}`.

use std::fmt;

use num_traits::Zero;

use super::cyclo::Cyclo;
use super::laurent::{HalfLaurent, Rat};
use super::series::TruncSeries;
use super::Ring;

/// A quotient of Laurent polynomials in `t`.
///
/// Invariants: the denominator is a nonzero polynomial in `t` with nonzero
/// constant term (minimal `t`-valuation 0), monic (so in particular with
/// positive leading coefficient), and coprime to the numerator.
#[derive(Clone, PartialEq)]
pub struct RFunc {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl RFunc {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::normalize(num, den)
    }

    fn normalize(num: HalfLaurent, den: HalfLaurent) -> Self {
        if num.is_zero() {
            return RFunc { num, den: HalfLaurent::one() };
        }
        // Push the denominator's t-valuation into the numerator, reduce by
        // the gcd, and make the denominator monic.
        let dval = den.valuation().unwrap();
        let num = num.shift(-dval);
        let den = den.shift(-dval);
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            // gcd is computed on valuation-cleared polynomials, and den
            // already has valuation 0, so exact division is safe.
            let nv = num.valuation().unwrap();
            (num.shift(-nv).exact_div(&g).shift(nv), den.exact_div(&g))
        };
        let lead = den.leading_coeff();
        let num = num.scale(&lead.recip());
        let den = den.scale(&lead.recip());
        RFunc { num, den }
    }

    pub fn from_laurent(p: HalfLaurent) -> Self {
        RFunc { num: p, den: HalfLaurent::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(HalfLaurent::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_laurent(HalfLaurent::from_rat(r))
    }

    pub fn numerator(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of the zero rational function");
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// Exact quotient, asserting nothing beyond `other ≠ 0`.
    pub fn div_exact(&self, other: &Self) -> Self {
        self.div(other)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::normalize(self.num.scale(r), self.den.clone())
    }

    /// Multiply by the monomial `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        RFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    /// If the denominator is trivial, the underlying Laurent polynomial.
    pub fn as_laurent(&self) -> Option<HalfLaurent> {
        if self.den == HalfLaurent::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == HalfLaurent::one()
    }

    /// `t`-degree of the rational function: `deg(num) − deg(den)`.
    pub fn t_degree(&self) -> Option<i64> {
        Some(self.num.degree()? - self.den.degree().unwrap_or(0))
    }

    /// `t`-valuation: `val(num)` (the denominator has valuation 0).
    pub fn t_valuation(&self) -> Option<i64> {
        self.num.valuation()
    }

    /// The substitution `t ↦ t^k`, `k ≥ 1`.
    pub fn stretch(&self, k: i64) -> Self {
        Self::normalize(self.num.stretch(k), self.den.stretch(k))
    }

    /// The bar involution `t ↦ −t^{−1}` extended to quotients.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Exact evaluation at `t = e^{iπν}`; errors if the denominator
    /// vanishes there.
    pub fn eval_root(&self, nu: &Rat) -> crate::Result<Cyclo> {
        let d = self.den.eval_root(nu);
        if d.is_zero() {
            return crate::validation(format!(
                "pole of rational function at t = exp(i*pi*{})",
                nu
            ));
        }
        Ok(self.num.eval_root(nu).mul(&d.inv()))
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let d = self.den.eval_rat(x);
        assert!(!d.is_zero(), "pole at rational point");
        self.num.eval_rat(x) / d
    }

    /// Truncated power-series expansion to order `K` in whole powers of `q`
    /// (i.e. up to and including `t^{2K}`). Errors if the denominator has a
    /// zero constant term (which cannot happen for normalized values) —
    /// the real precondition is that the value has no pole at `t = 0`
    /// *as a series*, i.e. we allow any Laurent numerator.
    pub fn to_series(&self, k: i64) -> TruncSeries {
        TruncSeries::from_rfunc_parts(&self.num, &self.den, k)
    }

    pub fn to_string_q(&self) -> String {
        if self.is_polynomial() {
            self.num.to_string_q()
        } else {
            format!("({}) / ({})", self.num.to_string_q(), self.den.to_string_q())
        }
    }
}

impl Ring for RFunc {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalize(num, den)
    }
    fn neg(&self) -> Self {
        RFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn mul(&self, other: &Self) -> Self {
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Debug for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_q())
    }
}

impl fmt::Display for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_q())
    }
}
