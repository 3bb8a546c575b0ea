//! Bivariate Laurent polynomials in `(a, t)` and their quotients, used for
//! the Markov trace and the HOMFLY series.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::laurent::{HalfLaurent, Rat};
use super::Ring;

/// Finitely supported map `(a-exponent, t-exponent) → rational`; the
/// `t`-exponent convention matches [`HalfLaurent`] (`t^e = q^{e/2}`).
#[derive(Clone, PartialEq, Default)]
pub struct ATLaurent {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl ATLaurent {
    pub fn new() -> Self {
        ATLaurent { terms: BTreeMap::new() }
    }

    pub fn term(a: i64, t: i64, c: Rat) -> Self {
        let mut p = Self::new();
        p.add_term(a, t, c);
        p
    }

    pub fn a_pow(e: i64) -> Self {
        Self::term(e, 0, Rat::one())
    }

    pub fn add_term(&mut self, a: i64, t: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, t)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, t));
        }
    }

    pub fn coeff(&self, a: i64, t: i64) -> Rat {
        self.terms.get(&(a, t)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn from_half_laurent(p: &HalfLaurent) -> Self {
        let mut out = Self::new();
        for (e, c) in p.terms() {
            out.add_term(0, e, c.clone());
        }
        out
    }

    /// Multiply by `a^i t^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        ATLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&(a, t), c)| ((a + i, t + j), c.clone()))
                .collect(),
        }
    }

    /// Maximal `a`-exponent, if nonzero.
    pub fn a_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Coefficient of `a^k` as a Laurent polynomial in `t`.
    pub fn a_slice(&self, k: i64) -> HalfLaurent {
        HalfLaurent::from_terms(
            self.terms
                .iter()
                .filter(|(&(a, _), _)| a == k)
                .map(|(&(_, t), c)| (t, c.clone())),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn to_string_at(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, t), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && t == 0) {
                factors.push(mag.to_string());
            }
            if a != 0 {
                factors.push(if a == 1 { "a".into() } else { format!("a^{}", a) });
            }
            if t != 0 {
                factors.push(if t % 2 == 0 {
                    if t == 2 { "q".into() } else { format!("q^{}", t / 2) }
                } else {
                    format!("q^({}/2)", t)
                });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Ring for ATLaurent {
    fn zero() -> Self {
        ATLaurent::new()
    }
    fn one() -> Self {
        ATLaurent::term(0, 0, Rat::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, t), c) in &other.terms {
            out.add_term(a, t, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        ATLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = ATLaurent::new();
        for (&(a1, t1), c1) in &self.terms {
            for (&(a2, t2), c2) in &other.terms {
                out.add_term(a1 + a2, t1 + t2, c1 * c2);
            }
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for ATLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_at())
    }
}

/// A quotient of bivariate Laurent polynomials.
///
/// No bivariate gcd reduction is attempted; equality is decided by
/// cross-multiplication, which is exact and sufficient for the Markov-trace
/// axioms.
#[derive(Clone)]
pub struct ATRat {
    num: ATLaurent,
    den: ATLaurent,
}

impl ATRat {
    pub fn new(num: ATLaurent, den: ATLaurent) -> Self {
        assert!(!den.is_zero(), "ATRat with zero denominator");
        ATRat { num, den }
    }

    pub fn from_poly(p: ATLaurent) -> Self {
        ATRat { num: p, den: ATLaurent::one() }
    }

    pub fn numerator(&self) -> &ATLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &ATLaurent {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        ATRat::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        ATRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ATRat::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.num.is_zero());
        ATRat::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// If the denominator divides the numerator monomial-wise trivially
    /// (i.e. the denominator is a single monomial), or equals 1, return the
    /// polynomial value. Also detects exact divisibility by treating the
    /// quotient as a polynomial division in `a` with `t`-Laurent
    /// coefficients.
    pub fn to_polynomial(&self) -> Option<ATLaurent> {
        if self.den == ATLaurent::one() {
            return Some(self.num.clone());
        }
        // Polynomial division in the variable a over Q[t^{±1}] fails in
        // general (coefficients need not be invertible), so divide in the
        // fraction field Q(t): coefficients become HalfLaurent which we
        // invert only when dividing exactly.
        poly_div_in_a(&self.num, &self.den)
    }

    /// The limit as `a^{-2} → 0` (i.e. `a → ∞`), when finite: compare top
    /// `a`-degrees of numerator and denominator.
    pub fn limit_a_infinity(&self) -> Option<HalfLaurent> {
        let nd = self.num.a_degree();
        let dd = self.den.a_degree()?;
        match nd {
            None => Some(HalfLaurent::new()),
            Some(nd) if nd < dd => Some(HalfLaurent::new()),
            Some(nd) if nd > dd => None,
            Some(nd) => {
                let top_n = self.num.a_slice(nd);
                let top_d = self.den.a_slice(dd);
                let (q, r) = top_n.divrem(&top_d);
                if r.is_zero() {
                    Some(q)
                } else {
                    None
                }
            }
        }
    }
}

impl PartialEq for ATRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Debug for ATRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ATLaurent::one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

/// Exact division of bivariate Laurent polynomials viewed as polynomials in
/// `a` with coefficients in `Q(t)`; returns `None` if not exact.
fn poly_div_in_a(num: &ATLaurent, den: &ATLaurent) -> Option<ATLaurent> {
    if num.is_zero() {
        return Some(ATLaurent::new());
    }
    let den_deg = den.a_degree()?;
    let den_lead = den.a_slice(den_deg);
    // Any exact quotient has lowest a-exponent val(num) − val(den); once the
    // leading remainder term drops below that, the division cannot close.
    let a_val = |p: &ATLaurent| p.terms().map(|((a, _), _)| a).min();
    let quot_val = a_val(num)? - a_val(den)?;
    let mut rem = num.clone();
    let mut quot = ATLaurent::new();
    while !rem.is_zero() {
        let rd = rem.a_degree().unwrap();
        if rd - den_deg < quot_val {
            return None;
        }
        let rl = rem.a_slice(rd);
        // rl / den_lead must be an exact Laurent quotient.
        let (q, r) = rl.divrem(&den_lead);
        if !r.is_zero() {
            return None;
        }
        // quotient term: q(t) · a^{rd - den_deg}
        let mut term = ATLaurent::new();
        for (e, c) in q.terms() {
            term.add_term(rd - den_deg, e, c.clone());
        }
        quot = quot.add(&term);
        rem = rem.sub(&term.mul(den));
        if let Some(nrd) = rem.a_degree() {
            if nrd >= rd && !rem.a_slice(rd).is_zero() {
                return None;
            }
        }
    }
    Some(quot)
}
