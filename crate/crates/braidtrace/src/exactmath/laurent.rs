//! Laurent polynomials in `t = q^{1/2}` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclo::Cyclo;
use super::Ring;

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A Laurent polynomial in `t`, where the exponent `e` stands for `q^{e/2}`.
///
/// Invariant: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rat>,
}

impl HalfLaurent {
    pub fn new() -> Self {
        HalfLaurent { terms: BTreeMap::new() }
    }

    /// The monomial `c · t^e`.
    pub fn term(e: i64, c: Rat) -> Self {
        let mut p = Self::new();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The monomial `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::term(e, rat(1))
    }

    /// The monomial `q^k = t^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::t_pow(2 * k)
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::term(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = Self::new();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
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

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Minimal exponent; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Maximal exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.degree().map(|e| self.coeff(e)).unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// The bar involution `t ↦ −t^{−1}`.
    pub fn bar(&self) -> Self {
        HalfLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (-e, if e.rem_euclid(2) == 1 { -a } else { a.clone() }))
                .collect(),
        }
    }

    /// The substitution `t ↦ t^{−1}`.
    pub fn invert_t(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, a)| (-e, a.clone())).collect(),
        }
    }

    /// The substitution `t ↦ t^k` for `k ≥ 1` (exponent rescaling).
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k >= 1);
        HalfLaurent {
            terms: self.terms.iter().map(|(e, a)| (e * k, a.clone())).collect(),
        }
    }

    /// Value at `t = 1` (sum of coefficients).
    pub fn eval_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Value at a nonzero rational `t = x`.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        assert!(!x.is_zero(), "evaluation at t = 0 of a Laurent polynomial");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut p = Rat::one();
            let mut k = e.unsigned_abs();
            let base = if *e >= 0 { x.clone() } else { x.recip() };
            while k > 0 {
                p *= &base;
                k -= 1;
            }
            acc += c * p;
        }
        acc
    }

    /// Exact substitution `t = e^{iπν}` into the cyclotomic field of the
    /// appropriate conductor.
    pub fn eval_root(&self, nu: &Rat) -> Cyclo {
        let root = Cyclo::half_turn_root(nu);
        let mut acc = Cyclo::from_rat(Rat::zero());
        for (e, c) in &self.terms {
            acc = acc.add(&root.pow(*e).scale(c));
        }
        acc
    }

    /// True iff every exponent is even, i.e. the value lies in `Q[q^{±1}]`.
    pub fn is_whole_q(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// True iff all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// True iff all coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// As `(t-valuation, dense coefficient vector from the valuation up)`.
    /// Returns `(0, [])` for the zero polynomial.
    pub fn to_dense(&self) -> (i64, Vec<Rat>) {
        let Some(v) = self.valuation() else {
            return (0, Vec::new());
        };
        let d = self.degree().unwrap();
        let mut coeffs = vec![Rat::zero(); (d - v + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - v) as usize] = c.clone();
        }
        (v, coeffs)
    }

    pub fn from_dense(valuation: i64, coeffs: &[Rat]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (valuation + i as i64, c.clone())),
        )
    }

    /// Polynomial division by a nonzero divisor, ignoring `t`-valuations:
    /// returns `(quotient, remainder)` with
    /// `self = quotient·div + remainder` and `deg(remainder) < deg(div)`
    /// (as polynomials after clearing valuations; the quotient and remainder
    /// are Laurent).
    pub fn divrem(&self, div: &HalfLaurent) -> (HalfLaurent, HalfLaurent) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = HalfLaurent::new();
        let dd = div.degree().unwrap();
        let dl = div.leading_coeff();
        while let Some(rd) = rem.degree() {
            // Compare the number of terms below the top, not absolute
            // degrees: Laurent shifts are units, so we stop when the
            // remainder's span is shorter than the divisor's.
            let rv = rem.valuation().unwrap();
            let dv = div.valuation().unwrap();
            if rd - rv < dd - dv {
                break;
            }
            let c = rem.leading_coeff() / &dl;
            let mono = HalfLaurent::term(rd - dd, c);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(div));
            if let Some(nrd) = rem.degree() {
                assert!(nrd < rd, "division failed to reduce degree");
            }
        }
        (quot, rem)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, div: &HalfLaurent) -> HalfLaurent {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Monic gcd of `self` and `other` as polynomials in `t` (valuations are
    /// units and are quotiented away). Returns `1` if either is a monomial.
    pub fn gcd(&self, other: &HalfLaurent) -> HalfLaurent {
        let mut a = self.clear_valuation();
        let mut b = other.clear_valuation();
        if a.is_zero() {
            return b.make_monic();
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.clear_valuation();
        }
        a.make_monic()
    }

    /// Divide by `t^{valuation}` so the result is a polynomial with nonzero
    /// constant term (zero maps to zero).
    pub fn clear_valuation(&self) -> HalfLaurent {
        match self.valuation() {
            Some(v) => self.shift(-v),
            None => HalfLaurent::new(),
        }
    }

    pub fn make_monic(&self) -> HalfLaurent {
        let l = self.leading_coeff();
        if l.is_zero() || l.is_one() {
            self.clone()
        } else {
            self.scale(&l.recip())
        }
    }

    /// Multiplicity of `t = e^{iπν}` as a root.
    pub fn root_multiplicity(&self, nu: &Rat) -> usize {
        // Repeatedly divide by the minimal polynomial of the root over Q.
        // Dividing by the full cyclotomic polynomial of the root's order is
        // correct here because our polynomials have rational coefficients.
        let (n, _k) = Cyclo::half_turn_order(nu);
        let phi = super::cyclotomic_polynomial(n);
        let phi_poly = HalfLaurent::from_terms(
            phi.iter()
                .enumerate()
                .map(|(i, c)| (i as i64, Rat::from_integer(c.clone()))),
        );
        let mut mult = 0;
        let mut p = self.clear_valuation();
        loop {
            if p.is_zero() {
                return mult;
            }
            let (q, r) = p.divrem(&phi_poly);
            if r.is_zero() {
                mult += 1;
                p = q.clear_valuation();
            } else {
                return mult;
            }
        }
    }

    /// Render using `q`-notation: even exponents as `q^k`, odd as `q^{k/2}`.
    pub fn to_string_q(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
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
            let var = match e {
                0 => None,
                2 => Some("q".to_string()),
                e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
                e => Some(format!("q^({}/2)", e)),
            };
            match (var, mag.is_one()) {
                (None, _) => out.push_str(&mag.to_string()),
                (Some(v), true) => out.push_str(&v),
                (Some(v), false) => out.push_str(&format!("{}*{}", mag, v)),
            }
        }
        out
    }
}

impl Ring for HalfLaurent {
    fn zero() -> Self {
        HalfLaurent::new()
    }
    fn one() -> Self {
        HalfLaurent::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = HalfLaurent::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_q())
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_q())
    }
}
