//! Cyclotomic-field arithmetic: elements of `Q(ζ_n)` reduced modulo the
//! n-th cyclotomic polynomial, plus Laurent polynomials in `t` with
//! cyclotomic coefficients (needed for dihedral Hecke characters).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::laurent::{rat, HalfLaurent, Rat};
use super::Ring;

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (ascending, monic) of the n-th cyclotomic polynomial Φ_n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d, computed by exact division.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &phi_d);
        }
    }
    CYCLO_CACHE.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (divisor monic).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of `Q(ζ_n)` stored in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
///
/// Conductors are not minimized; equality and arithmetic lift both operands
/// into the compositum `Q(ζ_lcm)` where the power-basis representation is
/// unique.
#[derive(Clone)]
pub struct Cyclo {
    n: u32,
    c: Vec<Rat>,
}

impl Cyclo {
    pub fn from_rat(r: Rat) -> Self {
        Cyclo { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(rat(k))
    }

    /// Whether the element lies in `Z[ζ_n]`, the ring of integers of the
    /// ambient cyclotomic field (the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|r| r.denom().is_one())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = rat(1);
        Cyclo::reduce(n, poly)
    }

    /// `(order n, exponent k)` with `e^{iπν} = ζ_n^k` and `gcd(k, n) = 1`.
    pub fn half_turn_order(nu: &Rat) -> (u32, u32) {
        let a = nu.numer();
        let b = nu.denom(); // > 0, coprime to a
        let two_b = BigInt::from(2) * b;
        let a_mod = a.mod_floor(&two_b);
        let g = a_mod.gcd(&two_b);
        let n: BigInt = &two_b / &g;
        let k: BigInt = &a_mod / &g;
        let n = u32::try_from(&n).expect("conductor overflow");
        let k = u32::try_from(&k).expect("exponent overflow");
        (n.max(1), k)
    }

    /// `e^{iπν}` as an exact root of unity.
    pub fn half_turn_root(nu: &Rat) -> Self {
        let (n, k) = Self::half_turn_order(nu);
        Self::root_of_unity(n, k as i64)
    }

    fn reduce(n: u32, mut poly: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        if poly.len() > d {
            // Long division by the monic Φ_n; keep the remainder.
            for k in (d..poly.len()).rev() {
                let c = poly[k].clone();
                if c.is_zero() {
                    continue;
                }
                for (i, p) in phi.iter().enumerate() {
                    let delta = &c * Rat::from_integer(p.clone());
                    poly[k - d + i] -= delta;
                }
            }
        }
        poly.resize(d.max(1), Rat::zero());
        poly.truncate(d.max(1));
        Cyclo { n, c: poly }
    }

    /// Re-express in `Q(ζ_m)` for `n | m`.
    pub fn lift_to(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "lift_to requires a multiple conductor");
        let stride = (m / self.n) as usize;
        let mut poly = vec![Rat::zero(); (self.c.len() - 1) * stride + 1];
        for (i, coeff) in self.c.iter().enumerate() {
            poly[i * stride] = coeff.clone();
        }
        Cyclo::reduce(m, poly)
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = num_integer::lcm(a.n, b.n);
        (a.lift_to(m), b.lift_to(m))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyclo {
            n: self.n,
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    /// Galois substitution `ζ ↦ ζ^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        assert_eq!(num_integer::gcd(k.rem_euclid(self.n as i64), self.n as i64), 1);
        let mut acc = Cyclo::from_rat(Rat::zero()).lift_to(self.n);
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = Cyclo::root_of_unity(self.n, k * i as i64).scale(coeff);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e >= 0 { self.clone() } else { self.inv() };
        let mut acc = Cyclo::from_int(1);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against Φ_n.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let phi: Vec<Rat> = cyclotomic_polynomial(self.n)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        // Extended Euclid on (a, Φ): find u with u·a ≡ gcd (mod Φ).
        let mut r0 = phi;
        let mut r1 = self.c.clone();
        trim(&mut r1);
        let mut u0: Vec<Rat> = vec![];
        let mut u1: Vec<Rat> = vec![rat(1)];
        while !r1.is_empty() {
            let (q, r) = rat_poly_divrem(&r0, &r1);
            let u2 = rat_poly_sub(&u0, &rat_poly_mul(&q, &u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u2;
        }
        // r0 = gcd (a nonzero constant, since Φ_n is irreducible over Q).
        assert_eq!(r0.len(), 1, "cyclotomic gcd was not constant");
        let scale = r0[0].recip();
        let inv_poly: Vec<Rat> = u0.iter().map(|c| c * &scale).collect();
        Cyclo::reduce(self.n, inv_poly)
    }

    pub fn to_rational(&self) -> Option<Rat> {
        if self.c.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclo::common(self, other);
        let len = a.c.len().max(b.c.len());
        (0..len).all(|i| {
            let x = a.c.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = b.c.get(i).cloned().unwrap_or_else(Rat::zero);
            x == y
        })
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo::from_int(0)
    }
    fn one() -> Self {
        Cyclo::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Cyclo::common(self, other);
        for (i, coeff) in b.c.iter().enumerate() {
            a.c[i] += coeff;
        }
        a
    }
    fn neg(&self) -> Self {
        Cyclo {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = Cyclo::common(self, other);
        let mut poly = vec![Rat::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        Cyclo::reduce(a.n, poly)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(format!("{}", c));
            } else {
                parts.push(format!("{}*z{}^{}", c, self.n, i));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn rat_poly_divrem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty());
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + den.len() - 1] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                let delta = &c * d;
                rem[k + i] -= delta;
            }
        }
    }
    trim(&mut rem);
    (quot, rem)
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rat::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    let mut out = out;
    trim(&mut out);
    out
}

/// A Laurent polynomial in `t` with cyclotomic coefficients (exponent `e`
/// stands for `q^{e/2}`, exactly as in [`HalfLaurent`]).
#[derive(Clone, PartialEq, Default)]
pub struct CycloLaurent {
    terms: BTreeMap<i64, Cyclo>,
}

impl CycloLaurent {
    pub fn new() -> Self {
        CycloLaurent { terms: BTreeMap::new() }
    }

    pub fn term(e: i64, c: Cyclo) -> Self {
        let mut p = Self::new();
        p.add_term(e, c);
        p
    }

    pub fn t_pow(e: i64) -> Self {
        Self::term(e, Cyclo::one())
    }

    pub fn add_term(&mut self, e: i64, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn coeff(&self, e: i64) -> Cyclo {
        self.terms.get(&e).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclo)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn from_half_laurent(p: &HalfLaurent) -> Self {
        let mut out = Self::new();
        for (e, c) in p.terms() {
            out.add_term(e, Cyclo::from_rat(c.clone()));
        }
        out
    }

    /// Back to rational coefficients, if every coefficient is rational.
    pub fn to_half_laurent(&self) -> Option<HalfLaurent> {
        let mut out = HalfLaurent::new();
        for (e, c) in &self.terms {
            out.add_term(*e, c.to_rational()?);
        }
        Some(out)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        let mut out = Self::new();
        for (e, x) in &self.terms {
            out.add_term(*e, x.mul(c));
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        CycloLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution `t ↦ −t^{−1}`.
    pub fn bar(&self) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            let c = if e.rem_euclid(2) == 1 { c.neg() } else { c.clone() };
            out.add_term(-e, c);
        }
        out
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> Cyclo {
        self.terms
            .values()
            .fold(Cyclo::zero(), |acc, c| acc.add(c))
    }

    /// Exact substitution `t = e^{iπν}`.
    pub fn eval_root(&self, nu: &Rat) -> Cyclo {
        let root = Cyclo::half_turn_root(nu);
        let mut acc = Cyclo::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&root.pow(*e).mul(c));
        }
        acc
    }

    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplicity of `t = e^{iπν}` as a root, by repeated exact division
    /// by the linear factor `t − e^{iπν}` over the compositum field.
    pub fn root_multiplicity(&self, nu: &Rat) -> usize {
        let root = Cyclo::half_turn_root(nu);
        let lin = {
            let mut p = CycloLaurent::t_pow(1);
            p.add_term(0, root.neg());
            p
        };
        let mut mult = 0;
        let mut p = self.clone();
        loop {
            if p.is_zero() {
                return mult;
            }
            let (q, r) = p.divrem(&lin);
            if r.is_zero() {
                mult += 1;
                p = q;
            } else {
                return mult;
            }
        }
    }

    /// Division with remainder, treating both as polynomials in `t` up to
    /// unit monomial factors.
    pub fn divrem(&self, div: &CycloLaurent) -> (CycloLaurent, CycloLaurent) {
        assert!(!div.is_zero());
        let mut rem = self.clone();
        let mut quot = CycloLaurent::new();
        let dd = div.degree().unwrap();
        let dv = div.valuation().unwrap();
        let dl = div.coeff(dd).inv();
        while let Some(rd) = rem.degree() {
            let rv = rem.valuation().unwrap();
            if rd - rv < dd - dv {
                break;
            }
            let c = rem.coeff(rd).mul(&dl);
            let mono = CycloLaurent::term(rd - dd, c);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(div));
            if let Some(nrd) = rem.degree() {
                assert!(nrd < rd);
            }
        }
        (quot, rem)
    }
}

impl Ring for CycloLaurent {
    fn zero() -> Self {
        CycloLaurent::new()
    }
    fn one() -> Self {
        CycloLaurent::term(0, Cyclo::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        CycloLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = CycloLaurent::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for CycloLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = self.to_half_laurent() {
            return write!(f, "{}", h.to_string_q());
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({:?})*t^{}", c, e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::laurent::ratio;
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let p3 = cyclotomic_polynomial(3);
        assert_eq!(p3, vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        let p4 = cyclotomic_polynomial(4);
        assert_eq!(p4, vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
        let p12 = cyclotomic_polynomial(12);
        assert_eq!(
            p12,
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn root_powers_and_sums() {
        // 1 + ζ_3 + ζ_3² = 0
        let z = Cyclo::root_of_unity(3, 1);
        let s = Cyclo::one().add(&z).add(&z.pow(2));
        assert!(s.is_zero());
        // ζ_6 = −ζ_3²  (via lifting to conductor 6)
        let z6 = Cyclo::root_of_unity(6, 1);
        assert_eq!(z6, z.pow(2).neg());
    }

    #[test]
    fn inverse() {
        let z = Cyclo::root_of_unity(5, 2);
        assert_eq!(z.mul(&z.inv()), Cyclo::one());
        let x = Cyclo::one().add(&z); // 1 + ζ_5²
        assert_eq!(x.mul(&x.inv()), Cyclo::one());
    }

    #[test]
    fn half_turn() {
        // e^{iπ/2} = i = ζ_4
        assert_eq!(Cyclo::half_turn_root(&ratio(1, 2)), Cyclo::root_of_unity(4, 1));
        // e^{iπ·2/3} = ζ_3
        assert_eq!(Cyclo::half_turn_root(&ratio(2, 3)), Cyclo::root_of_unity(3, 1));
        // e^{iπ·3/2} = −i
        assert_eq!(
            Cyclo::half_turn_root(&ratio(3, 2)),
            Cyclo::root_of_unity(4, 3)
        );
        // e^{iπ·1} = −1
        assert_eq!(Cyclo::half_turn_root(&rat(1)), Cyclo::from_int(-1));
    }

    #[test]
    fn cyclo_laurent_roundtrip() {
        let p = HalfLaurent::from_terms([(3, rat(2)), (-1, ratio(1, 2))]);
        let cl = CycloLaurent::from_half_laurent(&p);
        assert_eq!(cl.to_half_laurent().unwrap(), p);
    }

    #[test]
    fn cyclo_laurent_root_multiplicity() {
        // (t² + 1)² has a double root at t = i (ν = 1/2).
        let mut p = CycloLaurent::t_pow(2);
        p.add_term(0, Cyclo::one());
        let p2 = p.mul(&p);
        assert_eq!(p2.root_multiplicity(&ratio(1, 2)), 2);
        assert_eq!(p.root_multiplicity(&ratio(1, 3)), 0);
    }

    #[test]
    fn galois_substitution() {
        let z = Cyclo::root_of_unity(7, 1);
        let x = z.add(&z.pow(6)); // 2cos(2π/7), fixed by ζ ↦ ζ^{-1}
        assert_eq!(x.galois(-1), x);
        assert_ne!(x.galois(2), x);
    }
}
