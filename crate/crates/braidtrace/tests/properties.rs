//! Randomized algebraic invariants of the exact-arithmetic kernel: ring and
//! field laws, involutions, division with remainder, root evaluation, and
//! the text round trip used by the command-line interface.

use proptest::prelude::*;

use braidtrace::cli::{parse_half_laurent, parse_rfunc};
use braidtrace::exactmath::{rat, ratio, ATLaurent, ATRat, HalfLaurent, RFunc, Ring};

fn laurent_strategy() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec(((-8i64..=8), (-9i64..=9)), 0..6)
        .prop_map(|ts| HalfLaurent::from_terms(ts.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn nonzero_laurent() -> impl Strategy<Value = HalfLaurent> {
    laurent_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn rfunc_strategy() -> impl Strategy<Value = RFunc> {
    (laurent_strategy(), nonzero_laurent())
        .prop_map(|(n, d)| RFunc::from_laurent(n).div(&RFunc::from_laurent(d)))
}

fn at_strategy() -> impl Strategy<Value = ATLaurent> {
    prop::collection::vec(((-4i64..=4), (-6i64..=6), (-9i64..=9)), 0..5).prop_map(|ts| {
        let mut p = ATLaurent::new();
        for (a, t, c) in ts {
            p.add_term(a, t, rat(c));
        }
        p
    })
}

proptest! {
    // --- Laurent-polynomial ring laws -----------------------------------

    #[test]
    fn laurent_ring_laws(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn laurent_bar_is_a_ring_involution(a in laurent_strategy(), b in laurent_strategy()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn laurent_shift_stretch_eval(a in laurent_strategy(), b in laurent_strategy(),
                                  k in -5i64..=5, s in 1i64..=4) {
        prop_assert_eq!(a.shift(k), a.mul(&HalfLaurent::t_pow(k)));
        prop_assert_eq!(a.mul(&b).stretch(s), a.stretch(s).mul(&b.stretch(s)));
        prop_assert_eq!(a.add(&b).eval_one(), a.eval_one() + b.eval_one());
        prop_assert_eq!(a.mul(&b).eval_one(), a.eval_one() * b.eval_one());
    }

    #[test]
    fn laurent_division_with_remainder(a in laurent_strategy(), d in nonzero_laurent()) {
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a.clone());
        // the remainder spans fewer coefficient slots than the divisor
        if !r.is_zero() {
            let width = |p: &HalfLaurent| p.degree().unwrap() - p.valuation().unwrap();
            prop_assert!(width(&r) < width(&d));
        }
    }

    #[test]
    fn laurent_gcd_divides_both(a in nonzero_laurent(), b in nonzero_laurent()) {
        let g = a.gcd(&b);
        prop_assert!(a.divrem(&g).1.is_zero());
        prop_assert!(b.divrem(&g).1.is_zero());
    }

    #[test]
    fn laurent_root_evaluation_is_a_homomorphism(a in laurent_strategy(), b in laurent_strategy(),
                                                 p in 1i64..=6, q in 1i64..=6) {
        let nu = ratio(p, q);
        prop_assert_eq!(a.add(&b).eval_root(&nu), a.eval_root(&nu).add(&b.eval_root(&nu)));
        prop_assert_eq!(a.mul(&b).eval_root(&nu), a.eval_root(&nu).mul(&b.eval_root(&nu)));
    }

    #[test]
    fn laurent_text_round_trip(a in laurent_strategy()) {
        let s = a.to_string_q();
        let back = parse_half_laurent(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    // --- rational functions ---------------------------------------------

    #[test]
    fn rfunc_field_laws(a in rfunc_strategy(), b in rfunc_strategy(), c in rfunc_strategy()) {
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
        prop_assert!(a.mul(&b).sub(&b.mul(&a)).is_zero());
        prop_assert!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.recip()).sub(&RFunc::from_int(1)).is_zero());
            prop_assert!(b.div(&a).mul(&a).sub(&b).is_zero());
        }
    }

    #[test]
    fn rfunc_matches_cross_multiplied_laurents(n1 in laurent_strategy(), d1 in nonzero_laurent(),
                                               n2 in laurent_strategy(), d2 in nonzero_laurent()) {
        let f = RFunc::new(n1.clone(), d1.clone());
        let g = RFunc::new(n2.clone(), d2.clone());
        let sum = RFunc::new(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2));
        prop_assert!(f.add(&g).sub(&sum).is_zero());
        let prod = RFunc::new(n1.mul(&n2), d1.mul(&d2));
        prop_assert!(f.mul(&g).sub(&prod).is_zero());
    }

    #[test]
    fn rfunc_series_expansion_matches(n in laurent_strategy(), d in nonzero_laurent()) {
        // compare the truncated geometric expansion with an exact product
        let f = RFunc::new(n, d.clone());
        let k = 12;
        let series = f.to_series(k);
        let mut recon = HalfLaurent::new();
        for (e, c) in series.terms() {
            recon.add_term(e, c.clone());
        }
        // f - recon must vanish to order k: num - recon * den has valuation
        // beyond k + val(den)
        let diff = recon.mul(f.denominator()).sub(f.numerator());
        if !diff.is_zero() {
            let excess = diff.valuation().unwrap() - f.denominator().valuation().unwrap();
            prop_assert!(excess > k, "series wrong at order {}", excess);
        }
    }

    #[test]
    fn rfunc_text_round_trip(f in rfunc_strategy()) {
        let back = parse_rfunc(&f.to_string_q()).unwrap();
        prop_assert!(back.sub(&f).is_zero());
    }

    // --- two-variable (a, t) arithmetic ---------------------------------

    #[test]
    fn at_ring_laws(a in at_strategy(), b in at_strategy(), c in at_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn atrat_equality_is_cross_multiplicative(p in at_strategy(),
                                              d in at_strategy().prop_filter("nonzero", |x| !x.is_zero())) {
        // p and (p d)/d are the same rational function
        let plain = ATRat::from_poly(p.clone());
        let framed = ATRat::new(p.mul(&d), d);
        prop_assert_eq!(&plain, &framed);
        // and reduction back to a polynomial recovers p
        prop_assert_eq!(framed.to_polynomial().unwrap(), p);
    }

    #[test]
    fn at_slices_reassemble(p in at_strategy()) {
        let mut recon = ATLaurent::new();
        let mut degrees: Vec<i64> = p.terms().map(|((a, _), _)| a).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for a in degrees {
            let slice = p.a_slice(a);
            for (t, c) in slice.terms() {
                recon.add_term(a, t, c.clone());
            }
        }
        prop_assert_eq!(recon, p);
    }
}
