//! Acceptance battery for the frozen golden corpus.
//!
//! One test per criterion; the harness prints exactly one pass/fail line for
//! each. Every check is exact (big-rational arithmetic); each criterion also
//! enforces a wall-clock budget.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use braidtrace::coxeter::{BraidWord, CoxeterSystem, CoxeterType};
use braidtrace::daha;
use braidtrace::exactmath::{rat, ATLaurent, ATRat, HalfLaurent, RFunc, Rat, Ring};
use braidtrace::ffcount::{
    count_chains, count_x0, springer_decompose, verify_kalman, verify_virtual, ChainCounts, Fiber,
    Group,
};
use braidtrace::reptheory::chartable::{CharLabel, CharTable};
use braidtrace::reptheory::molien::molien_char;
use braidtrace::traces::{pole_at_most, pole_bound, TraceEngine};

fn system(ty: &str) -> CoxeterSystem {
    CoxeterSystem::new(CoxeterType::parse(ty).unwrap()).unwrap()
}

/// Laurent polynomial from (q-exponent, coefficient) pairs.
fn qp(terms: &[(i64, i64)]) -> HalfLaurent {
    HalfLaurent::from_terms(terms.iter().map(|&(e, c)| (2 * e, rat(c))))
}

/// Laurent polynomial from (half-exponent, coefficient) pairs: exponent k
/// stands for q^{k/2}.
fn hp(terms: &[(i64, i64)]) -> HalfLaurent {
    HalfLaurent::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
}

/// Rational function from integral q-polynomials num/den.
fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RFunc {
    RFunc::from_laurent(qp(num)).div(&RFunc::from_laurent(qp(den)))
}

fn assert_rfunc_eq(got: &RFunc, want: &RFunc, ctx: &str) {
    assert!(
        got.sub(want).is_zero(),
        "{ctx}: got {}, want {}",
        got.to_string_q(),
        want.to_string_q()
    );
}

fn idx(table: &CharTable, lab: &CharLabel) -> usize {
    table.char_index(lab).unwrap()
}

fn budget(start: Instant, secs: u64, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(secs),
        "{what} exceeded its {secs} s budget ({elapsed:?})"
    );
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_rank_one_closed_forms() {
    let start = Instant::now();
    let sys = system("A1");
    let eng = TraceEngine::new(&sys, None).unwrap();
    let triv = idx(&eng.table, &CharLabel::Partition(vec![2]));
    let eps = idx(&eng.table, &CharLabel::Partition(vec![1, 1]));
    for m in 1..=8i64 {
        let beta = BraidWord::new(vec![1]).repeat(m as usize);
        // Tr<sigma^m> = (q^{1/2})^m + (-q^{-1/2})^m eps
        let tr = eng.rw_trace(&beta).unwrap();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        assert_eq!(tr[triv], hp(&[(m, 1)]), "m = {m}");
        assert_eq!(tr[eps], hp(&[(-m, sign)]), "m = {m}");
        // Tr<sigma^m>^0 = (1 - q^2)^{-1} ((1 - (-q)^{m+1}) + (q + (-q)^m) eps)
        let tr0 = eng.rw_trace0(&beta).unwrap();
        let s = if m % 2 == 0 { 1 } else { -1 };
        let den = [(0, 1), (2, -1i64)];
        // 1 - (-q)^{m+1} = 1 + (-1)^m q^{m+1}
        let want_triv = rf(&[(0, 1), (m + 1, s)], &den);
        let want_eps = rf(&[(1, 1), (m, s)], &den);
        assert_rfunc_eq(&tr0[triv], &want_triv, &format!("trace0 triv, m = {m}"));
        assert_rfunc_eq(&tr0[eps], &want_eps, &format!("trace0 eps, m = {m}"));
    }
    budget(start, 1, "criterion 1");
}

#[test]
fn criterion_2_rank_two_symmetric_table() {
    let start = Instant::now();
    let sys = system("A2");
    let eng = TraceEngine::new(&sys, None).unwrap();
    let t = &eng.table;
    let chars = [
        idx(t, &CharLabel::Partition(vec![3])),
        idx(t, &CharLabel::Partition(vec![2, 1])),
        idx(t, &CharLabel::Partition(vec![1, 1, 1])),
    ];
    // rows: braid word; columns: (1, phi, eps) coefficients of Tr<sigma_w>
    let table: Vec<(Vec<i32>, [HalfLaurent; 3])> = vec![
        (vec![], [qp(&[(0, 1)]), qp(&[(0, 2)]), qp(&[(0, 1)])]),
        (vec![1], [hp(&[(1, 1)]), hp(&[(1, 1), (-1, -1)]), hp(&[(-1, -1)])]),
        (vec![2], [hp(&[(1, 1)]), hp(&[(1, 1), (-1, -1)]), hp(&[(-1, -1)])]),
        (vec![1, 2], [qp(&[(1, 1)]), qp(&[(0, -1)]), qp(&[(-1, 1)])]),
        (vec![2, 1], [qp(&[(1, 1)]), qp(&[(0, -1)]), qp(&[(-1, 1)])]),
        (vec![1, 2, 1], [hp(&[(3, 1)]), HalfLaurent::new(), hp(&[(-3, -1)])]),
    ];
    for (word, want) in &table {
        let tr = eng.rw_trace(&BraidWord::new(word.clone())).unwrap();
        for (k, &i) in chars.iter().enumerate() {
            assert_eq!(tr[i], want[k], "Tr for word {word:?}, char {k}");
        }
    }
    // the four Tr^0 displays
    let one = [(0, 1i64)];
    let dq = [(0, 1), (1, -1i64)]; // 1 - q
    let tr0_table: Vec<(Vec<i32>, [RFunc; 3])> = vec![
        (
            vec![],
            [
                rf(&one, &[(0, 1), (1, -2), (2, 1)]),
                rf(&[(0, 2)], &[(0, 1), (1, -2), (2, 1)]),
                rf(&one, &[(0, 1), (1, -2), (2, 1)]),
            ],
        ),
        (vec![1], [rf(&one, &dq), rf(&one, &dq), RFunc::zero()]),
        (vec![1, 2], [rf(&one, &one), RFunc::zero(), RFunc::zero()]),
        (
            vec![1, 2, 1],
            [
                rf(&[(0, 1), (1, -1), (2, 1)], &dq),
                rf(&[(1, 1)], &dq),
                RFunc::zero(),
            ],
        ),
    ];
    for (word, want) in &tr0_table {
        let tr0 = eng.rw_trace0(&BraidWord::new(word.clone())).unwrap();
        for (k, &i) in chars.iter().enumerate() {
            assert_rfunc_eq(&tr0[i], &want[k], &format!("Tr0 for word {word:?}, char {k}"));
        }
    }
    budget(start, 1, "criterion 2");
}

#[test]
fn criterion_3_square_dihedral_table() {
    let start = Instant::now();
    let sys = system("BC2");
    let eng = TraceEngine::new(&sys, None).unwrap();
    let t = &eng.table;
    // order: 1, delta, phi, eps*delta, eps  (delta(s) = 1 with s = generator 1)
    let chars = [
        idx(t, &CharLabel::Triv),
        idx(t, &CharLabel::Delta),
        idx(t, &CharLabel::Phi(1)),
        idx(t, &CharLabel::EpsDelta),
        idx(t, &CharLabel::Sign),
    ];
    let z = HalfLaurent::new();
    let table: Vec<(Vec<i32>, [HalfLaurent; 5])> = vec![
        (
            vec![],
            [qp(&[(0, 1)]), qp(&[(0, 1)]), qp(&[(0, 2)]), qp(&[(0, 1)]), qp(&[(0, 1)])],
        ),
        (
            vec![1],
            [
                hp(&[(1, 1)]),
                hp(&[(1, 1)]),
                hp(&[(1, 1), (-1, -1)]),
                hp(&[(-1, -1)]),
                hp(&[(-1, -1)]),
            ],
        ),
        (
            vec![2],
            [
                hp(&[(1, 1)]),
                hp(&[(-1, -1)]),
                hp(&[(1, 1), (-1, -1)]),
                hp(&[(1, 1)]),
                hp(&[(-1, -1)]),
            ],
        ),
        (
            vec![1, 2],
            [qp(&[(1, 1)]), z.clone(), qp(&[(0, -1)]), z.clone(), qp(&[(-1, 1)])],
        ),
        (
            vec![2, 1],
            [qp(&[(1, 1)]), z.clone(), qp(&[(0, -1)]), z.clone(), qp(&[(-1, 1)])],
        ),
        (
            vec![1, 2, 1],
            [
                hp(&[(3, 1)]),
                hp(&[(-1, -1)]),
                z.clone(),
                hp(&[(1, 1)]),
                hp(&[(-3, -1)]),
            ],
        ),
        (
            vec![2, 1, 2],
            [
                hp(&[(3, 1)]),
                hp(&[(1, 1)]),
                z.clone(),
                hp(&[(-1, -1)]),
                hp(&[(-3, -1)]),
            ],
        ),
        (
            vec![1, 2, 1, 2],
            [qp(&[(2, 1)]), qp(&[(0, -1)]), z.clone(), qp(&[(0, -1)]), qp(&[(-2, 1)])],
        ),
    ];
    for (word, want) in &table {
        let tr = eng.rw_trace(&BraidWord::new(word.clone())).unwrap();
        for (k, &i) in chars.iter().enumerate() {
            assert_eq!(tr[i], want[k], "Tr for word {word:?}, char {k}");
        }
    }
    // the seven Tr^0 displays
    let one = [(0, 1i64)];
    let dq = [(0, 1), (1, -1i64)];
    let dq2 = [(0, 1), (1, -2), (2, 1i64)];
    let zr = RFunc::zero();
    let tr0_table: Vec<(Vec<i32>, [RFunc; 5])> = vec![
        (
            vec![],
            [
                rf(&one, &dq2),
                rf(&one, &dq2),
                rf(&[(0, 2)], &dq2),
                rf(&one, &dq2),
                rf(&one, &dq2),
            ],
        ),
        (
            vec![1],
            [rf(&one, &dq), rf(&one, &dq), rf(&one, &dq), zr.clone(), zr.clone()],
        ),
        (
            vec![2],
            [rf(&one, &dq), zr.clone(), rf(&one, &dq), rf(&one, &dq), zr.clone()],
        ),
        (
            vec![1, 2],
            [rf(&one, &one), zr.clone(), zr.clone(), zr.clone(), zr.clone()],
        ),
        (
            vec![1, 2, 1],
            [
                rf(&[(0, 1), (1, -1), (2, 1)], &dq),
                zr.clone(),
                rf(&[(1, 1)], &dq),
                rf(&[(1, 1)], &dq),
                zr.clone(),
            ],
        ),
        (
            vec![2, 1, 2],
            [
                rf(&[(0, 1), (1, -1), (2, 1)], &dq),
                rf(&[(1, 1)], &dq),
                rf(&[(1, 1)], &dq),
                zr.clone(),
                zr.clone(),
            ],
        ),
        (
            vec![1, 2, 1, 2],
            [
                rf(&[(0, 1), (2, 1)], &one),
                zr.clone(),
                rf(&[(1, 1)], &one),
                zr.clone(),
                zr.clone(),
            ],
        ),
    ];
    for (word, want) in &tr0_table {
        let tr0 = eng.rw_trace0(&BraidWord::new(word.clone())).unwrap();
        for (k, &i) in chars.iter().enumerate() {
            assert_rfunc_eq(&tr0[i], &want[k], &format!("Tr0 for word {word:?}, char {k}"));
        }
    }
    budget(start, 1, "criterion 3");
}

#[test]
fn criterion_4_iterated_torus_braid() {
    let start = Instant::now();
    let sys = system("A3");
    let eng = TraceEngine::new(&sys, None).unwrap();
    let t = &eng.table;
    let chars = [
        idx(t, &CharLabel::Partition(vec![4])),
        idx(t, &CharLabel::Partition(vec![3, 1])),
        idx(t, &CharLabel::Partition(vec![2, 2])),
        idx(t, &CharLabel::Partition(vec![2, 1, 1])),
        idx(t, &CharLabel::Partition(vec![1, 1, 1, 1])),
    ];
    // beta = (s t u)^6 s
    let beta = BraidWord::new(vec![1, 2, 3]).repeat(6).concat(&BraidWord::new(vec![1]));
    assert_eq!(beta.writhe(), 19);

    // 5-term Tr display
    let tr = eng.rw_trace(&beta).unwrap();
    let want_tr = [
        hp(&[(19, 1)]),
        hp(&[(7, -1)]),
        hp(&[(1, 1), (-1, -1)]),
        hp(&[(-7, 1)]),
        hp(&[(-19, -1)]),
    ];
    for (k, &i) in chars.iter().enumerate() {
        assert_eq!(tr[i], want_tr[k], "Tr char {k}");
    }

    // 5 x 17 coefficient table of Tr^0 (columns q^0 .. q^16)
    let rows: [[i64; 17]; 5] = [
        [1, 0, 1, 1, 2, 1, 3, 1, 3, 1, 3, 1, 2, 1, 1, 0, 1],
        [0, 1, 1, 2, 2, 4, 3, 5, 3, 5, 3, 4, 2, 2, 1, 1, 0],
        [0, 0, 1, 0, 2, 1, 3, 1, 4, 1, 3, 1, 2, 0, 1, 0, 0],
        [0, 0, 0, 1, 1, 2, 2, 3, 2, 3, 2, 2, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    ];
    let tr0 = eng.rw_trace0(&beta).unwrap();
    for (k, &i) in chars.iter().enumerate() {
        let want: Vec<(i64, i64)> = (0..17).map(|j| (j as i64, rows[k][j])).collect();
        let want = RFunc::from_laurent(qp(&want));
        assert_rfunc_eq(&tr0[i], &want, &format!("Tr0 row {k}"));
    }

    // Springer decomposition, including the single -q^7 term
    let dec = springer_decompose(&sys, &eng.table, &tr0).unwrap();
    let expect: Vec<(Vec<usize>, Vec<(i64, i64)>)> = vec![
        (vec![4], vec![(16, 1)]),
        (vec![3, 1], vec![(10, 1), (11, 1), (12, 1), (13, 1), (14, 1)]),
        (vec![2, 2], vec![(6, 1), (7, -1), (8, 1), (10, 1), (12, 1)]),
        (
            vec![2, 1, 1],
            vec![(3, 1), (4, 1), (5, 1), (6, 2), (7, 2), (8, 2), (9, 1), (10, 1)],
        ),
        (vec![1, 1, 1, 1], vec![(0, 1), (2, 1), (4, 1)]),
    ];
    assert_eq!(dec.len(), expect.len());
    for (mu, want_terms) in &expect {
        let got = dec
            .iter()
            .find(|(m, _)| m == mu)
            .unwrap_or_else(|| panic!("missing Q_{mu:?}"));
        let want = RFunc::from_laurent(qp(want_terms));
        assert_rfunc_eq(&got.1, &want, &format!("Springer coefficient of Q_{mu:?}"));
    }
    budget(start, 10, "criterion 4");
}

#[test]
fn criterion_5_homfly_and_torus_knots() {
    let start = Instant::now();
    let one = ATRat::from_poly(ATLaurent::term(0, 0, rat(1)));

    let a1 = system("A1");
    let e1 = TraceEngine::new(&a1, None).unwrap();
    assert_eq!(e1.homfly(&BraidWord::new(vec![1])).unwrap(), one);

    let a2 = system("A2");
    let e2 = TraceEngine::new(&a2, None).unwrap();
    assert_eq!(e2.homfly(&BraidWord::new(vec![1, 2])).unwrap(), one);

    // trefoil: a^2 q^{-1} + a^2 q - a^4
    let mut tref = ATLaurent::term(2, -2, rat(1));
    tref.add_term(2, 2, rat(1));
    tref.add_term(4, 0, rat(-1));
    assert_eq!(
        e1.homfly(&BraidWord::new(vec![1, 1, 1])).unwrap(),
        ATRat::from_poly(tref)
    );

    for (n, m) in [(2, 3), (2, 5), (3, 4), (4, 3), (2, 7)] {
        assert!(daha::gors_check(n, m).unwrap(), "torus ({n},{m})");
    }
    budget(start, 30, "criterion 5");
}

// ---------------------------------------------------------------------------
// criterion 6: randomized property suite, >= 200 cases per property

struct Ctx {
    sys: CoxeterSystem,
}

struct Engines<'a> {
    engines: Vec<TraceEngine<'a>>,
}

fn property_types() -> Vec<Ctx> {
    ["A1", "A2", "A3", "BC2", "G2"]
        .iter()
        .map(|ty| Ctx { sys: system(ty) })
        .collect()
}

fn random_word(
    rng: &mut StdRng,
    rank: usize,
    len_range: std::ops::RangeInclusive<usize>,
    positive: bool,
) -> BraidWord {
    let len = rng.gen_range(len_range);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let l = rng.gen_range(1..=rank as i32);
            if positive || rng.gen_bool(0.5) {
                l
            } else {
                -l
            }
        })
        .collect();
    BraidWord::new(letters)
}

#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xB41D_7ACE);
    let ctxs = property_types();
    let engines = Engines {
        engines: ctxs
            .iter()
            .map(|c| TraceEngine::new(&c.sys, None).unwrap())
            .collect(),
    };
    let pick = |rng: &mut StdRng| rng.gen_range(0..engines.engines.len());

    // (a) conjugation invariance of Tr: Tr<ab> = Tr<ba>
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let r = eng.sys.rank();
        let a = random_word(&mut rng, r, 0..=5, false);
        let b = random_word(&mut rng, r, 0..=5, false);
        let ab = eng.rw_trace(&a.concat(&b)).unwrap();
        let ba = eng.rw_trace(&b.concat(&a)).unwrap();
        assert_eq!(ab, ba, "conjugation invariance");
    }

    // (b) symmetry involution: t -> -t^{-1} sends the psi-coefficient of Tr
    // to the (eps tensor psi)-coefficient
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let b = random_word(&mut rng, eng.sys.rank(), 0..=6, false);
        let tr = eng.rw_trace(&b).unwrap();
        for psi in 0..eng.table.num_chars() {
            let twisted = eng.table.tensor_sign(psi);
            let mapped = HalfLaurent::from_terms(tr[psi].terms().map(|(e, c)| {
                let sign = if e.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
                (-e, c * &sign)
            }));
            assert_eq!(mapped, tr[twisted], "symmetry involution");
        }
    }

    // (c) degree of Tr^0 is exactly |beta| - r (as a rational function of q)
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let b = random_word(&mut rng, eng.sys.rank(), 0..=6, true);
        let tr0 = eng.rw_trace0(&b).unwrap();
        let deg = tr0
            .iter()
            .filter(|c| !c.is_zero())
            .filter_map(|c| c.t_degree())
            .max()
            .unwrap();
        assert_eq!(
            deg,
            2 * (b.writhe() - eng.sys.rank() as i64),
            "Tr0 degree for {b}"
        );
    }

    // (d) pole bound: (1 - q)^{r(w)} clears every denominator of Tr^0
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let b = random_word(&mut rng, eng.sys.rank(), 0..=6, false);
        let k = pole_bound(eng.sys, &b);
        for c in eng.rw_trace0(&b).unwrap() {
            assert!(pole_at_most(&c, k), "pole bound for {b}");
        }
    }

    // (e) Markov axioms: (1) normalization tr(1) = 1; (2) conjugation
    // invariance; (3) multiplicative stabilization across strand inclusion
    for eng in &engines.engines {
        assert_eq!(
            eng.markov_trace(&BraidWord::new(vec![])).unwrap(),
            ATRat::from_poly(ATLaurent::term(0, 0, rat(1))),
            "Markov normalization"
        );
    }
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let r = eng.sys.rank();
        let a = random_word(&mut rng, r, 0..=4, false);
        let b = random_word(&mut rng, r, 0..=4, false);
        assert_eq!(
            eng.markov_trace(&a.concat(&b)).unwrap(),
            eng.markov_trace(&b.concat(&a)).unwrap(),
            "Markov conjugation"
        );
    }
    {
        // tr(iota(beta) sigma_n^{+-1}) = tr(sigma^{+-1}) tr(beta)
        let small = [&engines.engines[0], &engines.engines[1]]; // A1, A2
        let big = [&engines.engines[1], &engines.engines[2]]; // A2, A3
        let f_pos = small[0].markov_trace(&BraidWord::new(vec![1])).unwrap();
        let f_neg = small[0].markov_trace(&BraidWord::new(vec![-1])).unwrap();
        for _ in 0..200 {
            let k = rng.gen_range(0..2);
            let (lo, hi) = (small[k], big[k]);
            let r = lo.sys.rank();
            let b = random_word(&mut rng, r, 0..=4, false);
            let s = (r + 1) as i32;
            let sign: i32 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let stabilized = b.concat(&BraidWord::new(vec![sign * s]));
            let factor = if sign > 0 { &f_pos } else { &f_neg };
            assert_eq!(
                hi.markov_trace(&stabilized).unwrap(),
                factor.mul(&lo.markov_trace(&b).unwrap()),
                "Markov stabilization"
            );
        }
    }

    // (f) tau identity: P(q) tau(beta) = sum_phi Deg_phi(q) phi_q(beta),
    // i.e. tau = sum_phi Schur(phi)^{-1} phi_q; checked on random braids
    // and (through delta_{w,1}) on every sigma_w below in (j)
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let b = random_word(&mut rng, eng.sys.rank(), 0..=6, false);
        let chars = eng.hecke_chars(&b).unwrap();
        let p = eng.sys.poincare_polynomial();
        let mut sum = HalfLaurent::new();
        for (i, d) in eng.bundle.iter().enumerate() {
            let deg = d.deg.to_half_laurent().expect("rational generic degree");
            sum = sum.add(&deg.mul(&chars[i]));
        }
        assert_eq!(sum, p.mul(&eng.tau(&b)), "tau identity for {b}");
        assert_eq!(
            eng.tau(&b),
            eng.tau_from_trace0(&b).unwrap(),
            "tau via Tr0 for {b}"
        );
    }

    // (g) Molien identity: 1/Schur(phi) = (1-q)^r sum_psi {phi,psi} m_psi(q),
    // checked per character and on random virtual characters by linearity
    {
        let mut cases = 0;
        let mut molien_rows: Vec<Vec<RFunc>> = Vec::new();
        for eng in &engines.engines {
            let n = eng.table.num_chars();
            let rows: Vec<RFunc> = (0..n)
                .map(|i| molien_char(eng.sys, &eng.table, i).unwrap())
                .collect();
            let four = eng.fourier().unwrap();
            let p = RFunc::from_laurent(eng.sys.poincare_polynomial());
            let dq = RFunc::from_laurent(qp(&[(0, 1), (1, -1)]));
            let mut dqr = RFunc::from_laurent(qp(&[(0, 1)]));
            for _ in 0..eng.sys.rank() {
                dqr = dqr.mul(&dq);
            }
            for i in 0..n {
                let inv_schur = RFunc::from_laurent(
                    eng.bundle[i].deg.to_half_laurent().unwrap(),
                )
                .div(&p);
                let mut rhs = RFunc::zero();
                for (j, row) in rows.iter().enumerate() {
                    rhs = rhs.add(&braidtrace::traces::scale_rfunc(row, four.entry(i, j)));
                }
                assert_rfunc_eq(&inv_schur, &dqr.mul(&rhs), "Molien identity");
                cases += 1;
            }
            molien_rows.push(rows);
        }
        // random virtual characters, by linearity of both sides
        while cases < 200 {
            let k = pick(&mut rng);
            let eng = &engines.engines[k];
            let n = eng.table.num_chars();
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let p = RFunc::from_laurent(eng.sys.poincare_polynomial());
            let four = eng.fourier().unwrap();
            let dq = RFunc::from_laurent(qp(&[(0, 1), (1, -1)]));
            let mut dqr = RFunc::from_laurent(qp(&[(0, 1)]));
            for _ in 0..eng.sys.rank() {
                dqr = dqr.mul(&dq);
            }
            let mut lhs = RFunc::zero();
            let mut rhs = RFunc::zero();
            for i in 0..n {
                let c = rat(coeffs[i]);
                let inv_schur = RFunc::from_laurent(
                    eng.bundle[i].deg.to_half_laurent().unwrap(),
                )
                .div(&p);
                lhs = lhs.add(&braidtrace::traces::scale_rfunc(&inv_schur, &c));
                for (j, row) in molien_rows[k].iter().enumerate() {
                    let w = four.entry(i, j) * &c;
                    rhs = rhs.add(&braidtrace::traces::scale_rfunc(row, &w));
                }
            }
            assert_rfunc_eq(&lhs, &dqr.mul(&rhs), "Molien identity (virtual)");
            cases += 1;
        }
    }

    // (h) full twist acts on the phi-component by the scalar q^{c(phi)}
    for _ in 0..200 {
        let eng = &engines.engines[pick(&mut rng)];
        let b = random_word(&mut rng, eng.sys.rank(), 0..=4, false);
        let pi = eng.sys.full_twist();
        let plain = eng.hecke_chars(&b).unwrap();
        let twisted = eng.hecke_chars(&b.concat(&pi)).unwrap();
        for (i, d) in eng.bundle.iter().enumerate() {
            let c2 = &d.content * rat(2);
            assert!(c2.is_integer(), "2 c(phi) integral");
            let shift: i64 = c2.numer().try_into().unwrap();
            assert_eq!(twisted[i], plain[i].shift(shift), "full twist scalar");
        }
    }

    // (i) phi(w) = Feg_phi(zeta) for zeta-regular w
    {
        let mut cases = 0;
        let mut types: Vec<String> = (1..=4).map(|n| format!("A{n}")).collect();
        types.extend((3..=12).map(|m| format!("I2({m})")));
        for ty in &types {
            let sys = system(ty);
            let table = CharTable::new(&sys);
            let bundle = braidtrace::reptheory::degrees::degrees_bundle(&sys, &table).unwrap();
            for d in sys.degrees() {
                for p in 1..=d {
                    if num_integer::gcd(p, d) != 1 {
                        continue;
                    }
                    let nu = Rat::new((p as i64).into(), (d as i64).into());
                    for w in sys.regular_elements(&nu) {
                        for (i, data) in bundle.iter().enumerate() {
                            let lhs = table.value_at(&sys, i, w);
                            let rhs = data.feg.eval_root(&nu);
                            assert_eq!(lhs, rhs, "Feg at regular element ({ty})");
                            cases += 1;
                        }
                    }
                }
            }
        }
        assert!(cases >= 200, "only {cases} regular-element cases");
    }

    // (j) principal-series identity: sum_phi Deg_phi(q) phi_q(sigma_w)
    // equals the Poincare polynomial at w = 1 and vanishes otherwise;
    // stable under braid conjugation of the lift
    {
        let mut cases = 0;
        for eng in &engines.engines {
            let p = eng.sys.poincare_polynomial();
            for w in eng.sys.elements() {
                let mut lift = eng.sys.lift_sigma(w);
                if cases % 3 == 0 {
                    let g = random_word(&mut rng, eng.sys.rank(), 1..=3, false);
                    lift = g.concat(&lift).concat(&g.inverse());
                }
                let chars = eng.hecke_chars(&lift).unwrap();
                let mut sum = HalfLaurent::new();
                for (i, d) in eng.bundle.iter().enumerate() {
                    let deg = d.deg.to_half_laurent().unwrap();
                    sum = sum.add(&deg.mul(&chars[i]));
                }
                let want = if w == eng.sys.identity() {
                    p.clone()
                } else {
                    HalfLaurent::new()
                };
                assert_eq!(sum, want, "principal series at w");
                cases += 1;
            }
        }
        // higher-rank symmetric types cover the remaining cases
        for ty in ["A4", "A5"] {
            let sys = system(ty);
            let eng = TraceEngine::new(&sys, None).unwrap();
            let p = sys.poincare_polynomial();
            for w in sys.elements() {
                if cases >= 220 {
                    break;
                }
                let chars = eng.hecke_chars(&sys.lift_sigma(w)).unwrap();
                let mut sum = HalfLaurent::new();
                for (i, d) in eng.bundle.iter().enumerate() {
                    sum = sum.add(&d.deg.to_half_laurent().unwrap().mul(&chars[i]));
                }
                let want = if w == sys.identity() { p.clone() } else { HalfLaurent::new() };
                assert_eq!(sum, want, "principal series in {ty}");
                cases += 1;
            }
        }
        assert!(cases >= 200);
    }

    budget(start, 120, "criterion 6");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_7_finite_field_counts() {
    let start = Instant::now();

    // affine chart polynomials: X0(s^2) = q, X0(s^3) = q(q-1),
    // X0(s^4) = q^2 + q(q-1)^2
    for q in [2u64, 3, 5, 7, 11] {
        let x2 = count_x0(q, &BraidWord::new(vec![1, 1])).unwrap();
        let x3 = count_x0(q, &BraidWord::new(vec![1, 1, 1])).unwrap();
        let x4 = count_x0(q, &BraidWord::new(vec![1, 1, 1, 1])).unwrap();
        let q = q as u128;
        assert_eq!(x2, q);
        assert_eq!(x3, q * (q - 1));
        assert_eq!(x4, q * q + q * (q - 1) * (q - 1));
    }

    // the trace identity against per-class unipotent counts
    for q in [3u64, 5] {
        for w in 0..=5usize {
            let beta = BraidWord::new(vec![1]).repeat(w);
            let rep = verify_virtual(Group::Sl2, q, &beta).unwrap();
            assert!(rep.ok, "SL2 q={q} writhe={w}: {:?}", rep.discrepancies);
        }
    }
    for len in 0..=3usize {
        for code in 0..(1 << len) {
            let word: Vec<i32> = (0..len)
                .map(|i| if code >> i & 1 == 0 { 1 } else { 2 })
                .collect();
            let rep = verify_virtual(Group::Sl3, 3, &BraidWord::new(word.clone())).unwrap();
            assert!(rep.ok, "SL3 {word:?}: {:?}", rep.discrepancies);
        }
    }

    // closed chains of beta.pi match unipotent fibers of beta
    for q in [3u64, 5] {
        for w in 0..=4usize {
            let beta = BraidWord::new(vec![1]).repeat(w);
            assert!(verify_kalman(Group::Sl2, q, &beta).unwrap(), "q={q} w={w}");
        }
    }

    // fiber identity |X(beta)| = |X0| |G| / |B| for every GL2 run
    for q in [3u64, 5, 7] {
        for w in 0..=6usize {
            let beta = BraidWord::new(vec![1]).repeat(w);
            let x = match count_chains(Group::Gl2, q, &beta, &Fiber::Over1).unwrap() {
                ChainCounts::Total(t) => t,
                ChainCounts::PerClass(_) => unreachable!(),
            };
            let x0 = count_x0(q, &beta).unwrap();
            assert_eq!(x, x0 * (q as u128 + 1), "GL2 q={q} w={w}");
        }
    }

    budget(start, 300, "criterion 7");
}

#[test]
fn criterion_8_cherednik_corpus() {
    let start = Instant::now();

    // bridge between periodic traces and Omega characters, over the corpus
    // of periodic witnesses
    let witnesses: Vec<(&str, Vec<i32>, usize, usize)> = vec![
        ("A1", vec![1], 2, 1),
        ("A1", vec![1, 1], 1, 1),
        ("A1", vec![1, 1, 1], 2, 3),
        ("A2", vec![1, 2], 3, 1),
        ("A2", vec![1, 2, 1], 2, 1),
        ("A2", vec![1, 2, 1, 2, 1, 2], 1, 1),
        ("A3", vec![1, 2, 3], 4, 1),
        ("A3", vec![1, 2, 1, 3, 2, 1], 2, 1),
        ("A3", vec![1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3], 1, 1),
        ("BC2", vec![1, 2], 4, 1),
        ("BC2", vec![1, 2, 1, 2], 2, 1),
        ("G2", vec![1, 2], 6, 1),
        ("G2", vec![1, 2, 1, 2, 1, 2], 2, 1),
    ];
    for (ty, word, n, m) in &witnesses {
        let sys = system(ty);
        let eng = TraceEngine::new(&sys, None).unwrap();
        let beta = BraidWord::new(word.clone());
        assert!(
            sys.is_periodic_witness(&beta, *n, *m).unwrap(),
            "{ty} {word:?} is a {m}/{n} witness"
        );
        assert!(
            daha::omega_bridge_check(&eng, &beta, *n, *m).unwrap(),
            "bridge for {ty} {word:?} at {m}/{n}"
        );
    }

    // cuspidal simple modules of the rank-one algebra: dimension m at m/2
    {
        let sys = system("A1");
        let eng = TraceEngine::new(&sys, None).unwrap();
        for m in [1i64, 3, 5, 7, 9] {
            let nu = Rat::new(m.into(), 2.into());
            let l = daha::cuspidal_l_char(&eng, &nu).unwrap();
            assert_eq!(l.dimension(&eng).unwrap(), rat(m), "dim L at {m}/2");
        }
    }

    // generic degrees take algebraically integral values at every regular
    // slope of denominator <= 12 (the slopes of periodic braids, where the
    // Omega construction applies)
    {
        let mut checked = 0;
        let mut types: Vec<String> = (1..=4).map(|n| format!("A{n}")).collect();
        types.extend((3..=12).map(|m| format!("I2({m})")));
        for ty in &types {
            let sys = system(ty);
            let table = CharTable::new(&sys);
            let bundle = braidtrace::reptheory::degrees::degrees_bundle(&sys, &table).unwrap();
            for d in 1..=12i64 {
                for p in 1..=d {
                    if num_integer::gcd(p, d) != 1 {
                        continue;
                    }
                    let nu = Rat::new(p.into(), d.into());
                    if !sys.slope_class(&nu).regular {
                        continue;
                    }
                    for data in &bundle {
                        let v = data.deg.eval_root(&nu);
                        assert!(
                            v.is_integral(),
                            "{ty}: Deg_{}(zeta) not integral at {nu}",
                            data.label
                        );
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0, "no regular slopes exercised");
    }

    budget(start, 120, "criterion 8");
}
