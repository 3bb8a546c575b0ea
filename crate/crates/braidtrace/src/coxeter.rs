//! Coxeter systems of types A_n (n ≤ 8) and I2(m) (3 ≤ m ≤ 12), their
//! elements, braid words, left-greedy normal forms, and regular elements.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::exactmath::{rat, Cyclo, HalfLaurent, Matrix, Rat, Ring};
use crate::{validation, Result};

/// Supported Coxeter types. `BC2` and `G2` are aliases for `I2(4)` and
/// `I2(6)` at the parsing level.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoxeterType {
    /// A_n: the symmetric group S_{n+1}, rank n, 1 ≤ n ≤ 8.
    A(usize),
    /// I2(m): the dihedral group of order 2m, rank 2, 3 ≤ m ≤ 12.
    I2(usize),
}

impl CoxeterType {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "BC2" | "B2" | "C2" => return Ok(CoxeterType::I2(4)),
            "G2" => return Ok(CoxeterType::I2(6)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('A') {
            let n: usize = rest
                .parse()
                .map_err(|_| crate::Error::Validation(format!("bad type label {s:?}")))?;
            if (1..=8).contains(&n) {
                return Ok(CoxeterType::A(n));
            }
            return validation(format!("type A{n} out of supported range A1..A8"));
        }
        if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: usize = rest
                .parse()
                .map_err(|_| crate::Error::Validation(format!("bad type label {s:?}")))?;
            if (3..=12).contains(&m) {
                return Ok(CoxeterType::I2(m));
            }
            return validation(format!("type I2({m}) out of supported range I2(3)..I2(12)"));
        }
        validation(format!("unrecognized Coxeter type {s:?}"))
    }

    pub fn rank(&self) -> usize {
        match self {
            CoxeterType::A(n) => *n,
            CoxeterType::I2(_) => 2,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        match self {
            CoxeterType::A(n) => (2..=n + 1).collect(),
            CoxeterType::I2(m) => vec![2, *m],
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Group element, an index into the system's element table (identity = 0).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(pub u32);

/// Concrete form of an element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ElemRepr {
    /// One-line notation: position `i` maps to `perm[i]` (0-based).
    Perm(Vec<u8>),
    /// Rotation x ↦ x + k or reflection x ↦ k − x on Z/m.
    Dihedral { refl: bool, k: u16 },
}

/// A braid word: signed generator indices, `i > 0` for σ_{s_i}, `i < 0`
/// for σ_{s_i}^{-1}.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BraidWord {
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>) -> Self {
        BraidWord { letters }
    }

    pub fn writhe(&self) -> i64 {
        self.letters
            .iter()
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn repeat(&self, k: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { letters }
    }

    /// The group inverse: reversed word with flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Parse whitespace-separated signed indices; rejects 0 and indices
    /// beyond the rank.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| crate::Error::Validation(format!("bad braid letter {tok:?}")))?;
            if l == 0 || l.unsigned_abs() as usize > rank {
                return validation(format!(
                    "braid letter {l} out of range for rank {rank}"
                ));
            }
            letters.push(l);
        }
        Ok(BraidWord { letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Slope classification per the singular/cuspidal/regular trichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeClass {
    /// Indices i (0-based into `degrees`) with ν·d_i ∈ Z.
    pub i_nu: Vec<usize>,
    pub singular: bool,
    pub cuspidal: bool,
    pub regular: bool,
    pub regular_elliptic: bool,
}

/// A finite Coxeter system with all element tables precomputed.
pub struct CoxeterSystem {
    ty: CoxeterType,
    elems: Vec<ElemRepr>,
    index: HashMap<ElemRepr, u32>,
    lengths: Vec<u32>,
    /// right_mul[s][w] = w·s
    right_mul: Vec<Vec<u32>>,
    /// left_mul[s][w] = s·w
    left_mul: Vec<Vec<u32>>,
    w0: Elem,
}

impl CoxeterSystem {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        let elems: Vec<ElemRepr> = match ty {
            CoxeterType::A(n) => {
                if !(1..=8).contains(&n) {
                    return validation(format!("unsupported rank for type A: {n}"));
                }
                permutations(n + 1)
            }
            CoxeterType::I2(m) => {
                if !(3..=12).contains(&m) {
                    return validation(format!("unsupported order for type I2: {m}"));
                }
                let mut v = Vec::with_capacity(2 * m);
                for refl in [false, true] {
                    for k in 0..m {
                        v.push(ElemRepr::Dihedral { refl, k: k as u16 });
                    }
                }
                v
            }
        };
        let index: HashMap<ElemRepr, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let rank = ty.rank();
        let n = elems.len();
        let mut sys = CoxeterSystem {
            ty,
            elems,
            index,
            lengths: vec![u32::MAX; n],
            right_mul: vec![vec![0; n]; rank],
            left_mul: vec![vec![0; n]; rank],
            w0: Elem(0),
        };
        // Identity must be element 0.
        let id = sys.compose_repr_identity();
        let id_idx = sys.index[&id];
        if id_idx != 0 {
            sys.elems.swap(0, id_idx as usize);
            sys.index.insert(sys.elems[0].clone(), 0);
            sys.index.insert(sys.elems[id_idx as usize].clone(), id_idx);
        }
        // Multiplication tables.
        for s in 0..rank {
            for w in 0..n {
                let r = sys.compose(&sys.elems[w], &sys.gen_repr(s));
                sys.right_mul[s][w] = sys.index[&r];
                let l = sys.compose(&sys.gen_repr(s), &sys.elems[w]);
                sys.left_mul[s][w] = sys.index[&l];
            }
        }
        // Lengths by breadth-first search from the identity.
        sys.lengths[0] = 0;
        let mut frontier = vec![0u32];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for s in 0..rank {
                    let v = sys.right_mul[s][w as usize];
                    if sys.lengths[v as usize] == u32::MAX {
                        sys.lengths[v as usize] = sys.lengths[w as usize] + 1;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        let (w0, &max_len) = sys
            .lengths
            .iter()
            .enumerate()
            .max_by_key(|(_, &l)| l)
            .unwrap();
        assert_eq!(max_len as usize, sys.num_reflections(), "length(w0) != N");
        sys.w0 = Elem(w0 as u32);
        Ok(sys)
    }

    fn compose_repr_identity(&self) -> ElemRepr {
        match self.ty {
            CoxeterType::A(n) => ElemRepr::Perm((0..=n as u8).collect()),
            CoxeterType::I2(_) => ElemRepr::Dihedral { refl: false, k: 0 },
        }
    }

    fn gen_repr(&self, s: usize) -> ElemRepr {
        match self.ty {
            CoxeterType::A(n) => {
                let mut v: Vec<u8> = (0..=n as u8).collect();
                v.swap(s, s + 1);
                ElemRepr::Perm(v)
            }
            CoxeterType::I2(_) => ElemRepr::Dihedral { refl: true, k: s as u16 },
        }
    }

    /// Group multiplication on concrete forms: (g·h)(x) = g(h(x)).
    fn compose(&self, g: &ElemRepr, h: &ElemRepr) -> ElemRepr {
        match (g, h) {
            (ElemRepr::Perm(a), ElemRepr::Perm(b)) => {
                ElemRepr::Perm(b.iter().map(|&x| a[x as usize]).collect())
            }
            (
                ElemRepr::Dihedral { refl: r1, k: a },
                ElemRepr::Dihedral { refl: r2, k: b },
            ) => {
                let m = self.dihedral_m() as i64;
                let (a, b) = (*a as i64, *b as i64);
                // ρ_a: x ↦ x+a;  τ_a: x ↦ a−x.
                let (refl, k) = match (r1, r2) {
                    (false, false) => (false, a + b),
                    (false, true) => (true, a + b),
                    (true, false) => (true, a - b),
                    (true, true) => (false, a - b),
                };
                ElemRepr::Dihedral {
                    refl,
                    k: k.rem_euclid(m) as u16,
                }
            }
            _ => unreachable!("mixed element kinds"),
        }
    }

    fn dihedral_m(&self) -> usize {
        match self.ty {
            CoxeterType::I2(m) => m,
            _ => unreachable!(),
        }
    }

    // ----- basic accessors -----

    pub fn coxeter_type(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.ty.degrees()
    }

    /// Number of reflections N = Σ(d_i − 1).
    pub fn num_reflections(&self) -> usize {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// Conductor n with Q_W ⊆ Q(ζ_n)⁺.
    pub fn splitting_field_conductor(&self) -> u32 {
        match self.ty {
            CoxeterType::A(_) => 1,
            CoxeterType::I2(m) => m as u32,
        }
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut m = vec![vec![2; r]; r];
        for i in 0..r {
            m[i][i] = 1;
        }
        match self.ty {
            CoxeterType::A(_) => {
                for i in 0..r.saturating_sub(1) {
                    m[i][i + 1] = 3;
                    m[i + 1][i] = 3;
                }
            }
            CoxeterType::I2(order) => {
                m[0][1] = order;
                m[1][0] = order;
            }
        }
        m
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn w0(&self) -> Elem {
        self.w0
    }

    pub fn repr(&self, w: Elem) -> &ElemRepr {
        &self.elems[w.0 as usize]
    }

    pub fn elem_of_repr(&self, r: &ElemRepr) -> Option<Elem> {
        self.index.get(r).map(|&i| Elem(i))
    }

    /// All elements, identity first, in length-compatible table order.
    pub fn elements(&self) -> Vec<Elem> {
        (0..self.elems.len() as u32).map(Elem).collect()
    }

    pub fn generators(&self) -> Vec<Elem> {
        (0..self.rank())
            .map(|s| Elem(self.right_mul[s][0]))
            .collect()
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.0 as usize] as usize
    }

    pub fn mul_gen_right(&self, w: Elem, s: usize) -> Elem {
        Elem(self.right_mul[s][w.0 as usize])
    }

    pub fn mul_gen_left(&self, s: usize, w: Elem) -> Elem {
        Elem(self.left_mul[s][w.0 as usize])
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let r = self.compose(self.repr(a), self.repr(b));
        Elem(self.index[&r])
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        let r = match self.repr(w) {
            ElemRepr::Perm(v) => {
                let mut inv = vec![0u8; v.len()];
                for (i, &x) in v.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                ElemRepr::Perm(inv)
            }
            ElemRepr::Dihedral { refl: true, .. } => self.repr(w).clone(),
            ElemRepr::Dihedral { refl: false, k } => ElemRepr::Dihedral {
                refl: false,
                k: ((self.dihedral_m() as i64 - *k as i64).rem_euclid(self.dihedral_m() as i64))
                    as u16,
            },
        };
        Elem(self.index[&r])
    }

    pub fn descent_right(&self, w: Elem, s: usize) -> bool {
        self.length(self.mul_gen_right(w, s)) < self.length(w)
    }

    pub fn descent_left(&self, w: Elem, s: usize) -> bool {
        self.length(self.mul_gen_left(s, w)) < self.length(w)
    }

    /// Lexicographically-least reduced word for w (1-based letters).
    pub fn lift_sigma(&self, w: Elem) -> BraidWord {
        let mut letters = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while cur != self.identity() {
            let s = (0..self.rank())
                .find(|&s| self.descent_left(cur, s))
                .expect("non-identity element without left descent");
            letters.push(s as i32 + 1);
            cur = self.mul_gen_left(s, cur);
        }
        BraidWord::new(letters)
    }

    /// The full twist π = σ_{w0}².
    pub fn full_twist(&self) -> BraidWord {
        let half = self.lift_sigma(self.w0);
        half.concat(&half)
    }

    /// `(σ_{s_1}…σ_{s_n})^k` in type A(n) (lift of a Coxeter element).
    pub fn torus_braid(&self, k: usize) -> Result<BraidWord> {
        match self.ty {
            CoxeterType::A(n) => {
                let base = BraidWord::new((1..=n as i32).collect());
                Ok(base.repeat(k))
            }
            _ => validation("torus_braid requires a type A system"),
        }
    }

    /// Image of a braid word in W.
    pub fn project(&self, beta: &BraidWord) -> Elem {
        let mut w = self.identity();
        for &l in &beta.letters {
            w = self.mul_gen_right(w, l.unsigned_abs() as usize - 1);
        }
        w
    }

    // ----- normal forms -----

    /// Left-greedy (Garside) normal form of a positive word: the canonical
    /// sequence of nonidentity W-factors. Two positive words are equal in
    /// the braid monoid iff their normal forms agree.
    pub fn positive_normal_form(&self, beta: &BraidWord) -> Result<Vec<Elem>> {
        if !beta.is_positive() {
            return validation("positive_normal_form requires a positive word");
        }
        let mut factors: Vec<Elem> = Vec::new();
        for &l in &beta.letters {
            let s = l as usize - 1;
            factors.push(Elem(self.right_mul[s][0]));
            // Bubble the new letter leftwards: repeatedly make each
            // adjacent pair (a, b) left-weighted by moving left descents
            // of b that extend a across the boundary.
            let mut i = factors.len() - 1;
            while i >= 1 {
                let moved = self.make_left_weighted(&mut factors, i - 1);
                if !moved || i == 1 {
                    break;
                }
                i -= 1;
            }
            factors.retain(|&f| f != self.identity());
        }
        // A final stabilization pass: bubbling once per letter is enough
        // for words built letter by letter, but re-run until stable to be
        // safe (cheap at our sizes).
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < factors.len() {
                if self.make_left_weighted(&mut factors, i) {
                    changed = true;
                }
                i += 1;
            }
            factors.retain(|&f| f != self.identity());
            if !changed {
                break;
            }
        }
        Ok(factors)
    }

    /// Enforce the left-weighted condition on the pair `(factors[i],
    /// factors[i+1])`; returns true if anything moved.
    fn make_left_weighted(&self, factors: &mut [Elem], i: usize) -> bool {
        let mut a = factors[i];
        let mut b = factors[i + 1];
        let mut moved = false;
        loop {
            let mut progressed = false;
            for s in 0..self.rank() {
                if self.descent_left(b, s) && !self.descent_right(a, s) {
                    a = self.mul_gen_right(a, s);
                    b = self.mul_gen_left(s, b);
                    progressed = true;
                    moved = true;
                    if b == self.identity() {
                        break;
                    }
                }
            }
            if !progressed || b == self.identity() {
                break;
            }
        }
        factors[i] = a;
        factors[i + 1] = b;
        moved
    }

    /// Check `β^n = π^m` in the positive braid monoid by normal forms.
    pub fn is_periodic_witness(&self, beta: &BraidWord, n: usize, m: usize) -> Result<bool> {
        if !beta.is_positive() {
            return validation("is_periodic_witness requires a positive word");
        }
        if beta.writhe() * n as i64 != 2 * self.num_reflections() as i64 * m as i64 {
            return Ok(false);
        }
        let lhs = self.positive_normal_form(&beta.repeat(n))?;
        let rhs = self.positive_normal_form(&self.full_twist().repeat(m))?;
        Ok(lhs == rhs)
    }

    // ----- eigen-data and regular elements -----

    /// Multiplicity of eigenvalue 1 of w on the reflection representation.
    pub fn fixed_space_dim(&self, w: Elem) -> usize {
        match self.repr(w) {
            ElemRepr::Perm(v) => cycle_type_of(v).len() - 1,
            ElemRepr::Dihedral { refl: true, .. } => 1,
            ElemRepr::Dihedral { refl: false, k: 0 } => 2,
            ElemRepr::Dihedral { refl: false, .. } => 0,
        }
    }

    /// Coefficients of det(1 + x·w|V) as elementary symmetric data:
    /// returns e_0, …, e_r of the eigenvalue multiset, as cyclotomic
    /// numbers (rational in type A).
    pub fn exterior_data(&self, w: Elem) -> Vec<Cyclo> {
        match self.repr(w) {
            ElemRepr::Perm(v) => {
                // det(1 + x·w | permutation rep) = Π_cycles (1 − (−x)^len),
                // i.e. each cycle contributes 1 − (−1)^len x^len; divide by
                // (1 + x) for the standard representation.
                let mut poly = vec![rat(1)];
                for len in cycle_type_of(v) {
                    let top = if len % 2 == 0 { rat(-1) } else { rat(1) };
                    let mut next = vec![Rat::zero(); poly.len() + len];
                    for (i, c) in poly.iter().enumerate() {
                        next[i] += c;
                        next[i + len] += c * &top;
                    }
                    poly = next;
                }
                let quot = poly_div_one_plus_x(&poly);
                quot.into_iter().map(Cyclo::from_rat).collect()
            }
            ElemRepr::Dihedral { refl: true, .. } => {
                // eigenvalues {1, −1}: det(1 + xw) = 1 + 0·x − x²? No:
                // (1 + x)(1 − x) = 1 − x².
                vec![Cyclo::from_int(1), Cyclo::from_int(0), Cyclo::from_int(-1)]
            }
            ElemRepr::Dihedral { refl: false, k } => {
                // eigenvalues {ζ^k, ζ^{−k}}: e_1 = ζ^k + ζ^{−k}, e_2 = 1.
                let m = self.dihedral_m() as u32;
                let z = Cyclo::root_of_unity(m, *k as i64);
                vec![
                    Cyclo::from_int(1),
                    z.add(&z.inv()),
                    Cyclo::from_int(1),
                ]
            }
        }
    }

    /// Cycle type (sorted descending) for type A elements.
    pub fn cycle_type(&self, w: Elem) -> Vec<usize> {
        match self.repr(w) {
            ElemRepr::Perm(v) => {
                let mut ct = cycle_type_of(v);
                ct.sort_unstable_by(|a, b| b.cmp(a));
                ct
            }
            _ => panic!("cycle_type on non-type-A element"),
        }
    }

    /// Classify a rational slope.
    pub fn slope_class(&self, nu: &Rat) -> SlopeClass {
        let degrees = self.degrees();
        let i_nu: Vec<usize> = degrees
            .iter()
            .enumerate()
            .filter(|(_, &d)| (nu * rat(d as i64)).is_integer())
            .map(|(i, _)| i)
            .collect();
        let regs = self.regular_elements(nu);
        let regular = !regs.is_empty();
        // Elliptic: the regular element has no fixed vectors on V.
        let regular_elliptic = regular && regs.iter().any(|&w| self.fixed_space_dim(w) == 0);
        SlopeClass {
            singular: !i_nu.is_empty(),
            cuspidal: i_nu.len() == 1,
            regular,
            regular_elliptic,
            i_nu,
        }
    }

    /// One representative per conjugacy class of ζ-regular elements,
    /// ζ = e^{2πiν}. (All ζ-regular elements are conjugate, so the result
    /// has at most one entry; we return every table element that tests
    /// regular, first-of-class only.)
    pub fn regular_elements(&self, nu: &Rat) -> Vec<Elem> {
        let two_nu = nu * rat(2);
        let zeta = Cyclo::half_turn_root(&two_nu);
        let mut found: Vec<Elem> = Vec::new();
        for w in self.elements() {
            if !self.is_zeta_regular(w, &zeta) {
                continue;
            }
            // keep only one representative per conjugacy class
            let already = found.iter().any(|&v| self.are_conjugate(v, w));
            if !already {
                found.push(w);
            }
        }
        found
    }

    pub fn are_conjugate(&self, a: Elem, b: Elem) -> bool {
        match self.ty {
            CoxeterType::A(_) => self.cycle_type(a) == self.cycle_type(b),
            CoxeterType::I2(_) => {
                let m = self.dihedral_m() as i64;
                match (self.repr(a), self.repr(b)) {
                    (
                        ElemRepr::Dihedral { refl: false, k: k1 },
                        ElemRepr::Dihedral { refl: false, k: k2 },
                    ) => {
                        let (k1, k2) = (*k1 as i64, *k2 as i64);
                        k1 == k2 || (m - k1) % m == k2
                    }
                    (
                        ElemRepr::Dihedral { refl: true, k: k1 },
                        ElemRepr::Dihedral { refl: true, k: k2 },
                    ) => {
                        if m % 2 == 1 {
                            true
                        } else {
                            (*k1 as i64 - *k2 as i64) % 2 == 0
                        }
                    }
                    _ => false,
                }
            }
        }
    }

    /// Is w regular for the eigenvalue e^{2πiν}?
    pub fn is_regular_element(&self, w: Elem, nu: &Rat) -> bool {
        let two_nu = nu * rat(2);
        self.is_zeta_regular(w, &Cyclo::half_turn_root(&two_nu))
    }

    /// Exhaustive regularity test: does w admit a ζ-eigenvector on V
    /// avoiding every reflection hyperplane?
    fn is_zeta_regular(&self, w: Elem, zeta: &Cyclo) -> bool {
        let basis = self.eigenspace_basis(w, zeta);
        if basis.is_empty() {
            return false;
        }
        // E avoids the (finite) union of hyperplanes iff E ⊄ H for each
        // reflection hyperplane H (the field is infinite).
        for alpha in self.hyperplane_functionals() {
            let contained = basis.iter().all(|v| {
                let mut acc = Cyclo::zero();
                for (c, x) in alpha.iter().zip(v.iter()) {
                    acc = acc.add(&c.mul(x));
                }
                acc.is_zero()
            });
            if contained {
                return false;
            }
        }
        true
    }

    /// Basis of the ζ-eigenspace of w acting on V, as coordinate vectors.
    /// Type A works inside the permutation representation with the extra
    /// sum-zero constraint; I2(m) in the 2-dimensional complex model.
    fn eigenspace_basis(&self, w: Elem, zeta: &Cyclo) -> Vec<Vec<Cyclo>> {
        let (mat, extra_row): (Matrix<Cyclo>, Option<Vec<Cyclo>>) = match self.repr(w) {
            ElemRepr::Perm(v) => {
                let n = v.len();
                let mut m = Matrix::zero(n);
                // (w·x)_{w(i)} = x_i: matrix with M[v[i]][i] = 1.
                for (i, &vi) in v.iter().enumerate() {
                    m.set(vi as usize, i, Cyclo::one());
                }
                (m, Some(vec![Cyclo::one(); n]))
            }
            ElemRepr::Dihedral { refl, k } => {
                let mm = self.dihedral_m() as u32;
                let z = Cyclo::root_of_unity(mm, *k as i64);
                let mut m = Matrix::zero(2);
                if *refl {
                    // τ_k: (z1, z2) ↦ (ζ^k z2, ζ^{−k} z1)
                    m.set(0, 1, z.clone());
                    m.set(1, 0, z.inv());
                } else {
                    // ρ_k: diag(ζ^k, ζ^{−k})
                    m.set(0, 0, z.clone());
                    m.set(1, 1, z.inv());
                }
                (m, None)
            }
        };
        // Solve (M − ζI)x = 0 (plus the sum-zero row in type A).
        let n = mat.dim();
        let mut rows: Vec<Vec<Cyclo>> = Vec::new();
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut v = mat.get(i, j).clone();
                if i == j {
                    v = v.sub(zeta);
                }
                row.push(v);
            }
            rows.push(row);
        }
        if let Some(r) = extra_row {
            rows.push(r);
        }
        kernel_basis(rows, n)
    }

    /// Linear functionals cutting out the reflection hyperplanes.
    fn hyperplane_functionals(&self) -> Vec<Vec<Cyclo>> {
        match self.ty {
            CoxeterType::A(n) => {
                let n = n + 1;
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let mut a = vec![Cyclo::zero(); n];
                        a[i] = Cyclo::one();
                        a[j] = Cyclo::one().neg();
                        out.push(a);
                    }
                }
                out
            }
            CoxeterType::I2(m) => {
                // Fixed line of τ_k is spanned by (ζ^k, 1); the functional
                // z1 − ζ^k z2 vanishes on it.
                (0..m)
                    .map(|k| {
                        vec![
                            Cyclo::one(),
                            Cyclo::root_of_unity(m as u32, k as i64).neg(),
                        ]
                    })
                    .collect()
            }
        }
    }

    /// Reflections of W as group elements.
    pub fn reflections(&self) -> Vec<Elem> {
        self.elements()
            .into_iter()
            .filter(|&w| match self.repr(w) {
                ElemRepr::Perm(v) => {
                    let ct = cycle_type_of(v);
                    ct.iter().filter(|&&c| c == 2).count() == 1
                        && ct.iter().filter(|&&c| c > 2).count() == 0
                }
                ElemRepr::Dihedral { refl, .. } => *refl,
            })
            .collect()
    }

    /// Poincaré polynomial Σ_w q^{length(w)} as a HalfLaurent in q.
    pub fn poincare_polynomial(&self) -> HalfLaurent {
        let mut p = HalfLaurent::new();
        for w in self.elements() {
            p.add_term(2 * self.length(w) as i64, rat(1));
        }
        p
    }

    /// Human-readable element description: lex-least reduced word, or "e".
    pub fn describe(&self, w: Elem) -> String {
        if w == self.identity() {
            return "e".to_string();
        }
        self.lift_sigma(w)
            .letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Kernel basis of a (possibly non-square) system of rows over the
/// cyclotomic field, by Gaussian elimination.
fn kernel_basis(mut rows: Vec<Vec<Cyclo>>, n: usize) -> Vec<Vec<Cyclo>> {
    let mut pivot_col: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        // find pivot
        let mut piv = None;
        for i in r..rows.len() {
            if !rows[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for j in 0..n {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let d = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&d);
                }
            }
        }
        pivot_col.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // free columns parametrize the kernel
    let mut basis = Vec::new();
    for c in 0..n {
        if pivot_col.contains(&c) {
            continue;
        }
        let mut v = vec![Cyclo::zero(); n];
        v[c] = Cyclo::one();
        for (ri, &pc) in pivot_col.iter().enumerate() {
            v[pc] = rows[ri][c].neg();
        }
        basis.push(v);
    }
    basis
}

fn permutations(n: usize) -> Vec<ElemRepr> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    heap_permute(&mut cur, n, &mut out);
    out
}

fn heap_permute(v: &mut Vec<u8>, k: usize, out: &mut Vec<ElemRepr>) {
    if k == 1 {
        out.push(ElemRepr::Perm(v.clone()));
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// Cycle lengths (unsorted) of a permutation in one-line notation.
pub fn cycle_type_of(v: &[u8]) -> Vec<usize> {
    let n = v.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = v[j] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

fn poly_div_one_plus_x(poly: &[Rat]) -> Vec<Rat> {
    // Divide a polynomial (ascending coefficients) by (1 + x), exactly.
    let mut quot = vec![Rat::zero(); poly.len().saturating_sub(1)];
    let mut carry = Rat::zero();
    for i in 0..quot.len() {
        let c = &poly[i] - &carry;
        quot[i] = c.clone();
        carry = c;
    }
    assert_eq!(&poly[poly.len() - 1], &carry, "division by (1+x) not exact");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    fn sys(ty: &str) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterType::parse(ty).unwrap()).unwrap()
    }

    #[test]
    fn type_parsing_and_aliases() {
        assert_eq!(CoxeterType::parse("A3").unwrap(), CoxeterType::A(3));
        assert_eq!(CoxeterType::parse("BC2").unwrap(), CoxeterType::I2(4));
        assert_eq!(CoxeterType::parse("G2").unwrap(), CoxeterType::I2(6));
        assert_eq!(CoxeterType::parse("I2(7)").unwrap(), CoxeterType::I2(7));
        assert!(CoxeterType::parse("A9").is_err());
        assert!(CoxeterType::parse("I2(13)").is_err());
        assert!(CoxeterType::parse("D4").is_err());
    }

    #[test]
    fn group_orders_and_longest_element() {
        let a3 = sys("A3");
        assert_eq!(a3.order(), 24);
        assert_eq!(a3.num_reflections(), 6);
        assert_eq!(a3.length(a3.w0()), 6);
        assert_eq!(a3.reflections().len(), 6);

        let i5 = sys("I2(5)");
        assert_eq!(i5.order(), 10);
        assert_eq!(i5.num_reflections(), 5);
        assert_eq!(i5.length(i5.w0()), 5);
        assert_eq!(i5.reflections().len(), 5);
    }

    #[test]
    fn lift_sigma_is_reduced_and_projects_back() {
        for ty in ["A3", "I2(5)", "BC2"] {
            let s = sys(ty);
            for w in s.elements() {
                let word = s.lift_sigma(w);
                assert_eq!(word.letters.len(), s.length(w));
                assert!(word.is_positive() || word.letters.is_empty());
                assert_eq!(s.project(&word), w);
            }
        }
    }

    #[test]
    fn poincare_at_one_is_group_order() {
        for ty in ["A2", "A4", "I2(7)", "G2"] {
            let s = sys(ty);
            assert_eq!(s.poincare_polynomial().eval_one(), rat(s.order() as i64));
        }
    }

    #[test]
    fn normal_form_detects_braid_equality() {
        let a2 = sys("A2");
        let u = a2.positive_normal_form(&BraidWord::new(vec![1, 2, 1])).unwrap();
        let v = a2.positive_normal_form(&BraidWord::new(vec![2, 1, 2])).unwrap();
        assert_eq!(u, v);
        let x = a2.positive_normal_form(&BraidWord::new(vec![1, 1, 2])).unwrap();
        assert_ne!(u, x);
        // σ1² has normal form (s1, s1): two factors
        let sq = a2.positive_normal_form(&BraidWord::new(vec![1, 1])).unwrap();
        assert_eq!(sq.len(), 2);
        assert!(sq.iter().all(|&f| a2.length(f) == 1));
    }

    #[test]
    fn periodicity_witnesses() {
        let a1 = sys("A1");
        assert!(a1.is_periodic_witness(&BraidWord::new(vec![1]), 2, 1).unwrap());
        assert!(a1.is_periodic_witness(&BraidWord::new(vec![1, 1, 1]), 2, 3).unwrap());

        let a2 = sys("A2");
        // (σ1σ2)³ = π and (σ1σ2σ1)² = π
        assert!(a2.is_periodic_witness(&BraidWord::new(vec![1, 2]), 3, 1).unwrap());
        assert!(a2.is_periodic_witness(&BraidWord::new(vec![1, 2, 1]), 2, 1).unwrap());
        assert!(!a2.is_periodic_witness(&BraidWord::new(vec![1, 1]), 3, 1).unwrap());

        let g2 = sys("G2");
        assert!(g2.is_periodic_witness(&BraidWord::new(vec![1, 2]), 6, 1).unwrap());
    }

    #[test]
    fn regular_elements_small_rank() {
        let a2 = sys("A2");
        // ν = 1/3: Coxeter elements (3-cycles) are regular.
        let r = a2.regular_elements(&ratio(1, 3));
        assert_eq!(r.len(), 1);
        assert_eq!(a2.cycle_type(r[0]), vec![3]);
        // ν = 1/2: transpositions are regular.
        let r = a2.regular_elements(&ratio(1, 2));
        assert_eq!(r.len(), 1);
        assert_eq!(a2.cycle_type(r[0]), vec![2, 1]);
        // ν = 1/4: no element of order 4.
        assert!(a2.regular_elements(&ratio(1, 4)).is_empty());
        // integer slope: only the identity.
        let r = a2.regular_elements(&rat(1));
        assert_eq!(r, vec![a2.identity()]);
    }

    #[test]
    fn slope_classification() {
        let a2 = sys("A2");
        let c = a2.slope_class(&ratio(1, 3));
        assert!(c.singular && c.cuspidal && c.regular && c.regular_elliptic);
        assert_eq!(c.i_nu, vec![1]);
        let c = a2.slope_class(&ratio(1, 2));
        assert!(c.singular && c.cuspidal && c.regular && !c.regular_elliptic);
        let c = a2.slope_class(&ratio(2, 5));
        assert!(!c.singular && !c.regular);

        let g2 = sys("G2");
        let c = g2.slope_class(&ratio(1, 6));
        assert!(c.cuspidal && c.regular_elliptic);
        let c = g2.slope_class(&ratio(1, 2));
        // both degrees even: ν·2 ∈ Z and ν·6 ∈ Z, not cuspidal
        assert!(c.singular && !c.cuspidal && c.regular_elliptic);
    }

    #[test]
    fn broue_michel_periodicity_of_regular_lifts() {
        // If w is ζ-regular for ζ = e^{2πi m/n} with l(w) = 2Nm/n, then
        // σ_w^n = π^m.
        for (ty, m, n) in [("A2", 1usize, 3usize), ("A3", 1, 4), ("A3", 1, 3), ("G2", 1, 6), ("BC2", 1, 4)] {
            let s = sys(ty);
            let nu = ratio(m as i64, n as i64);
            let target_len = 2 * s.num_reflections() * m / n;
            let mut checked = 0;
            for w in s.elements() {
                if s.length(w) != target_len || !s.is_regular_element(w, &nu) {
                    continue;
                }
                let beta = s.lift_sigma(w);
                assert!(
                    s.is_periodic_witness(&beta, n, m).unwrap(),
                    "lift of regular element not periodic: {ty} nu={m}/{n}"
                );
                checked += 1;
            }
            assert!(checked > 0, "no length-compatible regular element: {ty} nu={m}/{n}");
        }
    }

    #[test]
    fn exterior_data_consistency() {
        // e_1 is the trace on V; check against fixed_space_dim at identity
        // and a reflection.
        let a3 = sys("A3");
        let e = a3.exterior_data(a3.identity());
        assert_eq!(e[1].to_rational().unwrap(), rat(3));
        let refl = a3.reflections()[0];
        let e = a3.exterior_data(refl);
        assert_eq!(e[1].to_rational().unwrap(), rat(1));
        // Coxeter element of I2(5): e_1 = ζ + ζ^{-1}, e_2 = 1.
        let i5 = sys("I2(5)");
        let cox = i5.project(&BraidWord::new(vec![1, 2]));
        let e = i5.exterior_data(cox);
        let z = Cyclo::root_of_unity(5, 1);
        assert_eq!(e[1], z.add(&z.inv()));
        assert_eq!(e[2], Cyclo::from_int(1));
    }

    #[test]
    fn inverse_and_mul_consistency() {
        for ty in ["A3", "I2(6)"] {
            let s = sys(ty);
            for w in s.elements() {
                assert_eq!(s.mul(w, s.inverse(w)), s.identity());
                assert_eq!(s.length(w), s.length(s.inverse(w)));
            }
        }
    }
}
