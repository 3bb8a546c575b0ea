//! Ordinary character tables of W: type A via the Murnaghan–Nakayama
//! rule, dihedral types from the explicit classification.

use std::collections::HashMap;
use std::fmt;

use crate::coxeter::{CoxeterSystem, CoxeterType, Elem, ElemRepr};
use crate::exactmath::{rat, Cyclo, Rat, Ring};
use crate::{validation, Result};

/// Label of an irreducible character of W.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CharLabel {
    /// Type A: a partition of n+1 (parts descending).
    Partition(Vec<usize>),
    /// Dihedral 1-dimensionals.
    Triv,
    Sign,
    /// δ(s) = 1, δ(t) = −1 (even m only).
    Delta,
    /// εδ(s) = −1, εδ(t) = 1 (even m only).
    EpsDelta,
    /// Two-dimensional φ_j, 1 ≤ j < m/2.
    Phi(usize),
}

impl CharLabel {
    pub fn parse(s: &str, ty: CoxeterType) -> Result<Self> {
        let s = s.trim();
        match ty {
            CoxeterType::A(n) => {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| {
                        crate::Error::Validation(format!("type A character label must be [..]: {s:?}"))
                    })?;
                let mut parts = Vec::new();
                for tok in inner.split(',') {
                    let tok = tok.trim();
                    if tok.is_empty() {
                        continue;
                    }
                    let p: usize = tok.parse().map_err(|_| {
                        crate::Error::Validation(format!("bad partition part {tok:?}"))
                    })?;
                    if p == 0 {
                        return validation("partition parts must be positive");
                    }
                    parts.push(p);
                }
                if parts.windows(2).any(|w| w[0] < w[1]) {
                    return validation("partition parts must be non-increasing");
                }
                if parts.iter().sum::<usize>() != n + 1 {
                    return validation(format!(
                        "partition {parts:?} is not a partition of {}",
                        n + 1
                    ));
                }
                Ok(CharLabel::Partition(parts))
            }
            CoxeterType::I2(m) => match s {
                "1" | "triv" => Ok(CharLabel::Triv),
                "eps" | "sign" => Ok(CharLabel::Sign),
                "delta" => {
                    if m % 2 == 0 {
                        Ok(CharLabel::Delta)
                    } else {
                        validation("delta exists only for even m")
                    }
                }
                "epsdelta" => {
                    if m % 2 == 0 {
                        Ok(CharLabel::EpsDelta)
                    } else {
                        validation("epsdelta exists only for even m")
                    }
                }
                _ => {
                    let j: usize = s
                        .strip_prefix("phi_")
                        .and_then(|r| r.parse().ok())
                        .ok_or_else(|| {
                            crate::Error::Validation(format!("bad dihedral character label {s:?}"))
                        })?;
                    if j >= 1 && 2 * j < m {
                        Ok(CharLabel::Phi(j))
                    } else {
                        validation(format!("phi_{j} out of range for I2({m})"))
                    }
                }
            },
        }
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Partition(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            CharLabel::Triv => write!(f, "1"),
            CharLabel::Sign => write!(f, "eps"),
            CharLabel::Delta => write!(f, "delta"),
            CharLabel::EpsDelta => write!(f, "epsdelta"),
            CharLabel::Phi(j) => write!(f, "phi_{j}"),
        }
    }
}

/// One conjugacy class: a canonical representative and its size.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub rep: Elem,
    pub size: usize,
}

/// Discrete key identifying a conjugacy class from an element's form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum ClassKey {
    CycleType(Vec<usize>),
    /// (is_reflection, k) with k normalized: rotations k ≤ m−k, reflections
    /// k ∈ {0, 1} by parity (always 0 when m is odd).
    Dihedral(bool, usize),
}

/// The full ordinary character table.
pub struct CharTable {
    labels: Vec<CharLabel>,
    classes: Vec<ClassData>,
    /// values[char][class]
    values: Vec<Vec<Cyclo>>,
    lookup: HashMap<ClassKey, usize>,
    ty: CoxeterType,
}

impl CharTable {
    pub fn new(sys: &CoxeterSystem) -> Self {
        match sys.coxeter_type() {
            CoxeterType::A(n) => Self::build_type_a(sys, n),
            CoxeterType::I2(m) => Self::build_dihedral(sys, m),
        }
    }

    fn build_type_a(sys: &CoxeterSystem, n: usize) -> Self {
        let parts = partitions(n + 1);
        // conjugacy classes indexed by cycle type, same partition list
        let mut classes = Vec::new();
        let mut lookup = HashMap::new();
        for (i, mu) in parts.iter().enumerate() {
            let rep = canonical_of_cycle_type(sys, mu);
            classes.push(ClassData {
                rep,
                size: class_size_a(n + 1, mu),
            });
            lookup.insert(ClassKey::CycleType(mu.clone()), i);
        }
        let mut memo = HashMap::new();
        let mut values = Vec::new();
        for lam in &parts {
            let row: Vec<Cyclo> = parts
                .iter()
                .map(|mu| Cyclo::from_int(mn_value(lam, mu, &mut memo)))
                .collect();
            values.push(row);
        }
        CharTable {
            labels: parts.into_iter().map(CharLabel::Partition).collect(),
            classes,
            values,
            lookup,
            ty: sys.coxeter_type(),
        }
    }

    fn build_dihedral(sys: &CoxeterSystem, m: usize) -> Self {
        let elem = |refl: bool, k: usize| {
            sys.elem_of_repr(&ElemRepr::Dihedral { refl, k: k as u16 })
                .expect("dihedral element")
        };
        let mut classes = Vec::new();
        let mut lookup = HashMap::new();
        let mut class_keys = Vec::new();
        // identity
        class_keys.push((ClassKey::Dihedral(false, 0), elem(false, 0), 1usize));
        // rotation pairs {ρ_k, ρ_{m−k}}
        for k in 1..=(m - 1) / 2 {
            class_keys.push((ClassKey::Dihedral(false, k), elem(false, k), 2));
        }
        if m % 2 == 0 {
            // central rotation ρ_{m/2}
            class_keys.push((ClassKey::Dihedral(false, m / 2), elem(false, m / 2), 1));
            class_keys.push((ClassKey::Dihedral(true, 0), elem(true, 0), m / 2));
            class_keys.push((ClassKey::Dihedral(true, 1), elem(true, 1), m / 2));
        } else {
            class_keys.push((ClassKey::Dihedral(true, 0), elem(true, 0), m));
        }
        for (i, (key, rep, size)) in class_keys.iter().enumerate() {
            classes.push(ClassData { rep: *rep, size: *size });
            lookup.insert(key.clone(), i);
        }
        // characters
        let mut labels = vec![CharLabel::Triv, CharLabel::Sign];
        if m % 2 == 0 {
            labels.push(CharLabel::Delta);
            labels.push(CharLabel::EpsDelta);
        }
        for j in 1..=(m - 1) / 2 {
            labels.push(CharLabel::Phi(j));
        }
        if m % 2 == 0 && m / 2 >= 1 {
            // j runs to m/2 − 1; the loop above already covers ≤ (m−1)/2 =
            // m/2 − 1 for even m? (m−1)/2 = m/2 − 1 + (m even ? 0 : ..) —
            // for even m, (m−1)/2 = m/2 − 1, so nothing extra to add.
        }
        let value = |lab: &CharLabel, key: &ClassKey| -> Cyclo {
            let (refl, k) = match key {
                ClassKey::Dihedral(r, k) => (*r, *k),
                _ => unreachable!(),
            };
            match lab {
                CharLabel::Triv => Cyclo::from_int(1),
                CharLabel::Sign => Cyclo::from_int(if refl { -1 } else { 1 }),
                CharLabel::Delta => {
                    // δ(ρ_k) = (−1)^k, δ(τ_k) = (−1)^k
                    Cyclo::from_int(if k % 2 == 0 { 1 } else { -1 })
                }
                CharLabel::EpsDelta => {
                    let d = if k % 2 == 0 { 1 } else { -1 };
                    Cyclo::from_int(if refl { -d } else { d })
                }
                CharLabel::Phi(j) => {
                    if refl {
                        Cyclo::from_int(0)
                    } else {
                        let z = Cyclo::root_of_unity(m as u32, (j * k) as i64);
                        z.add(&z.inv())
                    }
                }
                CharLabel::Partition(_) => unreachable!("type A label in dihedral table"),
            }
        };
        let values: Vec<Vec<Cyclo>> = labels
            .iter()
            .map(|lab| {
                class_keys
                    .iter()
                    .map(|(key, _, _)| value(lab, key))
                    .collect()
            })
            .collect();
        CharTable {
            labels,
            classes,
            values,
            lookup,
            ty: sys.coxeter_type(),
        }
    }

    pub fn labels(&self) -> &[CharLabel] {
        &self.labels
    }

    pub fn num_chars(&self) -> usize {
        self.labels.len()
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn char_index(&self, lab: &CharLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == lab)
    }

    pub fn class_index(&self, sys: &CoxeterSystem, w: Elem) -> usize {
        let key = match sys.repr(w) {
            ElemRepr::Perm(_) => ClassKey::CycleType(sys.cycle_type(w)),
            ElemRepr::Dihedral { refl, k } => {
                let m = match self.ty {
                    CoxeterType::I2(m) => m,
                    _ => unreachable!(),
                };
                let k = *k as usize;
                if *refl {
                    ClassKey::Dihedral(true, if m % 2 == 0 { k % 2 } else { 0 })
                } else {
                    ClassKey::Dihedral(false, k.min(m - k))
                }
            }
        };
        self.lookup[&key]
    }

    /// χ_i on class c.
    pub fn value(&self, i: usize, c: usize) -> &Cyclo {
        &self.values[i][c]
    }

    /// χ_i(w).
    pub fn value_at(&self, sys: &CoxeterSystem, i: usize, w: Elem) -> Cyclo {
        self.values[i][self.class_index(sys, w)].clone()
    }

    pub fn dim(&self, i: usize) -> usize {
        // value on the class of the identity (class_index of identity)
        let c = self
            .classes
            .iter()
            .position(|cd| cd.size >= 1 && cd.rep == Elem(0))
            .expect("identity class");
        usize::try_from(self.values[i][c].to_integer().expect("integral dimension"))
            .expect("nonnegative dimension")
    }

    pub fn triv_index(&self) -> usize {
        match self.ty {
            CoxeterType::A(n) => self
                .char_index(&CharLabel::Partition(vec![n + 1]))
                .unwrap(),
            CoxeterType::I2(_) => self.char_index(&CharLabel::Triv).unwrap(),
        }
    }

    pub fn sign_index(&self) -> usize {
        match self.ty {
            CoxeterType::A(n) => self
                .char_index(&CharLabel::Partition(vec![1; n + 1]))
                .unwrap(),
            CoxeterType::I2(_) => self.char_index(&CharLabel::Sign).unwrap(),
        }
    }

    /// Index of χ_i ⊗ ε.
    pub fn tensor_sign(&self, i: usize) -> usize {
        match (&self.ty, &self.labels[i]) {
            (CoxeterType::A(_), CharLabel::Partition(p)) => self
                .char_index(&CharLabel::Partition(conjugate_partition(p)))
                .unwrap(),
            (_, CharLabel::Triv) => self.char_index(&CharLabel::Sign).unwrap(),
            (_, CharLabel::Sign) => self.char_index(&CharLabel::Triv).unwrap(),
            (_, CharLabel::Delta) => self.char_index(&CharLabel::EpsDelta).unwrap(),
            (_, CharLabel::EpsDelta) => self.char_index(&CharLabel::Delta).unwrap(),
            (_, CharLabel::Phi(j)) => self.char_index(&CharLabel::Phi(*j)).unwrap(),
            _ => unreachable!(),
        }
    }

    /// Inner product ⟨f, χ_i⟩ of a class function given by its values per
    /// class with χ_i (characters are real here, so no conjugation of χ).
    pub fn inner_with(&self, sys: &CoxeterSystem, f: &[Cyclo], i: usize) -> Cyclo {
        let mut acc = Cyclo::from_int(0);
        for (c, cd) in self.classes.iter().enumerate() {
            let term = f[c]
                .mul(&self.values[i][c])
                .scale(&rat(cd.size as i64));
            acc = acc.add(&term);
        }
        acc.scale(&(rat(1) / rat(sys.order() as i64)))
    }
}

/// All partitions of n, descending parts, in reverse-lexicographic order
/// ([n] first, [1,…,1] last).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    go(n, n, &mut cur, &mut out);
    out
}

pub fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    if p.is_empty() {
        return Vec::new();
    }
    (1..=p[0])
        .map(|i| p.iter().filter(|&&x| x >= i).count())
        .collect()
}

/// n(λ) = Σ (i−1)λ_i (0-based weighting).
pub fn n_lambda(p: &[usize]) -> usize {
    p.iter().enumerate().map(|(i, &x)| i * x).sum()
}

fn class_size_a(n: usize, mu: &[usize]) -> usize {
    // n! / Π_k k^{m_k} m_k!
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &k in mu {
        *mult.entry(k).or_insert(0) += 1;
    }
    let mut denom: u128 = 1;
    for (k, m) in mult {
        for _ in 0..m {
            denom *= k as u128;
        }
        denom *= factorial(m);
    }
    (factorial(n) / denom) as usize
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn canonical_of_cycle_type(sys: &CoxeterSystem, mu: &[usize]) -> Elem {
    // consecutive cycles (0 1 … μ1−1)(μ1 …)…
    let n: usize = mu.iter().sum();
    let mut v = vec![0u8; n];
    let mut start = 0;
    for &len in mu {
        for i in 0..len {
            v[start + i] = (start + (i + 1) % len) as u8;
        }
        start += len;
    }
    sys.elem_of_repr(&ElemRepr::Perm(v)).expect("perm in table")
}

/// Murnaghan–Nakayama: χ_λ(μ). Memoized on (λ, μ-suffix).
fn mn_value(
    lam: &[usize],
    mu: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    if lam.is_empty() {
        return if mu.is_empty() { 1 } else { 0 };
    }
    if mu.is_empty() {
        return 0;
    }
    let key = (lam.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    // beta-numbers b_i = λ_i + (k−1−i)
    let k = lam.len();
    let betas: Vec<usize> = lam.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        if b < r {
            continue;
        }
        let nb = b - r;
        if betas.contains(&nb) {
            continue;
        }
        // height = number of betas strictly between nb and b
        let ht = betas.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if ht % 2 == 0 { 1 } else { -1 };
        // rebuild partition from modified beta set
        let mut nbetas = betas.clone();
        nbetas[i] = nb;
        nbetas.sort_unstable_by(|a, b| b.cmp(a));
        let mut nlam: Vec<usize> = nbetas
            .iter()
            .enumerate()
            .map(|(j, &x)| x + 1 + j - k)
            .collect();
        while nlam.last() == Some(&0) {
            nlam.pop();
        }
        total += sign * mn_value(&nlam, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The reflection character: χ_V(w) as a Cyclo (type A: fixed points − 1;
/// dihedral: 2cos on rotations, 0 on reflections).
pub fn reflection_char(sys: &CoxeterSystem, w: Elem) -> Cyclo {
    let e = sys.exterior_data(w);
    e[1].clone()
}

/// The sign character value (−1)^{l(w)} as a rational.
pub fn sign_value(sys: &CoxeterSystem, w: Elem) -> Rat {
    if sys.length(w) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}
