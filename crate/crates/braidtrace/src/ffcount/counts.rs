//! Brute-force point counts of the braid-indexed varieties over F_q and
//! their comparison with the character-theoretic predictions.

use num_traits::{ToPrimitive, Zero};

use super::flags::FlagGeom;
use super::kostka::qu_table;
use super::linalg::Mat;
use crate::coxeter::{BraidWord, CoxeterSystem, CoxeterType};
use crate::exactmath::{rat, HalfLaurent, RFunc, Rat};
use crate::reptheory::chartable::CharTable;
use crate::traces::TraceEngine;
use crate::{validation, Result};

/// The reductive groups supported for counting.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Group {
    Sl2,
    Gl2,
    Sl3,
    Gl3,
}

impl Group {
    pub fn parse(s: &str) -> Result<Group> {
        match s.to_ascii_uppercase().as_str() {
            "SL2" => Ok(Group::Sl2),
            "GL2" => Ok(Group::Gl2),
            "SL3" => Ok(Group::Sl3),
            "GL3" => Ok(Group::Gl3),
            _ => validation(format!("unknown group {s:?} (use SL2, GL2, SL3, GL3)")),
        }
    }

    /// Matrix size n.
    pub fn n(self) -> usize {
        match self {
            Group::Sl2 | Group::Gl2 => 2,
            Group::Sl3 | Group::Gl3 => 3,
        }
    }

    pub fn is_special_linear(self) -> bool {
        matches!(self, Group::Sl2 | Group::Sl3)
    }

    /// |G(F_q)|.
    pub fn order(self, q: u64) -> u128 {
        let q = q as u128;
        let gl = |n: u32| -> u128 {
            let qn = q.pow(n);
            (0..n).map(|i| qn - q.pow(i)).product()
        };
        match self {
            Group::Gl2 => gl(2),
            Group::Sl2 => gl(2) / (q - 1),
            Group::Gl3 => gl(3),
            Group::Sl3 => gl(3) / (q - 1),
        }
    }

    /// |B(F_q)| for the Borel subgroup.
    pub fn borel_order(self, q: u64) -> u128 {
        let q = q as u128;
        match self {
            Group::Gl2 => (q - 1) * (q - 1) * q,
            Group::Sl2 => (q - 1) * q,
            Group::Gl3 => (q - 1) * (q - 1) * (q - 1) * q * q * q,
            Group::Sl3 => (q - 1) * (q - 1) * q * q * q,
        }
    }

    pub fn weyl(self) -> CoxeterType {
        CoxeterType::A(self.n() - 1)
    }
}

/// Which fiber of O(β) → G to count.
#[derive(Clone, Debug)]
pub enum Fiber {
    /// All of G(β): pairs of a chain and a compatible group element.
    All,
    /// The fiber X(β) above the identity (closed chains).
    Over1,
    /// Fibers above every unipotent element, reported per Jordan class.
    Unipotents,
    /// The fiber above one given element.
    Over(Mat),
}

/// Result of a chain count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainCounts {
    Total(u128),
    PerClass(Vec<(Vec<usize>, u128)>),
}

fn check_prime(q: u64) -> Result<()> {
    let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0);
    if !prime {
        return validation(format!("q = {q} is not prime"));
    }
    Ok(())
}

fn check_chain_guards(group: Group, q: u64, beta: &BraidWord) -> Result<()> {
    check_prime(q)?;
    if q > 7 {
        return validation("chain counting supports q ≤ 7");
    }
    let limit = if group.n() == 2 { 14 } else { 8 };
    if beta.writhe() > limit {
        return validation(format!(
            "writhe {} exceeds the chain-count limit {limit}",
            beta.writhe()
        ));
    }
    if !beta.is_positive() {
        return validation("chain counting needs a positive braid word");
    }
    let max_gen = (group.n() - 1) as i32;
    if beta.letters.iter().any(|&l| l > max_gen) {
        return validation(format!("braid letter out of range for {group:?}"));
    }
    Ok(())
}

/// The chain-transfer matrix P with P[F][F′] equal to the number of chains
/// F = B_0, B_1, …, B_ℓ = F′ with (B_{i−1}, B_i) ∈ O_{s_i}.
fn transfer_matrix(geom: &FlagGeom, beta: &BraidWord) -> Vec<Vec<u128>> {
    let m = geom.len();
    let mut p: Vec<Vec<u128>> = (0..m)
        .map(|i| (0..m).map(|j| u128::from(i == j)).collect())
        .collect();
    for &letter in &beta.letters {
        let a = geom.adjacency(letter as usize);
        p = mat_mul(&p, &a);
    }
    p
}

fn mat_mul(a: &[Vec<u128>], b: &[Vec<u128>]) -> Vec<Vec<u128>> {
    let m = a.len();
    let mut out = vec![vec![0u128; m]; m];
    for i in 0..m {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for (j, &bkj) in b[k].iter().enumerate() {
                out[i][j] += aik * bkj;
            }
        }
    }
    out
}

/// Count the F_q-points of the requested fiber of O(β) → G. The chain for
/// the fiber above g runs from B_0 to B_ℓ = g·B_0.
pub fn count_chains(group: Group, q: u64, beta: &BraidWord, fiber: &Fiber) -> Result<ChainCounts> {
    check_chain_guards(group, q, beta)?;
    let geom = FlagGeom::new(group.n(), q);
    let p = transfer_matrix(&geom, beta);
    match fiber {
        Fiber::All => {
            // every chain admits exactly |B^F| compatible group elements
            let total: u128 = p.iter().flatten().sum();
            Ok(ChainCounts::Total(total * group.borel_order(q)))
        }
        Fiber::Over1 => {
            let total = (0..geom.len()).map(|i| p[i][i]).sum();
            Ok(ChainCounts::Total(total))
        }
        Fiber::Over(g) => {
            if g.n != group.n() || g.det(&geom.gf) == 0 {
                return validation("fiber element must be invertible of matching size");
            }
            let gi = g.inverse(&geom.gf);
            let total = (0..geom.len()).map(|i| p[i][geom.act(g, &gi, i)]).sum();
            Ok(ChainCounts::Total(total))
        }
        Fiber::Unipotents => {
            let n = group.n();
            let mut per: Vec<(Vec<usize>, u128)> = crate::reptheory::chartable::partitions(n)
                .into_iter()
                .map(|mu| (mu, 0u128))
                .collect();
            for (u, ty) in geom.unipotents() {
                let ui = u.inverse(&geom.gf);
                let count: u128 = (0..geom.len()).map(|i| p[i][geom.act(&u, &ui, i)]).sum();
                per.iter_mut().find(|(mu, _)| *mu == ty).unwrap().1 += count;
            }
            Ok(ChainCounts::PerClass(per))
        }
    }
}

/// |U(β)^F|: the unipotent locus of G(β), summed over all classes.
pub fn count_unipotent_total(group: Group, q: u64, beta: &BraidWord) -> Result<u128> {
    match count_chains(group, q, beta, &Fiber::Unipotents)? {
        ChainCounts::PerClass(per) => Ok(per.iter().map(|(_, c)| c).sum()),
        ChainCounts::Total(_) => unreachable!(),
    }
}

/// Point count of Mellit's chart X₀(β, B) ⊆ X(β) for β ∈ Br₂ over GL₂:
/// the z ∈ F_q^ℓ for which Π_i [[0, 1], [1, z_i]] is upper-triangular.
pub fn count_x0(q: u64, beta: &BraidWord) -> Result<u128> {
    check_prime(q)?;
    if q > 31 {
        return validation("X₀ counting supports q ≤ 31");
    }
    if beta.writhe() > 10 {
        return validation("X₀ counting supports writhe ≤ 10");
    }
    if !beta.is_positive() || beta.letters.iter().any(|&l| l != 1) {
        return validation("X₀ counting needs a positive braid word in Br₂");
    }
    let gf = super::linalg::Gf::new(q);
    // dynamic programming over projectively-normalized running products
    let normalize = |m: &Mat| -> Mat {
        let lead = m.a[..4].iter().find(|&&v| v % q != 0).expect("nonzero");
        let s = gf.inv(*lead);
        let mut out = *m;
        for v in out.a.iter_mut().take(4) {
            *v = gf.mul(*v, s);
        }
        out
    };
    let mut states: std::collections::HashMap<Mat, u128> = std::collections::HashMap::new();
    states.insert(normalize(&Mat::identity(2)), 1);
    for _ in &beta.letters {
        let mut next = std::collections::HashMap::new();
        for (m, count) in &states {
            for z in 0..q {
                let mut f = Mat::zero(2);
                f.set(0, 1, 1);
                f.set(1, 0, 1);
                f.set(1, 1, z);
                let nm = normalize(&m.mul(&f, &gf));
                *next.entry(nm).or_insert(0) += count;
            }
        }
        states = next;
    }
    Ok(states
        .iter()
        .filter(|(m, _)| m.get(1, 0) == 0)
        .map(|(_, c)| c)
        .sum())
}

/// Comparison report for the virtual-character point-count identity.
#[derive(Clone, Debug)]
pub struct VirtualReport {
    pub ok: bool,
    /// Tr⟨β⟩⁰ evaluated at q, per character.
    pub lhs: Vec<Rat>,
    /// ((−1)^{r−|β|}/|G^F|) Σ_u |U(β)_u^F| Q_u(q), per character.
    pub rhs: Vec<Rat>,
    pub discrepancies: Vec<String>,
}

/// Evaluate a whole-q Laurent polynomial at q = x.
fn eval_q(p: &HalfLaurent, x: &Rat) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (e, c) in p.terms() {
        if e % 2 != 0 {
            return crate::internal("odd half-power of q in evaluation".to_string());
        }
        let k = e / 2;
        let mut pw = rat(1);
        let base = if k >= 0 { x.clone() } else { x.recip() };
        for _ in 0..k.abs() {
            pw *= &base;
        }
        acc += c * pw;
    }
    Ok(acc)
}

fn eval_rfunc_q(f: &RFunc, x: &Rat) -> Result<Rat> {
    // normalize parity: if both parts carry odd t-powers, shift them
    let num = f.numerator();
    let den = f.denominator();
    let (num, den) = if num.is_whole_q() && den.is_whole_q() {
        (num.clone(), den.clone())
    } else {
        (num.shift(1), den.shift(1))
    };
    let d = eval_q(&den, x)?;
    if d.is_zero() {
        return validation("pole of a trace coefficient at this q".to_string());
    }
    Ok(eval_q(&num, x)? / d)
}

/// Check Tr⟨β⟩⁰|_q = ((−1)^{r−|β|}/|G^F|) Σ_u |U(β)_u^F| Q_u for a
/// semisimple group (SL₂ or SL₃).
pub fn verify_virtual(group: Group, q: u64, beta: &BraidWord) -> Result<VirtualReport> {
    if !group.is_special_linear() {
        return validation("the virtual point-count identity needs SL2 or SL3");
    }
    let sys = CoxeterSystem::new(group.weyl())?;
    let table = CharTable::new(&sys);
    let eng = TraceEngine::new(&sys, None)?;
    let tr0 = eng.rw_trace0(beta)?;
    let qr = rat(q as i64);
    let mut lhs = Vec::with_capacity(tr0.len());
    for f in &tr0 {
        lhs.push(eval_rfunc_q(f, &qr)?);
    }

    let counts = match count_chains(group, q, beta, &Fiber::Unipotents)? {
        ChainCounts::PerClass(per) => per,
        ChainCounts::Total(_) => unreachable!(),
    };
    let qu = qu_table(&sys, &table)?;
    let r = sys.rank() as i64;
    let e = beta.writhe();
    let sign = if (r - e).rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    };
    let order = rat(group.order(q).to_i64().expect("group order fits i64"));
    let mut rhs = vec![Rat::zero(); table.num_chars()];
    for entry in &qu {
        let count = counts
            .iter()
            .find(|(mu, _)| *mu == entry.class)
            .map(|(_, c)| *c)
            .unwrap();
        let weight = rat(count.to_i64().expect("count fits i64"));
        for (psi, coeff) in entry.coeffs.iter().enumerate() {
            rhs[psi] += &weight * eval_q(coeff, &qr)?;
        }
    }
    for v in rhs.iter_mut() {
        *v *= &sign / &order;
    }

    let mut discrepancies = Vec::new();
    for (i, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        if a != b {
            discrepancies.push(format!(
                "character {}: trace gives {a}, point count gives {b}",
                table.labels()[i]
            ));
        }
    }
    Ok(VirtualReport {
        ok: discrepancies.is_empty(),
        lhs,
        rhs,
        discrepancies,
    })
}

/// Check Kálmán's identity |X(βπ)^F| = |U(β)^F| by two independent counts.
pub fn verify_kalman(group: Group, q: u64, beta: &BraidWord) -> Result<bool> {
    let sys = CoxeterSystem::new(group.weyl())?;
    let beta_pi = beta.concat(&sys.full_twist());
    let x = match count_chains(group, q, &beta_pi, &Fiber::Over1)? {
        ChainCounts::Total(t) => t,
        ChainCounts::PerClass(_) => unreachable!(),
    };
    let u = count_unipotent_total(group, q, beta)?;
    Ok(x == u)
}
