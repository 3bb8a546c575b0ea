//! Induction from Young parabolic subgroups S_{a_1} × … × S_{a_k} of
//! S_{n+1}, by class fusion (cycle types concatenate).

use std::collections::HashMap;

use crate::coxeter::{CoxeterSystem, CoxeterType};
use crate::exactmath::{rat, Rat};
use crate::reptheory::chartable::{partitions, CharLabel, CharTable};
use crate::{validation, Result};

/// z_μ = Π k^{m_k} m_k!: the centralizer order of cycle type μ.
fn z_mu(mu: &[usize]) -> u128 {
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &k in mu {
        *mult.entry(k).or_insert(0) += 1;
    }
    let mut z: u128 = 1;
    for (k, m) in mult {
        for _ in 0..m {
            z *= k as u128;
        }
        for i in 1..=m as u128 {
            z *= i;
        }
    }
    z
}

/// Character value χ_λ(μ) inside a symmetric group of the right size,
/// recomputed through a scratch Murnaghan–Nakayama table.
fn chi(lam: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    // re-expose the table machinery: build a mini MN evaluation
    mn(lam, mu, memo)
}

fn mn(lam: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if lam.is_empty() {
        return i64::from(mu.is_empty());
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
    let k = lam.len();
    let betas: Vec<usize> = lam.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        if b < r || betas.contains(&(b - r)) {
            continue;
        }
        let nb = b - r;
        let ht = betas.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if ht % 2 == 0 { 1 } else { -1 };
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
        total += sign * mn(&nlam, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Decompose Ind_{S_{a_1}×…×S_{a_k}}^{S_{n+1}} (χ_{λ^{(1)}} ⊠ … ⊠
/// χ_{λ^{(k)}}) into irreducibles of S_{n+1}. Factor labels are
/// partitions of the a_i; the result pairs each partition of n+1 with its
/// multiplicity.
pub fn induce(
    sys: &CoxeterSystem,
    factors: &[Vec<usize>],
) -> Result<Vec<(CharLabel, usize)>> {
    let CoxeterType::A(n) = sys.coxeter_type() else {
        return validation("induction is implemented for type A only");
    };
    let total: usize = factors.iter().map(|f| f.iter().sum::<usize>()).sum();
    if total != n + 1 {
        return validation(format!(
            "parabolic factor sizes sum to {total}, expected {}",
            n + 1
        ));
    }
    for f in factors {
        if f.is_empty() || f.windows(2).any(|w| w[0] < w[1]) {
            return validation(format!("bad factor partition {f:?}"));
        }
    }
    let mut memo = HashMap::new();
    // induced character value on each class μ of S_{n+1}:
    // Ind(μ) = z_μ · Σ_{(μ^1,…,μ^k) ⊢ fusing to μ} Π_i χ_i(μ^i)/z_{μ^i}
    let g_classes = partitions(n + 1);
    let mut values: Vec<Rat> = Vec::with_capacity(g_classes.len());
    for mu in &g_classes {
        let mut acc = rat(0);
        // distribute the multiset of parts of μ among the factors
        distribute(mu, factors, 0, &mut vec![Vec::new(); factors.len()], &mut |split| {
            let mut term = rat(1);
            for (f, part) in factors.iter().zip(split.iter()) {
                let size: usize = part.iter().sum();
                if size != f.iter().sum::<usize>() {
                    return;
                }
                let mut p = part.clone();
                p.sort_unstable_by(|a, b| b.cmp(a));
                let v = chi(f, &p, &mut memo);
                term *= rat(v) / rat(z_mu(&p) as i64);
            }
            acc += term;
        });
        values.push(acc * rat(z_mu(mu) as i64));
    }
    // inner products against irreducibles of S_{n+1}
    let table = CharTable::new(sys);
    let mut out = Vec::new();
    for lam in &g_classes {
        let mut ip = rat(0);
        for (c, mu) in g_classes.iter().enumerate() {
            let chi_v = chi(lam, mu, &mut memo);
            let size = rat(sys.order() as i64) / rat(z_mu(mu) as i64);
            ip += &values[c] * rat(chi_v) * size;
        }
        ip /= rat(sys.order() as i64);
        if !ip.is_integer() {
            return crate::internal(format!("non-integral induction multiplicity for {lam:?}"));
        }
        let m: i64 = ip.to_integer().try_into().unwrap();
        if m < 0 {
            return crate::internal("negative induction multiplicity");
        }
        if m > 0 {
            out.push((CharLabel::Partition(lam.clone()), m as usize));
        }
    }
    let _ = table;
    Ok(out)
}

/// Enumerate ways to split the parts of μ (as a sequence with
/// multiplicity) into k ordered groups; calls the callback with each
/// split. Duplicate splits arising from equal parts are deduplicated by
/// weighting — here we instead enumerate set-partitions of positions and
/// divide by nothing, because assigning equal parts to the same groups in
/// a different order produces the same split: we canonicalize by only
/// allowing non-decreasing group sequences for runs of equal parts.
fn distribute(
    mu: &[usize],
    factors: &[Vec<usize>],
    idx: usize,
    current: &mut Vec<Vec<usize>>,
    f: &mut impl FnMut(&Vec<Vec<usize>>),
) {
    if idx == mu.len() {
        f(current);
        return;
    }
    for g in 0..factors.len() {
        // canonicalize: if this part equals the previous one, it may not
        // go into an earlier group than the previous part did
        if idx > 0 && mu[idx] == mu[idx - 1] {
            let prev_group = (0..factors.len())
                .rev()
                .find(|&gg| current[gg].last() == Some(&mu[idx - 1]))
                .unwrap_or(0);
            if g < prev_group {
                continue;
            }
        }
        // quick pruning on sizes
        let size: usize = current[g].iter().sum();
        if size + mu[idx] > factors[g].iter().sum() {
            continue;
        }
        current[g].push(mu[idx]);
        distribute(mu, factors, idx + 1, current, f);
        current[g].pop();
    }
}
