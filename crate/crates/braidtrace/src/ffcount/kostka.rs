//! Total Springer representations Q_u for type A via Kostka–Foulkes
//! polynomials (charge statistic), unipotent class sizes, and the
//! decomposition of a virtual character into the Q_u basis.

use crate::coxeter::{CoxeterSystem, CoxeterType};
use crate::exactmath::{rat, HalfLaurent, RFunc, Ring};
use crate::reptheory::chartable::{partitions, CharTable};
use crate::{internal, validation, Result};

/// One unipotent class in type A(n−1) ↔ partition μ of n, with the
/// character of Q_u (coefficients indexed in CharTable order) and the
/// number of F_q-points of the class as a polynomial in q.
#[derive(Clone, Debug)]
pub struct QuEntry {
    pub class: Vec<usize>,
    pub coeffs: Vec<HalfLaurent>,
    pub class_size: HalfLaurent,
}

/// n(μ) = Σ (i−1)·μ_i.
pub fn n_mu(mu: &[usize]) -> i64 {
    mu.iter()
        .enumerate()
        .map(|(i, &m)| (i as i64) * m as i64)
        .sum()
}

fn conjugate(mu: &[usize]) -> Vec<usize> {
    let Some(&first) = mu.first() else {
        return Vec::new();
    };
    (1..=first)
        .map(|i| mu.iter().filter(|&&m| m >= i).count())
        .collect()
}

/// All semistandard Young tableaux of shape λ and content μ, as row
/// fillings (entries 1-based).
fn ssyt(lam: &[usize], mu: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![0usize; mu.len()];
    fill(lam, mu, 0, 0, &mut rows, &mut used, &mut out);
    return out;

    fn fill(
        lam: &[usize],
        mu: &[usize],
        r: usize,
        c: usize,
        rows: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if r == lam.len() {
            out.push(rows.clone());
            return;
        }
        if c == 0 {
            rows.push(Vec::new());
        }
        if c == lam[r] {
            fill(lam, mu, r + 1, 0, rows, used, out);
            rows.truncate(r + 1);
            return;
        }
        for v in 1..=mu.len() {
            if used[v - 1] == mu[v - 1] {
                continue;
            }
            // weakly increasing along the row
            if c > 0 && rows[r][c - 1] > v {
                continue;
            }
            // strictly increasing down the column
            if r > 0 && lam[r - 1] > c && rows[r - 1][c] >= v {
                continue;
            }
            rows[r].push(v);
            used[v - 1] += 1;
            fill(lam, mu, r, c + 1, rows, used, out);
            rows[r].pop();
            used[v - 1] -= 1;
        }
        if c == 0 {
            rows.pop();
        }
    }
}

/// Lascoux–Schützenberger charge of a word with partition content:
/// repeatedly extract a standard subword (scanning right-to-left with
/// cyclic wraparound) and sum the index statistics.
pub fn charge(word: &[usize]) -> usize {
    let mut w: Vec<usize> = word.to_vec();
    let mut total = 0;
    while !w.is_empty() {
        let mut picked: Vec<usize> = Vec::new(); // positions, by letter 1, 2, …
        let mut cur = w.len();
        let mut letter = 1;
        loop {
            let pos = w[..cur]
                .iter()
                .rposition(|&x| x == letter)
                .or_else(|| w.iter().rposition(|&x| x == letter));
            let Some(p) = pos else { break };
            picked.push(p);
            cur = p;
            letter += 1;
        }
        let k = picked.len();
        assert!(k > 0, "content is not a partition");
        // charge of the standard subword read in position order
        let mut ordered: Vec<(usize, usize)> = picked
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i + 1))
            .collect();
        ordered.sort_unstable();
        let place = |r: usize| ordered.iter().position(|&(_, l)| l == r).unwrap();
        let mut ind = 0;
        for r in 2..=k {
            if place(r) > place(r - 1) {
                ind += 1;
            }
            total += ind;
        }
        // remove the extracted positions
        let mut sorted = picked.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        for p in sorted {
            w.remove(p);
        }
    }
    total
}

/// Kostka–Foulkes polynomial K_{λμ}(q) = Σ_T q^{charge(T)} over SSYT of
/// shape λ and content μ, as a polynomial in q.
pub fn kostka_foulkes(lam: &[usize], mu: &[usize]) -> HalfLaurent {
    let mut out = HalfLaurent::new();
    for t in ssyt(lam, mu) {
        // reading word: rows bottom-to-top, each left-to-right
        let word: Vec<usize> = t.iter().rev().flatten().copied().collect();
        out.add_term(2 * charge(&word) as i64, rat(1));
    }
    out
}

/// Number of F_q-points of the GL_n unipotent class of Jordan type μ,
/// |GL_n^F| / |Z(u_μ)^F|, as a polynomial in q.
pub fn class_size(mu: &[usize]) -> HalfLaurent {
    let n: usize = mu.iter().sum();
    let mut gl = HalfLaurent::t_pow((n * (n - 1)) as i64);
    for i in 1..=n {
        gl = gl.mul(&q_pow_minus_one(i as i64));
    }
    // |Z| = q^{Σ (μ'_i)²} · Π_i Π_{k=1}^{m_i} (1 − q^{−k})
    let sq: i64 = conjugate(mu).iter().map(|&c| (c * c) as i64).sum();
    let mut z = HalfLaurent::t_pow(2 * sq);
    for part in 1..=n {
        let mult = mu.iter().filter(|&&m| m == part).count() as i64;
        for k in 1..=mult {
            z = z.mul(&q_pow_minus_one(k)).shift(-2 * k);
        }
    }
    let (quot, rem) = gl.divrem(&z);
    assert!(rem.is_zero(), "class size is not polynomial");
    quot
}

fn q_pow_minus_one(k: i64) -> HalfLaurent {
    HalfLaurent::t_pow(2 * k).sub(&HalfLaurent::one())
}

/// The Q_u table for type A: one entry per partition of n, coefficient of
/// χ_λ in Q_{u_μ} equal to the modified Kostka–Foulkes polynomial
/// q^{n(μ)} K_{λμ}(q^{−1}).
pub fn qu_table(sys: &CoxeterSystem, table: &CharTable) -> Result<Vec<QuEntry>> {
    let CoxeterType::A(rank) = sys.coxeter_type() else {
        return validation("Springer tables are implemented for type A only");
    };
    let n = rank + 1;
    let mut out = Vec::new();
    for mu in partitions(n) {
        let shift = 2 * n_mu(&mu);
        let coeffs: Vec<HalfLaurent> = table
            .labels()
            .iter()
            .map(|lab| {
                let crate::reptheory::chartable::CharLabel::Partition(lam) = lab else {
                    unreachable!("type A labels are partitions")
                };
                kostka_foulkes(lam, &mu).bar().shift(shift)
            })
            .collect();
        for c in &coeffs {
            if c.valuation().map_or(false, |v| v < 0) {
                return internal(format!("negative q-power in Q_{mu:?}"));
            }
        }
        out.push(QuEntry {
            class_size: class_size(&mu),
            class: mu,
            coeffs,
        });
    }
    Ok(out)
}

/// Solve Tr = Σ_μ c_μ(q) Q_μ for the coefficients c_μ, using the
/// triangularity of the Kostka–Foulkes matrix with respect to dominance
/// order, then verify the full system exactly.
pub fn springer_decompose(
    sys: &CoxeterSystem,
    table: &CharTable,
    tr: &[RFunc],
) -> Result<Vec<(Vec<usize>, RFunc)>> {
    let qu = qu_table(sys, table)?;
    if tr.len() != table.num_chars() {
        return validation("character vector length mismatch");
    }
    // index of χ_μ for each class μ
    let char_of = |mu: &[usize]| -> usize {
        table
            .labels()
            .iter()
            .position(|l| matches!(l, crate::reptheory::chartable::CharLabel::Partition(p) if p[..] == *mu))
            .expect("partition label")
    };
    // solve in order of decreasing n(μ): strictly dominated classes have
    // strictly larger n, so each equation for χ_μ involves only already
    // solved coefficients besides c_μ
    let mut order: Vec<usize> = (0..qu.len()).collect();
    order.sort_by_key(|&i| -n_mu(&qu[i].class));
    let mut coeffs: Vec<Option<RFunc>> = vec![None; qu.len()];
    for &i in &order {
        let row = char_of(&qu[i].class);
        let mut rhs = tr[row].clone();
        for (j, c) in coeffs.iter().enumerate() {
            if let Some(c) = c {
                let k = RFunc::from_laurent(qu[j].coeffs[row].clone());
                rhs = rhs.sub(&c.mul(&k));
            }
        }
        // diagonal entry q^{n(μ)}
        coeffs[i] = Some(rhs.shift(-2 * n_mu(&qu[i].class)));
    }
    let coeffs: Vec<RFunc> = coeffs.into_iter().map(Option::unwrap).collect();
    // exactness over the whole system
    for row in 0..table.num_chars() {
        let mut acc = RFunc::zero();
        for (j, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&RFunc::from_laurent(qu[j].coeffs[row].clone())));
        }
        if acc != tr[row] {
            return internal(format!(
                "Springer decomposition failed to reproduce character row {row}"
            ));
        }
    }
    Ok(qu
        .iter()
        .zip(coeffs)
        .map(|(e, c)| (e.class.clone(), c))
        .collect())
}
