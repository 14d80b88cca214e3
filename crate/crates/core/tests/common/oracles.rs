//! Brute-force reimplementations used to cross-check the library. Nothing
//! here calls into the decompositions under test; only catalog data
//! (atoms, form, roots, `W_K`) is read from the datum.

#![allow(dead_code)]

use std::collections::BTreeMap;

use tempiric::branching::BranchingRule;
use tempiric::rational::int;
use tempiric::weights::Atom;
use tempiric::{CompactGroup, FormalSum, GroupDatum, Label, Rational};

/// Weights of one atom, with multiplicity. `Cyclic2` weights are parities.
fn atom_weights(a: Atom, x: i64) -> Vec<i64> {
    match a {
        Atom::Torus1 | Atom::Cyclic2 => vec![x],
        Atom::SU2 => {
            let mut w = Vec::new();
            let mut m = x;
            while m >= -x {
                w.push(m);
                m -= 2;
            }
            w
        }
        Atom::SO3 => (-x..=x).rev().collect(),
    }
}

pub type Multiset = BTreeMap<Vec<i64>, i64>;

pub fn weight_multiset(group: &CompactGroup, label: &Label) -> Multiset {
    let mut acc: Multiset = BTreeMap::from([(Vec::new(), 1)]);
    for (a, x) in group.atoms().iter().zip(label.coords()) {
        let mut next = Multiset::new();
        for (w, m) in &acc {
            for c in atom_weights(*a, *x) {
                let mut w = w.clone();
                w.push(c);
                *next.entry(w).or_default() += m;
            }
        }
        acc = next;
    }
    acc
}

fn add_weights(group: &CompactGroup, x: &[i64], y: &[i64]) -> Vec<i64> {
    group
        .atoms()
        .iter()
        .zip(x.iter().zip(y))
        .map(|(a, (p, q))| if *a == Atom::Cyclic2 { (p + q).rem_euclid(2) } else { p + q })
        .collect()
}

/// Decomposes a character given as a weight multiset by repeatedly removing
/// the character of the lexicographically largest weight, which is always a
/// highest weight of some constituent.
pub fn peel(group: &CompactGroup, mut ms: Multiset) -> FormalSum<Label> {
    ms.retain(|_, m| *m != 0);
    let mut out = FormalSum::new();
    while let Some((top, m)) = ms.iter().next_back().map(|(k, v)| (k.clone(), *v)) {
        assert!(m > 0, "weight {top:?} has multiplicity {m}");
        let label = Label(top);
        for (w, k) in weight_multiset(group, &label) {
            let e = ms.entry(w).or_default();
            *e -= k * m;
        }
        ms.retain(|_, v| *v != 0);
        assert!(ms.values().all(|v| *v > 0), "peeling {label} left a negative weight");
        out.add_term(label, m);
    }
    out
}

pub fn tensor(group: &CompactGroup, t1: &Label, t2: &Label) -> FormalSum<Label> {
    let (w1, w2) = (weight_multiset(group, t1), weight_multiset(group, t2));
    let mut ms = Multiset::new();
    for (x, m) in &w1 {
        for (y, n) in &w2 {
            *ms.entry(add_weights(group, x, y)).or_default() += m * n;
        }
    }
    peel(group, ms)
}

/// `tau|_M` by pushing K-weights down to M-weights.
pub fn restrict(datum: &GroupDatum, tau: &Label) -> FormalSum<Label> {
    let mut ms = Multiset::new();
    for (w, m) in weight_multiset(&datum.k, tau) {
        let image = match datum.branching {
            BranchingRule::Parity => vec![w[0].rem_euclid(2)],
            BranchingRule::TorusRestriction => vec![w[0]],
            BranchingRule::ClebschDiagonal => vec![w[0] + w[1]],
        };
        *ms.entry(image).or_default() += m;
    }
    peel(&datum.m, ms)
}

pub fn dual(group: &CompactGroup, label: &Label) -> Label {
    Label(
        group
            .atoms()
            .iter()
            .zip(label.coords())
            .map(|(a, x)| if *a == Atom::Torus1 { -x } else { *x })
            .collect(),
    )
}

/// Multiplicity of `tau` in the principal series induced from `sigma`.
pub fn induced_mult(datum: &GroupDatum, sigma: &Label, tau: &Label) -> i64 {
    restrict(datum, tau).get(&dual(&datum.m, sigma))
}

pub fn norm(datum: &GroupDatum, tau: &Label) -> Rational {
    let v: Vec<i64> = datum
        .k
        .atoms()
        .iter()
        .zip(tau.coords())
        .filter(|(a, _)| **a != Atom::Cyclic2)
        .map(|(_, x)| *x)
        .zip(&datum.two_rho_c)
        .map(|(x, r)| x + r)
        .collect();
    let g = datum.gram.rows();
    let mut total = int(0);
    for i in 0..v.len() {
        for j in 0..v.len() {
            total += &g[i][j] * int(v[i] * v[j]);
        }
    }
    total
}

/// Every label whose coordinates have absolute value at most `r`.
pub fn labels_up_to(group: &CompactGroup, r: i64) -> Vec<Label> {
    let mut out = vec![Vec::new()];
    for a in group.atoms() {
        let range: Vec<i64> = match a {
            Atom::Torus1 => (-r..=r).collect(),
            Atom::Cyclic2 => vec![0, 1],
            Atom::SU2 | Atom::SO3 => (0..=r).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                range.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(*x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Label).collect()
}

/// Minimal K-types of `Ind(sigma)` by an exhaustive sweep of a label box
/// that must be large enough to contain them.
pub fn minimal_ktypes(datum: &GroupDatum, sigma: &Label, sweep: i64) -> Vec<Label> {
    let mut hits: Vec<(Rational, Label)> = labels_up_to(&datum.k, sweep)
        .into_iter()
        .filter(|t| induced_mult(datum, sigma, t) > 0)
        .map(|t| (norm(datum, &t), t))
        .collect();
    hits.sort();
    let Some(least) = hits.first().map(|(n, _)| n.clone()) else {
        return Vec::new();
    };
    hits.into_iter().filter(|(n, _)| *n == least).map(|(_, t)| t).collect()
}

fn pair(datum: &GroupDatum, x: &[i64], y: &[i64]) -> Rational {
    let g = datum.gram.rows();
    let mut total = int(0);
    for i in 0..x.len() {
        for j in 0..y.len() {
            total += &g[i][j] * int(x[i] * y[j]);
        }
    }
    total
}

fn det(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * rows[0][j] * det(&minor)
        })
        .sum()
}

fn count_combinations(roots: &[Vec<i64>], x: &[i64], cap: i64) -> i64 {
    let k = roots.len();
    let mut coeffs = vec![0i64; k];
    let mut count = 0;
    loop {
        let sum: Vec<i64> = (0..x.len()).map(|i| (0..k).map(|r| coeffs[r] * roots[r][i]).sum()).collect();
        if sum == x {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            if coeffs[i] < cap {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Blattner's alternating sum with the partition function evaluated by
/// enumerating a box of coefficient vectors.
pub fn blattner(datum: &GroupDatum, lambda: &[i64], tau: &Label) -> i64 {
    let ds = datum.ds.as_ref().expect("equal rank");
    let positive = |roots: &[Vec<i64>]| -> Vec<Vec<i64>> {
        roots.iter().filter(|r| pair(datum, lambda, r) > int(0)).cloned().collect()
    };
    let pc = positive(&ds.compact_roots);
    let pn = positive(&ds.noncompact_roots);
    let n = lambda.len();
    let sum = |rs: &[Vec<i64>]| -> Vec<i64> { (0..n).map(|i| rs.iter().map(|r| r[i]).sum()).collect() };
    let (rc2, rn2) = (sum(&pc), sum(&pn));
    let mu: Vec<i64> = tau.coords().to_vec();
    let mut total = 0;
    for w in &ds.wk {
        let rows = w.rows();
        let shifted2: Vec<i64> = (0..n).map(|i| 2 * mu[i] + rc2[i]).collect();
        let image2: Vec<i64> = rows.iter().map(|r| r.iter().zip(&shifted2).map(|(a, b)| a * b).sum()).collect();
        let diff2: Vec<i64> = (0..n).map(|i| image2[i] - 2 * lambda[i] - rn2[i]).collect();
        if diff2.iter().any(|c| c % 2 != 0) {
            continue;
        }
        let diff: Vec<i64> = diff2.iter().map(|c| c / 2).collect();
        let cap = diff.iter().map(|c| c.abs()).sum::<i64>() + 1;
        total += det(rows) * count_combinations(&pn, &diff, cap);
    }
    total
}
