//! Irreducible representations of the compact groups that occur as `K` and
//! `M`. A compact group here is a product of atoms (circle, `Z/2`, `SU(2)`,
//! `SO(3)`); every atom has a multiplicity-free tensor product, which keeps
//! all of the combinatorics below closed-form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::GroupDatum;
use crate::error::{Error, Result};
use crate::rational::{int, isqrt_floor, Rational};

/// Labels larger than this in absolute value are rejected.
pub const MAX_LABEL_COORD: i64 = 1 << 24;

/// Upper limit on the number of candidate labels scanned by a window.
const MAX_WINDOW_CANDIDATES: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    Torus1,
    Cyclic2,
    SU2,
    SO3,
}

impl Atom {
    /// Whether the atom contributes a coordinate to the weight lattice.
    pub fn has_coordinate(self) -> bool {
        !matches!(self, Atom::Cyclic2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::Torus1 => "Torus1",
            Atom::Cyclic2 => "Cyclic2",
            Atom::SU2 => "SU2",
            Atom::SO3 => "SO3",
        }
    }

    fn check(self, x: i64) -> std::result::Result<(), String> {
        if x.abs() > MAX_LABEL_COORD {
            return Err(format!("{} label {x} exceeds {MAX_LABEL_COORD}", self.name()));
        }
        match self {
            Atom::Torus1 => Ok(()),
            Atom::Cyclic2 if x == 0 || x == 1 => Ok(()),
            Atom::Cyclic2 => Err(format!("Cyclic2 label must be 0 or 1, got {x}")),
            Atom::SU2 | Atom::SO3 if x >= 0 => Ok(()),
            Atom::SU2 | Atom::SO3 => Err(format!("{} label must be nonnegative, got {x}", self.name())),
        }
    }

    fn dim(self, x: i64) -> u64 {
        match self {
            Atom::Torus1 | Atom::Cyclic2 => 1,
            Atom::SU2 => x as u64 + 1,
            Atom::SO3 => 2 * x as u64 + 1,
        }
    }

    fn weights(self, x: i64) -> Vec<i64> {
        match self {
            Atom::Torus1 | Atom::Cyclic2 => vec![x],
            Atom::SU2 => (0..=x).map(|k| -x + 2 * k).collect(),
            Atom::SO3 => (-x..=x).collect(),
        }
    }

    fn dual(self, x: i64) -> i64 {
        match self {
            Atom::Torus1 => -x,
            _ => x,
        }
    }

    fn tensor(self, x: i64, y: i64) -> Vec<i64> {
        match self {
            Atom::Torus1 => vec![x + y],
            Atom::Cyclic2 => vec![x ^ y],
            Atom::SU2 => ((x - y).abs()..=x + y).step_by(2).collect(),
            Atom::SO3 => ((x - y).abs()..=x + y).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label of an irreducible representation: one integer per atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub Vec<i64>);

pub type KTypeLabel = Label;
pub type MTypeLabel = Label;

impl Label {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            xs => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<Vec<i64>> for Label {
    fn from(v: Vec<i64>) -> Self {
        Label(v)
    }
}

/// Parses `3`, `-2`, `(1,2)`, `[1, 2]` or `1,2`. Does not validate against a
/// group; see [`CompactGroup::parse_label`].
pub fn parse_label(text: &str) -> Result<Label> {
    let s = text.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| s.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(s);
    if inner.trim().is_empty() {
        return Err(Error::Parse(format!("empty label `{text}`")));
    }
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() > 16 {
        return Err(Error::Parse(format!("label `{text}` has too many components")));
    }
    parts
        .iter()
        .map(|p| {
            let p = p.trim();
            let digits = p.strip_prefix(['+', '-']).unwrap_or(p);
            if digits.is_empty() || digits.len() > 18 || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad label component `{p}` in `{text}`")));
            }
            p.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad label component `{p}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Label)
}

/// Weight of a representation: lattice coordinates plus one parity bit per
/// `Cyclic2` atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec {
    pub coords: Vec<i64>,
    pub parity: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompactGroup {
    atoms: Vec<Atom>,
}

impl CompactGroup {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(crate::error::validation("atoms", "atom list is empty"));
        }
        Ok(CompactGroup { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn lattice_dim(&self) -> usize {
        self.atoms.iter().filter(|a| a.has_coordinate()).count()
    }

    /// True when the dual is finite, i.e. every atom is `Cyclic2`.
    pub fn is_finite(&self) -> bool {
        self.atoms.iter().all(|a| *a == Atom::Cyclic2)
    }

    pub fn validate(&self, label: &Label) -> Result<()> {
        let bad = |reason: String| Error::InvalidLabel {
            label: label.to_string(),
            group: self.to_string(),
            reason,
        };
        if label.0.len() != self.atoms.len() {
            return Err(bad(format!(
                "expected {} components, got {}",
                self.atoms.len(),
                label.0.len()
            )));
        }
        for (a, x) in self.atoms.iter().zip(&label.0) {
            a.check(*x).map_err(bad)?;
        }
        Ok(())
    }

    pub fn parse_label(&self, text: &str) -> Result<Label> {
        let label = parse_label(text)?;
        self.validate(&label)?;
        Ok(label)
    }

    pub fn trivial(&self) -> Label {
        Label(vec![0; self.atoms.len()])
    }

    pub fn dual(&self, label: &Label) -> Label {
        Label(self.atoms.iter().zip(&label.0).map(|(a, x)| a.dual(*x)).collect())
    }

    /// Highest weight in lattice coordinates (parity bits dropped).
    pub fn highest_weight(&self, label: &Label) -> Vec<i64> {
        self.atoms
            .iter()
            .zip(&label.0)
            .filter(|(a, _)| a.has_coordinate())
            .map(|(_, x)| *x)
            .collect()
    }

    /// Inverse of [`highest_weight`](Self::highest_weight) for groups
    /// without `Cyclic2` atoms; `None` when the weight is not dominant.
    pub fn label_of_highest_weight(&self, weight: &[i64]) -> Option<Label> {
        if weight.len() != self.atoms.len() || self.atoms.contains(&Atom::Cyclic2) {
            return None;
        }
        let label = Label(weight.to_vec());
        self.validate(&label).ok().map(|_| label)
    }

    /// All labels of the group whose coordinates lie in the given
    /// per-atom inclusive ranges (clipped to valid labels).
    pub fn labels_in_box(&self, ranges: &[(i64, i64)]) -> Vec<Label> {
        let clipped: Vec<(i64, i64)> = self
            .atoms
            .iter()
            .zip(ranges)
            .map(|(a, &(lo, hi))| match a {
                Atom::Torus1 => (lo, hi),
                Atom::Cyclic2 => (lo.max(0), hi.min(1)),
                Atom::SU2 | Atom::SO3 => (lo.max(0), hi),
            })
            .collect();
        cartesian(&clipped).into_iter().map(Label).collect()
    }
}

impl fmt::Display for CompactGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

fn cartesian(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Vec::new();
    }
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Finite integer combination of labels. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K) -> Self {
        let mut s = Self::new();
        s.add_term(key, 1);
        s
    }

    pub fn add_term(&mut self, key: K, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, m)| (k, *m))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: i64) -> Self {
        self.iter().map(|(k, m)| (k.clone(), m * c)).collect()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            out.add_term(k.clone(), m);
        }
        out
    }

    /// First term with a negative coefficient, if any.
    pub fn first_negative(&self) -> Option<(&K, i64)> {
        self.iter().find(|(_, m)| *m < 0)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, m) in iter {
            s.add_term(k, m);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {m}")?;
        }
        f.write_str("}")
    }
}

pub fn weyl_dim(group: &CompactGroup, tau: &Label) -> Result<u64> {
    group.validate(tau)?;
    group
        .atoms
        .iter()
        .zip(&tau.0)
        .try_fold(1u64, |acc, (a, x)| acc.checked_mul(a.dim(*x)))
        .ok_or_else(|| Error::InvalidLabel {
            label: tau.to_string(),
            group: group.to_string(),
            reason: "dimension overflows u64".into(),
        })
}

/// Full weight multiset, sorted.
pub fn weights_of(group: &CompactGroup, tau: &Label) -> Result<Vec<WeightVec>> {
    weyl_dim(group, tau)?;
    let mut out = vec![WeightVec { coords: Vec::new(), parity: Vec::new() }];
    for (a, x) in group.atoms.iter().zip(&tau.0) {
        let ws = a.weights(*x);
        out = out
            .into_iter()
            .flat_map(|w| {
                ws.iter().map(move |c| {
                    let mut w = w.clone();
                    if a.has_coordinate() {
                        w.coords.push(*c);
                    } else {
                        w.parity.push(*c as u8);
                    }
                    w
                })
            })
            .collect();
    }
    out.sort();
    Ok(out)
}

pub fn tensor_decompose(group: &CompactGroup, t1: &Label, t2: &Label) -> Result<FormalSum<Label>> {
    group.validate(t1)?;
    group.validate(t2)?;
    let factors: Vec<Vec<i64>> = group
        .atoms
        .iter()
        .zip(t1.0.iter().zip(&t2.0))
        .map(|(a, (x, y))| a.tensor(*x, *y))
        .collect();
    let mut labels = vec![Vec::new()];
    for choices in &factors {
        labels = labels
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(*c);
                    v
                })
            })
            .collect();
    }
    // every atom is multiplicity-free, hence so is the product
    Ok(labels.into_iter().map(|l| (Label(l), 1)).collect())
}

/// `dim Hom(V1, V2)^G`, the trivial-isotypic multiplicity of `V1* (x) V2`.
/// By Schur orthogonality this is the sum of `m1(rho) * m2(rho)`.
pub fn hom_invariant_dim(group: &CompactGroup, v1: &FormalSum<Label>, v2: &FormalSum<Label>) -> Result<u64> {
    for v in [v1, v2] {
        if let Some((l, m)) = v.first_negative() {
            return Err(Error::NegativeMultiplicity { label: l.to_string(), mult: m });
        }
        for l in v.keys() {
            group.validate(l)?;
        }
    }
    let mut total = 0u64;
    for (rho, m1) in v1.iter() {
        total += (m1 * v2.get(rho)) as u64;
    }
    Ok(total)
}

/// `<mu + 2 rho_c, mu + 2 rho_c>` for the catalog form.
pub fn vogan_norm(datum: &GroupDatum, tau: &Label) -> Result<Rational> {
    datum.k.validate(tau)?;
    Ok(norm_unchecked(datum, tau))
}

pub(crate) fn norm_unchecked(datum: &GroupDatum, tau: &Label) -> Rational {
    Rational::new(norm_scaled(datum, tau).into(), datum.gram.denom().into())
}

/// Vogan norm times the Gram denominator.
pub(crate) fn norm_scaled(datum: &GroupDatum, tau: &Label) -> i128 {
    let shifted: Vec<i64> = datum
        .k
        .highest_weight(tau)
        .iter()
        .zip(&datum.two_rho_c)
        .map(|(m, r)| m + r)
        .collect();
    datum.gram.pair_scaled(&shifted, &shifted)
}

/// K-types with Vogan norm at most `bound`, with their norms, sorted by
/// `(norm, label)`.
pub fn enumerate_ktypes_with_norms(datum: &GroupDatum, bound: &Rational) -> Result<Vec<(Label, Rational)>> {
    if *bound < int(0) {
        return Ok(Vec::new());
    }
    let inv_diag = datum.gram.inverse_diagonal();
    let mut ranges = Vec::with_capacity(datum.k.atoms.len());
    let mut coord = 0usize;
    let mut count: u128 = 1;
    for a in &datum.k.atoms {
        if !a.has_coordinate() {
            ranges.push((0, 1));
            count *= 2;
            continue;
        }
        let radius = isqrt_floor(&(bound * &inv_diag[coord])).unwrap_or_default();
        let radius: i64 = radius
            .try_into()
            .ok()
            .filter(|r| *r <= MAX_LABEL_COORD)
            .ok_or_else(|| Error::WindowTooLarge(format!("bound {bound} exceeds the label range")))?;
        let shift = datum.two_rho_c[coord];
        ranges.push((-radius - shift, radius - shift));
        count = count.saturating_mul((2 * radius + 1) as u128);
        coord += 1;
    }
    if count > MAX_WINDOW_CANDIDATES {
        return Err(Error::WindowTooLarge(format!("bound {bound} needs {count} candidates")));
    }
    let limit = datum
        .gram
        .scale_bound(bound)
        .ok_or_else(|| Error::WindowTooLarge(format!("bound {bound} is out of range")))?;
    let mut out: Vec<(Label, i128)> = datum
        .k
        .labels_in_box(&ranges)
        .into_iter()
        .map(|l| {
            let n = norm_scaled(datum, &l);
            (l, n)
        })
        .filter(|(_, n)| *n <= limit)
        .collect();
    out.sort_by(|(l1, n1), (l2, n2)| n1.cmp(n2).then_with(|| l1.cmp(l2)));
    let denom = datum.gram.denom();
    Ok(out.into_iter().map(|(l, n)| (l, Rational::new(n.into(), denom.into()))).collect())
}

pub fn enumerate_ktypes(datum: &GroupDatum, bound: &Rational) -> Result<Vec<Label>> {
    Ok(enumerate_ktypes_with_norms(datum, bound)?.into_iter().map(|(l, _)| l).collect())
}
