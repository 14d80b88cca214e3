//! Catalog of rank-one groups and the JSON group-definition format.
//!
//! A [`GroupDatum`] carries the structure data every computation needs:
//! the compact groups `K` and `M`, the branching template between them, the
//! form used for Vogan norms, `2 rho_c`, the action of the nontrivial
//! restricted Weyl element on `M^`, and (in equal rank) the root data for
//! the discrete series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::branching::BranchingRule;
use crate::error::{validation, Error, Result};
use crate::rational::{format_rational, parse_rational, Gram, Rational};
use crate::weights::{Atom, CompactGroup, Label};

pub const BUILTIN_NAMES: [&str; 3] = ["SL2R", "SO31", "Sp11"];

const MAX_ATOMS: usize = 8;
const MAX_COORD: i64 = 1000;
const MAX_ROOTS: usize = 64;
const MAX_WK: usize = 384;
const MAX_TABLE: usize = 64;

/// Action of the nontrivial restricted Weyl element on `M^`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylAction {
    Identity,
    /// Negates every `Torus1` coordinate.
    NegateTorus,
    /// Explicit permutation; labels not listed are fixed.
    Table(BTreeMap<Label, Label>),
}

impl WeylAction {
    pub fn apply(&self, m: &CompactGroup, sigma: &Label) -> Label {
        match self {
            WeylAction::Identity => sigma.clone(),
            WeylAction::NegateTorus => Label(
                m.atoms()
                    .iter()
                    .zip(sigma.coords())
                    .map(|(a, x)| if *a == Atom::Torus1 { -x } else { *x })
                    .collect(),
            ),
            WeylAction::Table(t) => t.get(sigma).cloned().unwrap_or_else(|| sigma.clone()),
        }
    }
}

/// Signed permutation matrix acting on the weight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    rows: Vec<Vec<i64>>,
    det: i64,
}

impl SignedPerm {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> std::result::Result<Self, String> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err("matrix is not square".into());
        }
        let mut image = vec![usize::MAX; n];
        let mut sign = 1i64;
        for (i, r) in rows.iter().enumerate() {
            let nz: Vec<usize> = (0..n).filter(|&j| r[j] != 0).collect();
            match nz.as_slice() {
                [j] if r[*j].abs() == 1 => {
                    image[i] = *j;
                    sign *= r[*j];
                }
                _ => return Err(format!("row {i} is not a signed unit vector")),
            }
        }
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        if distinct.len() != n {
            return Err("not a permutation".into());
        }
        // parity of the underlying permutation
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = image[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        Ok(SignedPerm { rows, det: sign })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        SignedPerm { rows, det: 1 }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn compose(&self, other: &SignedPerm) -> Vec<Vec<i64>> {
        let n = self.rows.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum()).collect())
            .collect()
    }
}

/// Root data for the discrete series of an equal-rank group. Harish-Chandra
/// parameters range over the integer lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSeriesDatum {
    pub lattice_dim: usize,
    pub compact_roots: Vec<Vec<i64>>,
    pub noncompact_roots: Vec<Vec<i64>>,
    pub wk: Vec<SignedPerm>,
}

/// Positive system determined by a regular parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub positive_compact: Vec<Vec<i64>>,
    pub positive_noncompact: Vec<Vec<i64>>,
    pub two_rho_c: Vec<i64>,
    pub two_rho_n: Vec<i64>,
}

impl Chamber {
    pub fn two_rho(&self) -> Vec<i64> {
        add(&self.two_rho_c, &self.two_rho_n)
    }

    /// `lambda + rho_n - rho_c`, or `None` when it is not integral.
    pub fn blattner_parameter(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        lambda
            .iter()
            .zip(self.two_rho_n.iter().zip(&self.two_rho_c))
            .map(|(l, (n, c))| {
                let d = n - c;
                (d % 2 == 0).then_some(l + d / 2)
            })
            .collect()
    }
}

pub(crate) fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sum_roots(dim: usize, roots: &[Vec<i64>]) -> Vec<i64> {
    roots.iter().fold(vec![0; dim], |acc, r| add(&acc, r))
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
}

impl DiscreteSeriesDatum {
    /// Compact roots whose first nonzero coordinate is positive.
    pub fn positive_compact_roots(&self) -> Vec<Vec<i64>> {
        self.compact_roots.iter().filter(|r| lex_positive(r)).cloned().collect()
    }

    pub fn is_regular(&self, gram: &Gram, lambda: &[i64]) -> bool {
        self.compact_roots
            .iter()
            .chain(&self.noncompact_roots)
            .all(|r| gram.pair_scaled(lambda, r) != 0)
    }

    /// Regular and strictly dominant for the positive compact roots: one
    /// representative of each `W_K`-orbit of regular parameters.
    pub fn is_orbit_representative(&self, gram: &Gram, lambda: &[i64]) -> bool {
        self.is_regular(gram, lambda)
            && self.positive_compact_roots().iter().all(|r| gram.pair_scaled(lambda, r) > 0)
    }

    pub fn chamber(&self, gram: &Gram, lambda: &[i64]) -> Option<Chamber> {
        if !self.is_regular(gram, lambda) {
            return None;
        }
        let positive = |roots: &[Vec<i64>]| -> Vec<Vec<i64>> {
            roots.iter().filter(|r| gram.pair_scaled(lambda, r) > 0).cloned().collect()
        };
        let positive_compact = positive(&self.compact_roots);
        let positive_noncompact = positive(&self.noncompact_roots);
        Some(Chamber {
            two_rho_c: sum_roots(self.lattice_dim, &positive_compact),
            two_rho_n: sum_roots(self.lattice_dim, &positive_noncompact),
            positive_compact,
            positive_noncompact,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDatum {
    pub name: String,
    pub k: CompactGroup,
    pub m: CompactGroup,
    pub branching: BranchingRule,
    pub gram: Gram,
    pub two_rho_c: Vec<i64>,
    pub weyl_on_mhat: WeylAction,
    pub equal_rank: bool,
    pub ds: Option<DiscreteSeriesDatum>,
    /// Dimension of `A` for the minimal parabolic block.
    pub a_dim: u32,
}

impl fmt::Display for GroupDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (K = {}, M = {})", self.name, self.k, self.m)
    }
}

fn flips(n: usize) -> Vec<Vec<Vec<i64>>> {
    (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .map(|i| (0..n).map(|j| if i != j { 0 } else if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
                .collect()
        })
        .collect()
}

pub fn builtin(name: &str) -> Result<GroupDatum> {
    let doc = match name {
        "SL2R" => GroupDocument {
            name: "SL2R".into(),
            k_atoms: vec![Atom::Torus1],
            m_atoms: vec![Atom::Cyclic2],
            branching_rule: "parity".into(),
            gram: vec![vec!["1".into()]],
            two_rho_c: vec![0],
            weyl_on_mhat: WeylDoc::Rule("identity".into()),
            equal_rank: true,
            ds: Some(DsDocument {
                compact_roots: vec![],
                noncompact_roots: vec![vec![2], vec![-2]],
                wk_elements: vec![vec![vec![1]]],
            }),
        },
        "SO31" => GroupDocument {
            name: "SO31".into(),
            k_atoms: vec![Atom::SO3],
            m_atoms: vec![Atom::Torus1],
            branching_rule: "torus-restriction".into(),
            gram: vec![vec!["1".into()]],
            two_rho_c: vec![1],
            weyl_on_mhat: WeylDoc::Rule("negate-torus".into()),
            equal_rank: false,
            ds: None,
        },
        "Sp11" => GroupDocument {
            name: "Sp11".into(),
            k_atoms: vec![Atom::SU2, Atom::SU2],
            m_atoms: vec![Atom::SU2],
            branching_rule: "clebsch-diagonal".into(),
            gram: vec![vec!["1".into(), "0".into()], vec!["0".into(), "1".into()]],
            two_rho_c: vec![2, 2],
            weyl_on_mhat: WeylDoc::Rule("identity".into()),
            equal_rank: true,
            ds: Some(DsDocument {
                compact_roots: vec![vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]],
                noncompact_roots: vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]],
                wk_elements: flips(2),
            }),
        },
        other => return Err(Error::UnknownGroup(other.to_string())),
    };
    doc.into_datum()
}

/// Serialized form of a [`GroupDatum`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub name: String,
    pub k_atoms: Vec<Atom>,
    pub m_atoms: Vec<Atom>,
    pub branching_rule: String,
    /// Row-major rows of `"p/q"` strings.
    pub gram: Vec<Vec<String>>,
    pub two_rho_c: Vec<i64>,
    pub weyl_on_mhat: WeylDoc,
    pub equal_rank: bool,
    #[serde(default)]
    pub ds: Option<DsDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeylDoc {
    /// `"identity"` or `"negate-torus"`.
    Rule(String),
    /// `{"table": [[from, to], ...]}` with labels as integer arrays.
    Table { table: Vec<(Vec<i64>, Vec<i64>)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DsDocument {
    pub compact_roots: Vec<Vec<i64>>,
    pub noncompact_roots: Vec<Vec<i64>>,
    pub wk_elements: Vec<Vec<Vec<i64>>>,
}

fn check_vec(field: &str, v: &[i64], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(validation(field, format!("expected length {dim}, got {}", v.len())));
    }
    if let Some(x) = v.iter().find(|x| x.abs() > MAX_COORD) {
        return Err(validation(field, format!("coordinate {x} exceeds {MAX_COORD}")));
    }
    Ok(())
}

fn check_roots(field: &str, roots: &[Vec<i64>], dim: usize) -> Result<BTreeSet<Vec<i64>>> {
    if roots.len() > MAX_ROOTS {
        return Err(validation(field, format!("more than {MAX_ROOTS} roots")));
    }
    let mut set = BTreeSet::new();
    for r in roots {
        check_vec(field, r, dim)?;
        if r.iter().all(|x| *x == 0) {
            return Err(validation(field, "zero root"));
        }
        if !set.insert(r.clone()) {
            return Err(validation(field, format!("duplicate root {r:?}")));
        }
    }
    for r in roots {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        if !set.contains(&neg) {
            return Err(validation(field, format!("root list not closed under negation: {r:?}")));
        }
    }
    Ok(set)
}

impl GroupDocument {
    pub fn into_datum(self) -> Result<GroupDatum> {
        if self.name.trim().is_empty() || self.name.len() > 64 {
            return Err(validation("name", "must be 1 to 64 characters"));
        }
        if self.k_atoms.len() > MAX_ATOMS || self.m_atoms.len() > MAX_ATOMS {
            return Err(validation("k_atoms", format!("at most {MAX_ATOMS} atoms")));
        }
        let k = CompactGroup::new(self.k_atoms).map_err(|_| validation("k_atoms", "atom list is empty"))?;
        let m = CompactGroup::new(self.m_atoms).map_err(|_| validation("m_atoms", "atom list is empty"))?;
        let branching: BranchingRule = self.branching_rule.parse()?;
        if !branching.applies_to(&k, &m) {
            return Err(validation(
                "branching_rule",
                format!("rule {branching} does not apply to K = {k}, M = {m}"),
            ));
        }
        let dim = k.lattice_dim();
        if self.gram.len() != dim {
            return Err(validation("gram", format!("expected {dim} rows, got {}", self.gram.len())));
        }
        let rows = self
            .gram
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| validation("gram", e.to_string()))?;
        let gram = Gram::new(rows)?;
        check_vec("two_rho_c", &self.two_rho_c, dim)?;
        let weyl_on_mhat = match self.weyl_on_mhat {
            WeylDoc::Rule(r) => match r.as_str() {
                "identity" => WeylAction::Identity,
                "negate-torus" => WeylAction::NegateTorus,
                other => {
                    return Err(validation(
                        "weyl_on_mhat",
                        format!("unknown rule `{other}` (expected identity or negate-torus)"),
                    ))
                }
            },
            WeylDoc::Table { table } => {
                if table.len() > MAX_TABLE {
                    return Err(validation("weyl_on_mhat", format!("more than {MAX_TABLE} entries")));
                }
                let mut map = BTreeMap::new();
                for (from, to) in table {
                    let (from, to) = (Label(from), Label(to));
                    for l in [&from, &to] {
                        m.validate(l).map_err(|e| validation("weyl_on_mhat", e.to_string()))?;
                    }
                    if map.insert(from.clone(), to).is_some() {
                        return Err(validation("weyl_on_mhat", format!("label {from} listed twice")));
                    }
                }
                let action = WeylAction::Table(map.clone());
                for l in map.keys().chain(map.values()) {
                    let back = action.apply(&m, &action.apply(&m, l));
                    if &back != l {
                        return Err(validation(
                            "weyl_on_mhat",
                            format!("not an involution: {l} maps back to {back}"),
                        ));
                    }
                }
                action
            }
        };
        let ds = match (self.equal_rank, self.ds) {
            (true, Some(d)) => Some(d.into_datum(&k)?),
            (false, None) => None,
            (true, None) => return Err(validation("ds", "equal_rank is true but ds is missing")),
            (false, Some(_)) => return Err(validation("ds", "ds present but equal_rank is false")),
        };
        Ok(GroupDatum {
            name: self.name,
            k,
            m,
            branching,
            gram,
            two_rho_c: self.two_rho_c,
            weyl_on_mhat,
            equal_rank: self.equal_rank,
            ds,
            a_dim: 1,
        })
    }
}

impl DsDocument {
    fn into_datum(self, k: &CompactGroup) -> Result<DiscreteSeriesDatum> {
        if k.atoms().contains(&Atom::Cyclic2) {
            return Err(validation("ds", "discrete series data requires K without Cyclic2 atoms"));
        }
        let dim = k.lattice_dim();
        let compact = check_roots("ds.compact_roots", &self.compact_roots, dim)?;
        let noncompact = check_roots("ds.noncompact_roots", &self.noncompact_roots, dim)?;
        if noncompact.is_empty() {
            return Err(validation("ds.noncompact_roots", "no noncompact roots"));
        }
        if let Some(r) = compact.intersection(&noncompact).next() {
            return Err(validation("ds", format!("root {r:?} is both compact and noncompact")));
        }
        if self.wk_elements.is_empty() || self.wk_elements.len() > MAX_WK {
            return Err(validation("ds.wk_elements", format!("expected 1 to {MAX_WK} elements")));
        }
        let mut wk = Vec::with_capacity(self.wk_elements.len());
        for (i, rows) in self.wk_elements.into_iter().enumerate() {
            if rows.len() != dim {
                return Err(validation("ds.wk_elements", format!("element {i} is not {dim}x{dim}")));
            }
            let w = SignedPerm::from_rows(rows).map_err(|e| validation("ds.wk_elements", format!("element {i}: {e}")))?;
            for (set, field) in [(&compact, "compact"), (&noncompact, "noncompact")] {
                if set.iter().any(|r| !set.contains(&w.apply(r))) {
                    return Err(validation(
                        "ds.wk_elements",
                        format!("element {i} does not permute the {field} roots"),
                    ));
                }
            }
            wk.push(w);
        }
        let elements: BTreeSet<&Vec<Vec<i64>>> = wk.iter().map(|w| &w.rows).collect();
        if elements.len() != wk.len() {
            return Err(validation("ds.wk_elements", "duplicate elements"));
        }
        if !elements.contains(&SignedPerm::identity(dim).rows) {
            return Err(validation("ds.wk_elements", "identity missing"));
        }
        for a in &wk {
            for b in &wk {
                if !elements.contains(&a.compose(b)) {
                    return Err(validation("ds.wk_elements", "not closed under composition"));
                }
            }
        }
        Ok(DiscreteSeriesDatum {
            lattice_dim: dim,
            compact_roots: self.compact_roots,
            noncompact_roots: self.noncompact_roots,
            wk,
        })
    }
}

impl GroupDatum {
    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            name: self.name.clone(),
            k_atoms: self.k.atoms().to_vec(),
            m_atoms: self.m.atoms().to_vec(),
            branching_rule: self.branching.id().to_string(),
            gram: self.gram.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            two_rho_c: self.two_rho_c.clone(),
            weyl_on_mhat: match &self.weyl_on_mhat {
                WeylAction::Identity => WeylDoc::Rule("identity".into()),
                WeylAction::NegateTorus => WeylDoc::Rule("negate-torus".into()),
                WeylAction::Table(t) => WeylDoc::Table {
                    table: t.iter().map(|(a, b)| (a.0.clone(), b.0.clone())).collect(),
                },
            },
            equal_rank: self.equal_rank,
            ds: self.ds.as_ref().map(|d| DsDocument {
                compact_roots: d.compact_roots.clone(),
                noncompact_roots: d.noncompact_roots.clone(),
                wk_elements: d.wk.iter().map(|w| w.rows.clone()).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("group documents always serialize")
    }

    pub fn weyl(&self, sigma: &Label) -> Label {
        self.weyl_on_mhat.apply(&self.m, sigma)
    }
}

pub fn load_str(text: &str) -> Result<GroupDatum> {
    let doc: GroupDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_datum()
}

pub fn load_path(path: impl AsRef<Path>) -> Result<GroupDatum> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    load_str(&text)
}
