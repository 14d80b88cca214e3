//! Multiplicity matrices `mult(tau; pi)` on finite windows, the composite
//! map `R(K) -> R(G)_tempiric`, and the verification suite.
//!
//! Rows are K-types ordered by Vogan norm, columns tempiric representations
//! ordered by the position of their minimal K-type. With this ordering the
//! minimal-K-type bijection makes the matrix square with unit diagonal, and
//! triangularity follows from every column vanishing above its minimum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branching::{mult_space_dim, restrict_sum, support_sigmas};
use crate::catalog::GroupDatum;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::tempered::{
    blattner_mult, constituents, ds_enumerate, induced_ktype_mult, minimal_ktypes, principal_classes, PrincipalClass,
    TempiricRep,
};
use crate::weights::{enumerate_ktypes_with_norms, hom_invariant_dim, vogan_norm, Atom, FormalSum, Label};

/// Seed used by the randomized checks unless another is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub const K1_NOTE: &str = "K_1 vanishes (analytic result; reported, not computed)";

/// Finite window: K-types of norm at most `bound` and the tempiric
/// representations whose minimal K-type lies among them.
#[derive(Debug, Clone)]
pub struct Window {
    pub bound: Rational,
    pub ktypes: Vec<Label>,
    pub norms: Vec<Rational>,
    pub reps: Vec<TempiricRep>,
    index: BTreeMap<Label, usize>,
}

impl Window {
    pub fn new(datum: &GroupDatum, bound: &Rational) -> Result<Self> {
        let (ktypes, norms): (Vec<Label>, Vec<Rational>) = enumerate_ktypes_with_norms(datum, bound)?.into_iter().unzip();
        let index: BTreeMap<Label, usize> = ktypes.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut reps = if datum.equal_rank { ds_enumerate(datum, bound)? } else { Vec::new() };
        for class in principal_classes(datum, &ktypes)? {
            for rep in constituents(datum, &class)? {
                if index.contains_key(rep.minimal_ktype()) {
                    reps.push(rep);
                }
            }
        }
        reps.sort_by_key(|r| index.get(r.minimal_ktype()).copied());
        Ok(Window { bound: bound.clone(), ktypes, norms, reps, index })
    }

    pub fn position(&self, tau: &Label) -> Option<usize> {
        self.index.get(tau).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Exact,
    /// Entries are the multiplicities of the whole induced representation,
    /// except at the two minimal K-types of the split pair.
    AggregateOnly,
}

impl Resolution {
    pub fn id(self) -> &'static str {
        match self {
            Resolution::Exact => "exact",
            Resolution::AggregateOnly => "aggregate-only",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultMatrix {
    pub rows: Vec<Label>,
    pub row_norms: Vec<Rational>,
    pub cols: Vec<TempiricRep>,
    pub resolution: Vec<Resolution>,
    entries: BTreeMap<(usize, usize), i64>,
}

impl MultMatrix {
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|((i, j), v)| (*i, *j, *v))
    }

    pub fn row_of(&self, tau: &Label) -> Option<usize> {
        self.rows.iter().position(|r| r == tau)
    }

    pub fn aggregate_columns(&self) -> Vec<usize> {
        (0..self.cols.len()).filter(|&j| self.resolution[j] == Resolution::AggregateOnly).collect()
    }
}

/// Split pairs are resolved when `K` is a circle: the two constituents then
/// carry the positive and the negative K-types of the induced
/// representation.
fn resolves_split_pairs(datum: &GroupDatum) -> bool {
    datum.k.atoms() == [Atom::Torus1]
}

fn column(datum: &GroupDatum, rep: &TempiricRep, rows: &[Label]) -> Result<(Vec<i64>, Resolution)> {
    match rep {
        TempiricRep::DiscreteSeries { .. } => {
            let col = rows.iter().map(|t| blattner_mult(datum, rep, t).map(|m| m as i64)).collect::<Result<_>>()?;
            Ok((col, Resolution::Exact))
        }
        TempiricRep::PrincipalConstituent { class, minimal_ktype, split } => {
            let mut col: Vec<i64> = rows
                .iter()
                .map(|t| induced_ktype_mult(datum, class, t).map(|m| m as i64))
                .collect::<Result<_>>()?;
            if !split {
                return Ok((col, Resolution::Exact));
            }
            if resolves_split_pairs(datum) {
                let sign = minimal_ktype.coords()[0].signum();
                for (v, t) in col.iter_mut().zip(rows) {
                    if t.coords()[0].signum() != sign {
                        *v = 0;
                    }
                }
                return Ok((col, Resolution::Exact));
            }
            for partner in minimal_ktypes(datum, class)? {
                if let Some(i) = rows.iter().position(|r| *r == partner) {
                    col[i] = i64::from(partner == *minimal_ktype);
                }
            }
            Ok((col, Resolution::AggregateOnly))
        }
    }
}

fn build_matrix(datum: &GroupDatum, window: &Window) -> Result<MultMatrix> {
    let mut entries = BTreeMap::new();
    let mut resolution = Vec::with_capacity(window.reps.len());
    for (j, rep) in window.reps.iter().enumerate() {
        let (col, res) = column(datum, rep, &window.ktypes)?;
        for (i, v) in col.into_iter().enumerate() {
            if v != 0 {
                entries.insert((i, j), v);
            }
        }
        resolution.push(res);
    }
    Ok(MultMatrix {
        rows: window.ktypes.clone(),
        row_norms: window.norms.clone(),
        cols: window.reps.clone(),
        resolution,
        entries,
    })
}

pub fn mult_matrix(datum: &GroupDatum, bound: &Rational) -> Result<MultMatrix> {
    build_matrix(datum, &Window::new(datum, bound)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub detail: String,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, counterexample: None, detail: detail.into() }
    }

    pub fn fail(name: &str, counterexample: impl Into<String>) -> Self {
        let c: String = counterexample.into();
        let c = if c.is_empty() { "(unspecified)".to_string() } else { c };
        Check { name: name.into(), passed: false, counterexample: Some(c), detail: String::new() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn single(check: Check) -> Self {
        VerificationReport { checks: vec![check] }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}: {}", c.name, c.detail)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.counterexample.as_deref().unwrap_or(""))?;
            }
        }
        Ok(())
    }
}

/// Runs `body`; mathematical errors become a failed check, resource and
/// usage errors propagate.
fn guarded(name: &str, body: impl FnOnce() -> Result<Check>) -> Result<Check> {
    match body() {
        Ok(c) => Ok(c),
        Err(e @ (Error::WindowTooLarge(_) | Error::UnknownGroup(_) | Error::Parse(_))) => Err(e),
        Err(e) => Ok(Check::fail(name, e.to_string())),
    }
}

pub fn vogan_bijection_check(datum: &GroupDatum, bound: &Rational) -> Result<VerificationReport> {
    let name = "vogan_bijection";
    let check = guarded(name, || {
        let window = Window::new(datum, bound)?;
        let matrix = build_matrix(datum, &window)?;
        let mut owner: BTreeMap<&Label, &TempiricRep> = BTreeMap::new();
        for (j, rep) in window.reps.iter().enumerate() {
            let min = rep.minimal_ktype();
            let Some(i) = window.position(min) else {
                return Ok(Check::fail(name, format!("{rep}: minimal K-type {min} outside window")));
            };
            if rep.is_discrete() {
                // lowest K-type recomputed by sweeping the Blattner column
                let lowest: Vec<&Label> = (0..window.ktypes.len())
                    .filter(|&r| window.norms[r] <= window.norms[i] && matrix.entry(r, j) != 0)
                    .map(|r| &window.ktypes[r])
                    .collect();
                if lowest != [min] {
                    return Ok(Check::fail(
                        name,
                        format!("{rep}: K-types of norm <= {} are {lowest:?}, expected only {min}", window.norms[i]),
                    ));
                }
            }
            let m = matrix.entry(i, j);
            if m != 1 {
                return Ok(Check::fail(name, format!("{rep}: multiplicity {m} at minimal K-type {min}")));
            }
            if let Some(prev) = owner.insert(min, rep) {
                return Ok(Check::fail(name, format!("{min} is minimal for both {prev} and {rep}")));
            }
        }
        if let Some(tau) = window.ktypes.iter().find(|t| !owner.contains_key(t)) {
            return Ok(Check::fail(name, format!("K-type {tau} is not minimal for any tempiric representation")));
        }
        Ok(Check::pass(name, format!("{} K-types <-> {} tempiric representations", window.ktypes.len(), window.reps.len())))
    })?;
    Ok(VerificationReport::single(check))
}

/// Column-wise: 1 at the minimal K-type, 0 at every K-type of strictly
/// smaller norm. Aggregate entries count against split columns.
pub fn triangularity_in(matrix: &MultMatrix) -> Check {
    let name = "triangularity";
    for (j, rep) in matrix.cols.iter().enumerate() {
        let Some(i) = matrix.row_of(rep.minimal_ktype()) else {
            return Check::fail(name, format!("{rep}: minimal K-type outside window"));
        };
        if matrix.entry(i, j) != 1 {
            return Check::fail(name, format!("{rep}: diagonal entry {}", matrix.entry(i, j)));
        }
        for r in 0..matrix.rows.len() {
            if matrix.row_norms[r] < matrix.row_norms[i] && matrix.entry(r, j) != 0 {
                return Check::fail(
                    name,
                    format!("{rep}: entry {} at {} below the minimal K-type {}", matrix.entry(r, j), matrix.rows[r], rep.minimal_ktype()),
                );
            }
        }
    }
    Check::pass(name, format!("{}x{} unit lower-triangular in norm order", matrix.rows.len(), matrix.cols.len()))
}

pub fn triangularity_check(datum: &GroupDatum, bound: &Rational) -> Result<VerificationReport> {
    let check = guarded("triangularity", || Ok(triangularity_in(&mult_matrix(datum, bound)?)))?;
    Ok(VerificationReport::single(check))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeImage {
    pub terms: FormalSum<TempiricRep>,
    /// Columns among `terms` whose coefficient is an aggregate over a split
    /// pair rather than an exact multiplicity.
    pub aggregate: Vec<TempiricRep>,
}

/// `sum over pi of mult(tau, pi) [pi]`. Every `pi` with `mult(tau, pi) != 0`
/// has minimal K-type of norm at most that of `tau`, so the window must
/// contain `tau`.
pub fn composite_map(datum: &GroupDatum, tau: &Label, bound: &Rational) -> Result<CompositeImage> {
    let n = vogan_norm(datum, tau)?;
    if n > *bound {
        return Err(Error::WindowTooSmall(format!("K-type {tau} has norm {n} > bound {bound}")));
    }
    let matrix = mult_matrix(datum, bound)?;
    let i = matrix
        .row_of(tau)
        .ok_or_else(|| Error::Internal(format!("{tau} missing from its own window")))?;
    let mut terms = FormalSum::new();
    let mut aggregate = Vec::new();
    for j in 0..matrix.cols.len() {
        let v = matrix.entry(i, j);
        if v == 0 {
            continue;
        }
        let rep = &matrix.cols[j];
        let min_norm = vogan_norm(datum, rep.minimal_ktype())?;
        if min_norm > n {
            return Err(Error::Internal(format!("{rep} contains {tau} below its minimal K-type")));
        }
        if matrix.resolution[j] == Resolution::AggregateOnly {
            aggregate.push(rep.clone());
        }
        terms.add_term(rep.clone(), v);
    }
    Ok(CompositeImage { terms, aggregate })
}

/// Dense integer matrix; `entries[i][k]` pairs the `i`-th column of the
/// inverted matrix (tempiric) with its `k`-th row (K-type).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        IntMatrix { entries: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.entries.len();
        let m = other.entries.first().map_or(0, |r| r.len());
        let mut out = vec![vec![0i64; m]; n];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                for (j, b) in other.entries[k].iter().enumerate() {
                    out[i][j] = a
                        .checked_mul(*b)
                        .and_then(|p| out[i][j].checked_add(p))
                        .ok_or_else(|| Error::Internal("integer overflow in matrix product".into()))?;
                }
            }
        }
        Ok(IntMatrix { entries: out })
    }
}

fn square(matrix: &MultMatrix) -> Result<IntMatrix> {
    let n = matrix.rows.len();
    if matrix.cols.len() != n {
        return Err(Error::Internal(format!("window is {}x{}, not square", n, matrix.cols.len())));
    }
    for (j, rep) in matrix.cols.iter().enumerate() {
        if matrix.row_of(rep.minimal_ktype()) != Some(j) {
            return Err(Error::Internal(format!("column {rep} is not aligned with its minimal K-type")));
        }
    }
    Ok(IntMatrix { entries: (0..n).map(|i| (0..n).map(|j| matrix.entry(i, j)).collect()).collect() })
}

fn unit_lower_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let n = a.entries.len();
    let lower = (0..n).all(|i| a.entries[i][i] == 1 && (i + 1..n).all(|j| a.entries[i][j] == 0));
    if !lower {
        return None;
    }
    let mut b = IntMatrix::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut s: i64 = 0;
            for k in j..i {
                s = s.checked_add(a.entries[i][k].checked_mul(b.entries[k][j])?)?;
            }
            b.entries[i][j] = s.checked_neg()?;
        }
    }
    Some(b)
}

fn rational_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.entries.len();
    let mut m: Vec<Vec<Rational>> = a
        .entries
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|x| int(*x))
                .chain((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Internal("window matrix is singular".into()))?;
        m.swap(p, col);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
    }
    let entries = m
        .into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    if !x.is_integer() {
                        return Err(Error::Internal(format!("inverse has non-integral entry {x}")));
                    }
                    i64::try_from(x.to_integer()).map_err(|_| Error::Internal("inverse entry overflows i64".into()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix { entries })
}

/// Two-sided integer inverse of the window matrix. Refuses when any column
/// is aggregate-only.
pub fn invert_window(matrix: &MultMatrix) -> Result<IntMatrix> {
    let refused: Vec<String> = matrix.aggregate_columns().iter().map(|&j| matrix.cols[j].to_string()).collect();
    if !refused.is_empty() {
        return Err(Error::InversionRefused { columns: refused });
    }
    let a = square(matrix)?;
    let b = match unit_lower_inverse(&a) {
        Some(b) => b,
        None => rational_inverse(&a)?,
    };
    let id = IntMatrix::identity(a.entries.len());
    if a.mul(&b)? != id || b.mul(&a)? != id {
        return Err(Error::Internal("computed inverse fails the identity check".into()));
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionIdentity {
    pub lhs: u64,
    pub rhs: u64,
}

impl DimensionIdentity {
    pub fn report(&self) -> VerificationReport {
        let name = "dimension_identity";
        VerificationReport::single(if self.lhs == self.rhs {
            Check::pass(name, format!("lhs = rhs = {}", self.lhs))
        } else {
            Check::fail(name, format!("lhs {} != rhs {}", self.lhs, self.rhs))
        })
    }
}

/// `dim Hom(V1, V2)^M` against `sum over sigma of dim[L_sigma (x) V1]^M *
/// dim[L_sigma (x) V2]^M`.
pub fn dimension_identity_check(
    datum: &GroupDatum,
    v1: &FormalSum<Label>,
    v2: &FormalSum<Label>,
) -> Result<DimensionIdentity> {
    let lhs = hom_invariant_dim(&datum.m, &restrict_sum(datum, v1)?, &restrict_sum(datum, v2)?)?;
    let sigmas = support_sigmas(datum, v1)?;
    let mut rhs = 0;
    for sigma in &sigmas {
        rhs += mult_space_dim(datum, sigma, v1)? * mult_space_dim(datum, sigma, v2)?;
    }
    Ok(DimensionIdentity { lhs, rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCase {
    /// `P = G`: the boundary is empty.
    GBlock,
    /// Single-element class: a two-point boundary on which `W_sigma` acts
    /// freely.
    FreeTwoPoint,
    /// Two inequivalent `sigma` in the class, `W_sigma` trivial.
    TwoInequivalent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Principal(PrincipalClass),
    Discrete(TempiricRep),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Principal(c) => write!(f, "[P,{c}]"),
            Block::Discrete(r) => write!(f, "[G,{r}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryBlock {
    pub block: Block,
    pub case: BoundaryCase,
    pub dim: u64,
}

fn all_finite_mtypes(datum: &GroupDatum) -> Vec<Label> {
    let ranges = vec![(0, 1); datum.m.atoms().len()];
    datum.m.labels_in_box(&ranges)
}

/// Boundary morphism-space dimensions per tempered block. Principal blocks
/// are the classes meeting `V1` or `V2` (all of `M^` when it is finite);
/// discrete series blocks are those whose lowest K-type is no larger than
/// the largest K-type of `V1` and `V2`.
pub fn boundary_block_dims(
    datum: &GroupDatum,
    v1: &FormalSum<Label>,
    v2: &FormalSum<Label>,
) -> Result<Vec<BoundaryBlock>> {
    let mut sigmas: BTreeSet<Label> = support_sigmas(datum, v1)?;
    sigmas.extend(support_sigmas(datum, v2)?);
    if datum.m.is_finite() {
        sigmas.extend(all_finite_mtypes(datum));
    }
    let classes: BTreeSet<PrincipalClass> = sigmas.iter().map(|s| PrincipalClass::of(datum, s)).collect();
    let d = |sigma: &Label| -> Result<u64> { Ok(mult_space_dim(datum, sigma, v1)? * mult_space_dim(datum, sigma, v2)?) };
    let mut out = Vec::new();
    for class in classes {
        let (case, dim) = match class.orbit.as_slice() {
            [s] => (BoundaryCase::FreeTwoPoint, d(s)?),
            [s, t] => (BoundaryCase::TwoInequivalent, d(s)? + d(t)?),
            _ => return Err(Error::Internal(format!("class {class} has {} elements", class.orbit.len()))),
        };
        out.push(BoundaryBlock { block: Block::Principal(class), case, dim });
    }
    if datum.equal_rank {
        let mut top = int(-1);
        for tau in v1.keys().chain(v2.keys()) {
            top = top.max(vogan_norm(datum, tau)?);
        }
        for rep in ds_enumerate(datum, &top)? {
            out.push(BoundaryBlock { block: Block::Discrete(rep), case: BoundaryCase::GBlock, dim: 0 });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub support: BTreeSet<Label>,
    pub report: VerificationReport,
}

/// Support of `V` in `M^`, confirmed by sweeping every M-type in a box
/// that contains all possible restrictions of `V`.
pub fn admissibility_check(datum: &GroupDatum, v: &FormalSum<Label>) -> Result<Admissibility> {
    let name = "admissibility";
    let support = support_sigmas(datum, v)?;
    let reach = v
        .keys()
        .map(|t| t.coords().iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(0);
    let ceiling = 2 * reach + 4;
    let ranges = vec![(-ceiling, ceiling); datum.m.atoms().len()];
    let mut swept = BTreeSet::new();
    for sigma in datum.m.labels_in_box(&ranges) {
        if mult_space_dim(datum, &sigma, v)? > 0 {
            swept.insert(sigma);
        }
    }
    let check = if swept == support {
        Check::pass(name, format!("support of size {} confirmed up to |label| <= {ceiling}", support.len()))
    } else {
        let extra: Vec<String> = swept.symmetric_difference(&support).map(|l| l.to_string()).collect();
        Check::fail(name, format!("sweep and support disagree at {}", extra.join(", ")))
    };
    Ok(Admissibility { support, report: VerificationReport::single(check) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixStatus {
    Invertible(IntMatrix),
    Refused(Vec<String>),
    NotTriangular(String),
}

#[derive(Debug, Clone)]
pub struct KTheorySummary {
    pub generators: Vec<TempiricRep>,
    pub status: MatrixStatus,
    pub k1_note: &'static str,
}

pub fn ktheory_summary(datum: &GroupDatum, bound: &Rational) -> Result<KTheorySummary> {
    let matrix = mult_matrix(datum, bound)?;
    let tri = triangularity_in(&matrix);
    let status = if !tri.passed {
        MatrixStatus::NotTriangular(tri.counterexample.unwrap_or_default())
    } else {
        match invert_window(&matrix) {
            Ok(inv) => MatrixStatus::Invertible(inv),
            Err(Error::InversionRefused { columns }) => MatrixStatus::Refused(columns),
            Err(e) => return Err(e),
        }
    };
    Ok(KTheorySummary { generators: matrix.cols, status, k1_note: K1_NOTE })
}

/// Random nonnegative combination of 1 to 4 K-types of norm at most
/// `max_norm`, coefficients 1 to 3.
pub fn random_ktype_sum(pool: &[Label], rng: &mut impl Rng) -> FormalSum<Label> {
    let terms = rng.random_range(1..=4);
    (0..terms)
        .filter_map(|_| pool.choose(rng).map(|t| (t.clone(), rng.random_range(1..=3))))
        .collect()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Randomized dimension identity and boundary totals over `pairs` pairs.
pub fn fourier_boundary_checks(datum: &GroupDatum, pairs: usize, max_norm: i64, seed: u64) -> Result<VerificationReport> {
    let pool: Vec<Label> = enumerate_ktypes_with_norms(datum, &int(max_norm))?.into_iter().map(|(l, _)| l).collect();
    let mut rng = seeded_rng(seed);
    let mut identity = Check::pass("dimension_identity", format!("{pairs} seeded pairs, norms <= {max_norm}"));
    let mut blocks = Check::pass("boundary_blocks", format!("{pairs} seeded pairs, block totals match"));
    for _ in 0..pairs {
        let v1 = random_ktype_sum(&pool, &mut rng);
        let v2 = random_ktype_sum(&pool, &mut rng);
        let id = dimension_identity_check(datum, &v1, &v2)?;
        if identity.passed && id.lhs != id.rhs {
            identity = Check::fail("dimension_identity", format!("V1 = {v1}, V2 = {v2}: lhs {} != rhs {}", id.lhs, id.rhs));
        }
        let total: u64 = boundary_block_dims(datum, &v1, &v2)?.iter().map(|b| b.dim).sum();
        if blocks.passed && total != id.lhs {
            blocks = Check::fail("boundary_blocks", format!("V1 = {v1}, V2 = {v2}: blocks total {total} != {}", id.lhs));
        }
    }
    Ok(VerificationReport { checks: vec![identity, blocks] })
}

pub fn admissibility_sweep(datum: &GroupDatum, samples: usize, max_norm: i64, seed: u64) -> Result<VerificationReport> {
    let pool: Vec<Label> = enumerate_ktypes_with_norms(datum, &int(max_norm))?.into_iter().map(|(l, _)| l).collect();
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let v = random_ktype_sum(&pool, &mut rng);
        let a = admissibility_check(datum, &v)?;
        if let Some(f) = a.report.first_failure() {
            return Ok(VerificationReport::single(Check::fail(
                "admissibility",
                format!("V = {v}: {}", f.counterexample.as_deref().unwrap_or("")),
            )));
        }
    }
    Ok(VerificationReport::single(Check::pass("admissibility", format!("{samples} seeded V, support sweep-confirmed"))))
}

/// Closed form of a discrete-series column of `SL(2,R)`: the K-types
/// `Lambda, Lambda +- 2, ...` moving away from zero.
pub fn sl2_ladder(lowest: i64, n: i64) -> i64 {
    let same_side = if lowest > 0 { n >= lowest } else { n <= lowest };
    i64::from(same_side && (n - lowest) % 2 == 0)
}

/// Every discrete series of the window has multiplicity one at its Blattner
/// parameter and nothing of smaller norm; for a circle `K` the column is the
/// closed-form ladder.
pub fn blattner_consistency_check(datum: &GroupDatum, bound: &Rational) -> Result<VerificationReport> {
    let name = "blattner_consistency";
    let check = guarded(name, || {
        if !datum.equal_rank {
            return Ok(Check::pass(name, "no discrete series"));
        }
        let window = enumerate_ktypes_with_norms(datum, bound)?;
        let reps = ds_enumerate(datum, bound)?;
        let ladder = resolves_split_pairs(datum);
        for rep in &reps {
            let lowest = rep.minimal_ktype();
            let lowest_norm = vogan_norm(datum, lowest)?;
            for (tau, n) in &window {
                let m = blattner_mult(datum, rep, tau)? as i64;
                let expected = if ladder {
                    sl2_ladder(lowest.coords()[0], tau.coords()[0])
                } else if tau == lowest {
                    1
                } else if *n < lowest_norm {
                    0
                } else {
                    continue;
                };
                if m != expected {
                    return Ok(Check::fail(name, format!("{rep} at {tau}: multiplicity {m}, expected {expected}")));
                }
            }
        }
        Ok(Check::pass(name, format!("{} discrete series", reps.len())))
    })?;
    Ok(VerificationReport::single(check))
}

/// Stored `2 rho_c` against the root data, and the chamber data of a few
/// parameters against each other.
pub fn catalog_consistency_check(datum: &GroupDatum) -> VerificationReport {
    let name = "catalog_consistency";
    let Some(ds) = datum.ds.as_ref() else {
        return VerificationReport::single(Check::pass(name, "no root data"));
    };
    let pos = ds.positive_compact_roots();
    let sum: Vec<i64> = pos.iter().fold(vec![0; ds.lattice_dim], |acc, r| crate::catalog::add(&acc, r));
    if sum != datum.two_rho_c {
        return VerificationReport::single(Check::fail(
            name,
            format!("two_rho_c {:?} differs from the sum of positive compact roots {sum:?}", datum.two_rho_c),
        ));
    }
    let r = 4i64;
    let ranges = vec![(-r, r); ds.lattice_dim];
    let mut chambers = 0;
    for lambda in crate::weights::CompactGroup::new(vec![Atom::Torus1; ds.lattice_dim])
        .expect("nonempty")
        .labels_in_box(&ranges)
    {
        let lambda = lambda.coords();
        if !ds.is_orbit_representative(&datum.gram, lambda) {
            continue;
        }
        let c = ds.chamber(&datum.gram, lambda).expect("regular");
        if c.two_rho_c != datum.two_rho_c {
            return VerificationReport::single(Check::fail(
                name,
                format!("chamber of {lambda:?}: 2 rho_c {:?} != stored {:?}", c.two_rho_c, datum.two_rho_c),
            ));
        }
        let half: Vec<i64> = c.positive_noncompact.iter().fold(vec![0; ds.lattice_dim], |acc, r| crate::catalog::add(&acc, r));
        if half != c.two_rho_n {
            return VerificationReport::single(Check::fail(name, format!("chamber of {lambda:?}: rho_n mismatch")));
        }
        if c.blattner_parameter(lambda).is_none() {
            return VerificationReport::single(Check::fail(
                name,
                format!("chamber of {lambda:?}: rho_n - rho_c is not integral"),
            ));
        }
        chambers += 1;
    }
    VerificationReport::single(Check::pass(name, format!("root sums consistent over {chambers} sample parameters")))
}

/// Full suite behind `verify`.
pub fn verify_suite(datum: &GroupDatum, bound: &Rational, seed: u64) -> Result<VerificationReport> {
    let mut report = catalog_consistency_check(datum);
    report.extend(vogan_bijection_check(datum, bound)?);
    report.extend(triangularity_check(datum, bound)?);
    report.extend(fourier_boundary_checks(datum, 200, 60, seed)?);
    report.extend(admissibility_sweep(datum, 100, 60, seed.wrapping_add(1))?);
    report.extend(blattner_consistency_check(datum, bound)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn l(xs: &[i64]) -> Label {
        Label(xs.to_vec())
    }

    fn one(xs: &[i64]) -> FormalSum<Label> {
        FormalSum::singleton(l(xs))
    }

    #[test]
    fn so31_matrix_is_all_ones_triangle() {
        let so = builtin("SO31").unwrap();
        let m = mult_matrix(&so, &int(16)).unwrap();
        assert_eq!(m.rows, vec![l(&[0]), l(&[1]), l(&[2]), l(&[3])]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.entry(i, j), i64::from(i >= j), "({i},{j})");
            }
        }
        let inv = invert_window(&m).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let expected = if i == k { 1 } else if i == k + 1 { -1 } else { 0 };
                assert_eq!(inv.entries[i][k], expected);
            }
        }
    }

    #[test]
    fn sl2_columns_and_inverse() {
        let sl2 = builtin("SL2R").unwrap();
        let m = mult_matrix(&sl2, &int(9)).unwrap();
        let names: Vec<String> = m.cols.iter().map(|c| c.minimal_ktype().to_string()).collect();
        assert_eq!(names, ["0", "-1", "1", "-2", "2", "-3", "3"]);
        assert!(m.resolution.iter().all(|r| *r == Resolution::Exact));
        // limits of discrete series split the odd ladder by sign
        let up = m.cols.iter().position(|c| c.minimal_ktype() == &l(&[1])).unwrap();
        let down = m.cols.iter().position(|c| c.minimal_ktype() == &l(&[-1])).unwrap();
        for (i, tau) in m.rows.iter().enumerate() {
            let n = tau.coords()[0];
            assert_eq!(m.entry(i, up), i64::from(n > 0 && n % 2 != 0));
            assert_eq!(m.entry(i, down), i64::from(n < 0 && n % 2 != 0));
        }
        invert_window(&m).unwrap();
    }

    #[test]
    fn sp11_refuses_inversion() {
        let sp = builtin("Sp11").unwrap();
        let m = mult_matrix(&sp, &int(20)).unwrap();
        let c1: Vec<usize> = m.aggregate_columns();
        assert_eq!(c1.len(), 2);
        let r10 = m.row_of(&l(&[1, 0])).unwrap();
        let r01 = m.row_of(&l(&[0, 1])).unwrap();
        for &j in &c1 {
            let own = m.cols[j].minimal_ktype().clone();
            let (own_row, other_row) = if own == l(&[1, 0]) { (r10, r01) } else { (r01, r10) };
            assert_eq!(m.entry(own_row, j), 1);
            assert_eq!(m.entry(other_row, j), 0);
        }
        match invert_window(&m) {
            Err(Error::InversionRefused { columns }) => assert_eq!(columns.len(), 2),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn composite_examples() {
        let sl2 = builtin("SL2R").unwrap();
        let img = composite_map(&sl2, &l(&[0]), &int(9)).unwrap();
        assert_eq!(img.terms.len(), 1);
        assert_eq!(img.terms.keys().next().unwrap().minimal_ktype(), &l(&[0]));
        let img = composite_map(&sl2, &l(&[2]), &int(9)).unwrap();
        let mins: BTreeSet<Label> = img.terms.keys().map(|r| r.minimal_ktype().clone()).collect();
        assert_eq!(mins, [l(&[0]), l(&[2])].into());
        assert!(img.terms.iter().all(|(_, m)| m == 1));
        assert!(matches!(composite_map(&sl2, &l(&[4]), &int(9)), Err(Error::WindowTooSmall(_))));

        let sp = builtin("Sp11").unwrap();
        let img = composite_map(&sp, &l(&[0, 0]), &int(8)).unwrap();
        assert_eq!(img.terms.len(), 1);
        assert!(img.aggregate.is_empty());
    }

    #[test]
    fn dimension_identity_examples() {
        let sp = builtin("Sp11").unwrap();
        let id = dimension_identity_check(&sp, &one(&[1, 1]), &one(&[1, 1])).unwrap();
        assert_eq!((id.lhs, id.rhs), (2, 2));
        let id = dimension_identity_check(&sp, &one(&[1, 0]), &one(&[0, 1])).unwrap();
        assert_eq!((id.lhs, id.rhs), (1, 1));
        let sl2 = builtin("SL2R").unwrap();
        let id = dimension_identity_check(&sl2, &one(&[0]), &one(&[0])).unwrap();
        assert_eq!((id.lhs, id.rhs), (1, 1));
        assert!(id.report().passed());
    }

    #[test]
    fn boundary_examples() {
        let so = builtin("SO31").unwrap();
        let blocks = boundary_block_dims(&so, &one(&[1]), &one(&[1])).unwrap();
        let summary: Vec<(String, BoundaryCase, u64)> =
            blocks.iter().map(|b| (b.block.to_string(), b.case, b.dim)).collect();
        assert_eq!(
            summary,
            vec![
                ("[P,{-1;1}]".to_string(), BoundaryCase::TwoInequivalent, 2),
                ("[P,{0}]".to_string(), BoundaryCase::FreeTwoPoint, 1),
            ]
        );

        let sl2 = builtin("SL2R").unwrap();
        let blocks = boundary_block_dims(&sl2, &one(&[1]), &one(&[1])).unwrap();
        let ps: Vec<(String, u64)> = blocks
            .iter()
            .filter(|b| b.case != BoundaryCase::GBlock)
            .map(|b| (b.block.to_string(), b.dim))
            .collect();
        assert_eq!(ps, vec![("[P,{0}]".to_string(), 0), ("[P,{1}]".to_string(), 1)]);

        let blocks = boundary_block_dims(&sl2, &one(&[3]), &one(&[-3])).unwrap();
        let ds: Vec<&BoundaryBlock> = blocks.iter().filter(|b| b.case == BoundaryCase::GBlock).collect();
        assert_eq!(ds.len(), 4);
        assert!(ds.iter().all(|b| b.dim == 0));
    }

    #[test]
    fn admissibility_examples() {
        let sp = builtin("Sp11").unwrap();
        let a = admissibility_check(&sp, &one(&[3, 2])).unwrap();
        assert_eq!(a.support, [l(&[1]), l(&[3]), l(&[5])].into());
        assert!(a.report.passed());
        let so = builtin("SO31").unwrap();
        assert_eq!(admissibility_check(&so, &one(&[0])).unwrap().support, [l(&[0])].into());
        let sl2 = builtin("SL2R").unwrap();
        let v: FormalSum<Label> = [(l(&[5]), 1), (l(&[-2]), 2)].into_iter().collect();
        let a = admissibility_check(&sl2, &v).unwrap();
        assert!(a.support.is_subset(&[l(&[0]), l(&[1])].into()));
    }

    #[test]
    fn summaries() {
        let so = builtin("SO31").unwrap();
        let s = ktheory_summary(&so, &int(16)).unwrap();
        assert_eq!(s.generators.len(), 4);
        assert!(matches!(s.status, MatrixStatus::Invertible(_)));
        let sl2 = builtin("SL2R").unwrap();
        let s = ktheory_summary(&sl2, &int(9)).unwrap();
        assert_eq!(s.generators.len(), 7);
        assert!(matches!(s.status, MatrixStatus::Invertible(_)));
        let sp = builtin("Sp11").unwrap();
        let s = ktheory_summary(&sp, &int(8)).unwrap();
        assert_eq!(s.generators.len(), 1);
        assert!(matches!(s.status, MatrixStatus::Invertible(_)));
        let s = ktheory_summary(&sp, &int(20)).unwrap();
        assert!(matches!(s.status, MatrixStatus::Refused(ref c) if c.len() == 2));
    }

    #[test]
    fn corrupted_two_rho_c_is_caught() {
        let mut doc = builtin("Sp11").unwrap().to_document();
        doc.two_rho_c = vec![2, 0];
        let bad = doc.into_datum().unwrap();
        let report = verify_suite(&bad, &int(41), DEFAULT_SEED).unwrap();
        assert_eq!(report.first_failure().unwrap().name, "catalog_consistency");
    }

    #[test]
    fn ladder_closed_form() {
        assert_eq!(sl2_ladder(2, 2), 1);
        assert_eq!(sl2_ladder(2, 4), 1);
        assert_eq!(sl2_ladder(2, 3), 0);
        assert_eq!(sl2_ladder(2, 0), 0);
        assert_eq!(sl2_ladder(-3, -5), 1);
        assert_eq!(sl2_ladder(-3, 3), 0);
    }
}
