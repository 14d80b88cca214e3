//! Tempiric representations: constituents of the `nu = 0` principal series
//! and the discrete series, each with its minimal K-types.

use std::collections::BTreeSet;
use std::fmt;

use crate::branching::{mult_space_dim, support_sigmas};
use crate::catalog::{Chamber, GroupDatum};
use crate::error::{Error, Result};
use crate::rational::{int, isqrt_floor, Rational};
use crate::weights::{enumerate_ktypes_with_norms, norm_scaled, norm_unchecked, FormalSum, Label};

/// Norm ceiling of the minimal-K-type sweep. Reaching it means the catalog
/// data is inconsistent.
const SWEEP_CEILING: i64 = 1 << 22;

/// Associate class `[P, sigma]` of the minimal parabolic: an orbit of the
/// restricted Weyl group on `M^`, with the continuous parameter at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrincipalClass {
    /// Sorted; one or two labels.
    pub orbit: Vec<Label>,
    /// Order of the stabilizer `W_sigma`.
    pub w_sigma_order: u8,
}

impl PrincipalClass {
    pub fn of(datum: &GroupDatum, sigma: &Label) -> Self {
        let w = datum.weyl(sigma);
        if &w == sigma {
            PrincipalClass { orbit: vec![sigma.clone()], w_sigma_order: 2 }
        } else {
            let mut orbit = vec![sigma.clone(), w];
            orbit.sort();
            PrincipalClass { orbit, w_sigma_order: 1 }
        }
    }

    pub fn representative(&self) -> &Label {
        &self.orbit[0]
    }

    pub fn a_dim(&self) -> u32 {
        1
    }
}

impl fmt::Display for PrincipalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.orbit.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TempiricRep {
    /// Discrete series with Harish-Chandra parameter `hc` and Blattner
    /// parameter `lowest`.
    DiscreteSeries { hc: Vec<i64>, lowest: Label },
    PrincipalConstituent { class: PrincipalClass, minimal_ktype: Label, split: bool },
}

impl TempiricRep {
    pub fn minimal_ktype(&self) -> &Label {
        match self {
            TempiricRep::DiscreteSeries { lowest, .. } => lowest,
            TempiricRep::PrincipalConstituent { minimal_ktype, .. } => minimal_ktype,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, TempiricRep::DiscreteSeries { .. })
    }

    pub fn is_split(&self) -> bool {
        matches!(self, TempiricRep::PrincipalConstituent { split: true, .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TempiricRep::DiscreteSeries { .. } => "DiscreteSeries",
            TempiricRep::PrincipalConstituent { .. } => "PSConstituent",
        }
    }
}

impl fmt::Display for TempiricRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TempiricRep::DiscreteSeries { hc, lowest } => {
                write!(f, "DS[hc={};lowest={lowest}]", Label(hc.clone()))
            }
            TempiricRep::PrincipalConstituent { class, minimal_ktype, split } => {
                write!(f, "PS[sigma={class};min={minimal_ktype}")?;
                if *split {
                    f.write_str(";split")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Classes meeting the window, ordered by the first window K-type that
/// contains them.
pub fn principal_classes(datum: &GroupDatum, kwindow: &[Label]) -> Result<Vec<PrincipalClass>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for tau in kwindow {
        let sigmas = support_sigmas(datum, &FormalSum::singleton(tau.clone()))?;
        let classes: BTreeSet<PrincipalClass> = sigmas.iter().map(|s| PrincipalClass::of(datum, s)).collect();
        for c in classes {
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Multiplicity of `tau` in `Ind(sigma, 0)` for the class representative.
pub fn induced_ktype_mult(datum: &GroupDatum, class: &PrincipalClass, tau: &Label) -> Result<u64> {
    mult_space_dim(datum, class.representative(), &FormalSum::singleton(tau.clone()))
}

/// Minimal K-types of `Ind(sigma, 0)`, in window order.
///
/// The window bound grows until some K-type of the induced representation
/// is found; since every window is complete below its bound, the K-types of
/// minimal norm among those found are certified minimal.
pub fn minimal_ktypes(datum: &GroupDatum, class: &PrincipalClass) -> Result<Vec<Label>> {
    let mut bound = int(16).max(norm_unchecked(datum, &datum.k.trivial()));
    loop {
        let window = enumerate_ktypes_with_norms(datum, &bound)?;
        let mut found: Option<Rational> = None;
        let mut minima = Vec::new();
        for (tau, n) in &window {
            if found.as_ref().is_some_and(|f| n > f) {
                break;
            }
            if induced_ktype_mult(datum, class, tau)? > 0 {
                found = Some(n.clone());
                minima.push(tau.clone());
            }
        }
        if !minima.is_empty() {
            for tau in &minima {
                let m = induced_ktype_mult(datum, class, tau)?;
                if m != 1 {
                    return Err(Error::Internal(format!(
                        "minimal K-type {tau} of class {class} has multiplicity {m}"
                    )));
                }
            }
            return Ok(minima);
        }
        if bound > int(SWEEP_CEILING) {
            return Err(Error::Internal(format!(
                "no K-type of class {class} below norm {SWEEP_CEILING}"
            )));
        }
        bound *= int(4);
    }
}

/// One constituent per minimal K-type.
pub fn constituents(datum: &GroupDatum, class: &PrincipalClass) -> Result<Vec<TempiricRep>> {
    let minima = minimal_ktypes(datum, class)?;
    if minima.len() > 2 {
        return Err(Error::TooManyMinimalKTypes { class: class.to_string(), count: minima.len() });
    }
    let split = minima.len() == 2;
    Ok(minima
        .into_iter()
        .map(|minimal_ktype| TempiricRep::PrincipalConstituent { class: class.clone(), minimal_ktype, split })
        .collect())
}

fn ds_data(datum: &GroupDatum) -> Result<&crate::catalog::DiscreteSeriesDatum> {
    datum.ds.as_ref().ok_or_else(|| Error::NoDiscreteSeries(datum.name.clone()))
}

/// Discrete series with Blattner parameter of norm at most `bound`, one per
/// `W_K`-orbit of Harish-Chandra parameters, in window order of the
/// Blattner parameter.
pub fn ds_enumerate(datum: &GroupDatum, bound: &Rational) -> Result<Vec<TempiricRep>> {
    let ds = ds_data(datum)?;
    if *bound < int(0) {
        return Ok(Vec::new());
    }
    // |lambda_i| <= |Lambda_i + 2 rho_c,i| + |rho_n,i - rho_c,i| + |2 rho_c,i|
    let inv_diag = datum.gram.inverse_diagonal();
    let slack: Vec<i64> = (0..ds.lattice_dim)
        .map(|i| {
            let half_sum = |roots: &[Vec<i64>]| roots.iter().map(|r| r[i].abs()).sum::<i64>();
            half_sum(&ds.compact_roots) + half_sum(&ds.noncompact_roots) + datum.two_rho_c[i].abs()
        })
        .collect();
    let mut ranges = Vec::with_capacity(ds.lattice_dim);
    for (i, d) in inv_diag.iter().enumerate() {
        let r = isqrt_floor(&(bound * d)).unwrap_or_default();
        let r: i64 = r
            .try_into()
            .ok()
            .filter(|r: &i64| *r <= crate::weights::MAX_LABEL_COORD)
            .ok_or_else(|| Error::WindowTooLarge(format!("bound {bound} exceeds the label range")))?;
        ranges.push((-r - slack[i], r + slack[i]));
    }
    let limit = datum
        .gram
        .scale_bound(bound)
        .ok_or_else(|| Error::WindowTooLarge(format!("bound {bound} is out of range")))?;
    let mut out: Vec<(i128, TempiricRep)> = Vec::new();
    let mut lambda: Vec<i64> = ranges.iter().map(|(lo, _)| *lo).collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    loop {
        if ds.is_orbit_representative(&datum.gram, &lambda) {
            if let Some(rep) = discrete_series(datum, &lambda)? {
                let n = norm_scaled(datum, rep.minimal_ktype());
                if n <= limit {
                    out.push((n, rep));
                }
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == lambda.len() {
                out.sort_by(|(n1, r1), (n2, r2)| {
                    n1.cmp(n2).then_with(|| r1.minimal_ktype().cmp(r2.minimal_ktype()))
                });
                return Ok(out.into_iter().map(|(_, r)| r).collect());
            }
            if lambda[i] < ranges[i].1 {
                lambda[i] += 1;
                break;
            }
            lambda[i] = ranges[i].0;
            i += 1;
        }
    }
}

/// The discrete series with parameter `lambda`, or `None` when `lambda` is
/// singular. Errors when the Blattner parameter is not a K-type.
pub fn discrete_series(datum: &GroupDatum, lambda: &[i64]) -> Result<Option<TempiricRep>> {
    let ds = ds_data(datum)?;
    let Some(chamber) = ds.chamber(&datum.gram, lambda) else {
        return Ok(None);
    };
    let weight = chamber
        .blattner_parameter(lambda)
        .ok_or_else(|| Error::Internal(format!("Blattner parameter of {lambda:?} is not integral")))?;
    let lowest = datum.k.label_of_highest_weight(&weight).ok_or_else(|| {
        Error::Internal(format!("Blattner parameter {weight:?} of {lambda:?} is not a K-type"))
    })?;
    Ok(Some(TempiricRep::DiscreteSeries { hc: lambda.to_vec(), lowest }))
}

/// Number of ways to write `x` as a nonnegative integer combination of
/// `roots`. Every root must be positive on `functional`, which bounds the
/// search: no combination reaches a vector on which it is negative.
pub fn partition_count(functional: &[i128], roots: &[Vec<i64>], x: &[i64]) -> u64 {
    let eval = |y: &[i64]| -> i128 { functional.iter().zip(y).map(|(f, c)| f * i128::from(*c)).sum() };
    match roots {
        [] => u64::from(x.iter().all(|c| *c == 0)),
        [alpha, rest @ ..] => {
            let mut total = 0;
            let mut y = x.to_vec();
            while eval(&y) >= 0 {
                total += partition_count(functional, rest, &y);
                for (yi, ai) in y.iter_mut().zip(alpha) {
                    *yi -= ai;
                }
            }
            total
        }
    }
}

fn ds_chamber(datum: &GroupDatum, rep: &TempiricRep) -> Result<(Vec<i64>, Chamber)> {
    let TempiricRep::DiscreteSeries { hc, .. } = rep else {
        return Err(Error::NotDiscreteSeries(rep.to_string()));
    };
    let chamber = ds_data(datum)?
        .chamber(&datum.gram, hc)
        .ok_or_else(|| Error::NotDiscreteSeries(format!("{rep}: singular parameter")))?;
    Ok((hc.clone(), chamber))
}

/// Blattner's formula:
/// `sum over w in W_K of det(w) Q(w(mu + rho_c) - lambda - rho_n)`.
pub fn blattner_mult(datum: &GroupDatum, rep: &TempiricRep, tau: &Label) -> Result<u64> {
    datum.k.validate(tau)?;
    let (lambda, chamber) = ds_chamber(datum, rep)?;
    let ds = ds_data(datum)?;
    let mu = datum.k.highest_weight(tau);
    // work with doubled vectors so that half-sums stay integral
    let mu_rho_c2: Vec<i64> = mu.iter().zip(&chamber.two_rho_c).map(|(m, r)| 2 * m + r).collect();
    let target2: Vec<i64> = lambda.iter().zip(&chamber.two_rho_n).map(|(l, r)| 2 * l + r).collect();
    let functional = datum.gram.covector(&lambda);
    let mut total: i64 = 0;
    for w in &ds.wk {
        let diff2: Vec<i64> = w.apply(&mu_rho_c2).iter().zip(&target2).map(|(a, b)| a - b).collect();
        if diff2.iter().any(|c| c % 2 != 0) {
            continue;
        }
        let diff: Vec<i64> = diff2.iter().map(|c| c / 2).collect();
        total += w.det() * partition_count(&functional, &chamber.positive_noncompact, &diff) as i64;
    }
    u64::try_from(total).map_err(|_| {
        Error::Internal(format!("Blattner formula gives {total} for {tau} in {rep}"))
    })
}
