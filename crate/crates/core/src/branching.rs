//! Restriction from `K` to `M` and the multiplicity spaces `[L_sigma (x) V]^M`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::catalog::GroupDatum;
use crate::error::{Error, Result};
use crate::weights::{Atom, CompactGroup, FormalSum, Label};

/// Restriction template for a catalog pair `(K, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchingRule {
    /// `SO(2) -> Z/2`: a character restricts to its parity.
    Parity,
    /// `SO(3) -> SO(2)`: the weights `-j..=j`, each once.
    TorusRestriction,
    /// `SU(2) x SU(2) -> SU(2)` diagonally: Clebsch-Gordan.
    ClebschDiagonal,
}

impl BranchingRule {
    pub fn id(self) -> &'static str {
        match self {
            BranchingRule::Parity => "parity",
            BranchingRule::TorusRestriction => "torus-restriction",
            BranchingRule::ClebschDiagonal => "clebsch-diagonal",
        }
    }

    /// Atom lists `(K, M)` the rule applies to.
    pub fn signature(self) -> (&'static [Atom], &'static [Atom]) {
        match self {
            BranchingRule::Parity => (&[Atom::Torus1], &[Atom::Cyclic2]),
            BranchingRule::TorusRestriction => (&[Atom::SO3], &[Atom::Torus1]),
            BranchingRule::ClebschDiagonal => (&[Atom::SU2, Atom::SU2], &[Atom::SU2]),
        }
    }

    pub fn applies_to(self, k: &CompactGroup, m: &CompactGroup) -> bool {
        let (ka, ma) = self.signature();
        k.atoms() == ka && m.atoms() == ma
    }

    /// `tau|_M`, assuming `tau` is a valid label for the rule's `K`.
    pub fn restrict(self, tau: &Label) -> FormalSum<Label> {
        let x = tau.coords();
        match self {
            BranchingRule::Parity => FormalSum::singleton(Label(vec![x[0].rem_euclid(2)])),
            BranchingRule::TorusRestriction => (-x[0]..=x[0]).map(|n| (Label(vec![n]), 1)).collect(),
            BranchingRule::ClebschDiagonal => ((x[0] - x[1]).abs()..=x[0] + x[1])
                .step_by(2)
                .map(|c| (Label(vec![c]), 1))
                .collect(),
        }
    }
}

impl FromStr for BranchingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parity" => Ok(BranchingRule::Parity),
            "torus-restriction" => Ok(BranchingRule::TorusRestriction),
            "clebsch-diagonal" => Ok(BranchingRule::ClebschDiagonal),
            other => Err(crate::error::validation(
                "branching_rule",
                format!("unknown rule `{other}` (expected parity, torus-restriction or clebsch-diagonal)"),
            )),
        }
    }
}

impl fmt::Display for BranchingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub fn restrict_decompose(datum: &GroupDatum, tau: &Label) -> Result<FormalSum<Label>> {
    datum.k.validate(tau)?;
    if !datum.branching.applies_to(&datum.k, &datum.m) {
        return Err(Error::Unsupported(format!(
            "no branching rule from {} to {} (catalog names {})",
            datum.k, datum.m, datum.branching
        )));
    }
    Ok(datum.branching.restrict(tau))
}

/// Restriction of a formal sum of K-types.
pub fn restrict_sum(datum: &GroupDatum, v: &FormalSum<Label>) -> Result<FormalSum<Label>> {
    let mut out = FormalSum::new();
    for (tau, m) in v.iter() {
        for (sigma, k) in restrict_decompose(datum, tau)?.iter() {
            out.add_term(sigma.clone(), m * k);
        }
    }
    Ok(out)
}

/// `dim [L_sigma (x) V]^M`: the multiplicity of `sigma*` in `V|_M`.
pub fn mult_space_dim(datum: &GroupDatum, sigma: &Label, v: &FormalSum<Label>) -> Result<u64> {
    datum.m.validate(sigma)?;
    let dual = datum.m.dual(sigma);
    let restricted = restrict_sum(datum, v)?;
    Ok(restricted.get(&dual).max(0) as u64)
}

/// The M-types `sigma` with `[L_sigma (x) V]^M != 0`.
pub fn support_sigmas(datum: &GroupDatum, v: &FormalSum<Label>) -> Result<BTreeSet<Label>> {
    Ok(restrict_sum(datum, v)?
        .iter()
        .filter(|(_, m)| *m > 0)
        .map(|(s, _)| datum.m.dual(s))
        .collect())
}
