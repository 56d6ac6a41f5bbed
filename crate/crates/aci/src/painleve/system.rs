use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Complex64, MultiPoly, PolyJson, Qi};
use crate::error::{Error, Result};

/// A polynomial vector field with its invariants and optional Poisson matrix.
#[derive(Clone, Debug)]
pub struct HamiltonianSystem {
    pub name: String,
    pub vars: Vec<String>,
    pub field: Vec<MultiPoly<Qi>>,
    pub invariants: Vec<MultiPoly<Qi>>,
    pub invariant_names: Vec<String>,
    pub poisson: Option<Vec<Vec<MultiPoly<Qi>>>>,
    pub weights: Option<Vec<i64>>,
    pub hints: FamilyHints,
}

/// Naming and normalization choices for Laurent families.
///
/// `resonance_pivots[k]` lists preferred coordinates for the free parameters
/// injected at resonance `k`; `slice` fixes which coordinate parametrizes a
/// continuous family of balances.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FamilyHints {
    pub slice: Option<usize>,
    pub slice_name: Option<String>,
    pub resonance_pivots: BTreeMap<i64, Vec<usize>>,
    pub resonance_names: BTreeMap<i64, Vec<String>>,
}

impl HamiltonianSystem {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn float_field(&self) -> Vec<MultiPoly<Complex64>> {
        self.field.iter().map(|p| p.to_float()).collect()
    }

    /// `<grad H, f>` for every invariant; all zero for a genuine invariant.
    pub fn invariance_residuals(&self) -> Vec<MultiPoly<Qi>> {
        self.invariants
            .iter()
            .map(|h| {
                let mut acc = MultiPoly::zero(&self.vars);
                for (i, fi) in self.field.iter().enumerate() {
                    acc = &acc + &(&h.derivative(i) * fi);
                }
                acc
            })
            .collect()
    }

    pub fn evaluate_field(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.field.iter().map(|p| p.eval_c64(x)).collect()
    }

    pub fn evaluate_invariants(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.invariants.iter().map(|p| p.eval_c64(x)).collect()
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            name: self.name.clone(),
            vars: self.vars.clone(),
            field: self.field.iter().map(|p| p.to_json()).collect(),
            invariants: self.invariants.iter().map(|p| p.to_json()).collect(),
            invariant_names: self.invariant_names.clone(),
            poisson: self.poisson.as_ref().map(|j| j.iter().map(|r| r.iter().map(|p| p.to_json()).collect()).collect()),
            weights: self.weights.clone(),
            hints: self.hints.clone(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        let field: Vec<MultiPoly<Qi>> = j.field.iter().map(MultiPoly::from_json).collect::<Result<_>>()?;
        let invariants: Vec<MultiPoly<Qi>> = j.invariants.iter().map(MultiPoly::from_json).collect::<Result<_>>()?;
        let poisson = match &j.poisson {
            Some(rows) => Some(
                rows.iter()
                    .map(|r| r.iter().map(MultiPoly::from_json).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let sys = HamiltonianSystem {
            name: j.name.clone(),
            vars: j.vars.clone(),
            field,
            invariants,
            invariant_names: j.invariant_names.clone(),
            poisson,
            weights: j.weights.clone(),
            hints: j.hints.clone(),
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Checks variable lists and dimensions.
    pub fn validate(&self) -> Result<()> {
        let m = self.dim();
        if self.field.len() != m {
            return Err(Error::Dimension(format!("{} field components for {} variables", self.field.len(), m)));
        }
        for p in self.field.iter().chain(&self.invariants) {
            if p.vars() != self.vars.as_slice() {
                return Err(Error::Dimension("polynomial variables differ from phase variables".into()));
            }
        }
        if let Some(j) = &self.poisson {
            if j.len() != m || j.iter().any(|r| r.len() != m) {
                return Err(Error::Dimension("Poisson matrix must be m x m".into()));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != m {
                return Err(Error::Dimension("weight vector length".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub name: String,
    pub vars: Vec<String>,
    pub field: Vec<PolyJson>,
    pub invariants: Vec<PolyJson>,
    #[serde(default)]
    pub invariant_names: Vec<String>,
    #[serde(default)]
    pub poisson: Option<Vec<Vec<PolyJson>>>,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub hints: FamilyHints,
}
