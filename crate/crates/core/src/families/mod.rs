//! Polynomial families, each constructed twice: by its recurrence and by
//! its exponential generating function.

mod hyp;
mod laguerre;
mod ml;
mod params;

pub use hyp::{hyp_laguerre, hyp_quasi, terminating_hypergeometric, HypFamily};
pub use laguerre::{
    laguerre_q_sequence, laguerre_step, laguerre_type_by_gf, laguerre_type_by_recurrence, LagFamily,
};
pub use ml::{ml_by_gf, ml_by_recurrence, ml_q_sequence, ml_recurrence_raw, ml_step, MlFamily};
pub use params::{HypParams, LagParams, MlParams, ParamMap};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Ml,
    Laguerre,
    HypLaguerre,
    /// The `alpha = 0` member of the Mittag-Leffler family.
    Charlier,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Ml,
        FamilyKind::Laguerre,
        FamilyKind::HypLaguerre,
        FamilyKind::Charlier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Ml => "ml",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::HypLaguerre => "hyp-laguerre",
            FamilyKind::Charlier => "charlier",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub enum FamilyData {
    Ml(MlFamily),
    Laguerre(LagFamily),
    Hyp(HypFamily),
}

/// A generated (or parsed) family, the input of every verification suite.
#[derive(Clone, Debug)]
pub struct Family {
    pub kind: FamilyKind,
    pub data: FamilyData,
}

impl Family {
    pub fn ml(fam: MlFamily) -> Self {
        let kind = if num_traits::Zero::is_zero(fam.params.alpha()) {
            FamilyKind::Charlier
        } else {
            FamilyKind::Ml
        };
        Family {
            kind,
            data: FamilyData::Ml(fam),
        }
    }

    /// Rebuilds a family from its parameter map and `P_0..P_N`, as read back
    /// from a generated table.
    pub fn from_table(kind: FamilyKind, params: &ParamMap, p: Vec<Poly>) -> Result<Self> {
        let data = match kind {
            FamilyKind::Ml | FamilyKind::Charlier => {
                let params = MlParams::from_map(params)?;
                if kind == FamilyKind::Charlier && !num_traits::Zero::is_zero(params.alpha()) {
                    return Err(Error::InvalidParameter(
                        "charlier requires alpha = 0".into(),
                    ));
                }
                FamilyData::Ml(MlFamily::from_polys(params, p)?)
            }
            FamilyKind::Laguerre => {
                FamilyData::Laguerre(LagFamily::from_polys(LagParams::from_map(params)?, p)?)
            }
            FamilyKind::HypLaguerre => {
                let hyp = HypParams::from_map(params)?;
                let beta = params
                    .get("beta")
                    .map_or(Ok(Rational::from_integer(0.into())), |v| parse_rational(v))?;
                let l = match params.get("l") {
                    Some(v) => v.trim().parse().map_err(|_| {
                        Error::InvalidParameter(format!(
                            "l must be a non-negative integer, got {v:?}"
                        ))
                    })?,
                    None => 1,
                };
                FamilyData::Hyp(HypFamily::from_polys(hyp, beta, l, p)?)
            }
        };
        Ok(Family { kind, data })
    }

    pub fn d(&self) -> usize {
        match &self.data {
            FamilyData::Ml(f) => f.params.d(),
            FamilyData::Laguerre(f) => f.params.d(),
            FamilyData::Hyp(f) => f.params.d(),
        }
    }

    pub fn order(&self) -> usize {
        self.p().len() - 1
    }

    pub fn p(&self) -> &[Poly] {
        match &self.data {
            FamilyData::Ml(f) => &f.p,
            FamilyData::Laguerre(f) => &f.p,
            FamilyData::Hyp(f) => &f.p,
        }
    }

    /// The lowering-operator image `Q_0..Q_{N-1}`, where defined.
    pub fn q(&self) -> Option<&[Poly]> {
        match &self.data {
            FamilyData::Ml(f) => Some(&f.q),
            FamilyData::Laguerre(f) => Some(&f.q),
            FamilyData::Hyp(_) => None,
        }
    }

    pub fn params_map(&self) -> ParamMap {
        match &self.data {
            FamilyData::Ml(f) => f.params.to_map(),
            FamilyData::Laguerre(f) => f.params.to_map(),
            FamilyData::Hyp(f) => f.to_map(),
        }
    }
}

/// One step `P_{n+1} = (x + shift) P_n + sum_{j>=1} lower[j-1] P_{n-j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceStep {
    pub shift: Rational,
    pub lower: Vec<Rational>,
}

/// Runs a recurrence from `P_0 = 1` through `P_order`.
pub fn run_recurrence(order: usize, step: impl Fn(usize) -> RecurrenceStep) -> Vec<Poly> {
    let mut p: Vec<Poly> = Vec::with_capacity(order + 1);
    p.push(Poly::one());
    for n in 0..order {
        let RecurrenceStep { shift, lower } = step(n);
        let mut next = p[n].mul_x() + p[n].scale(&shift);
        for (j, coef) in lower.iter().enumerate() {
            let idx = n.checked_sub(j + 1).expect("recurrence reaches below P_0");
            next = next + p[idx].scale(coef);
        }
        p.push(next);
    }
    p
}
