//! One verification per identity. Every check is an exact polynomial (or
//! scalar) equality over the rationals; a failure carries the first
//! mismatching index as a witness.

mod hyp;
mod laguerre;
mod ml;
mod reconcile;
mod suites;

pub use hyp::{verify_hyp_lincomb, verify_quasi_order};
pub use laguerre::{
    verify_laguerre_hahn, verify_laguerre_q_recurrence, verify_laguerre_routes,
    verify_laguerre_structure, verify_ml_laguerre_limit,
};
pub use ml::{
    verify_de, verify_de_all, verify_hahn, verify_mrrl2, verify_nccd, verify_routes,
    verify_sr2_general, verify_sr_block, DeWhich,
};
pub use reconcile::{verify_moment_recursion, verify_sz4, verify_sz5};
pub use suites::{run_suites, suite_ids, verify_orthogonality, verify_regularity, Suite};

use serde::Serialize;

use crate::error::Result;
use crate::families::ParamMap;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    /// Not an identity failure: non-regularity, or a reconciliation that
    /// found no consistent reading.
    Warning,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub expected: Poly,
    pub actual: Poly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: ParamMap,
    /// `(n_min, n_max)` of the indices checked.
    pub range: (usize, usize),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// The reading pinned in reconciliation mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, params: ParamMap, range: (usize, usize)) -> Self {
        VerificationReport {
            id: id.into(),
            params,
            range,
            status: Status::Pass,
            witness: None,
            convention: None,
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(
        id: impl Into<String>,
        params: ParamMap,
        range: (usize, usize),
        why: impl Into<String>,
    ) -> Self {
        let mut r = VerificationReport::new(id, params, range);
        r.status = Status::NotApplicable;
        r.notes.push(why.into());
        r
    }

    pub fn fail(mut self, w: Witness) -> Self {
        self.status = Status::Fail;
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f` over `n_min..=n_max` and returns the first `(expected, actual)`
/// pair that differs.
pub(crate) fn first_mismatch(
    n_min: usize,
    n_max: usize,
    mut f: impl FnMut(usize) -> Result<(Poly, Poly)>,
) -> Result<Option<Witness>> {
    for n in n_min..=n_max {
        let (expected, actual) = f(n)?;
        if expected != actual {
            return Ok(Some(Witness {
                n,
                expected,
                actual,
            }));
        }
    }
    Ok(None)
}

/// Exact identity check over an index range; an empty range is reported as
/// not applicable.
pub(crate) fn exact_check(
    id: impl Into<String>,
    params: ParamMap,
    n_min: usize,
    n_max: Option<usize>,
    f: impl FnMut(usize) -> Result<(Poly, Poly)>,
) -> Result<VerificationReport> {
    let id = id.into();
    match n_max {
        Some(n_max) if n_min <= n_max => {
            let report = VerificationReport::new(id, params, (n_min, n_max));
            Ok(match first_mismatch(n_min, n_max, f)? {
                Some(w) => report.fail(w),
                None => report,
            })
        }
        _ => Ok(VerificationReport::not_applicable(
            id,
            params,
            (n_min, n_max.unwrap_or(0)),
            format!("no admissible index n >= {n_min} within the generated order"),
        )),
    }
}

pub(crate) fn describe_witness(w: &Witness) -> String {
    format!(
        "first mismatch at n = {}: expected {}, got {}",
        w.n, w.expected, w.actual
    )
}
