use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{
    verify_de_all, verify_hahn, verify_hyp_lincomb, verify_laguerre_hahn,
    verify_laguerre_q_recurrence, verify_laguerre_routes, verify_laguerre_structure,
    verify_ml_laguerre_limit, verify_moment_recursion, verify_mrrl2, verify_nccd,
    verify_quasi_order, verify_routes, verify_sr2_general, verify_sr_block, verify_sz4, verify_sz5,
    Status, VerificationReport, Witness,
};
use crate::error::{Error, Result};
use crate::families::{Family, FamilyData, FamilyKind, ParamMap};
use crate::orthogonality::{
    check_regularity, fit_recurrence, moments_by_inversion, verify_d_orthogonality, ConditionKind,
};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Routes,
    QRecurrence,
    Hahn,
    Connection,
    Shifts,
    Structure,
    Difference,
    Explicit,
    RatioExpansion,
    MomentRecursion,
    Regularity,
    Orthogonality,
    LaguerreStructure,
    Limit,
    HypLincomb,
    QuasiOrder,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Routes,
        Suite::QRecurrence,
        Suite::Hahn,
        Suite::Connection,
        Suite::Shifts,
        Suite::Structure,
        Suite::Difference,
        Suite::Explicit,
        Suite::RatioExpansion,
        Suite::MomentRecursion,
        Suite::Regularity,
        Suite::Orthogonality,
        Suite::LaguerreStructure,
        Suite::Limit,
        Suite::HypLincomb,
        Suite::QuasiOrder,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Routes => "routes",
            Suite::QRecurrence => "q-recurrence",
            Suite::Hahn => "hahn",
            Suite::Connection => "connection",
            Suite::Shifts => "shifts",
            Suite::Structure => "structure",
            Suite::Difference => "difference",
            Suite::Explicit => "explicit",
            Suite::RatioExpansion => "ratio-expansion",
            Suite::MomentRecursion => "moment-recursion",
            Suite::Regularity => "regularity",
            Suite::Orthogonality => "orthogonality",
            Suite::LaguerreStructure => "laguerre-structure",
            Suite::Limit => "limit",
            Suite::HypLincomb => "hyp-lincomb",
            Suite::QuasiOrder => "quasi-order",
        }
    }

    pub fn applies_to(self, kind: FamilyKind) -> bool {
        use Suite::*;
        match kind {
            FamilyKind::Ml | FamilyKind::Charlier => {
                !matches!(self, LaguerreStructure | Limit | HypLincomb | QuasiOrder)
            }
            FamilyKind::Laguerre => matches!(
                self,
                Routes
                    | QRecurrence
                    | Hahn
                    | LaguerreStructure
                    | Limit
                    | Regularity
                    | Orthogonality
            ),
            FamilyKind::HypLaguerre => {
                matches!(self, HypLincomb | QuasiOrder | Regularity | Orthogonality)
            }
        }
    }

    /// Parses a comma separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                return Ok(Suite::ALL.to_vec());
            }
            let suite = part.parse()?;
            if !out.contains(&suite) {
                out.push(suite);
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownSuite(s.to_string()));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

pub fn suite_ids() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.id()).collect()
}

fn monic(p: &[Poly]) -> Vec<Poly> {
    p.iter()
        .map(|q| match q.leading() {
            Some(c) if !c.is_zero() => q.scale(&(Rational::from_integer(1.into()) / c)),
            _ => q.clone(),
        })
        .collect()
}

fn constant(v: usize) -> Poly {
    Poly::constant(Rational::from_integer(v.into()))
}

/// Flags every `m` with `gamma^0_{m+1} = 0` in the fitted recurrence.
pub fn verify_regularity(p: &[Poly], d: usize, params: ParamMap) -> Result<VerificationReport> {
    let order = p.len().saturating_sub(1);
    let Some(upto) = order.checked_sub(d + 1) else {
        return Ok(VerificationReport::not_applicable(
            "regularity",
            params,
            (0, order),
            format!("need N >= {}", d + 1),
        ));
    };
    let table = match fit_recurrence(p, d) {
        Ok(t) => t,
        Err(e @ Error::NoRecurrence { .. }) => {
            return Ok(VerificationReport::new("regularity", params, (0, order))
                .fail(Witness {
                    n: order,
                    expected: constant(d + 2),
                    actual: constant(0),
                })
                .with_note(e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let reg = check_regularity(&table, upto)?;
    let mut report = VerificationReport::new("regularity", params, (0, upto));
    if !reg.is_regular() {
        report.status = Status::Warning;
        for m in &reg.flagged {
            report
                .notes
                .push(format!("gamma^0_{} = 0: not regular at m = {m}", m + 1));
        }
    }
    Ok(report)
}

/// Moments by inversion, then every zero and regularity condition up to the
/// generated order. Each regularity value is also compared against the
/// product of the fitted `g_{n,d}` it must equal.
pub fn verify_orthogonality(p: &[Poly], d: usize, params: ParamMap) -> Result<VerificationReport> {
    let order = p.len().saturating_sub(1);
    if order < d + 1 {
        return Ok(VerificationReport::not_applicable(
            "orthogonality",
            params,
            (0, order),
            format!("need N >= {}", d + 1),
        ));
    }
    let moments = moments_by_inversion(p, d)?;
    let orth = verify_d_orthogonality(p, &moments, d, order)?;
    let table = fit_recurrence(p, d)?;
    let mut report = VerificationReport::new("orthogonality", params, (0, order));
    for e in &orth.entries {
        if e.kind == ConditionKind::Zero && !e.holds {
            report
                .notes
                .push(format!("<u_{}, x^{} P_{}> != 0", e.r, e.m, e.n));
            return Ok(report.fail(Witness {
                n: e.n,
                expected: Poly::zero(),
                actual: Poly::constant(e.value.clone()),
            }));
        }
        if e.kind == ConditionKind::Regularity {
            let predicted = (1..=e.m).fold(Rational::from_integer(1.into()), |acc, i| {
                acc * table.g(i * d + e.r, d).unwrap_or_default()
            });
            if predicted != e.value {
                report.notes.push(format!(
                    "regularity value at (r, m) = ({}, {}) disagrees with the recurrence",
                    e.r, e.m
                ));
                return Ok(report.fail(Witness {
                    n: e.n,
                    expected: Poly::constant(predicted),
                    actual: Poly::constant(e.value.clone()),
                }));
            }
        }
    }
    let failures = orth.regularity_failures();
    if !failures.is_empty() {
        report.status = Status::Warning;
        for (r, m) in failures {
            report
                .notes
                .push(format!("<u_{r}, x^{m} P_{}> = 0", m * d + r));
        }
    }
    Ok(report)
}

fn run_one(family: &Family, suite: Suite) -> Result<Vec<VerificationReport>> {
    let params = family.params_map();
    if !suite.applies_to(family.kind) {
        return Ok(vec![VerificationReport::not_applicable(
            suite.id(),
            params,
            (0, family.order()),
            format!("not defined for the {} family", family.kind),
        )]);
    }
    let d = family.d();
    match (&family.data, suite) {
        (FamilyData::Hyp(_), Suite::Regularity) => {
            Ok(vec![verify_regularity(&monic(family.p()), d, params)?])
        }
        (FamilyData::Hyp(_), Suite::Orthogonality) => {
            Ok(vec![verify_orthogonality(&monic(family.p()), d, params)?])
        }
        (_, Suite::Regularity) => Ok(vec![verify_regularity(family.p(), d, params)?]),
        (_, Suite::Orthogonality) => Ok(vec![verify_orthogonality(family.p(), d, params)?]),
        (FamilyData::Ml(f), s) => Ok(match s {
            Suite::Routes => vec![verify_routes(f)?],
            Suite::QRecurrence => vec![verify_mrrl2(f)?],
            Suite::Hahn => vec![verify_hahn(f)?],
            Suite::Connection => vec![verify_nccd(f)?],
            Suite::Shifts => verify_sr_block(f)?,
            Suite::Structure => verify_sr2_general(f)?,
            Suite::Difference => verify_de_all(f)?,
            Suite::Explicit => vec![verify_sz4(f)?],
            Suite::RatioExpansion => verify_sz5(f.params.alpha(), f.params.beta(), f.order())?,
            Suite::MomentRecursion => verify_moment_recursion(f)?,
            _ => unreachable!("filtered by applies_to"),
        }),
        (FamilyData::Laguerre(f), s) => Ok(vec![match s {
            Suite::Routes => verify_laguerre_routes(f)?,
            Suite::QRecurrence => verify_laguerre_q_recurrence(f)?,
            Suite::Hahn => verify_laguerre_hahn(f)?,
            Suite::LaguerreStructure => verify_laguerre_structure(f)?,
            Suite::Limit => verify_ml_laguerre_limit(f)?,
            _ => unreachable!("filtered by applies_to"),
        }]),
        (FamilyData::Hyp(f), s) => Ok(match s {
            Suite::HypLincomb => verify_hyp_lincomb(f)?,
            Suite::QuasiOrder => vec![verify_quasi_order(f)?],
            _ => unreachable!("filtered by applies_to"),
        }),
    }
}

/// Runs the requested suites in order. With every suite requested, the ones
/// not defined for the family are skipped instead of reported.
pub fn run_suites(family: &Family, suites: &[Suite]) -> Result<Vec<VerificationReport>> {
    let everything = suites.len() == Suite::ALL.len();
    let mut out = Vec::new();
    for &s in suites {
        if everything && !s.applies_to(family.kind) {
            continue;
        }
        out.extend(run_one(family, s)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{MlFamily, MlParams};
    use crate::rational::int;

    #[test]
    fn parse_lists() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), Suite::ALL.len());
        assert_eq!(
            Suite::parse_list("routes, hahn,routes").unwrap(),
            vec![Suite::Routes, Suite::Hahn]
        );
        assert!(matches!(
            Suite::parse_list("nope"),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn classical_flags_m0() {
        let fam =
            MlFamily::generate(MlParams::new(1, int(1), int(-1), vec![]).unwrap(), 6).unwrap();
        let r = verify_regularity(&fam.p, 1, fam.params.to_map()).unwrap();
        assert_eq!(r.status, Status::Warning);
        assert!(r.notes[0].contains("m = 0"));
    }

    #[test]
    fn all_suites_on_regular_ml() {
        let fam =
            MlFamily::generate(MlParams::new(2, int(1), int(3), vec![int(2)]).unwrap(), 9).unwrap();
        let reports = run_suites(&Family::ml(fam), &Suite::ALL).unwrap();
        for r in &reports {
            assert!(!r.is_failure(), "{r:?}");
        }
    }
}
