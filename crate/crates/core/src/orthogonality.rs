//! Recurrence fitting, Favard regularity, dual-functional moments and
//! quasi-orthogonality.
//!
//! Recurrence tables use the convention
//! `P_{n+1} = (x - beta_n) P_n - sum_{j=1}^{min(d,n)} g_{n,j} P_{n-j}`,
//! and `gamma^k_m = g_{m+d-k-1, d-k}` for `m >= 1`, `0 <= k < d`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{run_recurrence, RecurrenceStep};
use crate::poly::Poly;
use crate::rational::Rational;

/// Coefficients `a_i` with `q = sum_i a_i basis_i`. `basis_k` must have
/// degree exactly `k`; it need not be monic. The result has one entry per
/// basis element.
pub fn expand_in_basis(q: &Poly, basis: &[Poly]) -> Result<Vec<Rational>> {
    for (k, b) in basis.iter().enumerate() {
        if b.degree() != Some(k) {
            return Err(Error::BadBasis(k));
        }
    }
    let mut out = vec![Rational::zero(); basis.len()];
    let Some(deg) = q.degree() else {
        return Ok(out);
    };
    if deg >= basis.len() {
        return Err(Error::DegreeExceedsBasis {
            degree: deg,
            size: basis.len(),
        });
    }
    let mut rest = q.clone();
    for k in (0..=deg).rev() {
        let ck = rest.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let a = ck / basis[k].leading().expect("nonzero basis element");
        rest = rest - basis[k].scale(&a);
        out[k] = a;
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceTable {
    d: usize,
    #[serde(serialize_with = "crate::rational::serialize_rational_vec")]
    beta: Vec<Rational>,
    #[serde(serialize_with = "crate::rational::serialize_rational_rows")]
    /// `g[n][j-1] = g_{n,j}` for `1 <= j <= min(d, n)`.
    g: Vec<Vec<Rational>>,
}

impl RecurrenceTable {
    /// Builds a table from family-specific steps, converting
    /// `P_{n+1} = (x + shift) P_n + sum lower_j P_{n-j}` into the stored sign
    /// convention.
    pub fn from_steps(d: usize, steps: usize, step: impl Fn(usize) -> RecurrenceStep) -> Self {
        let mut beta = Vec::with_capacity(steps);
        let mut g = Vec::with_capacity(steps);
        for n in 0..steps {
            let s = step(n);
            beta.push(-s.shift);
            let mut row: Vec<Rational> = s.lower.into_iter().map(|v| -v).collect();
            row.resize(d.min(n), Rational::zero());
            g.push(row);
        }
        RecurrenceTable { d, beta, g }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of fitted steps, i.e. the table reproduces `P_0..P_len`.
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn beta(&self, n: usize) -> Option<&Rational> {
        self.beta.get(n)
    }

    pub fn betas(&self) -> &[Rational] {
        &self.beta
    }

    /// `g_{n,j}`; zero for `j > n`, `None` outside the table or for `j`
    /// outside `1..=d`.
    pub fn g(&self, n: usize, j: usize) -> Option<Rational> {
        if j == 0 || j > self.d {
            return None;
        }
        let row = self.g.get(n)?;
        Some(row.get(j - 1).cloned().unwrap_or_else(Rational::zero))
    }

    /// `gamma^k_m`, defined for `m >= 1` and `k < d`.
    pub fn gamma(&self, k: usize, m: usize) -> Option<Rational> {
        if m == 0 || k >= self.d {
            return None;
        }
        self.g(m + self.d - k - 1, self.d - k)
    }

    /// Re-runs the recurrence from `P_0 = 1`.
    pub fn regenerate(&self) -> Vec<Poly> {
        run_recurrence(self.len(), |n| RecurrenceStep {
            shift: -self.beta[n].clone(),
            lower: self.g[n].iter().map(|v| -v).collect(),
        })
    }
}

/// Solves for the `(d+2)`-term recurrence satisfied by a monic sequence.
pub fn fit_recurrence(p: &[Poly], d: usize) -> Result<RecurrenceTable> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    check_monic_sequence(p)?;
    let order = p.len() - 1;
    if order < d + 1 {
        return Err(Error::InsufficientOrder {
            need: d + 1,
            got: order,
        });
    }
    let mut beta = Vec::with_capacity(order);
    let mut g = Vec::with_capacity(order);
    for n in 0..order {
        let rest = &p[n + 1] - &p[n].mul_x();
        let a = expand_in_basis(&rest, &p[..=n])?;
        beta.push(-a[n].clone());
        let mut row = Vec::with_capacity(d.min(n));
        for j in 1..=n {
            if j <= d {
                row.push(-a[n - j].clone());
            } else if !a[n - j].is_zero() {
                return Err(Error::NoRecurrence {
                    terms: d + 2,
                    index: n,
                });
            }
        }
        g.push(row);
    }
    Ok(RecurrenceTable { d, beta, g })
}

fn check_monic_sequence(p: &[Poly]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InsufficientOrder { need: 0, got: 0 });
    }
    for (n, pn) in p.iter().enumerate() {
        if pn.degree() != Some(n) || !pn.is_monic() {
            return Err(Error::NotMonic(n));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub d: usize,
    pub checked_through: usize,
    /// Every `m` with `gamma^0_{m+1} = 0`.
    pub flagged: Vec<usize>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Lists the `m <= upto` with `gamma^0_{m+1} = 0`.
pub fn check_regularity(t: &RecurrenceTable, upto: usize) -> Result<RegularityReport> {
    if upto + t.d() >= t.len() {
        return Err(Error::InsufficientOrder {
            need: upto + t.d() + 1,
            got: t.len(),
        });
    }
    let flagged = (0..=upto)
        .filter(|&m| t.gamma(0, m + 1).is_some_and(|v| v.is_zero()))
        .collect();
    Ok(RegularityReport {
        d: t.d(),
        checked_through: upto,
        flagged,
    })
}

/// Moments `<u_r, x^k>` of the first `d` dual functionals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentTable {
    d: usize,
    #[serde(serialize_with = "crate::rational::serialize_rational_rows")]
    moments: Vec<Vec<Rational>>,
}

impl MomentTable {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Highest moment index available.
    pub fn order(&self) -> usize {
        self.moments[0].len() - 1
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.moments[r]
    }

    pub fn moment(&self, r: usize, k: usize) -> &Rational {
        &self.moments[r][k]
    }

    /// `<u_r, f>` for `deg f <= order`.
    pub fn apply(&self, r: usize, f: &Poly) -> Result<Rational> {
        let row = &self.moments[r];
        if let Some(deg) = f.degree() {
            if deg >= row.len() {
                return Err(Error::DegreeExceedsBasis {
                    degree: deg,
                    size: row.len(),
                });
            }
        }
        Ok(f.coeffs().iter().zip(row).map(|(c, m)| c * m).sum())
    }
}

/// Row `r < d` of the inverse of the unit lower-triangular coefficient
/// matrix of `P_0..P_N`: `<u_r, x^k>` is the `P_r` coordinate of `x^k`.
pub fn moments_by_inversion(p: &[Poly], d: usize) -> Result<MomentTable> {
    check_monic_sequence(p)?;
    let order = p.len() - 1;
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    if d > order {
        return Err(Error::InsufficientOrder {
            need: d,
            got: order,
        });
    }
    let mut moments = vec![Vec::with_capacity(order + 1); d];
    for k in 0..=order {
        let coords = expand_in_basis(&Poly::monomial(Rational::one(), k), p)?;
        for (r, row) in moments.iter_mut().enumerate() {
            row.push(coords[r].clone());
        }
    }
    Ok(MomentTable { d, moments })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    /// `<u_r, x^m P_n> = 0` for `n >= m d + r + 1`.
    Zero,
    /// `<u_r, x^m P_{m d + r}> != 0`.
    Regularity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityEntry {
    pub r: usize,
    pub m: usize,
    pub n: usize,
    pub kind: ConditionKind,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub value: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub d: usize,
    pub order: usize,
    pub entries: Vec<OrthogonalityEntry>,
}

impl OrthogonalityReport {
    pub fn zero_conditions_hold(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.kind == ConditionKind::Zero)
            .all(|e| e.holds)
    }

    pub fn regularity_conditions_hold(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.kind == ConditionKind::Regularity)
            .all(|e| e.holds)
    }

    /// `(r, m)` pairs whose regularity condition fails.
    pub fn regularity_failures(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|e| e.kind == ConditionKind::Regularity && !e.holds)
            .map(|e| (e.r, e.m))
            .collect()
    }
}

/// Evaluates every d-orthogonality condition whose polynomial `x^m P_n`
/// has degree at most `order`.
pub fn verify_d_orthogonality(
    p: &[Poly],
    moments: &MomentTable,
    d: usize,
    order: usize,
) -> Result<OrthogonalityReport> {
    if order >= p.len() || order > moments.order() {
        return Err(Error::InsufficientOrder {
            need: order,
            got: (p.len() - 1).min(moments.order()),
        });
    }
    if d > moments.d() {
        return Err(Error::InvalidParameter(format!(
            "moment table holds {} functionals, need {d}",
            moments.d()
        )));
    }
    let mut entries = Vec::new();
    for r in 0..d {
        for m in 0..=order {
            let first = m * d + r;
            if m + first > order {
                break;
            }
            for (n, pn) in p.iter().enumerate().take(order - m + 1).skip(first) {
                let f = Poly::monomial(Rational::one(), m) * pn;
                let value = moments.apply(r, &f)?;
                let (kind, holds) = if n == first {
                    (ConditionKind::Regularity, !value.is_zero())
                } else {
                    (ConditionKind::Zero, value.is_zero())
                };
                entries.push(OrthogonalityEntry {
                    r,
                    m,
                    n,
                    kind,
                    value,
                    holds,
                });
            }
        }
    }
    Ok(OrthogonalityReport { d, order, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiOrder {
    /// Smallest `l` with every `Q_n` supported on `P_{n-dl}..P_n`.
    pub order: usize,
    /// Whether the bottom coefficient `a_{n, n-dl}` is nonzero for every
    /// checked `n >= dl`.
    pub exact: bool,
}

pub fn quasi_orthogonality_order(q: &[Poly], p: &[Poly], d: usize) -> Result<QuasiOrder> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let mut expansions = Vec::with_capacity(q.len());
    let mut order = 0;
    for (n, qn) in q.iter().enumerate() {
        if qn.degree() != Some(n) {
            return Err(Error::BadBasis(n));
        }
        let a = expand_in_basis(qn, p)?;
        let lowest = a.iter().position(|v| !v.is_zero()).unwrap_or(n);
        order = order.max((n - lowest).div_ceil(d));
        expansions.push(a);
    }
    let width = d * order;
    let exact = expansions
        .iter()
        .enumerate()
        .filter(|(n, _)| *n >= width)
        .all(|(n, a)| !a[n - width].is_zero());
    Ok(QuasiOrder { order, exact })
}
