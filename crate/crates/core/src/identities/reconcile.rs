//! Reconciliation mode: a literal identity is tried first, then a short list
//! of alternative readings. The first reading that matches at low degree is
//! pinned and then checked at every degree.

use num_traits::{One, Zero};

use super::{describe_witness, first_mismatch, Status, VerificationReport, Witness};
use crate::error::Result;
use crate::families::{ml_by_gf, MlFamily, MlParams, ParamMap};
use crate::orthogonality::moments_by_inversion;
use crate::poly::Poly;
use crate::rational::{binomial, factorial, from_usize, pow, Rational};
use crate::series::{gf_binomial_xw, gf_ratio_power};

/// Degrees used to pin a reading before the full check.
pub(crate) const PIN_THROUGH: usize = 3;

pub(crate) type CheckFn<'a> = Box<dyn Fn(usize) -> Result<(Poly, Poly)> + 'a>;

pub(crate) struct Candidate<'a> {
    pub name: String,
    /// Set when the reading has no meaning for these parameters.
    pub undefined: Option<String>,
    pub check: CheckFn<'a>,
}

impl<'a> Candidate<'a> {
    pub fn new(
        name: impl Into<String>,
        check: impl Fn(usize) -> Result<(Poly, Poly)> + 'a,
    ) -> Self {
        Candidate {
            name: name.into(),
            undefined: None,
            check: Box::new(check),
        }
    }

    pub fn undefined_if(mut self, cond: bool, why: &str) -> Self {
        if cond {
            self.undefined = Some(why.to_string());
        }
        self
    }
}

/// Tries each candidate in turn. `unresolved` is the status used when no
/// reading validates.
pub(crate) fn reconcile(
    id: impl Into<String>,
    params: ParamMap,
    n_min: usize,
    n_max: usize,
    candidates: Vec<Candidate<'_>>,
    unresolved: Status,
) -> Result<VerificationReport> {
    let id = id.into();
    if n_min > n_max {
        return Ok(VerificationReport::not_applicable(
            id,
            params,
            (n_min, n_max),
            "no admissible index within the generated order",
        ));
    }
    let mut report = VerificationReport::new(id, params, (n_min, n_max));
    let pin_hi = (n_min + PIN_THROUGH).min(n_max);
    let mut first_witness: Option<Witness> = None;
    for cand in candidates {
        if let Some(why) = &cand.undefined {
            report
                .notes
                .push(format!("reading \"{}\" skipped: {why}", cand.name));
            continue;
        }
        if let Some(w) = first_mismatch(n_min, pin_hi, &cand.check)? {
            report.notes.push(format!(
                "reading \"{}\" rejected, {}",
                cand.name,
                describe_witness(&w)
            ));
            first_witness.get_or_insert(w);
            continue;
        }
        match first_mismatch(pin_hi + 1, n_max, &cand.check)? {
            None => {
                report.convention = Some(cand.name);
                return Ok(report);
            }
            Some(w) => {
                report.notes.push(format!(
                    "reading \"{}\" matched through n = {pin_hi} but {}",
                    cand.name,
                    describe_witness(&w)
                ));
                first_witness.get_or_insert(w);
            }
        }
    }
    match first_witness {
        Some(w) => {
            report.status = unresolved;
            report.witness = Some(w);
            report
                .notes
                .push("no reading validates at every degree".into());
        }
        None => report.status = Status::NotApplicable,
    }
    Ok(report)
}

/// `x <x + (n-k-1) w | w>_{n-1}`, read as 1 when `n = 0`.
fn x_shifted_falling(w: &Rational, n: usize, k: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let shift = (from_usize(n) - from_usize(k) - Rational::one()) * w;
    Poly::falling_factorial(w, n - 1).shift(&shift).mul_x()
}

/// `n!` times the `t^n` coefficient of `((1 - beta t)/(1 - alpha t))^(x/w)`
/// as a double sum over falling factorials, with weights
/// `(-beta/w)^k (alpha/w)^(n-k)`.
pub fn ratio_expansion(alpha: &Rational, beta: &Rational, n: usize) -> Poly {
    let w = alpha - beta;
    let s = -beta / &w;
    let r = alpha / &w;
    (0..=n).fold(Poly::zero(), |acc, k| {
        let weight = binomial(n, k) * pow(&s, k) * pow(&r, n - k);
        acc + x_shifted_falling(&w, n, k).scale(&weight)
    })
}

/// The same double sum with the literal weights `(beta/alpha)^k (-alpha)^n`.
/// Undefined at `alpha = 0`.
fn ratio_expansion_literal(alpha: &Rational, beta: &Rational, n: usize) -> Poly {
    let w = alpha - beta;
    let q = beta / alpha;
    let scale = pow(&-alpha.clone(), n);
    (0..=n).fold(Poly::zero(), |acc, k| {
        let weight = binomial(n, k) * pow(&q, k) * &scale;
        acc + x_shifted_falling(&w, n, k).scale(&weight)
    })
}

/// Double-sum expansion of the ratio power against the series oracle, plus
/// the three-route oracle triangle.
pub fn verify_sz5(
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<Vec<VerificationReport>> {
    let params = ratio_params(alpha, beta);
    let oracle = gf_ratio_power(alpha, beta, order)?.egf_extract();
    let candidates = vec![
        Candidate::new("literal: weights (beta/alpha)^k (-alpha)^n", |n| {
            Ok((oracle[n].clone(), ratio_expansion_literal(alpha, beta, n)))
        })
        .undefined_if(alpha.is_zero(), "beta/alpha is undefined at alpha = 0"),
        Candidate::new(
            "restored: (1 - alpha t)^(-x/w) = sum <x+(n-1)w|w>_n (alpha/w)^n t^n/n!, \
             (1 - beta t)^(x/w) = sum <x|w>_n (-beta/w)^n t^n/n!, \
             weights (-beta/w)^k (alpha/w)^(n-k)",
            |n| Ok((oracle[n].clone(), ratio_expansion(alpha, beta, n))),
        ),
    ];
    let main = reconcile(
        "ratio-expansion",
        params.clone(),
        0,
        order,
        candidates,
        Status::Warning,
    )?;

    let w = alpha - beta;
    let num = gf_binomial_xw(&w, &(-beta / &w), order)?;
    let den = gf_binomial_xw(&-w.clone(), &(alpha / &w), order)?;
    let product = num.mul(&den).egf_extract();
    let triangle = super::exact_check("oracle-triangle", params, 0, Some(order), |n| {
        Ok((oracle[n].clone(), product[n].clone()))
    })?;
    Ok(vec![main, triangle])
}

fn ratio_params(alpha: &Rational, beta: &Rational) -> ParamMap {
    let mut m = ParamMap::new();
    m.insert("alpha".into(), alpha.to_string());
    m.insert("beta".into(), beta.to_string());
    m
}

/// All `(k_1..k_{d-1})` with `sum i k_i <= max_weight`, paired with that
/// weight.
fn weighted_vectors(d: usize, max_weight: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; d.saturating_sub(1)];
    fn rec(
        i: usize,
        weight: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        if i == cur.len() {
            out.push((cur.clone(), weight));
            return;
        }
        let step = i + 1;
        let mut k = 0;
        while weight + k * step <= max {
            cur[i] = k;
            rec(i + 1, weight + k * step, max, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, 0, max_weight, &mut cur, &mut out);
    out
}

fn monomial_weight(a: &[Rational], ks: &[usize]) -> Rational {
    ks.iter()
        .zip(a)
        .map(|(&k, ai)| pow(ai, k) / factorial(k))
        .product()
}

/// Conversions from the exponent coefficients to the `a_i` of the explicit
/// formula.
fn a_conversions(p: &MlParams) -> Vec<(&'static str, Vec<Rational>)> {
    let d = p.d();
    vec![
        (
            "a_i = b_{i-1}/i!",
            (1..d).map(|i| p.b(i - 1) / factorial(i)).collect(),
        ),
        ("a_i = -b_{i-1}", (1..d).map(|i| -p.b(i - 1)).collect()),
    ]
}

fn explicit_literal(p: &MlParams, a: &[Rational], n: usize) -> Poly {
    let (alpha, beta, w) = (p.alpha(), p.beta(), p.w());
    let q = beta / alpha;
    let lead = pow(&-alpha.clone(), n);
    let mut total = Poly::zero();
    for s in 0..=n {
        for (ks, m) in weighted_vectors(p.d(), s) {
            // multinomial n! / (prod k_i! (n-s)! (s-m)! m!)
            let coef = factorial(n) * monomial_weight(a, &ks)
                / (factorial(n - s) * factorial(s - m) * factorial(m))
                * pow(&q, s)
                * &lead
                * pow(&-beta.clone(), m);
            let body = if n == m {
                Poly::one()
            } else {
                let shift = (from_usize(n) - from_usize(s) - Rational::one()) * &w;
                Poly::falling_factorial(&w, n - m - 1).shift(&shift).mul_x()
            };
            total = total + body.scale(&coef);
        }
    }
    total
}

fn explicit_reconstructed(p: &MlParams, a: &[Rational], n: usize) -> Poly {
    let mut total = Poly::zero();
    for (ks, m) in weighted_vectors(p.d(), n) {
        let coef = factorial(n) * monomial_weight(a, &ks) / factorial(n - m);
        total = total + ratio_expansion(p.alpha(), p.beta(), n - m).scale(&coef);
    }
    total
}

/// Explicit falling-factorial form of `P_n` against the generating function.
pub fn verify_sz4(fam: &MlFamily) -> Result<VerificationReport> {
    let p = &fam.params;
    let order = fam.order();
    let oracle = ml_by_gf(p, order)?;
    let oracle = &oracle;
    let mut candidates = Vec::new();
    for (conv, a) in a_conversions(p) {
        let a1 = a.clone();
        candidates.push(
            Candidate::new(format!("literal, {conv}"), move |n| {
                Ok((oracle[n].clone(), explicit_literal(p, &a1, n)))
            })
            .undefined_if(p.alpha().is_zero(), "beta/alpha is undefined at alpha = 0"),
        );
        let a2 = a;
        candidates.push(Candidate::new(
            format!(
                "P_n = sum over k with m = sum i k_i <= n of n!/(prod k_i! (n-m)!) prod a_i^k_i R_(n-m), \
                 R the restored ratio expansion, {conv}"
            ),
            move |n| Ok((oracle[n].clone(), explicit_reconstructed(p, &a2, n))),
        ));
    }
    // literal readings first, then the reconstructions, in conversion order
    candidates.sort_by_key(|c| !c.name.starts_with("literal"));
    reconcile(
        "explicit-falling",
        p.to_map(),
        0,
        order,
        candidates,
        Status::Warning,
    )
}

/// `<phi_r, x^n>` recursion against moments obtained by inversion, one
/// report per functional `r < d`.
pub fn verify_moment_recursion(fam: &MlFamily) -> Result<Vec<VerificationReport>> {
    let p = &fam.params;
    let d = p.d();
    let order = fam.order();
    if order < d {
        return Ok(vec![VerificationReport::not_applicable(
            "moment-recursion",
            p.to_map(),
            (0, order),
            format!("need N >= {d}"),
        )]);
    }
    let moments = moments_by_inversion(&fam.p, d)?;
    let moments = &moments;
    let c = p.c();
    let neg_c: Vec<Rational> = c.iter().map(|v| -v).collect();
    let neg_c = &neg_c;
    let (alpha, beta) = (p.alpha(), p.beta());
    let k = |v: Rational| Poly::constant(v);

    let mut out = Vec::new();
    for r in 0..d {
        let params = {
            let mut m = p.to_map();
            m.insert("r".into(), r.to_string());
            m
        };
        let id = format!("moment-recursion[r={r}]");

        // vanishing below the diagonal is read off directly
        if r > 0 {
            let below = super::exact_check(
                format!("moment-vanishing[r={r}]"),
                params.clone(),
                0,
                Some(r - 1),
                |n| Ok((Poly::zero(), k(moments.moment(r, n).clone()))),
            )?;
            out.push(below);
        }

        let literal_rhs = move |n: usize| -> Rational {
            let scale = pow(&-alpha.clone(), n);
            let q = beta / alpha;
            (r..=n)
                .map(|kk| binomial(n, kk) * pow(&q, kk) * &scale * moments.moment(r, kk))
                .sum()
        };
        let literal_lhs = move |n: usize, exact_weight: bool| -> Rational {
            weighted_vectors(d, n)
                .into_iter()
                .filter(|(_, wt)| if exact_weight { *wt + r == n } else { true })
                .map(|(ks, wt)| {
                    let kprod: Rational = ks.iter().map(|&ki| factorial(ki)).product();
                    let cprod: Rational = ks.iter().zip(c).map(|(&ki, ci)| pow(ci, ki)).product();
                    factorial(wt) / (kprod * factorial(r)) * cprod
                })
                .sum()
        };
        let candidates = vec![
            Candidate::new(
                "literal, multinomial over n_1 + 2 n_2 + ... <= n",
                move |n| Ok((k(literal_lhs(n, false)), k(literal_rhs(n)))),
            )
            .undefined_if(alpha.is_zero(), "beta/alpha is undefined at alpha = 0"),
            Candidate::new(
                "literal, multinomial over n_1 + 2 n_2 + ... = n - r",
                move |n| Ok((k(literal_lhs(n, true)), k(literal_rhs(n)))),
            )
            .undefined_if(alpha.is_zero(), "beta/alpha is undefined at alpha = 0"),
            Candidate::new(
                "sum over n_1 + 2 n_2 + ... = n - r of n!/(r! prod n_i!) prod (-c_i)^n_i \
                 = <phi_r, R_n>, R the restored ratio expansion",
                move |n| {
                    let lhs: Rational = weighted_vectors(d, n - r)
                        .into_iter()
                        .filter(|(_, wt)| *wt + r == n)
                        .map(|(ks, _)| factorial(n) / factorial(r) * monomial_weight(neg_c, &ks))
                        .sum();
                    let rn = ratio_expansion(alpha, beta, n);
                    Ok((k(lhs), k(moments.apply(r, &rn)?)))
                },
            ),
        ];
        out.push(reconcile(
            id,
            params,
            r,
            order,
            candidates,
            Status::Warning,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn weighted_vector_enumeration() {
        // d = 3: k_1 + 2 k_2 <= 2 -> (0,0) (1,0) (2,0) (0,1)
        let v = weighted_vectors(3, 2);
        assert_eq!(v.len(), 4);
        assert!(v.contains(&(vec![0, 1], 2)));
        assert_eq!(weighted_vectors(1, 5), vec![(vec![], 0)]);
    }

    #[test]
    fn ratio_expansion_matches_oracle() {
        for (a, b) in [
            (int(1), int(-1)),
            (int(2), rat(1, 2)),
            (int(0), int(3)),
            (rat(1, 3), rat(-2, 5)),
        ] {
            let oracle = gf_ratio_power(&a, &b, 5).unwrap().egf_extract();
            for (n, o) in oracle.iter().enumerate() {
                assert_eq!(&ratio_expansion(&a, &b, n), o);
            }
        }
    }

    #[test]
    fn literal_weights_vanish_for_classical_case() {
        for n in 1..5 {
            assert!(ratio_expansion_literal(&int(1), &int(-1), n).is_zero());
        }
    }
}
