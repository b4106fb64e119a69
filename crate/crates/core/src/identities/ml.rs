use num_traits::{One, Zero};

use super::reconcile::{reconcile, Candidate};
use super::{exact_check, Status, VerificationReport, Witness};
use crate::error::{Error, Result};
use crate::families::{ml_by_gf, ml_step, MlFamily, RecurrenceStep};
use crate::orthogonality::{fit_recurrence, RecurrenceTable};
use crate::poly::Poly;
use crate::rational::{binomial, falling, from_usize, pow, rat, Rational};

/// Values of the free constant `c` at which c-dependent relations are
/// checked. Both sides are affine in `c`, so three points over-determine.
pub const C_SAMPLES: [(i64, i64); 3] = [(0, 1), (1, 2), (-3, 1)];

fn c_samples() -> Vec<Rational> {
    C_SAMPLES.iter().map(|&(p, q)| rat(p, q)).collect()
}

/// `x + c`.
fn lin(c: Rational) -> Poly {
    Poly::from_coeffs(vec![c, Rational::one()])
}

fn k(v: Rational) -> Poly {
    Poly::constant(v)
}

/// First differing pair, or the last pair when all agree.
fn pick(pairs: Vec<(Poly, Poly)>) -> (Poly, Poly) {
    let mut last = None;
    for (e, a) in pairs {
        if e != a {
            return (e, a);
        }
        last = Some((e, a));
    }
    last.unwrap_or_default()
}

/// `sum_j lower_j S_{n-j}` plus `(x + shift) S_n`.
fn apply_step(step: &RecurrenceStep, s: &[Poly], n: usize) -> Poly {
    let mut out = s[n].mul_x() + s[n].scale(&step.shift);
    for (j, c) in step.lower.iter().enumerate() {
        out = out + s[n - j - 1].scale(c);
    }
    out
}

/// Recurrence construction against the generating function.
pub fn verify_routes(fam: &MlFamily) -> Result<VerificationReport> {
    let gf = ml_by_gf(&fam.params, fam.order())?;
    exact_check("routes", fam.params.to_map(), 0, Some(fam.order()), |n| {
        Ok((gf[n].clone(), fam.p[n].clone()))
    })
}

/// The derivative sequence satisfies its own recurrence (same `b_k`, shift
/// raised by `alpha`, `(n-1) alpha beta` replaced by `n alpha beta`).
pub fn verify_mrrl2(fam: &MlFamily) -> Result<VerificationReport> {
    let p = &fam.params;
    let b = p.b_vec();
    exact_check(
        "q-recurrence",
        p.to_map(),
        0,
        fam.q.len().checked_sub(2),
        |n| {
            let step = ml_step(p.alpha(), p.beta(), &b, p.d(), n, true);
            Ok((fam.q[n + 1].clone(), apply_step(&step, &fam.q, n)))
        },
    )
}

/// Checks a fitted table against a predicted one and against the table of
/// the base sequence under `beta_n -> beta_n + shift_beta(n)`,
/// `g_{n,1} -> g_{n,1} + shift_g1(n)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn hahn_report(
    id: &str,
    params: crate::families::ParamMap,
    p: &[Poly],
    q: &[Poly],
    d: usize,
    predicted: impl Fn(usize) -> RecurrenceStep,
    shift_beta: impl Fn(usize) -> Rational,
    shift_g1: impl Fn(usize) -> Rational,
) -> Result<VerificationReport> {
    if q.len() < d + 2 {
        return Ok(VerificationReport::not_applicable(
            id,
            params,
            (0, q.len().saturating_sub(1)),
            format!("need N >= {}", d + 2),
        ));
    }
    let predicted = RecurrenceTable::from_steps(d, q.len() - 1, predicted);
    let range = (0, q.len() - 2);
    let qfit = match fit_recurrence(q, d) {
        Ok(t) => t,
        Err(Error::NoRecurrence { index, .. }) => {
            let regenerated = predicted.regenerate();
            return Ok(VerificationReport::new(id, params, range)
                .fail(Witness {
                    n: index + 1,
                    expected: regenerated[index + 1].clone(),
                    actual: q[index + 1].clone(),
                })
                .with_note(format!(
                    "derivative sequence has no {}-term recurrence",
                    d + 2
                )));
        }
        Err(e) => return Err(e),
    };
    let pfit = fit_recurrence(&p[..q.len()], d)?;
    exact_check(id, params, 0, Some(range.1), |n| {
        let mut pairs = vec![
            (
                k(predicted.beta(n).unwrap().clone()),
                k(qfit.beta(n).unwrap().clone()),
            ),
            (
                k(pfit.beta(n).unwrap() + shift_beta(n)),
                k(qfit.beta(n).unwrap().clone()),
            ),
        ];
        for j in 1..=d {
            let base = pfit.g(n, j).unwrap();
            let expected_from_p = if j == 1 { base + shift_g1(n) } else { base };
            let fitted = qfit.g(n, j).unwrap();
            pairs.push((k(predicted.g(n, j).unwrap()), k(fitted.clone())));
            if j <= n {
                pairs.push((k(expected_from_p), k(fitted)));
            }
        }
        Ok(pick(pairs))
    })
}

/// Hahn property: the fitted recurrence of `Q` equals the predicted one,
/// and differs from the fit of `P` by the predicted coefficient shift.
pub fn verify_hahn(fam: &MlFamily) -> Result<VerificationReport> {
    let p = &fam.params;
    let b = p.b_vec();
    let (alpha, beta) = (p.alpha().clone(), p.beta().clone());
    let ab = &alpha * &beta;
    hahn_report(
        "hahn",
        p.to_map(),
        &fam.p,
        &fam.q,
        p.d(),
        |n| ml_step(p.alpha(), p.beta(), &b, p.d(), n, true),
        |_| -alpha.clone(),
        |n| from_usize(n) * &ab,
    )
}

/// `P_n = Q_n - lambda_n Q_{n-1}` with `lambda_n = n alpha`.
pub fn verify_nccd(fam: &MlFamily) -> Result<VerificationReport> {
    let p = &fam.params;
    exact_check(
        "connection",
        p.to_map(),
        0,
        fam.q.len().checked_sub(1),
        |n| {
            let mut rhs = fam.q[n].clone();
            if n > 0 {
                rhs = rhs - fam.q[n - 1].scale(&p.lambda(n));
            }
            Ok((fam.p[n].clone(), rhs))
        },
    )
}

/// The shift relations, the product difference in both forms and the
/// c-structure relation; one report each.
pub fn verify_sr_block(fam: &MlFamily) -> Result<Vec<VerificationReport>> {
    let prm = &fam.params;
    let (alpha, beta, w) = (prm.alpha(), prm.beta(), prm.w());
    let (p, q) = (&fam.p, &fam.q);
    let top = q.len().checked_sub(1);
    let map = prm.to_map();
    let nr = |n: usize| from_usize(n);
    let mut out = Vec::new();

    out.push(exact_check("shift-q", map.clone(), 0, top, |n| {
        let mut rhs = q[n].clone();
        if n > 0 {
            rhs = rhs - q[n - 1].scale(&(nr(n) * beta));
        }
        Ok((p[n].shift(&w), rhs))
    })?);

    out.push(exact_check("shift-p", map.clone(), 0, top, |n| {
        let (mut lhs, mut rhs) = (p[n].clone(), p[n].shift(&w));
        if n > 0 {
            lhs = lhs - p[n - 1].scale(&(nr(n) * beta));
            rhs = rhs - p[n - 1].shift(&w).scale(&(nr(n) * alpha));
        }
        Ok((lhs, rhs))
    })?);

    out.push(exact_check("q-from-shifts", map.clone(), 0, top, |n| {
        Ok((
            q[n].scale(&w),
            p[n].shift(&w).scale(alpha) - p[n].scale(beta),
        ))
    })?);

    out.push(exact_check(
        "product-difference",
        map.clone(),
        0,
        top,
        |n| {
            let lhs = (&p[n + 1] * &p[n]).delta(&w)?;
            let mut rhs = (p[n].shift(&w) * &q[n]).scale(&nr(n + 1));
            if n > 0 {
                rhs = rhs + (&p[n + 1] * &q[n - 1]).scale(&nr(n));
            }
            Ok((lhs, rhs))
        },
    )?);

    out.push(exact_check(
        "product-difference-q",
        map.clone(),
        0,
        top,
        |n| {
            let lhs = (&p[n + 1] * &p[n]).delta(&w)?;
            let mut rhs = (&q[n] * &q[n]).scale(&nr(n + 1));
            if n > 0 {
                rhs = rhs + (&p[n + 1] * &q[n - 1]).scale(&nr(n))
                    - (&q[n] * &q[n - 1]).scale(&(nr(n) * nr(n + 1) * beta));
            }
            Ok((lhs, rhs))
        },
    )?);

    // (x - c) Q_n = P_{n+1} - (c + b_0 + beta n) P_n - sum_i C(n,i) s_i P_{n-i}
    let d = prm.d();
    let sum_term = move |n: usize, flipped: bool| -> Poly {
        let mut acc = Poly::zero();
        for i in 1..=n.min(d - 1) {
            let literal = beta * from_usize(i) * prm.b(i - 1) - prm.b(i);
            let coef = if flipped { -literal } else { literal };
            acc = acc + p[n - i].scale(&(binomial(n, i) * coef));
        }
        acc
    };
    let structure_c = move |flipped: bool, corrected: bool| {
        move |n: usize| -> Result<(Poly, Poly)> {
            let pairs = c_samples()
                .into_iter()
                .map(|c| {
                    let lhs = &lin(-c.clone()) * &q[n];
                    let mut rhs = &p[n + 1]
                        - &p[n].scale(&(&c + prm.b(0) + beta * from_usize(n)))
                        - sum_term(n, flipped);
                    if corrected && n > 0 {
                        rhs = rhs - q[n - 1].scale(&(&c * prm.lambda(n)));
                    }
                    (lhs, rhs)
                })
                .collect();
            Ok(pick(pairs))
        }
    };
    let candidates = vec![
        Candidate::new("literal", structure_c(false, false)),
        Candidate::new(
            "sum coefficients C(n,i)(b_i - beta i b_{i-1})",
            structure_c(true, false),
        ),
        Candidate::new(
            "sum coefficients C(n,i)(b_i - beta i b_{i-1}), extra term -c lambda_n Q_{n-1}",
            structure_c(true, true),
        ),
    ];
    out.push(match top {
        Some(top) => reconcile("structure-c", map, 0, top, candidates, Status::Fail)?,
        None => VerificationReport::not_applicable("structure-c", map, (0, 0), "need N >= 1"),
    });
    Ok(out)
}

/// The general structure relation, with `xi` and `eta` read from the fitted
/// recurrence of `Q`, in its direct and its `lambda_n`-scaled form.
pub fn verify_sr2_general(fam: &MlFamily) -> Result<Vec<VerificationReport>> {
    let prm = &fam.params;
    let d = prm.d();
    let map = prm.to_map();
    let ids = ["structure-general", "structure-general-scaled"];
    let na = |why: &str| -> Vec<VerificationReport> {
        ids.iter()
            .map(|id| {
                VerificationReport::not_applicable(
                    *id,
                    map.clone(),
                    (d + 1, fam.order().saturating_sub(1)),
                    why,
                )
            })
            .collect()
    };
    if d < 2 {
        return Ok(na("requires d >= 2"));
    }
    if prm.alpha().is_zero() {
        return Ok(na("lambda_n = n alpha vanishes at alpha = 0"));
    }
    let (p, q) = (&fam.p, &fam.q);
    if q.len() < d + 2 {
        return Ok(na(&format!("need N >= {}", d + 2)));
    }
    let qfit = fit_recurrence(q, d)?;
    let qfit = &qfit;
    let lam = |n: usize| prm.lambda(n);
    let n_max = q.len() - 1;

    // sum_{i=2}^d sum_{j=i}^d eta^{d-j}_{n-j} / (lambda_{n-i} ... lambda_{n-j}) P_{n-i}
    let double_sum = move |n: usize| -> Poly {
        let mut acc = Poly::zero();
        for i in 2..=d {
            for j in i..=d {
                let eta = qfit.gamma(d - j, n - j).unwrap_or_else(Rational::zero);
                let prod: Rational = (n - j..=n - i).map(lam).product();
                acc = acc + p[n - i].scale(&(eta / prod));
            }
        }
        acc
    };
    let direct = move |corrected: bool| {
        move |n: usize| -> Result<(Poly, Poly)> {
            let xi = qfit.beta(n - 1).unwrap();
            let pairs = c_samples()
                .into_iter()
                .map(|c| {
                    let lhs = &lin(-c.clone()) * &q[n - 1];
                    let mut rhs = &p[n] + &p[n - 1].scale(&(lam(n) + xi - &c)) - double_sum(n);
                    if corrected {
                        rhs = rhs - q[n - 2].scale(&(&c * lam(n - 1)));
                    }
                    (lhs, rhs)
                })
                .collect();
            Ok(pick(pairs))
        }
    };
    let scaled = move |corrected: bool| {
        move |n: usize| -> Result<(Poly, Poly)> {
            let xi = qfit.beta(n - 1).unwrap();
            let ln = lam(n);
            let pairs = c_samples()
                .into_iter()
                .map(|c| {
                    let lhs = &lin(-c.clone()) * &q[n];
                    let mut rhs = &lin(&ln - &c) * &p[n] + p[n - 1].scale(&(&ln * (&ln + xi - &c)))
                        - double_sum(n).scale(&ln);
                    if corrected {
                        rhs = rhs - q[n - 2].scale(&(&c * &ln * lam(n - 1)));
                    }
                    (lhs, rhs)
                })
                .collect();
            Ok(pick(pairs))
        }
    };
    let first = reconcile(
        ids[0],
        map.clone(),
        d + 1,
        n_max,
        vec![
            Candidate::new("literal", direct(false)),
            Candidate::new("extra term -c lambda_{n-1} Q_{n-2}", direct(true)),
        ],
        Status::Fail,
    )?;
    let second = reconcile(
        ids[1],
        map,
        d + 1,
        n_max,
        vec![
            Candidate::new("literal", scaled(false)),
            Candidate::new("extra term -c lambda_n lambda_{n-1} Q_{n-2}", scaled(true)),
        ],
        Status::Fail,
    )?;
    Ok(vec![first, second])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeWhich {
    /// The order-`k` relation between `P_{n-k+1}` and `Delta^i P_{n-k}`.
    De1(usize),
    /// The `(d+1)`-order difference equation.
    De2,
}

/// Difference equations assembled from the fitted recurrence of `P`.
pub fn verify_de(fam: &MlFamily, which: DeWhich) -> Result<VerificationReport> {
    let prm = &fam.params;
    let d = prm.d();
    let id = match which {
        DeWhich::De1(k) => format!("difference-eq[k={k}]"),
        DeWhich::De2 => "difference-eq-full".to_string(),
    };
    let map = prm.to_map();
    let order = fam.order();
    if order < d + 1 {
        return Ok(VerificationReport::not_applicable(
            id,
            map,
            (0, order),
            format!("need N >= {}", d + 1),
        ));
    }
    let pfit = fit_recurrence(&fam.p, d)?;
    let g = |n: usize, j: usize| pfit.g(n, j).unwrap_or_else(Rational::zero);
    let (alpha, w) = (prm.alpha(), prm.w());
    let p = &fam.p;
    let dp = |poly: &Poly, i: usize| poly.delta_pow(&w, i);
    let nr = |n: usize| from_usize(n);

    // inner sum_{j<i} C(kk-1-j, i-1-j) alpha^(i-1-j) gamma^{d-1-j}_{n-j} / <n>_{j+1}
    let inner = |kk: usize, i: usize, n: usize| -> Rational {
        (0..i)
            .map(|j| {
                binomial(kk - 1 - j, i - 1 - j) * pow(alpha, i - 1 - j) * g(n, j + 1)
                    / falling(&nr(n), j + 1)
            })
            .sum()
    };

    match which {
        DeWhich::De1(kk) => {
            if kk > d {
                return Err(Error::InvalidParameter(format!("k = {kk} exceeds d = {d}")));
            }
            let kr = nr(kk);
            exact_check(id, map, kk, Some(order - 1), |n| {
                let beta_n = pfit.beta(n).unwrap();
                let base = &p[n - kk];
                let mut rhs = &lin(&kr * &w - &kr * alpha * nr(n - kk + 2) - beta_n) * base;
                for i in 1..=kk {
                    let xi = lin(&kr * &w + alpha - beta_n).scale(&binomial(kk, i))
                        - k(alpha * binomial(kk + 1, i + 1) * nr(n - kk + i + 2));
                    let coef = xi.scale(&pow(alpha, i)) - k(inner(kk, i, n));
                    rhs = rhs + &coef * &dp(base, i)?;
                }
                for i in kk..d {
                    if n < i + 1 {
                        continue;
                    }
                    let c = g(n, i + 1) / falling(&nr(n), kk);
                    rhs = rhs - dp(&p[n - i - 1], kk)?.scale(&c);
                }
                Ok((p[n - kk + 1].clone(), rhs))
            })
        }
        DeWhich::De2 => {
            let d1 = nr(d + 1);
            exact_check(id, map, d, Some(order - 1), |n| {
                let beta_n = pfit.beta(n).unwrap();
                let base = &p[n - d];
                let mut rhs = &lin(&d1 * &w - &d1 * alpha * nr(n - d + 1) - beta_n) * &dp(base, 1)?;
                for i in 1..=d {
                    let xi = lin(&d1 * &w - beta_n).scale(&binomial(d, i))
                        - k(alpha * binomial(d + 1, i + 1) * nr(n - d + i + 1));
                    let coef = xi.scale(&pow(alpha, i)) - k(inner(d, i, n));
                    rhs = rhs + &coef * &dp(base, i + 1)?;
                }
                Ok((base.scale(&nr(n - d)), rhs))
            })
        }
    }
}

/// Every admissible `k` of the order-`k` relation followed by the full
/// difference equation.
pub fn verify_de_all(fam: &MlFamily) -> Result<Vec<VerificationReport>> {
    let mut out: Vec<_> = (0..=fam.params.d())
        .map(|kk| verify_de(fam, DeWhich::De1(kk)))
        .collect::<Result<_>>()?;
    out.push(verify_de(fam, DeWhich::De2)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::MlParams;
    use crate::rational::int;

    fn fam(d: usize, a: Rational, b: Rational, c: Vec<Rational>, n: usize) -> MlFamily {
        MlFamily::generate(MlParams::new(d, a, b, c).unwrap(), n).unwrap()
    }

    #[test]
    fn classical_small_checks() {
        let f = fam(1, int(1), int(-1), vec![], 6);
        assert!(verify_routes(&f).unwrap().is_pass());
        assert!(verify_mrrl2(&f).unwrap().is_pass());
        assert!(verify_nccd(&f).unwrap().is_pass());
        for r in verify_sr_block(&f).unwrap() {
            assert!(r.is_pass(), "{r:?}");
            if r.id != "structure-c" {
                assert!(r.convention.as_deref().is_none_or(|c| c == "literal"));
            }
        }
        for r in verify_de_all(&f).unwrap() {
            assert!(r.is_pass(), "{r:?}");
        }
    }

    #[test]
    fn regular_d2_structure() {
        let f = fam(2, int(1), int(-1), vec![int(1)], 9);
        for r in verify_sr2_general(&f).unwrap() {
            assert!(r.is_pass(), "{r:?}");
        }
        let structure_c = verify_sr_block(&f).unwrap().pop().unwrap();
        assert!(structure_c.is_pass());
        assert!(structure_c.convention.unwrap().contains("extra term"));
        assert!(verify_hahn(&f).unwrap().is_pass());
    }

    #[test]
    fn general_structure_not_applicable() {
        let charlier = fam(2, int(0), int(-1), vec![int(1)], 6);
        let r = verify_sr2_general(&charlier).unwrap();
        assert!(r.iter().all(|r| r.status == Status::NotApplicable));
        let d1 = fam(1, int(1), int(-1), vec![], 6);
        assert!(verify_sr2_general(&d1).unwrap()[0].status == Status::NotApplicable);
    }

    #[test]
    fn corrupted_family_fails_with_witness() {
        let mut f = fam(1, int(1), int(-1), vec![], 5);
        f.p[3] = Poly::from_ints(&[0, 3, 0, 1]);
        let r = verify_routes(&f).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap().n, 3);
    }
}
