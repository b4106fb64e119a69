use num_traits::Zero;

use super::ml::hahn_report;
use super::{exact_check, VerificationReport};
use crate::error::Result;
use crate::families::{
    laguerre_step, laguerre_type_by_gf, ml_recurrence_raw, LagFamily, LagParams, RecurrenceStep,
};
use crate::poly::Poly;
use crate::rational::{factorial, falling, from_usize, Rational};

fn apply_step(step: &RecurrenceStep, s: &[Poly], n: usize) -> Poly {
    let mut out = s[n].mul_x() + s[n].scale(&step.shift);
    for (j, c) in step.lower.iter().enumerate() {
        out = out + s[n - j - 1].scale(c);
    }
    out
}

pub fn verify_laguerre_routes(fam: &LagFamily) -> Result<VerificationReport> {
    let gf = laguerre_type_by_gf(&fam.params, fam.order())?;
    exact_check("routes", fam.params.to_map(), 0, Some(fam.order()), |n| {
        Ok((gf[n].clone(), fam.p[n].clone()))
    })
}

/// `Q_n = P'_{n+1}/(n+1)` satisfies the recurrence of `P` with `beta_exp`
/// lowered by one.
pub fn verify_laguerre_q_recurrence(fam: &LagFamily) -> Result<VerificationReport> {
    exact_check(
        "q-recurrence",
        fam.params.to_map(),
        0,
        fam.q.len().checked_sub(2),
        |n| {
            let step = laguerre_step(&fam.params, n, true);
            Ok((fam.q[n + 1].clone(), apply_step(&step, &fam.q, n)))
        },
    )
}

pub fn verify_laguerre_hahn(fam: &LagFamily) -> Result<VerificationReport> {
    let a = fam.params.a().clone();
    let a2 = &a * &a;
    hahn_report(
        "hahn",
        fam.params.to_map(),
        &fam.p,
        &fam.q,
        fam.params.d(),
        |n| laguerre_step(&fam.params, n, true),
        |_| -a.clone(),
        |n| from_usize(n) * &a2,
    )
}

/// `x P'_n = n P_n - n (b_1 + a(n + alpha)) P_{n-1}
///  + sum_{i=2}^d (a b_{i-1}/(i-2)! - b_i/(i-1)!) <n>_i P_{n-i}`
/// with `alpha = -(beta_exp + 1)`. Holds only for `theta = 0`.
pub fn verify_laguerre_structure(fam: &LagFamily) -> Result<VerificationReport> {
    let prm = &fam.params;
    let map = prm.to_map();
    if !prm.theta().is_zero() {
        return Ok(VerificationReport::not_applicable(
            "laguerre-structure",
            map,
            (0, fam.order()),
            "requires theta = 0: the derivation treats exp((x t + theta)/(1 - a t)) as a function of x t only",
        ));
    }
    let a = prm.a();
    let alpha = -(prm.beta_exp() + Rational::from_integer(1.into()));
    let p = &fam.p;
    let report = exact_check("laguerre-structure", map, 0, Some(fam.order()), |n| {
        let nr = from_usize(n);
        let lhs = p[n].derivative().mul_x();
        let mut rhs = p[n].scale(&nr);
        if n >= 1 {
            rhs = rhs - p[n - 1].scale(&(&nr * (prm.b(1) + a * (&nr + &alpha))));
        }
        for i in 2..=n.min(prm.d()) {
            let c = a * prm.b(i - 1) / factorial(i - 2) - prm.b(i) / factorial(i - 1);
            rhs = rhs + p[n - i].scale(&(c * falling(&nr, i)));
        }
        Ok((lhs, rhs))
    })?;
    Ok(report.with_note(format!("alpha = -(beta_exp + 1) = {alpha}")))
}

/// The Mittag-Leffler recurrence at `alpha = beta = a` with
/// `c_i = b_i / i!` reproduces the Laguerre generating function with
/// `theta = beta_exp = 0`.
pub fn verify_ml_laguerre_limit(fam: &LagFamily) -> Result<VerificationReport> {
    let prm = &fam.params;
    let d = prm.d();
    let order = fam.order();
    let target = LagParams::new(
        d,
        prm.a().clone(),
        Rational::zero(),
        Rational::zero(),
        prm.b_slice().to_vec(),
    )?;
    let lag = laguerre_type_by_gf(&target, order)?;
    // b_k = (k+1)! c_{k+1} = b^Lag_{k+1}
    let b_ml: Vec<Rational> = (0..d.saturating_sub(1)).map(|k| prm.b(k + 1)).collect();
    let ml = ml_recurrence_raw(prm.a(), prm.a(), &b_ml, d, order);
    let report = exact_check("ml-laguerre-limit", prm.to_map(), 0, Some(order), |n| {
        Ok((lag[n].clone(), ml[n].clone()))
    })?;
    Ok(report.with_note("compared at theta = 0, beta_exp = 0 with the family's a and b"))
}
