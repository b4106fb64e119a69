use num_traits::One;

use super::ml::check_monic;
use super::{run_recurrence, LagParams, RecurrenceStep};
use crate::error::Result;
use crate::poly::Poly;
use crate::rational::{factorial, falling, from_usize, pow, Rational};
use crate::series::{binomial_power, Series};

/// One step of the Laguerre type recurrence. The derivative sequence
/// `Q_n = P'_{n+1}/(n+1)` has generating function `G/(1 - a t)`, so its
/// recurrence is the same one with `beta_exp` lowered by one.
pub fn laguerre_step(p: &LagParams, n: usize, derivative_sequence: bool) -> RecurrenceStep {
    let a = p.a();
    let beta = if derivative_sequence {
        p.beta_exp() - Rational::one()
    } else {
        p.beta_exp().clone()
    };
    let nr = from_usize(n);
    let two = from_usize(2);
    let shift = a * (p.theta() - &beta + &two * &nr) + p.b(1);

    let mut lower = Vec::new();
    if n >= 1 {
        let bracket = a * a * (&nr - &beta - Rational::one()) + &two * a * p.b(1) - p.b(2);
        lower.push(-(&nr * bracket));
    }
    for i in 2..=n.min(p.d()) {
        let coef = p.b(i + 1) / factorial(i) - &two * a * p.b(i) / factorial(i - 1)
            + a * a * p.b(i - 1) / factorial(i - 2);
        lower.push(coef * falling(&nr, i));
    }
    RecurrenceStep { shift, lower }
}

pub fn laguerre_type_by_recurrence(p: &LagParams, order: usize) -> Vec<Poly> {
    run_recurrence(order, |n| laguerre_step(p, n, false))
}

/// Builds the exponent `(x t + theta)/(1 - a t) + b_0 + sum_i b_i t^i / i!`,
/// drops its constant `theta + b_0` so that `G(x, 0) = 1`, exponentiates and
/// multiplies by `(1 - a t)^beta_exp`.
pub fn laguerre_type_by_gf(p: &LagParams, order: usize) -> Result<Vec<Poly>> {
    let a = p.a();
    let coeffs = (0..=order)
        .map(|n| {
            let mut c = Poly::constant(p.theta() * pow(a, n) + p.b(n) / factorial(n));
            if n >= 1 {
                c = c + Poly::monomial(pow(a, n - 1), 1);
            }
            c
        })
        .collect();
    let (exponent, _dropped) = Series::from_coeffs(coeffs).normalize_exponent()?;
    let g = exponent.exp()?.mul(&binomial_power(a, p.beta_exp(), order));
    Ok(g.egf_extract())
}

/// `Q_n = P'_{n+1} / (n+1)`.
pub fn laguerre_q_sequence(p: &[Poly]) -> Result<Vec<Poly>> {
    check_monic(p)?;
    Ok(p.iter()
        .enumerate()
        .skip(1)
        .map(|(m, pm)| pm.derivative().scale(&(Rational::one() / from_usize(m))))
        .collect())
}

/// A Laguerre type family with its derivative sequence.
#[derive(Clone, Debug)]
pub struct LagFamily {
    pub params: LagParams,
    pub p: Vec<Poly>,
    pub q: Vec<Poly>,
}

impl LagFamily {
    pub fn generate(params: LagParams, order: usize) -> Result<Self> {
        let p = laguerre_type_by_recurrence(&params, order);
        LagFamily::from_polys(params, p)
    }

    pub fn from_polys(params: LagParams, p: Vec<Poly>) -> Result<Self> {
        let q = laguerre_q_sequence(&p)?;
        Ok(LagFamily { params, p, q })
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }
}
