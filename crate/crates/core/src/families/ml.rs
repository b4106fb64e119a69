use num_traits::{One, Zero};

use super::{run_recurrence, MlParams, RecurrenceStep};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binomial, from_usize, Rational};
use crate::series::{gf_ratio_power, Series};

/// One step of the Mittag-Leffler recurrence for `P` (or, with
/// `derivative_sequence`, for `Q_n = Delta_w P_{n+1} / (n+1)`).
///
/// `b` holds `b_0, b_1, ...`; entries past its end are zero. The `P_{n-k}`
/// coefficient `C(n,k) [b_k - (alpha+beta) k b_{k-1} + alpha beta k(k-1) b_{k-2}]`
/// vanishes for `k > d`, so the sum stops at `min(n, d)`.
pub fn ml_step(
    alpha: &Rational,
    beta: &Rational,
    b: &[Rational],
    d: usize,
    n: usize,
    derivative_sequence: bool,
) -> RecurrenceStep {
    let bk = |k: isize| -> Rational {
        if k < 0 {
            Rational::zero()
        } else {
            b.get(k as usize).cloned().unwrap_or_else(Rational::zero)
        }
    };
    let sum_ab = alpha + beta;
    let prod_ab = alpha * beta;
    let nr = from_usize(n);

    let mut shift = &sum_ab * &nr + bk(0);
    if derivative_sequence {
        shift += alpha;
    }

    let mut lower = Vec::new();
    if n >= 1 {
        let m = if derivative_sequence {
            nr.clone()
        } else {
            &nr - Rational::one()
        };
        lower.push(-(&nr * (&m * &prod_ab + &sum_ab * bk(0) - bk(1))));
    }
    for k in 2..=n.min(d) {
        let ki = k as isize;
        let kr = from_usize(k);
        let e = bk(ki) - &sum_ab * &kr * bk(ki - 1)
            + &prod_ab * &kr * (&kr - Rational::one()) * bk(ki - 2);
        lower.push(binomial(n, k) * e);
    }
    RecurrenceStep { shift, lower }
}

/// Runs the Mittag-Leffler recurrence with no `alpha != beta` check, so
/// the `alpha = beta` (Laguerre limit) member can be generated.
pub fn ml_recurrence_raw(
    alpha: &Rational,
    beta: &Rational,
    b: &[Rational],
    d: usize,
    order: usize,
) -> Vec<Poly> {
    run_recurrence(order, |n| ml_step(alpha, beta, b, d, n, false))
}

/// Monic `P_0..P_order` from the recurrence.
pub fn ml_by_recurrence(p: &MlParams, order: usize) -> Vec<Poly> {
    ml_recurrence_raw(p.alpha(), p.beta(), &p.b_vec(), p.d(), order)
}

/// Monic `P_0..P_order` from the generating function
/// `((1 - beta t)/(1 - alpha t))^(x/w) exp(sum_i c_i t^i)`.
pub fn ml_by_gf(p: &MlParams, order: usize) -> Result<Vec<Poly>> {
    let ratio = gf_ratio_power(p.alpha(), p.beta(), order)?;
    let mut exponent = vec![Rational::zero(); order + 1];
    for (i, ci) in p.c().iter().enumerate() {
        if i < order {
            exponent[i + 1] = ci.clone();
        }
    }
    let a_of_t = Series::from_scalars(exponent).exp()?;
    Ok(ratio.mul(&a_of_t).egf_extract())
}

/// `Q_n = Delta_w P_{n+1} / (n+1)` for `n < P.len() - 1`.
pub fn ml_q_sequence(p: &[Poly], w: &Rational) -> Result<Vec<Poly>> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(m, pm)| Ok(pm.delta(w)?.scale(&(Rational::one() / from_usize(m)))))
        .collect()
}

/// A Mittag-Leffler family together with its `Delta_w` image, the unit
/// every identity check works on.
#[derive(Clone, Debug)]
pub struct MlFamily {
    pub params: MlParams,
    pub p: Vec<Poly>,
    pub q: Vec<Poly>,
}

impl MlFamily {
    pub fn generate(params: MlParams, order: usize) -> Result<Self> {
        let p = ml_by_recurrence(&params, order);
        MlFamily::from_polys(params, p)
    }

    /// Wraps an externally supplied `P_0..P_N` (e.g. a parsed table).
    pub fn from_polys(params: MlParams, p: Vec<Poly>) -> Result<Self> {
        check_monic(&p)?;
        let q = ml_q_sequence(&p, &params.w())?;
        Ok(MlFamily { params, p, q })
    }

    /// Highest degree `N` available.
    pub fn order(&self) -> usize {
        self.p.len() - 1
    }
}

pub(crate) fn check_monic(p: &[Poly]) -> Result<()> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn classical() -> MlParams {
        MlParams::new(1, int(1), int(-1), vec![]).unwrap()
    }

    #[test]
    fn classical_recurrence_values() {
        let p = ml_by_recurrence(&classical(), 4);
        assert_eq!(p[3], Poly::from_ints(&[0, 2, 0, 1]));
        assert_eq!(p[4], Poly::from_ints(&[0, 0, 8, 0, 1]));
    }

    #[test]
    fn initial_data() {
        let params = MlParams::new(2, rat(3, 2), int(-2), vec![rat(-1, 2)]).unwrap();
        let p = ml_by_recurrence(&params, 1);
        assert_eq!(p[0], Poly::one());
        assert_eq!(p[1], Poly::from_coeffs(vec![params.b(0), int(1)]));
    }

    #[test]
    fn gf_matches_recurrence_small() {
        let p = ml_by_gf(&classical(), 4).unwrap();
        assert_eq!(p, ml_by_recurrence(&classical(), 4));
        assert_eq!(ml_by_gf(&classical(), 0).unwrap(), vec![Poly::one()]);
    }

    #[test]
    fn q_sequence_examples() {
        let p = ml_by_recurrence(&classical(), 3);
        let q = ml_q_sequence(&p, &int(2)).unwrap();
        assert_eq!(q[0], Poly::one());
        assert_eq!(q[1], Poly::from_ints(&[1, 1]));
        assert_eq!(q[2], Poly::from_ints(&[2, 2, 1]));
    }

    #[test]
    fn charlier_q_equals_p() {
        let params = MlParams::charlier(2, rat(-3, 2), vec![rat(2, 5)]).unwrap();
        let fam = MlFamily::generate(params, 8).unwrap();
        assert_eq!(&fam.q[..], &fam.p[..8]);
    }

    #[test]
    fn from_polys_rejects_non_monic() {
        let bad = vec![Poly::one(), Poly::from_ints(&[0, 2])];
        assert!(matches!(
            MlFamily::from_polys(classical(), bad),
            Err(Error::NotMonic(1))
        ));
    }
}
