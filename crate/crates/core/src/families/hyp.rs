use num_traits::Zero;

use super::{HypParams, ParamMap};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{factorial, from_usize, is_nonpositive_integer, pochhammer, Rational};

/// Terminating `{p+1}F{q}(-n, upper; lower | x)` as a polynomial of degree
/// at most `n`. Fails if some `(b)_k` with `k <= n` vanishes.
pub fn terminating_hypergeometric(
    n: usize,
    upper: &[Rational],
    lower: &[Rational],
) -> Result<Poly> {
    let minus_n = -from_usize(n);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut num = pochhammer(&minus_n, k);
        for a in upper {
            num *= pochhammer(a, k);
        }
        let mut den = factorial(k);
        for b in lower {
            let pb = pochhammer(b, k);
            if pb.is_zero() {
                return Err(Error::VanishingPochhammer {
                    parameter: b.to_string(),
                    k,
                });
            }
            den *= pb;
        }
        coeffs.push(num / den);
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn shifted(alphas: &[Rational]) -> Vec<Rational> {
    alphas.iter().map(|a| a + from_usize(1)).collect()
}

/// `L_n = 1F_d(-n; alpha_1+1, ..., alpha_d+1 | x)`, normalized to 1 at `x = 0`.
pub fn hyp_laguerre(p: &HypParams, n: usize) -> Result<Poly> {
    terminating_hypergeometric(n, &[], &shifted(p.alphas()))
}

/// `2F_{d+1}(-n, beta+dl+1; alpha_1+1, ..., alpha_d+1, beta+1 | x)`.
pub fn hyp_quasi(p: &HypParams, beta: &Rational, l: usize, n: usize) -> Result<Poly> {
    if is_nonpositive_integer(&(beta + from_usize(1))) {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta} must not be a negative integer"
        )));
    }
    let mut lower = shifted(p.alphas());
    lower.push(beta + from_usize(1));
    let upper = [beta + from_usize(p.d() * l + 1)];
    terminating_hypergeometric(n, &upper, &lower)
}

/// Hypergeometric Laguerre polynomials `L_0..L_N` together with the
/// `(beta, l)` of the quasi-orthogonal family built over them.
#[derive(Clone, Debug)]
pub struct HypFamily {
    pub params: HypParams,
    pub beta: Rational,
    pub l: usize,
    pub p: Vec<Poly>,
}

impl HypFamily {
    pub fn generate(params: HypParams, beta: Rational, l: usize, order: usize) -> Result<Self> {
        let p = (0..=order)
            .map(|n| hyp_laguerre(&params, n))
            .collect::<Result<Vec<_>>>()?;
        HypFamily::from_polys(params, beta, l, p)
    }

    pub fn from_polys(params: HypParams, beta: Rational, l: usize, p: Vec<Poly>) -> Result<Self> {
        if is_nonpositive_integer(&(&beta + from_usize(1))) {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} must not be a negative integer"
            )));
        }
        if p.is_empty() {
            return Err(Error::InsufficientOrder { need: 0, got: 0 });
        }
        for (n, pn) in p.iter().enumerate() {
            if pn.degree() != Some(n) {
                return Err(Error::BadBasis(n));
            }
        }
        Ok(HypFamily { params, beta, l, p })
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }

    /// `P_n^{(alpha, beta)}` for `n <= order`.
    pub fn quasi(&self) -> Result<Vec<Poly>> {
        (0..self.p.len())
            .map(|n| hyp_quasi(&self.params, &self.beta, self.l, n))
            .collect()
    }

    pub fn to_map(&self) -> ParamMap {
        let mut m = self.params.to_map();
        m.insert("beta".into(), self.beta.to_string());
        m.insert("l".into(), self.l.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn laguerre_examples() {
        let p = HypParams::new(vec![int(0), int(0)]).unwrap();
        assert_eq!(hyp_laguerre(&p, 0).unwrap(), Poly::one());
        assert_eq!(hyp_laguerre(&p, 1).unwrap(), Poly::from_ints(&[1, -1]));
        assert_eq!(
            hyp_laguerre(&p, 2).unwrap(),
            Poly::from_coeffs(vec![int(1), int(-2), rat(1, 4)])
        );
    }

    #[test]
    fn quasi_examples() {
        let p = HypParams::new(vec![int(1)]).unwrap();
        assert_eq!(hyp_quasi(&p, &int(0), 1, 0).unwrap(), Poly::one());
        assert_eq!(
            hyp_quasi(&p, &int(0), 1, 1).unwrap(),
            Poly::from_ints(&[1, -1])
        );
        assert!(hyp_quasi(&p, &int(-2), 1, 3).is_err());
    }

    #[test]
    fn quasi_reduces_when_parameters_cancel() {
        // beta + d l = alpha_1 cancels the extra upper/lower pair
        let p = HypParams::new(vec![rat(5, 2), rat(1, 3)]).unwrap();
        let beta = rat(1, 2);
        let reduced = p.with_first(beta.clone()).unwrap();
        for n in 0..6 {
            assert_eq!(
                hyp_quasi(&p, &beta, 1, n).unwrap(),
                hyp_laguerre(&reduced, n).unwrap()
            );
        }
    }

    #[test]
    fn vanishing_denominator() {
        let r = terminating_hypergeometric(3, &[], &[int(-1)]);
        assert!(matches!(r, Err(Error::VanishingPochhammer { k: 2, .. })));
    }
}
