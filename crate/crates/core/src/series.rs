//! Truncated formal power series in `t` whose coefficients are polynomials
//! in `x`. Every generating function of the crate is built here, and the
//! closed-form binomial expansions double as independent oracles for the
//! exponent-route constructions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binomial_rational, factorial, from_usize, pow, Rational};

/// Default truncation order for generating functions.
pub const DEFAULT_ORDER: usize = 16;

/// `sum_{n=0}^{order} coeffs[n] t^n`. The truncation order is explicit and
/// binary operations truncate at the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    /// Series with constant (x-free) coefficients.
    pub fn from_scalars(coeffs: Vec<Rational>) -> Self {
        Series::from_coeffs(coeffs.into_iter().map(Poly::constant).collect())
    }

    /// Pads with zeros or truncates to the requested order.
    pub fn with_order(mut self, order: usize) -> Self {
        self.coeffs.resize(order + 1, Poly::zero());
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        }
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn scale_poly(&self, p: &Poly) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(Poly::zero(), |acc, k| {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[k] * &other.coeffs[n - k]
                    }
                })
            })
            .collect();
        Series { coeffs }
    }

    /// `exp(f)` for `f` with zero constant term, from `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut g = Vec::with_capacity(order + 1);
        g.push(Poly::one());
        for n in 1..=order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + (&self.coeffs[k] * &g[n - k]).scale(&from_usize(k));
            }
            g.push(acc.scale(&(Rational::one() / from_usize(n))));
        }
        Ok(Series { coeffs: g })
    }

    /// `log(g)` for `g` with constant term exactly 1.
    pub fn log(&self) -> Result<Series> {
        if self.coeffs[0] != Poly::one() {
            return Err(Error::LogConstantTerm);
        }
        let order = self.order();
        let mut h: Vec<Poly> = Vec::with_capacity(order + 1);
        h.push(Poly::zero());
        for n in 1..=order {
            let mut acc = self.coeffs[n].scale(&from_usize(n));
            for (k, hk) in h.iter().enumerate().take(n).skip(1) {
                acc = acc - (hk * &self.coeffs[n - k]).scale(&from_usize(k));
            }
            h.push(acc.scale(&(Rational::one() / from_usize(n))));
        }
        Ok(Series { coeffs: h })
    }

    /// Splits off the constant term so the remainder can be exponentiated
    /// with `exp(remainder)(0) = 1`. The constant must not depend on `x`.
    pub fn normalize_exponent(&self) -> Result<(Series, Poly)> {
        let constant = self.coeffs[0].clone();
        if let Some(deg) = constant.degree() {
            if deg > 0 {
                return Err(Error::NonConstantExponentTerm(deg));
            }
        }
        let mut rest = self.clone();
        rest.coeffs[0] = Poly::zero();
        Ok((rest, constant))
    }

    /// `P_n = n! [t^n]` for every `n` up to the order.
    pub fn egf_extract(&self) -> Vec<Poly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&factorial(n)))
            .collect()
    }
}

/// `log(1 - c t) = -sum_{n>=1} c^n t^n / n`.
pub fn log1p_scaled(c: &Rational, order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                -pow(c, n) / from_usize(n)
            }
        })
        .collect();
    Series::from_scalars(coeffs)
}

/// `(1 - a t)^e` for a rational exponent `e`, by the binomial series.
pub fn binomial_power(a: &Rational, exponent: &Rational, order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|n| binomial_rational(exponent, n) * pow(&-a, n))
        .collect();
    Series::from_scalars(coeffs)
}

/// `((1 - beta t)/(1 - alpha t))^(x/w)` with `w = alpha - beta`, built as
/// `exp((x/w) [log(1 - beta t) - log(1 - alpha t)])`.
pub fn gf_ratio_power(alpha: &Rational, beta: &Rational, order: usize) -> Result<Series> {
    let w = alpha - beta;
    if w.is_zero() {
        return Err(Error::EqualAlphaBeta);
    }
    let logs = log1p_scaled(beta, order).sub(&log1p_scaled(alpha, order));
    let x_over_w = Poly::monomial(Rational::one() / w, 1);
    logs.scale_poly(&x_over_w).exp()
}

/// `(1 + w s t)^(x/w) = sum_n <x|w>_n (s t)^n / n!`.
pub fn gf_binomial_xw(w: &Rational, sign_scale: &Rational, order: usize) -> Result<Series> {
    if w.is_zero() {
        return Err(Error::ZeroStep);
    }
    let coeffs = (0..=order)
        .map(|n| Poly::falling_factorial(w, n).scale(&(pow(sign_scale, n) / factorial(n))))
        .collect();
    Ok(Series::from_coeffs(coeffs))
}

/// `(1 - beta t)^(x/w)` and `(1 - alpha t)^(-x/w)` from the closed binomial
/// form. Their product is the ratio power; see [`gf_ratio_power`].
pub fn ratio_power_factors(
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<(Series, Series)> {
    let w = alpha - beta;
    if w.is_zero() {
        return Err(Error::EqualAlphaBeta);
    }
    let numerator = gf_binomial_xw(&w, &(-beta / &w), order)?;
    let denominator = gf_binomial_xw(&-&w, &(alpha / &w), order)?;
    Ok((numerator, denominator))
}
