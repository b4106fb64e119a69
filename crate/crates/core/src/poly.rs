//! Dense univariate polynomials in `x` over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{binomial, from_usize, latex_rational, parse_rational, pow, Rational};

/// Coefficients are stored ascending by power with no trailing zeros, so
/// the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients, mostly for tests and literals.
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&v| crate::rational::int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Dense coefficients padded with zeros to exactly `len` entries.
    /// Panics if the polynomial does not fit.
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        assert!(self.coeffs.len() <= len, "polynomial longer than {len}");
        let mut v = self.coeffs.clone();
        v.resize(len, Rational::zero());
        v
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `p(x + h)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, h: &Rational) -> Poly {
        if h.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = &c[j + 1] * h;
                c[j] += add;
            }
        }
        Poly::from_coeffs(c)
    }

    /// Forward divided difference `(p(x+w) - p(x)) / w`.
    pub fn delta(&self, w: &Rational) -> Result<Poly> {
        if w.is_zero() {
            return Err(Error::ZeroStep);
        }
        Ok((&self.shift(w) - self).scale(&(Rational::one() / w)))
    }

    /// `k`-fold application of [`Poly::delta`].
    pub fn delta_pow(&self, w: &Rational, k: usize) -> Result<Poly> {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.delta(w)?;
        }
        Ok(p)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * from_usize(k))
                .collect(),
        )
    }

    /// `<x|w>_n = x (x - w) ... (x - (n-1) w)`.
    pub fn falling_factorial(w: &Rational, n: usize) -> Poly {
        Poly::linear_product(n, |j| -(w * from_usize(j)))
    }

    /// `(x|w)_n = x (x + w) ... (x + (n-1) w)`.
    pub fn rising_factorial(w: &Rational, n: usize) -> Poly {
        Poly::linear_product(n, |j| w * from_usize(j))
    }

    /// `prod_{j<n} (x + root_shift(j))`.
    fn linear_product(n: usize, root_shift: impl Fn(usize) -> Rational) -> Poly {
        (0..n).fold(Poly::one(), |acc, j| {
            let factor = Poly::from_coeffs(vec![root_shift(j), Rational::one()]);
            &acc * &factor
        })
    }

    /// Coefficients as `p/q` strings, ascending.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(v: &[S]) -> Result<Poly> {
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn to_latex(&self) -> String {
        self.render(latex_rational, "^{", "}", " ")
    }

    fn render(
        &self,
        fmt_coeff: impl Fn(&Rational) -> String,
        pow_open: &str,
        pow_close: &str,
        times: &str,
    ) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x{pow_open}{k}{pow_close}"),
            };
            if var.is_empty() {
                out.push_str(&fmt_coeff(&mag));
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&fmt_coeff(&mag));
                out.push_str(times);
                out.push_str(&var);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|c| c.to_string(), "^", "", "*");
        f.write_str(&s)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::from_coeffs(c)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `sum_k C(n, k) w^(n-1-k) x^k` for `k < n`: the closed form of
/// `delta(x^n, w)`, kept separate from the shift-based path.
pub fn delta_monomial_closed_form(n: usize, w: &Rational) -> Poly {
    if n == 0 {
        return Poly::zero();
    }
    Poly::from_coeffs((0..n).map(|k| binomial(n, k) * pow(w, n - 1 - k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[3, 0, 2]) + &Poly::zero(), p(&[3, 0, 2]));
        assert_eq!(&p(&[0, 0, 1]) * &p(&[0, 0, 0, 1]), p(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(&p(&[1, 2, 3]) - &p(&[1, 2, 3]), Poly::zero());
        assert!(Poly::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(&int(2)), p(&[4, 4, 1]));
        assert_eq!(p(&[5, 0, 7]).shift(&int(0)), p(&[5, 0, 7]));
        // (x+2)^3 + 2(x+2)
        assert_eq!(p(&[0, 2, 0, 1]).shift(&int(2)), p(&[12, 14, 6, 1]));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(p(&[0, 0, 1]).delta(&int(2)).unwrap(), p(&[2, 2]));
        assert_eq!(Poly::one().delta(&rat(3, 7)).unwrap(), Poly::zero());
        assert_eq!(p(&[0, 2, 0, 1]).delta(&int(2)).unwrap(), p(&[6, 6, 3]));
        assert!(matches!(p(&[0, 1]).delta(&int(0)), Err(Error::ZeroStep)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(Poly::one().derivative(), Poly::zero());
        assert_eq!(p(&[4, 4, 1]).derivative(), p(&[4, 2]));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(Poly::falling_factorial(&rat(5, 3), 0), Poly::one());
        assert_eq!(Poly::falling_factorial(&int(1), 3), p(&[0, 2, -3, 1]));
        assert_eq!(Poly::falling_factorial(&int(2), 2), p(&[0, -2, 1]));
        assert_eq!(Poly::rising_factorial(&int(1), 3), p(&[0, 2, 3, 1]));
        assert_eq!(Poly::rising_factorial(&rat(-4, 9), 1), Poly::x());
        assert_eq!(Poly::rising_factorial(&int(2), 2), p(&[0, 2, 1]));
        assert_eq!(
            Poly::rising_factorial(&int(2), 2),
            Poly::falling_factorial(&int(2), 2).shift(&int(2))
        );
    }

    #[test]
    fn display_and_latex() {
        let q = Poly::from_coeffs(vec![rat(-1, 2), int(0), int(1), int(-3)]);
        assert_eq!(q.to_string(), "-3*x^3 + x^2 - 1/2");
        assert_eq!(q.to_latex(), "-3 x^{3} + x^{2} - \\frac{1}{2}");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn serde_as_strings() {
        let q = Poly::from_coeffs(vec![rat(1, 3), int(0), int(-2)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1/3","0","-2"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn eval_horner() {
        assert_eq!(p(&[1, 2, 3]).eval(&int(2)), int(17));
        assert_eq!(Poly::zero().eval(&int(5)), int(0));
    }
}
