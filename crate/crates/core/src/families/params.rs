use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{
    factorial, format_rational_list, from_usize, is_nonpositive_integer, parse_rational,
    parse_rational_list, Rational,
};

/// Parameter name to `p/q` string (lists comma-separated), as embedded in
/// reports and tables.
pub type ParamMap = BTreeMap<String, String>;

fn field<'a>(map: &'a ParamMap, key: &str) -> Result<&'a str> {
    map.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}")))
}

fn field_usize(map: &ParamMap, key: &str) -> Result<usize> {
    let v = field(map, key)?;
    v.trim().parse().map_err(|_| {
        Error::InvalidParameter(format!("{key} must be a non-negative integer, got {v:?}"))
    })
}

fn field_rational(map: &ParamMap, key: &str) -> Result<Rational> {
    parse_rational(field(map, key)?)
}

fn field_list(map: &ParamMap, key: &str) -> Result<Vec<Rational>> {
    map.get(key)
        .map_or(Ok(Vec::new()), |v| parse_rational_list(v))
}

/// Parameters of the Mittag-Leffler type family
/// `K(x,t) = ((1 - beta t)/(1 - alpha t))^(x/w) exp(sum_i c_i t^i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MlParams {
    d: usize,
    alpha: Rational,
    beta: Rational,
    c: Vec<Rational>,
}

impl MlParams {
    /// `c` holds `c_1..c_{d-1}`; missing trailing entries are zero.
    pub fn new(d: usize, alpha: Rational, beta: Rational, mut c: Vec<Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if alpha == beta {
            return Err(Error::EqualAlphaBeta);
        }
        if c.len() > d - 1 {
            return Err(Error::InvalidParameter(format!(
                "c has {} entries but d = {d} allows at most {}",
                c.len(),
                d - 1
            )));
        }
        c.resize(d - 1, Rational::zero());
        Ok(MlParams { d, alpha, beta, c })
    }

    /// The `alpha = 0` (Delta_w-Appell) member.
    pub fn charlier(d: usize, beta: Rational, c: Vec<Rational>) -> Result<Self> {
        MlParams::new(d, Rational::zero(), beta, c)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn w(&self) -> Rational {
        &self.alpha - &self.beta
    }

    /// `lambda_n = n alpha`.
    pub fn lambda(&self, n: usize) -> Rational {
        from_usize(n) * &self.alpha
    }

    /// `b_k = (k+1)! c_{k+1}` for `k <= d-2`, zero beyond.
    pub fn b(&self, k: usize) -> Rational {
        self.c
            .get(k)
            .map(|ck| factorial(k + 1) * ck)
            .unwrap_or_else(Rational::zero)
    }

    /// `b_0..b_{d-2}`.
    pub fn b_vec(&self) -> Vec<Rational> {
        (0..self.d - 1).map(|k| self.b(k)).collect()
    }

    /// Inverse of [`MlParams::to_map`].
    pub fn from_map(map: &ParamMap) -> Result<Self> {
        MlParams::new(
            field_usize(map, "d")?,
            field_rational(map, "alpha")?,
            field_rational(map, "beta")?,
            field_list(map, "c")?,
        )
    }

    pub fn to_map(&self) -> ParamMap {
        let mut m = ParamMap::new();
        m.insert("d".into(), self.d.to_string());
        m.insert("alpha".into(), self.alpha.to_string());
        m.insert("beta".into(), self.beta.to_string());
        m.insert("c".into(), format_rational_list(&self.c));
        m
    }
}

/// Parameters of the Laguerre type family
/// `G(x,t) = (1 - a t)^beta_exp exp((x t + theta)/(1 - a t) + sum_i b_i t^i / i!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagParams {
    d: usize,
    a: Rational,
    beta_exp: Rational,
    theta: Rational,
    b: Vec<Rational>,
}

impl LagParams {
    /// `b` holds `b_0..b_{d-1}`; missing trailing entries are zero.
    pub fn new(
        d: usize,
        a: Rational,
        beta_exp: Rational,
        theta: Rational,
        mut b: Vec<Rational>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if a.is_zero() {
            return Err(Error::InvalidParameter("a must be nonzero".into()));
        }
        if b.len() > d {
            return Err(Error::InvalidParameter(format!(
                "b has {} entries but d = {d} allows at most {d}",
                b.len()
            )));
        }
        b.resize(d, Rational::zero());
        Ok(LagParams {
            d,
            a,
            beta_exp,
            theta,
            b,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn beta_exp(&self) -> &Rational {
        &self.beta_exp
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    /// `b_i`, zero for `i >= d`.
    pub fn b(&self, i: usize) -> Rational {
        self.b.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn b_slice(&self) -> &[Rational] {
        &self.b
    }

    pub fn from_map(map: &ParamMap) -> Result<Self> {
        LagParams::new(
            field_usize(map, "d")?,
            field_rational(map, "a")?,
            field_rational(map, "beta_exp")?,
            field_rational(map, "theta")?,
            field_list(map, "b")?,
        )
    }

    pub fn to_map(&self) -> ParamMap {
        let mut m = ParamMap::new();
        m.insert("d".into(), self.d.to_string());
        m.insert("a".into(), self.a.to_string());
        m.insert("beta_exp".into(), self.beta_exp.to_string());
        m.insert("theta".into(), self.theta.to_string());
        m.insert("b".into(), format_rational_list(&self.b));
        m
    }
}

/// `alpha_1..alpha_d` of the hypergeometric Laguerre d-OPS.
#[derive(Clone, Debug, PartialEq)]
pub struct HypParams {
    alphas: Vec<Rational>,
}

impl HypParams {
    pub fn new(alphas: Vec<Rational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("alphavec must not be empty".into()));
        }
        for (i, a) in alphas.iter().enumerate() {
            if is_nonpositive_integer(&(a + Rational::from_integer(1.into()))) {
                return Err(Error::InvalidParameter(format!(
                    "alpha_{} = {a} must not be a negative integer",
                    i + 1
                )));
            }
        }
        Ok(HypParams { alphas })
    }

    pub fn d(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    /// Same parameters with `alpha_1` replaced.
    pub fn with_first(&self, alpha1: Rational) -> Result<Self> {
        let mut alphas = self.alphas.clone();
        alphas[0] = alpha1;
        HypParams::new(alphas)
    }

    pub fn from_map(map: &ParamMap) -> Result<Self> {
        let p = HypParams::new(field_list(map, "alphavec")?)?;
        if let Some(d) = map.get("d") {
            if d.trim() != p.d().to_string() {
                return Err(Error::InvalidParameter(format!(
                    "d = {d} does not match {} entries of alphavec",
                    p.d()
                )));
            }
        }
        Ok(p)
    }

    pub fn to_map(&self) -> ParamMap {
        let mut m = ParamMap::new();
        m.insert("d".into(), self.d().to_string());
        m.insert("alphavec".into(), format_rational_list(&self.alphas));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn ml_validation() {
        assert!(matches!(
            MlParams::new(1, int(1), int(1), vec![]),
            Err(Error::EqualAlphaBeta)
        ));
        assert!(MlParams::new(0, int(1), int(0), vec![]).is_err());
        assert!(MlParams::new(2, int(1), int(0), vec![int(1), int(2)]).is_err());
        let p = MlParams::new(3, int(2), rat(1, 2), vec![rat(1, 3)]).unwrap();
        assert_eq!(p.c(), &[rat(1, 3), int(0)]);
        assert_eq!(p.w(), rat(3, 2));
        assert_eq!(p.lambda(3), int(6));
    }

    #[test]
    fn b_from_c() {
        let p = MlParams::new(3, int(1), int(-1), vec![rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(p.b(0), rat(1, 2));
        assert_eq!(p.b(1), rat(2, 3));
        assert_eq!(p.b(2), int(0));
        assert_eq!(p.b_vec().len(), 2);
    }

    #[test]
    fn lag_and_hyp_validation() {
        assert!(LagParams::new(1, int(0), int(0), int(0), vec![]).is_err());
        assert!(LagParams::new(1, int(1), int(0), int(0), vec![int(1), int(2)]).is_err());
        assert!(HypParams::new(vec![int(-1)]).is_err());
        assert!(HypParams::new(vec![int(-3)]).is_err());
        assert!(HypParams::new(vec![rat(-1, 2), int(0)]).is_ok());
        assert!(HypParams::new(vec![]).is_err());
    }

    #[test]
    fn map_round_trip() {
        let ml = MlParams::new(3, rat(3, 2), int(-2), vec![rat(-1, 2)]).unwrap();
        assert_eq!(MlParams::from_map(&ml.to_map()).unwrap(), ml);
        let lag = LagParams::new(2, int(2), rat(1, 3), rat(1, 2), vec![int(5)]).unwrap();
        assert_eq!(LagParams::from_map(&lag.to_map()).unwrap(), lag);
        let hyp = HypParams::new(vec![rat(1, 2), rat(3, 4)]).unwrap();
        assert_eq!(HypParams::from_map(&hyp.to_map()).unwrap(), hyp);
        let mut bad = ml.to_map();
        bad.remove("alpha");
        assert!(MlParams::from_map(&bad).is_err());
    }
}
