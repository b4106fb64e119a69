use super::reconcile::{reconcile, Candidate};
use super::{exact_check, Status, VerificationReport, Witness};
use crate::error::Result;
use crate::families::{hyp_laguerre, terminating_hypergeometric, HypFamily};
use crate::orthogonality::quasi_orthogonality_order;
use crate::poly::Poly;
use crate::rational::{
    binomial, falling, from_usize, is_nonpositive_integer, pochhammer, Rational,
};

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k.is_multiple_of(2) { 1 } else { -1 }.into())
}

/// `sum_{k<=min(top,n)} (-1)^k C(top,k) <n>_k (shifted+1)_{n-k} / (beta+1)_n L_{n-k}`.
fn connection_sum(l: &[Poly], top: usize, shifted: &Rational, beta: &Rational, n: usize) -> Poly {
    let nr = from_usize(n);
    let one = from_usize(1);
    let denom = pochhammer(&(beta + &one), n);
    (0..=top.min(n)).fold(Poly::zero(), |acc, k| {
        let c = sign(k) * binomial(top, k) * falling(&nr, k) * pochhammer(&(shifted + &one), n - k)
            / &denom;
        acc + l[n - k].scale(&c)
    })
}

/// The quasi-orthogonal expansion, the general hypergeometric lemma it
/// comes from, and the reduction when a parameter cancels.
pub fn verify_hyp_lincomb(fam: &HypFamily) -> Result<Vec<VerificationReport>> {
    let (hp, beta, l) = (&fam.params, &fam.beta, fam.l);
    let d = hp.d();
    let dl = d * l;
    let order = fam.order();
    let map = fam.to_map();
    let one = from_usize(1);
    let quasi = fam.quasi()?;
    let lp = &fam.p;
    let mut out = Vec::new();

    let top = beta + from_usize(dl);
    out.push(exact_check(
        "hyp-expansion",
        map.clone(),
        0,
        Some(order),
        |n| Ok((quasi[n].clone(), connection_sum(lp, dl, &top, beta, n))),
    )?);

    // pFq(-n, a2+1; lower) = sum_i (-1)^i C(k,i) <n>_i <n+a2-i>_{k-i} / <a2>_k
    //                        pFq(-n+i, a2-k+1; lower), with a2 = beta + dl, k = dl
    let a2 = top.clone();
    let kk = dl;
    let guard = falling(&a2, kk);
    if guard == Rational::from_integer(0.into()) {
        out.push(VerificationReport::not_applicable(
            "hyp-lemma",
            map.clone(),
            (0, order),
            format!("<alpha_2>_k vanishes for alpha_2 = {a2}, k = {kk}"),
        ));
    } else {
        let mut lower: Vec<Rational> = hp.alphas().iter().map(|a| a + &one).collect();
        lower.push(beta + &one);
        let lower = &lower;
        let (up_l, up_r) = ([&a2 + &one], [&a2 - from_usize(kk) + &one]);
        out.push(exact_check(
            "hyp-lemma",
            map.clone(),
            0,
            Some(order),
            |n| {
                let lhs = terminating_hypergeometric(n, &up_l, lower)?;
                let nr = from_usize(n);
                let mut rhs = Poly::zero();
                for i in 0..=kk.min(n) {
                    let c = sign(i)
                        * binomial(kk, i)
                        * falling(&nr, i)
                        * falling(&(&nr + &a2 - from_usize(i)), kk - i)
                        / &guard;
                    rhs = rhs + terminating_hypergeometric(n - i, &up_r, lower)?.scale(&c);
                }
                Ok((lhs, rhs))
            },
        )?);
    }

    // reduction to L^{(beta, alpha_2, ..)} when alpha_1 is tied to beta
    let target_params = hp.with_first(beta.clone())?;
    let target: Vec<Poly> = (0..=order)
        .map(|n| hyp_laguerre(&target_params, n))
        .collect::<Result<_>>()?;
    let tied = |a1: Rational| -> Result<Vec<Poly>> {
        let prm = hp.with_first(a1)?;
        (0..=order).map(|n| hyp_laguerre(&prm, n)).collect()
    };
    let a_dl = beta + from_usize(dl);
    let a_l = beta + from_usize(l);
    let (lt_dl, lt_l) = (tied(a_dl.clone())?, tied(a_l.clone())?);
    let target = &target;
    let candidates = vec![
        Candidate::new(
            "literal: alpha_1 = beta + d l, sum over k <= l with C(l,k)",
            |n| Ok((target[n].clone(), connection_sum(&lt_dl, l, &a_dl, beta, n))),
        ),
        Candidate::new(
            "alpha_1 = beta + d l, sum over k <= d l with C(d l,k)",
            |n| {
                Ok((
                    target[n].clone(),
                    connection_sum(&lt_dl, dl, &a_dl, beta, n),
                ))
            },
        ),
        Candidate::new("alpha_1 = beta + l, sum over k <= l with C(l,k)", |n| {
            Ok((target[n].clone(), connection_sum(&lt_l, l, &a_l, beta, n)))
        }),
    ];
    let mut red = reconcile("hyp-reduction", map, 0, order, candidates, Status::Fail)?;
    red.notes
        .push("alpha_1 of the family is replaced by the tied value".into());
    out.push(red);
    Ok(out)
}

/// `P_n^{(alpha, beta)}` is quasi-orthogonal of order exactly `l` over the
/// hypergeometric Laguerre basis.
pub fn verify_quasi_order(fam: &HypFamily) -> Result<VerificationReport> {
    let quasi = fam.quasi()?;
    let got = quasi_orthogonality_order(&quasi, &fam.p, fam.params.d())?;
    let order = fam.order();
    let mut report = VerificationReport::new("quasi-order", fam.to_map(), (0, order));
    report
        .notes
        .push(format!("order = {}, exact = {}", got.order, got.exact));
    let k = |v: usize| Poly::constant(from_usize(v));
    if got.order != fam.l {
        report = report.fail(Witness {
            n: order,
            expected: k(fam.l),
            actual: k(got.order),
        });
    } else if !got.exact {
        report = report.fail(Witness {
            n: order,
            expected: k(1),
            actual: k(0),
        });
        report
            .notes
            .push("bottom coefficient vanishes for some n".into());
    }
    if is_nonpositive_integer(&(&fam.beta + from_usize(1))) {
        report.notes.push("beta is a negative integer".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::HypParams;
    use crate::rational::{int, rat};

    #[test]
    fn d1_l1_example() {
        let fam = HypFamily::generate(HypParams::new(vec![int(1)]).unwrap(), int(0), 1, 4).unwrap();
        for r in verify_hyp_lincomb(&fam).unwrap() {
            assert!(r.is_pass(), "{r:?}");
        }
        assert!(verify_quasi_order(&fam).unwrap().is_pass());
    }

    #[test]
    fn d2_reduction_pins_full_sum() {
        let hp = HypParams::new(vec![rat(1, 2), rat(3, 4)]).unwrap();
        let fam = HypFamily::generate(hp, rat(1, 3), 1, 6).unwrap();
        let reports = verify_hyp_lincomb(&fam).unwrap();
        assert!(reports.iter().all(|r| r.is_pass()), "{reports:?}");
        assert!(reports[2]
            .convention
            .as_ref()
            .unwrap()
            .contains("d l with C(d l,k)"));
        assert!(verify_quasi_order(&fam).unwrap().is_pass());
    }
}
