use std::collections::BTreeSet;

use crate::algebra::{BiPoly, Ring, Scalar, SpacePoly, UniPoly};
use crate::error::Result;
use crate::surfaces::StandardForm;

use super::AffineEndo3;

/// `P2(ax, y) = μ^r P1(x, μ^{-1} y + τ(x))`, with `alpha[i]` the chart of
/// the second surface matched to chart `i` of the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub a: Scalar,
    pub mu: Scalar,
    pub tau: UniPoly,
    pub alpha: Vec<usize>,
    /// `(ax, μ(y - τ), μ^r a^{-h} z)`, carrying the first surface onto the
    /// second.
    pub map: AffineEndo3,
    /// `P2(ax, y) - μ^r P1(x, μ^{-1} y + τ)`.
    pub residual: BiPoly,
    /// `map*(F2) - μ^r F1`.
    pub pullback_residual: SpacePoly,
}

/// Candidate values of `a`: 1 first, then every root of some constraint
/// `a^k = μ d1_k / d2_k` read off differences of σ-coefficients.
fn scale_candidates(d1: &[UniPoly], d2: &[UniPoly], mu: &Scalar, h: u32) -> Vec<Scalar> {
    let f = mu.field();
    let mut set = BTreeSet::new();
    for u in d1 {
        for v in d2 {
            for k in 1..h as usize {
                let (cu, cv) = (u.coeff(k), v.coeff(k));
                if cu.is_zero() || cv.is_zero() {
                    continue;
                }
                let target = &(mu * &cu) / &cv;
                set.extend(target.kth_roots(k as u32));
            }
        }
    }
    set.remove(&f.one());
    std::iter::once(f.one()).chain(set).collect()
}

fn try_witness(
    s1: &StandardForm,
    s2: &StandardForm,
    j: usize,
    a: &Scalar,
    mu: &Scalar,
) -> Option<IsoWitness> {
    let f = s1.field;
    let h = s1.h;
    let r = s1.r();
    let scaled: Vec<UniPoly> = s2.sigma.iter().map(|p| p.scale_var(a)).collect();
    let shift = scaled[j].sub_ref(&s1.sigma[0].scale(mu));
    let mut alpha = Vec::with_capacity(r);
    for si in &s1.sigma {
        let target = si.scale(mu).add_ref(&shift);
        alpha.push(scaled.iter().position(|p| *p == target)?);
    }
    let tau = shift.scale(&mu.inv()?).neg_ref();
    let mu_r = mu.pow(r as u64);
    let y = BiPoly::y(f);
    let lhs = s2.p().scale_x(a);
    let inner = y.scale(&mu.inv()?).add_ref(&BiPoly::from_x_poly(&tau));
    let residual = lhs.sub_ref(&s1.p().subst_y(&inner).scale(&mu_r));
    if !residual.is_zero() {
        return None;
    }
    let map = AffineEndo3::new(
        SpacePoly::var(f, 0).scale(a),
        SpacePoly::var(f, 1)
            .sub_ref(&BiPoly::from_x_poly(&tau).to_space())
            .scale(mu),
        SpacePoly::z(f).scale(&(&mu_r * &a.powi(-(h as i64)).ok()?)),
    );
    let pullback_residual = map
        .pullback(&s2.defining())
        .sub_ref(&s1.defining().scale(&mu_r));
    if !pullback_residual.is_zero() {
        return None;
    }
    Some(IsoWitness {
        a: a.clone(),
        mu: mu.clone(),
        tau,
        alpha,
        map,
        residual,
        pullback_residual,
    })
}

/// Decides whether two standard forms define isomorphic surfaces and
/// returns the first witness found. Charts of `s1` are processed by
/// ascending constant term; chart 0 is matched against every chart of `s2`
/// in turn, chart 1 likewise, and the scale `a` runs over its finite
/// candidate set.
pub fn iso_decide(s1: &StandardForm, s2: &StandardForm) -> Result<Option<IsoWitness>> {
    if s1.field != s2.field {
        return Err(crate::Error::FieldMismatch(s1.field.to_string(), s2.field.to_string()));
    }
    if s1.h != s2.h || s1.r() != s2.r() {
        return Ok(None);
    }
    let f = s1.field;
    let order = |s: &StandardForm| {
        let mut idx: Vec<usize> = (0..s.r()).collect();
        idx.sort_by(|&i, &j| s.sigma[i].coeff(0).cmp(&s.sigma[j].coeff(0)));
        idx
    };
    let (o1, o2) = (order(s1), order(s2));
    let t1 = StandardForm {
        sigma: o1.iter().map(|&i| s1.sigma[i].clone()).collect(),
        ..s1.clone()
    };
    let t2 = StandardForm {
        sigma: o2.iter().map(|&i| s2.sigma[i].clone()).collect(),
        ..s2.clone()
    };
    let r = t1.r();
    let d1: Vec<UniPoly> = t1.sigma.iter().skip(1).map(|p| p.sub_ref(&t1.sigma[0])).collect();
    for j in 0..r {
        let seconds: Vec<Option<usize>> = if r == 1 {
            vec![None]
        } else {
            (0..r).filter(|&l| l != j).map(Some).collect()
        };
        for l in seconds {
            let mu = match l {
                None => f.one(),
                Some(l) => {
                    let num = &t2.sigma[l].coeff(0) - &t2.sigma[j].coeff(0);
                    let den = &t1.sigma[1].coeff(0) - &t1.sigma[0].coeff(0);
                    &num / &den
                }
            };
            let d2: Vec<UniPoly> = t2.sigma.iter().map(|p| p.sub_ref(&t2.sigma[j])).collect();
            for a in scale_candidates(&d1, &d2, &mu, t1.h) {
                if let Some(mut w) = try_witness(&t1, &t2, j, &a, &mu) {
                    let mut alpha = vec![0; r];
                    for (i, &m) in w.alpha.iter().enumerate() {
                        alpha[o1[i]] = o2[m];
                    }
                    w.alpha = alpha;
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_unipoly;
    use crate::algebra::FieldSpec;
    use serde_json::json;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn form(h: u32, sig: &[&str]) -> StandardForm {
        let sigma = sig.iter().map(|s| parse_unipoly(Q, &json!(s), "x").unwrap()).collect();
        StandardForm::new(Q, h, sigma).unwrap()
    }

    #[test]
    fn self_witness_is_identity() {
        let s = form(3, &["1+x", "-1", "2+x^2"]);
        let w = iso_decide(&s, &s).unwrap().unwrap();
        assert_eq!((w.a, w.mu, w.tau.is_zero()), (Q.one(), Q.one(), true));
        assert_eq!(w.alpha, vec![0, 1, 2]);
    }

    #[test]
    fn affine_rescaling_of_roots() {
        let w = iso_decide(&form(2, &["1", "-1"]), &form(2, &["0", "1"])).unwrap().unwrap();
        assert_eq!(w.a, Q.one());
        assert_eq!(w.mu, Q.frac(1, 2).unwrap());
        assert_eq!(w.tau, UniPoly::constant_poly(Q.int(-1)));
        assert!(w.residual.is_zero() && w.pullback_residual.is_zero());
    }

    #[test]
    fn invariants_reject() {
        assert!(iso_decide(&form(2, &["1", "-1"]), &form(3, &["1", "-1"])).unwrap().is_none());
        assert!(iso_decide(&form(2, &["1", "-1"]), &form(2, &["1", "-1", "0"])).unwrap().is_none());
        // x-dependence cannot be scaled away
        assert!(iso_decide(&form(2, &["0", "1"]), &form(2, &["0", "1+x"])).unwrap().is_none());
    }

    #[test]
    fn scale_recovered() {
        let w = iso_decide(&form(3, &["x", "1"]), &form(3, &["3*x", "1"])).unwrap().unwrap();
        assert!(w.residual.is_zero());
        assert_eq!(w.a, Q.frac(1, 3).unwrap());
    }

    #[test]
    fn single_chart() {
        let w = iso_decide(&form(2, &["1+x"]), &form(2, &["3"])).unwrap().unwrap();
        assert!(w.residual.is_zero());
    }
}
