//! Hensel standardization of `x^h z - Q(x, y)` and the maps conjugating it
//! to its standard form.

use crate::algebra::{
    BiPoly, LaurentBiPoly, Ring, Scalar, SeriesDirection, SpacePoly, TruncatedSeries, UniPoly,
};
use crate::autos::AffineEndo3;
use crate::error::{Error, Result};
use crate::surfaces::{defining_polynomial, is_danielewski, product_of_roots, StandardForm};

/// `Q = R1 · ∏ (y - σ_i) + x^h R2` with `deg_x R1 < h` and `R1(0, y)` a
/// nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselDecomposition {
    pub h: u32,
    pub q: BiPoly,
    pub r1: BiPoly,
    /// Ordered like the roots of `Q(0, y)` (ascending field order).
    pub sigma: Vec<UniPoly>,
    pub r2: BiPoly,
    pub leading: Scalar,
}

/// Precision schedule for the root lifting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftSchedule {
    /// 1, 2, 4, … (Newton).
    Doubling,
    /// 1, 2, 3, …
    Linear,
}

impl HenselDecomposition {
    pub fn standard_form(&self) -> StandardForm {
        StandardForm {
            h: self.h,
            sigma: self.sigma.clone(),
            field: self.q.field(),
        }
    }

    /// `∏ (y - σ_i)`.
    pub fn p(&self) -> BiPoly {
        product_of_roots(self.q.field(), &self.sigma)
    }

    /// `Q - R1 · P - x^h R2`, zero for a correct decomposition.
    pub fn residual(&self) -> BiPoly {
        self.q
            .sub_ref(&self.r1.mul_ref(&self.p()))
            .sub_ref(&self.r2.mul_x(self.h))
    }
}

pub fn hensel_standardize(h: u32, q: &BiPoly) -> Result<HenselDecomposition> {
    hensel_standardize_with(h, q, LiftSchedule::Doubling)
}

pub fn hensel_standardize_with(
    h: u32,
    q: &BiPoly,
    schedule: LiftSchedule,
) -> Result<HenselDecomposition> {
    let report = is_danielewski(h, q)?;
    let field = q.field();
    let dq = q.partial(1);
    let mut sigma = Vec::with_capacity(report.r);
    for y0 in &report.roots {
        let mut s = UniPoly::constant_poly(y0.clone());
        let mut prec = 1usize;
        while prec < h as usize {
            prec = match schedule {
                LiftSchedule::Doubling => (2 * prec).min(h as usize),
                LiftSchedule::Linear => prec + 1,
            };
            let value = q.eval_y(&s).truncate(prec);
            let slope = dq
                .eval_y(&s)
                .inverse_mod_xpow(prec)
                .expect("simple root has nonzero derivative");
            s = (&s - &(&value * &slope)).truncate(prec);
        }
        let s = s.truncate(h as usize);
        if q.eval_y(&s).div_xpow(h as usize).is_none() {
            return Err(Error::InexactDivision(format!("Q(x, {s}) is not divisible by x^{h}")));
        }
        sigma.push(s);
    }
    let p = product_of_roots(field, &sigma);
    let (quot, _) = q.div_rem_monic_y(&p);
    let r1 = quot.truncate_x(h);
    let r2 = q.sub_ref(&r1.mul_ref(&p)).div_x(h).ok_or_else(|| {
        Error::InexactDivision(format!("Q - R1*P is not divisible by x^{h}"))
    })?;
    let lead_poly = r1.at_x0();
    if lead_poly.degree() != Some(0) {
        return Err(Error::InexactDivision(format!("R1(0, y) = {lead_poly} is not a nonzero constant")));
    }
    Ok(HenselDecomposition {
        h,
        q: q.clone(),
        leading: lead_poly.coeff(0),
        r1,
        sigma,
        r2,
    })
}

/// Φ^s and Φ_s with the Bezout pair `R1 f + x^h g = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationPair {
    /// `(x, y, R1 z + R2)`: standard form → original surface.
    pub phi_up: AffineEndo3,
    /// `(x, y, f z + g P - f R2)`: original surface → standard form.
    pub phi_down: AffineEndo3,
    pub f: BiPoly,
    pub g: BiPoly,
    /// Coordinates of `Φ^s∘Φ_s - id` reduced modulo the original surface.
    pub up_down_residual: [LaurentBiPoly; 3],
    /// Coordinates of `Φ_s∘Φ^s - id` reduced modulo the standard form.
    pub down_up_residual: [LaurentBiPoly; 3],
}

/// Inverse of `R1` modulo `x^h`, from `R1 = λ(1 + xS)`.
pub(crate) fn inverse_mod_xh(r1: &BiPoly, lambda: &Scalar, h: u32) -> BiPoly {
    let field = r1.field();
    let lam_inv = lambda.inv().expect("nonzero leading term");
    let one = BiPoly::one_in(field);
    // t = 1 - R1/λ = -xS
    let t = one.sub_ref(&r1.scale(&lam_inv));
    let mut acc = one.clone();
    let mut pw = one;
    for _ in 1..h {
        pw = pw.mul_ref(&t).truncate_x(h);
        acc = acc.add_ref(&pw);
    }
    acc.scale(&lam_inv).truncate_x(h)
}

pub fn conjugation_pair(d: &HenselDecomposition) -> Result<ConjugationPair> {
    let field = d.q.field();
    let h = d.h;
    let f = inverse_mod_xh(&d.r1, &d.leading, h);
    let g = BiPoly::one_in(field)
        .sub_ref(&d.r1.mul_ref(&f))
        .div_x(h)
        .ok_or_else(|| Error::InexactDivision("1 - R1 f is not divisible by x^h".into()))?;
    let p = d.p();
    let x = SpacePoly::var(field, 0);
    let y = SpacePoly::var(field, 1);
    let z = SpacePoly::z(field);
    let phi_up = AffineEndo3::new(
        x.clone(),
        y.clone(),
        d.r1.to_space().mul_ref(&z).add_ref(&d.r2.to_space()),
    );
    let phi_down = AffineEndo3::new(
        x,
        y,
        f.to_space()
            .mul_ref(&z)
            .add_ref(&g.mul_ref(&p).to_space())
            .sub_ref(&f.mul_ref(&d.r2).to_space()),
    );
    let id = AffineEndo3::identity(field);
    let up_down_residual = phi_up.compose(&phi_down).difference_mod(&id, h, &d.q);
    let down_up_residual = phi_down.compose(&phi_up).difference_mod(&id, h, &p);
    for (k, r) in up_down_residual.iter().chain(down_up_residual.iter()).enumerate() {
        if !r.is_zero() {
            return Err(Error::IdentityFailure {
                equation: k,
                residual: r.to_string(),
            });
        }
    }
    Ok(ConjugationPair {
        phi_up,
        phi_down,
        f,
        g,
        up_down_residual,
        down_up_residual,
    })
}

/// Formal witness that the surface and its standard form are analytically
/// equivalent: `Ψ = (x, y, λe z - x^{-h}(λe - R1)P + R2)` with
/// `e = exp(x f)` truncated at `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloWitness {
    pub lambda: Scalar,
    pub f: BiPoly,
    pub order: u32,
    pub exp_series: TruncatedSeries,
    pub psi: AffineEndo3,
    /// `λ exp(x f) - R1` modulo `x^h`.
    pub congruence_residual: TruncatedSeries,
    /// `Ψ*(x^h z - Q) - λe (x^h z - P)` modulo `x^order`.
    pub residual: TruncatedSeries,
}

pub fn holo_witness(d: &HenselDecomposition, order: u32) -> Result<HoloWitness> {
    let field = d.q.field();
    if field.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic(field.characteristic()));
    }
    if order < d.h {
        return Err(Error::PrecisionTooLow {
            order: order as usize,
            h: d.h,
        });
    }
    let h = d.h;
    let lambda = d.leading.clone();
    let lam_inv = lambda.inv().expect("nonzero leading term");
    let u = TruncatedSeries::new(h, &d.r1.scale(&lam_inv));
    let xf = crate::algebra::series_exp_log(&u, SeriesDirection::Log)?;
    let f = xf
        .coeffs()
        .div_x(1)
        .expect("log of a unit series has no constant term");
    let e = TruncatedSeries::new(order, &f.mul_x(1)).exp()?;
    let lam_e = e.coeffs().scale(&lambda);
    let congruence_residual = TruncatedSeries::new(h, &lam_e.sub_ref(&d.r1));
    let p = d.p();
    let correction = lam_e
        .sub_ref(&d.r1)
        .div_x(h)
        .ok_or_else(|| Error::DivisibilityFailure {
            h,
            context: "λ exp(x f) - R1".into(),
        })?;
    let field_z = SpacePoly::z(field);
    let psi = AffineEndo3::new(
        SpacePoly::var(field, 0),
        SpacePoly::var(field, 1),
        lam_e
            .to_space()
            .mul_ref(&field_z)
            .sub_ref(&correction.mul_ref(&p).to_space())
            .add_ref(&d.r2.to_space()),
    );
    let lhs = psi.pullback(&defining_polynomial(h, &d.q));
    let rhs = lam_e.to_space().mul_ref(&defining_polynomial(h, &p));
    let diff = lhs.sub_ref(&rhs);
    let residual = match diff.to_bipoly() {
        Some(b) => TruncatedSeries::new(order, &b),
        None => {
            return Err(Error::IdentityFailure {
                equation: 0,
                residual: diff.to_string(),
            })
        }
    };
    Ok(HoloWitness {
        lambda,
        f,
        order,
        exp_series: e,
        psi,
        congruence_residual,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_bipoly;
    use crate::algebra::FieldSpec;
    use serde_json::json;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn bp(s: &str) -> BiPoly {
        parse_bipoly(q(), &json!(s)).unwrap()
    }

    fn consts(v: &[i64]) -> Vec<UniPoly> {
        v.iter().map(|&c| UniPoly::from_ints(q(), &[c])).collect()
    }

    #[test]
    fn standardize_one_minus_x() {
        let d = hensel_standardize(2, &bp("(1-x)*(y^2-1)")).unwrap();
        assert_eq!(d.sigma, consts(&[-1, 1]));
        assert_eq!(d.r1, bp("1-x"));
        assert!(d.r2.is_zero());
        assert!(d.residual().is_zero());
    }

    #[test]
    fn standardize_already_standard() {
        let d = hensel_standardize(2, &bp("y^2-y")).unwrap();
        assert_eq!(d.sigma, consts(&[0, 1]));
        assert_eq!(d.r1, bp("1"));
        assert!(d.r2.is_zero());
    }

    #[test]
    fn standardize_with_remainder() {
        let d = hensel_standardize(2, &bp("(1+x)*(y^2-y)+x^2*y")).unwrap();
        assert_eq!(d.sigma, consts(&[0, 1]));
        assert_eq!(d.r1, bp("1+x"));
        assert_eq!(d.r2, bp("y"));
    }

    #[test]
    fn schedules_agree() {
        let poly = bp("(2+x+x^3)*(y-1-x^2)*(y+2+3*x)*(y-x^2) + x^4*y^2");
        let a = hensel_standardize_with(4, &poly, LiftSchedule::Doubling).unwrap();
        let b = hensel_standardize_with(4, &poly, LiftSchedule::Linear).unwrap();
        assert_eq!(a, b);
        assert!(a.residual().is_zero());
        assert!(a.sigma.iter().all(|s| s.degree().unwrap_or(0) < 4));
    }

    #[test]
    fn conjugation_for_one_minus_x() {
        let d = hensel_standardize(2, &bp("(1-x)*(y^2-1)")).unwrap();
        let c = conjugation_pair(&d).unwrap();
        assert_eq!(c.f, bp("1+x"));
        assert_eq!(c.g, bp("1"));
        assert_eq!(c.phi_down.comps[2], crate::algebra::parse::parse_spacepoly(q(), &json!("(1+x)*z+y^2-1")).unwrap());
    }

    #[test]
    fn conjugation_with_remainder() {
        let d = hensel_standardize(2, &bp("(1+x)*(y^2-y)+x^2*y")).unwrap();
        let c = conjugation_pair(&d).unwrap();
        assert_eq!(c.f, bp("1-x"));
        assert_eq!(c.g, bp("1"));
        let want = crate::algebra::parse::parse_spacepoly(q(), &json!("(1-x)*z+(y^2-y)-(1-x)*y")).unwrap();
        assert_eq!(c.phi_down.comps[2], want);
    }

    #[test]
    fn identity_when_standard() {
        let d = hensel_standardize(3, &bp("y^3-y")).unwrap();
        let c = conjugation_pair(&d).unwrap();
        let id = AffineEndo3::identity(q());
        assert_eq!(c.phi_up, id);
        assert_eq!(c.phi_down, id);
    }

    #[test]
    fn holo_witness_examples() {
        let d = hensel_standardize(2, &bp("(1-x)*(y^2-1)")).unwrap();
        let w = holo_witness(&d, 6).unwrap();
        assert!(w.lambda.is_one());
        assert_eq!(w.f, bp("-1"));
        assert!(w.residual.is_zero() && w.congruence_residual.is_zero());
        let d = hensel_standardize(2, &bp("(1+x)*(y^2-y)+x^2*y")).unwrap();
        let w = holo_witness(&d, 8).unwrap();
        assert_eq!(w.f, bp("1"));
        assert!(w.residual.is_zero());
        let d = hensel_standardize(2, &bp("3*(y^2-1)")).unwrap();
        let w = holo_witness(&d, 4).unwrap();
        assert!(w.f.is_zero());
        assert_eq!(w.psi, conjugation_pair(&d).unwrap().phi_up);
        assert!(matches!(holo_witness(&d, 1), Err(Error::PrecisionTooLow { .. })));
    }
}
