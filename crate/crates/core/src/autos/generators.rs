use crate::algebra::{reduce_mod_surface, BiPoly, FieldSpec, Ring, Scalar, SpacePoly, UniPoly};
use crate::error::{Error, Result};
use crate::surfaces::StandardForm;

use super::AffineEndo3;

/// Witness for the twisted scalings `H̃_a`: `σ_i - τ` only involves powers
/// of `x^{q0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWitness {
    pub tau: UniPoly,
    pub q0: u32,
    /// Every admissible `a ≠ 1`, with the period it uses and the matching τ.
    pub scalings: Vec<(Scalar, u32, UniPoly)>,
}

/// `μ (σ - τ) = σ - τ` as multisets, `μ` of order `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationWitness {
    pub tau: UniPoly,
    pub s: u64,
    pub i: u32,
    pub mu: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub always_a: bool,
    pub b_witness: Option<UniPoly>,
    pub c_witness: Option<CyclicWitness>,
    pub d_witness: Option<RotationWitness>,
    pub e_witness: Option<UniPoly>,
    pub f_flag: bool,
    /// Sample automorphisms of each present type, all checked to preserve
    /// the surface.
    pub samples: Vec<(String, AffineEndo3)>,
    pub notes: Vec<String>,
}

fn sorted(v: impl IntoIterator<Item = UniPoly>) -> Vec<UniPoly> {
    let mut v: Vec<_> = v.into_iter().collect();
    v.sort();
    v
}

/// `P(x, y + τ)`.
fn shifted(p: &BiPoly, tau: &UniPoly) -> BiPoly {
    p.subst_y(&BiPoly::y(p.field()).add_ref(&BiPoly::from_x_poly(tau)))
}

fn identity_failure(what: &str, p: &BiPoly) -> Error {
    Error::IdentityFailure {
        equation: 0,
        residual: format!("{what}: {p}"),
    }
}

/// Common non-constant part of all σ_i, if there is one.
fn common_tail(s: &StandardForm) -> Option<UniPoly> {
    let tail = |p: &UniPoly| p.sub_ref(&UniPoly::constant_poly(p.coeff(0)));
    let t0 = tail(&s.sigma[0]);
    s.sigma.iter().all(|p| tail(p) == t0).then_some(t0)
}

/// τ for period q: the shared coefficients at exponents not divisible by q.
fn periodic_tau(s: &StandardForm, q: u32) -> Option<UniPoly> {
    let f = s.field;
    let mut coeffs = vec![f.zero(); s.h as usize];
    for k in 1..s.h as usize {
        if k % q as usize == 0 {
            continue;
        }
        let c = s.sigma[0].coeff(k);
        if s.sigma.iter().any(|p| p.coeff(k) != c) {
            return None;
        }
        coeffs[k] = c;
    }
    Some(UniPoly::new(f, coeffs))
}

fn cyclic_witness(s: &StandardForm) -> Option<CyclicWitness> {
    let periods: Vec<(u32, UniPoly)> = (2..s.h)
        .filter_map(|q| periodic_tau(s, q).map(|t| (q, t)))
        .collect();
    let (q0, tau) = periods.first().cloned()?;
    let mut scalings = Vec::new();
    for a in s.field.nontrivial_roots_of_unity() {
        if let Some((q, t)) = periods.iter().find(|(q, _)| a.pow(*q as u64).is_one()) {
            scalings.push((a, *q, t.clone()));
        }
    }
    Some(CyclicWitness { tau, q0, scalings })
}

fn rotation_witness(s: &StandardForm) -> Option<RotationWitness> {
    let f = s.field;
    let bound = match f {
        FieldSpec::Rationals => 2,
        FieldSpec::Prime(p) => p - 1,
    };
    let mut best: Option<RotationWitness> = None;
    for mu in f.nontrivial_roots_of_unity() {
        let order = mu.order(bound).expect("root of unity");
        if best.as_ref().is_some_and(|b| b.s >= order) {
            continue;
        }
        let inv = (&f.one() - &mu).inv().expect("mu != 1");
        for sj in &s.sigma {
            let tau = sj.sub_ref(&s.sigma[0].scale(&mu)).scale(&inv);
            let centered = sorted(s.sigma.iter().map(|p| p.sub_ref(&tau)));
            let turned = sorted(centered.iter().map(|p| p.scale(&mu)));
            if centered == turned {
                let i = s.sigma.contains(&tau) as u32;
                best = Some(RotationWitness { tau, s: order, i, mu: mu.clone() });
                break;
            }
        }
    }
    best
}

fn translation_witness(s: &StandardForm) -> Option<UniPoly> {
    if s.field.characteristic() == 0 {
        return None;
    }
    let base = sorted(s.sigma.iter().cloned());
    base.iter().skip(1).find_map(|sj| {
        let c = sj.sub_ref(&base[0]);
        (sorted(base.iter().map(|p| p.add_ref(&c))) == base).then_some(c)
    })
}

/// Expands `P` in powers of `R = y^p - c^{p-1} y` and checks every
/// coefficient is free of y.
fn check_additive_shape(p_poly: &BiPoly, c: &UniPoly, char_p: u64) -> Result<()> {
    let f = p_poly.field();
    let y = BiPoly::y(f);
    let cp = BiPoly::from_x_poly(&c.pow(char_p as u32 - 1));
    let r = y.pow(char_p as u32).sub_ref(&cp.mul_ref(&y));
    let mut rest = p_poly.clone();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem_monic_y(&r);
        if rem.deg_y().unwrap_or(0) > 0 {
            return Err(identity_failure("P is not a polynomial in y^p - c^(p-1) y", &rem));
        }
        rest = quot;
    }
    Ok(())
}

fn scaling(f: FieldSpec, h: u32, a: &Scalar, tau: &UniPoly) -> Result<AffineEndo3> {
    let shift = tau.scale_var(a).sub_ref(tau);
    Ok(AffineEndo3::new(
        SpacePoly::var(f, 0).scale(a),
        SpacePoly::var(f, 1).add_ref(&BiPoly::from_x_poly(&shift).to_space()),
        SpacePoly::z(f).scale(&a.powi(-(h as i64))?),
    ))
}

/// `Δ_b = (x, y + x^h b, z + x^{-h}(P(x, y + x^h b) - P))`.
pub fn delta(h: u32, p: &BiPoly, b: &UniPoly) -> Result<AffineEndo3> {
    let f = p.field();
    let step = BiPoly::from_x_poly(&b.mul_xpow(h as usize));
    let moved = p.subst_y(&BiPoly::y(f).add_ref(&step));
    let corr = moved.sub_ref(p).div_x(h).ok_or_else(|| Error::DivisibilityFailure {
        h,
        context: "P(x, y + x^h b) - P".into(),
    })?;
    Ok(AffineEndo3::new(
        SpacePoly::var(f, 0),
        SpacePoly::var(f, 1).add_ref(&step.to_space()),
        SpacePoly::z(f).add_ref(&corr.to_space()),
    ))
}

pub fn classify_generators(s: &StandardForm) -> Result<GeneratorReport> {
    let f = s.field;
    let h = s.h;
    let p = s.p();
    let mut samples = vec![("delta_1".to_string(), delta(h, &p, &UniPoly::one(f))?)];
    let mut notes = Vec::new();

    let b_witness = common_tail(s);
    if let Some(tau) = &b_witness {
        if !shifted(&p, tau).is_free_of_x() {
            return Err(identity_failure("P(x, y + tau) depends on x", &shifted(&p, tau)));
        }
        let a = match f {
            FieldSpec::Rationals => Some(f.int(2)),
            FieldSpec::Prime(q) => (q > 2).then(|| f.int(2)),
        };
        if let Some(a) = a {
            samples.push((format!("H_{a}"), scaling(f, h, &a, tau)?));
        }
    }

    let c_witness = cyclic_witness(s);
    if let Some(w) = &c_witness {
        let sh = shifted(&p, &w.tau);
        if sh.terms().any(|(e, _)| e[0] % w.q0 != 0) {
            return Err(identity_failure("P(x, y + tau) is not a polynomial in x^q0", &sh));
        }
        for (a, _, tau) in &w.scalings {
            samples.push((format!("H~_{a}"), scaling(f, h, a, tau)?));
        }
    }

    let d_witness = rotation_witness(s);
    if let Some(w) = &d_witness {
        let sh = shifted(&p, &w.tau);
        if sh.terms().any(|(e, _)| (e[1] as u64) % w.s != w.i as u64) {
            return Err(identity_failure("P(x, y + tau) is not y^i P~(x, y^s)", &sh));
        }
        let one_minus = &f.one() - &w.mu;
        samples.push((
            format!("S_{}", w.mu),
            AffineEndo3::new(
                SpacePoly::var(f, 0),
                SpacePoly::var(f, 1)
                    .scale(&w.mu)
                    .add_ref(&BiPoly::from_x_poly(&w.tau.scale(&one_minus)).to_space()),
                SpacePoly::z(f).scale(&w.mu.pow(w.i as u64)),
            ),
        ));
    }

    let e_witness = translation_witness(s);
    if let Some(c) = &e_witness {
        check_additive_shape(&p, c, f.characteristic())?;
        samples.push((
            "T_c".to_string(),
            AffineEndo3::new(
                SpacePoly::var(f, 0),
                SpacePoly::var(f, 1).add_ref(&BiPoly::from_x_poly(c).to_space()),
                SpacePoly::z(f),
            ),
        ));
    }

    let f_flag = h == 1;
    if f_flag {
        samples.push((
            "I".to_string(),
            AffineEndo3::new(SpacePoly::z(f), SpacePoly::var(f, 1), SpacePoly::var(f, 0)),
        ));
    }

    let defining = s.defining();
    for (name, g) in &samples {
        let red = reduce_mod_surface(&g.pullback(&defining), h, &p);
        if !red.is_zero() {
            return Err(identity_failure(&format!("{name} does not preserve the surface"), &red.to_poly().unwrap_or_else(|| BiPoly::zero(f))));
        }
    }

    let char_p = f.characteristic() as usize;
    if char_p != 0 && s.r() % char_p == 0 {
        notes.push(format!(
            "characteristic {char_p} divides r = {}; the list is not claimed to generate",
            s.r()
        ));
    }

    Ok(GeneratorReport {
        always_a: true,
        b_witness,
        c_witness,
        d_witness,
        e_witness,
        f_flag,
        samples,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_unipoly;
    use serde_json::json;

    fn form(f: FieldSpec, h: u32, sig: &[&str]) -> StandardForm {
        let sigma = sig.iter().map(|s| parse_unipoly(f, &json!(s), "x").unwrap()).collect();
        StandardForm::new(f, h, sigma).unwrap()
    }

    fn up(f: FieldSpec, s: &str) -> UniPoly {
        parse_unipoly(f, &json!(s), "x").unwrap()
    }

    #[test]
    fn constant_roots_over_q() {
        let q = FieldSpec::Rationals;
        let rep = classify_generators(&form(q, 2, &["1", "-1", "2"])).unwrap();
        assert_eq!(rep.b_witness, Some(UniPoly::zero(q)));
        assert!(rep.d_witness.is_none());
        assert!(rep.e_witness.is_none());
        assert!(!rep.f_flag);
    }

    #[test]
    fn symmetric_pair() {
        let q = FieldSpec::Rationals;
        let rep = classify_generators(&form(q, 2, &["x+1", "x-1"])).unwrap();
        assert_eq!(rep.b_witness, Some(up(q, "x")));
        let d = rep.d_witness.unwrap();
        assert_eq!((d.tau, d.s, d.i, d.mu), (up(q, "x"), 2, 0, q.int(-1)));
    }

    #[test]
    fn additive_translation_over_f5() {
        let f = FieldSpec::prime(5).unwrap();
        let rep = classify_generators(&form(f, 2, &["0", "1", "2", "3", "4"])).unwrap();
        assert_eq!(rep.e_witness, Some(UniPoly::one(f)));
        assert!(rep.notes.iter().any(|n| n.contains("divides")));
    }

    #[test]
    fn cyclic_period() {
        let q = FieldSpec::Rationals;
        // σ - x = {1 + x^2, -1}: only even powers remain
        let rep = classify_generators(&form(q, 3, &["1+x+x^2", "-1+x"])).unwrap();
        assert!(rep.b_witness.is_none());
        let c = rep.c_witness.unwrap();
        assert_eq!((c.q0, c.tau.clone()), (2, up(q, "x")));
        assert_eq!(c.scalings.len(), 1);
        assert!(rep.samples.iter().any(|(n, _)| n.starts_with("H~")));
    }

    #[test]
    fn fixed_point_rotation() {
        let q = FieldSpec::Rationals;
        let rep = classify_generators(&form(q, 2, &["0", "1+x", "-1-x"])).unwrap();
        let d = rep.d_witness.unwrap();
        assert_eq!((d.s, d.i), (2, 1));
        assert!(d.tau.is_zero());
    }

    #[test]
    fn h_one_swap() {
        let q = FieldSpec::Rationals;
        let rep = classify_generators(&form(q, 1, &["0", "1"])).unwrap();
        assert!(rep.f_flag);
        assert!(rep.samples.iter().any(|(n, _)| n == "I"));
    }
}
