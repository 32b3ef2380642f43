use crate::algebra::{BiPoly, Ring, Scalar, SpacePoly, UniPoly};
use crate::error::{Error, Result};
use crate::surfaces::StandardForm;

use super::AffineEndo3;

/// `(α, μ, a, b(x))`. `alpha[i]` is the chart that chart `i` is sent to
/// (0-based here, 1-based in JSON).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutDatum {
    pub alpha: Vec<usize>,
    pub mu: Scalar,
    pub a: Scalar,
    pub b: UniPoly,
}

impl AutDatum {
    pub fn identity(s: &StandardForm) -> Self {
        let f = s.field;
        AutDatum {
            alpha: (0..s.r()).collect(),
            mu: f.one(),
            a: f.one(),
            b: UniPoly::zero(f),
        }
    }

    pub fn is_trivial_permutation(&self) -> bool {
        self.alpha.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Lengths of the cycles of α, in order of their smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.alpha.len()];
        let mut out = Vec::new();
        for start in 0..self.alpha.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.alpha[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }
}

fn check_shape(s: &StandardForm, d: &AutDatum) -> Result<()> {
    let r = s.r();
    if d.alpha.len() != r {
        return Err(Error::MalformedDatum(format!(
            "alpha has length {}, expected {r}",
            d.alpha.len()
        )));
    }
    let mut hit = vec![false; r];
    for &j in &d.alpha {
        if j >= r || hit[j] {
            return Err(Error::MalformedDatum("alpha is not a permutation".into()));
        }
        hit[j] = true;
    }
    for (what, v) in [("mu", &d.mu), ("a", &d.a)] {
        if v.field() != s.field {
            return Err(Error::FieldMismatch(v.field().to_string(), s.field.to_string()));
        }
        if v.is_zero() {
            return Err(Error::MalformedDatum(format!("{what} must be nonzero")));
        }
    }
    if d.b.field() != s.field {
        return Err(Error::FieldMismatch(d.b.field().to_string(), s.field.to_string()));
    }
    Ok(())
}

/// `c_i(x) = σ_{α(i)}(ax) - μ σ_i(x) + (ax)^h b(x)` for every chart.
///
/// The translation part is scaled as `(ax)^h b` rather than `x^h b`; with
/// this choice the composition rule below is an exact homomorphism.
/// Validity does not depend on the choice since the term is shared by
/// all charts.
pub fn datum_offsets(s: &StandardForm, d: &AutDatum) -> Result<Vec<UniPoly>> {
    check_shape(s, d)?;
    let tail = d.b.mul_xpow(s.h as usize).scale(&d.a.pow(s.h as u64));
    Ok((0..s.r())
        .map(|i| {
            s.sigma[d.alpha[i]]
                .scale_var(&d.a)
                .sub_ref(&s.sigma[i].scale(&d.mu))
                .add_ref(&tail)
        })
        .collect())
}

/// Necessary conditions every valid datum satisfies when `r >= 2`.
pub fn lemma_violation(s: &StandardForm, d: &AutDatum) -> Option<String> {
    if s.r() < 2 {
        return None;
    }
    if d.is_trivial_permutation() {
        return (!d.mu.is_one()).then(|| format!("alpha is trivial but mu = {}", d.mu));
    }
    let cycles = d.cycle_lengths();
    let fixed = cycles.iter().filter(|&&l| l == 1).count();
    if fixed > 1 {
        return Some(format!("nontrivial alpha has {fixed} fixed points"));
    }
    let mut long = cycles.iter().filter(|&&l| l > 1);
    let len = *long.next().expect("nontrivial permutation has a cycle");
    if long.any(|&l| l != len) {
        return Some(format!("cycles of unequal length {cycles:?}"));
    }
    if !d.mu.pow(len as u64).is_one() {
        return Some(format!("mu = {} but mu^{len} != 1", d.mu));
    }
    if d.mu.is_one() {
        if s.field.characteristic() != len as u64 {
            return Some(format!(
                "mu = 1 with cycles of length {len} in characteristic {}",
                s.field.characteristic()
            ));
        }
    } else if d.mu.order(len as u64) != Some(len as u64) {
        return Some(format!("mu = {} does not have order {len}", d.mu));
    }
    None
}

/// Returns the common `c(x)` or the first pair of charts that disagree.
pub fn datum_validate(s: &StandardForm, d: &AutDatum) -> Result<UniPoly> {
    let cs = datum_offsets(s, d)?;
    if let Some(j) = (1..cs.len()).find(|&j| cs[j] != cs[0]) {
        return Err(Error::DatumInconsistent { i: 1, j: j + 1 });
    }
    if let Some(msg) = lemma_violation(s, d) {
        return Err(Error::LemmaViolation(msg));
    }
    Ok(cs.into_iter().next().expect("r >= 1"))
}

/// `Ψ = (ax, μy + c, a^{-h}(μ^r z + x^{-h}(∏(μy + c - σ_i(ax)) - μ^r P)))`.
pub fn datum_to_endo(s: &StandardForm, d: &AutDatum) -> Result<AffineEndo3> {
    let c = datum_validate(s, d)?;
    let f = s.field;
    let h = s.h;
    let r = s.r() as u64;
    let y = BiPoly::y(f);
    let image_y = y.scale(&d.mu).add_ref(&BiPoly::from_x_poly(&c));
    let moved = s.sigma.iter().fold(BiPoly::one_in(f), |acc, si| {
        acc.mul_ref(&image_y.sub_ref(&BiPoly::from_x_poly(&si.scale_var(&d.a))))
    });
    let mu_r = d.mu.pow(r);
    let diff = moved.sub_ref(&s.p().scale(&mu_r));
    let q = diff.div_x(h).ok_or_else(|| Error::DivisibilityFailure {
        h,
        context: format!("datum correction {diff}"),
    })?;
    let a_mh = d.a.powi(-(h as i64))?;
    let z = SpacePoly::z(f)
        .scale(&mu_r)
        .add_ref(&q.to_space())
        .scale(&a_mh);
    Ok(AffineEndo3::new(
        SpacePoly::var(f, 0).scale(&d.a),
        image_y.to_space(),
        z,
    ))
}

/// `Ψ*(F) - μ^r F`, identically zero for the map of a valid datum.
pub fn endo_residual(s: &StandardForm, d: &AutDatum, psi: &AffineEndo3) -> SpacePoly {
    let f = s.defining();
    psi.pullback(&f).sub_ref(&f.scale(&d.mu.pow(s.r() as u64)))
}

/// The datum of `endo(d2) ∘ endo(d1)`:
/// `(α₂∘α₁, μ₂μ₁, a₂a₁, a₂^{-h} μ₂ b₁(x) + b₂(a₁x))`.
pub fn compose_data(s: &StandardForm, d1: &AutDatum, d2: &AutDatum) -> Result<AutDatum> {
    datum_validate(s, d1)?;
    datum_validate(s, d2)?;
    let b = d1
        .b
        .scale(&(&d2.a.powi(-(s.h as i64))? * &d2.mu))
        .add_ref(&d2.b.scale_var(&d1.a));
    Ok(AutDatum {
        alpha: d1.alpha.iter().map(|&j| d2.alpha[j]).collect(),
        mu: &d2.mu * &d1.mu,
        a: &d2.a * &d1.a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_spacepoly, parse_unipoly};
    use crate::algebra::FieldSpec;
    use serde_json::json;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn up(s: &str) -> UniPoly {
        parse_unipoly(Q, &json!(s), "x").unwrap()
    }

    fn sp(s: &str) -> SpacePoly {
        parse_spacepoly(Q, &json!(s)).unwrap()
    }

    fn form(h: u32, sig: &[&str]) -> StandardForm {
        StandardForm::new(Q, h, sig.iter().map(|s| up(s)).collect()).unwrap()
    }

    fn datum(alpha: &[usize], mu: i64, a: i64, b: &str) -> AutDatum {
        AutDatum {
            alpha: alpha.to_vec(),
            mu: Q.int(mu),
            a: Q.int(a),
            b: up(b),
        }
    }

    #[test]
    fn translation_datum() {
        let s = form(2, &["x+1", "x-1"]);
        let d = datum(&[0, 1], 1, 1, "3+x");
        assert_eq!(datum_validate(&s, &d).unwrap(), up("3*x^2+x^3"));
        let psi = datum_to_endo(&s, &d).unwrap();
        assert!(endo_residual(&s, &d, &psi).is_zero());
    }

    #[test]
    fn scaling_on_constant_roots() {
        let s = form(3, &["1", "-1", "2"]);
        let d = datum(&[0, 1, 2], 1, 5, "0");
        assert!(datum_validate(&s, &d).unwrap().is_zero());
        let psi = datum_to_endo(&s, &d).unwrap();
        assert_eq!(psi, AffineEndo3::new(sp("5*x"), sp("y"), sp("z/125")));
    }

    #[test]
    fn swap_datum() {
        let s = form(2, &["x+1", "x-1"]);
        let d = datum(&[1, 0], -1, 1, "0");
        assert_eq!(datum_validate(&s, &d).unwrap(), up("2*x"));
        let psi = datum_to_endo(&s, &d).unwrap();
        assert_eq!(psi, AffineEndo3::new(sp("x"), sp("-y+2*x"), sp("z")));
        assert!(endo_residual(&s, &d, &psi).is_zero());
    }

    #[test]
    fn inconsistent_and_malformed() {
        let s = form(2, &["x+1", "x-1"]);
        assert_eq!(
            datum_validate(&s, &datum(&[1, 0], 1, 1, "0")),
            Err(Error::DatumInconsistent { i: 1, j: 2 })
        );
        assert!(matches!(
            datum_validate(&s, &datum(&[0, 0], 1, 1, "0")),
            Err(Error::MalformedDatum(_))
        ));
        assert!(matches!(
            datum_validate(&s, &datum(&[0, 1], 1, 0, "0")),
            Err(Error::MalformedDatum(_))
        ));
    }

    #[test]
    fn composition_rules() {
        let s = form(2, &["x+1", "x-1"]);
        let t1 = datum(&[0, 1], 1, 1, "x");
        let t2 = datum(&[0, 1], 1, 1, "2");
        assert_eq!(compose_data(&s, &t1, &t2).unwrap(), datum(&[0, 1], 1, 1, "x+2"));

        let s = form(2, &["1", "-1"]);
        let d1 = datum(&[0, 1], 1, 3, "0");
        let d2 = datum(&[0, 1], 1, 1, "1+x");
        let c = compose_data(&s, &d1, &d2).unwrap();
        assert_eq!(c, datum(&[0, 1], 1, 3, "1+3*x"));
        let lhs = datum_to_endo(&s, &c).unwrap();
        let rhs = datum_to_endo(&s, &d2).unwrap().compose(&datum_to_endo(&s, &d1).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homomorphism_with_swaps() {
        let s = form(3, &["x+1", "x-1"]);
        let d1 = datum(&[1, 0], -1, 1, "x");
        let d2 = datum(&[0, 1], 1, 2, "1");
        for (p, q) in [(&d1, &d2), (&d2, &d1), (&d1, &d1)] {
            let c = compose_data(&s, p, q).unwrap();
            let lhs = datum_to_endo(&s, &c).unwrap();
            let rhs = datum_to_endo(&s, q).unwrap().compose(&datum_to_endo(&s, p).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cycles_over_fp() {
        let f = FieldSpec::prime(5).unwrap();
        let sigma = (0..5).map(|k| UniPoly::constant_poly(f.int(k))).collect();
        let s = StandardForm::new(f, 1, sigma).unwrap();
        let d = AutDatum {
            alpha: vec![1, 2, 3, 4, 0],
            mu: f.one(),
            a: f.one(),
            b: UniPoly::zero(f),
        };
        assert_eq!(datum_validate(&s, &d).unwrap(), UniPoly::one(f));
        assert_eq!(d.cycle_lengths(), vec![5]);
    }
}
