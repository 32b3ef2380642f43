use crate::algebra::{
    reduce_mod_surface, series_exp_log, BiPoly, LaurentBiPoly, Ring, Scalar, SeriesDirection,
    SpacePoly, TruncatedSeries, UniPoly,
};
use crate::error::{Error, Result};
use crate::standardize::{conjugation_pair, hensel_standardize};
use crate::surfaces::{defining_polynomial, is_danielewski, StandardForm};

use super::AffineEndo3;

/// `σ_i = σ_i(0) + τ` for a common τ, i.e. the surface is some `S_{P,h}`
/// up to the translation `y ↦ y - τ`.
pub fn gm_action_exists(s: &StandardForm) -> Result<Option<UniPoly>> {
    let ch = s.field.characteristic();
    if ch != 0 {
        return Err(Error::PositiveCharacteristic(ch));
    }
    let tail = |p: &UniPoly| p.sub_ref(&UniPoly::constant_poly(p.coeff(0)));
    let tau = tail(&s.sigma[0]);
    Ok(s.sigma.iter().all(|p| tail(p) == tau).then_some(tau))
}

/// `Δ̃_{t,b} = (x, y + x^h b t, z + x^{-h}(Q(x, y + x^h b t) - Q))`.
pub fn ga_action(h: u32, q: &BiPoly, b: &UniPoly, t: &Scalar) -> Result<AffineEndo3> {
    is_danielewski(h, q)?;
    let f = q.field();
    let step = BiPoly::from_x_poly(&b.mul_xpow(h as usize).scale(t));
    let moved = q.subst_y(&BiPoly::y(f).add_ref(&step));
    let corr = moved.sub_ref(q).div_x(h).ok_or_else(|| Error::DivisibilityFailure {
        h,
        context: "Q(x, y + x^h b t) - Q".into(),
    })?;
    Ok(AffineEndo3::new(
        SpacePoly::var(f, 0),
        SpacePoly::var(f, 1).add_ref(&step.to_space()),
        SpacePoly::z(f).add_ref(&corr.to_space()),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonextendableReport {
    pub h: u32,
    pub q: BiPoly,
    pub a: Scalar,
    pub theta: AffineEndo3,
    /// `F∘θ̃_a` reduced modulo `F`.
    pub surface_residual: LaurentBiPoly,
    pub x_component_is_ax: bool,
    /// `θ̃_a∘θ̃_{a'} - θ̃_{aa'}` modulo `F`, when `a'` was supplied.
    pub group_law: Option<(Scalar, [LaurentBiPoly; 3])>,
    /// `θ̃_{-1} - J` modulo `F`, for `h = 2` and `a = -1`.
    pub involution_residual: Option<[LaurentBiPoly; 3]>,
    pub order: u32,
    /// `Φ_a`, with its exponential truncated at `x^order`.
    pub phi_a: AffineEndo3,
    /// `Φ_a - θ̃_a` modulo `F`, checked to vanish modulo `x^order`.
    pub phi_a_residual: [LaurentBiPoly; 3],
}

fn theta_from(q: &BiPoly, h: u32, a: &Scalar) -> Result<AffineEndo3> {
    let f = q.field();
    let d = hensel_standardize(h, q)?;
    let conj = conjugation_pair(&d)?;
    let ha = AffineEndo3::new(
        SpacePoly::var(f, 0).scale(a),
        SpacePoly::var(f, 1),
        SpacePoly::z(f).scale(&a.powi(-(h as i64))?),
    );
    Ok(conj.phi_up.compose(&ha.compose(&conj.phi_down)))
}

/// `Φ_a = (ax, y, a^{-h} U z + (ax)^{-h} P (1 - ax - U(1 - x)))` with
/// `U = exp(log((1 - ax)/(1 - x)) mod x^h)`, so that `Φ_a*(F) = U F`.
fn phi_a(p: &BiPoly, h: u32, a: &Scalar, order: u32) -> Result<AffineEndo3> {
    let f = p.field();
    let one = BiPoly::one_in(f);
    let x = BiPoly::x(f);
    let num = one.sub_ref(&x.scale(a));
    // (1 - x)^{-1} = 1 + x + ... + x^{h-1}
    let den_inv = (1..h).fold(one.clone(), |acc, k| acc.add_ref(&one.mul_x(k)));
    let ratio = TruncatedSeries::new(h, &num.mul_ref(&den_inv));
    let g = series_exp_log(&ratio, SeriesDirection::Log)?;
    let u = TruncatedSeries::new(order, g.coeffs()).exp()?;
    let u = u.coeffs().clone();
    let bracket = num.sub_ref(&u.mul_ref(&one.sub_ref(&x)));
    let corr = bracket.div_x(h).ok_or_else(|| Error::DivisibilityFailure {
        h,
        context: "1 - ax - U(1 - x)".into(),
    })?;
    let a_mh = a.powi(-(h as i64))?;
    Ok(AffineEndo3::new(
        SpacePoly::var(f, 0).scale(a),
        SpacePoly::var(f, 1),
        u.to_space()
            .mul_ref(&SpacePoly::z(f))
            .add_ref(&corr.mul_ref(p).to_space())
            .scale(&a_mh),
    ))
}

/// θ̃_a on `x^h z = (1 - x) P(y)`, conjugated from the linear scaling of the
/// standard form, together with its checked properties.
pub fn nonextendable_family(
    h: u32,
    p: &UniPoly,
    a: &Scalar,
    a_prime: Option<&Scalar>,
    order: u32,
) -> Result<NonextendableReport> {
    let f = p.field();
    if f.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic(f.characteristic()));
    }
    if h < 2 {
        return Err(Error::HTooSmall(h));
    }
    if a.is_zero() {
        return Err(Error::MalformedDatum("a must be nonzero".into()));
    }
    if order < h {
        return Err(Error::PrecisionTooLow {
            order: order as usize,
            h,
        });
    }
    let p_bi = BiPoly::from_y_poly(p);
    let q = BiPoly::one_in(f).sub_ref(&BiPoly::x(f)).mul_ref(&p_bi);
    let rep = is_danielewski(h, &q)?;
    if rep.r < 2 {
        return Err(Error::InvalidStandardForm(format!(
            "P needs at least two simple roots, has {}",
            rep.r
        )));
    }
    let theta = theta_from(&q, h, a)?;
    let defining = defining_polynomial(h, &q);
    let surface_residual = reduce_mod_surface(&theta.pullback(&defining), h, &q);
    let x_component_is_ax = theta.comps[0] == SpacePoly::var(f, 0).scale(a);

    let group_law = match a_prime {
        Some(b) => {
            let other = theta_from(&q, h, b)?;
            let joint = theta_from(&q, h, &(a * b))?;
            Some((b.clone(), theta.compose(&other).difference_mod(&joint, h, &q)))
        }
        None => None,
    };

    let involution_residual = (h == 2 && *a == f.int(-1)).then(|| {
        let x = SpacePoly::var(f, 0);
        let one_plus = SpacePoly::one_in(f).add_ref(&x);
        let j = AffineEndo3::new(
            x.neg_ref(),
            SpacePoly::var(f, 1),
            one_plus.mul_ref(&one_plus.mul_ref(&SpacePoly::z(f)).add_ref(&p_bi.to_space())),
        );
        theta.difference_mod(&j, h, &q)
    });

    let phi = phi_a(&p_bi, h, a, order)?;
    let phi_a_residual = phi.difference_mod(&theta, h, &q);
    if let Some(k) = phi_a_residual.iter().position(|r| !r.is_zero_mod_xpow(order as i64)) {
        return Err(Error::IdentityFailure {
            equation: k,
            residual: phi_a_residual[k].to_string(),
        });
    }

    Ok(NonextendableReport {
        h,
        q,
        a: a.clone(),
        theta,
        surface_residual,
        x_component_is_ax,
        group_law,
        involution_residual,
        order,
        phi_a: phi,
        phi_a_residual,
    })
}
