use std::fmt;

use super::bipoly::BiPoly;
use super::field::FieldSpec;
use super::ring::Ring;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Power series in x with coefficients in k[y], kept modulo `x^order`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedSeries {
    order: u32,
    coeffs: BiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesDirection {
    Exp,
    Log,
}

impl TruncatedSeries {
    pub fn new(order: u32, coeffs: &BiPoly) -> Self {
        TruncatedSeries {
            order,
            coeffs: coeffs.truncate_x(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &BiPoly {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs.field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.order.min(rhs.order), &self.coeffs.add_ref(&rhs.coeffs))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.order.min(rhs.order), &self.coeffs.sub_ref(&rhs.coeffs))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let a = self.coeffs.truncate_x(order);
        let b = rhs.coeffs.truncate_x(order);
        Self::new(order, &a.mul_ref(&b))
    }

    fn x_coeffs(&self) -> Vec<UniPoly> {
        (0..self.order).map(|i| self.coeffs.x_coeff(i)).collect()
    }

    fn from_x_coeffs(order: u32, c: &[UniPoly]) -> Self {
        let field = c[0].field();
        let mut out = BiPoly::zero(field);
        for (i, p) in c.iter().enumerate() {
            out = out.add_ref(&BiPoly::from_y_poly(p).mul_x(i as u32));
        }
        Self::new(order, &out)
    }

    pub fn exp(&self) -> Result<Self> {
        series_exp_log(self, SeriesDirection::Exp)
    }

    pub fn log(&self) -> Result<Self> {
        series_exp_log(self, SeriesDirection::Log)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.coeffs, self.order)
    }
}

/// Truncated exponential or logarithm. `exp` needs `u(0, y) = 0` and `log`
/// needs `u(0, y) = 1`.
pub fn series_exp_log(u: &TruncatedSeries, direction: SeriesDirection) -> Result<TruncatedSeries> {
    let field = u.field();
    if field.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic(field.characteristic()));
    }
    let n = u.order as usize;
    if n == 0 {
        return Ok(u.clone());
    }
    let c = u.x_coeffs();
    let zero = UniPoly::zero(field);
    let one = UniPoly::one(field);
    let mut out = vec![zero.clone(); n];
    match direction {
        SeriesDirection::Exp => {
            if !c[0].is_zero() {
                return Err(Error::WrongConstantTerm("exp"));
            }
            out[0] = one;
            // e_m = (1/m) Σ_{k=1}^{m} k·u_k·e_{m-k}
            for m in 1..n {
                let mut acc = zero.clone();
                for k in 1..=m {
                    acc = &acc + &(&c[k] * &out[m - k]).scale(&field.int(k as i64));
                }
                out[m] = acc.scale(&field.frac(1, m as i64)?);
            }
        }
        SeriesDirection::Log => {
            if c[0] != one {
                return Err(Error::WrongConstantTerm("log"));
            }
            // m·l_m = m·u_m − Σ_{k=1}^{m-1} k·l_k·u_{m-k}
            for m in 1..n {
                let mut acc = c[m].scale(&field.int(m as i64));
                for k in 1..m {
                    acc = &acc - &(&out[k] * &c[m - k]).scale(&field.int(k as i64));
                }
                out[m] = acc.scale(&field.frac(1, m as i64)?);
            }
        }
    }
    Ok(TruncatedSeries::from_x_coeffs(u.order, &out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn series(order: u32, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(order, &BiPoly::from_x_poly(&UniPoly::from_ints(q(), c)))
    }

    #[test]
    fn log_one_minus_x() {
        assert_eq!(series(2, &[1, -1]).log().unwrap(), series(2, &[0, -1]));
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(series(5, &[]).exp().unwrap(), series(5, &[1]));
    }

    #[test]
    fn exp_log_round_trip() {
        let u = series(3, &[1, 1, 1]);
        assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn exp_coefficients_match_factorials() {
        let e = series(5, &[0, 1]).exp().unwrap();
        let f = q();
        let want = UniPoly::new(
            f,
            vec![f.one(), f.one(), f.frac(1, 2).unwrap(), f.frac(1, 6).unwrap(), f.frac(1, 24).unwrap()],
        );
        assert_eq!(e.coeffs(), &BiPoly::from_x_poly(&want));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(series(3, &[1]).exp(), Err(Error::WrongConstantTerm("exp"))));
        assert!(matches!(series(3, &[2]).log(), Err(Error::WrongConstantTerm("log"))));
        let f5 = FieldSpec::prime(5).unwrap();
        let u = TruncatedSeries::new(3, &BiPoly::x(f5));
        assert!(matches!(u.exp(), Err(Error::PositiveCharacteristic(5))));
    }
}
