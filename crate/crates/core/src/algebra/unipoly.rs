use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::ring::{ring_ops, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of the i-th
/// power. Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        UniPoly { field, coeffs }
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant_poly(field.one())
    }

    pub fn constant_poly(c: Scalar) -> Self {
        let field = c.field();
        Self::new(field, vec![c])
    }

    /// The variable itself.
    pub fn var(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * t) + c)
    }

    /// Evaluates with values in an arbitrary ring.
    pub fn eval_in<R: Ring>(&self, t: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero_in(self.field), |acc, c| {
                acc.mul_ref(t).add_ref(&R::constant(c))
            })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        Self::new(self.field, coeffs)
    }

    /// `p(a·t)`.
    pub fn scale_var(&self, a: &Scalar) -> Self {
        let mut pow = self.field.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow = &pow * a;
        }
        Self::new(self.field, coeffs)
    }

    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.eval_in(inner)
    }

    /// Reduction modulo `t^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn mul_xpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field, coeffs)
    }

    /// Division by `t^k`, if exact.
    pub fn div_xpow(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(
            self.field,
            self.coeffs.iter().skip(k).cloned().collect(),
        ))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dlc = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dlc_inv = dlc.inv().expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dlc_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse modulo `t^n` of a polynomial with nonzero constant term.
    pub fn inverse_mod_xpow(&self, n: usize) -> Option<UniPoly> {
        let c0_inv = self.coeff(0).inv()?;
        let mut inv = vec![self.field.zero(); n];
        for k in 0..n {
            let mut acc = if k == 0 {
                self.field.one()
            } else {
                self.field.zero()
            };
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = &acc - &(&self.coeffs[j] * &inv[k - j]);
            }
            inv[k] = &acc * &c0_inv;
        }
        Some(UniPoly::new(self.field, inv))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut acc = UniPoly::one(self.field).div_rem(m)?.1;
        let mut base = self.div_rem(m)?.1;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).div_rem(m)?.1;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).div_rem(m)?.1;
            }
        }
        Ok(acc)
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<(Scalar, Vec<(String, u32)>)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = if i == 0 { vec![] } else { vec![(var.to_string(), i as u32)] };
                (c.clone(), mono)
            })
            .collect();
        super::format_terms(&terms)
    }
}

impl Ring for UniPoly {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn zero_in(field: FieldSpec) -> Self {
        UniPoly::zero(field)
    }
    fn constant(c: &Scalar) -> Self {
        UniPoly::constant_poly(c.clone())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UniPoly::new(self.field, coeffs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, coeffs)
    }
    fn neg_ref(&self) -> Self {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn scale(&self, c: &Scalar) -> Self {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }
}

ring_ops!(UniPoly);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(FieldSpec::Rationals, c)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[-1, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, q(&[1, 1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&q(&[-1, 0, 1])), b);
    }

    #[test]
    fn inverse_mod_power() {
        let one_minus_x = q(&[1, -1]);
        let inv = one_minus_x.inverse_mod_xpow(4).unwrap();
        assert_eq!(inv, q(&[1, 1, 1, 1]));
        assert!(q(&[0, 1]).inverse_mod_xpow(3).is_none());
    }

    #[test]
    fn scale_and_compose() {
        let p = q(&[1, 1, 1]);
        assert_eq!(p.scale_var(&FieldSpec::Rationals.int(2)), q(&[1, 2, 4]));
        assert_eq!(p.compose(&q(&[1, 1])), q(&[3, 3, 1]));
        assert_eq!(p.fmt_in("t"), "1+t+t^2");
    }
}
