use std::fmt;

use super::bipoly::BiPoly;
use super::field::{FieldSpec, Scalar};
use super::ring::{ring_ops, Ring};
use super::unipoly::UniPoly;

/// `x^shift · body` with `body(0) != 0` unless the whole thing is zero, in
/// which case `shift = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    shift: i64,
    body: UniPoly,
}

impl LaurentPoly {
    pub fn new(shift: i64, body: UniPoly) -> Self {
        match body.lowest_exponent() {
            None => LaurentPoly { shift: 0, body },
            Some(k) => LaurentPoly {
                shift: shift + k as i64,
                body: body.div_xpow(k).expect("lowest exponent divides"),
            },
        }
    }

    pub fn from_poly(p: &UniPoly) -> Self {
        Self::new(0, p.clone())
    }

    /// `x^k`.
    pub fn monomial(field: FieldSpec, k: i64) -> Self {
        Self::new(k, UniPoly::one(field))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &UniPoly {
        &self.body
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<i64> {
        (!self.body.is_zero()).then_some(self.shift)
    }

    /// `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> Vec<(i64, Scalar)> {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    /// The polynomial this equals, if it has no pole.
    pub fn to_poly(&self) -> Option<UniPoly> {
        (self.shift >= 0).then(|| self.body.mul_xpow(self.shift as usize))
    }

    pub fn mul_xpow(&self, k: i64) -> Self {
        Self::new(self.shift + k, self.body.clone())
    }
}

impl Ring for LaurentPoly {
    fn field(&self) -> FieldSpec {
        self.body.field()
    }
    fn zero_in(field: FieldSpec) -> Self {
        Self::new(0, UniPoly::zero(field))
    }
    fn constant(c: &Scalar) -> Self {
        Self::new(0, UniPoly::constant_poly(c.clone()))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.body.is_zero() {
            return rhs.clone();
        }
        if rhs.body.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.body.mul_xpow((self.shift - s) as usize);
        let b = rhs.body.mul_xpow((rhs.shift - s) as usize);
        Self::new(s, &a + &b)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(self.shift + rhs.shift, &self.body * &rhs.body)
    }
    fn neg_ref(&self) -> Self {
        Self::new(self.shift, -&self.body)
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

ring_ops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().into_iter().map(|(k, c)| (c, x_power(k)));
        f.write_str(&super::join_terms(terms))
    }
}

fn x_power(k: i64) -> String {
    match k {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

/// Element of k[x, x^{-1}][y], stored as `x^shift · body` with `body`
/// not divisible by x.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentBiPoly {
    shift: i64,
    body: BiPoly,
}

impl LaurentBiPoly {
    pub fn new(shift: i64, body: BiPoly) -> Self {
        match body.min_degree_in(0) {
            None => LaurentBiPoly { shift: 0, body },
            Some(k) => LaurentBiPoly {
                shift: shift + k as i64,
                body: body.div_x(k).expect("minimal degree divides"),
            },
        }
    }

    pub fn from_poly(p: &BiPoly) -> Self {
        Self::new(0, p.clone())
    }

    /// `x^k`.
    pub fn x_pow(field: FieldSpec, k: i64) -> Self {
        Self::new(k, BiPoly::one_in(field))
    }

    pub fn y(field: FieldSpec) -> Self {
        Self::from_poly(&BiPoly::y(field))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &BiPoly {
        &self.body
    }

    /// Lowest power of x that occurs.
    pub fn lowest_x_exponent(&self) -> Option<i64> {
        (!self.body.is_zero()).then_some(self.shift)
    }

    pub fn mul_xpow(&self, k: i64) -> Self {
        Self::new(self.shift + k, self.body.clone())
    }

    /// The polynomial this equals, if no negative power of x occurs.
    pub fn to_poly(&self) -> Option<BiPoly> {
        (self.shift >= 0).then(|| self.body.mul_x(self.shift as u32))
    }

    /// True if every term has x-exponent at least `n`.
    pub fn is_zero_mod_xpow(&self, n: i64) -> bool {
        self.body.is_zero() || self.shift >= n
    }

    /// Drops the terms of x-exponent at least `n`.
    pub fn truncate_x(&self, n: i64) -> Self {
        if n <= self.shift {
            return Self::zero_in(self.field());
        }
        Self::new(self.shift, self.body.truncate_x((n - self.shift) as u32))
    }

    pub fn fmt_with(&self, y_name: &str) -> String {
        let terms = self.body.terms().map(|(e, c)| {
            let mut mono = x_power(e[0] as i64 + self.shift);
            if e[1] > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(y_name);
                if e[1] > 1 {
                    mono.push_str(&format!("^{}", e[1]));
                }
            }
            (c.clone(), mono)
        });
        super::join_terms(terms)
    }
}

impl Ring for LaurentBiPoly {
    fn field(&self) -> FieldSpec {
        self.body.field()
    }
    fn zero_in(field: FieldSpec) -> Self {
        Self::new(0, BiPoly::zero(field))
    }
    fn constant(c: &Scalar) -> Self {
        Self::new(0, BiPoly::constant(c))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.body.is_zero() {
            return rhs.clone();
        }
        if rhs.body.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.body.mul_x((self.shift - s) as u32);
        let b = rhs.body.mul_x((rhs.shift - s) as u32);
        Self::new(s, a.add_ref(&b))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(self.shift + rhs.shift, self.body.mul_ref(&rhs.body))
    }
    fn neg_ref(&self) -> Self {
        Self::new(self.shift, self.body.neg_ref())
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

ring_ops!(LaurentBiPoly);

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("y"))
    }
}
