use std::fmt::Debug;

use super::field::{FieldSpec, Scalar};

/// A commutative k-algebra whose elements know their base field.
///
/// This is the target of polynomial evaluation: composing endomorphisms,
/// reducing modulo a surface and solving the comb system all evaluate a
/// polynomial with values in some other ring.
pub trait Ring: Clone + PartialEq + Debug {
    fn field(&self) -> FieldSpec;
    fn zero_in(field: FieldSpec) -> Self;
    fn constant(c: &Scalar) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn one_in(field: FieldSpec) -> Self {
        Self::constant(&field.one())
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn scale(&self, c: &Scalar) -> Self {
        self.mul_ref(&Self::constant(c))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_in(self.field());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for Scalar {
    fn field(&self) -> FieldSpec {
        Scalar::field(self)
    }
    fn zero_in(field: FieldSpec) -> Self {
        field.zero()
    }
    fn constant(c: &Scalar) -> Self {
        c.clone()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// Lazily extended table of powers `v^0, v^1, ...` used by evaluators.
pub(crate) struct Powers<R: Ring> {
    table: Vec<R>,
}

impl<R: Ring> Powers<R> {
    pub(crate) fn new(v: &R) -> Self {
        Powers {
            table: vec![R::one_in(v.field()), v.clone()],
        }
    }

    pub(crate) fn get(&mut self, e: u32) -> &R {
        let e = e as usize;
        while self.table.len() <= e {
            let next = self.table[self.table.len() - 1].mul_ref(&self.table[1]);
            self.table.push(next);
        }
        &self.table[e]
    }
}

/// Implements `+ - *` and unary `-` on references (and owned values) in
/// terms of the [`Ring`] methods.
macro_rules! ring_ops {
    ($t:ty) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::algebra::Ring::add_ref(self, rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::algebra::Ring::sub_ref(self, rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::algebra::Ring::mul_ref(self, rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra::Ring::neg_ref(self)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::algebra::Ring::add_ref(&self, &rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::algebra::Ring::sub_ref(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::algebra::Ring::mul_ref(&self, &rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra::Ring::neg_ref(&self)
            }
        }
    };
}
pub(crate) use ring_ops;
