//! Coefficient-ring abstraction.
//!
//! The Bernoulli recurrences and the generating-series oracle are written once,
//! generically, and instantiated over several rings: log-linear rational
//! functions of the formal q, log-linear cyclotomic scalars (concrete exact q),
//! p-adic numbers and their cyclotomic extensions, and complex floats.
//!
//! Some rings need construction context (a p-adic zero knows its prime), so the
//! constructors are `_like` methods that borrow context from an existing value.

use num_rational::BigRational;

use crate::error::Result;

pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &BigRational) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;

    fn from_integer_like(&self, n: i64) -> Self {
        self.from_rational_like(&BigRational::from_integer(n.into()))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul(&self.from_rational_like(r))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl CoeffRing for BigRational {
    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn one_like(&self) -> Self {
        num_traits::One::one()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Result<Self> {
        if num_traits::Zero::is_zero(self) {
            Err(crate::error::Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl CoeffRing for crate::exact::cyclotomic::CyclotomicNumber {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Self::from_rational(r.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        CyclotomicNumber::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CyclotomicNumber::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CyclotomicNumber::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        CyclotomicNumber::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        CyclotomicNumber::inv(self)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
}

use crate::exact::cyclotomic::CyclotomicNumber;

impl CoeffRing for num_complex::Complex64 {
    fn zero_like(&self) -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        num_complex::Complex64::new(1.0, 0.0)
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if self.norm_sqr() == 0.0 {
            Err(crate::error::Error::DivisionByZero)
        } else {
            Ok(num_complex::Complex64::new(1.0, 0.0) / self)
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}
