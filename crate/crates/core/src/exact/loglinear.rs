//! Values of the form a + c*log(q), with a and c in a log-free base ring.
//!
//! Every twisted (h,q)-Bernoulli quantity is linear in log q, so the crate
//! tracks the symbol ell = log q formally. Ring operations are closed as long
//! as no product of two log-carrying values arises; that product is rejected
//! rather than silently truncated.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::CyclotomicNumber;
use crate::exact::ratfunc::RationalFunctionQ;
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq)]
pub struct LogLin<K> {
    /// log-free part
    pub a: K,
    /// coefficient of log q
    pub c: K,
}

/// The spec-level value type: rational functions of the formal q, plus a
/// formal multiple of log q.
pub type LogLinearValue = LogLin<RationalFunctionQ>;

/// Concrete exact q (a rational or cyclotomic scalar), log q still formal.
pub type LogLinCyclo = LogLin<CyclotomicNumber>;

impl<K: CoeffRing> LogLin<K> {
    pub fn new(a: K, c: K) -> Self {
        LogLin { a, c }
    }

    pub fn from_base(a: K) -> Self {
        let c = a.zero_like();
        LogLin { a, c }
    }

    /// The formal symbol ell = log q (context taken from `sample`).
    pub fn log_symbol(sample: &K) -> Self {
        LogLin { a: sample.zero_like(), c: sample.one_like() }
    }

    pub fn is_log_free(&self) -> bool {
        self.c.is_zero()
    }

    /// Guarded product: an ell^2 term is an error, never dropped.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if !self.c.is_zero() && !rhs.c.is_zero() {
            return Err(Error::LogSquared);
        }
        Ok(LogLin {
            a: self.a.mul(&rhs.a),
            c: self.a.mul(&rhs.c).add(&self.c.mul(&rhs.a)),
        })
    }
}

impl<K: CoeffRing> CoeffRing for LogLin<K> {
    fn zero_like(&self) -> Self {
        LogLin { a: self.a.zero_like(), c: self.a.zero_like() }
    }
    fn one_like(&self) -> Self {
        LogLin { a: self.a.one_like(), c: self.a.zero_like() }
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        LogLin { a: self.a.from_rational_like(r), c: self.a.zero_like() }
    }
    fn add(&self, rhs: &Self) -> Self {
        LogLin { a: self.a.add(&rhs.a), c: self.c.add(&rhs.c) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        LogLin { a: self.a.sub(&rhs.a), c: self.c.sub(&rhs.c) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs)
            .expect("internal arithmetic multiplied two log-carrying values")
    }
    fn neg(&self) -> Self {
        LogLin { a: self.a.neg(), c: self.c.neg() }
    }
    fn inv(&self) -> Result<Self> {
        if !self.c.is_zero() {
            return Err(Error::DomainError(
                "inverse of a log-carrying value is not log-linear".into(),
            ));
        }
        Ok(LogLin { a: self.a.inv()?, c: self.c.zero_like() })
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }
}

impl<K: CoeffRing + fmt::Display> fmt::Display for LogLin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "({}) * log q", self.c);
        }
        write!(f, "{} + ({}) * log q", self.a, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::rat_int;

    fn ll(a: i64, c: i64) -> LogLinearValue {
        let base = RationalFunctionQ::one();
        LogLin::new(
            base.from_rational_like(&rat_int(a)),
            base.from_rational_like(&rat_int(c)),
        )
    }

    #[test]
    fn sum_stays_log_linear() {
        let x = ll(1, 2);
        let y = ll(3, -2);
        let s = x.add(&y);
        assert_eq!(s, ll(4, 0));
        assert!(s.is_log_free());
    }

    #[test]
    fn guarded_product_rejects_log_squared() {
        let x = ll(0, 1);
        let y = ll(2, 3);
        assert_eq!(x.checked_mul(&y), Err(Error::LogSquared));
        // one log-free factor is fine: (2)(3 + l) = 6 + 2l
        let z = ll(2, 0).checked_mul(&ll(3, 1)).unwrap();
        assert_eq!(z, ll(6, 2));
    }

    #[test]
    fn inverse_requires_log_free() {
        assert!(ll(2, 0).inv().is_ok());
        assert!(ll(2, 1).inv().is_err());
    }
}
