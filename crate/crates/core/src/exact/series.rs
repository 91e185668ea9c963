//! Truncated formal power series in t over a coefficient ring.
//!
//! This is the oracle side of every generating-function definition: a series
//! quotient computed here is compared coefficient-by-coefficient against the
//! recurrence values. Arithmetic is exact through the truncation order.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq)]
pub struct FormalPowerSeries<R> {
    /// coeffs[k] multiplies t^k; len = truncation order + 1 (never empty).
    coeffs: Vec<R>,
}

impl<R: CoeffRing> FormalPowerSeries<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        FormalPowerSeries { coeffs }
    }

    pub fn zero_like(sample: &R, order: usize) -> Self {
        FormalPowerSeries { coeffs: vec![sample.zero_like(); order + 1] }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero_like(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// Truncation order M: coefficients are exact for t^0 .. t^M.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: R) {
        self.coeffs[k] = v;
    }

    /// exp(c*t) truncated: sum c^n t^n / n!.
    pub fn exp_scaled(c: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = c.one_like();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term.mul(c).mul_rational(&BigRational::new(1.into(), n.into()));
            coeffs.push(term.clone());
        }
        FormalPowerSeries { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let coeffs = (0..=m).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        FormalPowerSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let coeffs = (0..=m).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect();
        FormalPowerSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        FormalPowerSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; m + 1];
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
                }
            }
        }
        FormalPowerSeries { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        FormalPowerSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Index of the first nonzero coefficient.
    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Series division. A common factor t^v shared by numerator and
    /// denominator is cancelled first (needed for t/(xi*e^t - 1) at xi = 1);
    /// after cancellation the denominator must have an invertible constant
    /// term. The result is exact through order M - v.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let m = self.order().min(den.order());
        let dv = den.valuation().ok_or(Error::NonInvertibleConstantTerm)?;
        if dv > 0 {
            match self.valuation() {
                // Zero numerator divided by t^dv * unit is still zero, at
                // reduced order.
                None => return Ok(Self::zero_like(&self.coeffs[0], m - dv)),
                Some(nv) if nv >= dv => {}
                _ => return Err(Error::NonInvertibleConstantTerm),
            }
        }
        let m = m - dv;
        let num: Vec<R> = self.coeffs[dv..=dv + m].to_vec();
        let den: Vec<R> = den.coeffs[dv..=dv + m].to_vec();
        let b0_inv = den[0].inv().map_err(|_| Error::NonInvertibleConstantTerm)?;
        let mut out: Vec<R> = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut acc = num[n].clone();
            for k in 1..=n {
                if !den[k].is_zero() && !out[n - k].is_zero() {
                    acc = acc.sub(&den[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&b0_inv));
        }
        Ok(FormalPowerSeries { coeffs: out })
    }

    /// n! * coeffs[n], the standard normalization for exponential generating
    /// functions.
    pub fn egf_coefficient(&self, n: usize) -> R {
        let mut fact = BigRational::from_integer(1.into());
        for k in 2..=n {
            fact *= BigRational::from_integer(k.into());
        }
        self.coeffs[n].mul_rational(&fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::{rat, rat_int, CyclotomicNumber};

    type S = FormalPowerSeries<BigRational>;

    fn exp_minus_one(order: usize) -> S {
        let mut e = S::exp_scaled(&rat_int(1), order);
        let c0 = e.coeff(0).clone() - rat_int(1);
        e.set_coeff(0, c0);
        e
    }

    fn t_series(order: usize) -> S {
        let mut t = S::zero_like(&rat_int(0), order);
        t.set_coeff(1, rat_int(1));
        t
    }

    #[test]
    fn classical_bernoulli_series() {
        // t / (e^t - 1) = 1 - t/2 + t^2/12 + O(t^3)
        let q = t_series(4).div(&exp_minus_one(4)).unwrap();
        assert_eq!(q.coeff(0), &rat_int(1));
        assert_eq!(q.coeff(1), &rat(-1, 2));
        assert_eq!(q.coeff(2), &rat(1, 12));
        // B_4 = -1/30: coefficient t^4 is B_4/4! but order dropped by 1 after
        // cancellation, so only through t^3 here.
        assert_eq!(q.order(), 3);
        assert_eq!(q.egf_coefficient(3), rat_int(0)); // B_3 = 0
    }

    #[test]
    fn one_over_one() {
        let one = S::constant(rat_int(1), 3);
        assert_eq!(one.div(&one).unwrap(), one);
    }

    #[test]
    fn twisted_denominator_keeps_constant_term() {
        // t / (zeta_3 e^t - 1): numerator vanishes at t=0, denominator
        // zeta_3 - 1 != 0, so the quotient's constant coefficient is 0.
        type SC = FormalPowerSeries<CyclotomicNumber>;
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let mut den = SC::exp_scaled(&CyclotomicNumber::one(), 5).scale(&z3);
        let c0 = den.coeff(0).sub(&CyclotomicNumber::one());
        den.set_coeff(0, c0);
        let mut num = SC::zero_like(&z3, 5);
        num.set_coeff(1, CyclotomicNumber::one());
        let q = num.div(&den).unwrap();
        assert!(q.coeff(0).is_zero());
        // first derivative at 0 is 1/(zeta_3 - 1)
        let expect = z3.sub(&CyclotomicNumber::one()).inv().unwrap();
        assert_eq!(q.coeff(1), &expect);
    }

    #[test]
    fn division_requires_invertible_constant() {
        // 1 / t is rejected
        let one = S::constant(rat_int(1), 3);
        let t = t_series(3);
        assert_eq!(one.div(&t), Err(Error::NonInvertibleConstantTerm));
    }

    #[test]
    fn roundtrip_mul_div() {
        let a = S::new(vec![rat_int(2), rat(1, 3), rat_int(-1), rat(5, 7)]);
        let b = S::new(vec![rat_int(1), rat_int(4), rat(-2, 5), rat_int(0)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b).unwrap(), a);
    }
}
