//! Polynomials and rational functions in the indeterminate q with cyclotomic
//! coefficients. These carry all q-dependence of the twisted Bernoulli
//! numbers, e.g. the 1/(xi*q^h - 1) factors.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::CyclotomicNumber;
use crate::ring::CoeffRing;

/// Dense polynomial over Q(zeta); `coeffs[k]` multiplies q^k.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyC {
    coeffs: Vec<CyclotomicNumber>,
}

impl PolyC {
    pub fn new(mut coeffs: Vec<CyclotomicNumber>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(CyclotomicNumber::zero());
        }
        let mut p = PolyC { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        PolyC { coeffs: vec![CyclotomicNumber::zero()] }
    }

    pub fn one() -> Self {
        PolyC { coeffs: vec![CyclotomicNumber::one()] }
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        PolyC { coeffs: vec![c] }
    }

    /// The monomial c * q^k.
    pub fn monomial(c: CyclotomicNumber, k: usize) -> Self {
        let mut coeffs = vec![CyclotomicNumber::zero(); k + 1];
        coeffs[k] = c;
        PolyC::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeffs(&self) -> &[CyclotomicNumber] {
        &self.coeffs
    }

    pub fn leading(&self) -> &CyclotomicNumber {
        self.coeffs.last().unwrap()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
            out.push(a.add(&b));
        }
        PolyC::new(out)
    }

    pub fn neg(&self) -> Self {
        PolyC { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut out = vec![CyclotomicNumber::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        PolyC::new(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        PolyC::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Quotient and remainder; rhs must be nonzero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let db = rhs.degree();
        if self.is_zero() || self.degree() < db {
            return (PolyC::zero(), self.clone());
        }
        let lead_inv = rhs.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CyclotomicNumber::zero(); self.degree() - db + 1];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].mul(&lead_inv);
            quot[i - db] = c.clone();
            for (k, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[i - db + k] = rem[i - db + k].sub(&c.mul(b));
                }
            }
        }
        (PolyC::new(quot), PolyC::new(rem))
    }

    /// Exact division: Some(quotient) when rhs divides self.
    pub fn try_exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd via the Euclidean algorithm, normalizing each remainder to
    /// keep coefficient growth in check.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.monic();
        let mut b = rhs.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Divide through by the leading coefficient (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return PolyC::zero();
        }
        if self.leading().is_one() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Substitute q -> q^e.
    pub fn substitute_power(&self, e: usize) -> Self {
        assert!(e >= 1);
        if e == 1 {
            return self.clone();
        }
        let mut out = vec![CyclotomicNumber::zero(); self.degree() * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i * e] = c.clone();
            }
        }
        PolyC::new(out)
    }

    /// Horner evaluation after embedding each coefficient into R.
    pub fn eval_with<R: CoeffRing>(&self, x: &R, embed: &dyn Fn(&CyclotomicNumber) -> R) -> R {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&embed(c));
        }
        acc
    }

    pub fn eval_cyclo(&self, x: &CyclotomicNumber) -> CyclotomicNumber {
        self.eval_with(x, &|c| c.clone())
    }

    fn fmt_term(c: &CyclotomicNumber, k: usize) -> String {
        let base = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        let cs = format!("{c}");
        let composite = cs.contains(' ');
        if base.is_empty() {
            if composite {
                format!("({cs})")
            } else {
                cs
            }
        } else if c.is_one() {
            base
        } else if c.neg().is_one() {
            format!("-{base}")
        } else if composite {
            format!("({cs})*{base}")
        } else {
            format!("{cs}*{base}")
        }
    }
}

impl fmt::Display for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = Self::fmt_term(c, k);
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(&format!(" - {rest}"));
            } else {
                out.push_str(&format!(" + {term}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Rational function num/den in q over Q(zeta), kept with a monic denominator.
///
/// Additions prefer a divisibility fast path (the denominators arising from
/// the Bernoulli recurrences are nested powers of xi*q^h - 1), falling back to
/// a gcd reduction when the representation would otherwise grow.
#[derive(Debug, Clone)]
pub struct RationalFunctionQ {
    num: PolyC,
    den: PolyC,
}

/// Degree past which results get a full gcd reduction.
const GCD_DEGREE_THRESHOLD: usize = 48;

impl RationalFunctionQ {
    pub fn new(num: PolyC, den: PolyC) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rf = RationalFunctionQ { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(num: PolyC) -> Self {
        RationalFunctionQ { num, den: PolyC::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyC::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyC::one())
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        Self::from_poly(PolyC::constant(c))
    }

    pub fn q() -> Self {
        Self::from_poly(PolyC::monomial(CyclotomicNumber::one(), 1))
    }

    pub fn num(&self) -> &PolyC {
        &self.num
    }

    pub fn den(&self) -> &PolyC {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyC::one();
            return;
        }
        if self.den.is_constant() {
            let inv = self.den.leading().inv().expect("nonzero denominator");
            self.num = self.num.scale(&inv);
            self.den = PolyC::one();
            return;
        }
        // Exact-division fast paths.
        if let Some(q) = self.num.try_exact_div(&self.den) {
            self.num = q;
            self.den = PolyC::one();
            return;
        }
        if !self.den.leading().is_one() {
            let inv = self.den.leading().inv().expect("nonzero denominator");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.num.degree().max(self.den.degree()) > GCD_DEGREE_THRESHOLD {
            self.reduce_gcd();
        }
    }

    /// Fully reduce by the polynomial gcd (canonical form).
    pub fn reduce_gcd(&mut self) {
        if self.num.is_zero() || self.den.is_constant() {
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.try_exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.try_exact_div(&g).expect("gcd divides denominator");
        }
        if !self.den.leading().is_one() {
            let inv = self.den.leading().inv().expect("nonzero denominator");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn reduced(&self) -> Self {
        let mut r = self.clone();
        r.reduce_gcd();
        r
    }

    pub fn add_rf(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (num, den) = if self.den == rhs.den {
            (self.num.add(&rhs.num), self.den.clone())
        } else if let Some(t) = rhs.den.try_exact_div(&self.den) {
            // self.den divides rhs.den
            (self.num.mul(&t).add(&rhs.num), rhs.den.clone())
        } else if let Some(t) = self.den.try_exact_div(&rhs.den) {
            (self.num.add(&rhs.num.mul(&t)), self.den.clone())
        } else {
            (
                self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
                self.den.mul(&rhs.den),
            )
        };
        let mut rf = RationalFunctionQ { num, den };
        rf.normalize();
        rf
    }

    pub fn neg_rf(&self) -> Self {
        RationalFunctionQ { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_rf(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-cancel before multiplying to limit degree growth.
        let (mut n1, mut d2) = (self.num.clone(), rhs.den.clone());
        if !d2.is_constant() {
            if let Some(q) = n1.try_exact_div(&d2) {
                n1 = q;
                d2 = PolyC::one();
            }
        }
        let (mut n2, mut d1) = (rhs.num.clone(), self.den.clone());
        if !d1.is_constant() {
            if let Some(q) = n2.try_exact_div(&d1) {
                n2 = q;
                d1 = PolyC::one();
            }
        }
        let mut rf = RationalFunctionQ { num: n1.mul(&n2), den: d1.mul(&d2) };
        rf.normalize();
        rf
    }

    pub fn inv_rf(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rf = RationalFunctionQ { num: self.den.clone(), den: self.num.clone() };
        rf.normalize();
        Ok(rf)
    }

    /// Substitute q -> q^e.
    pub fn substitute_power(&self, e: usize) -> Self {
        let mut rf = RationalFunctionQ {
            num: self.num.substitute_power(e),
            den: self.den.substitute_power(e),
        };
        rf.normalize();
        rf
    }

    /// Evaluate at a concrete point in any coefficient ring.
    pub fn eval_with<R: CoeffRing>(
        &self,
        x: &R,
        embed: &dyn Fn(&CyclotomicNumber) -> R,
    ) -> Result<R> {
        let n = self.num.eval_with(x, embed);
        let d = self.den.eval_with(x, embed);
        n.div(&d)
    }

    pub fn eval_cyclo(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.eval_with(x, &|c| c.clone())
    }
}

impl PartialEq for RationalFunctionQ {
    fn eq(&self, other: &Self) -> bool {
        // Cross multiplication avoids needing canonical forms.
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let single_term =
            r.num.is_constant() || r.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        if r.den.is_constant() && r.den.leading().is_one() {
            if single_term {
                write!(f, "{}", r.num)
            } else {
                write!(f, "({})", r.num)
            }
        } else {
            let num = if single_term { format!("{}", r.num) } else { format!("({})", r.num) };
            write!(f, "{}/({})", num, r.den)
        }
    }
}

impl CoeffRing for RationalFunctionQ {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Self::constant(CyclotomicNumber::from_rational(r.clone()))
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_rf(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_rf(&rhs.neg_rf())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_rf(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_rf()
    }
    fn inv(&self) -> Result<Self> {
        self.inv_rf()
    }
    fn is_zero(&self) -> bool {
        RationalFunctionQ::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::{rat_int, CyclotomicNumber as C};

    fn q_minus(n: i64) -> PolyC {
        PolyC::new(vec![C::from_integer(-n), C::one()])
    }

    #[test]
    fn division_with_remainder() {
        // (q^2 - 1) / (q - 1) = q + 1
        let num = PolyC::new(vec![C::from_integer(-1), C::zero(), C::one()]);
        let (q, r) = num.div_rem(&q_minus(1));
        assert!(r.is_zero());
        assert_eq!(q, PolyC::new(vec![C::one(), C::one()]));
    }

    #[test]
    fn gcd_of_powers() {
        let d = q_minus(1);
        let d2 = d.mul(&d);
        let d3 = d2.mul(&d);
        assert_eq!(d3.gcd(&d2), d2.monic());
    }

    #[test]
    fn add_uses_common_denominator() {
        let d = q_minus(1);
        let a = RationalFunctionQ::new(PolyC::one(), d.clone()).unwrap();
        let b = RationalFunctionQ::new(PolyC::one(), d.mul(&d)).unwrap();
        let s = a.add_rf(&b);
        // 1/(q-1) + 1/(q-1)^2 = q/(q-1)^2
        let expect =
            RationalFunctionQ::new(PolyC::monomial(C::one(), 1), d.mul(&d)).unwrap();
        assert_eq!(s, expect);
        assert_eq!(s.den().degree(), 2);
    }

    #[test]
    fn substitute_power_spreads_degrees() {
        let rf = RationalFunctionQ::new(PolyC::one(), q_minus(1)).unwrap();
        let rf3 = rf.substitute_power(3);
        assert_eq!(rf3.den().degree(), 3);
        let q = C::from_integer(2);
        // 1/(2^3 - 1) = 1/7
        assert_eq!(
            rf3.eval_cyclo(&q).unwrap(),
            C::from_rational(num_rational::BigRational::new(1.into(), 7.into()))
        );
    }

    #[test]
    fn display_reduced_forms() {
        let rf = RationalFunctionQ::new(PolyC::one(), q_minus(1)).unwrap();
        assert_eq!(format!("{rf}"), "1/(q - 1)");
        let c = RationalFunctionQ::constant(C::from_rational(rat_int(0)));
        assert_eq!(format!("{c}"), "0");
    }

    #[test]
    fn eq_by_cross_multiplication() {
        let d = q_minus(1);
        // (q+1)/(q^2-1) == 1/(q-1)
        let num = PolyC::new(vec![C::one(), C::one()]);
        let den = PolyC::new(vec![C::from_integer(-1), C::zero(), C::one()]);
        let a = RationalFunctionQ::new(num, den).unwrap();
        let b = RationalFunctionQ::new(PolyC::one(), d).unwrap();
        assert_eq!(a, b);
    }
}
