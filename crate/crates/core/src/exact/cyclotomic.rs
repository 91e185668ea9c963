//! Exact arithmetic in cyclotomic fields Q(zeta_r).
//!
//! An element is stored as a polynomial in `zeta_r` of degree < phi(r),
//! reduced modulo the r-th cyclotomic polynomial `Phi_r`. Reduction modulo
//! `Phi_r` (rather than x^r - 1) keeps the representation a field, so every
//! nonzero element has an inverse. Elements of different orders are combined
//! by lifting both into Q(zeta_lcm).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Euler's totient for small arguments.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---------------------------------------------------------------------------
// Dense polynomials over Q, used only for Phi_r and reduction machinery.
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b (b nonzero), coefficients in Q.
fn poly_div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    assert!(!bb.iter().all(Zero::is_zero), "polynomial division by zero");
    let db = bb.len() - 1;
    let lead_inv = bb[db].recip();
    if rem.len() < bb.len() {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db || (rem.len() == bb.len() && !rem.iter().all(Zero::is_zero)) {
        let dr = rem.len() - 1;
        if dr < db || rem.iter().all(Zero::is_zero) {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        quot[dr - db] = c.clone();
        for k in 0..=db {
            let t = &bb[k] * &c;
            rem[dr - db + k] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u64, Rc<Vec<Rat>>>> = RefCell::new(HashMap::new());
}

/// The r-th cyclotomic polynomial as a monic coefficient vector of length phi(r)+1.
pub fn cyclotomic_polynomial(r: u64) -> Rc<Vec<Rat>> {
    assert!(r >= 1);
    if let Some(hit) = PHI_CACHE.with(|c| c.borrow().get(&r).cloned()) {
        return hit;
    }
    // Phi_r = (x^r - 1) / prod_{d | r, d < r} Phi_d
    let mut num = vec![Rat::zero(); (r + 1) as usize];
    num[0] = -Rat::one();
    num[r as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in 1..r {
        if r % d == 0 {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    let (quot, rem) = poly_div_rem(&num, &den);
    debug_assert!(rem.iter().all(Zero::is_zero));
    let rc = Rc::new(quot);
    PHI_CACHE.with(|c| c.borrow_mut().insert(r, rc.clone()));
    rc
}

// ---------------------------------------------------------------------------
// CyclotomicNumber
// ---------------------------------------------------------------------------

/// Exact element of Q(zeta_r): `coeffs[i]` is the coefficient of zeta_r^i,
/// with the vector reduced modulo Phi_r, so `coeffs.len() == phi(r)`.
#[derive(Debug, Clone)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rat>,
}

impl CyclotomicNumber {
    fn from_poly(order: u64, mut poly: Vec<Rat>) -> Self {
        let phi = euler_phi(order) as usize;
        poly_trim(&mut poly);
        if poly.len() > phi {
            let modulus = cyclotomic_polynomial(order);
            let (_, rem) = poly_div_rem(&poly, &modulus);
            poly = rem;
        }
        poly.resize(phi, Rat::zero());
        CyclotomicNumber { order, coeffs: poly }
    }

    pub fn zero() -> Self {
        CyclotomicNumber { order: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        CyclotomicNumber { order: 1, coeffs: vec![Rat::one()] }
    }

    pub fn from_rational(r: Rat) -> Self {
        CyclotomicNumber { order: 1, coeffs: vec![r] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// zeta_r^k, reduced modulo Phi_r. The result has multiplicative order
    /// r / gcd(r, k).
    pub fn root_of_unity(r: u64, k: i64) -> Self {
        assert!(r >= 1);
        let e = k.rem_euclid(r as i64) as u64;
        let mut poly = vec![Rat::zero(); (e + 1) as usize];
        poly[e as usize] = Rat::one();
        Self::from_poly(r, poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |r| r.is_one())
    }

    /// Lift into Q(zeta_target); `target` must be a multiple of `self.order`.
    pub fn lift_to(&self, target: u64) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "lift target must be a multiple of the order");
        let step = (target / self.order) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Self::from_poly(target, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u64) {
        let l = a.order.lcm(&b.order);
        (a.lift_to(l), b.lift_to(l), l)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (mut x, y, l) = Self::common(self, rhs);
        for (c, d) in x.coeffs.iter_mut().zip(y.coeffs.iter()) {
            *c += d;
        }
        CyclotomicNumber { order: l, coeffs: x.coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (x, y, l) = Self::common(self, rhs);
        let prod = poly_mul(&x.coeffs, &y.coeffs);
        Self::from_poly(l, prod)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo Phi_r.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()).lift_to(self.order));
        }
        let modulus = cyclotomic_polynomial(self.order);
        // Extended Euclid: maintain r0 = modulus, r1 = self; s-coefficients of self.
        let mut r0: Vec<Rat> = (*modulus).clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0 = vec![Rat::zero()];
        let mut s1 = vec![Rat::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r2) = poly_div_rem(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), Rat::zero());
            for (i, c) in qs1.iter().enumerate() {
                s2[i] -= c;
            }
            poly_trim(&mut s2);
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // r0 is the gcd: a nonzero constant since Phi_r is irreducible.
        debug_assert!(r0.len() == 1 && !r0[0].is_zero());
        let scale = r0[0].recip();
        let coeffs = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::from_poly(self.order, coeffs))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u(e as u64))
        } else {
            Ok(self.inv()?.pow_u((-e) as u64))
        }
    }

    /// Multiplicative order, if this element is a root of unity of order
    /// dividing `self.order` (times -1 for even embeddings). Returns None for
    /// non-roots.
    pub fn root_order(&self) -> Option<u64> {
        let bound = self.order.lcm(&2);
        let mut pow = self.clone();
        for k in 1..=bound {
            if pow.is_one() {
                return Some(k);
            }
            pow = pow.mul(self);
        }
        None
    }

    /// Numeric embedding sending zeta_r to exp(2*pi*i/r).
    pub fn embed_complex(&self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.order as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * root + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (x, y, _) = Self::common(self, other);
        x.coeffs == y.coeffs
    }
}

impl Eq for CyclotomicNumber {}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rat(&r));
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sym = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            let body = if sym.is_empty() {
                fmt_rat(c)
            } else if c.is_one() {
                sym
            } else if (-c.clone()).is_one() {
                format!("-{sym}")
            } else {
                format!("{}*{}", fmt_rat(c), sym)
            };
            if parts.is_empty() {
                parts.push(body);
            } else if let Some(rest) = body.strip_prefix('-') {
                parts.push(format!("- {rest}"));
            } else {
                parts.push(format!("+ {body}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(r: u64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(r, 1)
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let phi5 = cyclotomic_polynomial(5);
        assert_eq!(phi5.len(), 5);
        assert!(phi5.iter().all(|c| c == &Rat::one()));
        let phi4 = cyclotomic_polynomial(4);
        assert_eq!(&*phi4, &vec![Rat::one(), Rat::zero(), Rat::one()]);
        let phi1 = cyclotomic_polynomial(1);
        assert_eq!(&*phi1, &vec![-Rat::one(), Rat::one()]);
        assert_eq!(cyclotomic_polynomial(12).len(), 5); // phi(12) = 4
    }

    #[test]
    fn embed_order_one_is_one() {
        assert_eq!(CyclotomicNumber::root_of_unity(1, 0), CyclotomicNumber::one());
    }

    #[test]
    fn embed_zeta4_squared_is_minus_one() {
        let m1 = CyclotomicNumber::root_of_unity(4, 2);
        assert_eq!(m1, CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn embed_zeta5_fourth_power_reduces() {
        // x^4 mod Phi_5 = -(1 + x + x^2 + x^3)
        let z4 = CyclotomicNumber::root_of_unity(5, 4);
        let expect = CyclotomicNumber {
            order: 5,
            coeffs: vec![rat_int(-1), rat_int(-1), rat_int(-1), rat_int(-1)],
        };
        assert_eq!(z4, expect);
    }

    #[test]
    fn roots_have_exact_order() {
        for r in [1u64, 2, 3, 4, 5, 8, 12] {
            let z = zeta(r);
            assert!(z.pow_u(r).is_one(), "zeta_{r}^{r} != 1");
            for k in 1..r {
                assert!(!z.pow_u(k).is_one(), "zeta_{r}^{k} == 1");
            }
        }
    }

    #[test]
    fn inverse_of_root_is_conjugate_power() {
        let z = zeta(3);
        assert_eq!(z.inv().unwrap(), z.pow_u(2));
        assert!(z.mul(&z.pow_u(2)).is_one());
    }

    #[test]
    fn inv_of_zero_rejected() {
        assert_eq!(CyclotomicNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn phi5_at_one_is_five() {
        // (1 - z)(1 - z^2)(1 - z^3)(1 - z^4) = Phi_5(1) = 5
        let one = CyclotomicNumber::one();
        let mut prod = CyclotomicNumber::one();
        for k in 1..=4 {
            prod = prod.mul(&one.sub(&CyclotomicNumber::root_of_unity(5, k)));
        }
        assert_eq!(prod, CyclotomicNumber::from_integer(5));
    }

    #[test]
    fn mixed_order_arithmetic_lifts() {
        // zeta_3 * zeta_4 has order 12
        let z3 = zeta(3);
        let z4 = zeta(4);
        let prod = z3.mul(&z4);
        assert_eq!(prod.root_order(), Some(12));
        assert_eq!(prod, CyclotomicNumber::root_of_unity(12, 7)); // 7 = 4 + 3 mod 12 exponent CRT
    }

    #[test]
    fn root_order_of_embedded_powers() {
        assert_eq!(CyclotomicNumber::root_of_unity(4, 2).root_order(), Some(2));
        assert_eq!(CyclotomicNumber::root_of_unity(12, 4).root_order(), Some(3));
        assert_eq!(zeta(8).root_order(), Some(8));
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", CyclotomicNumber::from_rational(rat(-3, 2))), "-3/2");
        let z = zeta(5);
        assert_eq!(format!("{}", z), "z5");
        assert_eq!(format!("{}", z.scale(&rat_int(2)).add(&CyclotomicNumber::one())), "1 + 2*z5");
    }
}
