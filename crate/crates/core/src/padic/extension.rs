//! Arithmetic in Z_p[zeta_{p^m}], the totally ramified cyclotomic extension
//! that hosts the twist xi on the p-adic side.
//!
//! Elements are coefficient vectors of length phi(p^m) over `PadicNumber`,
//! reduced modulo Phi_{p^m}(x) = sum_{i<p} x^(i*p^(m-1)). Inverses and true
//! (fractional) valuations go through the Galois conjugates and the norm down
//! to Q_p.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::padic::number::{PadicNumber, Valuation};
use crate::ring::CoeffRing;

#[derive(Debug, Clone)]
pub struct PadicCycloNumber {
    p: u64,
    /// Extension level m: the ring is Z_p[zeta_{p^m}]; level 0 is Z_p itself.
    level: u32,
    coeffs: Vec<PadicNumber>,
}

fn phi_of_level(p: u64, level: u32) -> usize {
    if level == 0 {
        1
    } else {
        ((p - 1) * p.pow(level - 1)) as usize
    }
}

impl PadicCycloNumber {
    pub fn from_padic(x: PadicNumber) -> Self {
        PadicCycloNumber { p: x.prime(), level: 0, coeffs: vec![x] }
    }

    pub fn from_integer(p: u64, level: u32, n: i64, ctx: u32) -> Self {
        Self::constant(level, PadicNumber::from_integer(p, n, ctx))
    }

    pub fn constant(level: u32, c: PadicNumber) -> Self {
        let p = c.prime();
        assert!(p > 2 || level == 0, "extension levels at p = 2 are unsupported");
        let phi = phi_of_level(p, level);
        let mut coeffs = vec![c.zero_like(); phi];
        coeffs[0] = c;
        PadicCycloNumber { p, level, coeffs }
    }

    pub fn from_rational(p: u64, level: u32, r: &BigRational, ctx: u32) -> Result<Self> {
        Ok(Self::constant(level, PadicNumber::from_rational(p, r, ctx)?))
    }

    /// zeta_{p^level}^e as a ring element.
    pub fn generator_power(p: u64, level: u32, e: i64, ctx: u32) -> Self {
        assert!(p > 2 || level == 0, "extension levels at p = 2 are unsupported");
        let modulus = p.pow(level) as i64;
        let e = e.rem_euclid(modulus) as usize;
        let phi = phi_of_level(p, level);
        let mut poly = vec![PadicNumber::exact_zero(p, ctx); e + 1];
        poly[e] = PadicNumber::from_integer(p, 1, ctx);
        let coeffs = reduce_mod_phi(p, level, poly, phi, ctx);
        PadicCycloNumber { p, level, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    fn ctx(&self) -> u32 {
        self.coeffs.iter().map(|c| c.context_precision()).max().unwrap()
    }

    /// Lift into the level-`target` ring (target >= self.level), via
    /// zeta_{p^m} = zeta_{p^target}^(p^(target-m)).
    pub fn lift_to_level(&self, target: u32) -> Self {
        if target == self.level {
            return self.clone();
        }
        assert!(target > self.level, "cannot lower extension level");
        assert!(self.p > 2, "extension levels at p = 2 are unsupported");
        let ctx = self.ctx();
        let phi = phi_of_level(self.p, target);
        if self.level == 0 {
            let mut coeffs = vec![PadicNumber::exact_zero(self.p, ctx); phi];
            coeffs[0] = self.coeffs[0].clone();
            return PadicCycloNumber { p: self.p, level: target, coeffs };
        }
        let step = self.p.pow(target - self.level) as usize;
        let mut poly =
            vec![PadicNumber::exact_zero(self.p, ctx); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        let coeffs = reduce_mod_phi(self.p, target, poly, phi, ctx);
        PadicCycloNumber { p: self.p, level: target, coeffs }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        assert_eq!(a.p, b.p, "mixed primes");
        if a.level == b.level {
            (a.clone(), b.clone())
        } else if a.level < b.level {
            (a.lift_to_level(b.level), b.clone())
        } else {
            (a.clone(), b.lift_to_level(a.level))
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (x, y) = Self::common(self, rhs);
        let coeffs = x
            .coeffs
            .iter()
            .zip(y.coeffs.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        PadicCycloNumber { p: x.p, level: x.level, coeffs }
    }

    pub fn neg(&self) -> Self {
        PadicCycloNumber {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (x, y) = Self::common(self, rhs);
        if x.level == 0 {
            return PadicCycloNumber {
                p: x.p,
                level: 0,
                coeffs: vec![x.coeffs[0].mul(&y.coeffs[0])],
            };
        }
        let phi = x.coeffs.len();
        let ctx = x.ctx().max(y.ctx());
        let mut poly = vec![PadicNumber::exact_zero(x.p, ctx); 2 * phi - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if CoeffRing::is_zero(a) {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if !CoeffRing::is_zero(b) {
                    poly[i + j] = poly[i + j].add(&a.mul(b));
                }
            }
        }
        let coeffs = reduce_mod_phi(x.p, x.level, poly, phi, ctx);
        PadicCycloNumber { p: x.p, level: x.level, coeffs }
    }

    pub fn mul_scalar(&self, c: &PadicNumber) -> Self {
        PadicCycloNumber {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Apply the Galois automorphism zeta -> zeta^j (j coprime to p).
    fn galois(&self, j: u64) -> Self {
        if self.level == 0 {
            return self.clone();
        }
        let modulus = self.p.pow(self.level);
        let phi = self.coeffs.len();
        let ctx = self.ctx();
        let mut poly = vec![PadicNumber::exact_zero(self.p, ctx); modulus as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as u64 * j % modulus) as usize;
            poly[e] = poly[e].add(c);
        }
        let coeffs = reduce_mod_phi(self.p, self.level, poly, phi, ctx);
        PadicCycloNumber { p: self.p, level: self.level, coeffs }
    }

    /// Product of the conjugates over all nontrivial automorphisms.
    fn conjugate_product(&self) -> Self {
        let modulus = self.p.pow(self.level);
        let mut acc: Option<Self> = None;
        for j in 2..modulus {
            if j % self.p == 0 {
                continue;
            }
            let conj = self.galois(j);
            acc = Some(match acc {
                None => conj,
                Some(a) => a.mul(&conj),
            });
        }
        acc.expect("level >= 1 has nontrivial conjugates")
    }

    /// Field norm down to Q_p.
    pub fn norm(&self) -> PadicNumber {
        if self.level == 0 {
            return self.coeffs[0].clone();
        }
        let n = self.mul(&self.conjugate_product());
        // The norm is Galois-invariant, hence a scalar: higher coefficients
        // must vanish to working precision.
        let mut scalar = n.coeffs[0].clone();
        let mut min_abs = scalar.abs_precision();
        for c in &n.coeffs[1..] {
            debug_assert!(!c.is_provably_nonzero(), "norm has a non-scalar component");
            if let Some(a) = c.abs_precision() {
                min_abs = Some(min_abs.map_or(a, |b| b.min(a)));
            }
        }
        if let Some(a) = min_abs {
            scalar = scalar.truncate_abs(a);
        }
        scalar
    }

    pub fn inv(&self) -> Result<Self> {
        if self.level == 0 {
            return Ok(PadicCycloNumber {
                p: self.p,
                level: 0,
                coeffs: vec![self.coeffs[0].inv()?],
            });
        }
        let conj = self.conjugate_product();
        let norm = self.mul(&conj).coeffs[0].clone();
        let norm_inv = norm.inv()?;
        Ok(conj.mul_scalar(&norm_inv))
    }

    /// True valuation in (1/phi) * Z as (numerator, denominator), via the
    /// norm. None when the element is not provably nonzero.
    pub fn valuation_exact(&self) -> Option<(i64, u64)> {
        let n = self.norm();
        match n.valuation() {
            Valuation::Exactly(v) => Some((v, self.coeffs.len() as u64)),
            _ => None,
        }
    }

    /// Largest integer k with the element in p^k * Z_p[zeta] (coefficientwise
    /// lower bound); i64::MAX when nothing is provably nonzero.
    pub fn int_valuation_lower_bound(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|c| c.valuation().lower_bound())
            .min()
            .unwrap()
    }

    pub fn is_provably_nonzero(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_provably_nonzero())
    }

    /// Minimum absolute precision across coefficients; None if all exact.
    pub fn abs_precision_min(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.abs_precision()).min()
    }

    pub fn truncate_abs(&self, abs: i64) -> Self {
        PadicCycloNumber {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.truncate_abs(abs)).collect(),
        }
    }

    /// Valuation report of self, interpreting "zero to precision" correctly.
    pub fn valuation_report(&self) -> Valuation {
        if !self.is_provably_nonzero() {
            let bound = self.abs_precision_min();
            return match bound {
                None => Valuation::Infinite,
                Some(a) => Valuation::AtLeast(a),
            };
        }
        Valuation::Exactly(self.int_valuation_lower_bound())
    }
}

/// Reduce a polynomial (in the generator) modulo Phi_{p^m}, returning exactly
/// `phi` coefficients. Phi's coefficients are all 1 at exponents i*p^(m-1),
/// so the reduction is subtraction-only.
fn reduce_mod_phi(
    p: u64,
    level: u32,
    mut poly: Vec<PadicNumber>,
    phi: usize,
    ctx: u32,
) -> Vec<PadicNumber> {
    let stride = p.pow(level - 1) as usize;
    for d in (phi..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[d], PadicNumber::exact_zero(p, ctx));
        if CoeffRing::is_zero(&c) {
            continue;
        }
        // x^phi = -(x^0 + x^s + ... + x^((p-2)s)), s = p^(m-1)
        let base = d - phi;
        for j in 0..(p - 1) as usize {
            let idx = base + j * stride;
            poly[idx] = poly[idx].sub(&c);
        }
    }
    poly.truncate(phi);
    poly.resize(phi, PadicNumber::exact_zero(p, ctx));
    poly
}

impl PartialEq for PadicCycloNumber {
    fn eq(&self, other: &Self) -> bool {
        !self.sub(other).is_provably_nonzero()
    }
}

impl std::fmt::Display for PadicCycloNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.level == 0 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_provably_nonzero())
            .map(|(i, c)| {
                if i == 0 {
                    format!("({c})")
                } else {
                    format!("({c})*z^{i}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "O(p^{:?})", self.abs_precision_min())
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CoeffRing for PadicCycloNumber {
    fn zero_like(&self) -> Self {
        Self::constant(self.level, PadicNumber::exact_zero(self.p, self.ctx()))
    }
    fn one_like(&self) -> Self {
        Self::from_integer(self.p, self.level, 1, self.ctx())
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Self::from_rational(self.p, self.level, r, self.ctx()).expect("rational embeds in Q_p")
    }
    fn add(&self, rhs: &Self) -> Self {
        PadicCycloNumber::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PadicCycloNumber::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PadicCycloNumber::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        PadicCycloNumber::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        PadicCycloNumber::inv(self)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| CoeffRing::is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta5(ctx: u32) -> PadicCycloNumber {
        PadicCycloNumber::generator_power(5, 1, 1, ctx)
    }

    #[test]
    fn generator_has_order_five() {
        let z = zeta5(6);
        let z5 = CoeffRing::pow_u(&z, 5);
        assert_eq!(z5, PadicCycloNumber::from_integer(5, 1, 1, 6));
        // z^4 = -(1 + z + z^2 + z^3)
        let z4 = CoeffRing::pow_u(&z, 4);
        let mut expect = PadicCycloNumber::from_integer(5, 1, -1, 6);
        for e in 1..=3 {
            expect = expect.sub(&PadicCycloNumber::generator_power(5, 1, e, 6));
        }
        assert_eq!(z4, expect);
    }

    #[test]
    fn inverse_in_extension() {
        let z = zeta5(6);
        let x = z.add(&PadicCycloNumber::from_integer(5, 1, 3, 6)); // 3 + zeta
        let xi = x.inv().unwrap();
        let prod = x.mul(&xi);
        assert_eq!(prod, PadicCycloNumber::from_integer(5, 1, 1, 6));
    }

    #[test]
    fn ramified_valuation_of_uniformizer() {
        // v(zeta_5 - 1) = 1/4
        let pi = zeta5(8).sub(&PadicCycloNumber::from_integer(5, 1, 1, 8));
        assert_eq!(pi.valuation_exact(), Some((1, 4)));
        // and (zeta_5 - 1)^4 is 5 times a unit
        let pi4 = CoeffRing::pow_u(&pi, 4);
        assert_eq!(pi4.valuation_exact(), Some((4, 4)));
        assert_eq!(pi4.int_valuation_lower_bound(), 1);
    }

    #[test]
    fn level_lift_is_ring_map() {
        let x = PadicCycloNumber::from_integer(5, 0, 7, 6);
        let lifted = x.lift_to_level(1);
        assert_eq!(lifted.level(), 1);
        assert_eq!(lifted.coeffs()[0].to_integer_mod(6).unwrap(), 7u32.into());
        // mixed-level product
        let z = zeta5(6);
        let prod = x.mul(&z);
        assert_eq!(prod, z.mul_scalar(&PadicNumber::from_integer(5, 7, 6)));
    }

    #[test]
    fn norm_of_uniformizer_is_five_unit() {
        let pi = zeta5(8).sub(&PadicCycloNumber::from_integer(5, 1, 1, 8));
        let n = pi.norm();
        // Norm(zeta_5 - 1) = Phi_5(1) = 5
        assert_eq!(n.valuation().lower_bound(), 1);
        assert_eq!(n.to_integer_mod(4).unwrap(), 5u32.into());
    }
}
