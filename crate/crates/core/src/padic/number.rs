//! Finite-precision arithmetic in Q_p.
//!
//! A nonzero value is stored as p^val * unit with the unit known modulo
//! p^rel ("rel" significant digits), so the absolute precision is val + rel.
//! Zeros are either exact or "zero modulo p^abs": precision erosion from
//! cancellation and from dividing by p-divisible integers is tracked
//! intrinsically by the representation rather than estimated.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

/// Lower bound knowledge about a valuation: either pinned by a provably
/// nonzero digit or only bounded below by the absolute precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exactly(i64),
    AtLeast(i64),
    /// Exact zero: valuation is +infinity.
    Infinite,
}

impl Valuation {
    pub fn lower_bound(&self) -> i64 {
        match self {
            Valuation::Exactly(v) | Valuation::AtLeast(v) => *v,
            Valuation::Infinite => i64::MAX,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Exactly(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    ExactZero,
    /// Zero modulo p^abs; nothing known beyond.
    Zero { abs: i64 },
    /// p^val * unit, unit in [1, p^rel) coprime to p.
    Unit { val: i64, unit: BigUint, rel: u32 },
}

#[derive(Debug, Clone)]
pub struct PadicNumber {
    p: u64,
    /// Working precision used when exact scalars join this computation.
    ctx: u32,
    repr: Repr,
}

fn p_pow(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

impl PadicNumber {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn context_precision(&self) -> u32 {
        self.ctx
    }

    pub fn exact_zero(p: u64, ctx: u32) -> Self {
        PadicNumber { p, ctx, repr: Repr::ExactZero }
    }

    pub fn zero_mod(p: u64, ctx: u32, abs: i64) -> Self {
        PadicNumber { p, ctx, repr: Repr::Zero { abs } }
    }

    pub fn from_bigint(p: u64, n: &BigInt, ctx: u32) -> Self {
        if n.is_zero() {
            return Self::exact_zero(p, ctx);
        }
        let negative = n.is_negative();
        let mut mag = n.magnitude().clone();
        let bp = BigUint::from(p);
        let mut val: i64 = 0;
        while (&mag % &bp).is_zero() {
            mag /= &bp;
            val += 1;
        }
        let modulus = p_pow(p, ctx);
        let mut unit = mag % &modulus;
        if negative {
            unit = &modulus - unit;
        }
        // mag is coprime to p, so unit != 0 for ctx >= 1.
        PadicNumber { p, ctx, repr: Repr::Unit { val, unit, rel: ctx } }
    }

    pub fn from_integer(p: u64, n: i64, ctx: u32) -> Self {
        Self::from_bigint(p, &BigInt::from(n), ctx)
    }

    pub fn from_rational(p: u64, r: &BigRational, ctx: u32) -> Result<Self> {
        let num = Self::from_bigint(p, r.numer(), ctx);
        let den = Self::from_bigint(p, r.denom(), ctx);
        num.div(&den)
    }

    /// Unit digit string known modulo p^rel, valuation, and precision.
    pub fn repr_parts(&self) -> (Option<(i64, BigUint, u32)>, bool) {
        match &self.repr {
            Repr::Unit { val, unit, rel } => (Some((*val, unit.clone(), *rel)), false),
            Repr::Zero { .. } => (None, false),
            Repr::ExactZero => (None, true),
        }
    }

    /// Absolute precision: the value is known modulo p^abs. None = exact.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::Zero { abs } => Some(*abs),
            Repr::Unit { val, rel, .. } => Some(val + *rel as i64),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::ExactZero => Valuation::Infinite,
            Repr::Zero { abs } => Valuation::AtLeast(*abs),
            Repr::Unit { val, .. } => Valuation::Exactly(*val),
        }
    }

    pub fn is_provably_nonzero(&self) -> bool {
        matches!(self.repr, Repr::Unit { .. })
    }

    /// Reduce to absolute precision `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::ExactZero => self.clone(),
            Repr::Zero { abs: a } => Self::zero_mod(self.p, self.ctx, (*a).min(abs)),
            Repr::Unit { val, unit, rel } => {
                if val + *rel as i64 <= abs {
                    return self.clone();
                }
                if *val >= abs {
                    return Self::zero_mod(self.p, self.ctx, abs);
                }
                let new_rel = (abs - val) as u32;
                let unit = unit % p_pow(self.p, new_rel);
                if unit.is_zero() {
                    Self::zero_mod(self.p, self.ctx, abs)
                } else {
                    PadicNumber { p: self.p, ctx: self.ctx, repr: Repr::Unit { val: *val, unit, rel: new_rel } }
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed primes");
        let ctx = self.ctx.max(rhs.ctx);
        match (&self.repr, &rhs.repr) {
            (Repr::ExactZero, _) => {
                let mut r = rhs.clone();
                r.ctx = ctx;
                r
            }
            (_, Repr::ExactZero) => {
                let mut r = self.clone();
                r.ctx = ctx;
                r
            }
            (Repr::Zero { abs }, _) => rhs.truncate_abs(*abs),
            (_, Repr::Zero { abs }) => self.truncate_abs(*abs),
            (
                Repr::Unit { val: v1, unit: u1, rel: r1 },
                Repr::Unit { val: v2, unit: u2, rel: r2 },
            ) => {
                let abs = (v1 + *r1 as i64).min(v2 + *r2 as i64);
                let vmin = (*v1).min(*v2);
                if vmin >= abs {
                    return Self::zero_mod(self.p, ctx, abs);
                }
                let window = (abs - vmin) as u32;
                let modulus = p_pow(self.p, window);
                let t1 = u1 * p_pow(self.p, (v1 - vmin) as u32) % &modulus;
                let t2 = u2 * p_pow(self.p, (v2 - vmin) as u32) % &modulus;
                let s = (t1 + t2) % &modulus;
                if s.is_zero() {
                    return Self::zero_mod(self.p, ctx, abs);
                }
                let bp = BigUint::from(self.p);
                let mut mag = s;
                let mut val = vmin;
                while (&mag % &bp).is_zero() {
                    mag /= &bp;
                    val += 1;
                }
                let rel = (abs - val) as u32;
                PadicNumber { p: self.p, ctx, repr: Repr::Unit { val, unit: mag, rel } }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Unit { val, unit, rel } => {
                let unit = p_pow(self.p, *rel) - unit;
                PadicNumber { p: self.p, ctx: self.ctx, repr: Repr::Unit { val: *val, unit, rel: *rel } }
            }
            _ => self.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed primes");
        let ctx = self.ctx.max(rhs.ctx);
        match (&self.repr, &rhs.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => Self::exact_zero(self.p, ctx),
            (Repr::Zero { abs }, other) | (other, Repr::Zero { abs }) => {
                let shift = match other {
                    Repr::Unit { val, .. } => *val,
                    Repr::Zero { abs: b } => *b,
                    Repr::ExactZero => unreachable!(),
                };
                Self::zero_mod(self.p, ctx, abs + shift)
            }
            (
                Repr::Unit { val: v1, unit: u1, rel: r1 },
                Repr::Unit { val: v2, unit: u2, rel: r2 },
            ) => {
                let rel = (*r1).min(*r2);
                let unit = u1 * u2 % p_pow(self.p, rel);
                PadicNumber { p: self.p, ctx, repr: Repr::Unit { val: v1 + v2, unit, rel } }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::ExactZero | Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Unit { val, unit, rel } => {
                let modulus = p_pow(self.p, *rel);
                let inv = mod_inverse(unit, &modulus).ok_or(Error::DivisionByZero)?;
                Ok(PadicNumber {
                    p: self.p,
                    ctx: self.ctx,
                    repr: Repr::Unit { val: -val, unit: inv, rel: *rel },
                })
            }
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow_integer(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(CoeffRing::pow_u(self, e as u64))
        } else {
            Ok(CoeffRing::pow_u(&self.inv()?, (-e) as u64))
        }
    }

    /// The canonical integer representative modulo p^k (requires val >= 0 and
    /// absolute precision >= k).
    pub fn to_integer_mod(&self, k: u32) -> Option<BigUint> {
        match &self.repr {
            Repr::ExactZero => Some(BigUint::zero()),
            Repr::Zero { abs } => {
                if *abs >= k as i64 {
                    Some(BigUint::zero())
                } else {
                    None
                }
            }
            Repr::Unit { val, unit, rel } => {
                if *val < 0 || val + *rel as i64 < k as i64 {
                    return None;
                }
                Some(unit * p_pow(self.p, *val as u32) % p_pow(self.p, k))
            }
        }
    }

    /// Little-endian base-p digits of the unit part (`rel` of them), for the
    /// wire format {p, N, valuation, digits}.
    pub fn unit_digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Unit { unit, rel, .. } => {
                let mut digits = Vec::with_capacity(*rel as usize);
                let bp = BigUint::from(self.p);
                let mut u = unit.clone();
                for _ in 0..*rel {
                    let d = (&u % &bp).to_u64().unwrap();
                    digits.push(d);
                    u /= &bp;
                }
                digits
            }
            _ => Vec::new(),
        }
    }

    pub fn from_parts(p: u64, ctx: u32, valuation: i64, digits: &[u64]) -> Result<Self> {
        if digits.is_empty() {
            return Ok(Self::exact_zero(p, ctx));
        }
        let mut unit = BigUint::zero();
        let bp = BigUint::from(p);
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::InvalidInput(format!("digit {d} out of range for p={p}")));
            }
            unit = unit * &bp + BigUint::from(d);
        }
        if (unit.clone() % &bp).is_zero() {
            return Err(Error::InvalidInput("unit part must be coprime to p".into()));
        }
        Ok(PadicNumber {
            p,
            ctx,
            repr: Repr::Unit { val: valuation, unit, rel: digits.len() as u32 },
        })
    }

    /// Rendering like "2*5^0 + 1*5^1 + O(5^3)".
    pub fn to_display(&self) -> String {
        match &self.repr {
            Repr::ExactZero => "0".to_string(),
            Repr::Zero { abs } => format!("O({}^{})", self.p, abs),
            Repr::Unit { val, rel, .. } => {
                let digits = self.unit_digits();
                let mut parts = Vec::new();
                for (i, d) in digits.iter().enumerate() {
                    if *d != 0 {
                        parts.push(format!("{}*{}^{}", d, self.p, val + i as i64));
                    }
                }
                format!("{} + O({}^{})", parts.join(" + "), self.p, val + *rel as i64)
            }
        }
    }
}

fn mod_inverse(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    let mut x = ext.x % &m;
    if x.is_negative() {
        x += &m;
    }
    Some(x.magnitude().clone())
}

impl PartialEq for PadicNumber {
    /// Equality to the joint precision: true when the difference is not
    /// provably nonzero.
    fn eq(&self, other: &Self) -> bool {
        !self.sub(other).is_provably_nonzero()
    }
}

impl std::fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

impl CoeffRing for PadicNumber {
    fn zero_like(&self) -> Self {
        Self::exact_zero(self.p, self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::from_integer(self.p, 1, self.ctx)
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Self::from_rational(self.p, r, self.ctx).expect("rational embeds in Q_p")
    }
    fn add(&self, rhs: &Self) -> Self {
        PadicNumber::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PadicNumber::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PadicNumber::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        PadicNumber::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        PadicNumber::inv(self)
    }
    fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5(n: i64) -> PadicNumber {
        PadicNumber::from_integer(5, n, 8)
    }

    #[test]
    fn factor_valuation_and_unit() {
        let x = z5(50); // 2 * 5^2
        assert_eq!(x.valuation(), Valuation::Exactly(2));
        assert_eq!(x.to_integer_mod(4).unwrap(), BigUint::from(50u32));
    }

    #[test]
    fn addition_tracks_cancellation() {
        let x = z5(7).sub(&z5(7));
        assert_eq!(x.valuation(), Valuation::AtLeast(8));
        assert!(!x.is_provably_nonzero());
    }

    #[test]
    fn division_by_p_power_loses_reported_digits() {
        // x known mod 5^8 and divisible by nothing: x / 5^k known mod 5^(8-k)
        let x = z5(7);
        assert_eq!(x.abs_precision(), Some(8));
        let k = 3;
        let y = x.div(&z5(125)).unwrap();
        assert_eq!(y.valuation(), Valuation::Exactly(-(k as i64)));
        assert_eq!(y.abs_precision(), Some(8 - k as i64));
        // dividing by n with v_p(n) = k loses exactly k reported digits
    }

    #[test]
    fn rational_embedding() {
        // 1/2 in Z_5 mod 5^3: 63 since 2*63 = 126 = 1 + 125
        let half = PadicNumber::from_rational(5, &BigRational::new(1.into(), 2.into()), 3).unwrap();
        assert_eq!(half.to_integer_mod(3).unwrap(), BigUint::from(63u32));
    }

    #[test]
    fn digits_roundtrip_bit_exact() {
        let x = PadicNumber::from_rational(5, &BigRational::new(7.into(), 10.into()), 6).unwrap();
        let (parts, _) = x.repr_parts();
        let (val, _, rel) = parts.unwrap();
        let digits = x.unit_digits();
        assert_eq!(digits.len(), rel as usize);
        let back = PadicNumber::from_parts(5, x.context_precision(), val, &digits).unwrap();
        assert_eq!(back.unit_digits(), digits);
        assert!(back.sub(&x).valuation().lower_bound() >= x.abs_precision().unwrap());
    }

    #[test]
    fn negative_valuation_arithmetic() {
        let x = z5(1).div(&z5(5)).unwrap(); // 1/5
        let y = x.mul(&z5(5));
        assert!(!y.sub(&z5(1)).is_provably_nonzero());
        assert_eq!(y.valuation(), Valuation::Exactly(0));
    }
}
