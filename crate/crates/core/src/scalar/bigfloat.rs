//! Arbitrary-precision binary floating point with a fixed mantissa width.
//!
//! Every value is `mant * 2^exp` with the mantissa normalized to exactly
//! `prec` bits (or zero). Every operation rounds its exact result to the
//! operand precision, nearest-even, so a run at mantissa width `w` behaves
//! like ideal machine arithmetic with a `w`-bit significand and unbounded
//! exponent. There are no NaNs, infinities or subnormals: exponents are
//! unbounded and division by zero panics like integer division.

use super::{decimal_significant, ScalarOps};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Mantissa width in bits; the `Ctx` of the float backend.
pub type Precision = u32;

#[derive(Debug, Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: Precision,
}

impl BigFloat {
    pub fn zero(prec: Precision) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_u64(v: u64, prec: Precision) -> Self {
        round_parts(BigInt::from(v), 0, prec, false)
    }

    /// Nearest `prec`-bit float to the exact rational `r`.
    pub fn from_rational(r: &BigRational, prec: Precision) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let (sign, num) = split(r.numer());
        let den = r.denom().magnitude().clone();
        let shift = (prec as i64 + 2 + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let (q, rem) = num_integer::Integer::div_rem(&(num << shift), &den);
        round_parts(
            BigInt::from_biguint(sign, q),
            -(shift as i64),
            prec,
            !rem.is_zero(),
        )
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Exponent of one unit in the last mantissa place; `None` for zero.
    pub fn ulp_exp(&self) -> Option<i64> {
        if self.mant.is_zero() {
            None
        } else {
            Some(self.exp)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Square root, rounded to the operand precision. Panics on negatives.
    pub fn sqrt(&self) -> Self {
        assert!(
            !self.is_negative(),
            "square root of a negative value"
        );
        if self.mant.is_zero() {
            return Self::zero(self.prec);
        }
        let mag = self.mant.magnitude();
        let target = 2 * (self.prec as u64 + 2);
        let mut shift = target.saturating_sub(mag.bits());
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let t: BigUint = mag << shift;
        let root = t.sqrt();
        let sticky = &root * &root != t;
        round_parts(
            BigInt::from_biguint(Sign::Plus, root),
            (self.exp - shift as i64) / 2,
            self.prec,
            sticky,
        )
    }

    /// `self^e` by repeated multiplication (each step rounded).
    pub fn pow_u32(&self, e: u32) -> Self {
        let mut acc = BigFloat::from_u64(1, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = sign_i8(&self.mant);
        let sb = sign_i8(&other.mant);
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes by top-bit weight first.
        let pa = self.exp + self.mant.bits() as i64;
        let pb = other.exp + other.mant.bits() as i64;
        let mag = if pa != pb {
            pa.cmp(&pb)
        } else {
            let shift_a = (self.exp - self.exp.min(other.exp)) as u64;
            let shift_b = (other.exp - self.exp.min(other.exp)) as u64;
            (self.mant.magnitude() << shift_a).cmp(&(other.mant.magnitude() << shift_b))
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

fn sign_i8(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn split(v: &BigInt) -> (Sign, BigUint) {
    (v.sign(), v.magnitude().clone())
}

/// Rounds `mant * 2^exp` to `prec` mantissa bits, nearest, ties to even.
/// `sticky` signals that the exact value carries nonzero bits below the
/// given mantissa. Callers that set `sticky` must supply a mantissa wider
/// than `prec`.
fn round_parts(mant: BigInt, mut exp: i64, prec: Precision, sticky: bool) -> BigFloat {
    let (sign, mut mag) = split(&mant);
    if mag.is_zero() {
        return BigFloat::zero(prec);
    }
    let bits = mag.bits();
    if bits <= prec as u64 {
        debug_assert!(!sticky, "sticky rounding needs guard bits");
        let shift = prec as u64 - bits;
        mag <<= shift;
        exp -= shift as i64;
        return BigFloat {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        };
    }

    let cut = bits - prec as u64;
    let low = &mag & ((BigUint::one() << cut) - BigUint::one());
    let mut q = mag >> cut;
    let half = BigUint::one() << (cut - 1);
    let round_up = match low.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sticky || q.bit(0),
    };
    exp += cut as i64;
    if round_up {
        q += BigUint::one();
        if q.bits() > prec as u64 {
            q >>= 1;
            exp += 1;
        }
    }
    BigFloat {
        mant: BigInt::from_biguint(sign, q),
        exp,
        prec,
    }
}

impl ScalarOps for BigFloat {
    type Ctx = Precision;

    fn from_u64(v: u64, ctx: &Precision) -> Self {
        BigFloat::from_u64(v, *ctx)
    }

    fn from_rational(r: &BigRational, ctx: &Precision) -> Self {
        BigFloat::from_rational(r, *ctx)
    }

    fn zero(ctx: &Precision) -> Self {
        BigFloat::zero(*ctx)
    }

    fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.mant.is_zero() {
            return round_parts(rhs.mant.clone(), rhs.exp, prec, false);
        }
        if rhs.mant.is_zero() {
            return round_parts(self.mant.clone(), self.exp, prec, false);
        }
        let (hi, lo) = if self.exp >= rhs.exp {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = (hi.exp - lo.exp) as u64;
        // Beyond prec + 2 bits the low operand only matters as a tie
        // breaker; a one-unit surrogate four guard bits down rounds
        // identically and keeps the alignment shift bounded.
        if gap <= prec as u64 + 2 {
            let m = (&hi.mant << gap) + &lo.mant;
            round_parts(m, lo.exp, prec, false)
        } else {
            let m = (&hi.mant << 4u32) + BigInt::from(sign_i8(&lo.mant));
            round_parts(m, hi.exp - 4, prec, false)
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.mant.is_zero() || rhs.mant.is_zero() {
            return BigFloat::zero(prec);
        }
        round_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec, false)
    }

    fn div(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        assert!(!rhs.mant.is_zero(), "division by zero");
        if self.mant.is_zero() {
            return BigFloat::zero(prec);
        }
        let (sa, ma) = split(&self.mant);
        let (sb, mb) = split(&rhs.mant);
        let shift = prec as u64 + 2 + mb.bits().saturating_sub(ma.bits());
        let (q, rem) = num_integer::Integer::div_rem(&(ma << shift), &mb);
        let sign = if sa == sb { Sign::Plus } else { Sign::Minus };
        round_parts(
            BigInt::from_biguint(sign, q),
            self.exp - rhs.exp - shift as i64,
            prec,
            !rem.is_zero(),
        )
    }

    fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn one_like(&self) -> Self {
        BigFloat::from_u64(1, self.prec)
    }

    fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl std::fmt::Display for BigFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", decimal_significant(&self.to_rational(), 12))
    }
}
