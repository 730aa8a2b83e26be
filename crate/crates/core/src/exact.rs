// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in a real quadratic field `Q(√Δ)`.
//!
//! Points are stored as `u + v·√Δ` with `u`, `v` reduced rationals, so two
//! points are equal exactly when their fields are equal. Every ordering
//! decision (floors, comparisons) is made with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// Integer square root: the `r` with `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::InvalidArgument(format!("isqrt of negative value {n}")));
    }
    Ok(n.sqrt())
}

pub fn is_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Ok(r) => &r * &r == *n,
        Err(_) => false,
    }
}

/// Rejects discriminants that are not positive nonsquare integers.
pub fn check_discriminant(delta: &BigInt) -> Result<()> {
    if !delta.is_positive() || is_square(delta) {
        return Err(Error::InvalidDiscriminant(delta.clone()));
    }
    Ok(())
}

/// Sign of `a + b·√Δ` for nonsquare `Δ > 0`.
pub(crate) fn sign_of(a: &Rat, b: &Rat, delta: &BigInt) -> Ordering {
    let sa = a.cmp(&Rat::zero());
    let sb = b.cmp(&Rat::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: the larger of |a| and |b|√Δ wins
    let a2 = a * a;
    let b2d = b * b * Rat::from_integer(delta.clone());
    if a2 > b2d {
        sa
    } else {
        sb
    }
}

/// A real quadratic irrational `u + v·√Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    delta: BigInt,
    u: Rat,
    v: Rat,
}

/// Result of a field operation, which collapses to a rational when the
/// `√Δ` coefficient cancels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rat),
    Irrational(QuadIrr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadIrr {
    /// Builds `(p + q·√Δ)/r`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>, delta: impl Into<BigInt>) -> Result<Self> {
        let (p, q, r, delta) = (p.into(), q.into(), r.into(), delta.into());
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        check_discriminant(&delta)?;
        if q.is_zero() {
            return Err(Error::NotIrrational);
        }
        Ok(QuadIrr {
            delta,
            u: Rat::new(p, r.clone()),
            v: Rat::new(q, r),
        })
    }

    pub fn from_parts(delta: BigInt, u: Rat, v: Rat) -> Result<Self> {
        check_discriminant(&delta)?;
        if v.is_zero() {
            return Err(Error::NotIrrational);
        }
        Ok(QuadIrr { delta, u, v })
    }

    // Callers guarantee a checked delta and nonzero v.
    fn from_parts_unchecked(delta: BigInt, u: Rat, v: Rat) -> Self {
        debug_assert!(!v.is_zero());
        QuadIrr { delta, u, v }
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    /// Galois conjugate `u − v·√Δ`.
    pub fn conjugate(&self) -> QuadIrr {
        Self::from_parts_unchecked(self.delta.clone(), self.u.clone(), -&self.v)
    }

    /// Common-denominator form `(P + Q·√Δ)/R` with `R > 0`.
    pub fn as_triple(&self) -> (BigInt, BigInt, BigInt) {
        let r = self.u.denom().lcm(self.v.denom());
        let p = self.u.numer() * (&r / self.u.denom());
        let q = self.v.numer() * (&r / self.v.denom());
        (p, q, r)
    }

    /// Exact floor.
    ///
    /// With `x = (P + Q√Δ)/R`, `⌊Q√Δ⌋` is read off `isqrt(Q²Δ)` (the square
    /// root is never an integer), and `⌊(P + y)/R⌋ = ⌊(P + ⌊y⌋)/R⌋` for `R > 0`.
    pub fn floor(&self) -> BigInt {
        let (p, q, r) = self.as_triple();
        let s = (&q * &q * &self.delta).sqrt();
        let floor_qroot = if q.is_positive() { s } else { -s - 1 };
        (p + floor_qroot).div_floor(&r)
    }

    /// Sign of `self − k` for a rational `k`.
    pub fn cmp_rat(&self, k: &Rat) -> Ordering {
        sign_of(&(&self.u - k), &self.v, &self.delta)
    }

    pub fn cmp_int(&self, k: &BigInt) -> Ordering {
        self.cmp_rat(&Rat::from_integer(k.clone()))
    }

    pub fn add_rat(&self, k: &Rat) -> QuadIrr {
        Self::from_parts_unchecked(self.delta.clone(), &self.u + k, self.v.clone())
    }

    pub fn sub_int(&self, k: &BigInt) -> QuadIrr {
        self.add_rat(&Rat::from_integer(-k))
    }

    /// `1/x`, never zero since `x` is irrational.
    pub fn recip(&self) -> QuadIrr {
        let d = Rat::from_integer(self.delta.clone());
        let norm = &self.u * &self.u - &self.v * &self.v * d;
        Self::from_parts_unchecked(self.delta.clone(), &self.u / &norm, -&self.v / norm)
    }

    pub fn field(&self, op: FieldOp, rhs: &Value) -> Result<Value> {
        Value::Irrational(self.clone()).field(op, rhs)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rat| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        let d: f64 = self.delta.to_string().parse().unwrap_or(f64::NAN);
        f(&self.u) + f(&self.v) * d.sqrt()
    }
}

impl PartialOrd for QuadIrr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.delta != other.delta {
            return None;
        }
        Some(sign_of(&(&self.u - &other.u), &(&self.v - &other.v), &self.delta))
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, r) = self.as_triple();
        let root = format!("sqrt({})", self.delta);
        let surd = if q.is_one() {
            root
        } else if q == -BigInt::one() {
            format!("-{root}")
        } else {
            format!("{q}*{root}")
        };
        let body = if p.is_zero() {
            surd
        } else if surd.starts_with('-') {
            format!("{p}{surd}")
        } else {
            format!("{p}+{surd}")
        };
        if r.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{r}")
        }
    }
}

impl Value {
    fn delta(&self) -> Option<&BigInt> {
        match self {
            Value::Rational(_) => None,
            Value::Irrational(x) => Some(&x.delta),
        }
    }

    fn parts(&self) -> (Rat, Rat) {
        match self {
            Value::Rational(r) => (r.clone(), Rat::zero()),
            Value::Irrational(x) => (x.u.clone(), x.v.clone()),
        }
    }

    fn from_parts(delta: Option<&BigInt>, u: Rat, v: Rat) -> Value {
        match delta {
            Some(d) if !v.is_zero() => Value::Irrational(QuadIrr::from_parts_unchecked(d.clone(), u, v)),
            _ => Value::Rational(u),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Rational(r) if r.is_zero())
    }

    /// Exact field arithmetic in `Q(√Δ)`.
    pub fn field(&self, op: FieldOp, rhs: &Value) -> Result<Value> {
        let delta = match (self.delta(), rhs.delta()) {
            (Some(a), Some(b)) if a != b => return Err(Error::DiscriminantMismatch(a.clone(), b.clone())),
            (Some(a), _) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        let dd = Rat::from_integer(delta.cloned().unwrap_or_else(BigInt::zero));
        let (u, v) = match op {
            FieldOp::Add => (a + c, b + d),
            FieldOp::Sub => (a - c, b - d),
            FieldOp::Mul => (&a * &c + &b * &d * &dd, a * d + b * c),
            FieldOp::Div => {
                if rhs.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                // (a + b√Δ)(c − d√Δ) / (c² − d²Δ)
                let norm = &c * &c - &d * &d * &dd;
                let u = (&a * &c - &b * &d * &dd) / &norm;
                let v = (b * c - a * d) / norm;
                (u, v)
            }
        };
        Ok(Value::from_parts(delta, u, v))
    }
}

impl From<QuadIrr> for Value {
    fn from(x: QuadIrr) -> Self {
        Value::Irrational(x)
    }
}

impl From<Rat> for Value {
    fn from(r: Rat) -> Self {
        Value::Rational(r)
    }
}
