// SPDX-License-Identifier: Apache-2.0

//! Unimodular 2×2 integer matrices, their classes modulo ±1, and the
//! linear fractional action on quadratic irrationals.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{QuadIrr, Rat};

/// An element of GL(2,Z), rows `[[p, q], [r, s]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

impl Mat2 {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<Self> {
        let m = Mat2 { p: p.into(), q: q.into(), r: r.into(), s: s.into() };
        let det = m.det_value();
        if !(det.is_one() || det == -BigInt::one()) {
            return Err(Error::NotUnimodular(det));
        }
        Ok(m)
    }

    fn new_unchecked(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        let m = Mat2 { p, q, r, s };
        debug_assert!(m.det_value().abs().is_one());
        m
    }

    pub fn identity() -> Self {
        Self::new_unchecked(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// `[[a, 1], [1, 0]]`, the matrix carrying a derivative back to its point.
    pub fn generator(a: BigInt) -> Self {
        Self::new_unchecked(a, BigInt::one(), BigInt::one(), BigInt::zero())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    fn det_value(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    /// `+1` or `-1`.
    pub fn det(&self) -> i8 {
        if self.det_value().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn inv(&self) -> Mat2 {
        let d = self.det_value();
        Self::new_unchecked(&d * &self.s, -&d * &self.q, -&d * &self.r, d * &self.p)
    }

    /// `(p, r)`.
    pub fn first_column(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.r.clone())
    }

    /// Applies the matrix to a column vector.
    pub fn apply_vec(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().into_iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    /// `(p·x + q)/(r·x + s)`.
    pub fn mobius(&self, x: &QuadIrr) -> QuadIrr {
        let d = Rat::from_integer(x.delta().clone());
        let (p, q, r, s) = (Rat::from(self.p.clone()), Rat::from(self.q.clone()), Rat::from(self.r.clone()), Rat::from(self.s.clone()));
        // numerator and denominator as a + b√Δ
        let na = &p * x.u() + q;
        let nb = &p * x.v();
        let da = &r * x.u() + s;
        let db = r * x.v();
        let norm = &da * &da - &db * &db * &d;
        let u = (&na * &da - &nb * &db * &d) / &norm;
        let v = (nb * da - na * db) / norm;
        QuadIrr::from_parts(x.delta().clone(), u, v).expect("unimodular image of an irrational is irrational")
    }

    pub fn pmat(&self) -> PMat {
        PMat::canon(self)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, b: &Mat2) -> Mat2 {
        Mat2::new_unchecked(
            &self.p * &b.p + &self.q * &b.r,
            &self.p * &b.q + &self.q * &b.s,
            &self.r * &b.p + &self.s * &b.r,
            &self.r * &b.q + &self.s * &b.s,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, b: Mat2) -> Mat2 {
        &self * &b
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::new_unchecked(-&self.p, -&self.q, -&self.r, -&self.s)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.p, self.q, self.r, self.s)
    }
}

/// An element of GL(2,Z)/{±1}, held by its sign-canonical representative:
/// the first nonzero entry in reading order is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMat(Mat2);

impl PMat {
    pub fn canon(m: &Mat2) -> PMat {
        let lead = m.entries().into_iter().find(|e| !e.is_zero()).expect("unimodular matrix is nonzero");
        if lead.is_negative() {
            PMat(-m)
        } else {
            PMat(m.clone())
        }
    }

    pub fn identity() -> PMat {
        PMat(Mat2::identity())
    }

    pub fn rep(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> i8 {
        self.0.det()
    }

    pub fn inv(&self) -> PMat {
        PMat::canon(&self.0.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat2::identity()
    }

    pub fn mobius(&self, x: &QuadIrr) -> QuadIrr {
        self.0.mobius(x)
    }
}

impl Mul for &PMat {
    type Output = PMat;

    fn mul(self, b: &PMat) -> PMat {
        PMat::canon(&(&self.0 * &b.0))
    }
}

impl From<Mat2> for PMat {
    fn from(m: Mat2) -> Self {
        PMat::canon(&m)
    }
}

impl fmt::Display for PMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.0)
    }
}
