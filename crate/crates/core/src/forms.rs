// SPDX-License-Identifier: Apache-2.0

//! Indefinite binary quadratic forms `aX² + 2bXY + cY²`, written `[a,b,c]`.
//!
//! Forms carry the right action of substitutions and the root
//! `(−b − √Δ)/a` carries the left linear fractional action, intertwined by
//! `root(f·h) = h⁻¹·root(f)` for `det h = +1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{check_discriminant, QuadIrr, Rat};
use crate::groupoid::{hom_in_h, orbit, Budget, Morphism};
use crate::lattice::Mat2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = Form { a: a.into(), b: b.into(), c: c.into() };
        check_discriminant(&f.disc())?;
        Ok(f)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + BigInt::from(2) * &self.b * x * y + &self.c * y * y
    }

    /// Substitutes `X ↦ pX + qY`, `Y ↦ rX + sY`.
    pub fn act(&self, h: &Mat2) -> Form {
        let [p, q, r, s] = h.entries();
        Form {
            a: self.eval(p, r),
            b: &self.a * p * q + &self.b * (p * s + q * r) + &self.c * r * s,
            c: self.eval(q, s),
        }
    }

    /// `(−b − √Δ)/a`.
    pub fn root(&self) -> QuadIrr {
        QuadIrr::from_parts(self.disc(), Rat::new(-&self.b, self.a.clone()), Rat::new(-BigInt::one(), self.a.clone()))
            .expect("form discriminant is validated at construction")
    }

    /// The unique form of discriminant `x.delta()` whose root is `x`.
    pub fn from_root(x: &QuadIrr) -> Result<Form> {
        let delta = x.delta();
        let not_root = || Error::NotAFormRoot(delta.clone());
        let a = -x.v().recip();
        if !a.is_integer() {
            return Err(not_root());
        }
        let b = -(x.u() * &a);
        if !b.is_integer() {
            return Err(not_root());
        }
        let (a, b) = (a.to_integer(), b.to_integer());
        let (c, rem) = (&b * &b - delta).div_rem(&a);
        if !rem.is_zero() {
            return Err(not_root());
        }
        Ok(Form { a, b, c })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

fn same_disc(f1: &Form, f2: &Form) -> Result<()> {
    let (d1, d2) = (f1.disc(), f2.disc());
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch(d1, d2));
    }
    Ok(())
}

/// Some `h ∈ SL(2,Z)` with `f1·h = f2`.
pub fn equivalent_sl(f1: &Form, f2: &Form, budget: &Budget) -> Result<Option<Mat2>> {
    same_disc(f1, f2)?;
    // a morphism root(f1) → root(f2) carries h⁻¹
    Ok(hom_in_h(&f1.root(), &f2.root(), budget)?.map(|m| m.mat().rep().inv()))
}

/// A generator of the automorph group of `f` in SL(2,Z), up to sign and
/// inversion.
pub fn stabilizer_generator(f: &Form, budget: &Budget) -> Result<Mat2> {
    let o = std::sync::Arc::new(orbit(&f.root(), budget)?);
    let start = o.preperiod().len();
    let period = o.period();
    let winding = if period % 2 == 0 { period } else { 2 * period };
    let lp = Morphism::from_pair(o.clone(), o, start, start + winding).expect("cycle returns to its start");
    // lp fixes root(f), hence so does its inverse, and f·A has root A⁻¹·root(f)
    Ok(lp.mat().rep().clone())
}

/// Least `t, u ≥ 1` with `t² − Δu² = 1`.
pub fn pell_fundamental(delta: &BigInt, budget: &Budget) -> Result<(BigInt, BigInt)> {
    check_discriminant(delta)?;
    let f = Form::new(1, 0, -delta)?;
    let a = stabilizer_generator(&f, budget)?;
    let trace = a.trace().abs();
    debug_assert!(trace.is_even());
    let u = a.entries()[2].abs();
    Ok((trace / 2, u))
}
