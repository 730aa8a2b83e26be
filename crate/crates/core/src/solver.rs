// SPDX-License-Identifier: Apache-2.0

//! Proper representations of `m` by a form `f`.
//!
//! A proper representation `(x, y)` extends to some `h ∈ SL(2,Z)` with first
//! column `(x, y)`, and `f·h = [m, n', ℓ]` with `n'` determined modulo `m`.
//! Fixing the residue `0 ≤ n < |m|` gives the attached form
//! `f_n = [m, n, (n² − Δ)/m]`, and the representations in that class are the
//! first columns of `{h : f·h = f_n} = ±h₀·⟨A⟩`, where `A` generates the
//! automorphs of `f_n`. Each class is therefore one base solution plus a
//! transported automorph `B = h₀·A·h₀⁻¹`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::{equivalent_sl, stabilizer_generator, Form};
use crate::groupoid::Budget;
use crate::lattice::Mat2;
use crate::par;

/// One residue class of proper representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepClass {
    pub n: BigInt,
    pub attached: Form,
    pub base_matrix: Mat2,
    pub base_solution: (BigInt, BigInt),
    /// Generates the automorphs of `f`, with positive trace.
    pub automorph: Mat2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub form: Form,
    pub m: BigInt,
    pub delta: BigInt,
    /// Sorted by `n`.
    pub classes: Vec<RepClass>,
}

/// All `0 ≤ n < |m|` with `n² ≡ Δ (mod |m|)`.
pub fn residue_classes(delta: &BigInt, m: &BigInt) -> Result<Vec<BigInt>> {
    if m.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let modulus = m.abs();
    if let Some(md) = modulus.to_u64() {
        let target = u128::from(delta.mod_floor(&modulus).to_u64().expect("residue below modulus"));
        let md128 = u128::from(md);
        return Ok((0..md)
            .filter(|&n| u128::from(n) * u128::from(n) % md128 == target)
            .map(BigInt::from)
            .collect());
    }
    let mut out = Vec::new();
    let mut n = BigInt::zero();
    while n < modulus {
        if (&n * &n - delta).mod_floor(&modulus).is_zero() {
            out.push(n.clone());
        }
        n += 1;
    }
    Ok(out)
}

/// `[m, n, (n² − Δ)/m]`.
pub fn attach_form(n: &BigInt, m: &BigInt, delta: &BigInt) -> Result<Form> {
    if m.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let value = n * n - delta;
    let (ell, rem) = value.div_rem(m);
    if !rem.is_zero() {
        return Err(Error::NotDivisible { m: m.clone(), value });
    }
    Form::new(m.clone(), n.clone(), ell)
}

fn class_for(f: &Form, m: &BigInt, n: &BigInt, budget: &Budget) -> Result<Option<RepClass>> {
    let delta = f.disc();
    let attached = attach_form(n, m, &delta)?;
    let Some(base_matrix) = equivalent_sl(f, &attached, budget)? else {
        return Ok(None);
    };
    let a = stabilizer_generator(&attached, budget)?;
    let mut automorph = &(&base_matrix * &a) * &base_matrix.inv();
    if automorph.trace().is_negative() {
        automorph = -automorph;
    }
    let base_solution = base_matrix.first_column();
    Ok(Some(RepClass { n: n.clone(), attached, base_matrix, base_solution, automorph }))
}

fn solve_with(
    f: &Form,
    m: &BigInt,
    budget: &Budget,
    map: impl FnOnce(&[BigInt], &(dyn Fn(&BigInt) -> Result<Option<RepClass>> + Sync)) -> Vec<Result<Option<RepClass>>>,
) -> Result<SolveReport> {
    let delta = f.disc();
    let residues = residue_classes(&delta, m)?;
    let per_class = map(&residues, &|n: &BigInt| class_for(f, m, n, budget));
    let mut classes = Vec::new();
    for c in per_class {
        classes.extend(c?);
    }
    Ok(SolveReport { form: f.clone(), m: m.clone(), delta, classes })
}

/// Every class of proper representations of `m` by `f`. Residue classes are
/// solved concurrently with the `parallel` feature; output order is by `n`
/// either way.
pub fn solve_proper(f: &Form, m: &BigInt, budget: &Budget) -> Result<SolveReport> {
    solve_with(f, m, budget, |items, g| par::map(items, g))
}

pub fn solve_proper_sequential(f: &Form, m: &BigInt, budget: &Budget) -> Result<SolveReport> {
    solve_with(f, m, budget, |items, g| par::map_seq(items, g))
}

fn sort_key(p: &(BigInt, BigInt)) -> (BigInt, BigInt, BigInt) {
    (p.0.abs(), p.0.clone(), p.1.clone())
}

// B^k·v for k = 0, 1, … (or k = −1, −2, … via the inverse) while inside the
// box. Each coordinate obeys z_{k+1} = T·z_k − z_{k−1} with T = tr B ≥ 3, so
// once a coordinate is out of the box and not shrinking it never returns.
fn walk(b: &Mat2, start: (BigInt, BigInt), include_start: bool, bound: &BigInt, out: &mut Vec<(BigInt, BigInt)>) {
    let inside = |p: &(BigInt, BigInt)| p.0.abs() <= *bound && p.1.abs() <= *bound;
    let escaped = |prev: &BigInt, cur: &BigInt| cur.abs() > *bound && cur.abs() >= prev.abs();
    let mut prev = start.clone();
    if include_start && inside(&start) {
        out.push(start.clone());
    }
    let mut cur = b.apply_vec(&start.0, &start.1);
    loop {
        if inside(&cur) {
            out.push(cur.clone());
        }
        if escaped(&prev.0, &cur.0) || escaped(&prev.1, &cur.1) {
            break;
        }
        let next = b.apply_vec(&cur.0, &cur.1);
        prev = std::mem::replace(&mut cur, next);
    }
}

/// All `±B^k·(x₀, y₀)` with `max(|x|, |y|) ≤ bound`, ordered by `|x|`, then
/// `x`, then `y`.
pub fn enumerate(cls: &RepClass, bound: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    if bound < &BigInt::one() {
        return Err(Error::InvalidArgument(format!("bound must be at least 1, got {bound}")));
    }
    let b = &cls.automorph;
    debug_assert!(b.trace().abs() > BigInt::from(2));
    let mut found = Vec::new();
    walk(b, cls.base_solution.clone(), true, bound, &mut found);
    walk(&b.inv(), cls.base_solution.clone(), false, bound, &mut found);
    let mut set = BTreeSet::new();
    for (x, y) in found {
        set.insert(sort_key(&(-&x, -&y)));
        set.insert(sort_key(&(x, y)));
    }
    Ok(set.into_iter().map(|(_, x, y)| (x, y)).collect())
}

/// `(f(x, y) = m, f(x, y) = m ∧ gcd(x, y) = 1)`.
pub fn verify_representation(f: &Form, m: &BigInt, x: &BigInt, y: &BigInt) -> (bool, bool) {
    let is_rep = &f.eval(x, y) == m;
    (is_rep, is_rep && x.gcd(y).is_one())
}
