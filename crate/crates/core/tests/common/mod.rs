// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration and acceptance tests.
//! None of these go through the library's floor, orbit or groupoid code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use hurwitz::{Form, Mat2, QuadIrr};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Integer square root by bisection.
pub fn bisect_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while &hi * &hi <= *n {
        hi <<= 1;
    }
    // lo² ≤ n < hi²
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if &mid * &mid <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Rational interval containing `(p + q√Δ)/r` at `bits` bits of precision.
fn interval(p: &BigInt, q: &BigInt, r: &BigInt, delta: &BigInt, bits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << bits;
    let s = bisect_sqrt(&(delta * &scale * &scale));
    let lo_root = BigRational::new(s.clone(), scale.clone());
    let hi_root = BigRational::new(s + 1, scale);
    let pr = BigRational::from_integer(p.clone());
    let qr = BigRational::from_integer(q.clone());
    let rr = BigRational::from_integer(r.clone());
    let (a, b) = (&pr + &qr * &lo_root, &pr + &qr * &hi_root);
    let (a, b) = (a / &rr, b / &rr);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Floor of `(p + q√Δ)/r`, escalating precision until the interval is
/// strictly inside one unit cell.
pub fn floor_oracle(p: &BigInt, q: &BigInt, r: &BigInt, delta: &BigInt) -> BigInt {
    let mut bits = 16;
    loop {
        let (lo, hi) = interval(p, q, r, delta, bits);
        let (fl, fh) = (lo.floor(), hi.floor());
        if fl == fh && lo != fl {
            return fl.to_integer();
        }
        bits *= 2;
    }
}

/// First `count` partial quotients of `(p + q√Δ)/r` by interval arithmetic.
pub fn cf_oracle(p: i64, q: i64, r: i64, delta: i64, count: usize) -> Vec<BigInt> {
    let (p, q, r, d) = (BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(delta));
    let mut bits = 32;
    'restart: loop {
        let (mut lo, mut hi) = interval(&p, &q, &r, &d, bits);
        let mut out = Vec::new();
        while out.len() < count {
            let (fl, fh) = (lo.floor(), hi.floor());
            if fl != fh || lo == fl {
                bits *= 2;
                continue 'restart;
            }
            out.push(fl.to_integer());
            let (nlo, nhi) = ((&hi - &fl).recip(), (&lo - &fl).recip());
            lo = nlo;
            hi = nhi;
        }
        return out;
    }
}

/// Least `(t, u)` with `t² − Δu² = 1` by scanning `u`.
pub fn pell_brute(delta: i64) -> (BigInt, BigInt) {
    let d = BigInt::from(delta);
    let mut u = BigInt::one();
    loop {
        let t2 = &d * &u * &u + 1;
        let t = bisect_sqrt(&t2);
        if &t * &t == t2 {
            return (t, u);
        }
        u += 1;
    }
}

/// Least `(t, u)` from the convergents of √Δ, via the classical integer
/// recurrence `m ← da − m, d ← (Δ − m²)/d, a ← ⌊(a₀ + m)/d⌋`.
pub fn pell_convergents(delta: i64) -> (BigInt, BigInt) {
    let big_d = BigInt::from(delta);
    let a0 = bisect_sqrt(&big_d);
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - &big_d * &k * &k == BigInt::one() {
            return (h, k);
        }
        m = &d * &a - &m;
        d = (&big_d - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

pub type SmallForm = (i64, i64, i64);

pub fn small_forms(max: i64, delta_max: i64) -> Vec<SmallForm> {
    let mut out = Vec::new();
    for a in -max..=max {
        for b in -max..=max {
            for c in -max..=max {
                let d = b * b - a * c;
                if d > 0 && d <= delta_max && !is_square_i64(d) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

pub fn is_square_i64(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
    }
}

pub fn disc(f: SmallForm) -> i64 {
    f.1 * f.1 - f.0 * f.2
}

/// Forms reachable from `f` by at most `depth` substitutions from
/// `{S, T, T⁻¹}`, which generate SL(2,Z).
pub fn bfs_reach(f: SmallForm, depth: usize) -> HashSet<SmallForm> {
    let mut seen = HashSet::from([f]);
    let mut queue = VecDeque::from([(f, 0usize)]);
    while let Some(((a, b, c), k)) = queue.pop_front() {
        if k == depth {
            continue;
        }
        for g in [(c, -b, a), (a, a + b, a + 2 * b + c), (a, b - a, a - 2 * b + c)] {
            if seen.insert(g) {
                queue.push_back((g, k + 1));
            }
        }
    }
    seen
}

pub type SmallMat = [i64; 4];

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Every automorph of `[a,b,c]` in SL(2,Z) with entries bounded by `bound`.
///
/// The first column `(p, r)` must represent `a`, so for each `r` the
/// candidates are the integer roots `p = (−br ± √(Δr² + a²))/a`. The second
/// column is then fixed up to `(q, s) + k(p, r)`, and the middle coefficient
/// moves by `k·a`, which pins `k`.
pub fn automorph_scan(f: SmallForm, bound: i64) -> HashSet<SmallMat> {
    let (a, b, c) = f;
    let d = disc(f);
    let eval = |x: i64, y: i64| a * x * x + 2 * b * x * y + c * y * y;
    let mut out = HashSet::new();
    for r in -bound..=bound {
        let rad = d * r * r + a * a;
        let s = (rad as f64).sqrt().round() as i64;
        let Some(root) = (s - 1..=s + 1).find(|t| *t >= 0 && t * t == rad) else {
            continue;
        };
        for num in [-b * r + root, -b * r - root] {
            if num % a != 0 {
                continue;
            }
            let p = num / a;
            if p.abs() > bound || eval(p, r) != a {
                continue;
            }
            // p·s − q·r = 1
            let (g, x, y) = egcd(p, -r);
            if g != 1 {
                continue;
            }
            let (s0, q0) = (x, y);
            let mid = |q: i64, s: i64| a * p * q + b * (p * s + q * r) + c * r * s;
            let diff = b - mid(q0, s0);
            if diff % a != 0 {
                continue;
            }
            let k = diff / a;
            let (q, s) = (q0 + k * p, s0 + k * r);
            if q.abs() > bound || s.abs() > bound {
                continue;
            }
            if eval(q, s) == c && mid(q, s) == b && p * s - q * r == 1 {
                out.insert([p, q, r, s]);
            }
        }
    }
    out
}

pub fn to_small(m: &Mat2) -> Option<SmallMat> {
    let e = m.entries();
    let mut out = [0i64; 4];
    for k in 0..4 {
        out[k] = i64::try_from(e[k]).ok()?;
    }
    Some(out)
}

/// `{±A^k}` with entries bounded by `bound`.
pub fn power_set(a: &Mat2, bound: i64) -> HashSet<SmallMat> {
    let mut out = HashSet::new();
    for base in [a.clone(), a.inv()] {
        let mut cur = Mat2::identity();
        for _ in 0..64 {
            if let Some(s) = to_small(&cur) {
                if s.iter().all(|e| e.abs() <= bound) {
                    out.insert(s);
                    out.insert(s.map(|e| -e));
                }
            }
            cur = &cur * &base;
        }
    }
    out
}

/// Proper representations of `m` by `f` in the box `max(|x|,|y|) ≤ bound`.
pub fn brute_reps(f: SmallForm, m: i64, bound: i64) -> HashSet<(i64, i64)> {
    let (a, b, c) = f;
    let mut out = HashSet::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if a * x * x + 2 * b * x * y + c * y * y == m && x.gcd(&y) == 1 {
                out.insert((x, y));
            }
        }
    }
    out
}

pub fn form(f: SmallForm) -> Form {
    Form::new(f.0, f.1, f.2).unwrap()
}

pub fn random_qi<R: Rng>(rng: &mut R, deltas: &[i64]) -> QuadIrr {
    let d = deltas[rng.gen_range(0..deltas.len())];
    let p = rng.gen_range(-50..=50);
    let q = loop {
        let q = rng.gen_range(-10..=10);
        if q != 0 {
            break q;
        }
    };
    let r = rng.gen_range(1..=30);
    QuadIrr::new(p, q, r, d).unwrap()
}

/// A random walk of up to `len` arrows of the continued-fraction graph
/// starting at `x`. Forward steps follow `γ(z)⁻¹: z → z'`; backward steps
/// take `γ(w)` to `w = a + 1/z` with `a ∈ [−9, 9] \ {0}`, which is an arrow
/// only when `z > 1`. Returns the product matrix `g` with `g·x` the endpoint,
/// and the endpoint itself.
pub fn random_word<R: Rng>(rng: &mut R, x: &QuadIrr, len: usize) -> (Mat2, QuadIrr) {
    let one = BigInt::one();
    let mut z = x.clone();
    let mut g = Mat2::identity();
    for _ in 0..len {
        let can_go_back = z.cmp_int(&one) == std::cmp::Ordering::Greater;
        if can_go_back && rng.gen_bool(0.5) {
            let a = loop {
                let a: i64 = rng.gen_range(-9..=9);
                if a != 0 {
                    break a;
                }
            };
            let step = Mat2::generator(a.into());
            z = step.mobius(&z);
            g = &step * &g;
        } else {
            let a = floor_via_oracle(&z);
            let step = Mat2::generator(a).inv();
            z = step.mobius(&z);
            g = &step * &g;
        }
    }
    (g, z)
}

pub fn floor_via_oracle(z: &QuadIrr) -> BigInt {
    let (p, q, r) = z.as_triple();
    floor_oracle(&p, &q, &r, z.delta())
}

/// A random element of SL(2,Z) as a word in `S`, `T`, `T⁻¹`.
pub fn random_sl<R: Rng>(rng: &mut R, len: usize) -> Mat2 {
    let gens = [Mat2::new(0, -1, 1, 0).unwrap(), Mat2::new(1, 1, 0, 1).unwrap(), Mat2::new(1, -1, 0, 1).unwrap()];
    (0..len).fold(Mat2::identity(), |acc, _| &acc * &gens[rng.gen_range(0..3)])
}

/// Every `h ∈ SL(2,Z)` with entries bounded by `bound` and `f1·h = f2`, by
/// scanning first columns over the box.
pub fn equiv_scan(f1: SmallForm, f2: SmallForm, bound: i64) -> HashSet<SmallMat> {
    let (a, b, c) = f1;
    let eval = |x: i64, y: i64| a * x * x + 2 * b * x * y + c * y * y;
    let mid = |p: i64, q: i64, r: i64, s: i64| a * p * q + b * (p * s + q * r) + c * r * s;
    let mut out = HashSet::new();
    for p in -bound..=bound {
        for r in -bound..=bound {
            if eval(p, r) != f2.0 {
                continue;
            }
            let (g, s0, q0) = egcd(p, -r);
            if g != 1 {
                continue;
            }
            let diff = f2.1 - mid(p, q0, r, s0);
            if diff % f2.0 != 0 {
                continue;
            }
            let k = diff / f2.0;
            let (q, s) = (q0 + k * p, s0 + k * r);
            if q.abs() <= bound && s.abs() <= bound && eval(q, s) == f2.2 {
                out.insert([p, q, r, s]);
            }
        }
    }
    out
}
