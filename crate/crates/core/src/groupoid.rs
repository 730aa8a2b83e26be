// SPDX-License-Identifier: Apache-2.0

//! The groupoid of quadratic irrationals under GL(2,Z), presented freely by
//! the continued-fraction arrows.
//!
//! Each irrational `x` has a derivative `x' = 1/(x − ⌊x⌋)` and an arrow
//! `γ(x): x' → x` whose matrix is `[[⌊x⌋, 1], [1, 0]]`. Every morphism
//! `x → y` is uniquely a word `γ(y_0)···γ(y_{j−1}) γ(x_{i−1})⁻¹···γ(x_0)⁻¹`
//! with `x_i = y_j` and no cancellable tail, so a morphism is stored as the
//! index pair `(i, j)` plus its matrix. Indices past the end of an orbit
//! wrap around its cycle, which is how loop powers are expressed.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::QuadIrr;
use crate::lattice::{Mat2, PMat};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Step accounting plus the bug-trap cap on orbit and search lengths.
#[derive(Debug)]
pub struct Budget {
    cap: usize,
    steps: AtomicU64,
}

impl Budget {
    pub fn new(cap: usize) -> Self {
        Budget { cap, steps: AtomicU64::new(0) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Derivative steps taken so far.
    pub fn steps(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    fn charge(&self, n: u64) {
        self.steps.fetch_add(n, Ordering::Relaxed);
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_CAP)
    }
}

/// `(⌊x⌋, 1/(x − ⌊x⌋))`.
pub fn derivative(x: &QuadIrr) -> (BigInt, QuadIrr) {
    let a = x.floor();
    let xp = x.sub_int(&a).recip();
    (a, xp)
}

pub fn generator_matrix(a: &BigInt) -> Mat2 {
    Mat2::generator(a.clone())
}

/// The sequence of complete quotients `x_0 = x, x_{k+1} = x_k'`, split into a
/// preperiod and a cycle.
#[derive(Clone, Debug)]
pub struct Orbit {
    points: Vec<QuadIrr>,
    quotients: Vec<BigInt>,
    // x = cum[k] · x_k
    cum: Vec<Mat2>,
    preperiod: usize,
    index: HashMap<QuadIrr, usize>,
}

pub fn orbit(x: &QuadIrr, budget: &Budget) -> Result<Orbit> {
    let mut points = Vec::new();
    let mut quotients = Vec::new();
    let mut cum = Vec::new();
    let mut index = HashMap::new();
    let mut cur = x.clone();
    let mut acc = Mat2::identity();
    let preperiod = loop {
        if let Some(&k) = index.get(&cur) {
            break k;
        }
        if points.len() >= budget.cap() {
            return Err(Error::InternalLimit(budget.cap()));
        }
        let (a, next) = derivative(&cur);
        budget.charge(1);
        index.insert(cur.clone(), points.len());
        let step = generator_matrix(&a);
        points.push(cur);
        cum.push(acc.clone());
        acc = acc * step;
        quotients.push(a);
        cur = next;
    };
    Ok(Orbit { points, quotients, cum, preperiod, index })
}

impl Orbit {
    pub fn point(&self) -> &QuadIrr {
        &self.points[0]
    }

    pub fn points(&self) -> &[QuadIrr] {
        &self.points
    }

    pub fn preperiod(&self) -> &[QuadIrr] {
        &self.points[..self.preperiod]
    }

    pub fn cycle(&self) -> &[QuadIrr] {
        &self.points[self.preperiod..]
    }

    pub fn period(&self) -> usize {
        self.points.len() - self.preperiod
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Partial quotients aligned with `points()`.
    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// Cumulative matrices `A_k` with `x = A_k · x_k`, aligned with `points()`.
    pub fn cumulative(&self) -> &[Mat2] {
        &self.cum
    }

    fn wrap(&self, k: usize) -> usize {
        if k < self.points.len() {
            k
        } else {
            self.preperiod + (k - self.preperiod) % self.period()
        }
    }

    /// `x_k` for any `k`, wrapping around the cycle.
    pub fn point_at(&self, k: usize) -> &QuadIrr {
        &self.points[self.wrap(k)]
    }

    pub fn quotient_at(&self, k: usize) -> &BigInt {
        &self.quotients[self.wrap(k)]
    }

    /// `A_k` for any `k`.
    pub fn cum_at(&self, k: usize) -> Mat2 {
        if k < self.cum.len() {
            return self.cum[k].clone();
        }
        let last = self.cum.len() - 1;
        (last..k).fold(self.cum[last].clone(), |acc, t| acc * generator_matrix(self.quotient_at(t)))
    }

    /// `A_0, …, A_{n−1}`.
    fn cum_prefix(&self, n: usize) -> Vec<Mat2> {
        let mut out: Vec<Mat2> = self.cum.iter().take(n).cloned().collect();
        while out.len() < n {
            let k = out.len();
            let next = &out[k - 1] * &generator_matrix(self.quotient_at(k - 1));
            out.push(next);
        }
        out
    }

    /// Index of a point among the stored complete quotients.
    pub fn position(&self, x: &QuadIrr) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn in_cycle(&self, x: &QuadIrr) -> bool {
        self.position(x).is_some_and(|k| k >= self.preperiod)
    }
}

/// A morphism `x → y` in normal form.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<Orbit>,
    target: Arc<Orbit>,
    i: usize,
    j: usize,
    mat: PMat,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.i == other.i
            && self.j == other.j
            && self.mat == other.mat
            && self.source.point() == other.source.point()
            && self.target.point() == other.target.point()
    }
}

impl Eq for Morphism {}

impl Morphism {
    pub fn identity(at: Arc<Orbit>) -> Morphism {
        Morphism { source: at.clone(), target: at, i: 0, j: 0, mat: PMat::identity() }
    }

    // Cancels the common tail x_{i−1} = y_{j−1}; the matrix is unchanged.
    fn reduced(source: Arc<Orbit>, target: Arc<Orbit>, mut i: usize, mut j: usize, mat: PMat) -> Morphism {
        debug_assert_eq!(source.point_at(i), target.point_at(j));
        while i > 0 && j > 0 && source.point_at(i - 1) == target.point_at(j - 1) {
            i -= 1;
            j -= 1;
        }
        Morphism { source, target, i, j, mat }
    }

    /// The morphism whose word meets at `x_i = y_j`, or `None` when those
    /// complete quotients differ.
    pub fn from_pair(source: Arc<Orbit>, target: Arc<Orbit>, i: usize, j: usize) -> Option<Morphism> {
        if source.point_at(i) != target.point_at(j) {
            return None;
        }
        let mat = PMat::canon(&(target.cum_at(j) * source.cum_at(i).inv()));
        Some(Self::reduced(source, target, i, j, mat))
    }

    pub fn source(&self) -> &QuadIrr {
        self.source.point()
    }

    pub fn target(&self) -> &QuadIrr {
        self.target.point()
    }

    pub fn source_orbit(&self) -> &Arc<Orbit> {
        &self.source
    }

    pub fn target_orbit(&self) -> &Arc<Orbit> {
        &self.target
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn mat(&self) -> &PMat {
        &self.mat
    }

    pub fn det(&self) -> i8 {
        self.mat.det()
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Evaluates the normal-form word from the generator matrices.
    pub fn word_matrix(&self) -> PMat {
        let forward = (0..self.j).fold(Mat2::identity(), |acc, k| acc * generator_matrix(self.target.quotient_at(k)));
        let back = (0..self.i).rev().fold(Mat2::identity(), |acc, k| acc * generator_matrix(self.source.quotient_at(k)).inv());
        PMat::canon(&(forward * back))
    }

    pub fn invert(&self) -> Morphism {
        Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            i: self.j,
            j: self.i,
            mat: self.mat.inv(),
        }
    }

    /// `self ∘ first`, merging the two words and cancelling at the seam.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target() != self.source() {
            return Err(Error::ComposeMismatch);
        }
        let (i1, j1, i2, j2) = (first.i, first.j, self.i, self.j);
        let i = i1 + i2.saturating_sub(j1);
        let j = j2 + j1.saturating_sub(i2);
        let mat = &self.mat * &first.mat;
        Ok(Self::reduced(first.source.clone(), self.target.clone(), i, j, mat))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (i={}, j={}) {}", self.source(), self.target(), self.i, self.j, self.mat)
    }
}

pub fn morphism_matrix(m: &Morphism) -> PMat {
    m.word_matrix()
}

pub fn compose(m2: &Morphism, m1: &Morphism) -> Result<Morphism> {
    m2.compose(m1)
}

pub fn invert(m: &Morphism) -> Morphism {
    m.invert()
}

fn orbit_pair(x: &QuadIrr, y: &QuadIrr, budget: &Budget) -> Result<(Arc<Orbit>, Arc<Orbit>)> {
    if x.delta() != y.delta() {
        return Err(Error::DiscriminantMismatch(x.delta().clone(), y.delta().clone()));
    }
    let xo = Arc::new(orbit(x, budget)?);
    let yo = if x == y { xo.clone() } else { Arc::new(orbit(y, budget)?) };
    Ok((xo, yo))
}

/// Some morphism `x → y`, or `None` when the two orbits never meet.
pub fn hom_base(x: &QuadIrr, y: &QuadIrr, budget: &Budget) -> Result<Option<Morphism>> {
    let (xo, yo) = orbit_pair(x, y, budget)?;
    Ok(meet(xo, yo))
}

fn meet(xo: Arc<Orbit>, yo: Arc<Orbit>) -> Option<Morphism> {
    let (i, j) = xo.points().iter().enumerate().find_map(|(i, p)| yo.position(p).map(|j| (i, j)))?;
    Morphism::from_pair(xo, yo, i, j)
}

/// A determinant `+1` morphism `x → y`, if any.
pub fn hom_in_h(x: &QuadIrr, y: &QuadIrr, budget: &Budget) -> Result<Option<Morphism>> {
    let (xo, yo) = orbit_pair(x, y, budget)?;
    let Some(base) = meet(xo.clone(), yo.clone()) else {
        return Ok(None);
    };
    if base.det() == 1 {
        return Ok(Some(base));
    }
    let period = yo.period();
    if period % 2 == 0 {
        return Ok(None);
    }
    // slide the meeting point into the cycle, then wind once around it
    let k = yo.preperiod().len().saturating_sub(base.j);
    Ok(Morphism::from_pair(xo, yo, base.i + k, base.j + k + period))
}

/// Unrolled orbit data for the normal-form search over `i + j ≤ window`.
struct Scan {
    x_ids: Vec<usize>,
    y_ids: Vec<usize>,
    // g · A_i and B_j, sign-canonical
    ga: Vec<PMat>,
    b: Vec<PMat>,
}

impl Scan {
    fn new(g: &PMat, xo: &Orbit, yo: &Orbit, window: usize) -> Scan {
        let n = window + 1;
        let x_ids = (0..n).map(|k| xo.wrap(k)).collect();
        let y_ids = (0..n)
            .map(|k| {
                let p = yo.point_at(k);
                xo.position(p).unwrap_or(xo.len() + yo.wrap(k))
            })
            .collect();
        let ga = xo.cum_prefix(n).iter().map(|a| PMat::canon(&(g.rep() * a))).collect();
        let b = yo.cum_prefix(n).iter().map(PMat::canon).collect();
        Scan { x_ids, y_ids, ga, b }
    }

    fn matches(&self, i: usize, j: usize) -> bool {
        self.x_ids[i] == self.y_ids[j]
            && self.ga[i] == self.b[j]
            && !(i > 0 && j > 0 && self.x_ids[i - 1] == self.y_ids[j - 1])
    }

    fn pairs(&self, window: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=window).flat_map(|s| (0..=s).map(move |i| (i, s - i))).filter(|&(i, j)| self.matches(i, j))
    }
}

/// The normal form of the morphism `x → g·x` carried by `g`.
pub fn normal_form(g: &PMat, x: &QuadIrr, budget: &Budget) -> Result<Morphism> {
    let y = g.mobius(x);
    let (xo, yo) = orbit_pair(x, &y, budget)?;
    let mut window = xo.len().max(yo.len());
    loop {
        if window > budget.cap() {
            return Err(Error::InternalLimit(budget.cap()));
        }
        let scan = Scan::new(g, &xo, &yo, window);
        if let Some((i, j)) = scan.pairs(window).next() {
            return Ok(Morphism { source: xo, target: yo, i, j, mat: g.clone() });
        }
        window *= 2;
    }
}

/// Every `(i, j)` with `i + j ≤ window` meeting all three normal-form
/// conditions for `g` at `x`. Freeness says there is exactly one once the
/// window is large enough.
pub fn normal_form_matches(g: &PMat, x: &QuadIrr, window: usize, budget: &Budget) -> Result<Vec<(usize, usize)>> {
    let y = g.mobius(x);
    let (xo, yo) = orbit_pair(x, &y, budget)?;
    let scan = Scan::new(g, &xo, &yo, window);
    Ok(scan.pairs(window).collect())
}

/// A groupoid receiving the image of the arrow graph.
pub trait TargetGroupoid {
    type Arrow;
    type Error;

    fn identity(&self, object: &QuadIrr) -> Result<Self::Arrow, Self::Error>;
    /// `g2 ∘ g1`.
    fn compose(&self, g2: &Self::Arrow, g1: &Self::Arrow) -> Result<Self::Arrow, Self::Error>;
    fn invert(&self, g: &Self::Arrow) -> Result<Self::Arrow, Self::Error>;
    /// Image of the arrow `γ(vertex): vertex' → vertex`.
    fn arrow(&self, vertex: &QuadIrr) -> Result<Self::Arrow, Self::Error>;
}

/// The unique extension of an arrow assignment to the whole groupoid,
/// evaluated on one morphism.
pub fn free_extend<T: TargetGroupoid>(target: &T, m: &Morphism) -> Result<T::Arrow, T::Error> {
    let mut acc = target.identity(m.source())?;
    for k in 0..m.i {
        let back = target.invert(&target.arrow(m.source.point_at(k))?)?;
        acc = target.compose(&back, &acc)?;
    }
    for k in (0..m.j).rev() {
        let fwd = target.arrow(m.target.point_at(k))?;
        acc = target.compose(&fwd, &acc)?;
    }
    Ok(acc)
}

/// The integers under addition, every arrow sent to `1`: measures the
/// signed length `j − i` of a word.
#[derive(Clone, Copy, Debug, Default)]
pub struct Displacement;

impl TargetGroupoid for Displacement {
    type Arrow = i64;
    type Error = std::convert::Infallible;

    fn identity(&self, _: &QuadIrr) -> Result<i64, Self::Error> {
        Ok(0)
    }

    fn compose(&self, g2: &i64, g1: &i64) -> Result<i64, Self::Error> {
        Ok(g2 + g1)
    }

    fn invert(&self, g: &i64) -> Result<i64, Self::Error> {
        Ok(-g)
    }

    fn arrow(&self, _: &QuadIrr) -> Result<i64, Self::Error> {
        Ok(1)
    }
}

/// G itself, every arrow sent to its generator matrix.
#[derive(Clone, Copy, Debug, Default)]
pub struct GeneratorMatrices;

impl TargetGroupoid for GeneratorMatrices {
    type Arrow = PMat;
    type Error = std::convert::Infallible;

    fn identity(&self, _: &QuadIrr) -> Result<PMat, Self::Error> {
        Ok(PMat::identity())
    }

    fn compose(&self, g2: &PMat, g1: &PMat) -> Result<PMat, Self::Error> {
        Ok(g2 * g1)
    }

    fn invert(&self, g: &PMat) -> Result<PMat, Self::Error> {
        Ok(g.inv())
    }

    fn arrow(&self, vertex: &QuadIrr) -> Result<PMat, Self::Error> {
        Ok(PMat::canon(&generator_matrix(&vertex.floor())))
    }
}
