// SPDX-License-Identifier: Apache-2.0

//! Exact integer solutions of `ax² + 2bxy + cy² = m` for a positive nonsquare
//! discriminant `Δ = b² − ac`.
//!
//! Quadratic irrationals under GL(2,Z) form a groupoid that is free on the
//! continued-fraction arrows `x' → x`. That makes hom-sets computable
//! ([`groupoid`]); through the root map `[a,b,c] ↦ (−b − √Δ)/a` they become
//! equivalences and automorphs of forms ([`forms`]), which in turn yield all
//! proper representations of `m` ([`solver`]).

pub mod cli;
pub mod error;
pub mod exact;
pub mod forms;
pub mod groupoid;
pub mod lattice;
pub mod par;
pub mod solver;

pub use error::{Error, Result};
pub use exact::{isqrt, FieldOp, Int, QuadIrr, Rat, Value};
pub use forms::{equivalent_sl, pell_fundamental, stabilizer_generator, Form};
pub use groupoid::{
    compose, derivative, free_extend, generator_matrix, hom_base, hom_in_h, invert, morphism_matrix, normal_form, orbit,
    Budget, Displacement, GeneratorMatrices, Morphism, Orbit, TargetGroupoid,
};
pub use lattice::{Mat2, PMat};
pub use solver::{
    attach_form, enumerate, residue_classes, solve_proper, solve_proper_sequential, verify_representation, RepClass,
    SolveReport,
};
