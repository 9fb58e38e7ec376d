//! Exact computer algebra for finite-dimensional algebras with one or two
//! bilinear operations over ℚ.
//!
//! Algebras are stored as structure-constant tensors. Axiom systems are
//! written in a small multilinear identity language and checked on basis
//! tuples. Unknown structure constants or operator entries can be solved
//! for with the Gröbner basis engine in [`arith`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arith;
pub mod bimodule;
pub mod catalog;
pub mod error;
pub mod forms;
pub mod identity;
pub mod linalg;
pub mod random;
pub mod ring;
pub mod solver;
pub mod structures;
pub mod tensor;
pub mod transforms;
pub mod verdict;

pub use algebra::{AlgebraSpace, BilinForm, Side};
pub use bimodule::{Bimodule, OperatorReport};
pub use arith::{GroebnerBasis, Monomial, MonomialOrder, MultiPoly, PolyRing, Rational};
pub use error::{Error, Result};
pub use identity::IdentityExpr;
pub use linalg::{LinearMap, Matrix};
pub use solver::{SolutionIdeal, SymbolicAlgebra};
pub use structures::{check_structure, Binding, StructureDef};
pub use tensor::{StructTensor, Tensor};
pub use transforms::{TransformKind, TransformSpec};
pub use verdict::{Failure, Verdict};

/// Conventional op names used by constructions that create operations.
pub mod names {
    pub const MUL: &str = "mul";
    pub const TRI_R: &str = "rop";
    pub const TRI_L: &str = "lop";
    pub const SUCC: &str = "succ";
    pub const PREC: &str = "prec";
    pub const STAR: &str = "star";
    pub const CIRC: &str = "circ";
    pub const BRACKET: &str = "bracket";
    pub const SUM: &str = "sum";
    pub const DIAMOND: &str = "diamond";
}
