//! Modules induced from the torus, Borel and normalizer subgroups of
//! `SL2(F_Q)`, and the computations run on them.

pub mod induced;
pub mod jordan_v;
pub mod meataxe;
pub mod probes;
pub mod spin;
pub mod weights;

pub use induced::{AlgebraElement, InducedModule, Induction, ModuleVector, MonomialOp, Sign};
pub use jordan_v::{jordan_on_v, JordanReport};
pub use meataxe::{chop, is_simple, oracle_simple, MatrixRep, OracleKind, Verdict};
pub use spin::{spin, spin_until, SpinResult};
pub use weights::{weight_spaces, WeightSpaces};
