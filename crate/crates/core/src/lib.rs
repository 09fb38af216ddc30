//! Exact computation of PBW deformations of quadratic monomial algebras.
//!
//! A quadratic monomial algebra `A = k<x_1..x_n>/(R)` is described by its
//! relation graph. A filtered algebra `D` lowers each relation `x_i x_j` to
//! `sum_m a[i,j;m] x_m + b[i,j]`; this crate decides when `D` is a PBW
//! deformation of `A`, classifies the solutions after linear elimination, and
//! constructs nontrivial deformations. An independent overlap-resolution oracle
//! cross-checks every verdict.

pub mod algebra;
pub mod constraints;
pub mod error;
pub mod existence;
pub mod io;
pub mod parameters;
pub mod oracle;
pub mod polynomial;
pub mod rational;
pub mod sampling;
pub mod shortcuts;
pub mod survey;

pub use algebra::{Algebra, Arrow, OverlapBasis, Triple};
pub use constraints::{check, reduce_by_i, CheckVerdict, Constraint, ConstraintSystem, Origin, Reduction};
pub use existence::{nontrivial_deformation, Deformation, Witness};
pub use error::{AlgebraError, ConstraintError, ExistenceError, InputError, ParamError, PolyError};
pub use parameters::{Mode, ParameterTable};
pub use oracle::{oracle_verdict, NCPoly, OracleVerdict, RewriteSystem, Word};
pub use polynomial::{Monomial, ParamName, Polynomial};
pub use shortcuts::{check_pruned, shortcut_report, Shape, ShortcutReport};
