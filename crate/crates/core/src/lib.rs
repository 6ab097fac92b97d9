//! Arithmetic of twisted harmonic sums over F_q[θ].

pub mod cache;
pub mod carlitz;
pub mod error;
pub mod finzeta;
pub mod frac;
pub mod mpoly;
pub mod fq;
pub mod hpoly;
pub mod tate;
pub mod ntt;
pub mod poly;
pub mod quot;
pub mod subspace;
pub mod sums;

pub use error::{Error, Result};
pub use fq::{Fq, FqElem};
pub use poly::PolyA;
pub use frac::FracK;
pub use mpoly::{MPoly, MPolyK, Mono, Var};
pub use carlitz::{digit_profile, digit_sum, elem_sym, Carlitz, DigitProfile};
pub use quot::{enumerate_irreducibles, is_irreducible, QuotCtx};
pub use sums::{SumSpec, SymTPoly, TailSpec};
pub use hpoly::{HParams, HPolynomial, HTableRow, Route, RowMode, UnivRelTable};
