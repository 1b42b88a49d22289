//! Exact computation with `p^{-e}`-linear maps in characteristic `p`.
//!
//! The crate models root modules `R^{1/p^e}` of polynomial rings and
//! discrete valuation rings over `F_{p^k}` and `F_{p^k}(y)`, the divisors
//! attached to `p^{-e}`-linear maps, and the question of when such a map
//! extends along a finite cover.

pub mod algext;
pub mod covers;
pub mod divisor;
pub mod dvrext;
pub mod error;
pub mod expr;
pub mod factor;
pub mod field;
pub mod fields;
pub mod gf;
pub mod linalg;
pub mod pmaps;
pub mod poly;
pub mod ratfunc;
pub mod sweep;
pub mod wildcase;

pub use error::{Error, Result};
pub use field::{Field, RootField};
pub use fields::{FieldDesc, FieldElement, FieldSpec};
