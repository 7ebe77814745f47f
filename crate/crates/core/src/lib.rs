//! Point counts for Dwork hypersurfaces over finite fields.
//!
//! Three independent routes to `#X_λ(F_q)` for
//! `x_1^d + ... + x_d^d - dλ x_1...x_d = 0`:
//!
//! * [`oracle`]: projective enumeration, the ground truth for small `q`;
//! * [`diagonal`]: Koblitz's Gauss-sum formula over weight orbits;
//! * [`dwork`]: closed forms in finite-field hypergeometric functions
//!   (Greene and McCarthy normalizations, see [`hyper`]) and a fourth route
//!   summing over the kernel of `A' = 6I - J`.
//!
//! Everything rests on [`field`] (index-form arithmetic in `F_q`) and
//! [`chars`] (multiplicative characters and their Gauss and Jacobi sums).

pub mod chars;
pub mod diagonal;
pub mod dwork;
pub mod error;
pub mod field;
pub mod hyper;
pub mod oracle;
pub mod verify;

pub use chars::{round_count, AlgValue, Characters, MultChar, RoundedCount, ROUND_TOL};
pub use diagonal::{DiagonalParams, OrbitClass};
pub use dwork::{DworkParams, KernelElement};
pub use error::{Error, Result};
pub use field::{FieldTag, FqElem, FqField, MAX_FIELD_ORDER};
pub use hyper::{GreeneParams, McCarthyParams};
pub use oracle::{DworkSweep, Polynomial};
