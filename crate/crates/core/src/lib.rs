//! Desingularization of shift (recurrence) operators and the characteristic
//! polynomial of their p-curvature.
//!
//! The layers build on each other:
//!
//! * [`field`], [`poly`], [`ratfun`], [`center`]: exact arithmetic over F_p and Q,
//!   the shift `x -> x+1`, and the norm into `F_p[Z]` with `Z = x^p - x`;
//! * [`ore`]: the skew polynomial ring with `τ r(x) = r(x+1) τ`;
//! * [`desing`]: essential and removable parts of leading coefficients;
//! * [`pcurv`]: p-curvature, χ(L), denominators and the reduced pipeline.

pub mod center;
pub mod desing;
pub mod error;
pub mod factor;
pub mod field;
pub mod format;
pub mod modular;
pub mod ore;
pub mod pcurv;
pub mod poly;
pub mod ratfun;
pub mod random;

pub use center::{norm, norm_ratfun, series_inverse, to_center, CenterPoly};
pub use desing::{lc1_algorithm2, lc1_tc1_algorithm3, lclm_method, DesingMethod, DesingReport};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use ore::{gcrd, lclm, ore_mul, CompanionMatrix, OrePoly};
pub use pcurv::{chi, denom_chi, is_gaussian, p_curvature, xi_p_desing, ChiResult, PCurvMatrix, PCurvOptions};
pub use poly::{content_poly, Poly};
pub use ratfun::RatFun;
