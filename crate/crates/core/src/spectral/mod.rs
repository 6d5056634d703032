//! Minimal polynomials, closed forms along digit patterns, and dominant
//! root analysis for linear representations.

mod closedform;
mod dominant;
mod minpoly;
mod pattern;
mod polynomial;

pub use closedform::{fit_closed_form, ClosedForm, ClosedFormTerm};
pub use dominant::{dominant_ratio, monotonicity_scan, DominantAnalysis, RatioRow};
pub use minpoly::{annihilates, apply_poly, char_poly, krylov_min_poly, min_poly, rational_roots, RootFactorization};
pub use pattern::{pattern_value, pattern_values, DigitPattern};
pub use polynomial::RationalPolynomial;
