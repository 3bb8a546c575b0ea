//! Exact coefficient arithmetic: Laurent polynomials in `t = q^{1/2}`,
//! normalized rational functions, cyclotomic numbers, truncated series, and
//! bivariate `(a, t)` Laurent polynomials.

mod laurent;
mod rfunc;
mod cyclo;
mod series;
mod atpoly;
mod matrix;

pub use laurent::{HalfLaurent, Rat, rat, ratio};
pub use rfunc::RFunc;
pub use cyclo::{Cyclo, CycloLaurent, cyclotomic_polynomial};
pub use series::TruncSeries;
pub use atpoly::{ATLaurent, ATRat};
pub use matrix::Matrix;

/// Minimal commutative-ring interface shared by all coefficient types.
///
/// Implemented for `HalfLaurent`, `RFunc`, `Cyclo`, `CycloLaurent` and
/// `ATLaurent`; generic matrices and the representation machinery are
/// written against it. (`Rat` deliberately has no impl: its inherent
/// `num_traits` methods would become ambiguous.)
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}
