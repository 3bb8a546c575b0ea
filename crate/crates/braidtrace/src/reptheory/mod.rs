pub mod chartable;
pub mod degrees;
pub mod fourier;
pub mod induce;
pub mod heckerep;
pub mod molien;

pub use chartable::{CharLabel, CharTable, partitions, conjugate_partition, n_lambda, reflection_char, sign_value};
pub use degrees::{defect, degrees_bundle, poincare, schur_direct, DegreeData};
pub use fourier::FourierTable;
pub use induce::induce;
pub use heckerep::{content, irrep, CoeffRing, Irrep, MatrixRep};
pub use molien::{det_one_minus_qw, exterior_char, fake_degree, molien_char, molien_virtual};
