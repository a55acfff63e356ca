pub mod cyclo;
pub mod eigen;
pub mod matrix;
pub mod numeric;
pub mod projection;
pub mod tau;
pub mod theorem10;
pub mod vandermonde;

pub use cyclo::CycloCoefficients;
pub use eigen::{eigen_data, EigenData};
pub use numeric::{numeric_oracle, NumericVerdict};
pub use projection::projection_coeffs;
pub use theorem10::{even_recipe_h, theorem10_check, Theorem10Verdict};
