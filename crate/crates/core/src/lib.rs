pub mod coefficients;
pub mod error;
pub mod io;
pub mod kernels;
pub mod operators;
pub mod rotation;
pub mod sht;
pub mod sphere;

pub use coefficients::HarmonicCoefficients;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use rotation::{rotate, EulerAngles};
pub use sht::{forward_sht, inner_product, inverse_sht, ylm, GridSignal, SphereGrid};
pub use sphere::SpherePoint;
