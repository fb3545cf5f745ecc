//! Photon-counting statistics of multimode squeezed vacuum on linear
//! interferometers, with partially distinguishable sources.

pub mod cli;
pub mod distprob;
pub mod error;
pub mod hafnian;
pub mod matchings;
pub mod measure;
pub mod model;
pub mod oracle;
pub mod reduce;

pub use error::{Error, Result};
