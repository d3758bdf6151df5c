pub mod batch;
pub mod case_study;
pub mod error;
pub mod group;
pub mod isotropy;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod orbit;
pub mod par;
pub mod product;
pub mod sampling;
pub mod scalar;
pub mod spectral;
pub mod tightness;
pub mod weyl;
