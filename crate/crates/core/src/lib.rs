pub mod algebra;
pub mod error;
pub mod fdalg;
pub mod field;
pub mod filtration;
pub mod gmod;
pub mod grading;
pub mod ktheory;
pub mod linalg;
pub mod poly;
