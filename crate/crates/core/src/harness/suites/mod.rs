pub mod analysis;
pub mod applications;
pub mod calculus;
pub mod frames;
pub mod geometry;
