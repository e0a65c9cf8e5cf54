//! Exact annihilators of colored Jones functions of cabled torus knots.

pub mod algebra;
pub mod qtorus;
pub mod jones;
pub mod aj;
pub mod degrees;
pub mod grid;
pub mod minimality;
pub mod pipeline;
