pub mod formulas;
pub mod interp;
pub mod products;
pub mod roots;
pub mod solve;
pub mod spectral;
