pub mod catlin_dangelo;
pub mod cli;
pub mod groebner;
pub mod kohn_effective3d;
pub mod kohn_full_radical;
pub mod matrix_lab;
pub mod multiplier_core;
pub mod polyring;
