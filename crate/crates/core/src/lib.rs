pub mod error;
pub mod lattice;
pub mod lp;
pub mod rational;
pub mod cone;
pub mod alpha;
pub mod lct;
pub mod binary_form;
pub mod weierstrass;
pub mod prover;
pub mod counterexample;
