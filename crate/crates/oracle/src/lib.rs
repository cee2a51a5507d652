//! Naive reference implementations and seeded generators for differential
//! testing of `slpg`. Nothing here is used by the solvers.

pub mod gen;
pub mod naive;

pub use gen::{gen_program, Family, GeneratorConfig};
pub use naive::{
    britton_is_trivial, naive_conjugate, naive_cyclic_reduce, naive_equal, naive_free_reduce,
    naive_lcp, CapExceeded, CAP,
};
