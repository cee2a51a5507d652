//! Group-theoretic decision problems reduced to compressed free reduction.

pub mod aut;
pub mod endo;
pub mod fbc;
pub mod mcg;

pub use aut::{
    aut_apply, aut_is_identity, braid_is_trivial, inn_membership, is_identity,
    punctured_disk_membership,
};
pub use endo::{
    braid_maps, compose_explicit, infer_generators, nielsen_maps, nielsen_rank, parse_braid,
    parse_map, parse_nielsen, BraidLetter, Endomorphism, LeveledFamily, Nielsen,
};
pub use fbc::{fbc_is_trivial, format_mixed_word, levels, parse_mixed_word, reduce_mixed, MixedLetter};
pub use mcg::{
    dual_handlebody_maps, handlebody_maps, handlebody_membership, heegaard_membership,
    surface_alphabet, TwistTable,
};
