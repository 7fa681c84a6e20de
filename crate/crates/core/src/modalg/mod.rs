//! Submodules of free modules, syzygies, finitely presented modules and maps.

mod fpmodule;
mod free;
mod rank;
mod syzygy;

pub use fpmodule::{direct_sum, hom_into_ring, DirectSum, FpModule, ModuleMap};
pub use free::{module_member, FreeElem, FreeSubmodule, Matrix};
pub use rank::{has_nonzero_minor, rank_over_fractions, MINOR_CUTOFF};
pub use syzygy::{colon_into, ideal_in_ring, kernel_of_matrix, lift, syzygies};
