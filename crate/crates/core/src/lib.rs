//! Computational group theory workbench kernel: exact permutation
//! arithmetic, stabilizer-chain permutation groups, Sylow subgroup
//! machinery, number-theoretic filters on candidate Sylow counts, and an
//! arithmetic derivation engine that refutes hypothetical counts such as
//! 35 Sylow 17-subgroups.

pub mod caps;
pub mod families;
pub mod filters;
pub mod group;
pub mod perm;
pub mod pipeline;
pub mod sylow;

pub use caps::Caps;
pub use group::{ActionImage, EnginePath, GroupError, PermGroup};
pub use perm::{parse_cycles, CycleDecomposition, Parity, PermError, Permutation};
pub use sylow::SylowReport;
