//! Rainbow arithmetic progressions in colorings of `[n]` and `Z_n`.
//!
//! * [`coloring`], [`ap`], [`balance`], [`symmetry`]: colorings, progressions,
//!   rainbow detection, class-size predicates and the symmetry group.
//! * [`constructions`]: explicit colorings without rainbow progressions.
//! * [`search`]: exhaustive and symmetry-reduced search over equinumerous
//!   colorings of `Z_n`.
//! * [`harness`]: named verification suites producing JSON reports.
//! * [`cli`]: the `rainbow-ap` command line.

pub mod ap;
pub mod balance;
pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod harness;
pub mod search;
pub mod symmetry;

pub use ap::{ap_members, enumerate_rainbow_aps, find_rainbow_ap, ApSpec, ApWitness};
pub use balance::{classify_balance, color_counts, is_proper, is_recessive, BalanceClass};
pub use coloring::{Color, Coloring, ColoringJson, Topology};
pub use constructions::{
    construct_interval4, construct_k, construct_pow3, construct_z24, tile, VariantTag,
};
pub use error::{Error, Result};
pub use harness::{run_suite, Report};
pub use search::{
    all_contain_rainbow, enumerate_equinumerous, search_rainbow_free, verify_certificate,
    SearchConfig, SearchOutcome, SearchStatus, SymmetryLevel,
};
pub use symmetry::{apply_affine, canonical_form, ColorPermutation};
