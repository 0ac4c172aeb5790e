//! Generating graphs of finite groups, the condition X(m,n), and exact
//! Kővári–Sós–Turán bound verification.

pub mod catalog;
pub mod classes;
pub mod error;
pub mod graph;
pub mod group;
pub mod kst;
pub mod perm;
pub mod report;
pub mod verify;
pub mod xgraph;

pub use catalog::{
    catalog_scan, direct_product, make_alternating, make_cyclic, make_dihedral,
    make_frobenius20, make_quaternion8, make_sl2_3, make_symmetric, parse_group_name,
    CatalogEntry, Constructor, KnownFlags,
};
pub use classes::{
    class_spec, derived_subgroup, generation_probability, in_class, is_abelian, is_nilpotent,
    is_odd_order, is_soluble, pair_in_class, registry, subgroup_closure, ClassId, ClassSpec,
    SubgroupSet,
};
pub use error::{Error, Result};
pub use graph::{contains_kmn, SimpleGraph, DEFAULT_M_CAP};
pub use group::{group_from_json, GeneratorSpec, Group, GroupFile, DEFAULT_ORDER_CAP};
pub use kst::{
    kst_compare, kst_random_property_test, kst_threshold_exceeded,
    kst_threshold_exceeded_strictly, theorem_bound, KstComparison, KstQuery, KstTestSummary,
};
pub use perm::Permutation;
pub use report::{report_to_csv, report_to_json, report_to_text};
pub use verify::{
    run_scan, run_verify, verify_group, BoundCheck, Chain, GroupClassReport, Report,
    ScanOptions, ScanSummary, VerifyOptions,
};
pub use xgraph::{brute_force_xmn_oracle, x_probability, NStar, XGraph, XmnOutcome, XmnWitness};

// Every code block in the guide compiles and runs with the library tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/xgraph.md")]
    mod xgraph {}
    #[doc = include_str!("../../../book/src/condition.md")]
    mod condition {}
    #[doc = include_str!("../../../book/src/kst.md")]
    mod kst {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
