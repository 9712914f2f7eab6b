//! Exact extremal searches and feasible-region tools.

pub mod exhaustive;
pub mod region;
pub mod search;
pub mod stability;

pub use exhaustive::{cancellative_subsets, exhaustive_max_cancellative, OracleResult, TripleIndex};
pub use region::{
    g_curve_csv, g_upper_bound, local_max_probe, region_csv, region_sample, Branch, GBound,
    RegionPoint, Side,
};
pub use search::{
    max_cancellative, max_cancellative_with_shadow, EdgeOrder, SearchOptions, SearchResult,
};
pub use stability::{noncolorable_cancellative_pool, stability_experiment, StabilitySummary, Trial};
