//! Graph products, complements and joins, with the conditions under which
//! they keep or create strong cospectrality.

mod complement;
mod joins;
mod products;

pub use complement::{
    bipartite_signflip, bipartition, complement, complement_preservation, components, SignFlipReport,
};
pub use joins::{cone_analysis, join, join_graphs, ConditionCheck, ConeReport, JoinFactor, Outcome, PairVerdict};
pub use products::{
    cartesian_product, direct_product, product_index, product_preservation, Clause, MuRow, ProductAnalysis, ProductKind,
};
