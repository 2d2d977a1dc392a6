//! Type invariants: orders along discs, line/regular/variety type, q-types
//! and multitype, plus the brute-force oracle and the disc reduction.

pub mod compose;
pub mod disc;
pub mod lp;
pub mod multitype;
pub mod newton;
pub mod oracle;
pub mod qtypes;
pub mod reduce;
pub mod regular;
pub mod types;

pub use compose::{compose_order, compose_series};
pub use disc::{Beta, Disc};
pub use newton::{newton_order, NewtonModel};
pub use multitype::{multitype, Multitype};
pub use oracle::{jet_oracle, LatticePreset, OracleConfig, OracleResult, Score};
pub use qtypes::{q_types, QTypes};
pub use reduce::{reduce_disc, Reduction};
pub use regular::{line_type, regular_type, variety_type};
pub use types::{Method, TypeKind, TypeValue};
