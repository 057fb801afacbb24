//! Seeds, mutation, g-vectors and cluster polytopes attached to reduced words.

mod exchange;
mod gvector;
mod laurent;
pub mod poly;
mod seed;
mod transport;
mod upsilon;

pub use exchange::{build_exchange_from_word, ExchangeMatrix};
pub use gvector::{g_vector, lowest_term_valuation, GVector, Tiebreak, TotalOrder};
pub use laurent::LaurentExpr;
pub use seed::Seed;
pub use transport::{cluster_polytope, transport_points, transport_polytope, ClusterPolytope, Transported};
pub use upsilon::{upsilon_matrix, Upsilon};
