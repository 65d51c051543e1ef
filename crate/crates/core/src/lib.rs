//! Free resolutions, homology and Euler characteristics of graph products
//! of groups.
//!
//! A graph product `G(Γ)` takes a group at every vertex of a finite simple
//! graph and lets groups at adjacent vertices commute. Its resolution is
//! assembled from resolutions of the vertex groups, one tensor block per
//! complete subgraph; see [`resolution::clique_sum_resolution`].

pub mod cli;
pub mod error;
pub mod graph;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod presentation;
pub mod resolution;
pub mod ring;
pub mod word;

pub use error::{Error, Result};
pub use graph::{Clique, Graph};
pub use group::{Elem, FiniteTable, GroupKind, VertexGroupSpec};
pub use ring::{CoefficientRing, GroupRingElement};
pub use word::{GraphProduct, Word};
