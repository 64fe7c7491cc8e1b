//! Combinatorics of (d+2)-angulated exchange on a cycle of m = n + 2d + 1
//! vertices.
//!
//! Objects are the (d+1)-subsets of Z/m with no two members cyclically
//! adjacent. Two objects intertwine when they strictly alternate around the
//! cycle; maximal pairwise non-intertwining collections all share one size
//! and play the role of bases. Each basis slot admits at most one exchange
//! partner, mutation swaps it in place, and integer index vectors transport
//! across the exchange by a sign-driven piecewise-linear substitution. At
//! d = 1 the whole picture collapses onto polygon triangulations, where the
//! substitution must and does agree with tropical Y-seed mutation of the
//! triangulation quiver, and rational arcs acquire shear coordinates that
//! recompute the same vectors along an independent geometric route.
//!
//! Entry points: [`params::ModelParams`] fixes a model,
//! [`tuple::enumerate_objects`] and [`tilting::enumerate_tiltings`] list its
//! inhabitants, [`tilting::mutate`] exchanges one slot,
//! [`index::compute_index`] expresses any object over a basis, and
//! [`shear::shear_lamination`] integrates arc systems against one.

pub mod angles;
pub mod arc;
pub mod budget;
pub mod error;
pub mod fixture;
pub mod graph;
pub mod index;
pub mod params;
pub mod quiver;
pub mod shear;
pub mod tilting;
pub mod tropical;
pub mod tuple;

pub use budget::Budget;
pub use error::{Error, Result};
pub use params::ModelParams;
pub use tilting::ClusterTilting;
pub use tuple::IndexTuple;
