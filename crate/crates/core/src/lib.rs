//! Exact chromatic polynomials and 4-coloring analysis for maximal planar
//! graphs.
//!
//! * [`graph`]: bitset graphs with contraction provenance.
//! * [`triangulation`]: embedded triangulations, wheel contractions and
//!   extensions, exhaustive generation, planar code.
//! * [`chromatic`]: deletion–contraction with clique-separator splitting.
//! * [`wheel`]: the degree-4 and degree-5 wheel identities at `t = 4` and a
//!   certified constructive 4-coloring.
//! * [`analysis`]: coloring partitions, funnels and classification.

pub mod analysis;
pub mod canon;
pub mod chromatic;
pub mod graph;
pub mod planarity;
pub mod report;
pub mod triangulation;
pub mod wheel;

pub use analysis::{classify, enumerate_partitions, Classification, ColorPartition, Funnel, Verdict};
pub use canon::CanonicalForm;
pub use chromatic::{ChromaticEngine, Polynomial};
pub use graph::{ContractionOutcome, Graph, GraphError};
pub use triangulation::{generate_all, Triangulation, TriangulationError, Wheel};
