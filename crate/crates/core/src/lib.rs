//! Axiomatic locally finite spaces, Cartesian cell complexes and the
//! consistency of (a,b)-adjacency pairs on digital images.
//!
//! - [`space`]: spaces given by smallest neighborhoods, frontiers, openness,
//!   the bounding order and axiom checks.
//! - [`cartesian`]: n-dimensional Cartesian complexes in combinatorial
//!   coordinates.
//! - [`adjacency`]: graph-based digital images, topological analogs and the
//!   exhaustive consistency search.
//! - [`labeling`]: membership rules for the lower cells of labeled 2D images.
//! - [`grids`]: the virtual hexagonal complex, 14-adjacency and the CC test.

pub mod adjacency;
pub mod cartesian;
pub mod fixtures;
pub mod grids;
pub mod labeling;
pub mod sample;
pub mod space;

pub use adjacency::{
    a_adjacent, a_components, build_analog, exhaustive_pair_check, hollow_cubes, is_simple_surface,
    predicted_consistency, verify_analog, AdjacencyError, AnalogOutcome, ConsistencyVerdict,
    DigitalImage, PairCheckOptions, PairConstraint, TopologicalImage, UnsatCertificate,
};
pub use cartesian::{CartesianComplex, CartesianError, Cell, Coords, Intermediate, SemiCoord};
pub use grids::{
    bcc14_components, bcc14_neighbors, hcc_check, hex_neighbors, hex_to_lf_space, Bcc14Grid,
    GridError, HexCellType, HexGrid, HexSpace,
};
pub use labeling::{equnali, label_components, max_rule, CellLabeling, GrayImage2D, LabelError};
pub use space::{
    AxiomReport, AxiomWitness, ElementId, Extrema, LfSpace, RelationProperties, RelationWitness,
    SpaceError, SubsetMask,
};
